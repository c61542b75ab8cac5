use std::sync::Arc;

use crate::boolring::BoolRing;
use crate::error::Result;
use crate::exactla::{split_idempotents, subspace, Matrix, MatrixAlgebra, ScAlgebra};
use crate::field::Field;

use super::hom::end_algebra;
use super::module::{Module, ModuleMap};

#[derive(Clone, Debug)]
pub struct Summand<F: Field> {
    pub module: Module<F>,
    pub inclusion: ModuleMap<F>,
    pub projection: ModuleMap<F>,
    /// Central block of `End(M)/J` the idempotent belongs to; summands share
    /// a block exactly when they are isomorphic.
    pub block: usize,
}

#[derive(Clone, Debug)]
pub struct Decomposition<F: Field> {
    pub summands: Vec<Summand<F>>,
    pub block_count: usize,
}

impl<F: Field> Decomposition<F> {
    /// Summand indices grouped by block.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut g = vec![Vec::new(); self.block_count];
        for (i, s) in self.summands.iter().enumerate() {
            g[s.block].push(i);
        }
        g
    }
}

/// Krull-Schmidt decomposition from a complete set of primitive orthogonal
/// idempotents of `End(M)`.
pub fn decompose<F: Field>(m: &Module<F>, seed: u64) -> Result<Decomposition<F>> {
    if m.is_zero() {
        return Ok(Decomposition { summands: Vec::new(), block_count: 0 });
    }
    let end = end_algebra(m)?;
    let split = split_idempotents(&end, seed)?;
    let f = m.field();
    let mut summands = Vec::with_capacity(split.primitive_system.len());
    for (e, &block) in split.primitive_system.iter().zip(&split.block_of) {
        let basis = e.row_space();
        let (sub, inclusion) = m.submodule(&basis)?;
        // m -> coordinates of m e in the summand basis
        let rows: Vec<Vec<F::Elem>> = (0..m.dim())
            .map(|r| subspace::coordinates(&basis, e.row(r)).expect("row of e lies in its image"))
            .collect();
        let projection = ModuleMap { source: m.clone(), target: sub.clone(), matrix: Matrix::from_rows(f, basis.rows(), &rows) };
        summands.push(Summand { module: sub, inclusion, projection, block });
    }
    Ok(Decomposition { summands, block_count: split.central_primitives.len() })
}

/// Indecomposable summands up to isomorphism, with multiplicities, in block
/// order.
pub fn decompose_module<F: Field>(m: &Module<F>, seed: u64) -> Result<Vec<(Module<F>, usize)>> {
    let d = decompose(m, seed)?;
    Ok(d.groups()
        .into_iter()
        .filter(|g| !g.is_empty())
        .map(|g| (d.summands[g[0]].module.clone(), g.len()))
        .collect())
}

#[derive(Clone, Debug)]
pub struct EndoCentral<F: Field> {
    pub end: MatrixAlgebra<F>,
    /// `End(M)/J(End(M))` on a complement of the radical.
    pub endo_mod_rad: ScAlgebra<F>,
    /// Primitive central idempotents of the quotient, in its coordinates.
    pub central_primitives: Vec<Vec<F::Elem>>,
    /// `B(End(M)/J)`: atoms are the primitive central idempotents.
    pub central_lattice: Arc<BoolRing>,
}

pub fn endo_central_idempotents<F: Field>(m: &Module<F>, seed: u64) -> Result<EndoCentral<F>> {
    let end = end_algebra(m)?;
    let (endo_mod_rad, central_primitives) = if m.is_zero() {
        (ScAlgebra::new(m.field().clone(), 0, Vec::new(), Vec::new()), Vec::new())
    } else {
        let split = split_idempotents(&end, seed)?;
        (split.quotient.algebra.clone(), split.central_primitives)
    };
    let central_lattice = BoolRing::new((1..=central_primitives.len()).map(|i| format!("c{i}")))?;
    Ok(EndoCentral { end, endo_mod_rad, central_primitives, central_lattice })
}

/// The inclusions of a decomposition assemble to an isomorphism
/// `sum of summands -> M`; returns that matrix.
pub fn assembly_matrix<F: Field>(m: &Module<F>, d: &Decomposition<F>) -> Matrix<F> {
    let parts: Vec<&Matrix<F>> = d.summands.iter().map(|s| &s.inclusion.matrix).collect();
    if parts.is_empty() {
        return Matrix::zeros(m.field(), 0, m.dim());
    }
    Matrix::vstack(m.field(), m.dim(), &parts)
}
