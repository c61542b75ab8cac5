//! Exact linear algebra over prime fields and the rationals, plus radicals
//! and idempotents of matrix algebras.

pub mod algebra;
pub mod idempotents;
pub mod matrix;
pub mod poly;
pub mod radical;

pub use algebra::{MatrixAlgebra, ScAlgebra};
pub use idempotents::{split_idempotents, IdempotentSplitting, SemisimpleQuotient};
pub use matrix::{subspace, Matrix};
pub use radical::{radical_of_algebra, radical_trace_form};

use crate::field::Field;

/// Everything Gaussian elimination tells about one matrix.
#[derive(Clone, Debug)]
pub struct SolveSuite<F: Field> {
    pub rank: usize,
    pub rref: Matrix<F>,
    /// Basis of `{x : M x = 0}`.
    pub kernel_basis: Vec<Vec<F::Elem>>,
    /// Basis of the column space.
    pub image_basis: Vec<Vec<F::Elem>>,
}

pub fn solve_suite<F: Field>(m: &Matrix<F>) -> SolveSuite<F> {
    let (rref, pivots) = m.rref();
    SolveSuite { rank: pivots.len(), rref, kernel_basis: m.kernel(), image_basis: m.column_space() }
}
