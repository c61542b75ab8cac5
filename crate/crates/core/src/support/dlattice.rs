use std::sync::Arc;

use crate::algmod::{
    decompose, direct_sum, endo_central_idempotents, injective_envelope, Module, ModuleMap, Summand,
};
use crate::boolring::{hasse_dot, BoolHom, BoolRing};
use crate::error::{Error, Result};
use crate::exactla::{subspace, Matrix};
use crate::field::Field;

use super::{supp, SupportSet};

/// `D(X)` for an injective `X`: atoms are the points of `supp(X)`.
#[derive(Clone, Debug)]
pub struct DecompositionLattice<F: Field> {
    pub module: Module<F>,
    pub support: SupportSet,
    /// Atoms labelled by injective names, in increasing index order.
    pub ring: Arc<BoolRing>,
    /// Direct summand of `X` for every element of `ring`, indexed by mask.
    pub witnesses: Vec<Module<F>>,
    /// `B(End(X)/J)`, computed independently from the central idempotents.
    pub central_lattice: Arc<BoolRing>,
    /// Atom `i` of `ring` goes to atom `central_of_atom[i]` of `central_lattice`.
    pub central_of_atom: Vec<usize>,
    pub iso: BoolHom,
}

impl<F: Field> DecompositionLattice<F> {
    pub fn atom_count(&self) -> usize {
        self.ring.atom_count()
    }

    pub fn witness(&self, subset: &SupportSet) -> Option<&Module<F>> {
        let mask = self.local_mask(subset)?;
        self.witnesses.get(mask as usize)
    }

    /// Mask in `ring` coordinates for a subset of `supp(X)`.
    fn local_mask(&self, subset: &SupportSet) -> Option<u64> {
        let atoms: Vec<usize> = self.support.members().iter().copied().collect();
        let mut mask = 0;
        for i in subset.members() {
            mask |= 1 << atoms.iter().position(|a| a == i)?;
        }
        Some(mask)
    }

    pub fn to_dot(&self) -> String {
        hasse_dot(&self.ring, None, "D")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let witnesses: Vec<serde_json::Value> = self
            .ring
            .masks()
            .map(|mask| {
                let w = &self.witnesses[mask as usize];
                let names: Vec<&str> = self.ring.indices(mask).iter().map(|&i| self.ring.labels()[i].as_str()).collect();
                serde_json::json!({"subset": names, "module": w.display_name(), "dim": w.dim()})
            })
            .collect();
        serde_json::json!({
            "algebra_ref": self.support.algebra_ref(),
            "module": self.module.display_name(),
            "atoms": self.ring.labels(),
            "central_idempotents": self.central_lattice.atom_count(),
            "witnesses": witnesses,
        })
    }
}

/// `X` is injective iff its envelope adds nothing.
pub fn is_injective<F: Field>(x: &Module<F>) -> Result<bool> {
    Ok(injective_envelope(x)?.module.dim() == x.dim())
}

/// The support index of an indecomposable injective summand.
fn summand_point<F: Field>(s: &Summand<F>) -> usize {
    let pts: Vec<usize> = supp(&s.module).members().iter().copied().collect();
    debug_assert_eq!(pts.len(), 1, "indecomposable injectives have one-point support");
    pts[0]
}

fn span_of<F: Field>(x: &Module<F>, parts: &[&Summand<F>]) -> Matrix<F> {
    let rows: Vec<Vec<F::Elem>> = parts.iter().flat_map(|s| s.inclusion.matrix.row_vecs()).collect();
    subspace::span(x.field(), x.dim(), &rows)
}

pub fn decomposition_lattice<F: Field>(x: &Module<F>, seed: u64) -> Result<DecompositionLattice<F>> {
    if !is_injective(x)? {
        return Err(Error::NotInjective);
    }
    let support = supp(x);
    let atoms: Vec<usize> = support.members().iter().copied().collect();
    let labels = support.names();
    let ring = BoolRing::new(labels.clone())?;
    let d = decompose(x, seed)?;

    // grouping route: atom of each summand, and its central block
    let mut central_of_atom = vec![usize::MAX; atoms.len()];
    let mut by_atom: Vec<Vec<&Summand<F>>> = vec![Vec::new(); atoms.len()];
    for s in &d.summands {
        let a = atoms.iter().position(|&p| p == summand_point(s)).expect("summand support lies in supp(X)");
        if central_of_atom[a] != usize::MAX && central_of_atom[a] != s.block {
            return Err(Error::NotAHomomorphism(format!("summands at {} lie in different blocks", labels[a])));
        }
        central_of_atom[a] = s.block;
        by_atom[a].push(s);
    }

    // idempotent route
    let ec = endo_central_idempotents(x, seed)?;
    let central_lattice = ec.central_lattice;
    if central_lattice.atom_count() != atoms.len() {
        return Err(Error::NotAHomomorphism(format!(
            "{} support atoms but {} primitive central idempotents",
            atoms.len(),
            central_lattice.atom_count()
        )));
    }
    let images: Vec<u64> = central_of_atom.iter().map(|&c| 1u64 << c).collect();
    let iso = BoolHom::from_atom_images(ring.clone(), central_lattice.clone(), &images)?;
    if !iso.is_bijective() {
        return Err(Error::NotAHomomorphism("atoms and central idempotents do not match".into()));
    }

    let mut witnesses = Vec::with_capacity(ring.size() as usize);
    for mask in ring.masks() {
        let parts: Vec<&Summand<F>> = ring.indices(mask).iter().flat_map(|&a| by_atom[a].iter().copied()).collect();
        let (w, _) = x.submodule(&span_of(x, &parts))?;
        let names: Vec<&str> = ring.indices(mask).iter().map(|&a| labels[a].as_str()).collect();
        witnesses.push(w.with_name(witness_name(&names, &by_atom, &ring, mask)));
    }
    Ok(DecompositionLattice { module: x.clone(), support, ring, witnesses, central_lattice, central_of_atom, iso })
}

/// `"I1^2+I2"`-style names from the isotype multiplicities.
fn witness_name<F: Field>(
    names: &[&str],
    by_atom: &[Vec<&Summand<F>>],
    ring: &BoolRing,
    mask: u64,
) -> String {
    if names.is_empty() {
        return "0".into();
    }
    ring.indices(mask)
        .iter()
        .zip(names)
        .map(|(&a, n)| match by_atom[a].len() {
            1 => n.to_string(),
            k => format!("{n}^{k}"),
        })
        .collect::<Vec<_>>()
        .join("+")
}

#[derive(Clone, Debug)]
pub struct RealizedDecomposition<F: Field> {
    pub parts: Vec<Module<F>>,
    /// `parts[0] + parts[1] + ... -> X`.
    pub isomorphism: ModuleMap<F>,
}

pub fn realize_decomposition<F: Field>(
    x: &Module<F>,
    partition: &[SupportSet],
    seed: u64,
) -> Result<RealizedDecomposition<F>> {
    if !is_injective(x)? {
        return Err(Error::NotInjective);
    }
    let support = supp(x);
    let mut covered = SupportSet::empty(x.algebra());
    for (i, p) in partition.iter().enumerate() {
        if p.algebra_ref() != support.algebra_ref() {
            return Err(Error::AlgebraMismatch);
        }
        if !p.is_disjoint(&covered) {
            return Err(Error::NotAPartition(format!("part {i} overlaps an earlier part")));
        }
        covered = covered.union(p);
    }
    if covered != support {
        return Err(Error::NotAPartition(format!("parts cover {covered}, support is {support}")));
    }
    let d = decompose(x, seed)?;
    let mut parts = Vec::with_capacity(partition.len());
    let mut rows = Vec::new();
    for p in partition {
        let chosen: Vec<&Summand<F>> = d.summands.iter().filter(|s| p.contains(summand_point(s))).collect();
        let basis = span_of(x, &chosen);
        let (m, incl) = x.submodule(&basis)?;
        rows.extend(incl.matrix.row_vecs());
        let name = p
            .members()
            .iter()
            .zip(p.names())
            .map(|(&i, label)| match chosen.iter().filter(|s| summand_point(s) == i).count() {
                1 => label,
                k => format!("{label}^{k}"),
            })
            .collect::<Vec<_>>()
            .join("+");
        parts.push(m.with_name(if name.is_empty() { "0".into() } else { name }));
    }
    let refs: Vec<&Module<F>> = parts.iter().collect();
    let sum = direct_sum(x.algebra(), &refs);
    let matrix = Matrix::from_rows(x.field(), x.dim(), &rows);
    let isomorphism = ModuleMap::new(sum, x.clone(), matrix)?;
    if !isomorphism.is_iso() {
        return Err(Error::NotAPartition("summands do not assemble to X".into()));
    }
    Ok(RealizedDecomposition { parts, isomorphism })
}
