//! Supports of modules over the discrete spectrum `Sp A` of indecomposable
//! injectives, and the lattices they classify.
//!
//! `supp(M)` reads the injective envelope, `supp_ex(M)` the whole minimal
//! injective resolution.

mod closure;
mod dlattice;
mod exactness;

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::algmod::{direct_sum, min_inj_resolution, spectral_image, structure::injective_names, Algebra, Module, ResolutionStatus};
use crate::boolring::{BoolElem, BoolRing, BoolRingExt};
use crate::error::{Error, Result};
use crate::field::Field;

pub use closure::{localising_closure, Closure};
pub use dlattice::{decomposition_lattice, is_injective, realize_decomposition, DecompositionLattice, RealizedDecomposition};
pub use exactness::{exactness_property_check, ExactnessReport, ExactnessViolation};

/// A subset of `Sp A`, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportSet {
    algebra_ref: String,
    labels: Arc<Vec<String>>,
    members: BTreeSet<usize>,
}

impl SupportSet {
    pub fn new<F: Field>(alg: &Algebra<F>, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let labels = Arc::new(injective_names(alg));
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&i| i >= labels.len()) {
            return Err(Error::InvalidElement(format!("no indecomposable injective with index {bad}")));
        }
        Ok(SupportSet { algebra_ref: alg.name().to_string(), labels, members })
    }

    pub fn empty<F: Field>(alg: &Algebra<F>) -> Self {
        Self::new(alg, []).expect("empty set is valid")
    }

    pub fn full<F: Field>(alg: &Algebra<F>) -> Self {
        Self::new(alg, 0..alg.vertex_count()).expect("all indices are valid")
    }

    /// From injective names such as `"I1"`.
    pub fn from_names<F: Field, S: AsRef<str>>(alg: &Algebra<F>, names: &[S]) -> Result<Self> {
        let labels = injective_names(alg);
        let idx = names
            .iter()
            .map(|n| {
                labels
                    .iter()
                    .position(|l| l == n.as_ref())
                    .ok_or_else(|| Error::Parse(format!("unknown injective {:?}", n.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alg, idx)
    }

    pub fn algebra_ref(&self) -> &str {
        &self.algebra_ref
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn names(&self) -> Vec<String> {
        self.members.iter().map(|&i| self.labels[i].clone()).collect()
    }

    pub fn universe_size(&self) -> usize {
        self.labels.len()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.labels.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.members.is_disjoint(&other.members)
    }

    pub fn union(&self, other: &Self) -> Self {
        SupportSet { members: self.members.union(&other.members).copied().collect(), ..self.clone() }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        SupportSet { members: self.members.intersection(&other.members).copied().collect(), ..self.clone() }
    }

    pub fn mask(&self) -> u64 {
        self.members.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn from_mask<F: Field>(alg: &Algebra<F>, mask: u64) -> Result<Self> {
        Self::new(alg, (0..64).filter(|i| mask >> i & 1 == 1))
    }

    /// The Boolean ring with atoms `Sp A`.
    pub fn ring(&self) -> Arc<BoolRing> {
        BoolRing::new(self.labels.iter().cloned()).expect("injective names are distinct")
    }

    pub fn to_elem(&self, ring: &Arc<BoolRing>) -> BoolElem {
        ring.elem(self.mask()).expect("mask fits the ring")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"algebra_ref": self.algebra_ref, "injectives": self.names()})
    }

    pub fn from_json<F: Field>(alg: &Algebra<F>, v: &serde_json::Value) -> Result<Self> {
        if let Some(r) = v.get("algebra_ref").and_then(|r| r.as_str()) {
            if r != alg.name() {
                return Err(Error::AlgebraMismatch);
            }
        }
        let names: Vec<&str> = v
            .get("injectives")
            .and_then(|a| a.as_array())
            .ok_or_else(|| Error::Parse("support set: missing \"injectives\"".into()))?
            .iter()
            .map(|n| n.as_str().ok_or_else(|| Error::Parse("support set: names must be strings".into())))
            .collect::<Result<_>>()?;
        Self::from_names(alg, &names)
    }
}

impl std::fmt::Display for SupportSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{}}}", self.names().join(","))
    }
}

pub fn supp<F: Field>(m: &Module<F>) -> SupportSet {
    SupportSet::new(m.algebra(), spectral_image(m).support()).expect("support indices are vertices")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSupport {
    pub set: SupportSet,
    pub complete: bool,
    pub status: ResolutionStatus,
}

pub fn supp_ex<F: Field>(m: &Module<F>, max_terms: usize, seed: u64) -> Result<ExactSupport> {
    let res = min_inj_resolution(m, max_terms.max(1), seed)?;
    let set = SupportSet::new(m.algebra(), res.support_union())?;
    let complete = res.is_complete() || set.is_full();
    Ok(ExactSupport { set, complete, status: res.status })
}

/// Support of the direct sum of a finite family.
pub fn supp_join_family<F: Field>(alg: &Arc<Algebra<F>>, modules: &[Module<F>]) -> Result<SupportSet> {
    for m in modules {
        if m.algebra() != alg {
            return Err(Error::AlgebraMismatch);
        }
    }
    let parts: Vec<&Module<F>> = modules.iter().collect();
    Ok(supp(&direct_sum(alg, &parts)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubcategoryKind {
    /// `P^{-1}(U)`: modules with `supp(M)` inside `U`.
    EssentiallyClosed,
    /// `A_U`: modules with `supp_ex(M)` inside `U`.
    CohomologicallyStable,
    /// Stable localising candidates are tested like `A_U`.
    StableLocalisingCandidate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedSubcategory {
    pub kind: SubcategoryKind,
    pub data: SupportSet,
}

impl ClassifiedSubcategory {
    pub fn new(kind: SubcategoryKind, data: SupportSet) -> Self {
        ClassifiedSubcategory { kind, data }
    }
}

pub fn class_membership<F: Field>(
    m: &Module<F>,
    c: &ClassifiedSubcategory,
    max_terms: usize,
    seed: u64,
) -> Result<bool> {
    if m.algebra().name() != c.data.algebra_ref() {
        return Err(Error::AlgebraMismatch);
    }
    match c.kind {
        SubcategoryKind::EssentiallyClosed => Ok(supp(m).is_subset(&c.data)),
        SubcategoryKind::CohomologicallyStable | SubcategoryKind::StableLocalisingCandidate => {
            let ex = supp_ex(m, max_terms, seed)?;
            if !ex.complete {
                return Err(Error::IncompleteResolution(max_terms));
            }
            Ok(ex.set.is_subset(&c.data))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algmod::{structure_modules, AlgebraSpec, Module};
    use crate::field::PrimeField;

    fn a2() -> Arc<Algebra<PrimeField>> {
        Arc::new(AlgebraSpec::a2().build(&PrimeField::new(1009).unwrap()).unwrap())
    }

    #[test]
    fn supports_over_a2() {
        let alg = a2();
        let s = structure_modules(&alg);
        assert_eq!(supp(&s.simples[0]).names(), vec!["I1"]);
        assert!(supp(&Module::zero(alg.clone())).is_empty());
        let both = direct_sum(&alg, &[&s.injectives[0], &s.injectives[1]]);
        assert!(supp(&both).is_full());
        let ex = supp_ex(&s.simples[0], 8, 0).unwrap();
        assert_eq!(ex.set.names(), vec!["I1", "I2"]);
        assert!(ex.complete);
        assert_eq!(supp_ex(&s.injectives[1], 8, 0).unwrap().set.names(), vec!["I2"]);
    }

    #[test]
    fn joins_of_families() {
        let alg = a2();
        let s = structure_modules(&alg);
        let j = supp_join_family(&alg, &[s.simples[0].clone(), s.injectives[1].clone()]).unwrap();
        assert!(j.is_full());
        assert!(supp_join_family(&alg, &[]).unwrap().is_empty());
        let j = supp_join_family(&alg, &[s.simples[0].clone(), s.simples[0].clone()]).unwrap();
        assert_eq!(j.names(), vec!["I1"]);
    }

    #[test]
    fn membership() {
        let alg = a2();
        let s = structure_modules(&alg);
        let u1 = SupportSet::from_names(&alg, &["I1"]).unwrap();
        let u2 = SupportSet::from_names(&alg, &["I2"]).unwrap();
        let ec = ClassifiedSubcategory::new(SubcategoryKind::EssentiallyClosed, u1.clone());
        let cs = ClassifiedSubcategory::new(SubcategoryKind::CohomologicallyStable, u1);
        assert!(class_membership(&s.simples[0], &ec, 8, 0).unwrap());
        assert!(!class_membership(&s.simples[0], &cs, 8, 0).unwrap());
        let cs2 = ClassifiedSubcategory::new(SubcategoryKind::CohomologicallyStable, u2);
        assert!(class_membership(&s.injectives[1], &cs2, 8, 0).unwrap());
    }

    #[test]
    fn truncated_resolution_is_refused() {
        let alg = Arc::new(
            AlgebraSpec::quiver("a3", &["1", "2", "3"], &[("a", "2", "1"), ("b", "3", "2")], &[])
                .build(&PrimeField::new(1009).unwrap())
                .unwrap(),
        );
        let s = structure_modules(&alg);
        let u = SupportSet::from_names(&alg, &["I1", "I2"]).unwrap();
        let cs = ClassifiedSubcategory::new(SubcategoryKind::CohomologicallyStable, u);
        let ex = supp_ex(&s.simples[0], 1, 0).unwrap();
        assert!(!ex.complete);
        assert_eq!(class_membership(&s.simples[0], &cs, 1, 0), Err(Error::IncompleteResolution(1)));
        assert!(supp_ex(&s.simples[0], 4, 0).unwrap().complete);
    }

    #[test]
    fn json_round_trip() {
        let alg = a2();
        let u = SupportSet::from_names(&alg, &["I1"]).unwrap();
        assert_eq!(u.to_json(), serde_json::json!({"algebra_ref": "a2", "injectives": ["I1"]}));
        assert_eq!(SupportSet::from_json(&alg, &u.to_json()).unwrap(), u);
        assert!(SupportSet::from_names(&alg, &["I7"]).is_err());
    }
}
