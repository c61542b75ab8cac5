use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{subspace, Matrix};
use crate::field::Field;

use super::algebra::Algebra;
use super::module::{direct_sum, Module, ModuleMap};

pub fn simple<F: Field>(alg: &Arc<Algebra<F>>, v: usize) -> Module<F> {
    let f = alg.field();
    let action = (0..alg.dim())
        .map(|b| {
            let x = if b == alg.vertex_basis(v) { f.one() } else { f.zero() };
            Matrix::from_rows(f, 1, &[vec![x]])
        })
        .collect();
    Module::new_unchecked(alg.clone(), 1, action).with_name(format!("S{}", alg.vertices()[v]))
}

/// Basis indices `j` with `e_v b_j = b_j`, i.e. paths starting at `v`.
fn projective_support<F: Field>(alg: &Algebra<F>, v: usize) -> Vec<usize> {
    (0..alg.dim()).filter(|&j| alg.product_coords(alg.vertex_basis(v), j) == alg.unit(j).as_slice()).collect()
}

/// `P_v = e_v Lambda`, acted on by right multiplication.
pub fn projective<F: Field>(alg: &Arc<Algebra<F>>, v: usize) -> Module<F> {
    let f = alg.field();
    let idx = projective_support(alg, v);
    let action = (0..alg.dim())
        .map(|b| {
            let rows: Vec<Vec<F::Elem>> = idx
                .iter()
                .map(|&j| idx.iter().map(|&k| alg.product_coords(j, b)[k].clone()).collect())
                .collect();
            Matrix::from_rows(f, idx.len(), &rows)
        })
        .collect();
    Module::new_unchecked(alg.clone(), idx.len(), action).with_name(format!("P{}", alg.vertices()[v]))
}

/// `I_v = D(Lambda e_v)`: the dual of the projective `e_v Lambda^op` of the
/// opposite algebra, so its action matrices are transposes.
pub fn injective<F: Field>(alg: &Arc<Algebra<F>>, v: usize) -> Module<F> {
    let op = Arc::new(alg.opposite());
    let p = projective(&op, v);
    let action = p.actions().iter().map(Matrix::transpose).collect();
    Module::new_unchecked(alg.clone(), p.dim(), action).with_name(format!("I{}", alg.vertices()[v]))
}

/// Basis indices of the paths dual to the standard basis of `I_v`.
pub(crate) fn injective_support<F: Field>(alg: &Algebra<F>, v: usize) -> Vec<usize> {
    projective_support(&alg.opposite(), v)
}

#[derive(Clone, Debug)]
pub struct StructureModules<F: Field> {
    pub simples: Vec<Module<F>>,
    pub projectives: Vec<Module<F>>,
    pub injectives: Vec<Module<F>>,
    pub regular: Module<F>,
    /// Names of the indecomposable injectives, indexing `Sp A`.
    pub spectrum: Vec<String>,
}

pub fn structure_modules<F: Field>(alg: &Arc<Algebra<F>>) -> StructureModules<F> {
    let r = alg.vertex_count();
    StructureModules {
        simples: (0..r).map(|v| simple(alg, v)).collect(),
        projectives: (0..r).map(|v| projective(alg, v)).collect(),
        injectives: (0..r).map(|v| injective(alg, v)).collect(),
        regular: Module::regular(alg.clone()),
        spectrum: injective_names(alg),
    }
}

pub fn injective_names<F: Field>(alg: &Algebra<F>) -> Vec<String> {
    alg.vertices().iter().map(|v| format!("I{v}")).collect()
}

#[derive(Clone, Debug)]
pub struct SocleRadical<F: Field> {
    /// Reduced echelon basis of `soc M`.
    pub socle: Matrix<F>,
    /// Multiplicity of `S_v` in the socle, per vertex.
    pub socle_multiplicities: Vec<usize>,
    /// Reduced echelon basis of `rad M = M J`.
    pub radical: Matrix<F>,
    /// Multiplicity of `S_v` in `M / rad M`.
    pub top_multiplicities: Vec<usize>,
}

pub fn socle_radical<F: Field>(m: &Module<F>) -> SocleRadical<F> {
    let alg = m.algebra();
    let f = m.field();
    let d = m.dim();
    let rad_b = alg.radical_basis();
    let socle = if rad_b.is_empty() || d == 0 {
        Matrix::identity(f, d)
    } else {
        let parts: Vec<&Matrix<F>> = rad_b.iter().map(|&b| m.action(b)).collect();
        subspace::span(f, d, &Matrix::hstack(&parts).left_kernel())
    };
    let radical = if rad_b.is_empty() {
        Matrix::zeros(f, 0, d)
    } else {
        let parts: Vec<&Matrix<F>> = rad_b.iter().map(|&b| m.action(b)).collect();
        Matrix::vstack(f, d, &parts).row_space()
    };
    let per_vertex = |basis: &Matrix<F>| -> Vec<usize> {
        (0..alg.vertex_count()).map(|v| basis.mul(m.action(alg.vertex_basis(v))).rank()).collect()
    };
    let socle_multiplicities = per_vertex(&socle);
    let dims = m.dim_vector();
    let rad_mult = per_vertex(&radical);
    let top_multiplicities = dims.iter().zip(&rad_mult).map(|(a, b)| a - b).collect();
    SocleRadical { socle, socle_multiplicities, radical, top_multiplicities }
}

#[derive(Clone, Debug)]
pub struct Envelope<F: Field> {
    pub module: Module<F>,
    pub iota: ModuleMap<F>,
    /// Copies of `I_v` in the envelope, per vertex.
    pub multiplicities: Vec<usize>,
}

/// `M -> E(M) = sum_v I_v^{m_v}`, `m_v` the multiplicity of `S_v` in the socle.
///
/// For a functional `phi` on `M e_v`, `m -> (q -> phi(m q))` is a module map
/// `M -> I_v`; one such map per socle basis vector at `v` gives `iota`.
pub fn injective_envelope<F: Field>(m: &Module<F>) -> Result<Envelope<F>> {
    let alg = m.algebra();
    let f = m.field();
    let sr = socle_radical(m);
    let mut columns: Vec<Vec<F::Elem>> = Vec::new();
    let mut parts = Vec::new();
    let mut multiplicities = Vec::new();
    let injectives: Vec<Module<F>> = (0..alg.vertex_count()).map(|v| injective(alg, v)).collect();
    for v in 0..alg.vertex_count() {
        let (_, pivots) = sr.socle.mul(m.action(alg.vertex_basis(v))).rref();
        let paths = injective_support(alg, v);
        multiplicities.push(pivots.len());
        for &c in &pivots {
            for &q in &paths {
                columns.push((0..m.dim()).map(|r| m.action(q).get(r, c).clone()).collect());
            }
            parts.push(&injectives[v]);
        }
    }
    let e = direct_sum(alg, &parts);
    let iota_t = Matrix::from_rows(f, m.dim(), &columns);
    let iota = ModuleMap::new(m.clone(), e.clone(), iota_t.transpose()).map_err(|_| Error::ExtensionFailure)?;
    if !iota.is_mono() {
        return Err(Error::ExtensionFailure);
    }
    Ok(Envelope { module: e, iota, multiplicities })
}

/// For finite length, a mono is essential iff its image contains the socle.
pub fn is_essential_mono<F: Field>(map: &ModuleMap<F>) -> Result<bool> {
    if !map.is_mono() {
        return Err(Error::NotMono);
    }
    let soc = socle_radical(&map.target).socle;
    Ok(subspace::contains_all(&map.image_basis(), &soc))
}

/// Multiplicities of the indecomposable injectives in `E(M)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpectralObject {
    pub algebra_ref: String,
    pub multiplicities: Vec<usize>,
    pub labels: Vec<String>,
}

impl SpectralObject {
    pub fn support(&self) -> BTreeSet<usize> {
        self.multiplicities.iter().enumerate().filter(|(_, &m)| m > 0).map(|(i, _)| i).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let multiplicities = self.multiplicities.iter().zip(&other.multiplicities).map(|(a, b)| a + b).collect();
        SpectralObject { multiplicities, ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 0)
    }

    /// Nonzero entries only, as `{"I1": 2}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .multiplicities
            .iter()
            .zip(&self.labels)
            .filter(|(m, _)| **m > 0)
            .map(|(m, l)| (l.clone(), serde_json::json!(m)))
            .collect();
        serde_json::Value::Object(map)
    }
}

pub fn spectral_image<F: Field>(m: &Module<F>) -> SpectralObject {
    SpectralObject {
        algebra_ref: m.algebra().name().to_string(),
        multiplicities: socle_radical(m).socle_multiplicities,
        labels: injective_names(m.algebra()),
    }
}

/// `t_U`: the part of a spectral object supported in `U`.
pub fn torsion_part(s: &SpectralObject, u: &BTreeSet<usize>) -> SpectralObject {
    let multiplicities =
        s.multiplicities.iter().enumerate().map(|(i, &m)| if u.contains(&i) { m } else { 0 }).collect();
    SpectralObject { multiplicities, ..s.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algmod::algebra::AlgebraSpec;
    use crate::field::PrimeField;

    fn alg(spec: AlgebraSpec) -> Arc<Algebra<PrimeField>> {
        Arc::new(spec.build(&PrimeField::new(1009).unwrap()).unwrap())
    }

    #[test]
    fn a2_structure() {
        let a = alg(AlgebraSpec::a2());
        let s = structure_modules(&a);
        for m in s.simples.iter().chain(&s.projectives).chain(&s.injectives) {
            m.validate().unwrap();
        }
        assert_eq!(s.injectives[0].dim(), 2);
        assert_eq!(s.injectives[1].dim(), 1);
        assert_eq!(socle_radical(&s.injectives[0]).socle_multiplicities, vec![1, 0]);
        assert_eq!(s.projectives[0].dim(), 1);
        assert_eq!(s.projectives[1].dim(), 2);
        assert_eq!(socle_radical(&s.regular).socle_multiplicities, vec![2, 0]);
    }

    #[test]
    fn envelope_of_simple_and_regular() {
        let a = alg(AlgebraSpec::a2());
        let s = structure_modules(&a);
        let e = injective_envelope(&s.simples[0]).unwrap();
        assert_eq!(e.multiplicities, vec![1, 0]);
        assert!(is_essential_mono(&e.iota).unwrap());
        let e = injective_envelope(&s.regular).unwrap();
        assert_eq!(e.multiplicities, vec![2, 0]);
        assert_eq!(e.module.dim(), 4);
        assert!(is_essential_mono(&e.iota).unwrap());
    }

    #[test]
    fn summand_inclusion_is_not_essential() {
        let a = alg(AlgebraSpec::a2());
        let s = structure_modules(&a);
        let sum = direct_sum(&a, &[&s.simples[0], &s.simples[1]]);
        let f = a.field();
        let incl = ModuleMap::new(s.simples[0].clone(), sum, Matrix::from_i64(f, &[&[1, 0]])).unwrap();
        assert!(!is_essential_mono(&incl).unwrap());
        let zero_map = ModuleMap::new(s.simples[0].clone(), s.simples[0].clone(), Matrix::zeros(f, 1, 1)).unwrap();
        assert_eq!(is_essential_mono(&zero_map), Err(Error::NotMono));
    }

    #[test]
    fn torsion_parts_add_up() {
        let a = alg(AlgebraSpec::a2());
        let s = structure_modules(&a);
        let p = spectral_image(&s.regular);
        let u: BTreeSet<usize> = [0].into();
        let not_u: BTreeSet<usize> = [1].into();
        assert_eq!(torsion_part(&p, &u).add(&torsion_part(&p, &not_u)), p);
    }
}
