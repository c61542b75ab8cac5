use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::field::{Field, FieldSpec};

pub const DEFAULT_LENGTH_BOUND: usize = 10;
pub const CONVENTION: &str = "right modules, row vectors, paths compose left to right";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    /// Arrow indices in traversal order; empty for a vertex idempotent.
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.is_empty()
    }

    /// `self` followed by `other`, when composable.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        (self.target == other.source).then(|| Path {
            source: self.source,
            target: other.target,
            arrows: [self.arrows.as_slice(), other.arrows.as_slice()].concat(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
}

/// The algebra file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default = "FieldSpec::default_prime")]
    pub field: FieldSpec,
    pub quiver: QuiverSpec,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default = "default_length_bound")]
    pub length_bound: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
}

fn default_length_bound() -> usize {
    DEFAULT_LENGTH_BOUND
}

impl AlgebraSpec {
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("algebra: {e}")))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    /// The two-vertex algebra with arrow `a: 2 -> 1`, in which
    /// `0 -> S1 -> I1 -> I2 -> 0` is exact.
    pub fn a2() -> Self {
        Self::quiver("a2", &["1", "2"], &[("a", "2", "1")], &[])
    }

    /// `k[x]/(x^2)`.
    pub fn dual_numbers() -> Self {
        Self::quiver("dual_numbers", &["1"], &[("x", "1", "1")], &["x*x"])
    }

    /// `k x k`.
    pub fn k_times_k() -> Self {
        Self::quiver("k_times_k", &["1", "2"], &[], &[])
    }

    /// `k^n`, one vertex per atom.
    pub fn semisimple(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::quiver(&format!("k^{n}"), &refs, &[], &[])
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "a2" => Some(Self::a2()),
            "dual_numbers" | "kx_x2" => Some(Self::dual_numbers()),
            "k_times_k" | "kxk" => Some(Self::k_times_k()),
            _ => None,
        }
    }

    pub fn quiver(name: &str, vertices: &[&str], arrows: &[(&str, &str, &str)], relations: &[&str]) -> Self {
        AlgebraSpec {
            name: Some(name.to_string()),
            field: FieldSpec::default_prime(),
            quiver: QuiverSpec {
                vertices: vertices.iter().map(|v| v.to_string()).collect(),
                arrows: arrows
                    .iter()
                    .map(|(n, f, t)| ArrowSpec { name: n.to_string(), from: f.to_string(), to: t.to_string() })
                    .collect(),
            },
            relations: relations.iter().map(|r| r.to_string()).collect(),
            length_bound: DEFAULT_LENGTH_BOUND,
            convention: Some(CONVENTION.to_string()),
        }
    }

    pub fn with_field(mut self, field: FieldSpec) -> Self {
        self.field = field;
        self
    }

    pub fn build<F: Field>(&self, field: &F) -> Result<Algebra<F>> {
        Algebra::from_quiver(self, field)
    }
}

/// `kQ/I` for a finite quiver `Q` and an ideal generated by homogeneous
/// relations, with a basis of paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra<F: Field> {
    field: F,
    name: String,
    vertices: Vec<String>,
    arrows: Vec<ArrowSpec>,
    relations: Vec<String>,
    length_bound: usize,
    basis: Vec<Path>,
    /// `table[i * dim + j]` holds the coordinates of `b_i b_j`.
    table: Vec<Vec<F::Elem>>,
    vertex_basis: Vec<usize>,
}

type Relation<F> = Vec<(<F as Field>::Elem, Path)>;

impl<F: Field> Algebra<F> {
    pub fn from_quiver(spec: &AlgebraSpec, field: &F) -> Result<Self> {
        let vertices = spec.quiver.vertices.clone();
        let vindex = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::InvalidAlgebra(format!("unknown vertex {name:?}")))
        };
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidAlgebra(format!("duplicate vertex {v:?}")));
            }
        }
        let mut ends = Vec::new();
        for (i, a) in spec.quiver.arrows.iter().enumerate() {
            if spec.quiver.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::InvalidAlgebra(format!("duplicate arrow {:?}", a.name)));
            }
            if a.name.is_empty() || a.name.contains(['*', '+', '-', ' ']) {
                return Err(Error::InvalidAlgebra(format!("bad arrow name {:?}", a.name)));
            }
            ends.push((vindex(&a.from)?, vindex(&a.to)?));
        }
        let bound = spec.length_bound;

        // all paths of length <= bound, by length
        let mut paths: Vec<Path> = (0..vertices.len()).map(Path::trivial).collect();
        let mut layer = paths.clone();
        for _ in 0..bound {
            let mut next = Vec::new();
            for p in &layer {
                for (a, &(s, t)) in ends.iter().enumerate() {
                    if s == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(a);
                        next.push(Path { source: p.source, target: t, arrows });
                    }
                }
            }
            paths.extend(next.iter().cloned());
            layer = next;
            if layer.is_empty() {
                break;
            }
        }
        let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();

        let relations: Vec<Relation<F>> = spec
            .relations
            .iter()
            .map(|r| parse_relation(r, field, &spec.quiver.arrows, &ends))
            .collect::<Result<_>>()?;

        // the ideal, degree by degree; relations are homogeneous
        let np = paths.len();
        let mut gens: Vec<Vec<F::Elem>> = Vec::new();
        for rel in &relations {
            let (s, t, len) = (rel[0].1.source, rel[0].1.target, rel[0].1.len());
            for p in paths.iter().filter(|p| p.target == s) {
                for q in paths.iter().filter(|q| q.source == t && p.len() + len + q.len() <= bound) {
                    let mut v = vec![field.zero(); np];
                    for (c, term) in rel {
                        let w = p.concat(term).and_then(|x| x.concat(q)).expect("composable");
                        let k = index[&w];
                        v[k] = field.add(&v[k], c);
                    }
                    gens.push(v);
                }
            }
        }
        let (ideal, pivots) = Matrix::from_rows(field, np, &gens).rref();
        let basis_idx: Vec<usize> = (0..np).filter(|c| !pivots.contains(c)).collect();
        if basis_idx.iter().any(|&k| paths[k].len() == bound) {
            return Err(Error::NotFiniteDimensional(bound));
        }
        let basis: Vec<Path> = basis_idx.iter().map(|&k| paths[k].clone()).collect();
        let dim = basis.len();
        let pos: HashMap<usize, usize> = basis_idx.iter().enumerate().map(|(i, &k)| (k, i)).collect();

        // normal form of a single path modulo the ideal
        let reduce = |k: usize| -> Vec<F::Elem> {
            let mut out = vec![field.zero(); dim];
            if let Some(&i) = pos.get(&k) {
                out[i] = field.one();
                return out;
            }
            let r = pivots.iter().position(|&c| c == k).expect("pivot path");
            for (c, x) in ideal.row(r).iter().enumerate() {
                if c != k && !field.is_zero(x) {
                    out[pos[&c]] = field.neg(x);
                }
            }
            out
        };
        let mut table = Vec::with_capacity(dim * dim);
        for p in &basis {
            for q in &basis {
                let coords = match p.concat(q) {
                    Some(w) if w.len() <= bound => match index.get(&w) {
                        Some(&k) => reduce(k),
                        None => vec![field.zero(); dim],
                    },
                    _ => vec![field.zero(); dim],
                };
                table.push(coords);
            }
        }
        let vertex_basis = (0..vertices.len()).map(|v| basis.iter().position(|p| *p == Path::trivial(v)).unwrap()).collect();
        let alg = Algebra {
            field: field.clone(),
            name: spec.name.clone().unwrap_or_else(|| "algebra".into()),
            vertices,
            arrows: spec.quiver.arrows.clone(),
            relations: spec.relations.clone(),
            length_bound: bound,
            basis,
            table,
            vertex_basis,
        };
        alg.check_associative()?;
        Ok(alg)
    }

    fn check_associative(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let left = self.mul(&self.mul(&self.unit(i), &self.unit(j)), &self.unit(k));
                    let right = self.mul(&self.unit(i), &self.mul(&self.unit(j), &self.unit(k)));
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "structure constants not associative at ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[ArrowSpec] {
        &self.arrows
    }

    pub fn relations(&self) -> &[String] {
        &self.relations
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Basis index of the vertex idempotent `e_v`.
    pub fn vertex_basis(&self, v: usize) -> usize {
        self.vertex_basis[v]
    }

    /// Basis indices of paths of positive length; they span the radical.
    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.basis[i].is_trivial()).collect()
    }

    /// Basis indices of vertices and arrows, which generate the algebra.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].len() <= 1).collect()
    }

    pub fn label(&self, i: usize) -> String {
        let p = &self.basis[i];
        if p.is_trivial() {
            format!("e{}", self.vertices[p.source])
        } else {
            p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim()).map(|i| self.label(i)).collect()
    }

    pub fn unit(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn one(&self) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        for &i in &self.vertex_basis {
            v[i] = self.field.one();
        }
        v
    }

    /// Structure constants `c_{ij}^k`.
    pub fn product_coords(&self, i: usize, j: usize) -> &[F::Elem] {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let d = self.dim();
        let mut out = vec![f.zero(); d];
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, c) in self.table[i * d + j].iter().enumerate() {
                    if !f.is_zero(c) {
                        out[k] = f.add(&out[k], &f.mul(&ab, c));
                    }
                }
            }
        }
        out
    }

    /// Same basis, reversed paths, `b_i *op b_j = b_j b_i`.
    pub fn opposite(&self) -> Self {
        let d = self.dim();
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                table.push(self.table[j * d + i].clone());
            }
        }
        let basis = self
            .basis
            .iter()
            .map(|p| Path { source: p.target, target: p.source, arrows: p.arrows.iter().rev().copied().collect() })
            .collect();
        let arrows = self
            .arrows
            .iter()
            .map(|a| ArrowSpec { name: a.name.clone(), from: a.to.clone(), to: a.from.clone() })
            .collect();
        let relations = self.relations.iter().map(|r| reverse_relation(r)).collect();
        Algebra {
            field: self.field.clone(),
            name: format!("{}^op", self.name),
            vertices: self.vertices.clone(),
            arrows,
            relations,
            length_bound: self.length_bound,
            basis,
            table,
            vertex_basis: self.vertex_basis.clone(),
        }
    }

    pub fn spec(&self) -> AlgebraSpec {
        AlgebraSpec {
            name: Some(self.name.clone()),
            field: self.field.spec(),
            quiver: QuiverSpec { vertices: self.vertices.clone(), arrows: self.arrows.clone() },
            relations: self.relations.clone(),
            length_bound: self.length_bound,
            convention: Some(CONVENTION.to_string()),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.spec().to_json()
    }

    /// Structure-constant tensor as nested arrays `[i][j][k]`.
    pub fn structure_constants_json(&self) -> serde_json::Value {
        let d = self.dim();
        serde_json::Value::Array(
            (0..d)
                .map(|i| {
                    serde_json::Value::Array(
                        (0..d)
                            .map(|j| {
                                serde_json::Value::Array(
                                    self.table[i * d + j].iter().map(|x| self.field.to_json(x)).collect(),
                                )
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

/// Reverses every term of a relation, keeping signs and coefficients in front.
fn reverse_relation(text: &str) -> String {
    let mut out = String::new();
    let mut term = String::new();
    let flush = |term: &mut String, out: &mut String| {
        let factors: Vec<&str> = term.split('*').map(str::trim).filter(|f| !f.is_empty()).collect();
        let (nums, arrows): (Vec<&str>, Vec<&str>) = factors.iter().partition(|f| f.parse::<i64>().is_ok());
        let rev: Vec<&str> = nums.into_iter().chain(arrows.into_iter().rev()).collect();
        out.push_str(&rev.join("*"));
        term.clear();
    };
    for ch in text.chars() {
        if ch == '+' || ch == '-' {
            flush(&mut term, &mut out);
            out.push_str(if out.is_empty() { if ch == '-' { "-" } else { "" } } else if ch == '-' { " - " } else { " + " });
        } else {
            term.push(ch);
        }
    }
    flush(&mut term, &mut out);
    out
}

/// Parses `"a*b - 2*c*d"` into coefficient/path pairs.
fn parse_relation<F: Field>(
    text: &str,
    field: &F,
    arrows: &[ArrowSpec],
    ends: &[(usize, usize)],
) -> Result<Relation<F>> {
    let bad = |m: &str| Error::BadRelation(text.to_string(), m.to_string());
    let mut terms: Vec<(F::Elem, Path)> = Vec::new();
    let mut sign = 1i64;
    let mut chunk = String::new();
    let mut pieces = Vec::new();
    for ch in text.chars() {
        match ch {
            '+' | '-' => {
                pieces.push((sign, std::mem::take(&mut chunk)));
                sign = if ch == '-' { -1 } else { 1 };
            }
            _ => chunk.push(ch),
        }
    }
    pieces.push((sign, chunk));
    for (i, (sign, piece)) in pieces.into_iter().enumerate() {
        let piece = piece.trim();
        if piece.is_empty() {
            if i == 0 {
                continue;
            }
            return Err(bad("empty term"));
        }
        let mut coeff = field.from_i64(sign);
        let mut path_arrows: Vec<usize> = Vec::new();
        for factor in piece.split('*').map(str::trim) {
            if factor.is_empty() {
                return Err(bad("empty factor"));
            }
            if let Ok(n) = factor.parse::<i64>() {
                if !path_arrows.is_empty() {
                    return Err(bad("coefficients must precede arrows"));
                }
                coeff = field.mul(&coeff, &field.from_i64(n));
                continue;
            }
            let a = arrows.iter().position(|a| a.name == factor).ok_or_else(|| bad(&format!("unknown arrow {factor:?}")))?;
            if let Some(&prev) = path_arrows.last() {
                if ends[prev].1 != ends[a].0 {
                    return Err(bad(&format!("arrows {:?} and {factor:?} do not compose", arrows[prev].name)));
                }
            }
            path_arrows.push(a);
        }
        if path_arrows.is_empty() {
            return Err(bad("terms must have length at least one"));
        }
        let path = Path { source: ends[path_arrows[0]].0, target: ends[*path_arrows.last().unwrap()].1, arrows: path_arrows };
        terms.push((coeff, path));
    }
    let first = terms.first().ok_or_else(|| bad("empty relation"))?.1.clone();
    for (_, p) in &terms {
        if p.source != first.source || p.target != first.target {
            return Err(bad("terms have different sources or targets"));
        }
        if p.len() != first.len() {
            return Err(bad("terms have different lengths"));
        }
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn f() -> PrimeField {
        PrimeField::new(1009).unwrap()
    }

    #[test]
    fn a2_path_algebra() {
        let alg = AlgebraSpec::a2().build(&f()).unwrap();
        assert_eq!(alg.dim(), 3);
        assert_eq!(alg.labels(), vec!["e1", "e2", "a"]);
        let forward = AlgebraSpec::quiver("fwd", &["1", "2"], &[("a", "1", "2")], &[]).build(&f()).unwrap();
        assert_eq!(forward.dim(), 3);
    }

    #[test]
    fn dual_numbers_and_spurious_relation() {
        let alg = AlgebraSpec::dual_numbers().build(&f()).unwrap();
        assert_eq!(alg.dim(), 2);
        let x = alg.unit(1);
        assert!(alg.mul(&x, &x).iter().all(|c| *c == 0));
        let kk = AlgebraSpec::quiver("s", &["1", "2"], &[("a", "1", "2")], &["a"]).build(&f()).unwrap();
        assert_eq!(kk.dim(), 2);
        assert!(kk.radical_basis().is_empty());
    }

    #[test]
    fn free_loop_is_rejected() {
        let spec = AlgebraSpec::quiver("loop", &["1"], &[("x", "1", "1")], &[]);
        assert_eq!(spec.build(&f()), Err(Error::NotFiniteDimensional(10)));
    }

    #[test]
    fn relation_errors() {
        let q = |rels: &[&str]| {
            AlgebraSpec::quiver("q", &["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")], rels)
                .build(&f())
        };
        assert!(q(&["a*b - c*c"]).is_err());
        assert!(matches!(q(&["a - b"]), Err(Error::BadRelation(..))));
        assert!(matches!(q(&["b*a"]), Err(Error::BadRelation(..))));
        assert!(matches!(q(&["a*b - c"]), Err(Error::BadRelation(..))));
        assert!(matches!(q(&["z"]), Err(Error::BadRelation(..))));
        assert!(matches!(q(&["3"]), Err(Error::BadRelation(..))));
        assert_eq!(q(&["a*b"]).unwrap().dim(), 6);
        assert_eq!(q(&[]).unwrap().dim(), 7);
    }

    #[test]
    fn commutative_square() {
        let spec = AlgebraSpec::quiver(
            "square",
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
            &["a*b - c*d"],
        );
        let alg = spec.build(&f()).unwrap();
        assert_eq!(alg.dim(), 4 + 4 + 1);
        let ab = alg.mul(&alg.unit(alg.labels().iter().position(|l| l == "a").unwrap()), &alg.unit(alg.labels().iter().position(|l| l == "b").unwrap()));
        let cd = alg.mul(&alg.unit(alg.labels().iter().position(|l| l == "c").unwrap()), &alg.unit(alg.labels().iter().position(|l| l == "d").unwrap()));
        assert_eq!(ab, cd);
    }

    #[test]
    fn json_round_trip() {
        let spec = AlgebraSpec::dual_numbers();
        let back = AlgebraSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(back, spec);
        let minimal = serde_json::json!({"quiver": {"vertices": ["1"]}});
        let s = AlgebraSpec::from_json(&minimal).unwrap();
        assert_eq!(s.field, FieldSpec::Prime { p: 1009 });
        assert_eq!(s.length_bound, DEFAULT_LENGTH_BOUND);
    }

    #[test]
    fn opposite_reverses_products() {
        let alg = AlgebraSpec::a2().build(&f()).unwrap();
        let op = alg.opposite();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(op.product_coords(i, j), alg.product_coords(j, i));
            }
        }
        assert_eq!(op.arrows()[0].from, "1");
        assert_eq!(reverse_relation("a*b - 2*c*d"), "b*a - 2*d*c");
    }
}
