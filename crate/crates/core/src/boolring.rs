//! Finite Boolean rings, their Stone spectra and the Stone adjunction.
//!
//! A finite Boolean ring is the powerset of its atoms. Elements are atom
//! bitmasks; a prime ideal `{x : t not in x}` is stored as its atom `t`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ATOMS: usize = 64;
/// Homomorphisms store a value for every source element.
pub const MAX_TABLE_ATOMS: usize = 20;

fn full_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoolRing {
    atoms: Vec<String>,
}

impl BoolRing {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let atoms: Vec<String> = labels.into_iter().map(Into::into).collect();
        if atoms.len() > MAX_ATOMS {
            return Err(Error::TooManyAtoms { max: MAX_ATOMS, got: atoms.len() });
        }
        let distinct: BTreeSet<&String> = atoms.iter().collect();
        if distinct.len() != atoms.len() {
            return Err(Error::InvalidElement("atom labels must be distinct".into()));
        }
        Ok(Arc::new(BoolRing { atoms }))
    }

    /// Ring with atoms labelled `a0, a1, ...`.
    pub fn with_atom_count(m: usize) -> Result<Arc<Self>> {
        Self::new((0..m).map(|i| format!("a{i}")))
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Arc<Self>> {
        let r: BoolRing = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(r.atoms)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "atoms": self.atoms })
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.atoms
    }

    /// `2^m`, the number of elements.
    pub fn size(&self) -> u128 {
        1u128 << self.atoms.len()
    }

    pub fn full_mask(&self) -> u64 {
        full_mask(self.atoms.len())
    }

    /// Element masks `0..2^m`; only sensible for small `m`.
    pub fn masks(&self) -> impl Iterator<Item = u64> {
        assert!(self.atoms.len() <= MAX_TABLE_ATOMS, "too many atoms to enumerate");
        0..(1u64 << self.atoms.len())
    }

    pub fn label_of(&self, mask: u64) -> String {
        let names: Vec<&str> = self.indices(mask).iter().map(|&i| self.atoms[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn indices(&self, mask: u64) -> Vec<usize> {
        (0..self.atoms.len()).filter(|i| mask >> i & 1 == 1).collect()
    }
}

pub trait BoolRingExt {
    fn elem(&self, mask: u64) -> Result<BoolElem>;
    fn from_indices(&self, idx: &[usize]) -> Result<BoolElem>;
    fn zero(&self) -> BoolElem;
    fn one(&self) -> BoolElem;
    fn atom(&self, i: usize) -> BoolElem;
    fn elements(&self) -> Vec<BoolElem>;
    fn spec_points(&self) -> Vec<StonePoint>;
    fn spectrum_space(&self) -> FiniteSpace;
    fn stone_unit_iso(&self) -> BoolHom;
}

impl BoolRingExt for Arc<BoolRing> {
    fn elem(&self, mask: u64) -> Result<BoolElem> {
        if mask & !self.full_mask() != 0 {
            return Err(Error::InvalidElement(format!("mask {mask:#b} exceeds {} atoms", self.atom_count())));
        }
        Ok(BoolElem { ring: self.clone(), bits: mask })
    }

    fn from_indices(&self, idx: &[usize]) -> Result<BoolElem> {
        let mut bits = 0u64;
        for &i in idx {
            if i >= self.atom_count() {
                return Err(Error::InvalidElement(format!("atom index {i} out of range")));
            }
            bits |= 1 << i;
        }
        Ok(BoolElem { ring: self.clone(), bits })
    }

    fn zero(&self) -> BoolElem {
        BoolElem { ring: self.clone(), bits: 0 }
    }

    fn one(&self) -> BoolElem {
        BoolElem { ring: self.clone(), bits: self.full_mask() }
    }

    fn atom(&self, i: usize) -> BoolElem {
        assert!(i < self.atom_count());
        BoolElem { ring: self.clone(), bits: 1 << i }
    }

    fn elements(&self) -> Vec<BoolElem> {
        self.masks().map(|bits| BoolElem { ring: self.clone(), bits }).collect()
    }

    /// One point per atom.
    fn spec_points(&self) -> Vec<StonePoint> {
        (0..self.atom_count()).map(|atom| StonePoint { ring: self.clone(), atom }).collect()
    }

    fn spectrum_space(&self) -> FiniteSpace {
        FiniteSpace { points: self.labels().to_vec() }
    }

    /// `x -> {p in Spec A : x not in p}`, landing in `Clop(Spec A)`.
    fn stone_unit_iso(&self) -> BoolHom {
        let target = self.spectrum_space().clop();
        let images: Vec<u64> = (0..self.atom_count())
            .map(|t| {
                let point = StonePoint { ring: self.clone(), atom: t };
                // the only point whose prime ideal misses {t} is point t
                self.spec_points()
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.ideal_contains(&self.atom(point.atom)))
                    .fold(0u64, |m, (i, _)| m | 1 << i)
            })
            .collect();
        BoolHom::from_atom_images(self.clone(), target, &images).expect("unit is well formed")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoolElem {
    ring: Arc<BoolRing>,
    bits: u64,
}

impl BoolElem {
    pub fn ring(&self) -> &Arc<BoolRing> {
        &self.ring
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn indices(&self) -> Vec<usize> {
        self.ring.indices(self.bits)
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == self.ring.full_mask()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    fn with(&self, bits: u64) -> Self {
        BoolElem { ring: self.ring.clone(), bits }
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.with(self.bits & other.bits))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.with(self.bits | other.bits))
    }

    pub fn complement(&self) -> Self {
        self.with(!self.bits & self.ring.full_mask())
    }

    /// `x + y = (x and not y) or (y and not x)`.
    pub fn ring_add(&self, other: &Self) -> Result<Self> {
        let a = self.meet(&other.complement())?;
        let b = other.meet(&self.complement())?;
        a.join(&b)
    }

    /// `x * y = x and y`.
    pub fn ring_mul(&self, other: &Self) -> Result<Self> {
        self.meet(other)
    }

    pub fn le(&self, other: &Self) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.bits & !other.bits == 0)
    }

    pub fn label(&self) -> String {
        self.ring.label_of(self.bits)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "atoms": self.indices() })
    }

    pub fn from_json(ring: &Arc<BoolRing>, v: &serde_json::Value) -> Result<Self> {
        let idx: Vec<usize> = v
            .get("atoms")
            .and_then(|a| serde_json::from_value(a.clone()).ok())
            .ok_or_else(|| Error::Parse("expected {\"atoms\": [indices]}".into()))?;
        ring.from_indices(&idx)
    }
}

/// A point of `Spec A`: the prime ideal of elements missing `atom`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StonePoint {
    ring: Arc<BoolRing>,
    atom: usize,
}

impl StonePoint {
    pub fn atom(&self) -> usize {
        self.atom
    }

    pub fn label(&self) -> &str {
        &self.ring.labels()[self.atom]
    }

    pub fn ideal_contains(&self, x: &BoolElem) -> bool {
        x.bits >> self.atom & 1 == 0
    }

    /// The prime ideal as an explicit element list (small rings only).
    pub fn prime_ideal(&self) -> Vec<BoolElem> {
        self.ring.elements().into_iter().filter(|x| self.ideal_contains(x)).collect()
    }
}

/// A finite discrete space; every subset is clopen.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteSpace {
    pub points: Vec<String>,
}

impl FiniteSpace {
    pub fn new<S: Into<String>>(points: impl IntoIterator<Item = S>) -> Result<Self> {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        let distinct: BTreeSet<&String> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(Error::InvalidElement("point labels must be distinct".into()));
        }
        if points.len() > MAX_ATOMS {
            return Err(Error::TooManyAtoms { max: MAX_ATOMS, got: points.len() });
        }
        Ok(FiniteSpace { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `Clop(T)`, the powerset of the points as a Boolean ring.
    pub fn clop(&self) -> Arc<BoolRing> {
        BoolRing::new(self.points.clone()).expect("distinct labels")
    }
}

/// A map between finite Boolean rings, stored as its full value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolHom {
    source: Arc<BoolRing>,
    target: Arc<BoolRing>,
    table: Vec<u64>,
}

impl BoolHom {
    /// The join-extension of the given atom images.
    pub fn from_atom_images(source: Arc<BoolRing>, target: Arc<BoolRing>, images: &[u64]) -> Result<Self> {
        if images.len() != source.atom_count() {
            return Err(Error::InvalidElement("one image per source atom".into()));
        }
        Self::from_fn(source.clone(), target, |x| {
            source.indices(x).iter().fold(0, |acc, &i| acc | images[i])
        })
    }

    /// Any function on element masks, homomorphism or not.
    pub fn from_fn(source: Arc<BoolRing>, target: Arc<BoolRing>, f: impl Fn(u64) -> u64) -> Result<Self> {
        if source.atom_count() > MAX_TABLE_ATOMS {
            return Err(Error::TooManyAtoms { max: MAX_TABLE_ATOMS, got: source.atom_count() });
        }
        let full = target.full_mask();
        let mut table = Vec::with_capacity(1 << source.atom_count());
        for x in source.masks() {
            let y = f(x);
            if y & !full != 0 {
                return Err(Error::InvalidElement(format!("image {y:#b} outside target")));
            }
            table.push(y);
        }
        Ok(BoolHom { source, target, table })
    }

    pub fn source(&self) -> &Arc<BoolRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BoolRing> {
        &self.target
    }

    pub fn apply_mask(&self, x: u64) -> u64 {
        self.table[x as usize]
    }

    pub fn apply(&self, x: &BoolElem) -> Result<BoolElem> {
        if *x.ring != *self.source {
            return Err(Error::MixedRings);
        }
        Ok(BoolElem { ring: self.target.clone(), bits: self.apply_mask(x.bits) })
    }

    /// Exhaustive check of 0, 1, meets, joins and complements.
    pub fn check_homomorphism(&self) -> std::result::Result<(), String> {
        let full_s = self.source.full_mask();
        let full_t = self.target.full_mask();
        if self.apply_mask(0) != 0 {
            return Err("0 is not preserved".into());
        }
        if self.apply_mask(full_s) != full_t {
            return Err("1 is not preserved".into());
        }
        for x in self.source.masks() {
            let fx = self.apply_mask(x);
            if self.apply_mask(!x & full_s) != !fx & full_t {
                return Err(format!("complement of {} is not preserved", self.source.label_of(x)));
            }
            for y in self.source.masks().filter(|&y| y > x) {
                let fy = self.apply_mask(y);
                if self.apply_mask(x & y) != fx & fy {
                    return Err(format!(
                        "meet of {} and {} is not preserved",
                        self.source.label_of(x),
                        self.source.label_of(y)
                    ));
                }
                if self.apply_mask(x | y) != fx | fy {
                    return Err(format!(
                        "join of {} and {} is not preserved",
                        self.source.label_of(x),
                        self.source.label_of(y)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn is_bijective(&self) -> bool {
        let values: BTreeSet<u64> = self.table.iter().copied().collect();
        self.source.atom_count() == self.target.atom_count() && values.len() == self.table.len()
    }
}

/// The transpose `T -> Spec A` of a homomorphism `phi: A -> Clop(T)`:
/// the point `p` goes to the prime ideal `{x : p not in phi(x)}`.
pub fn adjunction_transpose(phi: &BoolHom) -> Result<Vec<StonePoint>> {
    phi.check_homomorphism().map_err(Error::NotAHomomorphism)?;
    let a = phi.source();
    let mut out = Vec::with_capacity(phi.target().atom_count());
    for p in 0..phi.target().atom_count() {
        // the ideal misses exactly the elements containing one atom
        let outside: Vec<usize> = (0..a.atom_count()).filter(|&t| phi.apply_mask(1 << t) >> p & 1 == 1).collect();
        match outside.as_slice() {
            [t] => out.push(StonePoint { ring: a.clone(), atom: *t }),
            _ => {
                return Err(Error::NotAHomomorphism(format!(
                    "point {p} lies in {} atom images",
                    outside.len()
                )))
            }
        }
    }
    Ok(out)
}

/// `f^{-1}(U)` for `f: T -> Spec A` given pointwise and `U` a set of points
/// of `Spec A` (a mask over the atoms of `A`).
pub fn pullback(f: &[StonePoint], u: u64) -> u64 {
    f.iter().enumerate().filter(|(_, pt)| u >> pt.atom & 1 == 1).fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Disjoint refinement of a covering family: `y_a = x_a and not (x_b for b < a)`.
pub fn disjointify(x: &BoolElem, family: &[BoolElem]) -> Result<Vec<BoolElem>> {
    let mut join = x.ring.zero();
    for f in family {
        join = join.join(f)?;
    }
    if join != *x {
        return Err(Error::JoinMismatch);
    }
    let mut seen = x.ring.zero();
    let mut out = Vec::with_capacity(family.len());
    for f in family {
        out.push(f.meet(&seen.complement())?);
        seen = seen.join(f)?;
    }
    Ok(out)
}

/// Finite lattices presented by element indices, so distributivity checks
/// can also run on tables that are not Boolean.
pub trait FiniteLattice {
    fn size(&self) -> usize;
    fn meet(&self, a: usize, b: usize) -> usize;
    fn join(&self, a: usize, b: usize) -> usize;
    fn bottom(&self) -> usize;
    fn top(&self) -> usize;
    fn describe(&self, a: usize) -> String {
        a.to_string()
    }
}

impl FiniteLattice for BoolRing {
    fn size(&self) -> usize {
        1 << self.atom_count()
    }
    fn meet(&self, a: usize, b: usize) -> usize {
        a & b
    }
    fn join(&self, a: usize, b: usize) -> usize {
        a | b
    }
    fn bottom(&self) -> usize {
        0
    }
    fn top(&self) -> usize {
        self.full_mask() as usize
    }
    fn describe(&self, a: usize) -> String {
        self.label_of(a as u64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributivityWitness {
    /// "frame" for `u and join(v)`, "coframe" for `u or meet(v)`.
    pub law: &'static str,
    pub u: String,
    pub family: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributivityReport {
    pub exhaustive: bool,
    pub checked: usize,
    pub passed: bool,
    pub counterexample: Option<DistributivityWitness>,
}

/// Checks `u and (join v_a) = join (u and v_a)` and the dual law for all
/// families of size at most `max_family` (exhaustively for lattices with at
/// most 64 elements, otherwise on `samples` seeded random instances).
pub fn check_distributive_laws<L: FiniteLattice>(
    lattice: &L,
    max_family: usize,
    samples: usize,
    seed: u64,
) -> DistributivityReport {
    let n = lattice.size();
    let exhaustive = n <= 64;
    let mut checked = 0;
    let mut check = |u: usize, fam: &[usize]| -> Option<DistributivityWitness> {
        checked += 1;
        let jv = fam.iter().fold(lattice.bottom(), |acc, &v| lattice.join(acc, v));
        let lhs = lattice.meet(u, jv);
        let rhs = fam.iter().fold(lattice.bottom(), |acc, &v| lattice.join(acc, lattice.meet(u, v)));
        let witness = |law| DistributivityWitness {
            law,
            u: lattice.describe(u),
            family: fam.iter().map(|&v| lattice.describe(v)).collect(),
        };
        if lhs != rhs {
            return Some(witness("frame"));
        }
        let mv = fam.iter().fold(lattice.top(), |acc, &v| lattice.meet(acc, v));
        let lhs = lattice.join(u, mv);
        let rhs = fam.iter().fold(lattice.top(), |acc, &v| lattice.meet(acc, lattice.join(u, v)));
        (lhs != rhs).then(|| witness("coframe"))
    };
    let mut counterexample = None;
    if exhaustive {
        'outer: for size in 0..=max_family {
            for fam in multisets(n, size) {
                for u in 0..n {
                    if let Some(w) = check(u, &fam) {
                        counterexample = Some(w);
                        break 'outer;
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let size = rng.gen_range(0..=max_family);
            let fam: Vec<usize> = (0..size).map(|_| rng.gen_range(0..n)).collect();
            let u = rng.gen_range(0..n);
            if let Some(w) = check(u, &fam) {
                counterexample = Some(w);
                break;
            }
        }
    }
    DistributivityReport { exhaustive, checked, passed: counterexample.is_none(), counterexample }
}

/// Non-decreasing index sequences of the given length.
fn multisets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, size, v, cur, out);
            cur.pop();
        }
    }
    rec(n, size, 0, &mut cur, &mut out);
    out
}

/// Hasse diagram of a Boolean ring as a DOT digraph; `names` relabels atoms.
pub fn hasse_dot(ring: &BoolRing, names: Option<&[String]>, graph_name: &str) -> String {
    let labels: Vec<String> = names.map(|n| n.to_vec()).unwrap_or_else(|| ring.labels().to_vec());
    let node_label = |mask: u64| {
        let parts: Vec<&str> = ring.indices(mask).iter().map(|&i| labels[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    };
    let mut out = String::new();
    writeln!(out, "digraph {graph_name} {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for x in ring.masks() {
        writeln!(out, "  n{x} [label=\"{}\"];", node_label(x)).unwrap();
    }
    for x in ring.masks() {
        for i in 0..ring.atom_count() {
            if x >> i & 1 == 0 {
                writeln!(out, "  n{x} -> n{};", x | 1 << i).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}
