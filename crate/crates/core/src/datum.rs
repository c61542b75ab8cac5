//! Support data `(T, sigma)` on finite discrete spaces: axiom checks and the
//! universal map `T -> Sp A`.
//!
//! `sigma` is a finite table of witnesses plus an optional callback for the
//! witnesses the verifier constructs (sums, and sums of injectives for the
//! meet axiom). A witness is looked up up to isomorphism.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algmod::{direct_sum, injective, is_isomorphic, resolve_module, Algebra, Module};
use crate::boolring::{adjunction_transpose, pullback, BoolHom, BoolRing, FiniteSpace, StonePoint};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::support::{supp, supp_ex, SupportSet};

/// Evaluates `sigma` on a witness the table does not cover; `None` declines.
pub type SigmaCallback<F> = Arc<dyn Fn(&Module<F>) -> Result<Option<u64>> + Send + Sync>;

#[derive(Clone)]
pub struct SupportDatum<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    pub space: FiniteSpace,
    /// Witnesses with their values, as masks over `space`.
    pub sigma: Vec<(Module<F>, u64)>,
    /// Selects `supp_ex` instead of `supp` for the axioms.
    pub exact: bool,
    pub full_support_witnesses: Vec<Module<F>>,
    pub callback: Option<SigmaCallback<F>>,
    pub max_terms: usize,
    pub seed: u64,
}

impl<F: Field> std::fmt::Debug for SupportDatum<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SupportDatum")
            .field("algebra", &self.algebra.name())
            .field("space", &self.space.points)
            .field("sigma", &self.sigma.iter().map(|(m, s)| (m.display_name(), *s)).collect::<Vec<_>>())
            .field("exact", &self.exact)
            .field("callback", &self.callback.is_some())
            .finish()
    }
}

/// `supp` or `supp_ex` of a module; the latter must be complete.
pub fn point_support<F: Field>(m: &Module<F>, exact: bool, max_terms: usize, seed: u64) -> Result<SupportSet> {
    if !exact {
        return Ok(supp(m));
    }
    let ex = supp_ex(m, max_terms, seed)?;
    if !ex.complete {
        return Err(Error::IncompleteResolution(max_terms));
    }
    Ok(ex.set)
}

/// `sum_{i in U} I_i` for a mask over `Sp A`.
fn injective_sum<F: Field>(alg: &Arc<Algebra<F>>, u: u64) -> Module<F> {
    let parts: Vec<Module<F>> = (0..alg.vertex_count()).filter(|i| u >> i & 1 == 1).map(|i| injective(alg, i)).collect();
    let refs: Vec<&Module<F>> = parts.iter().collect();
    direct_sum(alg, &refs)
}

impl<F: Field> SupportDatum<F> {
    pub fn new(algebra: Arc<Algebra<F>>, space: FiniteSpace, sigma: Vec<(Module<F>, u64)>, exact: bool) -> Self {
        let full = vec![injective_sum(&algebra, (1u64 << algebra.vertex_count()) - 1)];
        SupportDatum {
            algebra,
            space,
            sigma,
            exact,
            full_support_witnesses: full,
            callback: None,
            max_terms: crate::algmod::DEFAULT_MAX_TERMS,
            seed: 0,
        }
    }

    pub fn with_callback(mut self, cb: SigmaCallback<F>) -> Self {
        self.callback = Some(cb);
        self
    }

    pub fn with_full_support_witnesses(mut self, w: Vec<Module<F>>) -> Self {
        self.full_support_witnesses = w;
        self
    }

    /// The datum `(Sp A, supp)` (or `supp_ex`) on the given witnesses, with
    /// a callback computing the support of anything else.
    pub fn canonical(algebra: Arc<Algebra<F>>, witnesses: Vec<Module<F>>, exact: bool) -> Result<Self> {
        let n = algebra.vertex_count();
        let point_map: Vec<usize> = (0..n).collect();
        let space = FiniteSpace::new(crate::algmod::structure::injective_names(&algebra))?;
        Self::pullback_of(algebra, space, &point_map, witnesses, exact)
    }

    /// `sigma(X) = f^{-1}(supp X)` for a map `f` from the points of `space`
    /// to `Sp A`.
    pub fn pullback_of(
        algebra: Arc<Algebra<F>>,
        space: FiniteSpace,
        point_map: &[usize],
        witnesses: Vec<Module<F>>,
        exact: bool,
    ) -> Result<Self> {
        if point_map.len() != space.len() || point_map.iter().any(|&i| i >= algebra.vertex_count()) {
            return Err(Error::InvalidElement("point map must send every point into Sp A".into()));
        }
        let (max_terms, seed) = (crate::algmod::DEFAULT_MAX_TERMS, 0);
        let f: Vec<usize> = point_map.to_vec();
        let eval = move |m: &Module<F>| -> Result<u64> {
            let u = point_support(m, exact, max_terms, seed)?.mask();
            Ok(f.iter().enumerate().filter(|(_, &i)| u >> i & 1 == 1).fold(0, |acc, (p, _)| acc | 1 << p))
        };
        let sigma = witnesses.into_iter().map(|w| eval(&w).map(|s| (w, s))).collect::<Result<Vec<_>>>()?;
        let cb: SigmaCallback<F> = Arc::new(move |m| eval(m).map(Some));
        Ok(Self::new(algebra, space, sigma, exact).with_callback(cb))
    }

    fn support(&self, m: &Module<F>) -> Result<SupportSet> {
        point_support(m, self.exact, self.max_terms, self.seed)
    }

    fn label(&self, mask: u64) -> Vec<String> {
        (0..self.space.len()).filter(|p| mask >> p & 1 == 1).map(|p| self.space.points[p].clone()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "algebra_ref": self.algebra.name(),
            "space": {"points": self.space.points},
            "sigma": self.sigma.iter().map(|(m, s)| serde_json::json!({
                "module": m.display_name(),
                "subset": self.label(*s),
            })).collect::<Vec<_>>(),
            "exact": self.exact,
            "full_support_witnesses": self.full_support_witnesses.iter().map(Module::display_name).collect::<Vec<_>>(),
        })
    }

    /// Reads `{"space", "sigma", "exact", "full_support_witnesses"}` with
    /// optional `"modules"` (name to module JSON) and `"callback"`, which is
    /// `"supp"` for `sigma = f^{-1} supp` under `"point_map"`.
    pub fn from_json(algebra: Arc<Algebra<F>>, v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("datum: {m}"));
        let mut extra = BTreeMap::new();
        if let Some(mods) = v.get("modules").and_then(|m| m.as_object()) {
            for (name, mj) in mods {
                extra.insert(name.clone(), Module::from_json(algebra.clone(), mj)?.with_name(name.clone()));
            }
        }
        let points: Vec<String> = v
            .pointer("/space/points")
            .and_then(|p| p.as_array())
            .ok_or_else(|| bad("missing space.points"))?
            .iter()
            .map(|p| p.as_str().map(String::from).ok_or_else(|| bad("points must be strings")))
            .collect::<Result<_>>()?;
        let space = FiniteSpace::new(points)?;
        let exact = v.get("exact").and_then(|e| e.as_bool()).unwrap_or(false);
        let point_index = |name: &str| {
            space.points.iter().position(|p| p == name).ok_or_else(|| bad(&format!("unknown point {name:?}")))
        };
        let mut sigma = Vec::new();
        for entry in v.get("sigma").and_then(|s| s.as_array()).ok_or_else(|| bad("missing sigma"))? {
            let name = entry.get("module").and_then(|m| m.as_str()).ok_or_else(|| bad("sigma entry without module"))?;
            let mut mask = 0u64;
            for p in entry.get("subset").and_then(|s| s.as_array()).ok_or_else(|| bad("sigma entry without subset"))? {
                mask |= 1 << point_index(p.as_str().ok_or_else(|| bad("subset entries must be strings"))?)?;
            }
            sigma.push((resolve_module(&algebra, name, &extra)?, mask));
        }
        let mut datum = match v.get("callback").and_then(|c| c.as_str()) {
            None | Some("none") => Self::new(algebra.clone(), space.clone(), sigma, exact),
            Some("supp") => {
                let names = crate::algmod::structure::injective_names(&algebra);
                let map = v.get("point_map").and_then(|m| m.as_object()).ok_or_else(|| bad("callback needs point_map"))?;
                let f = space
                    .points
                    .iter()
                    .map(|p| {
                        let target = map.get(p).and_then(|t| t.as_str()).ok_or_else(|| bad(&format!("point {p:?} unmapped")))?;
                        names.iter().position(|n| n == target).ok_or_else(|| bad(&format!("unknown injective {target:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mut d = Self::pullback_of(algebra.clone(), space.clone(), &f, Vec::new(), exact)?;
                d.sigma = sigma;
                d
            }
            Some(other) => return Err(bad(&format!("unknown callback {other:?}"))),
        };
        if let Some(ws) = v.get("full_support_witnesses").and_then(|w| w.as_array()) {
            datum.full_support_witnesses = ws
                .iter()
                .map(|w| resolve_module(&algebra, w.as_str().ok_or_else(|| bad("witness names must be strings"))?, &extra))
                .collect::<Result<_>>()?;
        }
        Ok(datum)
    }
}

/// The table extended by every value the verifier has looked up.
struct Sigma<'a, F: Field> {
    datum: &'a SupportDatum<F>,
    known: Vec<(Module<F>, u64)>,
}

impl<'a, F: Field> Sigma<'a, F> {
    fn new(datum: &'a SupportDatum<F>) -> Self {
        Sigma { datum, known: datum.sigma.clone() }
    }

    fn get(&mut self, m: &Module<F>) -> Result<u64> {
        for (w, s) in &self.known {
            if w.dim() == m.dim() && is_isomorphic(w, m, self.datum.seed)? {
                return Ok(*s);
            }
        }
        let value = match &self.datum.callback {
            Some(cb) => cb(m)?,
            None => None,
        };
        let s = value.ok_or_else(|| Error::MissingSigma(m.display_name()))?;
        self.known.push((m.clone(), s));
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl AxiomResult {
    fn new(axiom: &str) -> Self {
        AxiomResult { axiom: axiom.into(), passed: true, checked: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.passed = false;
            self.failures.push(witness());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumReport {
    pub exact: bool,
    pub axioms: Vec<AxiomResult>,
    /// Support of the regular module, which may be a proper subset.
    pub regular_support: Vec<String>,
}

impl DatumReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| a.passed)
    }
}

pub fn verify_datum<F: Field>(d: &SupportDatum<F>) -> Result<DatumReport> {
    let alg = &d.algebra;
    let full_t = if d.space.is_empty() { 0 } else { (1u64 << d.space.len()) - 1 };
    let mut sigma = Sigma::new(d);
    let (zero_name, one_name, join_name, meet_name, mono_name) = if d.exact {
        ("E0", "E1", "E-join", "E-meet", "monotone")
    } else {
        ("S0", "S1", "S-join", "S-meet", "monotone")
    };

    let mut s0 = AxiomResult::new(zero_name);
    let z = sigma.get(&Module::zero(alg.clone()))?;
    s0.record(z == 0, || format!("sigma(0) = {:?}", d.label(z)));

    let mut s1 = AxiomResult::new(one_name);
    for w in &d.full_support_witnesses {
        let s = sigma.get(w)?;
        s1.record(s == full_t, || format!("sigma({}) = {:?}", w.display_name(), d.label(s)));
    }

    let witnesses: Vec<Module<F>> = d.sigma.iter().map(|(m, _)| m.clone()).collect();
    let supports = witnesses.iter().map(|w| d.support(w)).collect::<Result<Vec<_>>>()?;
    let mut join = AxiomResult::new(join_name);
    let mut meet = AxiomResult::new(meet_name);
    let mut mono = AxiomResult::new(mono_name);
    for (i, x) in witnesses.iter().enumerate() {
        for (j, y) in witnesses.iter().enumerate().skip(i) {
            let (sx, sy) = (sigma.get(x)?, sigma.get(y)?);
            let sum = direct_sum(alg, &[x, y]);
            let ss = sigma.get(&sum)?;
            join.record(ss == sx | sy, || {
                format!("sigma({}) = {:?}, union is {:?}", sum.display_name(), d.label(ss), d.label(sx | sy))
            });
            let zmod = injective_sum(alg, supports[i].mask() & supports[j].mask());
            let sz = sigma.get(&zmod)?;
            meet.record(sx & sy == sz, || {
                format!(
                    "sigma({}) meet sigma({}) = {:?}, sigma({}) = {:?}",
                    x.display_name(),
                    y.display_name(),
                    d.label(sx & sy),
                    zmod.display_name(),
                    d.label(sz)
                )
            });
            for (a, b, sa, sb, ua, ub) in [(x, y, sx, sy, &supports[i], &supports[j]), (y, x, sy, sx, &supports[j], &supports[i])] {
                if ua.is_subset(ub) {
                    mono.record(sa & !sb == 0, || format!("{} below {} but sigma is not", a.display_name(), b.display_name()));
                }
            }
        }
    }
    Ok(DatumReport {
        exact: d.exact,
        axioms: vec![s0, s1, join, meet, mono],
        regular_support: supp(&Module::regular(alg.clone())).names(),
    })
}

#[derive(Clone, Debug)]
pub struct UniversalMap {
    /// Image of each point of `T`, a point of `Sp A`.
    pub points: Vec<StonePoint>,
    pub factorization_ok: bool,
    pub failures: Vec<String>,
    /// `U -> sigma(sum_{i in U} I_i)`.
    pub induced: BoolHom,
}

impl UniversalMap {
    pub fn atoms(&self) -> Vec<usize> {
        self.points.iter().map(StonePoint::atom).collect()
    }

    pub fn to_json(&self, space: &FiniteSpace) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = space
            .points
            .iter()
            .zip(&self.points)
            .map(|(p, q)| (p.clone(), serde_json::Value::String(q.label().to_string())))
            .collect();
        serde_json::json!({"map": map, "factorization_ok": self.factorization_ok, "failures": self.failures})
    }
}

/// The unique map `f: T -> Sp A` with `sigma = f^{-1} supp`, obtained as the
/// Stone transpose of the induced lattice map.
pub fn universal_map<F: Field>(d: &SupportDatum<F>) -> Result<UniversalMap> {
    let alg = &d.algebra;
    let ring: Arc<BoolRing> = BoolRing::new(crate::algmod::structure::injective_names(alg))?;
    let clop = d.space.clop();
    let mut sigma = Sigma::new(d);
    let table = ring.masks().map(|u| sigma.get(&injective_sum(alg, u))).collect::<Result<Vec<_>>>()?;
    let induced = BoolHom::from_fn(ring, clop, |u| table[u as usize])?;
    induced.check_homomorphism().map_err(Error::NotALatticeHom)?;
    let points = adjunction_transpose(&induced).map_err(|e| match e {
        Error::NotAHomomorphism(m) => Error::NotALatticeHom(m),
        other => other,
    })?;
    let mut failures = Vec::new();
    for (w, s) in &d.sigma {
        let u = d.support(w)?.mask();
        let pulled = pullback(&points, u);
        if pulled != *s {
            failures.push(format!("sigma({}) = {:?} but f^-1 supp = {:?}", w.display_name(), d.label(*s), d.label(pulled)));
        }
    }
    Ok(UniversalMap { points, factorization_ok: failures.is_empty(), failures, induced })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UniversalityStatus {
    Unique,
    /// The witnesses do not separate the candidate maps.
    AmbiguousWitnessSet { count: usize },
    NoFactorization,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalityReport {
    pub candidates: usize,
    /// Every factorizing map, as atom indices per point.
    pub factorizing: Vec<Vec<usize>>,
    pub status: UniversalityStatus,
    /// Whether the unique map equals `universal_map`; `None` when that
    /// could not be computed or there is no unique map.
    pub matches_universal_map: Option<bool>,
}

/// Exhaustive search over all maps `T -> Sp A`.
pub fn verify_universality<F: Field>(d: &SupportDatum<F>) -> Result<UniversalityReport> {
    let n = d.algebra.vertex_count();
    let t = d.space.len();
    if t > 4 || n > 4 {
        return Err(Error::TooManyAtoms { max: 4, got: t.max(n) });
    }
    let supports = d.sigma.iter().map(|(w, _)| d.support(w).map(|s| s.mask())).collect::<Result<Vec<_>>>()?;
    let candidates = n.pow(t as u32);
    let mut factorizing = Vec::new();
    for code in 0..candidates {
        let f: Vec<usize> = (0..t).map(|p| code / n.pow(p as u32) % n).collect();
        let ok = d.sigma.iter().zip(&supports).all(|((_, s), &u)| {
            let pulled = f.iter().enumerate().filter(|(_, &i)| u >> i & 1 == 1).fold(0u64, |acc, (p, _)| acc | 1 << p);
            pulled == *s
        });
        if ok {
            factorizing.push(f);
        }
    }
    let status = match factorizing.len() {
        0 => UniversalityStatus::NoFactorization,
        1 => UniversalityStatus::Unique,
        count => UniversalityStatus::AmbiguousWitnessSet { count },
    };
    let matches_universal_map = match (&status, universal_map(d)) {
        (UniversalityStatus::Unique, Ok(u)) => Some(u.atoms() == factorizing[0]),
        _ => None,
    };
    Ok(UniversalityReport { candidates, factorizing, status, matches_universal_map })
}
