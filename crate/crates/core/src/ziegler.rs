//! Indecomposables of small dimension, and the Ziegler spectrum of an
//! algebra of finite representation type as a discrete space.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algmod::{
    decompose_module, direct_sum, is_isomorphic, projective, socle_radical, structure_modules, submodules_enumerate,
    Algebra, Module,
};
use crate::error::{Error, Result};
use crate::field::Field;

/// Count vectors `t` with `sum t_v * w_v <= cap`, `t` nonzero.
fn bounded_vectors(weights: &[usize], cap: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; weights.len()];
    loop {
        let mut i = 0;
        loop {
            if i == weights.len() {
                return out;
            }
            cur[i] += 1;
            if cur.iter().zip(weights).map(|(c, w)| c * w).sum::<usize>() <= cap {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        out.push(cur.clone());
    }
}

/// Position of `m` in `list` up to isomorphism.
fn position_of<F: Field>(list: &[Module<F>], m: &Module<F>, seed: u64) -> Result<Option<usize>> {
    for (i, x) in list.iter().enumerate() {
        if x.dim_vector() == m.dim_vector() && is_isomorphic(x, m, seed)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Indecomposables of dimension at most `dmax`, sorted by dimension vector.
///
/// Every module `M` is `P/K` for its projective cover `P = sum P_v^{t_v}`
/// with `K` inside `rad P` and `sum t_v` the length of the top, so the
/// quotients of such `P` by submodules of `rad P` cover everything up to
/// `dmax`.
pub fn enumerate_indecomposables<F: Field>(
    alg: &Arc<Algebra<F>>,
    dmax: usize,
    budget: usize,
    seed: u64,
) -> Result<Vec<Module<F>>> {
    let sm = structure_modules(alg);
    let names: Vec<Module<F>> = sm.simples.iter().chain(&sm.injectives).chain(&sm.projectives).cloned().collect();
    let mut found: Vec<Module<F>> = Vec::new();
    let mut work = 0usize;
    for t in bounded_vectors(&vec![1; alg.vertex_count()], dmax) {
        let parts: Vec<Module<F>> =
            t.iter().enumerate().flat_map(|(v, &c)| std::iter::repeat_n(projective(alg, v), c)).collect();
        let refs: Vec<&Module<F>> = parts.iter().collect();
        let p = direct_sum(alg, &refs);
        let rad = socle_radical(&p).radical;
        let (radm, incl) = p.submodule(&rad)?;
        let min_k = p.dim().saturating_sub(dmax);
        for k in submodules_enumerate(&radm, radm.dim(), budget)? {
            work += 1;
            if work > budget {
                return Err(Error::BudgetExceeded(budget));
            }
            if k.rows() < min_k {
                continue;
            }
            let (q, _) = p.quotient(&k.mul(&incl.matrix))?;
            let pieces = decompose_module(&q, seed)?;
            if pieces.len() != 1 || pieces[0].1 != 1 {
                continue;
            }
            if position_of(&found, &q, seed)?.is_none() {
                let name = match position_of(&names, &q, seed)? {
                    Some(i) => names[i].display_name(),
                    None => format!("M[{}]", q.dim_vector().iter().map(usize::to_string).collect::<Vec<_>>().join(",")),
                };
                found.push(q.with_name(name));
            }
        }
    }
    found.sort_by_key(|m| (m.dim(), std::cmp::Reverse(m.dim_vector()), m.display_name()));
    Ok(found)
}

#[derive(Clone, Debug)]
pub struct ZieglerSpectrum<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    pub indecomposables: Vec<Module<F>>,
    pub discrete: bool,
    /// No indecomposable has dimension above `dmax / 2`.
    pub certified: bool,
    pub dmax: usize,
}

impl<F: Field> ZieglerSpectrum<F> {
    pub fn len(&self) -> usize {
        self.indecomposables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indecomposables.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.indecomposables.iter().map(Module::display_name).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let points: Vec<serde_json::Value> = self
            .indecomposables
            .iter()
            .map(|m| {
                let soc = socle_radical(m).socle_multiplicities;
                let isotypes: Vec<String> = soc
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(v, _)| format!("S{}", self.algebra.vertices()[v]))
                    .collect();
                serde_json::json!({
                    "name": m.display_name(),
                    "dim": m.dim(),
                    "dim_vector": m.dim_vector(),
                    "socle": isotypes,
                })
            })
            .collect();
        serde_json::json!({
            "algebra_ref": self.algebra.name(),
            "points": points,
            "discrete": self.discrete,
            "certified": self.certified,
            "dmax": self.dmax,
        })
    }
}

pub fn ziegler_spectrum<F: Field>(alg: &Arc<Algebra<F>>, dmax: usize, budget: usize, seed: u64) -> Result<ZieglerSpectrum<F>> {
    let indecomposables = enumerate_indecomposables(alg, dmax, budget, seed)?;
    let certified = indecomposables.iter().all(|m| 2 * m.dim() <= dmax);
    Ok(ZieglerSpectrum { algebra: alg.clone(), indecomposables, discrete: true, certified, dmax })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub points: usize,
    pub subsets_checked: usize,
    pub subsets_closed: usize,
    /// Distinct classes cut out on the corpus.
    pub distinct_classes: usize,
    pub corpus_size: usize,
    pub certified: bool,
    pub failures: Vec<String>,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.subsets_closed == self.subsets_checked && self.distinct_classes == self.subsets_checked
    }
}

/// Summand counts of `m` over the spectrum; `None` if some summand is not a
/// spectrum point.
fn summand_counts<F: Field>(z: &ZieglerSpectrum<F>, m: &Module<F>, seed: u64) -> Result<Option<Vec<usize>>> {
    let mut counts = vec![0; z.len()];
    for (s, k) in decompose_module(m, seed)? {
        match position_of(&z.indecomposables, &s, seed)? {
            Some(i) => counts[i] += k,
            None => return Ok(None),
        }
    }
    Ok(Some(counts))
}

/// Checks on a bounded corpus that every subset `D` of the spectrum gives a
/// class `add(D)` closed under finite sums and summands, and that distinct
/// subsets give distinct classes.
///
/// The corpus holds all sums of points up to `corpus_dim` and `random`
/// quotients of free modules; a summand of a random module that is not a
/// spectrum point is a failure.
pub fn definable_correspondence_check<F: Field>(
    z: &ZieglerSpectrum<F>,
    corpus_dim: usize,
    random: usize,
    seed: u64,
) -> Result<CorrespondenceReport> {
    let alg = &z.algebra;
    let n = z.len();
    if n > 16 {
        return Err(Error::TooManyAtoms { max: 16, got: n });
    }
    let mut failures = Vec::new();
    let mut corpus: Vec<Module<F>> = Vec::new();
    let dims: Vec<usize> = z.indecomposables.iter().map(Module::dim).collect();
    for t in bounded_vectors(&dims, corpus_dim) {
        let parts: Vec<&Module<F>> =
            t.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat_n(&z.indecomposables[i], c)).collect();
        corpus.push(direct_sum(alg, &parts));
    }
    let f = alg.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reg = Module::regular(alg.clone());
    for _ in 0..random {
        let free = reg.power(rng.gen_range(1..=2));
        let gens: Vec<Vec<F::Elem>> =
            (0..rng.gen_range(1..=3)).map(|_| (0..free.dim()).map(|_| f.random(&mut rng)).collect()).collect();
        let (q, _) = free.quotient(&free.generated_submodule(&gens))?;
        if !q.is_zero() {
            corpus.push(q.with_name("random"));
        }
    }
    // summand supports of corpus modules, `None` when off the spectrum
    let mut counts: Vec<Option<Vec<usize>>> = Vec::with_capacity(corpus.len());
    for m in &corpus {
        let c = summand_counts(z, m, seed)?;
        if c.is_none() {
            failures.push(format!("a summand of a module of dimension vector {:?} is not a spectrum point", m.dim_vector()));
        }
        counts.push(c);
    }
    let support = |c: &[usize]| c.iter().enumerate().filter(|(_, &k)| k > 0).fold(0u64, |acc, (i, _)| acc | 1 << i);
    let supports: Vec<Option<u64>> = counts.iter().map(|c| c.as_deref().map(support)).collect();
    // explicit sums, decomposed again
    let mut sums: Vec<(usize, usize, u64)> = Vec::new();
    for i in 0..corpus.len() {
        for j in i..corpus.len() {
            let (Some(ci), Some(cj)) = (&counts[i], &counts[j]) else { continue };
            if corpus[i].dim() + corpus[j].dim() > 2 * corpus_dim {
                continue;
            }
            let s = direct_sum(alg, &[&corpus[i], &corpus[j]]);
            match summand_counts(z, &s, seed)? {
                Some(c) => {
                    let expected: Vec<usize> = ci.iter().zip(cj).map(|(a, b)| a + b).collect();
                    if c != expected {
                        failures.push(format!("summands of a sum are not the union (pair {i}, {j})"));
                    }
                    sums.push((i, j, support(&c)));
                }
                None => failures.push(format!("sum of corpus modules {i} and {j} has a summand off the spectrum")),
            }
        }
    }
    let point_supports: Vec<Option<u64>> = z
        .indecomposables
        .iter()
        .map(|m| summand_counts(z, m, seed).map(|c| c.as_deref().map(support)))
        .collect::<Result<_>>()?;
    let mut classes = std::collections::BTreeSet::new();
    let mut closed = 0;
    for d in 0u64..1 << n {
        let member = |s: &Option<u64>| s.is_some_and(|s| s & !d == 0);
        let mut ok = true;
        for &(i, j, s) in &sums {
            if member(&supports[i]) && member(&supports[j]) && s & !d != 0 {
                ok = false;
                failures.push(format!("add({d:#b}) is not closed under a sum"));
            }
        }
        for (p, s) in point_supports.iter().enumerate() {
            if member(s) != (d >> p & 1 == 1) {
                ok = false;
                failures.push(format!("point {} misplaced for subset {d:#b}", z.indecomposables[p].display_name()));
            }
        }
        closed += usize::from(ok);
        classes.insert(supports.iter().map(member).collect::<Vec<bool>>());
    }
    Ok(CorrespondenceReport {
        points: n,
        subsets_checked: 1 << n,
        subsets_closed: closed,
        distinct_classes: classes.len(),
        corpus_size: corpus.len(),
        certified: z.certified,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algmod::AlgebraSpec;
    use crate::field::PrimeField;

    fn build(spec: AlgebraSpec, p: u64) -> Arc<Algebra<PrimeField>> {
        Arc::new(spec.build(&PrimeField::new(p).unwrap()).unwrap())
    }

    #[test]
    fn vectors() {
        assert_eq!(bounded_vectors(&[1, 2], 2), vec![vec![1, 0], vec![2, 0], vec![0, 1]]);
    }

    #[test]
    fn small_spectra() {
        let z = ziegler_spectrum(&build(AlgebraSpec::a2(), 3), 4, 100_000, 0).unwrap();
        assert_eq!(z.names(), vec!["S1", "S2", "I1"]);
        assert!(z.certified);
        let z = ziegler_spectrum(&build(AlgebraSpec::dual_numbers(), 3), 4, 100_000, 0).unwrap();
        assert_eq!(z.len(), 2);
        let z = ziegler_spectrum(&build(AlgebraSpec::k_times_k(), 3), 4, 100_000, 0).unwrap();
        assert_eq!(z.names(), vec!["S1", "S2"]);
    }

    #[test]
    fn correspondence_on_a2() {
        let z = ziegler_spectrum(&build(AlgebraSpec::a2(), 3), 4, 100_000, 0).unwrap();
        let r = definable_correspondence_check(&z, 3, 6, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.distinct_classes, 8);
    }
}
