use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algmod::{direct_sum, structure_modules, Algebra, Module};
use crate::error::Result;
use crate::field::Field;

use super::{supp_ex, SupportSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessViolation {
    pub trial: usize,
    /// `N`, `M`, `M/N` by name.
    pub terms: [String; 3],
    pub supports: [Vec<String>; 3],
    /// `supp_ex(X_i)` is not inside `supp_ex(X_j) + supp_ex(X_k)`.
    pub i: usize,
    pub split_equality: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub trials: usize,
    pub sequences_checked: usize,
    pub inclusions_checked: usize,
    pub split_checked: usize,
    pub skipped_incomplete: usize,
    pub violations: Vec<ExactnessViolation>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A random direct sum of structure modules of total dimension at most `cap`.
fn random_sum<F: Field>(alg: &Arc<Algebra<F>>, pieces: &[Module<F>], cap: usize, rng: &mut ChaCha8Rng) -> Module<F> {
    let mut chosen: Vec<&Module<F>> = Vec::new();
    let mut dim = 0;
    let want = rng.gen_range(1..=3);
    for _ in 0..want * 4 {
        if chosen.len() == want {
            break;
        }
        let p = &pieces[rng.gen_range(0..pieces.len())];
        if dim + p.dim() <= cap {
            dim += p.dim();
            chosen.push(p);
        }
    }
    direct_sum(alg, &chosen)
}

/// Samples short exact sequences `0 -> N -> M -> M/N -> 0` and checks the
/// two-out-of-three inclusions for exact supports.
///
/// Even trials take `N` generated by random vectors of a random sum `M`;
/// odd trials are split, where `supp_ex(M)` must equal the union.
pub fn exactness_property_check<F: Field>(
    alg: &Arc<Algebra<F>>,
    trials: usize,
    seed: u64,
    dim_cap: usize,
    max_terms: usize,
) -> Result<ExactnessReport> {
    let sm = structure_modules(alg);
    let pieces: Vec<Module<F>> =
        sm.simples.iter().chain(&sm.injectives).chain(&sm.projectives).filter(|m| m.dim() <= dim_cap).cloned().collect();
    let f = alg.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ExactnessReport { trials, ..Default::default() };
    for trial in 0..trials {
        let split = trial % 2 == 1;
        let (n, m, q) = if split {
            let n = random_sum(alg, &pieces, dim_cap.saturating_sub(1).max(1), &mut rng);
            let q = random_sum(alg, &pieces, dim_cap.saturating_sub(n.dim()).max(1), &mut rng);
            let m = direct_sum(alg, &[&n, &q]);
            (n, m, q)
        } else {
            let m = random_sum(alg, &pieces, dim_cap, &mut rng);
            let gens: Vec<Vec<F::Elem>> = (0..rng.gen_range(1..=2))
                .map(|_| (0..m.dim()).map(|_| f.random(&mut rng)).collect())
                .collect();
            let basis = m.generated_submodule(&gens);
            let (n, _) = m.submodule(&basis)?;
            let (q, _) = m.quotient(&basis)?;
            let name = m.display_name();
            (n.with_name(format!("N<{name}")), m, q.with_name(format!("{name}/N")))
        };
        let terms = [&n, &m, &q];
        let mut ex: Vec<SupportSet> = Vec::with_capacity(3);
        let mut complete = true;
        for t in terms {
            let s = supp_ex(t, max_terms, seed)?;
            complete &= s.complete;
            ex.push(s.set);
        }
        if !complete {
            report.skipped_incomplete += 1;
            continue;
        }
        report.sequences_checked += 1;
        let names = terms.map(Module::display_name);
        let supports = [ex[0].names(), ex[1].names(), ex[2].names()];
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            // both orders of (j, k) give the same union
            report.inclusions_checked += 2;
            if !ex[i].is_subset(&ex[j].union(&ex[k])) {
                report.violations.push(ExactnessViolation {
                    trial,
                    terms: names.clone(),
                    supports: supports.clone(),
                    i,
                    split_equality: false,
                });
            }
        }
        if split {
            report.split_checked += 1;
            if ex[1] != ex[0].union(&ex[2]) {
                report.violations.push(ExactnessViolation { trial, terms: names, supports, i: 1, split_equality: true });
            }
        }
    }
    Ok(report)
}
