use std::collections::HashSet;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algmod::submodules::projective_points;
use crate::algmod::{
    decompose_module, direct_sum, ext1, is_isomorphic, structure_modules, submodules_enumerate, Algebra, Module,
};
use crate::error::{Error, Result};
use crate::field::Field;

use super::{supp, SupportSet};

/// Extension classes are enumerated in full up to this many projective points.
pub const EXT_POINT_LIMIT: usize = 512;
/// Random classes tried per `Ext^1` space beyond the point limit.
pub const EXT_RANDOM_CLASSES: usize = 12;

/// A bounded localising closure, kept as its indecomposable objects.
#[derive(Clone, Debug)]
pub struct Closure<F: Field> {
    pub generators: Vec<String>,
    /// Pairwise non-isomorphic indecomposables.
    pub corpus: Vec<Module<F>>,
    /// Join of the supports over the corpus.
    pub sigma: SupportSet,
    /// Every `I_i` with `i` in `sigma` belongs to the corpus.
    pub stable: bool,
    /// False when some extension space was only sampled.
    pub exhaustive: bool,
    pub dim_cap: usize,
}

impl<F: Field> Closure<F> {
    /// Whether every indecomposable summand of `m` lies in the corpus.
    pub fn contains(&self, m: &Module<F>, seed: u64) -> Result<bool> {
        for (s, _) in decompose_module(m, seed)? {
            if find(&self.corpus, &s, seed)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn corpus_names(&self) -> Vec<String> {
        self.corpus.iter().map(Module::display_name).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "generators": self.generators,
            "corpus": self.corpus.iter().map(|m| serde_json::json!({
                "name": m.display_name(),
                "dim": m.dim(),
                "dim_vector": m.dim_vector(),
            })).collect::<Vec<_>>(),
            "sigma": self.sigma.names(),
            "stable": self.stable,
            "exhaustive": self.exhaustive,
            "dim_cap": self.dim_cap,
        })
    }
}

fn find<F: Field>(corpus: &[Module<F>], m: &Module<F>, seed: u64) -> Result<Option<usize>> {
    for (i, c) in corpus.iter().enumerate() {
        if is_isomorphic(c, m, seed)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

struct Builder<F: Field> {
    alg: Arc<Algebra<F>>,
    named: Vec<Module<F>>,
    corpus: Vec<Module<F>>,
    seed: u64,
}

impl<F: Field> Builder<F> {
    /// Adds the indecomposable summands of `m`; true if any was new.
    fn absorb(&mut self, m: &Module<F>) -> Result<bool> {
        let mut grew = false;
        if m.is_zero() {
            return Ok(false);
        }
        for (s, _) in decompose_module(m, self.seed)? {
            if find(&self.corpus, &s, self.seed)?.is_none() {
                let name = match find(&self.named, &s, self.seed)? {
                    Some(i) => self.named[i].display_name(),
                    None => format!(
                        "M[{}]",
                        s.dim_vector().iter().map(usize::to_string).collect::<Vec<_>>().join(",")
                    ),
                };
                self.corpus.push(s.with_name(name));
                grew = true;
            }
        }
        Ok(grew)
    }

    fn sum(&self, counts: &[usize]) -> Module<F> {
        let parts: Vec<&Module<F>> =
            counts.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat_n(&self.corpus[i], c)).collect();
        direct_sum(&self.alg, &parts)
    }
}

/// Nonzero count vectors over `dims` with total dimension at most `cap`.
fn multisets(dims: &[usize], cap: usize) -> Vec<Vec<usize>> {
    fn rec(dims: &[usize], i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == dims.len() {
            if cur.iter().any(|&c| c > 0) {
                out.push(cur.clone());
            }
            return;
        }
        let mut c = 0;
        loop {
            cur.push(c);
            rec(dims, i + 1, left - c * dims[i], cur, out);
            cur.pop();
            c += 1;
            if dims[i] == 0 || c * dims[i] > left {
                break;
            }
        }
    }
    let mut out = Vec::new();
    rec(dims, 0, cap, &mut Vec::new(), &mut out);
    out
}

fn trimmed(v: &[usize]) -> Vec<usize> {
    let end = v.iter().rposition(|&c| c > 0).map_or(0, |i| i + 1);
    v[..end].to_vec()
}

/// Closes the generators under submodules, quotients, finite sums and
/// extensions whose middle term has dimension at most `dim_cap`.
///
/// Results are certified relative to `dim_cap` only.
pub fn localising_closure<F: Field>(
    alg: &Arc<Algebra<F>>,
    generators: &[Module<F>],
    dim_cap: usize,
    budget: usize,
    seed: u64,
) -> Result<Closure<F>> {
    let sm = structure_modules(alg);
    let named: Vec<Module<F>> = sm.simples.iter().chain(&sm.injectives).chain(&sm.projectives).cloned().collect();
    let mut b = Builder { alg: alg.clone(), named, corpus: Vec::new(), seed };
    for g in generators {
        if g.algebra() != alg {
            return Err(Error::AlgebraMismatch);
        }
        b.absorb(g)?;
    }
    let f = alg.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut exhaustive = true;
    let mut work = 0usize;
    let mut sq_done = 0;
    let mut ext_done: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
    loop {
        let mut grew = false;
        while sq_done < b.corpus.len() {
            let m = b.corpus[sq_done].clone();
            sq_done += 1;
            for basis in submodules_enumerate(&m, m.dim(), budget)? {
                work += 1;
                if work > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                let (sub, _) = m.submodule(&basis)?;
                let (quo, _) = m.quotient(&basis)?;
                grew |= b.absorb(&sub)?;
                grew |= b.absorb(&quo)?;
            }
        }
        let dims: Vec<usize> = b.corpus.iter().map(Module::dim).collect();
        let sums = multisets(&dims, dim_cap.saturating_sub(1));
        let dim_of = |c: &[usize]| c.iter().zip(&dims).map(|(a, d)| a * d).sum::<usize>();
        for qc in &sums {
            for nc in &sums {
                if dim_of(qc) + dim_of(nc) > dim_cap || !ext_done.insert((trimmed(qc), trimmed(nc))) {
                    continue;
                }
                let (q, n) = (b.sum(qc), b.sum(nc));
                let ext = ext1(&q, &n)?;
                if ext.dim() == 0 {
                    continue;
                }
                let classes = match projective_points(&f, ext.dim(), EXT_POINT_LIMIT) {
                    Ok(points) => points,
                    Err(_) => {
                        exhaustive = false;
                        let mut v: Vec<Vec<F::Elem>> = (0..ext.dim())
                            .map(|i| (0..ext.dim()).map(|j| if i == j { f.one() } else { f.zero() }).collect())
                            .collect();
                        v.extend((0..EXT_RANDOM_CLASSES).map(|_| (0..ext.dim()).map(|_| f.random(&mut rng)).collect()));
                        v
                    }
                };
                for c in classes {
                    work += 1;
                    if work > budget {
                        return Err(Error::BudgetExceeded(budget));
                    }
                    let (e, _, _) = ext.extension(&c)?;
                    grew |= b.absorb(&e)?;
                }
            }
        }
        if !grew && sq_done == b.corpus.len() {
            break;
        }
    }
    let mut sigma = SupportSet::empty(alg);
    for m in &b.corpus {
        sigma = sigma.union(&supp(m));
    }
    let mut stable = true;
    for &i in sigma.members() {
        stable &= find(&b.corpus, &sm.injectives[i], seed)?.is_some();
    }
    Ok(Closure {
        generators: generators.iter().map(Module::display_name).collect(),
        corpus: b.corpus,
        sigma,
        stable,
        exhaustive,
        dim_cap,
    })
}
