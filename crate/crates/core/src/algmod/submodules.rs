use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::exactla::{subspace, Matrix};
use crate::field::Field;

use super::module::{Module, ModuleMap, Reducer};
use super::structure::socle_radical;

pub const DEFAULT_BUDGET: usize = 100_000;

/// Nonzero vectors of `F^k` whose first nonzero entry is one.
pub fn projective_points<F: Field>(field: &F, k: usize, budget: usize) -> Result<Vec<Vec<F::Elem>>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    let elems = match field.elements() {
        Some(e) => e,
        None if k == 1 => return Ok(vec![vec![field.one()]]),
        None => return Err(Error::BudgetExceeded(budget)),
    };
    let q = elems.len() as u128;
    let count = (q.pow(k as u32) - 1) / (q - 1);
    if count > budget as u128 {
        return Err(Error::BudgetExceeded(budget));
    }
    let mut out = Vec::with_capacity(count as usize);
    for lead in 0..k {
        // zeros before `lead`, one at `lead`, anything after
        let tail = k - lead - 1;
        let mut idx = vec![0usize; tail];
        loop {
            let mut v = vec![field.zero(); k];
            v[lead] = field.one();
            for (t, &i) in idx.iter().enumerate() {
                v[lead + 1 + t] = elems[i].clone();
            }
            out.push(v);
            let mut pos = 0;
            while pos < tail {
                idx[pos] += 1;
                if idx[pos] < elems.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == tail {
                break;
            }
        }
    }
    Ok(out)
}

/// All submodules of dimension at most `dim_cap`, as canonical bases sorted
/// by dimension.
///
/// Every submodule `N' > N` contains `N + L` for a simple submodule `L/N` of
/// `M/N`, so a search over these covers from `0` reaches all of them.
pub fn submodules_enumerate<F: Field>(m: &Module<F>, dim_cap: usize, budget: usize) -> Result<Vec<Matrix<F>>> {
    let f = m.field();
    let d = m.dim();
    let alg = m.algebra();
    let zero = Matrix::zeros(f, 0, d);
    let mut seen: HashSet<Vec<F::Elem>> = HashSet::new();
    let mut out = vec![zero.clone()];
    seen.insert(Vec::new());
    let mut queue = VecDeque::from([zero]);
    while let Some(n) = queue.pop_front() {
        if n.rows() >= dim_cap.min(d) {
            continue;
        }
        let (q, _) = m.quotient(&n)?;
        let red = Reducer::new(n.clone(), d);
        let soc = socle_radical(&q).socle;
        for v in 0..alg.vertex_count() {
            let iso = soc.mul(q.action(alg.vertex_basis(v))).row_space();
            for point in projective_points(f, iso.rows(), budget)? {
                let w = iso.vec_mul(&point);
                let mut rows = n.row_vecs();
                rows.push(red.lift_vec(&w));
                let bigger = subspace::span(f, d, &rows);
                if seen.insert(bigger.flatten()) {
                    if seen.len() > budget {
                        return Err(Error::BudgetExceeded(budget));
                    }
                    out.push(bigger.clone());
                    queue.push_back(bigger);
                }
            }
        }
    }
    out.sort_by_key(|a| a.rows());
    Ok(out)
}

/// Submodules as modules with their inclusions.
pub fn submodule_modules<F: Field>(
    m: &Module<F>,
    dim_cap: usize,
    budget: usize,
) -> Result<Vec<(Module<F>, ModuleMap<F>)>> {
    submodules_enumerate(m, dim_cap, budget)?.iter().map(|b| m.submodule(b)).collect()
}
