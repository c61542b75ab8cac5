use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, MatrixAlgebra};
use crate::field::Field;

use super::decompose::decompose;
use super::module::{Module, ModuleMap};
use super::structure::socle_radical;

/// Random trials before the exact fallback in [`find_isomorphism`].
pub const ISO_TRIALS: usize = 20;

/// Basis of `Hom(M, N)` as `dim M x dim N` matrices.
pub fn hom_space<F: Field>(m: &Module<F>, n: &Module<F>) -> Result<Vec<Matrix<F>>> {
    m.same_algebra(n)?;
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let unknowns = dm * dn;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let gens = m.algebra().generators();
    let mut sys = Matrix::zeros(f, gens.len() * unknowns, unknowns);
    // A^M_b F - F A^N_b = 0, entry (r, c), unknown F[k][l] at k * dn + l
    for (g, &b) in gens.iter().enumerate() {
        let am = m.action(b);
        let an = n.action(b);
        for r in 0..dm {
            for c in 0..dn {
                let row = g * unknowns + r * dn + c;
                for k in 0..dm {
                    let x = am.get(r, k);
                    if !f.is_zero(x) {
                        let col = k * dn + c;
                        sys.set(row, col, f.add(sys.get(row, col), x));
                    }
                }
                for l in 0..dn {
                    let x = an.get(l, c);
                    if !f.is_zero(x) {
                        let col = r * dn + l;
                        sys.set(row, col, f.sub(sys.get(row, col), x));
                    }
                }
            }
        }
    }
    Ok(sys.kernel().into_iter().map(|v| Matrix::unflatten(f, dm, dn, &v)).collect())
}

/// `End(M)` as a matrix algebra acting on row vectors.
pub fn end_algebra<F: Field>(m: &Module<F>) -> Result<MatrixAlgebra<F>> {
    MatrixAlgebra::new(m.field(), m.dim(), hom_space(m, m)?)
}

/// Cheap invariants that isomorphic modules share.
fn invariants_agree<F: Field>(m: &Module<F>, n: &Module<F>) -> bool {
    if m.dim() != n.dim() || m.dim_vector() != n.dim_vector() {
        return false;
    }
    let (sm, sn) = (socle_radical(m), socle_radical(n));
    sm.socle_multiplicities == sn.socle_multiplicities && sm.top_multiplicities == sn.top_multiplicities
}

/// An isomorphism `M -> N` if one exists.
///
/// Random combinations of a `Hom` basis are tried first; the exact fallback
/// decomposes both sides and matches indecomposable summands.
pub fn find_isomorphism<F: Field>(m: &Module<F>, n: &Module<F>, seed: u64) -> Result<Option<ModuleMap<F>>> {
    m.same_algebra(n)?;
    if !invariants_agree(m, n) {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(ModuleMap { source: m.clone(), target: n.clone(), matrix: Matrix::zeros(m.field(), 0, 0) }));
    }
    let hom = hom_space(m, n)?;
    if hom.is_empty() {
        return Ok(None);
    }
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_TRIALS {
        let terms: Vec<(F::Elem, &Matrix<F>)> = hom.iter().map(|h| (f.random(&mut rng), h)).collect();
        let c = Matrix::linear_combination(f, m.dim(), n.dim(), &terms);
        if c.rank() == m.dim() {
            return Ok(Some(ModuleMap { source: m.clone(), target: n.clone(), matrix: c }));
        }
    }
    exact_isomorphism(m, n, seed)
}

pub fn is_isomorphic<F: Field>(m: &Module<F>, n: &Module<F>, seed: u64) -> Result<bool> {
    Ok(find_isomorphism(m, n, seed)?.is_some())
}

/// For indecomposable `a`, `b`: `a` is isomorphic to `b` iff `g o f` is
/// invertible for some basis maps `f: a -> b`, `g: b -> a`, because the
/// non-invertible endomorphisms of `a` form an ideal.
pub fn indecomposables_isomorphism<F: Field>(a: &Module<F>, b: &Module<F>) -> Result<Option<Matrix<F>>> {
    if !invariants_agree(a, b) {
        return Ok(None);
    }
    let fwd = hom_space(a, b)?;
    let back = hom_space(b, a)?;
    for fm in &fwd {
        for gm in &back {
            if fm.mul(gm).rank() == a.dim() {
                return Ok(Some(fm.clone()));
            }
        }
    }
    Ok(None)
}

fn exact_isomorphism<F: Field>(m: &Module<F>, n: &Module<F>, seed: u64) -> Result<Option<ModuleMap<F>>> {
    let dm = decompose(m, seed)?;
    let dn = decompose(n, seed)?;
    if dm.summands.len() != dn.summands.len() {
        return Ok(None);
    }
    let mut used = vec![false; dn.summands.len()];
    let mut matrix = Matrix::zeros(m.field(), m.dim(), n.dim());
    for s in &dm.summands {
        let mut found = false;
        for (j, t) in dn.summands.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(iso) = indecomposables_isomorphism(&s.module, &t.module)? {
                // M -> s -> t -> N
                let piece = s.projection.matrix.mul(&iso).mul(&t.inclusion.matrix);
                matrix = matrix.add(&piece);
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    let map = ModuleMap::new(m.clone(), n.clone(), matrix).map_err(|_| Error::NotAModuleMap)?;
    Ok(map.is_iso().then_some(map))
}
