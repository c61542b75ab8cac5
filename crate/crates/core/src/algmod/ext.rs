use crate::error::Result;
use crate::exactla::{subspace, Matrix};
use crate::field::Field;

use super::module::{Module, ModuleMap};

/// `Ext^1(Q, N)` presented by cocycles.
///
/// A cocycle assigns to every algebra basis element `b` a `dim Q x dim N`
/// matrix `C_b` with `C_{xy} = A^Q_x C_y + C_x A^N_y`; the extension module
/// on `N + Q` then acts by `(n, q) -> (n A^N_b + q C_b, q A^Q_b)`.
#[derive(Clone, Debug)]
pub struct Ext1<F: Field> {
    pub q: Module<F>,
    pub n: Module<F>,
    /// Cocycles (flattened, `C_b` blocks in basis order) whose classes form
    /// a basis of `Ext^1(Q, N)`.
    pub classes: Vec<Vec<F::Elem>>,
}

impl<F: Field> Ext1<F> {
    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    /// Cocycle of the class with the given coordinates.
    pub fn cocycle(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.q.field();
        let len = self.classes.first().map_or(0, Vec::len);
        let mut out = vec![f.zero(); len];
        for (c, z) in coords.iter().zip(&self.classes) {
            if f.is_zero(c) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(z) {
                *o = f.add(o, &f.mul(c, x));
            }
        }
        out
    }

    /// The middle term of the extension with class `coords`, with the maps
    /// `N -> E -> Q`.
    pub fn extension(&self, coords: &[F::Elem]) -> Result<(Module<F>, ModuleMap<F>, ModuleMap<F>)> {
        extension_module(&self.q, &self.n, &self.cocycle(coords))
    }
}

pub fn ext1<F: Field>(q: &Module<F>, n: &Module<F>) -> Result<Ext1<F>> {
    q.same_algebra(n)?;
    let alg = q.algebra();
    let f = q.field();
    let (dq, dn, e) = (q.dim(), n.dim(), alg.dim());
    let block = dq * dn;
    let unknowns = e * block;
    if unknowns == 0 {
        return Ok(Ext1 { q: q.clone(), n: n.clone(), classes: Vec::new() });
    }
    let idx = |b: usize, r: usize, c: usize| b * block + r * dn + c;
    let mut sys = Matrix::zeros(f, e * e * block, unknowns);
    for i in 0..e {
        for j in 0..e {
            let coeffs = alg.product_coords(i, j);
            let (aq, an) = (q.action(i), n.action(j));
            for r in 0..dq {
                for c in 0..dn {
                    let row = (i * e + j) * block + r * dn + c;
                    let mut add = |col: usize, x: &F::Elem| {
                        let v = f.add(sys.get(row, col), x);
                        sys.set(row, col, v);
                    };
                    for (k, x) in coeffs.iter().enumerate() {
                        if !f.is_zero(x) {
                            add(idx(k, r, c), x);
                        }
                    }
                    for t in 0..dq {
                        let x = aq.get(r, t);
                        if !f.is_zero(x) {
                            add(idx(j, t, c), &f.neg(x));
                        }
                    }
                    for t in 0..dn {
                        let x = an.get(t, c);
                        if !f.is_zero(x) {
                            add(idx(i, r, t), &f.neg(x));
                        }
                    }
                }
            }
        }
    }
    let cocycles = sys.kernel();
    let mut coboundaries = Vec::with_capacity(block);
    for hr in 0..dq {
        for hc in 0..dn {
            let mut h = Matrix::zeros(f, dq, dn);
            h.set(hr, hc, f.one());
            let mut v = Vec::with_capacity(unknowns);
            for b in 0..e {
                v.extend(q.action(b).mul(&h).sub(&h.mul(n.action(b))).flatten());
            }
            coboundaries.push(v);
        }
    }
    let mut span = subspace::span(f, unknowns, &coboundaries);
    let mut classes = Vec::new();
    for z in cocycles {
        if !subspace::contains(&span, &z) {
            let mut rows = span.row_vecs();
            rows.push(z.clone());
            span = subspace::span(f, unknowns, &rows);
            classes.push(z);
        }
    }
    Ok(Ext1 { q: q.clone(), n: n.clone(), classes })
}

/// The module on `N + Q` (coordinates of `N` first) defined by a cocycle.
pub fn extension_module<F: Field>(
    q: &Module<F>,
    n: &Module<F>,
    cocycle: &[F::Elem],
) -> Result<(Module<F>, ModuleMap<F>, ModuleMap<F>)> {
    let alg = q.algebra();
    let f = q.field();
    let (dq, dn) = (q.dim(), n.dim());
    let d = dq + dn;
    let block = dq * dn;
    let action = (0..alg.dim())
        .map(|b| {
            let mut m = Matrix::zeros(f, d, d);
            for r in 0..dn {
                for c in 0..dn {
                    m.set(r, c, n.action(b).get(r, c).clone());
                }
            }
            for r in 0..dq {
                for c in 0..dn {
                    m.set(dn + r, c, cocycle[b * block + r * dn + c].clone());
                }
                for c in 0..dq {
                    m.set(dn + r, dn + c, q.action(b).get(r, c).clone());
                }
            }
            m
        })
        .collect();
    let e = Module::new(alg.clone(), d, action)?;
    let mut incl = Matrix::zeros(f, dn, d);
    for r in 0..dn {
        incl.set(r, r, f.one());
    }
    let mut proj = Matrix::zeros(f, d, dq);
    for r in 0..dq {
        proj.set(dn + r, r, f.one());
    }
    let incl = ModuleMap::new(n.clone(), e.clone(), incl)?;
    let proj = ModuleMap::new(e.clone(), q.clone(), proj)?;
    Ok((e, incl, proj))
}
