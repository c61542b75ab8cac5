use rand::RngCore;

use super::matrix::{subspace, Matrix};
use super::poly::{self, Poly};
use crate::error::{Error, Result};
use crate::field::Field;

/// A unital associative algebra given by structure constants on a basis.
///
/// Elements are coordinate vectors. Used for semisimple quotients, centres and
/// corner algebras `eAe`, where no faithful matrix representation is at hand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScAlgebra<F: Field> {
    field: F,
    dim: usize,
    /// `table[i * dim + j]` holds the coordinates of `b_i b_j`.
    table: Vec<Vec<F::Elem>>,
    one: Vec<F::Elem>,
}

impl<F: Field> ScAlgebra<F> {
    pub fn new(field: F, dim: usize, table: Vec<Vec<F::Elem>>, one: Vec<F::Elem>) -> Self {
        assert_eq!(table.len(), dim * dim);
        assert_eq!(one.len(), dim);
        ScAlgebra { field, dim, table, one }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn one(&self) -> Vec<F::Elem> {
        self.one.clone()
    }
    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim]
    }
    pub fn basis_elem(&self, i: usize) -> Vec<F::Elem> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let ab = f.mul(a, b);
                for (o, c) in out.iter_mut().zip(&self.table[i * self.dim + j]) {
                    if !f.is_zero(c) {
                        *o = f.add(o, &f.mul(&ab, c));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        x.iter().zip(y).map(|(a, b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        x.iter().zip(y).map(|(a, b)| self.field.sub(a, b)).collect()
    }

    pub fn scale(&self, x: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
        x.iter().map(|a| self.field.mul(a, c)).collect()
    }

    pub fn is_zero(&self, x: &[F::Elem]) -> bool {
        x.iter().all(|a| self.field.is_zero(a))
    }

    pub fn pow(&self, x: &[F::Elem], mut e: u64) -> Vec<F::Elem> {
        let mut acc = self.one();
        let mut b = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn is_idempotent(&self, x: &[F::Elem]) -> bool {
        self.mul(x, x) == x
    }

    pub fn random_elem(&self, rng: &mut dyn RngCore) -> Vec<F::Elem> {
        (0..self.dim).map(|_| self.field.random(rng)).collect()
    }

    /// Horner evaluation of a polynomial at an element.
    pub fn eval_poly(&self, p: &[F::Elem], x: &[F::Elem]) -> Vec<F::Elem> {
        let mut acc = self.zero();
        for c in p.iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, &self.scale(&self.one, c));
        }
        acc
    }

    /// Monic minimal polynomial of `x` over the ground field.
    pub fn minpoly(&self, x: &[F::Elem]) -> Poly<F> {
        let f = &self.field;
        let mut powers = vec![self.one()];
        loop {
            let next = self.mul(powers.last().unwrap(), x);
            let m = Matrix::from_rows(f, self.dim, &powers);
            if let Some(c) = m.solve_left(&next) {
                let mut p: Vec<F::Elem> = c.iter().map(|v| f.neg(v)).collect();
                p.push(f.one());
                return p;
            }
            powers.push(next);
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.table[i * self.dim + j] == self.table[j * self.dim + i]))
    }

    /// Basis (as coordinate vectors) of the centre.
    pub fn center(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let d = self.dim;
        let mut rows = Vec::with_capacity(d);
        for i in 0..d {
            let mut row = Vec::with_capacity(d * d);
            for j in 0..d {
                row.extend(self.sub(&self.table[i * d + j], &self.table[j * d + i]));
            }
            rows.push(row);
        }
        Matrix::from_rows(f, d * d, &rows).left_kernel()
    }

    /// The subalgebra spanned by `basis` (closed under products, containing
    /// `unit`), with its embedding matrix whose rows are `basis`.
    pub fn subalgebra(&self, basis: &[Vec<F::Elem>], unit: &[F::Elem]) -> Result<(ScAlgebra<F>, Matrix<F>)> {
        let f = &self.field;
        let emb = Matrix::from_rows(f, self.dim, basis);
        let k = basis.len();
        let coords = |v: &[F::Elem]| {
            emb.solve_left(v).ok_or_else(|| Error::NotAnAlgebra("subspace not closed under products".into()))
        };
        let mut table = Vec::with_capacity(k * k);
        for a in basis {
            for b in basis {
                table.push(coords(&self.mul(a, b))?);
            }
        }
        let one = coords(unit)?;
        Ok((ScAlgebra { field: f.clone(), dim: k, table, one }, emb))
    }

    /// The corner algebra `eAe` of an idempotent `e`, unit `e`.
    pub fn corner(&self, e: &[F::Elem]) -> Result<(ScAlgebra<F>, Matrix<F>)> {
        let vecs: Vec<Vec<F::Elem>> =
            (0..self.dim).map(|i| self.mul(&self.mul(e, &self.basis_elem(i)), e)).collect();
        let basis = subspace::span(&self.field, self.dim, &vecs).row_vecs();
        self.subalgebra(&basis, e)
    }

    /// For a commutative algebra over `F_p`: the dimension of the kernel of
    /// `x -> x^p - x`, which counts its primitive idempotents when semisimple.
    pub fn frobenius_fixed_dim(&self) -> usize {
        let p = self.field.characteristic();
        assert!(p > 0, "Frobenius needs positive characteristic");
        let rows: Vec<Vec<F::Elem>> = (0..self.dim)
            .map(|i| {
                let b = self.basis_elem(i);
                self.sub(&self.pow(&b, p), &b)
            })
            .collect();
        self.dim - Matrix::from_rows(&self.field, self.dim, &rows).rank()
    }

    /// A semisimple algebra is a division algebra iff this holds. Over `Q`
    /// only `Q` itself is recognised; number-field blocks cannot be split.
    pub fn is_division(&self) -> bool {
        if self.dim == 0 || !self.is_commutative() {
            return false;
        }
        match self.field.characteristic() {
            0 => self.dim == 1,
            _ => self.frobenius_fixed_dim() == 1,
        }
    }

    /// Splits a semisimple algebra into a complete set of orthogonal primitive
    /// idempotents (coordinates in `self`).
    pub fn primitive_idempotents(&self, rng: &mut dyn RngCore) -> Result<Vec<Vec<F::Elem>>> {
        const TRIALS: usize = 200;
        if self.dim == 0 {
            return Ok(Vec::new());
        }
        if self.is_division() {
            return Ok(vec![self.one()]);
        }
        let f = &self.field;
        let mut last_err = Error::SplitFailed(TRIALS);
        for trial in 0..TRIALS {
            // basis elements first: over Q they are far likelier to have rational eigenvalues
            let x = if trial < self.dim { self.basis_elem(trial) } else { self.random_elem(rng) };
            let m = self.minpoly(&x);
            let (g, h) = match f.coprime_split(&m, rng) {
                Ok(Some(split)) => split,
                Ok(None) => continue,
                Err(e) => {
                    last_err = e;
                    continue;
                }
            };
            let (_, _u, v) = poly::xgcd(f, &g, &h);
            let e = self.eval_poly(&poly::mul(f, &v, &h), &x);
            let e_c = self.sub(&self.one, &e);
            debug_assert!(self.is_idempotent(&e));
            let mut out = Vec::new();
            for idem in [e, e_c] {
                let (corner, emb) = self.corner(&idem)?;
                for p in corner.primitive_idempotents(rng)? {
                    out.push(emb.vec_mul(&p));
                }
            }
            return Ok(out);
        }
        Err(last_err)
    }
}

/// A subalgebra of `n x n` matrices given by a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixAlgebra<F: Field> {
    field: F,
    n: usize,
    basis: Vec<Matrix<F>>,
    contains_identity: bool,
    coords: Coordinates<F>,
}

/// Fast coordinate extraction against a fixed independent family of vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Coordinates<F: Field> {
    /// columns on which the family is invertible
    pivots: Vec<usize>,
    /// inverse of the family restricted to `pivots`
    inv: Matrix<F>,
    family: Matrix<F>,
}

impl<F: Field> Coordinates<F> {
    fn new(family: Matrix<F>) -> Result<Self> {
        let (_, pivots) = family.rref();
        if pivots.len() != family.rows() {
            return Err(Error::NotAnAlgebra("basis is linearly dependent".into()));
        }
        let cols: Vec<usize> = pivots.clone();
        let mut sq = Matrix::zeros(family.field(), family.rows(), family.rows());
        for r in 0..family.rows() {
            for (j, &c) in cols.iter().enumerate() {
                sq.set(r, j, family.get(r, c).clone());
            }
        }
        let inv = sq.inverse().expect("pivot minor is invertible");
        Ok(Coordinates { pivots: cols, inv, family })
    }

    fn solve(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let restricted: Vec<F::Elem> = self.pivots.iter().map(|&c| v[c].clone()).collect();
        let x = self.inv.vec_mul(&restricted);
        (self.family.vec_mul(&x) == v).then_some(x)
    }
}

impl<F: Field> MatrixAlgebra<F> {
    /// Validates linear independence and closure under products.
    pub fn new(field: &F, n: usize, basis: Vec<Matrix<F>>) -> Result<Self> {
        for b in &basis {
            if b.field() != field {
                return Err(Error::FieldMismatch);
            }
            if b.rows() != n || b.cols() != n {
                return Err(Error::Shape(format!("expected {n}x{n} basis matrices")));
            }
        }
        let flat: Vec<Vec<F::Elem>> = basis.iter().map(|b| b.flatten()).collect();
        let family = Matrix::from_rows(field, n * n, &flat);
        let coords = Coordinates::new(family)?;
        let id = Matrix::identity(field, n).flatten();
        let contains_identity = coords.solve(&id).is_some();
        let alg = MatrixAlgebra { field: field.clone(), n, basis, contains_identity, coords };
        for a in &alg.basis {
            for b in &alg.basis {
                if alg.coordinates(&a.mul(b)).is_none() {
                    return Err(Error::NotAnAlgebra("span is not closed under products".into()));
                }
            }
        }
        Ok(alg)
    }

    /// The unital algebra generated by `gens`.
    pub fn generated_by(field: &F, n: usize, gens: &[Matrix<F>]) -> Result<Self> {
        let mut span = subspace::span(field, n * n, &[Matrix::identity(field, n).flatten()]);
        let mut frontier: Vec<Matrix<F>> = vec![Matrix::identity(field, n)];
        let mut elems = frontier.clone();
        for g in gens {
            if !subspace::contains(&span, &g.flatten()) {
                span = subspace::sum(&span, &subspace::span(field, n * n, &[g.flatten()]));
                elems.push(g.clone());
                frontier.push(g.clone());
            }
        }
        while let Some(a) = frontier.pop() {
            for b in elems.clone() {
                for prod in [a.mul(&b), b.mul(&a)] {
                    if !subspace::contains(&span, &prod.flatten()) {
                        span = subspace::sum(&span, &subspace::span(field, n * n, &[prod.flatten()]));
                        elems.push(prod.clone());
                        frontier.push(prod);
                    }
                }
            }
        }
        Self::new(field, n, elems)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    /// Matrix size.
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Matrix<F>] {
        &self.basis
    }
    pub fn contains_identity(&self) -> bool {
        self.contains_identity
    }

    pub fn coordinates(&self, m: &Matrix<F>) -> Option<Vec<F::Elem>> {
        if self.basis.is_empty() {
            return m.is_zero().then(Vec::new);
        }
        self.coords.solve(&m.flatten())
    }

    pub fn contains(&self, m: &Matrix<F>) -> bool {
        self.coordinates(m).is_some()
    }

    pub fn element(&self, coords: &[F::Elem]) -> Matrix<F> {
        let terms: Vec<(F::Elem, &Matrix<F>)> = coords.iter().cloned().zip(&self.basis).collect();
        Matrix::linear_combination(&self.field, self.n, self.n, &terms)
    }

    pub fn to_sc(&self) -> Result<ScAlgebra<F>> {
        if !self.contains_identity {
            return Err(Error::NotAnAlgebra("structure constants need a unital algebra".into()));
        }
        let mut table = Vec::with_capacity(self.dim() * self.dim());
        for a in &self.basis {
            for b in &self.basis {
                table.push(self.coordinates(&a.mul(b)).expect("closed"));
            }
        }
        let one = self.coordinates(&Matrix::identity(&self.field, self.n)).expect("unital");
        Ok(ScAlgebra::new(self.field.clone(), self.dim(), table, one))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit(f: &PrimeField, n: usize, i: usize, j: usize) -> Matrix<PrimeField> {
        let mut m = Matrix::zeros(f, n, n);
        m.set(i, j, 1);
        m
    }

    #[test]
    fn generated_upper_triangular() {
        let f = PrimeField::new(1009).unwrap();
        let alg = MatrixAlgebra::generated_by(&f, 2, &[unit(&f, 2, 0, 0), unit(&f, 2, 0, 1)]).unwrap();
        assert_eq!(alg.dim(), 3);
        assert!(alg.contains_identity());
        assert!(!alg.contains(&unit(&f, 2, 1, 0)));
    }

    #[test]
    fn non_closed_span_rejected() {
        let f = PrimeField::new(7).unwrap();
        let r = MatrixAlgebra::new(&f, 2, vec![unit(&f, 2, 0, 1), unit(&f, 2, 1, 0)]);
        assert!(matches!(r, Err(Error::NotAnAlgebra(_))));
    }

    #[test]
    fn full_matrix_algebra_splits_into_two_primitives() {
        let f = PrimeField::new(5).unwrap();
        let basis = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| unit(&f, 2, i, j)).collect();
        let sc = MatrixAlgebra::new(&f, 2, basis).unwrap().to_sc().unwrap();
        assert_eq!(sc.center().len(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let prims = sc.primitive_idempotents(&mut rng).unwrap();
        assert_eq!(prims.len(), 2);
        for e in &prims {
            assert!(sc.is_idempotent(e));
        }
        assert!(sc.is_zero(&sc.mul(&prims[0], &prims[1])));
        assert_eq!(sc.add(&prims[0], &prims[1]), sc.one());
    }

    #[test]
    fn field_extension_is_division() {
        // F_3[x]/(x^2+1) as 2x2 companion matrices
        let f = PrimeField::new(3).unwrap();
        let c = Matrix::from_i64(&f, &[&[0, 1], &[-1, 0]]);
        let alg = MatrixAlgebra::generated_by(&f, 2, &[c]).unwrap();
        let sc = alg.to_sc().unwrap();
        assert_eq!(sc.dim(), 2);
        assert!(sc.is_division());
    }
}
