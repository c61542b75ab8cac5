use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::algebra::{MatrixAlgebra, ScAlgebra};
use super::matrix::Matrix;
use super::radical::radical_of_algebra;
use crate::error::{Error, Result};
use crate::field::Field;

/// `E/J(E)` presented on a complement of the radical.
#[derive(Clone, Debug)]
pub struct SemisimpleQuotient<F: Field> {
    pub algebra: ScAlgebra<F>,
    /// Matrices of `E` lifting the quotient basis.
    pub section: Vec<Matrix<F>>,
    pub radical: Vec<Matrix<F>>,
    /// Radical coordinates in echelon form, with their pivots.
    radical_coords: Matrix<F>,
    radical_pivots: Vec<usize>,
    complement: Vec<usize>,
}

impl<F: Field> SemisimpleQuotient<F> {
    pub fn new(alg: &MatrixAlgebra<F>) -> Result<Self> {
        let f = alg.field();
        let radical = radical_of_algebra(alg)?;
        let e = alg.dim();
        let rows: Vec<Vec<F::Elem>> =
            radical.iter().map(|j| alg.coordinates(j).expect("radical lies in E")).collect();
        let (radical_coords, radical_pivots) = Matrix::from_rows(f, e, &rows).row_space().rref();
        let complement: Vec<usize> = (0..e).filter(|c| !radical_pivots.contains(c)).collect();
        let section: Vec<Matrix<F>> = complement.iter().map(|&c| alg.basis()[c].clone()).collect();
        let mut q = SemisimpleQuotient {
            algebra: ScAlgebra::new(f.clone(), 0, Vec::new(), Vec::new()),
            section,
            radical,
            radical_coords,
            radical_pivots,
            complement,
        };
        let k = q.complement.len();
        let mut table = Vec::with_capacity(k * k);
        for a in &q.section {
            for b in &q.section {
                table.push(q.reduce(&alg.coordinates(&a.mul(b)).expect("closed")));
            }
        }
        let one = q.reduce(&alg.coordinates(&Matrix::identity(f, alg.n())).ok_or_else(|| {
            Error::NotAnAlgebra("idempotent splitting needs a unital algebra".into())
        })?);
        q.algebra = ScAlgebra::new(f.clone(), k, table, one);
        Ok(q)
    }

    /// Quotient coordinates of an element of `E` given by its `E`-coordinates.
    pub fn reduce(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.algebra.field();
        let mut v = coords.to_vec();
        for (r, &pc) in self.radical_pivots.iter().enumerate() {
            let c = v[pc].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, j) in v.iter_mut().zip(self.radical_coords.row(r)) {
                *x = f.sub(x, &f.mul(&c, j));
            }
        }
        self.complement.iter().map(|&c| v[c].clone()).collect()
    }

    /// A representative in `E` of a quotient element.
    pub fn lift(&self, coords: &[F::Elem]) -> Matrix<F> {
        let n = self.section.first().map_or(0, |m| m.rows());
        let f = self.algebra.field();
        let terms: Vec<(F::Elem, &Matrix<F>)> = coords.iter().cloned().zip(&self.section).collect();
        Matrix::linear_combination(f, n, n, &terms)
    }
}

#[derive(Clone, Debug)]
pub struct IdempotentSplitting<F: Field> {
    pub quotient: SemisimpleQuotient<F>,
    /// Primitive central idempotents of `E/J`, as quotient coordinates.
    pub central_primitives: Vec<Vec<F::Elem>>,
    /// Primitive orthogonal idempotents of `E/J`, grouped block by block.
    pub primitive_quotient: Vec<Vec<F::Elem>>,
    /// Index into `central_primitives` for each primitive idempotent.
    pub block_of: Vec<usize>,
    /// Orthogonal primitive idempotents of `E` summing to the identity.
    pub primitive_system: Vec<Matrix<F>>,
}

/// Primitive central idempotents of `E/J` and a complete system of
/// orthogonal primitive idempotents of `E` lifted from it.
pub fn split_idempotents<F: Field>(alg: &MatrixAlgebra<F>, seed: u64) -> Result<IdempotentSplitting<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let quotient = SemisimpleQuotient::new(alg)?;
    let central_primitives = central_primitive_idempotents(&quotient.algebra, &mut rng)?;
    let semisimple = &quotient.algebra;
    let mut primitive_quotient = Vec::new();
    let mut block_of = Vec::new();
    for (b, c) in central_primitives.iter().enumerate() {
        let (corner, emb) = semisimple.corner(c)?;
        for p in corner.primitive_idempotents(&mut rng)? {
            primitive_quotient.push(emb.vec_mul(&p));
            block_of.push(b);
        }
    }
    let reps: Vec<Matrix<F>> = primitive_quotient.iter().map(|e| quotient.lift(e)).collect();
    let primitive_system = lift_orthogonal(alg.field(), alg.n(), &reps)?;
    Ok(IdempotentSplitting { quotient, central_primitives, primitive_quotient, block_of, primitive_system })
}

/// Primitive idempotents of the centre of a semisimple algebra.
pub fn central_primitive_idempotents<F: Field>(
    alg: &ScAlgebra<F>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<F::Elem>>> {
    let (center, emb) = alg.subalgebra(&alg.center(), &alg.one())?;
    Ok(center.primitive_idempotents(rng)?.iter().map(|e| emb.vec_mul(e)).collect())
}

/// Newton iteration `e <- 3e^2 - 2e^3`, converging when `x^2 - x` is nilpotent.
pub fn lift_idempotent<F: Field>(x: &Matrix<F>) -> Result<Matrix<F>> {
    let f = x.field();
    let three = f.from_i64(3);
    let two = f.from_i64(2);
    let mut e = x.clone();
    for _ in 0..64 {
        let e2 = e.mul(&e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = e2.mul(&e);
        e = e2.scale(&three).sub(&e3.scale(&two));
    }
    Err(Error::NotAnAlgebra("idempotent lifting did not converge".into()))
}

/// Lifts representatives of orthogonal idempotents summing to one modulo a
/// nilpotent ideal to orthogonal idempotents of `E` summing to the identity.
pub fn lift_orthogonal<F: Field>(field: &F, n: usize, reps: &[Matrix<F>]) -> Result<Vec<Matrix<F>>> {
    let mut rest = Matrix::identity(field, n);
    let mut out = Vec::with_capacity(reps.len());
    for (k, x) in reps.iter().enumerate() {
        if k + 1 == reps.len() {
            out.push(rest.clone());
            break;
        }
        let e = lift_idempotent(&rest.mul(x).mul(&rest))?;
        rest = rest.sub(&e);
        out.push(e);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn diagonal_algebra_central_primitives_are_matrix_units() {
        let f = PrimeField::new(1009).unwrap();
        let e11 = Matrix::from_i64(&f, &[&[1, 0], &[0, 0]]);
        let e22 = Matrix::from_i64(&f, &[&[0, 0], &[0, 1]]);
        let alg = MatrixAlgebra::new(&f, 2, vec![e11.clone(), e22.clone()]).unwrap();
        let s = split_idempotents(&alg, 0).unwrap();
        assert!(s.quotient.radical.is_empty());
        let mut lifted: Vec<Matrix<PrimeField>> =
            s.central_primitives.iter().map(|c| s.quotient.lift(c)).collect();
        lifted.sort_by_key(|m| m.data().to_vec());
        let mut expected = vec![e11, e22];
        expected.sort_by_key(|m| m.data().to_vec());
        assert_eq!(lifted, expected);
    }

    #[test]
    fn newton_lifts_modulo_nilpotent() {
        let f = PrimeField::new(7).unwrap();
        // x = e11 + e12 is already idempotent; x + strictly upper is not
        let x = Matrix::from_i64(&f, &[&[1, 3, 0], &[0, 0, 2], &[0, 0, 0]]);
        let e = lift_idempotent(&x).unwrap();
        assert_eq!(e.mul(&e), e);
        assert_eq!(e.rank(), 1);
    }
}
