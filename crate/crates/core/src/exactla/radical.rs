//! Jacobson radical of a matrix algebra.
//!
//! Over `Q`, and over `F_p` with `p` larger than the matrix size, the radical
//! is the kernel of the trace form `(a, b) -> tr(ab)`. For smaller `p` the
//! trace form is refined by the generalized trace functionals
//! `g_i(a) = tr(a~^(p^i)) / p^i mod p` (integer lift `a~`), applied for
//! `i = 0..=floor(log_p n)`.

use super::algebra::MatrixAlgebra;
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::field::Field;

/// Basis of `J(E)`.
pub fn radical_of_algebra<F: Field>(alg: &MatrixAlgebra<F>) -> Result<Vec<Matrix<F>>> {
    let p = alg.field().characteristic();
    if p == 0 || p > alg.n() as u64 {
        return Ok(trace_form_kernel(alg));
    }
    radical_small_characteristic(alg)
}

/// Plain trace-form kernel; refuses `p <= max(n, dim E)`.
pub fn radical_trace_form<F: Field>(alg: &MatrixAlgebra<F>) -> Result<Vec<Matrix<F>>> {
    let f = alg.field();
    let p = f.characteristic();
    let bound = alg.n().max(alg.dim());
    if p != 0 && p <= bound as u64 {
        return Err(Error::SmallCharacteristic { p, n: bound });
    }
    Ok(trace_form_kernel(alg))
}

fn trace_form_kernel<F: Field>(alg: &MatrixAlgebra<F>) -> Vec<Matrix<F>> {
    let f = alg.field();
    let e = alg.dim();
    let mut gram = Matrix::zeros(f, e, e);
    for (i, a) in alg.basis().iter().enumerate() {
        for (j, b) in alg.basis().iter().enumerate() {
            gram.set(i, j, a.mul(b).trace());
        }
    }
    gram.left_kernel().iter().map(|c| alg.element(c)).collect()
}

fn radical_small_characteristic<F: Field>(alg: &MatrixAlgebra<F>) -> Result<Vec<Matrix<F>>> {
    let f = alg.field();
    let p = f.characteristic();
    let n = alg.n();
    let e = alg.dim();
    let mut levels = 0u32;
    while p.pow(levels + 1) <= n as u64 {
        levels += 1;
    }
    // coordinates (in the algebra basis) of a basis of the current ideal
    let mut current: Vec<Vec<F::Elem>> = (0..e)
        .map(|i| {
            let mut v = vec![f.zero(); e];
            v[i] = f.one();
            v
        })
        .collect();
    for level in 0..=levels {
        if current.is_empty() {
            break;
        }
        let modulus = p.pow(level + 1) as u128;
        let scale = p.pow(level) as u128;
        let mut table = Matrix::zeros(f, current.len(), e);
        for (s, coords) in current.iter().enumerate() {
            let a = alg.element(coords);
            for (t, b) in alg.basis().iter().enumerate() {
                let prod = a.mul(b);
                let lifted: Vec<u128> =
                    prod.data().iter().map(|x| f.lift(x).expect("prime field") as u128).collect();
                let tr = trace_of_power(&lifted, n, p, level, modulus);
                if !tr.is_multiple_of(scale) {
                    return Err(Error::NotAnAlgebra(format!(
                        "generalized trace not divisible by {scale} at level {level}"
                    )));
                }
                table.set(s, t, f.from_i64(((tr / scale) % p as u128) as i64));
            }
        }
        let basis = Matrix::from_rows(f, e, &current);
        current = table.left_kernel().iter().map(|c| basis.vec_mul(c)).collect();
    }
    Ok(current.iter().map(|c| alg.element(c)).collect())
}

/// `tr(a^(p^level)) mod modulus` for an integer `n x n` matrix.
fn trace_of_power(a: &[u128], n: usize, p: u64, level: u32, modulus: u128) -> u128 {
    let mut m = a.iter().map(|x| x % modulus).collect::<Vec<_>>();
    for _ in 0..level {
        m = int_pow(&m, n, p, modulus);
    }
    (0..n).fold(0, |acc, i| (acc + m[i * n + i]) % modulus)
}

fn int_mul(a: &[u128], b: &[u128], n: usize, modulus: u128) -> Vec<u128> {
    let mut out = vec![0u128; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % modulus;
            }
        }
    }
    out
}

fn int_pow(a: &[u128], n: usize, mut e: u64, modulus: u128) -> Vec<u128> {
    let mut acc: Vec<u128> = (0..n * n).map(|i| u128::from(i % (n + 1) == 0) % modulus).collect();
    let mut b = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = int_mul(&acc, &b, n, modulus);
        }
        b = int_mul(&b, &b, n, modulus);
        e >>= 1;
    }
    acc
}
