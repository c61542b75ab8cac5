//! Dense univariate polynomials, coefficients stored low degree first.
//!
//! Factoring is field specific: complete factorisation over `F_p`
//! (square-free, distinct-degree, then Cantor-Zassenhaus equal-degree
//! splitting) and rational-root extraction over `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::RngCore;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};

pub type Poly<F> = Vec<<F as Field>::Elem>;

pub fn trim<F: Field>(f: &F, mut a: Poly<F>) -> Poly<F> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

/// `None` for the zero polynomial.
pub fn degree<F: Field>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().rposition(|c| !f.is_zero(c))
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F> {
    let a = trim(f, a.to_vec());
    match a.last() {
        None => a,
        Some(lead) => {
            let inv = f.inv(lead).expect("nonzero leading coefficient");
            a.iter().map(|c| f.mul(c, &inv)).collect()
        }
    }
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n).map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    trim(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n).map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    trim(f, out)
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

pub fn pow<F: Field>(f: &F, a: &[F::Elem], e: usize) -> Poly<F> {
    let mut acc = vec![f.one()];
    for _ in 0..e {
        acc = mul(f, &acc, a);
    }
    acc
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F>, Poly<F>) {
    let db = degree(f, b).expect("division by the zero polynomial");
    let inv = f.inv(&b[db]).unwrap();
    let mut r = trim(f, a.to_vec());
    let mut q = vec![f.zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(f, &r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &inv);
        let shift = dr - db;
        for (i, bc) in b[..=db].iter().enumerate() {
            r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, bc));
        }
        q[shift] = c;
        r = trim(f, r);
    }
    (trim(f, q), r)
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    divrem(f, a, b).1
}

/// Monic gcd (zero if both inputs vanish).
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    let mut a = trim(f, a.to_vec());
    let mut b = trim(f, b.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// `(g, u, v)` with `u a + v b = g = gcd(a, b)`, `g` monic.
pub fn xgcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F>, Poly<F>, Poly<F>) {
    let (mut r0, mut r1) = (trim(f, a.to_vec()), trim(f, b.to_vec()));
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        let t = sub(f, &t0, &mul(f, &q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    match degree(f, &r0) {
        None => (r0, s0, t0),
        Some(d) => {
            let inv = f.inv(&r0[d]).unwrap();
            let sc = |p: &[F::Elem]| trim(f, p.iter().map(|c| f.mul(c, &inv)).collect());
            (sc(&r0), sc(&s0), sc(&t0))
        }
    }
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F> {
    let out = a.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_i64(i as i64))).collect();
    trim(f, out)
}

pub fn powmod<F: Field>(f: &F, base: &[F::Elem], mut e: u64, modulus: &[F::Elem]) -> Poly<F> {
    let mut acc = rem(f, &[f.one()], modulus);
    let mut b = rem(f, base, modulus);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), modulus);
        }
        b = rem(f, &mul(f, &b, &b), modulus);
        e >>= 1;
    }
    acc
}

/// A factorisation `m = g h` with `gcd(g, h) = 1` and both factors nonconstant.
pub type CoprimeSplit<F> = Option<(Poly<F>, Poly<F>)>;

/// Complete factorisation of a nonzero polynomial over `F_p` into monic
/// irreducibles with multiplicities, sorted by (degree, coefficients).
pub fn factor_prime(f: &PrimeField, a: &[u64], rng: &mut dyn RngCore) -> Vec<(Vec<u64>, usize)> {
    let a = monic(f, a);
    let mut out = Vec::new();
    for (sqf, mult) in squarefree_prime(f, &a) {
        for (block, d) in distinct_degree(f, &sqf) {
            for irr in equal_degree(f, &block, d, rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|x, y| (x.0.len(), &x.0).cmp(&(y.0.len(), &y.0)));
    out
}

/// Square-free decomposition over `F_p`: pairs `(s_i, i)` with `a = prod s_i^i`.
fn squarefree_prime(f: &PrimeField, a: &[u64]) -> Vec<(Vec<u64>, usize)> {
    let p = f.p() as usize;
    let mut out: Vec<(Vec<u64>, usize)> = Vec::new();
    if degree(f, a).unwrap_or(0) == 0 {
        return out;
    }
    let d = derivative(f, a);
    if d.is_empty() {
        // a(x) = b(x^p); over F_p the p-th root just drops the gaps.
        let root: Vec<u64> = a.iter().step_by(p).cloned().collect();
        for (s, i) in squarefree_prime(f, &root) {
            out.push((s, i * p));
        }
        return out;
    }
    let mut c = gcd(f, a, &d);
    let mut w = divrem(f, a, &c).0;
    let mut i = 1;
    while degree(f, &w).unwrap_or(0) > 0 {
        let y = gcd(f, &w, &c);
        let fac = divrem(f, &w, &y).0;
        if degree(f, &fac).unwrap_or(0) > 0 {
            out.push((monic(f, &fac), i));
        }
        i += 1;
        w = y;
        c = divrem(f, &c, &w).0;
    }
    if degree(f, &c).unwrap_or(0) > 0 {
        let root: Vec<u64> = c.iter().step_by(p).cloned().collect();
        for (s, j) in squarefree_prime(f, &root) {
            out.push((s, j * p));
        }
    }
    out
}

fn distinct_degree(f: &PrimeField, a: &[u64]) -> Vec<(Vec<u64>, usize)> {
    let x = vec![0, 1];
    let mut rest = monic(f, a);
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while degree(f, &rest).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = powmod(f, &h, f.p(), &rest);
        let g = gcd(f, &sub(f, &h, &x), &rest);
        if degree(f, &g).unwrap_or(0) > 0 {
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
            out.push((g, d));
        }
    }
    if let Some(dr) = degree(f, &rest) {
        if dr > 0 {
            out.push((rest, dr));
        }
    }
    out
}

fn equal_degree(f: &PrimeField, a: &[u64], d: usize, rng: &mut dyn RngCore) -> Vec<Vec<u64>> {
    let n = degree(f, a).unwrap_or(0);
    if n <= d {
        return vec![monic(f, a)];
    }
    loop {
        let r: Vec<u64> = trim(f, (0..n).map(|_| f.random(rng)).collect());
        if degree(f, &r).unwrap_or(0) == 0 {
            continue;
        }
        let probe = if f.p() == 2 {
            // trace map r + r^2 + ... + r^(2^(d-1))
            let mut t = rem(f, &r, a);
            let mut acc = t.clone();
            for _ in 1..d {
                t = rem(f, &mul(f, &t, &t), a);
                acc = add(f, &acc, &t);
            }
            acc
        } else {
            // r^((p^d - 1)/2) = (r^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut t = rem(f, &r, a);
            let mut norm = t.clone();
            for _ in 1..d {
                t = powmod(f, &t, f.p(), a);
                norm = rem(f, &mul(f, &norm, &t), a);
            }
            sub(f, &powmod(f, &norm, (f.p() - 1) / 2, a), &[1])
        };
        let g = gcd(f, &probe, a);
        let dg = degree(f, &g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = divrem(f, a, &g).0;
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &h, d, rng));
            return out;
        }
    }
}

pub fn coprime_split_prime(
    f: &PrimeField,
    m: &[u64],
    rng: &mut dyn RngCore,
) -> Result<CoprimeSplit<PrimeField>> {
    let factors = factor_prime(f, m, rng);
    if factors.len() < 2 {
        return Ok(None);
    }
    let (irr, e) = &factors[0];
    let g = pow(f, irr, *e);
    let h = divrem(f, &monic(f, m), &g).0;
    Ok(Some((g, h)))
}

/// Rational roots of a nonzero polynomial, with multiplicities.
pub fn rational_roots(q: &Rationals, a: &[BigRational]) -> Result<Vec<(BigRational, usize)>> {
    let mut rest = monic(q, a);
    let mut out = Vec::new();
    // root 0
    let mut zero_mult = 0;
    while rest.len() > 1 && rest[0].is_zero() {
        rest.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        out.push((BigRational::zero(), zero_mult));
    }
    if rest.len() <= 1 {
        return Ok(out);
    }
    let ints = integer_coefficients(&rest);
    let lead = ints.last().unwrap().abs();
    let constant = ints[0].abs();
    let nums = divisors(&constant)?;
    let dens = divisors(&lead)?;
    let mut candidates: Vec<BigRational> = Vec::new();
    for n in &nums {
        for d in &dens {
            for s in [1i32, -1] {
                let c = BigRational::new(n * BigInt::from(s), d.clone());
                if !candidates.contains(&c) {
                    candidates.push(c);
                }
            }
        }
    }
    for c in candidates {
        let lin = vec![-c.clone(), BigRational::one()];
        let mut mult = 0;
        loop {
            let (quo, r) = divrem(q, &rest, &lin);
            if !r.is_empty() {
                break;
            }
            rest = quo;
            mult += 1;
        }
        if mult > 0 {
            out.push((c, mult));
        }
    }
    Ok(out)
}

fn integer_coefficients(a: &[BigRational]) -> Vec<BigInt> {
    let l = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    a.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect()
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.to_u64().filter(|&v| v <= 1_000_000_000_000).ok_or_else(|| {
        Error::FactorizationUnavailable(format!("coefficient {n} too large for rational-root search"))
    })?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

pub fn coprime_split_rational(q: &Rationals, m: &[BigRational]) -> Result<CoprimeSplit<Rationals>> {
    let m = monic(q, m);
    let deg = degree(q, &m).unwrap_or(0);
    if deg <= 1 {
        return Ok(None);
    }
    let roots = rational_roots(q, &m)?;
    let Some((r, e)) = roots.first() else {
        return Err(Error::FactorizationUnavailable(format!(
            "degree {deg} polynomial without rational roots"
        )));
    };
    let g = pow(q, &[-r.clone(), BigRational::one()], *e);
    if degree(q, &g) == Some(deg) {
        return Ok(None);
    }
    let h = divrem(q, &m, &g).0;
    Ok(Some((g, h)))
}
