use proptest::prelude::*;
use specsupp::exactla::{radical_of_algebra, split_idempotents, subspace, Matrix, MatrixAlgebra};
use specsupp::{Field, PrimeField};

fn det_by_expansion(f: &PrimeField, m: &[Vec<u64>]) -> u64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut acc = 0u64;
    for c in 0..n {
        let minor: Vec<Vec<u64>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| *x).collect()).collect();
        let term = f.mul(&m[0][c], &det_by_expansion(f, &minor));
        acc = if c % 2 == 0 { f.add(&acc, &term) } else { f.sub(&acc, &term) };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect()).collect()
}

/// Largest order of a nonvanishing minor.
fn rank_by_minors(f: &PrimeField, m: &Matrix<PrimeField>) -> usize {
    let n = m.rows().min(m.cols());
    for k in (1..=n).rev() {
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let minor: Vec<Vec<u64>> = rs.iter().map(|&r| cs.iter().map(|&c| *m.get(r, c)).collect()).collect();
                if det_by_expansion(f, &minor) != 0 {
                    return k;
                }
            }
        }
    }
    0
}

fn all_vectors(p: u64, dim: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|v| (0..p).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Elements `a` with `1 - ab` invertible for every `b`.
fn radical_by_brute_force(alg: &MatrixAlgebra<PrimeField>) -> Vec<Matrix<PrimeField>> {
    let f = alg.field();
    let elems: Vec<Matrix<PrimeField>> =
        all_vectors(f.p(), alg.dim()).iter().map(|c| alg.element(c)).collect();
    let one = Matrix::identity(f, alg.n());
    elems
        .iter()
        .filter(|a| elems.iter().all(|b| one.sub(&a.mul(b)).inverse().is_some()))
        .cloned()
        .collect()
}

fn matrix_strategy(p: u64, n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0..p as i64, n * n)
}

fn to_matrix(f: &PrimeField, n: usize, v: &[i64]) -> Matrix<PrimeField> {
    let rows: Vec<&[i64]> = v.chunks(n).collect();
    Matrix::from_i64(f, &rows)
}

fn check_radical(p: u64, n: usize, gens: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let f = PrimeField::new(p).unwrap();
    let gens: Vec<Matrix<PrimeField>> = gens.iter().map(|g| to_matrix(&f, n, g)).collect();
    let alg = MatrixAlgebra::generated_by(&f, n, &gens).unwrap();
    prop_assume!((p as f64).powi(alg.dim() as i32) <= 800.0);
    let j = radical_of_algebra(&alg).unwrap();
    let brute = radical_by_brute_force(&alg);
    prop_assert_eq!(brute.len() as u64, p.pow(j.len() as u32));
    let basis = subspace::span(&f, n * n, &j.iter().map(Matrix::flatten).collect::<Vec<_>>());
    for a in &brute {
        prop_assert!(subspace::contains(&basis, &a.flatten()));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn rank_matches_minor_expansion(entries in prop::collection::vec(0i64..1009, 10), k in 1usize..=5) {
        let f = PrimeField::new(1009).unwrap();
        // product of 5 x k and k x 5 factors to get rank-deficient cases
        let a: Vec<Vec<i64>> = (0..5).map(|i| (0..k).map(|j| entries[(i * k + j) % 10] * (j as i64 + 1)).collect()).collect();
        let b: Vec<Vec<i64>> = (0..k).map(|i| (0..5).map(|j| entries[(3 * i + j + 1) % 10] + i as i64).collect()).collect();
        let a = Matrix::from_i64(&f, &a.iter().map(Vec::as_slice).collect::<Vec<_>>());
        let b = Matrix::from_i64(&f, &b.iter().map(Vec::as_slice).collect::<Vec<_>>());
        let m = a.mul(&b);
        prop_assert_eq!(m.rank(), rank_by_minors(&f, &m));
    }

    #[test]
    fn radical_matches_brute_force_f2(g1 in matrix_strategy(2, 3), g2 in matrix_strategy(2, 3)) {
        check_radical(2, 3, &[g1, g2])?;
    }

    #[test]
    fn radical_matches_brute_force_f2_size4(g1 in matrix_strategy(2, 4)) {
        check_radical(2, 4, &[g1])?;
    }

    #[test]
    fn radical_matches_brute_force_f3(g1 in matrix_strategy(3, 3)) {
        check_radical(3, 3, &[g1])?;
    }

    #[test]
    fn radical_matches_brute_force_f5(g1 in matrix_strategy(5, 2), g2 in matrix_strategy(5, 2)) {
        check_radical(5, 2, &[g1, g2])?;
    }

    #[test]
    fn idempotent_system_is_complete_and_primitive(g1 in matrix_strategy(2, 3), g2 in matrix_strategy(2, 3), seed in 0u64..1000) {
        let f = PrimeField::new(2).unwrap();
        let gens = [to_matrix(&f, 3, &g1), to_matrix(&f, 3, &g2)];
        let alg = MatrixAlgebra::generated_by(&f, 3, &gens).unwrap();
        let split = split_idempotents(&alg, seed).unwrap();
        let es = &split.primitive_system;
        let total = es.iter().fold(Matrix::zeros(&f, 3, 3), |acc, e| acc.add(e));
        prop_assert!(total.is_identity());
        for (i, a) in es.iter().enumerate() {
            prop_assert!(alg.contains(a));
            prop_assert_eq!(&a.mul(a), a);
            prop_assert!(!a.is_zero());
            for (j, b) in es.iter().enumerate() {
                if i != j {
                    prop_assert!(a.mul(b).is_zero());
                }
            }
            // primitive: the corner aEa has no idempotents besides 0 and a
            for c in all_vectors(2, alg.dim()) {
                let x = a.mul(&alg.element(&c)).mul(a);
                if x.mul(&x) == x {
                    prop_assert!(x.is_zero() || x == *a);
                }
            }
        }
    }
}

#[test]
fn upper_triangular_radical_is_strictly_upper() {
    let f = PrimeField::new(2).unwrap();
    let mut basis = Vec::new();
    for i in 0..3 {
        for j in i..3 {
            let mut m = Matrix::zeros(&f, 3, 3);
            m.set(i, j, 1);
            basis.push(m);
        }
    }
    let alg = MatrixAlgebra::new(&f, 3, basis).unwrap();
    let j = radical_of_algebra(&alg).unwrap();
    assert_eq!(j.len(), 3);
    for a in &j {
        for r in 0..3 {
            for c in 0..=r {
                assert_eq!(*a.get(r, c), 0);
            }
        }
    }
    assert_eq!(radical_by_brute_force(&alg).len(), 8);
}

#[test]
fn dual_numbers_radical() {
    // k[x]/(x^2) as 2 x 2 matrices
    for p in [2, 3, 1009] {
        let f = PrimeField::new(p).unwrap();
        let x = Matrix::from_i64(&f, &[&[0, 1], &[0, 0]]);
        let alg = MatrixAlgebra::generated_by(&f, 2, std::slice::from_ref(&x)).unwrap();
        let j = radical_of_algebra(&alg).unwrap();
        assert_eq!(j.len(), 1);
        assert!(subspace::contains(&subspace::span(&f, 4, &[j[0].flatten()]), &x.flatten()));
    }
}
