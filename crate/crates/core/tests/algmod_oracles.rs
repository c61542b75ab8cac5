use std::collections::HashSet;
use std::sync::Arc;

use proptest::prelude::*;
use specsupp::algmod::submodules::submodules_enumerate;
use specsupp::algmod::*;
use specsupp::exactla::{subspace, Matrix};
use specsupp::PrimeField;

fn build(spec: AlgebraSpec, p: u64) -> Arc<Algebra<PrimeField>> {
    Arc::new(spec.build(&PrimeField::new(p).unwrap()).unwrap())
}

/// Every vector of `F_p^d`.
fn all_vectors(f: &PrimeField, d: usize) -> Vec<Vec<u64>> {
    let p = f.p();
    let mut out = Vec::new();
    for code in 0..p.pow(d as u32) {
        let mut c = code;
        out.push(
            (0..d)
                .map(|_| {
                    let x = c % p;
                    c /= p;
                    x
                })
                .collect(),
        );
    }
    out
}

fn stable_under_action(m: &Module<PrimeField>, basis: &Matrix<PrimeField>) -> bool {
    basis.row_vecs().iter().all(|v| m.actions().iter().all(|a| subspace::contains(basis, &a.vec_mul(v))))
}

/// Socle as the span of all vectors spanning a one-dimensional submodule.
fn socle_oracle(m: &Module<PrimeField>) -> Matrix<PrimeField> {
    let f = m.field();
    let lines: Vec<Vec<u64>> = all_vectors(f, m.dim())
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .filter(|v| stable_under_action(m, &Matrix::from_rows(f, m.dim(), std::slice::from_ref(v))))
        .collect();
    subspace::span(f, m.dim(), &lines)
}

/// All subspaces spanned by at most `d` vectors, kept if stable.
fn submodule_count_oracle(m: &Module<PrimeField>) -> usize {
    let f = m.field();
    let d = m.dim();
    let vecs: Vec<Vec<u64>> = all_vectors(f, d).into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(Vec::new());
    let mut frontier = vec![Matrix::zeros(f, 0, d)];
    for _ in 0..d {
        let mut next = Vec::new();
        for s in &frontier {
            for v in &vecs {
                if subspace::contains(s, v) {
                    continue;
                }
                let mut rows = s.row_vecs();
                rows.push(v.clone());
                let t = subspace::span(f, d, &rows);
                if seen.insert(t.flatten()) {
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    let mut count = 1;
    for flat in seen.iter().filter(|x| !x.is_empty()) {
        let basis = Matrix::unflatten(f, flat.len() / d, d, flat);
        if stable_under_action(m, &basis) {
            count += 1;
        }
    }
    count
}

fn corpus(p: u64) -> Vec<Module<PrimeField>> {
    let a2 = build(AlgebraSpec::a2(), p);
    let dn = build(AlgebraSpec::dual_numbers(), p);
    let sa = structure_modules(&a2);
    let sd = structure_modules(&dn);
    vec![
        sa.simples[0].clone(),
        sa.injectives[0].clone(),
        sa.regular.clone(),
        direct_sum(&a2, &[&sa.injectives[0], &sa.injectives[1]]),
        direct_sum(&a2, &[&sa.injectives[0], &sa.simples[0]]),
        sa.simples[1].power(3),
        sd.regular.clone(),
        direct_sum(&dn, &[&sd.regular, &sd.simples[0]]),
        sd.simples[0].power(2),
    ]
}

#[test]
fn socle_matches_line_search() {
    for m in corpus(2).iter().chain(&corpus(3)) {
        let soc = socle_radical(m).socle;
        assert_eq!(soc.row_space(), socle_oracle(m).row_space(), "{}", m.display_name());
    }
}

#[test]
fn submodule_counts_match_subspace_search() {
    for m in corpus(2) {
        let ours = submodules_enumerate(&m, m.dim(), DEFAULT_BUDGET).unwrap();
        assert_eq!(ours.len(), submodule_count_oracle(&m), "{}", m.display_name());
        assert!(ours.iter().all(|b| m.is_submodule(b)));
    }
}

#[test]
fn hom_from_projective_is_vertex_space() {
    for m in corpus(3) {
        let alg = m.algebra().clone();
        let dims = m.dim_vector();
        for v in 0..alg.vertex_count() {
            assert_eq!(hom_space(&projective(&alg, v), &m).unwrap().len(), dims[v]);
        }
    }
}

#[test]
fn dual_numbers_are_self_injective() {
    let dn = build(AlgebraSpec::dual_numbers(), 1009);
    let s = structure_modules(&dn);
    assert!(is_isomorphic(&s.injectives[0], &s.regular, 0).unwrap());
    assert!(!is_isomorphic(&s.simples[0].power(2), &s.regular, 0).unwrap());
}

#[test]
fn a2_regular_splits_into_projectives() {
    let a2 = build(AlgebraSpec::a2(), 1009);
    let s = structure_modules(&a2);
    let parts = decompose_module(&s.regular, 3).unwrap();
    assert_eq!(parts.len(), 2);
    let mut found = [false, false];
    for (m, mult) in &parts {
        assert_eq!(*mult, 1);
        found[0] |= is_isomorphic(m, &s.simples[0], 0).unwrap();
        found[1] |= is_isomorphic(m, &s.injectives[0], 0).unwrap();
    }
    assert_eq!(found, [true, true]);
    assert!(is_isomorphic(&s.projectives[0], &s.simples[0], 0).unwrap());
    assert!(is_isomorphic(&s.projectives[1], &s.injectives[0], 0).unwrap());
}

#[test]
fn decomposition_groups_isotypes() {
    let a2 = build(AlgebraSpec::a2(), 1009);
    let s = structure_modules(&a2);
    let x = direct_sum(&a2, &[&s.injectives[0], &s.simples[0], &s.injectives[0]]);
    let d = decompose(&x, 11).unwrap();
    assert_eq!(d.summands.len(), 3);
    assert_eq!(d.block_count, 2);
    let mut mults: Vec<(usize, usize)> = d.groups().iter().map(|g| (d.summands[g[0]].module.dim(), g.len())).collect();
    mults.sort();
    assert_eq!(mults, vec![(1, 1), (2, 2)]);
    assert!(assembly_matrix(&x, &d).inverse().is_some());
}

#[test]
fn decomposition_does_not_depend_on_seed() {
    for m in corpus(3) {
        let shape = |seed| {
            let mut v: Vec<(Vec<usize>, usize)> =
                decompose_module(&m, seed).unwrap().iter().map(|(s, k)| (s.dim_vector(), *k)).collect();
            v.sort();
            v
        };
        let first = shape(0);
        for seed in 1..6 {
            assert_eq!(shape(seed), first, "{}", m.display_name());
        }
    }
}

#[test]
fn resolutions_of_simples() {
    let a2 = build(AlgebraSpec::a2(), 1009);
    let s = structure_modules(&a2);
    let r = min_inj_resolution(&s.simples[0], DEFAULT_MAX_TERMS, 0).unwrap();
    assert_eq!(r.status, ResolutionStatus::Complete);
    let terms: Vec<Vec<usize>> = r.terms.iter().map(|t| t.multiplicities.clone()).collect();
    assert_eq!(terms, vec![vec![1, 0], vec![0, 1]]);

    let dn = build(AlgebraSpec::dual_numbers(), 1009);
    let sd = structure_modules(&dn);
    let r = min_inj_resolution(&sd.simples[0], DEFAULT_MAX_TERMS, 0).unwrap();
    assert_eq!(r.status, ResolutionStatus::Periodic { period: 1, preperiod: 0 });
    assert_eq!(r.support_union().into_iter().collect::<Vec<_>>(), vec![0]);
}

#[test]
fn envelopes_are_essential() {
    for m in corpus(3) {
        let e = injective_envelope(&m).unwrap();
        assert!(is_essential_mono(&e.iota).unwrap(), "{}", m.display_name());
        assert_eq!(e.multiplicities, socle_radical(&m).socle_multiplicities);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// A representation `k^{d2} -> k^{d1}` of rank `r` is `I1^r + S1^{d1-r} + S2^{d2-r}`.
    #[test]
    fn a2_representations_split_by_rank(d1 in 0usize..4, d2 in 0usize..4, entries in prop::collection::vec(0u64..3, 9)) {
        prop_assume!(d1 + d2 > 0);
        let a2 = build(AlgebraSpec::a2(), 3);
        let f = *a2.field();
        let rows: Vec<Vec<u64>> = (0..d2).map(|i| (0..d1).map(|j| entries[i * 3 + j]).collect()).collect();
        let map = Matrix::from_rows(&f, d1, &rows);
        let r = map.rank();
        let m = Module::from_representation(a2.clone(), &[d1, d2], &[map]).unwrap();
        let d = decompose(&m, 5).unwrap();
        prop_assert_eq!(d.summands.len(), r + (d1 - r) + (d2 - r));
        prop_assert!(assembly_matrix(&m, &d).inverse().is_some());
        let twos = d.summands.iter().filter(|s| s.module.dim() == 2).count();
        prop_assert_eq!(twos, r);
        for s in &d.summands {
            prop_assert_eq!(hom_space(&s.module, &s.module).unwrap().len(), 1);
        }
    }
}
