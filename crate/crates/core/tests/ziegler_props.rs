use std::sync::Arc;

use specsupp::algmod::*;
use specsupp::exactla::radical_of_algebra;
use specsupp::ziegler::*;
use specsupp::PrimeField;

fn build(spec: AlgebraSpec, p: u64) -> Arc<Algebra<PrimeField>> {
    Arc::new(spec.build(&PrimeField::new(p).unwrap()).unwrap())
}

fn a3() -> AlgebraSpec {
    AlgebraSpec::quiver("a3", &["1", "2", "3"], &[("a", "2", "1"), ("b", "3", "2")], &[])
}

#[test]
fn point_counts_over_small_fields() {
    for p in [2, 3] {
        let z = ziegler_spectrum(&build(AlgebraSpec::a2(), p), 4, DEFAULT_BUDGET, 0).unwrap();
        assert_eq!(z.len(), 3);
        assert!(z.certified && z.discrete);
        let z = ziegler_spectrum(&build(AlgebraSpec::dual_numbers(), p), 4, DEFAULT_BUDGET, 0).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(z.indecomposables.iter().map(Module::dim).collect::<Vec<_>>(), vec![1, 2]);
    }
}

#[test]
fn linear_a3_has_six_intervals() {
    let z = ziegler_spectrum(&build(a3(), 2), 3, DEFAULT_BUDGET, 0).unwrap();
    assert_eq!(z.len(), 6);
    for m in &z.indecomposables {
        let dv = m.dim_vector();
        assert!(dv.iter().all(|&d| d <= 1));
        let support: Vec<usize> = (0..3).filter(|&v| dv[v] == 1).collect();
        assert_eq!(support.last().unwrap() - support[0] + 1, support.len(), "{dv:?} is not an interval");
    }
}

#[test]
fn larger_bound_adds_nothing_at_finite_type() {
    for spec in [AlgebraSpec::a2(), AlgebraSpec::dual_numbers(), AlgebraSpec::k_times_k()] {
        let alg = build(spec, 3);
        let small = ziegler_spectrum(&alg, 4, DEFAULT_BUDGET, 0).unwrap();
        let large = ziegler_spectrum(&alg, 6, DEFAULT_BUDGET, 0).unwrap();
        assert_eq!(small.names(), large.names());
    }
}

#[test]
fn points_are_distinct_with_local_endomorphisms() {
    for (spec, dmax) in [(AlgebraSpec::a2(), 4), (AlgebraSpec::dual_numbers(), 4), (a3(), 3)] {
        let alg = build(spec, 3);
        let z = ziegler_spectrum(&alg, dmax, DEFAULT_BUDGET, 0).unwrap();
        for (i, x) in z.indecomposables.iter().enumerate() {
            for y in &z.indecomposables[i + 1..] {
                assert!(!is_isomorphic(x, y, 0).unwrap());
            }
            // over a split basic algebra End/J of an indecomposable is the field
            let end = end_algebra(x).unwrap();
            let rad = radical_of_algebra(&end).unwrap();
            assert_eq!(end.dim() - rad.len(), 1, "{}", x.display_name());
        }
    }
}

#[test]
fn correspondence_holds_on_every_subset() {
    for spec in [AlgebraSpec::a2(), AlgebraSpec::dual_numbers()] {
        let z = ziegler_spectrum(&build(spec, 3), 4, DEFAULT_BUDGET, 0).unwrap();
        let r = definable_correspondence_check(&z, 4, 8, 5).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.subsets_checked, 1 << z.len());
        assert_eq!(r.distinct_classes, 1 << z.len());
    }
}

#[test]
fn spectrum_json_is_seed_independent() {
    let alg = build(AlgebraSpec::a2(), 3);
    let a = ziegler_spectrum(&alg, 4, DEFAULT_BUDGET, 0).unwrap().to_json();
    let b = ziegler_spectrum(&alg, 4, DEFAULT_BUDGET, 11).unwrap().to_json();
    assert_eq!(a, b);
}
