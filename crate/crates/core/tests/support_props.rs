use std::sync::Arc;

use proptest::prelude::*;
use specsupp::algmod::submodules::submodule_modules;
use specsupp::algmod::*;
use specsupp::support::*;
use specsupp::{Error, PrimeField};

fn build(spec: AlgebraSpec) -> Arc<Algebra<PrimeField>> {
    Arc::new(spec.build(&PrimeField::new(1009).unwrap()).unwrap())
}

fn a3() -> AlgebraSpec {
    AlgebraSpec::quiver("a3", &["1", "2", "3"], &[("a", "2", "1"), ("b", "3", "2")], &[])
}

/// Structure modules and their pairwise sums, up to dimension 4.
fn corpus(alg: &Arc<Algebra<PrimeField>>) -> Vec<Module<PrimeField>> {
    let s = structure_modules(alg);
    let base: Vec<Module<PrimeField>> =
        s.simples.iter().chain(&s.injectives).chain(&s.projectives).cloned().collect();
    let mut out = base.clone();
    for (i, x) in base.iter().enumerate() {
        for y in &base[i..] {
            if x.dim() + y.dim() <= 4 {
                out.push(direct_sum(alg, &[x, y]));
            }
        }
    }
    out
}

#[test]
fn decomposition_lattice_of_injective_sums() {
    let alg = build(AlgebraSpec::a2());
    let s = structure_modules(&alg);
    let (i1, i2) = (&s.injectives[0], &s.injectives[1]);

    let x = direct_sum(&alg, &[i1, i2]);
    let d = decomposition_lattice(&x, 0).unwrap();
    assert_eq!(d.ring.size(), 4);
    assert_eq!(d.central_lattice.atom_count(), 2);
    assert!(d.iso.is_bijective());
    let dot = d.to_dot();
    assert_eq!(dot.matches("->").count(), 4);
    assert_eq!(dot.matches("label=").count(), 4);

    let d = decomposition_lattice(i1, 0).unwrap();
    assert_eq!(d.ring.size(), 2);

    let x = direct_sum(&alg, &[i1, i2, i1]);
    let d = decomposition_lattice(&x, 0).unwrap();
    assert_eq!(d.atom_count(), 2);
    let only_i1 = SupportSet::from_names(&alg, &["I1"]).unwrap();
    let w = d.witness(&only_i1).unwrap();
    assert_eq!(w.display_name(), "I1^2");
    assert!(is_isomorphic(w, &i1.power(2), 0).unwrap());
    assert_eq!(supp(w), supp(i1));
    let full = d.witness(&SupportSet::full(&alg)).unwrap();
    assert!(is_isomorphic(full, &x, 0).unwrap());

    assert_eq!(decomposition_lattice(&s.simples[0], 0).unwrap_err(), Error::NotInjective);
}

#[test]
fn realized_decompositions() {
    let alg = build(AlgebraSpec::a2());
    let s = structure_modules(&alg);
    let (i1, i2) = (&s.injectives[0], &s.injectives[1]);
    let u1 = SupportSet::from_names(&alg, &["I1"]).unwrap();
    let u2 = SupportSet::from_names(&alg, &["I2"]).unwrap();

    let x = direct_sum(&alg, &[i1, i2]);
    let r = realize_decomposition(&x, &[u1.clone(), u2.clone()], 0).unwrap();
    assert!(is_isomorphic(&r.parts[0], i1, 0).unwrap());
    assert!(is_isomorphic(&r.parts[1], i2, 0).unwrap());
    assert!(r.isomorphism.is_iso());

    let r = realize_decomposition(&x, &[SupportSet::full(&alg)], 0).unwrap();
    assert_eq!(r.parts.len(), 1);
    assert!(is_isomorphic(&r.parts[0], &x, 0).unwrap());

    let y = direct_sum(&alg, &[i1, i1, i2]);
    let r = realize_decomposition(&y, &[u1.clone(), u2.clone()], 0).unwrap();
    assert_eq!(r.parts[0].display_name(), "I1^2");
    assert!(is_isomorphic(&r.parts[0], &i1.power(2), 0).unwrap());
    assert!(supp(&r.parts[0]).is_disjoint(&supp(&r.parts[1])));

    assert!(matches!(realize_decomposition(&x, std::slice::from_ref(&u1), 0), Err(Error::NotAPartition(_))));
    assert!(matches!(
        realize_decomposition(&x, &[u1.clone(), SupportSet::full(&alg)], 0),
        Err(Error::NotAPartition(_))
    ));
    assert_eq!(realize_decomposition(&s.simples[0], &[u1], 0).unwrap_err(), Error::NotInjective);
}

#[test]
fn atoms_match_central_idempotents_on_injectives() {
    for spec in [AlgebraSpec::a2(), AlgebraSpec::dual_numbers(), AlgebraSpec::k_times_k(), a3()] {
        let alg = build(spec);
        let s = structure_modules(&alg);
        let inj = &s.injectives;
        let mut xs: Vec<Module<PrimeField>> = inj.clone();
        xs.push(direct_sum(&alg, &inj.iter().collect::<Vec<_>>()));
        xs.push(inj[0].power(2));
        for x in xs {
            let d = decomposition_lattice(&x, 1).unwrap();
            let ec = endo_central_idempotents(&x, 1).unwrap();
            assert_eq!(d.atom_count(), supp(&x).len());
            assert_eq!(d.atom_count(), ec.central_primitives.len());
        }
    }
}

#[test]
fn golden_sequence_inclusions() {
    let alg = build(AlgebraSpec::a2());
    let s = structure_modules(&alg);
    let ex = |m: &Module<PrimeField>| supp_ex(m, 8, 0).unwrap().set;
    let (a, b, c) = (ex(&s.simples[0]), ex(&s.injectives[0]), ex(&s.injectives[1]));
    assert_eq!(b.names(), vec!["I1"]);
    for (x, y, z) in [(&a, &b, &c), (&b, &a, &c), (&c, &a, &b)] {
        assert!(x.is_subset(&y.union(z)));
    }
}

#[test]
fn sampled_sequences_satisfy_two_of_three() {
    for spec in [AlgebraSpec::a2(), AlgebraSpec::dual_numbers(), a3()] {
        let alg = build(spec);
        let r = exactness_property_check(&alg, 60, 7, 4, 16).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.sequences_checked + r.skipped_incomplete, 60);
        assert!(r.split_checked > 0);
    }
}

#[test]
fn essentially_closed_classes_are_closed() {
    let alg = build(a3());
    let s = structure_modules(&alg);
    for mask in 0u64..8 {
        let u = SupportSet::from_mask(&alg, mask).unwrap();
        let c = ClassifiedSubcategory::new(SubcategoryKind::EssentiallyClosed, u.clone());
        for m in corpus(&alg) {
            if !class_membership(&m, &c, 16, 0).unwrap() {
                continue;
            }
            for (sub, _) in submodule_modules(&m, 4, DEFAULT_BUDGET).unwrap() {
                assert!(class_membership(&sub, &c, 16, 0).unwrap());
            }
            let e = injective_envelope(&m).unwrap().module;
            assert!(class_membership(&e, &c, 16, 0).unwrap());
            for other in &s.injectives {
                if class_membership(other, &c, 16, 0).unwrap() {
                    assert!(class_membership(&direct_sum(&alg, &[&m, other]), &c, 16, 0).unwrap());
                }
            }
        }
    }
}

#[test]
fn supp_inside_exact_support() {
    for spec in [AlgebraSpec::a2(), AlgebraSpec::dual_numbers(), a3()] {
        let alg = build(spec);
        for m in corpus(&alg) {
            let ex = supp_ex(&m, 16, 0).unwrap();
            assert!(ex.complete);
            assert!(supp(&m).is_subset(&ex.set));
        }
    }
}

/// Vertices in the support of the dimension vector.
fn factor_set(m: &Module<PrimeField>) -> u64 {
    m.dim_vector().iter().enumerate().filter(|(_, &d)| d > 0).fold(0, |acc, (i, _)| acc | 1 << i)
}

#[test]
fn closures_are_composition_factor_classes() {
    let alg = build(a3());
    let s = structure_modules(&alg);
    // indecomposables of linear A3 are the six intervals; each has a simple
    // socle and so sits inside an indecomposable injective
    let mut intervals: Vec<Module<PrimeField>> = Vec::new();
    for i in &s.injectives {
        for (m, _) in submodule_modules(i, 3, DEFAULT_BUDGET).unwrap() {
            if !m.is_zero() && decompose_module(&m, 0).unwrap().len() == 1 {
                let mut new = true;
                for t in &intervals {
                    new &= !is_isomorphic(t, &m, 0).unwrap();
                }
                if new {
                    intervals.push(m);
                }
            }
        }
    }
    assert_eq!(intervals.len(), 6);
    for mask in 1u64..8 {
        let gens: Vec<Module<PrimeField>> =
            (0..3).filter(|v| mask >> v & 1 == 1).map(|v| s.simples[v].clone()).collect();
        let c = localising_closure(&alg, &gens, 4, DEFAULT_BUDGET, 0).unwrap();
        let expected = intervals.iter().filter(|m| factor_set(m) & !mask == 0).count();
        assert_eq!(c.corpus.len(), expected, "generators {mask:#b}");
        for m in &c.corpus {
            assert_eq!(factor_set(m) & !mask, 0);
        }
        let stable_expected = (0..3).all(|v| {
            let inj = &s.injectives[v];
            !c.sigma.contains(v) || factor_set(inj) & !mask == 0
        });
        assert_eq!(c.stable, stable_expected);
    }
}

#[test]
fn closure_sigma_preserves_joins() {
    let alg = build(a3());
    let s = structure_modules(&alg);
    let sigma = |gens: &[Module<PrimeField>]| localising_closure(&alg, gens, 4, DEFAULT_BUDGET, 0).unwrap().sigma;
    for i in 0..3 {
        for j in 0..3 {
            let a = vec![s.simples[i].clone()];
            let b = vec![s.injectives[j].clone()];
            let both: Vec<Module<PrimeField>> = a.iter().chain(&b).cloned().collect();
            assert_eq!(sigma(&both), sigma(&a).union(&sigma(&b)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn supp_of_sums_is_the_union(i in 0usize..9, j in 0usize..9) {
        let alg = build(a3());
        let c = corpus(&alg);
        let (x, y) = (&c[i % c.len()], &c[j % c.len()]);
        prop_assert_eq!(supp(&direct_sum(&alg, &[x, y])), supp(x).union(&supp(y)));
        prop_assert_eq!(supp(x).is_empty(), x.is_zero());
        let ex_sum = supp_ex(&direct_sum(&alg, &[x, y]), 16, 0).unwrap().set;
        prop_assert_eq!(ex_sum, supp_ex(x, 16, 0).unwrap().set.union(&supp_ex(y, 16, 0).unwrap().set));
    }
}
