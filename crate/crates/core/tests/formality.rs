use cokahler::cdga::{tensor_product, CohomologyRing, Dga, PivotOrder, Subcomplex};
use cokahler::contact::LieModel;
use cokahler::formality::{degree_one_massey, minimal_model, triple_massey, Class, FormalityVerdict};
use num_rational::Rational64;
use proptest::prelude::*;

type Q = Rational64;

/// A 2-step nilpotent Lie algebra: `X_1..X_a` span a complement whose
/// brackets land in the centre `X_{a+1}..X_n`.
fn two_step() -> impl Strategy<Value = LieModel<Q>> {
    (3usize..=5)
        .prop_flat_map(|n| (Just(n), 2..n))
        .prop_flat_map(|(n, a)| {
            let pairs = a * (a - 1) / 2;
            (Just(n), Just(a), prop::collection::vec(-2i64..=2, pairs * (n - a)))
        })
        .prop_map(|(n, a, cs)| {
            let mut entries = Vec::new();
            let mut it = cs.into_iter();
            for k in a..n {
                for i in 0..a {
                    for j in i + 1..a {
                        let c = it.next().unwrap();
                        if c != 0 {
                            entries.push((i, j, k, Q::from_integer(c)));
                        }
                    }
                }
            }
            LieModel::new(n, &entries).unwrap()
        })
}

fn heisenberg_times_torus(extra: usize) -> LieModel<Q> {
    LieModel::new(3 + extra, &[(0, 1, 2, Q::from_integer(1))]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn massey_verdicts_do_not_depend_on_pivots(m in two_step()) {
        let h = Subcomplex::full(m.dga()).cohomology();
        // An Err here would mean the two pivot orders disagree.
        prop_assert!(degree_one_massey(&h).is_ok());
        let n = h.dim(1);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let [x, y, z] = [i, j, k].map(|t| Class::basis(&h, 1, t));
                    let f = triple_massey(&h, &x, &y, &z, PivotOrder::Forward);
                    let r = triple_massey(&h, &x, &y, &z, PivotOrder::Reverse);
                    match (f, r) {
                        (Ok(f), Ok(r)) => prop_assert_eq!(f.vanishes, r.vanishes),
                        (Err(_), Err(_)) => {}
                        _ => prop_assert!(false, "only one pivot order defined ({i},{j},{k})"),
                    }
                }
            }
        }
    }

    #[test]
    fn rescaling_a_class_preserves_vanishing(m in two_step(), scale in 1i64..=3) {
        let h = Subcomplex::full(m.dga()).cohomology();
        let n = h.dim(1);
        for i in 0..n {
            for j in 0..n {
                let [x, y] = [i, j].map(|t| Class::basis(&h, 1, t));
                let Ok(base) = triple_massey(&h, &x, &y, &x, PivotOrder::Forward) else { continue };
                let scaled_x = Class::new(1, x.coords.iter().map(|c| c * Q::from_integer(scale)).collect());
                let scaled = triple_massey(&h, &scaled_x, &y, &x, PivotOrder::Forward).unwrap();
                prop_assert_eq!(base.vanishes, scaled.vanishes);
            }
        }
    }

    /// A nilpotent Chevalley–Eilenberg algebra is its own minimal model, so
    /// through any cap the model has exactly `dim g` generators, all of
    /// degree one.
    #[test]
    fn nilpotent_algebras_are_their_own_models(m in two_step(), cap in 1usize..=2) {
        let n = m.dim();
        let full = Subcomplex::full(m.dga());
        let model = minimal_model(&full, cap).unwrap();
        let mut expected = vec![0; cap + 1];
        expected[1] = n;
        prop_assert_eq!(model.generator_counts(), expected);
        prop_assert!(model.is_minimal());
        prop_assert!(model.quasi_isomorphic_through_cap());
        let betti = full.cohomology().betti();
        prop_assert_eq!(model.betti(), betti[..=cap].to_vec());
    }

    #[test]
    fn adjoining_a_circle_adds_one_generator(m in two_step()) {
        let circle = Dga::<Q>::exterior_line("t").unwrap();
        let product = tensor_product(m.dga(), &circle, None).unwrap();
        let with = minimal_model(&Subcomplex::full(&product), 2).unwrap();
        let without = minimal_model(&Subcomplex::full(m.dga()), 2).unwrap();
        let (a, b) = (with.generator_counts(), without.generator_counts());
        prop_assert_eq!(a[1], b[1] + 1);
        prop_assert_eq!(a[2], b[2]);
    }
}

#[test]
fn tori_have_only_vanishing_products() {
    for n in 1..=5 {
        let t = LieModel::<Q>::abelian(n).unwrap();
        let h: CohomologyRing<Q> = Subcomplex::full(t.dga()).cohomology();
        assert!(matches!(degree_one_massey(&h).unwrap(), FormalityVerdict::ConsistentWithFormal { .. }));
    }
}

#[test]
fn heisenberg_obstruction_survives_products_with_tori() {
    for extra in 0..=2 {
        let m = heisenberg_times_torus(extra);
        let h = Subcomplex::full(m.dga()).cohomology();
        assert!(matches!(degree_one_massey(&h).unwrap(), FormalityVerdict::Obstructed(_)), "extra = {extra}");
    }
}
