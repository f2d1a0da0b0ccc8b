//! Segre-product determinants, the common-zero test and the catalog of
//! point-scheme automorphisms.

mod common;

use common::{biforms, config, s};
use ncaseed::assume::Assumptions;
use ncaseed::geometry::{all_families, is_g_automorphism, mutated_families};
use ncaseed::segre::{common_zero_empty, det_segre};
use ncaseed::{BiForm, CurveComponent, Mat2, Mobius, NCPoly, ProjPoint, Scalar, Word};
use proptest::prelude::*;

fn quadratic() -> impl Strategy<Value = NCPoly> {
    prop::array::uniform4(-3i64..=3).prop_map(|c| {
        let mut p = NCPoly::zero(2);
        for (i, &v) in c.iter().enumerate() {
            p.add_term(Word::from_index(2, i), Scalar::from_int(v));
        }
        p
    })
}

fn matrix_of_quadratics() -> impl Strategy<Value = [[NCPoly; 2]; 2]> {
    (quadratic(), quadratic(), quadratic(), quadratic()).prop_map(|(a, b, c, d)| [[a, b], [c, d]])
}

fn invertible() -> impl Strategy<Value = Mat2> {
    prop::array::uniform4(-3i64..=3)
        .prop_filter("invertible", |[a, b, c, d]| a * d != b * c)
        .prop_map(|[a, b, c, d]| Mat2::ints(a, b, c, d))
}

fn mobius() -> impl Strategy<Value = Mobius> {
    invertible().prop_map(|m| Mobius::new(m).unwrap())
}

fn component() -> impl Strategy<Value = CurveComponent> {
    let point = (-3i64..=3, -3i64..=3)
        .prop_filter("nonzero", |&(a, b)| a != 0 || b != 0)
        .prop_map(|(a, b)| ProjPoint::ints(a, b));
    prop_oneof![
        point.clone().prop_map(CurveComponent::VLine),
        point.prop_map(CurveComponent::HLine),
        mobius().prop_map(CurveComponent::Graph),
    ]
}

proptest! {
    #![proptest_config(config(300))]

    #[test]
    fn det_segre_is_alternating(m in matrix_of_quadratics()) {
        let swapped = [m[1].clone(), m[0].clone()];
        let d = det_segre(&m).unwrap();
        let e = det_segre(&swapped).unwrap();
        prop_assert_eq!(d.add(&e), BiForm::zero((2, 2)));
    }

    /// Two (1,1) curves on ℙ¹×ℙ¹ always meet.
    #[test]
    fn two_entries_always_meet(e in biforms(1..=2)) {
        prop_assert!(!common_zero_empty(&e, &Assumptions::new()).unwrap());
    }

    /// Entries forced through a chosen point have a common zero there.
    #[test]
    fn forced_common_zero(
        e in biforms(2..=5),
        p in (-4i64..=4, 1i64..=3),
        q in (-4i64..=4, 1i64..=3),
    ) {
        let (p, q) = ((s(p.0), s(p.1)), (s(q.0), s(q.1)));
        // Correct each entry by a multiple of y1 y2, which is nonzero at (p, q).
        let y1y2 = BiForm::monomial((1, 1), 0, 0, Scalar::one());
        let w = y1y2.eval(&p, &q);
        let forced: Vec<BiForm> = e
            .iter()
            .map(|f| f.sub(&y1y2.scale(&(&f.eval(&p, &q) / &w))))
            .collect();
        for f in &forced {
            prop_assert!(f.eval(&p, &q).is_zero());
        }
        prop_assert!(!common_zero_empty(&forced, &Assumptions::new()).unwrap());
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn grid_search_agrees(e in biforms(3..=5)) {
        common::grid_agrees(&e)?;
    }

    #[test]
    fn transport_is_functorial(
        c in component(),
        t1 in mobius(),
        t2 in mobius(),
        r1 in mobius(),
        r2 in mobius(),
    ) {
        let twice = c.transport(&t1, &t2).transport(&r1, &r2);
        let once = c.transport(&r1.compose(&t1), &r2.compose(&t2));
        prop_assert!(twice.eq_under(&once, &Assumptions::new()).unwrap());
    }
}

#[test]
fn catalog_families_are_automorphisms() {
    ncaseed::classify::declare_standard_symbols();
    for f in all_families() {
        assert!(
            is_g_automorphism(&f.pair, &f.assumptions).unwrap(),
            "{}",
            f.name
        );
    }
}

#[test]
fn mutated_families_are_rejected() {
    ncaseed::classify::declare_standard_symbols();
    let m = mutated_families();
    assert_eq!(m.len(), 5);
    for f in m {
        assert!(
            !is_g_automorphism(&f.pair, &f.assumptions).unwrap(),
            "{}",
            f.name
        );
    }
}
