//! Free-algebra identities and the text round trip.

mod common;

use common::{any_ncpoly, config, ncpoly};
use ncaseed::exprparse::parse_ncpoly;
use ncaseed::{Mat2, NCPoly, Scalar};
use proptest::prelude::*;

/// Rotation needs at least two tensor slots.
fn rotatable() -> impl Strategy<Value = NCPoly> {
    (2usize..=5).prop_flat_map(ncpoly)
}

fn mat() -> impl Strategy<Value = Mat2> {
    prop::array::uniform4(-3i64..=3).prop_map(|[a, b, c, d]| Mat2::ints(a, b, c, d))
}

fn sum_of_coeffs(p: &NCPoly) -> Scalar {
    p.terms().fold(Scalar::zero(), |s, (_, c)| &s + c)
}

proptest! {
    #![proptest_config(config(500))]

    #[test]
    fn reconstruction(w in any_ncpoly()) {
        common::reconstruction(&w)?;
    }

    #[test]
    fn rotation_has_order_degree(w in rotatable()) {
        let mut r = w.clone();
        for _ in 0..w.degree() {
            r = r.rotate().unwrap();
            prop_assert_eq!(r.num_terms(), w.num_terms());
            prop_assert_eq!(sum_of_coeffs(&r), sum_of_coeffs(&w));
        }
        prop_assert_eq!(r, w);
    }

    #[test]
    fn quartic_rotation_four_times(w in ncpoly(4)) {
        common::quartic_rotation(&w)?;
    }

    #[test]
    fn print_parse_round_trip(w in any_ncpoly()) {
        common::round_trip(&w)?;
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn slot_maps_are_functorial(w in ncpoly(3), a in prop::collection::vec(mat(), 3), b in prop::collection::vec(mat(), 3)) {
        // `a ∘ b` slot by slot; matrices act on rows, so this is the product b·a.
        let ab: Vec<Mat2> = a.iter().zip(&b).map(|(x, y)| x.compose(y)).collect();
        let once = w.slot_map(&ab).unwrap();
        let twice = w.slot_map(&b).unwrap().slot_map(&a).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn evaluation_is_multilinear(w in ncpoly(3), s in 1i64..=4, p in prop::array::uniform4(1i64..=3), q in prop::array::uniform2(1i64..=3)) {
        let pt = |a: i64, b: i64| (Scalar::from_int(a), Scalar::from_int(b));
        let base = [pt(p[0], p[1]), pt(p[2], p[3]), pt(q[0], q[1])];
        let mut scaled = base.clone();
        scaled[1] = (&base[1].0 * &Scalar::from_int(s), &base[1].1 * &Scalar::from_int(s));
        let v = w.evaluate_multilinear(&base).unwrap();
        prop_assert_eq!(w.evaluate_multilinear(&scaled).unwrap(), &v * &Scalar::from_int(s));
        let mut summed = base.clone();
        summed[0] = (&base[0].0 + &base[2].0, &base[0].1 + &base[2].1);
        let mut other = base.clone();
        other[0] = base[2].clone();
        prop_assert_eq!(
            w.evaluate_multilinear(&summed).unwrap(),
            &v + &w.evaluate_multilinear(&other).unwrap()
        );
    }
}

#[test]
fn precedence() {
    let a = parse_ncpoly("-x^2*y + 2*y*x*y").unwrap();
    let b = parse_ncpoly("2*y*x*y - (x*x*y)").unwrap();
    assert_eq!(a, b);
    let c = parse_ncpoly("(alpha*beta)*x*y - (beta*alpha)*x*y").unwrap();
    assert!(c.is_zero());
    assert!(parse_ncpoly("(x*y)^2").is_err());
    assert!(parse_ncpoly("xy").is_err());
}
