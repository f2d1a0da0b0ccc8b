//! Strategies and brute-force oracles shared by the property suites and the
//! acceptance harness.
#![allow(dead_code)]

use ncaseed::{BiForm, Gen, NCPoly, Scalar, Word};
use proptest::prelude::*;

pub const PARAMS: [&str; 3] = ["alpha", "beta", "gamma"];

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::with_cases(cases)
    }
}

pub fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

// ---------------------------------------------------------------- scalars

/// A polynomial with at most three terms of degree ≤ 2 in each parameter.
pub fn poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-4i64..=4, 0usize..3, 0i64..3, 0usize..3, 0i64..2), 1..4).prop_map(
        |terms| {
            terms
                .iter()
                .fold(Scalar::zero(), |acc, &(c, p1, e1, p2, e2)| {
                    let m = &Scalar::param(PARAMS[p1]).pow(e1) * &Scalar::param(PARAMS[p2]).pow(e2);
                    &acc + &(&Scalar::from_int(c) * &m)
                })
        },
    )
}

pub fn nonzero_poly() -> impl Strategy<Value = Scalar> {
    poly().prop_map(|p| if p.is_zero() { Scalar::one() } else { p })
}

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| &n / &d)
}

/// Associativity, distributivity, commutativity and inverses.
pub fn field_axioms(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    #[allow(clippy::eq_op)]
    let diff = a - a;
    prop_assert!(diff.is_zero());
    if !a.is_zero() {
        prop_assert!((a * &a.inv()).is_one());
        prop_assert_eq!(&(b / a) * a, b.clone());
    }
    Ok(())
}

// ---------------------------------------------------------------- free algebra

pub fn coeff() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Scalar::frac(n, d)),
        (-3i64..=3, 0usize..3).prop_map(|(n, k)| &Scalar::from_int(n) * &Scalar::param(PARAMS[k])),
        (1i64..=3).prop_map(
            |n| &Scalar::param("alpha") / &(&Scalar::param("beta") + &Scalar::from_int(n))
        ),
    ]
}

pub fn ncpoly(degree: usize) -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((0usize..(1 << degree), coeff()), 1..6).prop_map(move |terms| {
        let mut p = NCPoly::zero(degree);
        for (i, c) in terms {
            p.add_term(Word::from_index(degree, i), c);
        }
        p
    })
}

pub fn any_ncpoly() -> impl Strategy<Value = NCPoly> {
    (1usize..=5)
        .prop_flat_map(ncpoly)
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// `x ∂_x w + y ∂_y w = w` and its right-handed twin.
pub fn reconstruction(w: &NCPoly) -> Result<(), TestCaseError> {
    let (x, y) = (NCPoly::gen(Gen::X), NCPoly::gen(Gen::Y));
    let left = x
        .mul(&w.left_derivative(Gen::X).unwrap())
        .add(&y.mul(&w.left_derivative(Gen::Y).unwrap()));
    prop_assert_eq!(&left, w);
    let right = w
        .right_derivative(Gen::X)
        .unwrap()
        .mul(&x)
        .add(&w.right_derivative(Gen::Y).unwrap().mul(&y));
    prop_assert_eq!(&right, w);
    Ok(())
}

pub fn quartic_rotation(w: &NCPoly) -> Result<(), TestCaseError> {
    let r = (0..4).fold(w.clone(), |r, _| r.rotate().unwrap());
    prop_assert_eq!(&r, w);
    Ok(())
}

pub fn round_trip(w: &NCPoly) -> Result<(), TestCaseError> {
    let text = w.to_string();
    prop_assert_eq!(&ncaseed::parse_ncpoly(&text).unwrap(), w, "{}", text);
    Ok(())
}

// ---------------------------------------------------------------- Segre product

/// `c[0] y1 y2 + c[1] y1 x2 + c[2] x1 y2 + c[3] x1 x2`.
pub fn biform(c: [i64; 4]) -> BiForm {
    let mut f = BiForm::zero((1, 1));
    for (k, &v) in c.iter().enumerate() {
        f = f.add(&BiForm::monomial((1, 1), k / 2, k % 2, Scalar::from_int(v)));
    }
    f
}

pub fn biforms(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<BiForm>> {
    prop::collection::vec(prop::array::uniform4(-3i64..=3).prop_map(biform), n)
}

/// Points of ℙ¹ with affine coordinate in -20..=20, infinity, and four
/// points off the integer lattice.
pub fn search_points() -> Vec<(Scalar, Scalar)> {
    let mut pts: Vec<(Scalar, Scalar)> = (-20..=20).map(|t| (s(t), s(1))).collect();
    pts.push((s(1), s(0)));
    pts.extend([(s(2), s(3)), (s(-3), s(2)), (s(1), s(7)), (s(-5), s(3))]);
    pts
}

/// Whether some second point makes every entry vanish at the first point `p`:
/// the entries are linear in it, so this is a rank condition.
pub fn common_q(entries: &[BiForm], p: &(Scalar, Scalar)) -> bool {
    let rows: Vec<(Scalar, Scalar)> = entries
        .iter()
        .map(|e| (e.eval(p, &(s(1), s(0))), e.eval(p, &(s(0), s(1)))))
        .collect();
    rows.iter().enumerate().all(|(i, a)| {
        rows[i + 1..]
            .iter()
            .all(|b| (&(&a.0 * &b.1) - &(&a.1 * &b.0)).is_zero())
    })
}

/// A common zero found by search rules out an empty locus.
pub fn grid_agrees(entries: &[BiForm]) -> Result<(), TestCaseError> {
    let empty = ncaseed::segre::common_zero_empty(entries, &ncaseed::Assumptions::new()).unwrap();
    if search_points().iter().any(|p| common_q(entries, p)) {
        prop_assert!(!empty);
    }
    Ok(())
}
