//! Field axioms and substitution for parametric scalars.

mod common;

use common::{config, nonzero_poly, poly, scalar};
use ncaseed::scalars::declare_param;
use ncaseed::Scalar;
use proptest::prelude::*;

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        common::field_axioms(&a, &b, &c)?;
    }
}

proptest! {
    #![proptest_config(config(500))]

    /// Equal fractions have equal normal forms.
    #[test]
    fn normal_form_of_fractions(p in poly(), q in nonzero_poly(), r in nonzero_poly(), s in scalar()) {
        prop_assert_eq!(&p / &q, &(&p * &r) / &(&q * &r));
        let t = &p / &q;
        prop_assert_eq!(t == s, (&t - &s).is_zero());
    }

    #[test]
    fn substitution_is_a_homomorphism(
        a in scalar(),
        b in scalar(),
        va in -5i64..=5,
        vb in 1i64..=4,
        g in poly(),
    ) {
        let map = vec![
            (declare_param("alpha").unwrap(), Scalar::from_int(va)),
            (declare_param("beta").unwrap(), &g / &Scalar::from_int(vb)),
        ];
        let (Ok(sa), Ok(sb)) = (a.subs(&map), b.subs(&map)) else {
            return Ok(());
        };
        prop_assert_eq!((&a + &b).subs(&map).unwrap(), &sa + &sb);
        prop_assert_eq!((&a * &b).subs(&map).unwrap(), &sa * &sb);
        if !sa.is_zero() {
            prop_assert_eq!(a.inv().subs(&map).unwrap(), sa.inv());
        }
    }
}

#[test]
fn square_roots_reduce() {
    let a = Scalar::param("alpha");
    let s = ncaseed::adjoin_sqrt(&(&a * &Scalar::from_int(2))).unwrap();
    assert_eq!(&s * &s, &a * &Scalar::from_int(2));
    assert_eq!((&s * &s.inv()), Scalar::one());
}
