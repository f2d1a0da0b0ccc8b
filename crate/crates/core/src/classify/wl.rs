//! The types whose point scheme is a union of lines through one point: WL₁,
//! WL₂ as twists of a single superpotential, and the twisted form TWL.

use crate::assume::Assumptions;
use crate::error::Result;
use crate::exprparse::parse_ncpoly;
use crate::freealg::{Mat2, NCPoly};
use crate::scalars::Scalar;
use crate::superpot::{derivation_quotient, ms_twist};

/// `x²y² + xy²x + y²x² + yx²y − 2xyxy − 2yxyx`.
pub fn omega_b() -> NCPoly {
    parse_ncpoly("x^2*y^2 + x*y^2*x + y^2*x^2 + y*x^2*y - 2*x*y*x*y - 2*y*x*y*x")
        .expect("fixed potential parses")
}

/// Relations of the twist of `ω_B` by `diag(1, α)`.
pub fn b1_relations(alpha: &Scalar) -> Result<(NCPoly, NCPoly)> {
    derivation_quotient(&ms_twist(
        &omega_b(),
        &Mat2::diag(Scalar::one(), alpha.clone()),
    )?)
}

/// Relations of the twist of `ω_B` by the unipotent `(1 1; 0 1)`.
pub fn b2_relations() -> Result<(NCPoly, NCPoly)> {
    derivation_quotient(&ms_twist(&omega_b(), &Mat2::ints(1, 1, 0, 1))?)
}

pub fn twl_relations() -> (NCPoly, NCPoly) {
    (
        parse_ncpoly("x*y^2 + y^2*x").expect("parses"),
        parse_ncpoly("x^2*y + y*x^2 + y^3").expect("parses"),
    )
}

/// `tr² / det`, a complete conjugacy invariant of non-scalar elements of
/// PGL₂ up to the unipotent/diagonal ambiguity at value 4.
pub fn wl_invariant(m: &Mat2) -> Scalar {
    let t = m.trace();
    &(&t * &t) / &m.det()
}

fn is_scalar(m: &Mat2, asm: &Assumptions) -> Result<bool> {
    Ok(asm.is_zero(&m.b)? && asm.is_zero(&m.c)? && asm.is_zero(&(&m.a - &m.d))?)
}

/// Whether two invertible matrices are conjugate in PGL₂.
pub fn pgl2_conjugate(m1: &Mat2, m2: &Mat2, asm: &Assumptions) -> Result<bool> {
    let (s1, s2) = (is_scalar(m1, asm)?, is_scalar(m2, asm)?);
    if s1 || s2 {
        return Ok(s1 && s2);
    }
    let lhs = &(&m1.trace() * &m1.trace()) * &m2.det();
    let rhs = &(&m2.trace() * &m2.trace()) * &m1.det();
    asm.is_zero(&(&lhs - &rhs))
}

/// WL-type isomorphism of the twists by `diag(1, α)` and `diag(1, α′)`:
/// holds iff `α′ = α^{±1}`, that is iff the twists are conjugate.
pub fn wl_iso(alpha: &Scalar, alpha2: &Scalar, asm: &Assumptions) -> Result<bool> {
    pgl2_conjugate(
        &Mat2::diag(Scalar::one(), alpha.clone()),
        &Mat2::diag(Scalar::one(), alpha2.clone()),
        asm,
    )
}

/// Whether `ψ^{⊗4}` carries the twist by `ψ⁻¹φψ` to a multiple of the twist
/// by `φ`, which makes conjugate twists isomorphic.
pub fn twist_conjugation_holds(phi: &Mat2, psi: &Mat2) -> Result<bool> {
    // The map ψ⁻¹ ∘ φ ∘ ψ under the row-action composition rule.
    let inner = psi.inverse()?.compose(&phi.compose(psi));
    let lhs = ms_twist(&omega_b(), &inner)?.slot_map(&[
        psi.clone(),
        psi.clone(),
        psi.clone(),
        psi.clone(),
    ])?;
    let rhs = ms_twist(&omega_b(), phi)?;
    Ok(lhs.ratio_to(&rhs).is_some_and(|l| !l.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprparse::parse_ncpoly;
    use crate::linalg::span_eq;

    #[test]
    fn b2_matches_wl2() {
        let (g1, g2) = b2_relations().unwrap();
        let want = [
            parse_ncpoly("x*y^2 + y^2*x - 2*y*x*y").unwrap().to_vector(),
            parse_ncpoly("x^2*y + y*x^2 - 2*x*y*x + 4*x*y^2 - 4*y*x*y + 2*y^3")
                .unwrap()
                .to_vector(),
        ];
        let got = [g1.to_vector(), g2.to_vector()];
        assert!(span_eq(&got, &want, &Assumptions::new()).unwrap());
    }

    #[test]
    fn conjugacy() {
        let asm = Assumptions::new();
        let a = Scalar::from_int(3);
        assert!(wl_iso(&a, &Scalar::frac(1, 3), &asm).unwrap());
        assert!(!wl_iso(&a, &Scalar::from_int(-3), &asm).unwrap());
        assert!(!pgl2_conjugate(&Mat2::identity(), &Mat2::ints(1, 1, 0, 1), &asm).unwrap());
        let phi = Mat2::diag(Scalar::one(), a);
        assert!(twist_conjugation_holds(&phi, &Mat2::ints(1, 2, 0, 1)).unwrap());
        assert!(twist_conjugation_holds(&Mat2::ints(1, 1, 0, 1), &Mat2::ints(2, 1, 1, 1)).unwrap());
    }
}
