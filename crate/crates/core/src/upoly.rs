//! Binary forms in a homogeneous parameter `(u0 : u1)`, used to parametrize
//! curve components and to extract identities coefficient by coefficient.

use crate::assume::Assumptions;
use crate::error::Result;
use crate::freealg::Mat2;
use crate::scalars::Scalar;

/// `sum_i c[i] u0^i u1^(deg - i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinForm {
    deg: usize,
    coeffs: Vec<Scalar>,
}

impl BinForm {
    pub fn zero(deg: usize) -> BinForm {
        BinForm {
            deg,
            coeffs: vec![Scalar::zero(); deg + 1],
        }
    }

    pub fn constant(c: Scalar) -> BinForm {
        BinForm {
            deg: 0,
            coeffs: vec![c],
        }
    }

    /// `a u0 + b u1`.
    pub fn linear(a: Scalar, b: Scalar) -> BinForm {
        BinForm {
            deg: 1,
            coeffs: vec![b, a],
        }
    }

    pub fn u0() -> BinForm {
        BinForm::linear(Scalar::one(), Scalar::zero())
    }

    pub fn u1() -> BinForm {
        BinForm::linear(Scalar::zero(), Scalar::one())
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    /// Coefficients, lowest power of `u0` first.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &BinForm) -> BinForm {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.deg, other.deg, "binary forms of different degree");
        BinForm {
            deg: self.deg,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &BinForm) -> BinForm {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> BinForm {
        BinForm {
            deg: self.deg,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &BinForm) -> BinForm {
        let mut out = BinForm::zero(self.deg + other.deg);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
            }
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> BinForm {
        BinForm {
            deg: self.deg,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn apply_assumptions(&self, asm: &Assumptions) -> BinForm {
        self.map_coeffs(|c| asm.apply(c))
    }
}

/// A point of ℙ¹ depending on the parameter: two forms of equal degree.
pub type FormPoint = (BinForm, BinForm);

/// The generic point `(u0, u1)`.
pub fn generic_point() -> FormPoint {
    (BinForm::u0(), BinForm::u1())
}

pub fn const_point(p: &(Scalar, Scalar)) -> FormPoint {
    (
        BinForm::constant(p.0.clone()),
        BinForm::constant(p.1.clone()),
    )
}

/// Column action of a matrix on a parametrized point.
pub fn apply_matrix(m: &Mat2, p: &FormPoint) -> FormPoint {
    (
        p.0.scale(&m.a).add(&p.1.scale(&m.b)),
        p.0.scale(&m.c).add(&p.1.scale(&m.d)),
    )
}

/// `p.0 q.1 - p.1 q.0`, identically zero iff the points agree projectively
/// for every parameter value.
pub fn cross(p: &FormPoint, q: &FormPoint) -> BinForm {
    p.0.mul(&q.1).sub(&p.1.mul(&q.0))
}

/// Coefficients that must all vanish for `p ~ q` identically.
pub fn proportional_equations(p: &FormPoint, q: &FormPoint) -> Vec<Scalar> {
    cross(p, q)
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .cloned()
        .collect()
}

/// Whether all coefficients vanish under `asm`.
pub fn form_vanishes(f: &BinForm, asm: &Assumptions) -> Result<bool> {
    for c in f.coeffs() {
        if !asm.is_zero(c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_cross() {
        let u = generic_point();
        let sw = apply_matrix(&Mat2::swap(), &u);
        // (u0, u1) x (u1, u0) = u0^2 - u1^2.
        let c = cross(&u, &sw);
        assert_eq!(
            c.coeffs(),
            &[Scalar::from_int(-1), Scalar::zero(), Scalar::one()]
        );
        assert!(cross(&u, &apply_matrix(&Mat2::ints(3, 0, 0, 3), &u)).is_zero());
    }
}
