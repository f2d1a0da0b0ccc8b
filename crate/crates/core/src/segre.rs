//! Bihomogeneous forms on ℙ¹×ℙ¹, the determinant of M(ω), emptiness of the
//! common zero locus of its entries, and the AS-regularity predicate.

use std::collections::BTreeMap;
use std::fmt;

use crate::assume::{branch, Assumptions, Leaf};
use crate::error::{Error, Result};
use crate::freealg::{push_coeff, Gen, NCPoly};
use crate::geometry::CurveComponent;
use crate::linalg::{rref, Row};
use crate::scalars::Scalar;
use crate::superpot::{is_standard_under, m_matrix, twisting_matrix_under};
use crate::upoly::BinForm;

/// `sum c[(i,j)] x1^i y1^(d1-i) x2^j y2^(d2-j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiForm {
    bideg: (usize, usize),
    terms: BTreeMap<(usize, usize), Scalar>,
}

impl BiForm {
    pub fn zero(bideg: (usize, usize)) -> BiForm {
        BiForm {
            bideg,
            terms: BTreeMap::new(),
        }
    }

    /// The monomial `x1^i y1^(d1-i) x2^j y2^(d2-j)` with coefficient `c`.
    pub fn monomial(bideg: (usize, usize), i: usize, j: usize, c: Scalar) -> BiForm {
        let mut f = BiForm::zero(bideg);
        f.add_term(i, j, c);
        f
    }

    pub fn x1() -> BiForm {
        BiForm::monomial((1, 0), 1, 0, Scalar::one())
    }

    pub fn y1() -> BiForm {
        BiForm::monomial((1, 0), 0, 0, Scalar::one())
    }

    pub fn x2() -> BiForm {
        BiForm::monomial((0, 1), 0, 1, Scalar::one())
    }

    pub fn y2() -> BiForm {
        BiForm::monomial((0, 1), 0, 0, Scalar::one())
    }

    pub fn bidegree(&self) -> (usize, usize) {
        self.bideg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> Scalar {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.terms.iter()
    }

    fn add_term(&mut self, i: usize, j: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Scalar::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn add(&self, other: &BiForm) -> BiForm {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        assert_eq!(self.bideg, other.bideg, "bidegrees differ");
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> BiForm {
        let mut out = BiForm::zero(self.bideg);
        for (&(i, j), a) in &self.terms {
            out.add_term(i, j, a * c);
        }
        out
    }

    pub fn sub(&self, other: &BiForm) -> BiForm {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn mul(&self, other: &BiForm) -> BiForm {
        let bideg = (self.bideg.0 + other.bideg.0, self.bideg.1 + other.bideg.1);
        let mut out = BiForm::zero(bideg);
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> BiForm {
        let mut out = BiForm::zero(self.bideg);
        for (&(i, j), a) in &self.terms {
            out.add_term(i, j, f(a));
        }
        out
    }

    pub fn apply_assumptions(&self, asm: &Assumptions) -> BiForm {
        self.map_coeffs(|c| asm.apply(c))
    }

    /// Substitute parametrized points for `(x1:y1)` and `(x2:y2)`.
    pub fn substitute(&self, p: &(BinForm, BinForm), q: &(BinForm, BinForm)) -> BinForm {
        let pow = |f: &BinForm, e: usize| {
            (0..e).fold(BinForm::constant(Scalar::one()), |acc, _| acc.mul(f))
        };
        let mut out = BinForm::zero(0);
        for (&(i, j), c) in &self.terms {
            let t = pow(&p.0, i)
                .mul(&pow(&p.1, self.bideg.0 - i))
                .mul(&pow(&q.0, j))
                .mul(&pow(&q.1, self.bideg.1 - j))
                .scale(c);
            out = out.add(&t);
        }
        out
    }

    /// Value at a point of ℙ¹×ℙ¹ (given by representatives).
    pub fn eval(&self, p: &(Scalar, Scalar), q: &(Scalar, Scalar)) -> Scalar {
        let mut out = Scalar::zero();
        for (&(i, j), c) in &self.terms {
            let t = &(&(&p.0.pow(i as i64) * &p.1.pow((self.bideg.0 - i) as i64))
                * &(&q.0.pow(j as i64) * &q.1.pow((self.bideg.1 - j) as i64)))
                * c;
            out = &out + &t;
        }
        out
    }
}

impl fmt::Display for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let mut mono = Vec::new();
            for (name, e) in [
                ("x1", i),
                ("y1", self.bideg.0 - i),
                ("x2", j),
                ("y2", self.bideg.1 - j),
            ] {
                match e {
                    0 => {}
                    1 => mono.push(name.to_string()),
                    _ => mono.push(format!("{name}^{e}")),
                }
            }
            push_coeff(&mut out, c, k == 0, !mono.is_empty());
            out.push_str(&mono.join("*"));
        }
        f.write_str(&out)
    }
}

/// Word `uv` goes to (u in x1,y1)(v in x2,y2).
pub fn to_biform(t: &NCPoly) -> Result<BiForm> {
    if t.degree() != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            found: t.degree(),
        });
    }
    let mut out = BiForm::zero((1, 1));
    for (w, c) in t.terms() {
        let i = usize::from(w.letter(0) == Gen::X);
        let j = usize::from(w.letter(1) == Gen::X);
        out.add_term(i, j, c.clone());
    }
    Ok(out)
}

/// `m11 m22 - m12 m21` in the Segre product.
pub fn det_segre(m: &[[NCPoly; 2]; 2]) -> Result<BiForm> {
    let b = |i: usize, j: usize| to_biform(&m[i][j]);
    let d = b(0, 0)?.mul(&b(1, 1)?).sub(&b(0, 1)?.mul(&b(1, 0)?));
    Ok(if d.is_zero() { BiForm::zero((2, 2)) } else { d })
}

/// Whether no `(p, q)` zeroes all entries (each of bidegree (1,1)).
///
/// Each entry is `q0 A(p) + q1 B(p)`. A common `q` exists iff the 2x2
/// minors of the `(A, B)` columns vanish at `p`. The minors are binary
/// quadratics in `p`; their span has a common root iff its rank is below
/// 2, or it is 2 and the resultant of a basis vanishes.
pub fn common_zero_empty(entries: &[BiForm], asm: &Assumptions) -> Result<bool> {
    for e in entries {
        if !e.is_zero() && e.bidegree() != (1, 1) {
            return Err(Error::WrongDegree {
                expected: 2,
                found: e.bidegree().0 + e.bidegree().1,
            });
        }
    }
    // A = coefficient of x2, B = coefficient of y2; linear forms in p as
    // (coefficient of y1, coefficient of x1).
    let col = |e: &BiForm, j: usize| [asm.apply(&e.coeff(0, j)), asm.apply(&e.coeff(1, j))];
    let ab: Vec<([Scalar; 2], [Scalar; 2])> =
        entries.iter().map(|e| (col(e, 1), col(e, 0))).collect();
    let mut minors: Vec<Row> = Vec::new();
    for i in 0..ab.len() {
        for j in (i + 1)..ab.len() {
            // A_i B_j - A_j B_i as (y1^2, x1 y1, x1^2) coefficients.
            let prod = |f: &[Scalar; 2], g: &[Scalar; 2]| -> Row {
                vec![
                    &f[0] * &g[0],
                    &(&f[0] * &g[1]) + &(&f[1] * &g[0]),
                    &f[1] * &g[1],
                ]
            };
            let l = prod(&ab[i].0, &ab[j].1);
            let r = prod(&ab[j].0, &ab[i].1);
            minors.push(l.iter().zip(&r).map(|(a, b)| a - b).collect());
        }
    }
    if minors.is_empty() {
        return Ok(false);
    }
    let red = rref(&minors, asm)?;
    match red.pivots.len() {
        0 | 1 => Ok(false),
        3 => Ok(true),
        _ => {
            let (f, g) = (&red.rows[0], &red.rows[1]);
            // Sylvester resultant of c + b t + a t^2 and f' + e t + d t^2.
            let (c, b, a) = (&f[0], &f[1], &f[2]);
            let (f2, e, d) = (&g[0], &g[1], &g[2]);
            let afcd = &(a * f2) - &(c * d);
            let aebd = &(a * e) - &(b * d);
            let bfce = &(b * f2) - &(c * e);
            let res = &(&afcd * &afcd) - &(&aebd * &bfce);
            Ok(!asm.is_zero(&res)?)
        }
    }
}

/// The entries of M(ω) as bidegree (1,1) forms, row-major.
pub fn m_entries(omega: &NCPoly) -> Result<Vec<BiForm>> {
    let m = m_matrix(omega)?;
    m.iter().flat_map(|r| r.iter()).map(to_biform).collect()
}

/// D(ω) is AS-regular: ω is a twisted superpotential, D(ω) is standard and
/// the entries of M(ω) have no common zero. One leaf per parameter case.
pub fn is_as_regular(omega: &NCPoly, asm: &Assumptions) -> Result<Vec<Leaf<bool>>> {
    if omega.is_zero() {
        return Err(Error::ZeroInput);
    }
    branch(asm, |a| {
        let w = omega.apply_assumptions(a);
        if w.is_zero() {
            return Ok(false);
        }
        if twisting_matrix_under(&w, a)?.is_none() {
            return Ok(false);
        }
        if !is_standard_under(&w, a)? {
            return Ok(false);
        }
        common_zero_empty(&m_entries(&w)?, a)
    })
}

/// Whether `f` vanishes identically on the component.
pub fn vanishes_on_component(f: &BiForm, c: &CurveComponent) -> bool {
    let (p, q) = c.parametrize();
    f.substitute(&p, &q).is_zero()
}

/// [`vanishes_on_component`] deciding coefficients under assumptions.
pub fn vanishes_on_component_under(
    f: &BiForm,
    c: &CurveComponent,
    asm: &Assumptions,
) -> Result<bool> {
    let (p, q) = c.parametrize();
    crate::upoly::form_vanishes(&f.substitute(&p, &q), asm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprparse::parse_ncpoly;
    use crate::geometry::{Mobius, ProjPoint};

    fn bf(s: &str) -> BiForm {
        to_biform(&parse_ncpoly(s).unwrap()).unwrap()
    }

    #[test]
    fn segre_images() {
        assert_eq!(bf("x*y"), BiForm::x1().mul(&BiForm::y2()));
        assert_eq!(bf("y*x"), BiForm::y1().mul(&BiForm::x2()));
        assert_eq!(bf("x^2 - 2*y^2").to_string(), "x1*x2 - 2*y1*y2");
        assert!(matches!(
            to_biform(&parse_ncpoly("x").unwrap()),
            Err(Error::WrongDegree { .. })
        ));
    }

    #[test]
    fn zero_locus_examples() {
        let asm = Assumptions::new();
        let sp: Vec<BiForm> = ["-y^2", "x*y", "y*x", "x^2 - 2*y^2"]
            .iter()
            .map(|s| bf(s))
            .collect();
        assert!(common_zero_empty(&sp, &asm).unwrap());
        let deg: Vec<BiForm> = ["x^2", "x*y", "x^2", "x*y"].iter().map(|s| bf(s)).collect();
        assert!(!common_zero_empty(&deg, &asm).unwrap());
        assert!(!common_zero_empty(&vec![BiForm::zero((1, 1)); 4], &asm).unwrap());
    }

    #[test]
    fn component_vanishing() {
        let f = BiForm::x1()
            .mul(&BiForm::x2())
            .mul(&BiForm::y1())
            .mul(&BiForm::y2());
        assert!(!vanishes_on_component(
            &f,
            &CurveComponent::Graph(Mobius::identity())
        ));
        assert!(vanishes_on_component(
            &f,
            &CurveComponent::VLine(ProjPoint::q())
        ));
        assert!(vanishes_on_component(
            &BiForm::zero((2, 2)),
            &CurveComponent::HLine(ProjPoint::p())
        ));
    }
}
