//! Relations of the algebra of a geometric pair: the cubics
//! `g = a1 x³ + a2 x²y + … + a8 y³` with `g(p, q, r) = 0` on every Γ triple.

use crate::assume::{branch, Assumptions};
use crate::error::{Error, Result};
use crate::freealg::{NCPoly, Word};
use crate::geometry::{gamma_parametrization, is_g_automorphism, GeometricPair};
use crate::linalg::{nullspace, Row};
use crate::scalars::Scalar;
use crate::upoly::{BinForm, FormPoint};

/// A basis of the relation space on one branch of the parameter case tree.
#[derive(Clone, Debug)]
pub struct RelationBasis {
    pub basis: Vec<NCPoly>,
    pub assumptions: Assumptions,
    pub dimension: usize,
}

/// `f(p, q, r)` as a form in the parameter.
fn eval_cubic_word(w: &Word, t: &(FormPoint, FormPoint, FormPoint)) -> BinForm {
    let pts = [&t.0, &t.1, &t.2];
    let mut out = BinForm::constant(Scalar::one());
    for (i, p) in pts.iter().enumerate() {
        let coord = if w.letter(i).index() == 0 { &p.0 } else { &p.1 };
        out = out.mul(coord);
    }
    out
}

/// One row per parameter monomial per Γ component; columns are the eight
/// cubic words in lexicographic order.
fn constraint_rows(pair: &GeometricPair) -> Vec<Row> {
    let words: Vec<Word> = (0..8).map(|i| Word::from_index(3, i)).collect();
    let mut rows = Vec::new();
    for t in gamma_parametrization(pair) {
        let forms: Vec<BinForm> = words.iter().map(|w| eval_cubic_word(w, &t)).collect();
        let deg = forms.iter().map(BinForm::degree).max().unwrap_or(0);
        for k in 0..=deg {
            let row: Row = forms
                .iter()
                .map(|f| f.coeffs().get(k).cloned().unwrap_or_else(Scalar::zero))
                .collect();
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    rows
}

fn validate(pair: &GeometricPair, asm: &Assumptions) -> Result<()> {
    match is_g_automorphism(pair, asm) {
        Ok(true) => Ok(()),
        Ok(false) => Err(Error::InvalidPair(
            "sigma is not an automorphism of E".into(),
        )),
        Err(e) => Err(e),
    }
}

/// The relation space, one basis per branch of the parameter case tree.
pub fn relations_from_pair(pair: &GeometricPair, asm: &Assumptions) -> Result<Vec<RelationBasis>> {
    let leaves = branch(asm, |a| {
        let p = pair.apply_assumptions(a);
        validate(&p, a)?;
        let rows = constraint_rows(&p);
        let ns = if rows.is_empty() {
            (0..8)
                .map(|i| {
                    (0..8)
                        .map(|j| Scalar::from_int(i64::from(i == j)))
                        .collect()
                })
                .collect()
        } else {
            nullspace(&rows, 8, a)?
        };
        Ok(ns
            .iter()
            .map(|v| NCPoly::from_vector(3, v))
            .collect::<Vec<_>>())
    })?;
    Ok(leaves
        .into_iter()
        .map(|l| RelationBasis {
            dimension: l.value.len(),
            basis: l.value,
            assumptions: l.assumptions,
        })
        .collect())
}

/// Whether `f` vanishes on every Γ triple of the pair.
pub fn check_g2_membership(f: &NCPoly, pair: &GeometricPair, asm: &Assumptions) -> Result<bool> {
    if f.degree() != 3 && !f.is_zero() {
        return Err(Error::WrongDegree {
            expected: 3,
            found: f.degree(),
        });
    }
    validate(pair, asm)?;
    for t in gamma_parametrization(pair) {
        let mut total = BinForm::zero(0);
        for (w, c) in f.terms() {
            total = total.add(&eval_cubic_word(w, &t).scale(c));
        }
        if !crate::upoly::form_vanishes(&total, asm)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprparse::parse_ncpoly;
    use crate::geometry::{fl_i, sprime_i};
    use crate::linalg::span_eq;

    fn span(ps: &[&str]) -> Vec<Row> {
        ps.iter()
            .map(|s| parse_ncpoly(s).unwrap().to_vector())
            .collect()
    }

    #[test]
    fn sprime_pattern_one() {
        let a = Scalar::param("alpha");
        let asm = Assumptions::new().assume_nonzero(&a);
        // Pivoting may split off alpha = 1; every branch has the same span.
        for leaf in relations_from_pair(&sprime_i(&a), &asm).unwrap() {
            let la = &leaf.assumptions;
            assert_eq!(leaf.dimension, 2);
            let got: Vec<Row> = leaf.basis.iter().map(NCPoly::to_vector).collect();
            let want: Vec<Row> = span(&["x^2*y - alpha*y*x^2 + (alpha-1)*y^3", "x*y^2 - y^2*x"])
                .into_iter()
                .map(|r| r.iter().map(|c| la.apply(c)).collect())
                .collect();
            assert!(span_eq(&got, &want, la).unwrap());
        }
        let pair = sprime_i(&a);
        assert!(check_g2_membership(&parse_ncpoly("x*y^2 - y^2*x").unwrap(), &pair, &asm).unwrap());
        assert!(!check_g2_membership(&parse_ncpoly("x^3").unwrap(), &pair, &asm).unwrap());
        assert!(check_g2_membership(&NCPoly::zero(3), &pair, &asm).unwrap());
    }

    #[test]
    fn fl_pattern_one() {
        let (a, b) = (Scalar::param("alpha"), Scalar::param("beta"));
        let asm = Assumptions::new().assume_nonzero(&a).assume_nonzero(&b);
        let out = relations_from_pair(&fl_i(&a, &b), &asm).unwrap();
        let got: Vec<Row> = out[0].basis.iter().map(NCPoly::to_vector).collect();
        let want = span(&["x^2*y - alpha*y*x^2", "x*y^2 - beta*y^2*x"]);
        assert!(span_eq(&got, &want, &asm).unwrap());
    }
}
