//! Assumption sets and the case-split driver.
//!
//! An [`Assumptions`] value carries parameter substitutions (zero branches of
//! earlier splits) and a list of polynomials known to be nonzero. Questions
//! that cannot be decided surface as [`Error::CaseSplitRequired`]; [`branch`]
//! catches those and re-runs the computation on each side of the split.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Poly, Var};
use crate::scalars::{adjoin_sqrt, symbol_name, Scalar};

/// Outcome of a zero test under assumptions.
#[derive(Clone, Debug, PartialEq)]
pub enum Decision {
    Zero,
    NonZero,
    /// Vanishing depends on the parameters; carries the residual polynomial.
    Unknown(Poly),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Assumptions {
    subs: Vec<(Var, Scalar)>,
    nonzero: Vec<Poly>,
}

/// Nested case splits deeper than this abort.
pub const MAX_SPLIT_DEPTH: usize = 3;

impl Assumptions {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn substitutions(&self) -> &[(Var, Scalar)] {
        &self.subs
    }

    pub fn nonzero_polys(&self) -> &[Poly] {
        &self.nonzero
    }

    pub fn params(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.nonzero.iter().flat_map(Poly::vars).collect();
        v.extend(self.subs.iter().map(|(w, _)| *w));
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Builder form of [`Assumptions::with_nonzero`]; panics if contradictory.
    pub fn assume_nonzero(self, s: &Scalar) -> Self {
        self.with_nonzero(s).expect("consistent nonzero assumption")
    }

    /// Add `s != 0`. Returns `None` when `s` is zero under these assumptions.
    pub fn with_nonzero(&self, s: &Scalar) -> Option<Self> {
        let n = self.apply(s).norm();
        if n.is_zero() {
            return None;
        }
        let mut out = self.clone();
        let n = out.strip_known(n);
        if !n.is_constant() {
            for f in split_monomial(&n) {
                out.nonzero.push(f);
            }
        }
        Some(out)
    }

    /// Add the substitution `v := val`. Returns `None` if a nonzero
    /// assumption becomes zero.
    pub fn with_sub(&self, v: Var, val: &Scalar) -> Option<Self> {
        let val = self.apply(val);
        let one = [(v, val.clone())];
        let mut out = Assumptions::default();
        for (w, x) in &self.subs {
            out.subs.push((*w, x.subs(&one).ok()?));
        }
        out.subs.push((v, val));
        for p in &self.nonzero {
            let q = Scalar::from_poly(p.clone()).subs(&one).ok()?;
            let n = q.norm();
            if n.is_zero() {
                return None;
            }
            if !n.is_constant() {
                for f in split_monomial(&n) {
                    if !out.nonzero.contains(&f) {
                        out.nonzero.push(f);
                    }
                }
            }
        }
        Some(out)
    }

    pub fn apply(&self, x: &Scalar) -> Scalar {
        if self.subs.is_empty() {
            return x.clone();
        }
        x.subs(&self.subs)
            .expect("substitution keeps denominators nonzero")
    }

    fn strip_known(&self, mut n: Poly) -> Poly {
        for nz in &self.nonzero {
            loop {
                if n.is_constant() {
                    return n;
                }
                let g = n.gcd(nz);
                if g.is_constant() {
                    break;
                }
                n = n.div_exact(&g).expect("gcd divides");
            }
        }
        n
    }

    pub fn decide(&self, x: &Scalar) -> Decision {
        let y = self.apply(x);
        if y.is_zero() {
            return Decision::Zero;
        }
        let n = y.norm();
        if n.is_zero() {
            // Dependent square roots: the element is zero.
            return Decision::Zero;
        }
        let n = self.strip_known(n);
        if n.is_constant() {
            Decision::NonZero
        } else {
            Decision::Unknown(n.primitive().1)
        }
    }

    /// `Ok(true)` if zero, `Ok(false)` if nonzero, otherwise a case split.
    pub fn is_zero(&self, x: &Scalar) -> Result<bool> {
        match self.decide(x) {
            Decision::Zero => Ok(true),
            Decision::NonZero => Ok(false),
            Decision::Unknown(p) => Err(Error::CaseSplitRequired(p)),
        }
    }

    /// Human-readable clauses, in insertion order.
    pub fn clauses(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .subs
            .iter()
            .map(|(v, x)| format!("{} = {}", symbol_name(*v), x))
            .collect();
        out.extend(self.nonzero.iter().map(|p| format!("{p} != 0")));
        out
    }

    /// Children of a split on `p`: `p != 0` first, then each zero branch.
    pub fn split_on(&self, p: &Poly) -> Result<Vec<Assumptions>> {
        let mut out = Vec::new();
        if let Some(a) = self.with_nonzero(&Scalar::from_poly(p.clone())) {
            out.push(a);
        }
        for (v, val) in self.zero_roots(p)? {
            if let Some(a) = self.with_sub(v, &val) {
                out.push(a);
            }
        }
        Ok(out)
    }

    /// Substitutions whose union covers the zero set of `p`.
    fn zero_roots(&self, p: &Poly) -> Result<Vec<(Var, Scalar)>> {
        let mut out = Vec::new();
        let mono = p.monomial_content();
        for &(v, _) in mono.factors() {
            out.push((v, Scalar::zero()));
        }
        let rest = p.div_mono(&mono).expect("monomial content divides");
        if rest.is_constant() {
            return Ok(out);
        }
        out.extend(self.roots_of_factor(&rest)?);
        Ok(out)
    }

    fn roots_of_factor(&self, r: &Poly) -> Result<Vec<(Var, Scalar)>> {
        let vars = r.vars();
        // Linear in some symbol with a coefficient known to be nonzero.
        for &v in &vars {
            if r.degree_in(v) == 1 {
                let cs = r.coeffs_in(v);
                let c = Scalar::from_poly(cs[1].clone());
                if self.decide(&c) == Decision::NonZero {
                    let val = &(-&Scalar::from_poly(cs[0].clone())) / &c;
                    return Ok(vec![(v, val)]);
                }
            }
        }
        // Univariate: rational roots must exhaust it, up to one quadratic.
        if vars.len() == 1 {
            let v = vars[0];
            let roots = r.rational_roots(v);
            let mut rest = r.clone();
            for c in &roots {
                let lin = &Poly::var(v) - &Poly::constant(c.clone());
                while let Some(q) = rest.div_exact(&lin) {
                    rest = q;
                }
            }
            let mut out: Vec<(Var, Scalar)> = roots
                .into_iter()
                .map(|c| (v, Scalar::from_rational(c)))
                .collect();
            match rest.degree_in(v) {
                0 => return Ok(out),
                2 => {
                    out.extend(self.quadratic_roots(&rest, v)?);
                    return Ok(out);
                }
                _ => return Err(Error::CaseSplitRequired(r.clone())),
            }
        }
        for &v in &vars {
            if r.degree_in(v) == 2 {
                let lc = Scalar::from_poly(r.coeffs_in(v)[2].clone());
                if self.decide(&lc) == Decision::NonZero {
                    return self.quadratic_roots(r, v);
                }
            }
        }
        Err(Error::CaseSplitRequired(r.clone()))
    }

    fn quadratic_roots(&self, r: &Poly, v: Var) -> Result<Vec<(Var, Scalar)>> {
        let cs = r.coeffs_in(v);
        let (c, b, a) = (
            Scalar::from_poly(cs[0].clone()),
            Scalar::from_poly(cs[1].clone()),
            Scalar::from_poly(cs[2].clone()),
        );
        let disc = &(&b * &b) - &(&Scalar::from_int(4) * &(&a * &c));
        let two_a = &Scalar::from_int(2) * &a;
        if disc.is_zero() {
            return Ok(vec![(v, &(-&b) / &two_a)]);
        }
        let s = adjoin_sqrt(&disc).map_err(|_| Error::CaseSplitRequired(r.clone()))?;
        Ok(vec![
            (v, &(&(-&b) + &s) / &two_a),
            (v, &(&(-&b) - &s) / &two_a),
        ])
    }
}

/// Monomial factors are stored one symbol at a time so gcd stripping sees them.
fn split_monomial(p: &Poly) -> Vec<Poly> {
    let m = p.monomial_content();
    let mut out: Vec<Poly> = m.factors().iter().map(|&(v, _)| Poly::var(v)).collect();
    let rest = p.div_mono(&m).expect("monomial content divides");
    if !rest.is_constant() {
        out.push(rest.primitive().1);
    }
    out
}

impl fmt::Display for Assumptions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.clauses();
        if c.is_empty() {
            f.write_str("(none)")
        } else {
            f.write_str(&c.join(", "))
        }
    }
}

/// One leaf of a case tree.
#[derive(Clone, Debug)]
pub struct Leaf<T> {
    pub assumptions: Assumptions,
    pub value: T,
}

/// Run `f`, splitting on every undecidable zero test, up to
/// [`MAX_SPLIT_DEPTH`] nested splits.
pub fn branch<T, F>(asm: &Assumptions, f: F) -> Result<Vec<Leaf<T>>>
where
    F: Fn(&Assumptions) -> Result<T>,
{
    let mut out = Vec::new();
    branch_rec(asm, &f, 0, &mut out)?;
    Ok(out)
}

fn branch_rec<T, F>(asm: &Assumptions, f: &F, depth: usize, out: &mut Vec<Leaf<T>>) -> Result<()>
where
    F: Fn(&Assumptions) -> Result<T>,
{
    match f(asm) {
        Ok(value) => {
            out.push(Leaf {
                assumptions: asm.clone(),
                value,
            });
            Ok(())
        }
        Err(Error::CaseSplitRequired(p)) if depth < MAX_SPLIT_DEPTH => {
            for child in asm.split_on(&p)? {
                branch_rec(&child, f, depth + 1, out)?;
            }
            Ok(())
        }
        Err(e) => Err(e),
    }
}

/// Assumption set declaring each scalar nonzero.
pub fn nonzero_all(items: &[Scalar]) -> Assumptions {
    items
        .iter()
        .fold(Assumptions::new(), |a, s| a.assume_nonzero(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_factors_are_stripped() {
        let a = Scalar::param("alpha");
        let b = Scalar::param("beta");
        let asm = Assumptions::new()
            .assume_nonzero(&a)
            .assume_nonzero(&(&a - &b));
        let x = &(&a * &a) * &(&a - &b);
        assert_eq!(asm.decide(&x), Decision::NonZero);
        assert!(matches!(asm.decide(&(&a + &b)), Decision::Unknown(_)));
    }

    #[test]
    fn split_covers_rational_roots() {
        let a = Scalar::param("alpha");
        let p = (&(&a * &a) - &Scalar::one()).num().clone();
        let kids = Assumptions::new().split_on(&p).unwrap();
        assert_eq!(kids.len(), 3);
        let vals: Vec<Scalar> = kids[1..].iter().map(|k| k.apply(&a)).collect();
        assert!(vals.contains(&Scalar::one()) && vals.contains(&Scalar::from_int(-1)));
    }

    #[test]
    fn branch_collects_leaves() {
        let a = Scalar::param("alpha");
        let leaves = branch(&Assumptions::new(), |asm| {
            Ok(if asm.is_zero(&(&a - &Scalar::from_int(2)))? {
                0
            } else {
                1
            })
        })
        .unwrap();
        assert_eq!(leaves.len(), 2);
        assert_eq!(leaves[0].value, 1);
        assert_eq!(leaves[1].value, 0);
    }

    #[test]
    fn contradictory_substitution_is_dropped() {
        let a = Scalar::param("alpha");
        let v = crate::scalars::declare_param("alpha").unwrap();
        let asm = Assumptions::new().assume_nonzero(&a);
        assert!(asm.with_sub(v, &Scalar::zero()).is_none());
    }
}
