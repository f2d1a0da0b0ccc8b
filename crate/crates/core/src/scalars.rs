//! The scalar field: rational functions in named parameters, extended by
//! formal square roots of depth one.
//!
//! Symbols live in a process-wide, append-only registry. A [`Scalar`] is a
//! reduced fraction `num / den` where `den` is free of square-root symbols,
//! has coprime integer coefficients and a positive leading coefficient, and
//! `num` has every square-root symbol at degree at most one.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{Mono, Poly, Var};

#[derive(Clone, Debug)]
enum SymbolKind {
    Param,
    Sqrt(Poly),
}

#[derive(Default)]
struct Registry {
    names: Vec<String>,
    kinds: Vec<SymbolKind>,
    by_name: HashMap<String, Var>,
    by_radicand: HashMap<Poly, Var>,
}

/// Names registered up front so that symbol order, and hence printed output,
/// does not depend on which computation touches a name first.
const PRESEEDED: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "lambda", "mu", "alpha'", "beta'", "gamma'", "delta'",
];

static REGISTRY: LazyLock<RwLock<Registry>> = LazyLock::new(|| {
    let mut r = Registry::default();
    for n in PRESEEDED {
        let v = r.names.len() as Var;
        r.names.push((*n).to_string());
        r.kinds.push(SymbolKind::Param);
        r.by_name.insert((*n).to_string(), v);
    }
    RwLock::new(r)
});

fn valid_ident(name: &str) -> bool {
    let mut chars = name.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    (first.is_ascii_alphabetic() || first == '_')
        && name
            .trim_end_matches('\'')
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Declare (or look up) a parameter symbol.
pub fn declare_param(name: &str) -> Result<Var> {
    if name == "x" || name == "y" {
        return Err(Error::ReservedName(name.to_string()));
    }
    if !valid_ident(name) || name == "sqrt" {
        return Err(Error::Syntax {
            pos: 0,
            msg: format!("`{name}` is not a valid parameter name"),
        });
    }
    if let Some(&v) = REGISTRY.read().unwrap().by_name.get(name) {
        return Ok(v);
    }
    let mut r = REGISTRY.write().unwrap();
    if let Some(&v) = r.by_name.get(name) {
        return Ok(v);
    }
    let v = r.names.len() as Var;
    r.names.push(name.to_string());
    r.kinds.push(SymbolKind::Param);
    r.by_name.insert(name.to_string(), v);
    Ok(v)
}

/// Parameter symbol lookup without declaring.
pub fn lookup_param(name: &str) -> Option<Var> {
    let r = REGISTRY.read().unwrap();
    let v = *r.by_name.get(name)?;
    matches!(r.kinds[v as usize], SymbolKind::Param).then_some(v)
}

/// A parameter whose name is not yet taken, built from `stem`.
pub fn fresh_param(stem: &str) -> Var {
    let mut r = REGISTRY.write().unwrap();
    let mut k = 0usize;
    loop {
        let name = if k == 0 {
            stem.to_string()
        } else {
            format!("{stem}_{k}")
        };
        if !r.by_name.contains_key(&name) {
            let v = r.names.len() as Var;
            r.names.push(name.clone());
            r.kinds.push(SymbolKind::Param);
            r.by_name.insert(name, v);
            return v;
        }
        k += 1;
    }
}

/// The radicand of a square-root symbol, or `None` for parameters.
pub fn radicand(v: Var) -> Option<Poly> {
    match &REGISTRY.read().unwrap().kinds[v as usize] {
        SymbolKind::Sqrt(r) => Some(r.clone()),
        SymbolKind::Param => None,
    }
}

pub fn is_sqrt(v: Var) -> bool {
    matches!(
        REGISTRY.read().unwrap().kinds[v as usize],
        SymbolKind::Sqrt(_)
    )
}

pub fn symbol_name(v: Var) -> String {
    let (name, kind) = {
        let r = REGISTRY.read().unwrap();
        (r.names[v as usize].clone(), r.kinds[v as usize].clone())
    };
    match kind {
        SymbolKind::Param => name,
        SymbolKind::Sqrt(rad) => format!("sqrt({rad})"),
    }
}

fn register_sqrt(rad: Poly) -> Var {
    let mut r = REGISTRY.write().unwrap();
    if let Some(&v) = r.by_radicand.get(&rad) {
        return v;
    }
    let v = r.names.len() as Var;
    r.names.push(format!("$s{v}"));
    r.kinds.push(SymbolKind::Sqrt(rad.clone()));
    r.by_radicand.insert(rad, v);
    v
}

fn sqrt_symbols() -> Vec<(Var, Poly)> {
    let r = REGISTRY.read().unwrap();
    r.kinds
        .iter()
        .enumerate()
        .filter_map(|(i, k)| match k {
            SymbolKind::Sqrt(p) => Some((i as Var, p.clone())),
            SymbolKind::Param => None,
        })
        .collect()
}

/// Replace `s^e` by `R^(e div 2) s^(e mod 2)` for every square-root symbol.
fn reduce(p: &Poly) -> Poly {
    let roots: Vec<(Var, Poly)> = p
        .vars()
        .into_iter()
        .filter_map(|v| radicand(v).map(|r| (v, r)))
        .collect();
    if roots.iter().all(|(v, _)| p.degree_in(*v) <= 1) {
        return p.clone();
    }
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        let mut kept = Mono::one();
        let mut factor = Poly::constant(c.clone());
        for &(v, e) in m.factors() {
            match roots.iter().find(|(w, _)| *w == v) {
                Some((_, r)) => {
                    if e >= 2 {
                        factor = &factor * &r.pow(e / 2);
                    }
                    if e % 2 == 1 {
                        kept = kept.mul(&Mono::var(v));
                    }
                }
                None => kept = kept.mul(&Mono::pow_of(v, e)),
            }
        }
        out = &out + &factor.mul_mono(&kept);
    }
    out
}

fn first_sqrt_var(p: &Poly) -> Option<Var> {
    p.vars().into_iter().find(|&v| is_sqrt(v))
}

/// Product of `p` with all its conjugates: a polynomial free of square roots
/// that vanishes whenever `p` does.
pub fn norm_poly(p: &Poly) -> Poly {
    let mut n = p.clone();
    while let Some(s) = first_sqrt_var(&n) {
        let r = radicand(s).expect("sqrt symbol");
        let cs = n.coeffs_in(s);
        let a = cs[0].clone();
        let b = cs.get(1).cloned().unwrap_or_default();
        n = reduce(&(&(&a * &a) - &(&(&b * &b) * &r)));
    }
    n
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            num: Poly::from_int(n),
            den: Poly::one(),
        }
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::from_rational(BigRational::new(n.into(), d.into()))
    }

    /// A declared parameter, declaring it if needed.
    ///
    /// Panics on reserved or malformed names; use [`declare_param`] to handle
    /// those as errors.
    pub fn param(name: &str) -> Self {
        Scalar::var(declare_param(name).expect("valid parameter name"))
    }

    pub fn var(v: Var) -> Self {
        Scalar {
            num: Poly::var(v),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar::from_parts(p, Poly::one())
    }

    /// Build `num / den` and normalize. Panics if `den` is zero.
    pub fn from_parts(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if first_sqrt_var(&den).is_some() {
            return Scalar::from_poly(num)
                .checked_div(&Scalar::from_poly(den))
                .expect("nonzero denominator");
        }
        normalize(reduce(&num), den)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        Some(self.num.as_constant()? / self.den.as_constant()?)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// All symbols (parameters and square roots) occurring in the value.
    pub fn symbols(&self) -> Vec<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn params(&self) -> Vec<Var> {
        self.symbols()
            .into_iter()
            .filter(|&v| !is_sqrt(v))
            .collect()
    }

    pub fn has_sqrt(&self) -> bool {
        first_sqrt_var(&self.num).is_some()
    }

    fn radical_free(&self) -> bool {
        first_sqrt_var(&self.num).is_none() && first_sqrt_var(&self.den).is_none()
    }

    pub fn checked_inv(&self) -> Result<Scalar> {
        Scalar::one().checked_div(self)
    }

    pub fn inv(&self) -> Scalar {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.radical_free() && rhs.radical_free() {
            return Ok(self * &canonical(rhs.den.clone(), rhs.num.clone()));
        }
        let mut numer = &self.num * &rhs.den;
        let mut denom = &self.den * &rhs.num;
        while let Some(s) = first_sqrt_var(&denom) {
            let r = radicand(s).expect("sqrt symbol");
            let cs = denom.coeffs_in(s);
            let a = cs[0].clone();
            let b = cs.get(1).cloned().unwrap_or_default();
            let conj = &a - &(&b * &Poly::var(s));
            numer = reduce(&(&numer * &conj));
            denom = reduce(&(&(&a * &a) - &(&(&b * &b) * &r)));
        }
        if denom.is_zero() {
            // The square-root symbols were dependent after all.
            return Err(Error::DivisionByZero);
        }
        Ok(normalize(numer, denom))
    }

    pub fn pow(&self, e: i64) -> Scalar {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut out = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// Sqrt-free polynomial whose vanishing is necessary for `self == 0`.
    pub fn norm(&self) -> Poly {
        norm_poly(&self.num)
    }

    /// Simultaneous substitution of symbols by scalars. Square-root symbols
    /// whose radicand mentions a substituted parameter are re-adjoined.
    pub fn subs(&self, map: &[(Var, Scalar)]) -> Result<Scalar> {
        let syms = self.symbols();
        if map.is_empty()
            || !syms
                .iter()
                .any(|v| map.iter().any(|(w, _)| w == v) || is_sqrt(*v))
        {
            return Ok(self.clone());
        }
        let mut full: BTreeMap<Var, Scalar> = map.iter().cloned().collect();
        for &v in &syms {
            if full.contains_key(&v) {
                continue;
            }
            if let Some(r) = radicand(v) {
                if r.vars().iter().any(|w| full.contains_key(w)) {
                    let r2 = Scalar::from_poly(r).subs(map)?;
                    let val = if r2.is_zero() {
                        Scalar::zero()
                    } else {
                        adjoin_sqrt(&r2)?
                    };
                    full.insert(v, val);
                }
            }
        }
        if !syms.iter().any(|v| full.contains_key(v)) {
            return Ok(self.clone());
        }
        let n = eval_poly(&self.num, &full);
        let d = eval_poly(&self.den, &full);
        n.checked_div(&d).map_err(|_| Error::DenominatorVanishes)
    }

    pub fn subs_one(&self, v: Var, val: &Scalar) -> Scalar {
        self.subs(&[(v, val.clone())])
            .expect("substitution keeps the denominator nonzero")
    }

    /// Bind parameters by name to rationals. Every parameter must be bound.
    pub fn substitute(
        &self,
        bindings: &HashMap<String, BigRational>,
        assumptions: &crate::assume::Assumptions,
    ) -> Result<Scalar> {
        let mut map = Vec::new();
        for v in self.params().into_iter().chain(assumptions.params()) {
            let name = symbol_name(v);
            match bindings.get(&name) {
                Some(c) => map.push((v, Scalar::from_rational(c.clone()))),
                None if self.params().contains(&v) => return Err(Error::UnboundParameter(name)),
                None => {}
            }
        }
        map.sort_by_key(|(v, _)| *v);
        map.dedup_by_key(|(v, _)| *v);
        for p in assumptions.nonzero_polys() {
            let val = Scalar::from_poly(p.clone()).subs(&map)?;
            if val.is_zero() {
                return Err(Error::AssumptionViolated(format!("{p} != 0")));
            }
        }
        self.subs(&map)
    }

    /// Rational-valued evaluation; `None` if a symbol is left unbound.
    pub fn eval(&self, map: &[(Var, BigRational)]) -> Option<BigRational> {
        let m: Vec<(Var, Scalar)> = map
            .iter()
            .map(|(v, c)| (*v, Scalar::from_rational(c.clone())))
            .collect();
        self.subs(&m).ok()?.as_rational()
    }

    pub fn to_f64_lossy(&self) -> Option<f64> {
        self.as_rational().and_then(|c| c.to_f64())
    }
}

fn eval_poly(p: &Poly, map: &BTreeMap<Var, Scalar>) -> Scalar {
    let mut cache: HashMap<(Var, u32), Scalar> = HashMap::new();
    let mut acc = Scalar::zero();
    for (m, c) in p.terms() {
        let mut t = Scalar::from_rational(c.clone());
        for &(v, e) in m.factors() {
            let f = cache
                .entry((v, e))
                .or_insert_with(|| match map.get(&v) {
                    Some(s) => s.pow(e as i64),
                    None => Scalar::from_poly(Poly::term(BigRational::one(), Mono::pow_of(v, e))),
                })
                .clone();
            t = &t * &f;
        }
        acc = &acc + &t;
    }
    acc
}

fn normalize(num: Poly, den: Poly) -> Scalar {
    if num.is_zero() {
        return Scalar::zero();
    }
    let (num, den) = if den.is_constant() {
        (num, den)
    } else {
        let g = num.gcd(&den);
        if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        }
    };
    canonical(num, den)
}

/// `num / den` for coprime parts: only the denominator's content moves.
fn canonical(num: Poly, den: Poly) -> Scalar {
    if num.is_zero() {
        return Scalar::zero();
    }
    let (c, den) = den.primitive();
    Scalar {
        num: num.scale(&c.recip()),
        den,
    }
}

/// Exact quotient by a gcd, skipping the division when it is trivial.
fn cancel(p: &Poly, g: &Poly) -> Poly {
    if g.is_constant() {
        p.clone()
    } else {
        p.div_exact(g).expect("gcd divides")
    }
}

/// Split an integer as `f^2 * g` with `g` squarefree as far as trial division
/// up to 10^5 can tell.
fn square_split(m: &BigInt) -> (BigInt, BigInt) {
    let mut g = m.abs();
    let mut f = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while &p * &p <= g && p <= limit {
        let pp = &p * &p;
        while (&g % &pp).is_zero() {
            g /= &pp;
            f *= &p;
        }
        p += 1;
    }
    if m.is_negative() {
        g = -g;
    }
    (f, g)
}

/// Adjoin a formal square root of `r`, returning an element whose square is `r`.
///
/// Exact squares are returned without a new symbol: `sqrt(4) = 2`,
/// `sqrt(alpha^2) = alpha`. Square factors of integer and monomial content are
/// pulled out, equal radicands share one symbol, and a radicand whose product
/// with an existing radicand is a square is expressed through that symbol.
pub fn adjoin_sqrt(r: &Scalar) -> Result<Scalar> {
    if r.is_zero() {
        return Err(Error::ZeroRadicand);
    }
    if r.has_sqrt() {
        return Err(Error::NestedSqrt);
    }
    // sqrt(n/d) = sqrt(n d) / d
    let p = &r.num * &r.den;
    let root = sqrt_of_poly(&p)?;
    Ok(&root * &Scalar::from_poly(r.den.clone()).inv())
}

fn sqrt_of_poly(p: &Poly) -> Result<Scalar> {
    if let Some(t) = p.sqrt_exact() {
        return Ok(Scalar::from_poly(t));
    }
    let (c, p0) = p.primitive();
    let a = c.numer().clone();
    let b = c.denom().clone();
    let (f, g) = square_split(&(&a * &b));
    let mut coef = Scalar::from_rational(BigRational::new(f, b));
    let mc = p0.monomial_content();
    let mut half = Vec::new();
    let mut odd = Vec::new();
    for &(v, e) in mc.factors() {
        if e / 2 > 0 {
            half.push(Mono::pow_of(v, e / 2));
        }
        if e % 2 == 1 {
            odd.push(Mono::var(v));
        }
    }
    let half = half.iter().fold(Mono::one(), |acc, m| acc.mul(m));
    let odd = odd.iter().fold(Mono::one(), |acc, m| acc.mul(m));
    coef = &coef * &Scalar::from_poly(Poly::term(BigRational::one(), half));
    let rest = p0.div_mono(&mc).expect("monomial content divides");
    let rad = rest.mul_mono(&odd).scale(&BigRational::from_integer(g));
    if let Some(t) = rad.sqrt_exact() {
        return Ok(&coef * &Scalar::from_poly(t));
    }
    if let Some(t) = (-&rad).sqrt_exact() {
        let i = sqrt_symbol(Poly::from_int(-1));
        return Ok(&(&coef * &Scalar::from_poly(t)) * &i);
    }
    Ok(&coef * &sqrt_symbol(rad))
}

fn sqrt_symbol(rad: Poly) -> Scalar {
    if let Some(&v) = REGISTRY.read().unwrap().by_radicand.get(&rad) {
        return Scalar::var(v);
    }
    for (v, ri) in sqrt_symbols() {
        if let Some(t) = (&rad * &ri).sqrt_exact() {
            // sqrt(rad) = t / sqrt(ri) = t sqrt(ri) / ri
            return Scalar::from_parts(&t * &Poly::var(v), ri);
        }
    }
    Scalar::var(register_sqrt(rad))
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(c: BigRational) -> Self {
        Scalar::from_rational(c)
    }
}

impl std::ops::Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return Scalar {
                    num,
                    den: Poly::one(),
                };
            }
            return normalize(num, self.den.clone());
        }
        if self.radical_free() && rhs.radical_free() {
            // Both sides are in lowest terms, so the sum can only cancel
            // against the common part of the denominators.
            let g = self.den.gcd(&rhs.den);
            let (b, d) = (cancel(&self.den, &g), cancel(&rhs.den, &g));
            let t = &(&self.num * &d) + &(&rhs.num * &b);
            if t.is_zero() {
                return Scalar::zero();
            }
            let h = if g.is_constant() {
                Poly::one()
            } else {
                t.gcd(&g)
            };
            return canonical(cancel(&t, &h), &(&b * &d) * &cancel(&g, &h));
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        normalize(num, &self.den * &rhs.den)
    }
}

impl std::ops::Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl std::ops::Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar {
                num: reduce(&(&self.num * &rhs.num)),
                den: Poly::one(),
            };
        }
        if self.radical_free() && rhs.radical_free() {
            // Cross-cancel before multiplying out.
            let g1 = self.num.gcd(&rhs.den);
            let g2 = rhs.num.gcd(&self.den);
            let num = &cancel(&self.num, &g1) * &cancel(&rhs.num, &g2);
            return canonical(num, &cancel(&self.den, &g2) * &cancel(&rhs.den, &g1));
        }
        let num = reduce(&(&self.num * &rhs.num));
        normalize(num, &self.den * &rhs.den)
    }
}

impl std::ops::Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
        impl std::ops::$tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                std::ops::$tr::$m(&self, rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Scalar {
    /// True when the printed form needs parentheses as a factor.
    pub fn is_compound(&self) -> bool {
        !self.den.is_one() || self.num.num_terms() > 1
    }

    /// A single term with positive coefficient and trivial denominator.
    pub fn is_positive_monomial(&self) -> bool {
        self.den.is_one()
            && self.num.num_terms() == 1
            && self.num.leading().is_some_and(|(_, c)| c.is_positive())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = if self.num.num_terms() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let d = if self.den.num_terms() > 1 || !self.den.is_constant() {
            format!("({})", self.den)
        } else {
            self.den.to_string()
        };
        write!(f, "{n}/{d}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reserved_names_are_rejected() {
        assert_eq!(declare_param("x"), Err(Error::ReservedName("x".into())));
        assert!(declare_param("y").is_err());
        assert!(declare_param("alpha").is_ok());
    }

    #[test]
    fn rational_function_arithmetic() {
        let a = Scalar::param("alpha");
        let one = Scalar::one();
        let f = &(&a - &one) / &(&a + &one);
        let g = &(&(&a * &a) - &one) / &(&(&a + &one) * &(&a + &one));
        assert_eq!(f, g);
        assert_eq!(&(&a * &a.inv()), &one);
        let v = declare_param("alpha").unwrap();
        assert_eq!(f.subs_one(v, &Scalar::from_int(3)), Scalar::frac(1, 2));
    }

    #[test]
    fn denominator_sign_and_content_are_canonical() {
        let a = Scalar::param("alpha");
        let s = &Scalar::one() / &(&Scalar::from_int(-2) * &a);
        assert_eq!(s.den(), &Poly::var(declare_param("alpha").unwrap()));
        assert_eq!(
            s.num().as_constant(),
            Some(BigRational::new((-1).into(), 2.into()))
        );
    }

    #[test]
    fn sqrt_reduction() {
        let l = Scalar::param("lambda");
        let s = adjoin_sqrt(&l).unwrap();
        assert!((&(&s * &s) - &l).is_zero());
        let g = Scalar::param("gamma");
        let t = adjoin_sqrt(&g).unwrap();
        assert!((&(&(&t * &t) * &g.inv()) - &Scalar::one()).is_zero());
        assert_eq!(
            adjoin_sqrt(&Scalar::from_int(4)).unwrap(),
            Scalar::from_int(2)
        );
        assert_eq!(adjoin_sqrt(&Scalar::zero()), Err(Error::ZeroRadicand));
        let u = adjoin_sqrt(&(&Scalar::from_int(4) * &l)).unwrap();
        assert_eq!(u, &Scalar::from_int(2) * &s);
        assert!(adjoin_sqrt(&s).is_err());
    }

    #[test]
    fn sqrt_in_denominator_is_rationalized() {
        let s = adjoin_sqrt(&Scalar::from_int(3)).unwrap();
        let x = &Scalar::one() / &(&Scalar::one() + &s);
        assert!(x.den().is_constant());
        assert_eq!(&x * &(&Scalar::one() + &s), Scalar::one());
    }

    #[test]
    fn binding_errors() {
        let a = Scalar::param("alpha");
        let b = Scalar::param("beta");
        let p = &(&a * &a) - &(&b * &b);
        let asm = crate::assume::Assumptions::new().assume_nonzero(&p);
        let mut bind = HashMap::new();
        bind.insert("alpha".to_string(), BigRational::from_integer(2.into()));
        assert_eq!(
            a.substitute(&bind, &crate::assume::Assumptions::new()),
            Ok(Scalar::from_int(2))
        );
        assert!(matches!(
            p.substitute(&bind, &asm),
            Err(Error::UnboundParameter(_))
        ));
        bind.insert("beta".to_string(), BigRational::from_integer(2.into()));
        assert!(matches!(
            p.substitute(&bind, &asm),
            Err(Error::AssumptionViolated(_))
        ));
        let q = &a / &(&b - &Scalar::from_int(2));
        assert!(matches!(
            q.substitute(&bind, &crate::assume::Assumptions::new()),
            Err(Error::DenominatorVanishes)
        ));
    }
}
