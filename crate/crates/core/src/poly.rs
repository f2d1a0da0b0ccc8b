//! Sparse multivariate polynomials over Q in registered symbols.
//!
//! Monomials are ordered graded-lexicographically with lower symbol indices
//! more significant, so the leading term is the last key of the map.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Var = u32;

/// A power product, stored as `(symbol, exponent)` pairs sorted by symbol.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(Vec<(Var, u32)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Mono(vec![(v, 1)])
    }

    pub fn pow_of(v: Var, e: u32) -> Self {
        if e == 0 {
            Mono::one()
        } else {
            Mono(vec![(v, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Mono(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Mono(out))
    }

    pub fn gcd(&self, other: &Mono) -> Mono {
        let mut out = Vec::new();
        for &(v, e) in &self.0 {
            let f = other.exp(v);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Mono(out)
    }

    pub fn without(&self, v: Var) -> Mono {
        Mono(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }

    fn lex_cmp(&self, other: &Mono) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Mono::one(), c);
        }
        p
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(q(n))
    }

    pub fn var(v: Var) -> Self {
        Poly::term(BigRational::one(), Mono::var(v))
    }

    pub fn term(c: BigRational, m: Mono) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Mono) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Coefficients with respect to `v`, indexed by the power of `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            out[e].add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let m = Mono::pow_of(v, e as u32);
            for (k, a) in &c.terms {
                out.add_term(k.mul(&m), a.clone());
            }
        }
        out
    }

    /// Replace `v` by the polynomial `val`.
    pub fn subst(&self, v: Var, val: &Poly) -> Poly {
        if !self.contains(v) {
            return self.clone();
        }
        let cs = self.coeffs_in(v);
        // Horner in v.
        let mut acc = Poly::zero();
        for c in cs.iter().rev() {
            acc = &(&acc * val) + c;
        }
        acc
    }

    pub fn eval_rational(&self, v: Var, val: &BigRational) -> Poly {
        self.subst(v, &Poly::constant(val.clone()))
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Mono::one();
        };
        let mut g = first.clone();
        for m in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    pub fn div_mono(&self, m: &Mono) -> Option<Poly> {
        let mut out = BTreeMap::new();
        for (k, a) in &self.terms {
            out.insert(k.div(m)?, a.clone());
        }
        Some(Poly { terms: out })
    }

    /// Writes `self = c * p` with `p` having coprime integer coefficients and
    /// positive leading coefficient. Returns `(c, p)`.
    pub fn primitive(&self) -> (BigRational, Poly) {
        if self.is_zero() {
            return (BigRational::one(), Poly::zero());
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let lead_neg = self.leading().is_some_and(|(_, c)| c.is_negative());
        let mut factor = BigRational::new(num_gcd, den_lcm);
        if lead_neg {
            factor = -factor;
        }
        let inv = factor.recip();
        (factor, self.scale(&inv))
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let m = rm.div(&dm)?;
            let c = rc / &dc;
            let t = Poly::term(c, m);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Square root of a polynomial that is a perfect square over Q.
    pub fn sqrt_exact(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (lm, lc) = self.leading()?;
        let root_c = rational_sqrt(lc)?;
        let mut root_m = Vec::new();
        for &(v, e) in lm.factors() {
            if e % 2 != 0 {
                return None;
            }
            root_m.push((v, e / 2));
        }
        let lead = Poly::term(root_c, Mono(root_m));
        let two_lead = lead.scale(&q(2));
        let (lead_m, lead_c) = two_lead.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut root = lead;
        let mut last: Option<Mono> = None;
        for _ in 0..=self.terms.len() * 4 + 4 {
            let rem = self - &(&root * &root);
            let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) else {
                return Some(root);
            };
            let m = rm.div(&lead_m)?;
            if m >= lead_m {
                return None;
            }
            if let Some(prev) = &last {
                if &m >= prev {
                    return None;
                }
            }
            last = Some(m.clone());
            root = &root + &Poly::term(rc / &lead_c, m);
        }
        None
    }

    /// Greatest common divisor, normalized by [`Poly::primitive`].
    pub fn gcd(&self, other: &Poly) -> Poly {
        gcd_rec(self, other)
    }

    /// Rational roots of a polynomial in the single symbol `v`.
    pub fn rational_roots(&self, v: Var) -> Vec<BigRational> {
        if self.vars().iter().any(|&w| w != v) || self.is_zero() {
            return Vec::new();
        }
        let coeffs: Vec<BigRational> = self
            .coeffs_in(v)
            .iter()
            .map(|c| c.as_constant().unwrap_or_else(BigRational::zero))
            .collect();
        let mut den = BigInt::one();
        for c in &coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let mut roots = Vec::new();
        let lo = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if lo > 0 {
            roots.push(BigRational::zero());
        }
        let a0 = ints[lo].abs();
        let an = ints.last().cloned().unwrap_or_else(BigInt::one).abs();
        let (Some(ps), Some(qs)) = (divisors(&a0), divisors(&an)) else {
            return roots;
        };
        for p in &ps {
            for qq in &qs {
                for sign in [1, -1] {
                    let r = BigRational::new(p * BigInt::from(sign), qq.clone());
                    if roots.contains(&r) {
                        continue;
                    }
                    if self.eval_rational(v, &r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        roots
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    if n > &BigInt::from(1_000_000_000_000i64) {
        return None;
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let e = n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    Some(out)
}

pub(crate) fn rational_sqrt(c: &BigRational) -> Option<BigRational> {
    if c.is_negative() {
        return None;
    }
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    if &(&n * &n) == c.numer() && &(&d * &d) == c.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn normalize_gcd(p: Poly) -> Poly {
    if p.is_zero() {
        return p;
    }
    if p.is_constant() {
        return Poly::one();
    }
    p.primitive().1
}

fn content_in(p: &Poly, v: Var) -> Poly {
    let mut g = Poly::zero();
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize_gcd(b.clone());
    }
    if b.is_zero() {
        return normalize_gcd(a.clone());
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    // Pull out the common monomial factor first; it is cheap and common.
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let (a, b) = if ma.is_one() && mb.is_one() {
        (a.clone(), b.clone())
    } else {
        (
            a.div_mono(&ma).expect("monomial content divides"),
            b.div_mono(&mb).expect("monomial content divides"),
        )
    };
    if a.is_constant() || b.is_constant() {
        return normalize_gcd(Poly::term(BigRational::one(), mg));
    }
    if a == b {
        return normalize_gcd(a.mul_mono(&mg));
    }
    let va = a.vars();
    let vb = b.vars();
    // A symbol missing from one side cannot occur in the gcd, and neither can
    // one that a specialization shows the gcd to be free of. Either way the
    // gcd divides the contents with respect to that symbol.
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        return normalize_gcd(gcd_rec(&content_in(&a, v), &b).mul_mono(&mg));
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        return normalize_gcd(gcd_rec(&a, &content_in(&b, v)).mul_mono(&mg));
    }
    if let Some(&v) = va.iter().find(|&&v| gcd_free_of(&a, &b, v)) {
        let g = gcd_rec(&content_in(&a, v), &content_in(&b, v));
        return normalize_gcd(g.mul_mono(&mg));
    }
    // The remainder sequence is cheapest in the symbol of lowest degree.
    let v = *va
        .iter()
        .min_by_key(|&&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("nonconstant");
    let g = if !a.contains(v) {
        gcd_rec(&a, &content_in(&b, v))
    } else if !b.contains(v) {
        gcd_rec(&content_in(&a, v), &b)
    } else {
        let ca = content_in(&a, v);
        let cb = content_in(&b, v);
        let pa = a.div_exact(&ca).expect("content divides");
        let pb = b.div_exact(&cb).expect("content divides");
        let gc = gcd_rec(&ca, &cb);
        let h = prs_gcd(&pa, &pb, v);
        &gc * &h
    };
    normalize_gcd(g.mul_mono(&mg))
}

/// Dense coefficients in `v` after evaluating every other symbol at `point`.
fn specialize(p: &Poly, v: Var, point: &dyn Fn(Var) -> BigRational) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for &(w, e) in m.factors() {
            if w != v {
                t *= num_traits::pow(point(w), e as usize);
            }
        }
        out[m.exp(v) as usize] += t;
    }
    out
}

/// Degree of the gcd over ℚ of two dense univariate polynomials.
fn univariate_gcd_degree(mut f: Vec<BigRational>, mut g: Vec<BigRational>) -> usize {
    let trim_q = |v: &mut Vec<BigRational>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    };
    trim_q(&mut f);
    trim_q(&mut g);
    while !g.is_empty() {
        // f mod g with g made monic.
        let lg = g.last().expect("nonempty").clone();
        for c in g.iter_mut() {
            *c /= &lg;
        }
        while f.len() >= g.len() {
            let lf = f.last().expect("nonempty").clone();
            let shift = f.len() - g.len();
            for (i, gc) in g.iter().enumerate() {
                f[i + shift] -= &lf * gc;
            }
            f.pop();
            trim_q(&mut f);
        }
        std::mem::swap(&mut f, &mut g);
    }
    f.len().saturating_sub(1)
}

/// Whether the gcd of `a` and `b` is certainly free of `v`. Specializing the
/// other symbols where both leading coefficients in `v` survive cannot lower
/// the degree of the gcd in `v`, so a constant specialized gcd settles it.
fn gcd_free_of(a: &Poly, b: &Poly, v: Var) -> bool {
    let (da, db) = (a.degree_in(v) as usize, b.degree_in(v) as usize);
    for attempt in 0..4i64 {
        let point = |w: Var| {
            let k = i64::from(w) * 7 + attempt * 13 + 3;
            BigRational::from_integer(BigInt::from(k % 29 - 14))
        };
        let (fa, fb) = (specialize(a, v, &point), specialize(b, v, &point));
        if fa[da].is_zero() || fb[db].is_zero() {
            continue;
        }
        return univariate_gcd_degree(fa, fb) == 0;
    }
    false
}

/// Primitive polynomial remainder sequence in `v`; inputs are primitive in `v`.
fn prs_gcd(a: &Poly, b: &Poly, v: Var) -> Poly {
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) {
        (a.coeffs_in(v), b.coeffs_in(v))
    } else {
        (b.coeffs_in(v), a.coeffs_in(v))
    };
    loop {
        let r = pseudo_rem(&f, &g);
        if r.is_empty() {
            let gp = Poly::from_coeffs_in(v, &g);
            let c = content_in(&gp, v);
            return gp.div_exact(&c).expect("content divides");
        }
        if r.len() == 1 {
            return Poly::one();
        }
        let rp = Poly::from_coeffs_in(v, &r);
        let c = content_in(&rp, v);
        let rp = rp.div_exact(&c).expect("content divides");
        f = g;
        g = rp.coeffs_in(v);
    }
}

fn trim(v: &mut Vec<Poly>) {
    while v.last().is_some_and(Poly::is_zero) {
        v.pop();
    }
}

fn pseudo_rem(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let mut r: Vec<Poly> = f.to_vec();
    trim(&mut r);
    let dg = g.len() - 1;
    let lg = &g[dg];
    while r.len() > dg {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dg;
        for c in r.iter_mut() {
            *c = &*c * lg;
        }
        for (i, gc) in g.iter().enumerate() {
            let t = &lr * gc;
            r[i + shift] = &r[i + shift] - &t;
        }
        trim(&mut r);
    }
    r
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                let f: fn(&Poly, &Poly) -> Poly = $body;
                f(self, rhs)
            }
        }
        impl std::ops::$tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.add_term(m.clone(), c.clone());
    }
    out
});

binop!(Sub, sub, |a, b| {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.add_term(m.clone(), -c.clone());
    }
    out
});

binop!(Mul, mul, |a, b| {
    let mut out = Poly::zero();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            out.add_term(ma.mul(mb), ca * cb);
        }
    }
    out
});

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl Poly {
    /// Render with a symbol-naming callback.
    pub fn render(&self, name: &dyn Fn(Var) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .factors()
                .iter()
                .map(|&(v, e)| {
                    if e == 1 {
                        name(v)
                    } else {
                        format!("{}^{}", name(v), e)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&fmt_rational(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&fmt_rational(&a));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&crate::scalars::symbol_name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }

    #[test]
    fn grlex_leading_term() {
        let p = &(&x() * &x()) + &(&y() * &y()).scale(&q(3));
        let p = &p + &x();
        assert_eq!(p.leading().unwrap().0, &Mono::pow_of(0, 2));
    }

    /// Three symbols, degree 4 in each: the remainder sequence alone does
    /// not finish here in reasonable time.
    #[test]
    fn gcd_of_three_symbol_products() {
        let z = Poly::var(2);
        let f1 = &(&x() * &x()).scale(&q(2)) + &(&z * &z);
        let f2 = &(&y() * &y()).scale(&q(3)) - &x().scale(&q(2));
        let f3 = &(&x() * &(&z * &z)) + &Poly::from_int(3);
        let n = &(&(&y() * &z).scale(&q(4)) + &(&y() * &y())) - &Poly::from_int(3);
        let num = &(&(&n * &f2) + &(&z.scale(&q(3)) * &f1)) * &f3;
        let num = &num - &(&x() * &(&f1 * &f2));
        let den = &(&f1 * &f2) * &f3;
        assert!(num.gcd(&den).is_one());
        let shared = &(&num * &f2) * &f3;
        assert_eq!(shared.gcd(&den), (&f2 * &f3).primitive().1);
        assert_eq!(den.gcd(&(&f1 * &z)), f1.primitive().1);
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = &x() - &y();
        let b = &x() + &y();
        let c = &x() * &y() + Poly::from_int(1);
        let p = &(&a * &b) * &c;
        let r = &(&a * &a) * &c;
        assert_eq!(p.div_exact(&a).unwrap(), &b * &c);
        let g = p.gcd(&r);
        assert_eq!(g, (&a * &c).primitive().1);
        assert!(p.div_exact(&(&x() + &Poly::from_int(7))).is_none());
    }

    #[test]
    fn gcd_with_scaled_inputs() {
        let a = (&x() * &y()).scale(&q(6));
        let b = (&x() * &x()).scale(&BigRational::new(4.into(), 3.into()));
        assert_eq!(a.gcd(&b), x());
    }

    #[test]
    fn square_roots() {
        let p = &(&x() - &y().scale(&q(2))) * &(&x() - &y().scale(&q(2)));
        let r = p.sqrt_exact().unwrap();
        assert_eq!(&r * &r, p);
        assert!((&p + &Poly::one()).sqrt_exact().is_none());
        assert_eq!(Poly::from_int(4).sqrt_exact(), Some(Poly::from_int(2)));
    }

    #[test]
    fn rational_root_search() {
        let p = &(&x() - &Poly::from_int(3)) * &(&x().scale(&q(2)) + &Poly::from_int(1));
        let mut roots = p.rational_roots(0);
        roots.sort();
        assert_eq!(roots, vec![BigRational::new((-1).into(), 2.into()), q(3)]);
    }
}
