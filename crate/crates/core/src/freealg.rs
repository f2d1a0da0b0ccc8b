//! Homogeneous elements of the free algebra k<x, y>, i.e. tensors in V^{⊗m}.

use std::collections::BTreeMap;
use std::fmt;

use crate::assume::Assumptions;
use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// Maximum supported degree; words are packed into a `u32`.
pub const MAX_DEGREE: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    X,
    Y,
}

impl Gen {
    pub fn index(self) -> usize {
        match self {
            Gen::X => 0,
            Gen::Y => 1,
        }
    }

    pub fn from_index(i: usize) -> Gen {
        if i == 0 {
            Gen::X
        } else {
            Gen::Y
        }
    }

    pub fn letter(self) -> char {
        match self {
            Gen::X => 'x',
            Gen::Y => 'y',
        }
    }
}

/// A word over {x, y}. Letter `i` (from the left) is bit `len - 1 - i`, with
/// `y = 1`, so numeric order on equal lengths is lexicographic with x < y.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Word {
    len: u8,
    bits: u32,
}

impl Word {
    pub fn empty() -> Word {
        Word { len: 0, bits: 0 }
    }

    pub fn from_gens(gens: &[Gen]) -> Word {
        assert!(gens.len() <= MAX_DEGREE, "word too long");
        let bits = gens
            .iter()
            .fold(0u32, |acc, g| (acc << 1) | g.index() as u32);
        Word {
            len: gens.len() as u8,
            bits,
        }
    }

    /// Word number `index` among the `2^len` words of length `len`.
    pub fn from_index(len: usize, index: usize) -> Word {
        Word {
            len: len as u8,
            bits: index as u32,
        }
    }

    pub fn parse(s: &str) -> Option<Word> {
        let gens: Option<Vec<Gen>> = s
            .chars()
            .map(|c| match c {
                'x' => Some(Gen::X),
                'y' => Some(Gen::Y),
                _ => None,
            })
            .collect();
        Some(Word::from_gens(&gens?))
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn letter(&self, i: usize) -> Gen {
        Gen::from_index(((self.bits >> (self.len as usize - 1 - i)) & 1) as usize)
    }

    pub fn letters(&self) -> Vec<Gen> {
        (0..self.len()).map(|i| self.letter(i)).collect()
    }

    pub fn concat(&self, other: &Word) -> Word {
        assert!(self.len() + other.len() <= MAX_DEGREE, "word too long");
        Word {
            len: self.len + other.len,
            bits: (self.bits << other.len) | other.bits,
        }
    }

    pub fn first(&self) -> Gen {
        self.letter(0)
    }

    pub fn last(&self) -> Gen {
        Gen::from_index((self.bits & 1) as usize)
    }

    /// Drop the first letter.
    pub fn tail(&self) -> Word {
        Word {
            len: self.len - 1,
            bits: self.bits & ((1u32 << (self.len - 1)) - 1),
        }
    }

    /// Drop the last letter.
    pub fn init(&self) -> Word {
        Word {
            len: self.len - 1,
            bits: self.bits >> 1,
        }
    }

    /// `w_1 ... w_m -> w_m w_1 ... w_{m-1}`.
    pub fn rotate(&self) -> Word {
        let last = self.bits & 1;
        Word {
            len: self.len,
            bits: (self.bits >> 1) | (last << (self.len - 1)),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ls = self.letters();
        let mut parts = Vec::new();
        let mut i = 0;
        while i < ls.len() {
            let mut j = i;
            while j < ls.len() && ls[j] == ls[i] {
                j += 1;
            }
            let run = j - i;
            parts.push(if run == 1 {
                ls[i].letter().to_string()
            } else {
                format!("{}^{}", ls[i].letter(), run)
            });
            i = j;
        }
        f.write_str(&parts.join("*"))
    }
}

/// A 2x2 scalar matrix. As a linear map of V it acts on rows:
/// `x -> a x + b y`, `y -> c x + d y`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat2 {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
}

/// Linear automorphisms of V use the row action; see [`Mat2`].
pub type LinearMap2 = Mat2;

impl Mat2 {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub fn ints(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Mat2 {
        Mat2::ints(1, 0, 0, 1)
    }

    pub fn swap() -> Mat2 {
        Mat2::ints(0, 1, 1, 0)
    }

    pub fn diag(a: Scalar, d: Scalar) -> Mat2 {
        Mat2::new(a, Scalar::zero(), Scalar::zero(), d)
    }

    pub fn entries(&self) -> [&Scalar; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn map_entries(&self, f: impl Fn(&Scalar) -> Scalar) -> Mat2 {
        Mat2::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }

    pub fn det(&self) -> Scalar {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> Scalar {
        &self.a + &self.d
    }

    /// Plain matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &(&self.a * &rhs.a) + &(&self.b * &rhs.c),
            &(&self.a * &rhs.b) + &(&self.b * &rhs.d),
            &(&self.c * &rhs.a) + &(&self.d * &rhs.c),
            &(&self.c * &rhs.b) + &(&self.d * &rhs.d),
        )
    }

    pub fn scale(&self, s: &Scalar) -> Mat2 {
        self.map_entries(|x| x * s)
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let inv = det.inv();
        Ok(Mat2::new(
            &self.d * &inv,
            &(-&self.b) * &inv,
            &(-&self.c) * &inv,
            &self.a * &inv,
        ))
    }

    /// Matrix power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Mat2> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Mat2::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// The linear map `self ∘ inner` (apply `inner` first). Under the row
    /// action this is the matrix product `inner * self`.
    pub fn compose(&self, inner: &Mat2) -> Mat2 {
        inner.mul(self)
    }

    /// Image of a generator as coefficients on (x, y).
    pub fn image(&self, g: Gen) -> (&Scalar, &Scalar) {
        match g {
            Gen::X => (&self.a, &self.b),
            Gen::Y => (&self.c, &self.d),
        }
    }

    /// Column action on a coordinate pair: `(p0, p1) -> (a p0 + b p1, c p0 + d p1)`.
    pub fn apply_column(&self, p: &(Scalar, Scalar)) -> (Scalar, Scalar) {
        (
            &(&self.a * &p.0) + &(&self.b * &p.1),
            &(&self.c * &p.0) + &(&self.d * &p.1),
        )
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(
            self.a.clone(),
            self.c.clone(),
            self.b.clone(),
            self.d.clone(),
        )
    }

    pub fn apply_assumptions(&self, asm: &Assumptions) -> Mat2 {
        self.map_entries(|x| asm.apply(x))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Homogeneous noncommutative polynomial of fixed degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NCPoly {
    degree: usize,
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero(degree: usize) -> NCPoly {
        NCPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> NCPoly {
        let mut p = NCPoly::zero(0);
        p.add_term(Word::empty(), c);
        p
    }

    pub fn gen(g: Gen) -> NCPoly {
        NCPoly::word(Word::from_gens(&[g]), Scalar::one())
    }

    pub fn word(w: Word, c: Scalar) -> NCPoly {
        let mut p = NCPoly::zero(w.len());
        p.add_term(w, c);
        p
    }

    /// Build from `(coefficient, word)` pairs written as strings of x and y.
    pub fn from_words(degree: usize, terms: &[(Scalar, &str)]) -> NCPoly {
        let mut p = NCPoly::zero(degree);
        for (c, w) in terms {
            let w = Word::parse(w).expect("word over x, y");
            assert_eq!(w.len(), degree, "word length must equal degree");
            p.add_term(w, c.clone());
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        assert_eq!(w.len(), self.degree, "word length must equal degree");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        let mut out = NCPoly::zero(self.degree);
        if c.is_zero() {
            return out;
        }
        for (w, a) in &self.terms {
            out.terms.insert(*w, a * c);
        }
        out
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        assert_eq!(self.degree, other.degree, "degree mismatch in sum");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn neg(&self) -> NCPoly {
        self.scale(&Scalar::from_int(-1))
    }

    /// Noncommutative product; degrees add.
    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero(self.degree + other.degree);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> NCPoly {
        let mut out = NCPoly::zero(self.degree);
        for (w, c) in &self.terms {
            out.add_term(*w, f(c));
        }
        out
    }

    pub fn apply_assumptions(&self, asm: &Assumptions) -> NCPoly {
        self.map_coeffs(|c| asm.apply(c))
    }

    /// Coefficient vector indexed by [`Word::index`], length `2^degree`.
    pub fn to_vector(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); 1 << self.degree];
        for (w, c) in &self.terms {
            v[w.index()] = c.clone();
        }
        v
    }

    pub fn from_vector(degree: usize, v: &[Scalar]) -> NCPoly {
        assert_eq!(v.len(), 1 << degree, "vector length must be 2^degree");
        let mut out = NCPoly::zero(degree);
        for (i, c) in v.iter().enumerate() {
            out.add_term(Word::from_index(degree, i), c.clone());
        }
        out
    }

    /// Cyclic rotation `w_1 ... w_m -> w_m w_1 ... w_{m-1}`.
    pub fn rotate(&self) -> Result<NCPoly> {
        if self.degree < 2 {
            return Err(Error::DegreeTooSmall);
        }
        let mut out = NCPoly::zero(self.degree);
        for (w, c) in &self.terms {
            out.terms.insert(w.rotate(), c.clone());
        }
        Ok(out)
    }

    /// `∂_g ω`: the sum of tails of words starting with `g`.
    pub fn left_derivative(&self, g: Gen) -> Result<NCPoly> {
        if self.degree < 1 {
            return Err(Error::DegreeTooSmall);
        }
        let mut out = NCPoly::zero(self.degree - 1);
        for (w, c) in &self.terms {
            if w.first() == g {
                out.terms.insert(w.tail(), c.clone());
            }
        }
        Ok(out)
    }

    /// `ω ∂_g`: the sum of heads of words ending with `g`.
    pub fn right_derivative(&self, g: Gen) -> Result<NCPoly> {
        if self.degree < 1 {
            return Err(Error::DegreeTooSmall);
        }
        let mut out = NCPoly::zero(self.degree - 1);
        for (w, c) in &self.terms {
            if w.last() == g {
                out.terms.insert(w.init(), c.clone());
            }
        }
        Ok(out)
    }

    /// Apply `maps[i]` to tensor slot `i` and expand.
    pub fn slot_map(&self, maps: &[LinearMap2]) -> Result<NCPoly> {
        if maps.len() != self.degree {
            return Err(Error::ArityMismatch {
                expected: self.degree,
                found: maps.len(),
            });
        }
        let mut acc: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (w, c) in &self.terms {
            // Expand the product slot by slot.
            let mut partial: Vec<(Word, Scalar)> = vec![(Word::empty(), c.clone())];
            for (i, m) in maps.iter().enumerate() {
                let (cx, cy) = m.image(w.letter(i));
                let mut next = Vec::with_capacity(partial.len() * 2);
                for (pw, pc) in &partial {
                    if !cx.is_zero() {
                        next.push((pw.concat(&Word::from_gens(&[Gen::X])), pc * cx));
                    }
                    if !cy.is_zero() {
                        next.push((pw.concat(&Word::from_gens(&[Gen::Y])), pc * cy));
                    }
                }
                partial = next;
            }
            for (pw, pc) in partial {
                let e = acc.entry(pw).or_insert_with(Scalar::zero);
                *e = &*e + &pc;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(NCPoly {
            degree: self.degree,
            terms: acc,
        })
    }

    /// Evaluate as a multilinear form: slot `i` sends x to `points[i].0`
    /// and y to `points[i].1`.
    pub fn evaluate_multilinear(&self, points: &[(Scalar, Scalar)]) -> Result<Scalar> {
        if points.len() != self.degree {
            return Err(Error::ArityMismatch {
                expected: self.degree,
                found: points.len(),
            });
        }
        if points.iter().any(|(a, b)| a.is_zero() && b.is_zero()) {
            return Err(Error::ZeroVector);
        }
        let mut total = Scalar::zero();
        for (w, c) in &self.terms {
            let mut t = c.clone();
            for (i, p) in points.iter().enumerate() {
                let v = match w.letter(i) {
                    Gen::X => &p.0,
                    Gen::Y => &p.1,
                };
                t = &t * v;
                if t.is_zero() {
                    break;
                }
            }
            total = &total + &t;
        }
        Ok(total)
    }

    /// Scalar `λ` with `self = λ · other`, if the two are proportional and
    /// `other` is nonzero.
    pub fn ratio_to(&self, other: &NCPoly) -> Option<Scalar> {
        if self.degree != other.degree || other.is_zero() {
            return None;
        }
        let (w, c) = other.terms.iter().next()?;
        let lambda = &self.coeff(w) / c;
        (self.sub(&other.scale(&lambda)))
            .is_zero()
            .then_some(lambda)
    }
}

pub(crate) fn push_coeff(out: &mut String, c: &Scalar, first: bool, has_word: bool) {
    let negative = c
        .num()
        .leading()
        .is_some_and(|(_, k)| num_traits::Signed::is_negative(k));
    let (sign, mag) = if negative && (c.num().num_terms() == 1 || !c.den().is_one()) {
        (true, -c)
    } else {
        (false, c.clone())
    };
    if first {
        if sign {
            out.push('-');
        }
    } else {
        out.push_str(if sign { " - " } else { " + " });
    }
    if !has_word {
        if mag.is_compound() && !first {
            out.push_str(&format!("({mag})"));
        } else {
            out.push_str(&mag.to_string());
        }
        return;
    }
    if mag.is_one() {
        return;
    }
    if mag.is_compound() {
        out.push_str(&format!("({mag})*"));
    } else {
        out.push_str(&format!("{mag}*"));
    }
}

impl fmt::Display for NCPoly {
    /// Canonical form, e.g. `x^2*y - alpha*y*x^2 + (alpha - 1)*y^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            push_coeff(&mut out, c, i == 0, !w.is_empty());
            if !w.is_empty() {
                out.push_str(&w.to_string());
            }
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn rotation_and_derivatives() {
        let xy = NCPoly::from_words(2, &[(s(1), "xy")]);
        assert_eq!(xy.rotate().unwrap(), NCPoly::from_words(2, &[(s(1), "yx")]));
        let xyy = NCPoly::from_words(3, &[(s(1), "xyy")]);
        assert_eq!(
            xyy.left_derivative(Gen::X).unwrap(),
            NCPoly::from_words(2, &[(s(1), "yy")])
        );
        assert!(xyy.left_derivative(Gen::Y).unwrap().is_zero());
        let y3 = NCPoly::from_words(3, &[(s(1), "yyy")]);
        assert!(y3.right_derivative(Gen::X).unwrap().is_zero());
        assert_eq!(NCPoly::gen(Gen::X).rotate(), Err(Error::DegreeTooSmall));
    }

    #[test]
    fn slot_map_basics() {
        let xy = NCPoly::from_words(2, &[(s(1), "xy")]);
        let id = Mat2::identity();
        assert_eq!(xy.slot_map(&[id.clone(), id.clone()]).unwrap(), xy);
        let sw = Mat2::swap();
        assert_eq!(
            xy.slot_map(&[sw.clone(), sw]).unwrap(),
            NCPoly::from_words(2, &[(s(1), "yx")])
        );
        assert!(matches!(
            xy.slot_map(&[id]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn multilinear_examples() {
        let a = Scalar::param("alpha");
        let yxy = NCPoly::from_words(3, &[(s(1), "yxy")]);
        let pts = [(s(0), s(1)), (s(1), s(0)), (s(0), a.clone())];
        assert_eq!(yxy.evaluate_multilinear(&pts).unwrap(), a);
        let x3 = NCPoly::from_words(3, &[(s(1), "xxx")]);
        let p = (s(1), s(0));
        assert_eq!(
            x3.evaluate_multilinear(&[p.clone(), p.clone(), p]).unwrap(),
            s(1)
        );
        let g = NCPoly::from_words(3, &[(s(1), "xxy"), (s(-1), "yxx")]);
        // x^2*y gives 1*1*alpha and y*x^2 gives 1*1*1.
        let pts = [(s(1), s(1)), (s(1), s(0)), (s(1), a.clone())];
        assert_eq!(g.evaluate_multilinear(&pts).unwrap(), &a - &s(1));
        assert_eq!(
            g.evaluate_multilinear(&[(s(0), s(0)), (s(1), s(0)), (s(1), s(0))]),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn display_runs() {
        let a = Scalar::param("alpha");
        let g = NCPoly::from_words(3, &[(s(1), "xxy"), (-&a, "yxx"), (&a - &s(1), "yyy")]);
        assert_eq!(g.to_string(), "x^2*y - alpha*y*x^2 + (alpha - 1)*y^3");
    }

    #[test]
    fn compose_is_map_composition() {
        // (f ∘ g)(x) computed by hand against compose.
        let f = Mat2::ints(1, 2, 3, 4);
        let g = Mat2::ints(0, 1, 1, 1);
        let x = NCPoly::gen(Gen::X);
        let fg = x
            .slot_map(std::slice::from_ref(&g))
            .unwrap()
            .slot_map(std::slice::from_ref(&f))
            .unwrap();
        assert_eq!(x.slot_map(&[f.compose(&g)]).unwrap(), fg);
    }
}
