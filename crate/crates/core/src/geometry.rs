//! Points, Möbius maps, curve components of ℙ¹×ℙ¹, piecewise automorphisms
//! σ and the normal-form catalogs of point schemes of Types S′, T′ and FL.
//!
//! Möbius maps act on points by matrix times column:
//! `(p0, p1) -> (a p0 + b p1, c p0 + d p1)`.

use std::fmt;

use crate::assume::{Assumptions, Decision};
use crate::error::{Error, Result};
use crate::exprparse::{parse_matrix, parse_scalar};
use crate::freealg::Mat2;
use crate::scalars::Scalar;
use crate::upoly::{apply_matrix, const_point, generic_point, proportional_equations, FormPoint};

/// A point of ℙ¹. Stored as given; compared projectively.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    pub p0: Scalar,
    pub p1: Scalar,
}

impl ProjPoint {
    pub fn new(p0: Scalar, p1: Scalar) -> Result<ProjPoint> {
        if p0.is_zero() && p1.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(ProjPoint { p0, p1 })
    }

    pub fn ints(a: i64, b: i64) -> ProjPoint {
        ProjPoint::new(a.into(), b.into()).expect("nonzero point")
    }

    /// `P = (1, 0)`.
    pub fn p() -> ProjPoint {
        ProjPoint::ints(1, 0)
    }

    /// `Q = (0, 1)`.
    pub fn q() -> ProjPoint {
        ProjPoint::ints(0, 1)
    }

    pub fn coords(&self) -> (Scalar, Scalar) {
        (self.p0.clone(), self.p1.clone())
    }

    /// First nonzero coordinate scaled to 1.
    pub fn canonical(&self) -> ProjPoint {
        if self.p0.is_zero() {
            ProjPoint::q()
        } else {
            ProjPoint {
                p0: Scalar::one(),
                p1: &self.p1 / &self.p0,
            }
        }
    }

    /// `p0 q1 - p1 q0`.
    pub fn cross(&self, other: &ProjPoint) -> Scalar {
        &(&self.p0 * &other.p1) - &(&self.p1 * &other.p0)
    }

    pub fn eq_under(&self, other: &ProjPoint, asm: &Assumptions) -> Result<bool> {
        asm.is_zero(&self.cross(other))
    }

    pub fn map_coords(&self, f: impl Fn(&Scalar) -> Scalar) -> ProjPoint {
        ProjPoint {
            p0: f(&self.p0),
            p1: f(&self.p1),
        }
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.cross(other).is_zero()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        write!(f, "({},{})", c.p0, c.p1)
    }
}

/// An element of PGL₂. Stored as given; compared up to scalars.
#[derive(Clone, Debug)]
pub struct Mobius {
    m: Mat2,
}

impl Mobius {
    pub fn new(m: Mat2) -> Result<Mobius> {
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(Mobius { m })
    }

    /// For matrices known to be invertible.
    pub fn of(m: Mat2) -> Mobius {
        Mobius::new(m).expect("invertible matrix")
    }

    pub fn identity() -> Mobius {
        Mobius::of(Mat2::identity())
    }

    /// `τ = (0 1; 1 0)`.
    pub fn swap() -> Mobius {
        Mobius::of(Mat2::swap())
    }

    /// `τ_α = (1 0; 0 α)`.
    pub fn tau(alpha: &Scalar) -> Mobius {
        Mobius::of(Mat2::diag(Scalar::one(), alpha.clone()))
    }

    /// `μ_α = (0 1; α 0)`.
    pub fn mu(alpha: &Scalar) -> Mobius {
        Mobius::of(Mat2::new(
            Scalar::zero(),
            Scalar::one(),
            alpha.clone(),
            Scalar::zero(),
        ))
    }

    /// `τ_{β,γ} = (1 β; 0 γ)`.
    pub fn tau_bg(beta: &Scalar, gamma: &Scalar) -> Mobius {
        Mobius::of(Mat2::new(
            Scalar::one(),
            beta.clone(),
            Scalar::zero(),
            gamma.clone(),
        ))
    }

    /// `τ_{1,1} = (1 1; 0 1)`.
    pub fn tau11() -> Mobius {
        Mobius::tau_bg(&Scalar::one(), &Scalar::one())
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    /// First nonzero entry scaled to 1.
    pub fn canonical(&self) -> Mobius {
        let lead = self
            .m
            .entries()
            .into_iter()
            .find(|e| !e.is_zero())
            .expect("invertible")
            .clone();
        Mobius {
            m: self.m.scale(&lead.inv()),
        }
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let (a, b) = self.m.apply_column(&p.coords());
        ProjPoint { p0: a, p1: b }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Mobius) -> Mobius {
        Mobius {
            m: self.m.mul(&inner.m),
        }
    }

    /// The adjugate, a projective inverse without division.
    pub fn inverse(&self) -> Mobius {
        let m = &self.m;
        Mobius {
            m: Mat2::new(m.d.clone(), -&m.b, -&m.c, m.a.clone()),
        }
    }

    pub fn pow(&self, e: i64) -> Mobius {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Mobius::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    /// Equations (all must vanish) for `self = other` in PGL₂.
    pub fn eq_equations(&self, other: &Mobius) -> Vec<Scalar> {
        let e = self.m.entries();
        let f = other.m.entries();
        let mut out = Vec::new();
        for i in 0..4 {
            for j in (i + 1)..4 {
                let x = &(e[i] * f[j]) - &(e[j] * f[i]);
                if !x.is_zero() {
                    out.push(x);
                }
            }
        }
        out
    }

    pub fn eq_under(&self, other: &Mobius, asm: &Assumptions) -> Result<bool> {
        all_zero(&self.eq_equations(other), asm)
    }

    pub fn map_entries(&self, f: impl Fn(&Scalar) -> Scalar) -> Mobius {
        Mobius {
            m: self.m.map_entries(f),
        }
    }
}

impl PartialEq for Mobius {
    fn eq(&self, other: &Self) -> bool {
        self.eq_equations(other).is_empty()
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical().m)
    }
}

fn all_zero(eqs: &[Scalar], asm: &Assumptions) -> Result<bool> {
    for e in eqs {
        if !asm.is_zero(e)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An irreducible component of a point scheme.
#[derive(Clone, Debug, PartialEq)]
pub enum CurveComponent {
    /// `{p} × ℙ¹`, bidegree (1,0).
    VLine(ProjPoint),
    /// `ℙ¹ × {q}`, bidegree (0,1).
    HLine(ProjPoint),
    /// `C_τ = {(p, τ(p))}`, bidegree (1,1).
    Graph(Mobius),
}

impl CurveComponent {
    pub fn bidegree(&self) -> (usize, usize) {
        match self {
            CurveComponent::VLine(_) => (1, 0),
            CurveComponent::HLine(_) => (0, 1),
            CurveComponent::Graph(_) => (1, 1),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CurveComponent::VLine(_) => "vline",
            CurveComponent::HLine(_) => "hline",
            CurveComponent::Graph(_) => "graph",
        }
    }

    /// `(first coordinate, second coordinate)` in the parameter `u`:
    /// `(p, u)`, `(u, q)` or `(u, τ u)`.
    pub fn parametrize(&self) -> (FormPoint, FormPoint) {
        let u = generic_point();
        match self {
            CurveComponent::VLine(p) => (const_point(&p.coords()), u),
            CurveComponent::HLine(q) => (u, const_point(&q.coords())),
            CurveComponent::Graph(t) => {
                let tu = apply_matrix(t.matrix(), &u);
                (u, tu)
            }
        }
    }

    /// The parameter of a point: the second coordinate on a vertical line,
    /// the first one otherwise.
    pub fn parameter_of<'a>(&self, p: &'a ProjPoint, q: &'a ProjPoint) -> &'a ProjPoint {
        match self {
            CurveComponent::VLine(_) => q,
            _ => p,
        }
    }

    pub fn contains(&self, p: &ProjPoint, q: &ProjPoint, asm: &Assumptions) -> Result<bool> {
        match self {
            CurveComponent::VLine(a) => a.eq_under(p, asm),
            CurveComponent::HLine(b) => b.eq_under(q, asm),
            CurveComponent::Graph(t) => t.apply(p).eq_under(q, asm),
        }
    }

    /// Equations for equality with `other`; `None` if the kinds differ.
    pub fn eq_equations(&self, other: &CurveComponent) -> Option<Vec<Scalar>> {
        let nz = |x: Scalar| if x.is_zero() { vec![] } else { vec![x] };
        match (self, other) {
            (CurveComponent::VLine(a), CurveComponent::VLine(b))
            | (CurveComponent::HLine(a), CurveComponent::HLine(b)) => Some(nz(a.cross(b))),
            (CurveComponent::Graph(s), CurveComponent::Graph(t)) => Some(s.eq_equations(t)),
            _ => None,
        }
    }

    pub fn eq_under(&self, other: &CurveComponent, asm: &Assumptions) -> Result<bool> {
        match self.eq_equations(other) {
            Some(eqs) => all_zero(&eqs, asm),
            None => Ok(false),
        }
    }

    /// Image under `τ1 × τ2`.
    pub fn transport(&self, t1: &Mobius, t2: &Mobius) -> CurveComponent {
        match self {
            CurveComponent::VLine(p) => CurveComponent::VLine(t1.apply(p)),
            CurveComponent::HLine(q) => CurveComponent::HLine(t2.apply(q)),
            CurveComponent::Graph(t) => CurveComponent::Graph(t2.compose(t).compose(&t1.inverse())),
        }
    }

    pub fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Scalar) -> CurveComponent {
        match self {
            CurveComponent::VLine(p) => CurveComponent::VLine(p.map_coords(f)),
            CurveComponent::HLine(q) => CurveComponent::HLine(q.map_coords(f)),
            CurveComponent::Graph(t) => CurveComponent::Graph(t.map_entries(f)),
        }
    }
}

impl fmt::Display for CurveComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveComponent::VLine(p) => write!(f, "vline {p}"),
            CurveComponent::HLine(q) => write!(f, "hline {q}"),
            CurveComponent::Graph(t) => write!(f, "graph {t}"),
        }
    }
}

/// Second output coordinate of σ on a component, as a function of the
/// component parameter.
#[derive(Clone, Debug, PartialEq)]
pub enum Image {
    Const(ProjPoint),
    Map(Mobius),
}

impl Image {
    pub fn eval(&self, u: &ProjPoint) -> ProjPoint {
        match self {
            Image::Const(c) => c.clone(),
            Image::Map(m) => m.apply(u),
        }
    }

    pub fn eval_form(&self, u: &FormPoint) -> FormPoint {
        match self {
            Image::Const(c) => const_point(&c.coords()),
            Image::Map(m) => apply_matrix(m.matrix(), u),
        }
    }

    fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Scalar) -> Image {
        match self {
            Image::Const(c) => Image::Const(c.map_coords(f)),
            Image::Map(m) => Image::Map(m.map_entries(f)),
        }
    }
}

impl fmt::Display for Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Image::Const(c) => write!(f, "point {c}"),
            Image::Map(m) => write!(f, "{m}"),
        }
    }
}

/// σ restricted to `components[source]`: `(p, q) -> (q, image(u))`, landing on
/// `components[target]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaPiece {
    pub source: usize,
    pub target: usize,
    pub image: Image,
}

/// A union of components with a piecewise automorphism.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricPair {
    pub labels: Vec<String>,
    pub components: Vec<CurveComponent>,
    pub sigma: Vec<SigmaPiece>,
    /// Which catalog shape this instantiates, e.g. `S'(i)`.
    pub pattern: String,
}

impl GeometricPair {
    pub fn piece(&self, source: usize) -> Option<&SigmaPiece> {
        self.sigma.iter().find(|s| s.source == source)
    }

    pub fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Scalar) -> GeometricPair {
        GeometricPair {
            labels: self.labels.clone(),
            components: self.components.iter().map(|c| c.map_scalars(f)).collect(),
            sigma: self
                .sigma
                .iter()
                .map(|s| SigmaPiece {
                    source: s.source,
                    target: s.target,
                    image: s.image.map_scalars(f),
                })
                .collect(),
            pattern: self.pattern.clone(),
        }
    }

    pub fn apply_assumptions(&self, asm: &Assumptions) -> GeometricPair {
        self.map_scalars(&|s| asm.apply(s))
    }
}

impl fmt::Display for GeometricPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "components:")?;
        for (l, c) in self.labels.iter().zip(&self.components) {
            writeln!(f, "  {l} = {c}")?;
        }
        writeln!(f, "sigma:")?;
        for s in &self.sigma {
            writeln!(
                f,
                "  {} -> {} {}",
                self.labels[s.source], self.labels[s.target], s.image
            )?;
        }
        Ok(())
    }
}

/// σ at a point of `components[source]`; the first output equals `q`.
pub fn apply_sigma(
    pair: &GeometricPair,
    source: usize,
    p: &ProjPoint,
    q: &ProjPoint,
    asm: &Assumptions,
) -> Result<(ProjPoint, ProjPoint)> {
    let comp = pair
        .components
        .get(source)
        .ok_or_else(|| Error::InvalidPair(format!("no component {source}")))?;
    if !comp.contains(p, q, asm)? {
        return Err(Error::PointNotOnComponent);
    }
    let piece = pair
        .piece(source)
        .ok_or_else(|| Error::InvalidPair(format!("sigma undefined on {}", pair.labels[source])))?;
    let u = comp.parameter_of(p, q);
    Ok((q.clone(), piece.image.eval(u)))
}

/// Intersection points of two distinct components.
pub fn intersect(
    a: &CurveComponent,
    b: &CurveComponent,
    asm: &Assumptions,
) -> Result<Vec<(ProjPoint, ProjPoint)>> {
    use CurveComponent::*;
    Ok(match (a, b) {
        (VLine(p), HLine(q)) | (HLine(q), VLine(p)) => vec![(p.clone(), q.clone())],
        (VLine(_), VLine(_)) | (HLine(_), HLine(_)) => vec![],
        (VLine(p), Graph(t)) | (Graph(t), VLine(p)) => vec![(p.clone(), t.apply(p))],
        (HLine(q), Graph(t)) | (Graph(t), HLine(q)) => vec![(t.inverse().apply(q), q.clone())],
        (Graph(s), Graph(t)) => {
            // u with s(u) ~ t(u): eigenvectors of t^{-1} s.
            let n = t.inverse().compose(s);
            eigenvectors(n.matrix(), asm)?
                .into_iter()
                .map(|u| {
                    let v = s.apply(&u);
                    (u, v)
                })
                .collect()
        }
    })
}

/// Projective fixed points of a 2x2 matrix, adjoining a square root if the
/// characteristic polynomial needs one.
pub fn eigenvectors(m: &Mat2, asm: &Assumptions) -> Result<Vec<ProjPoint>> {
    let (a, b, c, d) = (&m.a, &m.b, &m.c, &m.d);
    let bz = asm.is_zero(b)?;
    let cz = asm.is_zero(c)?;
    if bz && cz {
        if asm.is_zero(&(a - d))? {
            return Ok(vec![]);
        }
        return Ok(vec![ProjPoint::p(), ProjPoint::q()]);
    }
    let vec_for = |lambda: &Scalar| -> ProjPoint {
        if !bz {
            ProjPoint {
                p0: b.clone(),
                p1: lambda - a,
            }
        } else {
            ProjPoint {
                p0: lambda - d,
                p1: c.clone(),
            }
        }
    };
    let amd = a - d;
    let disc = &(&amd * &amd) + &(&Scalar::from_int(4) * &(b * c));
    let half = Scalar::frac(1, 2);
    let tr = a + d;
    if asm.is_zero(&disc)? {
        return Ok(vec![vec_for(&(&tr * &half))]);
    }
    let s = crate::scalars::adjoin_sqrt(&disc)?;
    Ok(vec![
        vec_for(&(&(&tr + &s) * &half)),
        vec_for(&(&(&tr - &s) * &half)),
    ])
}

/// Checks that σ is a well-defined automorphism of E with `π₁ ∘ σ = π₂`:
/// each piece maps its component onto its target, targets form a
/// permutation, and pieces agree at every intersection point.
pub fn is_g_automorphism(pair: &GeometricPair, asm: &Assumptions) -> Result<bool> {
    let n = pair.components.len();
    let mut seen_src = vec![false; n];
    let mut seen_tgt = vec![false; n];
    for s in &pair.sigma {
        if s.source >= n || s.target >= n || seen_src[s.source] || seen_tgt[s.target] {
            return Ok(false);
        }
        seen_src[s.source] = true;
        seen_tgt[s.target] = true;
    }
    if seen_src.iter().any(|x| !x) {
        return Ok(false);
    }
    for s in &pair.sigma {
        if !piece_onto_target(pair, s, asm)? {
            return Ok(false);
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for (p, q) in intersect(&pair.components[i], &pair.components[j], asm)? {
                let (q1, r1) = apply_sigma(pair, i, &p, &q, asm)?;
                let (_, r2) = apply_sigma(pair, j, &p, &q, asm)?;
                debug_assert!(q1 == q);
                if !r1.eq_under(&r2, asm)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The image of `components[source]` is all of `components[target]`.
fn piece_onto_target(pair: &GeometricPair, s: &SigmaPiece, asm: &Assumptions) -> Result<bool> {
    use CurveComponent::*;
    let src = &pair.components[s.source];
    let tgt = &pair.components[s.target];
    let (_, q) = src.parametrize();
    let u = generic_point();
    let r = s.image.eval_form(&u);
    let q_varies = !matches!(src, HLine(_));
    let r_varies = matches!(s.image, Image::Map(_));
    match tgt {
        VLine(t) => {
            if q_varies || !r_varies {
                return Ok(false);
            }
            let HLine(q0) = src else { unreachable!() };
            t.eq_under(q0, asm)
        }
        HLine(t) => {
            let Image::Const(c) = &s.image else {
                return Ok(false);
            };
            if !q_varies {
                return Ok(false);
            }
            t.eq_under(c, asm)
        }
        Graph(t) => {
            if !(q_varies && r_varies) {
                return Ok(false);
            }
            let tq = apply_matrix(t.matrix(), &q);
            all_zero(&proportional_equations(&r, &tq), asm)
        }
    }
}

/// One triple `(p(u), q(u), r(u))` per component, `r = π₂ σ(p, q)`.
pub fn gamma_parametrization(pair: &GeometricPair) -> Vec<(FormPoint, FormPoint, FormPoint)> {
    pair.sigma
        .iter()
        .map(|s| {
            let (p, q) = pair.components[s.source].parametrize();
            let r = s.image.eval_form(&generic_point());
            (p, q, r)
        })
        .collect()
}

/// `(τ1 × τ2)(E)` with `σ' = (τ2 × τ2) ∘ σ ∘ (τ1 × τ2)⁻¹`.
pub fn transport(pair: &GeometricPair, t1: &Mobius, t2: &Mobius) -> Result<GeometricPair> {
    for t in [t1, t2] {
        if t.matrix().det().is_zero() {
            return Err(Error::SingularMatrix);
        }
    }
    let components = pair
        .components
        .iter()
        .map(|c| c.transport(t1, t2))
        .collect();
    let sigma = pair
        .sigma
        .iter()
        .map(|s| {
            let image = match &s.image {
                Image::Const(c) => Image::Const(t2.apply(c)),
                Image::Map(m) => {
                    let along = match pair.components[s.source] {
                        CurveComponent::VLine(_) => t2,
                        _ => t1,
                    };
                    Image::Map(t2.compose(m).compose(&along.inverse()))
                }
            };
            SigmaPiece {
                source: s.source,
                target: s.target,
                image,
            }
        })
        .collect();
    Ok(GeometricPair {
        labels: pair.labels.clone(),
        components,
        sigma,
        pattern: pair.pattern.clone(),
    })
}

/// Equations (all must vanish) for `(r1 × r2)(E_a) = E_b` together with
/// `σ_b ∘ (r1 × r2) = (r2 × r3) ∘ σ_a`. An unmatched component yields the
/// unsatisfiable equation `1`.
pub fn commutes(
    a: &GeometricPair,
    b: &GeometricPair,
    r1: &Mobius,
    r2: &Mobius,
    r3: &Mobius,
    asm: &Assumptions,
) -> Result<Vec<Scalar>> {
    let fail = || Ok(vec![Scalar::one()]);
    if a.components.len() != b.components.len() {
        return fail();
    }
    let mut eqs = Vec::new();
    let mut used = vec![false; b.components.len()];
    for (i, comp) in a.components.iter().enumerate() {
        let moved = comp.transport(r1, r2);
        let mut chosen: Option<(usize, Vec<Scalar>)> = None;
        for (j, cand) in b.components.iter().enumerate() {
            if used[j] {
                continue;
            }
            let Some(ce) = moved.eq_equations(cand) else {
                continue;
            };
            let mut decided = true;
            let mut impossible = false;
            for e in &ce {
                match asm.decide(e) {
                    Decision::Zero => {}
                    Decision::NonZero => impossible = true,
                    Decision::Unknown(_) => decided = false,
                }
            }
            if impossible {
                continue;
            }
            if decided {
                chosen = Some((j, ce));
                break;
            }
            if chosen.is_none() {
                chosen = Some((j, ce));
            }
        }
        let Some((j, ce)) = chosen else {
            return fail();
        };
        used[j] = true;
        eqs.extend(ce);
        let (Some(pa), Some(pb)) = (a.piece(i), b.piece(j)) else {
            return fail();
        };
        let u = generic_point();
        let along = match comp {
            CurveComponent::VLine(_) => r2,
            _ => r1,
        };
        let lhs = pb.image.eval_form(&apply_matrix(along.matrix(), &u));
        let rhs = apply_matrix(r3.matrix(), &pa.image.eval_form(&u));
        eqs.extend(proportional_equations(&lhs, &rhs));
    }
    let eqs = eqs
        .into_iter()
        .map(|e| asm.apply(&e))
        .filter(|e| !e.is_zero())
        .collect();
    Ok(eqs)
}

/// Shapes of point schemes handled by the catalogs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeType {
    SPrime,
    TPrime1,
    TPrime2,
    FL,
}

impl SchemeType {
    pub fn parse(tag: &str) -> Result<SchemeType> {
        let t: String = tag
            .chars()
            .map(|c| if c == '′' { '\'' } else { c })
            .filter(|c| !matches!(c, '_' | ' '))
            .collect::<String>()
            .to_ascii_lowercase();
        Ok(match t.as_str() {
            "s'" | "sp" | "sprime" => SchemeType::SPrime,
            "t'1" | "tp1" | "tprime1" => SchemeType::TPrime1,
            "t'2" | "tp2" | "tprime2" => SchemeType::TPrime2,
            "fl" => SchemeType::FL,
            _ => return Err(Error::UnknownType(tag.to_string())),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            SchemeType::SPrime => "S'",
            SchemeType::TPrime1 => "T'1",
            SchemeType::TPrime2 => "T'2",
            SchemeType::FL => "FL",
        }
    }
}

/// A catalog family: a pair with symbolic parameters and their constraints.
#[derive(Clone, Debug)]
pub struct Family {
    pub name: String,
    pub pair: GeometricPair,
    pub assumptions: Assumptions,
}

fn triangle(graph: Mobius) -> (Vec<String>, Vec<CurveComponent>) {
    (
        vec!["h".into(), "v".into(), "c".into()],
        vec![
            CurveComponent::HLine(ProjPoint::p()),
            CurveComponent::VLine(ProjPoint::p()),
            CurveComponent::Graph(graph),
        ],
    )
}

fn quadrangle() -> (Vec<String>, Vec<CurveComponent>) {
    (
        vec!["hP".into(), "hQ".into(), "vP".into(), "vQ".into()],
        vec![
            CurveComponent::HLine(ProjPoint::p()),
            CurveComponent::HLine(ProjPoint::q()),
            CurveComponent::VLine(ProjPoint::p()),
            CurveComponent::VLine(ProjPoint::q()),
        ],
    )
}

fn piece(source: usize, target: usize, image: Image) -> SigmaPiece {
    SigmaPiece {
        source,
        target,
        image,
    }
}

fn pair_of(
    parts: (Vec<String>, Vec<CurveComponent>),
    sigma: Vec<SigmaPiece>,
    pattern: &str,
) -> GeometricPair {
    GeometricPair {
        labels: parts.0,
        components: parts.1,
        sigma,
        pattern: pattern.to_string(),
    }
}

/// E for a type, with σ = identity pieces omitted.
pub fn catalog_e(t: SchemeType, alpha: &Scalar) -> Vec<CurveComponent> {
    match t {
        SchemeType::SPrime => triangle(Mobius::swap()).1,
        SchemeType::TPrime1 => triangle(Mobius::tau(alpha)).1,
        SchemeType::TPrime2 => triangle(Mobius::tau11()).1,
        SchemeType::FL => quadrangle().1,
    }
}

const H: usize = 0;
const V: usize = 1;
const C: usize = 2;

/// S′ (i): `σ(p,P) = (P, τ_α p)`, `σ(P,p) = (p,P)`, `σ(p,τp) = (τp, p)`.
pub fn sprime_i(alpha: &Scalar) -> GeometricPair {
    pair_of(
        triangle(Mobius::swap()),
        vec![
            piece(H, V, Image::Map(Mobius::tau(alpha))),
            piece(V, H, Image::Const(ProjPoint::p())),
            piece(C, C, Image::Map(Mobius::identity())),
        ],
        "S'(i)",
    )
}

/// S′ (ii): `σ(p,P) = (P, μ_α p)`, `σ(P,p) = (p, τp)`, `σ(p,τp) = (τp, P)`.
pub fn sprime_ii(alpha: &Scalar) -> GeometricPair {
    pair_of(
        triangle(Mobius::swap()),
        vec![
            piece(H, V, Image::Map(Mobius::mu(alpha))),
            piece(V, C, Image::Map(Mobius::swap())),
            piece(C, H, Image::Const(ProjPoint::p())),
        ],
        "S'(ii)",
    )
}

fn tprime_i(graph: Mobius, beta: &Scalar, gamma: &Scalar, pattern: &str) -> GeometricPair {
    let sq = graph.compose(&graph);
    pair_of(
        triangle(graph),
        vec![
            piece(H, V, Image::Map(Mobius::tau_bg(beta, gamma))),
            piece(V, H, Image::Const(ProjPoint::p())),
            piece(C, C, Image::Map(sq)),
        ],
        pattern,
    )
}

fn tprime_ii(graph: Mobius, beta: &Scalar, gamma: &Scalar, pattern: &str) -> GeometricPair {
    pair_of(
        triangle(graph.clone()),
        vec![
            piece(H, V, Image::Map(Mobius::tau_bg(beta, gamma))),
            piece(V, C, Image::Map(graph)),
            piece(C, H, Image::Const(ProjPoint::p())),
        ],
        pattern,
    )
}

/// T′ on `C_{τ_α}`, branch (i): `σ(p,P) = (P, τ_{β,γ} p)`, `σ(P,p) = (p,P)`,
/// `σ(p, τ_α p) = (τ_α p, τ_α² p)`.
pub fn tprime1_i(alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> GeometricPair {
    tprime_i(Mobius::tau(alpha), beta, gamma, "T'1(i)")
}

/// T′ on `C_{τ_α}`, branch (ii): `σ(P,p) = (p, τ_α p)`, `σ(p, τ_α p) = (τ_α p, P)`.
pub fn tprime1_ii(alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> GeometricPair {
    tprime_ii(Mobius::tau(alpha), beta, gamma, "T'1(ii)")
}

/// T′ on `C_{τ_{1,1}}`, branch (i).
pub fn tprime2_i(beta: &Scalar, gamma: &Scalar) -> GeometricPair {
    tprime_i(Mobius::tau11(), beta, gamma, "T'2(i)")
}

/// T′ on `C_{τ_{1,1}}`, branch (ii).
pub fn tprime2_ii(beta: &Scalar, gamma: &Scalar) -> GeometricPair {
    tprime_ii(Mobius::tau11(), beta, gamma, "T'2(ii)")
}

/// FL (i): `σ(p,P) = (P, τ_α p)`, `σ(p,Q) = (Q, τ_β p)`, `σ(P,p) = (p,P)`,
/// `σ(Q,p) = (p,Q)`.
pub fn fl_i(alpha: &Scalar, beta: &Scalar) -> GeometricPair {
    pair_of(
        quadrangle(),
        vec![
            piece(0, 2, Image::Map(Mobius::tau(alpha))),
            piece(1, 3, Image::Map(Mobius::tau(beta))),
            piece(2, 0, Image::Const(ProjPoint::p())),
            piece(3, 1, Image::Const(ProjPoint::q())),
        ],
        "FL(i)",
    )
}

/// FL (ii): `σ(p,P) = (P, μ_α p)`, `σ(p,Q) = (Q, μ_β p)`, `σ(P,p) = (p,Q)`,
/// `σ(Q,p) = (p,P)`.
pub fn fl_ii(alpha: &Scalar, beta: &Scalar) -> GeometricPair {
    pair_of(
        quadrangle(),
        vec![
            piece(0, 2, Image::Map(Mobius::mu(alpha))),
            piece(1, 3, Image::Map(Mobius::mu(beta))),
            piece(2, 1, Image::Const(ProjPoint::q())),
            piece(3, 0, Image::Const(ProjPoint::p())),
        ],
        "FL(ii)",
    )
}

fn sym(name: &str) -> Scalar {
    Scalar::param(name)
}

/// Every family of automorphisms of the normal-form E of a type, with
/// symbolic parameters α, β, γ.
pub fn catalog_sigma(t: SchemeType) -> Vec<Family> {
    let (a, b, g) = (sym("alpha"), sym("beta"), sym("gamma"));
    let fam = |pair: GeometricPair, nz: &[&Scalar]| Family {
        name: pair.pattern.clone(),
        pair,
        assumptions: nz
            .iter()
            .fold(Assumptions::new(), |acc, s| acc.assume_nonzero(s)),
    };
    match t {
        SchemeType::SPrime => vec![fam(sprime_i(&a), &[&a]), fam(sprime_ii(&a), &[&a])],
        SchemeType::TPrime1 => vec![
            fam(tprime1_i(&a, &b, &g), &[&a, &g]),
            fam(tprime1_ii(&a, &b, &g), &[&a, &g]),
        ],
        SchemeType::TPrime2 => vec![
            fam(tprime2_i(&b, &g), &[&g]),
            fam(tprime2_ii(&b, &g), &[&g]),
        ],
        SchemeType::FL => vec![fam(fl_i(&a, &b), &[&a, &b]), fam(fl_ii(&a, &b), &[&a, &b])],
    }
}

/// All eight catalog families.
pub fn all_families() -> Vec<Family> {
    [
        SchemeType::SPrime,
        SchemeType::TPrime1,
        SchemeType::TPrime2,
        SchemeType::FL,
    ]
    .into_iter()
    .flat_map(catalog_sigma)
    .collect()
}

/// Catalog families with one target assignment or image perturbed; none of
/// these is a valid automorphism.
pub fn mutated_families() -> Vec<Family> {
    let mut out = Vec::new();
    let fams = all_families();
    let find = |n: &str| fams.iter().find(|f| f.name == n).expect("family").clone();
    let mut push = |base: &Family, name: &str, f: &dyn Fn(&mut GeometricPair)| {
        let mut pair = base.pair.clone();
        f(&mut pair);
        pair.pattern = name.to_string();
        out.push(Family {
            name: name.to_string(),
            pair,
            assumptions: base.assumptions.clone(),
        });
    };
    // σ(P,p) = (p,Q) and σ(Q,p) = (p,P) while σ(p,P) = (P, τ_α p) is kept.
    push(
        &find("FL(i)"),
        "FL(i) with swapped vertical targets",
        &|p| {
            p.sigma[2] = piece(2, 1, Image::Const(ProjPoint::q()));
            p.sigma[3] = piece(3, 0, Image::Const(ProjPoint::p()));
        },
    );
    // Graph piece maps p to τ(p) instead of p: disagrees at (Q, P).
    push(&find("S'(i)"), "S'(i) with graph image swap", &|p| {
        p.sigma[2] = piece(C, C, Image::Map(Mobius::swap()));
    });
    // The vertical line collapses onto a point of the graph.
    push(&find("S'(ii)"), "S'(ii) with constant graph image", &|p| {
        p.sigma[1] = piece(V, C, Image::Const(ProjPoint::p()));
    });
    // Graph sent onto the vertical line.
    push(
        &find("T'1(i)"),
        "T'1(i) with graph sent to the vertical line",
        &|p| {
            p.sigma[0] = piece(
                H,
                C,
                Image::Map(Mobius::tau_bg(&sym("beta"), &sym("gamma"))),
            );
            p.sigma[2] = piece(C, V, Image::Map(Mobius::tau(&sym("alpha")).pow(2)));
        },
    );
    // Horizontal lines exchanged while keeping τ-type images.
    push(
        &find("FL(ii)"),
        "FL(ii) with horizontal targets exchanged",
        &|p| {
            p.sigma[0] = piece(0, 3, Image::Map(Mobius::mu(&sym("alpha"))));
            p.sigma[1] = piece(1, 2, Image::Map(Mobius::mu(&sym("beta"))));
        },
    );
    out
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Parse `(e1, e2)`.
pub fn parse_point(text: &str) -> Result<ProjPoint> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::InvalidPair(format!("expected a point `(a,b)`, got `{t}`")))?;
    let parts = split_top_level(inner);
    if parts.len() != 2 {
        return Err(Error::InvalidPair(format!(
            "point `{t}` needs two coordinates"
        )));
    }
    ProjPoint::new(parse_scalar(parts[0])?, parse_scalar(parts[1])?)
}

/// Parse a pair spec:
///
/// ```text
/// components:
///   h = hline (1,0)
///   v = vline (1,0)
///   c = graph [[0,1],[1,0]]
/// sigma:
///   h -> v [[1,0],[0,alpha]]
///   v -> h point (1,0)
///   c -> c [[1,0],[0,1]]
/// ```
///
/// `#` starts a comment. Returns the pair and any `assume:` clauses.
pub fn parse_pair_spec(text: &str) -> Result<(GeometricPair, Vec<String>)> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Components,
        Sigma,
    }
    let mut section = Section::None;
    let mut labels: Vec<String> = Vec::new();
    let mut components = Vec::new();
    let mut sigma = Vec::new();
    let mut assumes = Vec::new();
    let mut pattern = String::from("custom");
    let bad = |n: usize, m: &str| Error::InvalidPair(format!("line {}: {m}", n + 1));
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("assume:") {
            assumes.push(rest.trim().to_string());
            continue;
        }
        if let Some(rest) = line.strip_prefix("pattern:") {
            pattern = rest.trim().to_string();
            continue;
        }
        match line {
            "components:" => {
                section = Section::Components;
                continue;
            }
            "sigma:" => {
                section = Section::Sigma;
                continue;
            }
            _ => {}
        }
        match section {
            Section::None => return Err(bad(n, "expected `components:` first")),
            Section::Components => {
                let (label, rest) = line
                    .split_once('=')
                    .ok_or_else(|| bad(n, "expected `label = kind data`"))?;
                let label = label.trim().to_string();
                if label.is_empty() || labels.contains(&label) {
                    return Err(bad(n, "missing or duplicate label"));
                }
                let rest = rest.trim();
                let (kind, data) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| bad(n, "expected a kind and its data"))?;
                let comp = match kind {
                    "vline" => CurveComponent::VLine(parse_point(data)?),
                    "hline" => CurveComponent::HLine(parse_point(data)?),
                    "graph" => CurveComponent::Graph(Mobius::new(parse_matrix(data.trim())?)?),
                    other => return Err(bad(n, &format!("unknown component kind `{other}`"))),
                };
                labels.push(label);
                components.push(comp);
            }
            Section::Sigma => {
                let (src, rest) = line
                    .split_once("->")
                    .ok_or_else(|| bad(n, "expected `source -> target data`"))?;
                let rest = rest.trim();
                let (tgt, data) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| bad(n, "expected a target and its data"))?;
                let idx = |l: &str| {
                    labels
                        .iter()
                        .position(|x| x == l.trim())
                        .ok_or_else(|| bad(n, &format!("unknown label `{}`", l.trim())))
                };
                let (s, t) = (idx(src)?, idx(tgt)?);
                let data = data.trim();
                let image = if let Some(pt) = data.strip_prefix("point") {
                    Image::Const(parse_point(pt)?)
                } else {
                    Image::Map(Mobius::new(parse_matrix(data)?)?)
                };
                sigma.push(piece(s, t, image));
            }
        }
    }
    if components.is_empty() {
        return Err(Error::InvalidPair("no components".into()));
    }
    Ok((
        GeometricPair {
            labels,
            components,
            sigma,
            pattern,
        },
        assumes,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn sigma_evaluation_examples() {
        let a = sym("alpha");
        let l = sym("lambda");
        let asm = Assumptions::new().assume_nonzero(&a);
        let pair = sprime_i(&a);
        let p = ProjPoint::new(s(1), l.clone()).unwrap();
        let (q, r) = apply_sigma(&pair, H, &p, &ProjPoint::p(), &asm).unwrap();
        assert_eq!(q, ProjPoint::p());
        assert_eq!(r, ProjPoint::new(s(1), &a * &l).unwrap());
        let fl = fl_ii(&a, &sym("beta"));
        let u = ProjPoint::new(sym("gamma"), s(3)).unwrap();
        let (q, r) = apply_sigma(&fl, 2, &ProjPoint::p(), &u, &asm).unwrap();
        assert_eq!((q, r), (u.clone(), ProjPoint::q()));
        assert_eq!(
            apply_sigma(&fl, 2, &ProjPoint::q(), &u, &asm),
            Err(Error::PointNotOnComponent)
        );
    }

    #[test]
    fn graph_graph_intersections() {
        let asm = Assumptions::new();
        let a = CurveComponent::Graph(Mobius::identity());
        let b = CurveComponent::Graph(Mobius::swap());
        let pts = intersect(&a, &b, &asm).unwrap();
        assert_eq!(pts.len(), 2);
        for (p, q) in &pts {
            assert!(a.contains(p, q, &asm).unwrap() && b.contains(p, q, &asm).unwrap());
        }
        // τ_{1,1} meets the identity graph only at P.
        let c = CurveComponent::Graph(Mobius::tau11());
        let pts = intersect(&a, &c, &asm).unwrap();
        assert_eq!(pts, vec![(ProjPoint::p(), ProjPoint::p())]);
        // Irrational fixed points: (1 2; 1 0) has eigenvalues 1 ± sqrt(3).
        let d = CurveComponent::Graph(Mobius::of(Mat2::ints(1, 2, 1, 0)));
        let pts = intersect(&a, &d, &asm).unwrap();
        assert_eq!(pts.len(), 2);
        for (p, q) in &pts {
            assert!(d.contains(p, q, &asm).unwrap());
        }
    }

    #[test]
    fn transport_examples() {
        let asm = Assumptions::new();
        let rho = Mobius::of(Mat2::ints(2, 1, 1, 1));
        let g = CurveComponent::Graph(Mobius::swap());
        let want = CurveComponent::Graph(rho.compose(&Mobius::swap()).compose(&rho.inverse()));
        assert!(g.transport(&rho, &rho).eq_under(&want, &asm).unwrap());
        let pair = sprime_i(&s(3));
        let id = Mobius::identity();
        assert_eq!(transport(&pair, &id, &id).unwrap(), pair);
        let phi = Mobius::of(Mat2::ints(1, 1, 0, 1));
        let c = CurveComponent::Graph(Mobius::identity()).transport(&id, &phi);
        assert!(c.eq_under(&CurveComponent::Graph(phi), &asm).unwrap());
    }

    #[test]
    fn pair_spec_round_trip() {
        let spec = "components:\n  h = hline (1,0)\n  v = vline (1,0)\n  c = graph [[0,1],[1,0]]\n\
                    sigma:\n  h -> v [[1,0],[0,alpha]]\n  v -> h point (1,0)\n  c -> c [[1,0],[0,1]]\n";
        let (pair, _) = parse_pair_spec(spec).unwrap();
        let mut want = sprime_i(&sym("alpha"));
        want.pattern = "custom".into();
        assert_eq!(pair, want);
        let (again, _) = parse_pair_spec(&pair.to_string()).unwrap();
        assert_eq!(again, pair);
        assert!(parse_pair_spec("sigma:\n").is_err());
    }
}
