//! Types of the classification, their normal-form relations, and the
//! isomorphism and Morita-equivalence predicates between instances.
//!
//! Types with a point scheme that is not a union of lines through a point
//! (S′, T′₁, T′₂, FL₁, FL₂) carry a geometric pair, and isomorphism is decided
//! by solving for a Möbius transformation that carries one pair to the
//! other. The remaining types use closed forms.

mod morita;
mod solver;
mod tables;
mod wl;

use std::fmt;

use crate::assume::{Assumptions, Decision};
use crate::error::{Error, Result};
use crate::exprparse::{parse_ncpoly, parse_scalar};
use crate::freealg::{Mat2, NCPoly};
use crate::geometry::{fl_i, fl_ii, sprime_i, tprime1_i, tprime2_i, GeometricPair};
use crate::poly::Var;
use crate::scalars::{declare_param, Scalar};

pub use morita::{proof_sequences, verify_morita_sequence, MobiusSequence, ProofSequence};
pub use solver::{solve_equations, stabilizer_family, StabilizerShape};
pub use tables::{check_regularity, reproduce_table, table3_branches, TableId};
pub use wl::{
    b1_relations, b2_relations, omega_b, pgl2_conjugate, twist_conjugation_holds, twl_relations,
    wl_invariant, wl_iso,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTag {
    P,
    P1,
    P2,
    S,
    S1,
    S2,
    T,
    T1,
    T2,
    SPrime,
    TPrime,
    TPrime1,
    TPrime2,
    FL,
    FL1,
    FL2,
    WL,
    WL1,
    WL2,
    TWL,
}

pub const ALL_TAGS: [TypeTag; 20] = [
    TypeTag::P,
    TypeTag::P1,
    TypeTag::P2,
    TypeTag::S,
    TypeTag::S1,
    TypeTag::S2,
    TypeTag::T,
    TypeTag::T1,
    TypeTag::T2,
    TypeTag::SPrime,
    TypeTag::TPrime,
    TypeTag::TPrime1,
    TypeTag::TPrime2,
    TypeTag::FL,
    TypeTag::FL1,
    TypeTag::FL2,
    TypeTag::WL,
    TypeTag::WL1,
    TypeTag::WL2,
    TypeTag::TWL,
];

impl TypeTag {
    /// Accepts `S'`, `S′`, `sp`, `T'1`, `tp1`, `FL_2` and similar spellings.
    pub fn parse(tag: &str) -> Result<TypeTag> {
        let t: String = tag
            .chars()
            .map(|c| match c {
                '′' => '\'',
                '₁' => '1',
                '₂' => '2',
                c => c,
            })
            .filter(|c| !matches!(c, '_' | ' ' | '-'))
            .collect::<String>()
            .to_ascii_lowercase();
        use TypeTag::*;
        Ok(match t.as_str() {
            "p" => P,
            "p1" => P1,
            "p2" => P2,
            "s" => S,
            "s1" => S1,
            "s2" => S2,
            "t" => T,
            "t1" => T1,
            "t2" => T2,
            "s'" | "sp" | "sprime" => SPrime,
            "t'" | "tp" | "tprime" => TPrime,
            "t'1" | "tp1" | "tprime1" => TPrime1,
            "t'2" | "tp2" | "tprime2" => TPrime2,
            "fl" => FL,
            "fl1" => FL1,
            "fl2" => FL2,
            "wl" => WL,
            "wl1" => WL1,
            "wl2" => WL2,
            "twl" => TWL,
            _ => return Err(Error::UnknownType(tag.to_string())),
        })
    }

    pub fn name(self) -> &'static str {
        use TypeTag::*;
        match self {
            P => "P",
            P1 => "P1",
            P2 => "P2",
            S => "S",
            S1 => "S1",
            S2 => "S2",
            T => "T",
            T1 => "T1",
            T2 => "T2",
            SPrime => "S'",
            TPrime => "T'",
            TPrime1 => "T'1",
            TPrime2 => "T'2",
            FL => "FL",
            FL1 => "FL1",
            FL2 => "FL2",
            WL => "WL",
            WL1 => "WL1",
            WL2 => "WL2",
            TWL => "TWL",
        }
    }

    /// Parameter names, in the order instances list them.
    pub fn params(self) -> &'static [&'static str] {
        use TypeTag::*;
        match self {
            P1 | T1 | TPrime1 | TPrime2 | FL1 | WL1 => &["alpha"],
            S | S1 | S2 | FL | FL2 => &["alpha", "beta"],
            _ => &[],
        }
    }

    /// The coarse type used for Morita equivalence.
    pub fn morita_family(self) -> TypeTag {
        use TypeTag::*;
        match self {
            P | P1 | P2 => P,
            S | S1 | S2 => S,
            T | T1 | T2 => T,
            SPrime => SPrime,
            TPrime | TPrime1 | TPrime2 => TPrime,
            FL | FL1 | FL2 => FL,
            WL | WL1 | WL2 => WL,
            TWL => TWL,
        }
    }

    /// Normal-form relations with the parameters named `alpha`, `beta`.
    fn relation_text(self) -> [&'static str; 2] {
        use TypeTag::*;
        match self {
            P => ["x^2*y - y*x^2", "x*y^2 - y^2*x"],
            P1 => ["x^2*y - alpha*y*x^2", "x*y^2 - alpha*y^2*x"],
            P2 => ["x^2*y - y*x^2 + y*x*y", "x*y^2 - y^2*x + y^3"],
            S | S1 => [
                "alpha*beta*x^2*y + (alpha+beta)*x*y*x + y*x^2",
                "alpha*beta*x*y^2 + (alpha+beta)*y*x*y + y^2*x",
            ],
            S2 => [
                "x*y^2 + y^2*x + (alpha+beta)*x^3",
                "x^2*y + y*x^2 + (1/alpha + 1/beta)*y^3",
            ],
            T => [
                "x^2*y - 2*x*y*x + y*x^2 - 2*y*x*y + 2*x*y^2",
                "x*y^2 - 2*y*x*y + y^2*x",
            ],
            // The T1 parameter is called β in the normal form.
            T1 => [
                "x^2*y - 2*x*y*x + y*x^2 - 2*(2*alpha-1)*y*x*y + 2*(2*alpha-1)*x*y^2 + 2*alpha*(alpha-1)*y^3",
                "x*y^2 - 2*y*x*y + y^2*x",
            ],
            T2 => [
                "x^2*y + 2*x*y*x + y*x^2 + 2*y^3",
                "x*y^2 + 2*y*x*y + y^2*x",
            ],
            SPrime => ["x*y^2 - y^2*x", "x^2*y + y*x^2 - 2*y^3"],
            TPrime => ["x*y^2 - y^2*x", "x^2*y - y*x^2 + y*x*y - x*y^2"],
            TPrime1 => [
                "x*y^2 - y^2*x",
                "x^2*y - y*x^2 + alpha*y*x*y - alpha*x*y^2",
            ],
            TPrime2 => [
                "x*y^2 - y^2*x + 2*y^3",
                "x^2*y - y*x^2 - alpha*x*y^2 + alpha*y*x*y + 2*y^2*x - (alpha+2)*y^3",
            ],
            FL | FL2 => ["-alpha*x^3 + y*x*y", "beta*x*y*x - y^3"],
            FL1 => ["x*y^2 + alpha*y^2*x", "x^2*y - alpha*y*x^2"],
            WL => ["x*y^2 + y^2*x - 2*y*x*y", "x^2*y + y*x^2 - 2*x*y*x"],
            WL1 => [
                "alpha^2*x*y^2 + y^2*x - 2*alpha*y*x*y",
                "alpha^2*x^2*y + y*x^2 - 2*alpha*x*y*x",
            ],
            WL2 => [
                "x*y^2 + y^2*x - 2*y*x*y",
                "x^2*y + y*x^2 - 2*x*y*x + 4*x*y^2 - 4*y*x*y + 2*y^3",
            ],
            TWL => ["x*y^2 + y^2*x", "x^2*y + y*x^2 + y^3"],
        }
    }

    /// Expressions required to be nonzero.
    fn condition_text(self) -> &'static [&'static str] {
        use TypeTag::*;
        match self {
            P1 | TPrime1 | FL1 | WL1 => &["alpha"],
            S | S1 | S2 => &["alpha", "beta", "alpha - beta", "alpha + beta"],
            TPrime2 => &["alpha - 2"],
            FL | FL2 => &["alpha", "beta", "alpha - beta"],
            _ => &[],
        }
    }

    fn default_value(self, name: &str) -> Option<Scalar> {
        (self == TypeTag::TPrime1 && name == "alpha").then(Scalar::one)
    }

    /// Tags whose isomorphism test runs through the geometric pair.
    pub fn is_geometric(self) -> bool {
        matches!(
            self,
            TypeTag::SPrime
                | TypeTag::TPrime
                | TypeTag::TPrime1
                | TypeTag::TPrime2
                | TypeTag::FL1
                | TypeTag::FL
                | TypeTag::FL2
        )
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn canonical_param(name: &str) -> &str {
    match name {
        "a" | "α" => "alpha",
        "b" | "β" => "beta",
        n => n,
    }
}

/// A type together with values (numeric or symbolic) for its parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraInstance {
    pub tag: TypeTag,
    values: Vec<Scalar>,
}

impl AlgebraInstance {
    /// Missing parameters become symbols of the same name. Names `a`, `b` are
    /// accepted for `alpha`, `beta`.
    pub fn new(tag: TypeTag, bindings: &[(String, Scalar)]) -> Result<AlgebraInstance> {
        for (n, _) in bindings {
            if !tag.params().contains(&canonical_param(n)) {
                return Err(Error::UnknownSymbol(n.clone()));
            }
        }
        let values = tag
            .params()
            .iter()
            .map(|&p| {
                bindings
                    .iter()
                    .rev()
                    .find(|(n, _)| canonical_param(n) == p)
                    .map(|(_, v)| v.clone())
                    .or_else(|| tag.default_value(p))
                    .unwrap_or_else(|| Scalar::param(p))
            })
            .collect();
        let inst = AlgebraInstance { tag, values };
        inst.assumptions()?;
        Ok(inst)
    }

    /// Parameters as plain symbols `alpha`, `beta`.
    pub fn generic(tag: TypeTag) -> AlgebraInstance {
        AlgebraInstance {
            tag,
            values: tag.params().iter().map(|p| Scalar::param(p)).collect(),
        }
    }

    /// Parameters as primed symbols `alpha'`, `beta'`.
    pub fn generic_primed(tag: TypeTag) -> AlgebraInstance {
        AlgebraInstance {
            tag,
            values: tag
                .params()
                .iter()
                .map(|p| Scalar::param(&format!("{p}'")))
                .collect(),
        }
    }

    /// Parse `alpha=2,beta=-1/3` style bindings.
    pub fn parse(tag: TypeTag, text: &str) -> Result<AlgebraInstance> {
        let mut bindings = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (n, v) = part.split_once('=').ok_or_else(|| Error::Syntax {
                pos: 0,
                msg: format!("expected name=value, found `{part}`"),
            })?;
            bindings.push((n.trim().to_string(), parse_scalar(v.trim())?));
        }
        AlgebraInstance::new(tag, &bindings)
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn param(&self, name: &str) -> Option<&Scalar> {
        let i = self
            .tag
            .params()
            .iter()
            .position(|&p| p == canonical_param(name))?;
        self.values.get(i)
    }

    fn alpha(&self) -> Scalar {
        self.param("alpha").cloned().unwrap_or_else(Scalar::one)
    }

    fn beta(&self) -> Scalar {
        self.param("beta").cloned().unwrap_or_else(Scalar::one)
    }

    fn binding_map(&self) -> Vec<(Var, Scalar)> {
        self.tag
            .params()
            .iter()
            .zip(&self.values)
            .map(|(p, v)| (declare_param(p).expect("valid name"), v.clone()))
            .collect()
    }

    fn bind(&self, s: &Scalar) -> Result<Scalar> {
        s.subs(&self.binding_map())
            .map_err(|_| Error::DenominatorVanishes)
    }

    pub fn relations(&self) -> Result<(NCPoly, NCPoly)> {
        let [t1, t2] = self.tag.relation_text();
        let g1 = parse_ncpoly(t1)?;
        let g2 = parse_ncpoly(t2)?;
        let map = self.binding_map();
        let bind = |g: &NCPoly| -> Result<NCPoly> {
            let mut out = NCPoly::zero(3);
            for (w, c) in g.terms() {
                out.add_term(*w, c.subs(&map).map_err(|_| Error::DenominatorVanishes)?);
            }
            Ok(out)
        };
        Ok((bind(&g1)?, bind(&g2)?))
    }

    /// The nonzero conditions, evaluated at this instance.
    pub fn conditions(&self) -> Vec<Scalar> {
        self.tag
            .condition_text()
            .iter()
            .map(|t| {
                self.bind(&parse_scalar(t).expect("condition parses"))
                    .expect("polynomial")
            })
            .collect()
    }

    /// The conditions as assumptions; fails if a condition is violated.
    pub fn assumptions(&self) -> Result<Assumptions> {
        let mut asm = Assumptions::new();
        for (c, text) in self.conditions().iter().zip(self.tag.condition_text()) {
            asm = asm
                .with_nonzero(c)
                .ok_or_else(|| Error::AssumptionViolated(format!("{text} != 0")))?;
        }
        Ok(asm)
    }

    /// The geometric pair of a type with a non-linear point scheme.
    pub fn pair(&self) -> Option<GeometricPair> {
        let one = Scalar::one();
        let a = self.alpha();
        match self.tag {
            TypeTag::SPrime => Some(sprime_i(&Scalar::from_int(-1))),
            TypeTag::TPrime => Some(tprime1_i(&one, &one, &one)),
            TypeTag::TPrime1 => Some(tprime1_i(&one, &a, &one)),
            TypeTag::TPrime2 => Some(tprime2_i(&a, &one)),
            TypeTag::FL1 => Some(fl_i(&a, &(-&a))),
            TypeTag::FL | TypeTag::FL2 => Some(fl_ii(&a, &self.beta())),
            _ => None,
        }
    }

    /// The point `(α : β)` of ℙ¹ classifying the FL class; FL₁ sits at `(1 : −1)`.
    pub fn fl_point(&self) -> Option<(Scalar, Scalar)> {
        match self.tag {
            TypeTag::FL1 => Some((Scalar::one(), Scalar::from_int(-1))),
            TypeTag::FL | TypeTag::FL2 => Some((self.alpha(), self.beta())),
            _ => None,
        }
    }
}

impl fmt::Display for AlgebraInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        if !self.values.is_empty() {
            let parts: Vec<String> = self
                .tag
                .params()
                .iter()
                .zip(&self.values)
                .map(|(p, v)| format!("{p}={v}"))
                .collect();
            write!(f, "({})", parts.join(", "))?;
        }
        Ok(())
    }
}

/// Declare the symbols the tables use, in a fixed order, so that term order
/// in printed output does not depend on which parallel row runs first.
pub fn declare_standard_symbols() {
    for name in [
        "alpha", "beta", "gamma", "delta", "alpha'", "beta'", "i", "n", "t", "_rho_b", "_rho_c",
        "_rho_d",
    ] {
        declare_param(name).expect("valid name");
    }
}

/// Merge the nonzero conditions of two assumption sets.
pub fn merge(a: &Assumptions, b: &Assumptions) -> Result<Assumptions> {
    let mut out = a.clone();
    for (v, s) in b.substitutions() {
        out = out
            .with_sub(*v, s)
            .ok_or_else(|| Error::AssumptionViolated(format!("{s}")))?;
    }
    for p in b.nonzero_polys() {
        let s = Scalar::from_poly(p.clone());
        out = out
            .with_nonzero(&s)
            .ok_or_else(|| Error::AssumptionViolated(format!("{s} != 0")))?;
    }
    Ok(out)
}

/// Outcome of an isomorphism test.
#[derive(Clone, Debug)]
pub struct IsoResult {
    pub isomorphic: bool,
    /// A Möbius transformation carrying the first pair to the second.
    pub witness: Option<Mat2>,
    pub note: String,
}

/// One branch of the symbolic isomorphism condition: the parameter
/// substitutions and nonzero conditions under which a transformation exists.
#[derive(Clone, Debug)]
pub struct IsoBranch {
    pub assumptions: Assumptions,
    pub witness: Mat2,
}

/// Whether `a` and `b` are isomorphic. Distinct types are never isomorphic.
pub fn iso_condition(a: &AlgebraInstance, b: &AlgebraInstance) -> Result<IsoResult> {
    if a.tag != b.tag {
        return Ok(IsoResult {
            isomorphic: false,
            witness: None,
            note: format!("types {} and {} are not isomorphic", a.tag, b.tag),
        });
    }
    let asm = merge(&a.assumptions()?, &b.assumptions()?)?;
    if a.tag.is_geometric() {
        let branches = solver::iso_branches(a, b, &asm)?;
        // Numeric instances leave no undecided branch behind; symbolic ones
        // count as isomorphic only if a branch holds without extra conditions.
        for br in &branches {
            if br
                .assumptions
                .substitutions()
                .iter()
                .all(|(v, _)| solver::is_unknown(*v))
            {
                return Ok(IsoResult {
                    isomorphic: true,
                    witness: Some(br.witness.clone()),
                    note: "transformation found".into(),
                });
            }
        }
        return Ok(IsoResult {
            isomorphic: false,
            witness: None,
            note: if branches.is_empty() {
                "no transformation carries one geometric pair to the other".into()
            } else {
                "isomorphic only under extra parameter conditions".into()
            },
        });
    }
    let iso = iso_closed_form(a, b, &asm)?;
    Ok(IsoResult {
        isomorphic: iso,
        witness: None,
        note: "closed-form parameter condition".into(),
    })
}

/// The symbolic isomorphism condition for a geometric type, one branch per
/// case; `None` for types decided by a closed form.
pub fn iso_condition_symbolic(tag: TypeTag) -> Result<Option<Vec<IsoBranch>>> {
    if !tag.is_geometric() {
        return Ok(None);
    }
    let a = AlgebraInstance::generic(tag);
    let b = AlgebraInstance::generic_primed(tag);
    let asm = merge(&a.assumptions()?, &b.assumptions()?)?;
    solver::iso_branches(&a, &b, &asm).map(Some)
}

fn zero(asm: &Assumptions, x: &Scalar) -> Result<bool> {
    asm.is_zero(x)
}

fn iso_closed_form(a: &AlgebraInstance, b: &AlgebraInstance, asm: &Assumptions) -> Result<bool> {
    use TypeTag::*;
    let (x, y) = (a.alpha(), a.beta());
    let (u, v) = (b.alpha(), b.beta());
    let one = Scalar::one();
    Ok(match a.tag {
        P1 | WL1 => zero(asm, &(&u - &x))? || zero(asm, &(&(&u * &x) - &one))?,
        S | S1 => {
            let (xi, yi) = (x.inv(), y.inv());
            let same = |p: &Scalar, q: &Scalar| -> Result<bool> {
                Ok(zero(asm, &(&u - p))? && zero(asm, &(&v - q))?)
            };
            same(&x, &y)? || same(&y, &x)? || same(&xi, &yi)? || same(&yi, &xi)?
        }
        S2 => zero(asm, &(&(&u * &y) - &(&x * &v)))? || zero(asm, &(&(&u * &x) - &(&v * &y)))?,
        T1 => zero(asm, &(&u - &x))? || zero(asm, &(&u + &x))?,
        _ => true,
    })
}

/// Whether `a` and `b` are Morita equivalent (graded module categories
/// equivalent). Distinct coarse types never are.
pub fn morita_condition(a: &AlgebraInstance, b: &AlgebraInstance) -> Result<bool> {
    if a.tag.morita_family() != b.tag.morita_family() {
        return Ok(false);
    }
    let asm = merge(&a.assumptions()?, &b.assumptions()?)?;
    match a.tag.morita_family() {
        TypeTag::FL => {
            let (p, q) = (a.fl_point().expect("FL"), b.fl_point().expect("FL"));
            let same = &(&p.0 * &q.1) - &(&p.1 * &q.0);
            let swapped = &(&p.1 * &q.1) - &(&p.0 * &q.0);
            Ok(zero(&asm, &same)? || zero(&asm, &swapped)?)
        }
        TypeTag::S => {
            let r = |i: &AlgebraInstance| &i.alpha() / &i.beta();
            let (r1, r2) = (r(a), r(b));
            Ok(zero(&asm, &(&r1 - &r2))? || zero(&asm, &(&(&r1 * &r2) - &Scalar::one()))?)
        }
        _ => Ok(true),
    }
}

/// `Decision` as a yes/no/undecided word, for reports.
pub(crate) fn decision_word(d: &Decision) -> &'static str {
    match d {
        Decision::Zero => "zero",
        Decision::NonZero => "nonzero",
        Decision::Unknown(_) => "undecided",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(tag: &str, text: &str) -> AlgebraInstance {
        AlgebraInstance::parse(TypeTag::parse(tag).unwrap(), text).unwrap()
    }

    #[test]
    fn tags_and_instances() {
        assert_eq!(TypeTag::parse("S′").unwrap(), TypeTag::SPrime);
        assert_eq!(TypeTag::parse("tp2").unwrap(), TypeTag::TPrime2);
        assert_eq!(TypeTag::parse("FL_2").unwrap(), TypeTag::FL2);
        assert!(matches!(TypeTag::parse("Q"), Err(Error::UnknownType(_))));
        for t in ALL_TAGS {
            assert_eq!(TypeTag::parse(t.name()).unwrap(), t);
            let (g1, g2) = AlgebraInstance::generic(t).relations().unwrap();
            assert_eq!((g1.degree(), g2.degree()), (3, 3));
        }
        assert!(matches!(
            AlgebraInstance::parse(TypeTag::FL2, "a=1,b=1"),
            Err(Error::AssumptionViolated(_))
        ));
        assert!(matches!(
            AlgebraInstance::parse(TypeTag::FL1, "gamma=1"),
            Err(Error::UnknownSymbol(_))
        ));
        assert_eq!(inst("T'1", "").to_string(), "T'1(alpha=1)");
    }

    #[test]
    fn iso_examples() {
        let r = iso_condition(&inst("FL1", "a=2"), &inst("FL1", "a=-1/2")).unwrap();
        assert!(r.isomorphic);
        assert!(r.witness.is_some());
        assert!(
            iso_condition(&inst("FL2", "a=1,b=2"), &inst("FL2", "a=3,b=6"))
                .unwrap()
                .isomorphic
        );
        assert!(
            !iso_condition(&inst("T'2", "a=0"), &inst("T'2", "a=1"))
                .unwrap()
                .isomorphic
        );
        assert!(
            !iso_condition(&inst("FL1", "a=2"), &inst("FL2", "a=1,b=-1"))
                .unwrap()
                .isomorphic
        );
        assert!(
            iso_condition(&inst("S1", "a=2,b=3"), &inst("S1", "a=1/3,b=1/2"))
                .unwrap()
                .isomorphic
        );
        assert!(
            !iso_condition(&inst("S1", "a=2,b=3"), &inst("S1", "a=2,b=5"))
                .unwrap()
                .isomorphic
        );
        assert!(
            iso_condition(&inst("T1", "a=3"), &inst("T1", "a=-3"))
                .unwrap()
                .isomorphic
        );
        assert!(
            iso_condition(&inst("WL1", "a=5"), &inst("WL1", "a=1/5"))
                .unwrap()
                .isomorphic
        );
    }

    #[test]
    fn stabilizers() {
        let (shape, ms) = stabilizer_family(TypeTag::TPrime2).unwrap();
        assert_eq!(shape, StabilizerShape::Tau11);
        assert_eq!(ms.len(), 1);
        assert_eq!(stabilizer_family(TypeTag::FL1).unwrap().1.len(), 2);
        assert!(matches!(
            stabilizer_family(TypeTag::WL1),
            Err(Error::UnknownType(_))
        ));
    }

    #[test]
    fn morita_examples() {
        assert!(morita_condition(&inst("FL2", "a=1,b=2"), &inst("FL2", "a=2,b=1")).unwrap());
        assert!(!morita_condition(&inst("FL2", "a=1,b=2"), &inst("FL2", "a=1,b=3")).unwrap());
        assert!(morita_condition(&inst("FL1", "a=5"), &inst("FL2", "a=-2,b=2")).unwrap());
        assert!(morita_condition(&inst("S2", "a=1,b=2"), &inst("S1", "a=4,b=2")).unwrap());
        assert!(!morita_condition(&inst("S'", ""), &inst("T'", "")).unwrap());
        for t in ALL_TAGS {
            let a = AlgebraInstance::generic(t);
            assert!(morita_condition(&a, &a).unwrap());
        }
    }

    #[test]
    fn sequences_and_their_perturbations() {
        for s in proof_sequences() {
            assert!(
                verify_morita_sequence(&s.a, &s.b, &s.sequence, &s.assumptions)
                    .unwrap()
                    .ok,
                "{}",
                s.name
            );
            let mut bad = s.sequence.clone();
            bad.residues[0] = bad.residues[0].mul(&Mat2::ints(1, 1, 0, 3));
            assert!(
                !verify_morita_sequence(&s.a, &s.b, &bad, &s.assumptions)
                    .unwrap()
                    .ok,
                "{}",
                s.name
            );
        }
        let s = &proof_sequences()[0];
        let mut empty = s.sequence.clone();
        empty.residues.clear();
        assert!(matches!(
            verify_morita_sequence(&s.a, &s.b, &empty, &s.assumptions),
            Err(Error::InvalidSequence(_))
        ));
    }
}
