//! Solving `σ_b ∘ (ρ×ρ) = (ρ×ρ) ∘ σ_a` for a Möbius transformation ρ that
//! preserves the shape of E.
//!
//! ρ ranges over the normalized stabilizer of E: `(1 b; 0 d)` when the graph
//! is the diagonal, `(1 b; 0 1)` for the graph of `τ_{1,1}`, and `diag(1, d)`
//! or `(0 1; c 0)` for a quadrangle. The S′ triangle uses the first family,
//! which contains its stabilizer (every ρ must fix the common point of the two
//! lines). Unknown entries are reserved symbols `_rho_*`; solving records
//! them as substitutions.

use crate::assume::{Assumptions, Decision};
use crate::error::{Error, Result};
use crate::freealg::Mat2;
use crate::geometry::{catalog_e, commutes, CurveComponent, GeometricPair, Mobius, SchemeType};
use crate::poly::{Poly, Var};
use crate::scalars::{adjoin_sqrt, declare_param, symbol_name, Scalar};

use super::{AlgebraInstance, IsoBranch, TypeTag};

const MAX_DEPTH: usize = 24;

fn unknown(name: &str) -> Var {
    declare_param(name).expect("reserved unknown name")
}

pub(crate) fn is_unknown(v: Var) -> bool {
    symbol_name(v).starts_with("_rho_")
}

/// Normalized stabilizers of the two shapes of E.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilizerShape {
    /// Triangle with the graph of the identity (or of the swap).
    Diagonal,
    /// Triangle with the graph of `τ_{1,1}`.
    Tau11,
    Quadrangle,
}

/// A matrix with unknown entries, the value each unknown takes when the
/// equations leave it free, and the entries required nonzero.
#[derive(Clone, Debug)]
pub(crate) struct Candidate {
    pub matrix: Mat2,
    pub unknowns: Vec<(Var, Scalar)>,
    pub nonzero: Vec<Scalar>,
}

impl StabilizerShape {
    pub fn of(pair: &GeometricPair) -> StabilizerShape {
        if pair.components.len() == 4 {
            return StabilizerShape::Quadrangle;
        }
        let tau11 = CurveComponent::Graph(Mobius::tau11());
        if pair
            .components
            .iter()
            .any(|c| c.eq_equations(&tau11).is_some_and(|e| e.is_empty()))
        {
            StabilizerShape::Tau11
        } else {
            StabilizerShape::Diagonal
        }
    }

    pub(crate) fn candidates(self) -> Vec<Candidate> {
        let (b, c, d) = (unknown("_rho_b"), unknown("_rho_c"), unknown("_rho_d"));
        let (one, zero) = (Scalar::one(), Scalar::zero());
        match self {
            StabilizerShape::Diagonal => vec![Candidate {
                matrix: Mat2::new(one.clone(), Scalar::var(b), zero, Scalar::var(d)),
                unknowns: vec![(b, Scalar::zero()), (d, one)],
                nonzero: vec![Scalar::var(d)],
            }],
            StabilizerShape::Tau11 => vec![Candidate {
                matrix: Mat2::new(one.clone(), Scalar::var(b), zero, one),
                unknowns: vec![(b, Scalar::zero())],
                nonzero: vec![],
            }],
            StabilizerShape::Quadrangle => vec![
                Candidate {
                    matrix: Mat2::diag(one.clone(), Scalar::var(d)),
                    unknowns: vec![(d, one.clone())],
                    nonzero: vec![Scalar::var(d)],
                },
                Candidate {
                    matrix: Mat2::new(zero.clone(), one.clone(), Scalar::var(c), zero),
                    unknowns: vec![(c, one)],
                    nonzero: vec![Scalar::var(c)],
                },
            ],
        }
    }

    /// The matrices with unknown entries.
    pub fn matrices(self) -> Vec<Mat2> {
        self.candidates().into_iter().map(|c| c.matrix).collect()
    }

    /// The E this shape stabilizes.
    pub fn components(self) -> Vec<CurveComponent> {
        match self {
            StabilizerShape::Diagonal => catalog_e(SchemeType::TPrime1, &Scalar::one()),
            StabilizerShape::Tau11 => catalog_e(SchemeType::TPrime2, &Scalar::one()),
            StabilizerShape::Quadrangle => catalog_e(SchemeType::FL, &Scalar::one()),
        }
    }

    /// Whether every member of the family maps E onto itself, with the
    /// unknown entries kept symbolic.
    pub fn verify(self) -> Result<bool> {
        let e = self.components();
        for cand in self.candidates() {
            let asm = cand
                .nonzero
                .iter()
                .fold(Assumptions::new(), |a, s| a.assume_nonzero(s));
            let rho = Mobius::of(cand.matrix.clone());
            for comp in &e {
                let moved = comp.transport(&rho, &rho);
                let mut found = false;
                for c in &e {
                    if moved.eq_under(c, &asm)? {
                        found = true;
                        break;
                    }
                }
                if !found {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The normalized stabilizer family of E for a type with a geometric pair.
pub fn stabilizer_family(tag: TypeTag) -> Result<(StabilizerShape, Vec<Mat2>)> {
    let pair = AlgebraInstance::generic(tag)
        .pair()
        .ok_or_else(|| Error::UnknownType(tag.name().to_string()))?;
    let shape = StabilizerShape::of(&pair);
    Ok((shape, shape.matrices()))
}

/// Solve polynomial equations for the given unknowns, splitting on
/// parameter conditions as needed. Each returned assumption set records the
/// solved unknowns as substitutions; parameter-only conditions appear as
/// parameter substitutions or nonzero conditions. Infeasible branches are
/// dropped.
pub fn solve_equations(
    eqs: &[Scalar],
    unknowns: &[Var],
    asm: &Assumptions,
) -> Result<Vec<Assumptions>> {
    let mut out = Vec::new();
    solve_rec(eqs, unknowns, asm, 0, &mut out)?;
    Ok(out)
}

fn mentions(p: &Poly, unknowns: &[Var]) -> bool {
    p.vars().iter().any(|v| unknowns.contains(v))
}

fn solve_rec(
    eqs: &[Scalar],
    unknowns: &[Var],
    asm: &Assumptions,
    depth: usize,
    out: &mut Vec<Assumptions>,
) -> Result<()> {
    let mut pending: Vec<Poly> = Vec::new();
    for e in eqs {
        match asm.decide(e) {
            Decision::Zero => {}
            Decision::NonZero => return Ok(()),
            Decision::Unknown(r) => pending.push(r),
        }
    }
    let Some(first) = pending.first() else {
        out.push(asm.clone());
        return Ok(());
    };
    if depth > MAX_DEPTH {
        return Err(Error::CaseSplitRequired(first.clone()));
    }
    // A condition on the parameters alone: keep only its zero branches.
    if let Some(r) = pending.iter().find(|r| !mentions(r, unknowns)) {
        let rs = Scalar::from_poly(r.clone());
        for child in asm.split_on(r)? {
            if child.decide(&rs) == Decision::Zero {
                solve_rec(eqs, unknowns, &child, depth + 1, out)?;
            }
        }
        return Ok(());
    }
    // Linear in an unknown with an invertible coefficient.
    for r in &pending {
        for &u in unknowns {
            if r.degree_in(u) == 1 {
                let cs = r.coeffs_in(u);
                let lead = Scalar::from_poly(cs[1].clone());
                if asm.decide(&lead) == Decision::NonZero {
                    let val = &(-&Scalar::from_poly(cs[0].clone())) / &lead;
                    if let Some(child) = asm.with_sub(u, &val) {
                        solve_rec(eqs, unknowns, &child, depth + 1, out)?;
                    }
                    return Ok(());
                }
            }
        }
    }
    // Quadratic with invertible leading coefficient and a discriminant free
    // of unknowns.
    for r in &pending {
        for &u in unknowns {
            if r.degree_in(u) != 2 {
                continue;
            }
            let cs: Vec<Scalar> = r.coeffs_in(u).into_iter().map(Scalar::from_poly).collect();
            if asm.decide(&cs[2]) != Decision::NonZero {
                continue;
            }
            let disc = &(&cs[1] * &cs[1]) - &(&Scalar::from_int(4) * &(&cs[2] * &cs[0]));
            if disc.symbols().iter().any(|v| unknowns.contains(v)) {
                continue;
            }
            let two_a = &Scalar::from_int(2) * &cs[2];
            let roots = if asm.decide(&disc) == Decision::Zero {
                vec![&(-&cs[1]) / &two_a]
            } else {
                let s = adjoin_sqrt(&asm.apply(&disc))?;
                vec![&(&(-&cs[1]) + &s) / &two_a, &(&(-&cs[1]) - &s) / &two_a]
            };
            for val in roots {
                if let Some(child) = asm.with_sub(u, &val) {
                    solve_rec(eqs, unknowns, &child, depth + 1, out)?;
                }
            }
            return Ok(());
        }
    }
    // Linear with a coefficient that may vanish: split on the coefficient.
    for r in &pending {
        for &u in unknowns {
            if r.degree_in(u) == 1 {
                let lead = r.coeffs_in(u)[1].clone();
                if mentions(&lead, unknowns) {
                    continue;
                }
                for child in asm.split_on(&lead)? {
                    solve_rec(eqs, unknowns, &child, depth + 1, out)?;
                }
                return Ok(());
            }
        }
    }
    Err(Error::CaseSplitRequired(first.clone()))
}

/// Every branch on which some stabilizer element carries the pair of `a`
/// to the pair of `b`.
pub(crate) fn iso_branches(
    a: &AlgebraInstance,
    b: &AlgebraInstance,
    asm: &Assumptions,
) -> Result<Vec<IsoBranch>> {
    let (Some(pa), Some(pb)) = (a.pair(), b.pair()) else {
        return Err(Error::InvalidPair(format!(
            "{} has no geometric pair",
            a.tag
        )));
    };
    let mut out = Vec::new();
    for cand in StabilizerShape::of(&pa).candidates() {
        let mut asm_c = asm.clone();
        for nz in &cand.nonzero {
            asm_c = asm_c.assume_nonzero(nz);
        }
        let rho = Mobius::of(cand.matrix.clone());
        let eqs = commutes(&pa, &pb, &rho, &rho, &rho, &asm_c)?;
        let vars: Vec<Var> = cand.unknowns.iter().map(|(v, _)| *v).collect();
        for leaf in solve_equations(&eqs, &vars, &asm_c)? {
            let witness = cand.matrix.map_entries(|e| {
                leaf.apply(e)
                    .subs(&cand.unknowns)
                    .expect("free unknowns take nonzero defaults")
            });
            out.push(IsoBranch {
                assumptions: leaf,
                witness,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_and_quadratic_systems() {
        let (u, w) = (unknown("_rho_b"), unknown("_rho_d"));
        let a = Scalar::param("alpha");
        // d² = α², b·d = 1 with α ≠ 0: two solutions.
        let eqs = vec![
            &(&Scalar::var(w) * &Scalar::var(w)) - &(&a * &a),
            &(&Scalar::var(u) * &Scalar::var(w)) - &Scalar::one(),
        ];
        let asm = Assumptions::new()
            .assume_nonzero(&a)
            .assume_nonzero(&Scalar::var(w));
        let sols = solve_equations(&eqs, &[u, w], &asm).unwrap();
        assert_eq!(sols.len(), 2);
        for s in &sols {
            for e in &eqs {
                assert!(s.is_zero(e).unwrap());
            }
        }
        // α·d = 1 and d = 2 forces α = 1/2.
        let eqs = vec![
            &(&a * &Scalar::var(w)) - &Scalar::one(),
            &Scalar::var(w) - &Scalar::from_int(2),
        ];
        let sols = solve_equations(
            &eqs,
            &[w],
            &Assumptions::new().assume_nonzero(&Scalar::var(w)),
        )
        .unwrap();
        assert_eq!(sols.len(), 1);
        assert!(sols[0].is_zero(&(&a - &Scalar::frac(1, 2))).unwrap());
    }
}
