//! Sequences of Möbius transformations `(ρ_i)_{i∈ℤ}` realizing twisted
//! equivalences of geometric pairs: `σ_b ∘ (ρ_i × ρ_{i+1}) = (ρ_{i+1} × ρ_{i+2}) ∘ σ_a`
//! and `(ρ_i × ρ_{i+1})(E_a) = E_b` for every `i`.
//!
//! A sequence is periodic up to a shift of symbols: `ρ_{pn+r}` is residue `r`
//! with the block index symbol replaced by `n` and a power symbol `t`
//! standing for `base^n`. Checking the residues with symbolic `n` covers
//! every `i`.

use crate::assume::{Assumptions, Decision};
use crate::error::{Error, Result};
use crate::freealg::Mat2;
use crate::geometry::{commutes, fl_i, fl_ii, tprime1_i, tprime2_i, GeometricPair, Mobius};
use crate::poly::Var;
use crate::scalars::{declare_param, Scalar};

#[derive(Clone, Debug)]
pub struct MobiusSequence {
    pub period: usize,
    pub residues: Vec<Mat2>,
    /// Block index `n` with `i = period·n + r`.
    pub index: Option<Var>,
    /// A symbol `t` standing for `base^n`.
    pub power: Option<(Var, Scalar)>,
}

impl MobiusSequence {
    pub fn constant_period(residues: Vec<Mat2>) -> MobiusSequence {
        MobiusSequence {
            period: residues.len(),
            residues,
            index: None,
            power: None,
        }
    }

    /// `ρ_j` for `j ≥ 0`, in terms of the block index of `ρ_0`.
    pub fn rho(&self, j: usize) -> Mat2 {
        let (k, r) = (j / self.period, j % self.period);
        let mut map: Vec<(Var, Scalar)> = Vec::new();
        if let Some(n) = self.index {
            map.push((n, &Scalar::var(n) + &Scalar::from_int(k as i64)));
        }
        if let Some((t, base)) = &self.power {
            map.push((*t, &Scalar::var(*t) * &base.pow(k as i64)));
        }
        self.residues[r].map_entries(|e| e.subs(&map).expect("shift keeps denominators"))
    }

    fn check_invertible(&self, m: &Mat2, asm: &Assumptions) -> Result<bool> {
        let det = m.det();
        match asm.decide(&det) {
            Decision::NonZero => Ok(true),
            Decision::Zero => Ok(false),
            Decision::Unknown(p) => {
                // A polynomial in the index alone with no integer root.
                let Some(n) = self.index else {
                    return Err(Error::CaseSplitRequired(p));
                };
                if p.vars() != vec![n] {
                    return Err(Error::CaseSplitRequired(p));
                }
                Ok(p.rational_roots(n).iter().all(|r| !r.is_integer()))
            }
        }
    }
}

/// Outcome of [`verify_morita_sequence`].
#[derive(Clone, Debug)]
pub struct SequenceCheck {
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Check the twisted-equivalence identities for every residue.
pub fn verify_morita_sequence(
    a: &GeometricPair,
    b: &GeometricPair,
    seq: &MobiusSequence,
    asm: &Assumptions,
) -> Result<SequenceCheck> {
    if seq.residues.is_empty() || seq.residues.len() != seq.period {
        return Err(Error::InvalidSequence(
            "period must equal the number of residues".into(),
        ));
    }
    let mut asm = asm.clone();
    if let Some((t, _)) = &seq.power {
        asm = asm
            .with_nonzero(&Scalar::var(*t))
            .ok_or_else(|| Error::InvalidSequence("power symbol is zero".into()))?;
    }
    let mut failures = Vec::new();
    for r in 0..seq.period {
        let m = seq.rho(r);
        if !seq.check_invertible(&m, &asm)? {
            failures.push(format!("rho_{r} = {m} is singular for some index"));
            continue;
        }
        let rs: Vec<Mobius> = (r..r + 3).map(|j| Mobius::of(seq.rho(j))).collect();
        let eqs = commutes(a, b, &rs[0], &rs[1], &rs[2], &asm)?;
        for e in eqs {
            match asm.decide(&e) {
                Decision::Zero => {}
                d => {
                    failures.push(format!("residue {r}: {e} is {}", super::decision_word(&d)));
                    break;
                }
            }
        }
    }
    Ok(SequenceCheck {
        ok: failures.is_empty(),
        failures,
    })
}

/// A sequence together with the pairs it relates.
#[derive(Clone, Debug)]
pub struct ProofSequence {
    pub name: String,
    pub a: GeometricPair,
    pub b: GeometricPair,
    pub sequence: MobiusSequence,
    pub assumptions: Assumptions,
}

fn m(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Mat2 {
    Mat2::new(a, b, c, d)
}

/// The sequences behind the Morita classification: every T′ algebra is
/// equivalent to T′₂ at α = 0, FL₁ instances to each other, FL₁ to FL₂ at
/// `(1 : −1)`, and FL₂ at `(β : γ)` to FL₂ at `(γ : β)`.
pub fn proof_sequences() -> Vec<ProofSequence> {
    let (zero, one) = (Scalar::zero(), Scalar::one());
    let i = declare_param("i").expect("name");
    let n = declare_param("n").expect("name");
    let t = declare_param("t").expect("name");
    let alpha = Scalar::param("alpha");
    let (beta, gamma) = (Scalar::param("beta"), Scalar::param("gamma"));
    let iv = Scalar::var(i);
    let half = Scalar::frac(1, 2);
    let mut out = Vec::new();

    out.push(ProofSequence {
        name: "T'1 to T'2(0)".into(),
        a: tprime1_i(&one, &one, &one),
        b: tprime2_i(&zero, &one),
        sequence: MobiusSequence {
            period: 1,
            residues: vec![m(one.clone(), -&(&iv * &half), zero.clone(), -&half)],
            index: Some(i),
            power: None,
        },
        assumptions: Assumptions::new(),
    });

    let a2 = &alpha - &Scalar::from_int(2);
    out.push(ProofSequence {
        name: "T'2(alpha) to T'2(0)".into(),
        a: tprime2_i(&alpha, &one),
        b: tprime2_i(&zero, &one),
        sequence: MobiusSequence {
            period: 1,
            residues: vec![m(
                one.clone(),
                -&(&(&iv * &alpha) * &half),
                zero.clone(),
                -&(&a2 * &half),
            )],
            index: Some(i),
            power: None,
        },
        assumptions: Assumptions::new().assume_nonzero(&a2),
    });

    let step = Mat2::diag(one.clone(), Scalar::var(t));
    out.push(ProofSequence {
        name: "FL1(alpha) to FL1(1)".into(),
        a: fl_i(&alpha, &(-&alpha)),
        b: fl_i(&one, &Scalar::from_int(-1)),
        sequence: MobiusSequence {
            period: 2,
            residues: vec![step.clone(), step],
            index: Some(n),
            power: Some((t, alpha.inv())),
        },
        assumptions: Assumptions::new().assume_nonzero(&alpha),
    });

    let mu1 = Mat2::swap();
    let mum1 = m(
        zero.clone(),
        one.clone(),
        Scalar::from_int(-1),
        zero.clone(),
    );
    let id = Mat2::identity();
    let flip = Mat2::ints(1, 0, 0, -1);
    out.push(ProofSequence {
        name: "FL1 to FL2(1:-1)".into(),
        a: fl_i(&one, &Scalar::from_int(-1)),
        b: fl_ii(&one, &Scalar::from_int(-1)),
        sequence: MobiusSequence::constant_period(vec![
            id.clone(),
            id.clone(),
            mu1.clone(),
            mum1.clone(),
            flip.clone(),
            flip,
            mum1,
            mu1,
        ]),
        assumptions: Assumptions::new(),
    });

    out.push(ProofSequence {
        name: "FL2(beta:gamma) to FL2(gamma:beta)".into(),
        a: fl_ii(&beta, &gamma),
        b: fl_ii(&gamma, &beta),
        sequence: MobiusSequence::constant_period(vec![
            Mat2::swap(),
            id.clone(),
            m(zero.clone(), one.clone(), &gamma * &beta, zero),
            id,
        ]),
        assumptions: Assumptions::new()
            .assume_nonzero(&beta)
            .assume_nonzero(&gamma)
            .assume_nonzero(&(&beta - &gamma)),
    });
    out
}
