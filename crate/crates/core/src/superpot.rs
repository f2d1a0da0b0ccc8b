//! Twisted superpotentials of degree 4, their derivation-quotient relations
//! and the relation matrix M(ω).

use crate::assume::{branch, Assumptions, Decision};
use crate::error::{Error, Result};
use crate::freealg::{Gen, Mat2, NCPoly};
use crate::linalg::{nullspace, rank, solve_combination, Row};
use crate::scalars::Scalar;

/// Summary of the superpotential checks for one ω.
#[derive(Clone, Debug)]
pub struct PotentialReport {
    pub omega: NCPoly,
    pub is_super: bool,
    pub twisting_matrix: Option<Mat2>,
    pub derivatives: (NCPoly, NCPoly),
    pub standard: bool,
}

fn check_quartic(omega: &NCPoly) -> Result<()> {
    if omega.degree() != 4 {
        return Err(Error::WrongDegree {
            expected: 4,
            found: omega.degree(),
        });
    }
    if omega.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(())
}

/// Whether every coefficient of `p` vanishes under `asm`.
pub fn vanishes(p: &NCPoly, asm: &Assumptions) -> Result<bool> {
    for (_, c) in p.terms() {
        if !asm.is_zero(c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_superpotential(omega: &NCPoly) -> Result<bool> {
    check_quartic(omega)?;
    Ok(omega.rotate()? == *omega)
}

/// The identity `(θ ⊗ id ⊗ id ⊗ id)(φ(ω)) = ω`.
pub fn satisfies_twist(omega: &NCPoly, theta: &Mat2, asm: &Assumptions) -> Result<bool> {
    let id = Mat2::identity();
    let lhs = omega
        .rotate()?
        .slot_map(&[theta.clone(), id.clone(), id.clone(), id])?;
    vanishes(&lhs.sub(omega), asm)
}

/// [`twisting_matrix_under`] with no assumptions.
pub fn twisting_matrix(omega: &NCPoly) -> Result<Option<Mat2>> {
    twisting_matrix_under(omega, &Assumptions::new())
}

/// A θ with `(θ ⊗ id³)(φ(ω)) = ω`, or `None` when the left and right
/// derivative spans differ.
pub fn twisting_matrix_under(omega: &NCPoly, asm: &Assumptions) -> Result<Option<Mat2>> {
    check_quartic(omega)?;
    let omega = omega.apply_assumptions(asm);
    if omega.is_zero() {
        return Err(Error::ZeroInput);
    }
    let dx = omega.left_derivative(Gen::X)?;
    let dy = omega.left_derivative(Gen::Y)?;
    let rx = omega.right_derivative(Gen::X)?;
    let ry = omega.right_derivative(Gen::Y)?;
    let left = vec![dx.to_vector(), dy.to_vector()];
    let right = vec![rx.to_vector(), ry.to_vector()];
    let rl = rank(&left, asm)?;
    if rank(&right, asm)? != rl {
        return Ok(None);
    }
    let theta = if rl == 2 {
        let (Some(c1), Some(c2)) = (
            solve_combination(&right, &left[0], asm)?,
            solve_combination(&right, &left[1], asm)?,
        ) else {
            return Ok(None);
        };
        // ∂_x ω = a ω∂_x + b ω∂_y, ∂_y ω = c ω∂_x + d ω∂_y.
        let [a, b] = [c1[0].clone(), c1[1].clone()];
        let [c, d] = [c2[0].clone(), c2[1].clone()];
        Mat2::new(a, c, b, d)
    } else {
        if !vanishes(&dx, asm)? {
            match degenerate_twist(&dx, &dy, &rx, &ry, asm)? {
                Some(t) => t,
                None => return Ok(None),
            }
        } else {
            // Only y-words lead; swap the generators and conjugate back.
            let sw = Mat2::swap();
            let swapped = omega.slot_map(&[sw.clone(), sw.clone(), sw.clone(), sw.clone()])?;
            match twisting_matrix_under(&swapped, asm)? {
                Some(t) => sw.mul(&t).mul(&sw),
                None => return Ok(None),
            }
        }
    };
    if !satisfies_twist(&omega, &theta, asm)? {
        return Ok(None);
    }
    Ok(Some(theta))
}

/// The rank-one case: ∂_y ω = α ∂_x ω, ω∂_x = λ ∂_x ω, ω∂_y = μ ∂_x ω.
fn degenerate_twist(
    dx: &NCPoly,
    dy: &NCPoly,
    rx: &NCPoly,
    ry: &NCPoly,
    asm: &Assumptions,
) -> Result<Option<Mat2>> {
    let base = vec![dx.to_vector()];
    let coef = |t: &NCPoly| -> Result<Option<Scalar>> {
        Ok(solve_combination(&base, &t.to_vector(), asm)?.map(|v| v[0].clone()))
    };
    let (Some(alpha), Some(lambda), Some(mu)) = (coef(dy)?, coef(rx)?, coef(ry)?) else {
        return Ok(None);
    };
    let one = Scalar::one;
    let zero = Scalar::zero;
    let a0 = asm.is_zero(&alpha)?;
    let l0 = asm.is_zero(&lambda)?;
    let theta = if a0 && !l0 {
        Mat2::new(lambda.inv(), -&(&mu / &lambda), zero(), one())
    } else if a0 {
        Mat2::new(zero(), one(), mu.inv(), zero())
    } else if l0 {
        Mat2::new(one(), zero(), mu.inv(), &alpha / &mu)
    } else if asm.is_zero(&mu)? {
        Mat2::new(lambda.inv(), &alpha / &lambda, zero(), one())
    } else {
        Mat2::new(lambda.inv(), zero(), zero(), &alpha / &mu)
    };
    Ok(Some(theta))
}

/// `(θ³ ⊗ θ² ⊗ θ ⊗ id)(ω)`.
pub fn ms_twist(omega: &NCPoly, theta: &Mat2) -> Result<NCPoly> {
    if theta.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let m = omega.degree();
    let maps: Vec<Mat2> = (0..m)
        .map(|i| theta.pow((m - 1 - i) as i64))
        .collect::<Result<_>>()?;
    omega.slot_map(&maps)
}

/// λ with `θ^{⊗4}(ω) = λ ω`, if any.
pub fn aut_membership(omega: &NCPoly, theta: &Mat2) -> Result<Option<Scalar>> {
    if omega.is_zero() {
        return Err(Error::ZeroInput);
    }
    if theta.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let maps = vec![theta.clone(); omega.degree()];
    let image = omega.slot_map(&maps)?;
    Ok(image.ratio_to(omega).filter(|l| !l.is_zero()))
}

/// The relations `(∂_x ω, ∂_y ω)` of D(ω).
pub fn derivation_quotient(omega: &NCPoly) -> Result<(NCPoly, NCPoly)> {
    if omega.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok((
        omega.left_derivative(Gen::X)?,
        omega.left_derivative(Gen::Y)?,
    ))
}

/// `M(ω)_{ij} = ∂_{v_i} ω ∂_{v_j}`, row-major.
pub fn m_matrix(omega: &NCPoly) -> Result<[[NCPoly; 2]; 2]> {
    if omega.is_zero() {
        return Err(Error::ZeroInput);
    }
    let e = |i: Gen, j: Gen| -> Result<NCPoly> { omega.left_derivative(i)?.right_derivative(j) };
    Ok([
        [e(Gen::X, Gen::X)?, e(Gen::X, Gen::Y)?],
        [e(Gen::Y, Gen::X)?, e(Gen::Y, Gen::Y)?],
    ])
}

pub fn is_standard(omega: &NCPoly) -> Result<bool> {
    is_standard_under(omega, &Assumptions::new())
}

/// Standardness of D(ω) for a twisted superpotential ω: the two left
/// derivatives are independent.
pub fn is_standard_under(omega: &NCPoly, asm: &Assumptions) -> Result<bool> {
    if twisting_matrix_under(omega, asm)?.is_none() {
        return Err(Error::NotTwistedSuperpotential);
    }
    let (dx, dy) = derivation_quotient(omega)?;
    Ok(rank(&[dx.to_vector(), dy.to_vector()], asm)? == 2)
}

pub fn recover_q(omega: &NCPoly) -> Result<Mat2> {
    recover_q_under(omega, &Assumptions::new())
}

/// Q with `(xᵗ M)ᵗ = Q g` for `g = (∂_x ω, ∂_y ω)`. The entries of `xᵗ M`
/// are the right derivatives of ω.
pub fn recover_q_under(omega: &NCPoly, asm: &Assumptions) -> Result<Mat2> {
    if !is_standard_under(omega, asm)? {
        return Err(Error::NotStandard);
    }
    let (dx, dy) = derivation_quotient(omega)?;
    let g = vec![dx.to_vector(), dy.to_vector()];
    let row = |t: &NCPoly| -> Result<Row> {
        solve_combination(&g, &t.to_vector(), asm)?.ok_or(Error::NoSolution)
    };
    let r1 = row(&omega.right_derivative(Gen::X)?)?;
    let r2 = row(&omega.right_derivative(Gen::Y)?)?;
    Ok(Mat2::new(
        r1[0].clone(),
        r1[1].clone(),
        r2[0].clone(),
        r2[1].clone(),
    ))
}

/// One solution family of [`potential_from_relations`].
#[derive(Clone, Debug)]
pub struct PotentialFamily {
    /// A representative with independent derivatives.
    pub omega: NCPoly,
    /// Parameter conditions of this branch.
    pub assumptions: Assumptions,
    /// Dimension of the space of (a, b, c, d) satisfying the twist condition.
    pub family_dim: usize,
}

fn stack(a: &NCPoly, b: &NCPoly) -> Row {
    let mut v = a.to_vector();
    v.extend(b.to_vector());
    v
}

/// Twisted superpotentials `ω = a x g₁ + b x g₂ + c y g₁ + d y g₂` with
/// `(∂_x ω, ∂_y ω)` spanning the same space as `(g₁, g₂)`, one per branch of
/// the parameter case tree.
pub fn potential_from_relations(
    g1: &NCPoly,
    g2: &NCPoly,
    asm: &Assumptions,
) -> Result<Vec<PotentialFamily>> {
    for g in [g1, g2] {
        if g.degree() != 3 {
            return Err(Error::WrongDegree {
                expected: 3,
                found: g.degree(),
            });
        }
    }
    let leaves = branch(asm, |a| potential_leaf(g1, g2, a))?;
    let mut out = Vec::new();
    for leaf in leaves {
        match leaf.value {
            Leaf::Dependent => return Err(Error::DependentRelations),
            Leaf::None => {}
            Leaf::Found(omega, family_dim) => out.push(PotentialFamily {
                omega,
                assumptions: leaf.assumptions,
                family_dim,
            }),
        }
    }
    if out.is_empty() {
        return Err(Error::NoPotential);
    }
    Ok(out)
}

enum Leaf {
    Dependent,
    None,
    Found(NCPoly, usize),
}

fn potential_leaf(g1: &NCPoly, g2: &NCPoly, asm: &Assumptions) -> Result<Leaf> {
    let g1 = g1.apply_assumptions(asm);
    let g2 = g2.apply_assumptions(asm);
    if rank(&[g1.to_vector(), g2.to_vector()], asm)? < 2 {
        return Ok(Leaf::Dependent);
    }
    let x = NCPoly::gen(Gen::X);
    let y = NCPoly::gen(Gen::Y);
    let zero = NCPoly::zero(3);
    let rd = |g: &NCPoly, v: Gen| g.right_derivative(v).expect("degree 3");
    // Columns: a, b, c, d, then e, f, h, k with
    // ω∂_x = e g₁ + f g₂ and ω∂_y = h g₁ + k g₂.
    let cols: Vec<Row> = vec![
        stack(&x.mul(&rd(&g1, Gen::X)), &x.mul(&rd(&g1, Gen::Y))),
        stack(&x.mul(&rd(&g2, Gen::X)), &x.mul(&rd(&g2, Gen::Y))),
        stack(&y.mul(&rd(&g1, Gen::X)), &y.mul(&rd(&g1, Gen::Y))),
        stack(&y.mul(&rd(&g2, Gen::X)), &y.mul(&rd(&g2, Gen::Y))),
        stack(&g1.neg(), &zero),
        stack(&g2.neg(), &zero),
        stack(&zero, &g1.neg()),
        stack(&zero, &g2.neg()),
    ];
    let rows: Vec<Row> = (0..16)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    let ns = nullspace(&rows, 8, asm)?;
    // Keep the (a, b, c, d) parts, reduced to an independent set.
    let mut abcd: Vec<Row> = Vec::new();
    for v in &ns {
        let part: Row = v[..4].to_vec();
        let mut trial = abcd.clone();
        trial.push(part.clone());
        if rank(&trial, asm)? > abcd.len() {
            abcd.push(part);
        }
    }
    let build = |v: &Row| -> NCPoly {
        x.mul(&g1)
            .scale(&v[0])
            .add(&x.mul(&g2).scale(&v[1]))
            .add(&y.mul(&g1).scale(&v[2]))
            .add(&y.mul(&g2).scale(&v[3]))
    };
    // Independence of the derivatives is det(a b; c d) != 0.
    let det = |v: &Row| &(&v[0] * &v[3]) - &(&v[1] * &v[2]);
    for cand in candidates(&abcd) {
        match asm.decide(&det(&cand)) {
            Decision::NonZero => return Ok(Leaf::Found(build(&cand), abcd.len())),
            Decision::Zero => {}
            Decision::Unknown(p) if abcd.len() == 1 => return Err(Error::CaseSplitRequired(p)),
            Decision::Unknown(_) => {}
        }
    }
    Ok(Leaf::None)
}

/// Basis vectors, then small integer combinations of pairs.
fn candidates(basis: &[Row]) -> Vec<Row> {
    let mut out: Vec<Row> = basis.to_vec();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            for k in [1i64, -1, 2] {
                let ks = Scalar::from_int(k);
                out.push(
                    basis[i]
                        .iter()
                        .zip(&basis[j])
                        .map(|(p, q)| p + &(&ks * q))
                        .collect(),
                );
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprparse::parse_ncpoly;

    fn p(s: &str) -> NCPoly {
        parse_ncpoly(s).unwrap()
    }

    #[test]
    fn rotation_fixed_points() {
        assert!(is_superpotential(&p("x^4")).unwrap());
        assert!(!is_superpotential(&p("x^3*y")).unwrap());
        assert_eq!(
            is_superpotential(&p("x^3")),
            Err(Error::WrongDegree {
                expected: 4,
                found: 3
            })
        );
    }

    #[test]
    fn non_twisted_quartic() {
        assert_eq!(twisting_matrix(&p("x^3*y")).unwrap(), None);
    }

    #[test]
    fn degenerate_potentials_get_a_twist() {
        for s in [
            "x^4",
            "y^4",
            "(x+2*y)*(x+2*y)*(x+2*y)*(x+2*y)",
            "x^3*y + x^2*y*x",
        ] {
            let w = p(s);
            match twisting_matrix(&w).unwrap() {
                Some(t) => assert!(satisfies_twist(&w, &t, &Assumptions::new()).unwrap(), "{s}"),
                None => assert_eq!(s, "x^3*y + x^2*y*x"),
            }
        }
        let l4 = p("(x+2*y)*(x+2*y)*(x+2*y)*(x+2*y)");
        assert!(!is_standard(&l4).unwrap());
    }

    #[test]
    fn m_matrix_of_x4() {
        let m = m_matrix(&p("x^4")).unwrap();
        assert_eq!(m[0][0], p("x^2"));
        assert!(m[0][1].is_zero() && m[1][0].is_zero() && m[1][1].is_zero());
    }

    #[test]
    fn cubes_give_a_two_parameter_family() {
        let fams = potential_from_relations(&p("x^3"), &p("y^3"), &Assumptions::new()).unwrap();
        assert_eq!(fams.len(), 1);
        assert_eq!(fams[0].family_dim, 2);
        assert!(twisting_matrix(&fams[0].omega).unwrap().is_some());
    }
}
