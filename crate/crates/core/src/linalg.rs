//! Gauss-Jordan elimination over [`Scalar`] with assumption-aware pivoting.

use crate::assume::{Assumptions, Decision};
use crate::error::{Error, Result};
use crate::scalars::Scalar;

pub type Row = Vec<Scalar>;

/// Reduced row echelon form and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Row>,
    pub pivots: Vec<usize>,
}

/// Row-reduce. A pivot must be provably nonzero; if a column has only
/// undecided candidates, the first one's residual polynomial is returned as
/// [`Error::CaseSplitRequired`].
pub fn rref(m: &[Row], asm: &Assumptions) -> Result<Rref> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut rows: Vec<Row> = m
        .iter()
        .map(|r| r.iter().map(|x| asm.apply(x)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut cur = 0;
    for col in 0..ncols {
        if cur == rows.len() {
            break;
        }
        let mut chosen: Option<usize> = None;
        let mut undecided = None;
        for (r, row) in rows.iter().enumerate().skip(cur) {
            if row[col].is_zero() {
                continue;
            }
            match asm.decide(&row[col]) {
                Decision::NonZero => {
                    let better = chosen.is_none_or(|c| {
                        row[col].num().num_terms() < rows[c][col].num().num_terms()
                    });
                    if better {
                        chosen = Some(r);
                    }
                }
                Decision::Unknown(p) => {
                    undecided.get_or_insert(p);
                }
                Decision::Zero => {}
            }
        }
        let Some(pr) = chosen else {
            if let Some(p) = undecided {
                return Err(Error::CaseSplitRequired(p));
            }
            continue;
        };
        rows.swap(cur, pr);
        let inv = rows[cur][col].inv();
        for x in rows[cur].iter_mut().skip(col) {
            *x = &*x * &inv;
        }
        let pivot_row = rows[cur].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == cur || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
            // Entries decided zero but not syntactically zero are cleared.
            for x in row.iter_mut() {
                if !x.is_zero() && asm.decide(x) == Decision::Zero {
                    *x = Scalar::zero();
                }
            }
        }
        pivots.push(col);
        cur += 1;
    }
    rows.truncate(cur.max(pivots.len()));
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    Ok(Rref { rows, pivots })
}

pub fn rank(m: &[Row], asm: &Assumptions) -> Result<usize> {
    Ok(rref(m, asm)?.pivots.len())
}

/// Basis of `{v : m v = 0}`, one vector per free column.
pub fn nullspace(m: &[Row], ncols: usize, asm: &Assumptions) -> Result<Vec<Row>> {
    if m.is_empty() {
        return Ok((0..ncols)
            .map(|i| {
                (0..ncols)
                    .map(|j| {
                        if i == j {
                            Scalar::one()
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect());
    }
    let r = rref(m, asm)?;
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !r.pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (row, &pc) in r.rows.iter().zip(&r.pivots) {
            v[pc] = -&row[free];
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Whether two families of row vectors span the same subspace.
pub fn span_eq(a: &[Row], b: &[Row], asm: &Assumptions) -> Result<bool> {
    let ra = rank(a, asm)?;
    let rb = rank(b, asm)?;
    if ra != rb {
        return Ok(false);
    }
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    Ok(rank(&both, asm)? == ra)
}

/// Coefficients `c` with `sum c_i basis_i = target`, if any.
pub fn solve_combination(basis: &[Row], target: &Row, asm: &Assumptions) -> Result<Option<Row>> {
    let n = basis.len();
    let dim = target.len();
    // Columns are basis vectors, last column is the target.
    let aug: Vec<Row> = (0..dim)
        .map(|i| {
            let mut r: Row = basis.iter().map(|b| b[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let red = rref(&aug, asm)?;
    if red.pivots.contains(&n) {
        return Ok(None);
    }
    let mut sol = vec![Scalar::zero(); n];
    for (row, &pc) in red.rows.iter().zip(&red.pivots) {
        sol[pc] = row[n].clone();
    }
    Ok(Some(sol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> Row {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn rational_rank_and_nullspace() {
        let m = vec![r(&[1, 2, 3]), r(&[2, 4, 6]), r(&[1, 0, 1])];
        let asm = Assumptions::new();
        assert_eq!(rank(&m, &asm).unwrap(), 2);
        let ns = nullspace(&m, 3, &asm).unwrap();
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot = row
                .iter()
                .zip(&ns[0])
                .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn parametric_pivot_requests_split() {
        let a = Scalar::param("alpha");
        let m = vec![vec![&a - &Scalar::one(), Scalar::one()]];
        let asm = Assumptions::new();
        // The second column has a unit pivot but the first column is tried first.
        assert!(matches!(rref(&m, &asm), Err(Error::CaseSplitRequired(_))));
        let asm = asm.assume_nonzero(&(&a - &Scalar::one()));
        assert_eq!(rank(&m, &asm).unwrap(), 1);
    }

    #[test]
    fn combination_solving() {
        let basis = vec![r(&[1, 0, 1]), r(&[0, 1, 1])];
        let sol = solve_combination(&basis, &r(&[2, 3, 5]), &Assumptions::new())
            .unwrap()
            .unwrap();
        assert_eq!(sol, r(&[2, 3]));
        assert!(
            solve_combination(&basis, &r(&[1, 1, 1]), &Assumptions::new())
                .unwrap()
                .is_none()
        );
    }
}
