//! Exact rational linear algebra and a small simplex solver.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Solves `a x = b` by Gaussian elimination. Returns `None` if inconsistent or if the
/// solution is not unique.
pub fn solve_unique(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(p) = (pivot_row..rows).find(|r| !m[*r][c].is_zero()) else {
            continue;
        };
        m.swap(p, pivot_row);
        let inv = Q::one() / m[pivot_row][c].clone();
        for x in m[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        let prow = m[pivot_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != pivot_row && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&prow).skip(c) {
                    *x -= p * &factor;
                }
            }
        }
        pivots.push(c);
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|r| !r[cols].is_zero()) || pivots.len() < cols {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (r, c) in pivots.iter().enumerate() {
        x[*c] = m[r][cols].clone();
    }
    Some(x)
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Q, x: Vec<Q> },
}

/// Maximizes `c x` subject to `a x = b`, `x >= 0`, with a two-phase tableau simplex
/// using Bland's rule.
pub fn maximize(c: &[Q], a: &[Vec<Q>], b: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    // Tableau columns: n originals, m artificials, then the right-hand side.
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row: Vec<Q> = a[i].iter().map(|v| if neg { -v.clone() } else { v.clone() }).collect();
        row.extend((0..m).map(|j| if i == j { Q::one() } else { Q::zero() }));
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let phase1: Vec<Q> = (0..n + m).map(|j| if j >= n { -Q::one() } else { Q::zero() }).collect();
    if run_simplex(&mut t, &mut basis, &phase1, n + m) == Some(false) {
        unreachable!("phase one is bounded");
    }
    let infeasible = basis.iter().zip(&t).any(|(bv, row)| *bv >= n && !row[n + m].is_zero());
    if infeasible {
        return LpOutcome::Infeasible;
    }
    // Drive artificial variables out of the basis or drop redundant rows.
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|j| !t[i][*j].is_zero()) {
                pivot(&mut t, &mut basis, i, j);
                i += 1;
            } else {
                t.remove(i);
                basis.remove(i);
            }
        } else {
            i += 1;
        }
    }
    for row in t.iter_mut() {
        row.drain(n..n + m);
    }
    match run_simplex(&mut t, &mut basis, c, n) {
        Some(false) => LpOutcome::Unbounded,
        _ => {
            let mut x = vec![Q::zero(); n];
            for (r, bv) in basis.iter().enumerate() {
                x[*bv] = t[r][n].clone();
            }
            let value = c.iter().zip(&x).map(|(a, b)| a * b).sum();
            LpOutcome::Optimal { value, x }
        }
    }
}

/// Runs simplex iterations on a tableau whose last column is the right-hand side. Returns
/// `Some(false)` if unbounded.
fn run_simplex(t: &mut [Vec<Q>], basis: &mut [usize], c: &[Q], ncols: usize) -> Option<bool> {
    loop {
        // Reduced cost of column j: c_j - c_B B^-1 A_j.
        let entering = (0..ncols).find(|j| {
            if basis.contains(j) {
                return false;
            }
            let mut r = c[*j].clone();
            for (row, bv) in t.iter().zip(basis.iter()) {
                r -= &c[*bv] * &row[*j];
            }
            r.is_positive()
        });
        let Some(j) = entering else {
            return Some(true);
        };
        let mut best: Option<(usize, Q)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[j].is_positive() {
                let ratio = &row[ncols] / &row[j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        let Some((i, _)) = best else {
            return Some(false);
        };
        pivot(t, basis, i, j);
    }
}

fn pivot(t: &mut [Vec<Q>], basis: &mut [usize], i: usize, j: usize) {
    let inv = Q::one() / t[i][j].clone();
    for x in t[i].iter_mut() {
        *x = &*x * &inv;
    }
    let prow = t[i].clone();
    for (r, row) in t.iter_mut().enumerate() {
        if r != i && !row[j].is_zero() {
            let f = row[j].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                *x -= p * &f;
            }
        }
    }
    basis[i] = j;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_square_system() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve_unique(&a, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![frac(4, 5), frac(7, 5)]);
        let sing = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve_unique(&sing, &[q(1), q(2)]).is_none());
        assert!(solve_unique(&[vec![q(1)], vec![q(1)]], &[q(1), q(2)]).is_none());
    }

    #[test]
    fn small_lp() {
        // max x + y, x + 2y + s = 4, 3x + y + u = 6
        let c = vec![q(1), q(1), q(0), q(0)];
        let a = vec![vec![q(1), q(2), q(1), q(0)], vec![q(3), q(1), q(0), q(1)]];
        match maximize(&c, &a, &[q(4), q(6)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, frac(14, 5)),
            o => panic!("{o:?}"),
        }
        assert_eq!(maximize(&[q(1)], &[vec![q(1)]], &[q(-1)]), LpOutcome::Infeasible);
        assert_eq!(maximize(&[q(1), q(0)], &[vec![q(1), q(-1)]], &[q(0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let c = vec![q(1), q(0)];
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        match maximize(&c, &a, &[q(1), q(2)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1)),
            o => panic!("{o:?}"),
        }
    }
}
