//! Determinants, minors and adjugates over `TrigScalar`.
//!
//! Matrices are tiny (at most 5×5), so cofactor expansion is used: it is
//! division free, which keeps everything inside the ring.

use crate::trigring::TrigScalar;

use super::VecField;

pub type Matrix = Vec<Vec<TrigScalar>>;

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<TrigScalar>]) -> TrigScalar {
    let n = m.len();
    match n {
        0 => TrigScalar::one(),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = TrigScalar::zero();
            for (j, a) in m[0].iter().enumerate() {
                if a.is_identically_zero() {
                    continue;
                }
                let term = a * &det(&minor_matrix(m, 0, j));
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// `m` with row `r` and column `c` removed.
pub fn minor_matrix(m: &[Vec<TrigScalar>], r: usize, c: usize) -> Matrix {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != c)
                .map(|(_, s)| s.clone())
                .collect()
        })
        .collect()
}

/// Coefficient matrix with the fields as columns.
pub fn columns(vs: &[&VecField]) -> Matrix {
    (0..super::DIM)
        .map(|k| vs.iter().map(|v| v[k].clone()).collect())
        .collect()
}

/// Increasing `k`-subsets of `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All `k×k` minors of an `r×c` matrix, indexed by (rows, cols).
pub fn minors(m: &[Vec<TrigScalar>], k: usize) -> Vec<(Vec<usize>, Vec<usize>, TrigScalar)> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Matrix = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect())
                .collect();
            out.push((rs.clone(), cs, det(&sub)));
        }
    }
    out
}

/// Adjugate, so that `m · adj(m) = det(m) · 1`.
pub fn adjugate(m: &[Vec<TrigScalar>]) -> Matrix {
    let n = m.len();
    let mut out = vec![vec![TrigScalar::zero(); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let c = det(&minor_matrix(m, j, i));
            *slot = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    out
}

pub fn sum_of_squares(xs: impl IntoIterator<Item = TrigScalar>) -> TrigScalar {
    xs.into_iter()
        .fold(TrigScalar::zero(), |acc, x| &acc + &(&x * &x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| TrigScalar::int(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_and_adjugate() {
        let a = m(&[&[2, 0, 1, 0], &[1, 3, 0, 0], &[0, 1, 1, 1], &[0, 0, 2, 1]]);
        let d = det(&a);
        let adj = adjugate(&a);
        for i in 0..4 {
            for j in 0..4 {
                let mut s = TrigScalar::zero();
                for k in 0..4 {
                    s = &s + &(&a[i][k] * &adj[k][j]);
                }
                let expected = if i == j {
                    d.clone()
                } else {
                    TrigScalar::zero()
                };
                assert_eq!(s, expected);
            }
        }
        assert_eq!(d, TrigScalar::int(-5));
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(5, 4).len(), 5);
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(
            minors(&m(&[&[1, 0], &[0, 1], &[0, 0], &[1, 1]]), 2).len(),
            6
        );
    }
}
