//! Exact Gaussian elimination over the rationals: rank, kernel bases, and
//! unique solutions of square systems.

use crate::rat::Rat;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone().recip();
        for j in 0..cols {
            m[r][j] = m[r][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let delta = m[r][j].clone() * factor.clone();
                    m[i][j] = m[i][j].clone() - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn independent(rows: &[Vec<Rat>]) -> bool {
    rank(rows) == rows.len()
}

/// Basis of the null space `{x : A·x = 0}` of a matrix with `n` columns,
/// with free variables set to 1 one at a time.
pub fn kernel_basis(rows: &[Vec<Rat>], n: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.iter().filter(|r| !r.is_empty()).cloned().collect();
    if m.is_empty() {
        return (0..n)
            .map(|i| {
                let mut v = vec![Rat::zero(); n];
                v[i] = Rat::one();
                v
            })
            .collect();
    }
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    let pivot_rows: Vec<(usize, usize)> = pivots.iter().cloned().enumerate().collect();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for &(row, pc) in &pivot_rows {
            v[pc] = -(m[row][free].clone());
        }
        basis.push(v);
    }
    basis
}

/// The unique solution of `A·x = rhs` for a square full-rank system;
/// `None` if the system is singular.
pub fn solve_unique(rows: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) || rhs.len() != n {
        return None;
    }
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn rank_and_independence() {
        assert_eq!(rank(&[vec![r(1), r(0)], vec![r(0), r(1)]]), 2);
        assert_eq!(rank(&[vec![r(1), r(2)], vec![r(2), r(4)]]), 1);
        assert!(independent(&[vec![r(1), r(1)], vec![r(1), r(-1)]]));
        assert!(!independent(&[vec![r(1), r(1)], vec![r(2), r(2)]]));
    }

    #[test]
    fn kernel_of_single_row() {
        // x + y = 0 in R^2: kernel spanned by (-1, 1)
        let k = kernel_basis(&[vec![r(1), r(1)]], 2);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0].clone() + k[0][1].clone(), r(0));
    }

    #[test]
    fn kernel_of_empty() {
        let k = kernel_basis(&[], 3);
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn kernel_of_full_rank() {
        let k = kernel_basis(&[vec![r(1), r(0)], vec![r(0), r(1)]], 2);
        assert!(k.is_empty());
    }

    #[test]
    fn unique_solution() {
        let s = solve_unique(&[vec![r(1), r(1)], vec![r(1), r(-1)]], &[r(3), r(1)]).unwrap();
        assert_eq!(s, vec![r(2), r(1)]);
        assert!(solve_unique(&[vec![r(1), r(1)], vec![r(2), r(2)]], &[r(0), r(0)]).is_none());
    }
}
