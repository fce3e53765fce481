//! Exact Gaussian elimination over the fraction field.

use crate::scalar::ScalarFraction;
use crate::{Error, Result};

type Sf = ScalarFraction;

/// Reduced row echelon form. Returns the reduced rows and the pivot columns.
pub fn rref(m: Vec<Vec<Sf>>) -> (Vec<Vec<Sf>>, Vec<usize>) {
    let cols = m.first().map_or(0, |r| r.len());
    rref_limited(m, cols)
}

pub fn rank(m: &[Vec<Sf>]) -> usize {
    rref(m.to_vec()).1.len()
}

/// Solve `A x = b` for each right-hand side in `rhs` (each of length `rows`).
/// Free variables are set to zero. Fails on the first inconsistent system.
pub fn solve(a: &[Vec<Sf>], rhs: &[Vec<Sf>]) -> Result<Vec<Vec<Sf>>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let aug: Vec<Vec<Sf>> = (0..rows)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend(rhs.iter().map(|b| b[i].clone()));
            row
        })
        .collect();
    let (red, pivots) = rref_limited(aug, cols);
    let mut sols = vec![vec![Sf::zero(); cols]; rhs.len()];
    for (r, &c) in pivots.iter().enumerate() {
        for (k, sol) in sols.iter_mut().enumerate() {
            sol[c] = red[r][cols + k].clone();
        }
    }
    for row in red.iter().skip(pivots.len()) {
        for k in 0..rhs.len() {
            if !row[cols + k].is_zero() {
                return Err(Error::Inconsistent(format!("right-hand side {k} is not in the column span")));
            }
        }
    }
    Ok(sols)
}

/// Like `rref` but pivots only in the first `limit` columns.
fn rref_limited(m: Vec<Vec<Sf>>, limit: usize) -> (Vec<Vec<Sf>>, Vec<usize>) {
    let rows = m.len();
    let mut m = m;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].numer().num_terms() + m[i][c].denom().num_terms());
        let Some(p) = best else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(pivot_row.iter()) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Basis of the null space `{x : A x = 0}`.
pub fn nullspace(a: &[Vec<Sf>]) -> Vec<Vec<Sf>> {
    let cols = a.first().map_or(0, |r| r.len());
    let (red, pivots) = rref(a.to_vec());
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Sf::zero(); cols];
            v[f] = Sf::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&red[r][f];
            }
            v
        })
        .collect()
}

pub fn invert(m: &[Vec<Sf>]) -> Result<Vec<Vec<Sf>>> {
    let n = m.len();
    let aug: Vec<Vec<Sf>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Sf::one() } else { Sf::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref_limited(aug, n);
    if pivots.len() < n {
        return Err(Error::Inconsistent("matrix is singular".into()));
    }
    Ok(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(s: &str) -> Sf {
        s.parse().unwrap()
    }

    #[test]
    fn invert_two_by_two() {
        let m = vec![vec![sf("q"), sf("1")], vec![sf("0"), sf("q^-1")]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv[0][0], sf("q^-1"));
        assert_eq!(inv[0][1], sf("-1"));
        assert_eq!(inv[1][1], sf("q"));
    }

    #[test]
    fn inconsistent_detected() {
        let a = vec![vec![sf("1")], vec![sf("q")]];
        assert!(solve(&a, &[vec![sf("1"), sf("1")]]).is_err());
        let x = solve(&a, &[vec![sf("2"), sf("2*q")]]).unwrap();
        assert_eq!(x[0][0], sf("2"));
    }

    #[test]
    fn kernel_dimension() {
        let a = vec![vec![sf("1"), sf("q"), sf("q^2")]];
        let k = nullspace(&a);
        assert_eq!(k.len(), 2);
        for v in k {
            let s = &(&v[0] + &(&sf("q") * &v[1])) + &(&sf("q^2") * &v[2]);
            assert!(s.is_zero());
        }
    }
}
