use crate::fralgebra::group::{Family, GroupSpec};
use crate::scalar::{Scalar, ScalarFraction};
use crate::ufunctionals::linsolve;
use crate::{Error, Result};

/// Braided R-matrix `R^{ij}_{kl}` stored densely (n^4 entries, n <= 6 in practice).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    pub n: usize,
    data: Vec<Scalar>,
}

impl RMatrix {
    pub fn zeros(n: usize) -> Self {
        RMatrix { n, data: vec![Scalar::zero(); n * n * n * n] }
    }

    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.n + j) * self.n + k) * self.n + l
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &Scalar {
        &self.data[self.idx(i, j, k, l)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: Scalar) {
        let x = self.idx(i, j, k, l);
        self.data[x] = v;
    }

    /// Nonzero entries as `((i, j, k, l), value)`.
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize, usize, usize), &Scalar)> + '_ {
        let n = self.n;
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(x, v)| {
            ((x / (n * n * n), (x / (n * n)) % n, (x / n) % n, x % n), v)
        })
    }

    /// As an `n^2 x n^2` matrix with row `(i, j)` and column `(k, l)`.
    pub fn as_matrix(&self) -> Vec<Vec<Scalar>> {
        let m = self.n * self.n;
        (0..m).map(|r| (0..m).map(|c| self.data[r * m + c].clone()).collect()).collect()
    }

    pub fn from_matrix(n: usize, m: &[Vec<Scalar>]) -> Self {
        let mut r = RMatrix::zeros(n);
        for (a, row) in m.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                r.data[a * n * n + b] = v.clone();
            }
        }
        r
    }

    pub fn mul(&self, other: &RMatrix) -> RMatrix {
        let m = self.n * self.n;
        let mut out = RMatrix::zeros(self.n);
        for r in 0..m {
            for k in 0..m {
                let a = &self.data[r * m + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..m {
                    let b = &other.data[k * m + c];
                    if !b.is_zero() {
                        out.data[r * m + c] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn identity(n: usize) -> Self {
        let mut r = RMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                r.set(i, j, i, j, Scalar::one());
            }
        }
        r
    }

    /// Check `R12 R23 R12 = R23 R12 R23` on `V^{(x)3}`.
    pub fn satisfies_braid(&self) -> bool {
        let n = self.n;
        let apply12 = |v: &[(usize, usize, usize, Scalar)]| -> Vec<Scalar> {
            let mut out = vec![Scalar::zero(); n * n * n];
            for (a, b, c, x) in v {
                for i in 0..n {
                    for j in 0..n {
                        let r = self.get(i, j, *a, *b);
                        if !r.is_zero() {
                            out[(i * n + j) * n + c] += &(r * x);
                        }
                    }
                }
            }
            out
        };
        let apply23 = |v: &[(usize, usize, usize, Scalar)]| -> Vec<Scalar> {
            let mut out = vec![Scalar::zero(); n * n * n];
            for (a, b, c, x) in v {
                for j in 0..n {
                    for k in 0..n {
                        let r = self.get(j, k, *b, *c);
                        if !r.is_zero() {
                            out[(a * n + j) * n + k] += &(r * x);
                        }
                    }
                }
            }
            out
        };
        let sparse = |v: Vec<Scalar>| -> Vec<(usize, usize, usize, Scalar)> {
            v.into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(t, x)| (t / (n * n), (t / n) % n, t % n, x))
                .collect()
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let e = vec![(a, b, c, Scalar::one())];
                    let lhs = apply12(&sparse(apply23(&sparse(apply12(&e)))));
                    let rhs = apply23(&sparse(apply12(&sparse(apply23(&e)))));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn delta(a: usize, b: usize) -> bool {
    a == b
}

/// Braided R-matrix of the family, before any `z` normalization.
pub fn build_rmatrix(g: &GroupSpec) -> RMatrix {
    let n = g.n;
    let mut r = RMatrix::zeros(n);
    let h = Scalar::q_minus_qinv();
    match g.family {
        Family::GLq | Family::SLq => {
            for i in 0..n {
                for j in 0..n {
                    // q^{d_ij} on the flip, (q - q^-1) on the diagonal for j > i.
                    let flip = if i == j { Scalar::q() } else { Scalar::one() };
                    r.set(i, j, j, i, flip);
                    if j > i {
                        r.set(i, j, i, j, h.clone());
                    }
                }
            }
        }
        Family::Oq | Family::Spq => {
            let eps = Scalar::from_int(g.epsilon);
            for j in 0..n {
                for i in 0..n {
                    for m in 0..n {
                        for nn in 0..n {
                            let mut v = Scalar::zero();
                            if delta(i, m) && delta(j, nn) {
                                let e = delta(i, j) as i64 - delta(i, g.prime(j)) as i64;
                                v += &Scalar::q_pow(e);
                            }
                            if i > m {
                                let mut t = Scalar::zero();
                                if delta(j, m) && delta(i, nn) {
                                    t = Scalar::one();
                                }
                                let cc = &g.metric(j, i) * &g.metric(m, nn);
                                t -= &(&eps * &cc);
                                v += &(&h * &t);
                            }
                            r.set(j, i, m, nn, v);
                        }
                    }
                }
            }
        }
    }
    r
}

/// Inverse of the braided R-matrix.
///
/// For the linear families this is the Hecke identity `R^-1 = R - (q - q^-1) I`;
/// otherwise an exact linear solve over the fraction field.
pub fn rhat_inverse(g: &GroupSpec, r: &RMatrix) -> Result<RMatrix> {
    if g.family.is_linear() {
        let mut inv = r.clone();
        let h = Scalar::q_minus_qinv();
        for i in 0..g.n {
            for j in 0..g.n {
                let v = inv.get(i, j, i, j) - &h;
                inv.set(i, j, i, j, v);
            }
        }
        return Ok(inv);
    }
    rhat_inverse_by_solve(r)
}

pub fn rhat_inverse_by_solve(r: &RMatrix) -> Result<RMatrix> {
    let m: Vec<Vec<ScalarFraction>> = r
        .as_matrix()
        .into_iter()
        .map(|row| row.into_iter().map(ScalarFraction::from).collect())
        .collect();
    let inv = linsolve::invert(&m)?;
    let laurent = inv
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.try_scalar()).collect::<std::result::Result<Vec<_>, _>>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(Error::from)?;
    Ok(RMatrix::from_matrix(r.n, &laurent))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_relation_all_families() {
        for g in [GroupSpec::gl(2), GroupSpec::gl(3), GroupSpec::o(3), GroupSpec::o(4), GroupSpec::sp(4)] {
            assert!(build_rmatrix(&g).satisfies_braid(), "{}", g.label());
        }
    }

    #[test]
    fn hecke_inverse_matches_solve() {
        for n in 2..=3 {
            let g = GroupSpec::gl(n);
            let r = build_rmatrix(&g);
            let a = rhat_inverse(&g, &r).unwrap();
            let b = rhat_inverse_by_solve(&r).unwrap();
            assert_eq!(a, b);
            assert_eq!(r.mul(&a), RMatrix::identity(n));
        }
    }

    #[test]
    fn orthogonal_inverse() {
        let g = GroupSpec::o(3);
        let r = build_rmatrix(&g);
        let inv = rhat_inverse(&g, &r).unwrap();
        assert_eq!(r.mul(&inv), RMatrix::identity(3));
    }
}
