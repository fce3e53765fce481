use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::scalar::{Coeff, Scalar};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    #[serde(rename = "glq")]
    GLq,
    #[serde(rename = "slq")]
    SLq,
    #[serde(rename = "oq")]
    Oq,
    #[serde(rename = "spq")]
    Spq,
}

impl Family {
    pub fn is_linear(self) -> bool {
        matches!(self, Family::GLq | Family::SLq)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::GLq => "glq",
            Family::SLq => "slq",
            Family::Oq => "oq",
            Family::Spq => "spq",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "glq" | "gl" => Ok(Family::GLq),
            "slq" | "sl" => Ok(Family::SLq),
            "oq" | "o" => Ok(Family::Oq),
            "spq" | "sp" => Ok(Family::Spq),
            other => Err(Error::Config(format!("unknown group family '{other}'"))),
        }
    }
}

/// Data fixing one FRT quantum group: family, size, metric, the antipode
/// twist `gamma_i` and the normalization `z` of the L-functionals.
///
/// Indices are 0-based throughout the crate; `prime(i) = n - 1 - i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub family: Family,
    pub n: usize,
    /// Global sign: +1 orthogonal, -1 symplectic, 0 for the linear families.
    pub epsilon: i64,
    /// Antidiagonal metric entries `C^i_{i'}`.
    metric: Vec<Scalar>,
    gamma: Option<Vec<Scalar>>,
    z: Scalar,
}

impl GroupSpec {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::Config("matrix size must be at least 1".into()));
        }
        match family {
            Family::GLq => Ok(Self::linear(family, n, Scalar::one())),
            Family::SLq => {
                if n < 2 {
                    return Err(Error::Config("SL_q needs n >= 2".into()));
                }
                Ok(Self::linear(family, n, Scalar::q_frac(-1, n as i64)?))
            }
            Family::Oq => {
                if n < 2 {
                    return Err(Error::Config("O_q needs n >= 2".into()));
                }
                Self::metric_group(family, n, 1)
            }
            Family::Spq => {
                if n < 2 || n % 2 == 1 {
                    return Err(Error::Config("Sp_q needs an even n >= 2".into()));
                }
                Self::metric_group(family, n, -1)
            }
        }
    }

    pub fn gl(n: usize) -> Self {
        Self::new(Family::GLq, n).expect("valid GL_q size")
    }

    pub fn sl(n: usize) -> Self {
        Self::new(Family::SLq, n).expect("valid SL_q size")
    }

    pub fn o(n: usize) -> Self {
        Self::new(Family::Oq, n).expect("valid O_q size")
    }

    pub fn sp(n: usize) -> Self {
        Self::new(Family::Spq, n).expect("valid Sp_q size")
    }

    fn linear(family: Family, n: usize, z: Scalar) -> Self {
        let gamma = (0..n).map(|i| Scalar::q_pow(2 * (i as i64 + 1))).collect();
        GroupSpec { family, n, epsilon: 0, metric: Vec::new(), gamma: Some(gamma), z }
    }

    fn metric_group(family: Family, n: usize, epsilon: i64) -> Result<Self> {
        let metric = (0..n)
            .map(|i| {
                let (num, den) = rho(family, n, i);
                let sign = if epsilon == 1 || i < n / 2 { 1 } else { -1 };
                Ok(Scalar::q_frac(-num, den)?.scale(&Coeff::from_integer(sign)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupSpec { family, n, epsilon, metric, gamma: None, z: Scalar::one() })
    }

    pub fn prime(&self, i: usize) -> usize {
        self.n - 1 - i
    }

    /// `C^i_j`.
    pub fn metric(&self, i: usize, j: usize) -> Scalar {
        if self.metric.is_empty() || j != self.prime(i) {
            Scalar::zero()
        } else {
            self.metric[i].clone()
        }
    }

    /// `(C^-1)^i_j`.
    pub fn metric_inv(&self, i: usize, j: usize) -> Scalar {
        if self.metric.is_empty() || i != self.prime(j) {
            Scalar::zero()
        } else {
            self.metric[j].inv().expect("metric entries are monomials")
        }
    }

    pub fn has_metric(&self) -> bool {
        !self.metric.is_empty()
    }

    /// `gamma_i` with `S^2(u^i_j) = gamma_i gamma_j^-1 u^i_j`.
    pub fn gamma(&self, i: usize) -> Result<Scalar> {
        self.gamma
            .as_ref()
            .map(|g| g[i].clone())
            .ok_or_else(|| Error::Unsupported(format!("gamma_i is not available for {}", self.family)))
    }

    pub fn has_gamma(&self) -> bool {
        self.gamma.is_some()
    }

    /// Normalization factor of `l^+` (its inverse normalizes `l^-`).
    pub fn z(&self) -> &Scalar {
        &self.z
    }

    /// Exponent denominator needed to represent every structure constant.
    pub fn exponent_denominator(&self) -> i64 {
        use num::integer::Integer;
        self.metric.iter().chain(std::iter::once(&self.z)).map(|s| s.exponent_denominator()).fold(1, |a, b| a.lcm(&b))
    }

    pub fn label(&self) -> String {
        format!("{}({})", self.family, self.n)
    }
}

/// `rho_i` as a fraction `(num, den)` for the metric families.
fn rho(family: Family, n: usize, i: usize) -> (i64, i64) {
    let n_ = n as i64;
    let i_ = i as i64;
    let p = n_ - 1 - i_;
    match family {
        Family::Spq => {
            let h = n_ / 2;
            if i_ < h {
                (h - i_, 1)
            } else {
                (-(h - p), 1)
            }
        }
        _ => {
            // N/2 - (i + 1) in halves.
            let half = |k: i64| n_ - 2 * (k + 1);
            if n % 2 == 1 {
                let m = (n_ - 1) / 2;
                match i_.cmp(&m) {
                    std::cmp::Ordering::Less => (half(i_), 2),
                    std::cmp::Ordering::Equal => (0, 1),
                    std::cmp::Ordering::Greater => (-half(p), 2),
                }
            } else if i_ < n_ / 2 {
                (half(i_), 2)
            } else {
                (-half(p), 2)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonal_metric_exponents() {
        let g = GroupSpec::o(3);
        assert_eq!(g.metric(0, 2), "q^(-1/2)".parse().unwrap());
        assert_eq!(g.metric(1, 1), Scalar::one());
        assert_eq!(g.metric(2, 0), "q^(1/2)".parse().unwrap());
        assert_eq!(g.exponent_denominator(), 2);
        let g4 = GroupSpec::o(4);
        assert_eq!(g4.metric(0, 3), Scalar::q_pow(-1));
        assert_eq!(g4.metric(1, 2), Scalar::one());
    }

    #[test]
    fn symplectic_signs() {
        let g = GroupSpec::sp(4);
        assert_eq!(g.metric(0, 3), Scalar::q_pow(-2));
        assert_eq!(g.metric(3, 0), -Scalar::q_pow(2));
        assert_eq!(&g.metric(2, 1) * &g.metric_inv(1, 2), Scalar::one());
    }
}
