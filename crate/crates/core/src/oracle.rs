//! Zero tests for algebra elements, combined across independent back ends.

use std::sync::Arc;

use num::BigRational;
use serde::Serialize;

use crate::fralgebra::{AlgebraElement, GroupSpec, Pbw};
use crate::numeric::{default_q0, DenseModel};
use crate::ufunctionals::PairingEngine;
use crate::Result;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub use_pbw: bool,
    pub use_pairing: bool,
    pub use_numeric: bool,
    /// Longest `L^{+-}` tensor pattern used by the symbolic pairing test.
    pub pairing_bound: usize,
    pub numeric_bound: usize,
    /// Specialization point of the numeric model; `None` picks a default
    /// with rational roots.
    pub q0: Option<BigRational>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { use_pbw: true, use_pairing: true, use_numeric: true, pairing_bound: 4, numeric_bound: 2, q0: None }
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct ZeroVerdict {
    pub pbw: Option<bool>,
    pub pairing: Option<bool>,
    pub numeric: Option<bool>,
    pub witness: Option<String>,
}

impl ZeroVerdict {
    /// Zero only if every oracle that ran says so.
    pub fn is_zero(&self) -> bool {
        [self.pbw, self.pairing, self.numeric].iter().flatten().all(|&b| b)
    }

    pub fn agree(&self) -> bool {
        let v: Vec<bool> = [self.pbw, self.pairing, self.numeric].into_iter().flatten().collect();
        v.windows(2).all(|w| w[0] == w[1])
    }

    pub fn oracles(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.pbw.is_some() {
            v.push("pbw");
        }
        if self.pairing.is_some() {
            v.push("pairing");
        }
        if self.numeric.is_some() {
            v.push("numeric");
        }
        v
    }
}

/// Shared evaluation context for one quantum group.
pub struct Context {
    pub group: GroupSpec,
    pub engine: Arc<PairingEngine>,
    pub pbw: Option<Arc<Pbw>>,
    pub numeric: Option<Arc<DenseModel>>,
    pub config: OracleConfig,
}

impl Context {
    pub fn new(g: &GroupSpec, config: OracleConfig) -> Result<Self> {
        let engine = Arc::new(PairingEngine::new(g)?);
        let pbw = if config.use_pbw && g.family.is_linear() { Some(Arc::new(Pbw::new(g)?)) } else { None };
        let numeric = if config.use_numeric { Some(Arc::new(DenseModel::new(g, config.q0.as_ref().unwrap_or(&default_q0(g)))?)) } else { None };
        Ok(Context { group: g.clone(), engine, pbw, numeric, config })
    }

    pub fn n(&self) -> usize {
        self.group.n
    }

    pub fn zero_test(&self, a: &AlgebraElement) -> Result<ZeroVerdict> {
        let mut v = ZeroVerdict::default();
        if let Some(p) = &self.pbw {
            let nf = p.normal_form(a)?;
            let z = nf.is_trivially_zero();
            if !z {
                v.witness = Some(format!("normal form {nf}"));
            }
            v.pbw = Some(z);
        }
        if self.config.use_pairing {
            let w = self.engine.zero_test(a, self.config.pairing_bound)?;
            v.pairing = Some(w.is_none());
            if v.witness.is_none() {
                v.witness = w;
            }
        }
        if let Some(m) = &self.numeric {
            let w = m.zero_test(a, self.config.numeric_bound)?;
            v.numeric = Some(w.is_none());
            if v.witness.is_none() {
                v.witness = w;
            }
        }
        Ok(v)
    }

    /// Cheapest sound equality check: PBW when available, pairing otherwise.
    pub fn quick_zero(&self, a: &AlgebraElement) -> Result<bool> {
        if let Some(p) = &self.pbw {
            return p.is_zero(a);
        }
        Ok(self.engine.zero_test(a, self.config.pairing_bound)?.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fralgebra::algebra::Letter;

    #[test]
    fn rtt_relation_is_zero_everywhere() {
        let g = GroupSpec::gl(2);
        let ctx = Context::new(&g, OracleConfig::default()).unwrap();
        let a = AlgebraElement::word(&[Letter::u(0, 1), Letter::u(0, 0)]);
        let b = AlgebraElement::word(&[Letter::u(0, 0), Letter::u(0, 1)]).scale(&crate::Scalar::q_pow(-1));
        let v = ctx.zero_test(&(&a - &b)).unwrap();
        assert!(v.is_zero() && v.agree(), "{v:?}");
        let w = ctx.zero_test(&a).unwrap();
        assert!(!w.is_zero() && w.agree());
    }
}
