//! Span membership of functionals, decided on a finite set of monomials.

use crate::fralgebra::algebra::Letter;
use crate::scalar::ScalarFraction;
use crate::ufunctionals::functional::FunctionalElement;
use crate::ufunctionals::linsolve;
use crate::ufunctionals::pairing::PairingEngine;
use crate::Result;

/// All words of length `<= max_len` in the given letters, shortest first.
pub fn words_up_to(letters: &[Letter], max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |l| {
                    let mut v = w.clone();
                    v.push(*l);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpanResult {
    /// Coefficients `c_j` with `target = sum c_j basis_j` on every monomial tested.
    InSpan(Vec<ScalarFraction>),
    /// No solution; `witness` names a monomial on which consistency fails.
    NotInSpan { witness: String },
}

impl SpanResult {
    pub fn coefficients(&self) -> Option<&[ScalarFraction]> {
        match self {
            SpanResult::InSpan(c) => Some(c),
            SpanResult::NotInSpan { .. } => None,
        }
    }
}

/// Pairing matrix `<basis_j, w_i>` (rows: words, columns: basis).
pub fn pairing_matrix(
    engine: &PairingEngine,
    basis: &[FunctionalElement],
    words: &[Vec<Letter>],
) -> Result<Vec<Vec<ScalarFraction>>> {
    words
        .iter()
        .map(|w| basis.iter().map(|b| engine.eval_word(b, w)).collect::<Result<Vec<_>>>())
        .collect()
}

/// Decide whether `target` lies in the span of `basis`, restricted to words of
/// length `<= degree_bound` in `letters`.
pub fn express_in_span(
    engine: &PairingEngine,
    target: &FunctionalElement,
    basis: &[FunctionalElement],
    letters: &[Letter],
    degree_bound: usize,
) -> Result<SpanResult> {
    let words = words_up_to(letters, degree_bound);
    let a = pairing_matrix(engine, basis, &words)?;
    let b: Vec<ScalarFraction> = words.iter().map(|w| engine.eval_word(target, w)).collect::<Result<_>>()?;
    match linsolve::solve(&a, &[b.clone()]) {
        Ok(mut sol) => Ok(SpanResult::InSpan(sol.remove(0))),
        Err(_) => {
            // Locate a monomial that breaks consistency for the report.
            let mut witness = "unknown".to_string();
            for k in 1..=words.len() {
                if linsolve::solve(&a[..k], &[b[..k].to_vec()]).is_err() {
                    witness = words[k - 1].iter().map(|l| l.to_string()).collect::<Vec<_>>().join(".");
                    if witness.is_empty() {
                        witness = "1".into();
                    }
                    break;
                }
            }
            Ok(SpanResult::NotInSpan { witness })
        }
    }
}

/// True when `f` vanishes on every word of length `<= degree_bound`.
pub fn functional_vanishes(
    engine: &PairingEngine,
    f: &FunctionalElement,
    letters: &[Letter],
    degree_bound: usize,
) -> Result<bool> {
    for w in words_up_to(letters, degree_bound) {
        if !engine.eval_word(f, &w)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
