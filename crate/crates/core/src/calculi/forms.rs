//! One-forms in the left-invariant basis and the bimodule operations on them.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use crate::calculi::{Calculus, CalculusKind, Structure};
use crate::fralgebra::{AlgebraElement, Letter, Monomial};
use crate::oracle::{Context, ZeroVerdict};
use crate::scalar::{Scalar, ScalarFraction};
use crate::ufunctionals::linsolve;
use crate::ufunctionals::span::words_up_to;
use crate::{Error, Result};

/// `sum_r c_r theta_r` with algebra coefficients on the left.
#[derive(Clone, Debug, PartialEq)]
pub struct OneForm {
    pub coeffs: Vec<AlgebraElement>,
}

impl OneForm {
    pub fn zero(dim: usize) -> Self {
        OneForm { coeffs: vec![AlgebraElement::zero(); dim] }
    }

    /// `a * theta_r`.
    pub fn basis(dim: usize, r: usize, a: AlgebraElement) -> Self {
        let mut f = OneForm::zero(dim);
        f.coeffs[r] = a;
        f
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        OneForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        OneForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> OneForm {
        OneForm { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// Left module action `a * form`.
    pub fn lmul(&self, a: &AlgebraElement) -> OneForm {
        OneForm { coeffs: self.coeffs.iter().map(|c| a * c).collect() }
    }

    pub fn add_scaled(&mut self, other: &OneForm, c: &Scalar) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = &*a + &b.scale(c);
        }
    }

    pub fn is_trivially_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_trivially_zero())
    }

    pub fn render(&self, labels: &[String]) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(labels)
            .filter(|(c, _)| !c.is_trivially_zero())
            .map(|(c, l)| format!("({c}) {l}"))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..self.dim()).map(|i| format!("w{}", i + 1)).collect();
        write!(f, "{}", self.render(&labels))
    }
}

/// Differential and commutation rules of a calculus, with memoized letter data.
pub struct FormEngine<'a> {
    pub calc: &'a Calculus,
    pub ctx: &'a Context,
    tilde: Vec<AlgebraElement>,
    comm: RwLock<HashMap<(usize, Letter), Vec<Scalar>>>,
    dletter: RwLock<HashMap<Letter, OneForm>>,
}

impl<'a> FormEngine<'a> {
    pub fn new(calc: &'a Calculus, ctx: &'a Context) -> Self {
        let tilde = calc
            .duals
            .iter()
            .map(|a| a - &AlgebraElement::scalar(a.counit()))
            .collect();
        FormEngine { calc, ctx, tilde, comm: RwLock::default(), dletter: RwLock::default() }
    }

    pub fn dim(&self) -> usize {
        self.calc.dim()
    }

    pub fn zero(&self) -> OneForm {
        OneForm::zero(self.dim())
    }

    /// `f^r_k(b)` for a single letter `b`.
    pub fn f_value(&self, r: usize, k: usize, b: &Letter) -> Result<Scalar> {
        let v = match &self.calc.structure {
            Structure::Closed(f) => self.ctx.engine.eval(&f[r][k], &AlgebraElement::letter(*b))?,
            Structure::Dual => {
                let ab = &self.tilde[r] * &AlgebraElement::letter(*b);
                self.ctx.engine.eval(&self.calc.basis[k], &ab)?
            }
        };
        v.try_scalar().map_err(|_| Error::Inconsistent(format!("structure functional f^{r}_{k}({b}) = {v} is not a Laurent polynomial")))
    }

    /// Scalars `f^r_k(b)` for all `k`.
    fn f_row(&self, r: usize, b: &Letter) -> Result<Vec<Scalar>> {
        if let Some(v) = self.comm.read().unwrap().get(&(r, *b)) {
            return Ok(v.clone());
        }
        let row = (0..self.dim()).map(|k| self.f_value(r, k, b)).collect::<Result<Vec<_>>>()?;
        self.comm.write().unwrap().insert((r, *b), row.clone());
        Ok(row)
    }

    /// `theta_r . l = sum l_(1) f^r_k(l_(2)) theta_k`.
    pub fn theta_times_letter(&self, r: usize, l: &Letter) -> Result<OneForm> {
        let n = self.calc.n();
        let mut out = self.zero();
        for (l1, l2) in l.coproduct(n) {
            let row = self.f_row(r, &l2)?;
            for (k, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    out.coeffs[k].add_term(Monomial::word(&[l1]), v);
                }
            }
        }
        Ok(out)
    }

    /// Right module action of a single letter.
    pub fn rmul_letter(&self, form: &OneForm, l: &Letter) -> Result<OneForm> {
        let mut out = self.zero();
        for (r, c) in form.coeffs.iter().enumerate() {
            if c.is_trivially_zero() {
                continue;
            }
            let t = self.theta_times_letter(r, l)?;
            out = out.add(&t.lmul(c));
        }
        Ok(out)
    }

    /// Right module action `form * a`.
    pub fn rmul(&self, form: &OneForm, a: &AlgebraElement) -> Result<OneForm> {
        let mut out = self.zero();
        for (m, c) in a.terms() {
            if m.det != 0 {
                return Err(Error::Unsupported("determinant powers in one-form products".into()));
            }
            let mut f = form.clone();
            for l in &m.letters {
                f = self.rmul_letter(&f, l)?;
            }
            out.add_scaled(&f, c);
        }
        Ok(out)
    }

    /// `theta_r * a`.
    pub fn theta_times(&self, r: usize, a: &AlgebraElement) -> Result<OneForm> {
        self.rmul(&OneForm::basis(self.dim(), r, AlgebraElement::one()), a)
    }

    /// `d` of a single letter.
    pub fn d_letter(&self, l: &Letter) -> Result<OneForm> {
        if let Some(f) = self.dletter.read().unwrap().get(l) {
            return Ok(f.clone());
        }
        let f = if self.calc.kind == CalculusKind::Bicovariant { self.d_letter_bicovariant(l)? } else { self.d_letter_tangent(l)? };
        self.dletter.write().unwrap().insert(*l, f.clone());
        Ok(f)
    }

    /// `d a = a_(1) X_s(a_(2)) theta_s`.
    fn d_letter_tangent(&self, l: &Letter) -> Result<OneForm> {
        let n = self.calc.n();
        let mut out = self.zero();
        for (l1, l2) in l.coproduct(n) {
            for (s, x) in self.calc.basis.iter().enumerate() {
                let v = self.ctx.engine.eval(x, &AlgebraElement::letter(l2))?.try_scalar()?;
                if !v.is_zero() {
                    out.coeffs[s].add_term(Monomial::word(&[l1]), &v);
                }
            }
        }
        Ok(out)
    }

    /// `d u^a_b = u^a_k omega_kb`, `d S(u^a_b) = -omega_ac S(u^c_b)`.
    fn d_letter_bicovariant(&self, l: &Letter) -> Result<OneForm> {
        let n = self.calc.n();
        let mut out = self.zero();
        let (a, b) = (l.row(), l.col());
        if !l.anti {
            for k in 0..n {
                out.coeffs[k * n + b].add_term(Monomial::word(&[Letter::u(a, k)]), &Scalar::one());
            }
        } else {
            for c in 0..n {
                let t = self.theta_times_letter(a * n + c, &Letter::s(c, b))?;
                out = out.sub(&t);
            }
        }
        Ok(out)
    }

    /// `d a` by the Leibniz rule over the letters of each word.
    pub fn d(&self, a: &AlgebraElement) -> Result<OneForm> {
        let mut out = self.zero();
        for (m, c) in a.terms() {
            if m.det != 0 {
                return Err(Error::Unsupported("differential of determinant powers".into()));
            }
            for (pos, l) in m.letters.iter().enumerate() {
                let left = AlgebraElement::word(&m.letters[..pos]);
                let right = AlgebraElement::word(&m.letters[pos + 1..]);
                let f = self.rmul(&self.d_letter(l)?, &right)?.lmul(&left);
                out.add_scaled(&f, c);
            }
        }
        Ok(out)
    }

    /// `a . d b`.
    pub fn a_db(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<OneForm> {
        Ok(self.d(b)?.lmul(a))
    }

    /// `d a . b`.
    pub fn da_b(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<OneForm> {
        self.rmul(&self.d(a)?, b)
    }

    /// Zero test of every coefficient; the verdict is zero only if every
    /// coefficient is zero under every enabled oracle.
    pub fn zero_test(&self, f: &OneForm) -> Result<ZeroVerdict> {
        let mut total = ZeroVerdict::default();
        let mut first = true;
        for (r, c) in f.coeffs.iter().enumerate() {
            let v = self.ctx.zero_test(c)?;
            let merge = |a: Option<bool>, b: Option<bool>| match (a, b) {
                (Some(x), Some(y)) => Some(x && y),
                (x, None) => x,
                (None, y) => y,
            };
            if first {
                total = v.clone();
                first = false;
            } else {
                total.pbw = merge(total.pbw, v.pbw);
                total.pairing = merge(total.pairing, v.pairing);
                total.numeric = merge(total.numeric, v.numeric);
            }
            if total.witness.is_none() || (v.witness.is_some() && total.is_zero()) {
                if let Some(w) = v.witness {
                    total.witness = Some(format!("coefficient of {}: {w}", self.calc.labels[r]));
                }
            }
        }
        Ok(total)
    }

    pub fn quick_zero(&self, f: &OneForm) -> Result<bool> {
        for c in &f.coeffs {
            if !self.ctx.quick_zero(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Result of solving for the structure functionals.
#[derive(Clone, Debug)]
pub struct FMatrix {
    /// `values[(r, k, letter)] = f^r_k(letter)`.
    pub values: HashMap<(usize, usize, Letter), ScalarFraction>,
    pub rows_used: usize,
    pub degree_bound: usize,
}

impl FMatrix {
    pub fn get(&self, r: usize, k: usize, l: &Letter) -> ScalarFraction {
        self.values.get(&(r, k, *l)).cloned().unwrap_or_else(ScalarFraction::zero)
    }
}

/// Solve `X_k(a b) - eps(a) X_k(b) = sum_i X_i(a) f^i_k(b)` for `f^i_k` on every
/// letter `b`, with `a` ranging over words of length `<= degree_bound - 1`.
/// A consistent system certifies that the span of the basis is a quantum
/// tangent space up to that degree.
pub fn solve_f_matrix(ctx: &Context, c: &Calculus, degree_bound: usize) -> Result<FMatrix> {
    if c.basis.is_empty() {
        return Err(Error::Unsupported(format!("{} has no tangent basis to solve against", c.kind)));
    }
    let e = &ctx.engine;
    let letters = c.letters();
    let words = words_up_to(&letters, degree_bound.saturating_sub(1).max(1));
    let dim = c.dim();
    let a_mat: Vec<Vec<ScalarFraction>> =
        words.iter().map(|w| c.basis.iter().map(|x| e.eval_word(x, w)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let mut values = HashMap::new();
    for b in &letters {
        let mut rhs = Vec::with_capacity(dim);
        for x in &c.basis {
            let xb = e.eval_word(x, &[*b])?;
            let col = words
                .iter()
                .map(|w| {
                    let mut ab = w.clone();
                    ab.push(*b);
                    let eps_a = Monomial::word(w).counit();
                    Ok(&e.eval_word(x, &ab)? - &(&ScalarFraction::from(eps_a) * &xb))
                })
                .collect::<Result<Vec<_>>>()?;
            rhs.push(col);
        }
        let sols = linsolve::solve(&a_mat, &rhs)
            .map_err(|_| Error::NotATangentSpace(format!("{}: structure system inconsistent on letter {b} at degree {degree_bound}", c.kind)))?;
        for (k, sol) in sols.into_iter().enumerate() {
            for (i, v) in sol.into_iter().enumerate() {
                if !v.is_zero() {
                    values.insert((i, k, *b), v);
                }
            }
        }
    }
    Ok(FMatrix { values, rows_used: words.len(), degree_bound })
}

/// Compare solved structure values with closed forms `expected[r][k]`.
pub fn compare_f_matrix(ctx: &Context, c: &Calculus, f: &FMatrix, expected: &[Vec<crate::ufunctionals::FunctionalElement>]) -> Result<Option<String>> {
    for l in c.letters() {
        for (r, row) in expected.iter().enumerate() {
            for (k, fe) in row.iter().enumerate() {
                let want = ctx.engine.eval(fe, &AlgebraElement::letter(l))?;
                let got = f.get(r, k, &l);
                if want != got {
                    return Ok(Some(format!("f^{}_{}({l}) solved as {got}, closed form gives {want}", r + 1, k + 1)));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculi::{build_gamma_x, build_gamma_z, default_zn};
    use crate::fralgebra::GroupSpec;
    use crate::oracle::OracleConfig;

    #[test]
    fn gamma_x_quantum_plane_rule() {
        let ctx = Context::new(&GroupSpec::gl(2), OracleConfig::default()).unwrap();
        let c = build_gamma_x(&ctx).unwrap();
        let fe = FormEngine::new(&c, &ctx);
        let x1 = AlgebraElement::u(0, 1);
        let lhs = fe.da_b(&x1, &x1).unwrap();
        let rhs = fe.a_db(&x1, &x1).unwrap().scale(&Scalar::q_pow(-2));
        let v = fe.zero_test(&lhs.sub(&rhs)).unwrap();
        assert!(v.is_zero() && v.agree(), "{v:?}");
    }

    #[test]
    fn solver_matches_closed_form_and_x_row() {
        let ctx = Context::new(&GroupSpec::gl(2), OracleConfig::default()).unwrap();
        let c = build_gamma_x(&ctx).unwrap();
        let f = solve_f_matrix(&ctx, &c, 3).unwrap();
        assert_eq!(compare_f_matrix(&ctx, &c, &f, c.expected_f.as_ref().unwrap()).unwrap(), None);
        let z = build_gamma_z(&ctx, 1, &default_zn(&ctx.group)).unwrap();
        let fz = solve_f_matrix(&ctx, &z, 3).unwrap();
        // Delta(X_n) - eps (x) X_n = X_n (x) Z_n.
        let nrow = 1;
        for l in z.letters() {
            let zval = ctx.engine.eval(&crate::ufunctionals::FunctionalElement::group(z.zn.clone().unwrap()), &AlgebraElement::letter(l)).unwrap();
            for i in 0..z.dim() {
                let want = if i == nrow { zval.clone() } else { ScalarFraction::zero() };
                assert_eq!(fz.get(i, nrow, &l), want, "f^{i}_n({l})");
            }
        }
    }
}
