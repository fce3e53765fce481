//! Independent numeric oracle: dense contraction at a rational value of `q`.
//!
//! Everything here is rebuilt from the defining formulas with `BigRational`
//! arithmetic and dense loops; it shares no evaluation code with the symbolic
//! engine, so agreement between the two is a meaningful cross-check.

use num::rational::BigRational;
use num::traits::{One, Pow, Zero};

use crate::fralgebra::algebra::{AlgebraElement, Letter, Monomial};
use crate::fralgebra::group::{Family, GroupSpec};
use crate::scalar::exact_root;
use crate::ufunctionals::functional::{Factor, FunctionalElement, GroupLike, Product, Sign};
use crate::{Error, Result};

type Q = BigRational;

fn rat(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Default specialization point for a group: `(7/10)^D` where `D` is the
/// exponent denominator needed by the group's structure constants.
pub fn default_q0(g: &GroupSpec) -> Q {
    let d = g.exponent_denominator();
    Pow::pow(&rat(7, 10), d as u64)
}

pub struct DenseModel {
    pub n: usize,
    pub q0: Q,
    family: Family,
    r: Vec<Q>,
    rinv: Vec<Q>,
    z: Q,
    gamma: Option<Vec<Q>>,
}

fn gauss_jordan_inverse(m: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).ok_or_else(|| Error::Inconsistent("singular matrix".into()))?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(pivot.iter()) {
                    *x = &*x - &(&f * p);
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl DenseModel {
    pub fn new(g: &GroupSpec, q0: &Q) -> Result<Self> {
        let n = g.n;
        let q = q0.clone();
        let qi = q.recip();
        let h = &q - &qi;
        let idx = |i: usize, j: usize, k: usize, l: usize| ((i * n + j) * n + k) * n + l;
        let mut r = vec![Q::zero(); n * n * n * n];
        let mut z = Q::one();
        let mut gamma = None;
        match g.family {
            Family::GLq | Family::SLq => {
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            for l in 0..n {
                                let mut v = Q::zero();
                                if i == l && j == k {
                                    v += if i == j { q.clone() } else { Q::one() };
                                }
                                if j > i && i == k && j == l {
                                    v += h.clone();
                                }
                                r[idx(i, j, k, l)] = v;
                            }
                        }
                    }
                }
                if g.family == Family::SLq {
                    z = exact_root(&q, n as i64)?.recip();
                }
                gamma = Some((0..n).map(|i| Pow::pow(&q, 2 * (i as u64 + 1))).collect());
            }
            Family::Oq | Family::Spq => {
                let s = if g.exponent_denominator() % 2 == 0 { exact_root(&q, 2)? } else { Q::zero() };
                let eps: i64 = if g.family == Family::Oq { 1 } else { -1 };
                let prime = |i: usize| n - 1 - i;
                // 2*rho_i as an integer.
                let two_rho = |i: usize| -> i64 {
                    let (ni, ii) = (n as i64, i as i64);
                    let p = ni - 1 - ii;
                    if eps == -1 {
                        let hh = ni / 2;
                        if ii < hh { 2 * (hh - ii) } else { -2 * (hh - p) }
                    } else if n % 2 == 1 && ii == (ni - 1) / 2 {
                        0
                    } else if ii < ni / 2 {
                        ni - 2 * (ii + 1)
                    } else {
                        -(ni - 2 * (p + 1))
                    }
                };
                let cval = |i: usize, j: usize| -> Q {
                    if j != prime(i) {
                        return Q::zero();
                    }
                    let e = -two_rho(i);
                    let (b, k) = if e % 2 == 0 { (q.clone(), e / 2) } else { (s.clone(), e) };
                    let base = if k >= 0 { Pow::pow(&b, k as u64) } else { Pow::pow(&b.recip(), (-k) as u64) };
                    if eps == 1 || i < n / 2 { base } else { -base }
                };
                for j in 0..n {
                    for i in 0..n {
                        for m in 0..n {
                            for nn in 0..n {
                                let mut v = Q::zero();
                                if i == m && j == nn {
                                    let e = (i == j) as i64 - (i == prime(j)) as i64;
                                    v += match e {
                                        1 => q.clone(),
                                        -1 => qi.clone(),
                                        _ => Q::one(),
                                    };
                                }
                                if i > m {
                                    let mut t = if j == m && i == nn { Q::one() } else { Q::zero() };
                                    t -= rat(eps, 1) * cval(j, i) * cval(m, nn);
                                    v += &h * t;
                                }
                                r[idx(j, i, m, nn)] = v;
                            }
                        }
                    }
                }
            }
        }
        let mat: Vec<Vec<Q>> = (0..n * n).map(|a| (0..n * n).map(|b| r[a * n * n + b].clone()).collect()).collect();
        let inv = gauss_jordan_inverse(&mat)?;
        let rinv = inv.into_iter().flatten().collect();
        Ok(DenseModel { n, q0: q, family: g.family, r, rinv, z, gamma })
    }

    fn at(&self, m: &[Q], i: usize, j: usize, k: usize, l: usize) -> Q {
        m[((i * self.n + j) * self.n + k) * self.n + l].clone()
    }

    fn gamma(&self, i: usize) -> Result<Q> {
        self.gamma
            .as_ref()
            .map(|g| g[i].clone())
            .ok_or_else(|| Error::Unsupported("antipode letters in the numeric model".into()))
    }

    /// `<l^{sign,i}_k or S(...), u^a_b>`.
    fn atom_u(&self, sign: Sign, antipode: bool, i: usize, k: usize, a: usize, b: usize) -> Q {
        let zi = self.z.recip();
        match (sign, antipode) {
            (Sign::Plus, false) => &self.z * self.at(&self.r, i, a, b, k),
            (Sign::Minus, false) => &zi * self.at(&self.rinv, i, a, b, k),
            (Sign::Plus, true) => &zi * self.at(&self.rinv, a, i, k, b),
            (Sign::Minus, true) => &self.z * self.at(&self.r, a, i, k, b),
        }
    }

    fn atom_letter(&self, sign: Sign, antipode: bool, i: usize, k: usize, l: &Letter) -> Result<Q> {
        let (a, b) = (l.row(), l.col());
        if !l.anti {
            return Ok(self.atom_u(sign, antipode, i, k, a, b));
        }
        if antipode {
            Ok(self.gamma(a)? / self.gamma(b)? * self.atom_u(sign, false, i, k, a, b))
        } else {
            self.gamma(0)?;
            Ok(self.atom_u(sign, true, i, k, a, b))
        }
    }

    fn char_letter(&self, g: &GroupLike, l: &Letter) -> Result<Q> {
        if l.row != l.col {
            return Ok(Q::zero());
        }
        if l.anti {
            self.gamma(0)?;
        }
        let a = l.row();
        let mut v = Q::one();
        for k in 0..self.n {
            for (sign, e) in [(Sign::Plus, g.plus[k]), (Sign::Minus, g.minus[k])] {
                let base = self.atom_u(sign, false, k, k, a, a);
                if e > 0 {
                    v *= Pow::pow(&base, e as u64);
                } else if e < 0 {
                    v *= Pow::pow(&base.recip(), (-e) as u64);
                }
            }
        }
        if g.sign(a) < 0 {
            v = -v;
        }
        Ok(if l.anti { v.recip() } else { v })
    }

    /// Dense `n x n` (or `1 x 1`) matrix of a single factor on a single letter,
    /// indexed by (start state, end state).
    fn factor_matrix(&self, f: &Factor, l: &Letter) -> Result<Vec<Vec<Q>>> {
        let n = self.n;
        match f {
            Factor::Group(g) => Ok(vec![vec![self.char_letter(g, l)?]]),
            Factor::Atom(a) => {
                let mut m = vec![vec![Q::zero(); n]; n];
                for i in 0..n {
                    for k in 0..n {
                        let v = self.atom_letter(a.sign, a.antipode, i, k, l)?;
                        if a.antipode {
                            m[k][i] = v;
                        } else {
                            m[i][k] = v;
                        }
                    }
                }
                Ok(m)
            }
        }
    }

    /// Dense matrix of a letter under the product representation.
    fn product_letter(&self, p: &Product, l: &Letter) -> Result<(Vec<usize>, Vec<Vec<Q>>)> {
        let n = self.n;
        let dims: Vec<usize> = p.iter().map(|f| if matches!(f, Factor::Group(_)) { 1 } else { n }).collect();
        let dim: usize = dims.iter().product();
        if p.is_empty() {
            let v = if l.row == l.col { Q::one() } else { Q::zero() };
            return Ok((dims, vec![vec![v]]));
        }
        let m = p.len();
        let mut out = vec![vec![Q::zero(); dim]; dim];
        // Enumerate the intermediate chain c_1..c_{m-1}.
        let chains = m - 1;
        let total = n.pow(chains as u32);
        for code in 0..total {
            let mut chain = Vec::with_capacity(m + 1);
            chain.push(l.row());
            let mut rest = code;
            for _ in 0..chains {
                chain.push(rest % n);
                rest /= n;
            }
            chain.push(l.col());
            // Leg t of the chain goes to factor t (or m-1-t for antipode letters).
            let mut mats = vec![Vec::new(); m];
            for t in 0..m {
                let s = if l.anti { m - 1 - t } else { t };
                let leg = Letter { anti: l.anti, row: chain[t] as u8, col: chain[t + 1] as u8 };
                mats[s] = self.factor_matrix(&p[s], &leg)?;
            }
            // Kronecker product of the factor matrices.
            for r in 0..dim {
                for c in 0..dim {
                    let (mut rr, mut cc) = (r, c);
                    let mut v = Q::one();
                    for s in (0..m).rev() {
                        let (ri, ci) = (rr % dims[s], cc % dims[s]);
                        rr /= dims[s];
                        cc /= dims[s];
                        let x = &mats[s][ri][ci];
                        if x.is_zero() {
                            v = Q::zero();
                            break;
                        }
                        v *= x;
                    }
                    if !v.is_zero() {
                        out[r][c] += v;
                    }
                }
            }
        }
        Ok((dims, out))
    }

    fn matmul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
        let n = a.len();
        let mut out = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if a[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !b[k][j].is_zero() {
                        out[i][j] += &a[i][k] * &b[k][j];
                    }
                }
            }
        }
        out
    }

    fn monomial_matrix(&self, p: &Product, m: &Monomial) -> Result<Vec<Vec<Q>>> {
        let n = self.n;
        let dim: usize = p.iter().map(|f| if matches!(f, Factor::Group(_)) { 1 } else { n }).product();
        let mut acc: Vec<Vec<Q>> = (0..dim).map(|i| (0..dim).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
        for l in &m.letters {
            let (_, lm) = self.product_letter(p, l)?;
            acc = Self::matmul(&acc, &lm);
        }
        if m.det != 0 {
            if !matches!(self.family, Family::GLq | Family::SLq) {
                return Err(Error::Unsupported("determinant in the numeric model".into()));
            }
            let mut dm: Vec<Vec<Q>> = vec![vec![Q::zero(); dim]; dim];
            for (w, c) in crate::fralgebra::pbw::quantum_determinant(n).terms() {
                let mut wm: Vec<Vec<Q>> = (0..dim).map(|i| (0..dim).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
                for l in &w.letters {
                    wm = Self::matmul(&wm, &self.product_letter(p, l)?.1);
                }
                let cv = c.specialize(&self.q0)?;
                for i in 0..dim {
                    for j in 0..dim {
                        dm[i][j] += &cv * &wm[i][j];
                    }
                }
            }
            let base = if m.det > 0 { dm } else { gauss_jordan_inverse(&dm)? };
            for _ in 0..m.det.unsigned_abs() {
                acc = Self::matmul(&acc, &base);
            }
        }
        Ok(acc)
    }

    fn layout(&self, p: &Product) -> (usize, usize) {
        let n = self.n;
        let (mut s, mut e) = (0, 0);
        for f in p {
            let (d, a, b) = match f {
                Factor::Group(_) => (1, 0, 0),
                Factor::Atom(a) if a.antipode => (n, a.col(), a.row()),
                Factor::Atom(a) => (n, a.row(), a.col()),
            };
            s = s * d + a;
            e = e * d + b;
        }
        (s, e)
    }

    pub fn eval_product(&self, p: &Product, m: &Monomial) -> Result<Q> {
        let (s, e) = self.layout(p);
        Ok(self.monomial_matrix(p, m)?[s][e].clone())
    }

    pub fn eval(&self, f: &FunctionalElement, a: &AlgebraElement) -> Result<Q> {
        let mut acc = Q::zero();
        for (p, c) in f.terms() {
            let cv = c.specialize(&self.q0)?;
            for (m, x) in a.terms() {
                let v = self.eval_product(p, m)?;
                if !v.is_zero() {
                    acc += &cv * x.specialize(&self.q0)? * v;
                }
            }
        }
        Ok(acc)
    }

    /// Zero test: `a` is annihilated by the counit and by every atom product of
    /// length `<= bound` (entries of `L^{+-}` tensor powers).
    pub fn zero_test(&self, a: &AlgebraElement, bound: usize) -> Result<Option<String>> {
        if !a.counit().specialize(&self.q0)?.is_zero() {
            return Ok(Some("counit (numeric)".into()));
        }
        let n = self.n;
        let mut layer: Vec<Vec<Sign>> = vec![Vec::new()];
        for _len in 1..=bound {
            layer = layer
                .iter()
                .flat_map(|p| [Sign::Plus, Sign::Minus].into_iter().map(move |s| {
                    let mut v = p.clone();
                    v.push(s);
                    v
                }))
                .collect();
            for signs in &layer {
                // A representative product: entries are read off the full matrix.
                let p: Product = signs
                    .iter()
                    .map(|s| Factor::Atom(crate::ufunctionals::functional::Atom { sign: *s, antipode: false, row: 0, col: 0 }))
                    .collect();
                let dim = n.pow(signs.len() as u32);
                let mut total = vec![vec![Q::zero(); dim]; dim];
                for (m, c) in a.terms() {
                    let cv = c.specialize(&self.q0)?;
                    let mm = self.monomial_matrix(&p, m)?;
                    for i in 0..dim {
                        for j in 0..dim {
                            if !mm[i][j].is_zero() {
                                total[i][j] += &cv * &mm[i][j];
                            }
                        }
                    }
                }
                for (i, row) in total.iter().enumerate() {
                    if let Some(j) = row.iter().position(|x| !x.is_zero()) {
                        return Ok(Some(format!("numeric pairing nonzero for sign pattern {:?} entry ({i},{j})", signs)));
                    }
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ufunctionals::functional::Atom;

    #[test]
    fn matches_symbolic_on_single_atoms() {
        let g = GroupSpec::gl(2);
        let q0 = default_q0(&g);
        let model = DenseModel::new(&g, &q0).unwrap();
        let eng = crate::ufunctionals::PairingEngine::new(&g).unwrap();
        for l in Letter::all(2, true) {
            for a in [Atom::plus(0, 1), Atom::minus(1, 0), Atom::s_plus(0, 1), Atom::s_minus(1, 1)] {
                let f = FunctionalElement::atom(a);
                let x = AlgebraElement::letter(l);
                let sym = eng.eval(&f, &x).unwrap().specialize(&q0).unwrap();
                assert_eq!(sym, model.eval(&f, &x).unwrap(), "{a} on {l}");
            }
        }
    }

    #[test]
    fn matches_symbolic_on_products_across_families() {
        for g in [GroupSpec::sl(3), GroupSpec::o(3), GroupSpec::o(4), GroupSpec::sp(4)] {
            let q0 = default_q0(&g);
            let model = DenseModel::new(&g, &q0).unwrap();
            let eng = crate::ufunctionals::PairingEngine::new(&g).unwrap();
            let n = g.n;
            let anti = g.has_gamma();
            let letters = Letter::all(n, anti);
            let f = FunctionalElement::atoms(&[Atom::plus(0, n - 1), Atom::minus(n - 1, 1)])
                + FunctionalElement::atoms(&[Atom::minus(1, 0)])
                + FunctionalElement::group(GroupLike::diag(n, Sign::Plus, 0, 2));
            for a in letters.iter().step_by(2) {
                for b in letters.iter().step_by(3) {
                    let x = AlgebraElement::word(&[*a, *b]);
                    let sym = eng.eval(&f, &x).unwrap().specialize(&q0).unwrap();
                    assert_eq!(sym, model.eval(&f, &x).unwrap(), "{} on {a}.{b}", g.label());
                }
            }
        }
    }
}
