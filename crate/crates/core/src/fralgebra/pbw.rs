//! PBW normal forms for `O(GL_q(N))` and `O(SL_q(N))`.
//!
//! Straightening rules `x y -> sum c p r` (x > y, p <= r) are derived from the
//! quadratic RTT relations by exact row reduction with descending pairs as
//! pivots. Antipode letters are expanded through quantum minors, inverse
//! determinants are cleared, and for `SL_q` the relation `detq = 1` is imposed
//! by homogenizing each residue class of the degree modulo `N`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::fralgebra::algebra::{defining_relations, AlgebraElement, Letter, Monomial};
use crate::fralgebra::group::{Family, GroupSpec};
use crate::fralgebra::rmatrix::build_rmatrix;
use crate::scalar::{Scalar, ScalarFraction};
use crate::ufunctionals::linsolve;
use crate::{Error, Result};

type Word = Vec<u8>;
type Poly = Vec<(Word, Scalar)>;

pub struct Pbw {
    pub group: GroupSpec,
    n: usize,
    /// `rules[x * n2 + y]` for x > y.
    rules: Vec<Option<Poly>>,
    insert_memo: RwLock<HashMap<(Word, u8), Arc<Poly>>>,
    det_memo: RwLock<HashMap<u32, Arc<Poly>>>,
}

fn sign_pow(q_exp: i64, neg: bool) -> Scalar {
    let s = Scalar::q_pow(q_exp);
    if neg {
        -s
    } else {
        s
    }
}

/// `(-q)^k`.
pub fn minus_q_pow(k: i64) -> Scalar {
    sign_pow(k, k.rem_euclid(2) == 1)
}

fn inversions(p: &[usize]) -> i64 {
    let mut c = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                c += 1;
            }
        }
    }
    c
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut v: Vec<usize> = p.iter().map(|&x| x).collect();
            v.insert(pos, k - 1);
            out.push(v);
        }
    }
    out
}

/// Quantum minor with rows `rows` and columns `cols` (both increasing):
/// `sum_sigma (-q)^{l(sigma)} u^{r_1}_{c_sigma(1)} ... u^{r_k}_{c_sigma(k)}`.
pub fn quantum_minor(rows: &[usize], cols: &[usize]) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for p in permutations(rows.len()) {
        let letters: Vec<Letter> = rows.iter().zip(p.iter()).map(|(&r, &s)| Letter::u(r, cols[s])).collect();
        out.add_term(Monomial::word(&letters), &minus_q_pow(inversions(&p)));
    }
    out
}

/// The quantum determinant as a polynomial in the letters.
pub fn quantum_determinant(n: usize) -> AlgebraElement {
    let all: Vec<usize> = (0..n).collect();
    quantum_minor(&all, &all)
}

/// `S(u^i_j) = (-q)^{i-j} det_q(rows != j, cols != i) detq^-1`.
pub fn antipode_letter(g: &GroupSpec, i: usize, j: usize) -> Result<AlgebraElement> {
    if !g.family.is_linear() {
        return Err(Error::Unsupported(format!("antipode expansion for {}", g.family)));
    }
    let rows: Vec<usize> = (0..g.n).filter(|&r| r != j).collect();
    let cols: Vec<usize> = (0..g.n).filter(|&c| c != i).collect();
    let minor = quantum_minor(&rows, &cols).scale(&minus_q_pow(i as i64 - j as i64));
    if g.family == Family::SLq {
        Ok(minor)
    } else {
        Ok(&minor * &AlgebraElement::det_pow(-1))
    }
}

/// Replace every `S(u^i_j)` by its quantum-minor expression.
pub fn antipode_expand(g: &GroupSpec, a: &AlgebraElement) -> Result<AlgebraElement> {
    let mut cache: HashMap<(usize, usize), AlgebraElement> = HashMap::new();
    let mut out = AlgebraElement::zero();
    for (m, c) in a.terms() {
        let mut acc = AlgebraElement::monomial(Monomial::det_pow(m.det), c.clone());
        for l in &m.letters {
            let piece = if l.anti {
                let key = (l.row(), l.col());
                if !cache.contains_key(&key) {
                    cache.insert(key, antipode_letter(g, l.row(), l.col())?);
                }
                cache[&key].clone()
            } else {
                AlgebraElement::letter(*l)
            };
            acc = &acc * &piece;
        }
        out = &out + &acc;
    }
    Ok(out)
}

impl Pbw {
    pub fn new(g: &GroupSpec) -> Result<Self> {
        if !g.family.is_linear() {
            return Err(Error::Unsupported(format!("PBW normal form for {}", g.family)));
        }
        let n = g.n;
        let n2 = n * n;
        let r = build_rmatrix(g);
        let rels = defining_relations(g, &r);
        // Column order: descending pairs first, then the rest.
        let mut cols: Vec<(u8, u8)> = Vec::new();
        for x in 0..n2 {
            for y in 0..x {
                cols.push((x as u8, y as u8));
            }
        }
        let ndesc = cols.len();
        for x in 0..n2 {
            for y in x..n2 {
                cols.push((x as u8, y as u8));
            }
        }
        let col_of: HashMap<(u8, u8), usize> = cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let code = |l: &Letter| (l.row() * n + l.col()) as u8;
        let rows: Vec<Vec<ScalarFraction>> = rels
            .iter()
            .map(|e| {
                let mut row = vec![ScalarFraction::zero(); cols.len()];
                for (m, c) in e.terms() {
                    let key = (code(&m.letters[0]), code(&m.letters[1]));
                    row[col_of[&key]] += &ScalarFraction::from(c.clone());
                }
                row
            })
            .collect();
        let (red, pivots) = linsolve::rref(rows);
        if pivots.len() != ndesc || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::AssumptionViolated(
                "quadratic relations do not straighten every descending pair".into(),
            ));
        }
        let mut rules = vec![None; n2 * n2];
        for (ri, &p) in pivots.iter().enumerate() {
            let (x, y) = cols[p];
            let mut poly = Vec::new();
            for c in ndesc..cols.len() {
                if !red[ri][c].is_zero() {
                    let v = (-&red[ri][c]).try_scalar()?;
                    let (a, b) = cols[c];
                    poly.push((vec![a, b], v));
                }
            }
            for c in 0..ndesc {
                if c != p && !red[ri][c].is_zero() {
                    return Err(Error::AssumptionViolated("straightening rule is not reduced".into()));
                }
            }
            rules[x as usize * n2 + y as usize] = Some(poly);
        }
        Ok(Pbw {
            group: g.clone(),
            n,
            rules,
            insert_memo: RwLock::new(HashMap::new()),
            det_memo: RwLock::new(HashMap::new()),
        })
    }

    /// Straightening rule for the descending pair `(x, y)` as readable text.
    pub fn rule_text(&self, x: Letter, y: Letter) -> Option<String> {
        let n2 = self.n * self.n;
        let c = |l: Letter| l.row() * self.n + l.col();
        let poly = self.rules[c(x) * n2 + c(y)].as_ref()?;
        Some(format!("{}.{} -> {}", x, y, self.poly_to_element(poly, 0)))
    }

    fn letter_of(&self, c: u8) -> Letter {
        Letter::u(c as usize / self.n, c as usize % self.n)
    }

    fn poly_to_element(&self, p: &Poly, det: i32) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, c) in p {
            let letters: Vec<Letter> = w.iter().map(|&x| self.letter_of(x)).collect();
            let mut m = Monomial::word(&letters);
            m.det = det;
            out.add_term(m, c);
        }
        out
    }

    /// Normal form of `s * x` where `s` is already sorted.
    fn insert(&self, s: &[u8], x: u8) -> Arc<Poly> {
        match s.last() {
            None => return Arc::new(vec![(vec![x], Scalar::one())]),
            Some(&y) if y <= x => {
                let mut w = s.to_vec();
                w.push(x);
                return Arc::new(vec![(w, Scalar::one())]);
            }
            _ => {}
        }
        let key = (s.to_vec(), x);
        if let Some(v) = self.insert_memo.read().unwrap().get(&key) {
            return v.clone();
        }
        let y = *s.last().unwrap();
        let prefix = &s[..s.len() - 1];
        let n2 = self.n * self.n;
        let rule = self.rules[y as usize * n2 + x as usize].as_ref().expect("rule for descending pair");
        let mut acc: HashMap<Word, Scalar> = HashMap::new();
        for (pr, c) in rule {
            let (p, r) = (pr[0], pr[1]);
            for (t, c1) in self.insert(prefix, p).iter() {
                for (u, c2) in self.insert(t, r).iter() {
                    let v = &(c * c1) * c2;
                    let e = acc.entry(u.clone()).or_insert_with(Scalar::zero);
                    *e += &v;
                }
            }
        }
        let mut out: Poly = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        let out = Arc::new(out);
        self.insert_memo.write().unwrap().insert(key, out.clone());
        out
    }

    fn nf_word(&self, w: &[u8]) -> Poly {
        let mut cur: HashMap<Word, Scalar> = HashMap::new();
        cur.insert(Vec::new(), Scalar::one());
        for &x in w {
            let mut next: HashMap<Word, Scalar> = HashMap::new();
            for (s, c) in &cur {
                for (t, c2) in self.insert(s, x).iter() {
                    let e = next.entry(t.clone()).or_insert_with(Scalar::zero);
                    *e += &(c * c2);
                }
            }
            next.retain(|_, c| !c.is_zero());
            cur = next;
        }
        let mut out: Poly = cur.into_iter().collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    fn det_power_poly(&self, k: u32) -> Arc<Poly> {
        if let Some(v) = self.det_memo.read().unwrap().get(&k) {
            return v.clone();
        }
        let p = if k == 0 {
            vec![(Vec::new(), Scalar::one())]
        } else {
            let d = quantum_determinant(self.n);
            let prev = self.det_power_poly(k - 1);
            let mut acc: HashMap<Word, Scalar> = HashMap::new();
            for (w, c) in prev.iter() {
                for (m, c2) in d.terms() {
                    let mut full = w.clone();
                    full.extend(m.letters.iter().map(|l| (l.row() * self.n + l.col()) as u8));
                    for (t, c3) in self.nf_word(&full) {
                        let e = acc.entry(t).or_insert_with(Scalar::zero);
                        *e += &(&(c * c2) * &c3);
                    }
                }
            }
            let mut out: Poly = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            out.sort_by(|a, b| a.0.cmp(&b.0));
            out
        };
        let p = Arc::new(p);
        self.det_memo.write().unwrap().insert(k, p.clone());
        p
    }

    /// Normal form of a polynomial (no antipode letters) after multiplying
    /// each term by `detq^{shift(term)}`.
    fn nf_poly<'a>(&self, terms: impl Iterator<Item = (&'a Monomial, &'a Scalar, u32)>) -> Poly {
        let mut acc: HashMap<Word, Scalar> = HashMap::new();
        for (m, c, dpow) in terms {
            let w: Word = m.letters.iter().map(|l| (l.row() * self.n + l.col()) as u8).collect();
            let base = self.nf_word(&w);
            if dpow == 0 {
                for (t, c2) in base {
                    let e = acc.entry(t).or_insert_with(Scalar::zero);
                    *e += &(c * &c2);
                }
            } else {
                let dp = self.det_power_poly(dpow);
                for (t, c2) in base {
                    for (dw, c3) in dp.iter() {
                        let mut full = t.clone();
                        full.extend(dw.iter().copied());
                        for (u, c4) in self.nf_word(&full) {
                            let e = acc.entry(u).or_insert_with(Scalar::zero);
                            *e += &(&(c * &c2) * &(c3 * &c4));
                        }
                    }
                }
            }
        }
        let mut out: Poly = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Canonical representative of `a`.
    ///
    /// GL_q: `P * detq^-K` with `K` the largest inverse-determinant power and
    /// `P` a sorted polynomial. SL_q: one homogenized sorted polynomial per
    /// residue class of the degree modulo `N`, summed.
    pub fn normal_form(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        let e = antipode_expand(&self.group, a)?;
        match self.group.family {
            Family::SLq => {
                let n = self.n;
                let mut out = AlgebraElement::zero();
                for r in 0..n {
                    let class: Vec<(&Monomial, &Scalar)> =
                        e.terms().filter(|(m, _)| (m.degree() % n) == r).collect();
                    let Some(top) = class.iter().map(|(m, _)| m.degree()).max() else { continue };
                    let poly = self.nf_poly(class.iter().map(|(m, c)| (*m, *c, ((top - m.degree()) / n) as u32)));
                    out = &out + &self.poly_to_element(&poly, 0);
                }
                Ok(out)
            }
            _ => {
                let kmax = e.terms().map(|(m, _)| -m.det).max().unwrap_or(0);
                let poly = self.nf_poly(e.terms().map(|(m, c)| (m, c, (kmax + m.det) as u32)));
                Ok(self.poly_to_element(&poly, -kmax))
            }
        }
    }

    /// Exact zero test modulo the defining relations.
    pub fn is_zero(&self, a: &AlgebraElement) -> Result<bool> {
        Ok(self.normal_form(a)?.is_trivially_zero())
    }

    /// Number of memoized straightening insertions (diagnostics).
    pub fn memo_size(&self) -> usize {
        self.insert_memo.read().unwrap().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_rules_are_the_standard_ones() {
        let p = Pbw::new(&GroupSpec::gl(2)).unwrap();
        // u12 u11 -> q^-1 u11 u12
        let t = p.rule_text(Letter::u(0, 1), Letter::u(0, 0)).unwrap();
        assert_eq!(t, "u[1,2].u[1,1] -> q^-1 * u[1,1].u[1,2]");
    }

    #[test]
    fn determinant_is_central_gl3() {
        let g = GroupSpec::gl(3);
        let p = Pbw::new(&g).unwrap();
        let d = quantum_determinant(3);
        for l in Letter::all(3, false) {
            let x = AlgebraElement::letter(l);
            assert!(p.is_zero(&(&(&d * &x) - &(&x * &d))).unwrap(), "{l}");
        }
    }

    #[test]
    fn antipode_axiom_gl() {
        for n in 2..=3 {
            let g = GroupSpec::gl(n);
            let p = Pbw::new(&g).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let delta = if i == j { AlgebraElement::one() } else { AlgebraElement::zero() };
                    let mut left = -&delta;
                    let mut right = -&delta;
                    for k in 0..n {
                        left = &left + &(&AlgebraElement::s(i, k) * &AlgebraElement::u(k, j));
                        right = &right + &(&AlgebraElement::u(i, k) * &AlgebraElement::s(k, j));
                    }
                    assert!(p.is_zero(&left).unwrap(), "S(u)u n={n} {i}{j}");
                    assert!(p.is_zero(&right).unwrap(), "uS(u) n={n} {i}{j}");
                }
            }
        }
    }

    #[test]
    fn sl_determinant_is_one() {
        let g = GroupSpec::sl(2);
        let p = Pbw::new(&g).unwrap();
        let d = &quantum_determinant(2) - &AlgebraElement::one();
        assert!(p.is_zero(&d).unwrap());
        assert!(!p.is_zero(&AlgebraElement::u(0, 0)).unwrap());
    }
}
