//! Words in the generators `u^i_j` and `S(u^i_j)` with Laurent coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::fralgebra::group::GroupSpec;
use crate::scalar::{Coeff, Scalar};
use crate::{Error, Result};

/// Generator `u^row_col` (`anti = false`) or `S(u^row_col)` (`anti = true`).
/// Ordered by parity first, then row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub anti: bool,
    pub row: u8,
    pub col: u8,
}

impl Letter {
    pub fn u(row: usize, col: usize) -> Self {
        Letter { anti: false, row: row as u8, col: col as u8 }
    }

    pub fn s(row: usize, col: usize) -> Self {
        Letter { anti: true, row: row as u8, col: col as u8 }
    }

    pub fn row(&self) -> usize {
        self.row as usize
    }

    pub fn col(&self) -> usize {
        self.col as usize
    }

    /// All letters of the given parities for an `n x n` corepresentation.
    pub fn all(n: usize, with_antipode: bool) -> Vec<Letter> {
        let mut v: Vec<Letter> = (0..n).flat_map(|i| (0..n).map(move |j| Letter::u(i, j))).collect();
        if with_antipode {
            v.extend((0..n).flat_map(|i| (0..n).map(move |j| Letter::s(i, j))));
        }
        v
    }

    /// Coproduct legs: `u^a_b -> sum_k u^a_k (x) u^k_b` and
    /// `S(u^a_b) -> sum_k S(u^k_b) (x) S(u^a_k)`.
    pub fn coproduct(&self, n: usize) -> impl Iterator<Item = (Letter, Letter)> + '_ {
        let l = *self;
        (0..n).map(move |k| {
            if l.anti {
                (Letter::s(k, l.col()), Letter::s(l.row(), k))
            } else {
                (Letter::u(l.row(), k), Letter::u(k, l.col()))
            }
        })
    }

    pub fn counit(&self) -> Scalar {
        if self.row == self.col {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.anti {
            write!(f, "S(u[{},{}])", self.row + 1, self.col + 1)
        } else {
            write!(f, "u[{},{}]", self.row + 1, self.col + 1)
        }
    }
}

/// A word in the letters times a power of the quantum determinant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub letters: SmallVec<[Letter; 6]>,
    pub det: i32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn word(letters: &[Letter]) -> Self {
        Monomial { letters: letters.iter().copied().collect(), det: 0 }
    }

    pub fn det_pow(k: i32) -> Self {
        Monomial { letters: SmallVec::new(), det: k }
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().copied());
        Monomial { letters, det: self.det + other.det }
    }

    pub fn has_antipode(&self) -> bool {
        self.letters.iter().any(|l| l.anti)
    }

    pub fn counit(&self) -> Scalar {
        if self.letters.iter().all(|l| l.row == l.col) {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.letters.is_empty() {
            parts.push(self.letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("."));
        }
        if self.det != 0 {
            parts.push(if self.det == 1 { "detq".to_string() } else { format!("detq^{}", self.det) });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" * "))
        }
    }
}

/// Finite linear combination of monomials with Laurent coefficients.
///
/// The representation is not reduced modulo the algebra relations; use the
/// PBW module for canonical forms and zero tests.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn one() -> Self {
        AlgebraElement::monomial(Monomial::one(), Scalar::one())
    }

    pub fn scalar(s: Scalar) -> Self {
        AlgebraElement::monomial(Monomial::one(), s)
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        AlgebraElement { terms }
    }

    pub fn letter(l: Letter) -> Self {
        AlgebraElement::monomial(Monomial::word(&[l]), Scalar::one())
    }

    pub fn u(i: usize, j: usize) -> Self {
        AlgebraElement::letter(Letter::u(i, j))
    }

    pub fn s(i: usize, j: usize) -> Self {
        AlgebraElement::letter(Letter::s(i, j))
    }

    pub fn word(letters: &[Letter]) -> Self {
        AlgebraElement::monomial(Monomial::word(letters), Scalar::one())
    }

    pub fn det_pow(k: i32) -> Self {
        AlgebraElement::monomial(Monomial::det_pow(k), Scalar::one())
    }

    /// `x_i = u^i_n` (last column).
    pub fn x(g: &GroupSpec, i: usize) -> Self {
        AlgebraElement::u(i, g.n - 1)
    }

    /// `y_i = S(u^n_i)` (last row of the antipode).
    pub fn y(g: &GroupSpec, i: usize) -> Self {
        AlgebraElement::s(g.n - 1, i)
    }

    /// `S^k(u^i_j)` reduced to `c * u` or `c * S(u)` using `S^2(u^i_j) = gamma_i gamma_j^-1 u^i_j`.
    pub fn antipode_power(g: &GroupSpec, i: usize, j: usize, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(AlgebraElement::u(i, j));
        }
        if k == 1 {
            return Ok(AlgebraElement::s(i, j));
        }
        let ratio = &g.gamma(i)? * &g.gamma(j)?.inv()?;
        let m = if k % 2 == 0 { k / 2 } else { (k - 1).div_euclid(2) };
        let c = ratio.pow(m)?;
        let base = if k % 2 == 0 { AlgebraElement::u(i, j) } else { AlgebraElement::s(i, j) };
        Ok(base.scale(&c))
    }

    /// `S^-1(u^i_j) = gamma_j gamma_i^-1 S(u^i_j)`.
    pub fn antipode_inverse_letter(g: &GroupSpec, i: usize, j: usize) -> Result<Self> {
        AlgebraElement::antipode_power(g, i, j, -1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Scalar)> {
        self.terms.into_iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when no terms remain (structural zero, not a zero test modulo relations).
    pub fn is_trivially_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement { terms: self.terms.iter().map(|(m, s)| (m.clone(), s * c)).filter(|(_, s)| !s.is_zero()).collect() }
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn has_antipode(&self) -> bool {
        self.terms.keys().any(|m| m.has_antipode())
    }

    pub fn counit(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            acc += &(c * &m.counit());
        }
        acc
    }

    /// Coproduct as a list of `(coefficient, left, right)` tensors.
    pub fn coproduct(&self, n: usize) -> Vec<(Scalar, Monomial, Monomial)> {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let mut partial = vec![(Monomial::det_pow(m.det), Monomial::det_pow(m.det))];
            for l in &m.letters {
                let mut next = Vec::with_capacity(partial.len() * n);
                for (a, b) in &partial {
                    for (x, y) in l.coproduct(n) {
                        let mut a2 = a.clone();
                        a2.letters.push(x);
                        let mut b2 = b.clone();
                        b2.letters.push(y);
                        next.push((a2, b2));
                    }
                }
                partial = next;
            }
            out.extend(partial.into_iter().map(|(a, b)| (c.clone(), a, b)));
        }
        out
    }

    /// The involution of the compact real form: `(u^i_j)* = S(u^j_i)`,
    /// `S(u^i_j)* = u^j_i`, `detq* = detq^-1`, antilinear and antimultiplicative.
    pub fn star(&self) -> Self {
        let mut out = AlgebraElement::zero();
        for (m, c) in &self.terms {
            let letters = m
                .letters
                .iter()
                .rev()
                .map(|l| if l.anti { Letter::u(l.col(), l.row()) } else { Letter::s(l.col(), l.row()) })
                .collect();
            out.add_term(Monomial { letters, det: -m.det }, &c.conj());
        }
        out
    }

    /// Restriction `pi` to the subgroup of block matrices `diag(w, 1)`:
    /// letters with an index equal to `n - 1` become `delta` values.
    pub fn project_pi(&self, n: usize) -> Self {
        let last = (n - 1) as u8;
        let mut out = AlgebraElement::zero();
        'terms: for (m, c) in &self.terms {
            let mut letters: SmallVec<[Letter; 6]> = SmallVec::new();
            for l in &m.letters {
                match (l.row == last, l.col == last) {
                    (true, true) => {}
                    (false, false) => letters.push(*l),
                    _ => continue 'terms,
                }
            }
            out.add_term(Monomial { letters, det: m.det }, c);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut out = AlgebraElement::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let (neg, body) = if c.is_monomial() && cs.starts_with('-') {
                (true, cs[1..].to_string())
            } else {
                (false, cs)
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let coef = if c.is_monomial() { body } else { format!("({body})") };
            let is_unit = coef == "1";
            let mono = m.to_string();
            match (is_unit, mono.as_str()) {
                (true, _) => write!(f, "{mono}")?,
                (false, "1") => write!(f, "{coef}")?,
                _ => write!(f, "{coef} * {mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({self})")
    }
}

impl std::str::FromStr for AlgebraElement {
    type Err = Error;

    /// Parses the display format, e.g. `q^-1 * u[1,1].u[1,2] * detq^-1 - S(u[2,1])`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = AlgebraElement::zero();
        for (sign, term) in split_top_level(s)? {
            let mut coef = Scalar::from_int(sign);
            let mut mono = Monomial::one();
            for piece in split_stars(&term) {
                let p = piece.trim();
                if p.starts_with("u[") || p.starts_with("S(") {
                    for l in p.split('.') {
                        mono.letters.push(parse_letter(l.trim())?);
                    }
                } else if let Some(rest) = p.strip_prefix("detq") {
                    let k = match rest.strip_prefix('^') {
                        Some(e) => e.trim().parse::<i32>().map_err(|e| Error::Parse(e.to_string()))?,
                        None if rest.is_empty() => 1,
                        None => return Err(Error::Parse(format!("bad determinant power '{p}'"))),
                    };
                    mono.det += k;
                } else {
                    let inner = p.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(p);
                    coef = &coef * &inner.parse::<Scalar>()?;
                }
            }
            out.add_term(mono, &coef);
        }
        Ok(out)
    }
}

fn parse_letter(s: &str) -> Result<Letter> {
    let (anti, body) = match s.strip_prefix("S(").and_then(|x| x.strip_suffix(')')) {
        Some(b) => (true, b),
        None => (false, s),
    };
    let inner = body
        .strip_prefix("u[")
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("bad letter '{s}'")))?;
    let mut it = inner.split(',').map(|x| x.trim().parse::<usize>());
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(i)), Some(Ok(j)), None) if i >= 1 && j >= 1 => {
            Ok(Letter { anti, row: (i - 1) as u8, col: (j - 1) as u8 })
        }
        _ => Err(Error::Parse(format!("bad letter '{s}'"))),
    }
}

/// Split on `+`/`-` that are outside brackets and not inside an exponent.
fn split_top_level(s: &str) -> Result<Vec<(i64, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut sign = 1;
    let chars: Vec<char> = s.chars().collect();
    for (idx, &ch) in chars.iter().enumerate() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        let prev = chars[..idx].iter().rev().find(|c| !c.is_whitespace()).copied();
        let at_boundary = depth == 0 && (ch == '+' || ch == '-') && prev != Some('^');
        if at_boundary {
            if !cur.trim().is_empty() {
                out.push((sign, cur.trim().to_string()));
            }
            cur.clear();
            sign = if ch == '-' { -1 } else { 1 };
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    }
    if out.is_empty() {
        return Err(Error::Parse("empty algebra element".into()));
    }
    Ok(out)
}

/// Split a term on ` * ` separators at depth zero; `1/2*q` stays intact.
fn split_stars(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let chars: Vec<char> = s.chars().collect();
    for (idx, &ch) in chars.iter().enumerate() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        let spaced = idx > 0 && chars[idx - 1] == ' ' && chars.get(idx + 1) == Some(&' ');
        if ch == '*' && depth == 0 && spaced {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    out.push(cur.trim().to_string());
    out
}

impl<'a> Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.concat(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&Scalar::constant(Coeff::from_integer(-1)))
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: AlgebraElement) -> AlgebraElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: &AlgebraElement) -> AlgebraElement {
                (&self).$m(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// RTT relations `sum R^{ij}_{ab} u^a_k u^b_l - sum u^i_a u^j_b R^{ab}_{kl}`,
/// plus the metric relations for the orthogonal and symplectic families.
pub fn defining_relations(g: &GroupSpec, r: &crate::fralgebra::rmatrix::RMatrix) -> Vec<AlgebraElement> {
    let n = g.n;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut e = AlgebraElement::zero();
                    for a in 0..n {
                        for b in 0..n {
                            e.add_term(Monomial::word(&[Letter::u(a, k), Letter::u(b, l)]), r.get(i, j, a, b));
                            e.add_term(Monomial::word(&[Letter::u(i, a), Letter::u(j, b)]), &-r.get(a, b, k, l));
                        }
                    }
                    if !e.is_trivially_zero() {
                        out.push(e);
                    }
                }
            }
        }
    }
    if g.has_metric() {
        out.extend(metric_relations(g));
    }
    out
}

/// `u C u^t C^-1 = I` and `C u^t C^-1 u = I`, entrywise.
pub fn metric_relations(g: &GroupSpec) -> Vec<AlgebraElement> {
    let n = g.n;
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let delta = if a == b { Scalar::one() } else { Scalar::zero() };
            let mut e1 = AlgebraElement::scalar(-&delta);
            let mut e2 = AlgebraElement::scalar(-&delta);
            for c in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        let w1 = &g.metric(c, d) * &g.metric_inv(e, b);
                        e1.add_term(Monomial::word(&[Letter::u(a, c), Letter::u(e, d)]), &w1);
                        let w2 = &g.metric(a, c) * &g.metric_inv(d, e);
                        e2.add_term(Monomial::word(&[Letter::u(d, c), Letter::u(e, b)]), &w2);
                    }
                }
            }
            out.push(e1);
            out.push(e2);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_parse_roundtrip() {
        let a: AlgebraElement = "q^-1 * u[1,1].u[1,2] * detq^-1".parse().unwrap();
        assert_eq!(a.to_string(), "q^-1 * u[1,1].u[1,2] * detq^-1");
        let b: AlgebraElement = "(q - q^-1) * S(u[2,1]).u[1,1] - 3 + u[2,2]".parse().unwrap();
        let back: AlgebraElement = b.to_string().parse().unwrap();
        assert_eq!(b, back);
    }

    #[test]
    fn star_is_involutive() {
        let a: AlgebraElement = "q * u[1,2].S(u[2,1]) * detq".parse().unwrap();
        assert_eq!(a.star().star(), a);
    }

    #[test]
    fn coproduct_counit() {
        let w = AlgebraElement::word(&[Letter::u(0, 1), Letter::s(1, 0)]);
        // (eps (x) id) Delta = id on this word
        let mut back = AlgebraElement::zero();
        for (c, l, r) in w.coproduct(2) {
            back.add_term(r, &(&c * &l.counit()));
        }
        assert_eq!(back, w);
    }

    #[test]
    fn projection_kills_boundary() {
        let g = GroupSpec::gl(2);
        assert!(AlgebraElement::u(0, 1).project_pi(2).is_trivially_zero());
        assert_eq!(AlgebraElement::u(1, 1).project_pi(2), AlgebraElement::one());
        assert_eq!(AlgebraElement::y(&g, 1).project_pi(2), AlgebraElement::one());
    }
}
