//! Elements of the dual Hopf algebra generated by the L-functionals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Scalar, ScalarFraction};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// `l^{sign, row}_col`, or its antipode when `antipode` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub sign: Sign,
    pub antipode: bool,
    pub row: u8,
    pub col: u8,
}

impl Atom {
    pub fn plus(i: usize, j: usize) -> Self {
        Atom { sign: Sign::Plus, antipode: false, row: i as u8, col: j as u8 }
    }

    pub fn minus(i: usize, j: usize) -> Self {
        Atom { sign: Sign::Minus, antipode: false, row: i as u8, col: j as u8 }
    }

    pub fn s_plus(i: usize, j: usize) -> Self {
        Atom { sign: Sign::Plus, antipode: true, row: i as u8, col: j as u8 }
    }

    pub fn s_minus(i: usize, j: usize) -> Self {
        Atom { sign: Sign::Minus, antipode: true, row: i as u8, col: j as u8 }
    }

    pub fn row(&self) -> usize {
        self.row as usize
    }

    pub fn col(&self) -> usize {
        self.col as usize
    }

    /// `(l^{+-i}_j)* = S(l^{-+j}_i)` and `S(l^{+-i}_j)* = l^{-+j}_i`.
    pub fn star(&self) -> Atom {
        Atom { sign: self.sign.flip(), antipode: !self.antipode, row: self.col, col: self.row }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = format!("l{}[{},{}]", self.sign.symbol(), self.row + 1, self.col + 1);
        if self.antipode {
            write!(f, "S({base})")
        } else {
            write!(f, "{base}")
        }
    }
}

/// Character `prod_k (l^{+k}_k)^{plus_k} (l^{-k}_k)^{minus_k} * chi_s` where
/// `chi_s(u^a_b) = delta_ab s_a` is a sign character.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupLike {
    pub plus: Vec<i32>,
    pub minus: Vec<i32>,
    /// Empty means every sign is +1.
    pub signs: Vec<i8>,
}

impl GroupLike {
    pub fn identity(n: usize) -> Self {
        GroupLike { plus: vec![0; n], minus: vec![0; n], signs: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.plus.len()
    }

    /// `(l^{sign,k}_k)^e`.
    pub fn diag(n: usize, sign: Sign, k: usize, e: i32) -> Self {
        let mut g = GroupLike::identity(n);
        match sign {
            Sign::Plus => g.plus[k] = e,
            Sign::Minus => g.minus[k] = e,
        }
        g
    }

    pub fn with_signs(mut self, signs: Vec<i8>) -> Self {
        self.signs = if signs.iter().all(|&s| s == 1) { Vec::new() } else { signs };
        self
    }

    pub fn is_identity(&self) -> bool {
        self.plus.iter().all(|&e| e == 0) && self.minus.iter().all(|&e| e == 0) && self.signs.is_empty()
    }

    pub fn sign(&self, a: usize) -> i8 {
        self.signs.get(a).copied().unwrap_or(1)
    }

    pub fn mul(&self, other: &GroupLike) -> GroupLike {
        let n = self.n();
        let signs: Vec<i8> = (0..n).map(|a| self.sign(a) * other.sign(a)).collect();
        GroupLike {
            plus: self.plus.iter().zip(&other.plus).map(|(a, b)| a + b).collect(),
            minus: self.minus.iter().zip(&other.minus).map(|(a, b)| a + b).collect(),
            signs: Vec::new(),
        }
        .with_signs(signs)
    }

    pub fn inverse(&self) -> GroupLike {
        GroupLike {
            plus: self.plus.iter().map(|e| -e).collect(),
            minus: self.minus.iter().map(|e| -e).collect(),
            signs: self.signs.clone(),
        }
    }

    /// `(l^{+k}_k)* = S(l^{-k}_k) = l^{+k}_k`, so characters are self-adjoint.
    pub fn star(&self) -> GroupLike {
        self.clone()
    }
}

impl fmt::Display for GroupLike {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (sign, exps) in [('+', &self.plus), ('-', &self.minus)] {
            for (k, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(format!("l{sign}[{},{}]", k + 1, k + 1)),
                    _ => parts.push(format!("l{sign}[{},{}]^{e}", k + 1, k + 1)),
                }
            }
        }
        if !self.signs.is_empty() {
            let s: Vec<String> = self.signs.iter().map(|x| x.to_string()).collect();
            parts.push(format!("chi[{}]", s.join(",")));
        }
        if parts.is_empty() {
            write!(f, "eps")
        } else {
            write!(f, "{}", parts.join("."))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Atom(Atom),
    Group(GroupLike),
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Atom(a) => write!(f, "{a}"),
            Factor::Group(g) => write!(f, "{g}"),
        }
    }
}

/// A product of factors; the empty product is the counit.
pub type Product = Vec<Factor>;

/// Finite linear combination of products of L-functionals and characters.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FunctionalElement {
    terms: BTreeMap<Product, ScalarFraction>,
}

impl FunctionalElement {
    pub fn zero() -> Self {
        FunctionalElement::default()
    }

    /// The counit `epsilon`.
    pub fn epsilon() -> Self {
        FunctionalElement::product(Vec::new(), ScalarFraction::one())
    }

    pub fn product(p: Product, c: ScalarFraction) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(canonical(p), c);
        }
        FunctionalElement { terms }
    }

    pub fn atom(a: Atom) -> Self {
        FunctionalElement::product(vec![Factor::Atom(a)], ScalarFraction::one())
    }

    pub fn group(g: GroupLike) -> Self {
        FunctionalElement::product(vec![Factor::Group(g)], ScalarFraction::one())
    }

    pub fn atoms(atoms: &[Atom]) -> Self {
        FunctionalElement::product(atoms.iter().map(|a| Factor::Atom(*a)).collect(), ScalarFraction::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Product, &ScalarFraction)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_trivially_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Product, c: &ScalarFraction) {
        if c.is_zero() {
            return;
        }
        let p = canonical(p);
        let v = match self.terms.get(&p) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if v.is_zero() {
            self.terms.remove(&p);
        } else {
            self.terms.insert(p, v);
        }
    }

    pub fn scale(&self, c: &ScalarFraction) -> Self {
        let mut out = FunctionalElement::zero();
        for (p, x) in &self.terms {
            out.add_term(p.clone(), &(x * c));
        }
        out
    }

    pub fn scale_scalar(&self, c: &Scalar) -> Self {
        self.scale(&ScalarFraction::from(c.clone()))
    }

    /// Antilinear antimultiplicative involution dual to the star on the algebra.
    pub fn star(&self) -> Self {
        let mut out = FunctionalElement::zero();
        for (p, c) in &self.terms {
            let rev: Product = p
                .iter()
                .rev()
                .map(|f| match f {
                    Factor::Atom(a) => Factor::Atom(a.star()),
                    Factor::Group(g) => Factor::Group(g.star()),
                })
                .collect();
            out.add_term(rev, &c.conj());
        }
        out
    }

    /// Substitute `n` for the letter `n` in index positions when parsing.
    pub fn parse_with_n(s: &str, n: usize) -> Result<Self> {
        parse_functional(s, n)
    }
}

impl GroupLike {
    /// Parse a product of diagonal powers and sign characters, e.g.
    /// `L-[n,n]^2` or `l+[1,1]^2.l-[2,2]^2`; `eps` is the identity.
    pub fn parse_with_n(s: &str, n: usize) -> Result<GroupLike> {
        let f = parse_functional(s, n)?;
        let mut out = GroupLike::identity(n);
        for (p, _) in f.terms() {
            for factor in p {
                match factor {
                    Factor::Group(g) => out = out.mul(g),
                    Factor::Atom(a) if a.row == a.col && !a.antipode => out = out.mul(&GroupLike::diag(n, a.sign, a.row(), 1)),
                    Factor::Atom(a) => return Err(Error::Parse(format!("'{a}' is not group-like"))),
                }
            }
        }
        Ok(out)
    }
}

/// Merge adjacent characters and drop identity characters.
fn canonical(p: Product) -> Product {
    let mut out: Product = Vec::with_capacity(p.len());
    for f in p {
        match (out.last_mut(), f) {
            (Some(Factor::Group(prev)), Factor::Group(g)) => *prev = prev.mul(&g),
            (_, f) => out.push(f),
        }
    }
    out.retain(|f| !matches!(f, Factor::Group(g) if g.is_identity()));
    out
}

impl fmt::Display for FunctionalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let body = if p.is_empty() {
                "eps".to_string()
            } else {
                p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
            };
            if c.is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "({c}) * {body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FunctionalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FunctionalElement({self})")
    }
}

impl<'a> Add<&'a FunctionalElement> for &'a FunctionalElement {
    type Output = FunctionalElement;
    fn add(self, rhs: &FunctionalElement) -> FunctionalElement {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a FunctionalElement> for &'a FunctionalElement {
    type Output = FunctionalElement;
    fn sub(self, rhs: &FunctionalElement) -> FunctionalElement {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), &-c);
        }
        out
    }
}

/// Convolution product.
impl<'a> Mul<&'a FunctionalElement> for &'a FunctionalElement {
    type Output = FunctionalElement;
    fn mul(self, rhs: &FunctionalElement) -> FunctionalElement {
        let mut out = FunctionalElement::zero();
        for (p1, c1) in &self.terms {
            for (p2, c2) in &rhs.terms {
                let mut p = p1.clone();
                p.extend(p2.iter().cloned());
                out.add_term(p, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &FunctionalElement {
    type Output = FunctionalElement;
    fn neg(self) -> FunctionalElement {
        self.scale(&ScalarFraction::from(-1))
    }
}

impl Add for FunctionalElement {
    type Output = FunctionalElement;
    fn add(self, rhs: FunctionalElement) -> FunctionalElement {
        &self + &rhs
    }
}

impl Sub for FunctionalElement {
    type Output = FunctionalElement;
    fn sub(self, rhs: FunctionalElement) -> FunctionalElement {
        &self - &rhs
    }
}

impl Mul for FunctionalElement {
    type Output = FunctionalElement;
    fn mul(self, rhs: FunctionalElement) -> FunctionalElement {
        &self * &rhs
    }
}

fn parse_index(s: &str, n: usize) -> Result<usize> {
    let t = s.trim();
    let v = if t == "n" || t == "N" {
        n
    } else if let Some(rest) = t.strip_prefix("n-").or_else(|| t.strip_prefix("N-")) {
        let k: usize = rest.trim().parse().map_err(|_| Error::Parse(format!("bad index '{t}'")))?;
        n.checked_sub(k).ok_or_else(|| Error::Parse(format!("index '{t}' out of range")))?
    } else {
        t.parse().map_err(|_| Error::Parse(format!("bad index '{t}'")))?
    };
    if v == 0 || v > n {
        return Err(Error::Parse(format!("index {v} out of range 1..={n}")));
    }
    Ok(v - 1)
}

/// Parse a single product such as `l-[n,n]^2.l+[1,2]`, `S(l+[1,2]).l-[2,2]`,
/// `chi[1,-1,1]` or `eps`. Factors are separated by `.` or `*`.
fn parse_functional(s: &str, n: usize) -> Result<FunctionalElement> {
    let mut product: Product = Vec::new();
    for raw in split_factors(s) {
        let part = raw.trim();
        if part.is_empty() || part == "eps" || part == "1" {
            continue;
        }
        if let Some(body) = part.strip_prefix("chi[").and_then(|x| x.strip_suffix(']')) {
            let signs = body
                .split(',')
                .map(|x| x.trim().parse::<i8>().map_err(|_| Error::Parse(format!("bad sign in '{part}'"))))
                .collect::<Result<Vec<_>>>()?;
            if signs.len() != n || signs.iter().any(|s| s.abs() != 1) {
                return Err(Error::Parse(format!("sign character '{part}' needs {n} entries of +-1")));
            }
            product.push(Factor::Group(GroupLike::identity(n).with_signs(signs)));
            continue;
        }
        let (antipode, core) = match part.strip_prefix("S(") {
            Some(rest) => {
                let close = rest.rfind(')').ok_or_else(|| Error::Parse(format!("unbalanced '{part}'")))?;
                if !rest[close + 1..].trim().is_empty() {
                    return Err(Error::Parse(format!("exponents on antipode atoms are not supported: '{part}'")));
                }
                (true, &rest[..close])
            }
            None => (false, part),
        };
        let (atom_txt, exp) = match core.split_once('^') {
            Some((a, e)) => (a, Some(e.trim().parse::<i32>().map_err(|_| Error::Parse(format!("bad exponent in '{part}'")))?)),
            None => (core, None),
        };
        let sign = if atom_txt.starts_with("l+") || atom_txt.starts_with("L+") {
            Sign::Plus
        } else if atom_txt.starts_with("l-") || atom_txt.starts_with("L-") {
            Sign::Minus
        } else {
            return Err(Error::Parse(format!("unknown factor '{part}'")));
        };
        let idx = atom_txt[2..]
            .trim()
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bad atom '{part}'")))?;
        let (i, j) = idx.split_once(',').ok_or_else(|| Error::Parse(format!("bad atom '{part}'")))?;
        let (i, j) = (parse_index(i, n)?, parse_index(j, n)?);
        match exp {
            Some(e) => {
                if i != j || antipode {
                    return Err(Error::Parse(format!("only diagonal atoms may carry exponents: '{part}'")));
                }
                product.push(Factor::Group(GroupLike::diag(n, sign, i, e)));
            }
            None => product.push(Factor::Atom(Atom { sign, antipode, row: i as u8, col: j as u8 })),
        }
    }
    Ok(FunctionalElement::product(product, ScalarFraction::one()))
}

fn split_factors(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == '.' || ch == '*') {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_group_like_with_n() {
        let f = FunctionalElement::parse_with_n("l-[n,n]^2", 3).unwrap();
        assert_eq!(f.to_string(), "l-[3,3]^2");
        let g = FunctionalElement::parse_with_n("S(l+[1,n]).l-[n,n]", 2).unwrap();
        assert_eq!(g.to_string(), "S(l+[1,2]).l-[2,2]");
        let z = GroupLike::parse_with_n("L-[n,n]^2", 2).unwrap();
        assert_eq!(z, GroupLike::diag(2, Sign::Minus, 1, 2));
        assert!(GroupLike::parse_with_n("eps", 2).unwrap().is_identity());
        assert!(GroupLike::parse_with_n("l+[1,2]", 2).is_err());
    }

    #[test]
    fn adjacent_characters_merge() {
        let a = FunctionalElement::group(GroupLike::diag(2, Sign::Plus, 1, 1));
        let b = FunctionalElement::group(GroupLike::diag(2, Sign::Plus, 1, -1));
        assert_eq!(&a * &b, FunctionalElement::epsilon());
    }

    #[test]
    fn star_reverses_and_flips() {
        let f = FunctionalElement::atoms(&[Atom::minus(1, 0), Atom::minus(1, 1)]);
        assert_eq!(f.star().to_string(), "S(l+[2,2]).S(l+[1,2])");
        assert_eq!(f.star().star(), f);
    }
}
