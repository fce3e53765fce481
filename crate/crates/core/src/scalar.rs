//! Laurent polynomials in `q` with rational coefficients and fractional
//! exponents, plus the rational-function field built on top of them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::{BigRational, Ratio};
use num::traits::{One, Pow, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;
use thiserror::Error;

/// Exact rational coefficient.
pub type Coeff = Ratio<i128>;

/// Exponents are stored as integers in units of `1 / EXP_UNIT`.
/// 2520 = lcm(1..=10), so every exponent denominator up to 10 is exact.
pub const EXP_UNIT: i64 = 2520;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar {0} is not a monomial and has no Laurent inverse")]
    NotInvertible(String),
    #[error("exponent denominator {0} is not supported")]
    UnsupportedDenominator(i64),
    #[error("q0 = {q0} has no exact rational root of order {order}")]
    NoExactRoot { q0: String, order: i64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not a Laurent polynomial")]
    NotLaurent(String),
}

fn coeff(n: i128) -> Coeff {
    Coeff::from_integer(n)
}

/// Convert a rational exponent `num/den` to internal units.
pub fn exp_units(num: i64, den: i64) -> Result<i64, ScalarError> {
    if den == 0 {
        return Err(ScalarError::DivisionByZero);
    }
    if (EXP_UNIT * num) % den != 0 {
        return Err(ScalarError::UnsupportedDenominator(den / num.gcd(&den)));
    }
    Ok(EXP_UNIT * num / den)
}

/// Laurent polynomial `sum c_k q^{e_k}` with `e_k` rational.
///
/// Terms are kept sorted by exponent with no zero coefficients, so the
/// derived equality is structural equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: SmallVec<[(i64, Coeff); 4]>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::constant(coeff(1))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::constant(coeff(n as i128))
    }

    pub fn constant(c: Coeff) -> Self {
        Scalar::monomial(c, 0)
    }

    /// `c * q^(units / EXP_UNIT)`.
    pub fn monomial(c: Coeff, units: i64) -> Self {
        let mut terms = SmallVec::new();
        if !c.is_zero() {
            terms.push((units, c));
        }
        Scalar { terms }
    }

    pub fn q() -> Self {
        Scalar::q_pow(1)
    }

    /// `q^k` for integer `k`.
    pub fn q_pow(k: i64) -> Self {
        Scalar::monomial(coeff(1), k * EXP_UNIT)
    }

    /// `q^(num/den)`.
    pub fn q_frac(num: i64, den: i64) -> Result<Self, ScalarError> {
        Ok(Scalar::monomial(coeff(1), exp_units(num, den)?))
    }

    /// `q - q^-1`.
    pub fn q_minus_qinv() -> Self {
        Scalar::q() - Scalar::q_pow(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms as `(exponent, coefficient)` with the exponent a reduced rational.
    pub fn terms(&self) -> impl Iterator<Item = (Ratio<i64>, &Coeff)> + '_ {
        self.terms.iter().map(|(e, c)| (Ratio::new(*e, EXP_UNIT), c))
    }

    pub(crate) fn raw_terms(&self) -> &[(i64, Coeff)] {
        &self.terms
    }

    pub fn min_units(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_units(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.last().map(|t| &t.1)
    }

    /// Constant term (coefficient of `q^0`).
    pub fn constant_term(&self) -> Coeff {
        self.terms
            .iter()
            .find(|t| t.0 == 0)
            .map(|t| t.1)
            .unwrap_or_else(Coeff::zero)
    }

    /// Smallest `D` such that every exponent lies in `(1/D) Z`.
    pub fn exponent_denominator(&self) -> i64 {
        self.terms
            .iter()
            .map(|(e, _)| EXP_UNIT / e.gcd(&EXP_UNIT))
            .fold(1, |a, b| a.lcm(&b))
    }

    fn from_sorted(terms: SmallVec<[(i64, Coeff); 4]>) -> Self {
        Scalar { terms }
    }

    fn from_unsorted(mut v: Vec<(i64, Coeff)>) -> Self {
        v.sort_by_key(|t| t.0);
        let mut out: SmallVec<[(i64, Coeff); 4]> = SmallVec::new();
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Scalar { terms: out }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar::from_sorted(self.terms.iter().map(|(e, x)| (*e, x * c)).collect())
    }

    /// Multiply by `q^(units / EXP_UNIT)`.
    pub fn shift(&self, units: i64) -> Self {
        Scalar::from_sorted(self.terms.iter().map(|(e, x)| (e + units, *x)).collect())
    }

    /// Laurent inverse; defined only for monomials.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        match self.terms.as_slice() {
            [] => Err(ScalarError::DivisionByZero),
            [(e, c)] => Ok(Scalar::monomial(c.recip(), -e)),
            _ => Err(ScalarError::NotInvertible(self.to_string())),
        }
    }

    /// Integer power; negative powers need a monomial.
    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Ok(acc)
    }

    /// The involution on scalars; `q` is real so this is the identity.
    pub fn conj(&self) -> Self {
        self.clone()
    }

    /// Evaluate at `q = q0`. Fractional exponents need an exact root of `q0`.
    pub fn specialize(&self, q0: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.exponent_denominator();
        let root = exact_root(q0, d)?;
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let k = e * d / EXP_UNIT;
            let c = BigRational::new(BigInt::from(*c.numer()), BigInt::from(*c.denom()));
            let p = if k >= 0 {
                Pow::pow(&root, k as u64)
            } else {
                Pow::pow(&root.recip(), (-k) as u64)
            };
            acc += c * p;
        }
        Ok(acc)
    }
}

/// Exact `d`-th root of a positive rational, if it exists.
pub fn exact_root(x: &BigRational, d: i64) -> Result<BigRational, ScalarError> {
    if d == 1 {
        return Ok(x.clone());
    }
    let fail = || ScalarError::NoExactRoot { q0: x.to_string(), order: d };
    if !x.is_positive() {
        return Err(fail());
    }
    let n = int_root(x.numer(), d as u32).ok_or_else(fail)?;
    let m = int_root(x.denom(), d as u32).ok_or_else(fail)?;
    Ok(BigRational::new(n, m))
}

fn int_root(x: &BigInt, d: u32) -> Option<BigInt> {
    let r = x.nth_root(d);
    if Pow::pow(&r, d) == *x {
        Some(r)
    } else {
        None
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Coeff> for Scalar {
    fn from(c: Coeff) -> Self {
        Scalar::constant(c)
    }
}

fn merge_add(a: &Scalar, b: &Scalar, sign: bool) -> Scalar {
    let mut out: SmallVec<[(i64, Coeff); 4]> = SmallVec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let ord = match (a.terms.get(i), b.terms.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(a.terms[i]);
                i += 1;
            }
            Ordering::Greater => {
                let (e, c) = b.terms[j];
                out.push((e, if sign { -c } else { c }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if sign { a.terms[i].1 - b.terms[j].1 } else { a.terms[i].1 + b.terms[j].1 };
                if !c.is_zero() {
                    out.push((a.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    Scalar::from_sorted(out)
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        merge_add(self, rhs, false)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        merge_add(self, rhs, true)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if rhs.terms.len() == 1 {
            let (e, c) = rhs.terms[0];
            return Scalar::from_sorted(self.terms.iter().map(|(x, y)| (x + e, y * c)).collect());
        }
        if self.terms.len() == 1 {
            return rhs * self;
        }
        let mut v = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                v.push((e1 + e2, c1 * c2));
            }
        }
        Scalar::from_unsorted(v)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::from_sorted(self.terms.iter().map(|(e, c)| (*e, -c)).collect())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident, $t:ty) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<$t> for &'a $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                self.$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add, Scalar);
owned_binop!(Sub, sub, Scalar);
owned_binop!(Mul, mul, Scalar);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

fn fmt_exponent(units: i64) -> String {
    let r = Ratio::new(units, EXP_UNIT);
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

fn fmt_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest power first reads most naturally.
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let qpart = match *e {
                0 => None,
                u if u == EXP_UNIT => Some("q".to_string()),
                u => Some(format!("q^{}", fmt_exponent(u))),
            };
            match qpart {
                None => write!(f, "{}", fmt_coeff(&a))?,
                Some(qp) if a.is_one() => write!(f, "{qp}")?,
                Some(qp) => write!(f, "{}*{}", fmt_coeff(&a), qp)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }
    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn int(&mut self) -> Result<i64, ScalarError> {
        self.skip_ws();
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ScalarError::Parse(format!("expected integer at offset {start}")));
        }
        let v: i64 = std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|e| ScalarError::Parse(format!("{e}")))?;
        Ok(if neg { -v } else { v })
    }
    fn exponent(&mut self) -> Result<i64, ScalarError> {
        if self.eat(b'(') {
            let n = self.int()?;
            let d = if self.eat(b'/') { self.int()? } else { 1 };
            if !self.eat(b')') {
                return Err(ScalarError::Parse("expected ')'".into()));
            }
            exp_units(n, d)
        } else {
            exp_units(self.int()?, 1)
        }
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    /// Accepts sums of terms such as `3*q^2 - q^(-1/2) + 1/2`, `q^-1`, `-q`.
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let mut cur = Cursor { s: s.as_bytes(), pos: 0 };
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut sign = 1i128;
            match cur.peek() {
                None if !first => break,
                None => return Err(ScalarError::Parse("empty scalar".into())),
                Some(b'+') if !first => {
                    cur.pos += 1;
                }
                Some(b'-') => {
                    cur.pos += 1;
                    sign = -1;
                }
                Some(_) if first => {}
                Some(c) => return Err(ScalarError::Parse(format!("unexpected '{}'", c as char))),
            }
            first = false;
            let mut c = coeff(sign);
            let mut have_coeff = false;
            if matches!(cur.peek(), Some(b) if b.is_ascii_digit()) {
                let n = cur.int()?;
                let d = if cur.eat(b'/') { cur.int()? } else { 1 };
                if d == 0 {
                    return Err(ScalarError::DivisionByZero);
                }
                c *= Coeff::new(n as i128, d as i128);
                have_coeff = true;
                cur.eat(b'*');
            }
            let mut e = 0;
            if cur.eat(b'q') {
                e = EXP_UNIT;
                if cur.eat(b'^') {
                    e = cur.exponent()?;
                }
            } else if !have_coeff {
                return Err(ScalarError::Parse(format!("expected term at offset {}", cur.pos)));
            }
            terms.push((e, c));
        }
        Ok(Scalar::from_unsorted(terms))
    }
}

/// Dense univariate polynomial helpers over `Coeff`, used for gcds.
mod poly {
    use super::Coeff;
    use num::traits::Zero;

    pub fn trim(p: &mut Vec<Coeff>) {
        while p.last().map_or(false, |c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn rem(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
        let mut r = a.to_vec();
        let lb = b.last().unwrap();
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let f = r.last().unwrap() / lb;
            for (i, c) in b.iter().enumerate() {
                let t = r[shift + i] - f * c;
                r[shift + i] = t;
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    pub fn div_exact(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
        let mut r = a.to_vec();
        let lb = *b.last().unwrap();
        let mut q = vec![Coeff::zero(); a.len() + 1 - b.len()];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let f = *r.last().unwrap() / lb;
            q[shift] = f;
            for (i, c) in b.iter().enumerate() {
                let t = r[shift + i] - f * c;
                r[shift + i] = t;
            }
            r.pop();
            trim(&mut r);
        }
        debug_assert!(r.is_empty());
        q
    }

    pub fn monic(p: &mut [Coeff]) {
        if let Some(l) = p.last().copied() {
            for c in p.iter_mut() {
                *c /= l;
            }
        }
    }

    pub fn gcd(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y);
            x = y;
            y = r;
            monic(&mut x);
        }
        monic(&mut x);
        x
    }
}

/// Element of the fraction field `Q(q^(1/D))`.
///
/// Normal form: denominator has lowest exponent 0 and leading coefficient 1,
/// and numerator and denominator are coprime.
#[derive(Clone, Hash)]
pub struct ScalarFraction {
    num: Scalar,
    den: Scalar,
}

impl ScalarFraction {
    pub fn zero() -> Self {
        ScalarFraction { num: Scalar::zero(), den: Scalar::one() }
    }

    pub fn one() -> Self {
        ScalarFraction { num: Scalar::one(), den: Scalar::one() }
    }

    pub fn from_scalar(s: Scalar) -> Self {
        ScalarFraction { num: s, den: Scalar::one() }
    }

    pub fn new(num: Scalar, den: Scalar) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn numer(&self) -> &Scalar {
        &self.num
    }

    pub fn denom(&self) -> &Scalar {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The Laurent polynomial this fraction equals, if it is one.
    pub fn to_scalar(&self) -> Option<Scalar> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn try_scalar(&self) -> Result<Scalar, ScalarError> {
        self.to_scalar().ok_or_else(|| ScalarError::NotLaurent(self.to_string()))
    }

    fn normalize(num: Scalar, den: Scalar) -> Self {
        if num.is_zero() {
            return ScalarFraction::zero();
        }
        let dmin = den.min_units().unwrap();
        let lead = *den.leading_coeff().unwrap();
        let inv = lead.recip();
        let mut num = num.shift(-dmin).scale(&inv);
        let mut den = den.shift(-dmin).scale(&inv);
        if den.is_monomial() {
            return ScalarFraction { num, den };
        }
        // Remove common polynomial factors, working in t = q^(g / EXP_UNIT).
        let nmin = num.min_units().unwrap();
        let g = num
            .raw_terms()
            .iter()
            .map(|t| t.0 - nmin)
            .chain(den.raw_terms().iter().map(|t| t.0))
            .fold(0i64, |a, b| a.gcd(&b));
        let to_dense = |s: &Scalar, base: i64| {
            let deg = ((s.max_units().unwrap() - base) / g) as usize;
            let mut v = vec![Coeff::zero(); deg + 1];
            for (e, c) in s.raw_terms() {
                v[((e - base) / g) as usize] = *c;
            }
            v
        };
        let dn = to_dense(&num, nmin);
        let dd = to_dense(&den, 0);
        let h = poly::gcd(&dn, &dd);
        if h.len() > 1 {
            let from_dense = |v: Vec<Coeff>, base: i64| {
                Scalar::from_unsorted(
                    v.into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| (base + i as i64 * g, c))
                        .collect(),
                )
            };
            num = from_dense(poly::div_exact(&dn, &h), nmin);
            den = from_dense(poly::div_exact(&dd, &h), 0);
            let dmin = den.min_units().unwrap();
            let inv = den.leading_coeff().unwrap().recip();
            num = num.shift(-dmin).scale(&inv);
            den = den.shift(-dmin).scale(&inv);
        }
        ScalarFraction { num, den }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        ScalarFraction::new(self.den.clone(), self.num.clone())
    }

    pub fn conj(&self) -> Self {
        self.clone()
    }

    pub fn specialize(&self, q0: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.specialize(q0)?;
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.num.specialize(q0)? / d)
    }

    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut acc = ScalarFraction::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        Ok(acc)
    }

    pub fn checked_div(&self, rhs: &ScalarFraction) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }
}

impl From<Scalar> for ScalarFraction {
    fn from(s: Scalar) -> Self {
        ScalarFraction::from_scalar(s)
    }
}

impl From<i64> for ScalarFraction {
    fn from(n: i64) -> Self {
        ScalarFraction::from_scalar(Scalar::from_int(n))
    }
}

impl PartialEq for ScalarFraction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for ScalarFraction {}

impl<'a> Add<&'a ScalarFraction> for &'a ScalarFraction {
    type Output = ScalarFraction;
    fn add(self, rhs: &ScalarFraction) -> ScalarFraction {
        if self.den == rhs.den {
            return ScalarFraction::normalize(&self.num + &rhs.num, self.den.clone());
        }
        ScalarFraction::normalize(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a ScalarFraction> for &'a ScalarFraction {
    type Output = ScalarFraction;
    fn sub(self, rhs: &ScalarFraction) -> ScalarFraction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ScalarFraction> for &'a ScalarFraction {
    type Output = ScalarFraction;
    fn mul(self, rhs: &ScalarFraction) -> ScalarFraction {
        if self.is_zero() || rhs.is_zero() {
            return ScalarFraction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ScalarFraction { num: &self.num * &rhs.num, den: Scalar::one() };
        }
        ScalarFraction::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a ScalarFraction> for &'a ScalarFraction {
    type Output = ScalarFraction;
    /// Panics on division by zero; use `checked_div` for fallible division.
    fn div(self, rhs: &ScalarFraction) -> ScalarFraction {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &ScalarFraction {
    type Output = ScalarFraction;
    fn neg(self) -> ScalarFraction {
        ScalarFraction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for ScalarFraction {
    type Output = ScalarFraction;
    fn neg(self) -> ScalarFraction {
        -&self
    }
}

owned_binop!(Add, add, ScalarFraction);
owned_binop!(Sub, sub, ScalarFraction);
owned_binop!(Mul, mul, ScalarFraction);
owned_binop!(Div, div, ScalarFraction);

impl AddAssign<&ScalarFraction> for ScalarFraction {
    fn add_assign(&mut self, rhs: &ScalarFraction) {
        *self = &*self + rhs;
    }
}

impl fmt::Display for ScalarFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ScalarFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarFraction({self})")
    }
}

impl FromStr for ScalarFraction {
    type Err = ScalarError;
    /// `num` or `(num)/(den)`.
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix('(') {
            if let Some(idx) = rest.find(")/(") {
                let num: Scalar = rest[..idx].parse()?;
                let den_part = rest[idx + 3..]
                    .strip_suffix(')')
                    .ok_or_else(|| ScalarError::Parse("expected ')'".into()))?;
                return ScalarFraction::new(num, den_part.parse()?);
            }
        }
        Ok(ScalarFraction::from_scalar(t.parse()?))
    }
}

/// Convert a BigRational to a float for diagnostics only.
pub fn approx(x: &BigRational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn parse_display_roundtrip() {
        for x in ["3*q^2 - q^(-1/2)", "q - q^-1", "1/2*q^3 + 7", "-q", "0", "q^(1/3)"] {
            let v = s(x);
            assert_eq!(s(&v.to_string()), v, "{x}");
        }
        assert_eq!(s("3*q^2 - q^(-1/2)").to_string(), "3*q^2 - q^(-1/2)");
    }

    #[test]
    fn hecke_style_identity() {
        let a = Scalar::q_minus_qinv();
        let b = &Scalar::q() + &Scalar::q_pow(-1);
        assert_eq!(&a * &b, s("q^2 - q^-2"));
    }

    #[test]
    fn monomial_inverse_only() {
        assert_eq!(s("2*q^3").inv().unwrap(), s("1/2*q^-3"));
        assert!(s("q + 1").inv().is_err());
    }

    #[test]
    fn fraction_reduces() {
        let f = ScalarFraction::new(s("q^2 - 1"), s("q - 1")).unwrap();
        assert_eq!(f.to_scalar(), Some(s("q + 1")));
        let g = ScalarFraction::new(s("q^-2 - 1"), s("q^-2 - 1")).unwrap();
        assert!(g.is_one());
    }

    #[test]
    fn specialize_fractional_exponent() {
        let q0 = BigRational::new(49.into(), 100.into());
        assert_eq!(s("q^(1/2)").specialize(&q0).unwrap(), BigRational::new(7.into(), 10.into()));
        let q1 = BigRational::new(7.into(), 10.into());
        assert!(s("q^(1/2)").specialize(&q1).is_err());
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl serde::Serialize for ScalarFraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
