//! Pairing of L-functionals with the coordinate algebra.
//!
//! Every factor of a functional product is a matrix representation of the
//! algebra: `l^{+-}` and `S(l^{+-})` act on `C^n`, characters on `C`. A product
//! `f_1 ... f_m` acts through the iterated coproduct, so each letter becomes a
//! sparse matrix on the tensor product of the factor spaces and a word is a
//! product of such transfer matrices.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::fralgebra::algebra::{AlgebraElement, Letter, Monomial};
use crate::fralgebra::group::GroupSpec;
use crate::fralgebra::pbw::quantum_determinant;
use crate::fralgebra::rmatrix::{build_rmatrix, rhat_inverse, RMatrix};
use crate::scalar::{Scalar, ScalarFraction};
use crate::ufunctionals::functional::{Atom, Factor, FunctionalElement, GroupLike, Product, Sign};
use crate::{Error, Result};

/// Representation type of one factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepKind {
    /// The matrix `L^{sign}`; state moves from row to column index.
    L(Sign),
    /// The matrix `S(L^{sign})`; state moves from column to row index.
    SL(Sign),
    Char(GroupLike),
}

impl RepKind {
    fn dim(&self, n: usize) -> usize {
        match self {
            RepKind::Char(_) => 1,
            _ => n,
        }
    }
}

/// Sparse square matrix with rows of `(column, value)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat {
    pub dim: usize,
    pub rows: Vec<Vec<(u32, Scalar)>>,
}

impl SparseMat {
    pub fn zero(dim: usize) -> Self {
        SparseMat { dim, rows: vec![Vec::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        SparseMat { dim, rows: (0..dim).map(|i| vec![(i as u32, Scalar::one())]).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    fn from_entries(dim: usize, entries: HashMap<(u32, u32), Scalar>) -> Self {
        let mut rows = vec![Vec::new(); dim];
        for ((r, c), v) in entries {
            if !v.is_zero() {
                rows[r as usize].push((c, v));
            }
        }
        for r in rows.iter_mut() {
            r.sort_by_key(|e| e.0);
        }
        SparseMat { dim, rows }
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.rows[r].iter().find(|e| e.0 as usize == c).map(|e| e.1.clone()).unwrap_or_else(Scalar::zero)
    }

    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        let mut rows = Vec::with_capacity(self.dim);
        let mut acc: Vec<Option<Scalar>> = vec![None; self.dim];
        let mut touched: Vec<u32> = Vec::new();
        for row in &self.rows {
            for (k, a) in row {
                for (c, b) in &other.rows[*k as usize] {
                    let v = a * b;
                    match &mut acc[*c as usize] {
                        Some(x) => *x += &v,
                        slot => {
                            *slot = Some(v);
                            touched.push(*c);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for c in touched.drain(..) {
                let v = acc[c as usize].take().unwrap();
                if !v.is_zero() {
                    out.push((c, v));
                }
            }
            rows.push(out);
        }
        SparseMat { dim: self.dim, rows }
    }

    pub fn add_scaled(&mut self, other: &SparseMat, c: &Scalar) {
        for (r, row) in other.rows.iter().enumerate() {
            for (col, v) in row {
                let v = v * c;
                match self.rows[r].iter_mut().find(|e| e.0 == *col) {
                    Some(e) => e.1 += &v,
                    None => self.rows[r].push((*col, v)),
                }
            }
            self.rows[r].retain(|e| !e.1.is_zero());
        }
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, v: &[(u32, Scalar)]) -> Vec<(u32, Scalar)> {
        let mut acc: HashMap<u32, Scalar> = HashMap::new();
        for (k, a) in v {
            for (c, b) in &self.rows[*k as usize] {
                let e = acc.entry(*c).or_insert_with(Scalar::zero);
                *e += &(a * b);
            }
        }
        let mut out: Vec<(u32, Scalar)> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        out.sort_by_key(|e| e.0);
        out
    }
}

type LetterKey = (Vec<RepKind>, Letter);

/// Evaluates functionals on words for one group.
pub struct PairingEngine {
    pub group: GroupSpec,
    pub rhat: RMatrix,
    pub rhat_inv: RMatrix,
    letter_cache: RwLock<HashMap<LetterKey, Arc<SparseMat>>>,
    word_cache: RwLock<HashMap<(Vec<RepKind>, Vec<Letter>), Arc<SparseMat>>>,
    det_cache: RwLock<HashMap<RepKind, Arc<Vec<Scalar>>>>,
}

impl PairingEngine {
    pub fn new(g: &GroupSpec) -> Result<Self> {
        let rhat = build_rmatrix(g);
        let rhat_inv = rhat_inverse(g, &rhat)?;
        Ok(PairingEngine {
            group: g.clone(),
            rhat,
            rhat_inv,
            letter_cache: RwLock::new(HashMap::new()),
            word_cache: RwLock::new(HashMap::new()),
            det_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.group.n
    }

    /// `<l^{sign,i}_k, u^a_b>` or, with `antipode`, `<S(l^{sign,i}_k), u^a_b>`.
    fn atom_on_u(&self, sign: Sign, antipode: bool, i: usize, k: usize, a: usize, b: usize) -> Scalar {
        let z = self.group.z();
        let zinv = || z.inv().expect("z is a monomial");
        match (sign, antipode) {
            (Sign::Plus, false) => z * self.rhat.get(i, a, b, k),
            (Sign::Minus, false) => &zinv() * self.rhat_inv.get(i, a, b, k),
            (Sign::Plus, true) => &zinv() * self.rhat_inv.get(a, i, k, b),
            (Sign::Minus, true) => z * self.rhat.get(a, i, k, b),
        }
    }

    /// Value of a single atom on a single letter.
    pub fn atom_value(&self, atom: &Atom, letter: &Letter) -> Result<Scalar> {
        self.atom_entry(atom.sign, atom.antipode, atom.row(), atom.col(), letter)
    }

    fn atom_entry(&self, sign: Sign, antipode: bool, i: usize, k: usize, l: &Letter) -> Result<Scalar> {
        let (a, b) = (l.row(), l.col());
        if !l.anti {
            return Ok(self.atom_on_u(sign, antipode, i, k, a, b));
        }
        if antipode {
            // <S(f), S(u)> = <f, S^2(u)> = gamma_a gamma_b^-1 <f, u>.
            let ratio = &self.group.gamma(a)? * &self.group.gamma(b)?.inv()?;
            Ok(&ratio * &self.atom_on_u(sign, false, i, k, a, b))
        } else {
            if !self.group.has_gamma() {
                return Err(Error::Unsupported(format!("pairing with antipode letters for {}", self.group.family)));
            }
            Ok(self.atom_on_u(sign, true, i, k, a, b))
        }
    }

    /// Value of a character on a letter: `delta_ab chi_a` or `delta_ab chi_a^-1`.
    pub fn character_value(&self, g: &GroupLike, l: &Letter) -> Result<Scalar> {
        if l.row != l.col {
            return Ok(Scalar::zero());
        }
        if l.anti && !self.group.has_gamma() {
            return Err(Error::Unsupported(format!("pairing with antipode letters for {}", self.group.family)));
        }
        let a = l.row();
        let mut v = Scalar::one();
        for k in 0..self.n() {
            for (sign, e) in [(Sign::Plus, g.plus[k]), (Sign::Minus, g.minus[k])] {
                if e != 0 {
                    let base = self.atom_on_u(sign, false, k, k, a, a);
                    v = &v * &base.pow(e as i64)?;
                }
            }
        }
        if g.sign(a) < 0 {
            v = -v;
        }
        if l.anti {
            v = v.inv()?;
        }
        Ok(v)
    }

    /// Transition weights `(from, to, value)` of one representation on one letter.
    fn transitions(&self, kind: &RepKind, l: &Letter) -> Result<Vec<(usize, usize, Scalar)>> {
        let n = self.n();
        let mut out = Vec::new();
        match kind {
            RepKind::Char(g) => {
                let v = self.character_value(g, l)?;
                if !v.is_zero() {
                    out.push((0, 0, v));
                }
            }
            RepKind::L(sign) => {
                for i in 0..n {
                    for k in 0..n {
                        let v = self.atom_entry(*sign, false, i, k, l)?;
                        if !v.is_zero() {
                            out.push((i, k, v));
                        }
                    }
                }
            }
            RepKind::SL(sign) => {
                // S(l^{i}_j) starts at j and ends at i.
                for i in 0..n {
                    for k in 0..n {
                        let v = self.atom_entry(*sign, true, i, k, l)?;
                        if !v.is_zero() {
                            out.push((k, i, v));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of a letter in the tensor product of the given representations.
    pub fn letter_matrix(&self, kinds: &[RepKind], l: &Letter) -> Result<Arc<SparseMat>> {
        let key = (kinds.to_vec(), *l);
        if let Some(m) = self.letter_cache.read().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let n = self.n();
        let dims: Vec<usize> = kinds.iter().map(|k| k.dim(n)).collect();
        let dim: usize = dims.iter().product();
        let mut strides = vec![1usize; kinds.len()];
        for s in (0..kinds.len().saturating_sub(1)).rev() {
            strides[s] = strides[s + 1] * dims[s + 1];
        }
        // Partial entries: (row, col, current chain index, weight).
        let mut partial: Vec<(usize, usize, usize, Scalar)> = vec![(0, 0, l.row(), Scalar::one())];
        let order: Vec<usize> = if l.anti { (0..kinds.len()).rev().collect() } else { (0..kinds.len()).collect() };
        for (pos, &s) in order.iter().enumerate() {
            let last = pos + 1 == order.len();
            let mut next = Vec::new();
            for (r, c, cur, w) in &partial {
                let targets: Vec<usize> = if last { vec![l.col()] } else { (0..n).collect() };
                for t in targets {
                    let leg = Letter { anti: l.anti, row: *cur as u8, col: t as u8 };
                    for (from, to, v) in self.transitions(&kinds[s], &leg)? {
                        next.push((r + from * strides[s], c + to * strides[s], t, w * &v));
                    }
                }
            }
            partial = next;
        }
        let mut entries: HashMap<(u32, u32), Scalar> = HashMap::new();
        if kinds.is_empty() {
            partial.clear();
            entries.insert((0, 0), l.counit());
        }
        for (r, c, _, w) in partial {
            let e = entries.entry((r as u32, c as u32)).or_insert_with(Scalar::zero);
            *e += &w;
        }
        let m = Arc::new(SparseMat::from_entries(dim, entries));
        self.letter_cache.write().unwrap().insert(key, m.clone());
        Ok(m)
    }

    /// Matrix of a word (product of letter matrices), memoized.
    pub fn word_matrix(&self, kinds: &[RepKind], word: &[Letter]) -> Result<Arc<SparseMat>> {
        let n = self.n();
        let dim: usize = kinds.iter().map(|k| k.dim(n)).product();
        if word.is_empty() {
            return Ok(Arc::new(SparseMat::identity(dim)));
        }
        if word.len() == 1 {
            return self.letter_matrix(kinds, &word[0]);
        }
        let key = (kinds.to_vec(), word.to_vec());
        if let Some(m) = self.word_cache.read().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let prefix = self.word_matrix(kinds, &word[..word.len() - 1])?;
        let last = self.letter_matrix(kinds, &word[word.len() - 1])?;
        let m = Arc::new(prefix.mul(&last));
        self.word_cache.write().unwrap().insert(key, m.clone());
        Ok(m)
    }

    /// Diagonal of `rho(detq)` for one representation.
    fn det_diag(&self, kind: &RepKind) -> Result<Arc<Vec<Scalar>>> {
        if let Some(v) = self.det_cache.read().unwrap().get(kind) {
            return Ok(v.clone());
        }
        if !self.group.family.is_linear() {
            return Err(Error::Unsupported("determinant powers outside GL_q/SL_q".into()));
        }
        let kinds = vec![kind.clone()];
        let dim = kind.dim(self.n());
        let mut acc = SparseMat::zero(dim);
        for (m, c) in quantum_determinant(self.n()).terms() {
            let w = self.word_matrix(&kinds, &m.letters)?;
            acc.add_scaled(&w, c);
        }
        let mut diag = Vec::with_capacity(dim);
        for (r, row) in acc.rows.iter().enumerate() {
            match row.as_slice() {
                [(c, v)] if *c as usize == r => diag.push(v.clone()),
                _ => return Err(Error::AssumptionViolated("determinant does not act diagonally".into())),
            }
        }
        let v = Arc::new(diag);
        self.det_cache.write().unwrap().insert(kind.clone(), v.clone());
        Ok(v)
    }

    /// Full matrix of a monomial (word times determinant power).
    pub fn monomial_matrix(&self, kinds: &[RepKind], m: &Monomial) -> Result<SparseMat> {
        let w = self.word_matrix(kinds, &m.letters)?;
        if m.det == 0 {
            return Ok((*w).clone());
        }
        let n = self.n();
        let dims: Vec<usize> = kinds.iter().map(|k| k.dim(n)).collect();
        let diags = kinds.iter().map(|k| self.det_diag(k)).collect::<Result<Vec<_>>>()?;
        let dim: usize = dims.iter().product();
        let mut scale = vec![Scalar::one(); dim];
        for (idx, s) in scale.iter_mut().enumerate() {
            let mut rest = idx;
            for f in (0..kinds.len()).rev() {
                let k = rest % dims[f];
                rest /= dims[f];
                *s = &*s * &diags[f][k].pow(m.det as i64)?;
            }
        }
        let mut out = (*w).clone();
        for (r, row) in out.rows.iter_mut().enumerate() {
            for e in row.iter_mut() {
                e.1 = &scale[r] * &e.1;
            }
        }
        Ok(out)
    }

    /// Matrix of an algebra element in the given tensor representation.
    pub fn element_matrix(&self, kinds: &[RepKind], a: &AlgebraElement) -> Result<SparseMat> {
        let dim: usize = kinds.iter().map(|k| k.dim(self.n())).product();
        let mut acc = SparseMat::zero(dim);
        for (m, c) in a.terms() {
            let w = self.monomial_matrix(kinds, m)?;
            acc.add_scaled(&w, c);
        }
        Ok(acc)
    }

    fn product_layout(&self, p: &Product) -> (Vec<RepKind>, usize, usize) {
        let n = self.n();
        let mut kinds = Vec::with_capacity(p.len());
        let (mut start, mut end) = (0usize, 0usize);
        for f in p {
            let (kind, s, e) = match f {
                Factor::Atom(a) if a.antipode => (RepKind::SL(a.sign), a.col(), a.row()),
                Factor::Atom(a) => (RepKind::L(a.sign), a.row(), a.col()),
                Factor::Group(g) => (RepKind::Char(g.clone()), 0, 0),
            };
            let d = kind.dim(n);
            start = start * d + s;
            end = end * d + e;
            kinds.push(kind);
        }
        (kinds, start, end)
    }

    /// `<f_1 ... f_m, monomial>`.
    pub fn eval_product(&self, p: &Product, m: &Monomial) -> Result<Scalar> {
        let (kinds, start, end) = self.product_layout(p);
        if m.det == 0 {
            let w = self.word_matrix(&kinds, &m.letters)?;
            return Ok(w.get(start, end));
        }
        Ok(self.monomial_matrix(&kinds, m)?.get(start, end))
    }

    /// `<f, a>` for arbitrary elements.
    pub fn eval(&self, f: &FunctionalElement, a: &AlgebraElement) -> Result<ScalarFraction> {
        let mut acc = ScalarFraction::zero();
        for (p, c) in f.terms() {
            let mut inner = Scalar::zero();
            for (m, x) in a.terms() {
                let v = self.eval_product(p, m)?;
                if !v.is_zero() {
                    inner += &(x * &v);
                }
            }
            if !inner.is_zero() {
                acc += &(c * &ScalarFraction::from(inner));
            }
        }
        Ok(acc)
    }

    pub fn eval_word(&self, f: &FunctionalElement, w: &[Letter]) -> Result<ScalarFraction> {
        self.eval(f, &AlgebraElement::word(w))
    }

    /// Evaluate many words sharing prefixes: returns `<f, w>` for each word.
    pub fn eval_words(&self, f: &FunctionalElement, words: &[Vec<Letter>]) -> Result<Vec<ScalarFraction>> {
        words.iter().map(|w| self.eval_word(f, w)).collect()
    }

    /// Check that a character is diagonal and respects the defining relations
    /// on single letters (the relations themselves are checked by the caller).
    pub fn is_diagonal(&self, g: &GroupLike) -> Result<bool> {
        for l in Letter::all(self.n(), false) {
            let v = self.character_value(g, &l)?;
            if l.row != l.col && !v.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Pairing zero test: `<P, a> = 0` for every product `P` of at most
    /// `bound` atoms `l^{+-}` (and the counit). Returns a witness otherwise.
    pub fn zero_test(&self, a: &AlgebraElement, bound: usize) -> Result<Option<String>> {
        if !a.counit().is_zero() {
            return Ok(Some("counit".into()));
        }
        let mut patterns: Vec<Vec<RepKind>> = Vec::new();
        let mut layer: Vec<Vec<RepKind>> = vec![Vec::new()];
        for _ in 0..bound {
            layer = layer
                .iter()
                .flat_map(|p| {
                    [Sign::Plus, Sign::Minus].into_iter().map(move |s| {
                        let mut q = p.clone();
                        q.push(RepKind::L(s));
                        q
                    })
                })
                .collect();
            patterns.extend(layer.iter().cloned());
        }
        for kinds in &patterns {
            let m = self.element_matrix(kinds, a)?;
            if let Some((r, row)) = m.rows.iter().enumerate().find(|(_, row)| !row.is_empty()) {
                let c = row[0].0 as usize;
                return Ok(Some(describe_entry(kinds, r, c, self.n())));
            }
        }
        Ok(None)
    }

    pub fn clear_caches(&self) {
        self.letter_cache.write().unwrap().clear();
        self.word_cache.write().unwrap().clear();
    }
}

fn describe_entry(kinds: &[RepKind], r: usize, c: usize, n: usize) -> String {
    let mut parts = Vec::new();
    let (mut r, mut c) = (r, c);
    let mut idx = Vec::new();
    for k in kinds.iter().rev() {
        let d = k.dim(n);
        idx.push((r % d, c % d));
        r /= d;
        c /= d;
    }
    idx.reverse();
    for (k, (i, j)) in kinds.iter().zip(idx) {
        parts.push(match k {
            RepKind::L(s) => Atom { sign: *s, antipode: false, row: i as u8, col: j as u8 }.to_string(),
            RepKind::SL(s) => Atom { sign: *s, antipode: true, row: j as u8, col: i as u8 }.to_string(),
            RepKind::Char(g) => g.to_string(),
        });
    }
    format!("nonzero pairing with {}", parts.join("."))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(n: usize) -> PairingEngine {
        PairingEngine::new(&GroupSpec::gl(n)).unwrap()
    }

    #[test]
    fn atoms_are_triangular() {
        let e = engine(3);
        for i in 0..3 {
            for j in 0..3 {
                for l in Letter::all(3, false) {
                    if j < i {
                        assert!(e.atom_value(&Atom::plus(i, j), &l).unwrap().is_zero());
                    }
                    if i < j {
                        assert!(e.atom_value(&Atom::minus(i, j), &l).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_values() {
        let e = engine(2);
        let v = e.atom_value(&Atom::plus(1, 1), &Letter::u(1, 1)).unwrap();
        assert_eq!(v, Scalar::q());
        let w = e.atom_value(&Atom::minus(1, 1), &Letter::u(1, 1)).unwrap();
        assert_eq!(w, Scalar::q_pow(-1));
    }

    #[test]
    fn counit_is_empty_product() {
        let e = engine(2);
        let a = AlgebraElement::word(&[Letter::u(0, 0), Letter::s(1, 1)]);
        assert!(e.eval(&FunctionalElement::epsilon(), &a).unwrap().is_one());
    }
}
