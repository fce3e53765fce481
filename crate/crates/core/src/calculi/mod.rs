//! Left-covariant first order calculi: tangent-space builders, the structure
//! functional solver, one-form arithmetic and relation checks.

pub mod checks;
pub mod forms;
pub mod recipe;
pub mod relations;

use std::fmt;

use serde::Serialize;

use crate::fralgebra::{AlgebraElement, Family, GroupSpec, Letter};
use crate::oracle::Context;
use crate::scalar::{Scalar, ScalarFraction};
use crate::ufunctionals::functional::{Atom, Factor, FunctionalElement, GroupLike, Product, Sign};
use crate::ufunctionals::PairingEngine;
use crate::{Error, Result};

pub use forms::{FormEngine, OneForm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CalculusKind {
    GammaX,
    GammaY,
    GammaZ(u8),
    GammaFull,
    GammaRow(usize),
    Bicovariant,
    Elementary { i: usize, j: usize, plus: bool, y: bool },
    Recipe(String),
}

impl fmt::Display for CalculusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CalculusKind::GammaX => write!(f, "gamma-x"),
            CalculusKind::GammaY => write!(f, "gamma-y"),
            CalculusKind::GammaZ(v) => write!(f, "gamma-z{v}"),
            CalculusKind::GammaFull => write!(f, "gamma-full"),
            CalculusKind::GammaRow(j) => write!(f, "gamma-row:{}", j + 1),
            CalculusKind::Bicovariant => write!(f, "bicovariant"),
            CalculusKind::Elementary { i, j, plus, y } => {
                write!(f, "elementary:{}{}:{},{}", if *y { "y" } else { "x" }, if *plus { "+" } else { "-" }, i + 1, j + 1)
            }
            CalculusKind::Recipe(s) => write!(f, "recipe-{s}"),
        }
    }
}

/// How the differential and the commutation rules are obtained.
#[derive(Clone, Debug)]
pub enum Structure {
    /// From the tangent basis: `f^r_k(b) = X_k((a_r - eps(a_r)) b)`.
    Dual,
    /// From explicit structure functionals `f[r][k]`.
    Closed(Vec<Vec<FunctionalElement>>),
}

#[derive(Clone, Debug)]
pub struct Calculus {
    pub kind: CalculusKind,
    pub group: GroupSpec,
    /// Invariant form labels, one per basis element.
    pub labels: Vec<String>,
    /// Tangent basis; empty for the bicovariant calculus, which is given by its
    /// commutation rule only.
    pub basis: Vec<FunctionalElement>,
    /// Elements `a_r` with `X_i(a_r) = delta_ir`; `theta_r = omega(a_r)`.
    pub duals: Vec<AlgebraElement>,
    pub structure: Structure,
    /// Closed-form structure functionals to cross-check the solver against.
    pub expected_f: Option<Vec<Vec<FunctionalElement>>>,
    pub constants: Constants,
    pub zn: Option<GroupLike>,
    pub notes: Vec<String>,
}

impl Calculus {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn n(&self) -> usize {
        self.group.n
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_bicovariant(&self) -> bool {
        self.kind == CalculusKind::Bicovariant
    }

    /// Letters the calculus acts on (antipode letters only when `S^2` is known).
    pub fn letters(&self) -> Vec<Letter> {
        Letter::all(self.group.n, self.group.has_gamma())
    }
}

/// Structure constants computed from pairings.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Constants {
    pub alpha: Option<Scalar>,
    pub beta: Option<Scalar>,
    pub gamma: Option<Scalar>,
    pub zeta: Option<Scalar>,
    pub c: Option<Scalar>,
    pub c_minus: Option<Scalar>,
    pub delta: Option<Scalar>,
    pub gammas: Vec<Scalar>,
}

impl Constants {
    pub fn get(&self, name: &str) -> Result<Scalar> {
        let v = match name {
            "alpha" => &self.alpha,
            "beta" => &self.beta,
            "gamma" => &self.gamma,
            "zeta" => &self.zeta,
            "c" => &self.c,
            "c_minus" => &self.c_minus,
            "delta" => &self.delta,
            _ => &None,
        };
        v.clone().ok_or_else(|| Error::Inconsistent(format!("constant {name} is not available")))
    }

    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let mut v = Vec::new();
        for (k, x) in [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
            ("zeta", &self.zeta),
            ("c", &self.c),
            ("c_minus", &self.c_minus),
            ("delta", &self.delta),
        ] {
            if let Some(x) = x {
                v.push((k, x.to_string()));
            }
        }
        v
    }
}

fn eval_scalar(e: &PairingEngine, f: &FunctionalElement, a: &AlgebraElement) -> Result<Scalar> {
    Ok(e.eval(f, a)?.try_scalar()?)
}

fn pm(sign: Sign, i: usize, j: usize) -> Atom {
    match sign {
        Sign::Plus => Atom::plus(i, j),
        Sign::Minus => Atom::minus(i, j),
    }
}

fn prod(factors: Vec<Factor>, c: ScalarFraction) -> FunctionalElement {
    FunctionalElement::product(factors, c)
}

fn atoms_then(atoms: &[Atom], tail: Option<&GroupLike>) -> Product {
    let mut p: Product = atoms.iter().map(|a| Factor::Atom(*a)).collect();
    if let Some(z) = tail {
        p.push(Factor::Group(z.clone()));
    }
    p
}

fn recip(s: &Scalar) -> Result<ScalarFraction> {
    Ok(ScalarFraction::from(s.clone()).inv()?)
}

fn one_based(i: usize) -> usize {
    i + 1
}

/// `(Z - eps) / (delta - 1)` with `delta = Z(u^n_n)`.
fn centered(z: &GroupLike, delta: &Scalar) -> Result<FunctionalElement> {
    let d1 = delta - &Scalar::one();
    if d1.is_zero() {
        return Err(Error::AssumptionViolated("delta = 1: the Z-calculus has no direct meaning".into()));
    }
    let c = recip(&d1)?;
    Ok((FunctionalElement::group(z.clone()) - FunctionalElement::epsilon()).scale(&c))
}

/// Constants of the linear families, computed from pairings.
pub fn compute_constants(e: &PairingEngine) -> Result<Constants> {
    let g = &e.group;
    let n = g.n - 1;
    let mut k = Constants { gammas: (0..g.n).map(|i| g.gamma(i)).collect::<Result<_>>().unwrap_or_default(), ..Default::default() };
    k.c = Some(eval_scalar(e, &FunctionalElement::atom(Atom::plus(n, n)), &AlgebraElement::u(n, n))?);
    k.c_minus = Some(eval_scalar(e, &FunctionalElement::atom(Atom::minus(n, n)), &AlgebraElement::u(n, n))?);
    if n == 0 {
        return Ok(k);
    }
    let i = 0;
    k.alpha = Some(eval_scalar(e, &FunctionalElement::atoms(&[Atom::minus(n, i), Atom::minus(n, n)]), &AlgebraElement::u(i, n))?);
    let sq = FunctionalElement::group(GroupLike::diag(g.n, Sign::Plus, n, 2));
    k.beta = Some(&eval_scalar(e, &sq, &AlgebraElement::u(n, n))? - &Scalar::one());
    k.gamma = Some(eval_scalar(e, &FunctionalElement::atoms(&[Atom::minus(n, i), Atom::plus(n, n)]), &AlgebraElement::u(i, n))?);
    k.zeta = Some(eval_scalar(e, &FunctionalElement::atoms(&[Atom::minus(n, n), Atom::plus(i, n)]), &AlgebraElement::u(n, i))?);
    Ok(k)
}

fn require_linear(g: &GroupSpec, what: &str) -> Result<()> {
    if g.family.is_linear() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{what} is only established for GL_q and SL_q, not {}", g.family)))
    }
}

/// Triangularity: `l^{-m}_c` vanishes on every letter for `m < c`.
fn check_triangular(e: &PairingEngine, c: usize) -> Result<()> {
    let n = e.n();
    for m in 0..c {
        for l in Letter::all(n, e.group.has_gamma()) {
            if !e.atom_value(&Atom::minus(m, c), &l)?.is_zero() {
                return Err(Error::AssumptionViolated(format!("l-[{},{}] does not vanish on {l}", m + 1, c + 1)));
            }
        }
    }
    Ok(())
}

/// Values `v_i` of a family of functionals on `u^i_n` style elements must not
/// depend on `i`.
fn uniform(values: Vec<Scalar>, what: &str) -> Result<Scalar> {
    let first = values[0].clone();
    if values.iter().any(|v| v != &first) {
        return Err(Error::AssumptionViolated(format!(
            "{what} depends on the index: [{}]",
            values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
        )));
    }
    if first.is_zero() {
        return Err(Error::AssumptionViolated(format!("{what} vanishes")));
    }
    Ok(first)
}

fn x_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("theta{}", one_based(i))).collect()
}

/// The calculus whose tangent space consists of `X_i = a^-1 l-[n,i].l-[n,n]`
/// and `X_n = a^-1 ((l-[n,n])^2 - eps)`, dual to `x_i = u^i_n`.
pub fn build_gamma_x(ctx: &Context) -> Result<Calculus> {
    let g = &ctx.group;
    require_linear(g, "the x-calculus")?;
    let e = &*ctx.engine;
    let nn = g.n;
    let n = nn - 1;
    check_triangular(e, n)?;
    for i in 0..n {
        for j in 0..nn {
            if i != j && !e.atom_value(&Atom::minus(n, i), &Letter::u(j, n))?.is_zero() {
                return Err(Error::AssumptionViolated(format!("l-[n,{}] does not vanish on u[{},n]", i + 1, j + 1)));
            }
        }
    }
    let sq = GroupLike::diag(nn, Sign::Minus, n, 2);
    let top = &eval_scalar(e, &FunctionalElement::group(sq.clone()), &AlgebraElement::u(n, n))? - &Scalar::one();
    let mut vals = (0..n)
        .map(|i| eval_scalar(e, &FunctionalElement::atoms(&[Atom::minus(n, i), Atom::minus(n, n)]), &AlgebraElement::u(i, n)))
        .collect::<Result<Vec<_>>>()?;
    vals.push(top);
    let alpha = uniform(vals, "alpha (the x-calculus normalization)")?;
    let ai = recip(&alpha)?;
    let mut basis: Vec<FunctionalElement> =
        (0..n).map(|i| prod(atoms_then(&[Atom::minus(n, i), Atom::minus(n, n)], None), ai.clone())).collect();
    basis.push((FunctionalElement::group(sq) - FunctionalElement::epsilon()).scale(&ai));
    let duals = (0..nn).map(|s| AlgebraElement::u(s, n)).collect();
    let expected = (0..nn)
        .map(|j| (0..nn).map(|i| FunctionalElement::atoms(&[Atom::minus(j, i), Atom::minus(n, n)])).collect())
        .collect();
    let mut constants = compute_constants(e)?;
    constants.alpha = Some(alpha);
    Ok(Calculus {
        kind: CalculusKind::GammaX,
        group: g.clone(),
        labels: x_labels(nn),
        basis,
        duals,
        structure: Structure::Dual,
        expected_f: Some(expected),
        constants,
        zn: None,
        notes: Vec::new(),
    })
}

/// The calculus spanned by `Y_i = b^-1 S(l+[i,n]).l-[n,n]`, dual to `S^-1(u^n_i)`.
pub fn build_gamma_y(ctx: &Context) -> Result<Calculus> {
    let g = &ctx.group;
    require_linear(g, "the y-calculus")?;
    let e = &*ctx.engine;
    let nn = g.n;
    let n = nn - 1;
    // S(l^{+-n}_n) = l^{-+n}_n on every letter.
    for l in Letter::all(nn, true) {
        for s in [Sign::Plus, Sign::Minus] {
            let a = e.atom_value(&Atom { sign: s, antipode: true, row: n as u8, col: n as u8 }, &l)?;
            let b = e.atom_value(&pm(s.flip(), n, n), &l)?;
            if a != b {
                return Err(Error::AssumptionViolated(format!("S(l{s}[n,n]) differs from its inverse on {l}")));
            }
        }
    }
    let duals = (0..nn).map(|s| AlgebraElement::antipode_inverse_letter(g, n, s)).collect::<Result<Vec<_>>>()?;
    let sq = GroupLike::diag(nn, Sign::Minus, n, 2);
    let mut vals = (0..n)
        .map(|i| eval_scalar(e, &FunctionalElement::atoms(&[Atom::s_plus(i, n), Atom::minus(n, n)]), &duals[i]))
        .collect::<Result<Vec<_>>>()?;
    vals.push(&eval_scalar(e, &FunctionalElement::group(sq.clone()), &duals[n])? - &Scalar::one());
    let beta = uniform(vals, "beta (the y-calculus normalization)")?;
    let bi = recip(&beta)?;
    let mut basis: Vec<FunctionalElement> =
        (0..n).map(|i| prod(atoms_then(&[Atom::s_plus(i, n), Atom::minus(n, n)], None), bi.clone())).collect();
    basis.push((FunctionalElement::group(sq) - FunctionalElement::epsilon()).scale(&bi));
    let expected = (0..nn)
        .map(|j| (0..nn).map(|i| FunctionalElement::atoms(&[Atom::s_plus(i, j), Atom::minus(n, n)])).collect())
        .collect();
    let mut constants = compute_constants(e)?;
    constants.beta = Some(beta);
    Ok(Calculus {
        kind: CalculusKind::GammaY,
        group: g.clone(),
        labels: (0..nn).map(|i| format!("eta{}", one_based(i))).collect(),
        basis,
        duals,
        structure: Structure::Dual,
        expected_f: Some(expected),
        constants,
        zn: None,
        notes: Vec::new(),
    })
}

/// Default group-like for the Z-calculi: `(l-[n,n])^2`.
pub fn default_zn(g: &GroupSpec) -> GroupLike {
    GroupLike::diag(g.n, Sign::Minus, g.n - 1, 2)
}

/// The four `(2n-1)`-dimensional calculi mixing the x- and y-type tangent
/// vectors. `variant` selects which of the two families carries `Z`:
/// 1 both, 2 only X, 3 only Y, 4 neither.
pub fn build_gamma_z(ctx: &Context, variant: u8, zn: &GroupLike) -> Result<Calculus> {
    let g = &ctx.group;
    require_linear(g, "the Z-calculus")?;
    if !(1..=4).contains(&variant) {
        return Err(Error::Config(format!("Z-calculus variant must be 1..4, got {variant}")));
    }
    let e = &*ctx.engine;
    let nn = g.n;
    let n = nn - 1;
    if zn.n() != nn {
        return Err(Error::Config("Z has the wrong number of indices".into()));
    }
    if !e.is_diagonal(zn)? {
        return Err(Error::AssumptionViolated("Z must vanish on off-diagonal generators".into()));
    }
    let zf = FunctionalElement::group(zn.clone());
    let delta = eval_scalar(e, &zf, &AlgebraElement::u(n, n))?;
    let gam = uniform(
        (0..n)
            .map(|i| eval_scalar(e, &FunctionalElement::atoms(&[Atom::minus(n, i), Atom::plus(n, n)]), &AlgebraElement::u(i, n)))
            .collect::<Result<Vec<_>>>()?,
        "gamma",
    )?;
    let zeta = uniform(
        (0..n)
            .map(|i| eval_scalar(e, &FunctionalElement::atoms(&[Atom::minus(n, n), Atom::plus(i, n)]), &AlgebraElement::u(n, i)))
            .collect::<Result<Vec<_>>>()?,
        "zeta",
    )?;
    let x_has_z = matches!(variant, 1 | 2);
    let y_has_z = matches!(variant, 1 | 3);
    let xc = if x_has_z { recip(&(&gam * &delta))? } else { recip(&gam)? };
    let yc = if y_has_z { recip(&zeta)? * ScalarFraction::from(delta.clone()) } else { recip(&zeta)? };
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    let mut duals = Vec::new();
    for i in 0..n {
        basis.push(prod(atoms_then(&[Atom::minus(n, i), Atom::plus(n, n)], x_has_z.then_some(zn)), xc.clone()));
        labels.push(format!("theta{}", one_based(i)));
        duals.push(AlgebraElement::u(i, n));
    }
    basis.push(centered(zn, &delta)?);
    labels.push(format!("theta{}", nn));
    duals.push(AlgebraElement::u(n, n));
    for i in 0..n {
        basis.push(prod(atoms_then(&[Atom::s_plus(i, n), Atom::plus(n, n)], y_has_z.then_some(zn)), yc.clone()));
        labels.push(format!("eta{}", one_based(i)));
        duals.push(AlgebraElement::antipode_inverse_letter(g, n, i)?);
    }
    let mut constants = compute_constants(e)?;
    constants.gamma = Some(gam);
    constants.zeta = Some(zeta);
    constants.delta = Some(delta);
    Ok(Calculus {
        kind: CalculusKind::GammaZ(variant),
        group: g.clone(),
        labels,
        basis,
        duals,
        structure: Structure::Dual,
        expected_f: None,
        constants,
        zn: Some(zn.clone()),
        notes: Vec::new(),
    })
}

/// Basis element of the full `N^2`-dimensional calculus: `(label, functional, dual)`.
fn full_generator(g: &GroupSpec, e: &PairingEngine, x: bool, i: usize, j: usize) -> Result<(String, FunctionalElement, AlgebraElement)> {
    let a = recip(&(&Scalar::q_pow(-2) - &Scalar::one()))?;
    let b = recip(&(&Scalar::q_pow(2) - &Scalar::one()))?;
    let _ = e;
    if i == j {
        let f = (FunctionalElement::group(GroupLike::diag(g.n, Sign::Minus, i, 2)) - FunctionalElement::epsilon()).scale(&a);
        return Ok((format!("theta{}{}", i + 1, i + 1), f, AlgebraElement::u(i, i)));
    }
    if x {
        Ok((format!("theta{}{}", i + 1, j + 1), prod(atoms_then(&[Atom::minus(j, i), Atom::minus(j, j)], None), a), AlgebraElement::u(i, j)))
    } else {
        // Y_ji with i < j, dual S^-1(u^j_i).
        Ok((
            format!("eta{}{}", j + 1, i + 1),
            prod(atoms_then(&[Atom::s_plus(i, j), Atom::minus(j, j)], None),b),
            AlgebraElement::antipode_inverse_letter(g, j, i)?,
        ))
    }
}

fn assemble(ctx: &Context, kind: CalculusKind, gens: Vec<(String, FunctionalElement, AlgebraElement)>) -> Result<Calculus> {
    let g = &ctx.group;
    let mut notes = Vec::new();
    if g.family == Family::SLq {
        notes.push("on SL_q the pairings carry the normalization factor z, so duality holds only up to powers of z".into());
    }
    let (labels, basis, duals) = gens.into_iter().fold((Vec::new(), Vec::new(), Vec::new()), |mut acc, (l, f, d)| {
        acc.0.push(l);
        acc.1.push(f);
        acc.2.push(d);
        acc
    });
    Ok(Calculus {
        kind,
        group: g.clone(),
        labels,
        basis,
        duals,
        structure: Structure::Dual,
        expected_f: None,
        constants: compute_constants(&ctx.engine)?,
        zn: None,
        notes,
    })
}

/// The `N^2`-dimensional calculus built from all `X_ij` and `Y_ji`.
pub fn build_gamma_full(ctx: &Context) -> Result<Calculus> {
    let g = &ctx.group;
    require_linear(g, "the full calculus")?;
    let nn = g.n;
    let mut gens = Vec::new();
    for j in 0..nn {
        gens.extend(row_generators(ctx, j)?);
    }
    assemble(ctx, CalculusKind::GammaFull, gens)
}

fn row_generators(ctx: &Context, j: usize) -> Result<Vec<(String, FunctionalElement, AlgebraElement)>> {
    let mut gens = Vec::new();
    for i in 0..=j {
        gens.push(full_generator(&ctx.group, &ctx.engine, true, i, j)?);
    }
    for i in 0..j {
        gens.push(full_generator(&ctx.group, &ctx.engine, false, i, j)?);
    }
    Ok(gens)
}

/// The `(2j-1)`-dimensional row calculus spanned by `X_ij`, `Y_ji` with `i <= j`
/// (`j` is zero-based here).
pub fn build_gamma_row(ctx: &Context, j: usize) -> Result<Calculus> {
    let g = &ctx.group;
    require_linear(g, "the row calculus")?;
    if j >= g.n {
        return Err(Error::Config(format!("row index {} out of range 1..{}", j + 1, g.n)));
    }
    let gens = row_generators(ctx, j)?;
    assemble(ctx, CalculusKind::GammaRow(j), gens)
}

/// The bicovariant calculus with forms `omega_ij = omega(u^i_j)` and
/// commutation rule `omega_ij a = a_(1) <l+[i,r] S(l-[s,j]), a_(2)> omega_rs`.
pub fn build_bicovariant(ctx: &Context) -> Result<Calculus> {
    let g = &ctx.group;
    require_linear(g, "the bicovariant calculus")?;
    let nn = g.n;
    let idx: Vec<(usize, usize)> = (0..nn).flat_map(|i| (0..nn).map(move |j| (i, j))).collect();
    let f = idx
        .iter()
        .map(|&(i, j)| {
            idx.iter().map(|&(r, s)| FunctionalElement::atoms(&[Atom::plus(i, r), Atom::s_minus(s, j)])).collect()
        })
        .collect();
    Ok(Calculus {
        kind: CalculusKind::Bicovariant,
        group: g.clone(),
        labels: idx.iter().map(|(i, j)| format!("omega{}{}", i + 1, j + 1)).collect(),
        basis: Vec::new(),
        duals: idx.iter().map(|&(i, j)| AlgebraElement::u(i, j)).collect(),
        structure: Structure::Closed(f),
        expected_f: None,
        constants: compute_constants(&ctx.engine)?,
        zn: None,
        notes: Vec::new(),
    })
}

/// Pairing matrix `M[i][r] = X_i(a_r)`.
pub fn duality_matrix(ctx: &Context, c: &Calculus) -> Result<Vec<Vec<ScalarFraction>>> {
    c.basis.iter().map(|x| c.duals.iter().map(|a| ctx.engine.eval(x, a)).collect()).collect()
}

pub fn is_identity(m: &[Vec<ScalarFraction>]) -> bool {
    m.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() }))
}

/// Every tangent vector annihilates `1`.
pub fn kills_unit(ctx: &Context, c: &Calculus) -> Result<bool> {
    for x in &c.basis {
        if !ctx.engine.eval(x, &AlgebraElement::one())?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::OracleConfig;

    fn ctx(g: GroupSpec) -> Context {
        Context::new(&g, OracleConfig::default()).unwrap()
    }

    #[test]
    fn gl_constants() {
        let c = ctx(GroupSpec::gl(2));
        let k = compute_constants(&c.engine).unwrap();
        assert_eq!(k.alpha.unwrap(), "q^-2 - 1".parse().unwrap());
        assert_eq!(k.beta.unwrap(), "q^2 - 1".parse().unwrap());
        assert_eq!(k.gamma.unwrap(), "1 - q^2".parse().unwrap());
        assert_eq!(k.zeta.unwrap(), "1 - q^-2".parse().unwrap());
        assert_eq!(k.c.unwrap(), Scalar::q());
        assert_eq!(k.c_minus.unwrap(), Scalar::q_pow(-1));
    }

    #[test]
    fn duality_is_identity_at_n2() {
        let c = ctx(GroupSpec::gl(2));
        let zn = default_zn(&c.group);
        let mut all = vec![build_gamma_x(&c).unwrap(), build_gamma_y(&c).unwrap(), build_gamma_full(&c).unwrap()];
        for v in 1..=4 {
            all.push(build_gamma_z(&c, v, &zn).unwrap());
        }
        for j in 0..2 {
            all.push(build_gamma_row(&c, j).unwrap());
        }
        for calc in &all {
            let m = duality_matrix(&c, calc).unwrap();
            assert!(is_identity(&m), "{}: {:?}", calc.kind, m);
            assert!(kills_unit(&c, calc).unwrap());
        }
    }

    #[test]
    fn sl_rejects_x_calculus() {
        let c = ctx(GroupSpec::sl(2));
        assert!(matches!(build_gamma_x(&c), Err(Error::AssumptionViolated(_))));
    }
}
