//! Tangent spaces assembled from elementary pieces: the `X^+-`/`Y^+-` chains,
//! their sums, the `(N^2-1)`-dimensional SL_q calculi and the orthogonal and
//! symplectic constructions indexed by `i' <= j`.

use crate::calculi::{compute_constants, Calculus, CalculusKind, Structure};
use crate::fralgebra::{AlgebraElement, Family, GroupSpec, Letter};
use crate::oracle::Context;
use crate::report::CheckResult;
use crate::scalar::{Scalar, ScalarFraction};
use crate::ufunctionals::functional::{Atom, Factor, FunctionalElement, GroupLike, Product, Sign};
use crate::ufunctionals::linsolve;
use crate::ufunctionals::span::words_up_to;
use crate::ufunctionals::PairingEngine;
use crate::{Error, Result};

/// Note attached to every orthogonal or symplectic recipe.
pub const SEPARATION_NOTE: &str =
    "the diagonal generators use the normalized separation (Y_i - eps, u^r_r) = 0 for r != i, since a group-like \
     monomial cannot take the value 2 on u^i_i";

fn product(atoms: &[Atom], z: &GroupLike) -> FunctionalElement {
    let mut p: Product = atoms.iter().map(|a| Factor::Atom(*a)).collect();
    if !z.is_identity() {
        p.push(Factor::Group(z.clone()));
    }
    FunctionalElement::product(p, ScalarFraction::one())
}

fn minus_eps(z: &GroupLike) -> FunctionalElement {
    FunctionalElement::group(z.clone()) - FunctionalElement::epsilon()
}

fn word_label(w: &[Letter]) -> String {
    w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(".")
}

/// Replace `basis` by an equivalent basis dual to words in `letters` of length
/// at most two. Fails when the functionals are linearly dependent there.
pub fn dualize(e: &PairingEngine, basis: &[FunctionalElement], letters: &[Letter]) -> Result<(Vec<FunctionalElement>, Vec<Vec<Letter>>)> {
    let words: Vec<Vec<Letter>> = words_up_to(letters, 2).into_iter().filter(|w| !w.is_empty()).collect();
    let m: Vec<Vec<ScalarFraction>> =
        basis.iter().map(|x| words.iter().map(|w| e.eval_word(x, w)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let (_, pivots) = linsolve::rref(m.clone());
    if pivots.len() < basis.len() {
        return Err(Error::NotATangentSpace(format!(
            "{} functionals span only {} dimensions on words of length <= 2",
            basis.len(),
            pivots.len()
        )));
    }
    let square: Vec<Vec<ScalarFraction>> = m.iter().map(|row| pivots.iter().map(|&p| row[p].clone()).collect()).collect();
    let inv = linsolve::invert(&square)?;
    let new_basis = inv
        .iter()
        .map(|row| {
            row.iter()
                .zip(basis)
                .filter(|(c, _)| !c.is_zero())
                .fold(FunctionalElement::zero(), |acc, (c, x)| acc + x.scale(c))
        })
        .collect();
    Ok((new_basis, pivots.iter().map(|&p| words[p].clone()).collect()))
}

fn finish(ctx: &Context, kind: CalculusKind, basis: Vec<FunctionalElement>, zn: Option<GroupLike>, notes: Vec<String>) -> Result<Calculus> {
    let letters = Letter::all(ctx.group.n, ctx.group.has_gamma());
    let (basis, words) = dualize(&ctx.engine, &basis, &letters)?;
    Ok(Calculus {
        kind,
        group: ctx.group.clone(),
        labels: words.iter().map(|w| format!("omega({})", word_label(w))).collect(),
        basis,
        duals: words.iter().map(|w| AlgebraElement::word(w)).collect(),
        structure: Structure::Dual,
        expected_f: None,
        constants: compute_constants(&ctx.engine).unwrap_or_default(),
        zn,
        notes,
    })
}

// ---------------------------------------------------------------------------
// Elementary chains

/// Which chain of tangent vectors an elementary space is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chain {
    /// `X^+_r = l+[i,r] l-[i,i] Z`, `r = i+1..j`.
    XPlus,
    /// `X^-_r = l-[j,r] l+[j,j] Z`, `r = i..j-1`.
    XMinus,
    /// `Y^+_r = S(l+[r,j]) l+[j,j] Z`, `r = i..j-1`.
    YPlus,
    /// `Y^-_r = S(l-[r,i]) l-[i,i] Z`, `r = i+1..j`.
    YMinus,
}

impl Chain {
    pub fn parse(s: &str) -> Result<Chain> {
        match s {
            "x+" => Ok(Chain::XPlus),
            "x-" => Ok(Chain::XMinus),
            "y+" => Ok(Chain::YPlus),
            "y-" => Ok(Chain::YMinus),
            _ => Err(Error::Config(format!("unknown chain '{s}', expected x+, x-, y+ or y-"))),
        }
    }

    fn flags(self) -> (bool, bool) {
        match self {
            Chain::XPlus => (true, false),
            Chain::XMinus => (false, false),
            Chain::YPlus => (true, true),
            Chain::YMinus => (false, true),
        }
    }
}

/// Generators of `T^{+-}_{ij}(Z)` (zero-based, `i <= j`). The last element
/// `Z - eps` is left out when `Z = eps`.
pub fn elementary_generators(chain: Chain, i: usize, j: usize, z: &GroupLike) -> Vec<FunctionalElement> {
    let mut out: Vec<FunctionalElement> = match chain {
        Chain::XPlus => (i + 1..=j).map(|r| product(&[Atom::plus(i, r), Atom::minus(i, i)], z)).collect(),
        Chain::XMinus => (i..j).map(|r| product(&[Atom::minus(j, r), Atom::plus(j, j)], z)).collect(),
        Chain::YPlus => (i..j).map(|r| product(&[Atom::s_plus(r, j), Atom::plus(j, j)], z)).collect(),
        Chain::YMinus => (i + 1..=j).map(|r| product(&[Atom::s_minus(r, i), Atom::minus(i, i)], z)).collect(),
    };
    if !z.is_identity() {
        out.push(minus_eps(z));
    }
    out
}

pub fn build_elementary(ctx: &Context, chain: Chain, i: usize, j: usize, z: &GroupLike) -> Result<Calculus> {
    let g = &ctx.group;
    if !g.family.is_linear() {
        return Err(Error::Unsupported(format!("elementary chains need S-letters, unavailable for {}", g.family)));
    }
    if i > j || j >= g.n {
        return Err(Error::Config(format!("elementary indices need 1 <= i <= j <= {}", g.n)));
    }
    if z.n() != g.n || !ctx.engine.is_diagonal(z)? {
        return Err(Error::Config("Z must be a diagonal group-like element of the right size".into()));
    }
    let basis = elementary_generators(chain, i, j, z);
    if basis.is_empty() {
        return Err(Error::Config("the elementary space is zero for i = j and Z = eps".into()));
    }
    let (plus, y) = chain.flags();
    finish(ctx, CalculusKind::Elementary { i, j, plus, y }, basis, Some(z.clone()), Vec::new())
}

/// The four sums `T^+`, `T^-`, `T_+`, `T_-` of elementary spaces; each is
/// spanned by one triangle of L-functionals (diagonal entries shifted by `eps`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Triangle {
    UpperPlus,
    LowerMinus,
    AntipodePlus,
    AntipodeMinus,
}

impl Triangle {
    pub fn name(self) -> &'static str {
        match self {
            Triangle::UpperPlus => "t-plus",
            Triangle::LowerMinus => "t-minus",
            Triangle::AntipodePlus => "t-sub-plus",
            Triangle::AntipodeMinus => "t-sub-minus",
        }
    }

    pub fn parse(s: &str) -> Result<Triangle> {
        [Triangle::UpperPlus, Triangle::LowerMinus, Triangle::AntipodePlus, Triangle::AntipodeMinus]
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown triangle '{s}'")))
    }

    fn generators(self, n: usize) -> Vec<FunctionalElement> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let a = match self {
                    Triangle::UpperPlus => Atom::plus(i, j),
                    Triangle::LowerMinus => Atom::minus(j, i),
                    Triangle::AntipodePlus => Atom::s_plus(i, j),
                    Triangle::AntipodeMinus => Atom::s_minus(j, i),
                };
                let f = FunctionalElement::atom(a);
                out.push(if i == j { f - FunctionalElement::epsilon() } else { f });
            }
        }
        out
    }
}

/// Sum of triangles, e.g. `T^+ + T_-`.
pub fn build_triangles(ctx: &Context, parts: &[Triangle]) -> Result<Calculus> {
    let g = &ctx.group;
    if !g.family.is_linear() {
        return Err(Error::Unsupported(format!("triangle sums are built for GL_q and SL_q, not {}", g.family)));
    }
    let all: Vec<FunctionalElement> = parts.iter().flat_map(|t| t.generators(g.n)).collect();
    // The parts share their diagonals, so keep a maximal independent subset.
    let words = words_up_to(&Letter::all(g.n, g.has_gamma()), 2);
    let mut rows: Vec<Vec<ScalarFraction>> = Vec::new();
    let mut basis = Vec::new();
    for x in all {
        rows.push(ctx.engine.eval_words(&x, &words)?);
        if linsolve::rank(&rows) == rows.len() {
            basis.push(x);
        } else {
            rows.pop();
        }
    }
    let name = parts.iter().map(|t| t.name()).collect::<Vec<_>>().join("+");
    finish(ctx, CalculusKind::Recipe(name), basis, None, Vec::new())
}

// ---------------------------------------------------------------------------
// Orthogonal and symplectic groups

/// Diagonal indices `i` with `i' <= i`.
fn diagonal_indices(g: &GroupSpec) -> Vec<usize> {
    (0..g.n).filter(|&i| g.prime(i) <= i).collect()
}

/// Pairs `(i, j)` with `i' <= j`.
pub fn index_set(g: &GroupSpec) -> Vec<(usize, usize)> {
    (0..g.n).flat_map(|i| (0..g.n).map(move |j| (i, j))).filter(|&(i, j)| g.prime(i) <= j).collect()
}

#[derive(Clone, Debug)]
pub struct Separator {
    pub index: usize,
    pub y: GroupLike,
    /// `<Y_i, u^i_i>`, never 1.
    pub value: Scalar,
}

fn exponent_vectors(n: usize, bound: i32) -> Vec<Vec<i32>> {
    let mut out: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (-bound..=bound).map(move |e| [v.clone(), vec![e]].concat())).collect();
    }
    out.sort_by_key(|v| (v.iter().map(|e| e.abs()).sum::<i32>(), v.clone()));
    out
}

/// Group-like monomials `Y_i` in the `l+[k,k]` (and, for odd `N`, the sign
/// character of the middle index) separating the diagonal generators.
pub fn solve_separators(g: &GroupSpec, e: &PairingEngine, bound: i32) -> Result<Vec<Separator>> {
    if g.family.is_linear() {
        return Err(Error::Unsupported("separators are only needed for O_q and Sp_q".into()));
    }
    let n = g.n;
    let diag = diagonal_indices(g);
    let mut sign_choices: Vec<Vec<i8>> = vec![Vec::new()];
    if n % 2 == 1 {
        sign_choices.push((0..n).map(|a| if a == n / 2 { -1 } else { 1 }).collect());
    }
    let candidates = exponent_vectors(n, bound);
    let mut out = Vec::new();
    for &i in &diag {
        let mut found = None;
        'search: for signs in &sign_choices {
            for plus in &candidates {
                let y = GroupLike { plus: plus.clone(), minus: vec![0; n], signs: Vec::new() }.with_signs(signs.clone());
                let mut value = None;
                let mut ok = true;
                for &r in &diag {
                    let v = e.character_value(&y, &Letter::u(r, r))?;
                    if r == i {
                        if v.is_one() {
                            ok = false;
                        }
                        value = Some(v);
                    } else if !v.is_one() {
                        ok = false;
                    }
                    if !ok {
                        break;
                    }
                }
                if ok {
                    found = Some(Separator { index: i, y, value: value.expect("i is a diagonal index") });
                    break 'search;
                }
            }
        }
        let sep = found.ok_or_else(|| {
            Error::AssumptionViolated(format!("no separator for index {} with exponents bounded by {bound}", i + 1))
        })?;
        let yf = FunctionalElement::group(sep.y.clone());
        for (r, s) in index_set(g) {
            if r != s && !e.eval(&yf, &AlgebraElement::u(r, s))?.is_zero() {
                return Err(Error::AssumptionViolated(format!("Y_{} does not vanish on u[{},{}]", i + 1, r + 1, s + 1)));
            }
        }
        out.push(sep);
    }
    Ok(out)
}

/// `Y(ab) = Y(a) Y(b)` on all pairs of letters and `Y(1) = 1`.
pub fn is_group_like_on_letters(e: &PairingEngine, y: &GroupLike, letters: &[Letter]) -> Result<bool> {
    let f = FunctionalElement::group(y.clone());
    if !e.eval_word(&f, &[])?.is_one() {
        return Ok(false);
    }
    let single = letters.iter().map(|l| e.eval_word(&f, &[*l])).collect::<Result<Vec<_>>>()?;
    for (a, va) in letters.iter().zip(&single) {
        for (b, vb) in letters.iter().zip(&single) {
            if e.eval_word(&f, &[*a, *b])? != va * vb {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One generator of the orthogonal or symplectic recipe: `X_rs`, dual to `u^s_r`.
#[derive(Clone, Debug)]
pub struct RecipeGenerator {
    pub r: usize,
    pub s: usize,
    /// Unnormalized functional as written in the construction.
    pub raw: FunctionalElement,
}

/// The generators `X_ij = l+[j',i'] l-[j',j'] Z_j'`, `X_ji = l-[j,i] l+[j,j] Z_j`
/// for `j' <= i < j` and `X_ii` from the separators, in index-set order.
/// For Sp_q the generators dual to `u^i_i'` are left out.
pub fn orthogonal_generators(g: &GroupSpec, e: &PairingEngine, zs: &[GroupLike], bound: i32) -> Result<Vec<RecipeGenerator>> {
    let n = g.n;
    if zs.len() != n {
        return Err(Error::Config(format!("expected {n} group-like elements Z_j, got {}", zs.len())));
    }
    let seps = solve_separators(g, e, bound)?;
    let mut gens = Vec::new();
    for (i, j) in index_set(g) {
        // Generator X_ji is dual to u^i_j.
        let (r, s) = (j, i);
        if g.family == Family::Spq && i == g.prime(j) {
            continue;
        }
        let raw = if r == s {
            let sep = seps.iter().find(|p| p.index == r).expect("separator for every diagonal index");
            let c = ScalarFraction::from(&sep.value - &Scalar::one()).inv()?;
            minus_eps(&sep.y).scale(&c)
        } else if r < s {
            let sp = g.prime(s);
            product(&[Atom::plus(sp, g.prime(r)), Atom::minus(sp, sp)], &zs[sp])
        } else {
            product(&[Atom::minus(r, s), Atom::plus(r, r)], &zs[r])
        };
        gens.push(RecipeGenerator { r, s, raw });
    }
    Ok(gens)
}

/// Nonzero pairings `(X_rs, u^i_j)` with `(r, s) != (j, i)`, over the index set.
pub fn support_violations(g: &GroupSpec, e: &PairingEngine, gens: &[RecipeGenerator]) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for x in gens {
        for (i, j) in index_set(g) {
            let v = e.eval(&x.raw, &AlgebraElement::u(i, j))?;
            let expected = (x.r, x.s) == (j, i);
            if v.is_zero() == expected {
                bad.push(format!("(X_{}{}, u[{},{}]) = {v}", x.r + 1, x.s + 1, i + 1, j + 1));
            }
        }
    }
    Ok(bad)
}

/// The orthogonal (`recipe-oq`) or symplectic (`recipe-spq`) calculus.
pub fn build_recipe_orthogonal(ctx: &Context, zs: Option<&[GroupLike]>, bound: i32) -> Result<Calculus> {
    let g = &ctx.group;
    let name = match g.family {
        Family::Oq => "oq",
        Family::Spq => "spq",
        f => return Err(Error::Unsupported(format!("the i' <= j construction is for O_q and Sp_q, not {f}"))),
    };
    let e = &*ctx.engine;
    let default: Vec<GroupLike> = (0..g.n).map(|_| GroupLike::identity(g.n)).collect();
    let gens = orthogonal_generators(g, e, zs.unwrap_or(&default), bound)?;
    let bad = support_violations(g, e, &gens)?;
    if !bad.is_empty() {
        return Err(Error::AssumptionViolated(format!("pairing support pattern broken: {}", bad.join(", "))));
    }
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    let mut duals = Vec::new();
    for x in &gens {
        let dual = AlgebraElement::u(x.s, x.r);
        let c = e.eval(&x.raw, &dual)?.inv()?;
        labels.push(format!("theta{}{}", x.s + 1, x.r + 1));
        basis.push(x.raw.scale(&c));
        duals.push(dual);
    }
    Ok(Calculus {
        kind: CalculusKind::Recipe(name.into()),
        group: g.clone(),
        labels,
        basis,
        duals,
        structure: Structure::Dual,
        expected_f: None,
        constants: compute_constants(e).unwrap_or_default(),
        zn: None,
        notes: vec![SEPARATION_NOTE.into()],
    })
}

// ---------------------------------------------------------------------------
// SL_q calculi of dimension N^2 - 1

/// `f_i = eps` and `g_i = (l-[i,i])^2 (l+[k,k])^2`.
pub fn sl_choice_g(n: usize, k: usize) -> (Vec<GroupLike>, Vec<GroupLike>) {
    let f = (0..n).map(|_| GroupLike::identity(n)).collect();
    let g = (0..n).map(|i| GroupLike::diag(n, Sign::Minus, i, 2).mul(&GroupLike::diag(n, Sign::Plus, k, 2))).collect();
    (f, g)
}

/// `f_i = (l+[i,i])^2 (l-[k,k])^2` and `g_i = eps`.
pub fn sl_choice_f(n: usize, k: usize) -> (Vec<GroupLike>, Vec<GroupLike>) {
    let f = (0..n).map(|i| GroupLike::diag(n, Sign::Plus, i, 2).mul(&GroupLike::diag(n, Sign::Minus, k, 2))).collect();
    let g = (0..n).map(|_| GroupLike::identity(n)).collect();
    (f, g)
}

/// Whether the commutation rules close quadratically: `f_i^-1 g_i (l+[i,i])^2`
/// must take the same value on every letter for all `i`.
pub fn check_quadratic_closure_condition(ctx: &Context, f: &[GroupLike], g: &[GroupLike]) -> Result<CheckResult> {
    let anchor = "quadratic closure: f_i^-1 g_i (l+[i,i])^2 independent of i";
    let grp = &ctx.group;
    if grp.family != Family::SLq {
        return Err(Error::Unsupported(format!("the quadratic closure criterion is stated for SL_q, not {}", grp.family)));
    }
    let n = grp.n;
    if f.len() != n || g.len() != n {
        return Err(Error::Config(format!("need {n} elements f_i and g_i")));
    }
    let h: Vec<GroupLike> =
        (0..n).map(|i| f[i].inverse().mul(&g[i]).mul(&GroupLike::diag(n, Sign::Plus, i, 2))).collect();
    let letters = Letter::all(n, grp.has_gamma());
    for l in &letters {
        let v0 = ctx.engine.character_value(&h[0], l)?;
        for (i, hi) in h.iter().enumerate().skip(1) {
            let vi = ctx.engine.character_value(hi, l)?;
            if vi != v0 {
                return Ok(CheckResult::fail(
                    "quadratic-closure",
                    anchor,
                    format!("on {l}: index 1 gives {v0}, index {} gives {vi}", i + 1),
                ));
            }
        }
    }
    Ok(CheckResult::pass("quadratic-closure", anchor))
}

/// `T_od + T_md` with `X_ij = l+[i,j] l-[i,i] f_i`, `X_ji = l-[j,i] l+[j,j] g_j`
/// (`i < j`). `T_md` is spanned by the nontrivial `f_i - eps`, `g_i - eps`,
/// completed by `l+[i,i] - eps` up to dimension `N - 1`.
pub fn build_recipe_sl(ctx: &Context, f: &[GroupLike], gs: &[GroupLike]) -> Result<Calculus> {
    let g = &ctx.group;
    if g.family != Family::SLq {
        return Err(Error::Unsupported(format!("the (N^2-1)-dimensional construction is for SL_q, not {}", g.family)));
    }
    let n = g.n;
    if f.len() != n || gs.len() != n {
        return Err(Error::Config(format!("need {n} elements f_i and g_i")));
    }
    let e = &*ctx.engine;
    let letters = Letter::all(n, g.has_gamma());
    let words: Vec<Vec<Letter>> = words_up_to(&letters, 2);
    let rank_of = |fs: &[FunctionalElement]| -> Result<usize> {
        let m = fs.iter().map(|x| e.eval_words(x, &words)).collect::<Result<Vec<_>>>()?;
        Ok(linsolve::rank(&m))
    };
    let mut md: Vec<FunctionalElement> = Vec::new();
    let mut seen: Vec<GroupLike> = Vec::new();
    for x in f.iter().chain(gs) {
        if x.is_identity() || seen.contains(x) {
            continue;
        }
        seen.push(x.clone());
        let mut trial = md.clone();
        trial.push(minus_eps(x));
        if rank_of(&trial)? > md.len() {
            md = trial;
        }
    }
    if md.len() > n - 1 {
        return Err(Error::AssumptionViolated(format!(
            "f_i - eps and g_i - eps span {} > N - 1 dimensions",
            md.len()
        )));
    }
    for i in 0..n {
        if md.len() == n - 1 {
            break;
        }
        let mut trial = md.clone();
        trial.push(minus_eps(&GroupLike::diag(n, Sign::Plus, i, 1)));
        if rank_of(&trial)? > md.len() {
            md = trial;
        }
    }
    let mut basis = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            basis.push(product(&[Atom::plus(i, j), Atom::minus(i, i)], &f[i]));
            basis.push(product(&[Atom::minus(j, i), Atom::plus(j, j)], &gs[j]));
        }
    }
    basis.extend(md);
    finish(ctx, CalculusKind::Recipe("slq".into()), basis, None, Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculi::checks::{check_duality, check_lemma1, DEGREE_BOUND};
    use crate::calculi::duality_matrix;
    use crate::oracle::OracleConfig;

    fn ctx(g: GroupSpec) -> Context {
        Context::new(&g, OracleConfig::default()).unwrap()
    }

    #[test]
    fn separators_o3() {
        let c = ctx(GroupSpec::o(3));
        assert!(solve_separators(&c.group, &c.engine, 0).is_err());
        let seps = solve_separators(&c.group, &c.engine, 2).unwrap();
        assert_eq!(seps.len(), 2);
        let letters = Letter::all(3, false);
        for s in &seps {
            assert!(!s.y.is_identity());
            assert!(!s.value.is_one());
            assert!(is_group_like_on_letters(&c.engine, &s.y, &letters).unwrap());
        }
    }

    #[test]
    fn orthogonal_recipe_o3() {
        let c = ctx(GroupSpec::o(3));
        let calc = build_recipe_orthogonal(&c, None, 2).unwrap();
        assert_eq!(calc.dim(), 6);
        assert!(check_duality(&c, &calc).passed());
        let r = check_lemma1(&c, &calc, DEGREE_BOUND);
        assert!(r.passed(), "{:?}", r.witness);
    }

    #[test]
    fn orthogonal_recipe_o5_pattern() {
        let c = ctx(GroupSpec::o(5));
        let gens = orthogonal_generators(&c.group, &c.engine, &vec![GroupLike::identity(5); 5], 2).unwrap();
        assert_eq!(gens.len(), 15);
        assert!(support_violations(&c.group, &c.engine, &gens).unwrap().is_empty());
        let x15 = gens.iter().find(|x| (x.r, x.s) == (0, 4)).unwrap();
        assert_eq!(x15.raw, FunctionalElement::atoms(&[Atom::plus(0, 4), Atom::minus(0, 0)]));
    }

    #[test]
    fn symplectic_recipe_sp4() {
        let c = ctx(GroupSpec::sp(4));
        let calc = build_recipe_orthogonal(&c, None, 2).unwrap();
        assert_eq!(calc.dim(), 6);
        let m = duality_matrix(&c, &calc).unwrap();
        assert!(crate::calculi::is_identity(&m));
        let r = check_lemma1(&c, &calc, DEGREE_BOUND);
        assert!(r.passed(), "{:?}", r.witness);
    }

    #[test]
    fn sl2_closure_choices() {
        let c = ctx(GroupSpec::sl(2));
        let (f, g) = sl_choice_g(2, 1);
        assert!(check_quadratic_closure_condition(&c, &f, &g).unwrap().passed());
        let (f, g) = sl_choice_f(2, 1);
        assert!(check_quadratic_closure_condition(&c, &f, &g).unwrap().passed());
        let eps = vec![GroupLike::identity(2); 2];
        assert!(!check_quadratic_closure_condition(&c, &eps, &eps).unwrap().passed());
        let (f, g) = sl_choice_g(2, 1);
        let calc = build_recipe_sl(&c, &f, &g).unwrap();
        assert_eq!(calc.dim(), 3);
        let r = check_lemma1(&c, &calc, DEGREE_BOUND);
        assert!(r.passed(), "{:?}", r.witness);
    }

    #[test]
    fn triangle_gl2() {
        let c = ctx(GroupSpec::gl(2));
        let calc = build_triangles(&c, &[Triangle::UpperPlus]).unwrap();
        assert_eq!(calc.dim(), 3);
        assert!(check_duality(&c, &calc).passed());
        assert!(check_lemma1(&c, &calc, DEGREE_BOUND).passed());
        let full = build_triangles(&c, &[Triangle::UpperPlus, Triangle::AntipodeMinus]).unwrap();
        assert_eq!(full.dim(), 4);
        assert!(check_lemma1(&c, &full, DEGREE_BOUND).passed());
    }

    #[test]
    fn elementary_spaces_gl3() {
        let c = ctx(GroupSpec::gl(3));
        let z = GroupLike::diag(3, Sign::Minus, 2, 2);
        for chain in [Chain::XPlus, Chain::XMinus, Chain::YPlus, Chain::YMinus] {
            let calc = build_elementary(&c, chain, 0, 2, &z).unwrap();
            assert_eq!(calc.dim(), 3);
            let r = check_lemma1(&c, &calc, DEGREE_BOUND);
            assert!(r.passed(), "{chain:?}: {:?}", r.witness);
        }
    }
}
