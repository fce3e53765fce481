//! Check suites: per-group checks, per-calculus checks and the acceptance
//! criteria run by `--check-all`.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculi::checks::{
    check_duality, check_form_identities, check_general_forms, check_inner, check_leibniz, check_lemma1,
    check_projection_invariance, check_star_closure, check_star_examples, hopf_checks, projection_defect, subgroup_pbw,
};
use crate::calculi::recipe::{
    build_recipe_orthogonal, build_recipe_sl, check_quadratic_closure_condition, orthogonal_generators, sl_choice_f,
    sl_choice_g, support_violations, SEPARATION_NOTE,
};
use crate::calculi::relations::verify_relations;
use crate::calculi::{
    build_bicovariant, build_gamma_full, build_gamma_row, build_gamma_x, build_gamma_y, build_gamma_z, compute_constants,
    default_zn, duality_matrix, is_identity, Calculus, CalculusKind, FormEngine,
};
use crate::cli::build_calculus;
use crate::fralgebra::rmatrix::{build_rmatrix, rhat_inverse_by_solve};
use crate::fralgebra::{AlgebraElement, Family, GroupSpec, Letter};
use crate::numeric::{default_q0, DenseModel};
use crate::oracle::{Context, OracleConfig};
use crate::report::{timed, CheckResult, Status};
use crate::scalar::Scalar;
use crate::ufunctionals::{Atom, Factor, FunctionalElement, GroupLike, Sign};
use crate::{Error, Result};

fn context(g: &GroupSpec) -> Result<Context> {
    Context::new(g, OracleConfig::default())
}

// ---------------------------------------------------------------------------
// Group-level checks

pub fn check_braid(g: &GroupSpec) -> CheckResult {
    let anchor = "braid relation R12 R23 R12 = R23 R12 R23";
    timed("rmatrix-braid", anchor, || {
        let ok = build_rmatrix(g).satisfies_braid();
        Ok(CheckResult::from_bool("rmatrix-braid", anchor, ok, || format!("braid relation fails for {}", g.label())))
    })
}

/// `Rhat - Rhat^-1 = (q - q^-1) I`, with the inverse found by elimination.
pub fn check_hecke(g: &GroupSpec) -> CheckResult {
    let anchor = "Hecke identity Rhat - Rhat^-1 = (q - q^-1) I";
    timed("rmatrix-hecke", anchor, || {
        if !g.family.is_linear() {
            return Err(Error::Unsupported(format!("the Hecke identity holds for GL_q and SL_q, not {}", g.family)));
        }
        let r = build_rmatrix(g);
        let inv = rhat_inverse_by_solve(&r)?;
        let h = Scalar::q_minus_qinv();
        let n = g.n;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let lhs = r.get(i, j, k, l) - inv.get(i, j, k, l);
                        let rhs = if i == k && j == l { h.clone() } else { Scalar::zero() };
                        if lhs != rhs {
                            return Ok(CheckResult::fail(
                                "rmatrix-hecke",
                                anchor,
                                format!("entry ({},{},{},{}) is {lhs}", i + 1, j + 1, k + 1, l + 1),
                            ));
                        }
                    }
                }
            }
        }
        Ok(CheckResult::pass("rmatrix-hecke", anchor))
    })
}

/// The published constants of the linear families.
pub fn check_constants(ctx: &Context) -> CheckResult {
    let anchor = "structure constants alpha, beta, gamma, zeta, c, c_-, gamma_i and delta";
    timed("constants", anchor, || {
        let g = &ctx.group;
        if g.family != Family::GLq {
            return Err(Error::Unsupported(format!("the constant list is stated for GL_q, not {}", g.family)));
        }
        let k = compute_constants(&ctx.engine)?;
        let zc = build_gamma_z(ctx, 1, &default_zn(g))?;
        let mut expected: Vec<(&str, Option<Scalar>, &str)> = vec![
            ("alpha", k.alpha.clone(), "q^-2 - 1"),
            ("beta", k.beta.clone(), "q^2 - 1"),
            ("gamma", k.gamma.clone(), "1 - q^2"),
            ("zeta", k.zeta.clone(), "1 - q^-2"),
            ("c", k.c.clone(), "q"),
            ("c_minus", k.c_minus.clone(), "q^-1"),
            ("delta", zc.constants.delta.clone(), "q^-2"),
        ];
        let gam: Vec<String> = (0..g.n).map(|i| format!("q^{}", 2 * (i + 1))).collect();
        for (i, s) in gam.iter().enumerate() {
            expected.push(("gamma_i", k.gammas.get(i).cloned(), s));
        }
        for (name, got, want) in expected {
            let want: Scalar = want.parse()?;
            if got.as_ref() != Some(&want) {
                let got = got.map_or("missing".to_string(), |s| s.to_string());
                return Ok(CheckResult::fail("constants", anchor, format!("{name} = {got}, expected {want}")));
            }
        }
        Ok(CheckResult::pass("constants", anchor))
    })
}

/// Checks that depend only on the group.
pub fn group_checks(ctx: &Context) -> Vec<CheckResult> {
    let g = &ctx.group;
    let mut v = vec![check_braid(g)];
    if g.family.is_linear() {
        v.push(check_hecke(g));
    }
    if g.family == Family::GLq {
        v.push(check_constants(ctx));
        if g.n >= 2 {
            v.push(check_projection_invariance(ctx));
        }
    }
    v.extend(hopf_checks(ctx));
    v
}

// ---------------------------------------------------------------------------
// Calculus-level checks

fn recipe_checks(ctx: &Context, c: &Calculus) -> Vec<CheckResult> {
    let g = &ctx.group;
    let mut out = Vec::new();
    let CalculusKind::Recipe(name) = &c.kind else { return out };
    let expected = match name.as_str() {
        "oq" => Some(g.n * (g.n + 1) / 2),
        "spq" => Some(g.n * (g.n + 1) / 2 - g.n),
        "slq" => Some(g.n * g.n - 1),
        _ => None,
    };
    if let Some(d) = expected {
        let dim = c.dim();
        out.push(CheckResult::from_bool("recipe-dimension", "dimension of the constructed tangent space", dim == d, || {
            format!("dimension {dim}, expected {d}")
        }));
    }
    if matches!(name.as_str(), "oq" | "spq") {
        let anchor = "(X_rs, u^i_j) != 0 iff (r, s) = (j, i) on the index set i' <= j";
        out.push(timed("recipe-support-pattern", anchor, || {
            let gens = orthogonal_generators(g, &ctx.engine, &vec![GroupLike::identity(g.n); g.n], 2)?;
            let bad = support_violations(g, &ctx.engine, &gens)?;
            Ok(CheckResult::from_bool("recipe-support-pattern", anchor, bad.is_empty(), || bad.join(", ")))
        }));
        let mut note = CheckResult::pass("recipe-separation-reading", "normalized separation condition for Y_i");
        note.witness = Some(SEPARATION_NOTE.into());
        out.push(note);
    }
    if name == "slq" {
        out.push(timed("quadratic-closure", "quadratic closure: f_i^-1 g_i (l+[i,i])^2 independent of i", || {
            let (f, gs) = sl_choice_g(g.n, g.n - 1);
            check_quadratic_closure_condition(ctx, &f, &gs)
        }));
    }
    out
}

fn star_checks(ctx: &Context, c: &Calculus, bound: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let CalculusKind::GammaZ(v) = c.kind else { return out };
    let zn = c.zn.clone().unwrap_or_else(|| default_zn(&ctx.group));
    match v {
        1 | 4 => out.push(check_star_closure(ctx, c, c, bound)),
        2 | 3 => match build_gamma_z(ctx, 5 - v, &zn) {
            Ok(t) => out.push(check_star_closure(ctx, c, &t, bound)),
            Err(e) => out.push(CheckResult::fail("star-maps-to", "", e.to_string())),
        },
        _ => {}
    }
    if v == 1 {
        out.extend(check_star_examples(ctx, c, bound));
    }
    out
}

/// Every check that applies to the calculus.
pub fn calculus_checks(ctx: &Context, c: &Calculus, bound: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if !c.basis.is_empty() {
        out.push(check_duality(ctx, c));
        out.push(check_lemma1(ctx, c, bound));
    }
    let fe = FormEngine::new(c, ctx);
    match verify_relations(&fe) {
        Ok(v) => out.extend(v),
        Err(e) => out.push(CheckResult::new("relations", "relation families", Status::Unsupported, Some(e.to_string()))),
    }
    out.extend(check_inner(&fe));
    out.extend(check_form_identities(&fe));
    out.extend(check_general_forms(&fe));
    if c.group.family.is_linear() && !c.basis.is_empty() {
        out.push(check_leibniz(&fe));
    }
    if c.n() == 2 {
        out.extend(star_checks(ctx, c, bound));
    }
    out.extend(recipe_checks(ctx, c));
    out
}

// ---------------------------------------------------------------------------
// Acceptance criteria

/// One acceptance criterion: number, short title, and its runner.
pub struct Criterion {
    pub number: usize,
    pub title: &'static str,
    /// Wall-clock budget in seconds.
    pub budget_s: f64,
    run: fn() -> Result<Option<String>>,
}

impl Criterion {
    /// Run the criterion; a witness string means failure.
    pub fn run(&self) -> CheckResult {
        let id = format!("criterion-{:02}", self.number);
        let t = Instant::now();
        let mut r = timed(&id, self.title, || {
            Ok(match (self.run)()? {
                None => CheckResult::pass(&id, self.title),
                Some(w) => CheckResult::fail(&id, self.title, w),
            })
        });
        let secs = t.elapsed().as_secs_f64();
        if r.passed() && secs > self.budget_s {
            r = CheckResult::fail(&id, self.title, format!("took {secs:.1} s, budget {} s", self.budget_s));
        }
        r.elapsed_ms = (secs * 1000.0) as u64;
        r
    }
}

fn first_failure(results: impl IntoIterator<Item = (String, CheckResult)>) -> Option<String> {
    results.into_iter().find(|(_, r)| !r.passed()).map(|(ctx, r)| format!("{ctx} {}: {}", r.id, r.witness.unwrap_or_default()))
}

fn groups_up_to_four() -> Vec<GroupSpec> {
    let mut v: Vec<GroupSpec> = (2..=4).map(GroupSpec::gl).collect();
    v.extend((2..=4).map(GroupSpec::o));
    v.extend([GroupSpec::sp(2), GroupSpec::sp(4)]);
    v
}

fn c01() -> Result<Option<String>> {
    let mut res = Vec::new();
    for g in groups_up_to_four() {
        res.push((g.label(), check_braid(&g)));
        if g.family.is_linear() {
            res.push((g.label(), check_hecke(&g)));
        }
    }
    Ok(first_failure(res))
}

fn c02() -> Result<Option<String>> {
    let mut res = Vec::new();
    for n in 2..=3 {
        let ctx = context(&GroupSpec::gl(n))?;
        res.push((ctx.group.label(), check_constants(&ctx)));
    }
    Ok(first_failure(res))
}

/// The calculi whose duality matrices are certified.
fn dual_calculi(ctx: &Context) -> Result<Vec<Calculus>> {
    let zn = default_zn(&ctx.group);
    let mut v = vec![build_gamma_x(ctx)?, build_gamma_y(ctx)?, build_gamma_full(ctx)?];
    for k in 1..=4 {
        v.push(build_gamma_z(ctx, k, &zn)?);
    }
    for j in 0..ctx.n() {
        v.push(build_gamma_row(ctx, j)?);
    }
    Ok(v)
}

fn c03() -> Result<Option<String>> {
    for n in 2..=3 {
        let ctx = context(&GroupSpec::gl(n))?;
        for c in dual_calculi(&ctx)? {
            let m = duality_matrix(&ctx, &c)?;
            if m.len() != c.dim() || !is_identity(&m) {
                return Ok(Some(format!("{} at N = {n}: pairing matrix is not the identity", c.kind)));
            }
        }
    }
    Ok(None)
}

fn c04() -> Result<Option<String>> {
    for n in 2..=3 {
        let ctx = context(&GroupSpec::gl(n))?;
        let zn = default_zn(&ctx.group);
        let mut calcs = vec![build_gamma_x(&ctx)?, build_gamma_y(&ctx)?, build_bicovariant(&ctx)?];
        for k in 1..=4 {
            calcs.push(build_gamma_z(&ctx, k, &zn)?);
        }
        for c in &calcs {
            let fe = FormEngine::new(c, &ctx);
            for r in verify_relations(&fe)? {
                let all = [r.oracles.pbw, r.oracles.pairing, r.oracles.numeric].iter().all(|o| *o == Some(true));
                if !r.passed() || !all {
                    return Ok(Some(format!("{} at N = {n}, {}: {:?} {}", c.kind, r.id, r.oracles, r.witness.unwrap_or_default())));
                }
            }
        }
    }
    Ok(None)
}

fn c05() -> Result<Option<String>> {
    for n in 2..=3 {
        let ctx = context(&GroupSpec::gl(n))?;
        let zn = default_zn(&ctx.group);
        for k in 1..=4 {
            let c = build_gamma_z(&ctx, k, &zn)?;
            let res = check_inner(&FormEngine::new(&c, &ctx));
            if let Some(w) = first_failure(res.iter().cloned().map(|r| (format!("{} at N = {n}", c.kind), r))) {
                return Ok(Some(w));
            }
            if k > 1 && !res.iter().any(|r| r.id == "dur22-non-inner" && r.witness.is_some()) {
                return Ok(Some(format!("{} at N = {n}: no non-innerness witness", c.kind)));
            }
            if k == 1 && !res.iter().any(|r| r.id == "dur21-inner") {
                return Ok(Some("no innerness check for the first Z-calculus".into()));
            }
        }
    }
    Ok(None)
}

fn c06() -> Result<Option<String>> {
    let mut res = Vec::new();
    for g in [GroupSpec::gl(2), GroupSpec::gl(3), GroupSpec::o(3)] {
        let ctx = context(&g)?;
        let v = hopf_checks(&ctx);
        if g.family == Family::Oq && !v.iter().any(|r| r.id == "hopf-metric") {
            return Ok(Some("metric axiom not checked for O_q(3)".into()));
        }
        res.extend(v.into_iter().map(|r| (g.label(), r)));
    }
    Ok(first_failure(res))
}

fn c07() -> Result<Option<String>> {
    for n in [3, 5] {
        let ctx = context(&GroupSpec::o(n))?;
        let c = build_recipe_orthogonal(&ctx, None, 2)?;
        if c.dim() != n * (n + 1) / 2 {
            return Ok(Some(format!("O_q({n}) has dimension {}", c.dim())));
        }
        let gens = orthogonal_generators(&ctx.group, &ctx.engine, &vec![GroupLike::identity(n); n], 2)?;
        let bad = support_violations(&ctx.group, &ctx.engine, &gens)?;
        if !bad.is_empty() {
            return Ok(Some(format!("O_q({n}) support pattern: {}", bad.join(", "))));
        }
        if n == 5 {
            let x15 = gens.iter().find(|x| (x.r, x.s) == (0, 4)).ok_or_else(|| Error::Inconsistent("no X_15".into()))?;
            if x15.raw != FunctionalElement::atoms(&[Atom::plus(0, 4), Atom::minus(0, 0)]) {
                return Ok(Some(format!("X_15 = {}", x15.raw)));
            }
        }
        if n == 3 {
            let r = check_lemma1(&ctx, &c, 3);
            if !r.passed() {
                return Ok(Some(format!("O_q(3) tangent space: {}", r.witness.unwrap_or_default())));
            }
        }
    }
    let ctx = context(&GroupSpec::sp(4))?;
    let c = build_recipe_orthogonal(&ctx, None, 2)?;
    let secondary: Vec<AlgebraElement> = (0..4).map(|i| AlgebraElement::u(i, 3 - i)).collect();
    if c.dim() != 6 || c.duals.iter().any(|d| secondary.contains(d)) {
        return Ok(Some(format!("Sp_q(4) recipe has dimension {} with duals {:?}", c.dim(), c.duals)));
    }
    let m = duality_matrix(&ctx, &c)?;
    if !is_identity(&m) {
        return Ok(Some("Sp_q(4) generators are not independent".into()));
    }
    let r = check_lemma1(&ctx, &c, 3);
    Ok((!r.passed()).then(|| format!("Sp_q(4) tangent space: {}", r.witness.unwrap_or_default())))
}

fn c08() -> Result<Option<String>> {
    let ctx = context(&GroupSpec::sl(2))?;
    for (name, (f, g)) in [("g-choice", sl_choice_g(2, 1)), ("f-choice", sl_choice_f(2, 1))] {
        let r = check_quadratic_closure_condition(&ctx, &f, &g)?;
        if !r.passed() {
            return Ok(Some(format!("{name}: {}", r.witness.unwrap_or_default())));
        }
        let c = build_recipe_sl(&ctx, &f, &g)?;
        let l = check_lemma1(&ctx, &c, 3);
        if c.dim() != 3 || !l.passed() {
            return Ok(Some(format!("{name}: dimension {} tangent {:?}", c.dim(), l.witness)));
        }
    }
    let eps = vec![GroupLike::identity(2); 2];
    let r = check_quadratic_closure_condition(&ctx, &eps, &eps)?;
    Ok(r.passed().then(|| "the eps/eps choice passes the closure criterion".to_string()))
}

fn c09() -> Result<Option<String>> {
    let ctx = context(&GroupSpec::gl(2))?;
    let zn = default_zn(&ctx.group);
    let z: Vec<Calculus> = (1..=4).map(|k| build_gamma_z(&ctx, k, &zn)).collect::<Result<_>>()?;
    let res = vec![
        ("Z1".to_string(), check_star_closure(&ctx, &z[0], &z[0], 3)),
        ("Z4".to_string(), check_star_closure(&ctx, &z[3], &z[3], 3)),
        ("Z2".to_string(), check_star_closure(&ctx, &z[1], &z[2], 3)),
        ("Z3".to_string(), check_star_closure(&ctx, &z[2], &z[1], 3)),
    ];
    Ok(first_failure(res))
}

/// A random functional: one or two atoms, optionally followed by a diagonal
/// group-like factor.
fn random_functional(rng: &mut ChaCha8Rng, n: usize, antipode: bool) -> FunctionalElement {
    let len = rng.gen_range(1..=2);
    let mut p = Vec::new();
    for _ in 0..len {
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        let s = antipode && rng.gen_bool(0.3);
        p.push(Factor::Atom(Atom { sign, antipode: s, row: rng.gen_range(0..n) as u8, col: rng.gen_range(0..n) as u8 }));
    }
    if rng.gen_bool(0.3) {
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        p.push(Factor::Group(GroupLike::diag(n, sign, rng.gen_range(0..n), rng.gen_range(-2..=2))));
    }
    FunctionalElement::product(p, crate::ScalarFraction::one())
}

fn c10() -> Result<Option<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0710);
    let groups = [GroupSpec::gl(2), GroupSpec::gl(3)];
    let models = groups.iter().map(|g| Ok((context(g)?, DenseModel::new(g, &default_q0(g))?))).collect::<Result<Vec<_>>>()?;
    for k in 0..500 {
        let (ctx, model) = &models[k % models.len()];
        let n = ctx.n();
        let letters = Letter::all(n, true);
        let f = random_functional(&mut rng, n, true);
        let len = rng.gen_range(0..=3);
        let word: Vec<Letter> = (0..len).map(|_| *letters.choose(&mut rng).expect("letters")).collect();
        let a = AlgebraElement::word(&word);
        let sym = ctx.engine.eval(&f, &a)?.specialize(&model.q0)?;
        let num = model.eval(&f, &a)?;
        if sym != num {
            return Ok(Some(format!("call {k}: <{f}, {a}> is {sym} symbolically and {num} numerically")));
        }
    }
    Ok(None)
}

fn c11() -> Result<Option<String>> {
    for n in 2..=3 {
        let ctx = context(&GroupSpec::gl(n))?;
        let r = check_projection_invariance(&ctx);
        if !r.passed() {
            return Ok(Some(format!("N = {n}: {}", r.witness.unwrap_or_default())));
        }
        let sub = subgroup_pbw(&ctx.group)?;
        if projection_defect(&ctx, &sub, &AlgebraElement::u(0, 0))?.is_none() {
            return Ok(Some(format!("N = {n}: the negative control u[1,1] is invariant")));
        }
    }
    Ok(None)
}

pub const CRITERIA: [Criterion; 11] = [
    Criterion { number: 1, title: "R-matrix braid relation and Hecke identity", budget_s: 10.0, run: c01 },
    Criterion { number: 2, title: "structure constants for GL_q(2), GL_q(3)", budget_s: 60.0, run: c02 },
    Criterion { number: 3, title: "duality matrices are identities at N = 2, 3", budget_s: 60.0, run: c03 },
    Criterion { number: 4, title: "relation families under all three oracles at N = 2, 3", budget_s: 300.0, run: c04 },
    Criterion { number: 5, title: "innerness of the first Z-calculus and non-innerness witnesses", budget_s: 300.0, run: c05 },
    Criterion { number: 6, title: "Hopf-side axioms including the O_q(3) metric", budget_s: 300.0, run: c06 },
    Criterion { number: 7, title: "orthogonal and symplectic tangent spaces", budget_s: 120.0, run: c07 },
    Criterion { number: 8, title: "SL_q(2) quadratic closure criterion", budget_s: 60.0, run: c08 },
    Criterion { number: 9, title: "star structure at N = 2", budget_s: 120.0, run: c09 },
    Criterion { number: 10, title: "symbolic and numeric evaluation agree on 500 random calls", budget_s: 120.0, run: c10 },
    Criterion { number: 11, title: "projection invariance with a negative control", budget_s: 120.0, run: c11 },
];

/// Run every criterion in order.
pub fn acceptance() -> Vec<CheckResult> {
    CRITERIA.iter().map(|c| c.run()).collect()
}

/// Resolve the calculus name and run its checks; used by tests and the CLI.
pub fn verify_named(ctx: &Context, name: &str, zn: Option<&GroupLike>, bound: usize) -> Result<Vec<CheckResult>> {
    let c = build_calculus(ctx, name, zn)?;
    Ok(calculus_checks(ctx, &c, bound))
}
