//! Commutation relations of the induced calculi on the quantum spaces generated
//! by `x_i = u^i_n` and `y_i = S(u^n_i)`.
//!
//! Each family is checked instance by instance: both sides are expanded in the
//! left-invariant basis and the difference is handed to the zero-test oracles.

use rayon::prelude::*;

use crate::calculi::forms::{FormEngine, OneForm};
use crate::calculi::{Calculus, CalculusKind};
use crate::fralgebra::{AlgebraElement, RMatrix};
use crate::oracle::ZeroVerdict;
use crate::report::{timed, CheckResult};
use crate::scalar::Scalar;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pair {
    XX,
    YY,
    XY,
    YX,
}

impl Pair {
    pub const ALL: [Pair; 4] = [Pair::XX, Pair::YY, Pair::XY, Pair::YX];

    pub fn tag(self) -> &'static str {
        match self {
            Pair::XX => "dxdx",
            Pair::YY => "dydy",
            Pair::XY => "dxdy",
            Pair::YX => "dydx",
        }
    }

    fn letters(self) -> (char, char) {
        match self {
            Pair::XX => ('x', 'x'),
            Pair::YY => ('y', 'y'),
            Pair::XY => ('x', 'y'),
            Pair::YX => ('y', 'x'),
        }
    }
}

/// Which structure matrix multiplies the quadratic sum.
#[derive(Clone, Copy, Debug)]
enum Kernel {
    /// `(R^-1)^{ij}_{km}`
    RinvIjKm,
    /// `R^{mk}_{ji}`
    RMkJi,
    /// `R^{ki}_{mj}`
    RKiMj,
    /// `gamma_m gamma_i^-1 (R^-1)^{jm}_{ik}`
    RGraveMinus,
    /// `R^{ij}_{km}`
    RIjKm,
    /// `(R^-1)^{ji}_{mk}`
    RinvJiMk,
    /// `(R^-1)^{ki}_{mj}`
    RinvKiMj,
    /// `gamma_k gamma_j^-1 R^{ik}_{jm}`
    RGrave,
}

/// One family `d a_i . b_j = coef sum_{k,m} K(i,j,k,m) b_k . d a'_m
/// + co_d a_i . d b_j + co_f a_i b_j form`.
#[derive(Clone, Debug)]
pub struct Family {
    pub pair: Pair,
    kernel: Kernel,
    pub coef: Scalar,
    pub co_d: Scalar,
    pub co_f: Scalar,
    /// Index of `theta_n` (for x-targets) or the `eta_n` form, as a one-form.
    pub form: Option<OneForm>,
}

fn kernel_value(k: Kernel, r: &RMatrix, rinv: &RMatrix, gam: &[Scalar], i: usize, j: usize, kk: usize, m: usize) -> Result<Scalar> {
    Ok(match k {
        Kernel::RinvIjKm => rinv.get(i, j, kk, m).clone(),
        Kernel::RMkJi => r.get(m, kk, j, i).clone(),
        Kernel::RKiMj => r.get(kk, i, m, j).clone(),
        Kernel::RGraveMinus => {
            let v = rinv.get(j, m, i, kk);
            if v.is_zero() {
                Scalar::zero()
            } else {
                &(&gam[m] * &gam[i].inv()?) * v
            }
        }
        Kernel::RIjKm => r.get(i, j, kk, m).clone(),
        Kernel::RinvJiMk => rinv.get(j, i, m, kk).clone(),
        Kernel::RinvKiMj => rinv.get(kk, i, m, j).clone(),
        Kernel::RGrave => {
            let v = r.get(i, kk, j, m);
            if v.is_zero() {
                Scalar::zero()
            } else {
                &(&gam[kk] * &gam[j].inv()?) * v
            }
        }
    })
}

fn gen(g: &crate::fralgebra::GroupSpec, c: char, i: usize) -> AlgebraElement {
    if c == 'x' {
        AlgebraElement::x(g, i)
    } else {
        AlgebraElement::y(g, i)
    }
}

/// Which side of each pair sits under the differential in the quadratic sum:
/// `xx: x_k dx_m`, `yy: y_k dy_m`, `xy: y_k dx_m`, `yx: x_k dy_m`.
fn sum_letters(p: Pair) -> (char, char) {
    match p {
        Pair::XX => ('x', 'x'),
        Pair::YY => ('y', 'y'),
        Pair::XY => ('y', 'x'),
        Pair::YX => ('x', 'y'),
    }
}

/// Outcome of one relation instance.
pub struct Instance {
    pub label: String,
    pub verdict: ZeroVerdict,
}

impl Family {
    pub fn instance(&self, fe: &FormEngine, i: usize, j: usize) -> Result<Instance> {
        let g = &fe.calc.group;
        let n = g.n;
        let e = &fe.ctx.engine;
        let gam: Vec<Scalar> = (0..n).map(|a| g.gamma(a)).collect::<Result<_>>()?;
        let (a, b) = self.pair.letters();
        let (ai, bj) = (gen(g, a, i), gen(g, b, j));
        let lhs = fe.da_b(&ai, &bj)?;
        let mut rhs = fe.zero();
        let (sk, sm) = sum_letters(self.pair);
        for k in 0..n {
            for m in 0..n {
                let v = kernel_value(self.kernel, &e.rhat, &e.rhat_inv, &gam, i, j, k, m)?;
                if v.is_zero() {
                    continue;
                }
                rhs.add_scaled(&fe.a_db(&gen(g, sk, k), &gen(g, sm, m))?, &(&self.coef * &v));
            }
        }
        if !self.co_d.is_zero() {
            rhs.add_scaled(&fe.a_db(&ai, &bj)?, &self.co_d);
        }
        if !self.co_f.is_zero() {
            let form = self.form.as_ref().ok_or_else(|| Error::Inconsistent("relation needs an invariant form".into()))?;
            rhs.add_scaled(&form.lmul(&(&ai * &bj)), &self.co_f);
        }
        let verdict = fe.zero_test(&lhs.sub(&rhs))?;
        Ok(Instance { label: format!("d{a}{}.{b}{}", i + 1, j + 1), verdict })
    }

    /// Check all `n^2` instances; the first failing instance is the witness.
    pub fn check(&self, fe: &FormEngine, id: &str, anchor: &str) -> CheckResult {
        timed(id, anchor, || {
            let n = fe.calc.n();
            let idx: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
            let results: Vec<Instance> = idx.par_iter().map(|&(i, j)| self.instance(fe, i, j)).collect::<Result<_>>()?;
            let mut agg = ZeroVerdict { pbw: None, pairing: None, numeric: None, witness: None };
            let mut ok = true;
            let mut witness = None;
            for r in &results {
                for (slot, v) in [(&mut agg.pbw, r.verdict.pbw), (&mut agg.pairing, r.verdict.pairing), (&mut agg.numeric, r.verdict.numeric)] {
                    if let Some(b) = v {
                        *slot = Some(slot.unwrap_or(true) && b);
                    }
                }
                if !r.verdict.agree() {
                    ok = false;
                    witness.get_or_insert_with(|| format!("oracle disagreement at {}: {:?}", r.label, r.verdict));
                } else if !r.verdict.is_zero() {
                    ok = false;
                    witness.get_or_insert_with(|| format!("{}: {}", r.label, r.verdict.witness.clone().unwrap_or_default()));
                }
            }
            let res = if ok { CheckResult::pass(id, anchor) } else { CheckResult::fail(id, anchor, witness.unwrap_or_default()) };
            Ok(res.with_oracles(&agg))
        })
    }
}

/// `c body` with the usual conventions for `1`, `-1` and sums.
fn scaled_term(c: &Scalar, body: &str) -> String {
    if c.is_one() {
        body.to_string()
    } else if (-c).is_one() {
        format!("-{body}")
    } else if c.is_monomial() {
        format!("{c} {body}")
    } else {
        format!("({c}) {body}")
    }
}

fn join_terms(terms: &[String]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = terms[0].clone();
    for t in &terms[1..] {
        match t.strip_prefix('-') {
            Some(rest) => s.push_str(&format!(" - {rest}")),
            None => s.push_str(&format!(" + {t}")),
        }
    }
    s
}

impl Family {
    /// Text of instance `(i, j)`, e.g. `dx1.x1 = q^-2 x1.dx1`.
    pub fn render(&self, fe: &FormEngine, i: usize, j: usize) -> Result<String> {
        let g = &fe.calc.group;
        let n = g.n;
        let e = &fe.ctx.engine;
        let gam: Vec<Scalar> = (0..n).map(|a| g.gamma(a)).collect::<Result<_>>()?;
        let (a, b) = self.pair.letters();
        let (sk, sm) = sum_letters(self.pair);
        let mut terms = Vec::new();
        for k in 0..n {
            for m in 0..n {
                let v = kernel_value(self.kernel, &e.rhat, &e.rhat_inv, &gam, i, j, k, m)?;
                if !v.is_zero() {
                    terms.push(scaled_term(&(&self.coef * &v), &format!("{sk}{}.d{sm}{}", k + 1, m + 1)));
                }
            }
        }
        if !self.co_d.is_zero() {
            terms.push(scaled_term(&self.co_d, &format!("{a}{}.d{b}{}", i + 1, j + 1)));
        }
        if !self.co_f.is_zero() {
            let form = if matches!(self.pair, Pair::XX | Pair::YX) { "theta" } else { "eta" };
            terms.push(scaled_term(&self.co_f, &format!("{a}{}.{b}{}.{form}{n}", i + 1, j + 1)));
        }
        Ok(format!("d{a}{}.{b}{} = {}", i + 1, j + 1, join_terms(&terms)))
    }
}

/// Markdown table of every relation instance of the calculus.
pub fn relation_table(fe: &FormEngine) -> Result<String> {
    let n = fe.calc.n();
    let mut s = String::from("| family | relation |\n|---|---|\n");
    for (id, _, f) in families_for(fe.calc)? {
        for i in 0..n {
            for j in 0..n {
                s.push_str(&format!("| {id} | {} |\n", f.render(fe, i, j)?));
            }
        }
    }
    Ok(s)
}

/// Markdown table of the commutation rules `theta_r . u[a,b]` in the
/// left-invariant basis.
pub fn commutation_table(fe: &FormEngine) -> Result<String> {
    let c = fe.calc;
    let mut s = String::from("| form | letter | product |\n|---|---|---|\n");
    for r in 0..c.dim() {
        for l in crate::fralgebra::Letter::all(c.n(), false) {
            let f = fe.theta_times_letter(r, &l)?;
            s.push_str(&format!("| {} | {l} | {} |\n", c.labels[r], f.render(&c.labels).replace('|', "\\|")));
        }
    }
    Ok(s)
}

/// `sum_i y_i dx_i` and `sum_i gamma_i gamma_n^-1 x_i dy_i`, computed in the
/// calculus at hand. In the Z-calculi these are `theta_n` and `eta_n`.
pub fn intrinsic_forms(fe: &FormEngine) -> Result<(OneForm, OneForm)> {
    let g = &fe.calc.group;
    let n = g.n;
    let gn = g.gamma(n - 1)?.inv()?;
    let mut th = fe.zero();
    let mut et = fe.zero();
    for i in 0..n {
        th = th.add(&fe.a_db(&AlgebraElement::y(g, i), &AlgebraElement::x(g, i))?);
        let w = &g.gamma(i)? * &gn;
        et.add_scaled(&fe.a_db(&AlgebraElement::x(g, i), &AlgebraElement::y(g, i))?, &w);
    }
    Ok((th, et))
}

impl Family {
    /// The same relation with its invariant form replaced by the intrinsic
    /// expression in `fe`, so it can be tested in a calculus with another basis.
    pub fn rebased(&self, fe: &FormEngine) -> Result<Family> {
        let mut f = self.clone();
        if f.form.is_some() {
            let (th, et) = intrinsic_forms(fe)?;
            f.form = Some(if matches!(f.pair, Pair::XX | Pair::YX) { th } else { et });
        }
        Ok(f)
    }
}

/// `theta_n` of the Z-calculi as a one-form (index `n - 1` of the basis).
fn theta_n(c: &Calculus) -> OneForm {
    OneForm::basis(c.dim(), c.n() - 1, AlgebraElement::one())
}

/// `eta_n = -delta^-1 theta_n`.
fn eta_n(c: &Calculus) -> Result<OneForm> {
    let d = c.constants.get("delta")?;
    Ok(theta_n(c).scale(&-d.inv()?))
}

/// Relation tables of the Z-calculi. With `printed` the published coefficient
/// lists are used; otherwise the twist terms that make the tables hold for
/// `delta != 1` are included.
pub fn z_families(c: &Calculus, variant: u8, printed: bool, delta_override: Option<Scalar>) -> Result<Vec<Family>> {
    let k = &c.constants;
    let cc = k.get("c")?;
    let d = match delta_override {
        Some(d) => d,
        None => k.get("delta")?,
    };
    let gm = k.get("gamma")?;
    let ze = k.get("zeta")?;
    let one = Scalar::one();
    let di = d.inv()?;
    let ci = cc.inv()?;
    let th = Some(theta_n(c));
    let et = if c.constants.delta.is_some() { Some(eta_n(c)?) } else { None };
    let fam = |pair, kernel, coef: Scalar, co_d: Scalar, co_f: Scalar| {
        let form = if matches!(pair, Pair::XX | Pair::YX) { th.clone() } else { et.clone() };
        Family { pair, kernel, coef, co_d, co_f, form }
    };
    // Γ1 coefficients as functions of delta.
    let xx1 = &(&d - &(&gm * &d)) - &one;
    let yy1 = &(&di - &(&ze * &di)) - &one;
    let dm1 = &d - &one;
    let dim1 = &di - &one;
    let cd = &cc * &d;
    let cdi = cd.inv()?;
    let z = Scalar::zero();
    let mut fams = match variant {
        1 => vec![
            fam(Pair::XX, Kernel::RinvIjKm, cd.clone(), xx1.clone(), -&xx1),
            fam(Pair::YY, Kernel::RMkJi, cdi.clone(), yy1.clone(), -&yy1),
            fam(Pair::XY, Kernel::RKiMj, cdi.clone(), dm1.clone(), -&dm1),
            fam(Pair::YX, Kernel::RGraveMinus, cd.clone(), dim1.clone(), -&dim1),
        ],
        2 => vec![
            fam(Pair::XX, Kernel::RinvIjKm, cd.clone(), xx1.clone(), -&xx1),
            fam(Pair::YY, Kernel::RMkJi, ci.clone(), -&ze, ze.clone()),
            fam(Pair::XY, Kernel::RKiMj, cdi.clone(), z.clone(), z.clone()),
            fam(Pair::YX, Kernel::RGraveMinus, cc.clone(), dim1.clone(), z.clone()),
        ],
        3 => vec![
            fam(Pair::XX, Kernel::RinvIjKm, cc.clone(), -&gm, gm.clone()),
            fam(Pair::YY, Kernel::RMkJi, cdi.clone(), yy1.clone(), -&yy1),
            fam(Pair::XY, Kernel::RKiMj, ci.clone(), dm1.clone(), z.clone()),
            fam(Pair::YX, Kernel::RGraveMinus, cd.clone(), z.clone(), z.clone()),
        ],
        4 => vec![
            fam(Pair::XX, Kernel::RinvIjKm, cc.clone(), -&gm, gm.clone()),
            fam(Pair::YY, Kernel::RMkJi, ci.clone(), -&ze, ze.clone()),
            fam(Pair::XY, Kernel::RKiMj, ci.clone(), z.clone(), z.clone()),
            fam(Pair::YX, Kernel::RGraveMinus, cc.clone(), z.clone(), z.clone()),
        ],
        _ => return Err(Error::Config(format!("no relation table for variant {variant}"))),
    };
    if !printed {
        let twist = |p: Pair| -> Scalar {
            match (variant, p) {
                (4, Pair::XX) | (4, Pair::XY) | (3, Pair::XX) => dm1.clone(),
                (4, Pair::YY) | (4, Pair::YX) | (2, Pair::YY) => dim1.clone(),
                _ => Scalar::zero(),
            }
        };
        for f in fams.iter_mut() {
            f.co_f = &f.co_f + &twist(f.pair);
        }
    }
    Ok(fams)
}

/// Table-level identity: the printed relation table of the fourth calculus is
/// the first calculus' table at `delta = 1`.
pub fn limit_matches(c1: &Calculus, c4: &Calculus) -> Result<bool> {
    let a = z_families(c1, 1, true, Some(Scalar::one()))?;
    let b = z_families(c4, 4, true, None)?;
    Ok(a.iter().zip(&b).all(|(x, y)| x.coef == y.coef && x.co_d == y.co_d && x.co_f == y.co_f))
}

/// Relation families for a calculus, as `(check id, anchor, family)`.
pub fn families_for(c: &Calculus) -> Result<Vec<(String, String, Family)>> {
    let k = &c.constants;
    let mut out = Vec::new();
    match &c.kind {
        CalculusKind::GammaX => out.push((
            "bus9-dxdx".to_string(),
            "x-calculus: dx_i.x_j = c_- sum (R^-1)^{ij}_{km} x_k.dx_m".to_string(),
            Family { pair: Pair::XX, kernel: Kernel::RinvIjKm, coef: k.get("c_minus")?, co_d: Scalar::zero(), co_f: Scalar::zero(), form: None },
        )),
        CalculusKind::GammaY => out.push((
            "camp8-dydy".to_string(),
            "y-calculus: dy_i.y_j = c sum R^{mk}_{ji} y_k.dy_m".to_string(),
            Family { pair: Pair::YY, kernel: Kernel::RMkJi, coef: k.get("c")?, co_d: Scalar::zero(), co_f: Scalar::zero(), form: None },
        )),
        CalculusKind::GammaZ(v) => {
            let prefix = if *v == 1 { "prop4i".to_string() } else { format!("gz{v}") };
            for f in z_families(c, *v, false, None)? {
                out.push((
                    format!("{prefix}-{}", f.pair.tag()),
                    format!("Z-calculus {v}: relation family {}", f.pair.tag()),
                    f,
                ));
            }
        }
        CalculusKind::Bicovariant => {
            let q = Scalar::q();
            let qi = Scalar::q_pow(-1);
            let z = Scalar::zero();
            let b = |pair, kernel, coef: &Scalar| Family { pair, kernel, coef: coef.clone(), co_d: z.clone(), co_f: z.clone(), form: None };
            for (f, text) in [
                (b(Pair::XX, Kernel::RIjKm, &q), "dx_i.x_j = q sum R^{ij}_{km} x_k.dx_m"),
                (b(Pair::YY, Kernel::RinvJiMk, &qi), "dy_i.y_j = q^-1 sum (R^-1)^{ji}_{mk} y_k.dy_m"),
                (b(Pair::XY, Kernel::RinvKiMj, &qi), "dx_i.y_j = q^-1 sum (R^-1)^{ki}_{mj} y_k.dx_m"),
                (b(Pair::YX, Kernel::RGrave, &q), "dy_i.x_j = q sum Rgrave^{ij}_{km} x_k.dy_m"),
            ] {
                out.push((format!("prop5-{}", f.pair.tag()), format!("bicovariant-induced calculus: {text}"), f));
            }
        }
        _ => {}
    }
    Ok(out)
}

/// `omega_NN x_i = q^2 x_i omega_NN` and `omega_NN y_i = q^-2 y_i omega_NN`.
pub fn check_omega_nn(fe: &FormEngine) -> Vec<CheckResult> {
    let c = fe.calc;
    let g = &c.group;
    let n = g.n;
    let nn = (n - 1) * n + (n - 1);
    let mut out = Vec::new();
    for (tag, y, s) in [("x", false, Scalar::q_pow(2)), ("y", true, Scalar::q_pow(-2))] {
        let id = format!("prop5-omega-{tag}");
        out.push(timed(&id, "bicovariant-induced calculus: omega_NN commutes with generators up to q^{+-2}", || {
            let mut agg = None;
            for i in 0..n {
                let a = if y { AlgebraElement::y(g, i) } else { AlgebraElement::x(g, i) };
                let lhs = fe.theta_times(nn, &a)?;
                let rhs = OneForm::basis(c.dim(), nn, a.scale(&s));
                let v = fe.zero_test(&lhs.sub(&rhs))?;
                if !(v.is_zero() && v.agree()) {
                    return Ok(CheckResult::fail(&id, "", format!("i = {}: {}", i + 1, v.witness.clone().unwrap_or_default())).with_oracles(&v));
                }
                agg = Some(v);
            }
            Ok(CheckResult::pass(&id, "").with_oracles(&agg.unwrap_or_default()))
        }));
    }
    for r in out.iter_mut() {
        r.paper_anchor = "bicovariant-induced calculus: omega_NN commutes with generators up to q^{+-2}".into();
    }
    out
}

/// Run every relation family of the calculus.
pub fn verify_relations(fe: &FormEngine) -> Result<Vec<CheckResult>> {
    let mut out: Vec<CheckResult> = families_for(fe.calc)?.iter().map(|(id, anchor, f)| f.check(fe, id, anchor)).collect();
    if fe.calc.is_bicovariant() {
        out.extend(check_omega_nn(fe));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculi::{build_bicovariant, build_gamma_x, build_gamma_y, build_gamma_z, default_zn};
    use crate::fralgebra::GroupSpec;
    use crate::oracle::{Context, OracleConfig};

    fn run(ctx: &Context, c: &Calculus) -> Vec<CheckResult> {
        let fe = FormEngine::new(c, ctx);
        verify_relations(&fe).unwrap()
    }

    #[test]
    fn all_families_hold_at_n2() {
        let ctx = Context::new(&GroupSpec::gl(2), OracleConfig::default()).unwrap();
        let zn = default_zn(&ctx.group);
        let mut calcs = vec![build_gamma_x(&ctx).unwrap(), build_gamma_y(&ctx).unwrap(), build_bicovariant(&ctx).unwrap()];
        for v in 1..=4 {
            calcs.push(build_gamma_z(&ctx, v, &zn).unwrap());
        }
        for c in &calcs {
            for r in run(&ctx, c) {
                assert!(r.passed(), "{} {}: {:?}", c.kind, r.id, r.witness);
            }
        }
    }

    #[test]
    fn printed_fourth_table_fails_and_is_the_limit() {
        let ctx = Context::new(&GroupSpec::gl(2), OracleConfig::default()).unwrap();
        let zn = default_zn(&ctx.group);
        let c1 = build_gamma_z(&ctx, 1, &zn).unwrap();
        let c4 = build_gamma_z(&ctx, 4, &zn).unwrap();
        assert!(limit_matches(&c1, &c4).unwrap());
        let fe = FormEngine::new(&c4, &ctx);
        let printed = z_families(&c4, 4, true, None).unwrap();
        let r = printed[0].check(&fe, "printed", "");
        assert!(!r.passed());
    }

    #[test]
    fn x_table_text() {
        let ctx = Context::new(&GroupSpec::gl(2), OracleConfig::default()).unwrap();
        let c = build_gamma_x(&ctx).unwrap();
        let fe = FormEngine::new(&c, &ctx);
        let t = relation_table(&fe).unwrap();
        assert!(t.contains("dx1.x1 = q^-2 x1.dx1"), "{t}");
        assert!(commutation_table(&fe).unwrap().contains("theta1"));
    }
}
