//! Structural checks on built calculi: innerness, the star structure,
//! comparison of induced calculi, the projection onto the subgroup, the
//! general-element forms of the commutation rules and the Hopf axioms.

use std::collections::HashMap;

use crate::calculi::forms::{compare_f_matrix, solve_f_matrix, FormEngine, OneForm};
use crate::calculi::relations::{families_for, intrinsic_forms, Family};
use crate::calculi::{duality_matrix, is_identity, kills_unit, Calculus, CalculusKind};
use crate::fralgebra::algebra::{defining_relations, metric_relations};
use crate::fralgebra::{AlgebraElement, GroupSpec, Letter, Monomial, Pbw};
use crate::oracle::{Context, ZeroVerdict};
use crate::report::{timed, CheckResult};
use crate::scalar::{Scalar, ScalarFraction};
use crate::ufunctionals::span::{express_in_span, functional_vanishes, words_up_to, SpanResult};
use crate::ufunctionals::{Atom, FunctionalElement};
use crate::{Error, Result};

/// Default degree bound for span and tangent-space certificates.
pub const DEGREE_BOUND: usize = 3;

/// Aggregates zero verdicts over many instances into one check result.
#[derive(Default)]
struct Tally {
    agg: ZeroVerdict,
    witness: Option<String>,
    failed: bool,
}

impl Tally {
    fn add(&mut self, label: &str, v: &ZeroVerdict) {
        for (slot, b) in [(&mut self.agg.pbw, v.pbw), (&mut self.agg.pairing, v.pairing), (&mut self.agg.numeric, v.numeric)] {
            if let Some(b) = b {
                *slot = Some(slot.unwrap_or(true) && b);
            }
        }
        if !v.agree() {
            self.fail(format!("oracle disagreement at {label}: {v:?}"));
        } else if !v.is_zero() {
            self.fail(format!("{label}: {}", v.witness.clone().unwrap_or_default()));
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed = true;
        self.witness.get_or_insert(msg);
    }

    fn finish(self, id: &str, anchor: &str) -> CheckResult {
        let r = if self.failed { CheckResult::fail(id, anchor, self.witness.unwrap_or_default()) } else { CheckResult::pass(id, anchor) };
        r.with_oracles(&self.agg)
    }
}

fn x(g: &GroupSpec, i: usize) -> AlgebraElement {
    AlgebraElement::x(g, i)
}

fn y(g: &GroupSpec, i: usize) -> AlgebraElement {
    AlgebraElement::y(g, i)
}

/// Labelled generators `x_i` (and `y_i` when `with_y`).
fn generators(g: &GroupSpec, with_x: bool, with_y: bool) -> Vec<(String, AlgebraElement)> {
    let mut v = Vec::new();
    if with_x {
        v.extend((0..g.n).map(|i| (format!("x{}", i + 1), x(g, i))));
    }
    if with_y {
        v.extend((0..g.n).map(|i| (format!("y{}", i + 1), y(g, i))));
    }
    v
}

/// All products `a b` of two labelled generators.
fn products(gens: &[(String, AlgebraElement)]) -> Vec<(String, AlgebraElement)> {
    let mut v = Vec::new();
    for (la, a) in gens {
        for (lb, b) in gens {
            v.push((format!("{la}{lb}"), a * b));
        }
    }
    v
}

/// Generators of the quantum space the calculus is built for.
fn space_generators(c: &Calculus) -> Vec<(String, AlgebraElement)> {
    match c.kind {
        CalculusKind::GammaX => generators(&c.group, true, false),
        CalculusKind::GammaY => generators(&c.group, false, true),
        _ => generators(&c.group, true, c.group.has_gamma()),
    }
}

fn theta_n(c: &Calculus) -> OneForm {
    OneForm::basis(c.dim(), c.n() - 1, AlgebraElement::one())
}

/// `theta z - z theta`.
fn commutator(fe: &FormEngine, theta: &OneForm, z: &AlgebraElement) -> Result<OneForm> {
    Ok(fe.rmul(theta, z)?.sub(&theta.lmul(z)))
}

// ---------------------------------------------------------------------------
// Tangent-space certificates

pub fn check_duality(ctx: &Context, c: &Calculus) -> CheckResult {
    let anchor = "tangent basis dual to its defining elements: (X_r, a_s) = delta_rs";
    timed("duality-identity", anchor, || {
        if c.basis.is_empty() {
            return Err(Error::Unsupported(format!("{} is given by its commutation rule only", c.kind)));
        }
        let m = duality_matrix(ctx, c)?;
        let ok = is_identity(&m) && kills_unit(ctx, c)?;
        Ok(CheckResult::from_bool("duality-identity", anchor, ok, || {
            let rows: Vec<String> = m.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")).collect();
            let mut w = format!("pairing matrix [{}]", rows.join("; "));
            if !c.notes.is_empty() {
                w.push_str(&format!(" ({})", c.notes.join("; ")));
            }
            w
        }))
    })
}

pub fn check_lemma1(ctx: &Context, c: &Calculus, degree_bound: usize) -> CheckResult {
    let anchor = "quantum tangent space: Delta(X_k) - eps (x) X_k = sum X_i (x) f^i_k";
    timed("lemma1-tangent", anchor, || {
        let f = solve_f_matrix(ctx, c, degree_bound)?;
        if let Some(exp) = &c.expected_f {
            if let Some(w) = compare_f_matrix(ctx, c, &f, exp)? {
                return Ok(CheckResult::fail("lemma1-tangent", anchor, w));
            }
        }
        Ok(CheckResult::pass("lemma1-tangent", anchor))
    })
}

// ---------------------------------------------------------------------------
// Innerness

/// How `d g` relates to `theta g - g theta`.
#[derive(Clone, Debug, PartialEq)]
pub enum Proportion {
    /// Both sides vanish.
    Any,
    /// No scalar works.
    Never,
    /// `d g = lambda (theta g - g theta)`.
    Factor(ScalarFraction),
}

/// Solve `d = lambda c` over scalar fractions, comparing PBW normal forms.
pub fn proportion(pbw: &Pbw, d: &OneForm, c: &OneForm) -> Result<Proportion> {
    let dn = d.coeffs.iter().map(|a| pbw.normal_form(a)).collect::<Result<Vec<_>>>()?;
    let cn = c.coeffs.iter().map(|a| pbw.normal_form(a)).collect::<Result<Vec<_>>>()?;
    let pivot = cn.iter().enumerate().find_map(|(r, a)| a.terms().next().map(|(m, v)| (r, m.clone(), v.clone())));
    let Some((r, m, cv)) = pivot else {
        return Ok(if dn.iter().all(|a| a.is_trivially_zero()) { Proportion::Any } else { Proportion::Never });
    };
    let dv = dn[r].terms().find(|(mm, _)| **mm == m).map(|(_, v)| v.clone()).unwrap_or_else(Scalar::zero);
    // cv d - dv c = 0 iff lambda = dv / cv works.
    for (a, b) in dn.iter().zip(&cn) {
        if !pbw.normal_form(&(&a.scale(&cv) - &b.scale(&dv)))?.is_trivially_zero() {
            return Ok(Proportion::Never);
        }
    }
    Ok(Proportion::Factor(ScalarFraction::new(dv, cv)?))
}

/// Innerness statements appropriate to the calculus.
pub fn check_inner(fe: &FormEngine) -> Vec<CheckResult> {
    match fe.calc.kind {
        CalculusKind::GammaX => vec![inner_identity(fe, "bus12-inner", "x-calculus is inner: dx = alpha^-1 (theta_n x - x theta_n)", "alpha")],
        CalculusKind::GammaY => vec![inner_identity(fe, "prop3ii-inner", "y-calculus is inner: dy = beta^-1 (eta_n y - y eta_n)", "beta")],
        CalculusKind::GammaZ(1) => vec![
            inner_identity(fe, "dur21-inner", "first Z-calculus is inner: dz = (delta - 1)^-1 (theta_n z - z theta_n)", "delta-1"),
            bus12_inside(fe),
        ],
        CalculusKind::GammaZ(v) => vec![commutation_with_theta(fe, v), non_inner(fe, v)],
        _ => Vec::new(),
    }
}

/// `k dz = theta z - z theta` for generators and their length-2 products,
/// where `k` is the named constant.
fn inner_identity(fe: &FormEngine, id: &str, anchor: &str, constant: &str) -> CheckResult {
    timed(id, anchor, || {
        let c = fe.calc;
        let k = match constant {
            "delta-1" => &c.constants.get("delta")? - &Scalar::one(),
            other => c.constants.get(other)?,
        };
        let theta = OneForm::basis(c.dim(), c.n() - 1, AlgebraElement::one());
        let gens = space_generators(c);
        let mut elems = gens.clone();
        elems.extend(products(&gens).into_iter().take(4));
        let mut t = Tally::default();
        for (label, z) in &elems {
            let lhs = fe.d(z)?.scale(&k);
            let rhs = commutator(fe, &theta, z)?;
            t.add(label, &fe.zero_test(&lhs.sub(&rhs))?);
        }
        Ok(t.finish(id, anchor))
    })
}

/// The x-calculus innerness formula seen inside the first Z-calculus,
/// spot-checked on `x_1 x_2`.
fn bus12_inside(fe: &FormEngine) -> CheckResult {
    let id = "bus12-in-z1";
    let anchor = "x-calculus innerness formula on x_1 x_2 inside the first Z-calculus";
    timed(id, anchor, || {
        let c = fe.calc;
        let g = &c.group;
        let z = &x(g, 0) * &x(g, 1.min(g.n - 1));
        let k = &c.constants.get("delta")? - &Scalar::one();
        let lhs = fe.d(&z)?.scale(&k);
        let rhs = commutator(fe, &theta_n(c), &z)?;
        let mut t = Tally::default();
        t.add("x1x2", &fe.zero_test(&lhs.sub(&rhs))?);
        Ok(t.finish(id, anchor))
    })
}

/// Commutation of `theta_n` with the generators in the Z-calculi 2, 3, 4.
fn commutation_with_theta(fe: &FormEngine, v: u8) -> CheckResult {
    let id = "dur22-commutation";
    let anchor = "theta_n commutes with the generators up to a power of delta";
    timed(id, anchor, || {
        let c = fe.calc;
        let g = &c.group;
        let d = c.constants.get("delta")?;
        let (gen_y, factor) = match v {
            2 | 4 => (true, d.inv()?),
            3 => (false, d),
            _ => return Err(Error::Config(format!("no theta_n rule for variant {v}"))),
        };
        let mut t = Tally::default();
        for i in 0..g.n {
            let z = if gen_y { y(g, i) } else { x(g, i) };
            let lhs = fe.theta_times(c.n() - 1, &z)?;
            let rhs = OneForm::basis(c.dim(), c.n() - 1, z.scale(&factor));
            t.add(&format!("{}{}", if gen_y { "y" } else { "x" }, i + 1), &fe.zero_test(&lhs.sub(&rhs))?);
        }
        Ok(t.finish(id, anchor))
    })
}

/// Witness that no `lambda` gives `dz = lambda (theta_n z - z theta_n)` for all
/// generators at once.
fn non_inner(fe: &FormEngine, v: u8) -> CheckResult {
    let id = "dur22-non-inner";
    let anchor = "Z-calculi 2, 3, 4 are not inner";
    timed(id, anchor, || {
        let c = fe.calc;
        let pbw = fe.ctx.pbw.as_ref().ok_or_else(|| Error::Unsupported("non-innerness witness needs PBW normal forms".into()))?;
        let theta = theta_n(c);
        let mut seen: Option<(String, ScalarFraction)> = None;
        for (label, z) in generators(&c.group, true, true) {
            let dz = fe.d(&z)?;
            let cz = commutator(fe, &theta, &z)?;
            match proportion(pbw, &dz, &cz)? {
                Proportion::Any => {}
                Proportion::Never => {
                    let w = format!("variant {v}: d{label} = {} but theta_n {label} - {label} theta_n = {}", dz.render(&c.labels), cz.render(&c.labels));
                    return Ok(CheckResult::pass(id, anchor).with_witness(w));
                }
                Proportion::Factor(l) => match &seen {
                    Some((lab0, l0)) if *l0 != l => {
                        let w = format!("variant {v}: lambda = {l0} from {lab0} but {l} from {label}");
                        return Ok(CheckResult::pass(id, anchor).with_witness(w));
                    }
                    Some(_) => {}
                    None => seen = Some((label, l)),
                },
            }
        }
        Ok(CheckResult::fail(id, anchor, format!("a common factor exists: {:?}", seen.map(|s| s.1.to_string()))))
    })
}

trait WithWitness {
    fn with_witness(self, w: String) -> Self;
}

impl WithWitness for CheckResult {
    fn with_witness(mut self, w: String) -> Self {
        self.witness = Some(w);
        self
    }
}

// ---------------------------------------------------------------------------
// Relations between invariant forms and the module structure of Γ1

/// `omega(b) = sum_r X_r(b) theta_r` for `b` with `eps(b) = 0`.
fn maurer_cartan(fe: &FormEngine, b: &AlgebraElement) -> Result<OneForm> {
    let mut out = fe.zero();
    for (r, x) in fe.calc.basis.iter().enumerate() {
        let v = fe.ctx.engine.eval(x, b)?.try_scalar()?;
        out.coeffs[r] = AlgebraElement::scalar(v);
    }
    Ok(out)
}

/// `theta_n = sum y_i dx_i`, `eta_n = sum gamma_i gamma_n^-1 x_i dy_i`,
/// `theta_n + delta eta_n = 0` and the coefficient conditions for the
/// relation `sum a_i dx_i + b_i dy_i = 0` with `a_i = y_i`,
/// `b_i = delta gamma_i gamma_n^-1 x_i`.
pub fn check_form_identities(fe: &FormEngine) -> Vec<CheckResult> {
    let c = fe.calc;
    let g = &c.group;
    let mut out = Vec::new();
    let CalculusKind::GammaZ(v) = c.kind else { return out };
    out.push(timed("theta-sum", "theta_n = sum_i y_i dx_i", || {
        let (th, _) = intrinsic_forms(fe)?;
        let mut t = Tally::default();
        t.add("theta_n", &fe.zero_test(&th.sub(&theta_n(c)))?);
        Ok(t.finish("theta-sum", "theta_n = sum_i y_i dx_i"))
    }));
    out.push(timed("eta-sum", "eta_n = sum_i gamma_i gamma_n^-1 x_i dy_i", || {
        let (_, et) = intrinsic_forms(fe)?;
        let eta = maurer_cartan(fe, &AlgebraElement::antipode_inverse_letter(g, g.n - 1, g.n - 1)?)?;
        let mut t = Tally::default();
        t.add("eta_n", &fe.zero_test(&et.sub(&eta))?);
        Ok(t.finish("eta-sum", "eta_n = sum_i gamma_i gamma_n^-1 x_i dy_i"))
    }));
    if v != 1 {
        return out;
    }
    let anchor = "theta_n + delta eta_n = 0 in the first Z-calculus";
    out.push(timed("eta-theta", anchor, || {
        let (th, et) = intrinsic_forms(fe)?;
        let d = c.constants.get("delta")?;
        let mut t = Tally::default();
        t.add("theta_n + delta eta_n", &fe.zero_test(&th.add(&et.scale(&d)))?);
        Ok(t.finish("eta-theta", anchor))
    }));
    let anchor = "left-module relations of the first Z-calculus: a_j = (sum a_i x_i) y_j, b_j = (sum b_i y_i) x_j gamma_j gamma_n^-1, sum a_i x_i = delta^-1 sum b_i y_i";
    out.push(timed("prop4ii-module", anchor, || {
        let n = g.n;
        let d = c.constants.get("delta")?;
        let gn = g.gamma(n - 1)?.inv()?;
        let a: Vec<AlgebraElement> = (0..n).map(|i| y(g, i)).collect();
        let b: Vec<AlgebraElement> = (0..n).map(|i| Ok(x(g, i).scale(&(&(&d * &g.gamma(i)?) * &gn)))).collect::<Result<_>>()?;
        let mut t = Tally::default();
        let mut rel = fe.zero();
        for i in 0..n {
            rel = rel.add(&fe.a_db(&a[i], &x(g, i))?).add(&fe.a_db(&b[i], &y(g, i))?);
        }
        t.add("sum a_i dx_i + b_i dy_i", &fe.zero_test(&rel)?);
        let sax = (0..n).fold(AlgebraElement::zero(), |s, i| &s + &(&a[i] * &x(g, i)));
        let sby = (0..n).fold(AlgebraElement::zero(), |s, i| &s + &(&b[i] * &y(g, i)));
        for j in 0..n {
            t.add(&format!("a_{}", j + 1), &fe.ctx.zero_test(&(&a[j] - &(&sax * &y(g, j))))?);
            let w = &g.gamma(j)? * &gn;
            t.add(&format!("b_{}", j + 1), &fe.ctx.zero_test(&(&b[j] - &(&sby * &x(g, j)).scale(&w)))?)
        }
        t.add("sum a_i x_i", &fe.ctx.zero_test(&(&sax.scale(&d) - &sby))?);
        t.add("sum y_i x_i = 1", &fe.ctx.zero_test(&(&sax - &AlgebraElement::one()))?);
        Ok(t.finish("prop4ii-module", anchor))
    }));
    out
}

// ---------------------------------------------------------------------------
// Leibniz rule and general-element forms

/// `d a = a_(1) X_s(a_(2)) theta_s`, directly from the coproduct of `a`.
pub fn d_from_coproduct(fe: &FormEngine, a: &AlgebraElement) -> Result<OneForm> {
    let n = fe.calc.n();
    let mut out = fe.zero();
    for (c, m1, m2) in a.coproduct(n) {
        let right = AlgebraElement::monomial(m2, Scalar::one());
        for (s, xs) in fe.calc.basis.iter().enumerate() {
            let v = fe.ctx.engine.eval(xs, &right)?.try_scalar()?;
            if !v.is_zero() {
                out.coeffs[s].add_term(m1.clone(), &(&c * &v));
            }
        }
    }
    Ok(out)
}

pub fn check_leibniz(fe: &FormEngine) -> CheckResult {
    let id = "leibniz";
    let anchor = "d(ab) from the coproduct equals a.db + da.b";
    timed(id, anchor, || {
        if fe.calc.basis.is_empty() {
            return Err(Error::Unsupported("the coproduct formula for d needs a tangent basis".into()));
        }
        let gens = space_generators(fe.calc);
        let mut t = Tally::default();
        for (i, (la, a)) in gens.iter().enumerate() {
            for (lb, b) in gens.iter().skip(i) {
                let ab = a * b;
                let lhs = d_from_coproduct(fe, &ab)?;
                let rhs = fe.a_db(a, b)?.add(&fe.da_b(a, b)?);
                t.add(&format!("{la}{lb}"), &fe.zero_test(&lhs.sub(&rhs))?);
            }
        }
        Ok(t.finish(id, anchor))
    })
}

/// Triples `(c, a_(1), a_(2), a_(3))`.
fn sweedler3(a: &AlgebraElement, n: usize) -> Vec<(Scalar, AlgebraElement, AlgebraElement, AlgebraElement)> {
    let mut out = Vec::new();
    for (c, m1, m23) in a.coproduct(n) {
        for (c2, m2, m3) in AlgebraElement::monomial(m23, Scalar::one()).coproduct(n) {
            let one = Scalar::one();
            out.push((
                &c * &c2,
                AlgebraElement::monomial(m1.clone(), one.clone()),
                AlgebraElement::monomial(m2, one.clone()),
                AlgebraElement::monomial(m3, one),
            ));
        }
    }
    out
}

/// General-element forms of the x- and y-calculus rules on all length-2
/// products of generators.
pub fn check_general_forms(fe: &FormEngine) -> Vec<CheckResult> {
    let c = fe.calc;
    match c.kind {
        CalculusKind::GammaX => vec![bus8(fe), bus10(fe)],
        CalculusKind::GammaY => vec![camp9(fe)],
        _ => Vec::new(),
    }
}

fn lnn(g: &GroupSpec) -> FunctionalElement {
    FunctionalElement::atom(Atom::minus(g.n - 1, g.n - 1))
}

/// `theta_r x = sum_s x_(1) (l-[r,s] l-[n,n], x_(2)) theta_s`.
fn bus8(fe: &FormEngine) -> CheckResult {
    let id = "bus8-general";
    let anchor = "theta_r x = sum_s x_(1) rbar(u^r_s, x_(2)) (l-[n,n], x_(3)) theta_s";
    timed(id, anchor, || {
        let c = fe.calc;
        let g = &c.group;
        let n = g.n;
        let mut t = Tally::default();
        for (label, z) in products(&generators(g, true, false)) {
            for r in 0..c.dim() {
                let lhs = fe.theta_times(r, &z)?;
                let mut rhs = fe.zero();
                for (k, m1, m2) in z.coproduct(n) {
                    for s in 0..c.dim() {
                        let f = FunctionalElement::atoms(&[Atom::minus(r, s), Atom::minus(n - 1, n - 1)]);
                        let v = fe.ctx.engine.eval(&f, &AlgebraElement::monomial(m2.clone(), Scalar::one()))?.try_scalar()?;
                        if !v.is_zero() {
                            rhs.coeffs[s].add_term(m1.clone(), &(&k * &v));
                        }
                    }
                }
                t.add(&format!("theta{}.{label}", r + 1), &fe.zero_test(&lhs.sub(&rhs))?);
            }
        }
        Ok(t.finish(id, anchor))
    })
}

/// `dx_i . x = sum_m rbar(u^i_m, x_(1)) x_(2) (l-[n,n], x_(3)) dx_m`, with
/// `rbar(u^i_m, .) = l-[i,m]`. The printed form has `r` in place of `rbar`,
/// which already disagrees with the rule for `x = x_j`.
fn bus10(fe: &FormEngine) -> CheckResult {
    let id = "bus10-general";
    let anchor = "dx_i . x = sum_m rbar(u^i_m, x_(1)) x_(2) (l-[n,n], x_(3)) dx_m";
    timed(id, anchor, || {
        let g = &fe.calc.group;
        let n = g.n;
        let mut t = Tally::default();
        let gens = generators(g, true, false);
        let mut elems = gens.clone();
        elems.extend(products(&gens));
        for (label, z) in &elems {
            let trip = sweedler3(z, n);
            for i in 0..n {
                let lhs = fe.da_b(&x(g, i), z)?;
                let mut rhs = fe.zero();
                for m in 0..n {
                    let r = FunctionalElement::atom(Atom::minus(i, m));
                    for (c, a1, a2, a3) in &trip {
                        let v = &fe.ctx.engine.eval(&r, a1)?.try_scalar()? * &fe.ctx.engine.eval(&lnn(g), a3)?.try_scalar()?;
                        if v.is_zero() {
                            continue;
                        }
                        rhs.add_scaled(&fe.a_db(a2, &x(g, m))?, &(c * &v));
                    }
                }
                t.add(&format!("dx{}.{label}", i + 1), &fe.zero_test(&lhs.sub(&rhs))?);
            }
        }
        Ok(t.finish(id, anchor))
    })
}

/// `S^-1` on an element written in antipode letters only.
fn antipode_inverse(a: &AlgebraElement) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (m, c) in a.terms() {
        if m.det != 0 || m.letters.iter().any(|l| !l.anti) {
            return Err(Error::Unsupported(format!("S^-1 of {m:?}")));
        }
        let w: Vec<Letter> = m.letters.iter().rev().map(|l| Letter::u(l.row(), l.col())).collect();
        out.add_term(Monomial::word(&w), c);
    }
    Ok(out)
}

/// `dy_i . y = sum_m rbar(y_(1), u^m_i) y_(2) (l-[n,n], y_(3)) dy_m`, with
/// `rbar(y, u^m_i) = l+[m,i](S^-1(y))`. Reading `rbar(., u^m_i)` as
/// `S(l+[m,i])` disagrees with the rule for `y = y_j` by `gamma` factors.
fn camp9(fe: &FormEngine) -> CheckResult {
    let id = "camp9-general";
    let anchor = "dy_i . y = sum_m rbar(y_(1), u^m_i) y_(2) (l-[n,n], y_(3)) dy_m";
    timed(id, anchor, || {
        let g = &fe.calc.group;
        let n = g.n;
        let mut t = Tally::default();
        let gens = generators(g, false, true);
        let mut elems = gens.clone();
        elems.extend(products(&gens));
        for (label, z) in &elems {
            let trip = sweedler3(z, n);
            for i in 0..n {
                let lhs = fe.da_b(&y(g, i), z)?;
                let mut rhs = fe.zero();
                for m in 0..n {
                    let r = FunctionalElement::atom(Atom::plus(m, i));
                    for (c, a1, a2, a3) in &trip {
                        let v = &fe.ctx.engine.eval(&r, &antipode_inverse(a1)?)?.try_scalar()? * &fe.ctx.engine.eval(&lnn(g), a3)?.try_scalar()?;
                        if v.is_zero() {
                            continue;
                        }
                        rhs.add_scaled(&fe.a_db(a2, &y(g, m))?, &(c * &v));
                    }
                }
                t.add(&format!("dy{}.{label}", i + 1), &fe.zero_test(&lhs.sub(&rhs))?);
            }
        }
        Ok(t.finish(id, anchor))
    })
}

// ---------------------------------------------------------------------------
// Star structure

/// `star(X)` lies in the span of `target` for every basis element `X` of `c`.
pub fn check_star_closure(ctx: &Context, c: &Calculus, target: &Calculus, degree_bound: usize) -> CheckResult {
    let id = if c.kind == target.kind { "star-closed".to_string() } else { format!("star-maps-to-{}", target.kind) };
    let anchor = "the star of every tangent vector lies in the (target) tangent space";
    timed(&id, anchor, || {
        let letters = c.letters();
        for (k, b) in c.basis.iter().enumerate() {
            match express_in_span(&ctx.engine, &b.star(), &target.basis, &letters, degree_bound)? {
                SpanResult::InSpan(_) => {}
                SpanResult::NotInSpan { witness } => {
                    return Ok(CheckResult::fail(&id, anchor, format!("{}* is not in the span at degree {degree_bound}; inconsistent on {witness}", c.labels[k])));
                }
            }
        }
        Ok(CheckResult::pass(&id, anchor))
    })
}

/// `X_N* = X_N` and `X_1*` a single q-power multiple of `Y_1`, in the first
/// Z-calculus.
pub fn check_star_examples(ctx: &Context, c: &Calculus, degree_bound: usize) -> Vec<CheckResult> {
    let n = c.n();
    let letters = c.letters();
    let mut out = Vec::new();
    out.push(timed("star-xn", "X_N* = X_N", || {
        let xn = &c.basis[n - 1];
        let ok = functional_vanishes(&ctx.engine, &(xn.star() - xn.clone()), &letters, degree_bound)?;
        Ok(CheckResult::from_bool("star-xn", "X_N* = X_N", ok, || "X_N* - X_N does not vanish".into()))
    }));
    let anchor = "X_1* is a multiple of Y_1 by a power of q";
    out.push(timed("star-x1", anchor, || {
        let target = [c.basis[n].clone()];
        match express_in_span(&ctx.engine, &c.basis[0].star(), &target, &letters, degree_bound)? {
            SpanResult::InSpan(v) => {
                let k = v[0].to_scalar();
                let ok = k.as_ref().is_some_and(|s| s.is_monomial() && s.leading_coeff().is_some_and(|a| num::Signed::abs(a) == num::One::one()));
                let w = format!("X_1* = ({}) Y_1", v[0]);
                Ok(if ok { CheckResult::pass("star-x1", anchor).with_witness(w) } else { CheckResult::fail("star-x1", anchor, w) })
            }
            SpanResult::NotInSpan { witness } => Ok(CheckResult::fail("star-x1", anchor, format!("X_1* not proportional to Y_1; inconsistent on {witness}"))),
        }
    }));
    out
}

// ---------------------------------------------------------------------------
// Comparison of induced calculi

fn family_holds(fe: &FormEngine, f: &Family) -> Result<Option<String>> {
    let f = f.rebased(fe)?;
    let n = fe.calc.n();
    for i in 0..n {
        for j in 0..n {
            let inst = f.instance(fe, i, j)?;
            if !inst.verdict.is_zero() {
                return Ok(Some(format!("{}: {}", inst.label, inst.verdict.witness.unwrap_or_default())));
            }
        }
    }
    Ok(None)
}

/// Two calculi induce the same calculus on the algebra generated by the `x_i`
/// and `y_i` when every relation family of either one holds in both.
pub fn check_same_induced(ctx: &Context, a: &Calculus, b: &Calculus) -> CheckResult {
    let id = format!("same-induced:{}:{}", a.kind, b.kind);
    let anchor = "two calculi induce the same calculus on the x/y algebra";
    timed(&id, anchor, || {
        let fa = FormEngine::new(a, ctx);
        let fb = FormEngine::new(b, ctx);
        let mut fams: Vec<(String, Family)> = Vec::new();
        for c in [a, b] {
            for (fid, _, f) in families_for(c)? {
                if matches!(c.kind, CalculusKind::GammaZ(_)) {
                    fams.push((format!("{}:{fid}", c.kind), f));
                }
            }
        }
        if fams.is_empty() {
            return Err(Error::Unsupported("neither calculus has relation tables on the x/y algebra".into()));
        }
        for (fid, f) in &fams {
            let ha = family_holds(&fa, f)?;
            let hb = family_holds(&fb, f)?;
            if ha.is_some() != hb.is_some() {
                let (who, w) = if let Some(w) = ha { (&a.kind, w) } else { (&b.kind, hb.unwrap_or_default()) };
                return Ok(CheckResult::fail(&id, anchor, format!("{fid} fails in {who} only, at {w}")));
            }
        }
        Ok(CheckResult::pass(&id, anchor))
    })
}

// ---------------------------------------------------------------------------
// Projection onto the subgroup

/// `(id (x) pi) Delta(a) - a (x) 1`, or `None` when it vanishes. The right
/// legs are normal-ordered in the subgroup, the left coefficients zero-tested
/// in the full group.
pub fn projection_defect(ctx: &Context, sub: &Pbw, a: &AlgebraElement) -> Result<Option<String>> {
    let n = ctx.n();
    let mut by_right: HashMap<Monomial, AlgebraElement> = HashMap::new();
    for (c, m1, m2) in a.coproduct(n) {
        if m2.det != 0 {
            return Err(Error::Unsupported("projection of determinant powers".into()));
        }
        let p = AlgebraElement::monomial(m2, c).project_pi(n);
        if p.is_trivially_zero() {
            continue;
        }
        let p = sub.normal_form(&p)?;
        for (m, v) in p.terms() {
            let left = AlgebraElement::monomial(m1.clone(), v.clone());
            let e = by_right.entry(m.clone()).or_insert_with(AlgebraElement::zero);
            *e = &*e + &left;
        }
    }
    let unit = Monomial::default();
    let e = by_right.entry(unit.clone()).or_insert_with(AlgebraElement::zero);
    *e = &*e - a;
    let mut keys: Vec<&Monomial> = by_right.keys().collect();
    keys.sort();
    for m in keys {
        let left = &by_right[m];
        let v = ctx.zero_test(left)?;
        if !v.is_zero() {
            let right = if m == &unit { "1".to_string() } else { AlgebraElement::monomial(m.clone(), Scalar::one()).to_string() };
            return Ok(Some(format!("component ({left}) (x) {right} survives")));
        }
    }
    Ok(None)
}

pub fn subgroup_pbw(g: &GroupSpec) -> Result<Pbw> {
    if g.family != crate::fralgebra::Family::GLq {
        return Err(Error::Unsupported(format!("projection onto the subgroup is implemented for GL_q, not {}", g.family)));
    }
    if g.n < 2 {
        return Err(Error::Config("projection needs N >= 2".into()));
    }
    Pbw::new(&GroupSpec::gl(g.n - 1))
}

/// `(id (x) pi) Delta` fixes every `x_i`, `y_i` and their length-2 products.
pub fn check_projection_invariance(ctx: &Context) -> CheckResult {
    let id = "projection-invariance";
    let anchor = "(id (x) pi) Delta(a) = a (x) 1 on the x/y algebra";
    timed(id, anchor, || {
        let g = &ctx.group;
        let sub = subgroup_pbw(g)?;
        let gens = generators(g, true, true);
        let mut elems = gens.clone();
        elems.extend(products(&gens));
        for (label, a) in &elems {
            if let Some(w) = projection_defect(ctx, &sub, a)? {
                return Ok(CheckResult::fail(id, anchor, format!("{label}: {w}")));
            }
        }
        Ok(CheckResult::pass(id, anchor))
    })
}

// ---------------------------------------------------------------------------
// Hopf-side axioms

/// L-functional products of length `<= 2` annihilate the defining relations and
/// their multiples by single letters.
pub fn check_rtt_annihilation(ctx: &Context) -> CheckResult {
    let id = "hopf-rtt-annihilation";
    let anchor = "L-functionals annihilate the defining relations";
    timed(id, anchor, || {
        let g = &ctx.group;
        let rels = defining_relations(g, &ctx.engine.rhat);
        let letters = Letter::all(g.n, false);
        let mut t = Tally::default();
        for (k, r) in rels.iter().enumerate() {
            let mut multiples = vec![r.clone()];
            for l in &letters {
                let la = AlgebraElement::letter(*l);
                multiples.push(&la * r);
                multiples.push(r * &la);
            }
            for m in &multiples {
                let mut v = ZeroVerdict { pairing: Some(ctx.engine.zero_test(m, 2)?.is_none()), ..Default::default() };
                if let Some(p) = &ctx.pbw {
                    v.pbw = Some(p.is_zero(m)?);
                }
                if let Some(num) = &ctx.numeric {
                    v.numeric = Some(num.zero_test(m, 2)?.is_none());
                }
                t.add(&format!("relation {}", k + 1), &v);
                if t.failed {
                    return Ok(t.finish(id, anchor));
                }
            }
        }
        Ok(t.finish(id, anchor))
    })
}

/// `S(u^i_k) u^k_j = u^i_k S(u^k_j) = delta_ij` in the algebra and
/// `S(l^{+-i}_k) l^{+-k}_j = delta_ij eps` on words of length `<= 2`.
pub fn check_antipode_axiom(ctx: &Context) -> CheckResult {
    let id = "hopf-antipode";
    let anchor = "antipode axiom m(S (x) id)Delta = m(id (x) S)Delta = eps";
    timed(id, anchor, || {
        let g = &ctx.group;
        let n = g.n;
        let mut t = Tally::default();
        if g.has_gamma() {
            for i in 0..n {
                for j in 0..n {
                    let delta = AlgebraElement::scalar(if i == j { Scalar::one() } else { Scalar::zero() });
                    let mut left = AlgebraElement::zero();
                    let mut right = AlgebraElement::zero();
                    for k in 0..n {
                        left = &left + &(&AlgebraElement::s(i, k) * &AlgebraElement::u(k, j));
                        right = &right + &(&AlgebraElement::u(i, k) * &AlgebraElement::s(k, j));
                    }
                    t.add(&format!("S(u)u [{},{}]", i + 1, j + 1), &ctx.zero_test(&(&left - &delta))?);
                    t.add(&format!("uS(u) [{},{}]", i + 1, j + 1), &ctx.zero_test(&(&right - &delta))?);
                }
            }
        }
        let words = words_up_to(&Letter::all(n, false), 2);
        for (sign, sa, a) in [("+", Atom::s_plus as fn(usize, usize) -> Atom, Atom::plus as fn(usize, usize) -> Atom), ("-", Atom::s_minus, Atom::minus)] {
            for i in 0..n {
                for j in 0..n {
                    let mut f = FunctionalElement::zero();
                    for k in 0..n {
                        f = f + FunctionalElement::atoms(&[sa(i, k), a(k, j)]);
                    }
                    if i == j {
                        f = f - FunctionalElement::epsilon();
                    }
                    for w in &words {
                        let v = ctx.engine.eval_word(&f, w)?;
                        if !v.is_zero() {
                            t.fail(format!("S(l{sign})l{sign} [{},{}] on {:?} gives {v}", i + 1, j + 1, w));
                            return Ok(t.finish(id, anchor));
                        }
                    }
                }
            }
        }
        Ok(t.finish(id, anchor))
    })
}

/// Counit and coassociativity on words of length `<= 2`, and the
/// multiplicativity of the pairing `(f g, a) = (f, a_(1)) (g, a_(2))`.
pub fn check_counit_coassociativity(ctx: &Context) -> CheckResult {
    let id = "hopf-counit-coassociativity";
    let anchor = "(eps (x) id)Delta = id = (id (x) eps)Delta, (Delta (x) id)Delta = (id (x) Delta)Delta";
    timed(id, anchor, || {
        let g = &ctx.group;
        let n = g.n;
        let letters = Letter::all(n, g.has_gamma());
        for w in words_up_to(&letters, 2) {
            let a = AlgebraElement::word(&w);
            let cop = a.coproduct(n);
            let mut left = AlgebraElement::zero();
            let mut right = AlgebraElement::zero();
            for (c, m1, m2) in &cop {
                left.add_term(m2.clone(), &(c * &m1.counit()));
                right.add_term(m1.clone(), &(c * &m2.counit()));
            }
            if left != a || right != a {
                return Ok(CheckResult::fail(id, anchor, format!("counit fails on {a}")));
            }
            let mut t1: HashMap<(Monomial, Monomial, Monomial), Scalar> = HashMap::new();
            let mut t2: HashMap<(Monomial, Monomial, Monomial), Scalar> = HashMap::new();
            for (c, m1, m2) in &cop {
                for (c2, a1, a2) in AlgebraElement::monomial(m1.clone(), Scalar::one()).coproduct(n) {
                    let e = t1.entry((a1, a2, m2.clone())).or_insert_with(Scalar::zero);
                    *e = &*e + &(c * &c2);
                }
                for (c2, b1, b2) in AlgebraElement::monomial(m2.clone(), Scalar::one()).coproduct(n) {
                    let e = t2.entry((m1.clone(), b1, b2)).or_insert_with(Scalar::zero);
                    *e = &*e + &(c * &c2);
                }
            }
            t1.retain(|_, v| !v.is_zero());
            t2.retain(|_, v| !v.is_zero());
            if t1 != t2 {
                return Ok(CheckResult::fail(id, anchor, format!("coassociativity fails on {a}")));
            }
        }
        // The pairing turns products of functionals into convolution.
        let atoms: Vec<Atom> = (0..n).flat_map(|i| (0..n).flat_map(move |j| [Atom::plus(i, j), Atom::minus(i, j)])).collect();
        let u_words = words_up_to(&Letter::all(n, false), 2);
        for f in &atoms {
            for h in &atoms {
                let fh = FunctionalElement::atoms(&[*f, *h]);
                for w in u_words.iter().filter(|w| w.len() == 2) {
                    let a = AlgebraElement::word(w);
                    let direct = ctx.engine.eval(&fh, &a)?;
                    let mut conv = ScalarFraction::zero();
                    for (c, m1, m2) in a.coproduct(n) {
                        let v1 = ctx.engine.eval(&FunctionalElement::atom(*f), &AlgebraElement::monomial(m1, Scalar::one()))?;
                        let v2 = ctx.engine.eval(&FunctionalElement::atom(*h), &AlgebraElement::monomial(m2, Scalar::one()))?;
                        conv += &(&(&ScalarFraction::from(c) * &v1) * &v2);
                    }
                    if direct != conv {
                        return Ok(CheckResult::fail(id, anchor, format!("pairing of {f}{h} with {a}: {direct} vs convolution {conv}")));
                    }
                }
                let ef = FunctionalElement::epsilon() * FunctionalElement::atom(*f);
                for w in u_words.iter().filter(|w| w.len() == 1) {
                    if ctx.engine.eval_word(&ef, w)? != ctx.engine.eval_word(&FunctionalElement::atom(*f), w)? {
                        return Ok(CheckResult::fail(id, anchor, format!("eps {f} differs from {f}")));
                    }
                }
            }
        }
        Ok(CheckResult::pass(id, anchor))
    })
}

/// `u C u^t C^-1 = C u^t C^-1 u = I` for the orthogonal and symplectic families.
pub fn check_metric_axiom(ctx: &Context) -> CheckResult {
    let id = "hopf-metric";
    let anchor = "metric relations u C u^t C^-1 = C u^t C^-1 u = I";
    timed(id, anchor, || {
        let g = &ctx.group;
        if !g.has_metric() {
            return Err(Error::Unsupported(format!("{} has no metric", g.family)));
        }
        let mut t = Tally::default();
        for (k, r) in metric_relations(g).iter().enumerate() {
            t.add(&format!("metric relation {}", k + 1), &ctx.zero_test(r)?);
        }
        Ok(t.finish(id, anchor))
    })
}

/// Hopf-side checks for the group of the context.
pub fn hopf_checks(ctx: &Context) -> Vec<CheckResult> {
    let mut v = vec![check_rtt_annihilation(ctx), check_antipode_axiom(ctx), check_counit_coassociativity(ctx)];
    if ctx.group.has_metric() {
        v.push(check_metric_axiom(ctx));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculi::{build_gamma_full, build_gamma_x, build_gamma_y, build_gamma_z, default_zn};
    use crate::oracle::OracleConfig;

    fn ctx(g: GroupSpec) -> Context {
        Context::new(&g, OracleConfig::default()).unwrap()
    }

    fn assert_all(v: &[CheckResult]) {
        for r in v {
            assert!(r.passed(), "{}: {:?}", r.id, r.witness);
        }
    }

    #[test]
    fn innerness_at_n2() {
        let c = ctx(GroupSpec::gl(2));
        let zn = default_zn(&c.group);
        for calc in [build_gamma_x(&c).unwrap(), build_gamma_y(&c).unwrap()] {
            assert_all(&check_inner(&FormEngine::new(&calc, &c)));
        }
        for v in 1..=4 {
            let calc = build_gamma_z(&c, v, &zn).unwrap();
            let r = check_inner(&FormEngine::new(&calc, &c));
            assert_all(&r);
            if v > 1 {
                assert!(r[1].witness.is_some());
            }
        }
    }

    #[test]
    fn form_identities_and_general_forms() {
        let c = ctx(GroupSpec::gl(2));
        let z1 = build_gamma_z(&c, 1, &default_zn(&c.group)).unwrap();
        let fe = FormEngine::new(&z1, &c);
        assert_all(&check_form_identities(&fe));
        assert_all(&[check_leibniz(&fe)]);
        let gx = build_gamma_x(&c).unwrap();
        assert_all(&check_general_forms(&FormEngine::new(&gx, &c)));
        let gy = build_gamma_y(&c).unwrap();
        assert_all(&check_general_forms(&FormEngine::new(&gy, &c)));
    }

    #[test]
    fn star_structure() {
        let c = ctx(GroupSpec::gl(2));
        let zn = default_zn(&c.group);
        let z: Vec<Calculus> = (1..=4).map(|v| build_gamma_z(&c, v, &zn).unwrap()).collect();
        assert!(check_star_closure(&c, &z[0], &z[0], 3).passed());
        assert!(check_star_closure(&c, &z[3], &z[3], 3).passed());
        assert!(check_star_closure(&c, &z[1], &z[2], 3).passed());
        assert!(!check_star_closure(&c, &z[1], &z[1], 3).passed());
        assert_all(&check_star_examples(&c, &z[0], 3));
    }

    #[test]
    fn induced_comparison() {
        let c = ctx(GroupSpec::gl(2));
        let zn = default_zn(&c.group);
        let full = build_gamma_full(&c).unwrap();
        let z1 = build_gamma_z(&c, 1, &zn).unwrap();
        let z4 = build_gamma_z(&c, 4, &zn).unwrap();
        assert!(check_same_induced(&c, &full, &z1).passed());
        assert!(!check_same_induced(&c, &full, &z4).passed());
        assert!(check_same_induced(&c, &z1, &z1).passed());
    }

    #[test]
    fn projection() {
        let c = ctx(GroupSpec::gl(2));
        assert!(check_projection_invariance(&c).passed());
        let sub = subgroup_pbw(&c.group).unwrap();
        assert!(projection_defect(&c, &sub, &AlgebraElement::u(0, 0)).unwrap().is_some());
    }

    #[test]
    fn hopf_axioms() {
        assert_all(&hopf_checks(&ctx(GroupSpec::gl(2))));
        assert_all(&hopf_checks(&ctx(GroupSpec::o(3))));
    }
}
