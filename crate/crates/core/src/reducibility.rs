//! The reducibility polynomial `p(n)` attached to a singular vector, built two
//! independent ways, and the verdict engine for `V'_{α,β} ⊗ L(c,h)`.
//!
//! A level-`m` singular vector `u` yields, for every `n`, a relation
//! `u(v_{n+m-1}⊗v) + Σ u_i(v_{n+m-1-i}⊗v) = p(n) v_{n-1}⊗v`, so
//! `U_{n-1} ⊆ U_n + … + U_{n+m-1}` whenever `p(n) ≠ 0`. Together with
//! `L_k(v_n⊗v) ∈ ℂ v_{n+k}⊗v` these inclusions can prove that all the cyclic
//! submodules `U_n` coincide, which means the tensor product is irreducible.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::{label_of_weight, minimal_model_of, reducible_pairs, ser_rational, MinimalLabel};
use crate::intermediate::{IsParams, Variant};
use crate::linalg::add_scaled;
use crate::scalar::{fmt_rational, int, is_integer, rat, rational_sqrt, Poly, Rational};
use crate::tensor::{chain_evidence, TensorElement, TensorModule, TruncationWindow};
use crate::verma::{homogeneous_level, ModulePresentation, DEFAULT_LEVEL_CAP, DEFAULT_SCAN_LEVELS};
use crate::words::{fmt_combination, PbwMonomial, UNeg, WordExpr};

/// How a reducibility polynomial was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    PhiFormula,
    Elimination,
}

/// A monic reducibility polynomial in `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPoly {
    pub poly: Poly,
    pub level: usize,
    pub method: Method,
}

impl PPoly {
    pub fn integer_roots(&self) -> Result<Vec<i64>> {
        self.poly.integer_roots()
    }
}

/// `φ_n(L_{-k_r} ⋯ L_{-k_1}) = ∏_j (n + α + (1-k_j)β + k_1 + ⋯ + k_j - 1)`,
/// with `k_1` the rightmost factor.
pub fn phi_n(mono: &PbwMonomial, alpha: &Rational, beta: &Rational) -> Poly {
    let mut acc = Poly::constant(Rational::one());
    let mut partial = 0i64;
    for &k in mono.parts().iter().rev() {
        partial += k as i64;
        let shift = alpha + int(1 - k as i64) * beta + int(partial - 1);
        acc = &acc * &Poly::linear(shift);
    }
    acc
}

/// Linear extension of [`phi_n`].
pub fn phi(u: &UNeg, alpha: &Rational, beta: &Rational) -> Poly {
    let mut acc = Poly::zero();
    for (m, c) in u {
        acc = &acc + &phi_n(m, alpha, beta).scale(c);
    }
    acc
}

fn check_singular(u: &UNeg, module: &ModulePresentation) -> Result<usize> {
    let level = homogeneous_level(u)
        .filter(|&l| l > 0)
        .ok_or_else(|| Error::NotSingular("expected a nonzero homogeneous vector of positive level".into()))?;
    for k in [1, 2] {
        if !module.act(k, u)?.is_empty() {
            return Err(Error::NotSingular(format!(
                "L_{k} does not annihilate {}",
                fmt_combination(u)
            )));
        }
    }
    Ok(level)
}

/// The monic polynomial `φ(u)` for a singular vector `u` of `module`.
pub fn p_from_singular(u: &UNeg, alpha: &Rational, beta: &Rational, module: &ModulePresentation) -> Result<PPoly> {
    let level = check_singular(u, module)?;
    let poly = phi(u, alpha, beta);
    if poly.degree() != Some(level) {
        return Err(Error::Internal(format!("φ of a level-{level} vector has degree {:?}", poly.degree())));
    }
    Ok(PPoly {
        poly: poly.monic(),
        level,
        method: Method::PhiFormula,
    })
}

/// Rewrites `u(v_{n+m-1}⊗v)` into a multiple of `v_{n-1}⊗v` by subtracting
/// `x (v_a⊗v)` terms with `a ≥ n`, always clearing the component of highest
/// module level first. Returns that multiple.
pub fn eliminate(t: &TensorModule, u: &UNeg, n: i64) -> Result<Rational> {
    let level = homogeneous_level(u).ok_or_else(|| Error::NotSingular("zero or inhomogeneous vector".into()))? as i64;
    let mut x = t.apply(&WordExpr::from_uneg(u), &t.generator(n + level - 1)?)?;
    let mut steps = 0usize;
    loop {
        let top = x
            .keys()
            .filter(|(_, mono)| !mono.is_identity())
            .max_by(|a, b| a.1.level().cmp(&b.1.level()).then_with(|| b.cmp(a)))
            .cloned();
        let Some((a, mono)) = top else { break };
        let coef = x[&(a, mono.clone())].clone();
        let y = t.apply_monomial(&mono, &t.generator(a)?)?;
        add_scaled(&mut x, &y, &-coef);
        steps += 1;
        if steps > 100_000 {
            return Err(Error::Internal("elimination does not terminate".into()));
        }
    }
    let target = (n - 1, PbwMonomial::identity());
    let value = x.remove(&target).unwrap_or_else(Rational::zero);
    if !x.is_empty() {
        return Err(Error::Internal(format!(
            "elimination left components outside v_{}⊗v: {}",
            n - 1,
            crate::tensor::fmt_tensor(&x)
        )));
    }
    Ok(value)
}

/// The monic polynomial read off from the elimination at `m + 1` sample
/// points, computed in `V_{α,β} ⊗ V(c,h)/⟨u⟩`.
pub fn p_via_elimination(u: &UNeg, alpha: &Rational, beta: &Rational, c: &Rational, h: &Rational) -> Result<PPoly> {
    let module = ModulePresentation::generated(c.clone(), h.clone(), vec![u.clone()])?;
    let level = homogeneous_level(u).unwrap();
    let t = TensorModule::new(IsParams::full(alpha.clone(), beta.clone()), Arc::new(module));
    let mut points = Vec::with_capacity(level + 1);
    for i in 0..=level {
        let n = (level + 2 + i) as i64;
        points.push((int(n), eliminate(&t, u, n)?));
    }
    let poly = Poly::interpolate(&points)?;
    if poly.degree() != Some(level) {
        return Err(Error::Internal(format!(
            "elimination polynomial for a level-{level} vector has degree {:?}",
            poly.degree()
        )));
    }
    Ok(PPoly {
        poly: poly.monic(),
        level,
        method: Method::Elimination,
    })
}

/// A root from the closed-form expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootValue {
    Rational(Rational),
    /// `base ± scale·√disc` with `disc` not a rational square.
    Irrational { base: Rational, scale: Rational, disc: Rational, sign: i8 },
}

impl RootValue {
    pub fn as_integer(&self) -> Option<i64> {
        match self {
            RootValue::Rational(r) if r.is_integer() => i64::try_from(r.to_integer()).ok(),
            _ => None,
        }
    }
}

impl std::fmt::Display for RootValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootValue::Rational(r) => write!(f, "{}", fmt_rational(r)),
            RootValue::Irrational { base, scale, disc, sign } => write!(
                f,
                "{} {} {}*sqrt({})",
                fmt_rational(base),
                if *sign > 0 { '+' } else { '-' },
                fmt_rational(scale),
                fmt_rational(disc)
            ),
        }
    }
}

fn plus_minus(base: Rational, scale: Rational, disc: Rational) -> Vec<RootValue> {
    match rational_sqrt(&disc) {
        Some(s) => {
            let mut out = vec![RootValue::Rational(&base + &scale * &s)];
            let other = RootValue::Rational(&base - &scale * &s);
            if !out.contains(&other) {
                out.push(other);
            }
            out
        }
        None => [1i8, -1]
            .into_iter()
            .map(|sign| RootValue::Irrational {
                base: base.clone(),
                scale: scale.clone(),
                disc: disc.clone(),
                sign,
            })
            .collect(),
    }
}

/// Closed-form roots of the polynomial of a level-2 or level-3 singular vector.
pub fn closed_form_roots(level: usize, h: &Rational, alpha: &Rational, beta: &Rational) -> Result<Vec<RootValue>> {
    match level {
        2 => {
            let base = -alpha + (int(4) * h - int(1)) / int(6);
            let a = int(4) * h + int(5);
            let disc = &a * &a - int(24) * beta * (int(2) * h + int(1));
            Ok(plus_minus(base, rat(1, 6), disc))
        }
        3 => {
            let mut out = vec![RootValue::Rational(h - alpha)];
            let base = -alpha + (h - int(1)) / int(2);
            let a = h + int(3);
            let disc = &a * &a - int(8) * beta * (h + int(1));
            for r in plus_minus(base, rat(1, 2), disc) {
                if !out.contains(&r) {
                    out.push(r);
                }
            }
            Ok(out)
        }
        _ => Err(Error::invalid("level", format!("closed forms exist for levels 2 and 3, not {level}"))),
    }
}

/// Outcome of the inclusion closure over a finite index window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionProof {
    /// All existing `U_n` in the checked range coincide.
    pub proven: bool,
    pub window: (i64, i64),
    pub checked: (i64, i64),
    pub facts: usize,
}

struct Fact {
    lhs: usize,
    rhs: Vec<usize>,
}

/// Number of raising operators `L_1, …, L_k` used as inclusion facts.
const RAISING_FACTS: i64 = 4;

/// Closes the inclusions `U_{n+k} ⊆ U_n` (from `L_k`, `k > 0`) and the
/// polynomial relations under transitivity. Outside the window every fact is
/// generic, so equality of all `U_n` inside it extends to all of `ℤ`.
pub fn inclusion_closure(params: &IsParams, polys: &[PPoly]) -> Result<InclusionProof> {
    let kmax = RAISING_FACTS;
    let nmax = polys.iter().map(|p| p.level as i64).max().unwrap_or(1);
    let mut special: Vec<i64> = vec![-2, -1, 0, 1];
    for p in polys {
        special.extend(p.integer_roots()?);
    }
    for k in 1..=kmax {
        let z = -(&params.alpha + &params.beta + int(k) * &params.beta);
        if z.is_integer() {
            special.push(i64::try_from(z.to_integer()).map_err(|_| Error::invalid("alpha", "too large"))?);
        }
    }
    let pad = 2 * nmax + kmax + 4;
    let lo = special.iter().min().unwrap() - pad;
    let hi = special.iter().max().unwrap() + pad;
    let indices: Vec<i64> = (lo..=hi).filter(|&m| params.exists(m)).collect();
    let pos = |m: i64| indices.binary_search(&m).ok();

    let mut facts = Vec::new();
    for &n in &indices {
        for k in 1..=kmax {
            if let Some(t) = pos(n + k) {
                if !params.coefficient(k, n).is_zero() {
                    facts.push(Fact {
                        lhs: t,
                        rhs: vec![pos(n).unwrap()],
                    });
                }
            }
        }
    }
    for p in polys {
        let m = p.level as i64;
        for n in lo + 1..=hi - m + 1 {
            let Some(target) = pos(n - 1) else { continue };
            if params.variant == Variant::DropVminus1 && n + m - 1 == -1 {
                continue;
            }
            if p.poly.eval(&int(n)).is_zero() {
                continue;
            }
            let rhs: Vec<usize> = (n..n + m).filter_map(pos).collect();
            if !rhs.is_empty() {
                facts.push(Fact { lhs: target, rhs });
            }
        }
    }

    let size = indices.len();
    let mut incl = vec![vec![false; size]; size];
    for (i, row) in incl.iter_mut().enumerate() {
        row[i] = true;
    }
    loop {
        let mut changed = false;
        for f in &facts {
            for c in 0..size {
                if !incl[f.lhs][c] && f.rhs.iter().all(|&b| incl[b][c]) {
                    incl[f.lhs][c] = true;
                    changed = true;
                }
            }
        }
        for k in 0..size {
            for i in 0..size {
                if incl[i][k] {
                    for j in 0..size {
                        if incl[k][j] && !incl[i][j] {
                            incl[i][j] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let right = hi - nmax - kmax;
    let inner: Vec<usize> = indices.iter().filter(|&&m| m <= right).map(|&m| pos(m).unwrap()).collect();
    let proven = inner.iter().all(|&a| inner.iter().all(|&b| incl[a][b]));
    Ok(InclusionProof {
        proven,
        window: (lo, hi),
        checked: (lo, right),
        facts: facts.len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Irreducible,
    Reducible,
    Inconclusive,
}

/// A polynomial as reported in a verdict.
#[derive(Clone, Debug, Serialize)]
pub struct PolynomialReport {
    pub level: usize,
    pub singular_vector: String,
    pub coefficients: Vec<String>,
    pub display: String,
    pub integral_roots: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub name: String,
    pub outcome: String,
    /// `None` when the check could not be compared with the status.
    pub agrees: Option<bool>,
}

fn ser_rationals<S: serde::Serializer>(xs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&fmt_rational(x))?;
    }
    seq.end()
}

/// Irreducibility decision for `V'_{α,β} ⊗ L(c,h)` with its provenance.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(serialize_with = "ser_rational")]
    pub c: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub h: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub alpha: Rational,
    /// `α` after replacing an integer by 0; polynomials and roots use this value.
    #[serde(serialize_with = "ser_rational")]
    pub alpha_normalized: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub beta: Rational,
    pub variant: Variant,
    pub polynomials: Vec<PolynomialReport>,
    /// Integral roots that produce a strict step in the chain of `U_n`.
    pub integral_roots: Vec<i64>,
    #[serde(serialize_with = "ser_rationals")]
    pub subquotient_weights: Vec<Rational>,
    pub rules_fired: Vec<String>,
    pub evidence: Vec<String>,
    pub cross_checks: Vec<CrossCheck>,
}

impl Verdict {
    fn new(params: &IsParams, c: &Rational, h: &Rational) -> Self {
        Verdict {
            status: Status::Inconclusive,
            c: c.clone(),
            h: h.clone(),
            alpha: params.alpha_input.clone(),
            alpha_normalized: params.alpha.clone(),
            beta: params.beta.clone(),
            variant: params.variant,
            polynomials: Vec::new(),
            integral_roots: Vec::new(),
            subquotient_weights: Vec::new(),
            rules_fired: Vec::new(),
            evidence: Vec::new(),
            cross_checks: Vec::new(),
        }
    }

    fn fire(&mut self, rule: &str, note: impl Into<String>) {
        self.rules_fired.push(rule.to_string());
        self.evidence.push(note.into());
    }
}

#[derive(Clone, Debug)]
pub struct VerdictOptions {
    /// Highest level scanned for singular vectors.
    pub cutoff: usize,
    /// Also run the truncated-subspace oracle.
    pub cross_check: bool,
    pub window: TruncationWindow,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions {
            cutoff: DEFAULT_SCAN_LEVELS,
            cross_check: false,
            window: TruncationWindow::default(),
        }
    }
}

fn is_quarter_square(h: &Rational) -> bool {
    rational_sqrt(&(int(4) * h)).is_some_and(|r| r.is_integer())
}

/// Decides irreducibility of `V'_{α,β} ⊗ L(c,h)`.
pub fn verdict(alpha: &Rational, beta: &Rational, c: &Rational, h: &Rational, opts: &VerdictOptions) -> Result<Verdict> {
    let params = IsParams::new(alpha.clone(), beta.clone());
    let mut v = Verdict::new(&params, c, h);
    decide(&params, &mut v, opts)?;
    if opts.cross_check {
        oracle_cross_check(&params, &mut v, &opts.window)?;
    }
    Ok(v)
}

fn decide(params: &IsParams, v: &mut Verdict, opts: &VerdictOptions) -> Result<()> {
    let (c, h) = (v.c.clone(), v.h.clone());
    if c.is_zero() && h.is_zero() {
        v.fire("trivial-factor", "L(0,0) is one-dimensional, so the product is V'_{α,β} itself");
        v.status = Status::Irreducible;
        return Ok(());
    }
    if h.is_zero() && !is_integer(&params.alpha) {
        v.fire("vacuum-alpha-not-integral", "L_{-1} v = 0 and L_{±1}, L_{-1}L_2 relate all v_n ⊗ v");
        v.status = Status::Irreducible;
        return Ok(());
    }
    let minimal = minimal_model_of(&c);
    if h.is_zero() && minimal.is_none() {
        let weight = if params.beta == int(1) { int(1) } else { int(1) - &params.beta };
        v.fire(
            "vacuum-integral-alpha",
            format!("quotient is the Verma module of highest weight {}", fmt_rational(&weight)),
        );
        v.polynomials.push(report(&hw_lowering(), &PPoly {
            poly: Poly::linear(params.alpha.clone()),
            level: 1,
            method: Method::PhiFormula,
        })?);
        v.integral_roots = vec![0];
        v.subquotient_weights = vec![weight];
        v.status = Status::Reducible;
        return Ok(());
    }

    let cap = opts.cutoff.max(DEFAULT_LEVEL_CAP);
    let verma = ModulePresentation::verma(c.clone(), h.clone()).with_cap(cap);
    let label = match minimal {
        Some((p, q)) => label_of_weight(p, q, &h)?,
        None => None,
    };
    let mut vectors: Vec<UNeg> = Vec::new();
    if let Some(l) = label {
        for level in [l.m * l.n, (l.p - l.m) * (l.q - l.n)] {
            let found = verma.singular_vectors(level as usize)?;
            let u = found.into_iter().next().ok_or_else(|| {
                Error::Internal(format!("no singular vector at level {level} for a minimal-model weight"))
            })?;
            vectors.push(u);
        }
    } else {
        for level in 1..=opts.cutoff {
            if let Some(u) = verma.singular_vectors(level)?.into_iter().next() {
                vectors.push(u);
                break;
            }
        }
    }

    if vectors.is_empty() {
        if c == int(1) && !is_quarter_square(&h) {
            v.fire(
                "verma-factor",
                "V(1,h) is irreducible for h ≠ m²/4, and V'_{α,β} ⊗ V(c,h) is always reducible",
            );
            v.status = Status::Reducible;
        } else {
            v.fire(
                "no-singular-vector-below-cutoff",
                format!("no singular vector up to level {}; irreducibility of V(c,h) is not certified", opts.cutoff),
            );
        }
        return Ok(());
    }

    let mut polys = Vec::new();
    for u in &vectors {
        let p = p_from_singular(u, &params.alpha, &params.beta, &verma)?;
        v.polynomials.push(report(u, &p)?);
        polys.push(p);
    }
    let closure = inclusion_closure(params, &polys)?;
    let engine_note = format!(
        "inclusion closure over U_{}..U_{} with {} facts: {}",
        closure.window.0,
        closure.window.1,
        closure.facts,
        if closure.proven { "all U_n coincide" } else { "equality not derived" }
    );

    match (label, minimal) {
        (Some(l), _) => decide_minimal(params, v, &polys, l, closure.proven, engine_note),
        (None, Some(_)) => {
            v.fire("minimal-charge-outside-table", "c is a minimal-model charge but h is not in its Kac table");
            v.evidence.push(engine_note);
            if closure.proven {
                v.rules_fired.push("inclusion-engine".into());
                v.status = Status::Irreducible;
            }
            Ok(())
        }
        (None, None) => decide_single(params, v, &polys[0], closure.proven, engine_note),
    }
}

fn hw_lowering() -> UNeg {
    [(PbwMonomial::l_minus_one_power(1), Rational::one())].into_iter().collect()
}

fn report(u: &UNeg, p: &PPoly) -> Result<PolynomialReport> {
    Ok(PolynomialReport {
        level: p.level,
        singular_vector: fmt_combination(u),
        coefficients: p.poly.to_strings(),
        display: p.poly.to_string(),
        integral_roots: p.integer_roots()?,
    })
}

fn step_weight(params: &IsParams, h: &Rational, n: i64) -> Rational {
    h - &params.alpha - &params.beta - int(n) + int(1)
}

fn decide_single(params: &IsParams, v: &mut Verdict, p: &PPoly, proven: bool, engine_note: String) -> Result<()> {
    let roots = p.integer_roots()?;
    let (kept, dropped): (Vec<i64>, Vec<i64>) = roots.iter().partition(|&&n| params.exists(n - 1));
    v.fire("singular-polynomial", format!("integral roots of p: {roots:?}"));
    for n in &dropped {
        v.fire(
            "dropped-index-discard",
            format!("root {n} would relate U_{} and U_{n}, but v_{} is not in the module", n - 1, n - 1),
        );
    }
    let special = params.variant == Variant::DropVminus1 && roots.contains(&0);
    v.integral_roots = kept.clone();
    v.subquotient_weights = kept.iter().map(|&n| step_weight(params, &v.h, n)).collect();
    if special {
        v.fire("beta-one-special", "root 0 with v_{-1} missing: U_{-2}/U_0 has highest weight h+1");
        v.integral_roots.push(0);
        v.subquotient_weights.push(&v.h + int(1));
    }
    v.evidence.push(engine_note);
    let rule_reducible = !v.integral_roots.is_empty();
    v.status = match (proven, rule_reducible) {
        (true, false) => {
            v.rules_fired.push("inclusion-engine".into());
            Status::Irreducible
        }
        (false, true) => Status::Reducible,
        (true, true) => {
            v.fire("conflict", "an integral root exists but the inclusions prove all U_n equal");
            Status::Inconclusive
        }
        (false, false) => {
            v.fire("inclusion-engine-incomplete", "no integral root, but equality of all U_n was not derived");
            Status::Inconclusive
        }
    };
    Ok(())
}

fn decide_minimal(
    params: &IsParams,
    v: &mut Verdict,
    polys: &[PPoly],
    label: MinimalLabel,
    proven: bool,
    engine_note: String,
) -> Result<()> {
    let r1: BTreeSet<i64> = polys[0].integer_roots()?.into_iter().collect();
    let r2: BTreeSet<i64> = polys[1].integer_roots()?.into_iter().collect();
    let common: Vec<i64> = r1.intersection(&r2).copied().collect();
    let (kept, dropped): (Vec<i64>, Vec<i64>) = common.iter().partition(|&&n| params.exists(n - 1));
    v.fire("common-integral-root", format!("common integral roots of both polynomials: {common:?}"));
    for n in &dropped {
        v.fire(
            "dropped-index-discard",
            format!("common root {n} needs v_{}, which is not in the module", n - 1),
        );
    }
    v.integral_roots = kept.clone();
    v.subquotient_weights = kept.iter().map(|&n| step_weight(params, &v.h, n)).collect();
    v.evidence.push(engine_note);

    let pairs = reducible_pairs(&label)?;
    let matched: Vec<_> = pairs
        .iter()
        .filter(|r| r.beta == params.beta && is_integer(&(&params.alpha - &r.alpha)))
        .collect();
    let fusion_reducible = !matched.is_empty();
    let rule_reducible = !kept.is_empty();
    v.cross_checks.push(CrossCheck {
        name: "fusion-prediction".into(),
        outcome: if fusion_reducible {
            let h3: Vec<String> = matched.iter().map(|r| fmt_rational(&r.h3)).collect();
            format!("intertwining operators force reducibility (h3 = {})", h3.join(", "))
        } else {
            "no admissible triple predicts reducibility".into()
        },
        agrees: Some(fusion_reducible == rule_reducible),
    });
    v.status = match (rule_reducible, fusion_reducible, proven) {
        (true, true, false) => {
            v.rules_fired.push("fusion-prediction".into());
            Status::Reducible
        }
        (false, false, true) => {
            v.rules_fired.push("inclusion-engine".into());
            Status::Irreducible
        }
        (false, false, false) => {
            v.fire("inclusion-engine-incomplete", "no common root, but equality of all U_n was not derived");
            Status::Inconclusive
        }
        _ => {
            v.fire(
                "conflict",
                format!(
                    "common root rule says {}, fusion rules say {}, inclusions {}",
                    if rule_reducible { "reducible" } else { "irreducible" },
                    if fusion_reducible { "reducible" } else { "irreducible" },
                    if proven { "prove irreducibility" } else { "are inconclusive" }
                ),
            );
            Status::Inconclusive
        }
    };
    Ok(())
}

fn oracle_cross_check(params: &IsParams, v: &mut Verdict, window: &TruncationWindow) -> Result<()> {
    let module = ModulePresentation::irreducible(v.c.clone(), v.h.clone()).with_cap(window.level_max + DEFAULT_LEVEL_CAP);
    let t = TensorModule::new(params.clone(), Arc::new(module));
    let steps = chain_evidence(&t, window)?;
    let gaps: Vec<String> = steps
        .iter()
        .filter(|s| s.is_gap())
        .map(|s| format!("U_{} / U_{}", s.upper, s.lower))
        .collect();
    let gap = !gaps.is_empty();
    v.cross_checks.push(CrossCheck {
        name: "truncated-oracle".into(),
        outcome: if gap {
            format!("strict steps (evidence only): {}", gaps.join(", "))
        } else {
            "no strict step inside the window (evidence only)".into()
        },
        agrees: match v.status {
            Status::Inconclusive => None,
            s => Some(gap == (s == Status::Reducible)),
        },
    });
    Ok(())
}

/// Operator type `(h₃; h₁, h₂)` suggested by a reducible verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntertwinerCandidate {
    #[serde(serialize_with = "ser_rational")]
    pub h1: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub h2: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub h3: Rational,
    pub note: String,
}

/// Inverts `α = h₁ + h₂ - h₃`, `β = 1 - h₁` on the subquotients of a
/// reducible verdict. These are indications, not existence proofs.
pub fn predict_intertwiners(v: &Verdict) -> Result<Vec<IntertwinerCandidate>> {
    if v.status != Status::Reducible {
        return Err(Error::invalid("verdict", "intertwiners are only suggested by reducible products"));
    }
    let h1 = int(1) - &v.beta;
    let note = if h1.is_zero() {
        "h1 = 0: module or transposed operator".to_string()
    } else {
        "indicated, not proven".to_string()
    };
    Ok(v.subquotient_weights
        .iter()
        .map(|h3| IntertwinerCandidate {
            h1: h1.clone(),
            h2: v.h.clone(),
            h3: h3.clone(),
            note: note.clone(),
        })
        .collect())
}

/// `v_n ⊗ v` in a fresh tensor product, for quick experiments.
pub fn tensor_with_irreducible(alpha: &Rational, beta: &Rational, c: &Rational, h: &Rational) -> TensorModule {
    let module = ModulePresentation::irreducible(c.clone(), h.clone());
    TensorModule::new(IsParams::new(alpha.clone(), beta.clone()), Arc::new(module))
}

/// Convenience for tests and replay: an element from a word expression applied to `v_n ⊗ v`.
pub fn word_on_generator(t: &TensorModule, expr: &str, n: i64) -> Result<TensorElement> {
    t.apply(&WordExpr::parse(expr)?, &t.generator(n)?)
}
