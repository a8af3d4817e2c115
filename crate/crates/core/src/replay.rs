//! Replays the worked computations behind the main results: explicit
//! identities in tensor products, verdict grids around the exceptional
//! parameters, the minimal-model operator lists and the `c = 1` examples.
//!
//! Every case is deterministic (fixed seeds) and exact, so a residual is
//! either `0` or a concrete nonzero vector.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::{admissible, c1_fusion_exists, central_charge, labels, reducible_pairs, C1Fusion};
use crate::intermediate::IsParams;
use crate::linalg::{add_scaled, add_term};
use crate::reducibility::{closed_form_roots, p_from_singular, predict_intertwiners, verdict, RootValue, Status, VerdictOptions};
use crate::scalar::{fmt_rational, int, is_integer, rat, Poly, Rational};
use crate::tensor::{chain_evidence, fmt_tensor, TensorElement, TensorModule, TruncationWindow};
use crate::verma::{singular_vectors, ModulePresentation};
use crate::words::{PbwMonomial, UNeg, WordExpr};

/// Outcome of one replayed case.
#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub id: String,
    /// The identity or statement being replayed.
    pub statement: String,
    pub passed: bool,
    /// `"0"` on success, otherwise the first nonzero difference or mismatch.
    pub residual: String,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReplayReport {
    pub cases: Vec<CaseReport>,
    pub passed: usize,
    pub failed: usize,
}

impl ReplayReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

type CaseFn = fn(&mut Outcome) -> Result<()>;

struct Case {
    id: &'static str,
    statement: &'static str,
    run: CaseFn,
}

const CASES: &[Case] = &[
    Case {
        id: "sg-identity",
        statement: "(-1/(n+α+2β) s₂L₁ + 2(n+1+α)L₋₁)(v_n⊗v) = -((n+1+α)(n+α) - (4h+2)/3 (n+1+α-β)) v_{n-1}⊗v \
                    in V_{α,β} ⊗ V(c,h)/⟨s₂⟩, c = (10h-16h²)/(1+2h)",
        run: sg_identity,
    },
    Case {
        id: "p1-identities",
        statement: "in V_{0,β} ⊗ L(-22/5,0) with s = L₋₂² - 3/5 L₋₄: \
                    s(v₃⊗v) + 2(3-β)L₋₂(v₁⊗v) = (β-6/5)(1-β) v₋₁⊗v and \
                    s(v₂⊗v) - 2(β-2)L₋₂(v₀⊗v) = (6/5-β)(β+1) v₋₂⊗v",
        run: p1_identities,
    },
    Case {
        id: "p1-quotient-relations",
        statement: "in V_{0,6/5} ⊗ L(-22/5,0): (L₋₁² - 2/5 L₋₂)(v₋₁⊗v) = -s(v₁⊗v) and \
                    (L₋₁³ - 8/5 L₋₂L₋₁ - 4/25 L₋₃)(v₋₁⊗v) = -3/5 s(v₀⊗v) - 2/5 L₋₁s(v₁⊗v) ∈ U₀",
        run: p1_quotient_relations,
    },
    Case {
        id: "p2-identities",
        statement: "in V_{0,β} ⊗ L(1/2,0) with s' = 64L₋₂³ + 93L₋₃² - 264L₋₄L₋₂ - 108L₋₆, the two level-6 relations \
                    ending in a multiple of (β-1)(β-1/2)(β-15/16) v₋₁⊗v and of (β+2)(β-1/2)(β-15/16) v₋₂⊗v",
        run: p2_identities,
    },
    Case {
        id: "p2-beta-half",
        statement: "in V_{0,1/2} ⊗ L(1/2,0): (L₋₃ - 4/5 L₋₂L₋₁)(v₋₁⊗v) ∈ U₀ and \
                    (L₋₁² - 4/3 L₋₂)(v₋₁⊗v) = -4/3 v₋₁⊗L₋₂v, a nonzero multiple of s'(v₃⊗v) + 480L₋₂²(v₁⊗v) + 372L₋₃(v₀⊗v) - 660L₋₄(v₁⊗v)",
        run: p2_beta_half,
    },
    Case {
        id: "p2-beta-15-16",
        statement: "in V_{0,15/16} ⊗ L(1/2,0): (L₋₁² - 3/4 L₋₂)(v₋₁⊗v) ∈ U₀ and (16L₋₂² - 24L₋₃L₋₁ - 9L₋₄)(v₋₁⊗v) ∈ U₀",
        run: p2_beta_15_16,
    },
    Case {
        id: "p1-verdicts",
        statement: "V'_{α,β} ⊗ L(-22/5,0) is reducible exactly for (α,β) = (0,6/5) mod ℤ, with U₋₁/U₀ of weight -1/5",
        run: p1_verdicts,
    },
    Case {
        id: "p2-verdicts",
        statement: "V'_{α,β} ⊗ L(1/2,0) is reducible exactly for (0,1/2) and (0,15/16) mod ℤ, with weights 1/2 and 1/16",
        run: p2_verdicts,
    },
    Case {
        id: "p3-verdicts",
        statement: "reducible exactly at (-2/5,6/5), (-1/5,6/5) for L(-22/5,-1/5); (0,1/2), (1/2,15/16) for L(1/2,1/2); \
                    (1/8,15/16), (-3/8,15/16), (1/2,1/2) for L(1/2,1/16)",
        run: p3_verdicts,
    },
    Case {
        id: "hom-list",
        statement: "the homomorphisms V'_{α,β} ⊗ L(c,h₂) → L(c,h₃) forced by operators with h₁ ≠ 0 for c = -22/5 and c = 1/2",
        run: hom_list,
    },
    Case {
        id: "yanglee-fusion",
        statement: "for c = -22/5 the operator types are the module, transposed and adjoint ones plus (-1/5; -1/5, -1/5)",
        run: yanglee_fusion,
    },
    Case {
        id: "ising-fusion",
        statement: "for c = 1/2 the operator types are the module, transposed and adjoint ones plus \
                    (1/16; 1/2, 1/16), (1/16; 1/16, 1/2), (1/2; 1/16, 1/16)",
        run: ising_fusion,
    },
    Case {
        id: "c1-h1",
        statement: "V'_{0,β} ⊗ L(1,1): p has roots ±2√(1-β) and 1, so 1-β = m²/4 gives subquotients of weights 1-β, (m/2-1)², (m/2+1)²; \
                    V'_{0,1-n} ⊗ L(1,1) is reducible for n ∈ ℕ",
        run: c1_h1,
    },
    Case {
        id: "c1-h-quarter",
        statement: "for V(1,1/4) the level-2 polynomial has roots -α ± √(1-β)",
        run: c1_h_quarter,
    },
    Case {
        id: "theorem-n",
        statement: "for c ≠ c_{p,q} and α ∈ ℤ, V'_{α,β} ⊗ L(c,0) is reducible with a Verma quotient of weight 1-β (1 when β = 1)",
        run: vacuum_integral_alpha,
    },
    Case {
        id: "prop-j",
        statement: "for α ∉ ℤ, V'_{α,β} ⊗ L(c,0) is irreducible: L₋₁(v_n⊗v) = -(n+α)v_{n-1}⊗v, L₁(v_n⊗v) = -(n+α+2β)v_{n+1}⊗v, \
                    and L₋₁L₂(v_n⊗v) = β(n+2+α)v_{n+1}⊗v when n+α+2β = 0",
        run: vacuum_non_integral_alpha,
    },
];

/// Identifiers of all cases, in report order.
pub fn case_ids() -> Vec<&'static str> {
    CASES.iter().map(|c| c.id).collect()
}

/// Collects checks for one case; the first failure becomes the residual.
#[derive(Default)]
struct Outcome {
    failure: Option<String>,
    details: Vec<String>,
}

impl Outcome {
    fn zero(&mut self, label: impl Into<String>, x: &TensorElement) {
        let label = label.into();
        if x.is_empty() {
            self.details.push(format!("{label}: residual 0"));
        } else {
            self.fail(format!("{label}: residual {}", fmt_tensor(x)));
        }
    }

    fn check(&mut self, ok: bool, label: impl Into<String>) {
        let label = label.into();
        if ok {
            self.details.push(label);
        } else {
            self.fail(label);
        }
    }

    fn fail(&mut self, msg: String) {
        self.details.push(format!("FAILED {msg}"));
        if self.failure.is_none() {
            self.failure = Some(msg);
        }
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.details.push(msg.into());
    }
}

fn run(case: &Case) -> CaseReport {
    let mut out = Outcome::default();
    if let Err(e) = (case.run)(&mut out) {
        out.fail(format!("error: {e}"));
    }
    CaseReport {
        id: case.id.to_string(),
        statement: case.statement.to_string(),
        passed: out.failure.is_none(),
        residual: out.failure.unwrap_or_else(|| "0".to_string()),
        details: out.details,
    }
}

/// Runs one case by id.
pub fn run_case(id: &str) -> Result<CaseReport> {
    CASES
        .iter()
        .find(|c| c.id == id)
        .map(run)
        .ok_or_else(|| Error::invalid("case", format!("unknown case `{id}`; known cases: {}", case_ids().join(", "))))
}

/// Runs every case.
pub fn run_all() -> ReplayReport {
    let cases: Vec<CaseReport> = CASES.iter().map(run).collect();
    let passed = cases.iter().filter(|c| c.passed).count();
    ReplayReport {
        failed: cases.len() - passed,
        passed,
        cases,
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_rational(r: &mut impl Rng) -> Rational {
    rat(r.gen_range(-30..=30), r.gen_range(1..=9))
}

fn tensor(alpha: Rational, beta: Rational, module: ModulePresentation) -> TensorModule {
    TensorModule::new(IsParams::full(alpha, beta), Arc::new(module))
}

/// `expr (v_n ⊗ v)`.
fn on(t: &TensorModule, expr: &str, n: i64) -> Result<TensorElement> {
    t.apply(&WordExpr::parse(expr)?, &t.generator(n)?)
}

/// `Σ c_i x_i`.
fn combine(terms: &[(Rational, &TensorElement)]) -> TensorElement {
    let mut out = TensorElement::new();
    for (c, x) in terms {
        add_scaled(&mut out, x, c);
    }
    out
}

fn gen(t: &TensorModule, n: i64) -> Result<TensorElement> {
    t.generator(n)
}

fn sg_identity(out: &mut Outcome) -> Result<()> {
    let mut r = rng(0x5e_01);
    let mut done = 0;
    while done < 5 {
        let (h, alpha, beta) = (random_rational(&mut r), random_rational(&mut r), random_rational(&mut r));
        let n: i64 = r.gen_range(-6..=6);
        let d = int(n) + &alpha + int(2) * &beta;
        if (int(1) + int(2) * &h).is_zero() || d.is_zero() {
            continue;
        }
        let c = (int(10) * &h - int(16) * &h * &h) / (int(1) + int(2) * &h);
        let k = (int(4) * &h + int(2)) / int(3);
        let s2 = WordExpr::parse("L-1^2")?.plus(WordExpr::parse("L-2")?.scale(&-&k));
        let u: UNeg = uneg_of(&s2)?;
        let t = tensor(alpha.clone(), beta.clone(), ModulePresentation::generated(c.clone(), h.clone(), vec![u])?);
        let l1 = t.act(1, &gen(&t, n)?)?;
        let s2l1 = t.apply(&s2, &l1)?;
        let lm1 = t.act(-1, &gen(&t, n)?)?;
        let a = int(n) + int(1) + &alpha;
        let p = &a * (int(n) + &alpha) - &k * (&a - &beta);
        let lhs = combine(&[(-(int(1) / &d), &s2l1), (int(2) * &a, &lm1)]);
        let diff = combine(&[(int(1), &lhs), (p, &gen(&t, n - 1)?)]);
        out.zero(
            format!("h={}, α={}, β={}, n={n}", fmt_rational(&h), fmt_rational(&alpha), fmt_rational(&beta)),
            &diff,
        );
        done += 1;
    }
    Ok(())
}

fn uneg_of(expr: &WordExpr) -> Result<UNeg> {
    let mut out = UNeg::new();
    for (c, w) in &expr.terms {
        let mut parts = Vec::new();
        for &k in w.indices() {
            if k >= 0 {
                return Err(Error::invalid("vector", "expected a combination of lowering operators"));
            }
            parts.push((-k) as u32);
        }
        add_term(&mut out, PbwMonomial::new(parts)?, c.clone());
    }
    Ok(out)
}

const S_YL: &str = "L-2^2 - 3/5*L-4";
const S_ISING: &str = "64*L-2^3 + 93*L-3^2 - 264*L-4*L-2 - 108*L-6";

fn p1_identities(out: &mut Outcome) -> Result<()> {
    let mut r = rng(0x91);
    let module = Arc::new(ModulePresentation::irreducible(rat(-22, 5), int(0)));
    for _ in 0..5 {
        let beta = random_rational(&mut r);
        let t = TensorModule::new(IsParams::full(int(0), beta.clone()), module.clone());
        let first = combine(&[
            (int(1), &on(&t, S_YL, 3)?),
            (int(2) * (int(3) - &beta), &on(&t, "L-2", 1)?),
            (-((&beta - rat(6, 5)) * (int(1) - &beta)), &gen(&t, -1)?),
        ]);
        out.zero(format!("β={}, start v₃", fmt_rational(&beta)), &first);
        let second = combine(&[
            (int(1), &on(&t, S_YL, 2)?),
            (-(int(2) * (&beta - int(2))), &on(&t, "L-2", 0)?),
            (-((rat(6, 5) - &beta) * (&beta + int(1))), &gen(&t, -2)?),
        ]);
        out.zero(format!("β={}, start v₂", fmt_rational(&beta)), &second);
    }
    Ok(())
}

fn p1_quotient_relations(out: &mut Outcome) -> Result<()> {
    let t = tensor(int(0), rat(6, 5), ModulePresentation::irreducible(rat(-22, 5), int(0)));
    let first = combine(&[(int(1), &on(&t, "L-1^2 - 2/5*L-2", -1)?), (int(1), &on(&t, S_YL, 1)?)]);
    out.zero("level 2", &first);
    // As printed, the right-hand side applies the level-2 vector to v₀⊗v and v₁⊗v, which has the
    // wrong weight. The relation that holds keeps the 3:2 ratio of the printed coefficients with s.
    let lhs = on(&t, "L-1^3 - 8/5*L-2*L-1 - 4/25*L-3", -1)?;
    let second = combine(&[
        (int(1), &lhs),
        (rat(3, 5), &on(&t, S_YL, 0)?),
        (rat(2, 5), &on(&t, "L-1*L-2^2 - 3/5*L-1*L-4", 1)?),
    ]);
    out.zero("level 3: (L₋₁³ - 8/5 L₋₂L₋₁ - 4/25 L₋₃)(v₋₁⊗v) + 3/5 s(v₀⊗v) + 2/5 L₋₁s(v₁⊗v)", &second);
    let u0 = t.cyclic_subspace(0, &TruncationWindow::default())?;
    out.check(u0.contains(&lhs).is_some(), "level 3 vector lies in U₀");
    Ok(())
}

fn p2_identities(out: &mut Outcome) -> Result<()> {
    let mut r = rng(0x92);
    let module = Arc::new(ModulePresentation::irreducible(rat(1, 2), int(0)));
    let (half, f1516) = (rat(1, 2), rat(15, 16));
    out.note("right-hand scalars are 64(β-1)(β-1/2)(β-15/16) and 64(β+2)(β-1/2)(β-15/16): printed with factors -2 and 2, same roots");
    for _ in 0..5 {
        let b = random_rational(&mut r);
        let t = TensorModule::new(IsParams::full(int(0), b.clone()), module.clone());
        let first = combine(&[
            (int(1), &on(&t, S_ISING, 5)?),
            (int(192) * (int(5) - &b), &on(&t, "L-2^2", 3)?),
            (int(-264) * (int(5) - &b), &on(&t, "L-4", 3)?),
            (int(186) * (int(5) - int(2) * &b), &on(&t, "L-3", 2)?),
            (
                int(-264) * (int(5) - int(3) * &b) + int(192) * (int(5) - &b) * (int(3) - &b),
                &on(&t, "L-2", 1)?,
            ),
            (int(-64) * (&b - int(1)) * (&b - &half) * (&b - &f1516), &gen(&t, -1)?),
        ]);
        out.zero(format!("β={}, start v₅", fmt_rational(&b)), &first);
        // The last two terms act by L₋₂ on v₀⊗v; with L₋₁ the weights would not match.
        let second = combine(&[
            (int(1), &on(&t, S_ISING, 4)?),
            (int(192) * (int(4) - &b), &on(&t, "L-2^2", 2)?),
            (int(-264) * (int(4) - &b), &on(&t, "L-4", 2)?),
            (int(186) * (int(4) - int(2) * &b), &on(&t, "L-3", 1)?),
            (
                int(-264) * (int(4) - int(3) * &b) + int(192) * (int(4) - &b) * (int(2) - &b),
                &on(&t, "L-2", 0)?,
            ),
            (int(-64) * (&b + int(2)) * (&b - &half) * (&b - &f1516), &gen(&t, -2)?),
        ]);
        out.zero(format!("β={}, start v₄", fmt_rational(&b)), &second);
    }
    Ok(())
}

fn p2_beta_half(out: &mut Outcome) -> Result<()> {
    let t = tensor(int(0), rat(1, 2), ModulePresentation::irreducible(rat(1, 2), int(0)));
    let u0 = t.cyclic_subspace(0, &TruncationWindow::default())?;
    // Nonzero (it equals v₋₁⊗L₋₃v - 4/5 v₋₂⊗L₋₂v), but it lies in U₀, which is what the argument needs.
    let x = on(&t, "L-3 - 4/5*L-2*L-1", -1)?;
    let expected = combine(&[
        (int(1), &t.basis_element(-1, PbwMonomial::new(vec![3])?)?),
        (rat(-4, 5), &t.basis_element(-2, PbwMonomial::new(vec![2])?)?),
    ]);
    out.zero("(L₋₃ - 4/5 L₋₂L₋₁)(v₋₁⊗v) - (v₋₁⊗L₋₃v - 4/5 v₋₂⊗L₋₂v)", &combine(&[(int(1), &x), (int(-1), &expected)]));
    out.check(u0.contains(&x).is_some(), "(L₋₃ - 4/5 L₋₂L₋₁)(v₋₁⊗v) ∈ U₀");
    let lhs = on(&t, "L-1^2 - 4/3*L-2", -1)?;
    let v_l2 = t.basis_element(-1, PbwMonomial::new(vec![2])?)?;
    out.zero(
        "(L₋₁² - 4/3 L₋₂)(v₋₁⊗v) + 4/3 v₋₁⊗L₋₂v",
        &combine(&[(int(1), &lhs), (rat(4, 3), &v_l2)]),
    );
    // With s₆ = s' the right-hand side is a fixed multiple of the left-hand side; recover it
    // from one component and check the rest.
    let rhs = combine(&[
        (int(1), &on(&t, S_ISING, 3)?),
        (int(480), &on(&t, "L-2^2", 1)?),
        (int(372), &on(&t, "L-3", 0)?),
        (int(-660), &on(&t, "L-4", 1)?),
    ]);
    let Some((key, c)) = lhs.iter().next() else {
        out.fail("(L₋₁² - 4/3 L₋₂)(v₋₁⊗v) vanishes".into());
        return Ok(());
    };
    let mu = rhs.get(key).cloned().unwrap_or_else(Rational::zero) / c;
    out.note(format!(
        "s'(v₃⊗v) + 480L₋₂²(v₁⊗v) + 372L₋₃(v₀⊗v) - 660L₋₄(v₁⊗v) = {} (L₋₁² - 4/3 L₋₂)(v₋₁⊗v); printed with factor 1",
        fmt_rational(&mu)
    ));
    out.check(!mu.is_zero(), "the multiple is nonzero, so the vector lies in U₀");
    out.zero("residual after removing the multiple", &combine(&[(int(1), &rhs), (-mu, &lhs)]));
    Ok(())
}

fn p2_beta_15_16(out: &mut Outcome) -> Result<()> {
    let t = tensor(int(0), rat(15, 16), ModulePresentation::irreducible(rat(1, 2), int(0)));
    let u0 = t.cyclic_subspace(0, &TruncationWindow::default())?;
    for expr in ["L-1^2 - 3/4*L-2", "16*L-2^2 - 24*L-3*L-1 - 9*L-4"] {
        let x = on(&t, expr, -1)?;
        match u0.contains(&x) {
            Some(cert) => {
                let back = combine(&[(int(1), &u0.evaluate(&cert)), (int(-1), &x)]);
                out.zero(format!("({expr})(v₋₁⊗v) ∈ U₀, certificate of {} terms", cert.coordinates.len()), &back);
            }
            None => out.fail(format!("({expr})(v₋₁⊗v) not found in U₀ inside the window")),
        }
    }
    let gap = u0.contains(&gen(&t, -1)?).is_none();
    out.check(gap, "v₋₁⊗v ∉ U₀ inside the window");
    Ok(())
}

struct GridPoint {
    alpha: Rational,
    beta: Rational,
    weight: Option<Rational>,
}

fn grid(reducible: &[(Rational, Rational, Rational)], others: &[(Rational, Rational)]) -> Vec<GridPoint> {
    let mut out: Vec<GridPoint> = reducible
        .iter()
        .map(|(a, b, w)| GridPoint {
            alpha: a.clone(),
            beta: b.clone(),
            weight: Some(w.clone()),
        })
        .collect();
    out.extend(others.iter().map(|(a, b)| GridPoint {
        alpha: a.clone(),
        beta: b.clone(),
        weight: None,
    }));
    out
}

fn check_grid(out: &mut Outcome, c: &Rational, h: &Rational, points: &[GridPoint]) -> Result<()> {
    let opts = VerdictOptions::default();
    for p in points {
        let v = verdict(&p.alpha, &p.beta, c, h, &opts)?;
        let label = format!(
            "(α,β) = ({}, {}): {:?}",
            fmt_rational(&p.alpha),
            fmt_rational(&p.beta),
            v.status
        );
        match &p.weight {
            Some(w) => out.check(
                v.status == Status::Reducible && v.subquotient_weights.contains(w),
                format!("{label}, weights {:?}", v.subquotient_weights.iter().map(fmt_rational).collect::<Vec<_>>()),
            ),
            None => out.check(v.status == Status::Irreducible, label),
        }
    }
    Ok(())
}

fn r(n: i64, d: i64) -> Rational {
    rat(n, d)
}

fn p1_verdicts(out: &mut Outcome) -> Result<()> {
    let w = r(-1, 5);
    let red = [(r(0, 1), r(6, 5), w.clone()), (r(1, 1), r(6, 5), w.clone()), (r(-3, 1), r(6, 5), w)];
    let others = [
        (r(0, 1), r(0, 1)),
        (r(0, 1), r(1, 1)),
        (r(0, 1), r(-1, 1)),
        (r(0, 1), r(1, 2)),
        (r(0, 1), r(2, 1)),
        (r(0, 1), r(3, 1)),
        (r(0, 1), r(11, 5)),
        (r(0, 1), r(1, 5)),
        (r(0, 1), r(-6, 5)),
        (r(0, 1), r(15, 16)),
        (r(1, 2), r(6, 5)),
        (r(1, 3), r(6, 5)),
        (r(-2, 5), r(6, 5)),
        (r(1, 5), r(6, 5)),
        (r(2, 1), r(1, 3)),
        (r(1, 2), r(0, 1)),
        (r(1, 2), r(1, 1)),
        (r(2, 3), r(-1, 2)),
        (r(-7, 4), r(3, 1)),
        (r(0, 1), r(4, 5)),
        (r(0, 1), r(7, 5)),
        (r(5, 1), r(-2, 1)),
    ];
    check_grid(out, &rat(-22, 5), &int(0), &grid(&red, &others))
}

fn p2_verdicts(out: &mut Outcome) -> Result<()> {
    let (w1, w2) = (r(1, 2), r(1, 16));
    let red = [
        (r(0, 1), r(1, 2), w1.clone()),
        (r(0, 1), r(15, 16), w2.clone()),
        (r(1, 1), r(1, 2), w1),
        (r(-2, 1), r(15, 16), w2),
    ];
    let others = [
        (r(0, 1), r(0, 1)),
        (r(0, 1), r(1, 1)),
        (r(0, 1), r(-1, 1)),
        (r(0, 1), r(2, 1)),
        (r(0, 1), r(1, 16)),
        (r(0, 1), r(3, 2)),
        (r(0, 1), r(6, 5)),
        (r(1, 2), r(1, 2)),
        (r(1, 2), r(15, 16)),
        (r(1, 3), r(1, 2)),
        (r(0, 1), r(-1, 2)),
        (r(0, 1), r(1, 4)),
        (r(0, 1), r(3, 4)),
        (r(0, 1), r(31, 16)),
        (r(2, 1), r(7, 16)),
        (r(1, 16), r(15, 16)),
        (r(-1, 2), r(1, 1)),
        (r(3, 4), r(0, 1)),
        (r(0, 1), r(5, 1)),
        (r(0, 1), r(-15, 16)),
        (r(4, 1), r(1, 3)),
    ];
    check_grid(out, &rat(1, 2), &int(0), &grid(&red, &others))
}

/// Exceptional points of a module together with their index-shifted copies,
/// plus points sharing one coordinate with an exceptional point.
fn exceptional_grid(points: &[(Rational, Rational, Rational)]) -> Vec<GridPoint> {
    let mut red = Vec::new();
    for (a, b, w) in points {
        red.push((a.clone(), b.clone(), w.clone()));
        red.push((a + int(1), b.clone(), w.clone()));
    }
    let excluded: BTreeSet<(Rational, Rational)> = points
        .iter()
        .map(|(a, b, _)| (a - a.floor(), b.clone()))
        .collect();
    let mut others = Vec::new();
    let betas = [int(0), int(1), rat(1, 2), rat(15, 16), rat(6, 5), int(2), rat(-1, 3)];
    let alphas = [int(0), rat(1, 2), rat(1, 8), rat(-2, 5), rat(-1, 5), rat(1, 3), rat(-3, 8)];
    for (a, b, _) in points {
        for beta in &betas {
            others.push((a.clone(), beta.clone()));
        }
        for alpha in &alphas {
            others.push((alpha.clone(), b.clone()));
        }
    }
    others.retain(|(a, b)| !excluded.contains(&(a - a.floor(), b.clone())));
    others.sort();
    others.dedup();
    grid(&red, &others)
}

fn p3_verdicts(out: &mut Outcome) -> Result<()> {
    let yl = exceptional_grid(&[(r(-2, 5), r(6, 5), r(0, 1)), (r(-1, 5), r(6, 5), r(-1, 5))]);
    check_grid(out, &rat(-22, 5), &rat(-1, 5), &yl)?;
    let half = exceptional_grid(&[(r(0, 1), r(1, 2), r(0, 1)), (r(1, 2), r(15, 16), r(1, 16))]);
    check_grid(out, &rat(1, 2), &rat(1, 2), &half)?;
    let sixteenth = exceptional_grid(&[
        (r(1, 8), r(15, 16), r(0, 1)),
        (r(-3, 8), r(15, 16), r(1, 2)),
        (r(1, 2), r(1, 2), r(1, 16)),
    ]);
    check_grid(out, &rat(1, 2), &rat(1, 16), &sixteenth)
}

/// `(α mod ℤ, β, c, h₂, h₃)`.
type Hom = (Rational, Rational, Rational, Rational, Rational);

fn frac(a: &Rational) -> Rational {
    a - a.floor()
}

/// The homomorphisms listed for the Yang-Lee and Ising models.
pub fn listed_homomorphisms() -> Vec<(Rational, Rational, Rational, Rational, Rational)> {
    let (yl, is) = (rat(-22, 5), rat(1, 2));
    vec![
        (int(0), rat(6, 5), yl.clone(), int(0), rat(-1, 5)),
        (rat(-2, 5), rat(6, 5), yl.clone(), rat(-1, 5), int(0)),
        (rat(-1, 5), rat(6, 5), yl, rat(-1, 5), rat(-1, 5)),
        (int(0), rat(1, 2), is.clone(), int(0), rat(1, 2)),
        (int(0), rat(15, 16), is.clone(), int(0), rat(1, 16)),
        (int(0), rat(1, 2), is.clone(), rat(1, 2), int(0)),
        (rat(1, 2), rat(15, 16), is.clone(), rat(1, 2), rat(1, 16)),
        (rat(1, 8), rat(15, 16), is.clone(), rat(1, 16), int(0)),
        (rat(1, 2), rat(1, 2), is.clone(), rat(1, 16), rat(1, 16)),
        (rat(-3, 8), rat(15, 16), is, rat(1, 16), rat(1, 2)),
    ]
}

/// All `(α mod ℤ, β, c, h₂, h₃)` produced by the reducibility pairs of a model.
pub fn computed_homomorphisms(p: i64, q: i64) -> Result<BTreeSet<Hom>> {
    let c = central_charge(p, q)?;
    let mut out = BTreeSet::new();
    for l2 in labels(p, q)? {
        for pair in reducible_pairs(&l2)? {
            out.insert((frac(&pair.alpha), pair.beta.clone(), c.clone(), l2.weight(), pair.h3.clone()));
        }
    }
    Ok(out)
}

fn hom_list(out: &mut Outcome) -> Result<()> {
    let expected: BTreeSet<Hom> = listed_homomorphisms()
        .into_iter()
        .map(|(a, b, c, h2, h3)| (frac(&a), b, c, h2, h3))
        .collect();
    let mut computed = computed_homomorphisms(2, 5)?;
    computed.extend(computed_homomorphisms(3, 4)?);
    out.note(format!("{} listed, {} computed", expected.len(), computed.len()));
    for e in expected.difference(&computed) {
        out.fail(format!("listed but not computed: {}", fmt_hom(e)));
    }
    for e in computed.difference(&expected) {
        out.fail(format!("computed but not listed: {}", fmt_hom(e)));
    }
    Ok(())
}

fn fmt_hom(h: &Hom) -> String {
    format!(
        "V'_{{{},{}}} ⊗ L({},{}) → L({},{})",
        fmt_rational(&h.0),
        fmt_rational(&h.1),
        fmt_rational(&h.2),
        fmt_rational(&h.3),
        fmt_rational(&h.2),
        fmt_rational(&h.4)
    )
}

/// Operator types `(h₃; h₁, h₂)` of a minimal model.
pub fn operator_types(p: i64, q: i64) -> Result<BTreeSet<(Rational, Rational, Rational)>> {
    let ls = labels(p, q)?;
    let mut out = BTreeSet::new();
    for l1 in &ls {
        for l2 in &ls {
            for l3 in &ls {
                if admissible(l1, l2, l3)? {
                    out.insert((l3.weight(), l1.weight(), l2.weight()));
                }
            }
        }
    }
    Ok(out)
}

fn always_existing(weights: &[Rational]) -> BTreeSet<(Rational, Rational, Rational)> {
    let mut out = BTreeSet::new();
    for h in weights {
        out.insert((h.clone(), int(0), h.clone()));
        out.insert((h.clone(), h.clone(), int(0)));
        out.insert((int(0), h.clone(), h.clone()));
    }
    out
}

fn compare_types(out: &mut Outcome, p: i64, q: i64, expected: BTreeSet<(Rational, Rational, Rational)>) -> Result<()> {
    let computed = operator_types(p, q)?;
    out.note(format!("{} operator types", computed.len()));
    let show = |t: &(Rational, Rational, Rational)| {
        format!("({}; {}, {})", fmt_rational(&t.0), fmt_rational(&t.1), fmt_rational(&t.2))
    };
    for t in expected.difference(&computed) {
        out.fail(format!("listed type {} is not admissible", show(t)));
    }
    for t in computed.difference(&expected) {
        out.fail(format!("admissible type {} is not listed", show(t)));
    }
    Ok(())
}

fn yanglee_fusion(out: &mut Outcome) -> Result<()> {
    let h = rat(-1, 5);
    let mut expected = always_existing(&[int(0), h.clone()]);
    expected.insert((h.clone(), h.clone(), h));
    compare_types(out, 2, 5, expected)
}

fn ising_fusion(out: &mut Outcome) -> Result<()> {
    let (e, s) = (rat(1, 2), rat(1, 16));
    let mut expected = always_existing(&[int(0), e.clone(), s.clone()]);
    expected.insert((s.clone(), e.clone(), s.clone()));
    expected.insert((s.clone(), s.clone(), e.clone()));
    expected.insert((e, s.clone(), s));
    compare_types(out, 3, 4, expected)
}

fn c1_h1(out: &mut Outcome) -> Result<()> {
    let opts = VerdictOptions::default();
    for m in [1i64, 3, 4, 5] {
        let beta = int(1) - rat(m * m, 4);
        let v = verdict(&int(0), &beta, &int(1), &int(1), &opts)?;
        let weights: BTreeSet<Rational> = v.subquotient_weights.iter().cloned().collect();
        let half = rat(m, 2);
        let expected: BTreeSet<Rational> = [
            int(1) - &beta,
            (&half - int(1)) * (&half - int(1)),
            (&half + int(1)) * (&half + int(1)),
        ]
        .into_iter()
        .collect();
        let roots: BTreeSet<i64> = v.integral_roots.iter().copied().collect();
        out.check(
            v.status == Status::Reducible && weights == expected && roots == [1, m, -m].into_iter().collect(),
            format!(
                "m={m}: roots {:?}, weights {:?} (root {m} gives (m/2-1)², root {} gives (m/2+1)²)",
                v.integral_roots,
                v.subquotient_weights.iter().map(fmt_rational).collect::<Vec<_>>(),
                -m
            ),
        );
        if m % 2 == 0 {
            for cand in predict_intertwiners(&v)? {
                let exists = c1_fusion_exists(&cand.h1, &cand.h2, &cand.h3)?;
                out.check(
                    exists == C1Fusion::Exists,
                    format!(
                        "m={m}: type ({}; {}, {}) {:?}",
                        fmt_rational(&cand.h3),
                        fmt_rational(&cand.h1),
                        fmt_rational(&cand.h2),
                        exists
                    ),
                );
            }
        }
    }
    for n in 1..=5 {
        let v = verdict(&int(0), &int(1 - n), &int(1), &int(1), &opts)?;
        out.check(
            v.status == Status::Reducible,
            format!(
                "V'_{{0,{}}} ⊗ L(1,1): {:?}, weights {:?}",
                1 - n,
                v.status,
                v.subquotient_weights.iter().map(fmt_rational).collect::<Vec<_>>()
            ),
        );
    }
    Ok(())
}

fn c1_h_quarter(out: &mut Outcome) -> Result<()> {
    let h = rat(1, 4);
    let u = singular_vectors(&int(1), &h, 2)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("V(1,1/4) has no level-2 singular vector".into()))?;
    let verma = ModulePresentation::verma(int(1), h.clone());
    let mut r = rng(0xc1);
    for _ in 0..5 {
        let alpha = random_rational(&mut r);
        let k = random_rational(&mut r);
        let beta = int(1) - &k * &k;
        let p = p_from_singular(&u, &alpha, &beta, &verma)?;
        let expected = Poly::from_roots(&[-&alpha + &k, -&alpha - &k]);
        let closed: BTreeSet<Rational> = closed_form_roots(2, &h, &alpha, &beta)?
            .into_iter()
            .filter_map(|r| match r {
                RootValue::Rational(x) => Some(x),
                RootValue::Irrational { .. } => None,
            })
            .collect();
        let want: BTreeSet<Rational> = [-&alpha + &k, -&alpha - &k].into_iter().collect();
        out.check(
            p.poly == expected && closed == want,
            format!("α={}, √(1-β)={}: p = {}", fmt_rational(&alpha), fmt_rational(&k), p.poly),
        );
    }
    let v = verdict(&int(0), &int(-3), &int(1), &h, &VerdictOptions::default())?;
    out.check(
        v.status == Status::Reducible && v.integral_roots == vec![-2, 2],
        format!("V'_{{0,-3}} ⊗ L(1,1/4): {:?}, roots {:?}", v.status, v.integral_roots),
    );
    Ok(())
}

fn vacuum_integral_alpha(out: &mut Outcome) -> Result<()> {
    let c = int(-2);
    let opts = VerdictOptions::default();
    for (alpha, beta) in [(int(0), rat(1, 3)), (int(2), rat(-5, 7)), (int(-1), int(1)), (int(0), int(0)), (int(3), int(2))] {
        let v = verdict(&alpha, &beta, &c, &int(0), &opts)?;
        let w = if beta == int(1) { int(1) } else { int(1) - &beta };
        out.check(
            v.status == Status::Reducible && v.subquotient_weights == vec![w.clone()],
            format!("(α,β) = ({}, {}): {:?}, quotient weight {}", fmt_rational(&alpha), fmt_rational(&beta), v.status, fmt_rational(&w)),
        );
        let t = TensorModule::new(IsParams::new(alpha, beta), Arc::new(ModulePresentation::irreducible(c.clone(), int(0))));
        let gap = chain_evidence(&t, &TruncationWindow::default())?.iter().any(|s| s.is_gap());
        out.check(gap, "strict step in the truncated chain of U_n");
    }
    Ok(())
}

fn vacuum_non_integral_alpha(out: &mut Outcome) -> Result<()> {
    let mut r = rng(0x1);
    let opts = VerdictOptions::default();
    let mut done = 0;
    while done < 5 {
        let beta = random_rational(&mut r);
        let n: i64 = r.gen_range(-5..=5);
        let alpha = -int(n) - int(2) * &beta;
        let c = random_rational(&mut r);
        if is_integer(&alpha) {
            continue;
        }
        let t = tensor(alpha.clone(), beta.clone(), ModulePresentation::irreducible(c.clone(), int(0)));
        let v = gen(&t, n)?;
        out.zero(
            "L₋₁(v_n⊗v) + (n+α)v_{n-1}⊗v",
            &combine(&[(int(1), &t.act(-1, &v)?), (int(n) + &alpha, &gen(&t, n - 1)?)]),
        );
        out.zero(
            "L₁(v_n⊗v) + (n+α+2β)v_{n+1}⊗v",
            &combine(&[(int(1), &t.act(1, &v)?), (int(n) + &alpha + int(2) * &beta, &gen(&t, n + 1)?)]),
        );
        out.zero(
            "L₋₁L₂(v_n⊗v) - β(n+2+α)v_{n+1}⊗v",
            &combine(&[(int(1), &on(&t, "L-1*L2", n)?), (-(&beta * (int(n + 2) + &alpha)), &gen(&t, n + 1)?)]),
        );
        let verdict = verdict(&alpha, &beta, &c, &int(0), &opts)?;
        out.check(
            verdict.status == Status::Irreducible,
            format!("(α,β,c) = ({}, {}, {}): {:?}", fmt_rational(&alpha), fmt_rational(&beta), fmt_rational(&c), verdict.status),
        );
        done += 1;
    }
    for c in [rat(-22, 5), rat(1, 2)] {
        let v = verdict(&rat(1, 3), &rat(2, 7), &c, &int(0), &opts)?;
        out.check(v.status == Status::Irreducible, format!("c = {}: {:?}", fmt_rational(&c), v.status));
    }
    Ok(())
}
