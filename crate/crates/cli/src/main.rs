//! `vir`: command-line access to the exact Virasoro computations.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use virasoro::fusion::{fusion_product, minimal_table, module_operators, reducible_pairs, MinimalLabel};
use virasoro::intermediate::IsParams;
use virasoro::reducibility::{
    p_from_singular, p_via_elimination, predict_intertwiners, verdict, Status, VerdictOptions,
};
use virasoro::replay;
use virasoro::scalar::{fmt_rational, parse_rational, Rational};
use virasoro::tensor::{chain_evidence, TensorModule, TruncationWindow};
use virasoro::verma::{reducibility_degree, ModulePresentation, DEFAULT_LEVEL_CAP, DEFAULT_SCAN_LEVELS};
use virasoro::words::fmt_combination;
use virasoro::Error;

#[derive(Parser)]
#[command(name = "vir", version, about = "Exact computations with Virasoro modules")]
struct Cli {
    /// Print deterministic JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Singular vectors of V(c,h) at one level.
    Singular {
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        c: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        h: Rational,
        #[arg(long)]
        level: usize,
        /// Work in the quotient by the singular vectors of all lower levels.
        #[arg(long)]
        quotient: bool,
    },
    /// Lowest level of a singular vector in V(c,h).
    Degree {
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        c: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        h: Rational,
        #[arg(long, default_value_t = DEFAULT_SCAN_LEVELS)]
        max_level: usize,
    },
    /// Reducibility polynomial of V'(α,β) ⊗ L(c,h) from the lowest singular vector.
    Ppoly {
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        c: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        h: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        alpha: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        beta: Rational,
        #[arg(long, value_enum, default_value_t = PolyMethod::Both)]
        method: PolyMethod,
        /// Use this level instead of the lowest one carrying a singular vector.
        #[arg(long)]
        level: Option<usize>,
    },
    /// Irreducibility verdict for V'(α,β) ⊗ L(c,h).
    Verdict {
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        c: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        h: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        alpha: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        beta: Rational,
        #[arg(long, default_value_t = DEFAULT_SCAN_LEVELS)]
        cutoff: usize,
        /// Also run the truncated-subspace oracle.
        #[arg(long)]
        cross_check: bool,
    },
    /// Fusion product of two labels of the (p,q) minimal model.
    Fusion {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        m1: i64,
        #[arg(long)]
        n1: i64,
        #[arg(long)]
        m2: i64,
        #[arg(long)]
        n2: i64,
    },
    /// Labels, weights and fusion rules of the (p,q) minimal model.
    MinimalTable {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
    /// Pairs (α,β) for which fusion forces V'(α,β) ⊗ L(h_{m,n}) to be reducible.
    ReduciblePairs {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
    },
    /// Truncated cyclic-submodule chain, compared with the verdict.
    Oracle {
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        c: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        h: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        alpha: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        beta: Rational,
        /// Index range `lo:hi` of the generators compared.
        #[arg(long, allow_hyphen_values = true, value_parser = index_range, default_value = "-6:6")]
        window: (i64, i64),
        #[arg(long, default_value_t = 8)]
        level_max: usize,
    },
    /// Replay the worked computations.
    VerifyPaper {
        #[arg(long)]
        case: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyMethod {
    Phi,
    Elim,
    Both,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn index_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(':')
        .or_else(|| s.split_once(','))
        .ok_or_else(|| format!("expected `lo:hi`, got `{s}`"))?;
    let lo: i64 = a.trim().parse().map_err(|_| format!("malformed bound `{a}`"))?;
    let hi: i64 = b.trim().parse().map_err(|_| format!("malformed bound `{b}`"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// A failure with its exit code: 1 for bad input, 2 for inconsistencies.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn user(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if let Error::InvalidArgument { flag, reason } = &e {
            return Failure::user(format!("invalid argument `--{flag}`: {reason}"));
        }
        if e.is_internal() {
            Failure::internal(e.to_string())
        } else {
            Failure::user(e.to_string())
        }
    }
}

/// Renames the flag of a label-range error to the one the user typed.
fn label(p: i64, q: i64, m: (&str, i64), n: (&str, i64)) -> Result<MinimalLabel, Failure> {
    MinimalLabel::new(p, q, m.1, n.1).map_err(|e| match e {
        Error::InvalidArgument { flag: "m", reason } => Failure::user(format!("invalid argument `--{}`: {reason}", m.0)),
        Error::InvalidArgument { flag: "n", reason } => Failure::user(format!("invalid argument `--{}`: {reason}", n.0)),
        e => e.into(),
    })
}

/// What a command prints, plus whether it found an inconsistency.
struct Output {
    json: Value,
    text: String,
    inconsistent: Option<String>,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, inconsistent: None }
    }
}

fn r(x: &Rational) -> String {
    fmt_rational(x)
}

fn pair_str(p: (i64, i64)) -> String {
    format!("({},{})", p.0, p.1)
}

fn singular(c: &Rational, h: &Rational, level: usize, quotient: bool) -> Result<Output, Failure> {
    if level == 0 {
        return Err(Failure::user("invalid argument `--level`: must be positive"));
    }
    let module = if quotient {
        ModulePresentation::staged(c.clone(), h.clone(), level)?
    } else {
        ModulePresentation::verma(c.clone(), h.clone())
    }
    .with_cap(level.max(DEFAULT_LEVEL_CAP));
    let vectors: Vec<String> = module.singular_vectors(level)?.iter().map(fmt_combination).collect();
    let space = if quotient { "staged quotient of V" } else { "V" };
    let mut text = format!("{space}({}, {}) level {level}: {} singular vector(s)\n", r(c), r(h), vectors.len());
    for v in &vectors {
        text += &format!("  {v}\n");
    }
    Ok(Output::ok(
        json!({ "c": r(c), "h": r(h), "level": level, "quotient": quotient, "vectors": vectors }),
        text,
    ))
}

fn degree(c: &Rational, h: &Rational, max_level: usize) -> Result<Output, Failure> {
    let d = reducibility_degree(c, h, max_level)?;
    let text = match d {
        Some(n) => format!("V({}, {}): first singular vector at level {n}\n", r(c), r(h)),
        None => format!("V({}, {}): no singular vector up to level {max_level}\n", r(c), r(h)),
    };
    Ok(Output::ok(json!({ "c": r(c), "h": r(h), "max_level": max_level, "degree": d }), text))
}

fn ppoly(c: &Rational, h: &Rational, alpha: &Rational, beta: &Rational, method: PolyMethod, level: Option<usize>) -> Result<Output, Failure> {
    let levels: Vec<usize> = match level {
        Some(0) => return Err(Failure::user("invalid argument `--level`: must be positive")),
        Some(l) => vec![l],
        None => (1..=DEFAULT_SCAN_LEVELS).collect(),
    };
    let verma = ModulePresentation::verma(c.clone(), h.clone()).with_cap(levels[levels.len() - 1].max(DEFAULT_LEVEL_CAP));
    let mut found = None;
    for l in levels {
        let vs = verma.singular_vectors(l)?;
        if let Some(u) = vs.into_iter().next() {
            found = Some(u);
            break;
        }
    }
    let Some(u) = found else {
        let scope = level.map_or(format!("up to level {DEFAULT_SCAN_LEVELS}"), |l| format!("at level {l}"));
        return Err(Failure::user(format!("invalid argument `--h`: V({}, {}) has no singular vector {scope}", r(c), r(h))));
    };
    let params = IsParams::new(alpha.clone(), beta.clone());
    let mut polys = Vec::new();
    if method != PolyMethod::Elim {
        polys.push(("phi", p_from_singular(&u, &params.alpha, beta, &verma)?));
    }
    if method != PolyMethod::Phi {
        polys.push(("elim", p_via_elimination(&u, &params.alpha, beta, c, h)?));
    }
    let mut text = format!("singular vector: {}\n", fmt_combination(&u));
    let mut entries = Vec::new();
    for (name, p) in &polys {
        let roots = p.integer_roots()?;
        text += &format!("{name}: p(n) = {}  integral roots {roots:?}\n", p.poly);
        entries.push(json!({
            "method": name,
            "level": p.level,
            "coefficients": p.poly.to_strings(),
            "display": p.poly.to_string(),
            "integral_roots": roots,
        }));
    }
    let inconsistent = (polys.len() == 2 && polys[0].1.poly != polys[1].1.poly)
        .then(|| "the product formula and elimination disagree".to_string());
    Ok(Output {
        json: json!({
            "c": r(c), "h": r(h), "alpha": r(alpha), "alpha_normalized": r(&params.alpha), "beta": r(beta),
            "singular_vector": fmt_combination(&u),
            "polynomials": entries,
        }),
        text,
        inconsistent,
    })
}

fn verdict_cmd(c: &Rational, h: &Rational, alpha: &Rational, beta: &Rational, cutoff: usize, cross_check: bool) -> Result<Output, Failure> {
    let opts = VerdictOptions {
        cutoff,
        cross_check,
        ..VerdictOptions::default()
    };
    let v = verdict(alpha, beta, c, h, &opts)?;
    let intertwiners = if v.status == Status::Reducible { predict_intertwiners(&v)? } else { Vec::new() };
    let mut text = format!(
        "V'({}, {}) ⊗ L({}, {}): {:?}\n",
        r(alpha),
        r(beta),
        r(c),
        r(h),
        v.status
    );
    for p in &v.polynomials {
        text += &format!("  level {} polynomial: {}  integral roots {:?}\n", p.level, p.display, p.integral_roots);
    }
    if !v.subquotient_weights.is_empty() {
        let ws: Vec<String> = v.subquotient_weights.iter().map(r).collect();
        text += &format!("  subquotient weights: {}\n", ws.join(", "));
    }
    text += &format!("  rules: {}\n", v.rules_fired.join(", "));
    for note in &v.evidence {
        text += &format!("  evidence: {note}\n");
    }
    for x in &v.cross_checks {
        let agrees = match x.agrees {
            Some(true) => "agrees",
            Some(false) => "DISAGREES",
            None => "not comparable",
        };
        text += &format!("  cross-check {}: {} ({agrees})\n", x.name, x.outcome);
    }
    for i in &intertwiners {
        text += &format!("  operator type (h3; h1, h2) = ({}; {}, {}): {}\n", r(&i.h3), r(&i.h1), r(&i.h2), i.note);
    }
    let inconsistent = v
        .cross_checks
        .iter()
        .find(|x| x.agrees == Some(false))
        .map(|x| format!("cross-check {} disagrees with the verdict", x.name));
    Ok(Output {
        json: json!({ "verdict": v, "intertwiners": intertwiners }),
        text,
        inconsistent,
    })
}

fn fusion_cmd(p: i64, q: i64, l1: (i64, i64), l2: (i64, i64)) -> Result<Output, Failure> {
    let a = label(p, q, ("m1", l1.0), ("n1", l1.1))?;
    let b = label(p, q, ("m2", l2.0), ("n2", l2.1))?;
    let products = fusion_product(&a, &b)?;
    let shown: Vec<String> = products.iter().map(|l| format!("{} h={}", pair_str(l.pair()), r(&l.weight()))).collect();
    let text = format!("{} x {} = {{{}}}\n", pair_str(l1), pair_str(l2), shown.join(", "));
    let entries: Vec<Value> = products
        .iter()
        .map(|l| json!({ "label": l.pair(), "flipped": l.flip().pair(), "h": r(&l.weight()) }))
        .collect();
    Ok(Output::ok(json!({ "p": p, "q": q, "l1": l1, "l2": l2, "products": entries }), text))
}

fn minimal_table_cmd(p: i64, q: i64) -> Result<Output, Failure> {
    let t = minimal_table(p, q)?;
    let mut text = format!("minimal model ({p},{q}), c = {}\n", r(&t.c));
    for l in &t.labels {
        text += &format!("  h{} = {}\n", pair_str((l.m, l.n)), r(&l.h));
    }
    for f in &t.fusion {
        let shown: Vec<String> = f.products.iter().map(|&x| pair_str(x)).collect();
        text += &format!("  {} x {} = {{{}}}\n", pair_str(f.l1), pair_str(f.l2), shown.join(", "));
    }
    Ok(Output::ok(serde_json::to_value(&t).expect("table serializes"), text))
}

fn reducible_pairs_cmd(p: i64, q: i64, m: i64, n: i64) -> Result<Output, Failure> {
    let l = label(p, q, ("m", m), ("n", n))?;
    let pairs = reducible_pairs(&l)?;
    let modules: Vec<(i64, i64)> = module_operators(&l)?.iter().map(|x| x.pair()).collect();
    let mut text = format!("L(h{}) with h = {}\n", pair_str((m, n)), r(&l.weight()));
    for x in &pairs {
        text += &format!("  alpha = {}, beta = {}: subquotient {}\n", r(&x.alpha), r(&x.beta), r(&x.h3));
    }
    let shown: Vec<String> = modules.iter().map(|&x| pair_str(x)).collect();
    text += &format!("  h1 = 0 operators: {}\n", shown.join(", "));
    Ok(Output::ok(json!({ "p": p, "q": q, "m": m, "n": n, "pairs": pairs, "module_operators": modules }), text))
}

fn oracle_cmd(c: &Rational, h: &Rational, alpha: &Rational, beta: &Rational, window: (i64, i64), level_max: usize) -> Result<Output, Failure> {
    let w = TruncationWindow::new(window.0, window.1, level_max);
    let module = ModulePresentation::irreducible(c.clone(), h.clone()).with_cap(level_max + DEFAULT_LEVEL_CAP);
    let t = TensorModule::new(IsParams::new(alpha.clone(), beta.clone()), Arc::new(module));
    let steps = chain_evidence(&t, &w)?;
    let v = verdict(alpha, beta, c, h, &VerdictOptions::default())?;
    let gaps: Vec<&_> = steps.iter().filter(|s| s.is_gap()).collect();
    let mut text = format!(
        "truncated chain for V'({}, {}) ⊗ L({}, {}), window {}:{}, level {level_max}\n",
        r(alpha),
        r(beta),
        r(c),
        r(h),
        window.0,
        window.1
    );
    for s in &steps {
        let mark = if s.is_gap() { "strict" } else { "equal" };
        text += &format!("  U_{} vs U_{}: {mark}\n", s.upper, s.lower);
    }
    text += &format!("verdict: {:?}\n", v.status);
    let inconsistent = match v.status {
        Status::Irreducible if !gaps.is_empty() => Some("strict step found for an irreducible verdict".to_string()),
        Status::Reducible => {
            // only roots whose step lies inside the window can be observed
            let missed: Vec<i64> = v
                .integral_roots
                .iter()
                .copied()
                .filter(|&n| steps.iter().any(|s| s.lower == n && !s.is_gap()))
                .collect();
            (!missed.is_empty()).then(|| format!("no strict step at roots {missed:?} of a reducible verdict"))
        }
        _ => None,
    };
    Ok(Output {
        json: json!({
            "c": r(c), "h": r(h), "alpha": r(alpha), "beta": r(beta),
            "window": [window.0, window.1], "level_max": level_max,
            "steps": steps, "status": v.status, "integral_roots": v.integral_roots,
            "agrees": inconsistent.is_none(),
        }),
        text,
        inconsistent,
    })
}

fn verify_paper(case: Option<&str>) -> Result<Output, Failure> {
    let report = match case {
        Some(id) => {
            if !replay::case_ids().contains(&id) {
                return Err(Failure::user(format!(
                    "invalid argument `--case`: unknown case `{id}`; known cases: {}",
                    replay::case_ids().join(", ")
                )));
            }
            let c = replay::run_case(id)?;
            let passed = usize::from(c.passed);
            replay::ReplayReport {
                cases: vec![c],
                passed,
                failed: 1 - passed,
            }
        }
        None => replay::run_all(),
    };
    let mut text = String::new();
    for c in &report.cases {
        text += &format!("{} {}: residual {}\n", if c.passed { "PASS" } else { "FAIL" }, c.id, c.residual);
        if !c.passed {
            text += &format!("  statement: {}\n", c.statement);
            for d in &c.details {
                text += &format!("  {d}\n");
            }
        }
    }
    text += &format!("{} passed, {} failed\n", report.passed, report.failed);
    let inconsistent = (!report.all_passed()).then(|| format!("{} replay case(s) failed", report.failed));
    Ok(Output {
        json: serde_json::to_value(&report).expect("report serializes"),
        text,
        inconsistent,
    })
}

fn run(command: &Command) -> Result<Output, Failure> {
    match command {
        Command::Singular { c, h, level, quotient } => singular(c, h, *level, *quotient),
        Command::Degree { c, h, max_level } => degree(c, h, *max_level),
        Command::Ppoly { c, h, alpha, beta, method, level } => ppoly(c, h, alpha, beta, *method, *level),
        Command::Verdict { c, h, alpha, beta, cutoff, cross_check } => verdict_cmd(c, h, alpha, beta, *cutoff, *cross_check),
        Command::Fusion { p, q, m1, n1, m2, n2 } => fusion_cmd(*p, *q, (*m1, *n1), (*m2, *n2)),
        Command::MinimalTable { p, q } => minimal_table_cmd(*p, *q),
        Command::ReduciblePairs { p, q, m, n } => reducible_pairs_cmd(*p, *q, *m, *n),
        Command::Oracle { c, h, alpha, beta, window, level_max } => oracle_cmd(c, h, alpha, beta, *window, *level_max),
        Command::VerifyPaper { case } => verify_paper(case.as_deref()),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Singular { .. } => "singular",
        Command::Degree { .. } => "degree",
        Command::Ppoly { .. } => "ppoly",
        Command::Verdict { .. } => "verdict",
        Command::Fusion { .. } => "fusion",
        Command::MinimalTable { .. } => "minimal-table",
        Command::ReduciblePairs { .. } => "reducible-pairs",
        Command::Oracle { .. } => "oracle",
        Command::VerifyPaper { .. } => "verify-paper",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let name = command_name(&cli.command);
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                let doc = json!({ "command": name, "result": out.json, "consistent": out.inconsistent.is_none() });
                println!("{}", serde_json::to_string_pretty(&doc).expect("output serializes"));
            } else {
                print!("{}", out.text);
            }
            match out.inconsistent {
                Some(msg) => {
                    eprintln!("vir {name}: inconsistency: {msg}");
                    ExitCode::from(2)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(f) => {
            eprintln!("vir {name}: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
