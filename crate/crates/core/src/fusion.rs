//! Minimal-model bookkeeping: central charges `c_{p,q}`, the Kac table
//! `h_{m,n}`, admissible triples and fusion products, the `(α,β)` pairs that
//! intertwining operators force to be reducible, and the `c = 1` rules.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{fmt_rational, int, rational_sqrt, rat, Rational};

fn check_model(p: i64, q: i64) -> Result<()> {
    if p <= 1 {
        return Err(Error::invalid("p", format!("{p} must exceed 1")));
    }
    if q <= 1 {
        return Err(Error::invalid("q", format!("{q} must exceed 1")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::invalid("q", format!("{p} and {q} are not coprime")));
    }
    Ok(())
}

/// `c_{p,q} = 1 - 6 (p-q)² / (pq)`.
pub fn central_charge(p: i64, q: i64) -> Result<Rational> {
    check_model(p, q)?;
    Ok(int(1) - rat(6 * (p - q) * (p - q), p * q))
}

/// The coprime pair `p < q` with `c = c_{p,q}`, if there is one.
pub fn minimal_model_of(c: &Rational) -> Option<(i64, i64)> {
    // (1-c)/6 = (q-p)²/(pq) in lowest terms, since (q-p)² and pq are coprime
    let t = (int(1) - c) / int(6);
    if !t.is_positive() {
        return None;
    }
    let s = rational_sqrt(&Rational::from_integer(t.numer().clone()))?;
    let (s, den) = (i64::try_from(s.to_integer()).ok()?, i64::try_from(t.denom().clone()).ok()?);
    let disc = rational_sqrt(&int(s * s + 4 * den))?;
    let root = i64::try_from(disc.to_integer()).ok()?;
    if (root - s) % 2 != 0 {
        return None;
    }
    let p = (root - s) / 2;
    let q = p + s;
    (p > 1 && p * q == den && p.gcd(&q) == 1).then_some((p, q))
}

/// A minimal-model label `(m,n)`; `(m,n)` and `(p-m,q-n)` name the same module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MinimalLabel {
    pub p: i64,
    pub q: i64,
    pub m: i64,
    pub n: i64,
}

impl MinimalLabel {
    pub fn new(p: i64, q: i64, m: i64, n: i64) -> Result<Self> {
        check_model(p, q)?;
        if m <= 0 || m >= p {
            return Err(Error::invalid("m", format!("{m} is outside 0 < m < {p}")));
        }
        if n <= 0 || n >= q {
            return Err(Error::invalid("n", format!("{n} is outside 0 < n < {q}")));
        }
        Ok(MinimalLabel { p, q, m, n })
    }

    pub fn flip(&self) -> Self {
        MinimalLabel {
            m: self.p - self.m,
            n: self.q - self.n,
            ..*self
        }
    }

    /// The lexicographically smaller of `(m,n)` and `(p-m,q-n)`.
    pub fn canonical(&self) -> Self {
        let f = self.flip();
        if (f.m, f.n) < (self.m, self.n) {
            f
        } else {
            *self
        }
    }

    pub fn pair(&self) -> (i64, i64) {
        (self.m, self.n)
    }

    pub fn weight(&self) -> Rational {
        let (p, q, m, n) = (self.p, self.q, self.m, self.n);
        let a = n * p - m * q;
        rat(a * a - (p - q) * (p - q), 4 * p * q)
    }
}

/// `h_{m,n} = ((np - mq)² - (p-q)²) / (4pq)`.
pub fn conformal_weight(label: &MinimalLabel) -> Rational {
    label.weight()
}

/// All canonical labels of the model, in lexicographic order.
pub fn labels(p: i64, q: i64) -> Result<Vec<MinimalLabel>> {
    check_model(p, q)?;
    let mut out = BTreeSet::new();
    for m in 1..p {
        for n in 1..q {
            out.insert(MinimalLabel { p, q, m, n }.canonical());
        }
    }
    Ok(out.into_iter().collect())
}

/// The canonical label of weight `h` in the model `(p,q)`.
pub fn label_of_weight(p: i64, q: i64, h: &Rational) -> Result<Option<MinimalLabel>> {
    Ok(labels(p, q)?.into_iter().find(|l| &l.weight() == h))
}

fn inequalities_hold(p: i64, q: i64, t: [(i64, i64); 3]) -> bool {
    let ms = [t[0].0, t[1].0, t[2].0];
    let ns = [t[0].1, t[1].1, t[2].1];
    let side = |xs: [i64; 3], bound: i64| {
        let sum: i64 = xs.iter().sum();
        xs.iter().all(|&x| 0 < x && x < bound)
            && sum < 2 * bound
            && sum % 2 == 1
            && xs[0] < xs[1] + xs[2]
            && xs[1] < xs[0] + xs[2]
            && xs[2] < xs[0] + xs[1]
    };
    side(ms, p) && side(ns, q)
}

fn same_model(ls: &[MinimalLabel]) -> Result<(i64, i64)> {
    let (p, q) = (ls[0].p, ls[0].q);
    if ls.iter().any(|l| (l.p, l.q) != (p, q)) {
        return Err(Error::invalid("label", "labels belong to different models"));
    }
    Ok((p, q))
}

/// Whether some choice of representatives for the three labels satisfies the
/// inequalities, triangle conditions and odd-sum conditions.
pub fn admissible(l1: &MinimalLabel, l2: &MinimalLabel, l3: &MinimalLabel) -> Result<bool> {
    let (p, q) = same_model(&[*l1, *l2, *l3])?;
    for mask in 0..8u8 {
        let pick = |l: &MinimalLabel, bit: u8| if mask & bit != 0 { l.flip() } else { *l };
        let t = [pick(l1, 1).pair(), pick(l2, 2).pair(), pick(l3, 4).pair()];
        if inequalities_hold(p, q, t) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Fusion product by the interval-and-parity ranges: `m₃` runs from
/// `|m₁-m₂|+1` to `min(m₁+m₂-1, 2p-m₁-m₂-1)` in steps of 2, likewise `n₃`.
pub fn fusion_by_ranges(l1: &MinimalLabel, l2: &MinimalLabel) -> Result<BTreeSet<MinimalLabel>> {
    let (p, q) = same_model(&[*l1, *l2])?;
    let range = |a: i64, b: i64, bound: i64| {
        let hi = (a + b - 1).min(2 * bound - a - b - 1);
        ((a - b).abs() + 1..=hi).step_by(2).collect::<Vec<_>>()
    };
    let mut out = BTreeSet::new();
    for m in range(l1.m, l2.m, p) {
        for n in range(l1.n, l2.n, q) {
            out.insert(MinimalLabel { p, q, m, n }.canonical());
        }
    }
    Ok(out)
}

/// `{ l₃ : (l₁, l₂, l₃) admissible }`, canonical and sorted. The admissibility
/// search is cross-checked against [`fusion_by_ranges`]; a mismatch is an
/// internal error.
pub fn fusion_product(l1: &MinimalLabel, l2: &MinimalLabel) -> Result<BTreeSet<MinimalLabel>> {
    let (p, q) = same_model(&[*l1, *l2])?;
    let mut out = BTreeSet::new();
    for l3 in labels(p, q)? {
        if admissible(l1, l2, &l3)? {
            out.insert(l3);
        }
    }
    let ranges = fusion_by_ranges(l1, l2)?;
    if ranges != out {
        return Err(Error::Internal(format!(
            "fusion of ({},{}) and ({},{}) in the ({p},{q}) model: admissibility gives {:?}, ranges give {:?}",
            l1.m,
            l1.n,
            l2.m,
            l2.n,
            out.iter().map(|l| l.pair()).collect::<Vec<_>>(),
            ranges.iter().map(|l| l.pair()).collect::<Vec<_>>()
        )));
    }
    Ok(out)
}

/// A reducible tensor product forced by an intertwining operator of type
/// `(h₃; h₁, h₂)`: `α = h₁ + h₂ - h₃`, `β = 1 - h₁`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ReduciblePair {
    #[serde(serialize_with = "ser_rational")]
    pub alpha: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub beta: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub h3: Rational,
}

pub(crate) fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(x))
}

/// The `(α, β, h₃)` for every admissible `(l₁, l₂, l₃)` with `h₁ ≠ 0`, sorted
/// and deduplicated.
pub fn reducible_pairs(l2: &MinimalLabel) -> Result<Vec<ReduciblePair>> {
    let h2 = l2.weight();
    let mut out = BTreeSet::new();
    for l1 in labels(l2.p, l2.q)? {
        let h1 = l1.weight();
        if h1.is_zero() {
            continue;
        }
        for l3 in fusion_product(&l1, l2)? {
            let h3 = l3.weight();
            out.insert(ReduciblePair {
                alpha: &h1 + &h2 - &h3,
                beta: int(1) - &h1,
                h3,
            });
        }
    }
    Ok(out.into_iter().collect())
}

/// The fusion rules with `h₁ = 0`: module, transposed and adjoint operators.
pub fn module_operators(l2: &MinimalLabel) -> Result<Vec<MinimalLabel>> {
    let mut out = Vec::new();
    for l1 in labels(l2.p, l2.q)? {
        if l1.weight().is_zero() {
            out.extend(fusion_product(&l1, l2)?);
        }
    }
    Ok(out)
}

/// Table of a minimal model for export.
#[derive(Clone, Debug, Serialize)]
pub struct MinimalTable {
    pub p: i64,
    pub q: i64,
    #[serde(serialize_with = "ser_rational")]
    pub c: Rational,
    pub labels: Vec<LabelEntry>,
    pub fusion: Vec<FusionEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelEntry {
    pub m: i64,
    pub n: i64,
    #[serde(serialize_with = "ser_rational")]
    pub h: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionEntry {
    pub l1: (i64, i64),
    pub l2: (i64, i64),
    pub products: Vec<(i64, i64)>,
}

pub fn minimal_table(p: i64, q: i64) -> Result<MinimalTable> {
    let c = central_charge(p, q)?;
    let ls = labels(p, q)?;
    let mut fusion = Vec::new();
    for a in &ls {
        for b in &ls {
            fusion.push(FusionEntry {
                l1: a.pair(),
                l2: b.pair(),
                products: fusion_product(a, b)?.iter().map(|l| l.pair()).collect(),
            });
        }
    }
    Ok(MinimalTable {
        p,
        q,
        c,
        labels: ls
            .iter()
            .map(|l| LabelEntry {
                m: l.m,
                n: l.n,
                h: l.weight(),
            })
            .collect(),
        fusion,
    })
}

/// Answer of the `c = 1` fusion rules, which only cover some weight families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum C1Fusion {
    Exists,
    Absent,
    Inconclusive,
}

fn integer_sqrt(h: &Rational) -> Option<Rational> {
    rational_sqrt(h).filter(|r| r.is_integer())
}

/// Existence of an operator of type `(L(1,h₃); L(1,h₁), L(1,h₂))`.
pub fn c1_fusion_exists(h1: &Rational, h2: &Rational, h3: &Rational) -> Result<C1Fusion> {
    for (flag, h) in [("h1", h1), ("h2", h2), ("h3", h3)] {
        if h.is_negative() {
            return Err(Error::invalid(flag, "weights must be nonnegative"));
        }
    }
    let verdict = |b: bool| if b { C1Fusion::Exists } else { C1Fusion::Absent };
    Ok(match (integer_sqrt(h1), integer_sqrt(h2)) {
        (Some(m), Some(n)) => match integer_sqrt(h3) {
            Some(k) => verdict((&n - &m).abs() <= k && k <= &n + &m),
            None => C1Fusion::Inconclusive,
        },
        (Some(_), None) => verdict(h3 == h2),
        (None, Some(_)) => verdict(h3 == h1),
        (None, None) => C1Fusion::Inconclusive,
    })
}

/// `Δ(k) = k(k+2)/(4κ) - k/2`.
pub fn delta_weight(kappa: &Rational, k: i64) -> Result<Rational> {
    if kappa.is_zero() {
        return Err(Error::invalid("kappa", "must be nonzero"));
    }
    Ok(int(k * (k + 2)) / (int(4) * kappa) - rat(k, 2))
}

/// `k₁ + k₂ + k₃` even and `|k₁ - k₂| ≤ k₃ ≤ k₁ + k₂`.
pub fn triple_admissible(k1: i64, k2: i64, k3: i64) -> bool {
    (k1 + k2 + k3) % 2 == 0 && (k1 - k2).abs() <= k3 && k3 <= k1 + k2
}
