//! The tensor products `V'_{α,β} ⊗ M` with `M` a quotient of a Verma module,
//! and truncated computations of the cyclic submodules `U_n` generated by
//! `v_n ⊗ v`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::intermediate::IsParams;
use crate::linalg::{add_scaled, add_term, EchelonBasis, SparseVec};
use crate::scalar::{fmt_rational, int, Rational};
use crate::verma::ModulePresentation;
use crate::words::{PbwMonomial, WordExpr};

/// Basis label `v_m ⊗ L_{-λ} v`.
pub type TensorKey = (i64, PbwMonomial);

/// A finite sum of `v_m ⊗ x`; module parts are reduced in the presentation.
pub type TensorElement = SparseVec<TensorKey>;

/// `level - m`, constant on weight-homogeneous elements. The `L_0`
/// eigenvalue of such an element is `h + w - α - β`.
pub fn weight_index(key: &TensorKey) -> i64 {
    key.1.level() as i64 - key.0
}

/// The weight index of a nonzero homogeneous element.
pub fn homogeneous_weight(x: &TensorElement) -> Option<i64> {
    let mut it = x.keys().map(weight_index);
    let first = it.next()?;
    it.all(|w| w == first).then_some(first)
}

/// Groups an element by weight index.
pub fn weight_components(x: &TensorElement) -> BTreeMap<i64, TensorElement> {
    let mut out: BTreeMap<i64, TensorElement> = BTreeMap::new();
    for (k, c) in x {
        out.entry(weight_index(k)).or_default().insert(k.clone(), c.clone());
    }
    out
}

pub fn fmt_tensor(x: &TensorElement) -> String {
    if x.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, ((m, mono), c)) in x.iter().enumerate() {
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&format!("{}*v[{m}]", fmt_rational(&c.abs())));
        if !mono.is_identity() {
            out.push_str(&format!("(x){mono}"));
        }
    }
    out
}

/// `V'_{α,β} ⊗ M`.
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub params: IsParams,
    pub module: Arc<ModulePresentation>,
}

impl TensorModule {
    pub fn new(params: IsParams, module: Arc<ModulePresentation>) -> Self {
        TensorModule { params, module }
    }

    /// `v_m ⊗ v`.
    pub fn generator(&self, m: i64) -> Result<TensorElement> {
        self.basis_element(m, PbwMonomial::identity())
    }

    pub fn basis_element(&self, m: i64, mono: PbwMonomial) -> Result<TensorElement> {
        if !self.params.exists(m) {
            return Err(Error::MissingBasisVector(m));
        }
        let reduced = self.module.reduce(&[(mono, Rational::one())].into_iter().collect())?;
        Ok(reduced.into_iter().map(|(p, c)| ((m, p), c)).collect())
    }

    /// `L_k` by the Leibniz rule.
    pub fn act(&self, k: i64, x: &TensorElement) -> Result<TensorElement> {
        let mut out = TensorElement::new();
        for ((m, mono), c) in x {
            if let Some((t, a)) = self.params.act_basis(k, *m)? {
                add_term(&mut out, (t, mono.clone()), a * c);
            }
            for (p, b) in self.module.act_monomial(k, mono)? {
                add_term(&mut out, (*m, p), b * c);
            }
        }
        Ok(out)
    }

    /// Applies a word expression, rightmost generator first.
    pub fn apply(&self, expr: &WordExpr, x: &TensorElement) -> Result<TensorElement> {
        let mut out = TensorElement::new();
        for (c, w) in &expr.terms {
            let mut y = x.clone();
            for &k in w.indices().iter().rev() {
                if y.is_empty() {
                    break;
                }
                y = self.act(k, &y)?;
            }
            add_scaled(&mut out, &y, c);
        }
        Ok(out)
    }

    /// Applies `L_{-λ}` for a PBW monomial.
    pub fn apply_monomial(&self, mono: &PbwMonomial, x: &TensorElement) -> Result<TensorElement> {
        let mut y = x.clone();
        for &p in mono.parts().iter().rev() {
            y = self.act(-(p as i64), &y)?;
        }
        Ok(y)
    }

    /// `L_k x` if every component stays inside the window, `None` otherwise.
    fn act_bounded(&self, k: i64, x: &TensorElement, m_lo: i64, m_hi: i64, level_max: usize) -> Result<Option<TensorElement>> {
        let mut out = TensorElement::new();
        for ((m, mono), c) in x {
            if let Some((t, a)) = self.params.act_basis(k, *m)? {
                if t < m_lo || t > m_hi {
                    return Ok(None);
                }
                add_term(&mut out, (t, mono.clone()), a * c);
            }
            let level = mono.level() as i64 - k;
            if level < 0 {
                continue;
            }
            if level as usize > level_max {
                return Ok(None);
            }
            for (p, b) in self.module.act_monomial(k, mono)? {
                add_term(&mut out, (*m, p), b * c);
            }
        }
        Ok(Some(out))
    }

    /// A truncation of `U_{n0}`: the span of all vectors reachable from
    /// `v_{n0} ⊗ v` by `L_k` steps that never leave the padded window.
    ///
    /// Every vector found genuinely lies in `U_{n0}`, so membership answers
    /// `true` are proofs; `false` answers are evidence only.
    pub fn cyclic_subspace(&self, n0: i64, window: &TruncationWindow) -> Result<CyclicSubspace> {
        window.validate()?;
        if n0 < window.m_min || n0 > window.m_max {
            return Err(Error::invalid("n0", format!("{n0} lies outside the window")));
        }
        let start = self.generator(n0)?;
        let (lo, hi) = (window.m_min - window.margin, window.m_max + window.margin);
        let mut spaces: BTreeMap<i64, EchelonBasis<TensorKey>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        spaces.entry(weight_index(start.keys().next().unwrap())).or_default().insert(&start);
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            // L_{±1} and L_{±2} generate the algebra.
            for k in [-2, -1, 1, 2] {
                let Some(y) = self.act_bounded(k, &x, lo, hi, window.level_max)? else {
                    continue;
                };
                let Some(w) = homogeneous_weight(&y) else {
                    continue;
                };
                if spaces.entry(w).or_default().insert(&y) {
                    queue.push_back(y);
                }
            }
        }
        Ok(CyclicSubspace {
            generator: n0,
            window: window.clone(),
            spaces,
        })
    }
}

/// The finite region a truncated computation works in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationWindow {
    pub m_min: i64,
    pub m_max: i64,
    pub level_max: usize,
    /// Extra indices on each side that closure paths may pass through.
    pub margin: i64,
}

impl TruncationWindow {
    pub fn new(m_min: i64, m_max: i64, level_max: usize) -> Self {
        TruncationWindow {
            m_min,
            m_max,
            level_max,
            margin: 4,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.m_min > self.m_max {
            return Err(Error::invalid("window", "m_min exceeds m_max"));
        }
        if self.margin < 0 {
            return Err(Error::invalid("margin", "must be nonnegative"));
        }
        Ok(())
    }
}

impl Default for TruncationWindow {
    fn default() -> Self {
        TruncationWindow::new(-6, 6, 8)
    }
}

/// Per-weight echelon bases of a truncated cyclic submodule.
#[derive(Clone, Debug)]
pub struct CyclicSubspace {
    pub generator: i64,
    pub window: TruncationWindow,
    spaces: BTreeMap<i64, EchelonBasis<TensorKey>>,
}

/// Coordinates of an element over the echelon rows of one weight space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub weight: i64,
    pub coordinates: Vec<(TensorKey, Rational)>,
}

impl CyclicSubspace {
    /// Dimension of each weight space found.
    pub fn dimensions(&self) -> BTreeMap<i64, usize> {
        self.spaces.iter().map(|(w, b)| (*w, b.dim())).collect()
    }

    /// Exact membership with a certificate. Inhomogeneous elements are
    /// tested weight by weight and return the certificate of the first one.
    pub fn contains(&self, x: &TensorElement) -> Option<Certificate> {
        let comps = weight_components(x);
        let mut first = None;
        for (w, part) in comps {
            let coordinates = self.spaces.get(&w)?.coordinates(&part)?;
            first.get_or_insert(Certificate { weight: w, coordinates });
        }
        Some(first.unwrap_or(Certificate {
            weight: 0,
            coordinates: Vec::new(),
        }))
    }

    /// Recombines a certificate into the element it certifies.
    pub fn evaluate(&self, cert: &Certificate) -> TensorElement {
        match self.spaces.get(&cert.weight) {
            Some(b) => b.combine(&cert.coordinates),
            None => TensorElement::new(),
        }
    }
}

/// Evidence about the chain of cyclic submodules inside a window.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ChainStep {
    pub upper: i64,
    pub lower: i64,
    /// `v_upper ⊗ v` was found in the truncation of `U_lower`.
    pub upper_in_lower: bool,
    /// `v_lower ⊗ v` was found in the truncation of `U_upper`.
    pub lower_in_upper: bool,
}

impl ChainStep {
    pub fn is_gap(&self) -> bool {
        !(self.upper_in_lower && self.lower_in_upper)
    }
}

/// Compares `U_a` and `U_b` for consecutive existing indices `a < b` in the window.
pub fn chain_evidence(t: &TensorModule, window: &TruncationWindow) -> Result<Vec<ChainStep>> {
    let indices: Vec<i64> = (window.m_min..=window.m_max).filter(|&m| t.params.exists(m)).collect();
    let mut subspaces = BTreeMap::new();
    for &m in &indices {
        subspaces.insert(m, t.cyclic_subspace(m, window)?);
    }
    let mut steps = Vec::new();
    for pair in indices.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        steps.push(ChainStep {
            upper: a,
            lower: b,
            upper_in_lower: subspaces[&b].contains(&t.generator(a)?).is_some(),
            lower_in_upper: subspaces[&a].contains(&t.generator(b)?).is_some(),
        });
    }
    Ok(steps)
}

/// Highest weight of `U_n / U_{n+1}` when the chain descends strictly there.
pub fn subquotient_hw(n: i64, params: &IsParams, h: &Rational) -> Rational {
    h - &params.alpha - &params.beta - int(n)
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coordinates
            .iter()
            .map(|((m, mono), c)| format!("{}@v[{m}](x){mono}", fmt_rational(c)))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intermediate::variant_of;
    use crate::scalar::rat;

    fn yang_lee_vacuum(alpha: Rational, beta: Rational) -> TensorModule {
        let l = ModulePresentation::irreducible(rat(-22, 5), int(0));
        TensorModule::new(variant_of(&alpha, &beta), Arc::new(l))
    }

    #[test]
    fn lowering_and_raising_on_generators() {
        let (a, b) = (rat(1, 3), rat(2, 7));
        let t = yang_lee_vacuum(a.clone(), b.clone());
        for n in [-2i64, 0, 3] {
            let g = t.generator(n).unwrap();
            let down = t.act(-1, &g).unwrap();
            assert_eq!(down, [((n - 1, PbwMonomial::identity()), -(int(n) + &a))].into());
            let up = t.act(1, &g).unwrap();
            let coef = -(int(n) + &a + int(2) * &b);
            assert_eq!(up, [((n + 1, PbwMonomial::identity()), coef)].into());
        }
    }

    #[test]
    fn l0_eigenvalue() {
        let l = ModulePresentation::irreducible(rat(1, 2), rat(1, 16));
        let params = variant_of(&rat(1, 8), &rat(15, 16));
        let t = TensorModule::new(params.clone(), Arc::new(l));
        let x = t.basis_element(3, PbwMonomial::new(vec![2, 1]).unwrap()).unwrap();
        let y = t.act(0, &x).unwrap();
        let expected = rat(1, 16) + int(3) - int(3) - &params.alpha - &params.beta;
        assert_eq!(y, crate::linalg::scaled(&x, &expected));
    }

    #[test]
    fn yang_lee_gap_and_membership() {
        let window = TruncationWindow::new(-4, 4, 8);
        let t = yang_lee_vacuum(int(0), rat(6, 5));
        let u0 = t.cyclic_subspace(0, &window).unwrap();
        assert!(u0.contains(&t.generator(-1).unwrap()).is_none());
        let s = WordExpr::parse("L-1^2 - 2/5*L-2").unwrap();
        let rel = t.apply(&s, &t.generator(-1).unwrap()).unwrap();
        let cert = u0.contains(&rel).expect("relation lies in U_0");
        assert_eq!(u0.evaluate(&cert), rel);

        let t = yang_lee_vacuum(int(0), rat(1, 2));
        let u0 = t.cyclic_subspace(0, &window).unwrap();
        let g = t.generator(-1).unwrap();
        let cert = u0.contains(&g).expect("v_-1 lies in U_0");
        assert_eq!(u0.evaluate(&cert), g);
        assert!(u0.contains(&TensorElement::new()).is_some());
    }

    #[test]
    fn descending_chain_when_alpha_plus_two_beta_not_integral() {
        let window = TruncationWindow::new(-3, 3, 6);
        let t = yang_lee_vacuum(rat(1, 3), rat(1, 5));
        for n in -3..3 {
            let un = t.cyclic_subspace(n, &window).unwrap();
            assert!(un.contains(&t.generator(n + 1).unwrap()).is_some());
        }
    }

    #[test]
    fn subquotient_weights() {
        let h = int(0);
        assert_eq!(subquotient_hw(-1, &variant_of(&int(0), &rat(6, 5)), &h), rat(-1, 5));
        assert_eq!(subquotient_hw(-1, &variant_of(&int(0), &rat(15, 16)), &h), rat(1, 16));
        let p = variant_of(&rat(1, 3), &rat(1, 7));
        assert_eq!(subquotient_hw(0, &p, &rat(2, 3)), rat(2, 3) - rat(1, 3) - rat(1, 7));
    }

    #[test]
    fn window_errors() {
        let t = yang_lee_vacuum(int(0), int(0));
        let w = TruncationWindow::new(-2, 2, 3);
        assert!(t.cyclic_subspace(5, &w).is_err());
        assert!(matches!(t.cyclic_subspace(0, &w), Err(Error::MissingBasisVector(0))));
        assert!(t.cyclic_subspace(0, &TruncationWindow::new(2, 1, 3)).is_err());
    }
}
