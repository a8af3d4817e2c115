//! Verma modules `V(c,h)`, the contravariant form, singular vectors and
//! quotients by submodules, all graded by level with exact echelon bases.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{add_scaled, add_term, null_space, EchelonBasis, SparseVec};
use crate::scalar::{int, Rational};
use crate::words::{partitions, PbwMonomial, UNeg, WordExpr};

/// Default number of levels scanned when looking for singular vectors.
pub const DEFAULT_SCAN_LEVELS: usize = 12;
/// Default hard cap on the level a presentation will build.
pub const DEFAULT_LEVEL_CAP: usize = 20;

/// The Verma module `V(c,h)` with basis `L_{-λ} v` indexed by partitions.
#[derive(Debug)]
pub struct VermaModule {
    c: Rational,
    h: Rational,
    cache: Mutex<HashMap<(i64, PbwMonomial), UNeg>>,
}

impl Clone for VermaModule {
    fn clone(&self) -> Self {
        VermaModule::new(self.c.clone(), self.h.clone())
    }
}

impl VermaModule {
    pub fn new(c: Rational, h: Rational) -> Self {
        VermaModule {
            c,
            h,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn h(&self) -> &Rational {
        &self.h
    }

    /// `L_k (L_{-λ} v)` expanded in the PBW basis.
    pub fn act_monomial(&self, k: i64, m: &PbwMonomial) -> UNeg {
        let key = (k, m.clone());
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let out = self.compute(k, m);
        self.cache.lock().unwrap().insert(key, out.clone());
        out
    }

    fn compute(&self, k: i64, m: &PbwMonomial) -> UNeg {
        let mut out = UNeg::new();
        if k == 0 {
            add_term(&mut out, m.clone(), &self.h + int(m.level() as i64));
            return out;
        }
        let parts = m.parts();
        if parts.is_empty() {
            if k < 0 {
                out.insert(PbwMonomial::from_sorted(vec![(-k) as u32]), Rational::one());
            }
            return out;
        }
        let a = parts[0] as i64;
        let rest = PbwMonomial::from_sorted(parts[1..].to_vec());
        if k < 0 && -k >= a {
            let mut p = vec![(-k) as u32];
            p.extend_from_slice(parts);
            out.insert(PbwMonomial::from_sorted(p), Rational::one());
            return out;
        }
        // L_k L_{-a} Y = L_{-a} (L_k Y) + [L_k, L_{-a}] Y
        for (t, ct) in self.act_monomial(k, &rest) {
            add_scaled(&mut out, &self.act_monomial(-a, &t), &ct);
        }
        add_scaled(&mut out, &self.act_monomial(k - a, &rest), &int(k + a));
        if k == a {
            let central = int(k * k * k - k) / int(12) * &self.c;
            add_term(&mut out, rest, central);
        }
        out
    }

    pub fn act(&self, k: i64, x: &UNeg) -> UNeg {
        let mut out = UNeg::new();
        for (m, c) in x {
            add_scaled(&mut out, &self.act_monomial(k, m), c);
        }
        out
    }

    /// Applies a word expression, rightmost generator first.
    pub fn apply(&self, expr: &WordExpr, x: &UNeg) -> UNeg {
        let mut out = UNeg::new();
        for (c, w) in &expr.terms {
            let mut y = x.clone();
            for &k in w.indices().iter().rev() {
                y = self.act(k, &y);
            }
            add_scaled(&mut out, &y, c);
        }
        out
    }
}

/// The highest weight vector `v` as an element.
pub fn hw_vector() -> UNeg {
    let mut v = UNeg::new();
    v.insert(PbwMonomial::identity(), Rational::one());
    v
}

/// One level of the contravariant form.
#[derive(Clone, Debug)]
pub struct GramLevel {
    pub basis: Vec<PbwMonomial>,
    pub matrix: Vec<Vec<Rational>>,
}

/// Extends `levels` with Gram matrices of the contravariant form up to level `n`.
///
/// Uses `<L_{-a} L_{-λ'} v, x> = <L_{-λ'} v, L_a x>` with `a` the largest part.
fn extend_gram(verma: &VermaModule, levels: &mut Vec<GramLevel>, n: usize) {
    let mut index: Vec<HashMap<PbwMonomial, usize>> = levels
        .iter()
        .map(|l| l.basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
        .collect();
    for level in levels.len()..=n {
        let basis = partitions(level);
        let idx: HashMap<_, _> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut matrix = vec![vec![Rational::zero(); basis.len()]; basis.len()];
        if level == 0 {
            matrix[0][0] = Rational::one();
        } else {
            for (j, mu) in basis.iter().enumerate() {
                let mut by_part: HashMap<u32, UNeg> = HashMap::new();
                for (i, lam) in basis.iter().enumerate() {
                    let a = lam.parts()[0];
                    let y = by_part
                        .entry(a)
                        .or_insert_with(|| verma.act_monomial(a as i64, mu));
                    let lower = level - a as usize;
                    let lam_rest = PbwMonomial::from_sorted(lam.parts()[1..].to_vec());
                    let row = index[lower][&lam_rest];
                    let mut s = Rational::zero();
                    for (nu, c) in y.iter() {
                        let g = &levels[lower].matrix[row][index[lower][nu]];
                        if !g.is_zero() {
                            s += c * g;
                        }
                    }
                    matrix[i][j] = s;
                }
            }
        }
        levels.push(GramLevel { basis, matrix });
        index.push(idx);
    }
}

/// The contravariant form on `V(c,h)_{h+n}` in the basis [`partitions`]`(n)`.
pub fn shapovalov_gram(c: &Rational, h: &Rational, n: usize) -> GramLevel {
    let verma = VermaModule::new(c.clone(), h.clone());
    let mut levels = Vec::new();
    extend_gram(&verma, &mut levels, n);
    levels.pop().unwrap()
}

fn radical(level: &GramLevel) -> EchelonBasis<PbwMonomial> {
    let columns: Vec<(PbwMonomial, SparseVec<usize>)> = level
        .basis
        .iter()
        .enumerate()
        .map(|(j, m)| {
            let col = (0..level.basis.len())
                .filter(|&i| !level.matrix[i][j].is_zero())
                .map(|i| (i, level.matrix[i][j].clone()))
                .collect();
            (m.clone(), col)
        })
        .collect();
    null_space(&columns)
}

/// Which submodule of `V(c,h)` a presentation quotients by.
#[derive(Clone, Debug)]
pub enum QuotientKind {
    /// No quotient: the Verma module itself.
    Verma,
    /// The radical of the contravariant form, giving `L(c,h)`.
    Radical,
    /// The submodule generated by the listed vectors. Each must be singular
    /// modulo the submodule generated by the lower-level ones.
    Generated(Vec<UNeg>),
}

#[derive(Debug, Default)]
struct Levels {
    submodule: Vec<Arc<EchelonBasis<PbwMonomial>>>,
    gram: Vec<GramLevel>,
}

/// A quotient `V(c,h)/J` with the submodule `J` built level by level on
/// demand. Elements are stored reduced: every coordinate sits on a monomial
/// that is not a pivot of `J` at its level.
#[derive(Debug)]
pub struct ModulePresentation {
    verma: VermaModule,
    kind: QuotientKind,
    cap: usize,
    levels: Mutex<Levels>,
    act_cache: Mutex<HashMap<(i64, PbwMonomial), UNeg>>,
}

impl ModulePresentation {
    fn with_kind(c: Rational, h: Rational, kind: QuotientKind) -> Self {
        ModulePresentation {
            verma: VermaModule::new(c, h),
            kind,
            cap: DEFAULT_LEVEL_CAP,
            levels: Mutex::new(Levels::default()),
            act_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn verma(c: Rational, h: Rational) -> Self {
        Self::with_kind(c, h, QuotientKind::Verma)
    }

    /// `L(c,h)`, with `J(c,h)` computed as the radical of the contravariant form.
    pub fn irreducible(c: Rational, h: Rational) -> Self {
        Self::with_kind(c, h, QuotientKind::Radical)
    }

    /// Quotient by the submodule generated by `gens`; fails when a generator is
    /// not homogeneous or not singular modulo the lower-level generators.
    pub fn generated(c: Rational, h: Rational, mut gens: Vec<UNeg>) -> Result<Self> {
        let mut top = 0;
        for g in &gens {
            let level = homogeneous_level(g)
                .ok_or_else(|| Error::NotSingular("generator is zero or not homogeneous".into()))?;
            if level == 0 {
                return Err(Error::NotSingular("a nonzero multiple of v generates everything".into()));
            }
            top = top.max(level);
        }
        gens.sort_by_key(|g| homogeneous_level(g).unwrap());
        let p = Self::with_kind(c, h, QuotientKind::Generated(gens.clone()));
        for g in &gens {
            for k in [1, 2] {
                let image = p.reduce(&p.verma.act(k, g))?;
                if !image.is_empty() {
                    return Err(Error::NotSingular(format!(
                        "L_{k} does not annihilate {} in the quotient",
                        crate::words::fmt_combination(g)
                    )));
                }
            }
        }
        Ok(p)
    }

    /// Quotient of `V(c,h)` by the singular vectors found stage by stage at
    /// levels `1..upto`: each stage adds the singular vectors of the current
    /// quotient as new generators.
    pub fn staged(c: Rational, h: Rational, upto: usize) -> Result<Self> {
        let mut gens: Vec<UNeg> = Vec::new();
        let mut current = Self::verma(c.clone(), h.clone());
        for level in 1..upto {
            let found = current.singular_vectors(level)?;
            if !found.is_empty() {
                gens.extend(found);
                current = Self::generated(c.clone(), h.clone(), gens.clone())?;
            }
        }
        Ok(current)
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn c(&self) -> &Rational {
        self.verma.c()
    }

    pub fn h(&self) -> &Rational {
        self.verma.h()
    }

    pub fn kind(&self) -> &QuotientKind {
        &self.kind
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn verma_module(&self) -> &VermaModule {
        &self.verma
    }

    /// The submodule `J` at level `n`, in reduced echelon form.
    pub fn submodule_level(&self, n: usize) -> Result<Arc<EchelonBasis<PbwMonomial>>> {
        if n > self.cap {
            return Err(Error::LevelCap { level: n, cap: self.cap });
        }
        let mut st = self.levels.lock().unwrap();
        while st.submodule.len() <= n {
            let level = st.submodule.len();
            let basis = self.build_level(&mut st, level);
            st.submodule.push(Arc::new(basis));
        }
        Ok(st.submodule[n].clone())
    }

    fn build_level(&self, st: &mut Levels, level: usize) -> EchelonBasis<PbwMonomial> {
        match &self.kind {
            QuotientKind::Verma => EchelonBasis::new(),
            QuotientKind::Radical => {
                if level == 0 {
                    return EchelonBasis::new();
                }
                extend_gram(&self.verma, &mut st.gram, level);
                radical(&st.gram[level])
            }
            QuotientKind::Generated(gens) => {
                let mut basis = EchelonBasis::new();
                for j in 1..=level {
                    for row in st.submodule[level - j].rows() {
                        basis.insert(&self.verma.act(-(j as i64), row));
                    }
                }
                for g in gens.iter().filter(|g| homogeneous_level(g) == Some(level)) {
                    basis.insert(g);
                }
                basis
            }
        }
    }

    /// Dimension of the quotient at level `n`.
    pub fn dim(&self, n: usize) -> Result<usize> {
        Ok(partitions(n).len() - self.submodule_level(n)?.dim())
    }

    /// The monomials spanning the quotient at level `n`.
    pub fn basis(&self, n: usize) -> Result<Vec<PbwMonomial>> {
        let j = self.submodule_level(n)?;
        Ok(partitions(n).into_iter().filter(|m| !j.is_pivot(m)).collect())
    }

    /// Canonical representative of `x` modulo `J`.
    pub fn reduce(&self, x: &UNeg) -> Result<UNeg> {
        if matches!(self.kind, QuotientKind::Verma) {
            return Ok(x.clone());
        }
        let mut by_level: HashMap<usize, UNeg> = HashMap::new();
        for (m, c) in x {
            by_level.entry(m.level()).or_default().insert(m.clone(), c.clone());
        }
        let mut out = UNeg::new();
        for (level, part) in by_level {
            let j = self.submodule_level(level)?;
            out.extend(j.reduce(&part));
        }
        Ok(out)
    }

    /// `L_k` applied to a basis monomial, reduced.
    pub fn act_monomial(&self, k: i64, m: &PbwMonomial) -> Result<UNeg> {
        let key = (k, m.clone());
        if let Some(hit) = self.act_cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let out = self.reduce(&self.verma.act_monomial(k, m))?;
        self.act_cache.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    pub fn act(&self, k: i64, x: &UNeg) -> Result<UNeg> {
        let mut out = UNeg::new();
        for (m, c) in x {
            add_scaled(&mut out, &self.act_monomial(k, m)?, c);
        }
        Ok(out)
    }

    pub fn apply(&self, expr: &WordExpr, x: &UNeg) -> Result<UNeg> {
        let mut out = UNeg::new();
        for (c, w) in &expr.terms {
            let mut y = self.reduce(x)?;
            for &k in w.indices().iter().rev() {
                y = self.act(k, &y)?;
            }
            add_scaled(&mut out, &y, c);
        }
        Ok(out)
    }

    /// Basis of the vectors at level `n` killed by `L_1` and `L_2` in this
    /// quotient, in reduced echelon form: each vector has coefficient 1 on its
    /// first monomial, which is `L_{-1}^n` whenever some vector involves it.
    pub fn singular_vectors(&self, n: usize) -> Result<Vec<UNeg>> {
        if n == 0 {
            return Ok(Vec::new());
        }
        let mut columns = Vec::new();
        for b in self.basis(n)? {
            let mut col: SparseVec<(u8, PbwMonomial)> = SparseVec::new();
            for k in [1u8, 2] {
                for (m, c) in self.act_monomial(k as i64, &b)? {
                    col.insert((k, m), c);
                }
            }
            columns.push((b, col));
        }
        Ok(null_space(&columns).rows().cloned().collect())
    }

    /// Minimal generators of `J` up to level `max_level`: at each level, the
    /// part of `J` not reached by lowering operators from below.
    pub fn generators(&self, max_level: usize) -> Result<Vec<UNeg>> {
        let mut out = Vec::new();
        for level in 1..=max_level {
            let j = self.submodule_level(level)?;
            let mut span = EchelonBasis::new();
            for i in 1..=level {
                for row in self.submodule_level(level - i)?.rows() {
                    span.insert(&self.verma.act(-(i as i64), row));
                }
            }
            for row in j.rows() {
                if span.insert(row) {
                    out.push(row.clone());
                }
            }
        }
        Ok(out)
    }
}

/// The level of a nonzero homogeneous element.
pub fn homogeneous_level(x: &UNeg) -> Option<usize> {
    let mut it = x.keys().map(|m| m.level());
    let first = it.next()?;
    it.all(|l| l == first).then_some(first)
}

/// Singular vectors of level `n` in the full Verma module `V(c,h)`.
pub fn singular_vectors(c: &Rational, h: &Rational, n: usize) -> Result<Vec<UNeg>> {
    ModulePresentation::verma(c.clone(), h.clone()).singular_vectors(n)
}

/// Smallest level `1..=max_level` carrying a singular vector in `V(c,h)`.
pub fn reducibility_degree(c: &Rational, h: &Rational, max_level: usize) -> Result<Option<usize>> {
    let v = ModulePresentation::verma(c.clone(), h.clone()).with_cap(max_level.max(DEFAULT_LEVEL_CAP));
    for n in 1..=max_level {
        if !v.singular_vectors(n)?.is_empty() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// `L(c,h)` with its levels up to `max_level` built eagerly.
pub fn irreducible_quotient(c: &Rational, h: &Rational, max_level: usize) -> Result<ModulePresentation> {
    let p = ModulePresentation::irreducible(c.clone(), h.clone()).with_cap(max_level.max(DEFAULT_LEVEL_CAP));
    p.submodule_level(max_level)?;
    Ok(p)
}
