//! Words in the Virasoro generators `L_k`, PBW monomials of the lowering
//! subalgebra, and straightening of words into ordered form.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{add_term, SparseVec};
use crate::scalar::{int, parse_rational, Rational};

/// `L_{-i_n} ... L_{-i_1}` with `i_n >= ... >= i_1 > 0`, stored left to right
/// (largest part first). The empty monomial is the identity.
///
/// The derived ordering compares parts lexicographically, so `L_{-1}^N` is the
/// smallest monomial of level `N` and becomes the preferred echelon pivot.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PbwMonomial(Vec<u32>);

impl PbwMonomial {
    pub fn identity() -> Self {
        PbwMonomial(Vec::new())
    }

    /// Builds a monomial from parts in any order.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse("PBW monomial parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PbwMonomial(parts))
    }

    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]) && !parts.contains(&0));
        PbwMonomial(parts)
    }

    /// `L_{-1}^n`.
    pub fn l_minus_one_power(n: usize) -> Self {
        PbwMonomial(vec![1; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn level(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Generator indices of the word, left to right (`[-3, -1]` for `L_{-3}L_{-1}`).
    pub fn as_word(&self) -> GenWord {
        GenWord(self.0.iter().map(|&p| -(p as i64)).collect())
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == p {
                j += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if j - i == 1 {
                write!(f, "L-{p}")?;
            } else {
                write!(f, "L-{p}^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// All partitions of `n` as PBW monomials, in ascending monomial order.
pub fn partitions(n: usize) -> Vec<PbwMonomial> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<u32>, out: &mut Vec<PbwMonomial>) {
        if rem == 0 {
            out.push(PbwMonomial(cur.clone()));
            return;
        }
        for p in 1..=max.min(rem) {
            cur.push(p as u32);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// An element of `U(Vir_-)`: a combination of PBW monomials.
pub type UNeg = SparseVec<PbwMonomial>;

/// Formats a combination of monomials in the word syntax, e.g. `1*L-1^2 - 2/5*L-2`.
pub fn fmt_combination(x: &UNeg) -> String {
    if x.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in x.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&format!("{}*{}", c.abs(), m));
    }
    out
}

/// A product of generators `L_a L_b ...`; the rightmost factor acts first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GenWord(pub Vec<i64>);

impl GenWord {
    pub fn indices(&self) -> &[i64] {
        &self.0
    }

    /// Sum of the indices; the word shifts the `L_0`-eigenvalue by minus this.
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|k| format!("L{k}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A rational linear combination of generator words.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WordExpr {
    pub terms: Vec<(Rational, GenWord)>,
}

impl WordExpr {
    pub fn word(w: GenWord) -> Self {
        WordExpr {
            terms: vec![(Rational::one(), w)],
        }
    }

    pub fn from_uneg(u: &UNeg) -> Self {
        WordExpr {
            terms: u.iter().map(|(m, c)| (c.clone(), m.as_word())).collect(),
        }
    }

    pub fn scale(mut self, s: &Rational) -> Self {
        for (c, _) in &mut self.terms {
            *c *= s;
        }
        self
    }

    pub fn plus(mut self, other: WordExpr) -> Self {
        self.terms.extend(other.terms);
        self
    }

    /// `self * other` (concatenation of words, `other` acting first).
    pub fn then_after(&self, other: &WordExpr) -> Self {
        let mut terms = Vec::new();
        for (a, u) in &self.terms {
            for (b, w) in &other.terms {
                let mut idx = u.0.clone();
                idx.extend_from_slice(&w.0);
                terms.push((a * b, GenWord(idx)));
            }
        }
        WordExpr { terms }
    }

    /// Parses expressions like `"L-2*L-2 - 3/5*L-4"` or `"64*L-2^3 + 93*L-3^2"`.
    /// Whitespace is ignored; a bare rational denotes a multiple of the identity.
    pub fn parse(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty word expression".into()));
        }
        let mut terms = Vec::new();
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut pieces = Vec::new();
        for i in 0..bytes.len() {
            let c = bytes[i] as char;
            // a sign starts a new term unless it follows `L`, `^`, `/` or `*`
            if (c == '+' || c == '-') && i > 0 {
                let prev = bytes[i - 1] as char;
                if prev != 'L' && prev != '^' && prev != '/' && prev != '*' {
                    pieces.push(&compact[start..i]);
                    start = i;
                }
            }
        }
        pieces.push(&compact[start..]);
        for piece in pieces {
            terms.push(parse_term(piece)?);
        }
        Ok(WordExpr { terms })
    }
}

fn parse_term(piece: &str) -> Result<(Rational, GenWord)> {
    let bad = || Error::Parse(format!("malformed term `{piece}`"));
    let (sign, body) = match piece.strip_prefix('-') {
        Some(rest) => (-Rational::one(), rest),
        None => (Rational::one(), piece.strip_prefix('+').unwrap_or(piece)),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let mut coeff = sign;
    let mut word = Vec::new();
    for factor in body.split('*') {
        if let Some(rest) = factor.strip_prefix('L') {
            let (idx, pow) = match rest.split_once('^') {
                Some((i, p)) => (i, p.parse::<usize>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let k: i64 = idx.parse().map_err(|_| bad())?;
            word.extend(std::iter::repeat_n(k, pow));
        } else {
            coeff *= parse_rational(factor).map_err(|_| bad())?;
        }
    }
    Ok((coeff, GenWord(word)))
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, w)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            write!(f, "{}*{}", c.abs(), w)?;
        }
        Ok(())
    }
}

/// Result of `[L_n, L_m]`: a multiple of `L_{n+m}` plus a central scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub index: i64,
    pub coeff: Rational,
    pub central: Rational,
}

/// `[L_n, L_m] = (n - m) L_{n+m} + δ_{m,-n} (n³ - n)/12 · c`.
pub fn bracket(n: i64, m: i64, c: &Rational) -> Bracket {
    let central = if m == -n {
        int(n * n * n - n) / int(12) * c
    } else {
        Rational::zero()
    };
    Bracket {
        index: n + m,
        coeff: int(n - m),
        central,
    }
}

/// A word in ordered form: lowering part, power of `L_0`, raising part
/// (indices ascending left to right).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedTerm {
    pub lowering: PbwMonomial,
    pub l0_power: u32,
    /// Positive indices, ascending left to right; the last one acts first.
    pub raising: Vec<i64>,
}

impl fmt::Display for OrderedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        if !self.lowering.is_identity() {
            factors.push(self.lowering.to_string());
        }
        match self.l0_power {
            0 => {}
            1 => factors.push("L0".into()),
            p => factors.push(format!("L0^{p}")),
        }
        factors.extend(self.raising.iter().map(|k| format!("L{k}")));
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// Straightens a word into a combination of ordered terms using the bracket;
/// the central element is replaced by the scalar `c`.
pub fn normal_order(w: &GenWord, c: &Rational) -> BTreeMap<OrderedTerm, Rational> {
    let mut pending: SparseVec<Vec<i64>> = SparseVec::new();
    pending.insert(w.0.clone(), Rational::one());
    let mut done: SparseVec<Vec<i64>> = SparseVec::new();
    while let Some((word, coef)) = pending.pop_first() {
        match word.windows(2).position(|p| p[0] > p[1]) {
            None => add_term(&mut done, word, coef),
            Some(i) => {
                let (a, b) = (word[i], word[i + 1]);
                let mut swapped = word.clone();
                swapped.swap(i, i + 1);
                add_term(&mut pending, swapped, coef.clone());
                let br = bracket(a, b, c);
                let mut merged = word[..i].to_vec();
                merged.push(br.index);
                merged.extend_from_slice(&word[i + 2..]);
                add_term(&mut pending, merged, &coef * &br.coeff);
                if !br.central.is_zero() {
                    let mut dropped = word[..i].to_vec();
                    dropped.extend_from_slice(&word[i + 2..]);
                    add_term(&mut pending, dropped, &coef * &br.central);
                }
            }
        }
    }
    done.into_iter()
        .map(|(word, coef)| {
            let lowering: Vec<u32> = word.iter().filter(|&&k| k < 0).map(|&k| (-k) as u32).collect();
            let l0_power = word.iter().filter(|&&k| k == 0).count() as u32;
            let raising: Vec<i64> = word.iter().copied().filter(|&k| k > 0).collect();
            (
                OrderedTerm {
                    lowering: PbwMonomial::from_sorted(lowering),
                    l0_power,
                    raising,
                },
                coef,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn bracket_examples() {
        let c = rat(7, 3);
        assert_eq!(
            bracket(2, -2, &c),
            Bracket { index: 0, coeff: int(4), central: &c / int(2) }
        );
        let b = bracket(1, 1, &c);
        assert!(b.coeff.is_zero() && b.central.is_zero());
        assert_eq!(bracket(3, -1, &c), Bracket { index: 2, coeff: int(4), central: int(0) });
    }

    fn term(low: &[u32], l0: u32, raise: &[i64]) -> OrderedTerm {
        OrderedTerm {
            lowering: PbwMonomial::new(low.to_vec()).unwrap(),
            l0_power: l0,
            raising: raise.to_vec(),
        }
    }

    #[test]
    fn normal_order_examples() {
        let c = rat(-22, 5);
        let r = normal_order(&GenWord(vec![-1, -2]), &c);
        assert_eq!(r.len(), 2);
        assert_eq!(r[&term(&[2, 1], 0, &[])], int(1));
        assert_eq!(r[&term(&[3], 0, &[])], int(1));

        let r = normal_order(&GenWord(vec![1, -1]), &c);
        assert_eq!(r[&term(&[1], 0, &[1])], int(1));
        assert_eq!(r[&term(&[], 1, &[])], int(2));

        let r = normal_order(&GenWord(vec![2, -2]), &c);
        assert_eq!(r[&term(&[2], 0, &[2])], int(1));
        assert_eq!(r[&term(&[], 1, &[])], int(4));
        assert_eq!(r[&term(&[], 0, &[])], rat(-11, 5));
    }

    #[test]
    fn partitions_are_ordered() {
        let p4: Vec<String> = partitions(4).iter().map(|m| m.to_string()).collect();
        assert_eq!(p4, ["L-1^4", "L-2*L-1^2", "L-2^2", "L-3*L-1", "L-4"]);
        assert_eq!(partitions(12).len(), 77);
        assert_eq!(partitions(0), vec![PbwMonomial::identity()]);
    }

    #[test]
    fn parse_words() {
        let e = WordExpr::parse("L-2*L-2 - 3/5*L-4").unwrap();
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.terms[0], (int(1), GenWord(vec![-2, -2])));
        assert_eq!(e.terms[1], (rat(-3, 5), GenWord(vec![-4])));
        let e = WordExpr::parse("64*L-2^3 + 93 * L-3^2-264*L-4*L-2 -108*L-6").unwrap();
        assert_eq!(e.terms[0], (int(64), GenWord(vec![-2, -2, -2])));
        assert_eq!(e.terms[2], (int(-264), GenWord(vec![-4, -2])));
        assert_eq!(e.terms[3], (int(-108), GenWord(vec![-6])));
        let e = WordExpr::parse("-L1*L-1 + 2").unwrap();
        assert_eq!(e.terms[0], (int(-1), GenWord(vec![1, -1])));
        assert_eq!(e.terms[1], (int(2), GenWord(vec![])));
        assert!(WordExpr::parse("L*2").is_err());
        assert!(WordExpr::parse("").is_err());
    }

    #[test]
    fn monomial_display() {
        let m = PbwMonomial::new(vec![1, 2, 1]).unwrap();
        assert_eq!(m.to_string(), "L-2*L-1^2");
        let mut u = UNeg::new();
        u.insert(PbwMonomial::l_minus_one_power(2), int(1));
        u.insert(PbwMonomial::new(vec![2]).unwrap(), rat(-2, 5));
        assert_eq!(fmt_combination(&u), "1*L-1^2 - 2/5*L-2");
    }
}
