//! The intermediate series `V_{α,β}` with basis `v_m` and its irreducible
//! version `V'_{α,β}`, which drops `v_0` or `v_{-1}` in the degenerate cases.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{add_term, SparseVec};
use crate::scalar::{fmt_rational, int, is_integer, Rational};

/// Which basis vector, if any, is missing from `V'_{α,β}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Variant {
    Full,
    /// `α ∈ ℤ`, `β = 0`: the quotient `V_{0,0}/ℂv_0`.
    DropV0,
    /// `α ∈ ℤ`, `β = 1`: the submodule spanned by `v_m`, `m ≠ -1`.
    DropVminus1,
}

/// Parameters of `V'_{α,β}`. Integral `α` is replaced by 0, which only
/// relabels the basis, and the original value is kept for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsParams {
    pub alpha_input: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub variant: Variant,
}

impl IsParams {
    pub fn new(alpha: Rational, beta: Rational) -> Self {
        let integral = is_integer(&alpha);
        let normalized = if integral { Rational::zero() } else { alpha.clone() };
        let variant = if !integral {
            Variant::Full
        } else if beta.is_zero() {
            Variant::DropV0
        } else if beta == int(1) {
            Variant::DropVminus1
        } else {
            Variant::Full
        };
        IsParams {
            alpha_input: alpha,
            alpha: normalized,
            beta,
            variant,
        }
    }

    /// The full module `V_{α,β}` with `α` kept as given, for identities that
    /// hold for every basis index.
    pub fn full(alpha: Rational, beta: Rational) -> Self {
        IsParams {
            alpha_input: alpha.clone(),
            alpha,
            beta,
            variant: Variant::Full,
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.alpha != self.alpha_input
    }

    /// The missing basis index, if any.
    pub fn dropped(&self) -> Option<i64> {
        match self.variant {
            Variant::Full => None,
            Variant::DropV0 => Some(0),
            Variant::DropVminus1 => Some(-1),
        }
    }

    pub fn exists(&self, m: i64) -> bool {
        self.dropped() != Some(m)
    }

    /// Coefficient of `v_{m+n}` in `L_n v_m` in the full module `V_{α,β}`.
    pub fn coefficient(&self, n: i64, m: i64) -> Rational {
        -(int(m) + &self.alpha + &self.beta + int(n) * &self.beta)
    }

    /// `L_n v_m` in `V'_{α,β}`, as `(m + n, coefficient)`, or `None` when zero.
    pub fn act_basis(&self, n: i64, m: i64) -> Result<Option<(i64, Rational)>> {
        if !self.exists(m) {
            return Err(Error::MissingBasisVector(m));
        }
        let target = m + n;
        let c = self.coefficient(n, m);
        if c.is_zero() {
            return Ok(None);
        }
        if !self.exists(target) {
            return match self.variant {
                // v_0 is zero in the quotient
                Variant::DropV0 => Ok(None),
                _ => Err(Error::Internal(format!(
                    "L_{n} v_{m} has a nonzero component on the dropped vector v_{target}"
                ))),
            };
        }
        Ok(Some((target, c)))
    }

    /// `L_0` eigenvalue of `v_m`.
    pub fn weight(&self, m: i64) -> Rational {
        self.coefficient(0, m)
    }
}

/// Normalizes integral `α` to 0 and selects the variant.
pub fn variant_of(alpha: &Rational, beta: &Rational) -> IsParams {
    IsParams::new(alpha.clone(), beta.clone())
}

/// A finite combination of the `v_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsElement {
    pub params: IsParams,
    pub terms: SparseVec<i64>,
}

impl IsElement {
    pub fn basis(params: &IsParams, m: i64) -> Result<Self> {
        if !params.exists(m) {
            return Err(Error::MissingBasisVector(m));
        }
        let mut terms = SparseVec::new();
        terms.insert(m, Rational::from_integer(1.into()));
        Ok(IsElement {
            params: params.clone(),
            terms,
        })
    }

    pub fn from_terms(params: &IsParams, terms: SparseVec<i64>) -> Result<Self> {
        if let Some(&m) = terms.keys().find(|&&m| !params.exists(m)) {
            return Err(Error::MissingBasisVector(m));
        }
        Ok(IsElement {
            params: params.clone(),
            terms,
        })
    }

    pub fn act(&self, n: i64) -> Result<Self> {
        let mut terms = SparseVec::new();
        for (&m, c) in &self.terms {
            if let Some((t, k)) = self.params.act_basis(n, m)? {
                add_term(&mut terms, t, k * c);
            }
        }
        Ok(IsElement {
            params: self.params.clone(),
            terms,
        })
    }
}

impl fmt::Display for IsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{}*v[{m}]", fmt_rational(&c.abs()))?;
        }
        Ok(())
    }
}
