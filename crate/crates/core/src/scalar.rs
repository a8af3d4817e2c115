//! Exact rational scalars and univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The only scalar type used by the library. Always kept in lowest terms with a
/// positive denominator, so structural equality is mathematical equality.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"num/den"` or a plain integer. Surrounding whitespace is ignored.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("malformed rational `{s}`"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// `"num/den"`, with the denominator omitted when it is 1.
pub fn fmt_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// The integer value of `q` when it is integral and fits in an `i64`.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if is_integer(q) {
        q.numer().to_i64()
    } else {
        None
    }
}

/// Exact square root of a non-negative rational, if it is rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Dense univariate polynomial over the rationals, coefficients in ascending
/// degree. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The polynomial `n`.
    pub fn var() -> Self {
        Poly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `n + shift`.
    pub fn linear(shift: Rational) -> Self {
        Poly::from_coeffs(vec![shift, Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Monic polynomial with the given roots (with multiplicity).
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        roots
            .into_iter()
            .fold(Poly::constant(Rational::one()), |acc, r| {
                &acc * &Poly::linear(-r.clone())
            })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// All integer roots, ascending and without repetition.
    ///
    /// Denominators are cleared, the `n^k` factor is split off (contributing the
    /// root 0), and the remaining candidates are the divisors of the constant
    /// term, further bounded by the Cauchy root bound.
    pub fn integer_roots(&self) -> Result<Vec<i64>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let shift = ints.iter().take_while(|c| c.is_zero()).count();
        let reduced = &ints[shift..];
        let mut roots = Vec::new();
        if shift > 0 {
            roots.push(0);
        }
        if reduced.len() > 1 {
            let constant = reduced[0].abs();
            let lead = reduced.last().unwrap().abs();
            let max_ratio = reduced[..reduced.len() - 1]
                .iter()
                .map(|c| c.abs())
                .max()
                .unwrap()
                / &lead;
            let bound = max_ratio + 1;
            for d in divisors(&constant) {
                if d > bound {
                    continue;
                }
                let Some(d) = d.to_i64() else { continue };
                for z in [d, -d] {
                    if self.eval(&int(z)).is_zero() {
                        roots.push(z);
                    }
                }
            }
        }
        roots.sort_unstable();
        roots.dedup();
        Ok(roots)
    }

    /// Newton interpolation through the given points; the result has degree
    /// below the number of points.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Poly> {
        if points.is_empty() {
            return Err(Error::Interpolation("no points".into()));
        }
        for (i, (x, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(y, _)| y == x) {
                return Err(Error::Interpolation(format!(
                    "duplicate abscissa {}",
                    fmt_rational(x)
                )));
            }
        }
        let n = points.len();
        let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&points[i].0 - &points[i - j].0);
            }
        }
        let mut acc = Poly::constant(dd[n - 1].clone());
        for i in (0..n - 1).rev() {
            acc = &(&acc * &Poly::linear(-points[i].0.clone())) + &Poly::constant(dd[i].clone());
        }
        Ok(acc)
    }

    /// Ascending coefficient list in `"num/den"` form.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fmt_rational).collect()
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let q = n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        Poly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let var = match deg {
                0 => String::new(),
                1 => "n".to_string(),
                d => format!("n^{d}"),
            };
            if deg == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{abs}*{var}")?;
            }
        }
        Ok(())
    }
}
