//! Exact arithmetic substrate: rationals, generalized binomials and dense
//! univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("binomial lower index must be nonnegative, got {0}")]
    NegativeLowerIndex(i64),
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("interpolation nodes must be distinct")]
    RepeatedNode,
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or a plain integer literal.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let t = text.trim();
    Rational::from_str(t).map_err(|_| ExactError::BadRational(t.to_string()))
}

/// Renders a rational the way the rest of the crate prints numbers:
/// integers bare, everything else as `p/q`.
pub fn render_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Ring operations shared by [`Rational`] and [`UniPoly`], so that Chern
/// calculus can run with numeric or polynomial coefficients alike.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: Rational) -> Self;

    fn scale(&self, r: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }
}

impl Scalar for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }

    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

/// `x (x-1) ... (x-k+1) / k!` for any scalar `x`.
pub fn falling_binom<T: Scalar>(x: &T, k: u32) -> T {
    let mut acc = T::from_int(1);
    let mut fact = BigInt::one();
    for i in 0..k {
        acc = acc * (x.clone() - T::from_int(i64::from(i)));
        fact *= BigInt::from(i + 1);
    }
    acc.scale(&Rational::new(BigInt::one(), fact))
}

/// Generalized binomial coefficient, defined through the falling factorial
/// for every integer upper argument.
pub fn binom(n: i64, k: i64) -> Result<Rational, ExactError> {
    let k = u32::try_from(k).map_err(|_| ExactError::NegativeLowerIndex(k))?;
    Ok(falling_binom(&int(n), k))
}

/// The polynomial `t -> binom(t + shift, k)`.
pub fn binom_poly(shift: i64, k: i64) -> Result<UniPoly, ExactError> {
    let k = u32::try_from(k).map_err(|_| ExactError::NegativeLowerIndex(k))?;
    Ok(falling_binom(&(UniPoly::var() + UniPoly::constant(int(shift))), k))
}

/// Degree of a polynomial. The zero polynomial has degree `MinusInfinity`,
/// which compares below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

/// Dense univariate polynomial over the rationals. Coefficient `i` multiplies
/// `t^i`; the coefficient vector never ends in a zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The identity polynomial `t`.
    pub fn var() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().copied().map(int).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_int(&self, t: i64) -> Rational {
        self.eval(&int(t))
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(), |acc, c| &(&acc * inner) + &UniPoly::constant(c.clone()))
    }

    /// Lagrange interpolation through the given nodes.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<UniPoly, ExactError> {
        let mut out = UniPoly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = UniPoly::one();
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                if xi == xj {
                    return Err(ExactError::RepeatedNode);
                }
                basis = &basis * &UniPoly::from_coeffs(vec![-xj.clone(), Rational::one()]);
                denom *= xi - xj;
            }
            out = &out + &basis.scale(&(yi / denom));
        }
        Ok(out)
    }

    /// Renders with the given variable name, highest power first.
    pub fn render(&self, var: &str) -> String {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{i}"),
                };
                (c.clone(), mono)
            });
        render_signed_sum(terms)
    }
}

/// Joins `(coefficient, monomial)` pairs as `a*m1 + b*m2 - c*m3`; an empty
/// monomial is the constant term. Returns `"0"` for an empty sum.
pub(crate) fn render_signed_sum(terms: impl IntoIterator<Item = (Rational, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        match (mono.is_empty(), mag.is_one()) {
            (true, _) => out.push_str(&render_rational(&mag)),
            (false, true) => out.push_str(&mono),
            (false, false) => {
                out.push_str(&render_rational(&mag));
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl Scalar for UniPoly {
    fn from_rational(r: Rational) -> Self {
        UniPoly::constant(r)
    }

    fn scale(&self, r: &Rational) -> Self {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| c * r).collect())
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: UniPoly) -> UniPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: &UniPoly) -> UniPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: UniPoly) -> UniPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn falling_factorial_oracle(n: i64, k: i64) -> Rational {
        let num: i64 = (0..k).map(|i| n - i).product();
        let den: i64 = (1..=k).product();
        rat(num, den)
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(5, 0).unwrap(), int(1));
        assert_eq!(binom(-1, 4).unwrap(), int(1));
        assert_eq!(binom(-2, 3).unwrap(), int(-4));
        assert_eq!(binom(2, 3).unwrap(), int(0));
        assert_eq!(binom(-1, 3).unwrap(), int(-1));
        assert_eq!(binom(-2, 4).unwrap(), int(5));
    }

    #[test]
    fn binom_rejects_negative_k() {
        assert_eq!(binom(3, -1), Err(ExactError::NegativeLowerIndex(-1)));
        assert!(binom_poly(0, -2).is_err());
    }

    #[test]
    fn binom_matches_product_oracle_and_pascal() {
        for n in -10..=10 {
            for k in 0..=8 {
                assert_eq!(binom(n, k).unwrap(), falling_factorial_oracle(n, k), "n={n} k={k}");
            }
            for k in 1..=8 {
                assert_eq!(
                    binom(n, k).unwrap(),
                    binom(n - 1, k - 1).unwrap() + binom(n - 1, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn binom_poly_examples() {
        assert_eq!(binom_poly(3, 3).unwrap().eval_int(0), int(1));
        assert_eq!(binom_poly(3, 4).unwrap().eval_int(-1), int(0));
        assert_eq!(binom_poly(3, 4).unwrap().eval_int(-4), int(1));
        assert_eq!(binom_poly(0, 1).unwrap(), UniPoly::var());
        assert_eq!(binom_poly(7, 0).unwrap(), UniPoly::one());
    }

    #[test]
    fn binom_poly_agrees_with_binom() {
        for s in -4..=4 {
            for k in 0..=6 {
                let p = binom_poly(s, k).unwrap();
                assert_eq!(p.degree(), Degree::Finite(k as usize));
                for t in -10..=10 {
                    assert_eq!(p.eval_int(t), binom(t + s, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn poly_arith_examples() {
        let t = UniPoly::var();
        let one = UniPoly::one();
        let sq_minus_one = &(&t + &one) * &(&t - &one);
        assert_eq!(sq_minus_one, UniPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(sq_minus_one.eval(&rat(3, 2)), rat(5, 4));
        let sq = UniPoly::from_ints(&[0, 0, 1]);
        assert_eq!(sq.compose(&(&t + &one)), UniPoly::from_ints(&[1, 2, 1]));
    }

    #[test]
    fn zero_polynomial_degree() {
        assert_eq!(UniPoly::zero().degree(), Degree::MinusInfinity);
        assert!(Degree::MinusInfinity < Degree::Finite(0));
        let t = UniPoly::var();
        assert!((&t - &t).is_zero());
        assert_eq!(UniPoly::from_ints(&[1, 0, 0]).degree(), Degree::Finite(0));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = UniPoly::from_coeffs(vec![rat(1, 3), int(-2), int(0), rat(5, 7)]);
        let pts: Vec<_> = (-2..2).map(|x| (int(x), p.eval_int(x))).collect();
        assert_eq!(UniPoly::interpolate(&pts).unwrap(), p);
        let dup = vec![(int(1), int(0)), (int(1), int(2))];
        assert_eq!(UniPoly::interpolate(&dup), Err(ExactError::RepeatedNode));
    }

    #[test]
    fn rendering() {
        assert_eq!(UniPoly::from_ints(&[-1, 0, 1]).to_string(), "t^2 - 1");
        assert_eq!(UniPoly::zero().to_string(), "0");
        let p = UniPoly::from_coeffs(vec![rat(1, 2), int(-3)]);
        assert_eq!(p.render("b"), "-3*b + 1/2");
        assert_eq!(render_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
