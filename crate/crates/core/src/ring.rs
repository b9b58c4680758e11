//! Minimal commutative-ring abstraction shared by the polynomial, series and
//! Bell-polynomial code.
//!
//! The same operator code runs over exact integers and rationals, over formal
//! MZV-symbol expressions, over polynomials in `T`, and over multiprecision
//! balls. Arithmetic goes through the owned `std::ops` traits; callers clone
//! where they need to keep an operand.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

/// A commutative ring with unit.
pub trait Ring:
    Clone
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Image of an integer under the unique ring map from `Z`.
    fn from_integer(n: &Integer) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(&Integer::from(n))
    }

    fn scale_integer(&self, n: &Integer) -> Self {
        self.clone() * Self::from_integer(n)
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// A ring containing the rationals.
pub trait QAlgebra: Ring {
    fn from_rational(q: &Rational) -> Self;

    fn scale(&self, q: &Rational) -> Self {
        self.clone() * Self::from_rational(q)
    }

    /// Multiplicative inverse, when it exists and can be certified.
    fn try_inverse(&self) -> Option<Self>;
}

impl Ring for Integer {
    fn zero() -> Self {
        Integer::new()
    }
    fn one() -> Self {
        Integer::from(1)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_integer(n: &Integer) -> Self {
        n.clone()
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_integer(n: &Integer) -> Self {
        Rational::from(n)
    }
}

impl QAlgebra for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn try_inverse(&self) -> Option<Self> {
        if *self == 0 {
            None
        } else {
            Some(self.clone().recip())
        }
    }
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

pub fn binomial(n: u32, k: u32) -> Integer {
    if k > n {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(n, k))
}

/// Parses `p/q` or an integer into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Integer = p.trim().parse().ok()?;
            let q: Integer = q.trim().parse().ok()?;
            if q == 0 {
                None
            } else {
                Some(Rational::from((p, q)))
            }
        }
        None => s.parse::<Integer>().ok().map(Rational::from),
    }
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
