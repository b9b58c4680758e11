use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Integer;

use crate::ring::{QAlgebra, Ring};

/// Polynomial in the indeterminate `T` over a coefficient ring.
///
/// Trailing zero coefficients are always pruned, so the zero polynomial has
/// no coefficients and `degree` is `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct TPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> TPoly<R> {
    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `T`.
    pub fn t() -> Self {
        Self::monomial(R::one(), 1)
    }

    /// `c · T^n`.
    pub fn monomial(c: R, n: usize) -> Self {
        let mut coeffs: Vec<R> = (0..n).map(|_| R::zero()).collect();
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `T^n`, zero beyond the degree.
    pub fn coeff(&self, n: usize) -> R {
        self.coeffs.get(n).cloned().unwrap_or_else(R::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale_by(&self, c: &R) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn map<S: Ring>(&self, mut f: impl FnMut(&R) -> S) -> TPoly<S> {
        TPoly::from_coeffs(self.coeffs.iter().map(&mut f).collect())
    }

    pub fn try_map<S: Ring, E>(&self, mut f: impl FnMut(&R) -> Result<S, E>) -> Result<TPoly<S>, E> {
        Ok(TPoly::from_coeffs(
            self.coeffs.iter().map(&mut f).collect::<Result<Vec<S>, E>>()?,
        ))
    }

    /// `T^shift · self`.
    pub fn shift(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs: Vec<R> = (0..shift).map(|_| R::zero()).collect();
        coeffs.extend(self.coeffs.iter().cloned());
        TPoly { coeffs }
    }
}

impl<R: QAlgebra> TPoly<R> {
    pub fn scale(&self, q: &rug::Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.scale(q)).collect())
    }
}

impl<R: Ring> Add for TPoly<R> {
    type Output = TPoly<R>;
    fn add(self, rhs: TPoly<R>) -> TPoly<R> {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (i, c) in short.into_iter().enumerate() {
            let cur = std::mem::replace(&mut long[i], R::zero());
            long[i] = cur + c;
        }
        TPoly::from_coeffs(long)
    }
}

impl<R: Ring> Neg for TPoly<R> {
    type Output = TPoly<R>;
    fn neg(self) -> TPoly<R> {
        TPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<R: Ring> Sub for TPoly<R> {
    type Output = TPoly<R>;
    fn sub(self, rhs: TPoly<R>) -> TPoly<R> {
        self + (-rhs)
    }
}

impl<R: Ring> Mul for TPoly<R> {
    type Output = TPoly<R>;
    fn mul(self, rhs: TPoly<R>) -> TPoly<R> {
        if self.is_zero() || rhs.is_zero() {
            return TPoly::zero();
        }
        let mut out: Vec<R> = (0..self.coeffs.len() + rhs.coeffs.len() - 1)
            .map(|_| R::zero())
            .collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let cur = std::mem::replace(&mut out[i + j], R::zero());
                out[i + j] = cur + a.clone() * b.clone();
            }
        }
        TPoly::from_coeffs(out)
    }
}

impl<R: Ring> Ring for TPoly<R> {
    fn zero() -> Self {
        TPoly::zero()
    }
    fn one() -> Self {
        TPoly::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_integer(n: &Integer) -> Self {
        TPoly::constant(R::from_integer(n))
    }
}

impl<R: QAlgebra> QAlgebra for TPoly<R> {
    fn from_rational(q: &rug::Rational) -> Self {
        TPoly::constant(R::from_rational(q))
    }
    fn try_inverse(&self) -> Option<Self> {
        match self.degree() {
            Some(0) => self.coeffs[0].try_inverse().map(TPoly::constant),
            _ => None,
        }
    }
}

/// Renders `c_d·T^d + ... + c_0`, highest power first.
///
/// Coefficients whose rendering contains a space are parenthesized; unit
/// coefficients are elided; a leading minus on a coefficient becomes the
/// joining sign.
impl<R: Ring + fmt::Display> fmt::Display for TPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (neg, body) = match text.strip_prefix('−').or_else(|| text.strip_prefix('-')) {
                // a constant term keeps its inner signs, so its leading sign can move out
                Some(rest) if n == 0 || !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, text.clone()),
            };
            let power = match n {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{n}"),
            };
            let term = if n == 0 {
                body
            } else if body == "1" {
                power
            } else if body.contains(' ') {
                format!("({body})·{power}")
            } else {
                format!("{body}·{power}")
            };
            match (first, neg) {
                (true, false) => write!(f, "{term}")?,
                (true, true) => write!(f, "−{term}")?,
                (false, false) => write!(f, " + {term}")?,
                (false, true) => write!(f, " − {term}")?,
            }
            first = false;
        }
        Ok(())
    }
}
