use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::ring::{QAlgebra, Ring};

/// Power series in `t` truncated after `t^order`.
///
/// Every operation is exact modulo `t^(order+1)`; operands must share the
/// same order.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncSeries<R> {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: (0..=order).map(|_| R::zero()).collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = R::one();
        s
    }

    /// Pads with zeros or truncates to the requested order.
    pub fn from_coeffs(order: usize, coeffs: Vec<R>) -> Self {
        let mut coeffs = coeffs;
        coeffs.truncate(order + 1);
        while coeffs.len() < order + 1 {
            coeffs.push(R::zero());
        }
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// `f(t) ↦ f(-t)`.
    pub fn negate_variable(&self) -> Self {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        }
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "series orders differ");
    }
}

impl<R: QAlgebra> TruncSeries<R> {
    /// Multiplicative inverse; the constant term must be invertible.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .try_inverse()
            .ok_or_else(|| Error::domain("series constant term is not invertible"))?;
        let n = self.order();
        let mut out: Vec<R> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = R::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * out[k - j].clone();
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// `exp(f)` for `f` with zero constant term, via `g' = f' g`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::domain("exp needs a series with zero constant term"));
        }
        let n = self.order();
        let mut out: Vec<R> = Vec::with_capacity(n + 1);
        out.push(R::one());
        for m in 1..=n {
            let mut acc = R::zero();
            for k in 1..=m {
                acc = acc + self.coeffs[k].scale_integer(&Integer::from(k)) * out[m - k].clone();
            }
            out.push(acc.scale(&Rational::from((1, m as u64))));
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// `log(g)` for `g` with constant term one, via `f' = g'/g`.
    pub fn log(&self) -> Result<Self> {
        if !(self.coeffs[0].clone() - R::one()).is_zero() {
            return Err(Error::domain("log needs a series with constant term 1"));
        }
        let n = self.order();
        let mut out: Vec<R> = Vec::with_capacity(n + 1);
        out.push(R::zero());
        for m in 1..=n {
            let mut acc = self.coeffs[m].scale_integer(&Integer::from(m));
            for (k, o) in out.iter().enumerate().skip(1) {
                acc = acc - o.scale_integer(&Integer::from(k)) * self.coeffs[m - k].clone();
            }
            out.push(acc.scale(&Rational::from((1, m as u64))));
        }
        Ok(TruncSeries { coeffs: out })
    }
}

impl<R: Ring> Add for TruncSeries<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check_order(&rhs);
        TruncSeries {
            coeffs: self.coeffs.into_iter().zip(rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<R: Ring> Neg for TruncSeries<R> {
    type Output = Self;
    fn neg(self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<R: Ring> Sub for TruncSeries<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Mul for TruncSeries<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check_order(&rhs);
        let n = self.order();
        let mut out: Vec<R> = (0..=n).map(|_| R::zero()).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                let cur = std::mem::replace(&mut out[i + j], R::zero());
                out[i + j] = cur + a.clone() * b.clone();
            }
        }
        TruncSeries { coeffs: out }
    }
}
