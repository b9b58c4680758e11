use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::Round;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::ring::{QAlgebra, Ring};

/// Precision of exact constants (`0`, `1`, rationals) created without context.
pub const CONSTANT_PREC: u32 = 256;

/// A real number known to lie in `[mid - rad, mid + rad]`.
///
/// Arithmetic runs at the larger operand precision. Every operation widens the
/// radius by the propagated error plus a bound on the rounding of the
/// midpoint, and the `f64` radius is itself always rounded upward.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    mid: Float,
    rad: f64,
}

/// Rounds a nonnegative radius computation upward.
pub(crate) fn up(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        (x * (1.0 + 4.0 * f64::EPSILON)).max(x + f64::MIN_POSITIVE)
    }
}

fn abs_f64(x: &Float) -> f64 {
    up(x.to_f64_round(Round::Up).abs())
}

/// Bound on the rounding error of a freshly rounded value `x`.
fn rounding(x: &Float) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let prec = x.prec() as i32;
    up(abs_f64(x) * 2f64.powi(1 - prec))
}

impl Ball {
    pub fn new(mid: Float, rad: f64) -> Self {
        assert!(rad >= 0.0 && !rad.is_nan(), "ball radius must be nonnegative");
        Ball { mid, rad }
    }

    pub fn exact(mid: Float) -> Self {
        Ball { mid, rad: 0.0 }
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> f64 {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn with_rad(mut self, extra: f64) -> Self {
        self.rad = up(self.rad + extra);
        self
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn abs_upper(&self) -> f64 {
        up(abs_f64(&self.mid) + self.rad)
    }

    /// `|a.mid - b.mid|`, rounded upward.
    pub fn distance(&self, other: &Ball) -> f64 {
        let prec = self.prec().max(other.prec()) + 8;
        let d = Float::with_val_round(prec, &self.mid - &other.mid, Round::Up).0;
        abs_f64(&d)
    }

    /// Midpoint rendered with `digits` significant decimal digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.mid.is_zero() {
            return "0".to_string();
        }
        let s = self.mid.to_string_radix(10, Some(digits));
        normalize_decimal(&s)
    }

    /// Significant digits that the current precision supports.
    pub fn default_digits(&self) -> usize {
        ((self.prec() as f64) * std::f64::consts::LOG10_2).floor() as usize
    }

    pub fn recip(&self) -> Option<Ball> {
        let lower = self.mid.to_f64_round(Round::Zero).abs() * (1.0 - 4.0 * f64::EPSILON) - self.rad;
        if lower <= 0.0 {
            return None;
        }
        let mid = Float::with_val(self.prec(), self.mid.clone().recip_ref());
        let rad = up(self.rad / (lower * lower) + rounding(&mid));
        Some(Ball { mid, rad })
    }
}

/// Turns rug's `d.ddde±x` output into a plain decimal where that is short.
fn normalize_decimal(s: &str) -> String {
    let (mantissa, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (s, 0),
    };
    if !(-6..=20).contains(&exp) {
        return s.to_string();
    }
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits: String = format!("{int}{frac}");
    let point = int.len() as i64 + exp;
    let mut out = String::new();
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-point) as usize));
        out.push_str(&digits);
    } else if point as usize >= digits.len() {
        out.push_str(&digits);
        out.extend(std::iter::repeat_n('0', point as usize - digits.len()));
    } else {
        out.push_str(&digits[..point as usize]);
        out.push('.');
        out.push_str(&digits[point as usize..]);
    }
    if neg {
        out.insert(0, '-');
    }
    out
}

impl Add for Ball {
    type Output = Ball;
    fn add(self, rhs: Ball) -> Ball {
        let prec = self.prec().max(rhs.prec());
        let mid = Float::with_val(prec, &self.mid + &rhs.mid);
        let rad = up(self.rad + rhs.rad + rounding(&mid));
        Ball { mid, rad }
    }
}

impl Sub for Ball {
    type Output = Ball;
    fn sub(self, rhs: Ball) -> Ball {
        self + (-rhs)
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball { mid: -self.mid, rad: self.rad }
    }
}

impl Mul for Ball {
    type Output = Ball;
    fn mul(self, rhs: Ball) -> Ball {
        let prec = self.prec().max(rhs.prec());
        let mid = Float::with_val(prec, &self.mid * &rhs.mid);
        let prop = abs_f64(&self.mid) * rhs.rad + abs_f64(&rhs.mid) * self.rad + self.rad * rhs.rad;
        let rad = up(up(prop) + rounding(&mid));
        Ball { mid, rad }
    }
}

impl Ring for Ball {
    fn zero() -> Self {
        Ball::exact(Float::new(CONSTANT_PREC))
    }
    fn one() -> Self {
        Ball::exact(Float::with_val(CONSTANT_PREC, 1))
    }
    fn is_zero(&self) -> bool {
        self.mid.is_zero() && self.rad == 0.0
    }
    fn from_integer(n: &Integer) -> Self {
        let mid = Float::with_val(CONSTANT_PREC.max(n.significant_bits()), n);
        Ball::exact(mid)
    }
    fn scale_integer(&self, n: &Integer) -> Self {
        let mid = Float::with_val(self.prec(), &self.mid * n);
        let nf = up(n.to_f64().abs());
        let rad = up(self.rad * nf + rounding(&mid));
        Ball { mid, rad }
    }
}

impl QAlgebra for Ball {
    fn from_rational(q: &Rational) -> Self {
        let mid = Float::with_val(CONSTANT_PREC, q);
        let rad = rounding(&mid);
        Ball { mid, rad }
    }
    fn scale(&self, q: &Rational) -> Self {
        let mid = Float::with_val(self.prec(), &self.mid * q);
        let qf = up(q.to_f64().abs());
        let rad = up(self.rad * qf + rounding(&mid));
        Ball { mid, rad }
    }
    fn try_inverse(&self) -> Option<Self> {
        self.recip()
    }
}

impl PartialOrd for Ball {
    /// Orders balls only when they are disjoint.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let d = self.distance(other);
        if d <= self.rad + other.rad {
            if self == other {
                return Some(Ordering::Equal);
            }
            return None;
        }
        self.mid.partial_cmp(&other.mid)
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(f, "{} ± {:.1e}", self.to_decimal(digits), self.rad)
    }
}

/// Serialized form: decimal midpoint and its error bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallRecord {
    pub value: String,
    pub bound: f64,
}

impl From<&Ball> for BallRecord {
    fn from(b: &Ball) -> Self {
        BallRecord {
            value: b.to_decimal(b.default_digits()),
            bound: b.rad,
        }
    }
}

impl BallRecord {
    /// Parses the record at `prec` bits; the decimal conversion error is added
    /// to the radius.
    pub fn to_ball(&self, prec: u32) -> crate::Result<Ball> {
        let parsed = Float::parse(&self.value)
            .map_err(|e| crate::Error::parse(format!("bad decimal '{}': {e}", self.value)))?;
        let mid = Float::with_val(prec, parsed);
        let digits = self.value.chars().filter(|c| c.is_ascii_digit()).count() as i32;
        let conv = abs_f64(&mid) * 10f64.powi(1 - digits.max(1));
        Ok(Ball::new(mid, up(self.bound + conv + rounding(&Float::with_val(prec, 1)))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball(x: f64) -> Ball {
        Ball::exact(Float::with_val(128, x))
    }

    #[test]
    fn arithmetic_contains_exact_results() {
        let third = Ball::from_rational(&Rational::from((1, 3)));
        let sum = third.clone() + third.clone() + third.clone();
        assert!(sum.distance(&Ball::one()) <= sum.rad());
        let prod = third.clone() * Ball::from_i64(3);
        assert!(prod.distance(&Ball::one()) <= prod.rad());
        assert!(prod.rad() > 0.0 && prod.rad() < 1e-70);
        let inv = third.recip().unwrap();
        assert!(inv.distance(&Ball::from_i64(3)) <= inv.rad());
    }

    #[test]
    fn radius_propagation() {
        let a = ball(2.0).with_rad(0.1);
        let b = ball(3.0).with_rad(0.2);
        let p = a * b;
        assert!(p.rad() >= 2.0 * 0.2 + 3.0 * 0.1 + 0.02);
        assert!(ball(0.0).with_rad(1.0).recip().is_none());
    }

    #[test]
    fn ordering_needs_disjoint_balls() {
        assert!(ball(1.0) < ball(2.0));
        assert_eq!(ball(1.0).with_rad(2.0).partial_cmp(&ball(2.0)), None);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(ball(1.5).to_decimal(5), "1.5000");
        assert_eq!(ball(-0.00125).to_decimal(3), "-0.00125");
        assert_eq!(ball(1234.5).to_decimal(6), "1234.50");
        let r = BallRecord::from(&Ball::from_rational(&Rational::from((1, 7))));
        let back = r.to_ball(128).unwrap();
        assert!(back.distance(&Ball::from_rational(&Rational::from((1, 7)))) <= back.rad());
        assert!(back.rad() < 1e-35);
    }
}
