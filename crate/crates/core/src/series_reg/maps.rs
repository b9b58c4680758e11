use rug::Rational;

use crate::error::{Error, Result};
use crate::ring::{factorial, QAlgebra};

use super::{TPoly, TruncSeries};

/// `A(t) = exp(Σ_{m≥2} (-1)^m ζ(m) t^m / m)` to order `order`.
///
/// `zeta` supplies `ζ(m)` for `2 <= m <= order` in the coefficient ring.
pub fn a_series<R: QAlgebra>(
    order: usize,
    mut zeta: impl FnMut(u32) -> Result<R>,
) -> Result<TruncSeries<R>> {
    let mut exponent: Vec<R> = vec![R::zero(); order.min(1) + 1];
    for m in 2..=order {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        exponent.push(zeta(m as u32)?.scale(&Rational::from((sign, m as u64))));
    }
    TruncSeries::from_coeffs(order, exponent).exp()
}

/// The linear maps `ρ`, `ρ̄*` and `ρ̄*⁻¹` on polynomials in `T`.
///
/// Each map `φ` is determined by `φ(e^{Tt}) = S(t) e^{Tt}` for a fixed series
/// `S`, acting coefficientwise in `t`; equivalently
/// `φ(T^n) = Σ_{j ≤ n} (n!/j!) s_{n-j} T^j`. The kernels are
/// `A(t)` for `ρ`, `A(-t)⁻¹` for `ρ̄*` and `A(-t)` for `ρ̄*⁻¹`.
#[derive(Clone, Debug)]
pub struct RegMaps<R> {
    a: TruncSeries<R>,
    a_neg: TruncSeries<R>,
    a_neg_inv: TruncSeries<R>,
}

impl<R: QAlgebra> RegMaps<R> {
    pub fn new(order: usize, zeta: impl FnMut(u32) -> Result<R>) -> Result<Self> {
        let a = a_series(order, zeta)?;
        let a_neg = a.negate_variable();
        let a_neg_inv = a_neg.inverse()?;
        Ok(RegMaps { a, a_neg, a_neg_inv })
    }

    pub fn order(&self) -> usize {
        self.a.order()
    }

    pub fn a(&self) -> &TruncSeries<R> {
        &self.a
    }

    pub fn rho(&self, p: &TPoly<R>) -> Result<TPoly<R>> {
        self.apply(&self.a, p)
    }

    pub fn rho_bar_star(&self, p: &TPoly<R>) -> Result<TPoly<R>> {
        self.apply(&self.a_neg_inv, p)
    }

    pub fn rho_bar_star_inverse(&self, p: &TPoly<R>) -> Result<TPoly<R>> {
        self.apply(&self.a_neg, p)
    }

    fn apply(&self, kernel: &TruncSeries<R>, p: &TPoly<R>) -> Result<TPoly<R>> {
        let Some(deg) = p.degree() else {
            return Ok(TPoly::zero());
        };
        if deg > self.order() {
            return Err(Error::Capacity {
                what: "polynomial degree for the series order",
                requested: deg,
                limit: self.order(),
            });
        }
        let mut out = TPoly::zero();
        for (n, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out + image_of_power(kernel, n).scale_by(c);
        }
        Ok(out)
    }
}

fn image_of_power<R: QAlgebra>(kernel: &TruncSeries<R>, n: usize) -> TPoly<R> {
    let nf = factorial(n as u32);
    let coeffs = (0..=n)
        .map(|j| {
            let ratio = &nf / factorial(j as u32) ;
            kernel.coeff(n - j).scale_integer(&ratio)
        })
        .collect();
    TPoly::from_coeffs(coeffs)
}
