use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::ring::{format_rational, QAlgebra, Ring};
use crate::series_reg::TPoly;

use super::{Index, LinComb};

/// A product of MZV symbols `ζ(K_1)⋯ζ(K_n)`, stored as a sorted multiset of
/// admissible indices. The empty product is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<Index>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn zeta(k: &Index) -> Result<Self> {
        if k.is_empty() {
            return Ok(Monomial::one());
        }
        if !k.is_admissible() {
            return Err(Error::domain(format!("ζ({k}) is not admissible")));
        }
        Ok(Monomial(vec![k.clone()]))
    }

    pub fn factors(&self) -> &[Index] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(Index::weight).sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut f = self.0.clone();
        f.extend(other.0.iter().cloned());
        f.sort();
        Monomial(f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            if !first {
                f.write_str("·")?;
            }
            write!(f, "ζ({})", self.0[i])?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            first = false;
            i = j;
        }
        Ok(())
    }
}

/// Polynomial over `Q` in formal, unreduced MZV symbols.
///
/// No relations among MZVs are applied, so two expressions are equal only if
/// they expand to the same combination of symbol products.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolExpr(LinComb<Monomial>);

pub type MzvSymbolPoly = TPoly<SymbolExpr>;

impl SymbolExpr {
    /// The symbol `ζ(K)`; the empty index gives `1`.
    pub fn zeta(k: &Index) -> Result<Self> {
        Ok(SymbolExpr(LinComb::basis(Monomial::zeta(k)?)))
    }

    pub fn constant(q: Rational) -> Self {
        SymbolExpr(LinComb::from_terms([(Monomial::one(), q)]))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.0.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.0.len()
    }

    /// The rational value when no symbol occurs.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.0.len() {
            0 => Some(Rational::new()),
            1 => {
                let (m, c) = self.0.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Every distinct admissible index occurring in the expression.
    pub fn symbols(&self) -> Vec<Index> {
        let mut out: Vec<Index> = self
            .0
            .iter()
            .flat_map(|(m, _)| m.factors().iter().cloned())
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl Add for SymbolExpr {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        SymbolExpr(self.0 + rhs.0)
    }
}

impl Sub for SymbolExpr {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        SymbolExpr(self.0 - rhs.0)
    }
}

impl Neg for SymbolExpr {
    type Output = Self;
    fn neg(self) -> Self {
        SymbolExpr(-self.0)
    }
}

impl Mul for SymbolExpr {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        SymbolExpr(self.0.bilinear(&rhs.0, |a, b| LinComb::basis(a.times(b))))
    }
}

impl Ring for SymbolExpr {
    fn zero() -> Self {
        SymbolExpr(LinComb::zero())
    }
    fn one() -> Self {
        SymbolExpr::constant(Rational::from(1))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn from_integer(n: &Integer) -> Self {
        SymbolExpr::constant(Rational::from(n))
    }
    fn scale_integer(&self, n: &Integer) -> Self {
        SymbolExpr(self.0.scale(&Rational::from(n)))
    }
}

impl QAlgebra for SymbolExpr {
    fn from_rational(q: &Rational) -> Self {
        SymbolExpr::constant(q.clone())
    }
    fn scale(&self, q: &Rational) -> Self {
        SymbolExpr(self.0.scale(q))
    }
    fn try_inverse(&self) -> Option<Self> {
        self.as_rational()
            .filter(|q| *q != 0)
            .map(|q| SymbolExpr::constant(q.recip()))
    }
}

/// Terms are listed in symbol order and joined with `+` / `−`.
impl fmt::Display for SymbolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.0.iter().enumerate() {
            let neg = *c < 0;
            let abs = Rational::from(c.abs_ref());
            match (i, neg) {
                (0, true) => f.write_str("−")?,
                (0, false) => {}
                (_, true) => f.write_str(" − ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&format_rational(&abs))?;
            } else if abs == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

/// `e(k;T)`: `T` for `k = 1`, the symbol `ζ(k)` otherwise.
pub fn e_poly(k: u32) -> MzvSymbolPoly {
    match k {
        0 => panic!("e(k;T) needs k >= 1"),
        1 => TPoly::t(),
        _ => TPoly::constant(SymbolExpr::zeta(&Index::from_parts_unchecked(vec![k])).unwrap()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> SymbolExpr {
        SymbolExpr::zeta(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn products_commute_and_render() {
        let a = z("2") * z("1,2");
        let b = z("1,2") * z("2");
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "ζ(1,2)·ζ(2)");
        assert_eq!((z("2") * z("2")).to_string(), "ζ(2)^2");
        let p = z("3").scale(&Rational::from(-2)) + SymbolExpr::one();
        assert_eq!(p.to_string(), "1 − 2ζ(3)");
        assert_eq!(SymbolExpr::zeta(&Index::empty()).unwrap(), SymbolExpr::one());
        assert!(SymbolExpr::zeta(&"2,1".parse().unwrap()).is_err());
    }

    #[test]
    fn polynomial_display() {
        let p = TPoly::from_coeffs(vec![-z("1,2"), z("2")]);
        assert_eq!(p.to_string(), "ζ(2)·T − ζ(1,2)");
        let q = TPoly::from_coeffs(vec![z("1,2").scale(&Rational::from(-2)), z("2")]);
        assert_eq!(q.to_string(), "ζ(2)·T − 2ζ(1,2)");
        assert_eq!(e_poly(1).to_string(), "T");
        assert_eq!(e_poly(3).to_string(), "ζ(3)");
    }
}
