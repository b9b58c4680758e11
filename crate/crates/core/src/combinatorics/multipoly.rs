use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Integer;

use crate::ring::Ring;

/// Polynomial with integer coefficients in the variables `x1, x2, ...`.
///
/// Monomials are exponent vectors without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Vec<u32>, Integer>,
}

impl MultiPoly {
    /// The variable `x_i`, `i >= 1`.
    pub fn var(i: u32) -> Self {
        assert!(i >= 1, "variables are numbered from 1");
        let mut exps = vec![0; i as usize];
        exps[i as usize - 1] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, Integer::from(1));
        MultiPoly { terms }
    }

    pub fn constant(c: Integer) -> Self {
        let mut p = MultiPoly::default();
        p.add_term(Vec::new(), c);
        p
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coeff(&self, exps: &[u32]) -> Integer {
        let mut key = exps.to_vec();
        while key.last() == Some(&0) {
            key.pop();
        }
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Integer)> {
        self.terms.iter()
    }

    fn add_term(&mut self, mut exps: Vec<u32>, c: Integer) {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        let entry = self.terms.entry(exps).or_default();
        *entry += c;
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self + (-rhs)
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    // exponents add when monomials multiply
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let n = ea.len().max(eb.len());
                let exps: Vec<u32> = (0..n)
                    .map(|i| ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(exps, Integer::from(ca * cb));
            }
        }
        out
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }
    fn one() -> Self {
        MultiPoly::constant(Integer::from(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_integer(n: &Integer) -> Self {
        MultiPoly::constant(n.clone())
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in decreasing lexicographic order of exponents, e.g. `4*x1*x3 + 3*x2^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (exps, c)) in self.terms.iter().rev().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            let mag = c.clone().abs();
            let body = match (factors.is_empty(), mag == 1) {
                (true, _) => mag.to_string(),
                (false, true) => factors.join("*"),
                (false, false) => format!("{}*{}", mag, factors.join("*")),
            };
            let neg = *c < 0;
            match (n, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}
