use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use rug::Rational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ring::{format_rational, parse_rational};

use super::{Index, Word};

/// Finitely supported rational linear combination of basis elements.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// combinations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

pub type IndexCombination = LinComb<Index>;
pub type WordCombination = LinComb<Word>;

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        LinComb { terms: BTreeMap::new() }
    }

    pub fn basis(k: K) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(k, Rational::from(1));
        LinComb { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, Rational)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, k: K, c: Rational) {
        if c == 0 {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    /// Number of nonzero terms; see [`LinComb::is_zero`] for emptiness.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if *q == 0 {
            return Self::zero();
        }
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), Rational::from(c * q)))
                .collect(),
        }
    }

    /// Bilinear extension of a product defined on basis elements.
    pub fn bilinear(&self, other: &Self, mut f: impl FnMut(&K, &K) -> Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let coef = Rational::from(ca * cb);
                for (k, c) in f(a, b).terms {
                    out.add_term(k, c * &coef);
                }
            }
        }
        out
    }
}

impl<K: Ord + Clone> Add for LinComb<K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl<K: Ord + Clone> Neg for LinComb<K> {
    type Output = Self;
    fn neg(self) -> Self {
        LinComb {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<K: Ord + Clone> Sub for LinComb<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = *c < 0;
            let abs = Rational::from(c.abs_ref());
            match (i, neg) {
                (0, true) => f.write_str("−")?,
                (0, false) => {}
                (_, true) => f.write_str(" − ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if abs != 1 {
                write!(f, "{}·", format_rational(&abs))?;
            }
            write!(f, "[{k}]")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    term: String,
    coefficient: String,
}

impl<K: Ord + Clone + fmt::Display> Serialize for LinComb<K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(k, c)| TermRecord {
                term: k.to_string(),
                coefficient: format!("{}/{}", c.numer(), c.denom()),
            })
            .collect();
        records.serialize(serializer)
    }
}

impl<'de, K> Deserialize<'de> for LinComb<K>
where
    K: Ord + Clone + FromStr,
    K::Err: fmt::Display,
{
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        let mut out = Self::zero();
        for r in records {
            let k = r.term.parse::<K>().map_err(D::Error::custom)?;
            let c = parse_rational(&r.coefficient)
                .ok_or_else(|| D::Error::custom(format!("bad coefficient '{}'", r.coefficient)))?;
            out.add_term(k, c);
        }
        Ok(out)
    }
}
