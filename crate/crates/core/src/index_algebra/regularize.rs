use std::collections::HashMap;
use std::sync::RwLock;

use rug::Rational;

use crate::error::Result;
use crate::series_reg::TPoly;

use super::products::{harmonic_product_indices, shuffle_with_y};
use super::{Index, IndexCombination, MzvSymbolPoly, SymbolExpr, Word};

/// Memoizing evaluator of the regularization polynomials `ζ_harm(K;T)`,
/// `ζ*_harm(K;T)` and `ζ_sh(K;T)` with formal MZV coefficients.
///
/// The memo tables are behind locks so one engine can be shared between
/// threads; concurrent misses on the same key compute identical values.
#[derive(Debug, Default)]
pub struct RegEngine {
    harm: RwLock<HashMap<Index, MzvSymbolPoly>>,
    shuffle: RwLock<HashMap<Word, MzvSymbolPoly>>,
}

impl RegEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// `ζ_harm(K;T)`.
    ///
    /// For `K = (U, 1^n)` with `n >= 1`,
    /// `(1) * (U, 1^{n-1}) = n·K + R` where every index in `R` has fewer
    /// trailing ones, so
    /// `ζ_harm(K) = (T·ζ_harm(U, 1^{n-1}) − ζ_harm(R)) / n`.
    pub fn harm(&self, k: &Index) -> MzvSymbolPoly {
        if let Some(p) = self.harm.read().unwrap().get(k) {
            return p.clone();
        }
        let value = if k.is_empty() || k.is_admissible() {
            TPoly::constant(SymbolExpr::zeta(k).expect("admissible"))
        } else {
            let n = k.trailing_ones();
            let shorter = Index::from_parts_unchecked(k.parts()[..k.depth() - 1].to_vec());
            let mut rest = harmonic_product_indices(&Index::ones(1), &shorter);
            debug_assert_eq!(rest.coeff(k), n as u32);
            rest.add_term(k.clone(), -Rational::from(n as u32));
            let mut acc = self.harm(&shorter).shift(1);
            for (idx, c) in rest.iter() {
                acc = acc - self.harm(idx).scale(c);
            }
            acc.scale(&Rational::from((1, n as u32)))
        };
        self.harm.write().unwrap().insert(k.clone(), value.clone());
        value
    }

    /// `ζ*_harm(K;T) = Σ_{K'} ζ_harm(K';T)` over the contractions of `K`.
    pub fn harm_star(&self, k: &Index) -> MzvSymbolPoly {
        k.contractions()
            .iter()
            .fold(TPoly::zero(), |acc, c| acc + self.harm(c))
    }

    /// Linear extension of [`RegEngine::harm`].
    pub fn harm_comb(&self, c: &IndexCombination) -> MzvSymbolPoly {
        c.iter()
            .fold(TPoly::zero(), |acc, (k, q)| acc + self.harm(k).scale(q))
    }

    /// `ζ_sh(K;T)`, computed on the word `W(K)`.
    pub fn shuffle(&self, k: &Index) -> MzvSymbolPoly {
        self.shuffle_word(&k.to_word())
            .expect("words of indices end in y")
    }

    /// `ζ_sh(w;T)` for a word that is empty or ends in `y`.
    ///
    /// For `w = y^n u` with `u` empty or starting with `x`,
    /// `y ⧢ y^{n-1}u = n·w + R` where every word in `R` has fewer leading
    /// `y`s, so `ζ_sh(w) = (T·ζ_sh(y^{n-1}u) − ζ_sh(R)) / n`.
    pub fn shuffle_word(&self, w: &Word) -> Result<MzvSymbolPoly> {
        if let Some(p) = self.shuffle.read().unwrap().get(w) {
            return Ok(p.clone());
        }
        let n = w.leading_ys();
        let value = if n == 0 {
            TPoly::constant(SymbolExpr::zeta(&w.to_index()?)?)
        } else {
            w.to_index()?;
            let tail = Word::new(w.letters()[1..].to_vec());
            let mut rest = shuffle_with_y(&tail);
            debug_assert_eq!(rest.coeff(w), n as u32);
            rest.add_term(w.clone(), -Rational::from(n as u32));
            let mut acc = self.shuffle_word(&tail)?.shift(1);
            for (u, c) in rest.iter() {
                acc = acc - self.shuffle_word(u)?.scale(c);
            }
            acc.scale(&Rational::from((1, n as u32)))
        };
        self.shuffle.write().unwrap().insert(w.clone(), value.clone());
        Ok(value)
    }
}

pub fn reg_harm(k: &Index) -> MzvSymbolPoly {
    RegEngine::new().harm(k)
}

pub fn reg_harm_star(k: &Index) -> MzvSymbolPoly {
    RegEngine::new().harm_star(k)
}

pub fn reg_shuffle(k: &Index) -> MzvSymbolPoly {
    RegEngine::new().shuffle(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{QAlgebra, Ring};

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn z(s: &str) -> SymbolExpr {
        SymbolExpr::zeta(&idx(s)).unwrap()
    }

    fn poly(cs: Vec<SymbolExpr>) -> MzvSymbolPoly {
        TPoly::from_coeffs(cs)
    }

    #[test]
    fn harmonic_regularization() {
        assert_eq!(reg_harm(&idx("1,3")), poly(vec![z("1,3")]));
        assert_eq!(reg_harm(&idx("1")), TPoly::t());
        assert_eq!(reg_harm(&Index::empty()), TPoly::one());
        for k in 2..6 {
            let k1 = Index::new(vec![k, 1]).unwrap();
            let expected = poly(vec![
                -z(&format!("1,{k}")) - z(&(k + 1).to_string()),
                z(&k.to_string()),
            ]);
            assert_eq!(reg_harm(&k1), expected);
        }
        // (1)*(1) = 2(1,1) + (2)
        let half = Rational::from((1, 2));
        assert_eq!(reg_harm(&idx("1,1")), poly(vec![-z("2").scale(&half), SymbolExpr::zero(), SymbolExpr::one().scale(&half)]));
    }

    #[test]
    fn star_regularization() {
        assert_eq!(reg_harm_star(&idx("1")), TPoly::t());
        assert_eq!(reg_harm_star(&idx("1,3")), poly(vec![z("1,3") + z("4")]));
        assert_eq!(reg_harm_star(&idx("2,1")), poly(vec![-z("1,2"), z("2")]));
    }

    #[test]
    fn shuffle_regularization() {
        assert_eq!(reg_shuffle(&idx("2")), poly(vec![z("2")]));
        assert_eq!(reg_shuffle(&idx("1")), TPoly::t());
        let p = reg_shuffle(&idx("2,1"));
        assert_eq!(p, poly(vec![z("1,2").scale(&Rational::from(-2)), z("2")]));
        assert_eq!(p.to_string(), "ζ(2)·T − 2ζ(1,2)");
        assert!(RegEngine::new().shuffle_word(&"yx".parse().unwrap()).is_err());
    }

    #[test]
    fn degree_is_trailing_ones() {
        let engine = RegEngine::new();
        for s in ["1,1,1", "2,1,1", "1,2,1", "3,1", "1,1,2", "2,1,1,1"] {
            let k = idx(s);
            assert_eq!(engine.harm(&k).degree(), Some(k.trailing_ones()), "{s}");
            assert_eq!(engine.shuffle(&k).degree(), Some(k.trailing_ones()), "{s}");
        }
    }

    /// Rewrites each product of symbols as one stuffle combination, so that
    /// expressions can be compared modulo the stuffle relations.
    fn linearize(p: &MzvSymbolPoly) -> TPoly<SymbolExpr> {
        p.map(|c| {
            let mut out = SymbolExpr::zero();
            for (m, q) in c.terms() {
                let prod = m.factors().iter().fold(IndexCombination::basis(Index::empty()), |acc, k| {
                    crate::index_algebra::harmonic_product(&acc, &IndexCombination::basis(k.clone()))
                });
                for (k, r) in prod.iter() {
                    out = out + SymbolExpr::zeta(k).unwrap().scale(&Rational::from(q * r));
                }
            }
            out
        })
    }

    #[test]
    fn harm_is_multiplicative() {
        let engine = RegEngine::new();
        for (a, b) in [("1", "1"), ("1", "2,1"), ("2,1", "1,1"), ("3", "1,1"), ("1,2,1", "2,1,1")] {
            let lhs = engine.harm(&idx(a)) * engine.harm(&idx(b));
            let rhs = engine.harm_comb(&harmonic_product_indices(&idx(a), &idx(b)));
            assert_eq!(linearize(&lhs), linearize(&rhs), "{a} * {b}");
        }
    }
}
