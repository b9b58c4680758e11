//! Multiprecision evaluation of single zeta values, MZVs and MZSVs with
//! error bounds, and numeric evaluation of symbol polynomials.
//!
//! Values are returned as [`Ball`]s. Single zetas use Euler–Maclaurin with
//! the first omitted correction as a rigorous remainder bound. Deeper values
//! sum the nested series to `N` with prefix sums and subtract the asymptotic
//! expansion of every partial sum, built level by level in powers of
//! `ln n` and `1/n`; the truncation error is estimated from the change
//! between expansion orders.

mod ball;
mod cache;
mod config;
mod series;

use rayon::prelude::*;

pub use ball::{Ball, BallRecord, CONSTANT_PREC};
pub use cache::ZetaCache;
pub use config::PrecisionConfig;

use crate::error::{Error, Result};
use crate::index_algebra::{Index, MzvSymbolPoly, SymbolExpr};
use crate::ring::{QAlgebra, Ring};
use crate::series_reg::TPoly;

/// Numeric evaluator for one configuration, with an optional shared cache.
#[derive(Debug)]
pub struct Evaluator {
    cfg: PrecisionConfig,
    cache: Option<ZetaCache>,
}

impl Evaluator {
    pub fn new(cfg: PrecisionConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Evaluator { cfg, cache: Some(ZetaCache::new()) })
    }

    pub fn without_cache(cfg: PrecisionConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Evaluator { cfg, cache: None })
    }

    /// Uses a preloaded cache, e.g. from [`ZetaCache::from_json`].
    pub fn with_cache(cfg: PrecisionConfig, cache: ZetaCache) -> Result<Self> {
        cfg.validate()?;
        Ok(Evaluator { cfg, cache: Some(cache) })
    }

    pub fn config(&self) -> &PrecisionConfig {
        &self.cfg
    }

    pub fn cache(&self) -> Option<&ZetaCache> {
        self.cache.as_ref()
    }

    fn checked(&self, k: &Index, v: Ball) -> Result<Ball> {
        if v.rad() > self.cfg.tolerance {
            return Err(Error::Accuracy {
                target: format!("ζ({k})"),
                bound: v.rad(),
                tolerance: self.cfg.tolerance,
            });
        }
        Ok(v)
    }

    /// `ζ(m)`, `m >= 2`.
    pub fn zeta_single(&self, m: u32) -> Result<Ball> {
        if m < 2 {
            return Err(Error::domain(format!("ζ({m}) diverges")));
        }
        self.mzv(&Index::new(vec![m])?)
    }

    /// `ζ(K)` for admissible `K`.
    pub fn mzv(&self, k: &Index) -> Result<Ball> {
        if !k.is_admissible() {
            return Err(Error::domain(format!("non-admissible index ({k}) for ζ")));
        }
        if let Some(v) = self.cache.as_ref().and_then(|c| c.get(k)) {
            return Ok(v);
        }
        let value = if k.depth() == 1 {
            let (mid, rad) = series::zeta_single(k.parts()[0], &self.cfg);
            Ball::new(mid, rad)
        } else {
            let (mid, rad) = series::mzv_prefixes(k.parts(), &self.cfg).pop().unwrap();
            Ball::new(mid, rad)
        };
        let value = self.checked(k, value)?;
        if let Some(c) = &self.cache {
            c.insert(k.clone(), value.clone());
        }
        Ok(value)
    }

    /// `ζ*(K)` as the sum of `ζ` over the contractions of `K`.
    pub fn mzsv(&self, k: &Index) -> Result<Ball> {
        if !k.is_admissible() {
            return Err(Error::domain(format!("non-admissible index ({k}) for ζ*")));
        }
        let cs = k.contractions();
        cs[1..]
            .iter()
            .try_fold(self.mzv(&cs[0])?, |acc, c| Ok(acc + self.mzv(c)?))
    }

    /// Evaluates all given admissible indices in parallel, filling the cache.
    pub fn prefetch(&self, indices: &[Index]) -> Result<()> {
        let mut todo: Vec<&Index> = indices
            .iter()
            .filter(|k| self.cache.as_ref().is_none_or(|c| c.get(k).is_none()))
            .collect();
        todo.sort();
        todo.dedup();
        todo.par_iter().try_for_each(|k| self.mzv(k).map(|_| ()))
    }

    pub fn evaluate_symbol(&self, e: &SymbolExpr) -> Result<Ball> {
        let mut acc = Ball::zero();
        for (m, q) in e.terms() {
            let mut prod = Ball::from_rational(q);
            for k in m.factors() {
                prod = prod * self.mzv(k)?;
            }
            acc = acc + prod;
        }
        Ok(acc)
    }

    /// Replaces every symbol of `p` by its value.
    pub fn evaluate_poly(&self, p: &MzvSymbolPoly) -> Result<TPoly<Ball>> {
        let symbols: Vec<Index> = p.coeffs().iter().flat_map(SymbolExpr::symbols).collect();
        self.prefetch(&symbols)?;
        p.try_map(|c| self.evaluate_symbol(c))
    }

    /// `ζ(m)` as a ring element, for building `A(t)`.
    pub fn zeta_ball(&self, m: u32) -> Result<Ball> {
        self.zeta_single(m)
    }
}

pub fn zeta_single(m: u32, cfg: &PrecisionConfig) -> Result<Ball> {
    Evaluator::without_cache(*cfg)?.zeta_single(m)
}

pub fn mzv(k: &Index, cfg: &PrecisionConfig) -> Result<Ball> {
    Evaluator::without_cache(*cfg)?.mzv(k)
}

pub fn mzsv(k: &Index, cfg: &PrecisionConfig) -> Result<Ball> {
    Evaluator::without_cache(*cfg)?.mzsv(k)
}

/// Coefficientwise comparison of two numeric polynomials.
///
/// Returns the largest midpoint deviation and the largest summed radius.
pub fn compare_polys(a: &TPoly<Ball>, b: &TPoly<Ball>) -> (f64, f64) {
    let n = a.coeffs().len().max(b.coeffs().len());
    let mut dev: f64 = 0.0;
    let mut bound: f64 = 0.0;
    for i in 0..n {
        let (x, y) = (a.coeff(i), b.coeff(i));
        dev = dev.max(x.distance(&y));
        bound = bound.max(ball::up(x.rad() + y.rad()));
    }
    (dev, bound)
}

/// Sum of the two radii, rounded up.
pub fn summed_radius(a: &Ball, b: &Ball) -> f64 {
    ball::up(a.rad() + b.rad())
}

/// `true` when every ball of `p` has a radius below `tol`.
pub fn all_within(p: &TPoly<Ball>, tol: f64) -> bool {
    p.coeffs().iter().all(|c| c.rad() <= tol)
}

