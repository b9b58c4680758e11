use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use rug::Rational;

use crate::combinatorics::{coeff_c, coeff_c_star, enum_set_partitions_limited, SetPartition};
use crate::error::{Error, Result};
use crate::index_algebra::{e_poly, Index, MzvSymbolPoly, RegEngine, SymbolExpr};
use crate::ring::Ring;
use crate::series_reg::{RegMaps, TPoly};
use crate::zeta_numerics::{Ball, Evaluator, PrecisionConfig, ZetaCache};

/// The two partition-product flavors `H_harm` and `H_sh`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartFlavor {
    Harm,
    Sh,
}

/// The four regularized families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Harm,
    Sh,
    StarHarm,
    StarSh,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [Flavor::Harm, Flavor::Sh, Flavor::StarHarm, Flavor::StarSh];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Harm => "harm",
            Flavor::Sh => "sh",
            Flavor::StarHarm => "star-harm",
            Flavor::StarSh => "star-sh",
        }
    }

    fn part_flavor(self) -> PartFlavor {
        match self {
            Flavor::Harm | Flavor::StarHarm => PartFlavor::Harm,
            Flavor::Sh | Flavor::StarSh => PartFlavor::Sh,
        }
    }

    fn is_star(self) -> bool {
        matches!(self, Flavor::StarHarm | Flavor::StarSh)
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "harm" => Ok(Flavor::Harm),
            "sh" | "shuffle" => Ok(Flavor::Sh),
            "star-harm" => Ok(Flavor::StarHarm),
            "star-sh" => Ok(Flavor::StarSh),
            _ => Err(Error::parse(format!(
                "unknown flavor '{s}' (expected harm, sh, star-harm or star-sh)"
            ))),
        }
    }
}

/// How `ζ_sh(K;T)` is produced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ShRoute {
    /// The word recursion on `W(K)`.
    #[default]
    Word,
    /// `ρ(ζ_harm(K;T))`.
    Rho,
}

impl FromStr for ShRoute {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "word" => Ok(ShRoute::Word),
            "rho" => Ok(ShRoute::Rho),
            _ => Err(Error::parse(format!("unknown route '{s}' (expected word or rho)"))),
        }
    }
}

impl fmt::Display for ShRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShRoute::Word => "word",
            ShRoute::Rho => "rho",
        })
    }
}

/// `χ*_K(P)`: zero for a block of two or more positions that all carry 1.
pub fn chi_star(k: &Index, block: &[u32]) -> bool {
    !(block.len() > 1 && block.iter().all(|&p| k.parts()[p as usize - 1] == 1))
}

/// `H_•(K;Π;T) = ∏_i e(Σ_{p∈P_i} k_p; T)`, with `χ*` factors for `H_sh`.
pub fn zeta_part(k: &Index, pi: &SetPartition, flavor: PartFlavor) -> Result<MzvSymbolPoly> {
    let ground: Vec<u32> = (1..=k.depth() as u32).collect();
    if !pi.is_partition_of(&ground) {
        return Err(Error::domain(format!(
            "{pi} is not a partition of {{1..{}}}",
            k.depth()
        )));
    }
    let mut out = MzvSymbolPoly::one();
    for block in pi.blocks() {
        if flavor == PartFlavor::Sh && !chi_star(k, block) {
            return Ok(MzvSymbolPoly::zero());
        }
        let w: u32 = block.iter().map(|&p| k.parts()[p as usize - 1]).sum();
        out = out * e_poly(w);
    }
    Ok(out)
}

/// Distinct rearrangements of `k` with their multiplicities among all `r!`
/// permutations.
pub fn permutations_with_multiplicity(k: &Index) -> Vec<(Index, u64)> {
    let mut parts = k.parts().to_vec();
    parts.sort_unstable();
    let mut mult: u64 = 1;
    let mut run = 1u64;
    for i in 1..=parts.len() {
        if i < parts.len() && parts[i] == parts[i - 1] {
            run += 1;
            mult *= run;
        } else {
            run = 1;
        }
    }
    let mut out = Vec::new();
    loop {
        out.push((Index::new(parts.clone()).expect("positive parts"), mult));
        // next lexicographic permutation
        let Some(i) = (1..parts.len()).rev().find(|&i| parts[i - 1] < parts[i]) else {
            break;
        };
        let j = (i..parts.len()).rev().find(|&j| parts[j] > parts[i - 1]).unwrap();
        parts.swap(i - 1, j);
        parts[i..].reverse();
    }
    out
}

/// Limits and numeric settings shared by all verifications.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub precision: PrecisionConfig,
    /// Order of the series behind `ρ`, `ρ̄*`; `None` uses the degree needed.
    pub series_order: Option<usize>,
    /// Overrides the per-identity tolerance.
    pub tolerance: Option<f64>,
    /// Largest depth for sums over permutations.
    pub max_perm_depth: usize,
    /// Largest ground set for sums over set partitions.
    pub max_partition_ground: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            precision: PrecisionConfig::default(),
            series_order: None,
            tolerance: None,
            max_perm_depth: 5,
            max_partition_ground: 8,
        }
    }
}

/// Shared state for building both sides of identities: the numeric
/// evaluator with its cache, the regularization memo tables and the maps
/// `ρ`, `ρ̄*`, `ρ̄*⁻¹` over symbols.
#[derive(Debug)]
pub struct Context {
    cfg: VerifyConfig,
    eval: Evaluator,
    reg: RegEngine,
    maps: RwLock<BTreeMap<usize, Arc<RegMaps<SymbolExpr>>>>,
}

impl Context {
    pub fn new(cfg: VerifyConfig) -> Result<Self> {
        Self::with_evaluator(cfg, Evaluator::new(cfg.precision)?)
    }

    /// Starts from a previously saved value cache.
    pub fn with_cache(cfg: VerifyConfig, cache: ZetaCache) -> Result<Self> {
        Self::with_evaluator(cfg, Evaluator::with_cache(cfg.precision, cache)?)
    }

    fn with_evaluator(cfg: VerifyConfig, eval: Evaluator) -> Result<Self> {
        if let Some(t) = cfg.tolerance {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::domain(format!("tolerance must be positive, got {t}")));
            }
        }
        Ok(Context {
            cfg,
            eval,
            reg: RegEngine::new(),
            maps: RwLock::new(BTreeMap::new()),
        })
    }

    pub fn config(&self) -> &VerifyConfig {
        &self.cfg
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.eval
    }

    pub fn reg(&self) -> &RegEngine {
        &self.reg
    }

    /// Series order for a polynomial of degree `deg`, validated against the
    /// configured order.
    pub fn series_order_for(&self, deg: usize) -> Result<usize> {
        match self.cfg.series_order {
            Some(n) if n < deg => Err(Error::Capacity {
                what: "series order for the T-degree",
                requested: deg,
                limit: n,
            }),
            Some(n) => Ok(n),
            None => Ok(deg.max(2)),
        }
    }

    /// Symbolic maps with `ζ(m)` as formal symbols.
    pub fn symbol_maps(&self, deg: usize) -> Result<Arc<RegMaps<SymbolExpr>>> {
        let order = self.series_order_for(deg)?;
        if let Some(m) = self.maps.read().unwrap().range(order..).next() {
            return Ok(m.1.clone());
        }
        let maps = Arc::new(RegMaps::new(order, |m| {
            SymbolExpr::zeta(&Index::new(vec![m])?)
        })?);
        self.maps.write().unwrap().insert(order, maps.clone());
        Ok(maps)
    }

    /// Maps over balls, with `ζ(m)` evaluated numerically.
    pub fn numeric_maps(&self, deg: usize) -> Result<RegMaps<Ball>> {
        let order = self.series_order_for(deg)?;
        RegMaps::new(order, |m| self.eval.zeta_single(m))
    }

    fn check_perm_depth(&self, k: &Index) -> Result<()> {
        if k.depth() > self.cfg.max_perm_depth {
            return Err(Error::Capacity {
                what: "depth for permutation sums",
                requested: k.depth(),
                limit: self.cfg.max_perm_depth,
            });
        }
        Ok(())
    }

    /// `ζ*_sh(K;T) = ρ̄*(ζ*_harm(K;T))`.
    pub fn star_sh(&self, k: &Index) -> Result<MzvSymbolPoly> {
        let p = self.reg.harm_star(k);
        let maps = self.symbol_maps(p.degree().unwrap_or(0))?;
        maps.rho_bar_star(&p)
    }

    /// `ζ_sh(K;T)` along the requested route.
    pub fn sh(&self, k: &Index, route: ShRoute) -> Result<MzvSymbolPoly> {
        match route {
            ShRoute::Word => Ok(self.reg.shuffle(k)),
            ShRoute::Rho => {
                let p = self.reg.harm(k);
                self.symbol_maps(p.degree().unwrap_or(0))?.rho(&p)
            }
        }
    }

    /// `Σ_σ ζ_•(k_σ(1), ..., k_σ(r); T)` over all `r!` permutations.
    ///
    /// The starred shuffle family is realized through `ρ̄*` applied to the
    /// starred harmonic sum, the plain shuffle family along `route`.
    pub fn symmetric_sum_symbolic(&self, k: &Index, flavor: Flavor, route: ShRoute) -> Result<MzvSymbolPoly> {
        self.check_perm_depth(k)?;
        let mut acc = MzvSymbolPoly::zero();
        for (kp, mult) in permutations_with_multiplicity(k) {
            let p = match flavor {
                Flavor::Harm => self.reg.harm(&kp),
                Flavor::StarHarm | Flavor::StarSh => self.reg.harm_star(&kp),
                Flavor::Sh => self.sh(&kp, route)?,
            };
            acc = acc + p.scale(&Rational::from(mult));
        }
        if flavor == Flavor::StarSh {
            let maps = self.symbol_maps(acc.degree().unwrap_or(0))?;
            acc = maps.rho_bar_star(&acc)?;
        }
        Ok(acc)
    }

    /// `Σ_Π c(Π) H(K;Π;T)` for the plain families, `Σ_Π c*(Π) H(K;Π;T)` for
    /// the starred ones.
    pub fn partition_sum_symbolic(&self, k: &Index, flavor: Flavor) -> Result<MzvSymbolPoly> {
        let ground: Vec<u32> = (1..=k.depth() as u32).collect();
        let parts = enum_set_partitions_limited(&ground, self.cfg.max_partition_ground)?;
        let mut acc = MzvSymbolPoly::zero();
        for pi in &parts {
            let c = if flavor.is_star() { coeff_c_star(pi) } else { coeff_c(pi) };
            let h = zeta_part(k, pi, flavor.part_flavor())?;
            acc = acc + h.scale(&Rational::from(c));
        }
        Ok(acc)
    }

    pub fn evaluate(&self, p: &MzvSymbolPoly) -> Result<TPoly<Ball>> {
        self.eval.evaluate_poly(p)
    }

    pub fn symmetric_sum(&self, k: &Index, flavor: Flavor) -> Result<TPoly<Ball>> {
        self.evaluate(&self.symmetric_sum_symbolic(k, flavor, ShRoute::Word)?)
    }

    pub fn partition_sum(&self, k: &Index, flavor: Flavor) -> Result<TPoly<Ball>> {
        self.evaluate(&self.partition_sum_symbolic(k, flavor)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn z(s: &str) -> SymbolExpr {
        SymbolExpr::zeta(&idx(s)).unwrap()
    }

    #[test]
    fn zeta_part_examples() {
        let one_block: SetPartition = "12".parse().unwrap();
        let split: SetPartition = "1|2".parse().unwrap();
        let k11 = idx("1,1");
        assert_eq!(zeta_part(&k11, &one_block, PartFlavor::Harm).unwrap(), TPoly::constant(z("2")));
        assert!(zeta_part(&k11, &one_block, PartFlavor::Sh).unwrap().is_zero());
        let k23 = idx("2,3");
        for f in [PartFlavor::Harm, PartFlavor::Sh] {
            assert_eq!(zeta_part(&k23, &split, f).unwrap(), TPoly::constant(z("2") * z("3")));
        }
        assert!(zeta_part(&idx("1,2,3"), &split, PartFlavor::Harm).is_err());
    }

    #[test]
    fn permutation_multiplicities() {
        let p = permutations_with_multiplicity(&idx("1,1,2"));
        assert_eq!(p.len(), 3);
        assert_eq!(p.iter().map(|x| x.1).sum::<u64>(), 6);
        let p = permutations_with_multiplicity(&idx("3,1,2,1"));
        assert_eq!(p.len(), 12);
        assert_eq!(p.iter().map(|x| x.1).sum::<u64>(), 24);
    }

    #[test]
    fn ones_shuffle_partition_sum_is_power() {
        let ctx = Context::new(VerifyConfig::default()).unwrap();
        for r in 1..=6 {
            let p = ctx.partition_sum_symbolic(&Index::ones(r), Flavor::StarSh).unwrap();
            assert_eq!(p, TPoly::monomial(SymbolExpr::one(), r));
        }
    }

    #[test]
    fn series_order_guard() {
        let cfg = VerifyConfig { series_order: Some(2), ..Default::default() };
        let ctx = Context::new(cfg).unwrap();
        assert!(matches!(ctx.star_sh(&idx("1,1,1")), Err(Error::Capacity { .. })));
        assert!(ctx.star_sh(&idx("2,1")).is_ok());
    }
}
