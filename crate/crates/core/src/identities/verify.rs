use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rug::float::Constant;
use rug::{Float, Integer, Rational};

use crate::combinatorics::{
    bell_complete, bell_number, bell_partial, coeff_c_star, enum_restricted_partitions,
    enum_set_partitions, enum_set_partitions_limited, partition_shape_count, partition_shapes,
    prop1_decomposition, relabel_partition, stirling_first_unsigned, stirling_second, MultiPoly,
    SetPartition,
};
use crate::error::{Error, Result};
use crate::index_algebra::{e_poly, Index, MzvSymbolPoly, SymbolExpr};
use crate::ring::{binomial, factorial, QAlgebra, Ring};
use crate::series_reg::TPoly;
use crate::zeta_numerics::{summed_radius, Ball, CONSTANT_PREC};

use super::report::{CoefficientCheck, IdentityReport};
use super::sums::{zeta_part, Context, Flavor, PartFlavor, ShRoute};

/// Every identity the verifier knows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    Theorem1,
    Corollary1,
    HoffmanHarm,
    HoffmanStarHarm,
    ShuffleMzv,
    Prop3Eq1,
    Prop3Eq2,
    Lemma1,
    RemarkBell,
    RemarkStar,
    Prop1,
    Prop2,
    RegTheorem,
    Cor1Count,
    Example1,
    DepthOne,
    PartitionRhoStar,
    BellStirling,
    ClosedForms,
}

impl Identity {
    pub const ALL: [Identity; 19] = [
        Identity::Theorem1,
        Identity::Corollary1,
        Identity::HoffmanHarm,
        Identity::HoffmanStarHarm,
        Identity::ShuffleMzv,
        Identity::Prop3Eq1,
        Identity::Prop3Eq2,
        Identity::Lemma1,
        Identity::RemarkBell,
        Identity::RemarkStar,
        Identity::Prop1,
        Identity::Prop2,
        Identity::RegTheorem,
        Identity::Cor1Count,
        Identity::Example1,
        Identity::DepthOne,
        Identity::PartitionRhoStar,
        Identity::BellStirling,
        Identity::ClosedForms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Theorem1 => "theorem1",
            Identity::Corollary1 => "corollary1",
            Identity::HoffmanHarm => "hoffman-harm",
            Identity::HoffmanStarHarm => "hoffman-star-harm",
            Identity::ShuffleMzv => "shuffle-mzv",
            Identity::Prop3Eq1 => "prop3-1",
            Identity::Prop3Eq2 => "prop3-2",
            Identity::Lemma1 => "lemma1",
            Identity::RemarkBell => "remark-bell",
            Identity::RemarkStar => "remark-star",
            Identity::Prop1 => "prop1",
            Identity::Prop2 => "prop2",
            Identity::RegTheorem => "reg-theorem",
            Identity::Cor1Count => "cor1-count",
            Identity::Example1 => "example1",
            Identity::DepthOne => "depth-one",
            Identity::PartitionRhoStar => "partition-rho-star",
            Identity::BellStirling => "bell-stirling",
            Identity::ClosedForms => "closed-forms",
        }
    }

    /// One-line statement with the parameters it reads.
    pub fn summary(self) -> &'static str {
        match self {
            Identity::Theorem1 => "Σ_σ ζ*_sh(K_σ;T) = Σ_Π c*(Π) H_sh(K;Π;T)  [--index]",
            Identity::Corollary1 => "Σ_i ζ*_sh(1^i,k,1^{r-1-i};T) = Σ_j ζ(k+r-1-j) T^j/j!  [--k --r]",
            Identity::HoffmanHarm => "Σ_σ ζ_harm(K_σ;T) = Σ_Π c(Π) H_harm(K;Π;T)  [--index]",
            Identity::HoffmanStarHarm => "Σ_σ ζ*_harm(K_σ;T) = Σ_Π c*(Π) H_harm(K;Π;T)  [--index]",
            Identity::ShuffleMzv => "Σ_σ ζ_sh(K_σ;T) = Σ_Π c(Π) H_sh(K;Π;T)  [--index --route]",
            Identity::Prop3Eq1 => "Σ_Π c*(Π) H_harm(1_r;Π;T) = ρ̄*⁻¹(T^r)  [--r]",
            Identity::Prop3Eq2 => "Σ_Π c*(Π) H_sh(1_r;Π;T) = T^r, exact  [--r]",
            Identity::Lemma1 => "Σ_Π c*(Π) H_harm(1_r;Π;T) = Y_r(0!e(1;T), ..., (r-1)!e(r;T)), exact  [--r]",
            Identity::RemarkBell => "r! = Y_r(0!, 1!, ..., (r-1)!), exact  [--r]",
            Identity::RemarkStar => "r! ζ*_harm(1_r;T) = Y_r(0!e(1;T), ..., (r-1)!e(r;T))  [--r]",
            Identity::Prop1 => "disjoint union of P(A) × P'_B({1..r}∖A) over A ⊆ B is P(r), exact  [--r --b]",
            Identity::Prop2 => "c* multiplicativity and the H factorization over the decomposition, exact  [--r --b]",
            Identity::RegTheorem => "ρ(ζ_harm(K;T)) = ζ_sh(K;T)  [--index]",
            Identity::Cor1Count => "|X_j| = C(r-1, r-j), exact  [--r]",
            Identity::Example1 => "the three displays of the worked example  [--display --k --l]",
            Identity::DepthOne => "all four families and both partition sums equal ζ(k) at depth one  [--k]",
            Identity::PartitionRhoStar => "ρ̄*(Σ_Π c*(Π) H_harm(K;Π;T)) = Σ_Π c*(Π) H_sh(K;Π;T)  [--index]",
            Identity::BellStirling => "B_{4,2} and the Stirling tables against partition enumeration, exact  [--r]",
            Identity::ClosedForms => "ζ(2), ζ(3), ζ(1,2), ζ(1,3), ζ(2,2) against their closed forms",
        }
    }

    /// Tolerance applied when none is configured.
    pub fn default_tolerance(self) -> f64 {
        match self {
            Identity::Prop3Eq1 | Identity::RemarkStar => 1e-10,
            Identity::ClosedForms => 1e-9,
            Identity::Corollary1 | Identity::Example1 | Identity::DepthOne => 1e-8,
            _ => 1e-7,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .iter()
            .copied()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::parse(format!("unknown identity '{s}'")))
    }
}

/// Parameters of a verification; each identity reads the fields it needs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Params {
    pub index: Option<Index>,
    pub k: Option<u32>,
    pub l: Option<u32>,
    pub r: Option<u32>,
    pub b: Option<Vec<u32>>,
    pub display: Option<u32>,
    pub route: Option<ShRoute>,
}

impl Params {
    pub fn index(k: &str) -> Result<Self> {
        Ok(Params { index: Some(k.parse()?), ..Default::default() })
    }

    pub fn r(r: u32) -> Self {
        Params { r: Some(r), ..Default::default() }
    }

    pub fn to_map(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        if let Some(v) = &self.index {
            m.insert("index".into(), v.to_string());
        }
        if let Some(v) = self.k {
            m.insert("k".into(), v.to_string());
        }
        if let Some(v) = self.l {
            m.insert("l".into(), v.to_string());
        }
        if let Some(v) = self.r {
            m.insert("r".into(), v.to_string());
        }
        if let Some(v) = &self.b {
            let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            m.insert("b".into(), s.join(","));
        }
        if let Some(v) = self.display {
            m.insert("display".into(), v.to_string());
        }
        if let Some(v) = self.route {
            m.insert("route".into(), v.to_string());
        }
        m
    }

    fn need_index(&self) -> Result<&Index> {
        self.index.as_ref().ok_or_else(|| Error::domain("this identity needs an index"))
    }

    fn need_r(&self) -> Result<u32> {
        match self.r {
            Some(r) if r >= 1 => Ok(r),
            Some(_) => Err(Error::domain("r must be at least 1")),
            None => Err(Error::domain("this identity needs r")),
        }
    }

    fn need_k(&self) -> Result<u32> {
        match self.k {
            Some(k) if k >= 2 => Ok(k),
            Some(k) => Err(Error::domain(format!("k must be at least 2, got {k}"))),
            None => Err(Error::domain("this identity needs k")),
        }
    }
}

/// What a check produced before it is turned into a report.
enum Outcome {
    Numeric {
        lhs: TPoly<Ball>,
        rhs: TPoly<Ball>,
        note: Option<String>,
    },
    Exact {
        checks: u64,
        failures: Vec<String>,
        coefficients: Vec<CoefficientCheck>,
        note: Option<String>,
    },
}

/// Builds both sides of `id` for `params` and compares them.
///
/// Errors (capacity, accuracy, bad parameters) are recorded in the report,
/// which then fails.
pub fn verify(ctx: &Context, id: Identity, params: &Params) -> IdentityReport {
    let start = Instant::now();
    build_report(ctx, id, params, start, run(ctx, id, params))
}

fn build_report(ctx: &Context, id: Identity, params: &Params, start: Instant, outcome: Result<Outcome>) -> IdentityReport {
    let tolerance = ctx.config().tolerance.unwrap_or(id.default_tolerance());
    let mut report = IdentityReport {
        identity: id.name().to_string(),
        params: params.to_map(),
        method: "numeric".into(),
        checks: 0,
        coefficients: Vec::new(),
        max_deviation: 0.0,
        bound: 0.0,
        tolerance,
        pass: false,
        seconds: 0.0,
        note: None,
        error: None,
    };
    match outcome {
        Ok(Outcome::Numeric { lhs, rhs, note }) => {
            let n = lhs.coeffs().len().max(rhs.coeffs().len());
            let mut pass = true;
            for i in 0..n {
                let (a, b) = (lhs.coeff(i), rhs.coeff(i));
                let dev = a.distance(&b);
                let bound = summed_radius(&a, &b);
                pass &= dev <= bound && bound <= tolerance;
                report.max_deviation = report.max_deviation.max(dev);
                report.bound = report.bound.max(bound);
                report.coefficients.push(CoefficientCheck {
                    power: i,
                    lhs: a.to_decimal(20),
                    rhs: b.to_decimal(20),
                    deviation: dev,
                    bound,
                });
            }
            report.checks = n as u64;
            report.pass = pass;
            report.note = note;
            if report.bound > tolerance {
                let msg = format!("error bound {:.2e} exceeds tolerance {:.0e}", report.bound, tolerance);
                report.note = Some(match report.note.take() {
                    Some(n) => format!("{n}; {msg}"),
                    None => msg,
                });
            }
        }
        Ok(Outcome::Exact { checks, failures, coefficients, note }) => {
            report.method = "exact".into();
            report.tolerance = 0.0;
            report.checks = checks;
            report.coefficients = coefficients;
            report.max_deviation = if failures.is_empty() { 0.0 } else { 1.0 };
            report.pass = failures.is_empty();
            report.note = match (note, failures.first()) {
                (n, None) => n,
                (_, Some(f)) => Some(format!("{} mismatches, first: {f}", failures.len())),
            };
        }
        Err(e) => {
            report.error = Some(e.to_string());
        }
    }
    report.seconds = start.elapsed().as_secs_f64();
    report
}

/// Like [`verify`], but bad parameters (domain and parse errors) come back
/// as `Err` instead of a failed report.
pub fn try_verify(ctx: &Context, id: Identity, params: &Params) -> Result<IdentityReport> {
    let start = Instant::now();
    match run(ctx, id, params) {
        Err(e @ (Error::Domain(_) | Error::Parse(_))) => Err(e),
        outcome => Ok(build_report(ctx, id, params, start, outcome)),
    }
}

fn run(ctx: &Context, id: Identity, p: &Params) -> Result<Outcome> {
    match id {
        Identity::Theorem1 => sym_vs_partition(ctx, p.need_index()?, Flavor::StarSh, ShRoute::Word, None),
        Identity::HoffmanHarm => sym_vs_partition(ctx, p.need_index()?, Flavor::Harm, ShRoute::Word, None),
        Identity::HoffmanStarHarm => {
            sym_vs_partition(ctx, p.need_index()?, Flavor::StarHarm, ShRoute::Word, None)
        }
        Identity::ShuffleMzv => sym_vs_partition(
            ctx,
            p.need_index()?,
            Flavor::Sh,
            p.route.unwrap_or_default(),
            Some("the form Σ c(Π) H_sh is obtained by substituting H_sh into the harmonic identity; it is externally sourced, not derived here".into()),
        ),
        Identity::Corollary1 => repeated_ones(ctx, p.need_k()?, p.need_r()?),
        Identity::Prop3Eq1 => ones_harm_inverse(ctx, p.need_r()?),
        Identity::Prop3Eq2 => ones_sh_power(ctx, p.need_r()?),
        Identity::Lemma1 => ones_harm_bell(ctx, p.need_r()?),
        Identity::RemarkBell => factorial_bell(p.need_r()?),
        Identity::RemarkStar => ones_star_bell(ctx, p.need_r()?),
        Identity::Prop1 => decomposition_bijection(ctx, p.need_r()?, p.b.as_deref()),
        Identity::Prop2 => decomposition_factorization(ctx, p.need_r()?, p.b.as_deref()),
        Identity::RegTheorem => rho_matches_shuffle(ctx, p.need_index()?),
        Identity::Cor1Count => block_counts(ctx, p.need_r()?),
        Identity::Example1 => worked_example(ctx, p),
        Identity::DepthOne => depth_one(ctx, p.need_k()?),
        Identity::PartitionRhoStar => partition_rho_star(ctx, p.need_index()?),
        Identity::BellStirling => bell_stirling(p.need_r()?),
        Identity::ClosedForms => closed_forms(ctx),
    }
}

fn numeric(ctx: &Context, lhs: &MzvSymbolPoly, rhs: &MzvSymbolPoly, note: Option<String>) -> Result<Outcome> {
    let note = match (note, lhs == rhs) {
        (n, false) => n,
        (None, true) => Some("sides also agree symbolically".into()),
        (Some(n), true) => Some(format!("{n}; sides also agree symbolically")),
    };
    Ok(Outcome::Numeric { lhs: ctx.evaluate(lhs)?, rhs: ctx.evaluate(rhs)?, note })
}

fn sym_vs_partition(
    ctx: &Context,
    k: &Index,
    flavor: Flavor,
    route: ShRoute,
    note: Option<String>,
) -> Result<Outcome> {
    if k.is_empty() {
        return Err(Error::domain("the index must be nonempty"));
    }
    let lhs = ctx.symmetric_sum_symbolic(k, flavor, route)?;
    let rhs = ctx.partition_sum_symbolic(k, flavor)?;
    numeric(ctx, &lhs, &rhs, note)
}

fn zeta_const(m: u32) -> Result<MzvSymbolPoly> {
    Ok(TPoly::constant(SymbolExpr::zeta(&Index::new(vec![m])?)?))
}

fn repeated_ones(ctx: &Context, k: u32, r: u32) -> Result<Outcome> {
    let mut lhs = MzvSymbolPoly::zero();
    for i in 0..r {
        let mut parts = vec![1; i as usize];
        parts.push(k);
        parts.extend(std::iter::repeat_n(1, (r - 1 - i) as usize));
        lhs = lhs + ctx.star_sh(&Index::new(parts)?)?;
    }
    let mut rhs = MzvSymbolPoly::zero();
    for j in 0..r {
        let c = zeta_const(k + r - 1 - j)?.scale(&Rational::from((1, factorial(j))));
        rhs = rhs + c.shift(j as usize);
    }
    numeric(ctx, &lhs, &rhs, None)
}

fn ones_partition_sum(ctx: &Context, r: u32, flavor: Flavor) -> Result<MzvSymbolPoly> {
    ctx.partition_sum_symbolic(&Index::ones(r as usize), flavor)
}

fn ones_harm_inverse(ctx: &Context, r: u32) -> Result<Outcome> {
    let lhs = ctx.evaluate(&ones_partition_sum(ctx, r, Flavor::StarHarm)?)?;
    let maps = ctx.numeric_maps(r as usize)?;
    let rhs = maps.rho_bar_star_inverse(&TPoly::monomial(Ball::one(), r as usize))?;
    Ok(Outcome::Numeric { lhs, rhs, note: Some("right side built over multiprecision balls".into()) })
}

fn symbol_coefficients(lhs: &MzvSymbolPoly, rhs: &MzvSymbolPoly) -> (Vec<CoefficientCheck>, Vec<String>) {
    let n = lhs.coeffs().len().max(rhs.coeffs().len());
    let mut checks = Vec::new();
    let mut failures = Vec::new();
    for i in 0..n {
        let (a, b) = (lhs.coeff(i), rhs.coeff(i));
        let equal = a == b;
        if !equal {
            failures.push(format!("T^{i}: {a} ≠ {b}"));
        }
        checks.push(CoefficientCheck {
            power: i,
            lhs: a.to_string(),
            rhs: b.to_string(),
            deviation: if equal { 0.0 } else { 1.0 },
            bound: 0.0,
        });
    }
    (checks, failures)
}

fn exact_poly(lhs: &MzvSymbolPoly, rhs: &MzvSymbolPoly, note: Option<String>) -> Outcome {
    let (coefficients, failures) = symbol_coefficients(lhs, rhs);
    Outcome::Exact { checks: coefficients.len() as u64, failures, coefficients, note }
}

fn ones_sh_power(ctx: &Context, r: u32) -> Result<Outcome> {
    let lhs = ones_partition_sum(ctx, r, Flavor::StarSh)?;
    Ok(exact_poly(&lhs, &TPoly::monomial(SymbolExpr::one(), r as usize), None))
}

/// `Y_r(0!e(1;T), 1!e(2;T), ..., (r-1)!e(r;T))` over symbol polynomials.
fn bell_e(r: u32) -> Result<MzvSymbolPoly> {
    let xs: Vec<MzvSymbolPoly> = (1..=r)
        .map(|j| e_poly(j).scale_integer(&factorial(j - 1)))
        .collect();
    bell_complete(r as usize, &xs)
}

fn ones_harm_bell(ctx: &Context, r: u32) -> Result<Outcome> {
    let lhs = ones_partition_sum(ctx, r, Flavor::StarHarm)?;
    Ok(exact_poly(&lhs, &bell_e(r)?, None))
}

fn factorial_bell(r: u32) -> Result<Outcome> {
    let xs: Vec<Integer> = (0..r).map(factorial).collect();
    let y = bell_complete(r as usize, &xs)?;
    let f = factorial(r);
    let mut failures = Vec::new();
    if y != f {
        failures.push(format!("Y_{r} = {y} but {r}! = {f}"));
    }
    // rising factorial x(x+1)...(x+r-1) against the unsigned Stirling numbers
    let mut rising = vec![Rational::from(1)];
    for a in 0..r {
        let mut next = vec![Rational::new(); rising.len() + 1];
        for (i, c) in rising.iter().enumerate() {
            next[i] += Rational::from(c * a);
            next[i + 1] += c;
        }
        rising = next;
    }
    for kk in 1..=r as usize {
        let b = bell_partial(r as usize, kk, &xs[..r as usize - kk + 1])?;
        if b != rising[kk] {
            failures.push(format!("x^{kk} coefficient of the rising factorial is {} not {b}", rising[kk]));
        }
    }
    Ok(Outcome::Exact {
        checks: 1 + r as u64,
        failures,
        coefficients: vec![CoefficientCheck {
            power: 0,
            lhs: f.to_string(),
            rhs: y.to_string(),
            deviation: 0.0,
            bound: 0.0,
        }],
        note: Some("also checks the rising-factorial expansion".into()),
    })
}

fn ones_star_bell(ctx: &Context, r: u32) -> Result<Outcome> {
    let lhs = ctx.reg().harm_star(&Index::ones(r as usize)).scale_integer(&factorial(r));
    numeric(ctx, &lhs, &bell_e(r)?, None)
}

fn proper_subsets(r: u32, b: Option<&[u32]>) -> Result<Vec<Vec<u32>>> {
    if let Some(b) = b {
        return Ok(vec![b.to_vec()]);
    }
    Ok((0u32..(1 << r) - 1)
        .map(|mask| (1..=r).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect())
}

fn check_limit(ctx: &Context, r: u32) -> Result<()> {
    let limit = ctx.config().max_partition_ground;
    if r as usize > limit {
        return Err(Error::Capacity { what: "ground set size", requested: r as usize, limit });
    }
    Ok(())
}

fn decomposition_bijection(ctx: &Context, r: u32, b: Option<&[u32]>) -> Result<Outcome> {
    check_limit(ctx, r)?;
    let ground: Vec<u32> = (1..=r).collect();
    let all: BTreeSet<SetPartition> = enum_set_partitions(&ground)?.into_iter().collect();
    let mut checks = 0;
    let mut failures = Vec::new();
    for bset in proper_subsets(r, b)? {
        let terms = prop1_decomposition(r, &bset)?;
        let mut seen = BTreeSet::new();
        for t in &terms {
            let u = t.union();
            if !seen.insert(u.clone()) {
                failures.push(format!("B={bset:?}: {u} produced twice"));
            }
        }
        checks += 1;
        if seen != all {
            failures.push(format!("B={bset:?}: image has {} of {} partitions", seen.len(), all.len()));
        }
    }
    let mut note = None;
    if r == 4 && b == Some(&[3, 4][..]) {
        let a = [1, 2, 3];
        let pa: Vec<String> = enum_set_partitions(&a)?.iter().map(|p| p.to_text()).collect();
        let pb: Vec<String> = enum_restricted_partitions(&a, &[3, 4])?.iter().map(|p| p.to_text()).collect();
        let mut pa_sorted = pa.clone();
        pa_sorted.sort();
        let mut pb_sorted = pb.clone();
        pb_sorted.sort();
        checks += 2;
        if pa_sorted != ["123", "12|3", "13|2", "1|23", "1|2|3"] {
            failures.push(format!("P({{1,2,3}}) = {pa:?}"));
        }
        if pb_sorted != ["123", "13|2", "1|23"] {
            failures.push(format!("P'_{{3,4}}({{1,2,3}}) = {pb:?}"));
        }
        note = Some(format!("P({{1,2,3}}) = {{{}}}, P'_{{3,4}}({{1,2,3}}) = {{{}}}", pa.join(", "), pb.join(", ")));
    }
    Ok(Outcome::Exact { checks, failures, coefficients: Vec::new(), note })
}

/// Index with `k_a = 1` exactly on `b`; the other parts alternate 2 and 3.
fn index_for_ones(r: u32, b: &[u32]) -> Index {
    Index::new((1..=r).map(|a| if b.contains(&a) { 1 } else { 2 + a % 2 }).collect()).unwrap()
}

fn decomposition_factorization(ctx: &Context, r: u32, b: Option<&[u32]>) -> Result<Outcome> {
    check_limit(ctx, r)?;
    let mut checks = 0;
    let mut failures = Vec::new();
    for bset in proper_subsets(r, b)? {
        let k = index_for_ones(r, &bset);
        for t in prop1_decomposition(r, &bset)? {
            let u = t.union();
            checks += 1;
            if coeff_c_star(&u) != coeff_c_star(&t.xi) * coeff_c_star(&t.delta) {
                failures.push(format!("c*({u}) is not c*({}) c*({})", t.xi, t.delta));
            }
            let relabeled = relabel_partition(&t.subset, &t.xi)?;
            checks += 1;
            if coeff_c_star(&relabeled) != coeff_c_star(&t.xi) {
                failures.push(format!("σ_A changes c* of {}", t.xi));
            }
            let mut factor = MzvSymbolPoly::one();
            for q in t.delta.blocks() {
                let w: u32 = q.iter().map(|&i| k.parts()[i as usize - 1]).sum();
                factor = factor * zeta_const(w)?;
            }
            let ones = Index::ones(t.subset.len());
            for flavor in [PartFlavor::Harm, PartFlavor::Sh] {
                let lhs = zeta_part(&k, &u, flavor)?;
                let inner = if t.subset.is_empty() {
                    MzvSymbolPoly::one()
                } else {
                    zeta_part(&ones, &relabeled, flavor)?
                };
                let rhs = factor.clone() * inner;
                checks += 1;
                if lhs != rhs {
                    failures.push(format!("K=({k}), Π={u}, {flavor:?}: {lhs} ≠ {rhs}"));
                }
            }
        }
    }
    Ok(Outcome::Exact { checks, failures, coefficients: Vec::new(), note: None })
}

fn rho_matches_shuffle(ctx: &Context, k: &Index) -> Result<Outcome> {
    let lhs = ctx.sh(k, ShRoute::Rho)?;
    let rhs = ctx.sh(k, ShRoute::Word)?;
    numeric(ctx, &lhs, &rhs, None)
}

fn block_counts(ctx: &Context, r: u32) -> Result<Outcome> {
    check_limit(ctx, r)?;
    let ground: Vec<u32> = (1..=r).collect();
    let parts = enum_set_partitions_limited(&ground, ctx.config().max_partition_ground)?;
    let mut failures = Vec::new();
    let mut coefficients = Vec::new();
    for j in 1..=r {
        let count = parts
            .iter()
            .filter(|p| {
                p.blocks().iter().all(|blk| {
                    if blk.contains(&1) {
                        blk.len() == j as usize
                    } else {
                        blk.len() == 1
                    }
                })
            })
            .count();
        let expected = binomial(r - 1, r - j);
        if expected != count {
            failures.push(format!("|X_{j}| = {count}, C({}, {}) = {expected}", r - 1, r - j));
        }
        coefficients.push(CoefficientCheck {
            power: j as usize,
            lhs: count.to_string(),
            rhs: expected.to_string(),
            deviation: if expected == count { 0.0 } else { 1.0 },
            bound: 0.0,
        });
    }
    Ok(Outcome::Exact { checks: r as u64, failures, coefficients, note: None })
}

fn mzsv_const(ctx: &Context, s: &[u32]) -> Result<MzvSymbolPoly> {
    // ζ*(K) for admissible K, expanded over contractions by the regularization engine
    let k = Index::new(s.to_vec())?;
    debug_assert!(k.is_admissible());
    Ok(ctx.reg().harm_star(&k))
}

fn worked_example(ctx: &Context, p: &Params) -> Result<Outcome> {
    let display = p.display.unwrap_or(1);
    let k = p.need_k()?;
    let (lhs, rhs) = match display {
        1 => {
            let lhs = mzsv_const(ctx, &[1, k])? + ctx.star_sh(&Index::new(vec![k, 1])?)?;
            let rhs = zeta_const(k)?.shift(1) + zeta_const(k + 1)?;
            (lhs, rhs)
        }
        2 => {
            let l = match p.l {
                Some(l) if l >= 2 => l,
                _ => return Err(Error::domain("display 2 needs l >= 2")),
            };
            let lhs = mzsv_const(ctx, &[1, k, l])?
                + mzsv_const(ctx, &[1, l, k])?
                + mzsv_const(ctx, &[k, 1, l])?
                + mzsv_const(ctx, &[l, 1, k])?
                + ctx.star_sh(&Index::new(vec![k, l, 1])?)?
                + ctx.star_sh(&Index::new(vec![l, k, 1])?)?;
            let zk = zeta_const(k)?;
            let zl = zeta_const(l)?;
            let rhs = (zk.clone() * zl.clone() + zeta_const(k + l)?).shift(1)
                + zk * zeta_const(l + 1)?
                + zl * zeta_const(k + 1)?
                + zeta_const(k + l + 1)?.scale_integer(&Integer::from(2));
            (lhs, rhs)
        }
        3 => {
            let lhs = (mzsv_const(ctx, &[1, 1, k])?
                + ctx.star_sh(&Index::new(vec![1, k, 1])?)?
                + ctx.star_sh(&Index::new(vec![k, 1, 1])?)?)
            .scale_integer(&Integer::from(2));
            let two = Integer::from(2);
            let rhs = zeta_const(k)?.shift(2)
                + zeta_const(k + 1)?.scale_integer(&two).shift(1)
                + zeta_const(k + 2)?.scale_integer(&two);
            (lhs, rhs)
        }
        d => return Err(Error::domain(format!("display must be 1, 2 or 3, got {d}"))),
    };
    numeric(ctx, &lhs, &rhs, None)
}

fn depth_one(ctx: &Context, k: u32) -> Result<Outcome> {
    let idx = Index::new(vec![k])?;
    let z = ctx.evaluator().mzv(&idx)?;
    let target = TPoly::constant(z);
    let mut lhs_all = Vec::new();
    for f in Flavor::ALL {
        lhs_all.push(ctx.symmetric_sum(&idx, f)?);
        lhs_all.push(ctx.partition_sum(&idx, f)?);
    }
    // report the widest deviation among the eight routes
    let worst = lhs_all
        .into_iter()
        .max_by(|a, b| {
            let da = crate::zeta_numerics::compare_polys(a, &target).0;
            let db = crate::zeta_numerics::compare_polys(b, &target).0;
            da.partial_cmp(&db).unwrap()
        })
        .unwrap();
    Ok(Outcome::Numeric { lhs: worst, rhs: target, note: Some("eight routes compared, worst shown".into()) })
}

fn partition_rho_star(ctx: &Context, k: &Index) -> Result<Outcome> {
    let harm = ctx.partition_sum_symbolic(k, Flavor::StarHarm)?;
    let lhs = ctx.symbol_maps(harm.degree().unwrap_or(0))?.rho_bar_star(&harm)?;
    let rhs = ctx.partition_sum_symbolic(k, Flavor::StarSh)?;
    numeric(ctx, &lhs, &rhs, None)
}

fn bell_stirling(r: u32) -> Result<Outcome> {
    if r > 10 {
        return Err(Error::Capacity { what: "ground set size", requested: r as usize, limit: 10 });
    }
    let mut failures = Vec::new();
    let mut checks = 1;
    let xs: Vec<MultiPoly> = (1..=3).map(MultiPoly::var).collect();
    let b42 = bell_partial(4, 2, &xs)?;
    let expected = MultiPoly::var(1) * MultiPoly::var(3) * MultiPoly::from_i64(4)
        + MultiPoly::var(2) * MultiPoly::var(2) * MultiPoly::from_i64(3);
    if b42 != expected {
        failures.push(format!("B_4,2 = {b42}"));
    }
    for n in 1..=r as usize {
        let ground: Vec<u32> = (1..=n as u32).collect();
        let parts = enum_set_partitions_limited(&ground, 10)?;
        checks += 1;
        if bell_number(n) != parts.len() {
            failures.push(format!("Bell({n}) = {} but enumeration gives {}", bell_number(n), parts.len()));
        }
        for kk in 1..=n {
            let with_k: Vec<&SetPartition> = parts.iter().filter(|p| p.num_blocks() == kk).collect();
            let first: Integer = with_k.iter().map(|p| coeff_c_star(p)).sum();
            let shapes: Integer = partition_shapes(n, kk)
                .iter()
                .map(|s| partition_shape_count(n, kk, s).unwrap())
                .sum();
            checks += 3;
            if stirling_second(n, kk) != with_k.len() {
                failures.push(format!("S({n},{kk}) = {} but enumeration gives {}", stirling_second(n, kk), with_k.len()));
            }
            if stirling_first_unsigned(n, kk) != first {
                failures.push(format!("s({n},{kk}) = {} but enumeration gives {first}", stirling_first_unsigned(n, kk)));
            }
            if shapes != with_k.len() {
                failures.push(format!("shape counts for ({n},{kk}) sum to {shapes}"));
            }
        }
    }
    Ok(Outcome::Exact {
        checks,
        failures,
        coefficients: Vec::new(),
        note: Some(format!("B_4,2(x1,x2,x3) = {b42}")),
    })
}

const APERY: &str = "1.2020569031595942853997381615114499907649862923404988817922715553";

/// Coefficient `i` of either side is the `i`-th value in the note.
fn closed_forms(ctx: &Context) -> Result<Outcome> {
    let ev = ctx.evaluator();
    let exact = |x: Float| Ball::exact(x).with_rad(1e-70);
    let pi = Float::with_val(CONSTANT_PREC, Constant::Pi);
    let pi2 = Float::with_val(CONSTANT_PREC, pi.square_ref());
    let z2 = ev.zeta_single(2)?;
    let z3 = ev.zeta_single(3)?;
    let z4 = ev.zeta_single(4)?;
    let apery = exact(Float::with_val(CONSTANT_PREC, Float::parse(APERY).expect("valid constant")));
    let mzv = |s: &str| -> Result<Ball> { ev.mzv(&s.parse()?) };
    let lhs = vec![z2.clone(), z3.clone(), mzv("1,2")?, mzv("1,3")?, mzv("2,2")?];
    let rhs = vec![
        exact(pi2 / 6u32),
        apery,
        z3,
        z4.scale(&Rational::from((1, 4))),
        (z2.clone() * z2 - z4).scale(&Rational::from((1, 2))),
    ];
    Ok(Outcome::Numeric {
        lhs: TPoly::from_coeffs(lhs),
        rhs: TPoly::from_coeffs(rhs),
        note: Some(
            "entries: ζ(2) vs π²/6, ζ(3) vs reference digits, ζ(1,2) vs ζ(3), ζ(1,3) vs ζ(4)/4, ζ(2,2) vs (ζ(2)²−ζ(4))/2"
                .into(),
        ),
    })
}
