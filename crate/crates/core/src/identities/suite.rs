use std::collections::BTreeMap;
use std::fmt::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index_algebra::Index;

use super::report::IdentityReport;
use super::sums::Context;
use super::verify::{verify, Identity, Params};

/// One verification in the acceptance matrix, tagged with its criterion number.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteCase {
    pub criterion: u32,
    pub identity: Identity,
    pub params: Params,
}

impl SuiteCase {
    fn new(criterion: u32, identity: Identity, params: Params) -> Self {
        SuiteCase { criterion, identity, params }
    }
}

/// All indices (admissible or not) with weight ≤ `max_weight` and depth in `1..=max_depth`.
pub fn indices_up_to(max_weight: u32, max_depth: usize) -> Vec<Index> {
    fn go(rest: u32, depth: usize, cur: &mut Vec<u32>, out: &mut Vec<Index>) {
        if !cur.is_empty() {
            out.push(Index::new(cur.clone()).expect("positive parts"));
        }
        if depth == 0 {
            return;
        }
        for k in 1..=rest {
            cur.push(k);
            go(rest - k, depth - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_weight, max_depth, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| (a.weight(), a.depth(), a.parts()).cmp(&(b.weight(), b.depth(), b.parts())));
    out
}

fn example1_params(display: u32, k: u32, l: Option<u32>) -> Params {
    Params { display: Some(display), k: Some(k), l, ..Default::default() }
}

/// The matrix behind the eleven acceptance criteria.
pub fn acceptance_cases() -> Vec<SuiteCase> {
    let mut cases = Vec::new();
    for k in 2..=4 {
        cases.push(SuiteCase::new(1, Identity::Example1, example1_params(1, k, None)));
    }
    for k in 2..=3 {
        for l in 2..=3 {
            cases.push(SuiteCase::new(2, Identity::Example1, example1_params(2, k, Some(l))));
        }
        cases.push(SuiteCase::new(2, Identity::Example1, example1_params(3, k, None)));
    }
    for k in indices_up_to(7, 4) {
        let p = Params { index: Some(k), ..Default::default() };
        cases.push(SuiteCase::new(3, Identity::Theorem1, p));
    }
    for k in 2..=5 {
        for r in 1..=5 {
            let p = Params { k: Some(k), r: Some(r), ..Default::default() };
            cases.push(SuiteCase::new(4, Identity::Corollary1, p));
        }
    }
    for r in 1..=8 {
        cases.push(SuiteCase::new(4, Identity::Cor1Count, Params::r(r)));
    }
    for r in 1..=6 {
        cases.push(SuiteCase::new(5, Identity::Prop3Eq1, Params::r(r)));
    }
    for r in 1..=8 {
        cases.push(SuiteCase::new(5, Identity::Prop3Eq2, Params::r(r)));
    }
    for r in 1..=7 {
        cases.push(SuiteCase::new(6, Identity::Lemma1, Params::r(r)));
    }
    for r in 1..=12 {
        cases.push(SuiteCase::new(7, Identity::RemarkBell, Params::r(r)));
    }
    for r in 1..=6 {
        cases.push(SuiteCase::new(7, Identity::RemarkStar, Params::r(r)));
    }
    for r in 1..=7 {
        cases.push(SuiteCase::new(8, Identity::Prop1, Params::r(r)));
        cases.push(SuiteCase::new(8, Identity::Prop2, Params::r(r)));
    }
    let worked = Params { r: Some(4), b: Some(vec![3, 4]), ..Default::default() };
    cases.push(SuiteCase::new(8, Identity::Prop1, worked.clone()));
    cases.push(SuiteCase::new(8, Identity::Prop2, worked));
    for k in indices_up_to(6, 3) {
        let p = Params { index: Some(k), ..Default::default() };
        cases.push(SuiteCase::new(9, Identity::RegTheorem, p));
    }
    cases.push(SuiteCase::new(10, Identity::ClosedForms, Params::default()));
    cases.push(SuiteCase::new(11, Identity::BellStirling, Params::r(10)));
    cases
}

/// Invariants beyond the numbered criteria: the Hoffman identities, the
/// shuffle-MZV form, the depth-one degeneracy and the ρ̄* compatibility of
/// the partition sums.
pub fn extended_cases() -> Vec<SuiteCase> {
    let mut cases = Vec::new();
    for k in indices_up_to(7, 4) {
        for id in [
            Identity::HoffmanHarm,
            Identity::HoffmanStarHarm,
            Identity::ShuffleMzv,
            Identity::PartitionRhoStar,
        ] {
            cases.push(SuiteCase::new(0, id, Params { index: Some(k.clone()), ..Default::default() }));
        }
    }
    for k in 2..=6 {
        cases.push(SuiteCase::new(0, Identity::DepthOne, Params { k: Some(k), ..Default::default() }));
    }
    cases
}

/// Runs `cases` on `jobs` threads (all cores when `None`); reports come back in case order.
pub fn run_cases(ctx: &Context, cases: &[SuiteCase], jobs: Option<usize>) -> Result<Vec<IdentityReport>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(Error::domain("--jobs must be at least 1"));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| {
        cases
            .par_iter()
            .map(|c| verify(ctx, c.identity, &c.params))
            .collect()
    }))
}

/// Pass counts overall and per criterion (criterion 0 collects extended cases).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub passed: usize,
    pub criteria: BTreeMap<u32, (usize, usize)>,
    pub seconds: BTreeMap<u32, f64>,
}

impl SuiteSummary {
    pub fn new(cases: &[SuiteCase], reports: &[IdentityReport]) -> Self {
        let mut s = SuiteSummary::default();
        for (c, r) in cases.iter().zip(reports) {
            s.total += 1;
            let e = s.criteria.entry(c.criterion).or_default();
            e.1 += 1;
            if r.pass {
                s.passed += 1;
                e.0 += 1;
            }
            *s.seconds.entry(c.criterion).or_default() += r.seconds;
        }
        s
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (c, (p, t)) in &self.criteria {
            let name = if *c == 0 { "extended".to_string() } else { format!("criterion {c}") };
            let status = if p == t { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status} {name}: {p}/{t} ({:.2}s cpu)", self.seconds[c]);
        }
        let _ = write!(out, "{}/{} verifications passed", self.passed, self.total);
        out
    }
}

/// Reports for the three displays of the worked example over `ks × ls`.
///
/// Display 1 and 3 use only `k`; display 2 runs every pair.
pub fn example1_table(ctx: &Context, ks: &[u32], ls: &[u32]) -> Result<Vec<IdentityReport>> {
    if let Some(bad) = ks.iter().chain(ls).find(|&&x| x < 2) {
        return Err(Error::domain(format!("k and l must be at least 2, got {bad}")));
    }
    let mut cases = Vec::new();
    for &k in ks {
        cases.push(example1_params(1, k, None));
    }
    for &k in ks {
        for &l in ls {
            cases.push(example1_params(2, k, Some(l)));
        }
    }
    for &k in ks {
        cases.push(example1_params(3, k, None));
    }
    Ok(cases
        .par_iter()
        .map(|p| verify(ctx, Identity::Example1, p))
        .collect())
}

/// Plain-text rendering of [`example1_table`]: one line per coefficient.
pub fn format_example1_table(reports: &[IdentityReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<4} {:<3} {:<3} {:<4} {:>24} {:>24} {:>10} {:>10}",
        "disp", "k", "l", "T^i", "lhs", "rhs", "deviation", "bound"
    );
    for r in reports {
        let get = |key: &str| r.params.get(key).cloned().unwrap_or_else(|| "-".into());
        if let Some(e) = &r.error {
            let _ = writeln!(out, "{:<4} {:<3} {:<3} error: {e}", get("display"), get("k"), get("l"));
            continue;
        }
        for c in &r.coefficients {
            let _ = writeln!(
                out,
                "{:<4} {:<3} {:<3} {:<4} {:>24} {:>24} {:>10.2e} {:>10.2e}",
                get("display"),
                get("k"),
                get("l"),
                c.power,
                truncate(&c.lhs, 24),
                truncate(&c.rhs, 24),
                c.deviation,
                c.bound
            );
        }
        let _ = writeln!(out, "     {} {}", if r.pass { "PASS" } else { "FAIL" }, r.params_text());
    }
    out
}

fn truncate(s: &str, n: usize) -> &str {
    match s.char_indices().nth(n) {
        Some((i, _)) => &s[..i],
        None => s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_family_sizes() {
        let all = indices_up_to(3, 3);
        let text: Vec<String> = all.iter().map(|k| k.to_string()).collect();
        assert_eq!(text, ["1", "2", "1,1", "3", "1,2", "2,1", "1,1,1"]);
        // compositions of n into at most 4 parts, n = 1..7
        let count: usize = (1..=7u32)
            .map(|n| (0..4).map(|j| binom(n - 1, j)).sum::<usize>())
            .sum();
        assert_eq!(indices_up_to(7, 4).len(), count);
    }

    fn binom(n: u32, k: u32) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
    }

    #[test]
    fn every_criterion_has_cases() {
        let cases = acceptance_cases();
        for c in 1..=11 {
            assert!(cases.iter().any(|x| x.criterion == c), "criterion {c}");
        }
    }
}
