use std::fmt;
use std::str::FromStr;

use rug::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::factorial;

/// Largest ground set enumerated unless the caller raises the limit.
pub const DEFAULT_MAX_GROUND: usize = 14;

/// A partition of a finite set of positive integers into nonempty blocks.
///
/// Blocks are kept sorted internally and ordered by their minimum element, so
/// structural equality coincides with equality of partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    ground: Vec<u32>,
    blocks: Vec<Vec<u32>>,
}

impl SetPartition {
    /// The unique partition of the empty set.
    pub fn empty() -> Self {
        SetPartition {
            ground: Vec::new(),
            blocks: Vec::new(),
        }
    }

    /// Builds a partition from arbitrary blocks, validating and canonicalizing.
    pub fn from_blocks(blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut blocks: Vec<Vec<u32>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        if blocks.iter().any(|b| b.is_empty()) {
            return Err(Error::domain("partition blocks must be nonempty"));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        let mut ground: Vec<u32> = blocks.iter().flatten().copied().collect();
        ground.sort_unstable();
        if ground.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("partition blocks must be pairwise disjoint"));
        }
        Ok(SetPartition { ground, blocks })
    }

    /// The all-singletons partition of `{1..r}`.
    pub fn singletons(r: u32) -> Self {
        SetPartition {
            ground: (1..=r).collect(),
            blocks: (1..=r).map(|i| vec![i]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn ground(&self) -> &[u32] {
        &self.ground
    }

    /// Number of blocks.
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Size of the ground set.
    pub fn ground_size(&self) -> usize {
        self.ground.len()
    }

    pub fn is_partition_of(&self, set: &[u32]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        s == self.ground
    }

    /// Union of two partitions of disjoint ground sets.
    pub fn disjoint_union(&self, other: &SetPartition) -> Result<SetPartition> {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        SetPartition::from_blocks(blocks)
    }

    pub fn shape(&self) -> PartitionShape {
        let r = self.ground_size();
        let mut counts = vec![0usize; r];
        for b in &self.blocks {
            counts[b.len() - 1] += 1;
        }
        PartitionShape { r, counts }
    }

    /// Text form such as `13|2`. When any element exceeds 9 the elements of a
    /// block are comma separated and singleton blocks carry a trailing comma.
    pub fn to_text(&self) -> String {
        let wide = self.ground.iter().any(|&x| x > 9);
        self.blocks
            .iter()
            .map(|b| {
                let parts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                if !wide {
                    parts.concat()
                } else if parts.len() == 1 {
                    // trailing comma keeps "10," distinct from the digits 1 and 0
                    format!("{},", parts[0])
                } else {
                    parts.join(",")
                }
            })
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            f.write_str("∅")
        } else {
            f.write_str(&self.to_text())
        }
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(SetPartition::empty());
        }
        let mut blocks = Vec::new();
        for block in s.split('|') {
            let block = block.trim();
            let elems: Result<Vec<u32>> = if block.contains(',') {
                block
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| {
                        t.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::parse(format!("bad partition element '{t}'")))
                    })
                    .collect()
            } else {
                block
                    .chars()
                    .map(|c| {
                        c.to_digit(10)
                            .ok_or_else(|| Error::parse(format!("bad partition element '{c}'")))
                    })
                    .collect()
            };
            blocks.push(elems?);
        }
        SetPartition::from_blocks(blocks)
    }
}

impl Serialize for SetPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<u32>>::deserialize(deserializer)?;
        SetPartition::from_blocks(blocks).map_err(serde::de::Error::custom)
    }
}

/// Block-size profile of a partition: `counts[a - 1]` blocks of size `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionShape {
    pub r: usize,
    pub counts: Vec<usize>,
}

impl PartitionShape {
    pub fn num_blocks(&self) -> usize {
        self.counts.iter().sum()
    }
}

fn normalize_set(a: &[u32]) -> Vec<u32> {
    let mut v = a.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Iterator over all partitions of a finite set, driven by restricted growth
/// strings. The first partition is the single block, the last is all singletons.
pub struct SetPartitions {
    elems: Vec<u32>,
    rgs: Vec<usize>,
    // prefix maxima of `rgs`
    maxes: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    pub fn new(set: &[u32]) -> Self {
        let elems = normalize_set(set);
        let n = elems.len();
        SetPartitions {
            elems,
            rgs: vec![0; n],
            maxes: vec![0; n],
            done: false,
        }
    }

    fn current(&self) -> SetPartition {
        let nblocks = self.maxes.last().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); nblocks];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(self.elems[i]);
        }
        // restricted growth strings already list blocks by minimum element
        SetPartition {
            ground: self.elems.clone(),
            blocks,
        }
    }

    fn advance(&mut self) {
        let n = self.rgs.len();
        let mut i = n;
        while i > 1 {
            i -= 1;
            if self.rgs[i] <= self.maxes[i - 1] {
                self.rgs[i] += 1;
                self.maxes[i] = self.maxes[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.maxes[j] = self.maxes[i];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let p = self.current();
        self.advance();
        Some(p)
    }
}

fn check_capacity(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::Capacity {
            what: "ground set size",
            requested: n,
            limit,
        })
    } else {
        Ok(())
    }
}

/// All partitions of `set`, each exactly once.
pub fn enum_set_partitions(set: &[u32]) -> Result<Vec<SetPartition>> {
    enum_set_partitions_limited(set, DEFAULT_MAX_GROUND)
}

pub fn enum_set_partitions_limited(set: &[u32], limit: usize) -> Result<Vec<SetPartition>> {
    check_capacity(normalize_set(set).len(), limit)?;
    Ok(SetPartitions::new(set).collect())
}

/// Partitions of `set` none of whose blocks is contained in `forbidden`.
pub fn enum_restricted_partitions(set: &[u32], forbidden: &[u32]) -> Result<Vec<SetPartition>> {
    enum_restricted_partitions_limited(set, forbidden, DEFAULT_MAX_GROUND)
}

pub fn enum_restricted_partitions_limited(
    set: &[u32],
    forbidden: &[u32],
    limit: usize,
) -> Result<Vec<SetPartition>> {
    check_capacity(normalize_set(set).len(), limit)?;
    let forbidden = normalize_set(forbidden);
    Ok(SetPartitions::new(set)
        .filter(|p| {
            p.blocks()
                .iter()
                .all(|b| !b.iter().all(|x| forbidden.binary_search(x).is_ok()))
        })
        .collect())
}

/// `c*(Π) = ∏ (|P_i| - 1)!`; equals 1 on the empty partition.
pub fn coeff_c_star(p: &SetPartition) -> Integer {
    p.blocks()
        .iter()
        .fold(Integer::from(1), |acc, b| acc * factorial(b.len() as u32 - 1))
}

/// `c(Π) = (-1)^(r - g) c*(Π)`.
pub fn coeff_c(p: &SetPartition) -> Integer {
    let c = coeff_c_star(p);
    if (p.ground_size() - p.num_blocks()) % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Transports a partition of `A` to a partition of `{1..|A|}` along the
/// order-preserving bijection.
pub fn relabel_partition(set: &[u32], p: &SetPartition) -> Result<SetPartition> {
    let set = normalize_set(set);
    if set != p.ground() {
        return Err(Error::domain(format!(
            "{} is not a partition of {:?}",
            p, set
        )));
    }
    let rank = |x: &u32| set.binary_search(x).map(|i| i as u32 + 1).unwrap();
    SetPartition::from_blocks(
        p.blocks()
            .iter()
            .map(|b| b.iter().map(rank).collect())
            .collect(),
    )
}

/// One term `(A, Ξ, Δ)` of the decomposition of `P(r)` along a proper subset `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTerm {
    pub subset: Vec<u32>,
    pub xi: SetPartition,
    pub delta: SetPartition,
}

impl DecompositionTerm {
    pub fn union(&self) -> SetPartition {
        self.xi
            .disjoint_union(&self.delta)
            .expect("decomposition parts have disjoint ground sets")
    }
}

/// Enumerates `A ⊆ B`, `Ξ ∈ P(A)`, `Δ ∈ P'_B({1..r} \ A)`.
pub fn prop1_decomposition(r: u32, b: &[u32]) -> Result<Vec<DecompositionTerm>> {
    let b = normalize_set(b);
    if b.iter().any(|&x| x == 0 || x > r) {
        return Err(Error::domain(format!("{b:?} is not a subset of 1..={r}")));
    }
    if b.len() == r as usize {
        return Err(Error::domain(
            "the decomposition requires a proper subset B of 1..=r",
        ));
    }
    check_capacity(r as usize, DEFAULT_MAX_GROUND)?;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << b.len()) {
        let subset: Vec<u32> = b
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect();
        let rest: Vec<u32> = (1..=r).filter(|x| !subset.contains(x)).collect();
        let deltas = enum_restricted_partitions(&rest, &b)?;
        for xi in SetPartitions::new(&subset) {
            for delta in &deltas {
                out.push(DecompositionTerm {
                    subset: subset.clone(),
                    xi: xi.clone(),
                    delta: delta.clone(),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(ps: &[SetPartition]) -> Vec<String> {
        let mut v: Vec<String> = ps.iter().map(|p| p.to_text()).collect();
        v.sort();
        v
    }

    #[test]
    fn partitions_of_three() {
        let ps = enum_set_partitions(&[1, 2, 3]).unwrap();
        assert_eq!(texts(&ps), ["123", "12|3", "13|2", "1|23", "1|2|3"]);
        // canonical form sorts blocks by minimum, so "23|1" is written "1|23"
        assert_eq!("23|1".parse::<SetPartition>().unwrap().to_text(), "1|23");
    }

    #[test]
    fn singleton_and_empty() {
        assert_eq!(texts(&enum_set_partitions(&[1]).unwrap()), ["1"]);
        let empty = enum_set_partitions(&[]).unwrap();
        assert_eq!(empty, vec![SetPartition::empty()]);
    }

    #[test]
    fn four_elements_give_fifteen() {
        assert_eq!(enum_set_partitions(&[1, 2, 3, 4]).unwrap().len(), 15);
    }

    #[test]
    fn capacity_guard() {
        let big: Vec<u32> = (1..=15).collect();
        assert!(matches!(
            enum_set_partitions(&big),
            Err(Error::Capacity { requested: 15, limit: 14, .. })
        ));
        assert_eq!(enum_set_partitions_limited(&[1, 2, 3], 2).unwrap_err(),
            Error::Capacity { what: "ground set size", requested: 3, limit: 2 });
    }

    #[test]
    fn restricted_worked_case() {
        let ps = enum_restricted_partitions(&[1, 2, 3], &[3, 4]).unwrap();
        assert_eq!(texts(&ps), ["123", "13|2", "1|23"]);
    }

    #[test]
    fn restricted_edge_cases() {
        assert_eq!(enum_restricted_partitions(&[1, 2], &[5, 6]).unwrap().len(), 2);
        assert!(enum_restricted_partitions(&[1, 2], &[1, 2, 3]).unwrap().is_empty());
    }

    #[test]
    fn coefficients() {
        let p: SetPartition = "123".parse().unwrap();
        assert_eq!((coeff_c_star(&p), coeff_c(&p)), (Integer::from(2), Integer::from(2)));
        let p: SetPartition = "12|3".parse().unwrap();
        assert_eq!((coeff_c_star(&p), coeff_c(&p)), (Integer::from(1), Integer::from(-1)));
        assert_eq!(coeff_c_star(&SetPartition::singletons(4)), 1);
        assert_eq!(coeff_c_star(&SetPartition::empty()), 1);
        assert_eq!(coeff_c(&SetPartition::empty()), 1);
    }

    #[test]
    fn relabeling() {
        let xi = SetPartition::from_blocks(vec![vec![1, 3], vec![4]]).unwrap();
        let out = relabel_partition(&[1, 3, 4], &xi).unwrap();
        assert_eq!(out, SetPartition::from_blocks(vec![vec![1, 2], vec![3]]).unwrap());
        let id: SetPartition = "13|24".parse().unwrap();
        assert_eq!(relabel_partition(&[1, 2, 3, 4], &id).unwrap(), id);
        assert_eq!(
            relabel_partition(&[], &SetPartition::empty()).unwrap(),
            SetPartition::empty()
        );
        assert!(relabel_partition(&[1, 2], &id).is_err());
    }

    #[test]
    fn decomposition_small_cases() {
        let terms = prop1_decomposition(2, &[2]).unwrap();
        assert_eq!(terms.len(), 2);
        let images: Vec<String> = terms.iter().map(|t| t.union().to_text()).collect();
        assert_eq!(images, ["12", "1|2"]);
        assert!(terms[0].subset.is_empty());

        let terms = prop1_decomposition(3, &[]).unwrap();
        assert!(terms.iter().all(|t| t.subset.is_empty()));
        assert_eq!(terms.len(), 5);

        let mut images: Vec<SetPartition> =
            prop1_decomposition(4, &[3, 4]).unwrap().iter().map(|t| t.union()).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 15);

        assert!(matches!(prop1_decomposition(2, &[1, 2]), Err(Error::Domain(_))));
        assert!(matches!(prop1_decomposition(2, &[3]), Err(Error::Domain(_))));
    }

    #[test]
    fn text_and_json_forms() {
        let p: SetPartition = "2|13".parse().unwrap();
        assert_eq!(p.to_text(), "13|2");
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[1,3],[2]]");
        let back: SetPartition = serde_json::from_str("[[2],[3,1]]").unwrap();
        assert_eq!(back, p);
        let wide = SetPartition::from_blocks(vec![vec![10, 1], vec![2]]).unwrap();
        assert_eq!(wide.to_text(), "1,10|2,");
        assert_eq!(wide.to_text().parse::<SetPartition>().unwrap(), wide);
        let wide = SetPartition::from_blocks(vec![vec![10], vec![2]]).unwrap();
        assert_eq!(wide.to_text(), "2,|10,");
        assert_eq!(wide.to_text().parse::<SetPartition>().unwrap(), wide);
        assert!(serde_json::from_str::<SetPartition>("[[1],[1]]").is_err());
    }
}
