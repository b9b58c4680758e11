use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite sequence `(k_1, ..., k_r)` of positive integers.
///
/// The empty index is the unit of the harmonic algebra. An index is
/// admissible when it is nonempty and its last part is at least 2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("index parts must be positive"));
        }
        Ok(Index(parts))
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(!parts.contains(&0));
        Index(parts)
    }

    pub fn empty() -> Self {
        Index(Vec::new())
    }

    /// `1_r = (1, ..., 1)`.
    pub fn ones(r: usize) -> Self {
        Index(vec![1; r])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.last().is_some_and(|&k| k >= 2)
    }

    /// Number of trailing parts equal to 1.
    pub fn trailing_ones(&self) -> usize {
        self.0.iter().rev().take_while(|&&k| k == 1).count()
    }

    pub fn with_pushed(&self, k: u32) -> Index {
        let mut parts = self.0.clone();
        parts.push(k);
        Index(parts)
    }

    /// Index with the parts permuted: `(k_{σ(1)}, ..., k_{σ(r)})`.
    pub fn permuted(&self, perm: &[usize]) -> Index {
        Index(perm.iter().map(|&i| self.0[i]).collect())
    }

    /// `W(K) = x^{k_r-1} y x^{k_{r-1}-1} y ... x^{k_1-1} y`.
    pub fn to_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.weight() as usize);
        for &k in self.0.iter().rev() {
            letters.extend(std::iter::repeat_n(Letter::X, k as usize - 1));
            letters.push(Letter::Y);
        }
        Word(letters)
    }

    /// The `2^{r-1}` indices obtained by turning each weak inequality between
    /// consecutive summation variables into `<` or `=`. Bit `i` of the
    /// enumeration counter merges parts `i` and `i+1`; the first entry is the
    /// index itself. The empty index yields itself.
    pub fn contractions(&self) -> Vec<Index> {
        let r = self.0.len();
        if r == 0 {
            return vec![Index::empty()];
        }
        (0u64..1 << (r - 1))
            .map(|mask| {
                let mut parts = vec![self.0[0]];
                for i in 1..r {
                    if mask >> (i - 1) & 1 == 1 {
                        *parts.last_mut().unwrap() += self.0[i];
                    } else {
                        parts.push(self.0[i]);
                    }
                }
                Index(parts)
            })
            .collect()
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Index {
    type Err = Error;

    /// Parses `k1,k2,...,kr`; the empty string is the empty index.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Index::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse(format!("bad index part '{}' in '{s}'", t.trim())))
            })
            .collect::<Result<Vec<u32>>>()?;
        Index::new(parts)
    }
}

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Index {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

/// A word over the alphabet `{x, y}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Starts with `x` and ends with `y`.
    pub fn is_convergent(&self) -> bool {
        self.0.first() == Some(&Letter::X) && self.0.last() == Some(&Letter::Y)
    }

    pub fn leading_ys(&self) -> usize {
        self.0.iter().take_while(|&&l| l == Letter::Y).count()
    }

    pub fn with_pushed(&self, l: Letter) -> Word {
        let mut letters = self.0.clone();
        letters.push(l);
        Word(letters)
    }

    /// Inverse of [`Index::to_word`]; the word must be empty or end in `y`.
    pub fn to_index(&self) -> Result<Index> {
        if !self.0.is_empty() && self.0.last() != Some(&Letter::Y) {
            return Err(Error::domain(format!("word '{self}' does not end in y")));
        }
        let mut parts = Vec::new();
        let mut run = 0u32;
        for l in &self.0 {
            match l {
                Letter::X => run += 1,
                Letter::Y => {
                    parts.push(run + 1);
                    run = 0;
                }
            }
        }
        parts.reverse();
        Ok(Index(parts))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::X => "x",
                Letter::Y => "y",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                'x' | 'X' => Ok(Letter::X),
                'y' | 'Y' => Ok(Letter::Y),
                _ => Err(Error::parse(format!("bad letter '{c}' in word '{s}'"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}
