//! Integer partitions: parsing, conjugation, dominance and almost-rectangular structure.
//!
//! A [`Partition`] is always stored in canonical nonincreasing order with
//! strictly positive parts. Input given in any order is sorted, since the
//! partition is really a multiset of block sizes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from parts in any order.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyPartition);
        }
        if parts.contains(&0) {
            return Err(Error::NonPositivePart(0));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Caller guarantees the parts are positive and nonincreasing.
    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(!parts.is_empty());
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Partition { parts }
    }

    /// The one-part partition `(n)`.
    pub fn row(n: usize) -> Self {
        assert!(n > 0, "no partitions of 0");
        Partition { parts: vec![n] }
    }

    /// The partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        assert!(n > 0, "no partitions of 0");
        Partition { parts: vec![1; n] }
    }

    /// `(2^a, 1^b)`, the shape of a square-zero matrix of rank `a`.
    pub fn square_zero(a: usize, b: usize) -> Self {
        let mut parts = vec![2; a];
        parts.extend(std::iter::repeat_n(1, b));
        Partition::from_sorted(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn t(&self) -> usize {
        self.parts.len()
    }

    pub fn first(&self) -> usize {
        self.parts[0]
    }

    pub fn last(&self) -> usize {
        *self.parts.last().unwrap()
    }

    /// Part `i` (0-based), reading missing parts as 0.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.first();
        let parts = (1..=first)
            .map(|i| self.parts.iter().take_while(|&&p| p >= i).count())
            .collect();
        Partition::from_sorted(parts)
    }

    /// Dominance order: every prefix sum of `self` is at most that of `other`.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        let len = self.t().max(other.t());
        let (mut s, mut o) = (0, 0);
        for i in 0..len {
            s += self.part(i);
            o += other.part(i);
            if s > o {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_almost_rectangular(&self) -> bool {
        self.first() - self.last() <= 1
    }

    /// Smallest number of almost-rectangular partitions whose union is `self`.
    ///
    /// Greedy left-to-right segmentation: a new block starts whenever the
    /// current part drops more than one below the block's first part.
    pub fn min_ar_cover(&self) -> usize {
        self.ar_segments().len()
    }

    /// The maximal almost-rectangular runs found by the greedy segmentation,
    /// as `start..end` ranges of part indices.
    pub fn ar_segments(&self) -> Vec<std::ops::Range<usize>> {
        let mut segments = Vec::new();
        let mut start = 0;
        for i in 1..self.t() {
            if self.parts[i] + 1 < self.parts[start] {
                segments.push(start..i);
                start = i;
            }
        }
        segments.push(start..self.t());
        segments
    }

    /// `n - t`.
    pub fn rank(&self) -> usize {
        self.n() - self.t()
    }

    /// Consecutive parts differ by at least 2.
    pub fn is_stable(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1] + 2)
    }

    /// Concatenates two runs of parts into a partition, if the result is
    /// still nonincreasing.
    pub fn concat(head: &[usize], tail: &[usize]) -> Option<Partition> {
        let parts: Vec<usize> = head.iter().chain(tail).copied().collect();
        if parts.is_empty() || !parts.windows(2).all(|w| w[0] >= w[1]) {
            return None;
        }
        Some(Partition::from_sorted(parts))
    }

    /// Runs of equal parts as `(part, multiplicity)`.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Canonical text form: `a,b,c`, with `a^e` for parts repeated at least 3 times.
    pub fn to_text(&self) -> String {
        self.multiplicities()
            .into_iter()
            .map(|(p, m)| {
                if m >= 3 {
                    format!("{p}^{m}")
                } else {
                    vec![p.to_string(); m].join(",")
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// `P(n, t)`: the unique `t`-part partition of `n` whose parts differ by at most one.
pub fn almost_rect(n: usize, t: usize) -> Result<Partition> {
    if t == 0 || t > n {
        return Err(Error::PartsOutOfRange { n, t });
    }
    let (q, r) = (n / t, n % t);
    let mut parts = vec![q + 1; r];
    parts.extend(std::iter::repeat_n(q, t - r));
    Ok(Partition::from_sorted(parts))
}

/// Parses `a,b,c` or `a^e,b^f`; parts are sorted into canonical order.
pub fn parse(text: &str) -> Result<Partition> {
    let text = text.trim();
    let text = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(text);
    if text.trim().is_empty() {
        return Err(Error::EmptyPartition);
    }
    let mut parts = Vec::new();
    for token in text.split(',') {
        let token = token.trim();
        let syntax = || Error::PartitionSyntax {
            token: token.to_string(),
        };
        let (base, exp) = match token.split_once('^') {
            Some((b, e)) => (b.trim(), Some(e.trim())),
            None => (token, None),
        };
        let value: i64 = base.parse().map_err(|_| syntax())?;
        if value <= 0 {
            return Err(Error::NonPositivePart(value));
        }
        let count: usize = match exp {
            Some(e) => match e.parse::<usize>() {
                Ok(c) if c >= 1 => c,
                _ => return Err(syntax()),
            },
            None => 1,
        };
        parts.extend(std::iter::repeat_n(value as usize, count));
    }
    Partition::new(parts)
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_text())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All partitions of `n` in reverse lexicographic order: `(n)` first, `(1^n)` last.
pub fn enumerate(n: usize) -> Partitions {
    Partitions {
        next: (n > 0).then(|| vec![n]),
    }
}

pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // Successor: decrement the rightmost part above 1 and refill greedily.
        if let Some(i) = current.iter().rposition(|&p| p > 1) {
            let v = current[i] - 1;
            let mut rest = current.len() - i;
            let mut succ = current[..i].to_vec();
            succ.push(v);
            while rest > 0 {
                let p = rest.min(v);
                succ.push(p);
                rest -= p;
            }
            self.next = Some(succ);
        }
        Some(Partition::from_sorted(current))
    }
}

/// Number of partitions of `n`, by the standard part-size recurrence.
pub fn count(n: usize) -> u64 {
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            ways[total] += ways[total - part];
        }
    }
    ways[n]
}
