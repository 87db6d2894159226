//! Necessary conditions on pairs `(λ, μ)` of Jordan types of two commuting
//! nilpotent matrices. A rule can only forbid a pair; `Unknown` never claims
//! that the pair is realized.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "prop_ar")]
    PropAr,
    #[serde(rename = "ind1")]
    Ind1,
    #[serde(rename = "ind2")]
    Ind2,
    #[serde(rename = "nilorder")]
    NilOrder,
    #[serde(rename = "two_part")]
    TwoPart,
    #[serde(rename = "thm3")]
    Thm3,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::PropAr => "prop_ar",
            Rule::Ind1 => "ind1",
            Rule::Ind2 => "ind2",
            Rule::NilOrder => "nilorder",
            Rule::TwoPart => "two_part",
            Rule::Thm3 => "thm3",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Forbidden,
    /// Reserved; none of the current rules proves a pair realizable.
    ForcedStructure,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Forbidden => "forbidden",
            Verdict::ForcedStructure => "forced-structure",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reason {
    pub rule: Rule,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub lambda: Partition,
    pub mu: Partition,
    pub verdict: Verdict,
    pub reasons: Vec<Reason>,
}

impl PairVerdict {
    fn new(lambda: &Partition, mu: &Partition, reasons: Vec<Reason>) -> Self {
        let verdict = if reasons.is_empty() {
            Verdict::Unknown
        } else {
            Verdict::Forbidden
        };
        PairVerdict {
            lambda: lambda.clone(),
            mu: mu.clone(),
            verdict,
            reasons,
        }
    }

    pub fn is_forbidden(&self) -> bool {
        self.verdict == Verdict::Forbidden
    }

    pub fn rules(&self) -> Vec<Rule> {
        self.reasons.iter().map(|r| r.rule).collect()
    }
}

fn same_size(lambda: &Partition, mu: &Partition) -> Result<()> {
    if lambda.n() != mu.n() {
        return Err(Error::SizeMismatch(lambda.n(), mu.n()));
    }
    Ok(())
}

fn both_orders(
    lambda: &Partition,
    mu: &Partition,
    one_way: impl Fn(&Partition, &Partition) -> Option<Reason>,
) -> Vec<Reason> {
    let mut reasons: Vec<Reason> = one_way(lambda, mu).into_iter().collect();
    if lambda != mu {
        reasons.extend(one_way(mu, lambda));
    }
    reasons
}

fn prop_ar_reasons(lambda: &Partition, mu: &Partition) -> Vec<Reason> {
    both_orders(lambda, mu, |x, y| {
        (x.t() == 1 && !y.is_almost_rectangular()).then(|| Reason {
            rule: Rule::PropAr,
            detail: format!("{y} is not almost rectangular but commutes with a single block"),
        })
    })
}

/// `(n)` commutes exactly with almost rectangular shapes.
pub fn check_prop_ar(lambda: &Partition, mu: &Partition) -> Result<PairVerdict> {
    same_size(lambda, mu)?;
    Ok(PairVerdict::new(lambda, mu, prop_ar_reasons(lambda, mu)))
}

fn ind1_reasons(lambda: &Partition, mu: &Partition) -> Vec<Reason> {
    both_orders(lambda, mu, |x, y| {
        let (n, s) = (x.n(), y.t());
        (2 * s >= 2 * n - x.last() && y.first() > 2).then(|| Reason {
            rule: Rule::Ind1,
            detail: format!(
                "{y} has {s} >= {n} - {}/2 parts, so its first part must be at most 2",
                x.last()
            ),
        })
    })
}

/// If `μ` has `s >= n - λ_t / 2` parts then `μ_1 <= 2`.
pub fn check_ind1(lambda: &Partition, mu: &Partition) -> Result<PairVerdict> {
    same_size(lambda, mu)?;
    Ok(PairVerdict::new(lambda, mu, ind1_reasons(lambda, mu)))
}

fn ind2_reason(lambda: &Partition, mu: &Partition) -> Option<Reason> {
    let (l1, l2) = (lambda.part(0), lambda.part(1));
    let s = mu.t();
    if s <= l1 {
        return None;
    }
    let bound = l2.div_ceil(s - l1);
    (mu.first() > bound).then(|| Reason {
        rule: Rule::Ind2,
        detail: format!("{mu} has {s} > {l1} parts, so its first part must be at most {bound}"),
    })
}

/// For two-part `λ` and `s > λ_1`, `μ_1 <= ceil(λ_2 / (s - λ_1))`.
pub fn check_ind2(lambda: &Partition, mu: &Partition) -> Result<PairVerdict> {
    same_size(lambda, mu)?;
    if lambda.t() != 2 {
        return Err(Error::Precondition(format!("{lambda} does not have two parts")));
    }
    Ok(PairVerdict::new(lambda, mu, ind2_reason(lambda, mu).into_iter().collect()))
}

fn nilorder_reason(lambda: &Partition, mu: &Partition) -> Option<Reason> {
    let m = lambda.first();
    (mu.t() > 1 && mu.first() > m + 1).then(|| Reason {
        rule: Rule::NilOrder,
        detail: format!("with {lambda}, {mu} must be ({}) or have first part at most {}", mu.n(), m + 1),
    })
}

/// For `λ = (m, m)`: `μ = (n)` or `μ_1 <= m + 1`.
pub fn check_nilorder(lambda: &Partition, mu: &Partition) -> Result<PairVerdict> {
    same_size(lambda, mu)?;
    if lambda.t() != 2 || lambda.part(0) != lambda.part(1) {
        return Err(Error::Precondition(format!("{lambda} is not of the form (m,m)")));
    }
    Ok(PairVerdict::new(lambda, mu, nilorder_reason(lambda, mu).into_iter().collect()))
}

fn two_part_reason(lambda: &Partition, mu: &Partition) -> Option<Reason> {
    let n = lambda.n();
    if lambda == mu {
        return None;
    }
    if n.is_multiple_of(2) {
        let half = Partition::from_sorted(vec![n / 2, n / 2]);
        let near = Partition::from_sorted(vec![n / 2 + 1, n / 2 - 1]);
        if (lambda == &half && mu == &near) || (lambda == &near && mu == &half) {
            return None;
        }
    }
    Some(Reason {
        rule: Rule::TwoPart,
        detail: format!("distinct two-part shapes {lambda} and {mu} outside the exceptional pair"),
    })
}

/// Two distinct two-part shapes commute only as `{(m,m), (m+1,m-1)}`.
pub fn check_two_part_pairs(lambda: &Partition, mu: &Partition) -> Result<PairVerdict> {
    same_size(lambda, mu)?;
    if lambda.t() != 2 || mu.t() != 2 {
        return Err(Error::Precondition(format!(
            "{lambda} and {mu} must both have two parts"
        )));
    }
    Ok(PairVerdict::new(lambda, mu, two_part_reason(lambda, mu).into_iter().collect()))
}

fn thm3_reasons(lambda: &Partition, mu: &Partition) -> Vec<Reason> {
    both_orders(lambda, mu, |x, y| {
        let n = x.n();
        if y.t() == 1 && !x.is_almost_rectangular() {
            return Some(Reason {
                rule: Rule::Thm3,
                detail: format!("({n}) does not commute with non almost rectangular {x}"),
            });
        }
        let hook = y.t() == 2 && y.part(1) == 1;
        (hook && x.is_almost_rectangular() && x.first() >= 3).then(|| Reason {
            rule: Rule::Thm3,
            detail: format!("({},1) does not commute with almost rectangular {x} of square nonzero", n - 1),
        })
    })
}

/// For `n >= 4` and `B^2 != 0` some orbit misses the nilpotent commutator of `B`:
/// `(n)` when `λ` is not almost rectangular, otherwise `(n-1, 1)`.
pub fn check_thm3(lambda: &Partition, mu: &Partition) -> Result<PairVerdict> {
    same_size(lambda, mu)?;
    if lambda.n() < 4 {
        return Err(Error::Precondition(format!("n = {} is below 4", lambda.n())));
    }
    Ok(PairVerdict::new(lambda, mu, thm3_reasons(lambda, mu)))
}

/// Every applicable rule, in both argument orders.
pub fn compatible_filter(lambda: &Partition, mu: &Partition) -> Result<PairVerdict> {
    same_size(lambda, mu)?;
    let mut reasons = prop_ar_reasons(lambda, mu);
    reasons.extend(ind1_reasons(lambda, mu));
    for (x, y) in [(lambda, mu), (mu, lambda)] {
        if x.t() == 2 {
            reasons.extend(ind2_reason(x, y));
            if x.part(0) == x.part(1) {
                reasons.extend(nilorder_reason(x, y));
            }
        }
        if x == y {
            break;
        }
    }
    if lambda.t() == 2 && mu.t() == 2 {
        reasons.extend(two_part_reason(lambda, mu));
    }
    if lambda.n() >= 4 {
        reasons.extend(thm3_reasons(lambda, mu));
    }
    Ok(PairVerdict::new(lambda, mu, reasons))
}
