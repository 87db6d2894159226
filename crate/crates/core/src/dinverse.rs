//! Fibers `D⁻¹(μ)` of the D-map: brute-force tables, closed forms for
//! special images, and data reports for the open counting questions.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::commutant::{dmap, dmap_index, DMapConfig, DMapResult};
use crate::error::{Error, Result};
use crate::partitions::{almost_rect, enumerate, Partition};

/// `D` on every partition of `n`.
#[derive(Debug, Clone)]
pub struct DTable {
    pub n: usize,
    pub entries: BTreeMap<Partition, DMapResult>,
}

impl DTable {
    pub fn get(&self, lambda: &Partition) -> Option<&DMapResult> {
        self.entries.get(lambda)
    }

    /// `D⁻¹(mu)`, listed in reverse lexicographic order.
    pub fn fiber(&self, mu: &Partition) -> Vec<Partition> {
        self.entries
            .iter()
            .rev()
            .filter(|(_, r)| &r.d == mu)
            .map(|(l, _)| l.clone())
            .collect()
    }

    /// The distinct images, in reverse lexicographic order.
    pub fn images(&self) -> Vec<Partition> {
        let set: BTreeSet<&Partition> = self.entries.values().map(|r| &r.d).collect();
        set.into_iter().rev().cloned().collect()
    }

    pub fn monte_carlo_count(&self) -> usize {
        self.entries
            .values()
            .filter(|r| !r.method.is_formula())
            .count()
    }
}

pub fn dmap_all(n: usize, config: &DMapConfig) -> Result<DTable> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let all: Vec<Partition> = enumerate(n).collect();
    let results: Vec<DMapResult> = all
        .par_iter()
        .map(|l| dmap(l, config))
        .collect::<Result<_>>()?;
    Ok(DTable {
        n,
        entries: all.into_iter().zip(results).collect(),
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodCounts {
    pub formula: usize,
    #[serde(rename = "monte-carlo")]
    pub monte_carlo: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fiber {
    pub mu: Partition,
    pub fiber: Vec<Partition>,
    pub size: usize,
    pub methods: MethodCounts,
    pub seed: u64,
}

/// `D⁻¹(mu)`.
///
/// Any `λ` with `D(λ) = μ` has `min_ar_cover(λ) = μ.t` and first part of
/// `D(λ)` equal to `μ_1`, so only partitions passing both tests are mapped.
pub fn dinv(mu: &Partition, config: &DMapConfig) -> Result<Fiber> {
    let candidates: Vec<Partition> = enumerate(mu.n())
        .filter(|l| l.min_ar_cover() == mu.t() && dmap_index(l) == mu.first())
        .collect();
    let results: Vec<DMapResult> = candidates
        .par_iter()
        .map(|l| dmap(l, config))
        .collect::<Result<_>>()?;
    let mut methods = MethodCounts::default();
    let mut fiber = Vec::new();
    for r in results.into_iter().filter(|r| &r.d == mu) {
        if r.method.is_formula() {
            methods.formula += 1;
        } else {
            methods.monte_carlo += 1;
        }
        fiber.push(r.lambda);
    }
    Ok(Fiber {
        mu: mu.clone(),
        size: fiber.len(),
        fiber,
        methods,
        seed: config.seed,
    })
}

fn sorted_desc(set: BTreeSet<Partition>) -> Vec<Partition> {
    set.into_iter().rev().collect()
}

/// `{(μ, μ-2, ..., μ-2k+2, P(μ-2k, t)) : 1 <= t <= μ-2k}`.
pub fn dinv_diff2(mu: usize, k: usize) -> Result<Vec<Partition>> {
    if k == 0 || mu < 2 * k + 1 {
        return Err(Error::Precondition(format!(
            "dinv_diff2 needs k >= 1 and μ - 2k >= 1, got μ={mu}, k={k}"
        )));
    }
    let head: Vec<usize> = (0..k).map(|i| mu - 2 * i).collect();
    let rest = mu - 2 * k;
    let mut out = BTreeSet::new();
    for t in 1..=rest {
        let tail = almost_rect(rest, t)?;
        out.extend(Partition::concat(&head, tail.parts()));
    }
    Ok(sorted_desc(out))
}

/// `head` followed by every almost rectangular partition of `rest`, keeping
/// nonincreasing results whose first and last parts differ by at least 2.
fn head_with_ar_tail(out: &mut BTreeSet<Partition>, head: &[usize], rest: usize) {
    for t in 1..=rest {
        let Ok(tail) = almost_rect(rest, t) else { continue };
        if let Some(l) = Partition::concat(head, tail.parts()) {
            if l.first() - l.last() >= 2 {
                out.insert(l);
            }
        }
    }
}

/// `(r - 1)(μ - r)`.
pub fn two_part_count(mu: usize, r: usize) -> usize {
    (r - 1) * (mu - r)
}

/// `D⁻¹((μ, μ-r))` for `2 <= r <= 5`; explicit sets up to `r = 4`, a
/// computed fiber for `r = 5`.
pub fn dinv_two_part(mu: usize, r: usize, config: &DMapConfig) -> Result<Vec<Partition>> {
    if !(2..=5).contains(&r) || r >= mu {
        return Err(Error::Precondition(format!(
            "dinv_two_part needs 2 <= r <= 5 and μ - r >= 1, got μ={mu}, r={r}"
        )));
    }
    let n = 2 * mu - r;
    let mut out = BTreeSet::new();
    match r {
        2 => head_with_ar_tail(&mut out, &[mu], mu - 2),
        3 => {
            for eps in [0, 1] {
                head_with_ar_tail(&mut out, &[mu - eps], n - (mu - eps));
            }
        }
        4 => {
            let pair = almost_rect(mu, 2)?;
            head_with_ar_tail(&mut out, pair.parts(), mu - 4);
            for eps in [0, 2] {
                head_with_ar_tail(&mut out, &[mu - eps], n - (mu - eps));
            }
        }
        _ => {
            let mu_shape = Partition::from_sorted(vec![mu, mu - r]);
            return Ok(dinv(&mu_shape, config)?.fiber);
        }
    }
    Ok(sorted_desc(out))
}

/// `D⁻¹((n-1, 1))`: `(P(n-1, t-1), 1)` and `(3, P(n-3, t-1))` with `λ_1 - λ_t >= 2`.
pub fn dinv_n11(n: usize) -> Result<Vec<Partition>> {
    if n < 4 {
        return Err(Error::Precondition(format!("dinv_n11 needs n >= 4, got {n}")));
    }
    let mut out = BTreeSet::new();
    for t in 2..=n {
        if let Ok(head) = almost_rect(n - 1, t - 1) {
            if let Some(l) = Partition::concat(head.parts(), &[1]) {
                if l.first() >= 3 {
                    out.insert(l);
                }
            }
        }
    }
    head_with_ar_tail(&mut out, &[3], n - 3);
    Ok(sorted_desc(out))
}

/// Elements of `set` not strictly dominated by another element.
pub fn dominance_minimal(set: &[Partition]) -> Vec<Partition> {
    set.iter()
        .filter(|x| {
            !set
                .iter()
                .any(|y| y != *x && y.dominance_leq(x).unwrap_or(false))
        })
        .cloned()
        .collect()
}

/// Elements of `set` of least partition rank `n - t`.
pub fn rank_minimal(set: &[Partition]) -> Vec<Partition> {
    let Some(best) = set.iter().map(Partition::rank).min() else {
        return Vec::new();
    };
    set.iter().filter(|x| x.rank() == best).cloned().collect()
}

/// `(μ + 2, 1^{μ+r-2})` lies in `D⁻¹((μ+r, μ))` and is its unique rank minimum.
pub fn minimal_rank_check(mu: usize, r: usize, config: &DMapConfig) -> Result<bool> {
    if r < 2 || mu < 1 {
        return Err(Error::Precondition(format!(
            "minimal_rank_check needs r >= 2 and μ >= 1, got μ={mu}, r={r}"
        )));
    }
    let image = Partition::from_sorted(vec![mu + r, mu]);
    let mut parts = vec![mu + 2];
    parts.extend(std::iter::repeat_n(1, mu + r - 2));
    let candidate = Partition::from_sorted(parts);
    let fiber = dinv(&image, config)?.fiber;
    Ok(fiber.contains(&candidate) && rank_minimal(&fiber) == vec![candidate])
}

/// Partitions of `2μ - r` made of an almost rectangular head of `s <= r/2`
/// parts and an almost rectangular tail, with `λ_1 - λ_t >= 2`.
pub fn lemma1_structure(mu: usize, r: usize) -> Result<Vec<Partition>> {
    if r < 2 || r >= mu {
        return Err(Error::Precondition(format!(
            "lemma1_structure needs 2 <= r < μ, got μ={mu}, r={r}"
        )));
    }
    let n = 2 * mu - r;
    let mut out = BTreeSet::new();
    for s in 1..=r / 2 {
        for h in s..n {
            let head = almost_rect(h, s)?;
            head_with_ar_tail(&mut out, head.parts(), n - h);
        }
    }
    Ok(sorted_desc(out))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Q1Report {
    pub mu: usize,
    pub r: usize,
    pub n: usize,
    pub fiber: Vec<Partition>,
    pub size: usize,
    pub conjectured: usize,
    pub matches: bool,
    pub seed: u64,
}

/// Computed `|D⁻¹((μ, μ-r))|` against `(r-1)(μ-r)`.
pub fn explore_q1(mu: usize, r: usize, config: &DMapConfig) -> Result<Q1Report> {
    if r < 5 || r >= mu {
        return Err(Error::Precondition(format!(
            "explore q1 needs r >= 5 and μ - r >= 1, got μ={mu}, r={r}"
        )));
    }
    let image = Partition::from_sorted(vec![mu, mu - r]);
    let fiber = dinv(&image, config)?.fiber;
    let conjectured = two_part_count(mu, r);
    Ok(Q1Report {
        mu,
        r,
        n: image.n(),
        size: fiber.len(),
        matches: fiber.len() == conjectured,
        fiber,
        conjectured,
        seed: config.seed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Q2Report {
    pub mu: Partition,
    pub conjectured: Partition,
    pub in_fiber: bool,
    pub rank_minimal: Vec<Partition>,
    pub dominance_minimal: Vec<Partition>,
    pub fiber_size: usize,
    pub matches: bool,
    pub seed: u64,
}

/// For stable `μ`, compares the rank-minimal part of `D⁻¹(μ)` with
/// `(μ_2+2, ..., μ_s+2, 1^{μ_1 - 2(s-1)})`.
pub fn explore_q2(mu: &Partition, config: &DMapConfig) -> Result<Q2Report> {
    let s = mu.t();
    if !mu.is_stable() {
        return Err(Error::Precondition(format!("{mu} is not stable")));
    }
    if mu.first() < 2 * (s - 1) {
        return Err(Error::Precondition(format!(
            "{mu} has μ_1 < 2(s-1); the conjectured shape is undefined"
        )));
    }
    let mut parts: Vec<usize> = mu.parts()[1..].iter().map(|p| p + 2).collect();
    parts.extend(std::iter::repeat_n(1, mu.first() - 2 * (s - 1)));
    let conjectured = Partition::new(parts)?;
    let fiber = dinv(mu, config)?.fiber;
    let rank_min = rank_minimal(&fiber);
    Ok(Q2Report {
        mu: mu.clone(),
        in_fiber: fiber.contains(&conjectured),
        matches: rank_min == vec![conjectured.clone()],
        conjectured,
        rank_minimal: rank_min,
        dominance_minimal: dominance_minimal(&fiber),
        fiber_size: fiber.len(),
        seed: config.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{count, parse};

    fn p(s: &str) -> Partition {
        parse(s).unwrap()
    }

    fn ps(items: &[&str]) -> Vec<Partition> {
        items.iter().map(|s| p(s)).collect()
    }

    fn as_set(v: &[Partition]) -> BTreeSet<Partition> {
        v.iter().cloned().collect()
    }

    #[test]
    fn table_examples() {
        let cfg = DMapConfig::default();
        assert_eq!(dmap_all(4, &cfg).unwrap().entries.len(), 5);
        let t8 = dmap_all(8, &cfg).unwrap();
        assert_eq!(t8.get(&p("2,2,2,2")).unwrap().d, p("8"));
        assert_eq!(dmap_all(5, &cfg).unwrap().get(&p("3,1,1")).unwrap().d, p("4,1"));
        assert!(dmap_all(0, &cfg).is_err());
    }

    #[test]
    fn example_fiber() {
        let cfg = DMapConfig::default();
        let f = dinv(&p("6,2"), &cfg).unwrap();
        let expected = ps(&["6,2", "6,1,1", "4,2,2", "4,2,1,1", "4,1^4", "3,3,1,1"]);
        assert_eq!(as_set(&f.fiber), as_set(&expected));
        assert_eq!(f.size, 6);
        assert_eq!(as_set(&dominance_minimal(&f.fiber)), as_set(&ps(&["3,3,1,1", "4,1^4"])));
        assert_eq!(rank_minimal(&f.fiber), ps(&["4,1^4"]));
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.starts_with(r#"{"mu":[6,2],"fiber":[[6,2],"#));
        assert!(json.contains(r#""size":6,"methods":{"formula":6,"monte-carlo":0}"#));
    }

    #[test]
    fn pruned_fibers_match_the_table() {
        let cfg = DMapConfig::default();
        for n in 1..=11 {
            let table = dmap_all(n, &cfg).unwrap();
            let mut total = 0;
            for mu in table.images() {
                let fiber = dinv(&mu, &cfg).unwrap();
                assert_eq!(fiber.fiber, table.fiber(&mu), "{mu}");
                assert_eq!(table.get(&mu).unwrap().d, mu, "image {mu} is not fixed");
                total += fiber.size;
            }
            assert_eq!(total as u64, count(n));
        }
    }

    #[test]
    fn row_fiber_is_the_almost_rectangular_shapes() {
        let cfg = DMapConfig::default();
        for n in 1..=12 {
            let f = dinv(&Partition::row(n), &cfg).unwrap();
            let expected: Vec<Partition> = (1..=n).map(|t| almost_rect(n, t).unwrap()).collect();
            assert_eq!(as_set(&f.fiber), as_set(&expected));
        }
    }

    #[test]
    fn diff2_examples() {
        assert_eq!(
            as_set(&dinv_diff2(6, 1).unwrap()),
            as_set(&ps(&["6,4", "6,2,2", "6,2,1,1", "6,1^4"]))
        );
        assert_eq!(dinv_diff2(3, 1).unwrap(), ps(&["3,1"]));
        assert_eq!(
            as_set(&dinv_diff2(7, 2).unwrap()),
            as_set(&ps(&["7,5,3", "7,5,2,1", "7,5,1,1,1"]))
        );
        assert!(dinv_diff2(4, 2).is_err());
        assert!(dinv_diff2(4, 0).is_err());
    }

    #[test]
    fn two_part_examples() {
        let cfg = DMapConfig::default();
        assert_eq!(dinv_two_part(6, 3, &cfg).unwrap().len(), 6);
        assert_eq!(dinv_two_part(5, 2, &cfg).unwrap().len(), 3);
        let eight_four = dinv_two_part(8, 4, &cfg).unwrap();
        assert_eq!(eight_four.len(), 12);
        assert_eq!(as_set(&eight_four), as_set(&dinv(&p("8,4"), &cfg).unwrap().fiber));
        assert_eq!(dinv_two_part(7, 5, &cfg).unwrap().len(), 8);
        assert!(dinv_two_part(5, 5, &cfg).is_err());
        assert!(dinv_two_part(9, 6, &cfg).is_err());
    }

    #[test]
    fn n11_matches_fibers() {
        let cfg = DMapConfig::default();
        assert!(dinv_n11(5).unwrap().contains(&p("3,1,1")));
        assert_eq!(dinv_n11(4).unwrap(), ps(&["3,1"]));
        assert!(dinv_n11(3).is_err());
        for n in 4..=14 {
            let image = Partition::from_sorted(vec![n - 1, 1]);
            assert_eq!(
                as_set(&dinv_n11(n).unwrap()),
                as_set(&dinv(&image, &cfg).unwrap().fiber),
                "n={n}"
            );
        }
    }

    #[test]
    fn minimal_rank_examples() {
        let cfg = DMapConfig::default();
        assert!(minimal_rank_check(2, 4, &cfg).unwrap());
        assert!(minimal_rank_check(1, 2, &cfg).unwrap());
        assert!(minimal_rank_check(3, 2, &cfg).unwrap());
        assert!(minimal_rank_check(3, 1, &cfg).is_err());
    }

    #[test]
    fn lemma1_stream_contains_fibers() {
        let cfg = DMapConfig::default();
        for r in 2..=5 {
            for mu in (r + 1)..=14 {
                if 2 * mu - r > 14 {
                    break;
                }
                let stream = as_set(&lemma1_structure(mu, r).unwrap());
                let image = Partition::from_sorted(vec![mu, mu - r]);
                for l in dinv(&image, &cfg).unwrap().fiber {
                    assert!(stream.contains(&l), "{l} missing for μ={mu}, r={r}");
                }
            }
        }
        for l in lemma1_structure(7, 3).unwrap() {
            let segments = l.ar_segments();
            assert!(segments.len() <= 2, "{l}");
        }
    }

    #[test]
    fn explorers() {
        let cfg = DMapConfig::default();
        let q1 = explore_q1(7, 5, &cfg).unwrap();
        assert_eq!((q1.n, q1.size, q1.conjectured, q1.matches), (9, 8, 8, true));
        assert!(explore_q1(7, 4, &cfg).is_err());

        let q2 = explore_q2(&p("4,1"), &cfg).unwrap();
        assert_eq!(q2.conjectured, p("3,1,1"));
        let q2 = explore_q2(&p("5,3"), &cfg).unwrap();
        assert_eq!(q2.conjectured, p("5,1,1,1"));
        assert!(q2.in_fiber && q2.matches);
        let q2 = explore_q2(&p("6,3,1"), &cfg).unwrap();
        assert_eq!(q2.conjectured, p("5,3,1,1"));
        assert!(explore_q2(&p("4,3"), &cfg).is_err());
    }
}
