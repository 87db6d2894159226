//! The acceptance suite: twelve reproducible checks, each reporting a single
//! pass/fail outcome with a short summary. Shared by the `acceptance` test
//! target and `nilcomm verify`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::commutant::{dmap, dmap_monte_carlo, lambda_seed, trial_seed, DMapConfig, Sampler};
use crate::constraints::{check_two_part_pairs, compatible_filter};
use crate::dinverse::{
    dinv_diff2, dinv_two_part, dmap_all, dominance_minimal, minimal_rank_check, two_part_count,
    DTable,
};
use crate::error::Result;
use crate::exactla::{commutes_with_jordan, jordan_type, jordan_type_of_integers, rat};
use crate::partitions::{enumerate, parse, Partition};
use crate::twoblock::{
    antidiagonal, antidiagonal_block_ranks, block_ranks, lemma_eq2, random_nilpotent_form,
    squarezero_partner,
};

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "square-zero universality"),
    (2, "D on square-zero shapes"),
    (3, "antidiagonal shapes"),
    (4, "antidiagonal rank recurrences"),
    (5, "two-part pairs"),
    (6, "difference-two fibers"),
    (7, "two-part fibers"),
    (8, "fiber of (6,2)"),
    (9, "D((3,1,1))"),
    (10, "idempotence and stability"),
    (11, "soundness of constraints"),
    (12, "minimal-rank fiber element"),
];

const NEGATIVE_SAMPLES: usize = 10_000;
const COMMUTANT_SAMPLES: usize = 1_000;
const MAX_REPORTED: usize = 5;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// Caps every partition size the suite enumerates; `None` runs the full ranges.
    pub max_n: Option<usize>,
    pub seed: u64,
    pub trials: usize,
    pub coeff_bound: i64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: None,
            seed: 0,
            trials: crate::commutant::DEFAULT_TRIALS,
            coeff_bound: crate::commutant::DEFAULT_COEFF_BOUND,
        }
    }
}

type Pair = (Partition, Partition);

/// Verified `(shape of B, shape of A)` pairs gathered while checking.
#[derive(Default)]
struct Witnesses(Mutex<BTreeSet<Pair>>);

impl Witnesses {
    fn extend(&self, pairs: impl IntoIterator<Item = Pair>) {
        self.0.lock().unwrap().extend(pairs);
    }
}

/// Runs criteria and shares the fiber tables and witness sets between them.
pub struct Suite {
    config: VerifyConfig,
    tables: Mutex<BTreeMap<usize, std::sync::Arc<DTable>>>,
    witnesses: [OnceLock<Vec<Pair>>; 3],
}

fn failures_text(failures: &[String], total: usize, what: &str) -> String {
    if failures.is_empty() {
        format!("{total} {what}, 0 failures")
    } else {
        let shown: Vec<&str> = failures.iter().take(MAX_REPORTED).map(String::as_str).collect();
        format!(
            "{} of {total} {what} failed: {}",
            failures.len(),
            shown.join("; ")
        )
    }
}

fn outcome(id: u8, passed: bool, detail: String) -> CriterionOutcome {
    let title = CRITERIA[(id - 1) as usize].1;
    CriterionOutcome {
        id,
        title,
        passed,
        detail,
    }
}

fn from_failures(id: u8, failures: Vec<String>, total: usize, what: &str) -> CriterionOutcome {
    outcome(id, failures.is_empty(), failures_text(&failures, total, what))
}

fn p(text: &str) -> Partition {
    parse(text).expect("literal partition")
}

fn two_part_shapes(max_n: usize) -> Vec<(usize, usize)> {
    (2..=max_n)
        .flat_map(|n| (1..=n / 2).map(move |l2| (n - l2, l2)))
        .collect()
}

fn admissible(max_n: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for (l1, l2) in two_part_shapes(max_n) {
        for l in 0..l2 {
            for j in 0..=l {
                if !(l1 == l2 && j + l == 0) {
                    out.push((l1, l2, j, l));
                }
            }
        }
    }
    out
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

impl Suite {
    pub fn new(config: VerifyConfig) -> Self {
        Suite {
            config,
            tables: Mutex::new(BTreeMap::new()),
            witnesses: Default::default(),
        }
    }

    fn cap(&self, nominal: usize) -> usize {
        self.config.max_n.map_or(nominal, |m| m.min(nominal))
    }

    fn dmap_config(&self) -> DMapConfig {
        DMapConfig {
            trials: self.config.trials,
            seed: self.config.seed,
            coeff_bound: self.config.coeff_bound,
            diff2_formula: true,
        }
    }

    /// Brute-force table for `n` with the difference-two formula switched off,
    /// so shapes with three or more segments are always sampled.
    fn table(&self, n: usize) -> Result<std::sync::Arc<DTable>> {
        if let Some(t) = self.tables.lock().unwrap().get(&n) {
            return Ok(t.clone());
        }
        let config = DMapConfig {
            diff2_formula: false,
            ..self.dmap_config()
        };
        let table = std::sync::Arc::new(dmap_all(n, &config)?);
        self.tables.lock().unwrap().insert(n, table.clone());
        Ok(table)
    }

    pub fn run_all(&self) -> Vec<CriterionOutcome> {
        CRITERIA.iter().map(|&(id, _)| self.run(id)).collect()
    }

    pub fn run(&self, id: u8) -> CriterionOutcome {
        let result = match id {
            1 => self.criterion1(),
            2 => self.criterion2(),
            3 => self.criterion3(),
            4 => self.criterion4(),
            5 => self.criterion5(),
            6 => self.criterion6(),
            7 => self.criterion7(),
            8 => self.criterion8(),
            9 => self.criterion9(),
            10 => self.criterion10(),
            11 => self.criterion11(),
            12 => self.criterion12(),
            _ => panic!("no criterion {id}"),
        };
        result.unwrap_or_else(|e| outcome(id, false, format!("error: {e}")))
    }

    fn squarezero_witnesses(&self) -> Result<&Vec<Pair>> {
        if let Some(w) = self.witnesses[0].get() {
            return Ok(w);
        }
        let mut cases = Vec::new();
        for n in 1..=self.cap(10) {
            for mu in enumerate(n) {
                for a in 0..=n / 2 {
                    cases.push((mu.clone(), a));
                }
            }
        }
        let checked: Vec<std::result::Result<Pair, String>> = cases
            .par_iter()
            .map(|(mu, a)| {
                let m = squarezero_partner(mu, *a).map_err(|e| format!("{mu} a={a}: {e}"))?;
                let ok = commutes_with_jordan(&m, mu) && (&m * &m).is_zero() && m.rank() == *a;
                if ok {
                    Ok((mu.clone(), Partition::square_zero(*a, mu.n() - 2 * a)))
                } else {
                    Err(format!("{mu} a={a}"))
                }
            })
            .collect();
        let failures: Vec<String> = checked.iter().filter_map(|r| r.clone().err()).collect();
        if !failures.is_empty() {
            return Err(crate::Error::Verification(failures_text(
                &failures,
                cases.len(),
                "square-zero constructions",
            )));
        }
        let pairs = checked.into_iter().filter_map(|r| r.ok()).collect();
        Ok(self.witnesses[0].get_or_init(|| pairs))
    }

    fn criterion1(&self) -> Result<CriterionOutcome> {
        let count = self.squarezero_witnesses()?.len();
        Ok(outcome(
            1,
            true,
            format!(
                "{count} constructions for n <= {} verified (commuting, square zero, exact rank)",
                self.cap(10)
            ),
        ))
    }

    fn criterion2(&self) -> Result<CriterionOutcome> {
        let config = self.dmap_config();
        let mut failures = Vec::new();
        let mut total = 0;
        for n in 1..=self.cap(16) {
            for a in 0..=n / 2 {
                let lambda = Partition::square_zero(a, n - 2 * a);
                total += 1;
                let r = dmap(&lambda, &config)?;
                if r.d != Partition::row(n) || !r.method.is_formula() {
                    failures.push(format!("D{lambda} = {} via {}", r.d, r.method));
                }
                if n <= 10 {
                    total += 1;
                    let mc = dmap_monte_carlo(&lambda, &config)?;
                    if mc.d != Partition::row(n) {
                        failures.push(format!("sampled D{lambda} = {}", mc.d));
                    }
                }
            }
        }
        Ok(from_failures(2, failures, total, "evaluations"))
    }

    fn antidiagonal_sweep(
        &self,
        check: impl Fn(usize, usize, usize, usize, &mut ChaCha8Rng) -> Result<Option<String>> + Sync,
    ) -> Result<(Vec<String>, usize)> {
        let cases = admissible(self.cap(14));
        let seed = self.config.seed;
        let results: Vec<Option<String>> = cases
            .par_iter()
            .enumerate()
            .map(|(i, &(l1, l2, j, l))| {
                let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, i));
                check(l1, l2, j, l, &mut rng)
            })
            .collect::<Result<_>>()?;
        Ok((results.into_iter().flatten().collect(), cases.len()))
    }

    fn criterion3(&self) -> Result<CriterionOutcome> {
        let bound = self.config.coeff_bound;
        let found = Witnesses::default();
        let (failures, total) = self.antidiagonal_sweep(|l1, l2, j, l, rng| {
            for _ in 0..3 {
                let (b, c) = (nonzero(rng, bound), nonzero(rng, bound));
                let r = antidiagonal(l1, l2, j, l, rat(b), rat(c))?;
                let shape = jordan_type(&r.element.to_matrix())?;
                if shape != r.predicted {
                    return Ok(Some(format!(
                        "({l1},{l2}) j={j} l={l}: predicted {} (case {}), found {shape}",
                        r.predicted, r.case
                    )));
                }
                found.extend([(Partition::from_sorted(vec![l1, l2]), shape)]);
            }
            Ok(None)
        })?;
        let pairs: Vec<Pair> = found.0.into_inner().unwrap().into_iter().collect();
        let _ = self.witnesses[1].set(pairs);
        Ok(from_failures(3, failures, total, "admissible (λ1, λ2, j, l) with 3 draws each"))
    }

    fn criterion4(&self) -> Result<CriterionOutcome> {
        let bound = self.config.coeff_bound;
        let (failures, total) = self.antidiagonal_sweep(|l1, l2, j, l, rng| {
            let (b, c) = (nonzero(rng, bound), nonzero(rng, bound));
            let a = antidiagonal(l1, l2, j, l, rat(b), rat(c))?.element.to_matrix();
            let mut power = a.clone();
            for m in 1..=(l1 + l2 + 1) {
                let found = block_ranks(&power, l1);
                let predicted = antidiagonal_block_ranks(l1, l2, j, l, m);
                if found != predicted {
                    return Ok(Some(format!(
                        "({l1},{l2}) j={j} l={l} m={m}: predicted {predicted:?}, found {found:?}"
                    )));
                }
                if power.is_zero() {
                    break;
                }
                power = &power * &a;
            }
            Ok(None)
        })?;
        Ok(from_failures(4, failures, total, "admissible (λ1, λ2, j, l)"))
    }

    fn eq2_witnesses(&self) -> Result<(&Vec<Pair>, Vec<String>, usize)> {
        let mut failures = Vec::new();
        let mut pairs = BTreeSet::new();
        let mut total = 0;
        for n in (4..=self.cap(16)).step_by(2) {
            let m = n / 2;
            total += 1;
            let a = lemma_eq2(m, self.config.seed)?;
            let lambda = Partition::from_sorted(vec![m, m]);
            let shape = jordan_type(&a)?;
            let target = Partition::from_sorted(vec![m + 1, m - 1]);
            if !commutes_with_jordan(&a, &lambda) || shape != target {
                failures.push(format!("lemma-eq2 {m}: {shape}"));
            } else {
                pairs.insert((lambda, shape));
            }
        }

        let seed = self.config.seed;
        let sampled: Vec<(BTreeSet<Pair>, Vec<String>)> = two_part_shapes(self.cap(10))
            .into_par_iter()
            .map(|(l1, l2)| {
                let lambda = Partition::from_sorted(vec![l1, l2]);
                let mut rng = ChaCha8Rng::seed_from_u64(lambda_seed(&lambda, seed));
                let mut seen = BTreeSet::new();
                let mut bad = Vec::new();
                let n = l1 + l2;
                for _ in 0..NEGATIVE_SAMPLES {
                    let x = random_nilpotent_form(l1, l2, &mut rng, 3, 0.5)?;
                    let ints = x
                        .to_matrix()
                        .small_integer_entries()
                        .expect("small integer coefficients");
                    let shape = jordan_type_of_integers(n, ints)?;
                    seen.insert(shape);
                }
                let exceptional = |s: &Partition| {
                    n % 2 == 0
                        && ((l1 == l2 && s.parts() == [l1 + 1, l1 - 1])
                            || (l1 == l2 + 2 && s.parts() == [n / 2, n / 2]))
                };
                for s in &seen {
                    if s.t() == 2 && s != &lambda && !exceptional(s) {
                        bad.push(format!("{lambda} commutes with {s}"));
                    }
                }
                let pairs = seen.into_iter().map(|s| (lambda.clone(), s)).collect();
                Ok((pairs, bad))
            })
            .collect::<Result<_>>()?;
        for (found, bad) in sampled {
            total += 1;
            pairs.extend(found);
            failures.extend(bad);
        }
        let pairs: Vec<Pair> = pairs.into_iter().collect();
        Ok((self.witnesses[2].get_or_init(|| pairs), failures, total))
    }

    fn criterion5(&self) -> Result<CriterionOutcome> {
        let (_, mut failures, mut total) = self.eq2_witnesses()?;
        let shapes = two_part_shapes(self.cap(16));
        for &(a1, a2) in &shapes {
            for &(b1, b2) in &shapes {
                if a1 + a2 != b1 + b2 {
                    continue;
                }
                total += 1;
                let n = a1 + a2;
                let (x, y) = (
                    Partition::from_sorted(vec![a1, a2]),
                    Partition::from_sorted(vec![b1, b2]),
                );
                let special = n % 2 == 0
                    && ((a1 == n / 2 && b1 == n / 2 + 1) || (b1 == n / 2 && a1 == n / 2 + 1));
                let allowed = x == y || special;
                if check_two_part_pairs(&x, &y)?.is_forbidden() == allowed {
                    failures.push(format!("two-part rule misclassifies ({x}, {y})"));
                }
            }
        }
        Ok(from_failures(
            5,
            failures,
            total,
            "constructions, sampled shapes and two-part pair classifications",
        ))
    }

    fn criterion6(&self) -> Result<CriterionOutcome> {
        let mut failures = Vec::new();
        let mut total = 0;
        for k in 1..=8usize {
            for mu in (2 * k + 1)..=16 {
                let n = (k + 1) * mu - k * (k + 1);
                if n > self.cap(16) {
                    break;
                }
                total += 1;
                let image = Partition::from_sorted((0..=k).map(|i| mu - 2 * i).collect());
                let closed: BTreeSet<Partition> = dinv_diff2(mu, k)?.into_iter().collect();
                let brute: BTreeSet<Partition> =
                    self.table(n)?.fiber(&image).into_iter().collect();
                if closed != brute || closed.len() != mu - 2 * k {
                    failures.push(format!(
                        "fiber of {image}: closed form {} elements, table {}",
                        closed.len(),
                        brute.len()
                    ));
                }
            }
        }
        Ok(from_failures(6, failures, total, "fibers"))
    }

    fn criterion7(&self) -> Result<CriterionOutcome> {
        let config = self.dmap_config();
        let mut failures = Vec::new();
        let mut total = 0;
        for r in 2..=5usize {
            for mu in (r + 1)..=16 {
                let n = 2 * mu - r;
                if n > self.cap(16) {
                    break;
                }
                total += 1;
                let image = Partition::from_sorted(vec![mu, mu - r]);
                let set: BTreeSet<Partition> = dinv_two_part(mu, r, &config)?.into_iter().collect();
                let brute: BTreeSet<Partition> =
                    self.table(n)?.fiber(&image).into_iter().collect();
                if set.len() != two_part_count(mu, r) {
                    failures.push(format!(
                        "|fiber of {image}| = {}, expected {}",
                        set.len(),
                        two_part_count(mu, r)
                    ));
                }
                if set != brute {
                    failures.push(format!("fiber of {image} differs from the table"));
                }
            }
        }
        Ok(from_failures(7, failures, total, "fibers"))
    }

    fn criterion8(&self) -> Result<CriterionOutcome> {
        let fiber = self.table(8)?.fiber(&p("6,2"));
        let expected: BTreeSet<Partition> = ["6,2", "6,1,1", "4,2,2", "4,2,1,1", "4,1^4", "3,3,1,1"]
            .iter()
            .map(|s| p(s))
            .collect();
        let got: BTreeSet<Partition> = fiber.iter().cloned().collect();
        let minimal: BTreeSet<Partition> = dominance_minimal(&fiber).into_iter().collect();
        let expected_min: BTreeSet<Partition> = [p("3,3,1,1"), p("4,1^4")].into_iter().collect();
        let list = |s: &BTreeSet<Partition>| {
            s.iter().rev().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        };
        Ok(outcome(
            8,
            got == expected && minimal == expected_min,
            format!("fiber {{{}}}, dominance-minimal {{{}}}", list(&got), list(&minimal)),
        ))
    }

    fn criterion9(&self) -> Result<CriterionOutcome> {
        let lambda = p("3,1,1");
        let r = dmap(&lambda, &self.dmap_config())?;
        let mc = dmap_monte_carlo(&lambda, &self.dmap_config())?;
        Ok(outcome(
            9,
            r.d == p("4,1") && mc.d == p("4,1"),
            format!("cascade {} via {}, sampling {}", r.d, r.method, mc.d),
        ))
    }

    fn criterion10(&self) -> Result<CriterionOutcome> {
        let mut failures = Vec::new();
        let mut total = 0;
        for n in 1..=self.cap(12) {
            let table = self.table(n)?;
            for (lambda, r) in &table.entries {
                total += 1;
                let twice = &table.get(&r.d).expect("table covers Π(n)").d;
                if twice != &r.d {
                    failures.push(format!("D{lambda} = {} but D{} = {twice}", r.d, r.d));
                }
                if (&r.d == lambda) != lambda.is_stable() {
                    failures.push(format!("D{lambda} = {}, stable: {}", r.d, lambda.is_stable()));
                }
            }
        }
        Ok(from_failures(10, failures, total, "partitions"))
    }

    fn criterion11(&self) -> Result<CriterionOutcome> {
        let mut pairs: BTreeSet<Pair> = self.squarezero_witnesses()?.iter().cloned().collect();
        if self.witnesses[1].get().is_none() {
            self.criterion3()?;
        }
        pairs.extend(self.witnesses[1].get().into_iter().flatten().cloned());
        pairs.extend(self.eq2_witnesses()?.0.iter().cloned());

        let config = self.config;
        let lambdas: Vec<Partition> = (1..=self.cap(10)).flat_map(enumerate).collect();
        let sampled: Vec<BTreeSet<Pair>> = lambdas
            .par_iter()
            .map(|lambda| {
                let sampler = Sampler::new(lambda, config.coeff_bound)?;
                let seed = lambda_seed(lambda, config.seed);
                let mut seen = BTreeSet::new();
                for i in 0..COMMUTANT_SAMPLES {
                    seen.insert((lambda.clone(), sampler.jordan(trial_seed(seed, i))?));
                }
                Ok(seen)
            })
            .collect::<Result<_>>()?;
        pairs.extend(sampled.into_iter().flatten());

        let mut failures = Vec::new();
        for (b, a) in &pairs {
            let v = compatible_filter(b, a)?;
            if v.is_forbidden() {
                failures.push(format!("witness ({b}, {a}) forbidden by {:?}", v.rules()));
            }
        }
        let mut transposes = 0;
        for n in 1..=self.cap(12) {
            for lambda in enumerate(n) {
                transposes += 1;
                let v = compatible_filter(&lambda, &lambda.conjugate())?;
                if v.is_forbidden() {
                    failures.push(format!("({lambda}, {}) forbidden", lambda.conjugate()));
                }
            }
        }
        Ok(from_failures(
            11,
            failures,
            pairs.len() + transposes,
            "distinct witness and transpose pairs",
        ))
    }

    fn criterion12(&self) -> Result<CriterionOutcome> {
        let config = self.dmap_config();
        let mut failures = Vec::new();
        let mut total = 0;
        for r in 2..=13usize {
            for mu in 1..=(14 - r) {
                if 2 * mu + r > self.cap(usize::MAX) {
                    continue;
                }
                total += 1;
                if !minimal_rank_check(mu, r, &config)? {
                    failures.push(format!("μ={mu}, r={r}"));
                }
            }
        }
        Ok(from_failures(12, failures, total, "fibers D⁻¹((μ+r, μ))"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let suite = Suite::new(VerifyConfig {
            max_n: Some(7),
            ..Default::default()
        });
        for id in [1, 2, 6, 7, 8, 9, 10, 12] {
            let o = suite.run(id);
            assert!(o.passed, "{id}: {}", o.detail);
        }
    }

    #[test]
    fn admissible_counts() {
        // (2,1): l=0 only; (1,1): j=0, l=0 is excluded.
        assert_eq!(admissible(3), vec![(2, 1, 0, 0)]);
        assert!(admissible(4).contains(&(2, 2, 0, 1)));
    }
}
