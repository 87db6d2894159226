//! The centralizer of `J_λ`: structural basis, random nilpotent elements,
//! and the D-map (the generic Jordan type of the nilpotent commutator).
//!
//! Every block `A_ij` of a matrix commuting with `J_λ` is an upper-triangular
//! Toeplitz `λ_i x λ_j` block, so the centralizer has one generator per
//! admissible diagonal of each block pair. Modulo its radical the centralizer
//! is a product of full matrix algebras, one per group of equal parts; the
//! leading (diagonal-0) coefficients of same-size block pairs are exactly the
//! entries of those algebras. Forcing each of those square coefficient arrays
//! to be strictly upper triangular lands in the nilpotent commutator, and a
//! random point of that linear space has the generic Jordan type with high
//! probability. Every draw is verified exactly afterwards.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{self, commutes_with_jordan, kernel, ExactMatrix};
use crate::partitions::Partition;

pub const DEFAULT_TRIALS: usize = 64;
pub const DEFAULT_COEFF_BOUND: i64 = 10;
const SAMPLE_RETRIES: usize = 16;

/// One generator of the centralizer: diagonal `diag` of block `(row_block, col_block)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Generator {
    pub row_block: usize,
    pub col_block: usize,
    pub diag: usize,
}

/// Index bookkeeping for the centralizer of `J_λ`.
#[derive(Debug, Clone)]
pub struct CommutantLayout {
    lambda: Partition,
    offsets: Vec<usize>,
    generators: Vec<Generator>,
}

impl CommutantLayout {
    pub fn new(lambda: &Partition) -> Self {
        let parts = lambda.parts();
        let mut offsets = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for &p in parts {
            offsets.push(acc);
            acc += p;
        }
        let mut generators = Vec::new();
        for (i, &a) in parts.iter().enumerate() {
            for (j, &b) in parts.iter().enumerate() {
                for diag in 0..a.min(b) {
                    generators.push(Generator {
                        row_block: i,
                        col_block: j,
                        diag,
                    });
                }
            }
        }
        CommutantLayout {
            lambda: lambda.clone(),
            offsets,
            generators,
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// Matrix positions `(row, col)` carrying a one in generator `g`.
    pub fn positions(&self, g: Generator) -> impl Iterator<Item = (usize, usize)> + '_ {
        let parts = self.lambda.parts();
        let (a, b) = (parts[g.row_block], parts[g.col_block]);
        let shift = b.saturating_sub(a) + g.diag;
        let (r0, c0) = (self.offsets[g.row_block], self.offsets[g.col_block]);
        (0..a)
            .take_while(move |p| p + shift < b)
            .map(move |p| (r0 + p, c0 + p + shift))
    }

    /// Whether `g` is a leading coefficient inside a group of equal parts on
    /// or below the group's diagonal; those are forced to zero when sampling.
    fn forced_zero(&self, g: Generator) -> bool {
        let parts = self.lambda.parts();
        g.diag == 0 && parts[g.row_block] == parts[g.col_block] && g.row_block >= g.col_block
    }

    fn dense(&self, coefficients: &[i64]) -> Vec<i64> {
        let n = self.lambda.n();
        let mut out = vec![0i64; n * n];
        for (&g, &c) in self.generators.iter().zip(coefficients) {
            if c == 0 {
                continue;
            }
            for (r, col) in self.positions(g) {
                out[r * n + col] = c;
            }
        }
        out
    }

    fn draw(&self, rng: &mut ChaCha8Rng, bound: i64) -> Vec<i64> {
        self.generators
            .iter()
            .map(|&g| {
                if self.forced_zero(g) {
                    0
                } else {
                    rng.gen_range(-bound..=bound)
                }
            })
            .collect()
    }
}

/// A basis of `{A : A J_λ = J_λ A}`.
#[derive(Debug, Clone)]
pub struct CommutantBasis {
    pub lambda: Partition,
    pub generators: Vec<Generator>,
    pub basis: Vec<ExactMatrix>,
    pub dim: usize,
}

/// Nullity of the linear map `X -> X J_λ - J_λ X` on `n x n` matrices.
pub fn commutator_nullity(lambda: &Partition) -> usize {
    let n = lambda.n();
    let jordan = exactla::build_jordan(lambda);
    let sup: Vec<bool> = (0..n)
        .map(|i| i + 1 < n && !num_traits::Zero::is_zero(jordan.get(i, i + 1)))
        .collect();
    let size = n * n;
    let mut map = vec![0i128; size * size];
    for i in 0..n {
        for j in 0..n {
            let row = (i * n + j) * size;
            if j > 0 && sup[j - 1] {
                map[row + i * n + (j - 1)] += 1;
            }
            if sup[i] {
                map[row + (i + 1) * n + j] -= 1;
            }
        }
    }
    let rank = match kernel::bareiss_rank(size, size, map.clone()) {
        Some(r) => r,
        None => {
            let big: Vec<num_bigint::BigInt> = map.into_iter().map(Into::into).collect();
            kernel::bareiss_rank(size, size, big).expect("BigInt kernels never overflow")
        }
    };
    size - rank
}

/// Structural centralizer basis, verified against the commutator kernel.
pub fn commutant_basis(lambda: &Partition) -> Result<CommutantBasis> {
    let layout = CommutantLayout::new(lambda);
    let n = lambda.n();
    let mut basis = Vec::with_capacity(layout.dim());
    for &g in layout.generators() {
        let mut m = ExactMatrix::zeros(n, n);
        for (r, c) in layout.positions(g) {
            m.set(r, c, exactla::rat(1));
        }
        if !commutes_with_jordan(&m, lambda) {
            return Err(Error::BasisVerification {
                lambda: lambda.clone(),
                detail: format!("generator {g:?} does not commute"),
            });
        }
        basis.push(m);
    }
    let expected: usize = lambda
        .parts()
        .iter()
        .flat_map(|&a| lambda.parts().iter().map(move |&b| a.min(b)))
        .sum();
    let nullity = commutator_nullity(lambda);
    if basis.len() != expected || nullity != expected {
        return Err(Error::BasisVerification {
            lambda: lambda.clone(),
            detail: format!(
                "{} generators, min-sum {expected}, commutator nullity {nullity}",
                basis.len()
            ),
        });
    }
    Ok(CommutantBasis {
        lambda: lambda.clone(),
        generators: layout.generators,
        dim: basis.len(),
        basis,
    })
}

/// A verified nilpotent element of the centralizer of `J_λ`.
#[derive(Debug, Clone)]
pub struct CommutantSample {
    pub lambda: Partition,
    pub matrix: ExactMatrix,
    pub jordan: Partition,
    pub seed: u64,
    pub coeff_bound: i64,
}

/// Draws verified nilpotent centralizer elements for a fixed `λ`.
#[derive(Debug, Clone)]
pub struct Sampler {
    layout: CommutantLayout,
    coeff_bound: i64,
}

impl Sampler {
    pub fn new(lambda: &Partition, coeff_bound: i64) -> Result<Self> {
        if coeff_bound < 1 {
            return Err(Error::Precondition(format!(
                "coefficient bound {coeff_bound} must be at least 1"
            )));
        }
        Ok(Sampler {
            layout: CommutantLayout::new(lambda),
            coeff_bound,
        })
    }

    pub fn lambda(&self) -> &Partition {
        &self.layout.lambda
    }

    fn draw_verified(&self, seed: u64) -> Result<(Vec<i64>, Partition)> {
        let lambda = &self.layout.lambda;
        let n = lambda.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLE_RETRIES {
            let dense = self.layout.dense(&self.layout.draw(&mut rng, self.coeff_bound));
            if !commutes_dense(&dense, lambda) {
                continue;
            }
            let ints = dense.iter().map(|&v| v as i128).collect();
            match exactla::jordan_type_of_integers(n, ints) {
                Ok(shape) => return Ok((dense, shape)),
                Err(Error::NotNilpotent { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::RetriesExhausted {
            attempts: SAMPLE_RETRIES,
            seed,
        })
    }

    /// Jordan type of the sample for `seed`, without materializing rationals.
    pub fn jordan(&self, seed: u64) -> Result<Partition> {
        self.draw_verified(seed).map(|(_, shape)| shape)
    }

    pub fn sample(&self, seed: u64) -> Result<CommutantSample> {
        let (dense, jordan) = self.draw_verified(seed)?;
        let n = self.layout.lambda.n();
        Ok(CommutantSample {
            lambda: self.layout.lambda.clone(),
            matrix: ExactMatrix::from_i64(n, n, &dense),
            jordan,
            seed,
            coeff_bound: self.coeff_bound,
        })
    }
}

fn commutes_dense(a: &[i64], lambda: &Partition) -> bool {
    let n = lambda.n();
    let mut sup = Vec::with_capacity(n);
    for &size in lambda.parts() {
        sup.extend(std::iter::repeat_n(true, size - 1));
        sup.push(false);
    }
    (0..n).all(|i| {
        (0..n).all(|j| {
            let aj = if j > 0 && sup[j - 1] { a[i * n + j - 1] } else { 0 };
            let ja = if sup[i] { a[(i + 1) * n + j] } else { 0 };
            aj == ja
        })
    })
}

pub fn sample_nilpotent_commuting(
    lambda: &Partition,
    seed: u64,
    coeff_bound: i64,
) -> Result<CommutantSample> {
    Sampler::new(lambda, coeff_bound)?.sample(seed)
}

/// First part of `D(λ)`: the maximum of `2(i-1) + λ_i + ... + λ_{i+r}` over
/// runs with `λ_i - λ_{i+r} <= 1`, where `λ_{i-1} >= 2` whenever `i > 1`.
pub fn dmap_index(lambda: &Partition) -> usize {
    let parts = lambda.parts();
    let t = parts.len();
    let mut best = 0;
    for i in 0..t {
        if i > 0 && parts[i - 1] < 2 {
            continue;
        }
        let mut sum = 0;
        for k in i..t {
            if parts[i] - parts[k] > 1 {
                break;
            }
            sum += parts[k];
            best = best.max(2 * i + sum);
        }
    }
    best
}

/// If `λ = (μ, μ-2, ..., μ-2k+2, P(μ-2k, t))` with `k >= 1`, returns `(μ, k)`.
pub fn diff2_shape(lambda: &Partition) -> Option<(usize, usize)> {
    let parts = lambda.parts();
    let mu = parts[0];
    for k in 1..parts.len() {
        if 2 * k >= mu || parts[k - 1] + 2 * (k - 1) != mu {
            break;
        }
        let tail = &parts[k..];
        let sum: usize = tail.iter().sum();
        if sum == mu - 2 * k && tail[0] - tail[tail.len() - 1] <= 1 {
            return Some((mu, k));
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DMapMethod {
    #[serde(rename = "formula-r1")]
    FormulaR1,
    #[serde(rename = "formula-r2")]
    FormulaR2,
    #[serde(rename = "formula-diff2")]
    FormulaDiff2,
    #[serde(rename = "monte-carlo")]
    MonteCarlo,
}

impl DMapMethod {
    pub fn is_formula(self) -> bool {
        self != DMapMethod::MonteCarlo
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DMapMethod::FormulaR1 => "formula-r1",
            DMapMethod::FormulaR2 => "formula-r2",
            DMapMethod::FormulaDiff2 => "formula-diff2",
            DMapMethod::MonteCarlo => "monte-carlo",
        }
    }
}

impl fmt::Display for DMapMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DMapChecks {
    pub index: bool,
    pub parts: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DMapResult {
    pub lambda: Partition,
    pub d: Partition,
    pub method: DMapMethod,
    pub trials_used: usize,
    pub checks: DMapChecks,
    pub seed: u64,
}

impl DMapResult {
    pub fn index_check(&self) -> bool {
        self.checks.index
    }

    pub fn parts_check(&self) -> bool {
        self.checks.parts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DMapConfig {
    pub trials: usize,
    pub seed: u64,
    pub coeff_bound: i64,
    /// Use the difference-two preimage formula in the cascade. Turning it
    /// off sends those shapes to Monte Carlo, which makes a fiber computed
    /// from the table independent of that formula.
    pub diff2_formula: bool,
}

impl Default for DMapConfig {
    fn default() -> Self {
        DMapConfig {
            trials: DEFAULT_TRIALS,
            seed: 0,
            coeff_bound: DEFAULT_COEFF_BOUND,
            diff2_formula: true,
        }
    }
}

impl DMapConfig {
    pub fn with_trials(trials: usize) -> Self {
        DMapConfig {
            trials,
            ..Default::default()
        }
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed for `λ` under a base seed, independent of evaluation order.
pub fn lambda_seed(lambda: &Partition, base: u64) -> u64 {
    lambda
        .parts()
        .iter()
        .fold(splitmix(base), |acc, &p| splitmix(acc ^ p as u64))
}

/// Seed of trial `index` in a stream rooted at `seed`.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    splitmix(seed ^ splitmix(index as u64 + 1))
}

fn finish(
    lambda: &Partition,
    d: Partition,
    method: DMapMethod,
    trials_used: usize,
    seed: u64,
) -> DMapResult {
    let checks = DMapChecks {
        index: d.first() == dmap_index(lambda),
        parts: d.t() == lambda.min_ar_cover(),
    };
    DMapResult {
        lambda: lambda.clone(),
        d,
        method,
        trials_used,
        checks,
        seed,
    }
}

/// The dominance-maximum of `types`, if one element dominates all others.
pub fn dominance_maximum(types: &[Partition]) -> std::result::Result<Partition, (Partition, Partition)> {
    let mut best = types[0].clone();
    for t in &types[1..] {
        if best.dominance_leq(t).unwrap_or(false) {
            best = t.clone();
        }
    }
    for t in types {
        if !t.dominance_leq(&best).unwrap_or(false) {
            return Err((best, t.clone()));
        }
    }
    Ok(best)
}

/// `D(λ)` by sampling only: the dominance-maximum of `trials` random
/// nilpotent centralizer elements, which must also pass both formula checks.
pub fn dmap_monte_carlo(lambda: &Partition, config: &DMapConfig) -> Result<DMapResult> {
    if config.trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    let seed = lambda_seed(lambda, config.seed);
    let sampler = Sampler::new(lambda, config.coeff_bound)?;
    let types: Vec<Partition> = (0..config.trials)
        .into_par_iter()
        .map(|t| sampler.jordan(trial_seed(seed, t)))
        .collect::<Result<_>>()?;
    let d = dominance_maximum(&types).map_err(|(a, b)| Error::MonteCarloInconsistency {
        lambda: lambda.clone(),
        detail: format!("observed types {a} and {b} are incomparable"),
    })?;
    let result = finish(lambda, d, DMapMethod::MonteCarlo, config.trials, seed);
    if !result.checks.index || !result.checks.parts {
        return Err(Error::MonteCarloInconsistency {
            lambda: lambda.clone(),
            detail: format!(
                "maximum {} after {} trials fails checks (first part {}, parts {})",
                result.d,
                config.trials,
                dmap_index(lambda),
                lambda.min_ar_cover()
            ),
        });
    }
    Ok(result)
}

/// `D(λ)` through the formula-first cascade, falling back to Monte Carlo.
pub fn dmap(lambda: &Partition, config: &DMapConfig) -> Result<DMapResult> {
    if config.trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    let n = lambda.n();
    let seed = lambda_seed(lambda, config.seed);
    match lambda.min_ar_cover() {
        1 => return Ok(finish(lambda, Partition::row(n), DMapMethod::FormulaR1, 0, seed)),
        2 => {
            let first = dmap_index(lambda);
            let d = Partition::from_sorted(vec![first, n - first]);
            return Ok(finish(lambda, d, DMapMethod::FormulaR2, 0, seed));
        }
        _ => {}
    }
    if config.diff2_formula {
        if let Some((mu, k)) = diff2_shape(lambda) {
            let d = Partition::from_sorted((0..=k).map(|i| mu - 2 * i).collect());
            return Ok(finish(lambda, d, DMapMethod::FormulaDiff2, 0, seed));
        }
    }
    dmap_monte_carlo(lambda, config)
}

/// Whether `D(D(λ)) = D(λ)`.
pub fn dmap_idempotence_check(lambda: &Partition, config: &DMapConfig) -> Result<bool> {
    let once = dmap(lambda, config)?;
    let twice = dmap(&once.d, config)?;
    Ok(twice.d == once.d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate, parse};

    fn p(s: &str) -> Partition {
        parse(s).unwrap()
    }

    /// Solves `A J = J A` directly as a linear system over the rationals.
    fn commutant_dim_by_linear_system(lambda: &Partition) -> usize {
        let n = lambda.n();
        let j = exactla::build_jordan(lambda);
        let size = n * n;
        let mut system = ExactMatrix::zeros(size, size);
        for a in 0..n {
            for b in 0..n {
                let mut e = ExactMatrix::zeros(n, n);
                e.set(a, b, exactla::rat(1));
                let image = &(&e * &j) - &(&j * &e);
                for (k, v) in image.entries().iter().enumerate() {
                    system.set(k, a * n + b, v.clone());
                }
            }
        }
        system.nullity()
    }

    #[test]
    fn basis_dimensions() {
        assert_eq!(commutant_basis(&Partition::row(6)).unwrap().dim, 6);
        assert_eq!(commutant_dim_by_linear_system(&p("2,1")), 5);
        assert_eq!(commutant_basis(&p("2,1")).unwrap().dim, 5);
        for (l1, l2) in [(3, 1), (4, 4), (5, 2), (6, 3)] {
            let lam = Partition::from_sorted(vec![l1, l2]);
            let dim = commutant_dim_by_linear_system(&lam);
            assert_eq!(dim, l1 + 3 * l2);
            assert_eq!(commutant_basis(&lam).unwrap().dim, dim);
        }
    }

    #[test]
    fn basis_matches_commutator_nullity_up_to_ten() {
        for n in 1..=10 {
            for lam in enumerate(n) {
                let basis = commutant_basis(&lam).unwrap();
                assert_eq!(basis.dim, commutator_nullity(&lam), "{lam}");
            }
        }
    }

    #[test]
    fn samples_are_verified_nilpotent_commuting() {
        for lam in [p("1^4"), p("5"), p("3,3,1"), p("4,2,2,1")] {
            for seed in 0..5 {
                let s = sample_nilpotent_commuting(&lam, seed, 10).unwrap();
                assert!(commutes_with_jordan(&s.matrix, &lam));
                assert!(s.matrix.pow(lam.n()).unwrap().is_zero());
                assert_eq!(exactla::jordan_type(&s.matrix).unwrap(), s.jordan);
            }
        }
        let row = sample_nilpotent_commuting(&Partition::row(5), 3, 10).unwrap();
        for i in 0..5 {
            assert!(num_traits::Zero::is_zero(row.matrix.get(i, i)));
        }
    }

    #[test]
    fn square_zero_samples_below_their_d() {
        let lam = p("2,2,1");
        let d = Partition::row(5);
        for seed in 0..10 {
            let s = sample_nilpotent_commuting(&lam, seed, 10).unwrap();
            assert!(s.jordan.dominance_leq(&d).unwrap());
        }
        assert!(sample_nilpotent_commuting(&lam, 0, 0).is_err());
    }

    #[test]
    fn sampling_is_reproducible() {
        let lam = p("3,2,2,1");
        let a = sample_nilpotent_commuting(&lam, 42, 10).unwrap();
        let b = sample_nilpotent_commuting(&lam, 42, 10).unwrap();
        assert_eq!(a.matrix, b.matrix);
        assert_eq!(a.jordan, b.jordan);
    }

    #[test]
    fn index_examples() {
        assert_eq!(dmap_index(&p("3,1,1")), 4);
        assert_eq!(dmap_index(&Partition::row(7)), 7);
        assert_eq!(dmap_index(&p("2,2,1")), 5);
        assert_eq!(dmap_index(&p("6,2,1,1")), 6);
    }

    #[test]
    fn dmap_examples() {
        let cfg = DMapConfig::default();
        let stable = dmap(&p("5,3,1"), &cfg).unwrap();
        assert_eq!(stable.d, p("5,3,1"));
        assert_eq!(stable.method, DMapMethod::FormulaDiff2);

        let r = dmap(&p("3,1,1"), &cfg).unwrap();
        assert_eq!(r.d, p("4,1"));
        assert_eq!(r.method, DMapMethod::FormulaR2);

        let r = dmap(&p("6,2,1,1"), &cfg).unwrap();
        assert_eq!(r.d, p("6,4"));
        let mc = dmap_monte_carlo(&p("6,2,1,1"), &DMapConfig::with_trials(200)).unwrap();
        assert_eq!(mc.d, p("6,4"));
        assert_eq!(mc.trials_used, 200);

        let ones = dmap(&Partition::column(6), &cfg).unwrap();
        assert_eq!(ones.d, Partition::row(6));
        assert_eq!(ones.method, DMapMethod::FormulaR1);
    }

    #[test]
    fn monte_carlo_path() {
        let cfg = DMapConfig::default();
        let r = dmap(&p("6,3,1"), &cfg).unwrap();
        assert_eq!(r.method, DMapMethod::MonteCarlo);
        assert_eq!(r.d, p("6,3,1"));
        assert!(r.index_check() && r.parts_check());
        assert_eq!(r, dmap(&p("6,3,1"), &cfg).unwrap());
    }

    #[test]
    fn diff2_shapes() {
        assert_eq!(diff2_shape(&p("5,3,1")), Some((5, 2)));
        assert_eq!(diff2_shape(&p("7,5,2,1")), Some((7, 2)));
        assert_eq!(diff2_shape(&p("6,2,1,1")), Some((6, 1)));
        assert_eq!(diff2_shape(&p("5,3,1,1")), None);
        assert_eq!(diff2_shape(&p("3,1,1")), None);
    }

    #[test]
    fn idempotence_examples() {
        let cfg = DMapConfig::default();
        assert!(dmap_idempotence_check(&p("3,1,1"), &cfg).unwrap());
        assert!(dmap_idempotence_check(&Partition::row(5), &cfg).unwrap());
        for lam in enumerate(10) {
            assert!(dmap_idempotence_check(&lam, &cfg).unwrap(), "{lam}");
        }
    }

    #[test]
    fn formulas_agree_with_sampling() {
        let cfg = DMapConfig::default();
        for n in 1..=9 {
            for lam in enumerate(n) {
                let cascade = dmap(&lam, &cfg).unwrap();
                let mc = dmap_monte_carlo(&lam, &cfg).unwrap();
                assert_eq!(cascade.d, mc.d, "{lam}");
            }
        }
    }

    #[test]
    fn result_json_shape() {
        let r = dmap(&p("3,1,1"), &DMapConfig::default()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with(
            r#"{"lambda":[3,1,1],"d":[4,1],"method":"formula-r2","trials_used":0,"checks":{"index":true,"parts":true}"#
        ));
        let back: DMapResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
