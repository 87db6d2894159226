use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use nilcomm::commutant::{dmap, lambda_seed, trial_seed, DMapConfig, Sampler};
use nilcomm::constraints::{compatible_filter, Verdict};
use nilcomm::dinverse::{dinv, explore_q1, explore_q2};
use nilcomm::exactla::{commutes_with_jordan, jordan_type};
use nilcomm::partitions::{parse, Partition};
use nilcomm::twoblock::{antidiagonal, lemma_eq2, lemma_odd, squarezero_partner, TwoBlockElement};
use nilcomm::verify::{Suite, VerifyConfig, CRITERIA};
use nilcomm::{Error, ExactMatrix};

#[derive(Parser)]
#[command(name = "nilcomm", version, about = "Jordan types of commuting nilpotent matrices")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct RunConfig {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 64)]
    trials: usize,
    #[arg(long, global = true, default_value_t = 10)]
    coeff_bound: i64,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Refuse partitions of more than this size unless --force is given
    #[arg(long, global = true, default_value_t = 16)]
    max_n: usize,
    #[arg(long, global = true)]
    force: bool,
    /// Print witness matrices in the `rows cols` / `p/q` dump format
    #[arg(long, global = true)]
    dump_matrix: bool,
}

#[derive(Subcommand)]
enum Command {
    /// D(λ): the generic Jordan type of the nilpotent commutator of J_λ
    Dmap {
        #[arg(value_parser = parse_partition)]
        lambda: Partition,
    },
    /// All λ with D(λ) = μ
    Dinv {
        #[arg(value_parser = parse_partition)]
        mu: Partition,
    },
    /// Random nilpotent matrices commuting with J_λ
    Sample {
        #[arg(value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    #[command(subcommand)]
    Construct(Construct),
    #[command(subcommand)]
    Check(Check),
    /// Run the acceptance criteria
    Verify {
        /// `all` or a comma-separated list of criterion numbers
        #[arg(long, default_value = "all")]
        suite: String,
    },
    #[command(subcommand)]
    Explore(Explore),
}

#[derive(Subcommand)]
enum Construct {
    /// Square-zero matrix of rank a commuting with J_μ
    Squarezero {
        #[arg(value_parser = parse_partition)]
        mu: Partition,
        #[arg(long)]
        rank: usize,
    },
    /// b K_j + c L_l for J_(λ1, λ2) with its predicted Jordan type
    Antidiagonal {
        lambda1: usize,
        lambda2: usize,
        j: usize,
        l: usize,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        b: BigRational,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        c: BigRational,
    },
    /// Element of type (λ+1, λ-1) commuting with J_(λ, λ)
    LemmaEq2 { lambda: usize },
    /// Square-zero matrix of rank a commuting with J_(λ1, λ2)
    LemmaOdd { lambda1: usize, lambda2: usize, a: usize },
    /// Element given as M[i]=q K[i]=q L[i]=q N[i]=q tokens
    Element {
        lambda1: usize,
        lambda2: usize,
        #[arg(allow_hyphen_values = true)]
        tokens: Vec<String>,
    },
}

#[derive(Subcommand)]
enum Check {
    /// Necessary conditions on a pair of Jordan types
    Pair {
        #[arg(value_parser = parse_partition)]
        lambda: Partition,
        #[arg(value_parser = parse_partition)]
        mu: Partition,
    },
}

#[derive(Subcommand)]
enum Explore {
    /// Size of D⁻¹((μ, μ-r)) against (r-1)(μ-r)
    Q1 {
        #[arg(long)]
        mu: usize,
        #[arg(long)]
        r: usize,
    },
    /// Rank-minimal elements of D⁻¹(μ) for stable μ
    Q2 {
        #[arg(value_parser = parse_partition)]
        mu: Partition,
    },
}

fn parse_partition(text: &str) -> Result<Partition, String> {
    parse(text).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(_)
            | Error::SizeMismatch(..)
            | Error::ElementSyntax(_)
            | Error::PartitionSyntax { .. }
            | Error::EmptyPartition
            | Error::NonPositivePart(_)
            | Error::PartsOutOfRange { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

/// Collected output plus whether a verification or finding failed.
struct Output {
    text: String,
    ok: bool,
}

impl RunConfig {
    fn guard(&self, n: usize) -> Result<(), Failure> {
        if n > self.max_n && !self.force {
            return Err(Failure::Usage(format!(
                "n = {n} exceeds --max-n {}; pass --force to run anyway",
                self.max_n
            )));
        }
        Ok(())
    }

    fn dmap_config(&self) -> DMapConfig {
        DMapConfig {
            trials: self.trials,
            seed: self.seed,
            coeff_bound: self.coeff_bound,
            diff2_formula: true,
        }
    }

    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String, ok: bool) -> Output {
        let text = if self.json {
            serde_json::to_string_pretty(value).expect("serializable output") + "\n"
        } else {
            text()
        };
        Output { text, ok }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

struct Witness {
    kind: &'static str,
    lambda: Partition,
    matrix: ExactMatrix,
    /// Expected Jordan type, if the construction predicts one.
    expected: Option<Partition>,
    square_zero_rank: Option<usize>,
    extra: Vec<(String, Value)>,
}

fn report_witness(run: &RunConfig, w: Witness) -> Result<Output, Failure> {
    let commutes = commutes_with_jordan(&w.matrix, &w.lambda);
    let shape = jordan_type(&w.matrix);
    let nilpotent = shape.is_ok();
    let shape_text = shape
        .as_ref()
        .map_or_else(|e| e.to_string(), |s| s.to_string());
    let mut checks = vec![("commutes".to_string(), commutes), ("nilpotent".to_string(), nilpotent)];
    if let Some(a) = w.square_zero_rank {
        checks.push(("square_zero".into(), (&w.matrix * &w.matrix).is_zero()));
        checks.push(("rank".into(), w.matrix.rank() == a));
    }
    if let Some(expected) = &w.expected {
        checks.push(("jordan_type".into(), shape.as_ref().ok() == Some(expected)));
    }
    let ok = checks.iter().all(|(_, v)| *v);

    let mut value = json!({
        "construction": w.kind,
        "lambda": w.lambda,
        "jordan": shape.as_ref().ok(),
        "seed": run.seed,
        "checks": checks.iter().map(|(k, v)| (k.clone(), Value::Bool(*v))).collect::<serde_json::Map<String, Value>>(),
        "verified": ok,
    });
    for (k, v) in &w.extra {
        value[k] = v.clone();
    }
    if let Some(e) = &w.expected {
        value["expected"] = json!(e);
    }
    if run.dump_matrix {
        value["matrix"] = json!(w.matrix.dump());
    }
    Ok(run.emit(
        &value,
        || {
            let mut out = format!("{} for J_{}\n", w.kind, w.lambda);
            for (k, v) in &w.extra {
                out += &format!("{k}: {}\n", v.as_str().map_or_else(|| v.to_string(), str::to_string));
            }
            out += &format!("jordan type: {shape_text}\n");
            if let Some(e) = &w.expected {
                out += &format!("expected: {e}\n");
            }
            for (k, v) in &checks {
                out += &format!("check {k}: {}\n", yes(*v));
            }
            out += if ok { "verified\n" } else { "VERIFICATION FAILED\n" };
            if run.dump_matrix {
                out += &w.matrix.dump();
            }
            out
        },
        ok,
    ))
}

fn construct(run: &RunConfig, cmd: Construct) -> Result<Output, Failure> {
    let w = match cmd {
        Construct::Squarezero { mu, rank } => {
            run.guard(mu.n())?;
            Witness {
                kind: "squarezero",
                matrix: squarezero_partner(&mu, rank)?,
                expected: Some(Partition::square_zero(rank, mu.n().saturating_sub(2 * rank))),
                square_zero_rank: Some(rank),
                lambda: mu,
                extra: vec![],
            }
        }
        Construct::Antidiagonal { lambda1, lambda2, j, l, b, c } => {
            run.guard(lambda1 + lambda2)?;
            let r = antidiagonal(lambda1, lambda2, j, l, b, c)?;
            Witness {
                kind: "antidiagonal",
                lambda: r.element.shape(),
                matrix: r.element.to_matrix(),
                expected: Some(r.predicted.clone()),
                square_zero_rank: None,
                extra: vec![
                    ("element".into(), json!(r.element.to_string())),
                    ("case".into(), json!(r.case.to_string())),
                    ("w".into(), json!(r.w)),
                ],
            }
        }
        Construct::LemmaEq2 { lambda } => {
            run.guard(2 * lambda)?;
            Witness {
                kind: "lemma-eq2",
                lambda: Partition::new(vec![lambda, lambda])?,
                matrix: lemma_eq2(lambda, run.seed)?,
                expected: Some(Partition::new(vec![lambda + 1, lambda - 1])?),
                square_zero_rank: None,
                extra: vec![],
            }
        }
        Construct::LemmaOdd { lambda1, lambda2, a } => {
            run.guard(lambda1 + lambda2)?;
            let matrix = lemma_odd(lambda1, lambda2, a)?;
            Witness {
                kind: "lemma-odd",
                lambda: Partition::new(vec![lambda1, lambda2])?,
                expected: Some(Partition::square_zero(a, lambda1 + lambda2 - 2 * a)),
                square_zero_rank: Some(a),
                matrix,
                extra: vec![],
            }
        }
        Construct::Element { lambda1, lambda2, tokens } => {
            run.guard(lambda1 + lambda2)?;
            let x = TwoBlockElement::parse_tokens(lambda1, lambda2, tokens.iter().map(String::as_str))?;
            Witness {
                kind: "element",
                lambda: x.shape(),
                matrix: x.to_matrix(),
                expected: None,
                square_zero_rank: None,
                extra: vec![
                    ("element".into(), json!(x.to_string())),
                    ("nilpotent_form".into(), json!(x.is_nilpotent_form())),
                    ("rank_bound".into(), json!(x.rank_bound())),
                ],
            }
        }
    };
    report_witness(run, w)
}

fn verify(run: &RunConfig, suite: &str) -> Result<Output, Failure> {
    let ids: Vec<u8> = if suite == "all" {
        CRITERIA.iter().map(|c| c.0).collect()
    } else {
        suite
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .ok()
                    .filter(|id| (1..=12).contains(id))
                    .ok_or_else(|| Failure::Usage(format!("unknown criterion {t:?}")))
            })
            .collect::<Result<_, _>>()?
    };
    let config = VerifyConfig {
        max_n: (!run.force).then_some(run.max_n),
        seed: run.seed,
        trials: run.trials,
        coeff_bound: run.coeff_bound,
    };
    let s = Suite::new(config);
    let outcomes: Vec<_> = ids.iter().map(|&id| s.run(id)).collect();
    let ok = outcomes.iter().all(|o| o.passed);
    Ok(run.emit(
        &outcomes,
        || {
            let mut out = String::new();
            for o in &outcomes {
                let mark = if o.passed { "PASS" } else { "FAIL" };
                out += &format!("criterion {:>2} {mark} {}: {}\n", o.id, o.title, o.detail);
            }
            out
        },
        ok,
    ))
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let run = cli.run;
    if run.trials == 0 || run.coeff_bound < 1 {
        return Err(Failure::Usage("--trials and --coeff-bound must be at least 1".into()));
    }
    match cli.command {
        Command::Dmap { lambda } => {
            run.guard(lambda.n())?;
            let r = dmap(&lambda, &run.dmap_config())?;
            let ok = r.checks.index && r.checks.parts;
            Ok(run.emit(
                &r,
                || {
                    format!(
                        "{}\nmethod {}, trials {}, seed {}, index check {}, parts check {}\n",
                        r.d,
                        r.method,
                        r.trials_used,
                        r.seed,
                        yes(r.checks.index),
                        yes(r.checks.parts)
                    )
                },
                ok,
            ))
        }
        Command::Dinv { mu } => {
            run.guard(mu.n())?;
            let f = dinv(&mu, &run.dmap_config())?;
            Ok(run.emit(
                &f,
                || {
                    let mut out: String = f.fiber.iter().map(|l| format!("{l}\n")).collect();
                    out += &format!(
                        "size {} (formula {}, monte-carlo {})\n",
                        f.size, f.methods.formula, f.methods.monte_carlo
                    );
                    out
                },
                true,
            ))
        }
        Command::Sample { lambda, count } => {
            run.guard(lambda.n())?;
            let sampler = Sampler::new(&lambda, run.coeff_bound)?;
            let base = lambda_seed(&lambda, run.seed);
            let samples = (0..count)
                .map(|i| sampler.sample(trial_seed(base, i)))
                .collect::<Result<Vec<_>, _>>()?;
            let value: Vec<Value> = samples
                .iter()
                .map(|s| {
                    let mut v = json!({
                        "lambda": s.lambda,
                        "seed": s.seed,
                        "coeff_bound": s.coeff_bound,
                        "jordan": s.jordan,
                    });
                    if run.dump_matrix {
                        v["matrix"] = json!(s.matrix.dump());
                    }
                    v
                })
                .collect();
            Ok(run.emit(
                &value,
                || {
                    let mut out = String::new();
                    for s in &samples {
                        out += &format!("seed {} jordan {}\n", s.seed, s.jordan);
                        if run.dump_matrix {
                            out += &s.matrix.dump();
                        }
                    }
                    out
                },
                true,
            ))
        }
        Command::Construct(c) => construct(&run, c),
        Command::Check(Check::Pair { lambda, mu }) => {
            let v = compatible_filter(&lambda, &mu)?;
            Ok(run.emit(
                &v,
                || {
                    let rules: Vec<&str> = v.reasons.iter().map(|r| r.rule.id()).collect();
                    let mut out = if v.verdict == Verdict::Forbidden {
                        format!("{} ({})\n", v.verdict, rules.join(", "))
                    } else {
                        format!("{}\n", v.verdict)
                    };
                    for r in &v.reasons {
                        out += &format!("  {}: {}\n", r.rule, r.detail);
                    }
                    out
                },
                true,
            ))
        }
        Command::Verify { suite } => verify(&run, &suite),
        Command::Explore(Explore::Q1 { mu, r }) => {
            run.guard((2 * mu).saturating_sub(r))?;
            let q = explore_q1(mu, r, &run.dmap_config())?;
            Ok(run.emit(
                &q,
                || {
                    let mut out: String = q.fiber.iter().map(|l| format!("{l}\n")).collect();
                    out += &format!(
                        "fiber of ({},{}): size {}, conjectured {}: {}\n",
                        q.mu,
                        q.mu - q.r,
                        q.size,
                        q.conjectured,
                        if q.matches { "match" } else { "MISMATCH" }
                    );
                    out
                },
                q.matches,
            ))
        }
        Command::Explore(Explore::Q2 { mu }) => {
            run.guard(mu.n())?;
            let q = explore_q2(&mu, &run.dmap_config())?;
            Ok(run.emit(
                &q,
                || {
                    let list = |v: &[Partition]| {
                        v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
                    };
                    format!(
                        "fiber of {}: size {}\nconjectured {} (in fiber: {})\nrank-minimal {}\ndominance-minimal {}\n{}\n",
                        q.mu,
                        q.fiber_size,
                        q.conjectured,
                        yes(q.in_fiber),
                        list(&q.rank_minimal),
                        list(&q.dominance_minimal),
                        if q.matches { "match" } else { "MISMATCH" }
                    )
                },
                q.matches,
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
