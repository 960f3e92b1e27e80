//! `interfam` — construct k-uniform set families, count their intersecting
//! subfamilies exactly, evaluate the probability that a random subfamily is
//! intersecting, and search for / certify extremal families.
//!
//! Standard output carries machine-readable data only (.fam, CSV, JSON);
//! progress and diagnostics go to standard error. Identical invocations
//! (including seeds) produce byte-identical output. Exit codes: 0 success,
//! 1 operational error, 2 a verification harness found a claimed property
//! violated.

mod fam;

use std::fs;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use interfam_core::counting::{inter_profile_with_cap, profile_split_with_cap};
use interfam_core::exactmath::ExactRatio;
use interfam_core::family::SetFamily;
use interfam_core::probability::{mc_estimate, prob_from_profile, prob_from_profile_f64};
use interfam_core::search::{
    classify_structure, exhaustive_search, star_link_counterexample, shift_local_search,
    verify_ahlswede_katona, verify_lex_counting, Classification, Objective, SearchConfig,
    SearchReport,
};

#[derive(Parser)]
#[command(
    name = "interfam",
    version,
    about = "Exact combinatorics of k-uniform intersecting set families",
    long_about = None
)]
struct Cli {
    /// Worker-count hint for library parallelism (results are identical
    /// for any value; the current implementation runs single-threaded).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Lex,
    Colex,
}

#[derive(Args)]
struct CapArg {
    /// Counting cap: refuse profiles for families with more members.
    #[arg(long, default_value_t = 64)]
    cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Write an initial segment of the lex or colex order as a .fam file.
    Gen {
        #[arg(long, value_enum)]
        order: Order,
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        #[arg(short)]
        m: u64,
        /// Output path; `-` writes to standard output.
        #[arg(short, long, default_value = "-")]
        out: String,
    },
    /// Exact intersecting-subfamily profile of a family, as CSV `t,count`.
    Count {
        #[arg(long = "in")]
        input: String,
        /// CSV output path; `-` writes to standard output.
        #[arg(long, default_value = "-")]
        csv: String,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Split the profile into trivially/non-trivially intersecting counts,
    /// as CSV `t,trivial,nontrivial`.
    Split {
        #[arg(long = "in")]
        input: String,
        #[arg(long, default_value = "-")]
        csv: String,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Exact probability that the p-random subfamily is intersecting (JSON).
    Prob {
        #[arg(long = "in")]
        input: String,
        /// Probability as a rational ("1/3") or decimal ("0.25"), kept exact.
        #[arg(short)]
        p: String,
        /// Optionally attach a Monte Carlo cross-check with this many samples.
        #[arg(long, requires = "seed")]
        samples: Option<u64>,
        /// Seed for the Monte Carlo cross-check.
        #[arg(long, requires = "samples")]
        seed: Option<u64>,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Monte Carlo estimate of the same probability (JSON). Deterministic
    /// for a fixed seed.
    Mc {
        #[arg(long = "in")]
        input: String,
        #[arg(short)]
        p: String,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Exhaustively certify the maximizers of an objective over all
    /// families with the given parameters (JSON report).
    Search {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        #[arg(short)]
        m: u64,
        /// Objective: `inter:T`, `prob:RATIO`, or `min-disjoint-pairs`.
        #[arg(long)]
        objective: String,
        /// Enumerate only canonical representatives under relabeling.
        #[arg(long)]
        prune: bool,
        #[arg(long, default_value_t = 5_000_000)]
        budget: u64,
        #[command(flatten)]
        cap: CapArg,
        /// Include wall-clock timing in the report (off by default so that
        /// identical invocations stay byte-identical).
        #[arg(long)]
        timings: bool,
    },
    /// Hill-climb over single-set replacement moves from a start family
    /// (JSON trace). Deterministic.
    Shift {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        objective: String,
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Verify that an initial segment minimises disjoint edge pairs for
    /// every graph size (CSV table; exit 2 on violation).
    VerifyAk {
        #[arg(short)]
        n: u32,
        #[arg(long, default_value_t = 5_000_000)]
        budget: u64,
    },
    /// Tabulate the exhaustive maximum of inter(.,t) against the lex and
    /// colex segments (CSV `m,t,max,lex,colex,lex_optimal,colex_optimal`).
    /// Exits 2 only if the lex segment fails inside its intersecting range
    /// (m <= binom(n-1,k-1)), where optimality is forced; other rows are
    /// reported without judgement.
    VerifyLex {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        #[arg(long)]
        t_max: usize,
        #[arg(long, default_value_t = 5_000_000)]
        budget: u64,
    },
    /// Classify a family against the full-star / almost-full-star
    /// dichotomy (JSON).
    Classify {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        ell: u32,
        /// Concrete stand-in for the "almost full" slack.
        #[arg(long, default_value = "1/10")]
        epsilon: String,
    },
    /// Compare the lex segment against the star-plus-lifted-colex rival on
    /// inter(.,3) for 3-uniform families of size binom(n-1,2) + m' (JSON).
    Counterexample {
        #[arg(short)]
        n: u32,
        #[arg(long)]
        m_prime: u64,
    },
}

fn main() -> ExitCode {
    // usage errors are operational (exit 1); clap's default would be 2,
    // which this tool reserves for failed verification harnesses
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(help_or_version) => {
            let _ = help_or_version.print();
            return ExitCode::SUCCESS;
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Gen { order, n, k, m, out } => {
            let family = match order {
                Order::Lex => SetFamily::lex_segment(n, k, m),
                Order::Colex => SetFamily::colex_segment(n, k, m),
            }?;
            emit(&out, &fam::write_fam(&family))?;
            Ok(0)
        }
        Command::Count { input, csv, cap } => {
            let family = read_family(&input)?;
            let profile = inter_profile_with_cap(&family, cap.cap)?;
            let mut text = String::from("t,count\n");
            for (t, count) in profile.counts().iter().enumerate() {
                text.push_str(&format!("{t},{count}\n"));
            }
            emit(&csv, &text)?;
            Ok(0)
        }
        Command::Split { input, csv, cap } => {
            let family = read_family(&input)?;
            let split = profile_split_with_cap(&family, cap.cap)?;
            let mut text = String::from("t,trivial,nontrivial\n");
            for t in 0..split.trivial.len() {
                text.push_str(&format!("{t},{},{}\n", split.trivial[t], split.nontrivial[t]));
            }
            emit(&csv, &text)?;
            Ok(0)
        }
        Command::Prob { input, p, samples, seed, cap } => {
            let family = read_family(&input)?;
            let p: ExactRatio = p
                .parse()
                .map_err(|e| anyhow!("cannot parse probability: {e}"))?;
            let profile = inter_profile_with_cap(&family, cap.cap)?;
            let exact = prob_from_profile(&profile, &p)?;
            let float = prob_from_profile_f64(&profile, p.to_f64())?;
            let mc = match (samples, seed) {
                (Some(samples), Some(seed)) => {
                    let est = mc_estimate(&family, p.to_f64(), samples, seed)?;
                    mc_json(&est)
                }
                _ => Value::Null,
            };
            let report = json!({
                "p": p.to_string(),
                "exact": exact.to_string(),
                "float": float,
                "mc": mc,
            });
            emit("-", &pretty(&report))?;
            Ok(0)
        }
        Command::Mc { input, p, samples, seed } => {
            let family = read_family(&input)?;
            let ratio: ExactRatio = p
                .parse()
                .map_err(|e| anyhow!("cannot parse probability: {e}"))?;
            let est = mc_estimate(&family, ratio.to_f64(), samples, seed)?;
            let mut report = json!({ "p": ratio.to_string() });
            report["mc"] = mc_json(&est);
            emit("-", &pretty(&report))?;
            Ok(0)
        }
        Command::Search { n, k, m, objective, prune, budget, cap, timings } => {
            let objective = parse_objective(&objective)?;
            let config = SearchConfig { enumeration_budget: budget, profile_cap: cap.cap };
            eprintln!("searching all {m}-subsets of binom([{n}],{k}) ...");
            let started = Instant::now();
            let mut report = exhaustive_search(n, k, m, &objective, prune, &config)?;
            if timings {
                report.wall_time = Some(started.elapsed());
            }
            emit("-", &pretty(&search_json(&report)))?;
            Ok(0)
        }
        Command::Shift { input, objective, max_steps, cap } => {
            let family = read_family(&input)?;
            let objective = parse_objective(&objective)?;
            let config = SearchConfig { profile_cap: cap.cap, ..Default::default() };
            let start_value = objective.evaluate(&family, cap.cap)?;
            let (result, trace) = shift_local_search(&family, &objective, max_steps, &config)?;
            let final_value = objective.evaluate(&result, cap.cap)?;
            let steps: Vec<Value> = trace
                .iter()
                .map(|s| {
                    json!({
                        "removed": s.removed.elements(),
                        "added": s.added.elements(),
                        "value": s.value.to_string(),
                    })
                })
                .collect();
            let report = json!({
                "objective": objective_name(&objective),
                "start_value": start_value.to_string(),
                "final_value": final_value.to_string(),
                "steps": steps,
                "family": fam::write_fam(&result),
            });
            emit("-", &pretty(&report))?;
            Ok(0)
        }
        Command::VerifyAk { n, budget } => {
            let config = SearchConfig { enumeration_budget: budget, ..Default::default() };
            eprintln!("enumerating all graphs on [{n}] ...");
            let table = verify_ahlswede_katona(n, &config)?;
            let mut text = String::from(
                "m,min_disjoint_pairs,lex,colex,lex_attains,colex_attains,lex_required,colex_required,holds\n",
            );
            for r in &table.rows {
                text.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.m,
                    r.min_disjoint_pairs,
                    r.lex_disjoint_pairs,
                    r.colex_disjoint_pairs,
                    r.lex_attains,
                    r.colex_attains,
                    r.lex_required,
                    r.colex_required,
                    r.holds
                ));
            }
            emit("-", &text)?;
            if table.all_hold {
                Ok(0)
            } else {
                eprintln!("verification failed: some m is not minimised by an initial segment");
                Ok(2)
            }
        }
        Command::VerifyLex { n, k, t_max, budget } => {
            let config = SearchConfig { enumeration_budget: budget, ..Default::default() };
            eprintln!("enumerating all subfamilies of binom([{n}],{k}) ...");
            let table = verify_lex_counting(n, k, t_max, &config)?;
            let mut text = String::from("m,t,max,lex,colex,lex_optimal,colex_optimal\n");
            for r in &table.rows {
                text.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.m, r.t, r.max, r.lex, r.colex, r.lex_optimal, r.colex_optimal
                ));
            }
            emit("-", &text)?;
            let star_cap = interfam_core::exactmath::binom_u64(n as u64 - 1, k as u64 - 1);
            let forced_violation = table
                .rows
                .iter()
                .any(|r| r.m <= star_cap && !r.lex_optimal);
            if forced_violation {
                eprintln!("verification failed: lex segment not optimal inside its intersecting range");
                Ok(2)
            } else {
                Ok(0)
            }
        }
        Command::Classify { input, ell, epsilon } => {
            let family = read_family(&input)?;
            let eps: ExactRatio = epsilon
                .parse()
                .map_err(|e| anyhow!("cannot parse epsilon: {e}"))?;
            let out = classify_structure(&family, ell, &eps)?;
            let name = match out.classification {
                Classification::ContainsFullStars => "contains_ell_full_stars",
                Classification::AlmostFullStars => "ell_plus_1_almost_full",
                Classification::Other => "other",
            };
            let report = json!({
                "classification": name,
                "full_star_centres": out.full_star_centres,
                "cover": out.cover,
                "alpha": out.alpha.to_string(),
                "epsilon": out.epsilon.to_string(),
            });
            emit("-", &pretty(&report))?;
            Ok(0)
        }
        Command::Counterexample { n, m_prime } => {
            let r = star_link_counterexample(n, m_prime)?;
            let report = json!({
                "n": r.n,
                "m_prime": r.m_prime,
                "m": r.m,
                "lex_inter3": r.lex_count.to_string(),
                "rival_inter3": r.rival_count.to_string(),
                "rival_strictly_greater": r.rival_strictly_greater,
            });
            emit("-", &pretty(&report))?;
            Ok(0)
        }
    }
}

fn read_family(path: &str) -> Result<SetFamily> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
    fam::parse_fam(&text).with_context(|| format!("while parsing {path}"))
}

fn emit(path: &str, text: &str) -> Result<()> {
    if path == "-" {
        std::io::stdout().write_all(text.as_bytes())?;
        Ok(())
    } else {
        fs::write(path, text).with_context(|| format!("cannot write {path}"))
    }
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json serialization");
    s.push('\n');
    s
}

fn parse_objective(spec: &str) -> Result<Objective> {
    if spec == "min-disjoint-pairs" {
        return Ok(Objective::MinDisjointPairs);
    }
    if let Some(t) = spec.strip_prefix("inter:") {
        let t: usize = t.parse().map_err(|_| anyhow!("bad subfamily size in {spec:?}"))?;
        return Ok(Objective::InterT(t));
    }
    if let Some(p) = spec.strip_prefix("prob:") {
        let p: ExactRatio = p.parse().map_err(|e| anyhow!("bad probability in {spec:?}: {e}"))?;
        return Ok(Objective::Prob(p));
    }
    bail!("unknown objective {spec:?} (expected inter:T, prob:RATIO, or min-disjoint-pairs)")
}

fn objective_name(objective: &Objective) -> String {
    match objective {
        Objective::InterT(t) => format!("inter:{t}"),
        Objective::Prob(p) => format!("prob:{p}"),
        Objective::MinDisjointPairs => "min-disjoint-pairs".to_string(),
    }
}

fn mc_json(est: &interfam_core::probability::McEstimate) -> Value {
    json!({
        "samples": est.samples,
        "hits": est.hits,
        "estimate": est.estimate,
        "ci_low": est.ci_low,
        "ci_high": est.ci_high,
        "seed": est.seed,
    })
}

fn search_json(report: &SearchReport) -> Value {
    let maximizers: Vec<String> = report.maximizers.iter().map(fam::write_fam).collect();
    let mut out = json!({
        "objective": objective_name(&report.objective),
        "best_value": report.best_value.to_string(),
        "lex_value": report.lex_value.to_string(),
        "colex_value": report.colex_value.to_string(),
        "families_examined": report.families_examined,
        "pruning": report.pruning,
        "maximizers": maximizers,
    });
    if let Some(d) = report.wall_time {
        out["wall_time_secs"] = json!(d.as_secs_f64());
    }
    out
}
