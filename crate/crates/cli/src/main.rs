//! `subcover`: covers and partitions of F_q^n from the command line.
//!
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 1 invalid input, 2 a verification found a violation.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use subcover_core::covers::{f1_ceiling_of_ratio, FiniteSupportVector};
use subcover_core::json::{
    cover_from_str, cover_to_value, partition_from_str, partition_to_value, rational_index_to_value,
};
use subcover_core::scalar::{format_rational, parse_rational};
use subcover_core::{
    countable_cover_index, cover_finite, f1_cover_number, f1_ratio_at_one, min_cover_size,
    mixed_partition, nu, plan_cover, projective_assign, spread_partition, verify_cover,
    verify_partition, DimKind, Field, FieldKind, Limits, SpaceSpec,
};

#[derive(Parser)]
#[command(
    name = "subcover",
    version,
    about = "Covers of F_q^n by subspaces of fixed codimension"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArgs {
    /// Field characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree; the field has p^m elements.
    #[arg(long, default_value_t = 1)]
    m: usize,
}

impl FieldArgs {
    fn field(&self) -> anyhow::Result<Field> {
        Ok(Field::new(self.p, self.m)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Minimal index set of a cover by codimension-k subspaces.
    Nu {
        #[arg(long, required_unless_present = "infinite_field")]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, required_unless_present = "infinite_dim")]
        n: Option<usize>,
        #[arg(long)]
        k: usize,
        /// Use an infinite field instead of GF(p^m).
        #[arg(long)]
        infinite_field: bool,
        /// Use an infinite-dimensional space.
        #[arg(long)]
        infinite_dim: bool,
        #[arg(long)]
        json: bool,
    },
    /// Build a minimal cover of F_q^n by codimension-k subspaces.
    Cover {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Check every vector is covered.
        #[arg(long)]
        verify: bool,
        /// Print the construction steps and predicted count only.
        #[arg(long, conflicts_with = "verify")]
        plan_only: bool,
    },
    /// Build a spread or mixed partition of F_q^n.
    Partition {
        kind: PartitionArg,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Exhaustively check a cover or partition JSON document.
    Verify {
        #[arg(
            long,
            conflicts_with = "partition",
            required_unless_present = "partition"
        )]
        cover: Option<PathBuf>,
        #[arg(long)]
        partition: Option<PathBuf>,
    },
    /// Brute-force searches.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Assign a rational vector to a member of the cover indexed by P^k.
    Assign {
        #[arg(long)]
        k: usize,
        /// Comma-separated rationals, e.g. "2,3,-1/2".
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        /// Comma-separated designated coordinates; defaults to 0..=k.
        #[arg(long)]
        positions: Option<String>,
    },
    /// Filtration index of a finite-support vector.
    Countable {
        /// Comma-separated index:coefficient pairs, e.g. "1:3,7:1/2".
        #[arg(long, allow_hyphen_values = true)]
        support: String,
    },
    /// The q -> 1 limit of the cover number.
    Limit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exact minimum cover size by branch and bound.
    Min {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Search for covers of at most this size first.
        #[arg(long)]
        hint: Option<usize>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PartitionArg {
    Spread,
    Mixed,
}

enum Outcome {
    Ok(String),
    Violation(String),
}

fn limits() -> anyhow::Result<Limits> {
    match std::env::var("SUBCOVER_MAX_Q_POW") {
        Ok(s) => {
            let bound = s
                .trim()
                .parse()
                .with_context(|| format!("SUBCOVER_MAX_Q_POW is not an integer: {s:?}"))?;
            Ok(Limits::default().with_max_q_pow(bound))
        }
        Err(_) => Ok(Limits::default()),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("plain data")
}

fn parse_list<T>(s: &str, item: impl Fn(&str) -> anyhow::Result<T>) -> anyhow::Result<Vec<T>> {
    s.split(',').map(|t| item(t.trim())).collect()
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let limits = limits()?;
    Ok(match cli.command {
        Command::Nu {
            p,
            m,
            n,
            k,
            infinite_field,
            infinite_dim,
            json,
        } => {
            let field = match (infinite_field, p) {
                (true, _) => FieldKind::Infinite { label: "F".into() },
                (false, Some(p)) => FieldKind::Finite { p, m },
                (false, None) => bail!("--p is required for a finite field"),
            };
            let dim = match (infinite_dim, n) {
                (true, _) => DimKind::Infinite,
                (false, Some(n)) => DimKind::Finite(n),
                (false, None) => bail!("--n is required for a finite dimension"),
            };
            let c = nu(&SpaceSpec { field, dim }, k)?;
            if json {
                Outcome::Ok(c.to_json().to_string())
            } else {
                Outcome::Ok(c.to_string())
            }
        }
        Command::Cover {
            field,
            n,
            k,
            verify,
            plan_only,
        } => {
            let f = field.field()?;
            if plan_only {
                let plan = plan_cover(n, k)?;
                let q = BigUint::from(f.q());
                return Ok(Outcome::Ok(pretty(&json!({
                    "n": n,
                    "k": k,
                    "q": f.q(),
                    "predicted_count": plan.predicted_count(&q).to_string(),
                    "provenance": plan.provenance,
                }))));
            }
            let cover = cover_finite(&f, n, k, &limits)?;
            if !verify {
                return Ok(Outcome::Ok(pretty(&cover_to_value(&cover))));
            }
            let report = verify_cover(&cover, &limits)?;
            let text = pretty(&json!({"cover": cover_to_value(&cover), "verification": report}));
            if report.ok {
                Outcome::Ok(text)
            } else {
                Outcome::Violation(text)
            }
        }
        Command::Partition {
            kind,
            field,
            n,
            d,
            verify,
        } => {
            let f = field.field()?;
            let part = match kind {
                PartitionArg::Spread => spread_partition(&f, n, d, &limits)?,
                PartitionArg::Mixed => mixed_partition(&f, n, d, &limits)?,
            };
            if !verify {
                return Ok(Outcome::Ok(pretty(&partition_to_value(&part))));
            }
            let report = verify_partition(&part, &limits)?;
            let text =
                pretty(&json!({"partition": partition_to_value(&part), "verification": report}));
            if report.ok {
                Outcome::Ok(text)
            } else {
                Outcome::Violation(text)
            }
        }
        Command::Verify { cover, partition } => {
            let (path, is_cover) = match (cover, partition) {
                (Some(c), _) => (c, true),
                (None, Some(p)) => (p, false),
                (None, None) => bail!("one of --cover or --partition is required"),
            };
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("reading {}", path.display()))?;
            let (ok, report) = if is_cover {
                let r = verify_cover(&cover_from_str(&text)?, &limits)?;
                (r.ok, serde_json::to_value(&r)?)
            } else {
                let r = verify_partition(&partition_from_str(&text)?, &limits)?;
                (r.ok, serde_json::to_value(&r)?)
            };
            if ok {
                Outcome::Ok(pretty(&report))
            } else {
                Outcome::Violation(pretty(&report))
            }
        }
        Command::Oracle {
            command:
                OracleCommand::Min {
                    field,
                    n,
                    k,
                    hint,
                    threads,
                },
        } => {
            let f = field.field()?;
            let r = min_cover_size(&f, n, k, hint, threads.max(1), &limits)?;
            let witness: Vec<Vec<Vec<u32>>> =
                r.witness.iter().map(|s| s.basis().to_rows()).collect();
            Outcome::Ok(pretty(&json!({
                "q": f.q(),
                "n": n,
                "k": k,
                "min": r.size,
                "counting_bound": r.counting_bound,
                "witness": witness,
            })))
        }
        Command::Assign {
            k,
            vector,
            positions,
        } => {
            let v = parse_list(&vector, |t| Ok(parse_rational(t)?))?;
            let positions = match positions {
                Some(s) => parse_list(&s, |t| t.parse::<usize>().context("bad position"))?,
                None => (0..=k).collect(),
            };
            if positions.len() != k + 1 {
                bail!(
                    "expected k + 1 = {} positions, got {}",
                    k + 1,
                    positions.len()
                );
            }
            let a = projective_assign(&v, &positions)?;
            let fmt = |xs: &[_]| xs.iter().map(format_rational).collect::<Vec<_>>();
            Outcome::Ok(pretty(&json!({
                "index": rational_index_to_value(&a.index),
                "scale": format_rational(&a.witness.scale),
                "generator": fmt(&a.witness.generator),
                "residual": fmt(&a.witness.residual),
            })))
        }
        Command::Countable { support } => {
            let entries = if support.trim().is_empty() {
                Vec::new()
            } else {
                parse_list(&support, |t| {
                    let (i, c) = t.split_once(':').context("expected index:coefficient")?;
                    Ok((i.trim().parse::<usize>()?, parse_rational(c.trim())?))
                })?
            };
            let v = FiniteSupportVector::new(entries)?;
            Outcome::Ok(countable_cover_index(&v).to_string())
        }
        Command::Limit { n, k } => Outcome::Ok(pretty(&json!({
            "n": n,
            "k": k,
            "ratio_at_one": format_rational(&f1_ratio_at_one(n, k)?),
            "ceiling": f1_ceiling_of_ratio(n, k)?.to_string(),
            "f1_cover_number": f1_cover_number(n, k)?,
        }))),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Ok(out)) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Violation(out)) => {
            println!("{out}");
            eprintln!("verification failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
