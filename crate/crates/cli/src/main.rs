use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use elliptic_schubert::expr::{default_point, eval_breakdown, eval_expr, Expr, PointAssignment};
use elliptic_schubert::lie::parabolic::levi_from_blocks;
use elliptic_schubert::lie::{Family, ParabolicSetup};
use elliptic_schubert::render::{render_table, Format};
use elliptic_schubert::schubert::{ClassTable, LambdaSymbol, Method};
use elliptic_schubert::theta::EvalConfig;
use elliptic_schubert::verify::{run_suite, Suite, VerifyOptions};
use elliptic_schubert::Error;

/// Elliptic classes of Schubert varieties: tables, verification suites and evaluation.
#[derive(Parser)]
#[command(name = "ellschub", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the full table of restrictions E(X_w)_v.
    Table {
        #[command(flatten)]
        setup: SetupArgs,
        #[arg(long, default_value = "recursion")]
        method: Method,
        /// text, latex, csv or json
        #[arg(long, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        /// two-method, pushforward, weightfn, rmatrix, initial, normalization, triangularity,
        /// transformation, positivity, combinatorial, kernel or gkm
        suite: Suite,
        #[command(flatten)]
        setup: SetupArgs,
        #[command(flatten)]
        eval: EvalArgs,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate an expression file at a point file (or at the seeded default point).
    Eval {
        /// Expression as JSON or in the textual syntax.
        expr: PathBuf,
        /// JSON map from variable to [re, im] of its logarithm.
        point: Option<PathBuf>,
        #[command(flatten)]
        eval: EvalArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also print every term and factor.
        #[arg(long)]
        breakdown: bool,
        /// text or json
        #[arg(long, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SetupArgs {
    #[arg(long, default_value = "A")]
    family: Family,
    #[arg(long)]
    rank: Option<usize>,
    /// Type A only: GL_n.
    #[arg(long)]
    n: Option<usize>,
    /// Type A block sizes, e.g. 2,2.
    #[arg(long, value_delimiter = ',')]
    blocks: Option<Vec<usize>>,
    /// Levi simple roots, e.g. 1,3, or "none" for the Borel subgroup.
    #[arg(long)]
    parabolic: Option<String>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, default_value_t = 0.1)]
    q: f64,
    #[arg(long, default_value_t = 40)]
    trunc: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

impl EvalArgs {
    fn config(&self) -> Result<EvalConfig, Error> {
        EvalConfig::new(Complex64::new(self.q, 0.0), self.trunc, self.tol)
    }
}

fn parse_levi(s: &str) -> Result<Vec<usize>, Error> {
    if s == "none" || s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad simple root index '{x}'")))
        })
        .collect()
}

impl SetupArgs {
    fn build(&self) -> Result<ParabolicSetup, Error> {
        let levi = self.parabolic.as_deref().map(parse_levi).transpose()?;
        if let Some(k) = &self.blocks {
            if self.family != Family::A {
                return Err(Error::Config(
                    "--blocks is only valid with --family A".into(),
                ));
            }
            let n: usize = k.iter().sum();
            if self.n.is_some_and(|x| x != n) || self.rank.is_some_and(|r| r + 1 != n) {
                return Err(Error::Config(format!(
                    "--blocks {k:?} does not match --n/--rank"
                )));
            }
            if let Some(l) = levi {
                let mut l = l;
                l.sort_unstable();
                if l != levi_from_blocks(k)? {
                    return Err(Error::Config("--parabolic disagrees with --blocks".into()));
                }
            }
            return ParabolicSetup::type_a(k);
        }
        let rank = match (self.family, self.rank, self.n) {
            (Family::A, Some(r), Some(n)) if r + 1 != n => {
                return Err(Error::Config(format!("--rank {r} and --n {n} disagree")))
            }
            (Family::A, _, Some(n)) => n.checked_sub(1).filter(|&r| r > 0),
            (Family::C, _, Some(_)) => {
                return Err(Error::Config("--n is only valid with --family A".into()))
            }
            (_, r, None) => r,
        }
        .ok_or_else(|| Error::Config("give --rank, --n or --blocks".into()))?;
        ParabolicSetup::new(self.family, rank, &levi.unwrap_or_default())
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(p: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(p).map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))
}

fn parse_expr_file(src: &str) -> Result<Expr, Error> {
    if src.trim_start().starts_with('{') {
        serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))
    } else {
        src.trim().parse()
    }
}

fn fmt_complex(z: Complex64) -> String {
    format!("{:.17e} {:+.17e}i", z.re, z.im)
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Table {
            setup,
            method,
            format,
            out,
        } => {
            let s = setup.build()?;
            let table = ClassTable::new(&s, &LambdaSymbol::generic(&s), method)?;
            emit(&out, &render_table(&table, format)?)?;
            Ok(true)
        }
        Command::Verify {
            suite,
            setup,
            eval,
            samples,
            seed,
            out,
        } => {
            let s = setup.build()?;
            let opts = VerifyOptions {
                cfg: eval.config()?,
                samples,
                seed,
            };
            let report = run_suite(suite, &s, &opts)?;
            emit(&out, &(report.to_json() + "\n"))?;
            eprintln!(
                "{}: {} cases, {} failures, max deviation {:.3e}",
                report.suite, report.cases, report.failures, report.max_deviation
            );
            Ok(report.passed())
        }
        Command::Eval {
            expr,
            point,
            eval,
            seed,
            breakdown,
            format,
            out,
        } => {
            let cfg = eval.config()?;
            let e = parse_expr_file(&read(&expr)?)?;
            let pt = match &point {
                Some(p) => PointAssignment::from_json(&read(p)?)?,
                None => default_point(&e, &cfg, seed)?,
            };
            let value = eval_expr(&e, &pt, &cfg)?;
            let parts = if breakdown {
                eval_breakdown(&e, &pt, &cfg)?
            } else {
                vec![]
            };
            let text = match format {
                Format::Json => {
                    let terms: Vec<serde_json::Value> = parts
                        .iter()
                        .map(|(t, v, fs)| {
                            let factors: Vec<serde_json::Value> = fs
                                .iter()
                                .map(|(f, x)| serde_json::json!({"factor": f, "value": [x.re, x.im]}))
                                .collect();
                            serde_json::json!({"term": t, "value": [v.re, v.im], "factors": factors})
                        })
                        .collect();
                    let mut doc = serde_json::json!({"value": [value.re, value.im]});
                    if breakdown {
                        doc["point"] = serde_json::from_str(&pt.to_json()).expect("point json");
                        doc["terms"] = terms.into();
                    }
                    serde_json::to_string_pretty(&doc).expect("json") + "\n"
                }
                Format::Text => {
                    let mut s = format!("{}\n", fmt_complex(value));
                    for (t, v, fs) in &parts {
                        s.push_str(&format!("  {t} = {}\n", fmt_complex(*v)));
                        for (f, x) in fs {
                            s.push_str(&format!("    {f} = {}\n", fmt_complex(*x)));
                        }
                    }
                    s
                }
                other => {
                    return Err(Error::Config(format!(
                        "eval does not support --format {other}"
                    )))
                }
            };
            emit(&out, &text)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ (Error::Config(_) | Error::Parse(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
