use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use selmer_core::gaussian::{factor, GaussianInt};
use selmer_core::graph::build_graph;
use selmer_core::oracle::{check_oracle_chain, hensel_cross_check};
use selmer_core::quartic::symbol_exp;
use selmer_core::survey::{enumerate_b, survey, to_csv, Population};
use selmer_core::{compute_selmer_group, PrimaryFactorization};

mod expr;

#[derive(Parser)]
#[command(name = "selmer", version, about = "φ-Selmer groups of y² = x³ + bx over ℚ(i)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a Gaussian integer into i^s (1+i)^t and primary primes.
    Factor {
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Quartic residue symbol [a/p] for a primary prime p.
    Symbol {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// The weighted graph on the odd primes of b.
    Graph {
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum, default_value = "text")]
        format: GraphFormat,
    },
    /// Compute the Selmer group of y² = x³ + bx.
    Selmer {
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        json: bool,
        /// Use the isogenous curve with coefficient −4b.
        #[arg(long)]
        dual: bool,
    },
    /// Selmer-size distribution over curves ordered by norm.
    Survey {
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        max_norm: Option<u64>,
        #[arg(long, default_value_t = 500)]
        bins: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "all")]
        population: Population,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Cross-check the algorithm against the independent oracles.
    Verify {
        #[arg(long)]
        max_norm: u64,
        /// Also compare the local point search with the symbol verdicts.
        #[arg(long)]
        hensel: bool,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Mismatch,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_factored(s: &str) -> Result<PrimaryFactorization, Failure> {
    let value = expr::parse(s)?;
    Ok(factor(value)?)
}

fn describe_factorization(f: &PrimaryFactorization) -> String {
    let mut parts = Vec::new();
    if f.s != 0 {
        parts.push(format!("i^{}", f.s));
    }
    if f.t != 0 {
        parts.push(format!("(1+i)^{}", f.t));
    }
    for &(p, e) in &f.odd_part {
        parts.push(if e == 1 { format!("({p})") } else { format!("({p})^{e}") });
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" * ")
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Factor { g } => {
            let f = parse_factored(&g)?;
            println!("{} = {}", f.recompose(), describe_factorization(&f));
        }
        Command::Symbol { a, p } => {
            let a = expr::parse(&a)?;
            let p: GaussianInt = expr::parse(&p)?;
            let v = symbol_exp(a, p)?;
            println!("[{a}/{p}] = {} (i^{})", v.as_gaussian(), v.log);
        }
        Command::Graph { b, format } => {
            let graph = build_graph(&parse_factored(&b)?)?;
            match format {
                GraphFormat::Json => println!("{}", serde_json::to_string_pretty(&graph.to_json())?),
                GraphFormat::Dot => print!("{}", graph.to_dot()),
                GraphFormat::Text => {
                    for (v, vx) in graph.vertices.iter().enumerate() {
                        println!("{:>12} {} e={} m={} n={}", vx.prime.to_string(), vx.kind(), vx.exponent, vx.m4(), vx.n4());
                        let row: Vec<String> = graph.weights[v].iter().map(u8::to_string).collect();
                        println!("             weights [{}]", row.join(" "));
                    }
                }
            }
        }
        Command::Selmer { b, json, dual } => {
            let mut f = parse_factored(&b)?;
            if dual {
                let minus_four = GaussianInt::from_int(-4);
                f = factor(f.recompose() * minus_four)?.fourth_power_free_part();
            }
            let group = compute_selmer_group(&f)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&group.to_json())?);
            } else {
                print!("{}", group.report());
            }
        }
        Command::Survey { count, max_norm, bins, out, population, jobs } => {
            if count.is_none() && max_norm.is_none() {
                return Err(Failure::Usage("survey needs --count or --max-norm".into()));
            }
            if bins == 0 {
                return Err(Failure::Usage("--bins must be positive".into()));
            }
            if let Some(j) = jobs {
                rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
            }
            let curves = enumerate_b(max_norm, count, population);
            let rows = survey(&curves, bins)?;
            let csv = to_csv(&rows);
            match out {
                Some(path) => std::fs::write(path, csv)?,
                None => print!("{csv}"),
            }
            if let Some(last) = rows.last() {
                eprintln!("{} curves ({population}), norm up to {}", last.bin_end, last.max_norm);
                for (size, n) in &last.counts {
                    eprintln!("  #S = {size:>3}: {n:>6} ({:.5})", *n as f64 / last.bin_end as f64);
                }
            }
        }
        Command::Verify { max_norm, hensel, samples, seed } => {
            let curves = enumerate_b(Some(max_norm), None, Population::All);
            let report = check_oracle_chain(&curves)?;
            println!(
                "oracle chain: {} curves, {} divisor classes, {} mismatches",
                report.curves,
                report.divisors,
                report.mismatches.len()
            );
            for m in &report.mismatches {
                println!("  MISMATCH b={} d={} {}", m.b, m.d.as_deref().unwrap_or("-"), m.what);
            }
            let mut failed = !report.mismatches.is_empty();
            if hensel {
                let records = hensel_cross_check(&curves, samples, seed)?;
                let bad: Vec<_> = records.iter().filter(|r| !r.agrees()).collect();
                println!("hensel cross-check: {} samples, {} disagreements", records.len(), bad.len());
                for r in bad {
                    println!("  COUNTEREXAMPLE b={} d={} place={} search={} symbols={}", r.b, r.d, r.place, r.search, r.symbols);
                }
                let plus_bad = records.iter().filter(|r| r.symbols_plus.is_some_and(|p| p != r.search)).count();
                println!("  alternative 1+i exponent convention disagrees on {plus_bad} samples");
                failed |= records.iter().any(|r| !r.agrees());
            }
            println!("{}", if failed { "FAIL" } else { "PASS" });
            if failed {
                return Err(Failure::Mismatch);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
