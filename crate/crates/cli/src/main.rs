use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nbtower::artin_schreier::{build_tower_with, TowerOptions, DEFAULT_MAX_DEGREE};
use nbtower::bench::run_bench;
use nbtower::file::{Rebuilt, TowerFileV1, VerifyOptions};
use nbtower::kummer::{build_kummer, conj_sum, kummer_params, kummer_table};
use nbtower::tables::{sparsity, MultTable};
use nbtower::{Error, Oracle, PrimeModulus};

/// Normal-basis towers over finite fields.
#[derive(Parser)]
#[command(name = "nbtower", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an Artin-Schreier tower and save it.
    Build {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        levels: usize,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        b: i64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build one Kummer-type level and save it.
    Kummer {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        l: u32,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        b: i64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-check every invariant of a saved file.
    Verify {
        input: PathBuf,
        /// Also check all m² products of every table.
        #[arg(long)]
        deep: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compare normal-basis and polynomial-basis throughput.
    Bench {
        input: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        ops: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ConstructionFailure(_) | Error::NormalityFailure(_) | Error::Reducible | Error::ZeroTrace => 1,
            _ => 2,
        };
        let message = match e {
            Error::NotPrime(p) => format!("p must be prime ({p} is not prime)"),
            e => e.to_string(),
        };
        Failure { code, message }
    }
}

fn max_degree() -> Result<usize, Failure> {
    match std::env::var("NBTOWER_MAX_DEGREE") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("NBTOWER_MAX_DEGREE must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn write_file(path: &Path, f: &TowerFileV1) -> Result<(), Failure> {
    fs::write(path, f.to_json()).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<TowerFileV1, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(TowerFileV1::from_json(&text)?)
}

fn print_sparsity(name: &str, table: &MultTable) {
    let s = sparsity(table);
    let ratio = s
        .prime_field_ratio()
        .map_or("n/a".to_string(), |r| format!("{}/{} ({:.0}%)", s.prime_field_coefficients, s.total_coefficients, 100.0 * r));
    println!(
        "  {name}: m = {}, nonzeros {}, two-term rows {}, max row weight {}, constants {}, off-square coefficients in F_p: {}, prime-field coefficients {}",
        table.m,
        s.nonzero_structure_constants,
        s.rows_with_two_terms,
        s.max_row_weight,
        s.constant_terms_used,
        if s.coefficients_in_prime_field { "yes" } else { "no" },
        ratio,
    );
}

fn cmd_build(p: u64, levels: usize, b: i64, out: &Path) -> Result<(), Failure> {
    let p = PrimeModulus::new(p)?;
    let max = max_degree()?;
    let opts = TowerOptions {
        max_degree: max,
        ..TowerOptions::default()
    };
    let t = build_tower_with(p, levels, p.scalar_i64(b), &opts)?;
    for (level, tables) in t.levels.iter().zip(&t.tables) {
        println!(
            "level {}: degree {} (relative {} over degree {}), h = {}",
            level.index,
            level.degree(),
            level.p().get(),
            level.n(),
            level.h.value()
        );
        print_sparsity("gamma", &tables.gamma);
        print_sparsity("delta", &tables.delta);
    }
    write_file(out, &TowerFileV1::from_tower(&t)?)?;
    println!("degrees {}", t.degrees().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","));
    println!("wrote {}", out.display());
    Ok(())
}

fn cmd_kummer(p: u64, q: u64, l: u32, s: u32, b: i64, out: &Path) -> Result<(), Failure> {
    let max = max_degree()?;
    let params = kummer_params(p, q, l)?.with_s(s)?;
    let degree = params.degree() as u128 * l as u128;
    if degree > max as u128 {
        return Err(Error::ScaleExceeded { degree, bound: max }.into());
    }
    let level = build_kummer(p, q, l, s, b, &Oracle::new(max))?;
    let table = kummer_table(&level)?;
    println!(
        "kummer level: degree {} (relative {} over F_{}^{}), r = {}, xi = {}, zeta = {}, b = {}",
        level.ctx.abs_degree(),
        level.m(),
        p,
        l,
        params.r,
        level.xi,
        level.zeta,
        level.b
    );
    println!("  conjugate sum of gamma: {}", conj_sum(&level)?);
    print_sparsity("gamma", &table);
    write_file(out, &TowerFileV1::from_kummer(&level)?)?;
    println!("wrote {}", out.display());
    Ok(())
}

fn cmd_verify(input: &Path, deep: bool, json: bool) -> Result<(), Failure> {
    let f = read_file(input)?;
    let opts = VerifyOptions {
        deep,
        oracle: Oracle::new(max_degree()?),
    };
    let report = f.verify(&opts)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print!("{report}");
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: format!("{} of {} checks failed", report.failures.len(), report.checks_run),
        })
    }
}

fn cmd_bench(input: &Path, ops: usize, seed: u64, json: bool) -> Result<(), Failure> {
    let f = read_file(input)?;
    let oracle = Oracle::new(max_degree()?);
    let table = match f.rebuild(&oracle)? {
        Rebuilt::Tower(t) => t.tables.last().expect("towers are nonempty").delta.clone(),
        Rebuilt::Kummer(_, table) => table,
    };
    let report = run_bench(&table, ops, seed)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print!("{report}");
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: format!("{} mismatching inputs", report.mismatches),
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Build { p, levels, b, out } => cmd_build(*p, *levels, *b, out),
        Command::Kummer { p, q, l, s, b, out } => cmd_kummer(*p, *q, *l, *s, *b, out),
        Command::Verify { input, deep, json } => cmd_verify(input, *deep, *json),
        Command::Bench { input, ops, seed, json } => cmd_bench(input, *ops, *seed, *json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
