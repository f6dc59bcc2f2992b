//! Command line front end: expression parsing, manifold selection, normal
//! form reduction, verification sweeps and basis listings.
//!
//! Exit codes: 0 on success, 1 on parse/parameter errors, 2 when a
//! verification sweep fails.

mod report;
mod suites;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use report::Report;
use skein::expr::parse_expression;
use skein::lens_4k::{kbsm_class_4k, manifold_params, TwoFiberParams};
use skein::lens_p2::kbsm_class_p2;
use skein::s2xs1::{kbsm_class_s2xs1, phi_modulus, psi_modulus};
use skein::words::Nu1Context;
use skein::SkeinVector;

#[derive(Parser)]
#[command(name = "skein", version, about = "Normal forms in Kauffman bracket skein modules of L(p,2), L(4k,2k+1) and S^2 x S^1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Manifold {
    #[value(name = "lens-p2")]
    LensP2,
    #[value(name = "lens-4k")]
    Lens4k,
    #[value(name = "s2xs1")]
    S2xS1,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce expressions to coordinates in the manifold's normal form
    Reduce {
        #[arg(long, value_enum)]
        manifold: Manifold,
        /// Odd filling parameter of the first singular fiber
        #[arg(long)]
        beta1: i64,
        /// Odd filling parameter of the second fiber (lens-4k only;
        /// for s2xs1 it is implied to be -beta1)
        #[arg(long)]
        beta2: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Read expressions from a UTF-8 file, one per line
        #[arg(long)]
        file: Option<PathBuf>,
        /// The expression, e.g. "x(0)*l - A^2*t(1)"
        expr: Option<String>,
    },
    /// Run identity verification sweeps
    Verify {
        #[arg(long, value_enum)]
        suite: suites::Suite,
        /// Primary sweep half-width; falls back to SKEIN_VERIFY_RANGE, then
        /// to the suite default
        #[arg(long)]
        range: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the basis or generating set of the manifold's skein module
    Basis {
        #[arg(long, value_enum)]
        manifold: Manifold,
        #[arg(long)]
        beta1: i64,
        #[arg(long)]
        beta2: Option<i64>,
        /// Largest phi-index listed for the infinite S^2 x S^1 family
        #[arg(long, default_value_t = 4)]
        max_index: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
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
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Reduce { manifold, beta1, beta2, format, file, expr } => {
            let inputs = gather_inputs(file, expr)?;
            let ctx = Nu1Context::from_beta1(beta1).map_err(|e| e.to_string())?;
            for input in inputs {
                let v = parse_expression(&input, Some(&ctx)).map_err(|e| e.to_string())?;
                let report = reduce_report(manifold, beta1, beta2, &ctx, &v)?;
                emit(&report, format);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, range, format } => {
            let range = range.or_else(|| {
                std::env::var("SKEIN_VERIFY_RANGE")
                    .ok()
                    .and_then(|s| s.parse().ok())
            });
            let results = suites::run_suite(suite, range);
            let failed: usize = results.iter().map(|r| r.failures).sum();
            match format {
                Format::Text => {
                    for r in &results {
                        if r.failures == 0 {
                            println!("PASS {} [{} cases]", r.name, r.cases);
                        } else {
                            println!("FAIL {} [{} of {} failed]", r.name, r.failures, r.cases);
                        }
                    }
                    println!(
                        "suite {:?}: {} checks, {} failed",
                        suite,
                        results.len(),
                        failed
                    );
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct CheckOut<'a> {
                        name: &'a str,
                        cases: usize,
                        failures: usize,
                    }
                    #[derive(Serialize)]
                    struct VerifyOut<'a> {
                        suite: String,
                        checks: Vec<CheckOut<'a>>,
                        ok: bool,
                    }
                    let out = VerifyOut {
                        suite: format!("{suite:?}").to_lowercase(),
                        checks: results
                            .iter()
                            .map(|r| CheckOut {
                                name: r.name,
                                cases: r.cases,
                                failures: r.failures,
                            })
                            .collect(),
                        ok: failed == 0,
                    };
                    println!("{}", serde_json::to_string(&out).unwrap());
                }
            }
            Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Basis { manifold, beta1, beta2, max_index, format } => {
            let report = basis_report(manifold, beta1, beta2, max_index)?;
            emit(&report, format);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn gather_inputs(file: Option<PathBuf>, expr: Option<String>) -> Result<Vec<String>, String> {
    match (file, expr) {
        (Some(_), Some(_)) => Err("give either an expression or --file, not both".into()),
        (None, Some(e)) => Ok(vec![e]),
        (Some(path), None) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let lines: Vec<String> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(String::from)
                .collect();
            if lines.is_empty() {
                return Err(format!("{} contains no expressions", path.display()));
            }
            Ok(lines)
        }
        (None, None) => Err("an expression is required (or use --file)".into()),
    }
}

fn reduce_report(
    manifold: Manifold,
    beta1: i64,
    beta2: Option<i64>,
    ctx: &Nu1Context,
    v: &SkeinVector,
) -> Result<Report, String> {
    match manifold {
        Manifold::LensP2 => {
            if beta2.is_some() {
                return Err("--manifold lens-p2 takes only --beta1".into());
            }
            let class = kbsm_class_p2(v, beta1).map_err(|e| e.to_string())?;
            Ok(Report::for_lens_p2(beta1, ctx.nu1(), &class))
        }
        Manifold::Lens4k => {
            let beta2 = beta2.ok_or("--manifold lens-4k requires --beta2")?;
            if beta1 + beta2 == 0 {
                return Err(
                    "beta1+beta2 = 0 gives S^2 x S^1; use --manifold s2xs1 instead".into(),
                );
            }
            let class = kbsm_class_4k(v, beta1, beta2).map_err(|e| e.to_string())?;
            Ok(Report::for_lens_4k(&class))
        }
        Manifold::S2xS1 => {
            if let Some(b2) = beta2 {
                if b2 != -beta1 {
                    return Err(format!(
                        "s2xs1 needs beta1+beta2 = 0; with --beta1 {beta1} the only choice is --beta2 {}",
                        -beta1
                    ));
                }
            }
            let class = kbsm_class_s2xs1(v, beta1).map_err(|e| e.to_string())?;
            Ok(Report::for_s2xs1(beta1, ctx.nu1(), &class))
        }
    }
}

fn basis_report(
    manifold: Manifold,
    beta1: i64,
    beta2: Option<i64>,
    max_index: usize,
) -> Result<Report, String> {
    match manifold {
        Manifold::LensP2 => {
            if beta2.is_some() {
                return Err("--manifold lens-p2 takes only --beta1".into());
            }
            let basis = skein::lens_p2::basis_p2(beta1).map_err(|e| e.to_string())?;
            let m = manifold_params(beta1, None).map_err(|e| e.to_string())?;
            let mut params = BTreeMap::new();
            params.insert("beta1".into(), beta1);
            params.insert("p".into(), m.p);
            params.insert("q".into(), m.q);
            params.insert("rank".into(), basis.rank as i64);
            params.insert("hp1993_rank".into(), beta1.abs() / 2 + 1);
            Ok(Report {
                manifold: m.name,
                params,
                basis: (0..basis.rank).map(report::lambda_basis_name).collect(),
                coords: Vec::new(),
                torsion: Vec::new(),
            })
        }
        Manifold::Lens4k => {
            let beta2 = beta2.ok_or("--manifold lens-4k requires --beta2")?;
            if beta1 + beta2 == 0 {
                return Err(
                    "beta1+beta2 = 0 gives S^2 x S^1; use --manifold s2xs1 instead".into(),
                );
            }
            let p = TwoFiberParams::from_betas(beta1, beta2).map_err(|e| e.to_string())?;
            let m = manifold_params(beta1, Some(beta2)).map_err(|e| e.to_string())?;
            let (n0, n1) = p.sigma_pp_bounds();
            let mut basis: Vec<String> = (0..=n0).map(report::lambda_basis_name).collect();
            basis.extend((0..=n1).map(report::x_lambda_basis_name));
            let mut params = BTreeMap::new();
            params.insert("beta1".into(), beta1);
            params.insert("beta2".into(), beta2);
            params.insert("k".into(), p.k());
            params.insert("p".into(), m.p);
            params.insert("q".into(), m.q);
            params.insert("rank".into(), basis.len() as i64);
            params.insert("hp1993_rank".into(), (4 * p.k()).abs() / 2 + 1);
            Ok(Report {
                manifold: m.name,
                params,
                basis,
                coords: Vec::new(),
                torsion: Vec::new(),
            })
        }
        Manifold::S2xS1 => {
            let ctx = Nu1Context::from_beta1(beta1).map_err(|e| e.to_string())?;
            if let Some(b2) = beta2 {
                if b2 != -beta1 {
                    return Err("s2xs1 needs beta1+beta2 = 0".into());
                }
            }
            let mut basis = vec!["phi(0) (free)".to_string()];
            let mut torsion = Vec::new();
            for i in 1..=max_index {
                basis.push(format!("phi({i}) mod (1-A^{})", phi_modulus(i)));
                torsion.push(report::TorsionEntry {
                    gen: format!("phi({i})"),
                    modulus: phi_modulus(i),
                    residue: String::new(),
                });
            }
            for i in 1..=max_index {
                basis.push(format!("psi({}) mod (1-A^{})", i - 1, psi_modulus(i)));
                torsion.push(report::TorsionEntry {
                    gen: format!("psi({})", i - 1),
                    modulus: psi_modulus(i),
                    residue: String::new(),
                });
            }
            let mut params = BTreeMap::new();
            params.insert("beta1".into(), beta1);
            params.insert("beta2".into(), -beta1);
            params.insert("nu1".into(), ctx.nu1());
            params.insert("p".into(), 0);
            params.insert("q".into(), 1);
            Ok(Report {
                manifold: "S^2 x S^1 = L(0,1)".into(),
                params,
                basis,
                coords: Vec::new(),
                torsion,
            })
        }
    }
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
}
