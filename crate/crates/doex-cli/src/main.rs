//! Command-line surface: verify a family or a user presentation end to end,
//! run the whole catalog suite, inspect duals and normal elements, and drive
//! the finite-field enumerator.
//!
//! Exit codes are part of the contract: 0 all checks pass, 1 at least one
//! check failed, 2 usage or parse error.

mod report;

use clap::{Parser, Subcommand};
use doex::catalog::{self, Duality};
use doex::dext;
use doex::diagnostics;
use doex::enumerate;
use doex::ncgb;
use doex::scalar::FieldSpec;
use report::{family_params, print_human, verify_data, VerifyReport};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "doex",
    version,
    about = "Exact toolkit for graded double Ore extensions of the quantum and Jordan planes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a catalog family (a letter A-Z) or a .de presentation file
    Verify {
        /// Family letter or path to a .de file
        #[arg(required_unless_present = "sigma_file")]
        target: Option<String>,
        /// Path to a .de file with the coefficient matrix and parameters
        #[arg(long, conflicts_with = "target")]
        sigma_file: Option<std::path::PathBuf>,
        /// Parameter overrides, e.g. `f=2,g=3,h=1`
        #[arg(long)]
        params: Option<String>,
        /// Field spec, e.g. `Q`, `Q(a^2+1)`, `GF(11)`
        #[arg(long)]
        field: Option<String>,
        /// Completion degree bound (default: DOEX_DEGREE_BOUND or 8)
        #[arg(long = "N")]
        degree_bound: Option<usize>,
        /// Emit the report as JSON on standard output
        #[arg(long)]
        json: bool,
    },
    /// Verify every family at every default specialization plus every
    /// duality witness; prints one row per family
    Suite {
        /// Restrict to a comma-separated list of families, e.g. `A,B,C`
        #[arg(long)]
        only: Option<String>,
        #[arg(long = "N")]
        degree_bound: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// One line per family: parameter pairs, constraints, duality partner
    ListFamilies,
    /// Print the opposite-ring presentation of a family instantiation
    Dual {
        family: char,
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        field: Option<String>,
    },
    /// Verify the stored normalizing-element claims of a family
    Normals {
        family: char,
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        field: Option<String>,
        #[arg(long = "N")]
        degree_bound: Option<usize>,
    },
    /// Graded dimensions of the quadratic dual of a family or file target
    DualDims {
        target: String,
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        field: Option<String>,
        #[arg(long = "N")]
        degree_bound: Option<usize>,
    },
    /// Enumerate constraint-system solutions over GF(q) for fixed P, Q
    Enumerate {
        /// Prime modulus
        #[arg(long)]
        q: u64,
        /// y-side parameter pair, e.g. `2,0`
        #[arg(long = "P")]
        p_pair: String,
        /// x-side parameter pair, e.g. `1,0`
        #[arg(long = "Q")]
        q_pair: String,
        /// Worker count (default: available parallelism)
        #[arg(long)]
        workers: Option<usize>,
        /// Write solutions to this file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn default_degree_bound(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("DOEX_DEGREE_BOUND")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(doex::DEFAULT_DEGREE_BOUND)
}

fn parse_param_overrides(params: &Option<String>) -> Vec<(String, String)> {
    params
        .as_deref()
        .unwrap_or("")
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .filter_map(|pair| {
            pair.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

enum CliError {
    Usage(String),
    CheckFailed,
}

impl CliError {
    fn code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::CheckFailed => ExitCode::from(1),
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let CliError::Usage(msg) = &e {
                eprintln!("error: {msg}");
            }
            e.code()
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Verify {
            target,
            sigma_file,
            params,
            field,
            degree_bound,
            json,
        } => {
            let n = default_degree_bound(degree_bound);
            let target = match (target, sigma_file) {
                (Some(t), None) => t,
                (None, Some(path)) => path.to_string_lossy().into_owned(),
                _ => return Err(usage("give a family letter or --sigma-file")),
            };
            let report = verify_target(&target, &params, &field, n)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                print_human(&report);
            }
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::CheckFailed)
            }
        }
        Command::Suite {
            only,
            degree_bound,
            json,
        } => cmd_suite(only, default_degree_bound(degree_bound), json),
        Command::ListFamilies => {
            for &name in &catalog::FAMILY_NAMES {
                let info = catalog::family_info(name).expect("full table");
                let duality = match info.duality {
                    Duality::SelfDual => "selfdual".to_string(),
                    Duality::Partner(p) if catalog::has_duality_claim(name) => {
                        format!("dual to {p}")
                    }
                    Duality::Partner(_) => "-".to_string(),
                };
                println!(
                    "{name}: P={:<24} Q={:<24} params={:<12} constraints=[{}] field={} {}",
                    info.p_display,
                    info.q_display,
                    format!("[{}]", info.params.join(", ")),
                    info.constraints.join(", "),
                    info.field_hint,
                    duality,
                );
            }
            Ok(())
        }
        Command::Dual {
            family,
            params,
            field,
        } => {
            let overrides = parse_param_overrides(&params);
            let (field, pa) = family_params(family, &overrides, field.as_deref()).map_err(usage)?;
            let d = catalog::instantiate(family, &pa, &field).map_err(usage)?;
            let dual = dext::dual_data(&d).map_err(usage)?;
            print!("{}", dext::write_de(&dual));
            if catalog::canonical_duality_side(family) == Some(family) {
                match catalog::duality_certificate(family, &pa, &field) {
                    Ok(cert) => println!(
                        "# certified equivalent to family {} at {}",
                        cert.partner,
                        cert.partner_params
                            .iter()
                            .map(|(k, v)| format!("{k}={v}"))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return Err(CliError::CheckFailed);
                    }
                }
            } else if let Some(side) = catalog::canonical_duality_side(family) {
                println!("# duality certified from the `{side}` side of the pair");
            }
            Ok(())
        }
        Command::Normals {
            family,
            params,
            field,
            degree_bound,
        } => {
            let n = default_degree_bound(degree_bound);
            let overrides = parse_param_overrides(&params);
            let (field, pa) = family_params(family, &overrides, field.as_deref()).map_err(usage)?;
            let d = catalog::instantiate(family, &pa, &field).map_err(usage)?;
            let rels = dext::synth_relations(&d);
            let rs = ncgb::complete(&rels, n, &field).map_err(usage)?;
            let report =
                diagnostics::verify_family_normals(family, &pa, &field, &rs).map_err(usage)?;
            if report.claims.is_empty() {
                println!("family {family}: no stored normal-element claims");
                return Ok(());
            }
            for (label, ok) in &report.claims {
                println!("{label}: {}", if *ok { "holds" } else { "FAILED" });
            }
            if report.all_hold {
                Ok(())
            } else {
                Err(CliError::CheckFailed)
            }
        }
        Command::DualDims {
            target,
            params,
            field,
            degree_bound,
        } => {
            let n = default_degree_bound(degree_bound);
            let relations = if target.len() == 1 {
                let family = target.chars().next().expect("nonempty");
                let overrides = parse_param_overrides(&params);
                let (field, pa) =
                    family_params(family, &overrides, field.as_deref()).map_err(usage)?;
                let d = catalog::instantiate(family, &pa, &field).map_err(usage)?;
                dext::synth_relations(&d)
            } else {
                let text = std::fs::read_to_string(&target).map_err(usage)?;
                let d = dext::parse_de(&text).map_err(usage)?;
                dext::synth_relations(&d)
            };
            let f = relations
                .first()
                .and_then(|r| r.terms().next().map(|(_, c)| c.field()))
                .unwrap_or(FieldSpec::Rationals);
            let report = diagnostics::koszul_dual_dims(&relations, n, &f, ncgb::full_alphabet())
                .map_err(usage)?;
            println!(
                "dual dims: ({})",
                report
                    .dual_dims
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            println!(
                "euler identity: {}",
                if report.euler_identity_holds { "holds" } else { "FAILED" }
            );
            Ok(())
        }
        Command::Enumerate {
            q,
            p_pair,
            q_pair,
            workers,
            out,
        } => {
            let parse_pair = |text: &str| -> Result<(u64, u64), CliError> {
                let (a, b) = text
                    .split_once(',')
                    .ok_or_else(|| usage(format!("expected `a,b`, got `{text}`")))?;
                Ok((
                    a.trim().parse().map_err(usage)?,
                    b.trim().parse().map_err(usage)?,
                ))
            };
            let p = parse_pair(&p_pair)?;
            let qq = parse_pair(&q_pair)?;
            let workers = workers.unwrap_or_else(|| {
                std::thread::available_parallelism().map_or(1, |n| n.get())
            });
            let solutions = enumerate::enumerate_csolutions(q, p, qq, workers).map_err(usage)?;
            let text = enumerate::solutions_to_text(&solutions);
            match out {
                Some(path) => std::fs::write(&path, text).map_err(usage)?,
                None => print!("{text}"),
            }
            let summary = enumerate::bucket_solutions(&solutions, q, p, qq);
            println!("{summary}");
            Ok(())
        }
    }
}

fn verify_target(
    target: &str,
    params: &Option<String>,
    field: &Option<String>,
    n: usize,
) -> Result<VerifyReport, CliError> {
    if target.len() == 1 {
        let family = target.chars().next().expect("nonempty");
        catalog::family_info(family).map_err(usage)?;
        let overrides = parse_param_overrides(params);
        let (field, pa) = family_params(family, &overrides, field.as_deref()).map_err(usage)?;
        let d = catalog::instantiate(family, &pa, &field).map_err(usage)?;
        Ok(verify_data(target, &d, Some((family, &pa)), n))
    } else {
        let text = std::fs::read_to_string(target).map_err(usage)?;
        let d = dext::parse_de(&text).map_err(usage)?;
        Ok(verify_data(target, &d, None, n))
    }
}

struct SuiteRow {
    family: char,
    runs: Vec<VerifyReport>,
}

fn cmd_suite(only: Option<String>, n: usize, json: bool) -> Result<(), CliError> {
    let selected: Vec<char> = match &only {
        Some(list) => {
            let mut out = Vec::new();
            for part in list.split(',') {
                let part = part.trim();
                let mut chars = part.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => {
                        catalog::family_info(c).map_err(usage)?;
                        out.push(c);
                    }
                    _ => return Err(usage(format!("bad family `{part}` in --only"))),
                }
            }
            out
        }
        None => catalog::FAMILY_NAMES.to_vec(),
    };

    let jobs: Vec<(char, FieldSpec, catalog::Params)> = selected
        .iter()
        .flat_map(|&name| {
            catalog::default_specializations(name)
                .expect("known family")
                .into_iter()
                .map(move |(field, pa)| (name, field, pa))
        })
        .collect();

    let run_job = |(name, field, pa): &(char, FieldSpec, catalog::Params)| -> VerifyReport {
        match catalog::instantiate(*name, pa, field) {
            Ok(d) => verify_data(&name.to_string(), &d, Some((*name, pa)), n),
            Err(e) => VerifyReport {
                target: name.to_string(),
                family: Some(name.to_string()),
                field: field.to_string(),
                params: Default::default(),
                degree_bound: n,
                relations: Vec::new(),
                dims: None,
                dual_dims: None,
                detsigma: None,
                ore_flags: None,
                normal_claims: Vec::new(),
                checks: vec![report::CheckResult {
                    name: "instantiate".to_string(),
                    status: "fail".to_string(),
                    detail: e.to_string(),
                    millis: 0,
                }],
                overall: "fail".to_string(),
            },
        }
    };

    #[cfg(feature = "parallel")]
    let reports: Vec<VerifyReport> = {
        use rayon::prelude::*;
        jobs.par_iter().map(run_job).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let reports: Vec<VerifyReport> = jobs.iter().map(run_job).collect();

    let mut rows: Vec<SuiteRow> = Vec::new();
    for (job, report) in jobs.iter().zip(reports) {
        match rows.last_mut() {
            Some(row) if row.family == job.0 => row.runs.push(report),
            _ => rows.push(SuiteRow {
                family: job.0,
                runs: vec![report],
            }),
        }
    }

    if json {
        let all: Vec<&VerifyReport> = rows.iter().flat_map(|r| r.runs.iter()).collect();
        println!("{}", serde_json::to_string_pretty(&all).expect("serializable"));
    }

    let mut all_pass = true;
    let mut passed_families = 0;
    for row in &rows {
        let ok = row.runs.iter().all(VerifyReport::passed);
        all_pass &= ok;
        passed_families += ok as usize;
        if !json {
            let witness = row
                .runs
                .first()
                .and_then(|r| r.checks.iter().find(|c| c.name == "duality_witness"))
                .map(|c| c.status.clone())
                .unwrap_or_else(|| "-".to_string());
            let failing: Vec<String> = row
                .runs
                .iter()
                .flat_map(|r| r.checks.iter())
                .filter(|c| c.status == "fail")
                .map(|c| c.name.clone())
                .collect();
            println!(
                "{}  {}/{} specializations  witness: {:<8} {}{}",
                row.family,
                row.runs.iter().filter(|r| r.passed()).count(),
                row.runs.len(),
                witness,
                if ok { "PASS" } else { "FAIL" },
                if failing.is_empty() {
                    String::new()
                } else {
                    format!("  ({})", failing.join(", "))
                }
            );
        }
    }
    if !json {
        println!("{}/{} families pass", passed_families, rows.len());
    }
    if all_pass {
        Ok(())
    } else {
        Err(CliError::CheckFailed)
    }
}
