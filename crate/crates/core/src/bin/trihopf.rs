//! Batch command-line surface: validate septuples, build triangular Hopf
//! algebras, run the verification suites, convert minimal-pointed data,
//! enumerate classification data, and test septuple isomorphism.
//!
//! Exit codes: 0 success, 1 check failed, 2 invalid input, 3 unsupported
//! (guardrail limits). All numerics are exact rational strings.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use trihopf::chevalley::chevalley_check;
use trihopf::error::HopfError;
use trihopf::groups::FiniteGroup;
use trihopf::hopf::check_hopf_axioms;
use trihopf::pointed::{
    enumerate_minimal_pointed, minimality_criterion, type1_to_type2, type2_to_type1,
};
use trihopf::serialize as ser;
use trihopf::supergroup::validate_septuple;
use trihopf::triangular::{build_a_of_s, check_triangular, minimal_part, septuple_isomorphic};

#[derive(Parser)]
#[command(
    name = "trihopf",
    version,
    about = "Exact construction and verification of finite-dimensional triangular Hopf algebras with the Chevalley property"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a triangular septuple file and report every condition.
    Validate { file: PathBuf },
    /// Build the triangular Hopf algebra of a septuple, with R-matrix,
    /// Drinfeld element, and minimality flags.
    Build {
        file: PathBuf,
        /// Output path for the algebra dump (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run verification suites on a build output file.
    Check {
        file: PathBuf,
        #[command(flatten)]
        suites: CheckSuites,
    },
    /// Convert between the two kinds of minimal-pointed data.
    Convert {
        /// Type 1 (G, W, H, V, u) to Type 2 (G, phi, n).
        #[arg(long = "t1-to-t2", value_name = "FILE", conflicts_with = "t2_to_t1")]
        t1_to_t2: Option<PathBuf>,
        /// Type 2 (G, phi, n) to Type 1 (G, W, H, V, u).
        #[arg(long = "t2-to-t1", value_name = "FILE")]
        t2_to_t1: Option<PathBuf>,
    },
    /// Enumerate minimal pointed data (G, phi, n) up to Aut(G).
    Enumerate {
        /// Abelian invariants, comma separated (e.g. 2,2).
        #[arg(long, value_delimiter = ',')]
        group: Vec<u64>,
        /// Bound on the total multiplicity sum.
        #[arg(long = "max-n", default_value_t = 1)]
        max_n: u64,
    },
    /// Test two septuple files for isomorphism, with a witness.
    Iso { file1: PathBuf, file2: PathBuf },
}

#[derive(Args)]
struct CheckSuites {
    #[arg(long)]
    axioms: bool,
    #[arg(long)]
    triangular: bool,
    #[arg(long)]
    chevalley: bool,
    #[arg(long)]
    minimal: bool,
    #[arg(long)]
    all: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &HopfError) -> u8 {
    match e {
        HopfError::TooLarge(_) | HopfError::Unsupported(_) | HopfError::ConductorTooLarge(_) => 3,
        _ => 2,
    }
}

fn max_dim() -> usize {
    std::env::var("HOPF_MAX_DIM")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(64)
}

fn read_json(path: &PathBuf) -> Result<serde_json::Value, HopfError> {
    let text = fs::read_to_string(path)
        .map_err(|e| HopfError::InvalidInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| HopfError::InvalidInput(format!("{}: {e}", path.display())))
}

fn guard_dim(dim: usize) -> Result<(), HopfError> {
    let bound = max_dim();
    if dim > bound {
        return Err(HopfError::TooLarge(format!(
            "algebra dimension {dim} exceeds HOPF_MAX_DIM = {bound}"
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, HopfError> {
    match cli.command {
        Command::Validate { file } => {
            let sept = ser::septuple_from_json(&read_json(&file)?)?;
            guard_dim(sept.group.order() << sept.action.dim)?;
            let report = validate_septuple(&sept);
            println!(
                "{}",
                ser::to_string_pretty(&ser::axiom_report_to_json(&report))
            );
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Build { file, output } => {
            let sept = ser::septuple_from_json(&read_json(&file)?)?;
            guard_dim(sept.group.order() << sept.action.dim)?;
            let tri = build_a_of_s(&sept)?;
            let flags = minimality_criterion(&sept);
            let out = ser::build_output_to_json(&tri, flags.minimal, flags.pointed);
            let text = ser::to_string_pretty(&out);
            match output {
                Some(path) => fs::write(&path, text + "\n")
                    .map_err(|e| HopfError::InvalidInput(format!("{}: {e}", path.display())))?,
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { file, suites } => {
            let value = read_json(&file)?;
            let (algebra, r) = ser::build_output_from_json(&value)?;
            guard_dim(algebra.dim())?;
            let run_axioms = suites.axioms || suites.all;
            let run_triangular = suites.triangular || suites.all;
            let run_chevalley = suites.chevalley || suites.all;
            let run_minimal = suites.minimal || suites.all;
            if !(run_axioms || run_triangular || run_chevalley || run_minimal) {
                return Err(HopfError::InvalidInput(
                    "select at least one suite (--axioms --triangular --chevalley --minimal or --all)"
                        .into(),
                ));
            }
            let mut report = serde_json::Map::new();
            let mut ok = true;
            if run_axioms {
                let r = check_hopf_axioms(&algebra);
                ok &= r.all_pass();
                report.insert("axioms".into(), ser::axiom_report_to_json(&r));
            }
            if run_triangular {
                let t = check_triangular(&algebra, &r);
                ok &= t.all_pass();
                report.insert("triangular".into(), ser::axiom_report_to_json(&t));
            }
            if run_chevalley {
                let c = chevalley_check(&algebra)?;
                ok &= c.chevalley;
                report.insert("chevalley".into(), ser::radical_report_to_json(&c));
            }
            if run_minimal {
                let z = minimal_part(&algebra, &r)?;
                let minimal = z.dim() == algebra.dim();
                report.insert(
                    "minimal".into(),
                    serde_json::json!({ "minimal": minimal, "minimal_part_dim": z.dim() }),
                );
            }
            println!(
                "{}",
                ser::to_string_pretty(&serde_json::Value::Object(report))
            );
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Convert { t1_to_t2, t2_to_t1 } => match (t1_to_t2, t2_to_t1) {
            (Some(file), None) => {
                let t1 = ser::type1_from_json(&read_json(&file)?)?;
                let t2 = type1_to_type2(&t1)?;
                println!("{}", ser::to_string_pretty(&ser::type2_to_json(&t2)));
                Ok(ExitCode::SUCCESS)
            }
            (None, Some(file)) => {
                let t2 = ser::type2_from_json(&read_json(&file)?)?;
                let t1 = type2_to_type1(&t2)?;
                println!("{}", ser::to_string_pretty(&ser::type1_to_json(&t1)));
                Ok(ExitCode::SUCCESS)
            }
            _ => Err(HopfError::InvalidInput(
                "pass exactly one of --t1-to-t2 FILE or --t2-to-t1 FILE".into(),
            )),
        },
        Command::Enumerate { group, max_n } => {
            let g = FiniteGroup::build_abelian(&group);
            let data = enumerate_minimal_pointed(&g, max_n)?;
            let json: Vec<serde_json::Value> = data.iter().map(ser::type2_to_json).collect();
            println!("{}", ser::to_string_pretty(&serde_json::Value::Array(json)));
            // Human-readable table on stderr, keeping stdout machine-readable.
            eprintln!("{:>4}  {:>8}  {:>6}  {}", "#", "sum n", "dim", "support");
            for (i, t) in data.iter().enumerate() {
                let support: Vec<String> = t
                    .multiplicities
                    .iter()
                    .map(|(g, m)| format!("{g}:{m}"))
                    .collect();
                eprintln!(
                    "{:>4}  {:>8}  {:>6}  {}",
                    i,
                    t.total_multiplicity(),
                    t.algebra_dimension(),
                    if support.is_empty() {
                        "-".to_string()
                    } else {
                        support.join(" ")
                    }
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Iso { file1, file2 } => {
            let s1 = ser::septuple_from_json(&read_json(&file1)?)?;
            let s2 = ser::septuple_from_json(&read_json(&file2)?)?;
            match septuple_isomorphic(&s1, &s2)? {
                Some(w) => {
                    let gauge = match &w.gauge {
                        None => serde_json::Value::Null,
                        Some(x) => {
                            serde_json::Value::Array(x.iter().map(ser::scalar_to_json).collect())
                        }
                    };
                    let out = serde_json::json!({
                        "isomorphic": true,
                        "group_map": w.group_map,
                        "intertwiner": ser::matrix_to_json(&w.intertwiner),
                        "gauge": gauge,
                    });
                    println!("{}", ser::to_string_pretty(&out));
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!(
                        "{}",
                        ser::to_string_pretty(&serde_json::json!({ "isomorphic": false }))
                    );
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}
