//! Command-line front end: classification, decomposition, equilibrium
//! solving, deviation-gain grids, the game catalog, and the acceptance
//! verification suite. Emits JSON (and CSV for grids) for downstream
//! tooling; errors go to stderr as JSON with exit code 1 for malformed
//! input, 2 for precondition failures, and 3 for internal-consistency
//! failures.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gamedecomp::catalog::{self, BayesianSpec, ContestSpec, CournotSpec, GameClass};
use gamedecomp::classify;
use gamedecomp::equilibrium;
use gamedecomp::error::Error;
use gamedecomp::game::{Game, DEFAULT_TOL};
use gamedecomp::json;
use gamedecomp::subspace;
use gamedecomp::verify;
use gamedecomp::StrategySpace;

/// Environment variable overriding the default tolerance.
const TOL_ENV: &str = "GAMEDECOMP_TOL";

#[derive(Parser)]
#[command(
    name = "gamedecomp",
    about = "Decompose, classify, and solve finite normal-form games",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a game: membership flags, cycle-test evidence, component norms.
    Classify {
        /// Path to a game in canonical JSON format.
        #[arg(long)]
        input: PathBuf,
        /// Tolerance for all boolean predicates (default 1e-9, or GAMEDECOMP_TOL).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Decompose a game into orthogonal strategic components.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        /// One of: elementary, main, four, candogan.
        #[arg(long)]
        scheme: String,
        /// Directory to write per-component game files into.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute Nash equilibria with the chosen method.
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// One of: pure, support, uniform, dominant, minimax.
        #[arg(long)]
        method: String,
    },
    /// Evaluate the deviation-gain function on a symmetric barycentric grid
    /// (two-player symmetric games with three strategies) and emit CSV.
    Phi {
        #[arg(long)]
        input: PathBuf,
        /// Barycentric subdivisions per edge (at least 2).
        #[arg(long)]
        resolution: usize,
        /// CSV output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a built-in game as canonical JSON.
    Catalog {
        /// One of: demo, demo-c, demo-z, demo-b, demo-e, rps,
        /// matching-pennies, coordination, separable-pd, cournot, contest,
        /// bayesian, random.
        name: String,
        /// Builder parameters as key=value pairs (lists comma-separated).
        #[arg(long = "params", value_name = "KEY=VALUE")]
        params: Vec<String>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full acceptance verification suite and print one pass/fail
    /// line per criterion.
    VerifyPaper,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            let payload = serde_json::json!({
                "error": { "kind": e.kind(), "message": e.to_string() }
            });
            eprintln!("{payload}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Classify { input, tol } => {
            let game = load_game(&input)?;
            let report = classify::classify(&game, resolve_tol(tol)?)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json::classification_to_value(&report))?
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { input, scheme, out } => {
            let game = load_game(&input)?;
            let results = subspace::decompose(&game, &scheme)?;
            if let Some(dir) = &out {
                std::fs::create_dir_all(dir)?;
                for r in &results {
                    for (name, component) in &r.components {
                        let path = dir.join(format!("{}-{}.json", r.scheme, name));
                        std::fs::write(&path, json::game_to_json(component))?;
                    }
                }
            }
            let values: Vec<_> = results.iter().map(json::decomposition_to_value).collect();
            let output = if values.len() == 1 {
                serde_json::to_string_pretty(&values[0])?
            } else {
                serde_json::to_string_pretty(&values)?
            };
            println!("{output}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { input, method } => {
            let game = load_game(&input)?;
            let list = match method.as_str() {
                "pure" => equilibrium::pure_nash(&game),
                "support" => equilibrium::bimatrix_nash(&game)?,
                "uniform" => {
                    let ok = equilibrium::verify_uniform_ne(&game)?;
                    if !ok {
                        return Err(Error::InternalConsistency(
                            "uniform profile failed the equilibrium check".into(),
                        ));
                    }
                    equilibrium::NashList {
                        profiles: vec![equilibrium::uniform_profile(game.space())],
                        degenerate: false,
                        method: "uniform".into(),
                        value: None,
                    }
                }
                "dominant" => {
                    let d = equilibrium::dominant_strategy(&game)?;
                    equilibrium::NashList {
                        profiles: vec![gamedecomp::MixedProfile::pure(game.space(), &d.profile)?],
                        degenerate: !d.strict,
                        method: "dominant".into(),
                        value: None,
                    }
                }
                "minimax" => {
                    let m = equilibrium::minimax(&game)?;
                    json::minimax_to_nash_list(game.space(), &m)?
                }
                other => {
                    return Err(Error::Precondition(format!(
                        "unknown method '{other}' (expected pure|support|uniform|dominant|minimax)"
                    )))
                }
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&json::nash_list_to_value(&list))?
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Phi {
            input,
            resolution,
            out,
        } => {
            let game = load_game(&input)?;
            let rows = equilibrium::phi_grid(&game, resolution)?;
            let csv = json::phi_grid_to_csv(&rows);
            match out {
                Some(path) => std::fs::write(path, csv)?,
                None => print!("{csv}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog { name, params, out } => {
            let params = parse_params(&params)?;
            let game = build_catalog_game(&name, &params)?;
            let text = json::game_to_json(&game);
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyPaper => {
            let outcomes = verify::run_all();
            let mut all_pass = true;
            for o in &outcomes {
                let status = if o.passed { "PASS" } else { "FAIL" };
                all_pass &= o.passed;
                println!("{status} criterion {}: {} ({})", o.id, o.name, o.detail);
            }
            if all_pass {
                println!("all {} criteria passed", outcomes.len());
                Ok(ExitCode::SUCCESS)
            } else {
                println!("some criteria FAILED");
                Ok(ExitCode::from(3))
            }
        }
    }
}

fn load_game(path: &Path) -> Result<Game, Error> {
    let text = std::fs::read_to_string(path)?;
    json::game_from_json(&text)
}

fn resolve_tol(flag: Option<f64>) -> Result<f64, Error> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(text) => text.parse::<f64>().map_err(|_| {
                Error::Precondition(format!("{TOL_ENV} must be a number, got '{text}'"))
            })?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Precondition(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(tol)
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, String>, Error> {
    let mut map = BTreeMap::new();
    for item in raw {
        let (k, v) = item.split_once('=').ok_or_else(|| {
            Error::Precondition(format!("parameter '{item}' is not of the form key=value"))
        })?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn param_f64(params: &BTreeMap<String, String>, key: &str, default: f64) -> Result<f64, Error> {
    match params.get(key) {
        None => Ok(default),
        Some(text) => text
            .parse()
            .map_err(|_| Error::Precondition(format!("parameter {key}='{text}' is not a number"))),
    }
}

fn param_usize(params: &BTreeMap<String, String>, key: &str, default: usize) -> Result<usize, Error> {
    match params.get(key) {
        None => Ok(default),
        Some(text) => text.parse().map_err(|_| {
            Error::Precondition(format!("parameter {key}='{text}' is not an integer"))
        }),
    }
}

fn param_list_f64(
    params: &BTreeMap<String, String>,
    key: &str,
    default: Vec<f64>,
) -> Result<Vec<f64>, Error> {
    match params.get(key) {
        None => Ok(default),
        Some(text) => text
            .split(',')
            .map(|x| {
                x.trim().parse().map_err(|_| {
                    Error::Precondition(format!("parameter {key} entry '{x}' is not a number"))
                })
            })
            .collect(),
    }
}

fn param_list_usize(
    params: &BTreeMap<String, String>,
    key: &str,
    default: Vec<usize>,
) -> Result<Vec<usize>, Error> {
    match params.get(key) {
        None => Ok(default),
        Some(text) => text
            .split(',')
            .map(|x| {
                x.trim().parse().map_err(|_| {
                    Error::Precondition(format!("parameter {key} entry '{x}' is not an integer"))
                })
            })
            .collect(),
    }
}

fn build_catalog_game(name: &str, params: &BTreeMap<String, String>) -> Result<Game, Error> {
    match name {
        "demo" => Ok(catalog::demo_game()),
        "demo-c" | "demo-z" | "demo-b" | "demo-e" => {
            let idx = match name {
                "demo-c" => 0,
                "demo-z" => 1,
                "demo-b" => 2,
                _ => 3,
            };
            Ok(catalog::demo_components()[idx].clone())
        }
        "rps" => Ok(catalog::rps()),
        "matching-pennies" => Ok(catalog::matching_pennies()),
        "coordination" => Ok(catalog::coordination(param_usize(params, "k", 3)?)),
        "separable-pd" => Ok(catalog::separable_pd()),
        "cournot" => {
            let players = param_usize(params, "n", 3)?;
            let spec = CournotSpec {
                players,
                alpha: param_f64(params, "alpha", 10.0)?,
                beta: param_f64(params, "beta", 1.0)?,
                costs: param_list_f64(params, "costs", vec![1.0; players])?,
                grid: param_list_f64(params, "grid", (0..=4).map(|i| i as f64).collect())?,
            };
            catalog::cournot(&spec)
        }
        "contest" => {
            let players = param_usize(params, "n", 3)?;
            let spec = ContestSpec {
                players,
                prize: param_f64(params, "v", 1.0)?,
                costs: param_list_f64(params, "costs", vec![1.0; players])?,
                grid: param_list_f64(
                    params,
                    "grid",
                    (1..=12).map(|i| i as f64 * 0.05).collect(),
                )?,
            };
            catalog::contest(&spec)
        }
        "bayesian" => {
            let spec: BayesianSpec = catalog::bayesian_coordination(
                param_f64(params, "a", 2.0)?,
                param_f64(params, "b", 1.0)?,
                param_f64(params, "p", 0.5)?,
                param_f64(params, "q", 0.5)?,
            )?;
            catalog::bayesian_embed(&spec)
        }
        "random" => {
            let class = GameClass::parse(
                params
                    .get("class")
                    .map(String::as_str)
                    .unwrap_or("zero-sum-equivalent"),
            )?;
            let sizes = param_list_usize(params, "sizes", vec![3, 3])?;
            let seed = param_usize(params, "seed", 0)? as u64;
            let space = StrategySpace::with_sizes(&sizes)?;
            catalog::random_member(class, &space, seed)
        }
        other => Err(Error::Precondition(format!(
            "unknown catalog game '{other}'"
        ))),
    }
}
