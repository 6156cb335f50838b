//! `kjdt-calculus`: command-line surface for K-theoretic jeu de taquin
//! computations: single rectifications and infusions, structure-constant
//! queries with oracle cross-checks, batch table builds with persistence,
//! verification suites, and replay of the shipped worked examples.

mod paper_examples;
mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use kjdt::coeff::{
    lr_coefficient, lr_coefficient_unpruned, pieri_coefficient, product_difference,
    product_expansion, satisfies_sign_conjecture, t_pieri_fillings, witnesses, CoefficientTable,
    Provenance, RULE_VERSION,
};
use kjdt::grothendieck::oracle_coefficient;
use kjdt::growth::k_evacuation;
use kjdt::infusion::kinfusion;
use kjdt::shapes::{Partition, Rectangle, SkewShape};
use kjdt::slides::{krect, krect_with_order, RectificationOrder};
use kjdt::tableau::IncreasingTableau;

#[derive(Parser)]
#[command(
    name = "kjdt-calculus",
    version,
    about = "Jeu de taquin for increasing tableaux and K-theory Schubert calculus"
)]
struct Cli {
    /// Emit one JSON document on stdout instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// K-rectify a tableau file, optionally under an explicit slide script.
    Rectify {
        /// Tableau file in the dotted text format (or .json).
        #[arg(long)]
        input: PathBuf,
        /// Slide script: one step per line, a flat comma-separated list of
        /// row,col pairs. Omitted: the greedy default order.
        #[arg(long)]
        order_file: Option<PathBuf>,
        /// Validate the tableau against this rectangle first.
        #[arg(long)]
        rect: Option<Rectangle>,
        /// Write the result here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// K-evacuate a straight-shape tableau file.
    Evacuate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        rect: Option<Rectangle>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// K-infuse a pair of abutting tableau files.
    Infuse {
        /// The inner (straight or skew) tableau.
        #[arg(long)]
        first: PathBuf,
        /// The outer skew tableau; its inner shape must equal the first
        /// tableau's outer shape.
        #[arg(long)]
        second: PathBuf,
        #[arg(long)]
        rect: Option<Rectangle>,
    },
    /// One signed structure constant, with optional witnesses and checks.
    Coeff {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        nu: Partition,
        #[arg(long)]
        rect: Rectangle,
        /// Also print the counted tableaux.
        #[arg(long)]
        witnesses: bool,
        /// Cross-check against the Grothendieck-polynomial oracle.
        #[arg(long)]
        oracle: bool,
        /// Disable search pruning (slow; a behavior check).
        #[arg(long)]
        no_prune: bool,
    },
    /// Expand a product of two classes over the whole rectangle.
    Expand {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        rect: Rectangle,
        /// csv or json.
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Lenart's Pieri coefficient in closed form.
    Pieri {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        nu: Partition,
        #[arg(long)]
        rect: Option<Rectangle>,
        /// Also print the t-Pieri fillings.
        #[arg(long)]
        fillings: bool,
    },
    /// The meet/join product difference over the rectangle.
    Proddiff {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        rect: Rectangle,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run verification suites over a rectangle.
    Verify {
        /// involution | well-defined | oracle-equiv | pieri |
        /// sign-conjecture | all
        suite: String,
        #[arg(long)]
        rect: Rectangle,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Replay the shipped worked examples and diff against golden files.
    PaperExamples,
}

/// Failures mapped to the documented exit codes: 2 for malformed input,
/// 1 for verification or golden-comparison failures.
enum CliError {
    Malformed(String),
    Failure(String),
}

impl From<kjdt::Error> for CliError {
    fn from(e: kjdt::Error) -> Self {
        CliError::Malformed(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Malformed(msg)) => {
            eprintln!("error: code=2 kind=malformed-input msg={msg:?}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: code=1 kind=verification-failure msg={msg:?}");
            ExitCode::from(1)
        }
    }
}

fn read_tableau(path: &PathBuf) -> Result<IncreasingTableau, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
    if path.extension().is_some_and(|x| x == "json") {
        Ok(IncreasingTableau::from_json(&text)?)
    } else {
        Ok(text.parse()?)
    }
}

fn check_rect(t: &IncreasingTableau, rect: &Option<Rectangle>) -> Result<(), CliError> {
    if let Some(r) = rect {
        if !r.contains(t.shape().outer()) {
            return Err(CliError::Malformed(format!(
                "shape {} exceeds rectangle {r}",
                t.shape()
            )));
        }
    }
    Ok(())
}

fn write_or_print(text: &str, output: &Option<PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn tableau_json(t: &IncreasingTableau) -> serde_json::Value {
    serde_json::from_str(&t.to_json()).expect("tableau json is valid")
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Rectify {
            input,
            order_file,
            rect,
            output,
        } => {
            let t = read_tableau(&input)?;
            check_rect(&t, &rect)?;
            let result = match order_file {
                Some(path) => {
                    let script = fs::read_to_string(&path)
                        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
                    let order: RectificationOrder = script.parse()?;
                    krect_with_order(&t, &order)?
                }
                None => krect(&t)?,
            };
            if cli.json {
                write_or_print(
                    &json!({
                        "command": "rectify",
                        "tableau": tableau_json(&result),
                        "text": result.to_string(),
                    })
                    .to_string(),
                    &output,
                )
            } else {
                write_or_print(&result.to_string(), &output)
            }
        }
        Command::Evacuate {
            input,
            rect,
            output,
        } => {
            let t = read_tableau(&input)?;
            check_rect(&t, &rect)?;
            let result = k_evacuation(&t)?;
            if cli.json {
                write_or_print(
                    &json!({
                        "command": "evacuate",
                        "tableau": tableau_json(&result),
                        "text": result.to_string(),
                    })
                    .to_string(),
                    &output,
                )
            } else {
                write_or_print(&result.to_string(), &output)
            }
        }
        Command::Infuse {
            first,
            second,
            rect,
        } => {
            let t = read_tableau(&first)?;
            let u = read_tableau(&second)?;
            check_rect(&u, &rect)?;
            let pair = kinfusion(&t, &u)?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "command": "infuse",
                        "first": tableau_json(&pair.first),
                        "second": tableau_json(&pair.second),
                    })
                );
            } else {
                println!("first:");
                println!("{}", pair.first);
                println!("second:");
                println!("{}", pair.second);
            }
            Ok(())
        }
        Command::Coeff {
            lambda,
            mu,
            nu,
            rect,
            witnesses: want_witnesses,
            oracle: want_oracle,
            no_prune,
        } => {
            let c = if no_prune {
                lr_coefficient_unpruned(&lambda, &mu, &nu, &rect)?
            } else {
                lr_coefficient(&lambda, &mu, &nu, &rect)?
            };
            let w = if want_witnesses {
                Some(witnesses(&lambda, &mu, &nu, &rect)?)
            } else {
                None
            };
            let oracle_value = if want_oracle {
                Some(oracle_coefficient(&lambda, &mu, &nu, &rect)?)
            } else {
                None
            };
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "command": "coeff",
                        "lambda": lambda.to_string(),
                        "mu": mu.to_string(),
                        "nu": nu.to_string(),
                        "rectangle": rect.to_string(),
                        "count": c.count,
                        "signed": c.signed,
                        "witnesses": w.as_ref().map(|ws| {
                            ws.iter().map(tableau_json).collect::<Vec<_>>()
                        }),
                        "oracle": oracle_value,
                        "agree": oracle_value.map(|o| o == c.signed),
                    })
                );
            } else {
                println!("count={} signed={}", c.count, c.signed);
                if let Some(ws) = &w {
                    for t in ws {
                        println!();
                        println!("{t}");
                    }
                }
                if let Some(o) = oracle_value {
                    println!("oracle={o} agree={}", o == c.signed);
                }
            }
            match oracle_value {
                Some(o) if o != c.signed => Err(CliError::Failure(format!(
                    "oracle disagrees: rule {} vs oracle {o}",
                    c.signed
                ))),
                _ => Ok(()),
            }
        }
        Command::Expand {
            lambda,
            mu,
            rect,
            format,
            output,
        } => {
            let table = cached_expansion(&lambda, &mu, &rect)?;
            let text = match (cli.json, format.as_str()) {
                (true, _) | (false, "json") => table.to_json(),
                (false, "csv") => table.to_csv(),
                (false, other) => {
                    return Err(CliError::Malformed(format!("unknown format {other:?}")))
                }
            };
            write_or_print(&text, &output)
        }
        Command::Pieri {
            lambda,
            t,
            nu,
            rect,
            fillings: want_fillings,
        } => {
            if let Some(r) = &rect {
                for s in [&lambda, &nu] {
                    if !r.contains(s) {
                        return Err(CliError::Malformed(format!(
                            "shape {s} exceeds rectangle {r}"
                        )));
                    }
                }
            }
            let c = pieri_coefficient(&lambda, t, &nu);
            let fills = if want_fillings && nu.contains(&lambda) {
                t_pieri_fillings(&SkewShape::new(nu.clone(), lambda.clone())?, t)
            } else {
                Vec::new()
            };
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "command": "pieri",
                        "lambda": lambda.to_string(),
                        "t": t,
                        "nu": nu.to_string(),
                        "count": c.count,
                        "signed": c.signed,
                        "fillings": fills.iter().map(tableau_json).collect::<Vec<_>>(),
                    })
                );
            } else {
                println!("count={} signed={}", c.count, c.signed);
                for f in &fills {
                    println!();
                    println!("{f}");
                }
            }
            Ok(())
        }
        Command::Proddiff {
            lambda,
            mu,
            rect,
            format,
            output,
        } => {
            let d = product_difference(&lambda, &mu, &rect)?;
            let conjecture = satisfies_sign_conjecture(&lambda, &mu, &rect)?;
            let as_json = || {
                json!({
                    "rule_version": RULE_VERSION,
                    "rectangle": rect.to_string(),
                    "lambda": lambda.to_string(),
                    "mu": mu.to_string(),
                    "sign_conjecture": conjecture,
                    "terms": d
                        .iter()
                        .map(|(nu, v)| json!({"nu": nu.to_string(), "d": v}))
                        .collect::<Vec<_>>(),
                })
                .to_string()
            };
            let text = match (cli.json, format.as_str()) {
                (true, _) | (false, "json") => as_json(),
                (false, "csv") => {
                    let mut s = format!(
                        "# rule-version: {RULE_VERSION}\n# rectangle: {rect}\n# lambda: {lambda}\n# mu: {mu}\n# sign-conjecture: {conjecture}\nnu,d\n"
                    );
                    for (nu, v) in &d {
                        s.push_str(&format!("{nu},{v}\n"));
                    }
                    s
                }
                (false, other) => {
                    return Err(CliError::Malformed(format!("unknown format {other:?}")))
                }
            };
            write_or_print(&text, &output)
        }
        Command::Verify { suite, rect, jobs } => {
            let reports = verify::run(&suite, rect, jobs)?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "command": "verify",
                        "rectangle": rect.to_string(),
                        "suites": reports
                            .iter()
                            .map(|r| json!({
                                "suite": r.name,
                                "pass": r.pass,
                                "checked": r.checked,
                                "detail": r.detail,
                                "counterexample": r.counterexample,
                            }))
                            .collect::<Vec<_>>(),
                    })
                );
            } else {
                for r in &reports {
                    let verdict = if r.pass { "PASS" } else { "FAIL" };
                    println!(
                        "suite {}: {verdict} ({} checked{})",
                        r.name, r.checked, r.detail
                    );
                    if let Some(ce) = &r.counterexample {
                        println!("  first counterexample: {ce}");
                    }
                }
            }
            if reports.iter().all(|r| r.pass) {
                Ok(())
            } else {
                Err(CliError::Failure("verification suite failed".into()))
            }
        }
        Command::PaperExamples => {
            let results = paper_examples::run_all();
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "command": "paper-examples",
                        "examples": results
                            .iter()
                            .map(|r| json!({"name": r.name, "ok": r.ok}))
                            .collect::<Vec<_>>(),
                    })
                );
            } else {
                for r in &results {
                    if r.ok {
                        println!("example {}: OK", r.name);
                    } else {
                        println!("example {}: MISMATCH", r.name);
                        println!("--- expected\n{}\n--- got\n{}", r.expected, r.got);
                    }
                }
            }
            if results.iter().all(|r| r.ok) {
                Ok(())
            } else {
                Err(CliError::Failure("golden comparison failed".into()))
            }
        }
    }
}

/// Batch expansion with optional persistence under `KJDT_CACHE_DIR`.
fn cached_expansion(
    lambda: &Partition,
    mu: &Partition,
    rect: &Rectangle,
) -> Result<CoefficientTable, CliError> {
    let cache_path = std::env::var_os("KJDT_CACHE_DIR").map(|dir| {
        let sanitize = |p: &Partition| {
            let s = p.to_string();
            s.trim_matches(['(', ')']).replace(',', ".")
        };
        PathBuf::from(dir).join(format!(
            "expand-{RULE_VERSION}-{rect}-{}-{}.csv",
            sanitize(lambda),
            sanitize(mu)
        ))
    });
    if let Some(path) = &cache_path {
        if let Ok(text) = fs::read_to_string(path) {
            if let Ok(table) = CoefficientTable::from_csv(&text) {
                if table.rectangle() == *rect {
                    return Ok(table);
                }
            }
            // Stale or unreadable caches fall through to recomputation.
        }
    }
    let expansion = product_expansion(lambda, mu, rect)?;
    let mut table = CoefficientTable::new(*rect, Provenance::Main);
    for (nu, c) in expansion {
        table.insert(lambda, mu, &nu, c);
    }
    if let Some(path) = &cache_path {
        if let Some(parent) = path.parent() {
            let _ = fs::create_dir_all(parent);
        }
        fs::write(path, table.to_csv())
            .map_err(|e| CliError::Malformed(format!("cache write {}: {e}", path.display())))?;
    }
    Ok(table)
}
