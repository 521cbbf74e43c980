use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hemireco::campaign::{self, CampaignConfig, CampaignError, ClassFilter, Source};
use hemireco::{dg, dot, exit, json};
use hemireco_core::enumerate::{
    burnside_digraph_count, burnside_tournament_count, enumerate_digraphs, enumerate_tournaments,
};
use hemireco_core::iso::canonical_key;
use hemireco_core::structure::{
    adjacent_neutral_pairs, all_intervals, arc_connected_components, c_dual_witness, classify,
    is_prechain, neutral_incidence,
};
use hemireco_core::witness::{
    construct_witness_l, oracle_find_witness_with_budget, verify_witness, DEFAULT_BUDGET,
};
use hemireco_core::{decide::verdict_from, report, Digraph, Error};

#[derive(Parser)]
#[command(name = "hemireco", version, about = "Half-reconstruction of finite digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct InputArgs {
    /// Digraph in .dg format.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Also write the digraph as Graphviz DOT.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a .dg file and print its canonical key.
    Parse(InputArgs),
    /// Structural classes, neutral-pair incidence and flags.
    Classify(InputArgs),
    /// Every interval, by size and then lexicographically.
    Intervals(InputArgs),
    /// Arc-connected components.
    Components(InputArgs),
    /// Smallest order of a non-self-dual induced subdigraph.
    Cdual(InputArgs),
    /// Every condition with its evidence.
    Conditions(InputArgs),
    /// Whether the digraph is (<= k)-half-reconstructible.
    Decide {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, default_value_t = 6)]
        k: usize,
    },
    /// A (<= 6)-witness from the L conditions, else from the oracle at --k.
    Witness {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Search the flip space for a (<= k)-hemimorphic, non-hemimorphic mate.
    Oracle {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Certify a candidate mate given by --against.
    Verify {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long)]
        against: PathBuf,
        #[arg(long, default_value_t = 6)]
        k: usize,
    },
    /// List one representative per isomorphism class as JSONL.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "all")]
        class: ClassFilter,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare decide against the oracle over many digraphs.
    Campaign {
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "all")]
        class: ClassFilter,
        #[arg(long, value_enum, default_value = "exhaustive")]
        source: Source,
        /// Orders to decide; repeat or separate with commas.
        #[arg(long, value_delimiter = ',', default_value = "6")]
        k: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Skip the oracle and record verdicts only.
        #[arg(long)]
        no_oracle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Concatenate campaign outputs and re-sort them by key.
    Merge {
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Capacity(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => Failure::Capacity(e.to_string()),
            Error::Contract(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<CampaignError> for Failure {
    fn from(e: CampaignError) -> Self {
        match e {
            CampaignError::Core(e) => e.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn load(path: &Path) -> Result<Digraph, Failure> {
    dg::read(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn open_input(io: &InputArgs) -> Result<Digraph, Failure> {
    let g = load(&io.input)?;
    if let Some(path) = &io.dot {
        let name = io
            .input
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        std::fs::write(path, dot::to_dot(&g, &name))?;
    }
    Ok(g)
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

/// Prints `value` as pretty JSON, or as `field: value` lines for `--format text`.
/// A closed stdout is not an error.
fn emit(format: Format, value: &Value) {
    let mut text = String::new();
    match format {
        Format::Json => {
            text = serde_json::to_string_pretty(value).expect("serializable");
            text.push('\n');
        }
        Format::Text => match value {
            Value::Object(m) => {
                for (k, v) in m {
                    let line = match v {
                        Value::String(s) if s.contains('\n') => format!("{k}:\n{s}"),
                        Value::String(s) => format!("{k}: {s}\n"),
                        other => format!("{k}: {other}\n"),
                    };
                    text.push_str(&line);
                }
            }
            other => text = format!("{other}\n"),
        },
    }
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Parse(io) => {
            let g = open_input(&io)?;
            emit(
                io.format,
                &json!({
                    "n": g.n(),
                    "arcs": g.arc_count(),
                    "key": canonical_key(&g)?.to_hex(),
                    "dg": dg::to_string(&g),
                }),
            );
        }
        Command::Classify(io) => {
            let g = open_input(&io)?;
            let classes: Vec<&str> = classify(&g).iter().map(|c| c.name()).collect();
            emit(
                io.format,
                &json!({
                    "classes": classes,
                    "prechain": is_prechain(&g),
                    "neutral_incidence": json::incidence(&neutral_incidence(&g)),
                    "adjacent_neutral_pairs": adjacent_neutral_pairs(&g),
                    "flags": hemireco_core::structure::flag_triples(&g).iter().map(json::flag).collect::<Vec<_>>(),
                }),
            );
        }
        Command::Intervals(io) => {
            let g = open_input(&io)?;
            emit(io.format, &json!({"intervals": json::sets(&all_intervals(&g)?)}));
        }
        Command::Components(io) => {
            let g = open_input(&io)?;
            emit(
                io.format,
                &json!({"components": json::partition(&arc_connected_components(&g))}),
            );
        }
        Command::Cdual(io) => {
            let g = open_input(&io)?;
            let (c, w) = c_dual_witness(&g);
            emit(io.format, &json!({"c_dual": json::cdual(c), "witness": w.map(json::set)}));
        }
        Command::Conditions(io) => {
            let g = open_input(&io)?;
            emit(io.format, &json::report(&report(&g)));
        }
        Command::Decide { io, k } => {
            let g = open_input(&io)?;
            let rep = report(&g);
            let v = verdict_from(&rep, k)?;
            emit(
                io.format,
                &json!({"verdict": json::verdict(&v), "report": json::report(&rep)}),
            );
            if !v.half_reconstructible {
                return Ok(exit::NOT_HALF_RECONSTRUCTIBLE);
            }
        }
        Command::Witness { io, k, budget } => {
            let g = open_input(&io)?;
            let rep = report(&g);
            let w = if rep.any_l() {
                construct_witness_l(&g, &rep, budget)?
            } else {
                oracle_find_witness_with_budget(&g, k, budget)?
            };
            emit(io.format, &json::witness(&w));
        }
        Command::Oracle { io, k, budget } => {
            let g = open_input(&io)?;
            emit(io.format, &json::witness(&oracle_find_witness_with_budget(&g, k, budget)?));
        }
        Command::Verify { io, against, k } => {
            let g = open_input(&io)?;
            let h = load(&against)?;
            emit(io.format, &json::certificate(&verify_witness(&g, &h, k)?));
        }
        Command::Enumerate { n, class, out } => {
            let (reps, orbits) = match class {
                ClassFilter::All => (enumerate_digraphs(n)?, burnside_digraph_count(n).ok()),
                ClassFilter::Tournaments => {
                    (enumerate_tournaments(n)?, burnside_tournament_count(n).ok())
                }
                ClassFilter::Prechains => (
                    enumerate_digraphs(n)?.into_iter().filter(is_prechain).collect(),
                    None,
                ),
            };
            let mut w = output(out.as_deref())?;
            for g in &reps {
                let line = json!({"key": canonical_key(g)?.to_hex(), "n": n, "dg": dg::to_string(g)});
                writeln!(w, "{line}")?;
            }
            w.flush()?;
            eprintln!(
                "{} classes{}",
                reps.len(),
                orbits.map(|c| format!(" (orbit count {c})")).unwrap_or_default()
            );
        }
        Command::Campaign {
            n_min,
            n_max,
            class,
            source,
            k,
            budget,
            seed,
            samples,
            no_oracle,
            out,
        } => {
            let cfg = CampaignConfig {
                n_min,
                n_max,
                class,
                source,
                ks: k,
                budget,
                seed,
                samples,
                oracle: !no_oracle,
                out: out.clone(),
            };
            let mut w = output(out.as_deref())?;
            let summary = campaign::run_campaign(&cfg, &mut w)?;
            eprintln!(
                "{} items, {} disagreements, {} unresolved, {} errors",
                summary.items, summary.disagreements, summary.unresolved, summary.errors
            );
            if summary.disagreements > 0 {
                return Ok(exit::DISAGREEMENT);
            }
        }
        Command::Merge { inputs, out } => {
            if inputs.is_empty() {
                return Err(Failure::Usage("merge needs at least one input".into()));
            }
            let mut parsed = Vec::new();
            for p in &inputs {
                let lines = campaign::read_lines(BufReader::new(File::open(p)?))
                    .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
                parsed.push((p.display().to_string(), lines));
            }
            let mut w = output(out.as_deref())?;
            let summary = campaign::merge(&parsed, &mut w)?;
            if summary.disagreements > 0 {
                return Ok(exit::DISAGREEMENT);
            }
        }
    }
    Ok(exit::OK)
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (exit::USAGE, m),
                Failure::Capacity(m) => (exit::CAPACITY, m),
                Failure::Internal(m) => (exit::INTERNAL, m),
            };
            eprintln!("hemireco: {msg}");
            code
        }
    };
    ExitCode::from(code as u8)
}
