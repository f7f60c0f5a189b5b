//! `plogic`: command-line front end for partition logics, generalized urn
//! models and Mealy automata.
//!
//! Exit codes: 0 success or equivalent, 1 parse error or negative result,
//! 2 validation error, 3 synthesis impossible, 64 usage error.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use partition_logic::automaton::automaton_from_states;
use partition_logic::dot::to_dot;
use partition_logic::gum::gum_from_states;
use partition_logic::logic::{canonical_form, diagrams_isomorphic, logics_isomorphic};
use partition_logic::sim::{simulate, PriorSpec, SimulationSpec};
use partition_logic::states::{convex_membership, enumerate_two_valued_states, is_separating};
use partition_logic::text::{sniff, FileKind};
use partition_logic::translate::{automaton_to_gum, gum_to_automaton};
use partition_logic::{
    Diagram, Experiment, FeasibilityResult, FormatError, Gum, MealyAutomaton, Model,
    PartitionLogic, RationalState, TranslationMap, TwoValuedState,
};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_SYNTHESIS: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "plogic",
    version,
    about = "Partition logics, urn models and Mealy automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the two-valued states of a logic, one 0/1 vector per line.
    States { logic: PathBuf },
    /// Print the partition logic of a GUM or automaton.
    #[command(group = clap::ArgGroup::new("source").required(true))]
    Logic {
        #[arg(long, group = "source", value_name = "FILE")]
        from_gum: Option<PathBuf>,
        #[arg(long, group = "source", value_name = "FILE")]
        from_am: Option<PathBuf>,
        /// Print the canonical form as hex instead of the logic.
        #[arg(long)]
        canon: bool,
    },
    /// Build a GUM or automaton realizing a logic from its two-valued states.
    Synth { kind: SynthKind, logic: PathBuf },
    /// Translate a GUM into an automaton or back.
    Convert {
        direction: Direction,
        file: PathBuf,
        /// Translation map to use instead of the default one.
        #[arg(long, value_name = "FILE")]
        map: Option<PathBuf>,
    },
    /// Decide whether two GUM, automaton or logic files have the same logic.
    Equiv { a: PathBuf, b: PathBuf },
    /// Decide whether a state is a convex combination of two-valued states.
    Realizable {
        logic: PathBuf,
        #[arg(long, value_name = "FILE")]
        state: PathBuf,
    },
    /// Run a seeded single-probe experiment and compare with the prediction.
    Simulate {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
    },
    /// Print the diagram of a logic as an undirected DOT graph.
    ExportDot { logic: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum SynthKind {
    Gum,
    Am,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Gum2am,
    Am2gum,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Table,
    Kv,
}

/// A message for stderr plus the exit code to leave with.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Display) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }

    fn invalid(path: &Path, err: impl Display) -> Self {
        Failure::new(EXIT_INVALID, format!("{}: {err}", path.display()))
    }
}

/// Text for stdout and the exit code; negative answers are reported here
/// with code 1, not as failures.
struct Output {
    text: String,
    code: u8,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Output { text, code: 0 }
    }
}

type Outcome = Result<Output, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("plogic: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::States { logic } => states(&logic),
        Command::Logic {
            from_gum,
            from_am,
            canon,
        } => match (from_gum, from_am) {
            (Some(path), _) => logic(
                read_gum(&path)?
                    .logic()
                    .map_err(|e| Failure::invalid(&path, e))?,
                canon,
            ),
            (_, Some(path)) => logic(
                read_am(&path)?
                    .logic()
                    .map_err(|e| Failure::invalid(&path, e))?,
                canon,
            ),
            (None, None) => unreachable!("clap requires one source"),
        },
        Command::Synth { kind, logic } => synth(kind, &logic),
        Command::Convert {
            direction,
            file,
            map,
        } => convert(direction, &file, map.as_deref()),
        Command::Equiv { a, b } => equiv(&a, &b),
        Command::Realizable { logic, state } => realizable(&logic, &state),
        Command::Simulate { spec, format } => simulate_spec(&spec, format),
        Command::ExportDot { logic } => {
            let d = read_diagram(&logic)?;
            let name = logic
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok(to_dot(&d, &name).into())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_NEGATIVE, format!("{}: {e}", path.display())))
}

fn parsed<T>(path: &Path, result: Result<T, FormatError>) -> Result<T, Failure> {
    result.map_err(|e| {
        let code = if e.is_syntax() {
            EXIT_NEGATIVE
        } else {
            EXIT_INVALID
        };
        Failure::new(code, format!("{}: {e}", path.display()))
    })
}

fn read_diagram(path: &Path) -> Result<Diagram, Failure> {
    parsed(path, Diagram::parse(&read(path)?))
}

fn read_gum(path: &Path) -> Result<Gum, Failure> {
    parsed(path, Gum::parse(&read(path)?))
}

fn read_am(path: &Path) -> Result<MealyAutomaton, Failure> {
    parsed(path, MealyAutomaton::parse(&read(path)?))
}

fn states(path: &Path) -> Outcome {
    let d = read_diagram(path)?;
    let states = enumerate_two_valued_states(&d);
    let mut out: String = states.iter().map(|s| format!("{s}\n")).collect();
    out.push_str(&format!("# {} states\n", states.len()));
    Ok(out.into())
}

fn logic(pl: PartitionLogic, canon: bool) -> Outcome {
    if canon {
        let bytes = canonical_form(&pl).map_err(|e| Failure::new(EXIT_INVALID, e))?;
        let hex: String = bytes.iter().map(|b| format!("{b:02x}")).collect();
        Ok((hex + "\n").into())
    } else {
        Ok(pl.diagram().to_string().into())
    }
}

/// States of a logic, refused unless non-empty and separating.
fn synthesis_states(path: &Path) -> Result<(Diagram, Vec<TwoValuedState>), Failure> {
    let d = read_diagram(path)?;
    let states = enumerate_two_valued_states(&d);
    if states.is_empty() {
        return Err(Failure::new(
            EXIT_SYNTHESIS,
            format!("{}: the logic has no two-valued states", path.display()),
        ));
    }
    if !is_separating(&states, &d) {
        return Err(Failure::new(
            EXIT_SYNTHESIS,
            format!(
                "{}: the two-valued states do not separate all atoms",
                path.display()
            ),
        ));
    }
    Ok((d, states))
}

fn synth(kind: SynthKind, path: &Path) -> Outcome {
    let (d, states) = synthesis_states(path)?;
    match kind {
        SynthKind::Gum => {
            let s = gum_from_states(&d, &states).map_err(|e| Failure::invalid(path, e))?;
            if !s.unpainted_atoms.is_empty() {
                eprintln!("plogic: atoms never true: {}", s.unpainted_atoms.join(" "));
            }
            Ok(s.gum.to_string().into())
        }
        SynthKind::Am => Ok(automaton_from_states(&d, &states)
            .map_err(|e| Failure::invalid(path, e))?
            .to_string()
            .into()),
    }
}

/// Translated model followed by the map as `#` comments, so the output is
/// itself a valid model file.
fn convert(direction: Direction, path: &Path, map_path: Option<&Path>) -> Outcome {
    let map = match map_path {
        Some(p) => Some(parsed(p, TranslationMap::parse(&read(p)?))?),
        None => None,
    };
    let (model, map) = match direction {
        Direction::Gum2am => {
            let (a, m) = gum_to_automaton(&read_gum(path)?, map.as_ref())
                .map_err(|e| Failure::invalid(path, e))?;
            (a.to_string(), m)
        }
        Direction::Am2gum => {
            let (g, m) = automaton_to_gum(&read_am(path)?, map.as_ref())
                .map_err(|e| Failure::invalid(path, e))?;
            (g.to_string(), m)
        }
    };
    let comments: String = map
        .to_string()
        .lines()
        .map(|l| format!("# {l}\n"))
        .collect();
    Ok((model + &comments).into())
}

enum Loaded {
    Logic(Diagram),
    Model(PartitionLogic),
}

fn load_any(path: &Path) -> Result<Loaded, Failure> {
    let src = read(path)?;
    let invalid = |e: &dyn Display| Failure::invalid(path, e);
    match sniff(&src) {
        Some(FileKind::Logic) => Ok(Loaded::Logic(parsed(path, Diagram::parse(&src))?)),
        Some(FileKind::Gum) => Ok(Loaded::Model(
            parsed(path, Gum::parse(&src))?
                .logic()
                .map_err(|e| invalid(&e))?,
        )),
        Some(FileKind::Automaton) => Ok(Loaded::Model(
            parsed(path, MealyAutomaton::parse(&src))?
                .logic()
                .map_err(|e| invalid(&e))?,
        )),
        None => Err(Failure::new(
            EXIT_NEGATIVE,
            format!("{}: not a logic, GUM or automaton file", path.display()),
        )),
    }
}

/// Two models are compared as partition logics; as soon as a logic file is
/// involved the comparison is between diagrams.
fn equiv(a: &Path, b: &Path) -> Outcome {
    let (la, lb) = (load_any(a)?, load_any(b)?);
    let limit = |e| Failure::new(EXIT_INVALID, e);
    let not_equivalent = Output {
        text: "not equivalent\n".into(),
        code: EXIT_NEGATIVE,
    };
    match (la, lb) {
        (Loaded::Model(pa), Loaded::Model(pb)) => {
            let Some(w) = logics_isomorphic(&pa, &pb).map_err(limit)? else {
                return Ok(not_equivalent);
            };
            let mut out = String::from("equivalent\n");
            for (x, &y) in w.ground_map.iter().enumerate() {
                out.push_str(&format!(
                    "ground {} -> {}\n",
                    pa.ground()[x],
                    pb.ground()[y]
                ));
            }
            for (p, &q) in w.partition_map.iter().enumerate() {
                out.push_str(&format!("partition {} -> {}\n", p + 1, q + 1));
            }
            Ok(out.into())
        }
        (la, lb) => {
            let (da, db) = (as_diagram(la), as_diagram(lb));
            let Some(w) = diagrams_isomorphic(&da, &db).map_err(limit)? else {
                return Ok(not_equivalent);
            };
            let mut out = String::from("equivalent\n");
            for (x, &y) in w.atom_map.iter().enumerate() {
                out.push_str(&format!("atom {} -> {}\n", da.atoms()[x], db.atoms()[y]));
            }
            for (p, &q) in w.block_map.iter().enumerate() {
                out.push_str(&format!("block {} -> {}\n", p + 1, q + 1));
            }
            Ok(out.into())
        }
    }
}

fn as_diagram(l: Loaded) -> Diagram {
    match l {
        Loaded::Logic(d) => d,
        Loaded::Model(pl) => pl.diagram(),
    }
}

fn join<T: Display>(values: &[T]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn realizable(logic_path: &Path, state_path: &Path) -> Outcome {
    let d = read_diagram(logic_path)?;
    let target = parsed(state_path, RationalState::parse(&read(state_path)?, &d))?;
    let states = enumerate_two_valued_states(&d);
    let result =
        convex_membership(&target, &states).map_err(|e| Failure::invalid(state_path, e))?;
    match result {
        FeasibilityResult::Feasible { weights } => {
            let mut out = String::from("Feasible\n");
            for (s, w) in states.iter().zip(&weights).filter(|(_, w)| !w.is_zero()) {
                out.push_str(&format!("{w} {s}\n"));
            }
            Ok(out.into())
        }
        FeasibilityResult::Infeasible {
            coefficients,
            bound,
        } => Ok(Output {
            text: format!(
                "Infeasible\ncoefficients {}\nbound {bound}\n",
                join(&coefficients)
            ),
            code: EXIT_NEGATIVE,
        }),
    }
}

fn simulate_spec(path: &Path, format: ReportFormat) -> Outcome {
    let spec = parsed(path, SimulationSpec::parse(&read(path)?))?;
    let model_path = path
        .parent()
        .unwrap_or(Path::new(""))
        .join(&spec.model_path);
    let model = if spec.model_is_gum {
        Model::Gum(read_gum(&model_path)?)
    } else {
        Model::Automaton(read_am(&model_path)?)
    };
    let prior = match spec.prior {
        PriorSpec::Uniform => Experiment::uniform_prior(model.ground().len()),
        PriorSpec::Explicit(v) => v,
    };
    let e = Experiment::new(model, prior, &spec.probe, spec.trials, spec.seed)
        .map_err(|e| Failure::invalid(path, e))?;
    let report = simulate(&e);
    Ok(match format {
        ReportFormat::Table => report.to_table(),
        ReportFormat::Kv => report.to_kv(),
    }
    .into())
}
