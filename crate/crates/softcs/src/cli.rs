use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value as Json};

use softcs_core::frontier::Dominance;
use softcs_core::journey::{best_journeys, ChargingPolicy};
use softcs_core::sclp::{ground, lfp, parse_atoms, parse_program, GroundAtom, ProgramError};

use crate::formats::{load_appointments, load_network, load_scsp, load_stations, value_to_json, FormatError};
use crate::render::{self, Format, Report};

#[derive(Debug, Parser)]
#[command(
    name = "softcs",
    version,
    about = "Soft constraints, SCLP fixpoints and multi-criteria EV trip planning"
)]
struct Cli {
    /// Print one JSON document instead of text lines.
    #[arg(long, global = true)]
    json: bool,
    /// Frontier filter: `strict` (both costs strictly lower) or `weak` (Pareto).
    #[arg(long, global = true, default_value = "strict", value_parser = parse_dominance)]
    dominance: Dominance,
    #[command(subcommand)]
    command: Command,
}

fn parse_dominance(s: &str) -> Result<Dominance, String> {
    s.parse().map_err(|_| format!("expected `strict` or `weak`, got `{s}`"))
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Non-dominated routes between two nodes.
    Trip {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Energy budget.
        #[arg(long)]
        limit: u64,
        /// Print every simple path within the budget, unfiltered.
        #[arg(long)]
        all: bool,
    },
    /// Non-dominated journeys through a sequence of appointments.
    Journey {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        appointments: PathBuf,
        #[arg(long)]
        stations: PathBuf,
        /// Initial state of charge.
        #[arg(long)]
        soc: u64,
        /// Energy gained per time unit while charging.
        #[arg(long, default_value_t = 1)]
        rate: u64,
        /// Battery capacity (unbounded when absent).
        #[arg(long)]
        capacity: Option<u64>,
        /// Lowest allowed state of charge.
        #[arg(long, default_value_t = 0)]
        threshold: u64,
    },
    /// Solution table and best level of a soft CSP.
    Scsp {
        #[arg(long)]
        problem: PathBuf,
    },
    /// Least fixpoint of a soft constraint logic program.
    Sclp {
        #[arg(long)]
        program: PathBuf,
        /// Ground goal, e.g. `s(a)`; overrides a `:- goal.` line.
        #[arg(long)]
        goal: Option<String>,
        #[arg(long)]
        max_iters: Option<usize>,
        /// Also print every iterate.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: cannot read: {e}", path.display())))
}

fn in_file(path: &Path) -> impl Fn(FormatError) -> Failure + '_ {
    move |e| Failure::Input(format!("{}: {e}", path.display()))
}

fn path_json(p: &Path) -> Json {
    json!(p.display().to_string())
}

/// Parses `argv` (program name first), runs the query and returns the exit
/// status: 0 on success, 1 for input errors, 2 for internal failures.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let _ = write!(err, "{e}");
            return 1;
        }
    };
    let format = if cli.json { Format::Json } else { Format::Text };
    match execute(&cli) {
        Ok(report) => match out.write_all(report.render(format).as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write output: {e}");
                2
            }
        },
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
        Err(Failure::Internal(m)) => {
            let _ = writeln!(err, "internal error: {m}");
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    let mut report = Report::default();
    report
        .inputs
        .insert("command".into(), json!(command_name(&cli.command)));
    match &cli.command {
        Command::Trip {
            network,
            from,
            to,
            limit,
            all,
        } => {
            let net = load_network(&read(network)?).map_err(in_file(network))?;
            let bad = |e: softcs_core::roadnet::NetworkError| Failure::Input(format!("{}: {e}", network.display()));
            let (lines, results) = if *all {
                let trips = net.enumerate_paths(from, to, *limit).map_err(bad)?;
                render::trips(trips.iter().map(|t| (&t.path, &t.cost)))
            } else {
                let best = net.best_paths(from, to, *limit, cli.dominance).map_err(bad)?;
                render::trips(best.items().iter().map(|(r, c)| (r, c)))
            };
            report.inputs.extend([
                ("network".into(), path_json(network)),
                ("from".into(), json!(from)),
                ("to".into(), json!(to)),
                ("limit".into(), json!(limit)),
                ("all".into(), json!(all)),
                ("dominance".into(), json!(cli.dominance.to_string())),
            ]);
            report.lines = lines;
            report.results = results;
        }
        Command::Journey {
            network,
            appointments,
            stations,
            soc,
            rate,
            capacity,
            threshold,
        } => {
            let net = load_network(&read(network)?).map_err(in_file(network))?;
            let appts = load_appointments(&read(appointments)?).map_err(in_file(appointments))?;
            let sts = load_stations(&read(stations)?).map_err(in_file(stations))?;
            let policy = ChargingPolicy {
                rate: *rate,
                capacity: *capacity,
                threshold: *threshold,
            };
            let best = best_journeys(&net, &appts, &sts, *soc, &policy, cli.dominance)
                .map_err(|e| Failure::Input(e.to_string()))?;
            let (lines, results) = render::journeys(best.witnesses());
            report.inputs.extend([
                ("network".into(), path_json(network)),
                ("appointments".into(), path_json(appointments)),
                ("stations".into(), path_json(stations)),
                ("soc".into(), json!(soc)),
                ("rate".into(), json!(rate)),
                ("capacity".into(), json!(capacity)),
                ("threshold".into(), json!(threshold)),
                ("dominance".into(), json!(cli.dominance.to_string())),
            ]);
            report.lines = lines;
            report.results = results;
        }
        Command::Scsp { problem } => {
            let p = load_scsp(&read(problem)?).map_err(in_file(problem))?;
            let sol = p
                .solve()
                .map_err(|e| Failure::Input(format!("{}: {e}", problem.display())))?;
            let blevel = p
                .blevel()
                .map_err(|e| Failure::Input(format!("{}: {e}", problem.display())))?;
            let (lines, results) = render::solution(&sol);
            report.inputs.extend([
                ("problem".into(), path_json(problem)),
                ("semiring".into(), json!(p.kind.key())),
            ]);
            report.preamble.push(render::blevel_line(&blevel));
            report.extra.insert("blevel".into(), value_to_json(&blevel));
            report.extra.insert(
                "support".into(),
                json!(sol.declared_support().iter().map(|n| n.as_str()).collect::<Vec<_>>()),
            );
            report.lines = lines;
            report.results = results;
        }
        Command::Sclp {
            program,
            goal,
            max_iters,
            trace,
        } => {
            let text = read(program)?;
            let prog = parse_program(&text).map_err(|e| Failure::Input(format!("{}: {e}", program.display())))?;
            let goal_atoms = match goal {
                Some(g) => parse_atoms(g).map_err(|e| Failure::Input(format!("--goal: {}", e.message)))?,
                None => prog.goal.clone(),
            };
            let goal_ground: Vec<GroundAtom> = goal_atoms
                .iter()
                .map(|a| {
                    a.to_ground()
                        .ok_or_else(|| Failure::Input(format!("goal atom `{a}` is not ground")))
                })
                .collect::<Result<_, _>>()?;
            let g = ground(&prog).map_err(|e| Failure::Input(format!("{}: {e}", program.display())))?;
            let budget = max_iters.unwrap_or_else(|| g.default_max_iters());
            let fix = lfp(&g, budget).map_err(|e| match e {
                ProgramError::NonConvergence { .. } => Failure::Internal(format!("{}: {e}", program.display())),
                other => Failure::Input(format!("{}: {other}", program.display())),
            })?;
            let heads: Vec<GroundAtom> = g
                .clauses
                .iter()
                .map(|c| c.head.clone())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let interp = fix.interpretation();

            report.inputs.extend([
                ("program".into(), path_json(program)),
                ("semiring".into(), json!(prog.kind.key())),
                (
                    "goal".into(),
                    json!(goal_atoms.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")),
                ),
                ("max_iters".into(), json!(budget)),
            ]);
            report.extra.insert("steps".into(), json!(fix.steps()));
            if *trace {
                report.preamble = render::trace_table(&fix, &heads);
                report.extra.insert("iterates".into(), render::trace_json(&fix, &heads));
            }
            if goal_ground.is_empty() {
                let (lines, results) = render::atom_values(heads.iter().map(|a| (a, interp.get(a))));
                report.lines = lines;
                report.results = results;
            } else {
                let values: Vec<_> = goal_ground.iter().map(|a| interp.get(a)).collect();
                let value = prog
                    .kind
                    .product(&values)
                    .map_err(|e| Failure::Internal(e.to_string()))?;
                let goal_text = goal_atoms.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ");
                report.lines = vec![value.to_string()];
                report.results = vec![json!({ "goal": goal_text, "value": value_to_json(&value) })];
            }
        }
    }
    Ok(report)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Trip { .. } => "trip",
        Command::Journey { .. } => "journey",
        Command::Scsp { .. } => "scsp",
        Command::Sclp { .. } => "sclp",
    }
}
