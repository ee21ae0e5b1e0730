use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pinchkit::bounds::{parse_edge_list, RuleBase};
use pinchkit::claims::{self, ClaimOptions};
use pinchkit::families::{counterexample_record, scan_counterexamples};
use pinchkit::knot::{pinch_step, pinch_trajectory, TorusKnotClass};
use pinchkit::report::{serialize, Format, PinchRecord, Record, ReportDocument, Verdict};

#[derive(Parser)]
#[command(name = "pinchkit", version, about = "Pinch moves and non-orientable four-genus bounds for torus knots")]
struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Text => Format::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// One pinch move: the residues (t, h) and the resulting knot.
    Pinch { p: u64, q: u64 },
    /// The pinch number and the full pinch trajectory.
    Theta { p: u64, q: u64 },
    /// The derived γ₄ interval with provenance.
    Gamma4 {
        p: u64,
        q: u64,
        /// Extra band-move edges, one per line.
        #[arg(long)]
        edges: Option<PathBuf>,
    },
    /// Every coprime 2 <= p < q within the bounds, sorted by (p, q).
    Scan {
        #[arg(long)]
        pmax: u64,
        #[arg(long)]
        qmax: u64,
    },
    /// Checks every published statement end to end.
    VerifyPaper {
        #[arg(long)]
        nmax: Option<u64>,
        #[arg(long)]
        kmax: Option<u64>,
    },
}

/// Exit code 2: the input itself is unusable.
struct InputError(String);

impl<E: Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn knot(p: u64, q: u64) -> Result<TorusKnotClass, InputError> {
    Ok(TorusKnotClass::new(p, q)?)
}

fn run(cmd: &Command) -> Result<Vec<Record>, InputError> {
    Ok(match cmd {
        Command::Pinch { p, q } => {
            let k = knot(*p, *q)?;
            let (solution, result) = pinch_step(k)?;
            vec![Record::Pinch(PinchRecord { knot: k, solution, result })]
        }
        Command::Theta { p, q } => vec![Record::Trajectory(pinch_trajectory(knot(*p, *q)?)?)],
        Command::Gamma4 { p, q, edges } => {
            let k = knot(*p, *q)?;
            let mut rules = RuleBase::standard();
            if let Some(path) = edges {
                let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
                rules = rules.with_edges(parse_edge_list(&text)?);
            }
            vec![Record::Knot(counterexample_record(k, &rules)?)]
        }
        Command::Scan { pmax, qmax } => {
            scan_counterexamples(*pmax, *qmax, &RuleBase::standard())?.into_iter().map(Record::Knot).collect()
        }
        Command::VerifyPaper { nmax, kmax } => claims::run_all(ClaimOptions { n_max: *nmax, k_max: *kmax })
            .into_iter()
            .map(Record::Claim)
            .collect(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match run(&cli.command) {
        Ok(records) => {
            let doc = ReportDocument::new(echo, records);
            print!("{}", serialize(&doc, cli.format.into()));
            match doc.verdict {
                Verdict::Pass => ExitCode::SUCCESS,
                Verdict::Fail => ExitCode::from(1),
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
