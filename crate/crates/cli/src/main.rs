use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use simplex_cli::commands::{cmd_centers, cmd_fermat, cmd_isodynamic, cmd_isogonic, parse_method, CliError, Settings};
use simplex_cli::document::{parse_document, parse_point, parse_point_list, ParsedSimplex};
use simplex_cli::report::CenterReport;
use simplex_cli::verify::cmd_verify_paper;

/// Centers of n-simplices from vertex coordinates or edge lengths.
#[derive(Parser)]
#[command(name = "simplex", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Convergence tolerance (verify-paper: tolerance of every numeric check).
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Iteration cap for the iterative commands.
    #[arg(long, global = true)]
    max_iter: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Centroid, incenter, symmedian point and circumcenter.
    Centers {
        /// Simplex document, or `-` for stdin.
        doc: String,
        /// Report the centers of the facet opposite vertex k (1-based).
        #[arg(long)]
        facet: Option<usize>,
    },
    /// Isodynamic points, or a witness that none exist.
    Isodynamic {
        doc: String,
        /// Barycentric point defining the spheres (default: the incenter).
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Fermat-Torricelli point.
    Fermat {
        doc: String,
        /// q, r or classic.
        #[arg(long, default_value = "q")]
        method: String,
        /// Starting point (default: the centroid).
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
        /// Include every iterate in the report.
        #[arg(long)]
        trace: bool,
    },
    /// Isogonic points and their pedal-equiareal conjugates.
    Isogonic {
        doc: String,
        /// Extra seeds: a JSON list of points, inline or in a file.
        #[arg(long, allow_hyphen_values = true)]
        seeds: Option<String>,
        /// Iteration budget per seed.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Recompute the reference values and the randomized checks.
    VerifyPaper,
}

fn read_doc(path: &str) -> Result<ParsedSimplex, CliError> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?
    };
    parse_document(&text).map_err(|e| match CliError::from(e) {
        CliError::Input(msg) => CliError::Input(format!("{path}: {msg}")),
        other => other,
    })
}

fn run(cli: &Cli) -> Result<CenterReport, CliError> {
    let settings = Settings {
        tolerance: cli.tolerance,
        max_iter: cli.max_iter,
    };
    match &cli.command {
        Command::Centers { doc, facet } => cmd_centers(&read_doc(doc)?, *facet),
        Command::Isodynamic { doc, point } => {
            let parsed = read_doc(doc)?;
            let m = parsed.model.vertex_count();
            let p = point.as_deref().map(|s| parse_point(s, m)).transpose()?;
            cmd_isodynamic(&parsed, p.as_deref())
        }
        Command::Fermat {
            doc,
            method,
            start,
            trace,
        } => {
            let parsed = read_doc(doc)?;
            let m = parsed.model.vertex_count();
            let method = parse_method(method)?;
            let s = start.as_deref().map(|s| parse_point(s, m)).transpose()?;
            cmd_fermat(&parsed, method, s.as_deref(), *trace, settings)
        }
        Command::Isogonic { doc, seeds, budget } => {
            let parsed = read_doc(doc)?;
            let m = parsed.model.vertex_count();
            let seeds = match seeds {
                None => vec![],
                Some(s) if s.trim_start().starts_with('[') => parse_point_list(s, m)?,
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
                    parse_point_list(&text, m)?
                }
            };
            cmd_isogonic(&parsed, &seeds, *budget, settings)
        }
        Command::VerifyPaper => cmd_verify_paper(cli.tolerance),
    }
}

fn render(report: &CenterReport, json: bool) -> String {
    if json {
        report.to_json() + "\n"
    } else {
        report.to_text()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", render(&report, cli.json));
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let Some(report) = e.report() {
                print!("{}", render(report, cli.json));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
