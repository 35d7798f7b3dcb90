//! Command-line front end: `verify` runs the full check suite and its exit
//! status is the acceptance gate; `table` prints the classification;
//! `graph` exports the blow-up graph.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use delpezzo::catalog;
use delpezzo::suite::{self, SuiteError};

#[derive(Parser)]
#[command(name = "delpezzo", version, about = "Exact verification of group structures on singular del Pezzo surfaces", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite; exits 1 if any check fails.
    Verify {
        /// Only run checks matching this pattern (`*` is a wildcard).
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include per-check wall times (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Print the classification table.
    Table {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Export the blow-up graph.
    Graph {
        #[arg(long, value_enum)]
        format: GraphFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
}

const EXIT_VERIFICATION_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            filter,
            format,
            timings,
        } => match suite::run_suite(filter.as_deref(), timings) {
            Ok(report) => {
                match format {
                    Format::Text => print!("{}", report.render_text()),
                    Format::Json => println!(
                        "{}",
                        serde_json::to_string_pretty(&report).expect("report serializes")
                    ),
                }
                if report.overall_pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(EXIT_VERIFICATION_FAILURE)
                }
            }
            Err(SuiteError::NoMatch(pattern)) => {
                eprintln!("error: filter '{pattern}' matches no check");
                eprintln!("registered checks:");
                for name in suite::check_names() {
                    eprintln!("  {name}");
                }
                ExitCode::from(EXIT_USAGE)
            }
        },
        Command::Table { format } => {
            match format {
                Format::Text => print!("{}", render_table()),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&catalog::catalog_json())
                        .expect("catalog serializes")
                ),
            }
            ExitCode::SUCCESS
        }
        Command::Graph { format } => {
            let GraphFormat::Dot = format;
            print!("{}", render_dot());
            ExitCode::SUCCESS
        }
    }
}

fn render_table() -> String {
    let mut out = String::new();
    out.push_str("degree | type    | lines | toric | Ga2-variety | criterion\n");
    out.push_str("-------+---------+-------+-------+-------------+-----------\n");
    for t in catalog::catalog() {
        let lines = if t.lines == 0 {
            "--".to_string()
        } else {
            t.lines.to_string()
        };
        let flag = |b: bool| if b { "yes" } else { "--" };
        out.push_str(&format!(
            "{:<6} | {:<7} | {:<5} | {:<5} | {:<11} | criterion: {}\n",
            t.degree,
            t.symbol(),
            lines,
            flag(t.toric),
            flag(t.additive),
            t.criterion_summary(),
        ));
    }
    out
}

fn render_dot() -> String {
    let graph = catalog::blowup_graph();
    graph.validate().expect("blow-up graph is acyclic");
    let mut out = String::new();
    out.push_str("digraph blowups {\n");
    out.push_str("  rankdir=RL;\n");
    out.push_str("  node [fontname=\"Helvetica\"];\n");
    for t in graph.node_types() {
        let shape = if t.additive {
            "box, style=bold"
        } else {
            "ellipse"
        };
        out.push_str(&format!("  \"{}\" [shape={shape}];\n", t.node_label()));
    }
    for (child, parent) in graph.edge_types() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\";\n",
            child.node_label(),
            parent.node_label()
        ));
    }
    out.push_str("}\n");
    out
}
