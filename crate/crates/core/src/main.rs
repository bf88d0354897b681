//! `multistruct replicate <target>`: recompute printed values and report
//! agreement.
//!
//! Exit codes: 0 all records match, 1 at least one discrepancy, 2 invalid
//! input, 3 internal inconsistency.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use multistruct::replicate::{
    parse_points, replicate, seeded_points, Options, RChoice, ReplicateError, Report, Target, TemplateChoice,
    Window, SEED_VAR,
};

#[derive(Parser)]
#[command(name = "multistruct", version, about = "Exact replication of multiple-structure computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute one group of values (or `all`) and compare with the printed ones.
    Replicate {
        /// double-conic, double-plane, triple-plane, wedge, koszul, expansion,
        /// congruence, graded, ext-claim or all.
        target: Target,
        /// `sym` for the parametric computation or a fixed nonnegative r.
        #[arg(long, default_value = "sym")]
        r: RChoice,
        /// Which chi_Y template to solve against: paper, derived or both.
        #[arg(long, default_value = "both")]
        template: TemplateChoice,
        /// Sample points for fibrewise checks, e.g. "[1:0],[0:1],[2:3]".
        #[arg(long)]
        points: Option<String>,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Inclusive range of r for certificates, e.g. 0..6.
        #[arg(long)]
        window: Option<Window>,
    },
}

fn print_table(report: &Report) {
    for rec in &report.records {
        let tag = if rec.matched { "MATCH" } else { "DIFF " };
        println!("{tag} {:<48} {}", rec.claim_id, rec.computed_value);
        if !rec.matched {
            println!("      printed: {}", rec.paper_value);
            if !rec.notes.is_empty() {
                println!("      note: {}", rec.notes);
            }
        }
    }
    let s = &report.summary;
    println!("{} records, {} matched, {} discrepancies", s.total, s.matched, s.discrepancies);
}

fn run(cli: Cli) -> Result<i32, ReplicateError> {
    let Command::Replicate { target, r, template, points, json, window } = cli.command;
    let mut pts = match points {
        Some(text) => parse_points(&text).map_err(ReplicateError::Invalid)?,
        None => multistruct::graded::default_points(),
    };
    if let Ok(seed) = std::env::var(SEED_VAR) {
        let seed: u64 = seed
            .parse()
            .map_err(|_| ReplicateError::Invalid(format!("{SEED_VAR} must be an unsigned integer")))?;
        pts.extend(seeded_points(seed, 3));
    }
    let opts = Options { r, templates: template.templates(), points: pts, window };
    let report = replicate(target, &opts)?;
    match json.as_deref() {
        Some(p) if p.as_os_str() == "-" => println!("{}", report.to_json()),
        Some(p) => {
            report.write_json(p)?;
            print_table(&report);
        }
        None => print_table(&report),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
