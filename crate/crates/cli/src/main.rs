mod args;
mod render;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde::Serialize;

use args::{Cli, Command, Common, Format};
use nilgraph_core::graphs::ExportFormat;
use nilgraph_core::group::DEFAULT_ORDER_CAP;
use nilgraph_core::verify::{
    analyze_spec, default_catalog, find_order54_witness, run_catalog, Candidate, Catalog,
    ClassificationReport, DEFAULT_CATALOG_CAP,
};
use nilgraph_core::{Analysis, GroupSpec, Limits, VerifyError};

const EXIT_VERIFICATION_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let hard_failure = matches!(
                e.downcast_ref::<VerifyError>(),
                Some(VerifyError::WitnessNotFound)
            );
            ExitCode::from(if hard_failure {
                EXIT_VERIFICATION_FAILED
            } else {
                EXIT_USAGE
            })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let common = &cli.common;
    let format = common.format.unwrap_or(Format::Json);
    if format == Format::Dot && !matches!(cli.command, Command::Graph { .. }) {
        bail!("--format dot is only valid for the graph command");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common.jobs)
        .build()
        .context("building the worker pool")?;
    pool.install(|| execute(&cli.command, common, format))
}

fn execute(command: &Command, common: &Common, format: Format) -> Result<ExitCode> {
    let cap = common.order_cap.map(|c| c as usize);
    let limits = Limits::with_order_cap(cap.unwrap_or(DEFAULT_ORDER_CAP));
    match command {
        Command::Build(s) => {
            let spec = read_spec(&s.spec)?;
            let g = spec.build(&limits)?;
            let text = match format {
                Format::Text => render::group(&spec.name(), &g),
                _ => json(&GroupOutput::new(&spec, &g)),
            };
            emit(common, &text)?;
        }
        Command::Analyze { spec, checks } => {
            let spec = read_spec(&spec.spec)?;
            let report = analyze_spec(&spec, limits, checks.only())?;
            let text = match format {
                Format::Text => render::report(&report),
                _ => json(&report),
            };
            emit(common, &text)?;
        }
        Command::Graph { spec, kind } => {
            let spec = read_spec(&spec.spec)?;
            let a = Analysis::new(spec.build(&limits)?);
            let graph = a.graph(*kind);
            let text = match format {
                Format::Text => render::graph(graph),
                Format::Dot => graph.export(ExportFormat::Dot),
                Format::Json => graph.export(ExportFormat::Json),
            };
            emit(common, &text)?;
        }
        Command::Verify { catalog, checks } => {
            let mut catalog = match catalog {
                Some(path) => {
                    let raw = fs::read_to_string(path)
                        .with_context(|| format!("reading catalog {}", path.display()))?;
                    Catalog::from_json(&raw, DEFAULT_CATALOG_CAP)?
                }
                None => default_catalog(),
            };
            if let Some(cap) = cap {
                catalog.cap = cap;
            }
            let report = run_catalog(&catalog, checks.only())?;
            let text = match format {
                Format::Text => render::catalog(&report),
                _ => report.to_json(),
            };
            emit(common, &text)?;
            let s = &report.summary;
            eprintln!(
                "{} entries, {} errors, {} failures",
                s.entries, s.errors, s.failures
            );
            if s.failures > 0 {
                return Ok(ExitCode::from(EXIT_VERIFICATION_FAILED));
            }
        }
        Command::Witness54 { list_candidates } => {
            let (winner, all) = find_order54_witness(&limits)?;
            let report = analyze_spec(&winner.spec, limits, None)?;
            let listed = list_candidates.then_some(all.as_slice());
            let text = match format {
                Format::Text => render::witness(&winner, &render::report(&report), listed),
                _ => json(&WitnessOutput {
                    witness: &winner,
                    report: &report,
                    candidates: listed,
                }),
            };
            emit(common, &text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct GroupOutput<'a> {
    name: String,
    order: usize,
    spec: &'a GroupSpec,
    generators: Vec<usize>,
    element_orders: &'a [u32],
    table: Vec<&'a [u32]>,
}

impl<'a> GroupOutput<'a> {
    fn new(spec: &'a GroupSpec, g: &'a nilgraph_core::Group) -> Self {
        GroupOutput {
            name: spec.name(),
            order: g.order(),
            spec,
            generators: g.generators().iter().map(|e| e.index()).collect(),
            element_orders: g.element_orders(),
            table: g.table().chunks(g.order()).collect(),
        }
    }
}

#[derive(Serialize)]
struct WitnessOutput<'a> {
    witness: &'a Candidate,
    report: &'a ClassificationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    candidates: Option<&'a [Candidate]>,
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}

/// Inline JSON when the argument starts with `{`, otherwise a file path.
fn read_spec(arg: &str) -> Result<GroupSpec> {
    let raw = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(Path::new(arg)).with_context(|| format!("reading spec {arg}"))?
    };
    serde_json::from_str(&raw).context("parsing group spec")
}

fn emit(common: &Common, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &common.output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
