use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use tww_core::contraction::format_sequence;
use tww_core::exact::{optimal_sequence_with, SolverConfig};
use tww_core::fen::{fen_approximate, kernelize, sqrt_bound_sequence, FenConfig};
use tww_core::generate::InstanceSpec;
use tww_core::graph::{format_graph, format_trigraph, parse_graph};
use tww_core::report::{verify, verify_text};
use tww_core::vi::{vi_approximate, Threshold, ViConfig};
use tww_core::{ContractionSequence, Error, Trigraph};

mod report;

use report::{empty_details, InstanceStats, Report};

#[derive(Parser)]
#[command(
    name = "tww",
    version,
    about = "Twin-width: exact solving, approximation pipelines, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print the report as a CSV header and row.
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,
    /// Worker threads for the exact solver.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct Common {
    /// Graph or trigraph file.
    graph: PathBuf,
    /// Write the contraction sequence here.
    #[arg(long)]
    emit_sequence: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal contraction sequence.
    Exact {
        #[command(flatten)]
        common: Common,
    },
    /// Approximation through the feedback-edge kernel.
    Fen {
        #[command(flatten)]
        common: Common,
        /// Write the kernel trigraph here.
        #[arg(long)]
        emit_kernel: Option<PathBuf>,
        /// Build the kernel even when the width-2 check succeeds.
        #[arg(long)]
        force_kernel: bool,
    },
    /// Approximation through twin-block reduction.
    Vi {
        #[command(flatten)]
        common: Common,
        /// Blocks kept per class (default: 2^(7p³)).
        #[arg(long)]
        threshold: Option<usize>,
        /// Largest vertex integrity searched for.
        #[arg(long, default_value_t = 8)]
        p_cap: usize,
    },
    /// The square-root construction.
    Sqrt {
        #[command(flatten)]
        common: Common,
    },
    /// Feedback-edge kernel only.
    Kernelize {
        graph: PathBuf,
        /// Write the kernel trigraph here (stdout if omitted).
        #[arg(long)]
        emit_kernel: Option<PathBuf>,
    },
    /// Replay a sequence file against a graph.
    Verify { graph: PathBuf, sequence: PathBuf },
    /// Write a generated instance.
    Generate {
        #[command(subcommand)]
        family: Family,
        /// Output file (stdout if omitted).
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Clone)]
enum Family {
    Paley {
        q: usize,
    },
    Tree {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    TreePlusK {
        n: usize,
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Clique core of `core` vertices with `copies` paths of `component`
    /// vertices, each joined to the whole core by its first vertex.
    ReplicatedComponents {
        core: usize,
        component: usize,
        copies: usize,
    },
    Figure1,
}

impl Family {
    fn spec(&self) -> InstanceSpec {
        match *self {
            Family::Paley { q } => InstanceSpec::Paley { q },
            Family::Tree { n, seed } => InstanceSpec::Tree { n, seed },
            Family::Cycle { n } => InstanceSpec::Cycle { n },
            Family::Complete { n } => InstanceSpec::Complete { n },
            Family::TreePlusK { n, k, seed } => InstanceSpec::TreePlusK { n, k, seed },
            Family::ReplicatedComponents {
                core,
                component,
                copies,
            } => InstanceSpec::ReplicatedComponents {
                core,
                component,
                copies,
            },
            Family::Figure1 => InstanceSpec::Figure1,
        }
    }
}

fn read_graph(path: &Path) -> Result<Trigraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_graph(&text)?)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn solver(jobs: Option<usize>) -> SolverConfig {
    SolverConfig {
        jobs,
        ..SolverConfig::from_env()
    }
}

/// Re-verifies `seq` by replay, writes it if asked, and builds the report.
fn finish(
    command: &'static str,
    g: &Trigraph,
    seq: &ContractionSequence,
    details: serde_json::Value,
    emit: Option<&Path>,
    start: Instant,
) -> Result<Report> {
    let v = verify(seq);
    if let Some(p) = emit {
        if v.valid {
            write_out(Some(p), &format_sequence(seq))?;
        }
    }
    Ok(Report {
        schema: report::SCHEMA,
        command,
        instance: InstanceStats::of(g),
        width: v.width.filter(|_| v.valid),
        details,
        verification: Some(v),
        wall_ms: start.elapsed().as_millis(),
    })
}

fn run(cli: &Cli) -> Result<Option<Report>> {
    let start = Instant::now();
    let cfg = solver(cli.jobs);
    let report = match &cli.command {
        Command::Exact { common } => {
            let g = read_graph(&common.graph)?;
            let r = optimal_sequence_with(&g, None, &cfg)?;
            let details = json!({ "optimal": r.optimal, "claimed_width": r.width });
            finish(
                "exact",
                &g,
                &r.sequence,
                details,
                common.emit_sequence.as_deref(),
                start,
            )?
        }
        Command::Fen {
            common,
            emit_kernel,
            force_kernel,
        } => {
            let g = read_graph(&common.graph)?;
            let fcfg = FenConfig {
                solver: cfg,
                force_kernel: *force_kernel,
                ..FenConfig::default()
            };
            let r = fen_approximate(&g, &fcfg)?;
            if let (Some(p), Some(k)) = (emit_kernel, &r.kernel) {
                write_out(Some(p), &format_trigraph(&k.kernel))?;
            }
            let details = serde_json::to_value(&r.report)?;
            finish(
                "fen",
                &g,
                &r.result.sequence,
                details,
                common.emit_sequence.as_deref(),
                start,
            )?
        }
        Command::Vi {
            common,
            threshold,
            p_cap,
        } => {
            let g = read_graph(&common.graph)?;
            let vcfg = ViConfig {
                solver: cfg,
                threshold: threshold.map_or(Threshold::Guaranteed, Threshold::Fixed),
                p_cap: *p_cap,
            };
            let r = vi_approximate(&g, &vcfg)?;
            let details = serde_json::to_value(&r.report)?;
            finish(
                "vi",
                &g,
                &r.result.sequence,
                details,
                common.emit_sequence.as_deref(),
                start,
            )?
        }
        Command::Sqrt { common } => {
            let g = read_graph(&common.graph)?;
            let r = sqrt_bound_sequence(&g, &cfg)?;
            let details = serde_json::to_value(&r.report)?;
            finish(
                "sqrt",
                &g,
                &r.result.sequence,
                details,
                common.emit_sequence.as_deref(),
                start,
            )?
        }
        Command::Kernelize { graph, emit_kernel } => {
            let g = read_graph(graph)?;
            let k = kernelize(&g, &FenConfig::default())?;
            let text = format_trigraph(&k.kernel);
            let to_stdout = emit_kernel.is_none();
            write_out(emit_kernel.as_deref(), &text)?;
            let prefix = verify(&k.to_kernel);
            let r = Report {
                schema: report::SCHEMA,
                command: "kernelize",
                instance: InstanceStats::of(&g),
                width: None,
                details: serde_json::to_value(k.stats)?,
                verification: Some(prefix),
                wall_ms: start.elapsed().as_millis(),
            };
            if to_stdout && !cli.json && !cli.csv && r.verified() {
                return Ok(None);
            }
            r
        }
        Command::Verify { graph, sequence } => {
            let g = read_graph(graph)?;
            let text = fs::read_to_string(sequence)
                .with_context(|| format!("reading {}", sequence.display()))?;
            let v = verify_text(&g, &text);
            Report {
                schema: report::SCHEMA,
                command: "verify",
                instance: InstanceStats::of(&g),
                width: v.width.filter(|_| v.valid),
                details: empty_details(),
                verification: Some(v),
                wall_ms: start.elapsed().as_millis(),
            }
        }
        Command::Generate { family, out } => {
            let spec = family.spec();
            let g = spec.generate()?;
            let text = if g.red_edge_count() == 0 {
                format_graph(&g)
            } else {
                format_trigraph(&g)
            };
            let to_stdout = out.is_none();
            write_out(out.as_deref(), &text)?;
            if to_stdout {
                return Ok(None);
            }
            Report {
                schema: report::SCHEMA,
                command: "generate",
                instance: InstanceStats::of(&g),
                width: None,
                details: json!({ "spec": spec, "name": spec.to_string() }),
                verification: None,
                wall_ms: start.elapsed().as_millis(),
            }
        }
    };
    Ok(Some(report))
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. }) => 3,
        Some(Error::Parse { .. }) => 4,
        Some(Error::InvalidStep { .. }) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = run(&cli).and_then(|r| {
        let Some(r) = r else { return Ok(true) };
        let mut out = io::stdout().lock();
        if cli.json {
            r.write_json(&mut out)?;
        } else if cli.csv {
            r.write_csv(&mut out)?;
        } else {
            r.write_text(&mut out)?;
        }
        Ok(r.verified())
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
