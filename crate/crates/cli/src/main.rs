use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use csscluster::code_file::CodeFile;
use csscluster::error::{read, write};
use csscluster::pattern_file::{parse_pattern, write_pattern, PatternFile};
use csscluster::render::{to_dot, to_svg};
use csscluster::scenario::run_scenario;
use csscluster::{CliError, CliResult};
use csscluster_core::codes::*;
use csscluster_core::compiler::{basis_mismatches, compile, execute, verify_seed};
use rayon::prelude::*;
use serde_json::json;

#[derive(Parser)]
#[command(name = "csscluster", version, about = "Cluster-state patterns for CSS topological codes")]
struct Cli {
    /// Seed for every random outcome.
    #[arg(long, global = true, env = "CSSCLUSTER_SEED", default_value_t = 0)]
    seed: u64,
    /// Report format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Report::Text)]
    report: Report,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Report {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Toric2d,
    Toric3d,
    Triangular,
    Color2d,
    Colex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TopologyArg {
    Torus,
    Planar,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Write a code description file.
    Build {
        #[arg(long)]
        code: Family,
        /// Lattice size (x size for the 3D toric code, side for triangular).
        #[arg(long = "L", default_value_t = 3)]
        l: usize,
        #[arg(long = "Ly")]
        ly: Option<usize>,
        #[arg(long = "Lz")]
        lz: Option<usize>,
        #[arg(long, value_enum, default_value_t = TopologyArg::Torus)]
        topology: TopologyArg,
        /// Z-cells to remove, comma separated.
        #[arg(long, value_delimiter = ',')]
        holes: Vec<usize>,
        /// Swap z- and x-cells (3D toric code).
        #[arg(long)]
        dual: bool,
        /// Colex preset: three_cell or six_cell.
        #[arg(long, default_value = "three_cell")]
        preset: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compile a code file into a measurement pattern.
    Compile {
        #[arg(long)]
        code: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a pattern once and write the prepared stabilizer generators.
    Execute {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a pattern over many seeds and compare with the code state.
    Verify {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        code: PathBuf,
        #[arg(long, default_value_t = 100)]
        seeds: u64,
    },
    /// Run a twist scenario script.
    Twist {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw a pattern's grid with basis-colored vertices.
    Render {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Artifact text plus the report printed on stdout.
struct Outcome {
    artifact: Option<String>,
    text: String,
    json: serde_json::Value,
    failure: Option<String>,
}

fn load_code(path: &Path) -> CliResult<CssCode> {
    CodeFile::parse(&read(path)?)?.to_code()
}

fn load_pattern(path: &Path) -> CliResult<PatternFile> {
    parse_pattern(&path.display().to_string(), &read(path)?)
}

fn build(cli: &Cli) -> CliResult<Outcome> {
    let Command::Build { code, l, ly, lz, topology, holes, dual, preset, .. } = &cli.command else { unreachable!() };
    let topo = match topology {
        TopologyArg::Torus => Topology::Torus,
        TopologyArg::Planar => Topology::Planar,
    };
    let c = match code {
        Family::Toric2d => build_toric_2d(*l, topo, holes)?,
        Family::Toric3d => build_toric_3d(*l, ly.unwrap_or(*l), lz.unwrap_or(*l), *dual)?,
        Family::Triangular => build_triangular(*l, holes)?,
        Family::Color2d => build_color_2d(*l)?,
        Family::Colex => build_colex_3d(ColexPreset::from_name(preset)?).0,
    };
    let file = CodeFile::from_code(&c, cli.seed);
    Ok(Outcome {
        artifact: Some(file.to_json()),
        text: format!("code {} n={} degeneracy {}", c.name, c.n, file.header.degeneracy),
        json: json!({"code": c.name, "n": c.n, "logical_qubits": file.header.logical_qubits, "degeneracy": file.header.degeneracy, "seed": cli.seed}),
        failure: None,
    })
}

fn compile_cmd(cli: &Cli, code: &Path) -> CliResult<Outcome> {
    let c = load_code(code)?;
    let p = compile(&c)?;
    Ok(Outcome {
        artifact: Some(write_pattern(&p, &c.name, cli.seed)),
        text: format!("pattern for {}: grid {}x{}, {} steps, {} corrections", c.name, p.width, p.height, p.steps.len(), p.corrections.len()),
        json: json!({"code": c.name, "width": p.width, "height": p.height, "steps": p.steps.len(), "corrections": p.corrections.len(), "seed": cli.seed}),
        failure: None,
    })
}

fn execute_cmd(cli: &Cli, pattern: &Path) -> CliResult<Outcome> {
    let pf = load_pattern(pattern)?;
    let (state, record) = execute(&pf.pattern, cli.seed, None)?;
    let canon = state.canonical_form()?;
    let mut art = format!("seed {}\ncode {}\n", cli.seed, pf.code);
    for g in canon.generators() {
        art.push_str(&format!("{g}\n"));
    }
    Ok(Outcome {
        artifact: Some(art),
        text: format!("{} generators; excited cells {:?}", canon.len(), record.excited_cells),
        json: json!({"code": pf.code, "seed": cli.seed, "generators": canon.len(), "excited_cells": record.excited_cells, "flips": record.flips(pf.pattern.output_map.len())}),
        failure: None,
    })
}

fn verify_cmd(cli: &Cli, pattern: &Path, code: &Path, seeds: u64) -> CliResult<Outcome> {
    let pf = load_pattern(pattern)?;
    let c = load_code(code)?;
    if pf.pattern.output_map.len() != c.n {
        return Err(CliError::Invalid(format!("pattern has {} outputs, code has {} qubits", pf.pattern.output_map.len(), c.n)));
    }
    let target = c.code_state()?.canonical_form()?;
    let range: Vec<u64> = (cli.seed..cli.seed + seeds).collect();
    let results: Vec<CliResult<Option<(u64, String)>>> = range
        .par_iter()
        .map(|&s| Ok(verify_seed(&pf.pattern, &target, s)?.map(|why| (s, why))))
        .collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    let basis: Vec<String> = basis_mismatches(&pf.pattern).into_iter().map(|(_, m)| m).collect();
    let failure = if failures.is_empty() && basis.is_empty() {
        None
    } else {
        Some(format!("{} of {seeds} seeds failed, {} basis errors", failures.len(), basis.len()))
    };
    let mut text = format!("{}: {seeds} seeds from {}, {} failures", c.name, cli.seed, failures.len());
    for (s, why) in failures.iter().take(10) {
        text.push_str(&format!("\n  seed {s}: {why}"));
    }
    for m in basis.iter().take(10) {
        text.push_str(&format!("\n  {m}"));
    }
    Ok(Outcome {
        artifact: None,
        text,
        json: json!({"code": c.name, "seed": cli.seed, "seeds": seeds, "failures": failures, "basis_errors": basis, "passed": failure.is_none()}),
        failure,
    })
}

fn twist_cmd(cli: &Cli, scenario: &Path) -> CliResult<Outcome> {
    let report = run_scenario(&scenario.display().to_string(), &read(scenario)?, cli.seed)?;
    let failed = report.entries.iter().filter(|e| !e.ok).count();
    Ok(Outcome {
        artifact: None,
        text: report.to_text().trim_end().to_string(),
        json: serde_json::to_value(&report)?,
        failure: (failed > 0).then(|| format!("{failed} checks failed")),
    })
}

fn render_cmd(cli: &Cli, pattern: &Path, format: Format) -> CliResult<Outcome> {
    let pf = load_pattern(pattern)?;
    let art = match format {
        Format::Dot => format!("// seed {}\n{}", cli.seed, to_dot(&pf.pattern)),
        Format::Svg => format!("<!-- seed {} -->\n{}", cli.seed, to_svg(&pf.pattern)),
    };
    Ok(Outcome {
        artifact: Some(art),
        text: format!("{} vertices", pf.pattern.num_vertices()),
        json: json!({"code": pf.code, "vertices": pf.pattern.num_vertices(), "seed": cli.seed}),
        failure: None,
    })
}

fn run(cli: &Cli) -> CliResult<()> {
    let (outcome, output) = match &cli.command {
        Command::Build { output, .. } => (build(cli)?, output),
        Command::Compile { code, output } => (compile_cmd(cli, code)?, output),
        Command::Execute { pattern, output } => (execute_cmd(cli, pattern)?, output),
        Command::Verify { pattern, code, seeds } => (verify_cmd(cli, pattern, code, *seeds)?, &None),
        Command::Twist { scenario, output } => (twist_cmd(cli, scenario)?, output),
        Command::Render { pattern, format, output } => (render_cmd(cli, pattern, *format)?, output),
    };
    let report = match cli.report {
        Report::Text => outcome.text.clone(),
        Report::Json => serde_json::to_string(&outcome.json)?,
    };
    match (&outcome.artifact, output) {
        (Some(a), Some(path)) => {
            write(path, a)?;
            println!("{report}");
        }
        (Some(a), None) => {
            print!("{a}");
            eprintln!("{report}");
        }
        (None, Some(path)) => {
            write(path, &format!("{report}\n"))?;
            println!("{report}");
        }
        (None, None) => println!("{report}"),
    }
    match outcome.failure {
        Some(f) => Err(CliError::Verification(f)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    // Usage errors are validation errors (exit 1); 2 is reserved for IO.
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
