//! Command-line driver: parse → map → verify → emit.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::emit::{emit_instructions, emit_tracking, write_instructions};
use crate::error::Error;
use crate::geometry::{parse, Circuit};
use crate::lattice::CoordSet;
use crate::mapper::{map_circuit, sheets_for_all_starts, MapOptions, MappedQubit};
use crate::verify::{equivalent_surfaces, verify_all};

pub const INSTRUCTIONS_FILE: &str = "instructions.txt";
pub const TRACKING_FILE: &str = "tracking.txt";
pub const GEOMETRY_FILE: &str = "geometry.txt";

#[derive(Debug, Parser)]
#[command(
    name = "tqcmap",
    version,
    about = "Map defect-braiding circuits onto a cluster lattice"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the measurement instruction stream and tracking document.
    Map(CommonArgs),
    /// Map, then check every sheet and tube against the cluster stabilizers.
    Verify(CommonArgs),
    /// Print per-qubit statistics.
    Stats(CommonArgs),
}

#[derive(Debug, Args, Clone)]
pub struct CommonArgs {
    /// Geometry file.
    pub input: PathBuf,
    /// Output directory for generated files.
    #[arg(short, long, default_value = ".")]
    pub output: PathBuf,
    /// Run sheet finding from every start vertex and require identical sheets.
    #[arg(long)]
    pub sweep_starts: bool,
    /// Override the traversal safety bound of the sheet finder.
    #[arg(long, value_name = "N")]
    pub max_traversals: Option<u64>,
    /// Also write a point/rectangle list for external viewers.
    #[arg(long)]
    pub emit_geometry: bool,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg, out, err),
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            if code == EXIT_OK {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            code
        }
    }
}

pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cfg, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input { path: String, source: Error },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn execute(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let args = match &cfg.command {
        Command::Map(a) | Command::Verify(a) | Command::Stats(a) => a,
    };
    let text = fs::read_to_string(&args.input).map_err(io_err(&args.input))?;
    let input_err = |source| CliError::Input {
        path: args.input.display().to_string(),
        source,
    };
    let circuit = parse(&text).map_err(input_err)?;
    let opts = MapOptions {
        max_traversals: args.max_traversals,
    };
    let mapped = map_circuit(&circuit, opts).map_err(input_err)?;
    let mut code = EXIT_OK;
    if args.sweep_starts && !sweep(&circuit, &mapped, opts, err).map_err(input_err)? {
        code = EXIT_FAIL;
    }
    let tuples: Vec<_> = mapped.iter().map(|m| m.tuple.clone()).collect();

    match &cfg.command {
        Command::Map(_) => {
            let stream = emit_instructions(&circuit.lattice, &tuples).map_err(input_err)?;
            fs::create_dir_all(&args.output).map_err(io_err(&args.output))?;
            write_file(
                &args.output.join(INSTRUCTIONS_FILE),
                &write_instructions(&stream),
            )?;
            write_file(&args.output.join(TRACKING_FILE), &emit_tracking(&tuples))?;
        }
        Command::Verify(_) => {
            let report = verify_all(&circuit.lattice, &tuples).map_err(input_err)?;
            let _ = write!(out, "{report}");
            if !report.passed() {
                code = EXIT_FAIL;
            }
        }
        Command::Stats(_) => {
            for m in &mapped {
                let _ = writeln!(out, "{}", stats_line(m));
            }
        }
    }
    if args.emit_geometry {
        fs::create_dir_all(&args.output).map_err(io_err(&args.output))?;
        write_file(&args.output.join(GEOMETRY_FILE), &geometry_listing(&mapped))?;
    }
    Ok(code)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(io_err(path))
}

/// Returns false when some qubit's sheet depends on the start vertex.
fn sweep(
    circuit: &Circuit,
    mapped: &[MappedQubit],
    opts: MapOptions,
    err: &mut dyn Write,
) -> crate::Result<bool> {
    let mut all_same = true;
    for m in mapped {
        let sheets = sheets_for_all_starts(&m.graph, m.tuple.layer, opts)?;
        let mut distinct: Vec<&CoordSet> = Vec::new();
        for s in &sheets {
            if !distinct.contains(&s) {
                distinct.push(s);
            }
        }
        if distinct.len() > 1 {
            all_same = false;
            let equivalent = distinct.iter().all(|s| {
                equivalent_surfaces(&circuit.lattice, &m.tuple, m.tuple.sheet(), s).unwrap_or(false)
            });
            let _ = writeln!(
                err,
                "sweep: qubit {}: {} distinct sheets over {} starts ({})",
                m.tuple.id,
                distinct.len(),
                sheets.len(),
                if equivalent {
                    "all equivalent up to stabilizers"
                } else {
                    "NOT equivalent"
                }
            );
        }
    }
    Ok(all_same)
}

fn stats_line(m: &MappedQubit) -> String {
    let s = &m.sheet_run.stats;
    let q = &m.tuple;
    format!(
        "qubit {} {} K={} tube_visits={} traversals={} steps={} reduces={} removes={} reshapes={} \
         max_consecutive_reshapes={} subsheets={} D={} I={} O={} J={} X={} Z={}",
        q.id,
        q.layer,
        m.graph.len(),
        m.tube_stats.visits,
        s.traversals,
        s.steps,
        s.reduces,
        s.removes,
        s.reshapes,
        s.max_consecutive_reshapes,
        m.sheet_run.subs.len(),
        q.d.len(),
        q.i.len(),
        q.o.len(),
        q.j.len(),
        q.x.len(),
        q.z.len()
    )
}

/// Plain text: cycle vertices, sub-sheet boxes and every qubit set.
pub fn geometry_listing(mapped: &[MappedQubit]) -> String {
    let mut out = String::new();
    for m in mapped {
        let q = &m.tuple;
        out.push_str(&format!("qubit {} {}\n", q.id, q.layer));
        for (c, ty) in m.graph.coords().iter().zip(m.graph.edge_types()) {
            out.push_str(&format!("vertex {c} {ty}\n"));
        }
        for ss in &m.sheet_run.subs {
            let (lo, hi) = ss.bounds();
            out.push_str(&format!("box {lo} {hi}\n"));
        }
        for (name, set) in [
            ("D", &q.d),
            ("I", &q.i),
            ("O", &q.o),
            ("J", &q.j),
            ("X", &q.x),
            ("Z", &q.z),
        ] {
            for c in set {
                out.push_str(&format!("point {name} {c}\n"));
            }
        }
    }
    out
}
