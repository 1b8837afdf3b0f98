//! `taut`: load a model file, run closures and identity checks, report.

pub mod commands;
pub mod expr;
pub mod model;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{ClosureArgs, InputError, Settings};
use report::{digest, Report};

#[derive(Debug, Parser)]
#[command(name = "taut", version, about = "Exact tautological-ring computations on Jacobians")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest genus for which the 4^g-dimensional exterior model is built.
    #[arg(long, global = true, default_value_t = 6)]
    pub genus_cap: usize,
    /// Seed for randomized audits and random test pairs.
    #[arg(long, global = true, default_value_t = 0)]
    pub audit_seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every identity check that applies to the model.
    Check { model: PathBuf },
    /// Compute a tautological closure.
    Closure {
        model: PathBuf,
        /// Seed class expression (repeatable).
        #[arg(long = "seed")]
        seeds: Vec<String>,
        /// Extra pusher: minus, F, Finv, hom:K, or a group-algebra expression in s.
        #[arg(long = "pusher")]
        pushers: Vec<String>,
        /// Do not adjoin the unit (presentation models only).
        #[arg(long)]
        no_unit: bool,
    },
    /// Split J into the fixed part Y and its complement Z.
    Decompose { model: PathBuf },
    /// Print the Hilbert function of the model.
    Hilbert { model: PathBuf },
    /// Apply the Fourier transform to a class.
    Fourier {
        model: PathBuf,
        #[arg(long)]
        class: String,
    },
    /// Write a gonal preset model, e.g. `trigonal:d=6`.
    Preset {
        spec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read_model(path: &PathBuf) -> Result<(Vec<u8>, model::Model), InputError> {
    let bytes = std::fs::read(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    let src = std::str::from_utf8(&bytes).map_err(|_| InputError(format!("{} is not UTF-8", path.display())))?;
    let m = model::parse_model(src).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok((bytes, m))
}

/// TOML text of a gonal preset described by `family:key=val,...`.
pub fn preset_toml(spec: &str) -> Result<String, InputError> {
    let (family, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut gonality = match family {
        "hyperelliptic" => Some(2),
        "trigonal" => Some(3),
        "tetragonal" => Some(4),
        "pentagonal" => Some(5),
        "gonal" => None,
        other => {
            return Err(InputError(format!(
                "unknown preset family '{other}' (hyperelliptic, trigonal, tetragonal, pentagonal, gonal)"
            )))
        }
    };
    let (mut d, mut k, mut chi) = (None, None, None);
    for kv in rest.split(',').filter(|s| !s.is_empty()) {
        let (key, val) = kv.split_once('=').ok_or_else(|| InputError(format!("expected key=value, got '{kv}'")))?;
        let n: i64 = val.trim().parse().map_err(|_| InputError(format!("'{key}' needs an integer value")))?;
        let as_u32 = || u32::try_from(n).map_err(|_| InputError(format!("'{key}' must be non-negative")));
        match key.trim() {
            "d" => d = Some(as_u32()?),
            "k" => k = Some(as_u32()?),
            "chi" => chi = Some(n),
            "gonality" if family == "gonal" => gonality = Some(as_u32()?),
            other => return Err(InputError(format!("unknown preset key '{other}'"))),
        }
    }
    let d = d.ok_or_else(|| InputError("preset needs d=<dimension>".to_string()))?;
    let gonality = gonality.ok_or_else(|| InputError("the gonal family needs gonality=<n>".to_string()))?;
    let mut out = format!("kind = \"gonal-preset\"\n\n[meta]\nname = \"{family} d={d}\"\n\n[gonal]\nd = {d}\ngonality = {gonality}\n");
    if let Some(k) = k {
        out.push_str(&format!("k = {k}\n"));
    }
    if let Some(chi) = chi {
        out.push_str(&format!("chi = {chi}\n"));
    }
    model::parse_model(&out).map_err(|e| InputError(e.to_string()))?;
    Ok(out)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, InputError> {
    let settings = Settings {
        genus_cap: cli.genus_cap,
        audit_seed: cli.audit_seed,
    };
    let canonical = format!("genus_cap={};audit_seed={}", cli.genus_cap, cli.audit_seed);
    let (name, path, extra) = match &cli.command {
        Command::Preset { spec, output } => {
            let text = preset_toml(spec)?;
            match output {
                Some(p) => std::fs::write(p, &text).map_err(|e| InputError(format!("cannot write {}: {e}", p.display())))?,
                None => out.write_all(text.as_bytes()).map_err(|e| InputError(e.to_string()))?,
            }
            return Ok(0);
        }
        Command::Check { model } => ("check", model, String::new()),
        Command::Closure {
            model,
            seeds,
            pushers,
            no_unit,
        } => ("closure", model, format!("seeds={seeds:?};pushers={pushers:?};no_unit={no_unit}")),
        Command::Decompose { model } => ("decompose", model, String::new()),
        Command::Hilbert { model } => ("hilbert", model, String::new()),
        Command::Fourier { model, class } => ("fourier", model, format!("class={class}")),
    };
    let (bytes, m) = read_model(path)?;
    let mut report = Report::new(
        name,
        m.name(),
        digest(&[name.as_bytes(), &bytes, canonical.as_bytes(), extra.as_bytes()]),
    );
    match &cli.command {
        Command::Check { .. } => commands::check(&m, &settings, &mut report)?,
        Command::Closure {
            seeds, pushers, no_unit, ..
        } => commands::closure(
            &m,
            &ClosureArgs {
                seeds,
                pushers,
                adjoin_unit: !no_unit,
            },
            &settings,
            &mut report,
        )?,
        Command::Decompose { .. } => commands::decompose(&m, &settings, &mut report)?,
        Command::Hilbert { .. } => commands::hilbert(&m, &settings, &mut report)?,
        Command::Fourier { class, .. } => commands::fourier_cmd(&m, class, &settings, &mut report)?,
        Command::Preset { .. } => unreachable!("handled above"),
    }
    let text = if cli.json { report.to_json() } else { report.to_text() };
    out.write_all(text.as_bytes()).map_err(|e| InputError(e.to_string()))?;
    Ok(commands::exit_code(&report))
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status: 0 when every check passes, 1 when any fails, 2 on input errors.
pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
