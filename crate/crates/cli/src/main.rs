use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bpb_core::io::{read_to_string, spectral_measure_to_json, CorrectionRecord};
use bpb_core::linalg::{numerical_radius, operator_norm, OperatorClass, UnitVector};
use bpb_core::spectral::normal_spectral_measure;
use bpb_core::{
    io as bio, norm_correct, norm_correct_schatten, nu_correct::nu_correct_any, ComplexMatrix, Mode,
};
use bpb_core::{NormCorrectionRequest, NuCorrectionRequest};
use bpb_harness::report::{emit_plotdata, emit_report, Format};
use bpb_harness::verify::verify_record;
use bpb_harness::{
    brute_force_norm, brute_force_radius, run_experiment, ExperimentConfig, DEFAULT_GRID_DENSITY,
};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bpb",
    version,
    about = "Norm and numerical-radius attainment correctors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Correct an operator that almost attains its norm or numerical radius.
    Correct(CorrectArgs),
    /// Run an experiment sweep and write a report.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Report path; `.json` selects JSON, anything else CSV.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        format: Option<Format>,
        /// Also write (class, epsilon, bound, distance) plot data here.
        #[arg(long)]
        plotdata: Option<PathBuf>,
        #[arg(long, env = "BPB_SEED")]
        seed: Option<u64>,
    },
    /// Compare the norm and numerical-radius solvers with brute force.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GRID_DENSITY)]
        density: usize,
    },
    /// Re-check a saved correction from its operators and points alone.
    Verify {
        #[arg(long)]
        result: PathBuf,
    },
}

#[derive(clap::Args)]
struct CorrectArgs {
    #[arg(long, default_value = "norm")]
    mode: Mode,
    /// general, positive, self-adjoint, anti-symmetric, unitary, normal or schatten:<p>
    #[arg(long, default_value = "general")]
    class: OperatorClass,
    /// Schatten exponent for the sigma_p estimate.
    #[arg(long)]
    schatten: Option<f64>,
    #[arg(long)]
    epsilon: f64,
    /// Operator as JSON.
    #[arg(long)]
    input: PathBuf,
    /// Starting unit vector as JSON.
    #[arg(long)]
    point: PathBuf,
    /// Attain at the given point itself.
    #[arg(long)]
    exact_point: bool,
    /// Rescale the operator to norm (or radius) 1 and the point to unit length.
    #[arg(long)]
    normalize: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include the iteration trace of the nu corrector.
    #[arg(long)]
    trace: bool,
    /// Write the spectral measure of the (normalized) operator here.
    #[arg(long)]
    dump_spectral: Option<PathBuf>,
}

fn writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn correct(args: CorrectArgs) -> Result<bool> {
    let raw = bio::matrix_from_json(&read_to_string(&args.input)?)?;
    let x0: UnitVector = bio::vector_from_json(&read_to_string(&args.point)?, args.normalize)?;
    let (t, scale): (ComplexMatrix, f64) = if args.normalize {
        let s = match args.mode {
            Mode::Norm => operator_norm(&raw),
            Mode::Nu => numerical_radius(&raw, 1e-13)?.value,
        };
        if s == 0.0 {
            bail!("cannot normalize the zero operator");
        }
        (raw.scale_real(1.0 / s), s)
    } else {
        (raw, 1.0)
    };
    if let Some(path) = &args.dump_spectral {
        let e = normal_spectral_measure(&t).context("spectral measure needs a normal operator")?;
        std::fs::write(path, spectral_measure_to_json(&e))?;
    }
    let c = match args.mode {
        Mode::Norm => {
            let mut req =
                NormCorrectionRequest::new(t.clone(), x0.clone(), args.epsilon, args.class)
                    .with_exact_point(args.exact_point);
            req.schatten_p = args.schatten;
            if args.schatten.is_some() && args.class.schatten_exponent().is_none() {
                norm_correct_schatten(&req)?
            } else {
                norm_correct(&req)?
            }
        }
        Mode::Nu => {
            let mut req = NuCorrectionRequest::new(t.clone(), x0.clone(), args.epsilon, args.class)
                .with_exact_point(args.exact_point);
            req.schatten_p = args.schatten;
            nu_correct_any(&req)?
        }
    };
    let valid = c.certificate.is_valid();
    let record = CorrectionRecord {
        mode: args.mode,
        class: args.class,
        epsilon: args.epsilon,
        exact_point: args.exact_point,
        scale,
        t,
        x0,
        s: c.operator,
        x1: c.point,
        certificate: c.certificate,
        trace: if args.trace { c.trace } else { None },
    };
    let mut out = writer(args.out.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &record)?;
    writeln!(out)?;
    out.flush()?;
    for f in record.certificate.failed_checks() {
        eprintln!("failed: {} = {:e} > {:e}", f.name, f.measured, f.bound);
    }
    Ok(valid)
}

fn sweep(
    config: &Path,
    out: &Path,
    format: Option<Format>,
    plotdata: Option<&Path>,
    seed: Option<u64>,
) -> Result<bool> {
    let mut cfg = ExperimentConfig::from_json(&read_to_string(config)?)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let report = run_experiment(&cfg)?;
    let format = format.unwrap_or(if out.extension().is_some_and(|e| e == "json") {
        Format::Json
    } else {
        Format::Csv
    });
    emit_report(&report, format, writer(Some(out))?)?;
    if let Some(p) = plotdata {
        emit_plotdata(&report, writer(Some(p))?)?;
    }
    for row in &report.rows {
        for f in &row.failures {
            eprintln!(
                "{} {} dim {} eps {} trial {}: {}",
                row.mode, row.class, row.dim, row.epsilon, f.trial, f.reason
            );
        }
    }
    Ok(report.total_failures() == 0)
}

fn oracle(input: &Path, density: usize) -> Result<bool> {
    let t = bio::matrix_from_json(&read_to_string(input)?)?;
    let norm = operator_norm(&t);
    let radius = numerical_radius(&t, 1e-12)?.value;
    let bn = brute_force_norm(&t, density)?;
    let br = brute_force_radius(&t, density)?;
    let agree = (norm - bn).abs() <= 1e-3 && (radius - br).abs() <= 1e-3;
    let summary = serde_json::json!({
        "operator_norm": norm,
        "brute_force_norm": bn,
        "numerical_radius": radius,
        "brute_force_radius": br,
        "agree": agree,
    });
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(agree)
}

fn verify(result: &Path) -> Result<bool> {
    let record: CorrectionRecord = serde_json::from_str(&read_to_string(result)?)?;
    let v = verify_record(&record)?;
    println!("{}", serde_json::to_string_pretty(&v)?);
    if let Some(reason) = v.reason() {
        eprintln!("verification failed: {reason}");
    }
    Ok(v.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Correct(args) => correct(args),
        Command::Sweep {
            config,
            out,
            format,
            plotdata,
            seed,
        } => sweep(&config, &out, format, plotdata.as_deref(), seed),
        Command::Oracle { input, density } => oracle(&input, density),
        Command::Verify { result } => verify(&result),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
