mod args;
mod error;
mod input;
mod output;

use args::{
    BatchArgs, CheckArgs, Cli, Command, Format, MethodArg, SampleArgs, TestKind, VolumeArgs,
};
use clap::Parser;
use error::CliError;
use hyperellipsoid::validation::{
    chi_square_two_sample, chi_square_uniformity, mc_volume, proof_identity_check, radial_ks,
};
use hyperellipsoid::{sample_batch, Ellipsoid, Method, RngStream, SampleBatch, TestReport};
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

/// Child index of the seed stream reserved for the identity check and the
/// rejection oracle batch, away from the batch's own chunk indices.
const AUX_STREAM: u64 = 1 << 62;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Sample(a) => cmd_sample(&a),
        Command::Check(a) => cmd_check(&a),
        Command::Volume(a) => cmd_volume(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let mut f =
                File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            f.write_all(text.as_bytes())?;
            f.flush()?;
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn method(m: MethodArg) -> Method {
    match m {
        MethodArg::Transform => Method::Transform,
        MethodArg::Reject => Method::EllipsoidRejection,
        MethodArg::Biased => Method::Biased,
    }
}

fn draw(args: &BatchArgs) -> Result<(Ellipsoid, SampleBatch), CliError> {
    let e = input::ellipsoid(&args.ellipsoid)?;
    if args.count == 0 {
        return Err(CliError::Config("--count must be positive".into()));
    }
    let batch = sample_batch(&e, args.count, args.seed, method(args.method))?;
    Ok((e, batch))
}

fn cmd_sample(args: &SampleArgs) -> Result<(), CliError> {
    let (e, batch) = draw(&args.batch)?;
    let text = match args.format {
        Format::Csv => output::csv(&batch),
        Format::Json => output::json(&batch),
        Format::Svg => {
            if e.dim() != 2 {
                return Err(CliError::Config(format!(
                    "svg output needs a 2-dimensional ellipsoid, got {}",
                    e.dim()
                )));
            }
            output::svg(&batch, &e)
        }
    };
    emit(args.batch.out.as_deref(), &text)
}

fn cmd_check(args: &CheckArgs) -> Result<(), CliError> {
    let (e, batch) = draw(&args.batch)?;
    let aux = RngStream::new(args.batch.seed).derive(AUX_STREAM);
    let mut reports: Vec<TestReport> = Vec::new();
    for test in &args.tests {
        let report = match test {
            TestKind::Chi2 => chi_square_uniformity(&batch, &e, args.shells, args.alpha)?,
            TestKind::Ks => radial_ks(&batch, &e)?,
            TestKind::Proof => {
                if args.trials == 0 {
                    return Err(CliError::Config("--trials must be positive".into()));
                }
                proof_identity_check(&e, args.trials, &mut aux.derive(0))
            }
            TestKind::Oracle => {
                let oracle_seed = aux.derive(1).next_u64();
                let oracle =
                    sample_batch(&e, batch.len(), oracle_seed, Method::EllipsoidRejection)?;
                chi_square_two_sample(&batch, &oracle, &e, args.shells, args.alpha)?
            }
        };
        reports.push(report);
    }
    let mut text = String::new();
    for r in &reports {
        text.push_str(&serde_json::to_string(r).expect("report serializes"));
        text.push('\n');
    }
    emit(args.batch.out.as_deref(), &text)?;
    if reports.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn cmd_volume(args: &VolumeArgs) -> Result<(), CliError> {
    let e = input::ellipsoid(&args.ellipsoid)?;
    let exact = e.volume();
    let mut text = format!("volume: {exact}\n");
    let mut agree = true;
    if let Some(n) = args.mc {
        let seed = args
            .seed
            .ok_or_else(|| CliError::Config("--mc requires --seed".into()))?;
        let (estimate, stderr) = mc_volume(&e, n, &mut RngStream::new(seed))?;
        agree = (estimate - exact).abs() <= 3.0 * stderr;
        text.push_str(&format!(
            "mc_estimate: {estimate}\nmc_stderr: {stderr}\nverdict: {}\n",
            if agree { "agree" } else { "disagree" }
        ));
    }
    emit(args.out.as_deref(), &text)?;
    if agree {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}
