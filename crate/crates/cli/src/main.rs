mod args;
mod config;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use crnconn::experiments::{
    emit_csv, run_sweep_with_workers, to_csv_string, verify_all, SweepResult, SweepSpec, SweepVariable, VerifySettings,
};
use crnconn::{AntennaRegime, SimulationConfig, TopologyVariant};

use args::{Cli, Command, ParamFlags, PointArgs, PresetArgs, SimFlags, SweepArgs, VerifyArgs};
use config::{apply_param_flags, apply_sim_flags, ConfigFile};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let workers = cli.workers;
    if workers == Some(0) {
        bail!("--workers must be at least 1");
    }
    match cli.command {
        Command::Analytic(a) => point(a, false, workers),
        Command::Simulate(a) => point(a, true, workers),
        Command::Sweep(a) => sweep(a, workers),
        Command::Verify(a) => verify(a, workers),
        Command::Preset(a) => preset(a, workers),
    }
}

fn variant(flags: &ParamFlags) -> TopologyVariant {
    if flags.as_printed {
        TopologyVariant::AsPrinted
    } else {
        TopologyVariant::Reduced
    }
}

fn regimes_or_all(regimes: &[AntennaRegime]) -> Vec<AntennaRegime> {
    if regimes.is_empty() {
        AntennaRegime::ALL.to_vec()
    } else {
        regimes.to_vec()
    }
}

fn sim_requested(flags: &SimFlags) -> bool {
    flags.quick || flags.omega.is_some() || flags.seed.is_some()
}

fn write_csv(result: &SweepResult, out: Option<&std::path::Path>) -> Result<()> {
    match out {
        Some(path) => emit_csv(result, path)?,
        None => io::stdout().write_all(to_csv_string(result).as_bytes())?,
    }
    Ok(())
}

/// One parameter point, evaluated as a single-value sweep over `r`.
fn point(args: PointArgs, simulate: bool, workers: Option<usize>) -> Result<ExitCode> {
    let file = ConfigFile::from_flags(&args.params)?;
    let params = apply_param_flags(file.params.unwrap_or_default(), &args.params);
    params.validate()?;
    let sim = simulate.then(|| apply_sim_flags(file.sim.unwrap_or_default(), &args.sim));
    let spec = SweepSpec {
        variable: SweepVariable::R,
        values: vec![params.r],
        base_params: params,
        regimes: regimes_or_all(&args.regime),
        sim,
        variant: variant(&args.params),
    };
    let result = run_sweep_with_workers(&spec, workers)?;
    let mut stdout = io::stdout().lock();
    match &result.sim {
        None => writeln!(stdout, "{:<7} {:>12} {:>13} {:>12}", "regime", "p_spectrum", "p_topological", "p_connection")?,
        Some(c) => writeln!(
            stdout,
            "{:<7} {:>12} {:>13} {:>12} {:>14} {:>17} {:>16} {:>9}   (omega {}, seed {})",
            "regime",
            "p_spectrum",
            "p_topological",
            "p_connection",
            "p_spectrum_hat",
            "p_topological_hat",
            "p_connection_hat",
            "stderr",
            c.realizations,
            c.seed
        )?,
    }
    for row in &result.rows {
        let a = &row.analytic;
        write!(stdout, "{:<7} {:>12.6} {:>13.6} {:>12.6}", row.regime, a.p_spectrum, a.p_topological, a.p_connection)?;
        if let Some(e) = &row.simulated {
            write!(
                stdout,
                " {:>14.6} {:>17.6} {:>16.6} {:>9.6}",
                e.p_spectrum_hat, e.p_topological_hat, e.p_connection_hat, e.standard_error.connection
            )?;
        }
        writeln!(stdout)?;
    }
    if let Some(path) = &args.out {
        emit_csv(&result, path)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn sweep(args: SweepArgs, workers: Option<usize>) -> Result<ExitCode> {
    let file = ConfigFile::from_flags(&args.params)?;
    let mut spec = match (file.sweep, args.variable) {
        (Some(spec), _) => spec,
        (None, Some(variable)) => SweepSpec::analytic(variable, args.values.clone(), Default::default(), vec![]),
        (None, None) => bail!("sweep needs a `sweep` section in --config or --variable with --values"),
    };
    if let Some(v) = args.variable {
        spec.variable = v;
    }
    if !args.values.is_empty() {
        spec.values = args.values.clone();
    }
    if !args.regime.is_empty() || spec.regimes.is_empty() {
        spec.regimes = regimes_or_all(&args.regime);
    }
    if let Some(p) = file.params {
        spec.base_params = p;
    }
    spec.base_params = apply_param_flags(spec.base_params, &args.params);
    if args.params.as_printed {
        spec.variant = TopologyVariant::AsPrinted;
    }
    let base_sim = file.sim.or(spec.sim.take());
    if base_sim.is_some() || args.simulate || sim_requested(&args.sim) {
        spec.sim = Some(apply_sim_flags(base_sim.unwrap_or_default(), &args.sim));
    }
    let result = run_sweep_with_workers(&spec, workers)?;
    write_csv(&result, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs, workers: Option<usize>) -> Result<ExitCode> {
    let mut settings = if args.sim.quick {
        VerifySettings::quick()
    } else {
        VerifySettings::full()
    };
    if let Some(n) = args.sim.omega {
        if n == 0 {
            bail!("--omega must be at least 1");
        }
        settings.realizations = n;
    }
    if let Some(s) = args.sim.seed {
        settings.seed = s;
    }
    let report = verify_all(&settings, workers)?;
    print!("{}", report.render());
    if let Some(path) = &args.out {
        let json = serde_json::to_string_pretty(&report)?;
        fs::write(path, json + "\n").with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn preset(args: PresetArgs, workers: Option<usize>) -> Result<ExitCode> {
    let sim = apply_sim_flags(SimulationConfig::default(), &args.sim);
    for path in args.name.run(&sim, &args.out, workers)? {
        println!("{}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}
