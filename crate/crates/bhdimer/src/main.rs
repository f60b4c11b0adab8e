use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use bhdimer::output::{write_series_csv, write_spectrum_csv, SpectrumTable};
use bhdimer::{
    analytic, build_hamiltonian, delta_closed_form, eigendecompose, revival_structure,
    revival_time_tilted, run_scenario, Error, OutputSet, PerturbativeOrder, Result, Scenario,
    ScenarioOverrides, ScenarioSeries,
};

/// Two-site Bose-Hubbard model: exact diagonalization next to the analytic
/// collapse/revival prediction for the population imbalance.
#[derive(Parser)]
#[command(name = "bhdimer", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit exact and perturbative energy levels
    Spectrum(CommonArgs),
    /// Exact time evolution of the population imbalance
    Evolve(CommonArgs),
    /// Closed-form series plus the revival structure
    Analytic(CommonArgs),
    /// Run a full scenario and emit the comparison report
    Compare(CommonArgs),
    /// Print the derived timescales
    Timescales(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Builtin scenario (fig1, fig2, rabi-only) or path to a scenario JSON file
    #[arg(long)]
    scenario: Option<String>,
    /// Hopping energy J
    #[arg(long = "J")]
    hopping: Option<f64>,
    /// On-site interaction energy U
    #[arg(long = "U", conflicts_with = "coupling")]
    interaction: Option<f64>,
    /// Dimensionless coupling u = U N / J, converted via U = u J / N
    #[arg(long = "u")]
    coupling: Option<f64>,
    /// Particle number N
    #[arg(long = "N")]
    n: Option<usize>,
    /// Initial-state tilt angle in radians, 0 = all particles on the left
    #[arg(long)]
    alpha: Option<f64>,
    /// End of the time grid
    #[arg(long = "tmax")]
    t_max: Option<f64>,
    /// Grid points per Rabi period (>= 4)
    #[arg(long = "samples-per-period")]
    samples_per_rabi_period: Option<u32>,
    /// Output file; stdout when omitted (CSV + report commands require it)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

impl CommonArgs {
    fn overrides(&self) -> ScenarioOverrides {
        ScenarioOverrides {
            label: None,
            hopping: self.hopping,
            interaction: self.interaction,
            coupling: self.coupling,
            n: self.n,
            alpha: self.alpha,
            t_max: self.t_max,
            samples_per_rabi_period: self.samples_per_rabi_period,
            outputs: None,
        }
    }

    /// Resolve scenario layers: defaults, then `--scenario` (builtin or
    /// file), then explicit flags.
    fn resolve(&self, default_outputs: OutputSet, require_t_max: bool) -> Result<Scenario> {
        let cli = self.overrides();
        match &self.scenario {
            Some(source) => {
                let base = if Path::new(source).exists() {
                    ScenarioOverrides::from_file(Path::new(source))?
                        .into_scenario(default_outputs, require_t_max && cli.t_max.is_none())?
                } else {
                    Scenario::builtin(source)?
                };
                cli.apply_to(&base)
            }
            None => cli.into_scenario(default_outputs, require_t_max),
        }
    }
}

fn writer(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn require_out(out: &Option<PathBuf>, what: &str) -> Result<()> {
    if out.is_none() {
        return Err(Error::Config(format!(
            "{what} in CSV mode needs --out for the series (the JSON part goes to stdout)"
        )));
    }
    Ok(())
}

fn print_json<T: serde::Serialize>(w: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)?;
    Ok(())
}

fn cmd_spectrum(args: &CommonArgs) -> Result<()> {
    let scenario = args.resolve(OutputSet::EXACT_ONLY, false)?;
    let params = scenario.params;
    let spec = eigendecompose(&build_hamiltonian(&params))?;
    let first = analytic::perturbative_spectrum(&params, PerturbativeOrder::First);
    let second = analytic::perturbative_spectrum(&params, PerturbativeOrder::Second);
    // exact eigenvalue of quantum number n is rank N - (n + N/2): the
    // perturbative levels decrease with n
    let dim = params.dim();
    let exact: Vec<f64> = (0..dim).map(|i| spec.eigenvalues()[dim - 1 - i]).collect();
    let table = SpectrumTable {
        n_values: first.n_values.clone(),
        exact,
        first_order: first.energies,
        second_order: second.energies,
    };
    let mut w = writer(&args.out)?;
    match args.format {
        Format::Csv => write_spectrum_csv(&mut w, &table)?,
        Format::Json => print_json(
            &mut w,
            &json!({
                "params": params,
                "n": table.n_values,
                "e_exact": table.exact,
                "e_bh1": table.first_order,
                "e_bh2": table.second_order,
            }),
        )?,
    }
    w.flush()?;
    Ok(())
}

fn emit_series_and_report(
    args: &CommonArgs,
    what: &str,
    series: &ScenarioSeries,
    report: &serde_json::Value,
) -> Result<()> {
    match args.format {
        Format::Csv => {
            require_out(&args.out, what)?;
            let mut w = writer(&args.out)?;
            write_series_csv(&mut w, series)?;
            w.flush()?;
            let stdout = io::stdout();
            let mut out = stdout.lock();
            print_json(&mut out, report)?;
        }
        Format::Json => {
            let mut w = writer(&args.out)?;
            let mut doc = report.clone();
            doc.as_object_mut()
                .expect("report documents are objects")
                .insert("series".into(), serde_json::to_value(series)?);
            print_json(&mut w, &doc)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_evolve(args: &CommonArgs) -> Result<()> {
    let scenario = args.resolve(OutputSet::EXACT_ONLY, true)?;
    let scenario = Scenario {
        outputs: OutputSet::EXACT_ONLY,
        ..scenario
    };
    let (series, _) = run_scenario(&scenario)?;
    match args.format {
        Format::Csv => {
            let mut w = writer(&args.out)?;
            write_series_csv(&mut w, &series)?;
            w.flush()?;
        }
        Format::Json => {
            let mut w = writer(&args.out)?;
            print_json(&mut w, &json!({ "scenario": scenario, "series": series }))?;
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_analytic(args: &CommonArgs) -> Result<()> {
    let scenario = args.resolve(OutputSet::CLOSED_ONLY, true)?;
    let structure = revival_structure(&scenario.params)?;
    let times = scenario.time_grid();
    let closedform = delta_closed_form(&scenario.params, &times)?;
    let series = ScenarioSeries {
        times,
        exact: None,
        semianalytic: None,
        closedform: Some(closedform),
    };
    let doc = json!({ "scenario": scenario, "revival_structure": structure });
    emit_series_and_report(args, "analytic", &series, &doc)
}

fn cmd_compare(args: &CommonArgs) -> Result<()> {
    let scenario = args.resolve(OutputSet::ALL, true)?;
    let (series, report) = run_scenario(&scenario)?;
    let doc = json!({ "scenario": scenario, "report": report });
    emit_series_and_report(args, "compare", &series, &doc)
}

fn cmd_timescales(args: &CommonArgs) -> Result<()> {
    let scenario = args.resolve(OutputSet::EXACT_ONLY, false)?;
    let params = scenario.params;
    let structure = revival_structure(&params)?;
    let tilted = revival_time_tilted(&params, scenario.alpha)?;
    let mut w = writer(&args.out)?;
    match args.format {
        Format::Json => print_json(
            &mut w,
            &json!({
                "params": params,
                "alpha": scenario.alpha,
                "T_R": structure.t_r,
                "T_c": structure.t_c,
                "m_max": structure.m_max,
                "T_B": structure.t_b,
                "phi": structure.phi,
                "revival_time_tilted": tilted,
            }),
        )?,
        Format::Csv => {
            // key = value lines; a CSV table adds nothing here
            writeln!(w, "T_R = {}", structure.t_r)?;
            writeln!(w, "T_c = {}", structure.t_c)?;
            writeln!(w, "m_max = {}", structure.m_max)?;
            writeln!(w, "T_B = {}", structure.t_b)?;
            writeln!(w, "phi = {}", structure.phi)?;
            writeln!(
                w,
                "revival_time_tilted(alpha = {}) = {tilted}",
                scenario.alpha
            )?;
        }
    }
    w.flush()?;
    Ok(())
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Evolve(args) => cmd_evolve(args),
        Command::Analytic(args) => cmd_analytic(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Timescales(args) => cmd_timescales(args),
    }
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
