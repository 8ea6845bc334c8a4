//! Command-line front end: run scenario files, reproduce the built-in
//! comparison suite, validate switching tables, and export waveform CSVs.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chbsim::scenario::{self, AnalysisSpec, ComparisonReport, Scenario};
use chbsim::{
    export_plots, parse_config, run_report, validate_table, LoadModel, ModulationScheme,
    ModulationSpec, SwitchingTable, TopologyKind,
};

#[derive(Parser)]
#[command(
    name = "chbsim",
    about = "Cascaded H-bridge multilevel inverter simulator",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TopologyArg {
    Conventional,
    Modified,
}

impl From<TopologyArg> for TopologyKind {
    fn from(value: TopologyArg) -> Self {
        match value {
            TopologyArg::Conventional => TopologyKind::Conventional,
            TopologyArg::Modified => TopologyKind::Modified,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Staircase,
    LsPwm,
}

#[derive(Clone, Copy, ValueEnum)]
enum LoadArg {
    R,
    Rl,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scenarios in a TOML config file.
    Run {
        /// Scenario file with one or more [[scenarios]] blocks.
        config: PathBuf,
        /// Directory to write per-scenario CSVs and summary.csv into.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in eight-row comparison suite and print deltas against
    /// the bundled reference THD figures.
    PaperSuite {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the 1 MHz analysis sample rate.
        #[arg(long)]
        sample_rate: Option<f64>,
        /// Override the order-100 THD bandwidth.
        #[arg(long)]
        max_harmonic: Option<usize>,
    },
    /// Check switching tables for shoot-through states.
    Validate {
        /// Restrict to one topology family (default: both).
        #[arg(long)]
        topology: Option<TopologyArg>,
        /// Restrict to one level count (default: 5 and 7).
        #[arg(long)]
        levels: Option<u32>,
        /// Validate a switching-table CSV instead of the built-in tables;
        /// requires --topology and --levels to bind it.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Run one ad-hoc scenario and export its waveform CSVs.
    Export {
        #[arg(long, value_enum, default_value = "conventional")]
        topology: TopologyArg,
        #[arg(long, default_value_t = 5)]
        levels: u32,
        #[arg(long, value_enum, default_value = "r")]
        load: LoadArg,
        #[arg(long, value_enum, default_value = "staircase")]
        scheme: SchemeArg,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[command(flatten)]
        params: ExportParams,
    },
}

#[derive(Args)]
struct ExportParams {
    #[arg(long)]
    sample_rate: Option<f64>,
    #[arg(long)]
    max_harmonic: Option<usize>,
    #[arg(long, default_value_t = scenario::SUITE_VDC)]
    vdc: f64,
    #[arg(long, default_value_t = 50.0)]
    fundamental: f64,
    #[arg(long, default_value_t = 1.0)]
    modulation_index: f64,
    #[arg(long, default_value_t = chbsim::modulation::DEFAULT_CARRIER_HZ)]
    carrier: f64,
    #[arg(long, default_value_t = scenario::SUITE_RESISTANCE)]
    resistance: f64,
    #[arg(long, default_value_t = scenario::SUITE_INDUCTANCE)]
    inductance: f64,
    /// Also write the lossless segment-form voltage CSV.
    #[arg(long)]
    segments: bool,
}

fn print_report(out: &mut impl Write, report: &ComparisonReport) -> io::Result<()> {
    writeln!(
        out,
        "{:<18} {:>6} {:>8} {:>7} {:>12} {:>12} {:>10} {:>9} {:>9}",
        "name", "levels", "switches", "events", "v_thd_pct", "i_thd_pct", "v1_volts", "ref_thd", "delta_pp"
    )?;
    for row in &report.rows {
        let reference = row
            .reference_thd_pct
            .map(|r| format!("{r:.2}"))
            .unwrap_or_else(|| "-".into());
        let delta = row
            .delta_pp
            .map(|d| format!("{d:+.2}"))
            .unwrap_or_else(|| "-".into());
        writeln!(
            out,
            "{:<18} {:>6} {:>8} {:>7} {:>12.4} {:>12.4} {:>10.3} {:>9} {:>9}",
            row.scenario.name,
            row.scenario.levels,
            row.switch_count,
            row.switching_events_per_period,
            row.voltage_thd_pct,
            row.current_thd_pct,
            row.fundamental_volts,
            reference,
            delta,
        )?;
    }
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> chbsim::Result<()> {
    match cli.command {
        Command::Run { config, out: dir } => {
            let text = fs::read_to_string(&config)?;
            let scenarios = parse_config(&text)?;
            let (report, artifacts) = run_report(&scenarios)?;
            print_report(out, &report)?;
            if let Some(dir) = dir {
                let files = export_plots(&report, &artifacts, &dir)?;
                writeln!(out, "wrote {} file(s) under {}", files.len(), dir.display())?;
            }
            Ok(())
        }
        Command::PaperSuite {
            out: dir,
            sample_rate,
            max_harmonic,
        } => {
            let scenarios = scenario::paper_suite_scenarios_with(
                sample_rate.unwrap_or(1.0e6),
                max_harmonic.unwrap_or(100),
            );
            let (report, artifacts) = run_report(&scenarios)?;
            print_report(out, &report)?;
            if let Some(dir) = dir {
                let files = export_plots(&report, &artifacts, &dir)?;
                writeln!(out, "wrote {} file(s) under {}", files.len(), dir.display())?;
            }
            Ok(())
        }
        Command::Validate {
            topology,
            levels,
            table,
        } => {
            if let Some(path) = table {
                let (Some(kind), Some(levels)) = (topology, levels) else {
                    return Err(chbsim::Error::Config(
                        "--table needs --topology and --levels to bind the CSV".into(),
                    ));
                };
                let built = TopologyKind::from(kind).build(levels)?;
                let text = fs::read_to_string(&path)?;
                let imported = SwitchingTable::from_csv(&text, built)?;
                report_validation(out, &format!("{}", path.display()), &imported)?;
                return Ok(());
            }
            let kinds: Vec<TopologyKind> = match topology {
                Some(t) => vec![t.into()],
                None => vec![TopologyKind::Conventional, TopologyKind::Modified],
            };
            let level_counts: Vec<u32> = match levels {
                Some(l) => vec![l],
                None => vec![5, 7],
            };
            for kind in &kinds {
                for l in &level_counts {
                    let built = kind.build(*l)?;
                    report_validation(out, &format!("{kind} {l}-level"), &built.switching_table())?;
                }
            }
            Ok(())
        }
        Command::Export {
            topology,
            levels,
            load,
            scheme,
            out: out_dir,
            params,
        } => {
            let sample_rate = params.sample_rate.unwrap_or(1.0e6);
            let modulation = match scheme {
                SchemeArg::Staircase => ModulationSpec::staircase(
                    params.fundamental,
                    params.modulation_index,
                    sample_rate,
                ),
                SchemeArg::LsPwm => ModulationSpec::ls_pwm(
                    params.fundamental,
                    params.modulation_index,
                    params.carrier,
                    sample_rate,
                ),
            };
            let analysis = match params.max_harmonic {
                Some(max_harmonic) => AnalysisSpec {
                    max_harmonic,
                    reference_thd_pct: None,
                },
                None => AnalysisSpec::default_for(&modulation),
            };
            let load = match load {
                LoadArg::R => LoadModel::resistive(params.resistance),
                LoadArg::Rl => LoadModel::inductive(params.resistance, params.inductance),
            };
            let kind = TopologyKind::from(topology);
            let name = format!(
                "{kind}-{levels}-{}-{}",
                load.kind,
                match modulation.scheme {
                    ModulationScheme::Staircase => "staircase",
                    ModulationScheme::LsPwm => "ls_pwm",
                }
            );
            let s = Scenario {
                name: name.clone(),
                topology: kind,
                levels,
                vdc: params.vdc,
                load,
                modulation,
                analysis,
            };
            let outcome = chbsim::run_scenario(&s)?;
            let report = ComparisonReport {
                rows: vec![outcome.row],
            };
            let mut files =
                export_plots(&report, std::slice::from_ref(&outcome.artifacts), &out_dir)?;
            if params.segments {
                let path = out_dir.join(format!("{name}_voltage_segments.csv"));
                fs::write(&path, outcome.artifacts.voltage.to_segments_csv())?;
                files.push(path);
            }
            print_report(out, &report)?;
            writeln!(out, "wrote {} file(s) under {}", files.len(), out_dir.display())?;
            Ok(())
        }
    }
}

fn report_validation(
    out: &mut impl Write,
    label: &str,
    table: &SwitchingTable,
) -> chbsim::Result<()> {
    let violations = validate_table(table);
    if violations.is_empty() {
        writeln!(
            out,
            "{label}: ok ({} rows, {} switches)",
            table.rows().len(),
            table.switch_count()
        )?;
        Ok(())
    } else {
        for v in &violations {
            writeln!(out, "{label}: {v}")?;
        }
        Err(chbsim::Error::ShootThrough(violations))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        // a closed pipe downstream (e.g. `chbsim paper-suite | head`) is not a failure
        Err(chbsim::Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
