//! Named end-to-end runs: topology + modulation + load bound together,
//! compared against bundled reference THD figures, and exported as CSV.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::{spectrum, thd, HarmonicSpectrum};
use crate::error::{Error, Result};
use crate::modulation::{
    count_switching_events, level_sequence, schedule_gates, GateSchedule, ModulationSpec,
};
use crate::simulation::{
    settle_periodic, synthesize_voltage, CurrentWaveform, LoadKind, LoadModel, VoltageWaveform,
};
use crate::topology::{count_switches, validate_table, TopologyKind};

/// Convergence tolerance for periodic settling in the pipeline.
pub const SETTLE_TOLERANCE_AMPS: f64 = 1e-9;

/// Modulation index used by the built-in comparison suite. The bundled
/// reference THD figures correspond to this staircase operating point
/// (a full-modulation staircase lands near 17% / 12%, far from them).
pub const SUITE_MODULATION_INDEX: f64 = 0.8;

/// DC source voltage per level step in the built-in suite.
pub const SUITE_VDC: f64 = 100.0;
/// Load resistance in the built-in suite.
pub const SUITE_RESISTANCE: f64 = 10.0;
/// Load inductance in the built-in suite (RL rows).
pub const SUITE_INDUCTANCE: f64 = 100e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalysisSpec {
    #[serde(default = "default_max_harmonic")]
    pub max_harmonic: usize,
    /// Reference THD to report a delta against, when one exists.
    #[serde(default)]
    pub reference_thd_pct: Option<f64>,
}

fn default_max_harmonic() -> usize {
    100
}

impl Default for AnalysisSpec {
    fn default() -> Self {
        AnalysisSpec {
            max_harmonic: default_max_harmonic(),
            reference_thd_pct: None,
        }
    }
}

impl AnalysisSpec {
    /// Default bandwidth for a modulation scheme: order 100, extended past
    /// twice the carrier ratio for LS-PWM so the carrier clusters are counted.
    pub fn default_for(modulation: &ModulationSpec) -> AnalysisSpec {
        let max_harmonic = match modulation.carrier_ratio() {
            Ok(ratio) if modulation.scheme == crate::modulation::ModulationScheme::LsPwm => {
                default_max_harmonic().max(2 * ratio + 20)
            }
            _ => default_max_harmonic(),
        };
        AnalysisSpec {
            max_harmonic,
            reference_thd_pct: None,
        }
    }
}

/// Everything needed to reproduce one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub topology: TopologyKind,
    pub levels: u32,
    #[serde(default = "default_vdc")]
    pub vdc: f64,
    pub load: LoadModel,
    #[serde(default)]
    pub modulation: ModulationSpec,
    #[serde(default)]
    pub analysis: AnalysisSpec,
}

fn default_vdc() -> f64 {
    SUITE_VDC
}

/// One measured row; carries its full scenario so reports are self-reproducing.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub scenario: Scenario,
    pub switch_count: usize,
    pub switching_events_per_period: usize,
    pub voltage_thd_pct: f64,
    pub current_thd_pct: f64,
    pub fundamental_volts: f64,
    pub reference_thd_pct: Option<f64>,
    /// Simulated voltage THD minus the reference, in percentage points.
    pub delta_pp: Option<f64>,
}

/// Waveforms and spectra behind one row, for plotting and export.
#[derive(Debug, Clone)]
pub struct ScenarioArtifacts {
    pub schedule: GateSchedule,
    pub voltage: VoltageWaveform,
    pub current: CurrentWaveform,
    pub voltage_spectrum: HarmonicSpectrum,
    pub current_spectrum: HarmonicSpectrum,
}

#[derive(Debug, Clone)]
pub struct ScenarioOutcome {
    pub row: ReportRow,
    pub artifacts: ScenarioArtifacts,
}

/// Rows in configuration order plus the summary CSV writer.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComparisonReport {
    pub rows: Vec<ReportRow>,
}

impl ComparisonReport {
    /// Summary CSV with the fixed column set
    /// `name,topology,levels,load,switches,events_per_period,v_thd_pct,i_thd_pct,ref_thd_pct,delta_pp`.
    pub fn summary_csv(&self) -> String {
        let mut out = String::from(
            "name,topology,levels,load,switches,events_per_period,v_thd_pct,i_thd_pct,ref_thd_pct,delta_pp\n",
        );
        for row in &self.rows {
            let s = &row.scenario;
            let reference = row
                .reference_thd_pct
                .map(|r| r.to_string())
                .unwrap_or_default();
            let delta = row.delta_pp.map(|d| d.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{reference},{delta}\n",
                s.name,
                s.topology,
                s.levels,
                s.load.kind,
                row.switch_count,
                row.switching_events_per_period,
                row.voltage_thd_pct,
                row.current_thd_pct,
            ));
        }
        out
    }
}

/// Run the full pipeline for one scenario. Errors carry the failing stage
/// and the scenario name.
pub fn run_scenario(scenario: &Scenario) -> Result<ScenarioOutcome> {
    let name = scenario.name.as_str();

    let topology = scenario
        .topology
        .build(scenario.levels)
        .map_err(|e| e.at_stage("topology", name))?;
    let table = topology.switching_table();

    let violations = validate_table(&table);
    if !violations.is_empty() {
        return Err(Error::ShootThrough(violations).at_stage("validate", name));
    }

    let seq = level_sequence(scenario.levels, &scenario.modulation, 1)
        .map_err(|e| e.at_stage("modulation", name))?;

    let schedule = schedule_gates(&table, &seq, &scenario.modulation)
        .map_err(|e| e.at_stage("schedule", name))?;

    let voltage = synthesize_voltage(&schedule, &table, scenario.vdc)
        .map_err(|e| e.at_stage("voltage", name))?;

    let current = settle_periodic(&voltage, &scenario.load, SETTLE_TOLERANCE_AMPS)
        .map_err(|e| e.at_stage("current", name))?;

    let max_harmonic = scenario.analysis.max_harmonic;
    let fundamental_hz = scenario.modulation.fundamental_hz;
    let sample_rate_hz = scenario.modulation.sample_rate_hz;
    let voltage_spectrum = spectrum(
        &voltage.sample(),
        sample_rate_hz,
        fundamental_hz,
        max_harmonic,
    )
    .map_err(|e| e.at_stage("analysis", name))?;
    let current_spectrum = spectrum(
        current.samples(),
        sample_rate_hz,
        fundamental_hz,
        max_harmonic,
    )
    .map_err(|e| e.at_stage("analysis", name))?;
    let voltage_thd_pct =
        thd(&voltage_spectrum, max_harmonic).map_err(|e| e.at_stage("analysis", name))?;
    let current_thd_pct =
        thd(&current_spectrum, max_harmonic).map_err(|e| e.at_stage("analysis", name))?;

    let reference_thd_pct = scenario.analysis.reference_thd_pct.or_else(|| {
        reference_thd(scenario.topology, scenario.levels, scenario.load.kind)
    });

    let row = ReportRow {
        scenario: scenario.clone(),
        switch_count: count_switches(&topology),
        switching_events_per_period: count_switching_events(&schedule),
        voltage_thd_pct,
        current_thd_pct,
        fundamental_volts: voltage_spectrum.fundamental(),
        reference_thd_pct,
        delta_pp: reference_thd_pct.map(|r| voltage_thd_pct - r),
    };

    Ok(ScenarioOutcome {
        row,
        artifacts: ScenarioArtifacts {
            schedule,
            voltage,
            current,
            voltage_spectrum,
            current_spectrum,
        },
    })
}

/// Run a list of scenarios, keeping report order equal to input order.
pub fn run_report(scenarios: &[Scenario]) -> Result<(ComparisonReport, Vec<ScenarioArtifacts>)> {
    let mut rows = Vec::with_capacity(scenarios.len());
    let mut artifacts = Vec::with_capacity(scenarios.len());
    for scenario in scenarios {
        let outcome = run_scenario(scenario)?;
        rows.push(outcome.row);
        artifacts.push(outcome.artifacts);
    }
    Ok((ComparisonReport { rows }, artifacts))
}

/// Bundled reference voltage-THD figures (percent) for the four inverters
/// under R and RL loads, used to report deltas.
pub fn reference_thd(kind: TopologyKind, levels: u32, load: LoadKind) -> Option<f64> {
    match (kind, levels, load) {
        (TopologyKind::Conventional, 5, LoadKind::R) => Some(28.98),
        (TopologyKind::Conventional, 5, LoadKind::Rl) => Some(33.78),
        (TopologyKind::Conventional, 7, LoadKind::R) => Some(16.72),
        (TopologyKind::Conventional, 7, LoadKind::Rl) => Some(18.38),
        (TopologyKind::Modified, 5, LoadKind::R) => Some(28.98),
        (TopologyKind::Modified, 5, LoadKind::Rl) => Some(33.79),
        (TopologyKind::Modified, 7, LoadKind::R) => Some(17.02),
        (TopologyKind::Modified, 7, LoadKind::Rl) => Some(18.99),
        _ => None,
    }
}

/// The eight comparison scenarios: {conventional, modified} x {5, 7} levels
/// x {R, RL} load at 100 V per step, 10 ohm, 100 uH, 50 Hz staircase
/// modulation with index [`SUITE_MODULATION_INDEX`], 1 MHz sampling,
/// harmonics to order 100.
pub fn paper_suite_scenarios() -> Vec<Scenario> {
    paper_suite_scenarios_with(1.0e6, default_max_harmonic())
}

/// [`paper_suite_scenarios`] with explicit sample rate and bandwidth.
pub fn paper_suite_scenarios_with(sample_rate_hz: f64, max_harmonic: usize) -> Vec<Scenario> {
    let mut scenarios = Vec::with_capacity(8);
    for kind in [TopologyKind::Conventional, TopologyKind::Modified] {
        for levels in [5u32, 7] {
            for load in [
                LoadModel::resistive(SUITE_RESISTANCE),
                LoadModel::inductive(SUITE_RESISTANCE, SUITE_INDUCTANCE),
            ] {
                scenarios.push(Scenario {
                    name: format!("{kind}-{levels}-{}", load.kind),
                    topology: kind,
                    levels,
                    vdc: SUITE_VDC,
                    load,
                    modulation: ModulationSpec::staircase(
                        50.0,
                        SUITE_MODULATION_INDEX,
                        sample_rate_hz,
                    ),
                    analysis: AnalysisSpec {
                        max_harmonic,
                        reference_thd_pct: reference_thd(kind, levels, load.kind),
                    },
                });
            }
        }
    }
    scenarios
}

/// Run the eight-row comparison suite.
pub fn run_paper_suite() -> Result<ComparisonReport> {
    Ok(run_report(&paper_suite_scenarios())?.0)
}

/// Per-scenario CSV exports plus the summary CSV. Emits, for each row,
/// `<name>_voltage.csv`, `<name>_current.csv`, `<name>_spectrum.csv` and
/// `<name>_gates.csv`, then `summary.csv`; returns the written paths.
pub fn export_plots(
    report: &ComparisonReport,
    artifacts: &[ScenarioArtifacts],
    dir: &Path,
) -> Result<Vec<PathBuf>> {
    if report.rows.len() != artifacts.len() {
        return Err(Error::Config(format!(
            "{} report rows but {} artifact sets",
            report.rows.len(),
            artifacts.len()
        )));
    }
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut write = |path: PathBuf, contents: String| -> Result<()> {
        fs::write(&path, contents)?;
        written.push(path);
        Ok(())
    };
    for (row, art) in report.rows.iter().zip(artifacts) {
        let name = &row.scenario.name;
        write(dir.join(format!("{name}_voltage.csv")), art.voltage.to_samples_csv())?;
        write(dir.join(format!("{name}_current.csv")), art.current.to_csv())?;
        write(dir.join(format!("{name}_spectrum.csv")), art.voltage_spectrum.to_csv())?;
        write(dir.join(format!("{name}_gates.csv")), art.schedule.to_csv())?;
    }
    write(dir.join("summary.csv"), report.summary_csv())?;
    Ok(written)
}

/// Parse a TOML scenario file: one or more `[[scenarios]]` blocks.
pub fn parse_config(text: &str) -> Result<Vec<Scenario>> {
    #[derive(Deserialize)]
    struct ConfigFile {
        scenarios: Vec<Scenario>,
    }
    let parsed: ConfigFile =
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    if parsed.scenarios.is_empty() {
        return Err(Error::Config("no scenarios in config".into()));
    }
    Ok(parsed.scenarios)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn suite_row(
        report: &ComparisonReport,
        kind: TopologyKind,
        levels: u32,
        load: LoadKind,
    ) -> &ReportRow {
        report
            .rows
            .iter()
            .find(|r| {
                r.scenario.topology == kind
                    && r.scenario.levels == levels
                    && r.scenario.load.kind == load
            })
            .expect("suite row")
    }

    #[test]
    fn conventional_5_r_row_reports_switches_and_reference() {
        let scenarios = paper_suite_scenarios();
        let s = scenarios
            .iter()
            .find(|s| s.name == "conventional-5-R")
            .unwrap();
        let outcome = run_scenario(s).unwrap();
        assert_eq!(outcome.row.switch_count, 8);
        assert_eq!(outcome.row.reference_thd_pct, Some(28.98));
        let delta = outcome.row.delta_pp.unwrap();
        assert_eq!(
            delta,
            outcome.row.voltage_thd_pct - 28.98,
            "delta is simulated minus reference"
        );
    }

    #[test]
    fn suite_covers_the_eight_combinations_with_references() {
        let report = run_paper_suite().unwrap();
        assert_eq!(report.rows.len(), 8);
        assert_eq!(
            suite_row(&report, TopologyKind::Conventional, 7, LoadKind::R)
                .reference_thd_pct,
            Some(16.72)
        );
        assert_eq!(
            suite_row(&report, TopologyKind::Modified, 7, LoadKind::Rl)
                .reference_thd_pct,
            Some(18.99)
        );
        for row in &report.rows {
            assert!(row.reference_thd_pct.is_some());
            assert!(row.delta_pp.is_some());
        }
    }

    #[test]
    fn seven_level_rows_beat_five_level_rows() {
        let report = run_paper_suite().unwrap();
        let worst7 = report
            .rows
            .iter()
            .filter(|r| r.scenario.levels == 7)
            .map(|r| r.voltage_thd_pct)
            .fold(f64::NEG_INFINITY, f64::max);
        let best5 = report
            .rows
            .iter()
            .filter(|r| r.scenario.levels == 5)
            .map(|r| r.voltage_thd_pct)
            .fold(f64::INFINITY, f64::min);
        assert!(
            worst7 < best5,
            "every 7-level THD ({worst7}) below every 5-level THD ({best5})"
        );
    }

    #[test]
    fn equal_level_counts_give_equal_voltage_thd_across_topologies() {
        let report = run_paper_suite().unwrap();
        for levels in [5u32, 7] {
            for load in [LoadKind::R, LoadKind::Rl] {
                let conv = suite_row(&report, TopologyKind::Conventional, levels, load);
                let modi = suite_row(&report, TopologyKind::Modified, levels, load);
                let rel = ((conv.voltage_thd_pct - modi.voltage_thd_pct)
                    / conv.voltage_thd_pct)
                    .abs();
                assert!(rel < 1e-9, "levels {levels} load {load}: rel diff {rel}");
                assert!(modi.switch_count < conv.switch_count);
            }
        }
    }

    #[test]
    fn rl_current_thd_sits_strictly_below_voltage_thd() {
        let scenarios = paper_suite_scenarios();
        let s = scenarios
            .iter()
            .find(|s| s.name == "conventional-7-RL")
            .unwrap();
        let row = run_scenario(s).unwrap().row;
        assert!(
            row.current_thd_pct < row.voltage_thd_pct,
            "current {} vs voltage {}",
            row.current_thd_pct,
            row.voltage_thd_pct
        );
    }

    #[test]
    fn r_load_current_thd_equals_voltage_thd() {
        let scenarios = paper_suite_scenarios();
        let s = scenarios.iter().find(|s| s.name == "modified-5-R").unwrap();
        let row = run_scenario(s).unwrap().row;
        let rel = ((row.current_thd_pct - row.voltage_thd_pct) / row.voltage_thd_pct).abs();
        assert!(rel < 1e-12, "rel diff {rel}");
    }

    #[test]
    fn rerunning_a_row_from_its_recorded_scenario_reproduces_it() {
        let report = run_paper_suite().unwrap();
        let row = &report.rows[3];
        let again = run_scenario(&row.scenario).unwrap().row;
        assert_eq!(again.voltage_thd_pct.to_bits(), row.voltage_thd_pct.to_bits());
        assert_eq!(again.current_thd_pct.to_bits(), row.current_thd_pct.to_bits());
        assert_eq!(again, *row);
    }

    #[test]
    fn pipeline_errors_carry_stage_and_scenario_names() {
        let mut s = paper_suite_scenarios().remove(0);
        s.name = "broken".into();
        s.levels = 4;
        match run_scenario(&s) {
            Err(Error::Stage {
                stage, scenario, ..
            }) => {
                assert_eq!(stage, "topology");
                assert_eq!(scenario, "broken");
            }
            other => panic!("expected a stage error, got {other:?}"),
        }

        let mut s2 = paper_suite_scenarios().remove(0);
        s2.modulation.modulation_index = 2.0;
        match run_scenario(&s2) {
            Err(Error::Stage { stage, .. }) => assert_eq!(stage, "modulation"),
            other => panic!("expected a stage error, got {other:?}"),
        }
    }

    #[test]
    fn export_writes_four_files_per_row_plus_summary() {
        let dir = tempfile::tempdir().unwrap();
        let scenarios: Vec<Scenario> = paper_suite_scenarios_with(200_000.0, 50)
            .into_iter()
            .take(2)
            .collect();
        let (report, artifacts) = run_report(&scenarios).unwrap();
        let files = export_plots(&report, &artifacts, dir.path()).unwrap();
        assert_eq!(files.len(), 2 * 4 + 1);
        for f in &files {
            assert!(f.exists());
        }

        let empty = ComparisonReport::default();
        let dir2 = tempfile::tempdir().unwrap();
        let files = export_plots(&empty, &[], dir2.path()).unwrap();
        assert_eq!(files.len(), 1);
        assert!(files[0].ends_with("summary.csv"));
    }

    #[test]
    fn summary_csv_has_the_fixed_column_set() {
        let scenarios: Vec<Scenario> = paper_suite_scenarios_with(200_000.0, 50)
            .into_iter()
            .take(1)
            .collect();
        let (report, _) = run_report(&scenarios).unwrap();
        let csv = report.summary_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "name,topology,levels,load,switches,events_per_period,v_thd_pct,i_thd_pct,ref_thd_pct,delta_pp"
        );
        let row = lines.next().unwrap();
        assert!(row.starts_with("conventional-5-R,conventional,5,R,8,"));
    }

    #[test]
    fn config_round_trip_with_defaults_materialized() {
        let text = r#"
            [[scenarios]]
            name = "demo"
            topology = "modified"
            levels = 7
            load = { kind = "RL", resistance = 10.0, inductance = 100e-6 }

            [[scenarios]]
            name = "pwm"
            topology = "conventional"
            levels = 5
            vdc = 48.0
            load = { kind = "R", resistance = 5.0 }

            [scenarios.modulation]
            scheme = "ls_pwm"
            fundamental_hz = 50.0
            modulation_index = 0.9
            carrier_hz = 2000.0
            sample_rate_hz = 200000.0

            [scenarios.analysis]
            max_harmonic = 120
        "#;
        let scenarios = parse_config(text).unwrap();
        assert_eq!(scenarios.len(), 2);
        assert_eq!(scenarios[0].vdc, SUITE_VDC);
        assert_eq!(scenarios[0].modulation.fundamental_hz, 50.0);
        assert_eq!(scenarios[0].modulation.modulation_index, 1.0);
        assert_eq!(scenarios[0].analysis.max_harmonic, 100);
        assert_eq!(scenarios[1].modulation.carrier_hz, Some(2000.0));
        assert_eq!(scenarios[1].analysis.max_harmonic, 120);

        let outcome = run_scenario(&scenarios[1]).unwrap();
        assert_eq!(outcome.row.switch_count, 8);

        assert!(parse_config("scenarios = []").is_err());
        assert!(parse_config("nonsense").is_err());
    }

    #[test]
    fn ls_pwm_default_bandwidth_extends_past_twice_the_carrier() {
        let pwm = ModulationSpec::ls_pwm(50.0, 1.0, 2000.0, 1.0e6);
        let spec = AnalysisSpec::default_for(&pwm);
        assert!(spec.max_harmonic >= 100);
        assert!(spec.max_harmonic as f64 * 50.0 >= 2.0 * 2000.0);

        let stair = ModulationSpec::default();
        assert_eq!(AnalysisSpec::default_for(&stair).max_harmonic, 100);
    }
}
