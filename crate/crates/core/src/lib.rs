//! Simulation toolkit for cascaded H-bridge multilevel inverters.
//!
//! Models the conventional and the reduced-switch-count ("modified") 5- and
//! 7-level inverter families (any odd level count builds by the same rules),
//! generates gate schedules by staircase or level-shifted PWM modulation,
//! solves R and RL load currents exactly, and quantifies output quality via
//! harmonic spectra and THD.
//!
//! The pipeline runs: build topology -> validate switching table -> generate
//! level sequence -> resolve gate schedule -> synthesize voltage -> settle
//! load current -> spectrum and THD. [`scenario::run_paper_suite`] binds the
//! whole thing into the built-in eight-row comparison.

pub mod analysis;
pub mod error;
pub mod modulation;
pub mod scenario;
pub mod simulation;
pub mod topology;

pub use analysis::{rms, spectrum, thd, HarmonicSpectrum};
pub use error::{Error, Result};
pub use modulation::{
    count_switching_events, level_sequence, ls_pwm_sequence, nearest_level_sequence,
    schedule_gates, GateSchedule, ModulationScheme, ModulationSpec,
};
pub use scenario::{
    export_plots, parse_config, reference_thd, run_paper_suite, run_report, run_scenario,
    AnalysisSpec, ComparisonReport, ReportRow, Scenario, ScenarioArtifacts, ScenarioOutcome,
};
pub use simulation::{
    settle_periodic, settle_periodic_capped, solve_r_current, solve_rl_current,
    synthesize_voltage, CurrentWaveform, LoadKind, LoadModel, Segment, VoltageWaveform,
};
pub use topology::{
    build_conventional, build_modified, count_switches, level_of, validate_table, GateVector,
    LegPair, SwitchingTable, Topology, TopologyKind, Violation,
};
