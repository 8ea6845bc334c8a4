//! Python bindings: inverter topologies, level-sequence generation, the
//! scenario pipeline, and THD analysis, exposed as the `chbsim_py` module.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use chbsim::scenario::{self, AnalysisSpec, Scenario};
use chbsim::{
    GateVector, LoadModel, ModulationSpec, ReportRow, SwitchingTable, TopologyKind,
};

fn value_error(e: chbsim::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_kind(kind: &str) -> PyResult<TopologyKind> {
    match kind {
        "conventional" => Ok(TopologyKind::Conventional),
        "modified" => Ok(TopologyKind::Modified),
        other => Err(PyValueError::new_err(format!(
            "unknown topology '{other}' (expected 'conventional' or 'modified')"
        ))),
    }
}

fn parse_load(kind: &str, resistance: f64, inductance: f64) -> PyResult<LoadModel> {
    match kind {
        "R" | "r" => Ok(LoadModel::resistive(resistance)),
        "RL" | "rl" => Ok(LoadModel::inductive(resistance, inductance)),
        other => Err(PyValueError::new_err(format!(
            "unknown load '{other}' (expected 'R' or 'RL')"
        ))),
    }
}

fn build_spec(
    scheme: &str,
    fundamental_hz: f64,
    modulation_index: f64,
    carrier_hz: f64,
    sample_rate_hz: f64,
) -> PyResult<ModulationSpec> {
    match scheme {
        "staircase" => Ok(ModulationSpec::staircase(
            fundamental_hz,
            modulation_index,
            sample_rate_hz,
        )),
        "ls_pwm" => Ok(ModulationSpec::ls_pwm(
            fundamental_hz,
            modulation_index,
            carrier_hz,
            sample_rate_hz,
        )),
        other => Err(PyValueError::new_err(format!(
            "unknown scheme '{other}' (expected 'staircase' or 'ls_pwm')"
        ))),
    }
}

/// An inverter topology with its switching table.
#[pyclass(frozen)]
struct Topology {
    table: SwitchingTable,
}

#[pymethods]
impl Topology {
    /// Build the conventional cascaded H-bridge family.
    #[staticmethod]
    fn conventional(levels: u32) -> PyResult<Self> {
        let t = chbsim::build_conventional(levels).map_err(value_error)?;
        Ok(Topology {
            table: t.switching_table(),
        })
    }

    /// Build the reduced-switch-count family.
    #[staticmethod]
    fn modified(levels: u32) -> PyResult<Self> {
        let t = chbsim::build_modified(levels).map_err(value_error)?;
        Ok(Topology {
            table: t.switching_table(),
        })
    }

    #[getter]
    fn kind(&self) -> String {
        self.table.topology().kind().to_string()
    }

    #[getter]
    fn levels(&self) -> u32 {
        self.table.topology().levels()
    }

    #[getter]
    fn switch_count(&self) -> usize {
        self.table.topology().switch_count()
    }

    #[getter]
    fn source_count(&self) -> u32 {
        self.table.topology().source_count()
    }

    /// Leg pairs as 1-based (high, low) switch index tuples.
    #[getter]
    fn leg_pairs(&self) -> Vec<(usize, usize)> {
        self.table
            .topology()
            .leg_pairs()
            .iter()
            .map(|p| (p.high_switch + 1, p.low_switch + 1))
            .collect()
    }

    /// Gate states (0/1 ints) for one level index.
    fn gate_row(&self, level: i32) -> PyResult<Vec<u32>> {
        self.table
            .gates_for(level)
            .map(|g| g.states().iter().map(|&s| u32::from(s)).collect())
            .ok_or_else(|| PyValueError::new_err(format!("no row for level {level}")))
    }

    /// Level index for a gate vector, or None when unmapped.
    fn level_of(&self, gates: Vec<u8>) -> Option<i32> {
        self.table.level_of(&GateVector::from_bits(&gates))
    }

    /// Shoot-through violations as (level, (high, low)) tuples; empty = ok.
    fn validate(&self) -> Vec<(i32, (usize, usize))> {
        chbsim::validate_table(&self.table)
            .iter()
            .map(|v| (v.level, (v.pair.high_switch + 1, v.pair.low_switch + 1)))
            .collect()
    }

    /// The switching table in its CSV form.
    fn table_csv(&self) -> String {
        self.table.to_csv()
    }

    fn __repr__(&self) -> String {
        let t = self.table.topology();
        format!(
            "Topology(kind='{}', levels={}, switches={}, sources={})",
            t.kind(),
            t.levels(),
            t.switch_count(),
            t.source_count()
        )
    }
}

/// Staircase (nearest-level) level sequence over whole fundamental periods.
#[pyfunction]
#[pyo3(signature = (levels, modulation_index=1.0, fundamental_hz=50.0, sample_rate_hz=1e6, periods=1))]
fn nearest_level_sequence(
    levels: u32,
    modulation_index: f64,
    fundamental_hz: f64,
    sample_rate_hz: f64,
    periods: u32,
) -> PyResult<Vec<i32>> {
    let spec = ModulationSpec::staircase(fundamental_hz, modulation_index, sample_rate_hz);
    chbsim::nearest_level_sequence(levels, &spec, periods).map_err(value_error)
}

/// Phase-disposition level-shifted PWM level sequence.
#[pyfunction]
#[pyo3(signature = (levels, modulation_index=1.0, fundamental_hz=50.0, carrier_hz=2000.0, sample_rate_hz=1e6, periods=1))]
fn ls_pwm_sequence(
    levels: u32,
    modulation_index: f64,
    fundamental_hz: f64,
    carrier_hz: f64,
    sample_rate_hz: f64,
    periods: u32,
) -> PyResult<Vec<i32>> {
    let spec = ModulationSpec::ls_pwm(fundamental_hz, modulation_index, carrier_hz, sample_rate_hz);
    chbsim::ls_pwm_sequence(levels, &spec, periods).map_err(value_error)
}

/// Harmonic magnitudes of one exact period: returns (dc, [V1, V2, ...]).
#[pyfunction]
fn spectrum(
    samples: Vec<f64>,
    sample_rate_hz: f64,
    fundamental_hz: f64,
    max_harmonic: usize,
) -> PyResult<(f64, Vec<f64>)> {
    let s = chbsim::spectrum(&samples, sample_rate_hz, fundamental_hz, max_harmonic)
        .map_err(value_error)?;
    Ok((s.dc_component(), s.magnitudes().to_vec()))
}

/// THD percentage of one exact period of samples.
#[pyfunction]
fn thd(
    samples: Vec<f64>,
    sample_rate_hz: f64,
    fundamental_hz: f64,
    max_harmonic: usize,
) -> PyResult<f64> {
    let s = chbsim::spectrum(&samples, sample_rate_hz, fundamental_hz, max_harmonic)
        .map_err(value_error)?;
    chbsim::thd(&s, max_harmonic).map_err(value_error)
}

fn row_to_dict<'py>(py: Python<'py>, row: &ReportRow) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("name", &row.scenario.name)?;
    d.set_item("topology", row.scenario.topology.to_string())?;
    d.set_item("levels", row.scenario.levels)?;
    d.set_item("load", row.scenario.load.kind.to_string())?;
    d.set_item("vdc", row.scenario.vdc)?;
    d.set_item("modulation_index", row.scenario.modulation.modulation_index)?;
    d.set_item("fundamental_hz", row.scenario.modulation.fundamental_hz)?;
    d.set_item("sample_rate_hz", row.scenario.modulation.sample_rate_hz)?;
    d.set_item("max_harmonic", row.scenario.analysis.max_harmonic)?;
    d.set_item("switches", row.switch_count)?;
    d.set_item("events_per_period", row.switching_events_per_period)?;
    d.set_item("v_thd_pct", row.voltage_thd_pct)?;
    d.set_item("i_thd_pct", row.current_thd_pct)?;
    d.set_item("v1_volts", row.fundamental_volts)?;
    d.set_item("ref_thd_pct", row.reference_thd_pct)?;
    d.set_item("delta_pp", row.delta_pp)?;
    Ok(d)
}

/// Run one scenario through the full pipeline and return its report row.
#[pyfunction]
#[pyo3(signature = (topology, levels, load="R", resistance=10.0, inductance=100e-6,
                    vdc=100.0, scheme="staircase", fundamental_hz=50.0, modulation_index=1.0,
                    carrier_hz=2000.0, sample_rate_hz=1e6, max_harmonic=100))]
#[allow(clippy::too_many_arguments)]
fn simulate<'py>(
    py: Python<'py>,
    topology: &str,
    levels: u32,
    load: &str,
    resistance: f64,
    inductance: f64,
    vdc: f64,
    scheme: &str,
    fundamental_hz: f64,
    modulation_index: f64,
    carrier_hz: f64,
    sample_rate_hz: f64,
    max_harmonic: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let kind = parse_kind(topology)?;
    let load = parse_load(load, resistance, inductance)?;
    let modulation = build_spec(
        scheme,
        fundamental_hz,
        modulation_index,
        carrier_hz,
        sample_rate_hz,
    )?;
    let s = Scenario {
        name: format!("{kind}-{levels}-{}", load.kind),
        topology: kind,
        levels,
        vdc,
        load,
        modulation,
        analysis: AnalysisSpec {
            max_harmonic,
            reference_thd_pct: scenario::reference_thd(kind, levels, load.kind),
        },
    };
    let outcome = chbsim::run_scenario(&s).map_err(value_error)?;
    row_to_dict(py, &outcome.row)
}

/// Run the built-in eight-row comparison suite; returns one dict per row.
#[pyfunction]
fn run_paper_suite(py: Python<'_>) -> PyResult<Vec<Bound<'_, PyDict>>> {
    let report = chbsim::run_paper_suite().map_err(value_error)?;
    report.rows.iter().map(|row| row_to_dict(py, row)).collect()
}

#[pymodule]
fn chbsim_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("SUITE_MODULATION_INDEX", scenario::SUITE_MODULATION_INDEX)?;
    m.add_class::<Topology>()?;
    m.add_function(wrap_pyfunction!(nearest_level_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(ls_pwm_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(thd, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(run_paper_suite, m)?)?;
    Ok(())
}
