//! Voltage synthesis and R/RL load solving.
//!
//! The inverter is an ideal controlled voltage source: the gate schedule fixes
//! the output voltage and load current never feeds back. Because the voltage
//! is piecewise constant, the RL response has a closed form inside every
//! segment, so currents are computed exactly instead of stepped and accuracy
//! is independent of the analysis sample rate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modulation::GateSchedule;
use crate::topology::SwitchingTable;

/// One constant-voltage span.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: f64,
    pub duration: f64,
    pub volts: f64,
}

/// Piecewise-constant output voltage over a whole number of periods.
#[derive(Debug, Clone, PartialEq)]
pub struct VoltageWaveform {
    segments: Vec<Segment>,
    period: f64,
    vdc: f64,
    sample_rate_hz: f64,
}

impl VoltageWaveform {
    /// Build from explicit segments, checking they tile `[0, duration]`
    /// contiguously.
    pub fn from_segments(
        segments: Vec<Segment>,
        period: f64,
        vdc: f64,
        sample_rate_hz: f64,
    ) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::BadSegments("no segments".into()));
        }
        if segments[0].start != 0.0 {
            return Err(Error::BadSegments(format!(
                "first segment starts at {}, not 0",
                segments[0].start
            )));
        }
        let mut cursor = 0.0;
        for (i, s) in segments.iter().enumerate() {
            if s.duration <= 0.0 {
                return Err(Error::BadSegments(format!(
                    "segment {i} has non-positive duration {}",
                    s.duration
                )));
            }
            if (s.start - cursor).abs() > 1e-12 * cursor.max(1e-12) {
                return Err(Error::BadSegments(format!(
                    "segment {i} starts at {} but the previous one ends at {cursor}",
                    s.start
                )));
            }
            cursor = s.start + s.duration;
        }
        Ok(VoltageWaveform {
            segments,
            period,
            vdc,
            sample_rate_hz,
        })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn vdc(&self) -> f64 {
        self.vdc
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    /// Total covered time.
    pub fn duration(&self) -> f64 {
        let last = self.segments.last().expect("non-empty by construction");
        last.start + last.duration
    }

    pub fn sample_count(&self) -> usize {
        (self.duration() * self.sample_rate_hz).round() as usize
    }

    /// Voltage at an arbitrary time (segments are start-inclusive).
    pub fn value_at(&self, t: f64) -> f64 {
        match self
            .segments
            .binary_search_by(|s| s.start.partial_cmp(&t).expect("finite times"))
        {
            Ok(i) => self.segments[i].volts,
            Err(0) => self.segments[0].volts,
            Err(i) => self.segments[i - 1].volts,
        }
    }

    /// Uniform samples on the analysis grid.
    pub fn sample(&self) -> Vec<f64> {
        let n = self.sample_count();
        let dt = 1.0 / self.sample_rate_hz;
        let mut out = Vec::with_capacity(n);
        let mut seg = 0;
        for i in 0..n {
            let t = i as f64 * dt;
            while seg + 1 < self.segments.len() && t >= self.segments[seg + 1].start {
                seg += 1;
            }
            out.push(self.segments[seg].volts);
        }
        out
    }

    /// Time-weighted mean over the full duration.
    pub fn mean(&self) -> f64 {
        let total: f64 = self.segments.iter().map(|s| s.duration * s.volts).sum();
        total / self.duration()
    }

    /// Lossless CSV form `start,duration,volts`.
    pub fn to_segments_csv(&self) -> String {
        let mut out = String::from("start,duration,volts\n");
        for s in &self.segments {
            out.push_str(&format!("{},{},{}\n", s.start, s.duration, s.volts));
        }
        out
    }

    /// Sampled CSV form `t_seconds,volts`.
    pub fn to_samples_csv(&self) -> String {
        let mut out = String::from("t_seconds,volts\n");
        let dt = 1.0 / self.sample_rate_hz;
        for (i, v) in self.sample().iter().enumerate() {
            out.push_str(&format!("{},{v}\n", i as f64 * dt));
        }
        out
    }
}

/// Map a gate schedule through a switching table into a voltage waveform,
/// merging adjacent equal-voltage samples into segments.
///
/// The lookup runs against `table`, not the schedule's own table, so a
/// schedule resolved against a foreign table fails with the sample index of
/// the first gate vector that has no row.
pub fn synthesize_voltage(
    schedule: &GateSchedule,
    table: &SwitchingTable,
    vdc: f64,
) -> Result<VoltageWaveform> {
    let dt = 1.0 / schedule.sample_rate_hz();
    let n = schedule.len();
    let mut segments: Vec<Segment> = Vec::new();

    let mut run_start = 0usize;
    while run_start < n {
        let level_here = schedule.level_at(run_start);
        let mut run_end = run_start + 1;
        while run_end < n && schedule.level_at(run_end) == level_here {
            run_end += 1;
        }
        let gates = schedule.gates_at(run_start);
        let mapped = table
            .level_of(gates)
            .ok_or(Error::UnmappedGates { sample: run_start })?;
        let volts = f64::from(mapped) * vdc;
        match segments.last_mut() {
            Some(last) if last.volts == volts => {
                last.duration += (run_end - run_start) as f64 * dt;
            }
            _ => segments.push(Segment {
                start: run_start as f64 * dt,
                duration: (run_end - run_start) as f64 * dt,
                volts,
            }),
        }
        run_start = run_end;
    }

    VoltageWaveform::from_segments(
        segments,
        schedule.samples_per_period() as f64 * dt,
        vdc,
        schedule.sample_rate_hz(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LoadKind {
    R,
    #[serde(rename = "RL")]
    Rl,
}

impl std::fmt::Display for LoadKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadKind::R => write!(f, "R"),
            LoadKind::Rl => write!(f, "RL"),
        }
    }
}

/// Series load: pure resistance, or resistance plus inductance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoadModel {
    pub kind: LoadKind,
    pub resistance: f64,
    #[serde(default)]
    pub inductance: f64,
}

impl LoadModel {
    pub fn resistive(resistance: f64) -> Self {
        LoadModel {
            kind: LoadKind::R,
            resistance,
            inductance: 0.0,
        }
    }

    pub fn inductive(resistance: f64, inductance: f64) -> Self {
        LoadModel {
            kind: LoadKind::Rl,
            resistance,
            inductance,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let resistance_ok = self.resistance.is_finite() && self.resistance > 0.0;
        if !resistance_ok {
            return Err(Error::InvalidLoad(format!(
                "resistance {} must be positive",
                self.resistance
            )));
        }
        match self.kind {
            LoadKind::R => {
                if self.inductance != 0.0 {
                    return Err(Error::InvalidLoad(
                        "R load must have zero inductance".into(),
                    ));
                }
            }
            LoadKind::Rl => {
                let inductance_ok = self.inductance.is_finite() && self.inductance > 0.0;
                if !inductance_ok {
                    return Err(Error::InvalidLoad(format!(
                        "RL load inductance {} must be positive",
                        self.inductance
                    )));
                }
            }
        }
        Ok(())
    }

    /// Time constant L/R (zero for R loads).
    pub fn tau(&self) -> f64 {
        self.inductance / self.resistance
    }
}

/// Uniformly sampled load current.
#[derive(Debug, Clone, PartialEq)]
pub struct CurrentWaveform {
    samples: Vec<f64>,
    sample_rate_hz: f64,
    initial_current: f64,
}

impl CurrentWaveform {
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn initial_current(&self) -> f64 {
        self.initial_current
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// CSV form `t_seconds,amps`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t_seconds,amps\n");
        let dt = 1.0 / self.sample_rate_hz;
        for (i, a) in self.samples.iter().enumerate() {
            out.push_str(&format!("{},{a}\n", i as f64 * dt));
        }
        out
    }
}

/// Ohmic current: `i(t) = v(t) / R` pointwise.
pub fn solve_r_current(v: &VoltageWaveform, load: &LoadModel) -> Result<CurrentWaveform> {
    load.validate()?;
    if load.kind != LoadKind::R {
        return Err(Error::InvalidLoad("solve_r_current needs an R load".into()));
    }
    let samples: Vec<f64> = v.sample().iter().map(|&x| x / load.resistance).collect();
    let initial_current = samples.first().copied().unwrap_or(0.0);
    Ok(CurrentWaveform {
        samples,
        sample_rate_hz: v.sample_rate_hz(),
        initial_current,
    })
}

/// RL current from initial current `i0`, exact within every segment:
/// `i(t) = V/R + (i_start - V/R) * exp(-(R/L) * dt)`, segments chained
/// continuously. Samples that fall inside a segment use the in-segment
/// closed form directly.
pub fn solve_rl_current(
    v: &VoltageWaveform,
    load: &LoadModel,
    i0: f64,
) -> Result<CurrentWaveform> {
    load.validate()?;
    if load.kind != LoadKind::Rl {
        return Err(Error::InvalidLoad("solve_rl_current needs an RL load".into()));
    }
    let r = load.resistance;
    let tau = load.tau();
    let n = v.sample_count();
    let dt = 1.0 / v.sample_rate_hz();

    let mut samples = Vec::with_capacity(n);
    let mut seg_iter = v.segments().iter();
    let mut seg = *seg_iter.next().expect("non-empty by construction");
    let mut seg_start_current = i0;
    for i in 0..n {
        let t = i as f64 * dt;
        while t >= seg.start + seg.duration {
            match seg_iter.next() {
                Some(next) => {
                    let steady = seg.volts / r;
                    seg_start_current =
                        steady + (seg_start_current - steady) * (-seg.duration / tau).exp();
                    seg = *next;
                }
                None => break,
            }
        }
        let steady = seg.volts / r;
        samples.push(steady + (seg_start_current - steady) * (-(t - seg.start) / tau).exp());
    }

    Ok(CurrentWaveform {
        samples,
        sample_rate_hz: v.sample_rate_hz(),
        initial_current: i0,
    })
}

/// End-of-waveform current after chaining every segment from `i0`.
fn chain_period(v: &VoltageWaveform, load: &LoadModel, i0: f64) -> f64 {
    let r = load.resistance;
    let tau = load.tau();
    let mut current = i0;
    for seg in v.segments() {
        let steady = seg.volts / r;
        current = steady + (current - steady) * (-seg.duration / tau).exp();
    }
    current
}

pub const DEFAULT_SETTLE_CAP: usize = 4096;

/// Steady-state current over one period: iterate whole periods from
/// `i0 = 0` until start and end currents agree within `tolerance`.
///
/// `v` must span exactly one period. R loads are memoryless and settle
/// immediately.
pub fn settle_periodic(
    v: &VoltageWaveform,
    load: &LoadModel,
    tolerance: f64,
) -> Result<CurrentWaveform> {
    settle_periodic_capped(v, load, tolerance, DEFAULT_SETTLE_CAP)
}

/// [`settle_periodic`] with an explicit warm-up period cap.
pub fn settle_periodic_capped(
    v: &VoltageWaveform,
    load: &LoadModel,
    tolerance: f64,
    max_warmup_periods: usize,
) -> Result<CurrentWaveform> {
    load.validate()?;
    if (v.duration() - v.period()).abs() > 1e-9 * v.period() {
        return Err(Error::BadSegments(format!(
            "settling needs a single-period waveform (duration {}, period {})",
            v.duration(),
            v.period()
        )));
    }
    match load.kind {
        LoadKind::R => solve_r_current(v, load),
        LoadKind::Rl => {
            let mut start = 0.0f64;
            let mut residual = f64::INFINITY;
            for _ in 0..max_warmup_periods {
                let end = chain_period(v, load, start);
                residual = (end - start).abs();
                if residual < tolerance {
                    return solve_rl_current(v, load, start);
                }
                start = end;
            }
            Err(Error::NoConvergence {
                residual_amps: residual,
                periods: max_warmup_periods,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modulation::{
        nearest_level_sequence, schedule_gates, ModulationSpec,
    };
    use crate::topology::{build_conventional, build_modified};

    const PAPER_R: f64 = 10.0;
    const PAPER_L: f64 = 100e-6;

    fn staircase_voltage(levels: u32, m: f64, vdc: f64) -> VoltageWaveform {
        let spec = ModulationSpec::staircase(50.0, m, 1.0e6);
        let table = build_conventional(levels).unwrap().switching_table();
        let seq = nearest_level_sequence(levels, &spec, 1).unwrap();
        let schedule = schedule_gates(&table, &seq, &spec).unwrap();
        synthesize_voltage(&schedule, &table, vdc).unwrap()
    }

    fn step_waveform(volts: f64, duration: f64, rate: f64) -> VoltageWaveform {
        VoltageWaveform::from_segments(
            vec![Segment {
                start: 0.0,
                duration,
                volts,
            }],
            duration,
            volts,
            rate,
        )
        .unwrap()
    }

    #[test]
    fn peak_level_synthesizes_to_two_vdc() {
        let v = staircase_voltage(5, 1.0, 100.0);
        let peak = v
            .segments()
            .iter()
            .map(|s| s.volts)
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(peak, 200.0);
    }

    #[test]
    fn all_off_schedule_yields_one_zero_segment() {
        let spec = ModulationSpec::staircase(50.0, 1.0, 1.0e6);
        let table = build_conventional(5).unwrap().switching_table();
        let spp = spec.samples_per_period().unwrap();
        let schedule = schedule_gates(&table, &vec![0i32; spp], &spec).unwrap();
        let v = synthesize_voltage(&schedule, &table, 100.0).unwrap();
        assert_eq!(v.segments().len(), 1);
        assert_eq!(v.segments()[0].volts, 0.0);
        assert_eq!(v.duration(), v.period());
    }

    #[test]
    fn seven_level_staircase_takes_exactly_the_seven_voltages() {
        let v = staircase_voltage(7, 1.0, 100.0);
        let mut distinct: Vec<f64> = v.segments().iter().map(|s| s.volts).collect();
        distinct.sort_by(|a, b| a.partial_cmp(b).unwrap());
        distinct.dedup();
        assert_eq!(
            distinct,
            vec![-300.0, -200.0, -100.0, 0.0, 100.0, 200.0, 300.0]
        );
    }

    #[test]
    fn segments_tile_without_gaps_and_match_levels_times_vdc() {
        let v = staircase_voltage(7, 0.8, 100.0);
        let mut cursor = 0.0;
        for s in v.segments() {
            assert!((s.start - cursor).abs() < 1e-15);
            cursor = s.start + s.duration;
            let multiple = s.volts / v.vdc();
            assert_eq!(multiple.fract(), 0.0);
            assert!(multiple.abs() <= 3.0);
        }
        assert!((cursor - v.period()).abs() < 1e-15);
    }

    #[test]
    fn foreign_table_lookup_fails_with_sample_index() {
        let spec = ModulationSpec::staircase(50.0, 1.0, 1.0e6);
        let table5 = build_conventional(5).unwrap().switching_table();
        let table7 = build_conventional(7).unwrap().switching_table();
        let seq = nearest_level_sequence(5, &spec, 1).unwrap();
        let schedule = schedule_gates(&table5, &seq, &spec).unwrap();
        match synthesize_voltage(&schedule, &table7, 100.0) {
            Err(Error::UnmappedGates { sample }) => assert_eq!(sample, 0),
            other => panic!("expected UnmappedGates, got {other:?}"),
        }
    }

    #[test]
    fn equal_level_sequences_give_identical_waveforms_across_topologies() {
        let spec = ModulationSpec::staircase(50.0, 1.0, 1.0e6);
        let conv = build_conventional(7).unwrap().switching_table();
        let modi = build_modified(7).unwrap().switching_table();
        let seq = nearest_level_sequence(7, &spec, 1).unwrap();
        let v_conv = synthesize_voltage(
            &schedule_gates(&conv, &seq, &spec).unwrap(),
            &conv,
            100.0,
        )
        .unwrap();
        let v_mod = synthesize_voltage(
            &schedule_gates(&modi, &seq, &spec).unwrap(),
            &modi,
            100.0,
        )
        .unwrap();
        assert_eq!(v_conv.segments(), v_mod.segments());
    }

    #[test]
    fn r_load_current_is_exact_scaling() {
        let v = staircase_voltage(5, 1.0, 100.0);
        let load = LoadModel::resistive(PAPER_R);
        let i = solve_r_current(&v, &load).unwrap();
        let volts = v.sample();
        assert_eq!(i.len(), volts.len());
        let peak = i.samples().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(peak, 20.0, "200 V across 10 ohms");
        for (a, x) in i.samples().iter().zip(volts.iter()) {
            assert_eq!(*a, *x / PAPER_R);
        }
    }

    #[test]
    fn rl_step_response_matches_the_closed_form() {
        let load = LoadModel::inductive(PAPER_R, PAPER_L);
        let tau = load.tau();
        assert_eq!(tau, 10e-6);
        let v = step_waveform(100.0, 100e-6, 1.0e6);
        let i = solve_rl_current(&v, &load, 0.0).unwrap();
        for (n_tau, idx) in [(1.0f64, 10usize), (2.0, 20), (5.0, 50)] {
            let expected = 10.0 * (1.0 - (-n_tau).exp());
            let got = i.samples()[idx];
            assert!(
                ((got - expected) / expected).abs() < 1e-9,
                "i({n_tau} tau) = {got}, expected {expected}"
            );
        }
        assert!((i.samples()[10] - 6.321_205_588_285_577).abs() < 1e-9);
    }

    #[test]
    fn rl_zero_voltage_segment_is_pure_decay() {
        let load = LoadModel::inductive(PAPER_R, PAPER_L);
        let v = step_waveform(0.0, 50e-6, 1.0e6);
        let i = solve_rl_current(&v, &load, 5.0).unwrap();
        for (idx, &got) in i.samples().iter().enumerate() {
            let expected = 5.0 * (-(idx as f64) / 10.0).exp();
            assert!((got - expected).abs() < 1e-12 * 5.0);
        }
    }

    #[test]
    fn rl_exactness_is_independent_of_sample_rate() {
        // The same two-segment waveform sampled coarsely and finely must agree
        // with the chained closed form at every sample.
        let load = LoadModel::inductive(PAPER_R, PAPER_L);
        let segments = vec![
            Segment {
                start: 0.0,
                duration: 37e-6,
                volts: 100.0,
            },
            Segment {
                start: 37e-6,
                duration: 63e-6,
                volts: -100.0,
            },
        ];
        let closed_form = |t: f64| -> f64 {
            let tau = 10e-6;
            if t < 37e-6 {
                10.0 * (1.0 - (-t / tau).exp())
            } else {
                let i_mid = 10.0 * (1.0 - (-37e-6 / tau).exp());
                -10.0 + (i_mid + 10.0) * (-(t - 37e-6) / tau).exp()
            }
        };
        for rate in [250_000.0, 1.0e6] {
            let v = VoltageWaveform::from_segments(segments.clone(), 100e-6, 100.0, rate).unwrap();
            let i = solve_rl_current(&v, &load, 0.0).unwrap();
            for (idx, &got) in i.samples().iter().enumerate() {
                let t = idx as f64 / rate;
                let expected = closed_form(t);
                assert!(
                    (got - expected).abs() <= 1e-12 * expected.abs().max(1.0),
                    "rate {rate}, t {t}: {got} vs {expected}"
                );
            }
        }
    }

    #[test]
    fn steady_state_staircase_current_is_odd_symmetric() {
        let v = staircase_voltage(5, 1.0, 100.0);
        let load = LoadModel::inductive(PAPER_R, PAPER_L);
        let i = settle_periodic(&v, &load, 1e-12).unwrap();
        let n = i.len();
        for idx in 0..n / 2 {
            let a = i.samples()[idx];
            let b = i.samples()[idx + n / 2];
            assert!(
                (a + b).abs() < 1e-9,
                "sample {idx}: {a} vs {b} breaks half-wave symmetry"
            );
        }
    }

    #[test]
    fn r_load_settles_in_one_pass() {
        let v = staircase_voltage(5, 1.0, 100.0);
        let load = LoadModel::resistive(PAPER_R);
        let i = settle_periodic_capped(&v, &load, 1e-12, 1).unwrap();
        assert_eq!(i.len(), v.sample_count());
    }

    #[test]
    fn rl_settles_within_one_warmup_period_at_reference_parameters() {
        // tau/T = 5e-4, so the period memory exp(-T/tau) underflows and the
        // first chained period already lands on the fixed point.
        let v = staircase_voltage(7, 0.8, 100.0);
        let load = LoadModel::inductive(PAPER_R, PAPER_L);
        let i = settle_periodic_capped(&v, &load, 1e-12, 2).unwrap();
        let start = i.initial_current();
        let end = chain_period(&v, &load, start);
        assert!((end - start).abs() < 1e-12, "residual {}", (end - start).abs());
        assert_eq!(i.samples()[0], start);
    }

    #[test]
    fn slow_load_with_tight_cap_reports_residual() {
        // tau = 10 periods: three warm-up periods cannot settle.
        let v = staircase_voltage(5, 1.0, 100.0);
        let load = LoadModel::inductive(PAPER_R, 10.0 * 0.02 * PAPER_R);
        match settle_periodic_capped(&v, &load, 1e-9, 3) {
            Err(Error::NoConvergence {
                residual_amps,
                periods,
            }) => {
                assert_eq!(periods, 3);
                assert!(residual_amps > 1e-9);
            }
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn current_slew_between_samples_is_bounded() {
        let v = staircase_voltage(7, 1.0, 100.0);
        let load = LoadModel::inductive(PAPER_R, PAPER_L);
        let i = settle_periodic(&v, &load, 1e-12).unwrap();
        let dt = 1.0 / i.sample_rate_hz();
        let bound = 7.0 * 100.0 / PAPER_L * dt;
        for w in i.samples().windows(2) {
            assert!((w[1] - w[0]).abs() <= bound);
        }
    }

    #[test]
    fn load_validation_rejects_nonphysical_parameters() {
        assert!(LoadModel::resistive(0.0).validate().is_err());
        assert!(LoadModel::resistive(-1.0).validate().is_err());
        assert!(LoadModel::inductive(10.0, 0.0).validate().is_err());
        assert!(LoadModel {
            kind: LoadKind::R,
            resistance: 10.0,
            inductance: 1e-6,
        }
        .validate()
        .is_err());
        assert!(LoadModel::resistive(10.0).validate().is_ok());
        assert!(LoadModel::inductive(10.0, 100e-6).validate().is_ok());
    }

    #[test]
    fn segment_validation_rejects_gaps_and_overlaps() {
        let gap = vec![
            Segment {
                start: 0.0,
                duration: 1e-3,
                volts: 1.0,
            },
            Segment {
                start: 2e-3,
                duration: 1e-3,
                volts: 0.0,
            },
        ];
        assert!(VoltageWaveform::from_segments(gap, 3e-3, 1.0, 1e6).is_err());
        assert!(VoltageWaveform::from_segments(vec![], 1.0, 1.0, 1e6).is_err());
    }

    #[test]
    fn csv_exports_cover_segment_and_sampled_forms() {
        let v = staircase_voltage(5, 1.0, 100.0);
        let seg_csv = v.to_segments_csv();
        assert!(seg_csv.starts_with("start,duration,volts\n"));
        assert_eq!(seg_csv.lines().count(), 1 + v.segments().len());

        let load = LoadModel::resistive(PAPER_R);
        let i = solve_r_current(&v, &load).unwrap();
        let i_csv = i.to_csv();
        assert!(i_csv.starts_with("t_seconds,amps\n"));
        assert_eq!(i_csv.lines().count(), 1 + i.len());
    }
}
