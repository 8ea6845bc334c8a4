//! Gate scheduling: staircase (nearest-level) and level-shifted carrier PWM.
//!
//! Both schemes sample a sinusoidal reference `m * k * sin(2*pi*f*t)` on a
//! uniform grid and map each sample to a switching-table row. The reference
//! is evaluated through a phase-folded sine so that mirrored samples negate
//! exactly in floating point; a staircase level sequence is therefore exactly
//! odd half-wave symmetric and sums to zero over a period.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::{GateVector, SwitchingTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulationScheme {
    /// Nearest-level rounding of the reference; one transition per threshold crossing.
    Staircase,
    /// Phase-disposition level-shifted PWM: `levels - 1` stacked in-phase
    /// triangular carriers compared against the reference.
    LsPwm,
}

impl std::fmt::Display for ModulationScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModulationScheme::Staircase => write!(f, "staircase"),
            ModulationScheme::LsPwm => write!(f, "ls_pwm"),
        }
    }
}

/// How a level sequence is generated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModulationSpec {
    #[serde(default = "default_scheme")]
    pub scheme: ModulationScheme,
    #[serde(default = "default_fundamental")]
    pub fundamental_hz: f64,
    /// Reference amplitude as a fraction of the top level, in (0, 1].
    #[serde(default = "default_modulation_index")]
    pub modulation_index: f64,
    /// Carrier frequency; required for `ls_pwm`, ignored for `staircase`.
    #[serde(default)]
    pub carrier_hz: Option<f64>,
    #[serde(default = "default_sample_rate")]
    pub sample_rate_hz: f64,
}

fn default_scheme() -> ModulationScheme {
    ModulationScheme::Staircase
}
fn default_fundamental() -> f64 {
    50.0
}
fn default_modulation_index() -> f64 {
    1.0
}
fn default_sample_rate() -> f64 {
    1.0e6
}

pub const DEFAULT_CARRIER_HZ: f64 = 2000.0;

impl Default for ModulationSpec {
    fn default() -> Self {
        ModulationSpec {
            scheme: default_scheme(),
            fundamental_hz: default_fundamental(),
            modulation_index: default_modulation_index(),
            carrier_hz: None,
            sample_rate_hz: default_sample_rate(),
        }
    }
}

impl ModulationSpec {
    pub fn staircase(fundamental_hz: f64, modulation_index: f64, sample_rate_hz: f64) -> Self {
        ModulationSpec {
            scheme: ModulationScheme::Staircase,
            fundamental_hz,
            modulation_index,
            carrier_hz: None,
            sample_rate_hz,
        }
    }

    pub fn ls_pwm(
        fundamental_hz: f64,
        modulation_index: f64,
        carrier_hz: f64,
        sample_rate_hz: f64,
    ) -> Self {
        ModulationSpec {
            scheme: ModulationScheme::LsPwm,
            fundamental_hz,
            modulation_index,
            carrier_hz: Some(carrier_hz),
            sample_rate_hz,
        }
    }

    /// Samples per fundamental period. Must be an even integer so level
    /// sequences can be exactly half-wave symmetric and periodic.
    pub fn samples_per_period(&self) -> Result<usize> {
        let fundamental_ok = self.fundamental_hz.is_finite() && self.fundamental_hz > 0.0;
        let rate_ok = self.sample_rate_hz.is_finite() && self.sample_rate_hz > 0.0;
        if !fundamental_ok || !rate_ok {
            return Err(Error::InvalidModulation(
                "fundamental_hz and sample_rate_hz must be positive".into(),
            ));
        }
        let ratio = self.sample_rate_hz / self.fundamental_hz;
        let rounded = ratio.round();
        if (ratio - rounded).abs() > 1e-9 * ratio || rounded < 2.0 {
            return Err(Error::NonIntegerPeriod {
                sample_rate_hz: self.sample_rate_hz,
                fundamental_hz: self.fundamental_hz,
            });
        }
        let spp = rounded as usize;
        if !spp.is_multiple_of(2) {
            return Err(Error::NonIntegerPeriod {
                sample_rate_hz: self.sample_rate_hz,
                fundamental_hz: self.fundamental_hz,
            });
        }
        Ok(spp)
    }

    /// Carrier periods per fundamental period (`ls_pwm` only).
    pub fn carrier_ratio(&self) -> Result<usize> {
        let carrier = self.carrier_hz.ok_or_else(|| {
            Error::InvalidModulation("ls_pwm requires carrier_hz".into())
        })?;
        let carrier_ok = carrier.is_finite() && carrier > 0.0;
        if !carrier_ok {
            return Err(Error::InvalidModulation("carrier_hz must be positive".into()));
        }
        let ratio = carrier / self.fundamental_hz;
        let rounded = ratio.round();
        if (ratio - rounded).abs() > 1e-9 * ratio || rounded < 1.0 {
            return Err(Error::CarrierNotMultiple {
                carrier_hz: carrier,
                fundamental_hz: self.fundamental_hz,
            });
        }
        Ok(rounded as usize)
    }

    pub fn validate(&self) -> Result<()> {
        let index_ok = self.modulation_index > 0.0 && self.modulation_index <= 1.0;
        if !index_ok {
            return Err(Error::InvalidModulation(format!(
                "modulation_index {} is outside (0, 1]",
                self.modulation_index
            )));
        }
        self.samples_per_period()?;
        match self.scheme {
            ModulationScheme::Staircase => {
                if self.sample_rate_hz < 1000.0 * self.fundamental_hz {
                    return Err(Error::InvalidModulation(format!(
                        "staircase needs sample_rate_hz >= 1000 * fundamental_hz \
                         ({} < {})",
                        self.sample_rate_hz,
                        1000.0 * self.fundamental_hz
                    )));
                }
            }
            ModulationScheme::LsPwm => {
                let carrier = self.carrier_hz.unwrap_or(0.0);
                self.carrier_ratio()?;
                if self.sample_rate_hz < 20.0 * carrier {
                    return Err(Error::InvalidModulation(format!(
                        "ls_pwm needs sample_rate_hz >= 20 * carrier_hz ({} < {})",
                        self.sample_rate_hz,
                        20.0 * carrier
                    )));
                }
            }
        }
        Ok(())
    }
}

fn half_levels(levels: u32) -> Result<i32> {
    if levels < 3 || levels.is_multiple_of(2) {
        return Err(Error::UnsupportedLevelCount { levels });
    }
    Ok(((levels - 1) / 2) as i32)
}

/// `sin(2*pi*i/spp)` evaluated so that the four quarter-period mirrors of a
/// sample index produce bit-identical magnitudes: `f(i + spp/2) == -f(i)` and
/// `f(spp/2 - i) == f(i)` hold exactly.
fn folded_sin(i: usize, spp: usize) -> f64 {
    let idx = i % spp;
    let half = spp / 2;
    let (sign, j) = if idx < half {
        (1.0, idx)
    } else {
        (-1.0, idx - half)
    };
    let j_folded = j.min(half - j);
    sign * (std::f64::consts::PI * j_folded as f64 / half as f64).sin()
}

/// Round with exact-half ties toward zero.
fn round_half_toward_zero(x: f64) -> f64 {
    x.signum() * (x.abs() - 0.5).ceil()
}

/// Nearest-level (staircase) sequence: `round(m * k * sin(2*pi*f*t))` per
/// sample, ties toward zero, over `periods` fundamental periods.
pub fn nearest_level_sequence(
    levels: u32,
    spec: &ModulationSpec,
    periods: u32,
) -> Result<Vec<i32>> {
    if spec.scheme != ModulationScheme::Staircase {
        return Err(Error::InvalidModulation(
            "nearest_level_sequence requires scheme = staircase".into(),
        ));
    }
    spec.validate()?;
    let k = half_levels(levels)?;
    let spp = spec.samples_per_period()?;
    let amplitude = spec.modulation_index * k as f64;

    let mut seq = Vec::with_capacity(spp * periods as usize);
    let mut one_period = Vec::with_capacity(spp);
    for i in 0..spp {
        let reference = amplitude * folded_sin(i, spp);
        one_period.push(round_half_toward_zero(reference) as i32);
    }
    for _ in 0..periods {
        seq.extend_from_slice(&one_period);
    }
    Ok(seq)
}

/// Phase-disposition LS-PWM sequence.
///
/// `levels - 1` contiguous unit-height triangular carrier bands tile
/// `[-k, +k]`; the output level is the count of carriers below the reference,
/// offset into `-k..=k`. All carriers share one phase (apex-symmetric around
/// the sample grid), and comparisons run in scaled-integer carrier space so
/// that mirrored samples behave symmetrically.
pub fn ls_pwm_sequence(levels: u32, spec: &ModulationSpec, periods: u32) -> Result<Vec<i32>> {
    if spec.scheme != ModulationScheme::LsPwm {
        return Err(Error::InvalidModulation(
            "ls_pwm_sequence requires scheme = ls_pwm".into(),
        ));
    }
    spec.validate()?;
    let k = half_levels(levels)?;
    let spp = spec.samples_per_period()?;
    let ratio = spec.carrier_ratio()?;
    let amplitude = spec.modulation_index * k as f64;

    // Carrier phase advances ratio/spp of a carrier cycle per sample; track it
    // in units of 1/(2*spp) so the quarter-cycle offset stays integral.
    let two_spp = 2 * (spp as u64);
    let quarter = (spp as u64) / 2;
    let spp_f = spp as f64;

    let mut one_period = Vec::with_capacity(spp);
    for i in 0..spp {
        let u = (2 * (i as u64) * (ratio as u64) + quarter) % two_spp;
        // triangle over [0, spp] in the scaled units, apex at u == spp
        let tri_num = if u <= spp as u64 { u } else { two_spp - u } as f64;
        let reference_scaled = amplitude * folded_sin(i, spp) * spp_f;
        let mut count: i32 = 0;
        for j in -k..k {
            if (j as f64) * spp_f + tri_num < reference_scaled {
                count += 1;
            }
        }
        one_period.push(count - k);
    }

    let mut seq = Vec::with_capacity(spp * periods as usize);
    for _ in 0..periods {
        seq.extend_from_slice(&one_period);
    }
    Ok(seq)
}

/// Generate a level sequence with whichever scheme the spec selects.
pub fn level_sequence(levels: u32, spec: &ModulationSpec, periods: u32) -> Result<Vec<i32>> {
    match spec.scheme {
        ModulationScheme::Staircase => nearest_level_sequence(levels, spec, periods),
        ModulationScheme::LsPwm => ls_pwm_sequence(levels, spec, periods),
    }
}

/// A level sequence resolved against a switching table: a uniformly sampled,
/// periodic sequence of gate vectors.
#[derive(Debug, Clone)]
pub struct GateSchedule {
    table: SwitchingTable,
    levels: Vec<i32>,
    spec: ModulationSpec,
    samples_per_period: usize,
    periods: u32,
}

impl GateSchedule {
    pub fn table(&self) -> &SwitchingTable {
        &self.table
    }

    pub fn spec(&self) -> &ModulationSpec {
        &self.spec
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.spec.sample_rate_hz
    }

    pub fn fundamental_hz(&self) -> f64 {
        self.spec.fundamental_hz
    }

    pub fn samples_per_period(&self) -> usize {
        self.samples_per_period
    }

    /// Duration in whole fundamental periods.
    pub fn periods(&self) -> u32 {
        self.periods
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn level_at(&self, sample: usize) -> i32 {
        self.levels[sample]
    }

    pub fn levels(&self) -> &[i32] {
        &self.levels
    }

    pub fn gates_at(&self, sample: usize) -> &GateVector {
        self.table
            .gates_for(self.levels[sample])
            .expect("schedule level always maps")
    }

    /// CSV form `t_seconds,S1,...,Sn`, one row per sample.
    pub fn to_csv(&self) -> String {
        let n = self.table.switch_count();
        let mut out = String::from("t_seconds");
        for s in 1..=n {
            out.push_str(&format!(",S{s}"));
        }
        out.push('\n');
        let dt = 1.0 / self.sample_rate_hz();
        for i in 0..self.len() {
            out.push_str(&format!("{},{}\n", i as f64 * dt, self.gates_at(i)));
        }
        out
    }

    /// CSV form `t_seconds,level`, one row per sample.
    pub fn levels_csv(&self) -> String {
        let mut out = String::from("t_seconds,level\n");
        let dt = 1.0 / self.sample_rate_hz();
        for (i, level) in self.levels.iter().enumerate() {
            out.push_str(&format!("{},{level}\n", i as f64 * dt));
        }
        out
    }
}

/// Resolve a level sequence against a table's rows.
///
/// Fails on the first level with no table row, on a sequence that is not a
/// whole number of periods, or on one that is not exactly periodic.
pub fn schedule_gates(
    table: &SwitchingTable,
    level_seq: &[i32],
    spec: &ModulationSpec,
) -> Result<GateSchedule> {
    spec.validate()?;
    let spp = spec.samples_per_period()?;
    if level_seq.is_empty() || !level_seq.len().is_multiple_of(spp) {
        return Err(Error::InvalidModulation(format!(
            "level sequence length {} is not a whole number of {spp}-sample periods",
            level_seq.len()
        )));
    }
    for (i, &level) in level_seq.iter().enumerate() {
        if table.gates_for(level).is_none() {
            return Err(Error::UnmappedLevel { sample: i, level });
        }
        if level_seq[i % spp] != level {
            return Err(Error::InvalidModulation(format!(
                "level sequence is not periodic: sample {i} differs from sample {}",
                i % spp
            )));
        }
    }
    Ok(GateSchedule {
        table: table.clone(),
        levels: level_seq.to_vec(),
        spec: spec.clone(),
        samples_per_period: spp,
        periods: (level_seq.len() / spp) as u32,
    })
}

/// Total per-switch on/off toggles across one fundamental period, including
/// the wrap from the period's last sample back to its first.
pub fn count_switching_events(schedule: &GateSchedule) -> usize {
    let spp = schedule.samples_per_period();
    let mut events = 0;
    for i in 0..spp {
        let here = schedule.gates_at(i);
        let next = schedule.gates_at((i + 1) % spp);
        events += here.hamming(next);
    }
    events
}
