//! Crate-wide error type.

use std::fmt;

use crate::topology::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug)]
pub enum Error {
    /// Level count is even or below 3.
    UnsupportedLevelCount { levels: u32 },
    /// A modulation spec field violates its constraints.
    InvalidModulation(String),
    /// Samples per period is not an even integer.
    NonIntegerPeriod {
        sample_rate_hz: f64,
        fundamental_hz: f64,
    },
    /// Carrier frequency is not an integer multiple of the fundamental.
    CarrierNotMultiple {
        carrier_hz: f64,
        fundamental_hz: f64,
    },
    /// A level index in a sequence has no row in the switching table.
    UnmappedLevel { sample: usize, level: i32 },
    /// A gate vector has no row in the switching table.
    UnmappedGates { sample: usize },
    /// A switching table failed shoot-through validation.
    ShootThrough(Vec<Violation>),
    /// Malformed switching-table CSV.
    TableFormat(String),
    /// Load parameters violate their constraints.
    InvalidLoad(String),
    /// Voltage segments do not tile the duration contiguously.
    BadSegments(String),
    /// Requested harmonic order exceeds what the sample count supports.
    HarmonicRange { max_harmonic: usize, limit: usize },
    /// Fundamental magnitude is at or below the numerical floor.
    NoFundamental,
    /// Empty sample buffer.
    EmptyInput,
    /// Periodic settling did not converge within the iteration cap.
    NoConvergence { residual_amps: f64, periods: usize },
    /// Scenario configuration problem.
    Config(String),
    /// A pipeline stage failed; carries the stage and scenario names.
    Stage {
        stage: &'static str,
        scenario: String,
        source: Box<Error>,
    },
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedLevelCount { levels } => {
                write!(f, "unsupported level count {levels}: must be an odd integer >= 3")
            }
            Error::InvalidModulation(msg) => write!(f, "invalid modulation spec: {msg}"),
            Error::NonIntegerPeriod {
                sample_rate_hz,
                fundamental_hz,
            } => write!(
                f,
                "sample rate {sample_rate_hz} Hz does not give an even integer number of \
                 samples per {fundamental_hz} Hz period"
            ),
            Error::CarrierNotMultiple {
                carrier_hz,
                fundamental_hz,
            } => write!(
                f,
                "carrier {carrier_hz} Hz is not an integer multiple of the fundamental \
                 {fundamental_hz} Hz"
            ),
            Error::UnmappedLevel { sample, level } => {
                write!(f, "level {level} at sample {sample} has no switching-table row")
            }
            Error::UnmappedGates { sample } => {
                write!(f, "gate vector at sample {sample} has no switching-table row")
            }
            Error::ShootThrough(violations) => {
                write!(f, "switching table has {} shoot-through violation(s):", violations.len())?;
                for v in violations {
                    write!(f, " [level {} pair {}]", v.level, v.pair)?;
                }
                Ok(())
            }
            Error::TableFormat(msg) => write!(f, "malformed switching-table CSV: {msg}"),
            Error::InvalidLoad(msg) => write!(f, "invalid load: {msg}"),
            Error::BadSegments(msg) => write!(f, "bad voltage segments: {msg}"),
            Error::HarmonicRange {
                max_harmonic,
                limit,
            } => write!(
                f,
                "max harmonic {max_harmonic} exceeds the supported limit {limit}"
            ),
            Error::NoFundamental => write!(f, "no fundamental: V1 is at or below the numerical floor"),
            Error::EmptyInput => write!(f, "empty sample buffer"),
            Error::NoConvergence {
                residual_amps,
                periods,
            } => write!(
                f,
                "periodic settling did not converge after {periods} period(s); \
                 residual {residual_amps} A"
            ),
            Error::Config(msg) => write!(f, "config error: {msg}"),
            Error::Stage {
                stage,
                scenario,
                source,
            } => write!(f, "scenario '{scenario}' failed at stage '{stage}': {source}"),
            Error::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Stage { source, .. } => Some(source),
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl Error {
    /// Wrap an error with the pipeline stage and scenario it occurred in.
    pub fn at_stage(self, stage: &'static str, scenario: &str) -> Error {
        Error::Stage {
            stage,
            scenario: scenario.to_string(),
            source: Box::new(self),
        }
    }
}
