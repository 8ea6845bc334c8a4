//! Harmonic spectra and THD over exactly one fundamental period.
//!
//! Harmonic magnitudes come from direct Fourier-series correlation, not an
//! FFT: with an exact integer number of samples per period there is no
//! leakage and no windowing, and the sample count need not be a power of two.
//! Correlation phases are reduced with integer arithmetic (`n*i mod N`), so
//! precision does not degrade at high harmonic orders.

use crate::error::{Error, Result};

/// Peak magnitude of each harmonic plus the DC term. `magnitudes[0]` is the
/// fundamental V1; entry `n-1` is the n-th harmonic.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicSpectrum {
    fundamental_hz: f64,
    magnitudes: Vec<f64>,
    dc_component: f64,
}

impl HarmonicSpectrum {
    pub fn fundamental_hz(&self) -> f64 {
        self.fundamental_hz
    }

    pub fn dc_component(&self) -> f64 {
        self.dc_component
    }

    /// Peak magnitude of harmonic order `n >= 1`.
    pub fn magnitude(&self, n: usize) -> Option<f64> {
        if n == 0 {
            return None;
        }
        self.magnitudes.get(n - 1).copied()
    }

    /// Fundamental peak magnitude V1.
    pub fn fundamental(&self) -> f64 {
        self.magnitudes[0]
    }

    pub fn magnitudes(&self) -> &[f64] {
        &self.magnitudes
    }

    /// Highest harmonic order carried.
    pub fn max_harmonic(&self) -> usize {
        self.magnitudes.len()
    }

    /// CSV form `harmonic_order,frequency_hz,magnitude`; order 0 is DC.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("harmonic_order,frequency_hz,magnitude\n");
        out.push_str(&format!("0,0,{}\n", self.dc_component));
        for (i, mag) in self.magnitudes.iter().enumerate() {
            let order = i + 1;
            out.push_str(&format!(
                "{order},{},{mag}\n",
                order as f64 * self.fundamental_hz
            ));
        }
        out
    }
}

/// Fourier-series magnitudes of one exact period of samples.
///
/// `samples` must cover exactly one period of `fundamental_hz` at
/// `sample_rate_hz` (an integer count); resampling is the caller's job.
/// `max_harmonic` is limited to `floor(N/2) - 1`.
pub fn spectrum(
    samples: &[f64],
    sample_rate_hz: f64,
    fundamental_hz: f64,
    max_harmonic: usize,
) -> Result<HarmonicSpectrum> {
    let n = samples.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let per_period = sample_rate_hz / fundamental_hz;
    let whole_period =
        per_period.is_finite() && (per_period - per_period.round()).abs() < 1e-9 * per_period;
    if !whole_period {
        return Err(Error::NonIntegerPeriod {
            sample_rate_hz,
            fundamental_hz,
        });
    }
    if per_period.round() as usize != n {
        return Err(Error::NonIntegerPeriod {
            sample_rate_hz,
            fundamental_hz,
        });
    }
    let limit = (n / 2).saturating_sub(1);
    if max_harmonic == 0 || max_harmonic > limit {
        return Err(Error::HarmonicRange {
            max_harmonic,
            limit,
        });
    }

    // One period of sin/cos, indexed by (h*i) mod n: exact phase reduction
    // and no repeated trig evaluation across harmonics.
    let mut sin_table = Vec::with_capacity(n);
    let mut cos_table = Vec::with_capacity(n);
    for p in 0..n {
        let theta = 2.0 * std::f64::consts::PI * p as f64 / n as f64;
        sin_table.push(theta.sin());
        cos_table.push(theta.cos());
    }

    let dc_component = samples.iter().sum::<f64>() / n as f64;

    let mut magnitudes = Vec::with_capacity(max_harmonic);
    for h in 1..=max_harmonic {
        let mut a = 0.0;
        let mut b = 0.0;
        let mut phase = 0usize;
        for &x in samples {
            a += x * cos_table[phase];
            b += x * sin_table[phase];
            phase += h;
            if phase >= n {
                phase -= n;
            }
        }
        let scale = 2.0 / n as f64;
        magnitudes.push((a * scale).hypot(b * scale));
    }

    Ok(HarmonicSpectrum {
        fundamental_hz,
        magnitudes,
        dc_component,
    })
}

/// THD percentage: `100 * sqrt(sum of V_n^2 for n in 2..=max_harmonic) / V1`.
/// DC is excluded. Fails with `NoFundamental` when V1 sits at the numerical
/// floor relative to the rest of the spectrum.
pub fn thd(spectrum: &HarmonicSpectrum, max_harmonic: usize) -> Result<f64> {
    if max_harmonic > spectrum.max_harmonic() {
        return Err(Error::HarmonicRange {
            max_harmonic,
            limit: spectrum.max_harmonic(),
        });
    }
    let v1 = spectrum.fundamental();
    let scale = spectrum
        .magnitudes()
        .iter()
        .cloned()
        .fold(spectrum.dc_component().abs(), f64::max);
    // v1 must clear the floor relative to the spectrum's own scale; NaN fails
    let has_fundamental = v1 > 0.0 && v1 > 1e-12 * scale;
    if !has_fundamental {
        return Err(Error::NoFundamental);
    }
    let harmonic_power: f64 = spectrum.magnitudes()[1..max_harmonic]
        .iter()
        .map(|v| v * v)
        .sum();
    Ok(100.0 * harmonic_power.sqrt() / v1)
}

/// Root-mean-square of a sample buffer.
pub fn rms(samples: &[f64]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mean_square = samples.iter().map(|x| x * x).sum::<f64>() / samples.len() as f64;
    Ok(mean_square.sqrt())
}
