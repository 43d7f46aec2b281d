//! Real pulse envelopes with exact area control.
//!
//! An envelope is a pure function of the local time `t` in `[0, T]`; it is
//! zero outside that window. The drive phase is carried alongside so that a
//! single 2π pulse can be split into two π halves with a relative phase.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};
use crate::quadrature;

/// Envelope family.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PulseShape {
    #[serde(alias = "gaussian")]
    ShiftedGaussian,
    Sine,
    Square,
}

impl PulseShape {
    pub fn name(self) -> &'static str {
        match self {
            PulseShape::ShiftedGaussian => "gaussian",
            PulseShape::Sine => "sine",
            PulseShape::Square => "square",
        }
    }

    /// Builds a pulse of this shape; `sigma_ratio` is only used by the Gaussian.
    pub fn build(self, duration: f64, area: f64, sigma_ratio: f64) -> Result<PulseEnvelope> {
        match self {
            PulseShape::ShiftedGaussian => make_shifted_gaussian(duration, sigma_ratio * duration, area),
            PulseShape::Sine => make_sine(duration, area),
            PulseShape::Square => make_square(duration, area),
        }
    }
}

impl fmt::Display for PulseShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PulseShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gaussian" | "shifted-gaussian" | "smooth" => Ok(PulseShape::ShiftedGaussian),
            "sine" => Ok(PulseShape::Sine),
            "square" => Ok(PulseShape::Square),
            other => Err(Error::param(
                "shape",
                format!("unknown pulse shape `{other}` (expected gaussian, sine or square)"),
            )),
        }
    }
}

/// Rabi-frequency envelope Ω(t) of one pulse.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PulseEnvelope {
    shape: PulseShape,
    duration: f64,
    sigma: Option<f64>,
    amplitude: f64,
    area: f64,
    phase: f64,
}

/// `Ω(t) = A [exp(-(t - T/2)² / 2σ²) - exp(-(T/2)² / 2σ²)]` with A fixing the area.
pub fn make_shifted_gaussian(duration: f64, sigma: f64, area: f64) -> Result<PulseEnvelope> {
    ensure_positive("duration", duration)?;
    ensure_positive("sigma", sigma)?;
    ensure_positive("area", area)?;
    let offset = (-duration * duration / (8.0 * sigma * sigma)).exp();
    let raw = sigma * TAU.sqrt() * libm::erf(duration / (2.0 * 2f64.sqrt() * sigma)) - duration * offset;
    Ok(PulseEnvelope {
        shape: PulseShape::ShiftedGaussian,
        duration,
        sigma: Some(sigma),
        amplitude: area / raw,
        area,
        phase: 0.0,
    })
}

/// `Ω(t) = (θπ / 2T) sin(πt / T)`
pub fn make_sine(duration: f64, area: f64) -> Result<PulseEnvelope> {
    ensure_positive("duration", duration)?;
    ensure_positive("area", area)?;
    Ok(PulseEnvelope {
        shape: PulseShape::Sine,
        duration,
        sigma: None,
        amplitude: area * PI / (2.0 * duration),
        area,
        phase: 0.0,
    })
}

/// Constant `θ / T` on `[0, T]`.
pub fn make_square(duration: f64, area: f64) -> Result<PulseEnvelope> {
    ensure_positive("duration", duration)?;
    ensure_positive("area", area)?;
    Ok(PulseEnvelope {
        shape: PulseShape::Square,
        duration,
        sigma: None,
        amplitude: area / duration,
        area,
        phase: 0.0,
    })
}

impl PulseEnvelope {
    pub fn with_phase(mut self, phase: f64) -> Self {
        self.phase = phase;
        self
    }

    pub fn shape(&self) -> PulseShape {
        self.shape
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn sigma(&self) -> Option<f64> {
        self.sigma
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn target_area(&self) -> f64 {
        self.area
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    /// Ω(t); zero outside `[0, T]`.
    pub fn value(&self, t: f64) -> f64 {
        if !(0.0..=self.duration).contains(&t) {
            return 0.0;
        }
        match self.shape {
            PulseShape::ShiftedGaussian => {
                let s = self.sigma.unwrap_or(1.0);
                let half = 0.5 * self.duration;
                let d = t - half;
                let v = (-d * d / (2.0 * s * s)).exp() - (-half * half / (2.0 * s * s)).exp();
                // exact zero at the end points despite rounding
                if t == 0.0 || t == self.duration {
                    0.0
                } else {
                    self.amplitude * v
                }
            }
            PulseShape::Sine => {
                if t == 0.0 || t == self.duration {
                    0.0
                } else {
                    self.amplitude * (PI * t / self.duration).sin()
                }
            }
            PulseShape::Square => self.amplitude,
        }
    }

    /// Ω at the pulse centre, which is the maximum for every shape here.
    pub fn peak(&self) -> f64 {
        self.value(0.5 * self.duration)
    }

    /// Step-size cap for integrators resolving this envelope.
    pub fn feature_time(&self) -> f64 {
        self.sigma.unwrap_or(self.duration).min(self.duration)
    }

    /// ∫₀ᵀ Ω dt by adaptive quadrature.
    pub fn numerical_area(&self) -> f64 {
        quadrature::integrate(|t| self.value(t), 0.0, self.duration, 0.0, 1e-13)
    }

    /// ∫₀ᵀ f(Ω(t)) dt
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        quadrature::integrate(|t| f(self.value(t)), 0.0, self.duration, 1e-300, 1e-12)
    }
}

/// Shape constant κ = [∫ P_Ry dt] B²T/π² with P_Ry = Ω² / (4B² + Ω²).
///
/// Evaluated at `b` and checked against `2b`; a relative change above 0.5%
/// means the weak-drive limit has not been reached.
pub fn kappa_factor(pulse: &PulseEnvelope, b: f64) -> Result<f64> {
    ensure_positive("B", b)?;
    let area = pulse.numerical_area();
    if (area - TAU).abs() > 1e-6 * TAU {
        return Err(Error::NotNormalized {
            area,
            expected: TAU,
        });
    }
    if pulse.peak() >= b {
        return Err(Error::param("B", "peak Rabi frequency must stay below B"));
    }
    let at = |b: f64| {
        let t = pulse.duration();
        let occupied = pulse.integrate(|om| om * om / (4.0 * b * b + om * om));
        occupied * b * b * t / (PI * PI)
    };
    let at_b = at(b);
    let at_2b = at(2.0 * b);
    if ((at_2b - at_b) / at_b).abs() > 5e-3 {
        return Err(Error::KappaNotConverged { at_b, at_2b });
    }
    Ok(at_b)
}
