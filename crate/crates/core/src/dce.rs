//! Dynamical Casimir radiation from a SQUID-terminated waveguide, to first
//! order in the small parameter `f`.
//!
//! The drive at `ω_d` produces photon pairs at `ω± = ω_d/2 ± δω`. The output
//! quadratures are linear in the input ones,
//!
//! ```text
//! q± = −(q0± + f p0∓),   p± = −(p0± + f q0∓),
//! ```
//!
//! and a thermal input with occupations `n±` maps to the covariance matrix
//! returned by [`output_cm`].

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::gaussian::{congruence, CovarianceMatrix, Convention, Mat4};

/// Reduced Planck constant, J·s (CODATA 2018).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K (CODATA 2018, exact).
pub const K_B: f64 = 1.380_649e-23;

/// Above this value of `f` the model is flagged as leaving the perturbative regime.
pub const PERTURBATIVE_WARNING_F: f64 = 0.1;

/// Experimental parameters, SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DceParams {
    /// Speed of light in the waveguide, m/s.
    pub speed: f64,
    /// Drive angular frequency `ω_d`, rad/s.
    pub drive_angular_freq: f64,
    /// `L_eff(0)`, m.
    pub effective_length: f64,
    /// Normalized drive amplitude `ε ∈ [0, 1)`.
    pub amplitude: f64,
    /// `δω`, rad/s.
    pub detuning: f64,
    /// Kelvin.
    pub temperature: f64,
}

impl DceParams {
    /// Waveguide parameters of the 2011 superconducting DCE experiment:
    /// `v = 1.2e8 m/s`, `ω_d = 2π·10 GHz`, `L_eff(0) = 0.5 mm`, with
    /// `ε = 0.15` and `T = 50 mK`.
    pub fn standard() -> Self {
        Self {
            speed: 1.2e8,
            drive_angular_freq: 2.0 * PI * 1e10,
            effective_length: 5e-4,
            amplitude: 0.15,
            detuning: 0.0,
            temperature: 0.05,
        }
    }

    pub fn with_amplitude(self, amplitude: f64) -> Self {
        Self { amplitude, ..self }
    }

    pub fn with_temperature(self, temperature: f64) -> Self {
        Self {
            temperature,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name, x: f64| {
            if x > 0.0 && x.is_finite() {
                Ok(())
            } else {
                Err(invalid(name, format!("must be positive and finite, got {x}")))
            }
        };
        positive("speed", self.speed)?;
        positive("drive_angular_freq", self.drive_angular_freq)?;
        positive("effective_length", self.effective_length)?;
        if !(0.0..1.0).contains(&self.amplitude) {
            return Err(invalid(
                "amplitude",
                format!("must lie in [0, 1), got {}", self.amplitude),
            ));
        }
        if !(self.detuning.abs() < self.drive_angular_freq / 2.0) {
            return Err(invalid(
                "detuning",
                format!(
                    "|δω| must be below ω_d/2 = {}, got {}",
                    self.drive_angular_freq / 2.0,
                    self.detuning
                ),
            ));
        }
        if !(self.temperature >= 0.0 && self.temperature.is_finite()) {
            return Err(invalid(
                "temperature",
                format!("must be non-negative, got {}", self.temperature),
            ));
        }
        Ok(())
    }

    /// `ω₊ = ω_d/2 + δω`.
    pub fn omega_plus(&self) -> f64 {
        self.drive_angular_freq / 2.0 + self.detuning
    }

    /// `ω₋ = ω_d/2 − δω`.
    pub fn omega_minus(&self) -> f64 {
        self.drive_angular_freq / 2.0 - self.detuning
    }

    /// `f / ε = L_eff(0)·√(ω₊ω₋) / v`.
    pub fn coupling_per_amplitude(&self) -> f64 {
        self.effective_length * (self.omega_plus() * self.omega_minus()).sqrt() / self.speed
    }
}

/// Mean thermal photon numbers of the two output modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalOccupations {
    pub n_minus: f64,
    pub n_plus: f64,
}

impl ThermalOccupations {
    pub fn symmetric(n: f64) -> Self {
        Self {
            n_minus: n,
            n_plus: n,
        }
    }

    pub fn mean(&self) -> f64 {
        0.5 * (self.n_minus + self.n_plus)
    }
}

/// `f = ε·L_eff(0)·√(ω₊ω₋)/v`.
pub fn small_parameter(p: &DceParams) -> Result<f64> {
    p.validate()?;
    let f = p.amplitude * p.coupling_per_amplitude();
    if f >= 1.0 {
        return Err(Error::NonPerturbative(f));
    }
    Ok(f)
}

/// Bose–Einstein occupation `1/(exp(ħω/k_B T) − 1)`; exactly zero at `T = 0`.
pub fn thermal_occupation(angular_freq: f64, temperature: f64) -> f64 {
    if temperature <= 0.0 {
        return 0.0;
    }
    1.0 / (HBAR * angular_freq / (K_B * temperature)).exp_m1()
}

/// Inverse of [`thermal_occupation`] in the temperature argument.
pub fn temperature_for_occupation(angular_freq: f64, n: f64) -> f64 {
    if n <= 0.0 {
        return 0.0;
    }
    HBAR * angular_freq / (K_B * (1.0 / n).ln_1p())
}

pub fn occupations(p: &DceParams) -> ThermalOccupations {
    ThermalOccupations {
        n_minus: thermal_occupation(p.omega_minus(), p.temperature),
        n_plus: thermal_occupation(p.omega_plus(), p.temperature),
    }
}

/// Thermal input state `½·diag(1+2n₋, 1+2n₋, 1+2n₊, 1+2n₊)`.
pub fn input_cm(occ: &ThermalOccupations) -> Result<CovarianceMatrix> {
    let m = 0.5 * (1.0 + 2.0 * occ.n_minus);
    let p = 0.5 * (1.0 + 2.0 * occ.n_plus);
    CovarianceMatrix::new(
        [
            [m, 0.0, 0.0, 0.0],
            [0.0, m, 0.0, 0.0],
            [0.0, 0.0, p, 0.0],
            [0.0, 0.0, 0.0, p],
        ],
        Convention::HalfVacuum,
    )
}

/// Linear map from input to output quadratures, ordering `(q₋, p₋, q₊, p₊)`.
pub fn scattering_matrix(f: f64) -> Mat4 {
    [
        [-1.0, 0.0, 0.0, -f],
        [0.0, -1.0, -f, 0.0],
        [0.0, -f, -1.0, 0.0],
        [-f, 0.0, 0.0, -1.0],
    ]
}

/// Output covariance matrix (HalfVacuum):
///
/// ```text
/// A = 1 + 2n₋ + f²(1 + 2n₊),  B = 1 + 2n₊ + f²(1 + 2n₋),  C = 2f(1 + n₊ + n₋)·σx
/// V = ½ [[A·𝟙, C], [Cᵀ, B·𝟙]]
/// ```
pub fn output_cm(f: f64, occ: &ThermalOccupations) -> Result<CovarianceMatrix> {
    check_f(f)?;
    let (nm, np) = (occ.n_minus, occ.n_plus);
    let a = 0.5 * (1.0 + 2.0 * nm + f * f * (1.0 + 2.0 * np));
    let b = 0.5 * (1.0 + 2.0 * np + f * f * (1.0 + 2.0 * nm));
    let c = f * (1.0 + np + nm);
    CovarianceMatrix::from_blocks(
        [[a, 0.0], [0.0, a]],
        [[b, 0.0], [0.0, b]],
        [[0.0, c], [c, 0.0]],
        Convention::HalfVacuum,
    )
}

/// Output state obtained by propagating [`input_cm`] through
/// [`scattering_matrix`]; agrees with [`output_cm`] to rounding.
pub fn scattered_cm(f: f64, occ: &ThermalOccupations) -> Result<CovarianceMatrix> {
    check_f(f)?;
    let v0 = input_cm(occ)?;
    let s = scattering_matrix(f);
    CovarianceMatrix::new(congruence(&s, v0.entries()), Convention::HalfVacuum)
}

/// Two-mode squeezed thermal state: thermal input `diag(1+2n₋, 1+2n₊)/2`
/// squeezed with parameter `r`, correlations along `σx`. Exactly physical for
/// any `r ≥ 0`, `n± ≥ 0`; for `n₊ = n₋ = n` the diagonal blocks reduce to
/// `½(1+2n)cosh 2r`.
pub fn exact_tms_cm(r: f64, occ: &ThermalOccupations) -> Result<CovarianceMatrix> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(invalid("squeezing", format!("must be non-negative, got {r}")));
    }
    let (ch2, sh2) = (r.cosh().powi(2), r.sinh().powi(2));
    let xm = 1.0 + 2.0 * occ.n_minus;
    let xp = 1.0 + 2.0 * occ.n_plus;
    let a = 0.5 * (xm * ch2 + xp * sh2);
    let b = 0.5 * (xp * ch2 + xm * sh2);
    let c = 0.5 * (1.0 + occ.n_plus + occ.n_minus) * (2.0 * r).sinh();
    CovarianceMatrix::from_blocks(
        [[a, 0.0], [0.0, a]],
        [[b, 0.0], [0.0, b]],
        [[0.0, c], [c, 0.0]],
        Convention::HalfVacuum,
    )
}

fn check_f(f: f64) -> Result<()> {
    if !(f >= 0.0) {
        return Err(invalid("f", format!("must be non-negative, got {f}")));
    }
    if f >= 1.0 {
        return Err(Error::NonPerturbative(f));
    }
    Ok(())
}
