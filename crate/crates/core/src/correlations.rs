//! Gaussian EPR steering, Gaussian interferometric power and entanglement of
//! two-mode states, with the leading-order forms for the DCE family.
//!
//! All exact measures rescale their input to
//! [`Convention::UnitVacuum`](crate::gaussian::Convention::UnitVacuum)
//! before evaluation and use natural logarithms.

use crate::dce::{self, DceParams, ThermalOccupations, PERTURBATIVE_WARNING_F};
use crate::error::{Error, Result};
use crate::gaussian::{CovarianceMatrix, SymplecticSpectrum};

/// `ip_exact` requires `ν₋ ≥ 1 − PHYSICAL_TOL` (UnitVacuum).
const PHYSICAL_TOL: f64 = 1e-9;
const PURE_I4_TOL: f64 = 1e-9;
const PURE_Y_TOL: f64 = 1e-12;

/// Bisection bracket and resolution for critical temperatures, kelvin.
const T_BRACKET: (f64, f64) = (0.0, 1.0);
const T_RESOLUTION: f64 = 1e-6;

/// Which party performs the steering measurements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    AToB,
    BToA,
}

/// Mode on which the phase shift is encoded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Steering,
    Entanglement,
}

/// `max{0, ½ ln(det A / det V)}` where `A` is the steering party's block.
pub fn steering_exact(cm: &CovarianceMatrix, direction: Direction) -> Result<f64> {
    let inv = cm.to_unit_vacuum().invariants();
    let det_a = match direction {
        Direction::AToB => inv.i1,
        Direction::BToA => inv.i2,
    };
    let det_v = inv.i4;
    if !(det_a > 0.0 && det_v > 0.0) {
        return Err(Error::NonPositiveDeterminant { det_a, det_v });
    }
    Ok((0.5 * (det_a / det_v).ln()).max(0.0))
}

/// Leading-order steering of the DCE state, `max{0, 3f² − 2n}`.
pub fn steering_perturbative(f: f64, n: f64) -> f64 {
    (3.0 * f * f - 2.0 * n).max(0.0)
}

/// Occupation at which the exact steering of the DCE state with symmetric
/// occupations vanishes: `[(1+f²)/(1−f²)² − 1]/2`.
pub fn steering_threshold_occupation(f: f64) -> f64 {
    let g = 1.0 - f * f;
    0.5 * ((1.0 + f * f) / (g * g) - 1.0)
}

/// Smallest drive amplitude with nonzero leading-order steering at the
/// parameters' temperature, `ε₀ = v·√(2n/3) / (L_eff(0)·√(ω₊ω₋))`.
///
/// At zero detuning this is `(2v / (L_eff(0)·ω_d))·√(2n/3)`. It follows from
/// requiring `f > √(2n/3)` with `f = ε·L_eff(0)·√(ω₊ω₋)/v`; no factor of `f`
/// survives on the right-hand side.
pub fn steering_onset_amplitude(p: &DceParams) -> Result<f64> {
    p.validate()?;
    let n = dce::occupations(p).mean();
    Ok((2.0 * n / 3.0).sqrt() / p.coupling_per_amplitude())
}

/// Gaussian interferometric power `(X + √(X² + YZ)) / (2Y)`, with
///
/// ```text
/// X = (I1 + I3)(1 + I2 + I3 − I4) − I4²
/// Y = (I4 − 1)(1 + I1 + I2 + 2 I3 + I4)
/// Z = (I1 + I4)(I1 I2 − I4) + I3 (2 I1 + I3)(1 + I2)
/// ```
///
/// For probe B the roles of `I1` and `I2` are exchanged. Unphysical inputs are
/// rejected with [`Error::UnphysicalState`] and the `0/0` form at pure states
/// with [`Error::DegeneratePure`].
pub fn ip_exact(cm: &CovarianceMatrix, probe: Probe) -> Result<f64> {
    let unit = cm.to_unit_vacuum();
    let nu_minus = unit.symplectic_spectrum()?.nu_minus;
    if nu_minus < 1.0 - PHYSICAL_TOL {
        return Err(Error::UnphysicalState { nu_minus });
    }
    let inv = match probe {
        Probe::A => unit.invariants(),
        Probe::B => unit.invariants().swapped(),
    };
    let (i1, i2, i3, i4) = (inv.i1, inv.i2, inv.i3, inv.i4);
    let x = (i1 + i3) * (1.0 + i2 + i3 - i4) - i4 * i4;
    let y = (i4 - 1.0) * (1.0 + i1 + i2 + 2.0 * i3 + i4);
    let z = (i1 + i4) * (i1 * i2 - i4) + i3 * (2.0 * i1 + i3) * (1.0 + i2);
    if (i4 - 1.0).abs() <= PURE_I4_TOL && y.abs() <= PURE_Y_TOL {
        return Err(Error::DegeneratePure { i4, y });
    }
    let root = (x * x + y * z).max(0.0).sqrt();
    Ok(((x + root) / (2.0 * y)).max(0.0))
}

/// Leading-order interferometric power of the DCE state, `f²(1 + 2n)`.
pub fn ip_perturbative(f: f64, n: f64) -> f64 {
    f * f * (1.0 + 2.0 * n)
}

/// Temperature at which the exact measure of the DCE output state drops to
/// zero, located by bisection on `[0, 1] K` to 1 µK.
///
/// Returns `None` when the measure vanishes already at `T = 0` or is still
/// positive at 1 K.
pub fn critical_temperature(p: &DceParams, measure: Measure) -> Result<Option<f64>> {
    let f = dce::small_parameter(p)?;
    let positive = |t: f64| -> Result<bool> {
        let occ = dce::occupations(&p.with_temperature(t));
        let cm = dce::output_cm(f, &occ)?;
        let value = match measure {
            Measure::Steering => steering_exact(&cm, Direction::AToB)?,
            Measure::Entanglement => cm.log_negativity()?,
        };
        Ok(value > 0.0)
    };
    let (lo, hi) = T_BRACKET;
    if !positive(lo)? || positive(hi)? {
        return Ok(None);
    }
    bisect_boundary(lo, hi, T_RESOLUTION, positive).map(Some)
}

/// Locates the switch of a predicate that holds at `lo` and fails at `hi`.
fn bisect_boundary<F>(mut lo: f64, mut hi: f64, tol: f64, mut holds: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<bool>,
{
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if holds(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReportFlag {
    /// The state is unphysical at tolerance 1e-9; exact IP fields hold the
    /// perturbative value.
    ExactSkippedUnphysical,
    /// The exact IP formula is `0/0` (pure state); exact IP fields hold the
    /// perturbative value.
    ExactSkippedDegenerate,
    /// `f` exceeds 0.1.
    PerturbativeWarning,
}

impl ReportFlag {
    pub fn token(self) -> &'static str {
        match self {
            ReportFlag::ExactSkippedUnphysical => "exact_skipped_unphysical",
            ReportFlag::ExactSkippedDegenerate => "exact_skipped_degenerate",
            ReportFlag::PerturbativeWarning => "perturbative_warning",
        }
    }
}

/// Every correlation measure at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    pub f: f64,
    pub occupations: ThermalOccupations,
    pub steering_a_to_b: f64,
    pub steering_b_to_a: f64,
    pub steering_perturbative: f64,
    pub ip_probe_a: f64,
    pub ip_probe_b: f64,
    pub ip_perturbative: f64,
    pub log_negativity: f64,
    /// Symplectic spectrum in UnitVacuum units.
    pub spectrum: SymplecticSpectrum,
    pub physicality_deficit: f64,
    /// Sorted, without duplicates.
    pub flags: Vec<ReportFlag>,
}

/// Report for the DCE output state with small parameter `f` and occupations
/// `occ`. Perturbative measures use the mean occupation.
pub fn report(f: f64, occ: &ThermalOccupations) -> Result<CorrelationReport> {
    let cm = dce::output_cm(f, occ)?;
    let n = occ.mean();
    let ip_pert = ip_perturbative(f, n);
    let mut flags = Vec::new();
    if f > PERTURBATIVE_WARNING_F {
        flags.push(ReportFlag::PerturbativeWarning);
    }
    let mut exact_ip = |probe| match ip_exact(&cm, probe) {
        Ok(v) => Ok(v),
        Err(Error::UnphysicalState { .. }) => {
            flags.push(ReportFlag::ExactSkippedUnphysical);
            Ok(ip_pert)
        }
        Err(Error::DegeneratePure { .. }) => {
            flags.push(ReportFlag::ExactSkippedDegenerate);
            Ok(ip_pert)
        }
        Err(e) => Err(e),
    };
    let ip_probe_a = exact_ip(Probe::A)?;
    let ip_probe_b = exact_ip(Probe::B)?;
    flags.sort();
    flags.dedup();

    Ok(CorrelationReport {
        f,
        occupations: *occ,
        steering_a_to_b: steering_exact(&cm, Direction::AToB)?,
        steering_b_to_a: steering_exact(&cm, Direction::BToA)?,
        steering_perturbative: steering_perturbative(f, n),
        ip_probe_a,
        ip_probe_b,
        ip_perturbative: ip_pert,
        log_negativity: cm.log_negativity()?,
        spectrum: cm.to_unit_vacuum().symplectic_spectrum()?,
        physicality_deficit: cm.check_physicality(0.0)?.deficit(),
        flags,
    })
}

pub fn full_report(p: &DceParams) -> Result<CorrelationReport> {
    let f = dce::small_parameter(p)?;
    report(f, &dce::occupations(p))
}
