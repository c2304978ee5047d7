//! Two-mode Gaussian covariance matrices.
//!
//! Matrices are stored with quadrature ordering `(q₋, p₋, q₊, p₊)`, i.e. mode A
//! occupies rows/columns 0..2 and mode B rows/columns 2..4:
//!
//! ```text
//!     ⎛ A   C ⎞
//! V = ⎜       ⎟
//!     ⎝ Cᵀ  B ⎠
//! ```
//!
//! Every matrix carries an explicit [`Convention`] tag. All entanglement and
//! physicality diagnostics are evaluated after rescaling to
//! [`Convention::UnitVacuum`], where the vacuum has unit diagonal.

use crate::error::{Error, Result};

pub type Mat2 = [[f64; 2]; 2];
pub type Mat4 = [[f64; 4]; 4];

const SYMMETRY_RTOL: f64 = 1e-12;
/// Radicands of the spectrum formula above `-SPECTRUM_CLAMP` are treated as zero.
const SPECTRUM_CLAMP: f64 = 1e-9;
/// Positive radicands below `RADICAND_NOISE · ε · max(Δ², max|V|⁴)` are
/// rounding noise of a degenerate spectrum.
const RADICAND_NOISE: f64 = 64.0;
/// Rounding allowance added to the caller's tolerance in `check_physicality`.
const PHYSICALITY_SLACK: f64 = 1e-12;

/// Vacuum normalization of the quadrature variances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Vacuum diagonal ½.
    HalfVacuum,
    /// Vacuum diagonal 1.
    UnitVacuum,
}

impl Convention {
    /// Symplectic eigenvalue of the vacuum in this convention.
    pub fn vacuum_eigenvalue(self) -> f64 {
        match self {
            Convention::HalfVacuum => 0.5,
            Convention::UnitVacuum => 1.0,
        }
    }
}

/// Block determinants `I1 = det A`, `I2 = det B`, `I3 = det C`, `I4 = det V`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticInvariants {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
}

impl SymplecticInvariants {
    /// Invariants with the roles of the two modes exchanged.
    pub fn swapped(self) -> Self {
        Self {
            i1: self.i2,
            i2: self.i1,
            ..self
        }
    }
}

/// Symplectic eigenvalues of a two-mode covariance matrix and the smallest
/// symplectic eigenvalue of its partial transpose.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticSpectrum {
    pub nu_minus: f64,
    pub nu_plus: f64,
    pub nu_tilde_minus: f64,
}

/// Outcome of [`CovarianceMatrix::check_physicality`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Physicality {
    Physical,
    /// `1 - ν₋` (UnitVacuum units) by which the uncertainty relation is violated.
    Deficit(f64),
}

impl Physicality {
    pub fn is_physical(self) -> bool {
        matches!(self, Physicality::Physical)
    }

    pub fn deficit(self) -> f64 {
        match self {
            Physicality::Physical => 0.0,
            Physicality::Deficit(d) => d,
        }
    }
}

/// Covariance matrix of a zero-mean two-mode Gaussian state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix {
    entries: Mat4,
    convention: Convention,
}

impl CovarianceMatrix {
    /// Validates symmetry (1e-12 relative to the largest entry) and a strictly
    /// positive diagonal.
    pub fn new(entries: Mat4, convention: Convention) -> Result<Self> {
        let scale = entries
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, x| acc.max(x.abs()));
        for row in 0..4 {
            for col in (row + 1)..4 {
                let diff = (entries[row][col] - entries[col][row]).abs();
                if diff > SYMMETRY_RTOL * scale || !diff.is_finite() {
                    return Err(Error::NotSymmetric { row, col, diff });
                }
            }
        }
        for (index, row) in entries.iter().enumerate() {
            let value = row[index];
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositiveDiagonal { index, value });
            }
        }
        Ok(Self {
            entries,
            convention,
        })
    }

    pub fn vacuum(convention: Convention) -> Self {
        let d = convention.vacuum_eigenvalue();
        let mut entries = [[0.0; 4]; 4];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = d;
        }
        Self {
            entries,
            convention,
        }
    }

    /// Builds a matrix from its 2×2 blocks `A`, `B` and `C`.
    pub fn from_blocks(a: Mat2, b: Mat2, c: Mat2, convention: Convention) -> Result<Self> {
        let mut m = [[0.0; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][j];
                m[i + 2][j + 2] = b[i][j];
                m[i][j + 2] = c[i][j];
                m[j + 2][i] = c[i][j];
            }
        }
        Self::new(m, convention)
    }

    pub fn entries(&self) -> &Mat4 {
        &self.entries
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row][col]
    }

    /// Returns the same state expressed in `target` normalization.
    pub fn rescale_convention(&self, target: Convention) -> Self {
        let factor = match (self.convention, target) {
            (a, b) if a == b => return *self,
            (Convention::HalfVacuum, Convention::UnitVacuum) => 2.0,
            _ => 0.5,
        };
        let mut entries = self.entries;
        entries.iter_mut().flatten().for_each(|x| *x *= factor);
        Self {
            entries,
            convention: target,
        }
    }

    pub fn to_unit_vacuum(&self) -> Self {
        self.rescale_convention(Convention::UnitVacuum)
    }

    pub fn block_a(&self) -> Mat2 {
        self.block(0, 0)
    }

    pub fn block_b(&self) -> Mat2 {
        self.block(2, 2)
    }

    pub fn block_c(&self) -> Mat2 {
        self.block(0, 2)
    }

    fn block(&self, r0: usize, c0: usize) -> Mat2 {
        let e = &self.entries;
        [
            [e[r0][c0], e[r0][c0 + 1]],
            [e[r0 + 1][c0], e[r0 + 1][c0 + 1]],
        ]
    }

    /// Exchanges the two modes, so that `A` and `B` trade places and `C`
    /// becomes `Cᵀ`.
    pub fn swap_modes(&self) -> Self {
        const PERM: [usize; 4] = [2, 3, 0, 1];
        let mut entries = [[0.0; 4]; 4];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.entries[PERM[i]][PERM[j]];
            }
        }
        Self {
            entries,
            convention: self.convention,
        }
    }

    /// Block determinants, computed directly without reduction to standard form.
    pub fn invariants(&self) -> SymplecticInvariants {
        SymplecticInvariants {
            i1: det2(&self.block_a()),
            i2: det2(&self.block_b()),
            i3: det2(&self.block_c()),
            i4: det4(&self.entries),
        }
    }

    /// Symplectic eigenvalues in this matrix's own convention.
    ///
    /// Uses `ν±² = (Δ ± √(Δ² − 4 I4)) / 2` with `Δ = I1 + I2 + 2 I3`; the
    /// partially transposed matrix has `Δ̃ = I1 + I2 − 2 I3`.
    pub fn symplectic_spectrum(&self) -> Result<SymplecticSpectrum> {
        let inv = self.invariants();
        let delta = inv.i1 + inv.i2 + 2.0 * inv.i3;
        let delta_pt = inv.i1 + inv.i2 - 2.0 * inv.i3;
        let max_entry = self
            .entries
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, x| acc.max(x.abs()));
        let scale = max_entry.powi(4);
        let (nu_minus, nu_plus) = eigen_pair(delta, inv.i4, scale)?;
        let (nu_tilde_minus, _) = eigen_pair(delta_pt, inv.i4, scale)?;
        Ok(SymplecticSpectrum {
            nu_minus,
            nu_plus,
            nu_tilde_minus,
        })
    }

    /// Checks `ν₋ ≥ 1 − tolerance` with `ν₋` expressed in UnitVacuum units.
    pub fn check_physicality(&self, tolerance: f64) -> Result<Physicality> {
        if !(tolerance >= 0.0) {
            return Err(crate::error::invalid(
                "tolerance",
                format!("must be non-negative, got {tolerance}"),
            ));
        }
        let nu_minus = self.to_unit_vacuum().symplectic_spectrum()?.nu_minus;
        if nu_minus >= 1.0 - tolerance - PHYSICALITY_SLACK {
            Ok(Physicality::Physical)
        } else {
            Ok(Physicality::Deficit(1.0 - nu_minus))
        }
    }

    /// `max{0, −ln ν̃₋}` with `ν̃₋` in UnitVacuum units.
    pub fn log_negativity(&self) -> Result<f64> {
        let nu = self.to_unit_vacuum().symplectic_spectrum()?.nu_tilde_minus;
        Ok((-nu.ln()).max(0.0))
    }
}

fn eigen_pair(delta: f64, i4: f64, scale: f64) -> Result<(f64, f64)> {
    let mut radicand = delta * delta - 4.0 * i4;
    if radicand < -SPECTRUM_CLAMP {
        return Err(Error::ComplexSpectrum(radicand));
    }
    if radicand <= RADICAND_NOISE * f64::EPSILON * scale.max(delta * delta) {
        radicand = 0.0;
    }
    let root = radicand.sqrt();
    let lo = ((delta - root) / 2.0).max(0.0).sqrt();
    let hi = ((delta + root) / 2.0).max(0.0).sqrt();
    Ok((lo, hi))
}

pub fn det2(m: &Mat2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// 4×4 determinant by Laplace expansion over the 2×2 minors of the top and
/// bottom row pairs.
pub fn det4(m: &Mat4) -> f64 {
    let top = |j: usize, k: usize| m[0][j] * m[1][k] - m[0][k] * m[1][j];
    let bot = |j: usize, k: usize| m[2][j] * m[3][k] - m[2][k] * m[3][j];
    top(0, 1) * bot(2, 3) - top(0, 2) * bot(1, 3) + top(0, 3) * bot(1, 2) + top(1, 2) * bot(0, 3)
        - top(1, 3) * bot(0, 2)
        + top(2, 3) * bot(0, 1)
}

pub(crate) fn matmul4(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub(crate) fn transpose4(a: &Mat4) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[j][i];
        }
    }
    out
}

/// `S · V · Sᵀ`.
pub fn congruence(s: &Mat4, v: &Mat4) -> Mat4 {
    matmul4(&matmul4(s, v), &transpose4(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Closed-form DCE output matrix in UnitVacuum units for symmetric occupations.
    fn dce_unit(f: f64, n: f64) -> CovarianceMatrix {
        let a = (1.0 + 2.0 * n) * (1.0 + f * f);
        let c = 2.0 * f * (1.0 + 2.0 * n);
        CovarianceMatrix::from_blocks(
            [[a, 0.0], [0.0, a]],
            [[a, 0.0], [0.0, a]],
            [[0.0, c], [c, 0.0]],
            Convention::UnitVacuum,
        )
        .unwrap()
    }

    #[test]
    fn rescale_vacuum_and_idempotence() {
        let half = CovarianceMatrix::vacuum(Convention::HalfVacuum);
        let unit = half.rescale_convention(Convention::UnitVacuum);
        assert_eq!(unit, CovarianceMatrix::vacuum(Convention::UnitVacuum));
        assert_eq!(unit.rescale_convention(Convention::UnitVacuum), unit);
    }

    #[test]
    fn rescale_dce_state() {
        let half = CovarianceMatrix::from_blocks(
            [[0.505, 0.0], [0.0, 0.505]],
            [[0.505, 0.0], [0.0, 0.505]],
            [[0.0, 0.1], [0.1, 0.0]],
            Convention::HalfVacuum,
        )
        .unwrap();
        let unit = half.to_unit_vacuum();
        assert_relative_eq!(unit.get(0, 0), 1.01, epsilon = 1e-15);
        assert_relative_eq!(unit.get(3, 3), 1.01, epsilon = 1e-15);
        assert_relative_eq!(unit.get(0, 3), 0.2, epsilon = 1e-15);
        assert_relative_eq!(unit.get(1, 2), 0.2, epsilon = 1e-15);
        assert_eq!(unit.get(0, 2), 0.0);
    }

    #[test]
    fn vacuum_invariants() {
        let inv = CovarianceMatrix::vacuum(Convention::UnitVacuum).invariants();
        assert_eq!((inv.i1, inv.i2, inv.i3, inv.i4), (1.0, 1.0, 0.0, 1.0));
        let inv = CovarianceMatrix::vacuum(Convention::HalfVacuum).invariants();
        assert_eq!((inv.i1, inv.i2, inv.i3, inv.i4), (0.25, 0.25, 0.0, 1.0 / 16.0));
    }

    #[test]
    fn dce_invariants_match_scalar_route() {
        let (f, n) = (0.02, 8.31e-3);
        let inv = dce_unit(f, n).invariants();
        // a = (1+2n)(1+f²), c = 2f(1+2n): I1 = a², I3 = −c², I4 = (a²−c²)²
        assert_relative_eq!(inv.i1, 1.034_343_202_742_115_9, max_relative = 1e-12);
        assert_relative_eq!(inv.i2, inv.i1, max_relative = 1e-15);
        assert_relative_eq!(inv.i3, -1.653_625_959_04e-3, max_relative = 1e-10);
        assert_relative_eq!(inv.i4, 1.066_447_761_996_408_4, max_relative = 1e-12);

        let n = 0.03;
        let inv = dce_unit(0.0, n).invariants();
        assert_relative_eq!(inv.i1, (1.0 + 2.0 * n).powi(2), max_relative = 1e-14);
        assert_eq!(inv.i3, 0.0);
        assert_relative_eq!(inv.i4, (1.0 + 2.0 * n).powi(4), max_relative = 1e-14);
    }

    #[test]
    fn spectrum_of_vacuum_and_dce_family() {
        let s = CovarianceMatrix::vacuum(Convention::UnitVacuum)
            .symplectic_spectrum()
            .unwrap();
        assert_eq!((s.nu_minus, s.nu_plus, s.nu_tilde_minus), (1.0, 1.0, 1.0));

        let f = 0.019635;
        let s = dce_unit(f, 0.0).symplectic_spectrum().unwrap();
        assert_relative_eq!(s.nu_tilde_minus, (1.0 - f) * (1.0 - f), max_relative = 1e-12);
        assert_relative_eq!(s.nu_tilde_minus, 0.961_116, epsilon = 1e-6);

        // degenerate spectrum, radicand rounds around zero
        let s = dce_unit(0.1, 0.0).symplectic_spectrum().unwrap();
        assert_relative_eq!(s.nu_minus, 0.99, max_relative = 1e-7);
        assert_relative_eq!(s.nu_plus, 0.99, max_relative = 1e-7);
    }

    #[test]
    fn spectrum_keeps_own_convention() {
        let s = CovarianceMatrix::vacuum(Convention::HalfVacuum)
            .symplectic_spectrum()
            .unwrap();
        assert_eq!(s.nu_minus, 0.5);
        assert_eq!(s.nu_tilde_minus, 0.5);
    }

    #[test]
    fn complex_spectrum_is_an_error() {
        // indefinite matrix with Δ² − 4 I4 = −0.054
        let cm = CovarianceMatrix::new(
            [
                [0.4, -0.85, 0.3, -0.35],
                [-0.85, 0.8, 0.5, 0.85],
                [0.3, 0.5, 0.2, -0.35],
                [-0.35, 0.85, -0.35, 0.2],
            ],
            Convention::UnitVacuum,
        )
        .unwrap();
        match cm.symplectic_spectrum() {
            Err(Error::ComplexSpectrum(r)) => assert_relative_eq!(r, -0.054, epsilon = 1e-12),
            other => panic!("expected ComplexSpectrum, got {other:?}"),
        }
    }

    #[test]
    fn physicality() {
        let vac = CovarianceMatrix::vacuum(Convention::HalfVacuum);
        assert_eq!(vac.check_physicality(0.0).unwrap(), Physicality::Physical);

        let half = dce_unit(0.1, 0.0).rescale_convention(Convention::HalfVacuum);
        match half.check_physicality(0.0).unwrap() {
            Physicality::Deficit(d) => assert_relative_eq!(d, 0.01, max_relative = 1e-6),
            Physicality::Physical => panic!("expected deficit"),
        }
        assert!(half.check_physicality(0.011).unwrap().is_physical());
        assert!(half.check_physicality(-1.0).is_err());
    }

    #[test]
    fn log_negativity_examples() {
        let vac = CovarianceMatrix::vacuum(Convention::HalfVacuum);
        assert_eq!(vac.log_negativity().unwrap(), 0.0);

        let f = 0.019635;
        let ln = dce_unit(f, 0.0).log_negativity().unwrap();
        assert_relative_eq!(ln, 0.039_660_655_359_663_6, max_relative = 1e-9);
        // convention independence
        let ln_half = dce_unit(f, 0.0)
            .rescale_convention(Convention::HalfVacuum)
            .log_negativity()
            .unwrap();
        assert_relative_eq!(ln, ln_half, max_relative = 1e-12);

        // (1+2n)(1−f)² = 1 at the threshold occupation
        let threshold = f * (2.0 - f) / (2.0 * (1.0 - f).powi(2));
        assert_relative_eq!(threshold, 0.020_228_820_277_477, max_relative = 1e-10);
        assert!(dce_unit(f, threshold).log_negativity().unwrap() < 1e-14);
        assert_eq!(dce_unit(f, 0.0203).log_negativity().unwrap(), 0.0);
    }

    #[test]
    fn constructor_rejects_bad_matrices() {
        let mut m = *CovarianceMatrix::vacuum(Convention::UnitVacuum).entries();
        m[0][1] = 1e-3;
        assert!(matches!(
            CovarianceMatrix::new(m, Convention::UnitVacuum),
            Err(Error::NotSymmetric { row: 0, col: 1, .. })
        ));
        let mut m = *CovarianceMatrix::vacuum(Convention::UnitVacuum).entries();
        m[2][2] = 0.0;
        assert!(matches!(
            CovarianceMatrix::new(m, Convention::UnitVacuum),
            Err(Error::NonPositiveDiagonal { index: 2, .. })
        ));
    }

    #[test]
    fn swap_modes_exchanges_blocks() {
        let cm = CovarianceMatrix::from_blocks(
            [[2.0, 0.1], [0.1, 3.0]],
            [[4.0, 0.2], [0.2, 5.0]],
            [[0.3, 0.4], [0.5, 0.6]],
            Convention::UnitVacuum,
        )
        .unwrap();
        let sw = cm.swap_modes();
        assert_eq!(sw.block_a(), cm.block_b());
        assert_eq!(sw.block_b(), cm.block_a());
        assert_eq!(sw.block_c(), [[0.3, 0.5], [0.4, 0.6]]);
        assert_eq!(sw.swap_modes(), cm);
    }

    #[test]
    fn det4_of_block_diagonal() {
        let m = [
            [2.0, 1.0, 0.0, 0.0],
            [1.0, 3.0, 0.0, 0.0],
            [0.0, 0.0, 4.0, -1.0],
            [0.0, 0.0, -1.0, 2.0],
        ];
        assert_relative_eq!(det4(&m), 5.0 * 7.0, epsilon = 1e-12);
    }
}
