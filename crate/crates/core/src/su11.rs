//! SU(1,1) in the `(α, β)` chart and matrix elements of its lower-bounded
//! discrete-series representations.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::{ln_gamma_ratio, HypergeometricTerminating};

/// Relative tolerance on `|α|² − |β|² = 1` accepted from callers.
pub const DETERMINANT_TOLERANCE: f64 = 1e-9;

/// The matrix `[[α, β], [β*, α*]]` with `|α|² − |β|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl GroupElement {
    pub const IDENTITY: Self = Self {
        alpha: Complex64::new(1.0, 0.0),
        beta: Complex64::new(0.0, 0.0),
    };

    /// Validated constructor.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let u = Self { alpha, beta };
        u.check()?;
        Ok(u)
    }

    /// `|α|² − |β|² − 1`.
    pub fn determinant_defect(&self) -> f64 {
        (self.alpha.norm_sqr() - self.beta.norm_sqr()) - 1.0
    }

    /// Rejects elements whose determinant is off by more than
    /// [`DETERMINANT_TOLERANCE`] relative to `|α|² + |β|²`.
    pub fn check(&self) -> Result<()> {
        let defect = self.determinant_defect();
        let scale = self.alpha.norm_sqr() + self.beta.norm_sqr();
        if defect.is_finite() && defect.abs() <= DETERMINANT_TOLERANCE * scale {
            Ok(())
        } else {
            Err(Error::NotInGroup(defect))
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    /// Entries in row-major order.
    pub fn to_matrix(&self) -> [[Complex64; 2]; 2] {
        [
            [self.alpha, self.beta],
            [self.beta.conj(), self.alpha.conj()],
        ]
    }
}

/// Group law `u1 · u2`.
pub fn compose(u1: &GroupElement, u2: &GroupElement) -> Result<GroupElement> {
    u1.check()?;
    u2.check()?;
    let alpha = u1.alpha * u2.alpha + u1.beta * u2.beta.conj();
    let beta = u1.alpha * u2.beta + u1.beta * u2.alpha.conj();
    GroupElement::new(alpha, beta)
}

pub fn inverse(u: &GroupElement) -> GroupElement {
    u.inverse()
}

/// Coordinates of the effective-time evolution `exp(−iT(j₃ cosh Φ − j₁ sinh Φ))`.
pub fn time_evolution_coords(t: f64, phi: f64) -> GroupElement {
    let (s, c) = (0.5 * t).sin_cos();
    GroupElement {
        alpha: Complex64::new(c, -s * phi.cosh()),
        beta: Complex64::new(-s * phi.sinh(), 0.0),
    }
}

/// Coordinates of the scaling transformation by `Φ`.
pub fn scaling_coords(phi: f64) -> GroupElement {
    GroupElement {
        alpha: Complex64::new((0.5 * phi).cosh(), 0.0),
        beta: Complex64::new(0.0, (0.5 * phi).sinh()),
    }
}

/// Disentangling coordinates: `α = e^{iχ} cosh ρ`, `β = e^{iψ} sinh ρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BchCoordinates {
    pub rho: f64,
    pub chi: f64,
    pub psi: f64,
}

fn principal_angle(z: Complex64) -> f64 {
    let a = z.arg().rem_euclid(TAU);
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// Splits `u` into `(ρ, χ, ψ)`; `ψ = 0` when `β = 0`.
pub fn bch_decompose(u: &GroupElement) -> BchCoordinates {
    let rho = u.beta.norm().asinh();
    let chi = principal_angle(u.alpha);
    let psi = if u.beta == Complex64::new(0.0, 0.0) {
        0.0
    } else {
        principal_angle(u.beta)
    };
    BchCoordinates { rho, chi, psi }
}

impl BchCoordinates {
    pub fn to_element(&self) -> GroupElement {
        GroupElement {
            alpha: Complex64::from_polar(self.rho.cosh(), self.chi),
            beta: Complex64::from_polar(self.rho.sinh(), self.psi),
        }
    }
}

/// Label of a lower-bounded irreducible representation: the bottom `m0` of
/// the compact-generator spectrum `{m0, m0 + 1, ...}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepLabel {
    m0: i64,
}

impl RepLabel {
    pub fn new(m0: i64) -> Result<Self> {
        if m0 < 1 {
            return Err(Error::InvalidArgument(format!(
                "m0 must be a positive integer, got {m0}"
            )));
        }
        Ok(Self { m0 })
    }

    pub fn m0(&self) -> i64 {
        self.m0
    }

    /// Casimir eigenvalue `X = m0(1 − m0)`.
    pub fn casimir(&self) -> i64 {
        self.m0 * (1 - self.m0)
    }

    /// The label `1 − m0`, which shares the Casimir eigenvalue.
    pub fn mirrored(&self) -> Self {
        Self { m0: 1 - self.m0 }
    }

    /// Lowest index of the tower.
    pub fn lowest(&self) -> i64 {
        self.m0.max(1 - self.m0)
    }
}

/// `(X m_row | U(u) | X m_col)`; zero if either index lies below the tower.
///
/// `m0` and `1 − m0` label the same representation; the series is always
/// evaluated with the lowest weight `max(m0, 1 − m0)`.
pub fn rep_matrix_element(
    label: RepLabel,
    m_row: i64,
    m_col: i64,
    u: &GroupElement,
) -> Result<Complex64> {
    u.check()?;
    let low = label.lowest();
    if m_row < low || m_col < low {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if m_row <= m_col {
        upper_element(low, m_row, m_col, u)
    } else {
        Ok(upper_element(low, m_col, m_row, &u.inverse())?.conj())
    }
}

/// `|(X m_row | U(u) | X m_col)|²`.
pub fn rep_matrix_element_sqr(
    label: RepLabel,
    m_row: i64,
    m_col: i64,
    u: &GroupElement,
) -> Result<f64> {
    rep_matrix_element(label, m_row, m_col, u).map(|d| d.norm_sqr())
}

/// Matrix element for `mp ≤ m`, with the hypergeometric factor Pfaff
/// transformed to the argument `|β|²/|α|² ∈ [0, 1)`.
fn upper_element(m0: i64, mp: i64, m: i64, u: &GroupElement) -> Result<Complex64> {
    let d = m - mp;
    let abs_alpha = u.alpha.norm();
    let abs_beta = u.beta.norm();
    if d > 0 && abs_beta == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let to_u = |k: i64| k as u64;
    let ln_gamma = ln_gamma_ratio(to_u(m + m0), to_u(mp + m0))?
        + ln_gamma_ratio(to_u(m - m0 + 1), to_u(mp - m0 + 1))?;
    let ln_d_fact = ln_gamma_ratio(to_u(d + 1), 1)?;
    let ln_abs_alpha = abs_alpha.ln();
    let mut ln_mag = 0.5 * ln_gamma - ln_d_fact + (2 * (mp - m0) - (m + mp)) as f64 * ln_abs_alpha;
    if d > 0 {
        ln_mag += d as f64 * abs_beta.ln();
    }
    let x = (abs_beta / abs_alpha).powi(2);
    let series = HypergeometricTerminating::new(m0 - mp, m + m0, d + 1, x)?.evaluate();

    let chi = u.alpha.arg();
    let psi = if d > 0 { u.beta.arg() } else { 0.0 };
    let phase = (m + mp) as f64 * chi - d as f64 * psi;
    Ok(Complex64::from_polar(ln_mag.exp() * series.value, phase))
}
