//! Lamb shifts, radiative decay rates and Bethe logarithms.
//!
//! With `ν = N e^{−Φ}` the shift is
//!
//! ```text
//! ΔE = −4 m c² α (Zα)² / (3π N²) ∫ dΦ w(Φ) [ ∫₀^∞ dτ e^{ντ} dQ̃/dτ
//!                                           + Σ_n PV n R_n(cosh Φ) / (ν − n) ]
//! ```
//!
//! where the τ-integral above [`RemainderContext::switch_tau`] is summed
//! analytically from the spectral tail.

use std::cell::Cell;
use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::kernel::{check_quantum_numbers, residue_coeffs, RemainderContext};
use crate::quadrature::{
    try_integrate_breakpoints, try_integrate_principal_value, try_integrate_semi_infinite_scaled,
    QuadratureResult, QuadratureSpec,
};

/// Relative size of `R_n` against its own terms below which a channel is
/// treated as closed.
pub const CLOSED_CHANNEL_THRESHOLD: f64 = 1e-12;

/// Φ span over which inner τ errors are taken to accumulate.
const INNER_ERROR_WIDTH: f64 = 50.0;

/// Default Bethe-logarithm cutoffs `x_>`.
pub const DEFAULT_CUTOFFS: [f64; 5] = [1e3, 3e3, 1e4, 3e4, 1e5];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuantumState {
    pub n: u32,
    pub l: u32,
    /// Twice the total angular momentum, if given.
    pub j2: Option<u32>,
    pub z: u32,
}

impl QuantumState {
    pub fn new(n: u32, l: u32, z: u32) -> Result<Self> {
        check_quantum_numbers(n, l)?;
        if z == 0 {
            return Err(Error::InvalidState("Z must be at least 1".into()));
        }
        Ok(Self { n, l, j2: None, z })
    }

    /// Attaches `J = j2/2`, which must equal `L ± 1/2`.
    pub fn with_j2(mut self, j2: u32) -> Result<Self> {
        let ok = j2 == 2 * self.l + 1 || (self.l > 0 && j2 == 2 * self.l - 1);
        if !ok {
            return Err(Error::InvalidState(format!(
                "J = {j2}/2 is not L ± 1/2 for L = {}",
                self.l
            )));
        }
        self.j2 = Some(j2);
        Ok(self)
    }

    pub fn j(&self) -> Option<f64> {
        self.j2.map(|j| 0.5 * f64::from(j))
    }

    /// `(Zα/N)²`.
    fn coupling(&self, c: &PhysicalConstants) -> f64 {
        (c.z_alpha(self.z) / f64::from(self.n)).powi(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DipoleOptions {
    pub enabled: bool,
    /// Photon-energy cutoff `x_> = ħω_>/(2mc²)`; only used in dipole mode.
    pub cutoff_x: Option<f64>,
}

impl DipoleOptions {
    pub fn non_dipole() -> Self {
        Self {
            enabled: false,
            cutoff_x: None,
        }
    }

    pub fn dipole(cutoff_x: f64) -> Self {
        Self {
            enabled: true,
            cutoff_x: Some(cutoff_x),
        }
    }

    /// Dipole weights without a cutoff, sufficient for decay rates.
    pub fn dipole_rates() -> Self {
        Self {
            enabled: true,
            cutoff_x: None,
        }
    }

    /// `Φ_>` from `e^{2Φ} = 1 + 4x_>(N/(Zα))²`.
    pub fn phi_cut(&self, state: &QuantumState, c: &PhysicalConstants) -> Result<Option<f64>> {
        if !self.enabled {
            return Ok(None);
        }
        match self.cutoff_x {
            Some(x) if x.is_finite() && x > 0.0 => Ok(Some(phi_cut_for(x, state, c))),
            Some(x) => Err(Error::InvalidArgument(format!(
                "cutoff x must be positive and finite, got {x}"
            ))),
            None => Err(Error::InvalidArgument("dipole mode needs a cutoff".into())),
        }
    }
}

fn phi_cut_for(x: f64, state: &QuantumState, c: &PhysicalConstants) -> f64 {
    0.5 * (4.0 * x / state.coupling(c)).ln_1p()
}

/// `w(Φ) = (√(1+s) − 1)/√(1+s)` with `s = 2(Zα/N)² e^Φ sinh Φ`.
pub fn weight_nondipole(state: &QuantumState, c: &PhysicalConstants, phi: f64) -> f64 {
    let s = state.coupling(c) * (2.0 * phi).exp_m1();
    let r = (1.0 + s).sqrt();
    if s <= 1.0 {
        s / (r * (1.0 + r))
    } else {
        1.0 - 1.0 / r
    }
}

/// `w_d(Φ) = ½(Zα/N)²(e^{2Φ} − 1)`.
pub fn weight_dipole(state: &QuantumState, c: &PhysicalConstants, phi: f64) -> f64 {
    0.5 * state.coupling(c) * (2.0 * phi).exp_m1()
}

fn weight(state: &QuantumState, c: &PhysicalConstants, options: &DipoleOptions, phi: f64) -> f64 {
    if options.enabled {
        weight_dipole(state, c, phi)
    } else {
        weight_nondipole(state, c, phi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartialRate {
    /// Principal quantum number of the final states.
    pub n: u32,
    /// Rate in 10⁶ s⁻¹.
    pub rate: f64,
}

/// Partial decay rates `Γ_n`, `max(1, L) ≤ n ≤ N − 1`, in 10⁶ s⁻¹.
pub fn decay_rates(
    state: &QuantumState,
    options: &DipoleOptions,
    c: &PhysicalConstants,
) -> Result<Vec<PartialRate>> {
    check_quantum_numbers(state.n, state.l)?;
    let nf = f64::from(state.n);
    let unit = c.mec2 * c.z_alpha(state.z).powi(2) / c.hbar;
    let mut rates = Vec::new();
    for n in state.l.max(1)..state.n {
        let phi0 = (nf / f64::from(n)).ln();
        let table = residue_coeffs(state.n, state.l, phi0)?;
        let entry = table.get(n).expect("entry for every n in range");
        if entry.r.abs() <= CLOSED_CHANNEL_THRESHOLD * entry.scale {
            rates.push(PartialRate { n, rate: 0.0 });
            continue;
        }
        let r = entry.r;
        let w = weight(state, c, options, phi0);
        let gamma = -8.0 * c.alpha0 / (3.0 * nf * nf) * r * w * unit;
        rates.push(PartialRate {
            n,
            rate: PhysicalConstants::per_second_to_table_rate(gamma),
        });
    }
    Ok(rates)
}

/// `Σ Γ_n`; zero (not `-0.0`) when no channel is open.
pub fn total_rate(rates: &[PartialRate]) -> f64 {
    rates.iter().fold(0.0, |acc, r| acc + r.rate)
}

/// Closed-form dipole rate of the circular state `(N, N − 1)` in 10⁶ s⁻¹.
pub fn circular_rate_closed_form(n: u32, z: u32, c: &PhysicalConstants) -> Result<f64> {
    if n < 2 || z == 0 {
        return Err(Error::InvalidState(format!(
            "circular rate needs N >= 2 and Z >= 1 (got N={n}, Z={z})"
        )));
    }
    let nf = f64::from(n);
    let factor = (2.0 / 3.0) * (nf - 0.5) / (nf.powi(4) * (nf - 1.0).powi(2))
        * (-2.0 * nf * (1.0 / (4.0 * nf * (nf - 1.0))).ln_1p()).exp();
    Ok(PhysicalConstants::per_second_to_table_rate(
        factor * c.rate_unit(z),
    ))
}

/// Contributions to the Lamb shift in MHz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftBreakdown {
    pub tau_phi_integral_term: f64,
    pub pv_term: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoleDiagnostics {
    pub n: u32,
    pub phi0: f64,
    pub quadrature: QuadratureResult,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftDiagnostics {
    pub tau_phi: QuadratureResult,
    pub poles: Vec<PoleDiagnostics>,
    /// Largest absolute error estimate among the inner τ integrals.
    pub inner_max_abs_error: f64,
    pub inner_converged: bool,
    /// Error estimate of the Lamb shift in MHz.
    pub error_estimate_mhz: f64,
    pub phi_cut: Option<f64>,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftResult {
    pub state: QuantumState,
    pub dipole: bool,
    pub lamb_shift_mhz: f64,
    pub partial_rates: Vec<PartialRate>,
    pub total_rate: f64,
    pub breakdown: ShiftBreakdown,
    pub diagnostics: ShiftDiagnostics,
}

/// Inner tolerances derived from the outer ones.
fn inner_spec(spec: &QuadratureSpec) -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: (spec.rel_tol * 1e-2).max(1e-13),
        abs_tol: spec.abs_tol * 1e-2,
        ..*spec
    }
}

/// Evaluates `∫₀^∞ e^{ντ} dQ̃/dτ dτ` at fixed `Φ`.
pub struct TauIntegral {
    n: u32,
    l: u32,
    spec: QuadratureSpec,
    max_abs_error: Cell<f64>,
    converged: Cell<bool>,
}

impl TauIntegral {
    pub fn new(n: u32, l: u32, outer: &QuadratureSpec) -> Result<Self> {
        check_quantum_numbers(n, l)?;
        Ok(Self {
            n,
            l,
            spec: inner_spec(outer),
            max_abs_error: Cell::new(0.0),
            converged: Cell::new(true),
        })
    }

    pub fn eval(&self, phi: f64) -> Result<f64> {
        let ctx = RemainderContext::new(self.n, self.l, phi)?;
        let nu = f64::from(self.n) * (-phi).exp();
        let ts = ctx.switch_tau();
        let scale = (0.5 * phi).cosh().powi(-2).min(1.0);
        let mut breaks = Vec::new();
        let mut p = 0.5 * ts;
        while p > 0.25 * scale * ts {
            breaks.push(p);
            p *= 0.5;
        }
        let head = try_integrate_breakpoints(
            |t| Ok(ctx.scaled_dtau(t, nu)),
            0.0,
            ts,
            &breaks,
            &self.spec,
        )?;
        let tail = ctx.tail_integral(ts, nu);
        let total = head.value + tail;
        self.max_abs_error
            .set(self.max_abs_error.get().max(head.error_estimate));
        if !head.converged {
            self.converged.set(false);
        }
        Ok(total)
    }

    pub fn max_abs_error(&self) -> f64 {
        self.max_abs_error.get()
    }

    pub fn converged(&self) -> bool {
        self.converged.get()
    }
}

/// `s/(n·(e^{−s} − 1))`, regular at `s = 0`.
fn pole_factor(s: f64, n: f64) -> f64 {
    if s == 0.0 {
        -1.0 / n
    } else {
        s / (n * (-s).exp_m1())
    }
}

/// Dimensionless shift integrals: the `(Φ, τ)` double integral and the
/// principal-value pole terms, each weighted by `w`, over `(0, Φ_>)`.
struct ShiftIntegrals {
    tau_phi: QuadratureResult,
    poles: Vec<PoleDiagnostics>,
    inner_max_abs_error: f64,
    inner_width: f64,
    inner_converged: bool,
}

impl ShiftIntegrals {
    fn total(&self) -> f64 {
        self.tau_phi.value + self.poles.iter().map(|p| p.quadrature.value).sum::<f64>()
    }

    fn error(&self) -> f64 {
        self.tau_phi.error_estimate
            + self
                .poles
                .iter()
                .map(|p| p.quadrature.error_estimate)
                .sum::<f64>()
            + self.inner_max_abs_error * self.inner_width
    }

    fn converged(&self) -> bool {
        self.inner_converged
            && self.tau_phi.converged
            && self.poles.iter().all(|p| p.quadrature.converged)
    }
}

/// Computes `∫ w(Φ) K(Φ) dΦ` pieces for weight `w` on `(0, upper)`.
fn shift_integrals(
    state: &QuantumState,
    w: &dyn Fn(f64) -> f64,
    upper: f64,
    spec: &QuadratureSpec,
) -> Result<ShiftIntegrals> {
    let (n, l) = (state.n, state.l);
    let tau = TauIntegral::new(n, l, spec)?;
    let integrand = |phi: f64| Ok(w(phi) * tau.eval(phi)?);
    let tau_phi = if upper.is_finite() {
        let breaks: Vec<f64> = (0..8)
            .map(|k| f64::from(1u32 << k))
            .filter(|&b| b < upper)
            .collect();
        try_integrate_breakpoints(integrand, 0.0, upper, &breaks, spec)?
    } else {
        try_integrate_semi_infinite_scaled(integrand, 0.0, 1.0, spec)?
    };

    let nf = f64::from(n);
    let mut poles = Vec::new();
    for k in l.max(1)..n {
        let kf = f64::from(k);
        let phi0 = (nf / kf).ln();
        let g = |phi: f64| -> Result<f64> {
            let r = residue_coeffs(n, l, phi)?.get(k).expect("entry").r;
            Ok(w(phi) * kf * r * pole_factor(phi - phi0, kf))
        };
        let quadrature = try_integrate_principal_value(g, 0.0, upper, phi0, spec)?;
        poles.push(PoleDiagnostics {
            n: k,
            phi0,
            quadrature,
        });
    }
    Ok(ShiftIntegrals {
        tau_phi,
        poles,
        inner_max_abs_error: tau.max_abs_error(),
        inner_width: upper.min(INNER_ERROR_WIDTH),
        inner_converged: tau.converged(),
    })
}

/// `4 m c² α (Zα)² / (3π N²)` in eV.
fn shift_prefactor(state: &QuantumState, c: &PhysicalConstants) -> f64 {
    4.0 * c.mec2 * c.alpha0 * c.z_alpha(state.z).powi(2) / (3.0 * PI * f64::from(state.n).powi(2))
}

/// Lamb shift (MHz) together with the decay rates of `state`.
pub fn lamb_shift(
    state: &QuantumState,
    options: &DipoleOptions,
    spec: &QuadratureSpec,
    c: &PhysicalConstants,
) -> Result<ShiftResult> {
    check_quantum_numbers(state.n, state.l)?;
    spec.validate()?;
    let phi_cut = options.phi_cut(state, c)?;
    let upper = phi_cut.unwrap_or(f64::INFINITY);
    let w = |phi: f64| weight(state, c, options, phi);
    let parts = shift_integrals(state, &w, upper, spec)?;

    let to_mhz = |x: f64| c.ev_to_mhz(-shift_prefactor(state, c) * x);
    let pv = parts
        .poles
        .iter()
        .fold(0.0, |acc, p| acc + p.quadrature.value);
    let breakdown = ShiftBreakdown {
        tau_phi_integral_term: to_mhz(parts.tau_phi.value),
        pv_term: to_mhz(pv),
    };
    let rate_options = DipoleOptions {
        enabled: options.enabled,
        cutoff_x: None,
    };
    let partial_rates = decay_rates(state, &rate_options, c)?;
    let total_rate = total_rate(&partial_rates);
    let error_estimate_mhz = to_mhz(parts.error()).abs();
    let converged = parts.converged();
    Ok(ShiftResult {
        state: *state,
        dipole: options.enabled,
        lamb_shift_mhz: to_mhz(parts.total()),
        partial_rates,
        total_rate,
        breakdown,
        diagnostics: ShiftDiagnostics {
            tau_phi: parts.tau_phi,
            poles: parts.poles,
            inner_max_abs_error: parts.inner_max_abs_error,
            inner_converged: parts.inner_converged,
            error_estimate_mhz,
            phi_cut,
            converged,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetheResult {
    pub n: u32,
    pub l: u32,
    pub gamma_nl: f64,
    /// `e^γ` in units of `Z² m c² α² / 2`.
    pub mean_excitation_ry: f64,
    pub cutoffs_used: Vec<f64>,
    /// `γ` estimated at each cutoff.
    pub estimates: Vec<f64>,
    pub extrapolation_residual: f64,
    pub converged: bool,
}

/// `γ` at one cutoff from the dipole Lamb shift, including the `L = 0`
/// counterterm `ln(4x_>) − 2 ln(Zα)`.
pub fn bethe_estimate(
    state: &QuantumState,
    cutoff_x: f64,
    spec: &QuadratureSpec,
    c: &PhysicalConstants,
) -> Result<(f64, bool)> {
    let shift = lamb_shift(state, &DipoleOptions::dipole(cutoff_x), spec, c)?;
    let z4 = f64::from(state.z).powi(4);
    let ry = 0.5 * c.mec2 * c.alpha0.powi(2);
    let de = c.mhz_to_ev(shift.lamb_shift_mhz);
    let mut gamma =
        -3.0 * PI * f64::from(state.n).powi(3) * de / (8.0 * c.alpha0.powi(3) * z4 * ry);
    if state.l == 0 {
        gamma += (4.0 * cutoff_x).ln() - 2.0 * c.z_alpha(state.z).ln();
    }
    Ok((gamma, shift.diagnostics.converged))
}

/// Neville extrapolation to `h = 0` of samples `(h_i, y_i)`.
pub fn extrapolate_to_zero(h: &[f64], y: &[f64]) -> f64 {
    let mut p = y.to_vec();
    for k in 1..p.len() {
        for i in 0..p.len() - k {
            p[i] = (h[i] * p[i + 1] - h[i + k] * p[i]) / (h[i] - h[i + k]);
        }
    }
    p[0]
}

/// Bethe logarithm from dipole Lamb shifts at ascending cutoffs,
/// extrapolated in `x_>^{-1/2}`.
pub fn bethe_log(
    state: &QuantumState,
    cutoffs: &[f64],
    spec: &QuadratureSpec,
    c: &PhysicalConstants,
) -> Result<BetheResult> {
    check_quantum_numbers(state.n, state.l)?;
    if cutoffs.len() < 3 || cutoffs.windows(2).any(|w| !(w[1] > w[0])) || cutoffs[0] <= 0.0 {
        return Err(Error::InvalidArgument(
            "need at least 3 ascending positive cutoffs".into(),
        ));
    }
    let mut estimates = Vec::with_capacity(cutoffs.len());
    let mut all_converged = true;
    for &x in cutoffs {
        let (g, ok) = bethe_estimate(state, x, spec, c)?;
        estimates.push(g);
        all_converged &= ok;
    }
    let h: Vec<f64> = cutoffs.iter().map(|x| x.sqrt().recip()).collect();
    let full = extrapolate_to_zero(&h, &estimates);
    let reduced = extrapolate_to_zero(&h[1..], &estimates[1..]);
    let residual = (full - reduced).abs();
    let diffs: Vec<f64> = estimates.windows(2).map(|w| w[1] - w[0]).collect();
    let noise = 1e-9 * full.abs().max(1.0);
    let monotone = diffs.iter().all(|&d| d >= -noise) || diffs.iter().all(|&d| d <= noise);
    let converged = all_converged && monotone && residual < 1e-4 * full.abs() + 0.01;
    Ok(BetheResult {
        n: state.n,
        l: state.l,
        gamma_nl: full,
        mean_excitation_ry: full.exp(),
        cutoffs_used: cutoffs.to_vec(),
        estimates,
        extrapolation_residual: residual,
        converged,
    })
}

/// Dipole Lamb shift in MHz with and without the relativistic constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DipoleLamb {
    pub with_relativistic_mhz: f64,
    pub without_relativistic_mhz: f64,
}

/// Full dipole-approximation Lamb shift from a Bethe logarithm.
pub fn dipole_lamb_full(
    state: &QuantumState,
    bethe: &BetheResult,
    c: &PhysicalConstants,
) -> Result<DipoleLamb> {
    let j2 = state
        .j2
        .ok_or_else(|| Error::InvalidState("the relativistic constant needs J".into()))?;
    let checked = QuantumState::new(state.n, state.l, state.z)?.with_j2(j2)?;
    if bethe.n != checked.n || bethe.l != checked.l {
        return Err(Error::InvalidArgument(format!(
            "Bethe logarithm is for ({}, {}), state is ({}, {})",
            bethe.n, bethe.l, checked.n, checked.l
        )));
    }
    let (l, gamma) = (f64::from(checked.l), bethe.gamma_nl);
    let (constant, atomic) = if checked.l == 0 {
        (19.0 / 30.0, -gamma - 2.0 * c.z_alpha(checked.z).ln())
    } else {
        let c_lj = if j2 == 2 * checked.l + 1 {
            1.0 / (l + 1.0)
        } else {
            -1.0 / l
        };
        (3.0 * c_lj / (8.0 * (2.0 * l + 1.0)), -gamma)
    };
    let ry = 0.5 * c.mec2 * c.alpha0.powi(2);
    let pref = 8.0 * c.alpha0.powi(3) * f64::from(checked.z).powi(4)
        / (3.0 * PI * f64::from(checked.n).powi(3))
        * ry;
    Ok(DipoleLamb {
        with_relativistic_mhz: c.ev_to_mhz(pref * (constant + atomic)),
        without_relativistic_mhz: c.ev_to_mhz(pref * atomic),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::default_constants;

    #[test]
    fn state_validation() {
        assert!(QuantumState::new(2, 2, 1).is_err());
        assert!(QuantumState::new(2, 1, 0).is_err());
        let s = QuantumState::new(2, 1, 1).unwrap();
        assert!(s.with_j2(1).is_ok() && s.with_j2(3).is_ok() && s.with_j2(5).is_err());
        let s0 = QuantumState::new(2, 0, 1).unwrap();
        assert!(s0.with_j2(1).is_ok() && s0.with_j2(3).is_err());
    }

    #[test]
    fn weights_limits() {
        let c = default_constants();
        let s = QuantumState::new(2, 0, 1).unwrap();
        assert_eq!(weight_nondipole(&s, &c, 0.0), 0.0);
        assert!((weight_nondipole(&s, &c, 40.0) - 1.0).abs() < 1e-12);
        let phi = 1e-4;
        assert!((weight_dipole(&s, &c, phi) / weight_nondipole(&s, &c, phi) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn weight_at_ln2() {
        let c = default_constants();
        let s = QuantumState::new(2, 0, 1).unwrap();
        // x(1 + x) = ½(α/2)²·2·(3/4), w = 2x/(1 + 2x)
        let p = 0.5 * (c.alpha0 / 2.0).powi(2) * 2.0 * 0.75;
        let x = 0.5 * (-1.0 + (1.0 + 4.0 * p).sqrt());
        let w = 2.0 * x / (1.0 + 2.0 * x);
        assert!((weight_nondipole(&s, &c, 2f64.ln()) - w).abs() <= 1e-12 * w);
        let wd = 0.5 * (c.alpha0 / 2.0).powi(2) * 3.0;
        assert!((weight_dipole(&s, &c, 2f64.ln()) - wd).abs() <= 1e-15 * wd);
    }

    #[test]
    fn neville_is_exact_for_polynomials() {
        let h = [1.0, 0.5, 0.25, 0.1];
        let y: Vec<f64> = h.iter().map(|x| 3.0 - 2.0 * x + 0.5 * x * x * x).collect();
        assert!((extrapolate_to_zero(&h, &y) - 3.0).abs() < 1e-13);
    }

    #[test]
    fn ground_state_is_stable() {
        let c = default_constants();
        let s = QuantumState::new(1, 0, 1).unwrap();
        assert!(decay_rates(&s, &DipoleOptions::non_dipole(), &c)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn forbidden_channel_is_closed() {
        let c = default_constants();
        let s = QuantumState::new(2, 0, 1).unwrap();
        let rates = decay_rates(&s, &DipoleOptions::non_dipole(), &c).unwrap();
        assert_eq!(rates, vec![PartialRate { n: 1, rate: 0.0 }]);
    }

    #[test]
    fn missing_cutoff_is_rejected() {
        let c = default_constants();
        let s = QuantumState::new(1, 0, 1).unwrap();
        let r = lamb_shift(
            &s,
            &DipoleOptions::dipole_rates(),
            &QuadratureSpec::default(),
            &c,
        );
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
    }
}
