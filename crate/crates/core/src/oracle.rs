//! Independent brute-force evaluators used to cross-check the primary
//! path: the disentangled 2×2 product, matrix elements summed term by term,
//! the spectral series of the kernel and the ε-regularized real-axis shift.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::kernel::{check_quantum_numbers, kernel_q, Contour};
use crate::quadrature::{try_integrate_breakpoints, QuadratureResult, QuadratureSpec};
use crate::shift::{extrapolate_to_zero, weight_nondipole, QuantumState};
use crate::su11::{BchCoordinates, GroupElement};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2x2C(pub [[Complex64; 2]; 2]);

impl Matrix2x2C {
    pub const IDENTITY: Self = Self([[ONE, ZERO], [ZERO, ONE]]);

    pub fn from_element(u: &GroupElement) -> Self {
        Self(u.to_matrix())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self(out)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self(self.0.map(|row| row.map(|x| x * s)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.0;
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] += other.0[i][j];
            }
        }
        Self(out)
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        m
    }

    fn norm1(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.norm()).sum()
    }

    /// Matrix exponential by scaling, a 30-term Taylor series and squaring.
    pub fn exp(&self) -> Self {
        let mut squarings = 0;
        let mut a = *self;
        while a.norm1() > 0.5 {
            a = a.scale(Complex64::new(0.5, 0.0));
            squarings += 1;
        }
        let mut term = Self::IDENTITY;
        let mut acc = Self::IDENTITY;
        for k in 1..30 {
            term = term.mul(&a).scale(Complex64::new(1.0 / k as f64, 0.0));
            acc = acc.add(&term);
        }
        for _ in 0..squarings {
            acc = acc.mul(&acc);
        }
        acc
    }
}

fn pauli() -> [Matrix2x2C; 3] {
    [
        Matrix2x2C([[ZERO, ONE], [ONE, ZERO]]),
        Matrix2x2C([[ZERO, -I], [I, ZERO]]),
        Matrix2x2C([[ONE, ZERO], [ZERO, -ONE]]),
    ]
}

/// Defining-representation generators `j₁ = iσ₁/2`, `j₂ = iσ₂/2`,
/// `j₃ = σ₃/2` and ladders `j± = i(j₁ ± i j₂)/√2`.
pub struct Generators {
    pub j1: Matrix2x2C,
    pub j2: Matrix2x2C,
    pub j3: Matrix2x2C,
    pub j_plus: Matrix2x2C,
    pub j_minus: Matrix2x2C,
}

pub fn generators() -> Generators {
    let [s1, s2, s3] = pauli();
    let half = Complex64::new(0.5, 0.0);
    let j1 = s1.scale(0.5 * I);
    let j2 = s2.scale(0.5 * I);
    let j3 = s3.scale(half);
    let ladder = |sign: f64| {
        j1.add(&j2.scale(I * sign))
            .scale(I * std::f64::consts::FRAC_1_SQRT_2)
    };
    Generators {
        j_plus: ladder(1.0),
        j_minus: ladder(-1.0),
        j1,
        j2,
        j3,
    }
}

/// `exp(−√2 e^{i(χ+ψ)} tanh ρ j₊) · (cosh ρ)^{−2j₃} · exp(−√2 e^{−i(χ+ψ)} tanh ρ j₋) · exp(2iχ j₃)`.
pub fn bch_reconstruct_2x2(b: &BchCoordinates) -> Matrix2x2C {
    let g = generators();
    let t = b.rho.tanh();
    let sqrt2 = std::f64::consts::SQRT_2;
    let phase = Complex64::from_polar(1.0, b.chi + b.psi);
    let first = g.j_plus.scale(-sqrt2 * t * phase).exp();
    let middle =
        g.j3.scale(Complex64::new(-2.0 * b.rho.cosh().ln(), 0.0))
            .exp();
    let third = g.j_minus.scale(-sqrt2 * t * phase.conj()).exp();
    let last = g.j3.scale(2.0 * I * b.chi).exp();
    first.mul(&middle).mul(&third).mul(&last)
}

fn ln_factorial(n: i64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Matrix element from the finite sum over intermediate weights `r`
/// produced by the disentangled product.
pub fn matrix_element_bch_sum(m0: i64, m_row: i64, m_col: i64, b: &BchCoordinates) -> Complex64 {
    if m_row < m0 || m_col < m0 {
        return ZERO;
    }
    let (mp, m) = (m_row, m_col);
    let t = b.rho.tanh();
    let ln_c = b.rho.cosh().ln();
    let up = -Complex64::from_polar(t, b.chi + b.psi);
    let down = Complex64::from_polar(t, -(b.chi + b.psi));
    let lead = Complex64::from_polar(1.0, 2.0 * b.chi * m as f64);
    let ln_norm = 0.5
        * (ln_factorial(mp + m0 - 1)
            + ln_factorial(mp - m0)
            + ln_factorial(m - m0)
            + ln_factorial(m + m0 - 1));
    let mut acc = ZERO;
    for r in m0..=mp.min(m) {
        let ln_den = ln_factorial(r + m0 - 1)
            + ln_factorial(r - m0)
            + ln_factorial(mp - r)
            + ln_factorial(m - r);
        let mag = (ln_norm - ln_den - 2.0 * r as f64 * ln_c).exp();
        acc += up.powi((mp - r) as i32) * down.powi((m - r) as i32) * mag;
    }
    acc * lead
}

/// `c_k = |D_{N,k}(scaling Φ)|²` from the term-by-term sum.
pub fn spectral_weight_bch(n: u32, l: u32, k: i64, phi: f64) -> f64 {
    let b = BchCoordinates {
        rho: 0.5 * phi.abs(),
        chi: 0.0,
        psi: if phi >= 0.0 { 0.5 * PI } else { 1.5 * PI },
    };
    matrix_element_bch_sum(i64::from(l) + 1, i64::from(n), k, &b).norm_sqr()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSeries {
    pub value: Complex64,
    /// Magnitude of the last retained term.
    pub last_term: f64,
}

/// `sin²(T/2) Σ_{k=L+1}^{k_max} c_k e^{−ikT}` on either contour.
pub fn kernel_via_spectral_series(
    n: u32,
    l: u32,
    contour: Contour,
    phi: f64,
    n_max: u32,
) -> Result<SpectralSeries> {
    check_quantum_numbers(n, l)?;
    if n_max < n + 10 {
        return Err(Error::InvalidArgument(format!(
            "n_max = {n_max} must be at least N + 10"
        )));
    }
    let mut acc = ZERO;
    let mut last = 0.0;
    for k in (l + 1)..=n_max {
        let c = spectral_weight_bch(n, l, i64::from(k), phi);
        let e = match contour {
            Contour::RealTime(t) => Complex64::from_polar(1.0, -f64::from(k) * t),
            Contour::ImaginaryTime(tau) => Complex64::new((-f64::from(k) * tau).exp(), 0.0),
        };
        let term = e * c;
        acc += term;
        last = term.norm();
    }
    let pre = match contour {
        Contour::RealTime(t) => Complex64::new((0.5 * t).sin().powi(2), 0.0),
        Contour::ImaginaryTime(tau) => Complex64::new(-(0.5 * tau).sinh().powi(2), 0.0),
    };
    Ok(SpectralSeries {
        value: pre * acc,
        last_term: last,
    })
}

/// Residue-free remainder `Σ_{m≥N} d_m e^{−mτ}` with
/// `d_m = ½c_m − ¼c_{m+1} − ¼c_{m−1}`, truncated at `n_max`.
pub fn remainder_via_spectral_series(
    n: u32,
    l: u32,
    tau: f64,
    phi: f64,
    n_max: u32,
) -> Result<SpectralSeries> {
    check_quantum_numbers(n, l)?;
    let c = |k: i64| {
        if k <= i64::from(l) {
            0.0
        } else {
            spectral_weight_bch(n, l, k, phi)
        }
    };
    let mut acc = 0.0;
    let mut last = 0.0;
    for m in n..=n_max {
        let m = i64::from(m);
        let d = 0.5 * c(m) - 0.25 * c(m + 1) - 0.25 * c(m - 1);
        let term = d * (-(m as f64) * tau).exp();
        acc += term;
        last = term.abs();
    }
    Ok(SpectralSeries {
        value: Complex64::new(acc, 0.0),
        last_term: last,
    })
}

/// Largest `Φ` kept in the real-axis oracle.
pub const EPS_ORACLE_PHI_MAX: f64 = 25.0;

/// `−iκ ∫₀^∞ e^{iκT} Q(T) dT` with `κ = ν + iε`, using the `2π`
/// periodicity of `Q` to reduce the range to one period.
pub fn real_axis_time_integral(
    n: u32,
    l: u32,
    phi: f64,
    eps: f64,
    spec: &QuadratureSpec,
) -> Result<(Complex64, bool)> {
    let kappa = Complex64::new(f64::from(n) * (-phi).exp(), eps);
    let width = (1.0 / phi.cosh()).min(1.0);
    let mut breaks = vec![PI];
    let mut p = 0.5;
    while p > 0.25 * width {
        breaks.push(p);
        breaks.push(TAU - p);
        p *= 0.5;
    }
    let integrand =
        |t: f64| -> Result<Complex64> { Ok((I * kappa * t).exp() * kernel_q(n, l, t, phi)?) };
    let re = try_integrate_breakpoints(|t| Ok(integrand(t)?.re), 0.0, TAU, &breaks, spec)?;
    let im = try_integrate_breakpoints(|t| Ok(integrand(t)?.im), 0.0, TAU, &breaks, spec)?;
    let period = Complex64::new(re.value, im.value);
    let fold = 1.0 - (TAU * I * kappa).exp();
    Ok((-I * kappa * period / fold, re.converged && im.converged))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpsShift {
    /// Complex shift in MHz at each ε.
    pub samples: Vec<(f64, Complex64)>,
    /// Polynomial extrapolation to ε = 0.
    pub extrapolated: Complex64,
    pub converged: bool,
}

/// Default regularization sequence.
pub const EPS_SEQUENCE: [f64; 4] = [0.0125, 0.00625, 0.003125, 0.0015625];

/// Complex shift (MHz) at one `ε` from the real-time representation.
pub fn shift_via_eps_real_axis(
    state: &QuantumState,
    eps: f64,
    spec: &QuadratureSpec,
    c: &PhysicalConstants,
) -> Result<(Complex64, bool)> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "ε must be positive, got {eps}"
        )));
    }
    let (n, l) = (state.n, state.l);
    let inner = QuadratureSpec {
        rel_tol: spec.rel_tol * 1e-2,
        abs_tol: spec.abs_tol * 1e-2,
        ..*spec
    };
    let mut ok = true;
    let mut breaks: Vec<f64> = (1..n).map(|k| (f64::from(n) / f64::from(k)).ln()).collect();
    breaks.extend([1.0, 2.0, 4.0, 8.0, 16.0]);
    let mut part = |f: fn(Complex64) -> f64| -> Result<QuadratureResult> {
        try_integrate_breakpoints(
            |phi| {
                let (j, conv) = real_axis_time_integral(n, l, phi, eps, &inner)?;
                ok &= conv;
                Ok(weight_nondipole(state, c, phi) * f(j))
            },
            0.0,
            EPS_ORACLE_PHI_MAX,
            &breaks,
            spec,
        )
    };
    let re = part(|z| z.re)?;
    let im = part(|z| z.im)?;
    let pref =
        4.0 * c.mec2 * c.alpha0 * c.z_alpha(state.z).powi(2) / (3.0 * PI * f64::from(n).powi(2));
    let value = Complex64::new(re.value, im.value) * (-pref);
    let mhz = Complex64::new(c.ev_to_mhz(value.re), c.ev_to_mhz(value.im));
    Ok((mhz, ok && re.converged && im.converged))
}

/// Shifts at each `ε` and their extrapolation to `ε → 0`.
pub fn shift_via_eps_extrapolated(
    state: &QuantumState,
    eps: &[f64],
    spec: &QuadratureSpec,
    c: &PhysicalConstants,
) -> Result<EpsShift> {
    let mut samples = Vec::new();
    let mut converged = true;
    for &e in eps {
        let (v, ok) = shift_via_eps_real_axis(state, e, spec, c)?;
        samples.push((e, v));
        converged &= ok;
    }
    let h: Vec<f64> = eps.to_vec();
    let re: Vec<f64> = samples.iter().map(|s| s.1.re).collect();
    let im: Vec<f64> = samples.iter().map(|s| s.1.im).collect();
    let extrapolated = Complex64::new(extrapolate_to_zero(&h, &re), extrapolate_to_zero(&h, &im));
    Ok(EpsShift {
        samples,
        extrapolated,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su11::{bch_decompose, time_evolution_coords};

    #[test]
    fn generators_satisfy_ladder_relations() {
        let g = generators();
        let comm = |a: &Matrix2x2C, b: &Matrix2x2C| a.mul(b).add(&b.mul(a).scale(-ONE));
        assert!(comm(&g.j_plus, &g.j_minus).max_abs_diff(&g.j3) < 1e-15);
        assert!(comm(&g.j3, &g.j_plus).max_abs_diff(&g.j_plus) < 1e-15);
        assert!(comm(&g.j3, &g.j_minus).max_abs_diff(&g.j_minus.scale(-ONE)) < 1e-15);
    }

    #[test]
    fn exp_of_diagonal() {
        let m = Matrix2x2C([
            [Complex64::new(2.0, 1.0), ZERO],
            [ZERO, Complex64::new(-3.0, 0.5)],
        ]);
        let e = m.exp();
        assert!((e.0[0][0] - Complex64::new(2.0, 1.0).exp()).norm() < 1e-13 * 8.0);
        assert!((e.0[1][1] - Complex64::new(-3.0, 0.5).exp()).norm() < 1e-15);
    }

    #[test]
    fn reconstruct_examples() {
        let id = bch_reconstruct_2x2(&BchCoordinates {
            rho: 0.0,
            chi: 0.0,
            psi: 0.0,
        });
        assert!(id.max_abs_diff(&Matrix2x2C::IDENTITY) < 1e-15);
        let r: f64 = 0.7;
        let m = bch_reconstruct_2x2(&BchCoordinates {
            rho: r,
            chi: 0.0,
            psi: 0.0,
        });
        let u = GroupElement {
            alpha: Complex64::new(r.cosh(), 0.0),
            beta: Complex64::new(r.sinh(), 0.0),
        };
        assert!(m.max_abs_diff(&Matrix2x2C::from_element(&u)) < 1e-14);
        let u = time_evolution_coords(1.1, 0.6);
        let m = bch_reconstruct_2x2(&bch_decompose(&u));
        assert!(m.max_abs_diff(&Matrix2x2C::from_element(&u)) < 1e-12);
    }

    #[test]
    fn spectral_series_at_zero_phi() {
        let t = 0.9;
        let s = kernel_via_spectral_series(3, 1, Contour::RealTime(t), 0.0, 20).unwrap();
        let expected = Complex64::from_polar((0.5f64 * t).sin().powi(2), -3.0 * t);
        assert!((s.value - expected).norm() < 1e-15);
        let z = kernel_via_spectral_series(3, 1, Contour::RealTime(0.0), 0.7, 40).unwrap();
        assert_eq!(z.value.norm(), 0.0);
    }
}
