//! The effective-time kernel `Q_{NL}(T, Φ)`, its residue coefficients
//! `R_n(cosh Φ)` and the exponentially decaying remainder `Q̃` on the rotated
//! contour `T = −iτ`.

use num_complex::Complex64;

use crate::compensated::NeumaierSum;
use crate::error::{Error, Result};
use crate::special::{hyp2f1_terminating, hyp2f1_terminating_complex, jacobi_p};
use crate::su11::{rep_matrix_element_sqr, scaling_coords, RepLabel};

/// Largest spectral index kept in a remainder tail.
pub const MAX_SPECTRAL_INDEX: u32 = 20_000;

/// Validates `N ≥ 1`, `0 ≤ L ≤ N − 1`.
pub fn check_quantum_numbers(n: u32, l: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidState("N must be at least 1".into()));
    }
    if l >= n {
        return Err(Error::InvalidState(format!(
            "L = {l} must satisfy L ≤ N − 1 = {}",
            n - 1
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Contour {
    /// Real effective time `T`.
    RealTime(f64),
    /// Imaginary effective time, `T = −iτ` with `τ ≥ 0`.
    ImaginaryTime(f64),
}

/// Scalar arguments of the closed-form kernel at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    pub contour: Contour,
    pub phi: f64,
    pub f: Complex64,
    /// `1 − |f|²` on the real axis, `f² − 1` on the rotated contour.
    pub z: f64,
    pub chi: f64,
    pub nu: f64,
}

impl KernelPoint {
    pub fn new(n: u32, contour: Contour, phi: f64) -> Self {
        let nu = f64::from(n) * (-phi).exp();
        match contour {
            Contour::RealTime(t) => {
                let (s, c) = (0.5 * t).sin_cos();
                let f = Complex64::new(c, s * phi.cosh());
                KernelPoint {
                    contour,
                    phi,
                    f,
                    z: -(s * phi.sinh()).powi(2),
                    chi: f.arg(),
                    nu,
                }
            }
            Contour::ImaginaryTime(tau) => {
                let (s, c) = ((0.5 * tau).sinh(), (0.5 * tau).cosh());
                let f = Complex64::new(c + s * phi.cosh(), 0.0);
                KernelPoint {
                    contour,
                    phi,
                    f,
                    z: (s * phi.sinh()).powi(2),
                    chi: 0.0,
                    nu,
                }
            }
        }
    }
}

/// `Q(T, Φ)` on the real axis through the Jacobi-polynomial form
/// `sin²(T/2) e^{−2iNχ} (1 − z)^L P_{N+L}^{(0, −1−2L)}((1 + z)/(1 − z))`.
pub fn kernel_q(n: u32, l: u32, t: f64, phi: f64) -> Result<Complex64> {
    check_quantum_numbers(n, l)?;
    let p = KernelPoint::new(n, Contour::RealTime(t), phi);
    let one_minus_z = 1.0 - p.z;
    let w = (1.0 + p.z) / one_minus_z;
    let jac = jacobi_p(n + l, 0, -1 - 2 * l as i32, w);
    let s2 = (0.5 * t).sin().powi(2);
    let modulus = s2 * one_minus_z.powi(l as i32) * jac;
    Ok(Complex64::from_polar(1.0, -2.0 * f64::from(n) * p.chi) * modulus)
}

/// `Q(T, Φ)` on the real axis through `sin²(T/2) f^{−2N} ₂F₁(L+1−N, −L−N; 1; 1 − |f|²)`.
pub fn kernel_q_hypergeometric(n: u32, l: u32, t: f64, phi: f64) -> Result<Complex64> {
    check_quantum_numbers(n, l)?;
    let p = KernelPoint::new(n, Contour::RealTime(t), phi);
    let (a, b) = hyp_params(n, l);
    let f2 = hyp2f1_terminating(a, b, 1, p.z)?;
    let s2 = (0.5 * t).sin().powi(2);
    Ok(p.f.powi(-2 * n as i32) * (s2 * f2))
}

/// `Q(−iτ, Φ)`, which is real.
pub fn kernel_q_rotated(n: u32, l: u32, tau: f64, phi: f64) -> Result<f64> {
    check_quantum_numbers(n, l)?;
    Ok(-(0.5 * tau).sinh().powi(2) * rotated_m(n, l, tau, phi).0)
}

/// `Q` at a complex effective time through the ₂F₁ route with complex `z`.
pub fn kernel_q_complex_time(n: u32, l: u32, t: Complex64, phi: f64) -> Result<Complex64> {
    check_quantum_numbers(n, l)?;
    let half = 0.5 * t;
    let f = half.cos() + Complex64::i() * half.sin() * phi.cosh();
    let z = 1.0 - f * conj_analytic(half, phi);
    let (a, b) = hyp_params(n, l);
    let f2 = hyp2f1_terminating_complex(a, b, 1, z)?;
    Ok(half.sin().powi(2) * f.powi(-2 * n as i32) * f2)
}

/// Analytic continuation of `f*` in `T`.
fn conj_analytic(half: Complex64, phi: f64) -> Complex64 {
    half.cos() - Complex64::i() * half.sin() * phi.cosh()
}

fn hyp_params(n: u32, l: u32) -> (i64, i64) {
    (
        i64::from(l) + 1 - i64::from(n),
        -i64::from(l) - i64::from(n),
    )
}

/// `ln ₂F₁(a, b; c; z)` for `a ≤ 0`, `(a)_k (b)_k > 0` and `z ≥ 0`, where every
/// term is nonnegative; large `z` is handled by Horner's rule in `1/z`.
fn ln_positive_hyp(a: i64, b: i64, c: i64, z: f64) -> f64 {
    let degree = -a;
    let mut coeffs = Vec::with_capacity(degree as usize + 1);
    let mut t = 1.0;
    for k in 0..=degree {
        coeffs.push(t);
        t *= ((a + k) * (b + k)) as f64 / ((c + k) * (k + 1)) as f64;
    }
    if z <= 1.0 {
        let mut acc = 0.0;
        for &c in coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc.ln()
    } else {
        let w = 1.0 / z;
        let mut acc = 0.0;
        for &c in coeffs.iter() {
            acc = acc * w + c;
        }
        degree as f64 * z.ln() + acc.ln()
    }
}

/// `M = f^{−2N} ₂F₁(z)` on the rotated contour and `dM/dτ`.
fn rotated_m(n: u32, l: u32, tau: f64, phi: f64) -> (f64, f64) {
    let (sh, ch) = ((0.5 * tau).sinh(), (0.5 * tau).cosh());
    let (sphi, cphi) = (phi.sinh(), phi.cosh());
    let f = ch + sh * cphi;
    let z = (sh * sphi).powi(2);
    let (a, b) = hyp_params(n, l);
    let nf = f64::from(n);
    let ln_f2 = ln_positive_hyp(a, b, 1, z);
    let m = (ln_f2 - 2.0 * nf * f.ln()).exp();

    let df = 0.5 * (sh + ch * cphi);
    let dz = sh * ch * sphi * sphi;
    let mut log_derivative = -2.0 * nf * df / f;
    if a < 0 {
        let ratio = (a * b) as f64 * (ln_positive_hyp(a + 1, b + 1, 2, z) - ln_f2).exp();
        log_derivative += ratio * dz;
    }
    (m, m * log_derivative)
}

/// `dQ/dτ (−iτ, Φ)`.
pub fn kernel_q_rotated_dtau(n: u32, l: u32, tau: f64, phi: f64) -> Result<f64> {
    check_quantum_numbers(n, l)?;
    let (m, dm) = rotated_m(n, l, tau, phi);
    let (sh, ch) = ((0.5 * tau).sinh(), (0.5 * tau).cosh());
    Ok(-sh * ch * m - sh * sh * dm)
}

/// Spectral weight `c_k = |D_{N,k}(scaling Φ)|²` of the compact generator
/// eigenstate `k` in the scaled state `N`.
pub fn spectral_weight(n: u32, l: u32, k: i64, phi: f64) -> Result<f64> {
    let label = RepLabel::new(i64::from(l) + 1)?;
    rep_matrix_element_sqr(label, i64::from(n), k, &scaling_coords(phi))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueEntry {
    pub n: u32,
    pub r: f64,
    /// `½c_n + ¼c_{n+1} + ¼c_{n−1}`, the magnitude scale of the terms in `r`.
    pub scale: f64,
    /// Pole location `ln(N/n)`; absent for `n = 0`.
    pub phi0: Option<f64>,
}

/// Coefficients of `e^{−nτ}`, `L ≤ n ≤ N − 1`, in the expansion of `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueTable {
    pub n: u32,
    pub l: u32,
    pub phi: f64,
    pub entries: Vec<ResidueEntry>,
}

impl ResidueTable {
    pub fn get(&self, n: u32) -> Option<&ResidueEntry> {
        self.entries.iter().find(|e| e.n == n)
    }

    pub fn sum(&self) -> f64 {
        crate::compensated::sum(self.entries.iter().map(|e| e.r))
    }
}

fn residue(c: &dyn Fn(i64) -> f64, k: i64) -> f64 {
    0.5 * c(k) - 0.25 * c(k + 1) - 0.25 * c(k - 1)
}

pub fn residue_coeffs(n: u32, l: u32, phi: f64) -> Result<ResidueTable> {
    check_quantum_numbers(n, l)?;
    let weights: Vec<f64> = (0..=i64::from(n))
        .map(|k| spectral_weight(n, l, k, phi))
        .collect::<Result<_>>()?;
    let c = |k: i64| if k < 0 { 0.0 } else { weights[k as usize] };
    let entries = (l..n)
        .map(|k| ResidueEntry {
            n: k,
            r: residue(&c, i64::from(k)),
            scale: 0.5 * c(i64::from(k)) + 0.25 * (c(i64::from(k) + 1) + c(i64::from(k) - 1)),
            phi0: (k > 0).then(|| (f64::from(n) / f64::from(k)).ln()),
        })
        .collect();
    Ok(ResidueTable { n, l, phi, entries })
}

/// Everything needed to evaluate `Q̃(−iτ, Φ)` at fixed `Φ`.
///
/// Below [`RemainderContext::switch_tau`] `Q̃` is `Q` minus the residue
/// terms; above it the spectral tail `Σ_{m≥N} d_m e^{−mτ}` is summed after
/// moving the second difference in `d_m` onto the exponentials.
#[derive(Debug, Clone)]
pub struct RemainderContext {
    pub n: u32,
    pub l: u32,
    pub phi: f64,
    pub residues: ResidueTable,
    switch_tau: f64,
    /// `c_k` for `k = N − 1, N, N + 1, ...`.
    weights: Vec<f64>,
}

impl RemainderContext {
    pub fn new(n: u32, l: u32, phi: f64) -> Result<Self> {
        check_quantum_numbers(n, l)?;
        let residues = residue_coeffs(n, l, phi)?;
        let gap = f64::from(n - l);
        let switch_tau = (4.0 / gap).clamp(0.25, 1.0);

        let mut weights = Vec::new();
        let mut peak: f64 = 0.0;
        let mut quiet = 0;
        for k in (n as i64 - 1).. {
            if k > i64::from(MAX_SPECTRAL_INDEX) {
                return Err(Error::InvalidArgument(format!(
                    "spectral tail of ({n}, {l}) at Φ = {phi} did not converge"
                )));
            }
            let c = spectral_weight(n, l, k, phi)?;
            weights.push(c);
            let size = c * (k as f64 + 1.0) * (-(k as f64 - f64::from(n)) * switch_tau).exp();
            peak = peak.max(size);
            if k > i64::from(n) + 2 && size <= 1e-18 * peak {
                quiet += 1;
                if quiet == 3 {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        Ok(Self {
            n,
            l,
            phi,
            residues,
            switch_tau,
            weights,
        })
    }

    /// `τ` at which evaluation switches from the direct to the tail form.
    pub fn switch_tau(&self) -> f64 {
        self.switch_tau
    }

    /// Number of spectral weights retained in the tail.
    pub fn tail_len(&self) -> usize {
        self.weights.len()
    }

    fn c(&self, k: u32) -> f64 {
        self.weights
            .get((k + 1 - self.n) as usize)
            .copied()
            .unwrap_or(0.0)
    }

    fn residue_sum(&self, tau: f64, g: impl Fn(f64, f64) -> f64) -> f64 {
        let mut acc = NeumaierSum::new();
        for e in &self.residues.entries {
            acc.add(g(f64::from(e.n), tau) * e.r);
        }
        acc.value()
    }

    /// Sums `Σ_{m≥N} d_m g(m)` as `Σ_k c_k h_k` with `h_k` the (negative
    /// quarter) second difference of `g`, using `second(k)` for `k ≥ N + 1`.
    fn tail_sum(&self, g: impl Fn(u32) -> f64, second: impl Fn(u32) -> f64) -> f64 {
        let n = self.n;
        let mut acc = NeumaierSum::new();
        acc.add(-0.25 * g(n) * self.c(n - 1));
        acc.add((0.5 * g(n) - 0.25 * g(n + 1)) * self.c(n));
        for (i, &c) in self.weights.iter().enumerate().skip(2) {
            acc.add(c * second(n - 1 + i as u32));
        }
        acc.value()
    }

    /// `Q̃(−iτ, Φ)`.
    pub fn value(&self, tau: f64) -> f64 {
        if tau <= self.switch_tau {
            let q = -(0.5 * tau).sinh().powi(2) * rotated_m(self.n, self.l, tau, self.phi).0;
            q - self.residue_sum(tau, |k, t| (-k * t).exp())
        } else {
            let omq = -(-tau).exp_m1();
            self.tail_sum(
                |m| (-f64::from(m) * tau).exp(),
                |k| -0.25 * (-(f64::from(k) - 1.0) * tau).exp() * omq * omq,
            )
        }
    }

    /// `dQ̃/dτ (−iτ, Φ)`.
    pub fn dtau(&self, tau: f64) -> f64 {
        self.scaled_dtau(tau, 0.0)
    }

    /// `e^{ντ} dQ̃/dτ`, with the exponentials combined so that large `τ`
    /// neither overflows nor underflows prematurely.
    pub fn scaled_dtau(&self, tau: f64, nu: f64) -> f64 {
        if tau <= self.switch_tau {
            let (m, dm) = rotated_m(self.n, self.l, tau, self.phi);
            let (sh, ch) = ((0.5 * tau).sinh(), (0.5 * tau).cosh());
            let dq = -sh * ch * m - sh * sh * dm;
            (nu * tau).exp() * (dq + self.residue_sum(tau, |k, t| k * (-k * t).exp()))
        } else {
            let omq = -(-tau).exp_m1();
            let q = 1.0 - omq;
            self.tail_sum(
                |m| -f64::from(m) * (-(f64::from(m) - nu) * tau).exp(),
                |k| {
                    let kf = f64::from(k);
                    0.25 * (-(kf - 1.0 - nu) * tau).exp() * omq * (kf * omq - (1.0 + q))
                },
            )
        }
    }

    /// `∫_{τ0}^∞ e^{ντ} dQ̃/dτ dτ` for `τ0 ≥` [`switch_tau`](Self::switch_tau)
    /// and `ν < N`, summed term by term.
    pub fn tail_integral(&self, tau0: f64, nu: f64) -> f64 {
        let g = |m: u32| {
            let e = f64::from(m) - nu;
            -f64::from(m) * (-e * tau0).exp() / e
        };
        self.tail_sum(g, |k| -0.25 * (g(k - 1) - 2.0 * g(k) + g(k + 1)))
    }
}

/// `Q̃(−iτ, Φ) = Q(−iτ, Φ) − Σ_{n=L}^{N−1} R_n e^{−nτ}`.
pub fn kernel_remainder(n: u32, l: u32, tau: f64, phi: f64) -> Result<f64> {
    Ok(RemainderContext::new(n, l, phi)?.value(tau))
}

/// `dQ̃/dτ (−iτ, Φ)`.
pub fn kernel_remainder_dtau(n: u32, l: u32, tau: f64, phi: f64) -> Result<f64> {
    Ok(RemainderContext::new(n, l, phi)?.dtau(tau))
}
