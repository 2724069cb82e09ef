//! Terminating Gauss hypergeometric sums, Jacobi polynomials and gamma
//! ratios at integer arguments.

use num_complex::Complex64;

use crate::compensated::{DoubleDouble, NeumaierSum};
use crate::error::{Error, Result};

/// Condition estimate `Σ|terms| / |sum|` above which a terminating series is
/// re-summed in double-double arithmetic.
pub const EXTENDED_PRECISION_THRESHOLD: f64 = 1e4;

/// Parameters of a terminating ₂F₁(a, b; c; z) with `a ≤ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeometricTerminating {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub z: f64,
}

/// Value of a terminating series together with its conditioning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// `Σ|terms| / |value|`; infinite when the sum vanishes exactly.
    pub condition: f64,
    /// Whether the double-double fallback produced `value`.
    pub extended: bool,
}

fn check_terminating(a: i64, c: i64) -> Result<()> {
    if a > 0 {
        return Err(Error::InvalidArgument(format!(
            "₂F₁ with a = {a} > 0 does not terminate"
        )));
    }
    if c <= 0 {
        return Err(Error::InvalidArgument(format!(
            "₂F₁ with c = {c} ≤ 0 hits a denominator pole"
        )));
    }
    Ok(())
}

/// Numerator and denominator of the ratio `t_{k+1}/t_k / z`.
#[inline]
fn term_ratio(a: i64, b: i64, c: i64, k: i64) -> (f64, f64) {
    (((a + k) * (b + k)) as f64, ((c + k) * (k + 1)) as f64)
}

impl HypergeometricTerminating {
    pub fn new(a: i64, b: i64, c: i64, z: f64) -> Result<Self> {
        check_terminating(a, c)?;
        Ok(Self { a, b, c, z })
    }

    /// Sums `Σ_{k=0}^{|a|} (a)_k (b)_k / ((c)_k k!) z^k` lowest order first.
    pub fn evaluate(&self) -> SeriesValue {
        let Self { a, b, c, z } = *self;
        let mut acc = NeumaierSum::new();
        let mut magnitude = 0.0;
        let mut term = 1.0;
        for k in 0..=(-a) {
            acc.add(term);
            magnitude += term.abs();
            let (num, den) = term_ratio(a, b, c, k);
            term *= num / den * z;
        }
        let value = acc.value();
        let condition = magnitude / value.abs();
        if condition <= EXTENDED_PRECISION_THRESHOLD {
            return SeriesValue {
                value,
                condition,
                extended: false,
            };
        }

        let mut acc = DoubleDouble::ZERO;
        let mut term = DoubleDouble::ONE;
        for k in 0..=(-a) {
            acc = acc.add(term);
            let (num, den) = term_ratio(a, b, c, k);
            term = term.mul_f64(num).div_f64(den).mul_f64(z);
        }
        let value = acc.to_f64();
        SeriesValue {
            value,
            condition: magnitude / value.abs(),
            extended: true,
        }
    }
}

/// Terminating ₂F₁(a, b; c; z) for integer `a ≤ 0` and `c ≥ 1`.
pub fn hyp2f1_terminating(a: i64, b: i64, c: i64, z: f64) -> Result<f64> {
    Ok(HypergeometricTerminating::new(a, b, c, z)?.evaluate().value)
}

/// Complex-argument variant; real and imaginary parts are accumulated with
/// compensated summation.
pub fn hyp2f1_terminating_complex(a: i64, b: i64, c: i64, z: Complex64) -> Result<Complex64> {
    check_terminating(a, c)?;
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    let mut term = Complex64::new(1.0, 0.0);
    for k in 0..=(-a) {
        re.add(term.re);
        im.add(term.im);
        let (num, den) = term_ratio(a, b, c, k);
        term *= z * (num / den);
    }
    Ok(Complex64::new(re.value(), im.value()))
}

/// `ln(Γ(num)/Γ(den))` for positive integers, as a compensated sum of
/// logarithms of the integers between the two arguments.
pub fn ln_gamma_ratio(num: u64, den: u64) -> Result<f64> {
    if num == 0 || den == 0 {
        return Err(Error::InvalidArgument(format!(
            "ln_gamma_ratio needs positive integers (got {num}, {den})"
        )));
    }
    let (lo, hi, sign) = if num >= den {
        (den, num, 1.0)
    } else {
        (num, den, -1.0)
    };
    let mut acc = NeumaierSum::new();
    for k in lo..hi {
        acc.add((k as f64).ln());
    }
    Ok(sign * acc.value())
}

/// Parameters of a Jacobi polynomial `P_n^{(α,β)}(w)` with integer `α, β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub degree: u32,
    pub alpha: i32,
    pub beta: i32,
    pub w: f64,
}

impl JacobiParams {
    pub fn evaluate(&self) -> f64 {
        jacobi_p(self.degree, self.alpha, self.beta, self.w)
    }
}

/// `P_n^{(α,β)}(w)` by the three-term recurrence in the degree.
///
/// For a negative integer parameter `-k` with `n ≥ k` the recurrence has a
/// vanishing leading coefficient at degree `k - α`; those cases are first
/// reduced with
/// `P_n^{(α,-k)}(w) = C(n+α,k)/C(n,k) · ((1+w)/2)^k · P_{n-k}^{(α,k)}(w)`
/// (and its mirror image for `α`).
pub fn jacobi_p(n: u32, alpha: i32, beta: i32, w: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    if beta < 0 && n >= beta.unsigned_abs() && alpha >= 0 {
        let k = beta.unsigned_abs();
        let factor = binomial_ratio(n, alpha, k);
        return factor * (0.5 * (1.0 + w)).powi(k as i32) * jacobi_p(n - k, alpha, k as i32, w);
    }
    if alpha < 0 && n >= alpha.unsigned_abs() && beta >= 0 {
        let k = alpha.unsigned_abs();
        let factor = binomial_ratio(n, beta, k);
        return factor * (0.5 * (w - 1.0)).powi(k as i32) * jacobi_p(n - k, k as i32, beta, w);
    }
    recurrence(n, f64::from(alpha), f64::from(beta), w)
        .unwrap_or_else(|| jacobi_explicit(n, f64::from(alpha), f64::from(beta), w))
}

/// `C(n+γ, k) / C(n, k)` for integer `γ ≥ 0`, `k ≤ n`.
fn binomial_ratio(n: u32, gamma: i32, k: u32) -> f64 {
    // Γ(n+γ+1) (n-k)! / (Γ(n+γ-k+1) n!)
    let n = u64::from(n);
    let g = gamma as u64;
    let k = u64::from(k);
    let ln = ln_gamma_ratio(n + g + 1, n + g - k + 1).expect("positive")
        - ln_gamma_ratio(n + 1, n - k + 1).expect("positive");
    ln.exp()
}

fn recurrence(n: u32, a: f64, b: f64, x: f64) -> Option<f64> {
    let mut p_prev = 1.0;
    let mut p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    for k in 2..=n {
        let k = f64::from(k);
        let s = 2.0 * k + a + b;
        let lead = 2.0 * k * (k + a + b) * (s - 2.0);
        if lead == 0.0 {
            return None;
        }
        let next = ((s - 1.0) * (s * (s - 2.0) * x + a * a - b * b) * p
            - 2.0 * (k + a - 1.0) * (k + b - 1.0) * s * p_prev)
            / lead;
        p_prev = p;
        p = next;
    }
    Some(p)
}

/// Generalized binomial coefficient `C(r, k)` for real `r`.
fn gen_binomial(r: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (r - f64::from(i)) / f64::from(i + 1))
}

/// Explicit sum over products of half-shifted powers; valid for any
/// parameters, used when the recurrence degenerates.
fn jacobi_explicit(n: u32, a: f64, b: f64, x: f64) -> f64 {
    let nf = f64::from(n);
    let xm = 0.5 * (x - 1.0);
    let xp = 0.5 * (x + 1.0);
    let mut acc = NeumaierSum::new();
    for s in 0..=n {
        acc.add(
            gen_binomial(nf + a, n - s)
                * gen_binomial(nf + b, s)
                * xm.powi(s as i32)
                * xp.powi((n - s) as i32),
        );
    }
    acc.value()
}
