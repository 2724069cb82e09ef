//! Adaptive Gauss–Kronrod (7–15) quadrature on finite and semi-infinite
//! ranges, and Cauchy principal values through a single simple pole.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::compensated::NeumaierSum;
use crate::error::{Error, Result};

/// Kronrod abscissae on `[0, 1]`; odd indices are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Upper bound on dyadic panels for semi-infinite ranges.
const MAX_PANELS: usize = 96;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Total number of bisections allowed in one call.
    pub max_subdivisions: usize,
    /// Panel contribution below which a semi-infinite range is truncated;
    /// `None` means `abs_tol`.
    pub tail_cut: Option<f64>,
    /// Uniform bisections applied to every segment after adaptation; each
    /// one doubles the final subdivision count.
    pub refine: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
            tail_cut: None,
            refine: 0,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !ok(self.rel_tol) || !ok(self.abs_tol) {
            return Err(Error::InvalidArgument(format!(
                "tolerances must be positive (rel {}, abs {})",
                self.rel_tol, self.abs_tol
            )));
        }
        Ok(())
    }

    pub fn tail_cut(&self) -> f64 {
        self.tail_cut.unwrap_or(self.abs_tol)
    }

    fn target(&self, value: f64) -> f64 {
        (self.rel_tol * value.abs()).max(self.abs_tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadratureResult {
    pub const ZERO: Self = Self {
        value: 0.0,
        error_estimate: 0.0,
        evaluations: 0,
        converged: true,
    };

    /// Sum of independent pieces.
    pub fn combine(parts: &[QuadratureResult]) -> Self {
        let value = parts
            .iter()
            .map(|p| p.value)
            .collect::<NeumaierSum>()
            .value();
        Self {
            value,
            error_estimate: parts.iter().fold(0.0, |acc, p| acc + p.error_estimate),
            evaluations: parts.iter().map(|p| p.evaluations).sum(),
            converged: parts.iter().all(|p| p.converged),
        }
    }

    pub fn scale(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn eval<F: FnMut(f64) -> Result<f64>>(f: &mut F, x: f64) -> Result<f64> {
    let y = f(x)?;
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFinite(x))
    }
}

/// One 15-point Kronrod panel with its embedded 7-point Gauss estimate.
fn gk15<F: FnMut(f64) -> Result<f64>>(f: &mut F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = eval(f, center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = eval(f, center - dx)? + eval(f, center + dx)?;
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok(Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    })
}

/// Shared subdivision state for one top-level call.
struct Adaptive<'s> {
    spec: &'s QuadratureSpec,
    subdivisions: usize,
    evaluations: usize,
}

impl Adaptive<'_> {
    /// Adapts over the intervals between consecutive breakpoints with one
    /// heap, so the worst segment anywhere is refined first.
    fn run<F: FnMut(f64) -> Result<f64>>(
        &mut self,
        f: &mut F,
        points: &[f64],
    ) -> Result<QuadratureResult> {
        let mut heap = BinaryHeap::new();
        let mut done = Vec::new();
        for w in points.windows(2) {
            if w[1] > w[0] {
                heap.push(gk15(f, w[0], w[1])?);
                self.evaluations += 15;
            }
        }
        let total = |heap: &BinaryHeap<Segment>, done: &[Segment]| {
            let mut v = NeumaierSum::new();
            let mut e = 0.0;
            for s in heap.iter().chain(done.iter()) {
                v.add(s.value);
                e += s.error;
            }
            (v.value(), e)
        };
        let (mut value, mut error) = total(&heap, &done);
        while error > self.spec.target(value) && self.subdivisions < self.spec.max_subdivisions {
            let Some(worst) = heap.pop() else { break };
            let mid = 0.5 * (worst.a + worst.b);
            if !(mid > worst.a && mid < worst.b)
                || (worst.b - worst.a) <= 4.0 * f64::EPSILON * mid.abs()
            {
                done.push(worst);
                continue;
            }
            let left = gk15(f, worst.a, mid)?;
            let right = gk15(f, mid, worst.b)?;
            self.evaluations += 30;
            self.subdivisions += 1;
            heap.push(left);
            heap.push(right);
            let next = total(&heap, &done);
            value = next.0;
            error = next.1;
        }
        let mut all: Vec<Segment> = heap.into_vec();
        all.extend(done);
        for _ in 0..self.spec.refine {
            let mut halves = Vec::with_capacity(2 * all.len());
            for s in &all {
                let mid = 0.5 * (s.a + s.b);
                halves.push(gk15(f, s.a, mid)?);
                halves.push(gk15(f, mid, s.b)?);
                self.evaluations += 30;
            }
            all = halves;
        }
        all.sort_by(|x, y| x.a.total_cmp(&y.a));
        let value = all.iter().map(|s| s.value).collect::<NeumaierSum>().value();
        let error: f64 = all.iter().map(|s| s.error).sum();
        Ok(QuadratureResult {
            value,
            error_estimate: error,
            evaluations: self.evaluations,
            converged: error <= self.spec.target(value),
        })
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() && a <= b {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("bad interval [{a}, {b}]")))
    }
}

/// `∫_a^b f` over a finite interval, splitting first at `breakpoints`.
pub fn try_integrate_breakpoints<F>(
    mut f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    spec.validate()?;
    check_interval(a, b)?;
    let mut points = vec![a];
    points.extend(breakpoints.iter().copied().filter(|&x| x > a && x < b));
    points.push(b);
    points.sort_by(f64::total_cmp);
    Adaptive {
        spec,
        subdivisions: 0,
        evaluations: 0,
    }
    .run(&mut f, &points)
}

pub fn try_integrate<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    try_integrate_breakpoints(f, a, b, &[], spec)
}

/// `∫_a^b f` over a finite interval.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    try_integrate(|x| Ok(f(x)), a, b, spec)
}

/// `∫_a^∞ f` on panels `[a, a+s]`, `[a+s, a+2s]`, `[a+2s, a+4s]`, ...
///
/// Each panel is refined adaptively from a common subdivision budget; the
/// range is truncated after two consecutive panels each contribute less
/// than `max(tail_cut, rel_tol·|total|/10)`.
pub fn try_integrate_semi_infinite_scaled<F>(
    mut f: F,
    a: f64,
    scale: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    spec.validate()?;
    if !(a.is_finite() && scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "bad semi-infinite range start {a}, scale {scale}"
        )));
    }
    let mut state = Adaptive {
        spec,
        subdivisions: 0,
        evaluations: 0,
    };
    let mut pieces = Vec::new();
    let mut running = NeumaierSum::new();
    let (mut lo, mut width) = (a, scale);
    let mut small = 0;
    for _ in 0..MAX_PANELS {
        let hi = lo + width;
        let panel = state.run(&mut f, &[lo, hi])?;
        running.add(panel.value);
        pieces.push(panel);
        let cut = spec
            .tail_cut()
            .max(0.1 * spec.rel_tol * running.value().abs());
        if panel.value.abs() < cut {
            small += 1;
            if small == 2 {
                return Ok(finish(&pieces, state.evaluations, true));
            }
        } else {
            small = 0;
        }
        lo = hi;
        if lo > a + scale {
            width *= 2.0;
        }
    }
    Ok(finish(&pieces, state.evaluations, false))
}

fn finish(pieces: &[QuadratureResult], evaluations: usize, truncated: bool) -> QuadratureResult {
    let mut r = QuadratureResult::combine(pieces);
    r.evaluations = evaluations;
    r.converged = truncated && pieces.iter().all(|p| p.converged);
    r
}

/// `∫_0^∞ f` with unit-width first panel.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    mut f: F,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    try_integrate_semi_infinite_scaled(|x| Ok(f(x)), 0.0, 1.0, spec)
}

/// `∫_a^b f`, where `b` may be `+∞`.
pub fn try_integrate_range<F>(
    f: F,
    a: f64,
    b: f64,
    scale: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if b == f64::INFINITY {
        try_integrate_semi_infinite_scaled(f, a, scale, spec)
    } else {
        try_integrate(f, a, b, spec)
    }
}

/// `PV ∫_a^b g(x)/(x − pole) dx` with `a < pole < b` (`b` may be `+∞`).
///
/// Within `δ = min(1/2, (pole − a)/2, (b − pole)/2)` of the pole the two
/// sides are folded into `∫_0^δ [g(pole + s) − g(pole − s)]/s ds`.
pub fn try_integrate_principal_value<G>(
    mut g: G,
    a: f64,
    b: f64,
    pole: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult>
where
    G: FnMut(f64) -> Result<f64>,
{
    spec.validate()?;
    if !(pole > a && pole < b && a.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "pole {pole} is not inside ({a}, {b})"
        )));
    }
    let delta = 0.5f64.min(0.5 * (pole - a)).min(0.5 * (b - pole));
    let left = try_integrate(|x| Ok(g(x)? / (x - pole)), a, pole - delta, spec)?;
    let center = try_integrate(|s| Ok((g(pole + s)? - g(pole - s)?) / s), 0.0, delta, spec)?;
    let right = try_integrate_range(|x| Ok(g(x)? / (x - pole)), pole + delta, b, 1.0, spec)?;
    Ok(QuadratureResult::combine(&[left, center, right]))
}

/// Principal value with pole in `(0, ∞)` over `(0, ∞)`.
pub fn integrate_principal_value<G: FnMut(f64) -> f64>(
    mut g: G,
    pole: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    if !(pole > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "pole must be positive, got {pole}"
        )));
    }
    try_integrate_principal_value(|x| Ok(g(x)), 0.0, f64::INFINITY, pole, spec)
}
