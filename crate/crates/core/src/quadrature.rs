//! Integration primitives: adaptive Gauss–Kronrod on finite intervals,
//! half-line integrals against y^{2ν+1}, θ-integrals against sin^{2ν}θ via
//! Gauss–Jacobi rules, and weighted L^p norms.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::RadialFunction;
use crate::specfun::{ln_gamma, CompensatedSum, Order};

/// Tolerances and budgets shared by every integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    /// Half-line cut-off used when a function carries no decay information.
    pub default_truncation: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { rel_tol: 1e-10, abs_tol: 1e-12, max_panels: 4000, default_truncation: 12.0 }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_panels: usize, default_truncation: f64) -> Result<Self> {
        let spec = QuadratureSpec { rel_tol, abs_tol, max_panels, default_truncation };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::Validation("tolerances must be positive".into()));
        }
        if self.max_panels < 1 {
            return Err(Error::Validation("max_panels must be at least 1".into()));
        }
        if !(self.default_truncation > 0.0) {
            return Err(Error::Validation("default truncation must be positive".into()));
        }
        Ok(())
    }

    pub fn with_tolerances(mut self, rel_tol: f64, abs_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }

    pub fn tolerance(&self, value: Complex64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }

    /// Pointwise magnitude below which a decaying tail is dropped.
    pub fn tail_threshold(&self) -> f64 {
        (self.abs_tol * 1e-3).max(1e-300)
    }
}

/// Exponent and order of a weighted L^p norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormParams {
    pub p: f64,
    pub nu: Order,
}

impl NormParams {
    pub fn new(p: f64, nu: Order) -> Result<Self> {
        if p >= 1.0 {
            Ok(NormParams { p, nu })
        } else {
            Err(Error::Validation(format!("norm exponent must be >= 1, got {p}")))
        }
    }
}

#[allow(clippy::excessive_precision)]
const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
/// Gauss weights for Kronrod nodes 1, 3, 5 and the centre.
#[allow(clippy::excessive_precision)]
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
}

/// One 15-point Kronrod panel with the embedded 7-point Gauss estimate,
/// error rescaled as in QUADPACK's qk15.
fn kronrod_panel<F: Fn(f64) -> Complex64>(f: &F, lo: f64, hi: f64) -> Result<Panel> {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut values = [Complex64::new(0.0, 0.0); 15];
    values[7] = f(centre);
    for i in 0..7 {
        let dx = half * KRONROD_NODES[i];
        values[i] = f(centre - dx);
        values[14 - i] = f(centre + dx);
    }
    for (i, v) in values.iter().enumerate() {
        if !(v.re.is_finite() && v.im.is_finite()) {
            let at = if i == 7 {
                centre
            } else if i < 7 {
                centre - half * KRONROD_NODES[i]
            } else {
                centre + half * KRONROD_NODES[14 - i]
            };
            return Err(Error::NonFinite { at });
        }
    }
    let mut kronrod = values[7] * KRONROD_WEIGHTS[7];
    let mut gauss = values[7] * GAUSS_WEIGHTS[3];
    let mut abs_sum = values[7].norm() * KRONROD_WEIGHTS[7];
    for i in 0..7 {
        let pair = values[i] + values[14 - i];
        kronrod += pair * KRONROD_WEIGHTS[i];
        abs_sum += (values[i].norm() + values[14 - i].norm()) * KRONROD_WEIGHTS[i];
        if i % 2 == 1 {
            gauss += pair * GAUSS_WEIGHTS[i / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut asc = (values[7] - mean).norm() * KRONROD_WEIGHTS[7];
    for i in 0..7 {
        asc += ((values[i] - mean).norm() + (values[14 - i] - mean).norm()) * KRONROD_WEIGHTS[i];
    }
    let value = kronrod * half;
    let asc = asc * half;
    let abs_sum = abs_sum * half;
    let mut error = ((kronrod - gauss) * half).norm();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    if abs_sum > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * abs_sum);
    }
    Ok(Panel { lo, hi, value, error })
}

#[derive(PartialEq)]
struct Queued(f64, usize);

impl Eq for Queued {}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Queued {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then_with(|| other.1.cmp(&self.1))
    }
}

/// ∫_lo^hi f with globally adaptive bisection. Returns (value, error estimate).
pub fn integrate_finite<F: Fn(f64) -> Complex64>(f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<(Complex64, f64)> {
    integrate_pieces(f, &[lo, hi], spec)
}

/// Adaptive integration over consecutive intervals [breaks[i], breaks[i+1]],
/// all refined under one global error budget.
pub fn integrate_pieces<F: Fn(f64) -> Complex64>(f: F, breaks: &[f64], spec: &QuadratureSpec) -> Result<(Complex64, f64)> {
    let mut panels = Vec::with_capacity(breaks.len() * 4);
    let mut queue = BinaryHeap::new();
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_error = 0.0;
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            let panel = kronrod_panel(&f, w[0], w[1])?;
            total += panel.value;
            total_error += panel.error;
            queue.push(Queued(panel.error, panels.len()));
            panels.push(panel);
        }
    }
    if panels.is_empty() {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }

    while total_error > spec.tolerance(total) {
        let Some(Queued(_, worst)) = queue.pop() else {
            break;
        };
        if panels.len() >= spec.max_panels {
            queue.push(Queued(panels[worst].error, worst));
            break;
        }
        let Panel { lo, hi, value, error } = panels[worst];
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) || (hi - lo) <= 4.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            // too narrow to split; leave it out of the queue
            continue;
        }
        let left = kronrod_panel(&f, lo, mid)?;
        let right = kronrod_panel(&f, mid, hi)?;
        total += left.value + right.value - value;
        total_error += left.error + right.error - error;
        panels[worst] = left;
        queue.push(Queued(left.error, worst));
        queue.push(Queued(right.error, panels.len()));
        panels.push(right);
    }

    panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut acc = CompensatedSum::default();
    let mut err = 0.0;
    for p in &panels {
        acc.add(p.value);
        err += p.error;
    }
    let value = acc.value();
    let tolerance = spec.tolerance(value);
    if err > tolerance {
        return Err(Error::NonConvergent { estimate: err, tolerance });
    }
    Ok((value, err))
}

/// Breakpoints on [lo, hi] so that each panel spans at most about half a turn
/// of a phase whose rate grows to `rate` (radians per unit length).
pub fn oscillation_breaks(lo: f64, hi: f64, rate: f64, spec: &QuadratureSpec) -> Vec<f64> {
    let turns = ((hi - lo) * rate.abs() / PI).ceil();
    let n = (turns as usize).clamp(1, (spec.max_panels / 4).max(1));
    (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
}

/// Sorted, de-duplicated breakpoints inside [lo, hi], endpoints included.
pub fn merge_breaks(lo: f64, hi: f64, extra: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut out: Vec<f64> = extra.into_iter().filter(|p| *p > lo && *p < hi && p.is_finite()).collect();
    out.push(lo);
    out.push(hi);
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

#[inline]
pub(crate) fn radial_weight(order: Order, y: f64) -> f64 {
    let nu = order.nu();
    if nu == 0.0 {
        y
    } else if nu == 0.5 {
        y * y
    } else {
        y.powf(2.0 * nu + 1.0)
    }
}

/// ∫ f(y) y^{2ν+1} dy over consecutive pieces starting at 0; the weight stays
/// in the integrand and the open Kronrod rule never samples y = 0.
pub fn integrate_weighted<F: Fn(f64) -> Complex64>(f: F, nu: Order, breaks: &[f64], spec: &QuadratureSpec) -> Result<Complex64> {
    integrate_pieces(|y| f(y) * radial_weight(nu, y), breaks, spec).map(|(v, _)| v)
}

/// ∫₀^R f(y) y^{2ν+1} dy, R = `decay_radius`.
pub fn integrate_halfline_weighted<F: Fn(f64) -> Complex64>(
    f: F,
    nu: Order,
    spec: &QuadratureSpec,
    decay_radius: f64,
) -> Result<Complex64> {
    if !(decay_radius > 0.0 && decay_radius.is_finite()) {
        return Err(Error::Domain(format!("decay radius must be positive and finite, got {decay_radius}")));
    }
    let breaks: Vec<f64> = (0..=4).map(|i| decay_radius * f64::from(i) / 4.0).collect();
    integrate_weighted(f, nu, &breaks, spec)
}

/// Gauss–Jacobi rule on [-1, 1] for the weight (1-u)^α (1+u)^β.
#[derive(Debug, Clone)]
pub struct JacobiRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// ∫ (1-u)^α (1+u)^β du, the sum of the weights.
    pub mass: f64,
}

/// ∫_{-1}^{1} (1-u)^α (1+u)^β du.
pub fn jacobi_mass(alpha: f64, beta: f64) -> f64 {
    ((alpha + beta + 1.0) * 2f64.ln() + ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0) - ln_gamma(alpha + beta + 2.0)).exp()
}

type RuleKey = (u64, u64, usize);

fn rule_cache() -> &'static RwLock<HashMap<RuleKey, Arc<JacobiRule>>> {
    static CACHE: OnceLock<RwLock<HashMap<RuleKey, Arc<JacobiRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// n-point Gauss–Jacobi rule, memoized per (α, β, n). Construction is
/// deterministic, so the cache never changes results.
pub fn jacobi_rule(alpha: f64, beta: f64, n: usize) -> Arc<JacobiRule> {
    let key = (alpha.to_bits(), beta.to_bits(), n);
    if let Some(rule) = rule_cache().read().expect("rule cache poisoned").get(&key) {
        return Arc::clone(rule);
    }
    let rule = Arc::new(build_jacobi_rule(alpha, beta, n));
    let mut cache = rule_cache().write().expect("rule cache poisoned");
    Arc::clone(cache.entry(key).or_insert(rule))
}

/// Three-term recurrence of the orthonormal Jacobi polynomials:
/// diagonal a_k and squared off-diagonal b_k (b_0 unused).
fn jacobi_recurrence(alpha: f64, beta: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let ab = alpha + beta;
    let mut diag = vec![0.0; n + 1];
    let mut off = vec![0.0; n + 1];
    for k in 0..=n {
        let kf = k as f64;
        diag[k] = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
        off[k] = match k {
            0 => 0.0,
            1 => 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab)),
            _ => {
                let s = 2.0 * kf + ab;
                4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
            }
        };
    }
    (diag, off)
}

fn build_jacobi_rule(alpha: f64, beta: f64, n: usize) -> JacobiRule {
    assert!(alpha > -1.0 && beta > -1.0 && n >= 1, "invalid Jacobi rule parameters");
    let (diag, off) = jacobi_recurrence(alpha, beta, n);
    let sqrt_off: Vec<f64> = off.iter().map(|b| b.sqrt()).collect();
    let mass = jacobi_mass(alpha, beta);

    // Sturm count: eigenvalues of the n×n Jacobi matrix below x
    let count_below = |x: f64| -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for k in 0..n {
            d = (diag[k] - x) - if k == 0 { 0.0 } else { off[k] / d };
            if d == 0.0 {
                d = -f64::EPSILON * (1.0 + x.abs());
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    };

    // orthonormal p_n and its derivative at x, plus Σ_{k<n} p_k²
    let evaluate = |x: f64| -> (f64, f64, f64) {
        let mut p_prev = 0.0;
        let mut p = 1.0 / mass.sqrt();
        let mut d_prev = 0.0;
        let mut d = 0.0;
        let mut christoffel = 0.0;
        for k in 0..n {
            christoffel += p * p;
            let b_next = sqrt_off[k + 1];
            let p_next = ((x - diag[k]) * p - sqrt_off[k] * p_prev) / b_next;
            let d_next = (p + (x - diag[k]) * d - sqrt_off[k] * d_prev) / b_next;
            p_prev = p;
            p = p_next;
            d_prev = d;
            d = d_next;
        }
        (p, d, christoffel)
    };

    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        // bracket the (i+1)-th smallest eigenvalue
        let (mut lo, mut hi) = (-1.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if count_below(mid) > i {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let mut x = 0.5 * (lo + hi);
        for _ in 0..3 {
            let (p, d, _) = evaluate(x);
            if d == 0.0 {
                break;
            }
            let step = p / d;
            let candidate = x - step;
            if candidate > lo - 1e-15 && candidate < hi + 1e-15 {
                x = candidate;
            }
            if step.abs() < 1e-17 {
                break;
            }
        }
        let (_, _, christoffel) = evaluate(x);
        nodes.push(x);
        weights.push(1.0 / christoffel);
    }
    JacobiRule { nodes, weights, mass }
}

const GEGENBAUER_LEVELS: [usize; 8] = [8, 16, 32, 64, 128, 256, 512, 1024];

/// Normalized average (1/μ₀) ∫_{-1}^{1} h(u) (1-u²)^{ν-1/2} du, doubling the
/// Gauss–Jacobi order until successive estimates agree.
pub fn gegenbauer_mean<H: Fn(f64) -> Complex64>(h: H, nu: Order, spec: &QuadratureSpec) -> Result<(Complex64, f64)> {
    let a = nu.nu() - 0.5;
    converge_levels(spec, |n| {
        let rule = jacobi_rule(a, a, n);
        let mut acc = CompensatedSum::default();
        for (u, w) in rule.nodes.iter().zip(&rule.weights) {
            acc.add(h(*u) * *w);
        }
        Ok(acc.value() / rule.mass)
    })
}

/// Same normalization as [`gegenbauer_mean`] but integrating only over
/// [u_lo, 1], with u_lo > -1. The (1-u)^{ν-1/2} endpoint is absorbed by a
/// Jacobi rule; (1+u)^{ν-1/2} is smooth on the window.
pub fn gegenbauer_mean_window<H: Fn(f64) -> Complex64>(
    h: H,
    nu: Order,
    u_lo: f64,
    spec: &QuadratureSpec,
) -> Result<(Complex64, f64)> {
    let a = nu.nu() - 0.5;
    let len = 1.0 - u_lo;
    let full_mass = jacobi_mass(a, a);
    let scale = (0.5 * len).powf(a + 1.0) / full_mass;
    converge_levels(spec, |n| {
        let rule = jacobi_rule(a, 0.0, n);
        let mut acc = CompensatedSum::default();
        for (v, w) in rule.nodes.iter().zip(&rule.weights) {
            let u = u_lo + 0.5 * len * (1.0 + v);
            acc.add(h(u) * (*w * (1.0 + u).powf(a)));
        }
        Ok(acc.value() * scale)
    })
}

fn converge_levels<R: Fn(usize) -> Result<Complex64>>(spec: &QuadratureSpec, rule_sum: R) -> Result<(Complex64, f64)> {
    let mut previous = rule_sum(GEGENBAUER_LEVELS[0])?;
    let mut last_diff = f64::INFINITY;
    for &n in &GEGENBAUER_LEVELS[1..] {
        let current = rule_sum(n)?;
        if !(current.re.is_finite() && current.im.is_finite()) {
            return Err(Error::NonFinite { at: f64::NAN });
        }
        let diff = (current - previous).norm();
        if diff <= spec.tolerance(current) {
            return Ok((current, diff));
        }
        last_diff = diff;
        previous = current;
    }
    Err(Error::NonConvergent { estimate: last_diff, tolerance: spec.tolerance(previous) })
}

/// ∫₀^π g(θ) sin^{2ν}θ dθ via u = cos θ.
pub fn theta_integral<G: Fn(f64) -> Complex64>(g: G, nu: Order, spec: &QuadratureSpec) -> Result<Complex64> {
    let a = nu.nu() - 0.5;
    let mass = jacobi_mass(a, a);
    let (mean, _) = gegenbauer_mean(|u| g(u.clamp(-1.0, 1.0).acos()), nu, spec)?;
    Ok(mean * mass)
}

/// Nodes and weights of a fixed composite Gauss–Legendre rule with `order`
/// points on each interval [breaks[i], breaks[i+1]].
pub fn composite_legendre(breaks: &[f64], order: usize) -> Vec<(f64, f64)> {
    let rule = jacobi_rule(0.0, 0.0, order);
    let mut out = Vec::with_capacity(breaks.len().saturating_sub(1) * order);
    for w in breaks.windows(2) {
        let (mid, half) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
        out.extend(rule.nodes.iter().zip(&rule.weights).map(|(u, wt)| (mid + half * u, half * wt)));
    }
    out
}

/// Number of samples used for the sup norm.
const SUP_SAMPLES: usize = 4001;

/// ‖f‖_{p,ν} = (∫₀^∞ |f(y)|^p y^{2ν+1} dy)^{1/p}; for p = ∞ the maximum of |f|
/// over an even sample of [0, decay radius].
pub fn lp_norm(f: &RadialFunction, params: NormParams, spec: &QuadratureSpec) -> Result<f64> {
    let radius = f.integration_radius(spec);
    if params.p.is_infinite() {
        let mut best = 0.0f64;
        for i in 0..SUP_SAMPLES {
            let y = radius * i as f64 / (SUP_SAMPLES - 1) as f64;
            best = best.max(f.eval(y).norm());
        }
        return Ok(best);
    }
    let p = params.p;
    let breaks = merge_breaks(0.0, radius, (1..16).map(|i| radius * f64::from(i) / 16.0));
    let value = integrate_weighted(|y| Complex64::new(f.eval(y).norm().powf(p), 0.0), params.nu, &breaks, spec)?;
    Ok(value.re.max(0.0).powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;
    use approx::assert_relative_eq;

    fn order(nu: f64) -> Order {
        Order::new(nu).unwrap()
    }

    fn tight() -> QuadratureSpec {
        QuadratureSpec::default().with_tolerances(1e-13, 1e-14)
    }

    #[test]
    fn finite_examples() {
        let (v, _) = integrate_finite(|x| Complex64::new(x, 0.0), 0.0, 1.0, &tight()).unwrap();
        assert_relative_eq!(v.re, 0.5, max_relative = 1e-15);
        let (v, _) = integrate_finite(|t| Complex64::new(0.0, t).exp(), 0.0, PI, &tight()).unwrap();
        assert!((v - Complex64::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn chirp_against_composite_simpson() {
        let f = |x: f64| Complex64::new(0.0, 50.0 * x * x).exp();
        let n = 1_000_000;
        let h = 1.0 / n as f64;
        let mut acc = CompensatedSum::default();
        for i in 0..=n {
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc.add(f(i as f64 * h) * w);
        }
        let oracle = acc.value() * (h / 3.0);
        let (v, _) = integrate_finite(f, 0.0, 1.0, &tight()).unwrap();
        assert!((v - oracle).norm() < 1e-9);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let spec = QuadratureSpec { max_panels: 2, ..tight() };
        let r = integrate_finite(|x| Complex64::new(0.0, 4000.0 * x).exp(), 0.0, 1.0, &spec);
        assert!(matches!(r, Err(Error::NonConvergent { .. })));
    }

    #[test]
    fn refinement_is_deterministic() {
        let f = |x: f64| Complex64::new((7.0 * x).sin() / (1.0 + x * x), x.sqrt());
        let a = integrate_finite(f, 0.0, 9.0, &tight()).unwrap();
        let b = integrate_finite(f, 0.0, 9.0, &tight()).unwrap();
        assert_eq!(a.0.re.to_bits(), b.0.re.to_bits());
        assert_eq!(a.0.im.to_bits(), b.0.im.to_bits());
    }

    #[test]
    fn halfline_gaussian_and_box() {
        for nu in [-0.25, 0.0, 0.5, 1.7] {
            let o = order(nu);
            let v = integrate_halfline_weighted(|y| Complex64::new((-y * y).exp(), 0.0), o, &tight(), 8.0).unwrap();
            assert_relative_eq!(v.re, gamma(nu + 1.0).unwrap() / 2.0, max_relative = 1e-12);
            let v = integrate_weighted(|_| Complex64::new(1.0, 0.0), o, &[0.0, 1.0], &tight()).unwrap();
            assert_relative_eq!(v.re, 1.0 / (2.0 * nu + 2.0), max_relative = 1e-11);
        }
        let zero = integrate_halfline_weighted(|_| Complex64::new(0.0, 0.0), order(0.3), &tight(), 5.0).unwrap();
        assert_eq!(zero, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn truncation_tail_is_controlled() {
        let spec = QuadratureSpec::default();
        let o = order(0.4);
        let f = |y: f64| Complex64::new((-0.5 * y * y).exp(), 0.0);
        let radius = (-spec.tail_threshold().ln() / 0.5).sqrt() + 2.0;
        let a = integrate_halfline_weighted(f, o, &spec, radius).unwrap();
        let b = integrate_halfline_weighted(f, o, &spec, 2.0 * radius).unwrap();
        assert!((a - b).norm() <= spec.abs_tol);
    }

    #[test]
    fn jacobi_rule_integrates_moments() {
        // ∫(1-u)^α(1+u)^β u^k against closed-form Beta moments for k=0,1
        for (alpha, beta) in [(-0.5, -0.5), (0.7, 0.0), (-0.3, 1.2), (0.0, 0.0)] {
            let rule = jacobi_rule(alpha, beta, 12);
            let m0: f64 = rule.weights.iter().sum();
            assert_relative_eq!(m0, rule.mass, max_relative = 1e-13);
            let m1: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| x * w).sum();
            let want = rule.mass * (beta - alpha) / (alpha + beta + 2.0);
            assert!((m1 - want).abs() < 1e-13);
        }
        let legendre = jacobi_rule(0.0, 0.0, 2);
        assert!((legendre.nodes[1] - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let chebyshev = jacobi_rule(-0.5, -0.5, 5);
        for (i, x) in chebyshev.nodes.iter().enumerate() {
            let want = -((2 * i + 1) as f64 * PI / 10.0).cos();
            assert!((x - want).abs() < 1e-15);
            assert!((chebyshev.weights[i] - PI / 5.0).abs() < 1e-14);
        }
    }

    #[test]
    fn cosine_moments() {
        for nu in [-0.25, 0.0, 0.5, 1.7] {
            let o = order(nu);
            for n in 0..=8 {
                let got = theta_integral(|t| Complex64::new(t.cos().powi(n), 0.0), o, &tight()).unwrap();
                if n % 2 == 1 {
                    assert!(got.norm() < 1e-14);
                } else {
                    let nf = f64::from(n);
                    let want = (ln_gamma((nf + 1.0) / 2.0) + ln_gamma(nu + 0.5) - ln_gamma(nf / 2.0 + nu + 1.0)).exp();
                    assert_relative_eq!(got.re, want, max_relative = 1e-12);
                }
            }
        }
        let got = theta_integral(|_| Complex64::new(1.0, 0.0), order(0.5), &tight()).unwrap();
        assert_relative_eq!(got.re, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn window_matches_full_rule() {
        let o = order(0.3);
        let h = |u: f64| Complex64::new(if u > -0.2 { (u + 0.2).powi(3) } else { 0.0 }, 0.0);
        let (w, _) = gegenbauer_mean_window(h, o, -0.2, &tight()).unwrap();
        let a = o.nu() - 0.5;
        let spec = tight();
        let (direct, _) = integrate_finite(
            |u| if u < 1.0 { h(u) * (1.0 - u * u).powf(a) } else { Complex64::new(0.0, 0.0) },
            -0.2,
            1.0,
            &spec.with_tolerances(1e-12, 1e-14),
        )
        .unwrap();
        let mass = jacobi_mass(a, a);
        assert_relative_eq!(w.re, direct.re / mass, max_relative = 1e-9);
    }
}
