//! Chirp and dilation operators, the Levitan translation T_x^ν and its
//! chirped version T_x^{ν,m}, the triangle kernels W_ν and W_ν^m, and the
//! generalized convolution with the identities it satisfies.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::function::{Decay, RadialFunction, SampledRadialFunction};
use crate::quadrature::{self, QuadratureSpec};
use crate::sl2::SLMatrix;
use crate::specfun::{ln_gamma, Order};
use crate::transform::{self, ErrorTrap};

/// Rate a of the chirp e^{(ia/2)x²}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChirpRate(f64);

impl ChirpRate {
    pub fn new(a: f64) -> Result<Self> {
        if a.is_finite() {
            Ok(ChirpRate(a))
        } else {
            Err(Error::Validation(format!("chirp rate must be finite, got {a}")))
        }
    }

    pub fn rate(self) -> f64 {
        self.0
    }
}

/// L_a f(x) = e^{(ia/2)x²} f(x).
pub fn chirp_mul(a: ChirpRate, f: &RadialFunction) -> RadialFunction {
    let a = a.rate();
    let c = move |x: f64| Complex64::from_polar(1.0, 0.5 * a * x * x);
    let chirp = RadialFunction::new(c, Decay::Unknown)
        .with_derivatives(move |x| Complex64::new(0.0, a * x) * c(x), move |x| Complex64::new(-a * a * x * x, a) * c(x));
    f.multiply(&chirp, f.decay()).map_decay(Some(a), None)
}

/// D_a f(x) = |a|^{-(ν+1)} f(x/a).
pub fn dilate(a: f64, nu: Order, f: &RadialFunction) -> Result<RadialFunction> {
    if a == 0.0 || !a.is_finite() {
        return Err(Error::Domain(format!("dilation factor must be finite and nonzero, got {a}")));
    }
    let scale = a.abs().powf(-(nu.nu() + 1.0));
    let g = f.clone();
    let mut out = RadialFunction::new(move |x| scale * g.eval(x / a), f.decay());
    if f.has_derivatives() {
        let (g1, g2) = (f.clone(), f.clone());
        out = out.with_derivatives(
            move |x| scale / a * g1.deriv1(x / a).expect("checked"),
            move |x| scale / (a * a) * g2.deriv2(x / a).expect("checked"),
        );
    }
    if !f.is_smooth() {
        out = out.non_smooth();
    }
    Ok(out.map_decay(None, Some(a)))
}

/// Γ(ν+1) / (√π Γ(ν+1/2)), the reciprocal of ∫₀^π sin^{2ν}θ dθ.
pub fn translation_constant(nu: Order) -> f64 {
    (ln_gamma(nu.nu() + 1.0) - 0.5 * PI.ln() - ln_gamma(nu.nu() + 0.5)).exp()
}

/// Radius beyond which f can be treated as zero inside a translation.
fn reach(f: &RadialFunction, spec: &QuadratureSpec) -> Option<f64> {
    f.support().or_else(|| Some(f.decay_radius(spec.tail_threshold())).filter(|r| r.is_finite()))
}

/// Normalized θ-average of e^{i rate x y cos θ} f(√(x²+y²-2xy cos θ)). With
/// `rate` = None no phase factor is formed at all.
fn translation_mean(
    nu: Order,
    f: &RadialFunction,
    x: f64,
    y: f64,
    rate: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let (x, y) = (x.abs(), y.abs());
    if x == 0.0 {
        return Ok(f.eval(y));
    }
    if y == 0.0 {
        return Ok(f.eval(x));
    }
    let gap = (x - y) * (x - y);
    let xy2 = 2.0 * x * y;
    let distance = |u: f64| (gap + xy2 * (1.0 - u)).max(0.0).sqrt();
    let h = |u: f64| match rate {
        None => f.eval(distance(u)),
        Some(k) => Complex64::from_polar(1.0, k * x * y * u) * f.eval(distance(u)),
    };
    let window = match reach(f, spec) {
        Some(r) if r * r <= gap => return Ok(Complex64::new(0.0, 0.0)),
        Some(r) => 1.0 - (r * r - gap) / xy2,
        None => -1.0,
    };
    let (mean, _) = if window > -1.0 {
        quadrature::gegenbauer_mean_window(h, nu, window, spec)?
    } else {
        quadrature::gegenbauer_mean(h, nu, spec)?
    };
    Ok(mean)
}

/// T_x^ν f(y) = (Γ(ν+1)/(√π Γ(ν+1/2))) ∫₀^π f(√(x²+y²-2xy cos θ)) sin^{2ν}θ dθ.
pub fn classical_translate(nu: Order, f: &RadialFunction, x: f64, y: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    translation_mean(nu, f, x, y, None, spec)
}

/// T_x^{ν,m} f(y) = e^{(i/2)(d/b)(x²+y²)} T_x^ν[e^{-(i/2)(d/b)s²} f(s)](y), as one
/// θ-average with the chirps folded into e^{i(d/b)xy cos θ}.
pub fn translate(m: &SLMatrix, nu: Order, f: &RadialFunction, x: f64, y: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    let (d_over_b, _) = m.chirp_rates();
    translation_mean(nu, f, x, y, Some(d_over_b), spec)
}

/// y ↦ T_x^{ν,m} f(y) as a radial function. Evaluation errors are recorded
/// in `trap` and surface as NaN.
pub(crate) fn translated(
    m: &SLMatrix,
    nu: Order,
    f: &RadialFunction,
    x: f64,
    spec: &QuadratureSpec,
    trap: &ErrorTrap,
) -> RadialFunction {
    let decay = match (f.support(), reach(f, spec)) {
        (Some(r), _) => Decay::Compact { radius: x.abs() + r },
        (None, Some(r)) => Decay::Fixed { radius: x.abs() + r, chirp: 0.0 },
        (None, None) => Decay::Unknown,
    };
    let (m, f, spec, trap) = (*m, f.clone(), *spec, trap.clone());
    RadialFunction::new(move |y| trap.catch(translate(&m, nu, &f, x, y, &spec)), decay)
}

/// W_ν(x, y, z): zero off the triangle |x-y| < z < x+y, otherwise
/// C Δ^{2ν-1} / (xyz)^{2ν} with Δ the triangle area and
/// C = 2^{2ν-1} Γ(ν+1) / (√π Γ(ν+1/2)), which makes ∫ W_ν z^{2ν+1} dz = 1.
pub fn w_kernel_classical(nu: Order, x: f64, y: f64, z: f64) -> f64 {
    let (lo, hi) = ((x - y).abs(), x + y);
    if !(z > lo && z < hi) || x <= 0.0 || y <= 0.0 {
        return 0.0;
    }
    let n = nu.nu();
    let area = 0.25 * ((hi + z) * (hi - z) * (z - lo) * (z + lo)).sqrt();
    let log = (2.0 * n - 1.0) * std::f64::consts::LN_2 + (2.0 * n - 1.0) * area.ln() - 2.0 * n * (x * y * z).ln();
    translation_constant(nu) * log.exp()
}

/// W_ν^m(x, y, z) = e^{(i/2)(d/b)(x²+y²+z²)} W_ν(x, y, z).
pub fn w_kernel(m: &SLMatrix, nu: Order, x: f64, y: f64, z: f64) -> Complex64 {
    let (d_over_b, _) = m.chirp_rates();
    Complex64::from_polar(w_kernel_classical(nu, x, y, z), 0.5 * d_over_b * (x * x + y * y + z * z))
}

/// T_x^{ν,m} f(y) = ∫ W_ν^m(x, y, z) e^{-i(d/b)z²} f(z) z^{2ν+1} dz. The
/// edge factors ((x+y-z)(z-|x-y|))^{ν-1/2} are absorbed by a Gauss–Jacobi rule.
pub fn translate_via_kernel(
    m: &SLMatrix,
    nu: Order,
    f: &RadialFunction,
    x: f64,
    y: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let (x, y) = (x.abs(), y.abs());
    if x == 0.0 || y == 0.0 {
        return Ok(f.eval(x.max(y)));
    }
    let (d_over_b, _) = m.chirp_rates();
    let n = nu.nu();
    let (lo, hi) = ((x - y).abs(), x + y);
    let a = n - 0.5;
    if lo < 0.1 * hi {
        // near x = y the (z+|x-y|)^{ν-1/2} factor is singular too; in s = z²
        // both edge factors are Jacobi weights and the constants collapse to C
        let h = |v: f64| {
            let s = x * x + y * y + 2.0 * x * y * v;
            Complex64::from_polar(1.0, 0.5 * d_over_b * (x * x + y * y - s)) * f.eval(s.max(0.0).sqrt())
        };
        let (mean, _) = quadrature::gegenbauer_mean(h, nu, spec)?;
        return Ok(mean * translation_constant(nu) * quadrature::jacobi_mass(a, a));
    }
    let (mid, half) = (0.5 * (hi + lo), 0.5 * (hi - lo));
    // W_ν z^{2ν+1} with the edge factors removed
    let smooth = |z: f64| -> f64 {
        let log = (2.0 * n - 1.0) * std::f64::consts::LN_2 + (n - 0.5) * ((hi + z) * (z + lo)).ln()
            - (2.0 * n - 1.0) * 4f64.ln()
            - 2.0 * n * (x * y).ln()
            + z.ln();
        log.exp()
    };
    let h = |v: f64| {
        let z = mid + half * v;
        Complex64::from_polar(smooth(z), 0.5 * d_over_b * (x * x + y * y - z * z)) * f.eval(z)
    };
    let (mean, _) = quadrature::gegenbauer_mean(h, nu, spec)?;
    Ok(mean * translation_constant(nu) * quadrature::jacobi_mass(a, a) * half.powf(2.0 * n))
}

/// (f ∗_{ν,m} g)(x) = ∫₀^∞ T_x^{ν,m}f(y) e^{-i(d/b)y²} g(y) y^{2ν+1} dy.
pub fn convolve_at(
    m: &SLMatrix,
    nu: Order,
    f: &RadialFunction,
    g: &RadialFunction,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let (d_over_b, _) = m.chirp_rates();
    convolution_integral(nu, f, g, x, Some(d_over_b), spec)
}

/// Fourier–Bessel convolution ∫₀^∞ T_x^ν f(y) g(y) y^{2ν+1} dy.
pub fn classical_convolve_at(
    nu: Order,
    f: &RadialFunction,
    g: &RadialFunction,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    convolution_integral(nu, f, g, x, None, spec)
}

fn convolution_integral(
    nu: Order,
    f: &RadialFunction,
    g: &RadialFunction,
    x: f64,
    chirp: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let x = x.abs();
    let reach_f = reach(f, spec);
    let mut hi = g.integration_radius(spec);
    let mut lo = 0.0;
    if let Some(r) = reach_f {
        hi = hi.min(x + r);
        lo = (x - r).max(0.0);
    }
    if hi <= lo {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let d_over_b = chirp.unwrap_or(0.0);
    let rate = (d_over_b.abs() + chirp_of(f).abs() + chirp_of(g).abs()) * hi + modulation_of(f) + modulation_of(g);
    let mut breaks = quadrature::oscillation_breaks(lo, hi, rate, spec);
    if let Some(r) = reach_f {
        breaks.extend([x - r, x + r, r - x]);
    }
    if let Some(r) = g.support() {
        breaks.push(r);
    }
    let breaks = quadrature::merge_breaks(lo, hi, breaks);
    let trap = ErrorTrap::default();
    let value = quadrature::integrate_pieces(
        |y| {
            let t = trap.catch(translation_mean(nu, f, x, y, chirp, spec));
            let t = match chirp {
                Some(rate) => t * Complex64::from_polar(1.0, -rate * y * y),
                None => t,
            };
            t * g.eval(y) * quadrature::radial_weight(nu, y)
        },
        &breaks,
        spec,
    );
    trap.check()?;
    Ok(value?.0)
}

fn chirp_of(f: &RadialFunction) -> f64 {
    match f.decay() {
        Decay::Gaussian { chirp, .. } | Decay::Fixed { chirp, .. } => chirp,
        _ => 0.0,
    }
}

fn modulation_of(f: &RadialFunction) -> f64 {
    match f.decay() {
        Decay::Gaussian { modulation, .. } => modulation,
        _ => 0.0,
    }
}

/// f ∗_{ν,m} g sampled at `points`, evaluated in parallel.
pub fn convolve(
    m: &SLMatrix,
    nu: Order,
    f: &RadialFunction,
    g: &RadialFunction,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<SampledRadialFunction> {
    let values = points.par_iter().map(|&x| convolve_at(m, nu, f, g, x, spec)).collect::<Result<Vec<_>>>()?;
    SampledRadialFunction::new(points.to_vec(), values)
}

/// |∫ T_x f · e^{-i(d/b)y²} g − ∫ e^{-i(d/b)y²} f · T_x g|, both against y^{2ν+1}.
pub fn self_adjointness_residual(
    m: &SLMatrix,
    nu: Order,
    f: &RadialFunction,
    g: &RadialFunction,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let lhs = convolve_at(m, nu, f, g, x, spec)?;
    let rhs = convolve_at(m, nu, g, f, x, spec)?;
    Ok((lhs - rhs).norm())
}

/// |∫ T_x^ν f(y) y^{2ν+1} dy − ∫ f(y) y^{2ν+1} dy|.
pub fn mass_conservation_residual(nu: Order, f: &RadialFunction, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    let one = RadialFunction::constant(Complex64::new(1.0, 0.0)).with_decay(match reach(f, spec) {
        Some(r) => Decay::Fixed { radius: x.abs() + r, chirp: 0.0 },
        None => Decay::Unknown,
    });
    let translated = convolve_at(&SLMatrix::hankel(), nu, f, &one, x, spec)?;
    let radius = f.integration_radius(spec);
    let mut breaks = vec![0.0, radius];
    if let Some(r) = f.support() {
        breaks = quadrature::merge_breaks(0.0, r, (1..4).map(|i| r * f64::from(i) / 4.0));
    }
    let mass = quadrature::integrate_weighted(|y| f.eval(y), nu, &breaks, spec)?;
    Ok((translated - mass).norm())
}

/// |F^m[T_x^{ν,m⁻¹} f](λ) − e^{(i/2)(d/b)λ²} K_ν^{m⁻¹}(x, λ) F^m f(λ)|.
pub fn translate_transform_residual(
    m: &SLMatrix,
    nu: Order,
    f: &RadialFunction,
    x: f64,
    lambda: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let trap = ErrorTrap::default();
    let shifted = translated(&m.inverse(), nu, f, x, spec, &trap);
    let lhs = transform::forward_at(&shifted, m, nu, lambda, spec);
    trap.check()?;
    let lhs = lhs?;
    let (d_over_b, _) = m.chirp_rates();
    let rhs = Complex64::from_polar(1.0, 0.5 * d_over_b * lambda * lambda)
        * transform::kernel(&m.inverse(), nu, x, lambda)
        * transform::forward_at(f, m, nu, lambda, spec)?;
    Ok((lhs - rhs).norm())
}

/// |(c_ν/(ib)^{ν+1}) F^m(f ∗_{ν,m⁻¹} g)(x) − e^{-(i/2)(d/b)x²} F^m f(x) F^m g(x)| at
/// each point. The convolution is sampled once on a fixed grid and reused.
pub fn convolution_theorem_residuals(
    m: &SLMatrix,
    nu: Order,
    f: &RadialFunction,
    g: &RadialFunction,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<Vec<f64>> {
    let inv = m.inverse();
    let eps = spec.tail_threshold();
    let radius = f.integration_radius(spec) + g.integration_radius(spec);
    // the m⁻¹ convolution carries the chirp e^{-(i/2)(a/b)x²}; the rate only
    // sizes the panels
    let (d_over_b, a_over_b) = m.chirp_rates();
    let decay = Decay::Gaussian {
        rate: -eps.ln() / (radius - 2.0).max(1.0).powi(2),
        center: 0.0,
        chirp: -a_over_b,
        modulation: modulation_of(f) + modulation_of(g),
    };
    let product = transform::forward_on_nodes(|y| convolve_at(&inv, nu, f, g, y, spec), decay, m, nu, points, spec)?;
    let constant = transform::normalization_constant(m, nu);
    points
        .iter()
        .zip(product.values())
        .map(|(&x, lhs)| {
            let rhs = Complex64::from_polar(1.0, -0.5 * d_over_b * x * x)
                * transform::forward_at(f, m, nu, x, spec)?
                * transform::forward_at(g, m, nu, x, spec)?;
            Ok((constant * lhs - rhs).norm())
        })
        .collect()
}

/// Single-point form of [`convolution_theorem_residuals`].
pub fn convolution_theorem_residual(
    m: &SLMatrix,
    nu: Order,
    f: &RadialFunction,
    g: &RadialFunction,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    Ok(convolution_theorem_residuals(m, nu, f, g, &[x], spec)?[0])
}

/// Product-formula residual |T_x^{ν,m}[K(·,z)](y) − e^{-(i/2)(a/b)z²} K(x,z) K(y,z)|.
pub fn product_formula_residual(m: &SLMatrix, nu: Order, x: f64, y: f64, z: f64, spec: &QuadratureSpec) -> Result<f64> {
    let k = transform::kernel_as_function(m, nu, z);
    let lhs = translate(m, nu, &k, x, y, spec)?;
    let (_, a_over_b) = m.chirp_rates();
    let rhs =
        Complex64::from_polar(1.0, -0.5 * a_over_b * z * z) * transform::kernel(m, nu, x, z) * transform::kernel(m, nu, y, z);
    Ok((lhs - rhs).norm())
}
