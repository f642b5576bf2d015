//! The canonical Fourier–Bessel transform F_ν^m, its kernel and inverse, the
//! chirped Bessel operator Δ_ν^m and spectral powers of it.

use std::f64::consts::FRAC_PI_2;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::function::{Decay, RadialFunction, SampledRadialFunction};
use crate::quadrature::{self, QuadratureSpec};
use crate::sl2::SLMatrix;
use crate::specfun::{self, Order};

/// Gauss–Legendre points per panel in [`forward_on_nodes`].
const NODE_ORDER: usize = 20;
/// Largest radius tried when probing the decay of a transform.
const PROBE_LIMIT: f64 = 512.0;

/// c_ν = 1 / (2^ν Γ(ν+1)).
pub fn c_nu(nu: Order) -> f64 {
    (-(nu.nu() * std::f64::consts::LN_2 + specfun::ln_gamma(nu.nu() + 1.0))).exp()
}

/// c_ν / (ib)^{ν+1} with (ib)^{ν+1} = exp((ν+1)(ln|b| + i sign(b) π/2)).
pub fn normalization_constant(m: &SLMatrix, nu: Order) -> Complex64 {
    let b = m.b();
    let log = Complex64::new(b.abs().ln(), b.signum() * FRAC_PI_2);
    (-(nu.nu() + 1.0) * log).exp() * c_nu(nu)
}

/// K_ν^m(x, y) = e^{(i/2)((d/b)x² + (a/b)y²)} j_ν(xy/b).
pub fn kernel(m: &SLMatrix, nu: Order, x: f64, y: f64) -> Complex64 {
    let (d_over_b, a_over_b) = m.chirp_rates();
    let chirp = Complex64::from_polar(1.0, 0.5 * (d_over_b * x * x + a_over_b * y * y));
    chirp * specfun::j_nu_real(nu, x * y / m.b())
}

/// Breakpoints for ∫₀^R K(x, y) f(y) y^{2ν+1} dy, resolving the phase of the
/// integrand up to |x| ≤ `x_span`.
fn kernel_breaks(f: &RadialFunction, m: &SLMatrix, x_span: f64, spec: &QuadratureSpec) -> Vec<f64> {
    let radius = f.integration_radius(spec);
    let (_, a_over_b) = m.chirp_rates();
    let rate = residual_chirp(f.decay(), a_over_b) * radius + x_span / m.b().abs() + modulation(f.decay());
    quadrature::oscillation_breaks(0.0, radius, rate, spec)
}

fn residual_chirp(decay: Decay, kernel_chirp: f64) -> f64 {
    match decay {
        Decay::Gaussian { chirp, .. } | Decay::Fixed { chirp, .. } => (kernel_chirp + chirp).abs(),
        _ => kernel_chirp.abs(),
    }
}

fn modulation(decay: Decay) -> f64 {
    match decay {
        Decay::Gaussian { modulation, .. } => modulation,
        _ => 0.0,
    }
}

fn kernel_integral_span(
    f: &RadialFunction,
    m: &SLMatrix,
    nu: Order,
    x: f64,
    x_span: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let breaks = kernel_breaks(f, m, x_span, spec);
    quadrature::integrate_weighted(|y| kernel(m, nu, x, y) * f.eval(y), nu, &breaks, spec)
}

/// ∫₀^∞ K_ν^m(x, y) f(y) y^{2ν+1} dy, without the normalization constant.
pub fn kernel_integral(f: &RadialFunction, m: &SLMatrix, nu: Order, x: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    kernel_integral_span(f, m, nu, x, x.abs(), spec)
}

/// (F_ν^m f)(x).
pub fn forward_at(f: &RadialFunction, m: &SLMatrix, nu: Order, x: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    Ok(normalization_constant(m, nu) * kernel_integral(f, m, nu, x, spec)?)
}

/// F_ν^m f sampled at `points`; points are evaluated in parallel.
pub fn forward(
    f: &RadialFunction,
    m: &SLMatrix,
    nu: Order,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<SampledRadialFunction> {
    let values = points.par_iter().map(|&x| forward_at(f, m, nu, x, spec)).collect::<Result<Vec<_>>>()?;
    SampledRadialFunction::new(points.to_vec(), values)
}

/// F_ν^{m⁻¹} g.
pub fn inverse(
    g: &RadialFunction,
    m: &SLMatrix,
    nu: Order,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<SampledRadialFunction> {
    forward(g, &m.inverse(), nu, points, spec)
}

/// The chirp-free integral ∫₀^∞ j_ν(xy) f(y) y^{2ν+1} dy, on the same panels
/// the canonical transform uses for m = (0, 1; -1, 0).
pub fn hankel_integral(f: &RadialFunction, nu: Order, x: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    let breaks = kernel_breaks(f, &SLMatrix::hankel(), x.abs(), spec);
    quadrature::integrate_weighted(|y| specfun::j_nu_real(nu, x * y) * f.eval(y), nu, &breaks, spec)
}

/// Classical Fourier–Bessel transform c_ν ∫₀^∞ j_ν(xy) f(y) y^{2ν+1} dy.
pub fn hankel_transform_at(f: &RadialFunction, nu: Order, x: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    Ok(c_nu(nu) * hankel_integral(f, nu, x, spec)?)
}

/// Decay hint for F^m f: propagated exactly for centred Gaussians, otherwise
/// found by probing |F^m f(y)| y^{2ν+1} on doubling intervals. The probed
/// hint keeps the e^{(i/2)(d/b)y²} chirp every transform carries.
pub fn transform_decay(f: &RadialFunction, m: &SLMatrix, nu: Order, spec: &QuadratureSpec) -> Result<Decay> {
    if let Some(decay) = f.decay().after_transform(m) {
        return Ok(decay);
    }
    let (d_over_b, _) = m.chirp_rates();
    let scale = forward_at(f, m, nu, 0.0, spec)?.norm();
    let threshold = spec.abs_tol.max(spec.rel_tol * scale);
    let mut radius = 4.0;
    while radius < PROBE_LIMIT {
        let mut tail = 0.0f64;
        for i in 0..=8 {
            let y = radius * (1.0 + f64::from(i) / 8.0);
            tail = tail.max(forward_at(f, m, nu, y, spec)?.norm() * quadrature::radial_weight(nu, y) * y);
        }
        if tail < threshold {
            return Ok(Decay::Fixed { radius, chirp: d_over_b });
        }
        radius *= 2.0;
    }
    Ok(Decay::Fixed { radius: PROBE_LIMIT, chirp: d_over_b })
}

/// Collects the first error raised inside a closure that has to return a
/// plain value; callers check it after the outer computation.
#[derive(Clone, Default)]
pub(crate) struct ErrorTrap(Arc<Mutex<Option<Error>>>);

impl ErrorTrap {
    pub(crate) fn catch(&self, value: Result<Complex64>) -> Complex64 {
        value.unwrap_or_else(|e| {
            let mut slot = self.0.lock().expect("error trap poisoned");
            slot.get_or_insert(e);
            Complex64::new(f64::NAN, f64::NAN)
        })
    }

    pub(crate) fn check(&self) -> Result<()> {
        match self.0.lock().expect("error trap poisoned").take() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}

/// F_ν^m f as a lazily evaluated radial function; every evaluation runs one
/// quadrature. Failed evaluations yield NaN, which downstream integrals report.
pub fn transformed(f: &RadialFunction, m: &SLMatrix, nu: Order, spec: &QuadratureSpec) -> Result<RadialFunction> {
    let decay = transform_decay(f, m, nu, spec)?;
    let (f, m, spec) = (f.clone(), *m, *spec);
    Ok(RadialFunction::new(move |x| forward_at(&f, &m, nu, x, &spec).unwrap_or(Complex64::new(f64::NAN, f64::NAN)), decay))
}

/// F_ν^m g at `points` for a g that is expensive to evaluate: g is sampled
/// once on a composite Gauss–Legendre grid over [0, R] and the samples are
/// reused for every point. The grid is doubled until two levels agree.
pub fn forward_on_nodes<G>(
    g: G,
    decay: Decay,
    m: &SLMatrix,
    nu: Order,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<SampledRadialFunction>
where
    G: Fn(f64) -> Result<Complex64> + Sync,
{
    let radius = match decay.radius(spec.tail_threshold()) {
        r if r.is_finite() => r,
        _ => spec.default_truncation,
    };
    let x_max = points.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let (_, a_over_b) = m.chirp_rates();
    let rate = residual_chirp(decay, a_over_b) * radius + x_max / m.b().abs() + modulation(decay);
    let mut panels = ((radius * rate / std::f64::consts::PI).ceil() as usize).max(8);
    let constant = normalization_constant(m, nu);

    // each level returns the values and a bound on the error carried in from
    // the samples of g themselves
    let level = |panels: usize| -> Result<(Vec<Complex64>, f64)> {
        let breaks: Vec<f64> = (0..=panels).map(|i| radius * i as f64 / panels as f64).collect();
        let nodes = quadrature::composite_legendre(&breaks, NODE_ORDER);
        let samples = nodes
            .par_iter()
            .map(|&(y, w)| {
                let value = g(y)?;
                let weight = w * quadrature::radial_weight(nu, y);
                Ok((value * weight, spec.tolerance(value) * weight.abs()))
            })
            .collect::<Result<Vec<_>>>()?;
        let carried = constant.norm() * samples.iter().map(|(_, e)| e).sum::<f64>();
        let values = points
            .iter()
            .map(|&x| {
                let mut acc = specfun::CompensatedSum::default();
                for ((y, _), (s, _)) in nodes.iter().zip(&samples) {
                    acc.add(kernel(m, nu, x, *y) * s);
                }
                constant * acc.value()
            })
            .collect();
        Ok((values, carried))
    };

    let (mut coarse, _) = level(panels)?;
    let mut worst = (0.0f64, 0.0f64);
    for _ in 0..4 {
        panels *= 2;
        let (fine, carried) = level(panels)?;
        worst = (0.0, f64::INFINITY);
        let mut converged = true;
        for (f, c) in fine.iter().zip(&coarse) {
            let (diff, tol) = ((f - c).norm(), spec.tolerance(*f) + 2.0 * carried);
            converged &= diff <= tol;
            worst = (worst.0.max(diff), worst.1.min(tol));
        }
        if converged {
            return SampledRadialFunction::new(points.to_vec(), fine);
        }
        coarse = fine;
    }
    Err(Error::NonConvergent { estimate: worst.0, tolerance: worst.1 })
}

/// F^{m⁻¹} F^m f at `points`.
pub fn round_trip(
    f: &RadialFunction,
    m: &SLMatrix,
    nu: Order,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<SampledRadialFunction> {
    let decay = transform_decay(f, m, nu, spec)?;
    forward_on_nodes(|y| forward_at(f, m, nu, y, spec), decay, &m.inverse(), nu, points, spec)
}

/// x ↦ K_ν^m(x, y) with analytic first and second derivatives.
pub fn kernel_as_function(m: &SLMatrix, nu: Order, y: f64) -> RadialFunction {
    let m = *m;
    let (d_over_b, a_over_b) = m.chirp_rates();
    let s = y / m.b();
    let rate = Complex64::new(0.0, d_over_b);
    let chirp = move |x: f64| Complex64::from_polar(1.0, 0.5 * (d_over_b * x * x + a_over_b * y * y));
    RadialFunction::new(move |x| kernel(&m, nu, x, y), Decay::Unknown).with_derivatives(
        move |x| {
            let z = x * s;
            chirp(x) * (rate * x * specfun::j_nu_real(nu, z) + s * specfun::j_nu_deriv_real(nu, z))
        },
        move |x| {
            let z = x * s;
            let c = rate * x;
            chirp(x)
                * ((rate + c * c) * specfun::j_nu_real(nu, z)
                    + 2.0 * c * s * specfun::j_nu_deriv_real(nu, z)
                    + s * s * specfun::j_nu_deriv2_real(nu, z))
        },
    )
}

/// (Δ_ν^m f)(x) = f'' + ((2ν+1)/x - 2i(d/b)x) f' - ((d/b)² x² + 2i(ν+1)(d/b)) f,
/// with the limit (2ν+2) f''(0) - 2i(ν+1)(d/b) f(0) at x = 0.
pub fn apply_delta(m: &SLMatrix, nu: Order, f: &RadialFunction, x: f64) -> Result<Complex64> {
    let (Some(d1), Some(d2)) = (f.deriv1(x), f.deriv2(x)) else {
        return Err(Error::MissingDerivatives);
    };
    Ok(delta_from_derivatives(m, nu, x, f.eval(x), d1, d2))
}

pub(crate) fn delta_from_derivatives(
    m: &SLMatrix,
    nu: Order,
    x: f64,
    value: Complex64,
    d1: Complex64,
    d2: Complex64,
) -> Complex64 {
    let (k, _) = m.chirp_rates();
    let n1 = nu.nu() + 1.0;
    let i = Complex64::i();
    if x == 0.0 {
        return 2.0 * n1 * d2 - 2.0 * i * n1 * k * value;
    }
    d2 + (nu.weight_exponent() / x - 2.0 * i * k * x) * d1 - (k * k * x * x + 2.0 * i * n1 * k) * value
}

/// |Δ_ν^m K(·, y)(x) + (y²/b²) K(x, y)|.
pub fn kernel_eigen_residual(m: &SLMatrix, nu: Order, x: f64, y: f64) -> f64 {
    let k = kernel_as_function(m, nu, y);
    let lhs = apply_delta(m, nu, &k, x).expect("kernel carries derivatives");
    (lhs + (y * y / (m.b() * m.b())) * k.eval(x)).norm()
}

/// (Δ_ν^{m⁻¹})^k f at `points`, as F^{m⁻¹}[(-y²/b²)^k F^m f].
pub fn apply_delta_power_spectral(
    m: &SLMatrix,
    nu: Order,
    f: &RadialFunction,
    k: u32,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<SampledRadialFunction> {
    if k == 0 {
        return SampledRadialFunction::new(points.to_vec(), points.iter().map(|&x| f.eval(x)).collect());
    }
    let decay = transform_decay(f, m, nu, spec)?;
    let b2 = m.b() * m.b();
    let exponent = i32::try_from(k).map_err(|_| Error::Domain(format!("power {k} too large")))?;
    forward_on_nodes(|y| Ok(forward_at(f, m, nu, y, spec)? * (-y * y / b2).powi(exponent)), decay, &m.inverse(), nu, points, spec)
}

/// |F^m[y² f](x) + b² Δ_ν^m[F^m f](x)|, with Δ applied to F^m f through a
/// five-point stencil of step 1e-3 (1 + x).
pub fn operational_identity_residual(m: &SLMatrix, nu: Order, f: &RadialFunction, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !f.is_smooth() {
        return Err(Error::MissingSmoothness);
    }
    let g = f.clone();
    let weighted = RadialFunction::new(move |y| y * y * g.eval(y), f.decay());
    let lhs = forward_at(&weighted, m, nu, x, spec)?;

    let h = 1e-3 * (1.0 + x);
    let span = x + 2.0 * h;
    let constant = normalization_constant(m, nu);
    let mut stencil = [Complex64::new(0.0, 0.0); 5];
    for (j, slot) in stencil.iter_mut().enumerate() {
        let xj = x + (j as f64 - 2.0) * h;
        *slot = constant * kernel_integral_span(f, m, nu, xj, span, spec)?;
    }
    let [fm2, fm1, f0, fp1, fp2] = stencil;
    let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    let delta = delta_from_derivatives(m, nu, x, f0, d1, d2);
    Ok((lhs + m.b() * m.b() * delta).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn order(nu: f64) -> Order {
        Order::new(nu).unwrap()
    }

    fn tight() -> QuadratureSpec {
        QuadratureSpec::default().with_tolerances(1e-12, 1e-14)
    }

    /// (ib)^{-(ν+1)} e^{(i/2)(d/b)x²} e^{-x²/(2b²)}.
    fn gaussian_image(m: &SLMatrix, nu: Order, x: f64) -> Complex64 {
        let (d_over_b, _) = m.chirp_rates();
        normalization_constant(m, nu) / c_nu(nu)
            * Complex64::from_polar(1.0, 0.5 * d_over_b * x * x)
            * (-x * x / (2.0 * m.b() * m.b())).exp()
    }

    #[test]
    fn normalization_examples() {
        let hankel = SLMatrix::hankel();
        let c = normalization_constant(&hankel, order(0.0));
        assert!((c - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        let flipped = SLMatrix::new(0.0, -1.0, 1.0, 0.0).unwrap();
        let c = normalization_constant(&flipped, order(0.0));
        assert!((c - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let c = normalization_constant(&hankel, order(0.5));
        let expected = c_nu(order(0.5)) * Complex64::new((0.75 * PI).cos(), -(0.75 * PI).sin());
        assert!((c - expected).norm() < 1e-15);
        assert_relative_eq!(c_nu(order(0.5)), 1.0 / (2f64.sqrt() * 0.5 * PI.sqrt()), max_relative = 1e-14);
    }

    #[test]
    fn kernel_examples() {
        let m = SLMatrix::new(1.0, 2.0, 0.5, 2.0).unwrap();
        let nu = order(0.3);
        let at_zero = kernel(&m, nu, 0.0, 1.7);
        assert!((at_zero - Complex64::from_polar(1.0, 0.25 * 1.7 * 1.7)).norm() < 1e-15);
        let h = kernel(&SLMatrix::hankel(), nu, 1.3, 2.1);
        assert_eq!(h, Complex64::new(specfun::j_nu_real(nu, 1.3 * 2.1), 0.0));

        let phi = PI / 4.0;
        let r = SLMatrix::rotation(phi).unwrap();
        let (x, y) = (1.0, 2.0);
        let arg = x * y / phi.sin();
        let expected = Complex64::from_polar(1.0, 0.5 * (x * x + y * y) / phi.tan()) * (arg.sin() / arg);
        assert!((kernel(&r, order(0.5), x, y) - expected).norm() < 1e-14);
    }

    #[test]
    fn chirped_gaussian_closed_form() {
        for &(nu, phi) in &[(0.0, PI / 3.0), (0.5, PI / 4.0), (1.7, 1.2)] {
            let nu = order(nu);
            let m = SLMatrix::rotation(phi).unwrap();
            let (_, a_over_b) = m.chirp_rates();
            let f = RadialFunction::chirped_gaussian(0.5, -a_over_b).unwrap();
            for &x in &[0.0, 0.4, 1.1, 2.5] {
                let got = forward_at(&f, &m, nu, x, &tight()).unwrap();
                let want = gaussian_image(&m, nu, x);
                assert!((got - want).norm() <= 1e-9 * want.norm().max(1e-3), "nu={nu:?} x={x}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn zero_function_transforms_to_zero() {
        let s = forward(&RadialFunction::zero(), &SLMatrix::hankel(), order(0.2), &[0.0, 1.0, 3.0], &tight()).unwrap();
        assert!(s.values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn box_against_trapezoid_oracle() {
        // ∫₀¹ J₀(y) y dy by a 10⁶-interval trapezoid rule, x = 1
        let n = 1_000_000;
        let h = 1.0 / n as f64;
        let nu = order(0.0);
        let mut sum = 0.5 * specfun::j_nu_real(nu, 1.0);
        for i in 1..n {
            let y = i as f64 * h;
            sum += specfun::j_nu_real(nu, y) * y;
        }
        let oracle = sum * h;
        let f = RadialFunction::boxcar(1.0).unwrap();
        let got = hankel_integral(&f, nu, 1.0, &tight()).unwrap();
        assert!((got.re - oracle).abs() < 1e-9 && got.im == 0.0);
        // closed form J₁(1) = 0.4400505857449335
        assert_relative_eq!(got.re, 0.4400505857449335, max_relative = 1e-12);
    }

    #[test]
    fn hankel_case_is_bitwise_classical() {
        let f = RadialFunction::damped_cosine(1.5).unwrap();
        let nu = order(0.8);
        for &x in &[0.0, 0.7, 2.2] {
            let a = kernel_integral(&f, &SLMatrix::hankel(), nu, x, &tight()).unwrap();
            let b = hankel_integral(&f, nu, x, &tight()).unwrap();
            assert_eq!(a.re, b.re);
            assert_eq!(a.im, b.im);
        }
    }

    #[test]
    fn inverse_undoes_forward() {
        let m = SLMatrix::new(1.0, 2.0, 0.5, 2.0).unwrap();
        let nu = order(0.4);
        let f = RadialFunction::chirped_gaussian(0.8, 0.3).unwrap();
        let points: Vec<f64> = (0..12).map(|i| 0.25 * i as f64).collect();
        let back = round_trip(&f, &m, nu, &points, &tight()).unwrap();
        assert!(back.sup_distance(|x| f.eval(x)) < 1e-8);
    }

    #[test]
    fn delta_examples() {
        let hankel = SLMatrix::hankel();
        let one = RadialFunction::constant(Complex64::new(1.0, 0.0));
        for &x in &[0.0, 0.5, 3.0] {
            assert_eq!(apply_delta(&hankel, order(0.3), &one, x).unwrap(), Complex64::new(0.0, 0.0));
        }
        let g = RadialFunction::gaussian(1.0).unwrap();
        let got = apply_delta(&hankel, order(0.5), &g, 1.0).unwrap();
        assert_relative_eq!(got.re, -2.0 * (-1.0f64).exp(), max_relative = 1e-14);
        assert!(matches!(
            apply_delta(&hankel, order(0.5), &RadialFunction::boxcar(1.0).unwrap(), 0.3),
            Err(Error::MissingDerivatives)
        ));
    }

    #[test]
    fn kernel_is_an_eigenfunction() {
        let m = SLMatrix::new(1.0, 2.0, 0.5, 2.0).unwrap();
        for &(nu, x, y) in &[(0.0, 0.3, 1.0), (1.3, 2.0, 4.0), (-0.2, 4.5, 0.7), (0.5, 0.0, 2.0)] {
            let r = kernel_eigen_residual(&m, order(nu), x, y);
            assert!(r <= 1e-9 * (1.0 + y * y / 4.0), "nu={nu} x={x} y={y}: {r}");
        }
    }

    #[test]
    fn spectral_power_matches_analytic_delta() {
        let m = SLMatrix::rotation(PI / 3.0).unwrap();
        let nu = order(0.6);
        let f = RadialFunction::chirped_gaussian(0.7, 0.4).unwrap();
        let points = [0.0, 0.5, 1.3, 2.0];
        let zero = apply_delta_power_spectral(&m, nu, &f, 0, &points, &tight()).unwrap();
        assert_eq!(zero.values()[2], f.eval(1.3));
        let one = apply_delta_power_spectral(&m, nu, &f, 1, &points, &tight()).unwrap();
        for (x, v) in one.iter() {
            let direct = apply_delta(&m.inverse(), nu, &f, x).unwrap();
            assert!((v - direct).norm() < 1e-7, "x={x}: {v} vs {direct}");
        }
    }

    #[test]
    fn operational_identity() {
        let m = SLMatrix::rotation(0.9).unwrap();
        let nu = order(0.25);
        let (_, a_over_b) = m.chirp_rates();
        let f = RadialFunction::chirped_gaussian(0.5, -a_over_b).unwrap();
        assert!(operational_identity_residual(&m, nu, &f, 0.7, &tight()).unwrap() < 1e-5);
        assert!(operational_identity_residual(&m, nu, &RadialFunction::zero(), 0.7, &tight()).unwrap() == 0.0);
        assert!(matches!(
            operational_identity_residual(&m, nu, &RadialFunction::boxcar(1.0).unwrap(), 0.7, &tight()),
            Err(Error::MissingSmoothness)
        ));
    }
}
