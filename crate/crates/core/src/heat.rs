//! Heat kernel G_t^{m⁻¹} of ∂_t u = σ Δ_ν^{m⁻¹} u, the source P_t^{m⁻¹}, the
//! semigroup u(t) = P_t ∗ f and the identities these satisfy.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::function::{Decay, RadialFunction, SampledRadialFunction};
use crate::quadrature::{self, QuadratureSpec};
use crate::sl2::SLMatrix;
use crate::specfun::{self, ln_gamma, Order};
use crate::transform::{self, ErrorTrap};
use crate::translation;

/// Conductivity σ and time t, both positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatConfig {
    sigma: f64,
    t: f64,
}

impl HeatConfig {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::Validation(format!("sigma must be positive, got {sigma}")));
        }
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::Validation(format!("t must be positive, got {t}")));
        }
        Ok(HeatConfig { sigma, t })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// 4σt.
    pub fn spread(&self) -> f64 {
        4.0 * self.sigma * self.t
    }

    fn at(&self, t: f64) -> Result<HeatConfig> {
        HeatConfig::new(self.sigma, t)
    }
}

/// 2 / (Γ(ν+1) (4σt)^{ν+1}).
pub fn amplitude(nu: Order, cfg: &HeatConfig) -> f64 {
    (std::f64::consts::LN_2 - ln_gamma(nu.nu() + 1.0) - (nu.nu() + 1.0) * cfg.spread().ln()).exp()
}

/// P_t^{m⁻¹}(x) = [2/Γ(ν+1)] (4σt)^{-(ν+1)} e^{-(i/2)(a/b)x² - x²/(4σt)}.
pub fn p_kernel(m: &SLMatrix, nu: Order, cfg: &HeatConfig, x: f64) -> Complex64 {
    let (_, a_over_b) = m.chirp_rates();
    Complex64::from_polar(amplitude(nu, cfg) * (-x * x / cfg.spread()).exp(), -0.5 * a_over_b * x * x)
}

/// P_t^{m⁻¹} as a radial function.
pub fn p_kernel_function(m: &SLMatrix, nu: Order, cfg: &HeatConfig) -> RadialFunction {
    let (_, a_over_b) = m.chirp_rates();
    let scale = amplitude(nu, cfg);
    let g = RadialFunction::chirped_gaussian(1.0 / cfg.spread(), -a_over_b).expect("spread is positive");
    let (g0, g1, g2) = (g.clone(), g.clone(), g.clone());
    RadialFunction::new(move |x| scale * g0.eval(x), g.decay())
        .with_derivatives(move |x| scale * g1.deriv1(x).expect("analytic"), move |x| scale * g2.deriv2(x).expect("analytic"))
}

/// Pieces of the closed form G = A E ĥ(u) with E = e^{-(i/2)(a/b)(x²+y²) - (x-y)²/(4σt)},
/// u = xy/(2σt) and ĥ(u) = e^{-u} j_ν(iu).
struct KernelParts {
    amplitude: f64,
    chirp: f64,
    tau: f64,
    e: Complex64,
    u: f64,
    scaled: f64,
    /// u/(2(ν+1)) e^{-u} j_{ν+1}(iu), so that ĥ' = q - ĥ.
    q: f64,
    /// e^{-u} j_{ν+1}(iu).
    scaled_next: f64,
}

impl KernelParts {
    fn new(m: &SLMatrix, nu: Order, cfg: &HeatConfig, x: f64, y: f64) -> Self {
        let (_, chirp) = m.chirp_rates();
        let tau = 2.0 * cfg.sigma * cfg.t;
        let u = x * y / tau;
        let e = Complex64::from_polar((-(x - y) * (x - y) / (2.0 * tau)).exp(), -0.5 * chirp * (x * x + y * y));
        let scaled_next = specfun::j_nu_scaled(nu.shifted(1), u);
        KernelParts {
            amplitude: amplitude(nu, cfg),
            chirp,
            tau,
            e,
            u,
            scaled: specfun::j_nu_scaled(nu, u),
            q: u / (2.0 * (nu.nu() + 1.0)) * scaled_next,
            scaled_next,
        }
    }

    fn value(&self) -> Complex64 {
        self.amplitude * self.e * self.scaled
    }
}

/// G_t^{m⁻¹}(x, y), evaluated through e^{-u} j_ν(iu) so nothing overflows.
pub fn heat_kernel(m: &SLMatrix, nu: Order, cfg: &HeatConfig, x: f64, y: f64) -> Complex64 {
    KernelParts::new(m, nu, cfg, x.abs(), y.abs()).value()
}

/// Chirp-free Fourier–Bessel heat kernel A e^{-(x-y)²/(4σt)} e^{-u} j_ν(iu).
pub fn classical_heat_kernel(nu: Order, cfg: &HeatConfig, x: f64, y: f64) -> f64 {
    let (x, y) = (x.abs(), y.abs());
    let tau = 2.0 * cfg.sigma * cfg.t;
    let magnitude = (-(x - y) * (x - y) / (2.0 * tau)).exp();
    amplitude(nu, cfg) * magnitude * specfun::j_nu_scaled(nu, x * y / tau)
}

/// [2/(Γ(ν+1)(4σt)^{ν+1})] e^{-(|x|-|y|)²/(4σt)}, an upper bound for |G_t(x, y)|.
pub fn heat_kernel_bound(nu: Order, cfg: &HeatConfig, x: f64, y: f64) -> f64 {
    let gap = x.abs() - y.abs();
    amplitude(nu, cfg) * (-gap * gap / cfg.spread()).exp()
}

/// ∂_t G = [(x²+y²)/(4σt²) - (ν+1)/t] G - (u/t) A E e^{-u} u j_{ν+1}(iu)/(2(ν+1)).
pub fn heat_kernel_dt(m: &SLMatrix, nu: Order, cfg: &HeatConfig, x: f64, y: f64) -> Complex64 {
    time_derivative_terms(m, nu, cfg, x, y).0
}

fn time_derivative_terms(m: &SLMatrix, nu: Order, cfg: &HeatConfig, x: f64, y: f64) -> (Complex64, f64) {
    let p = KernelParts::new(m, nu, cfg, x.abs(), y.abs());
    let t = cfg.t;
    let g = p.value();
    let bracket = (x * x + y * y) / (cfg.spread() * t) - (nu.nu() + 1.0) / t;
    let tail = (p.u / t) * p.amplitude * p.e * p.q;
    (bracket * g - tail, bracket.abs() * g.norm() + tail.norm())
}

/// G and its first two x-derivatives.
pub fn heat_kernel_x_derivatives(m: &SLMatrix, nu: Order, cfg: &HeatConfig, x: f64, y: f64) -> (Complex64, Complex64, Complex64) {
    let p = KernelParts::new(m, nu, cfg, x, y);
    let i = Complex64::i();
    let phi = -i * p.chirp * x - (x - y) / p.tau;
    let dphi = -i * p.chirp - 1.0 / p.tau;
    let du = y / p.tau;
    let h = p.scaled;
    let dh = p.q - h;
    let d2h = 2.0 * h - 2.0 * p.q - nu.weight_exponent() / (2.0 * (nu.nu() + 1.0)) * p.scaled_next;
    let base = p.amplitude * p.e;
    (base * h, base * (phi * h + du * dh), base * ((phi * phi + dphi) * h + 2.0 * phi * du * dh + du * du * d2h))
}

/// Δ_ν^{m⁻¹} applied to x ↦ G_t(x, y).
pub fn heat_kernel_delta(m: &SLMatrix, nu: Order, cfg: &HeatConfig, x: f64, y: f64) -> Complex64 {
    let (g, d1, d2) = heat_kernel_x_derivatives(m, nu, cfg, x, y);
    transform::delta_from_derivatives(&m.inverse(), nu, x, g, d1, d2)
}

/// |∂_t G - σ Δ_ν^{m⁻¹} G| relative to the size of the terms that cancel.
pub fn pde_residual(m: &SLMatrix, nu: Order, cfg: &HeatConfig, x: f64, y: f64) -> f64 {
    let (dt, scale) = time_derivative_terms(m, nu, cfg, x, y);
    let delta = cfg.sigma * heat_kernel_delta(m, nu, cfg, x, y);
    let scale = scale.max(delta.norm()).max(f64::MIN_POSITIVE);
    (dt - delta).norm() / scale
}

/// |(G_{t+h} - G_{t-h})/(2h) - ∂_t G|: the error of a centred time difference.
pub fn centered_difference_error(m: &SLMatrix, nu: Order, cfg: &HeatConfig, x: f64, y: f64, h: f64) -> Result<f64> {
    let later = heat_kernel(m, nu, &cfg.at(cfg.t + h)?, x, y);
    let earlier = heat_kernel(m, nu, &cfg.at(cfg.t - h)?, x, y);
    Ok(((later - earlier) / (2.0 * h) - heat_kernel_dt(m, nu, cfg, x, y)).norm())
}

/// Breakpoints around a peak of width √(4σt) centred at `center`.
fn peak_breaks(center: f64, width: f64) -> impl Iterator<Item = f64> {
    [0.5, 1.0, 2.0, 4.0, 8.0].into_iter().flat_map(move |k| [center - k * width, center + k * width]).chain([center])
}

/// Half-width beyond which e^{-r²/(4σt)} is below the tail threshold.
fn reach(cfg: &HeatConfig, spec: &QuadratureSpec) -> f64 {
    (cfg.spread() * -spec.tail_threshold().ln()).sqrt()
}

/// |∫₀^∞ e^{(i/2)(a/b)(x²+y²)} G_t(x, y) y^{2ν+1} dy - 1|.
pub fn heat_normalization_residual(m: &SLMatrix, nu: Order, cfg: &HeatConfig, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    let x = x.abs();
    let (_, a_over_b) = m.chirp_rates();
    let half = reach(cfg, spec);
    let (lo, hi) = ((x - half).max(0.0), x + half);
    let breaks = quadrature::merge_breaks(lo, hi, peak_breaks(x, cfg.spread().sqrt()));
    let value = quadrature::integrate_weighted(
        |y| Complex64::from_polar(1.0, 0.5 * a_over_b * (x * x + y * y)) * heat_kernel(m, nu, cfg, x, y),
        nu,
        &breaks,
        spec,
    )?;
    Ok((value - 1.0).norm())
}

/// |G_{t+s}(x, y) - ∫₀^∞ G_t(x, z) G_s(y, z) e^{i(a/b)z²} z^{2ν+1} dz|.
#[allow(clippy::too_many_arguments)]
pub fn semigroup_residual(
    m: &SLMatrix,
    nu: Order,
    sigma: f64,
    t: f64,
    s: f64,
    x: f64,
    y: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let (ct, cs) = (HeatConfig::new(sigma, t)?, HeatConfig::new(sigma, s)?);
    let (x, y) = (x.abs(), y.abs());
    let (_, a_over_b) = m.chirp_rates();
    let half = reach(&ct, spec).max(reach(&cs, spec));
    let (lo, hi) = ((x.min(y) - half).max(0.0), x.max(y) + half);
    let width = ct.spread().min(cs.spread()).sqrt();
    let breaks = quadrature::merge_breaks(lo, hi, peak_breaks(x, width).chain(peak_breaks(y, width)));
    let integral = quadrature::integrate_weighted(
        |z| heat_kernel(m, nu, &ct, x, z) * heat_kernel(m, nu, &cs, y, z) * Complex64::from_polar(1.0, a_over_b * z * z),
        nu,
        &breaks,
        spec,
    )?;
    let whole = heat_kernel(m, nu, &HeatConfig::new(sigma, t + s)?, x, y);
    Ok((whole - integral).norm())
}

/// u(t, x) = ∫₀^∞ G_t(x, y) e^{i(a/b)y²} f(y) y^{2ν+1} dy.
pub fn evolve_at(
    m: &SLMatrix,
    nu: Order,
    cfg: &HeatConfig,
    f: &RadialFunction,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let x = x.abs();
    let (_, a_over_b) = m.chirp_rates();
    let half = reach(cfg, spec);
    let lo = (x - half).max(0.0);
    let hi = (x + half).min(f.integration_radius(spec));
    if hi <= lo {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let chirp = match f.decay() {
        Decay::Gaussian { chirp, modulation, .. } => (0.5 * a_over_b + chirp).abs() + modulation / hi.max(1.0),
        _ => (0.5 * a_over_b).abs(),
    };
    let mut extra: Vec<f64> = peak_breaks(x, cfg.spread().sqrt()).collect();
    extra.extend(quadrature::oscillation_breaks(lo, hi, 2.0 * chirp * hi, spec));
    if let Some(r) = f.support() {
        extra.push(r);
    }
    let breaks = quadrature::merge_breaks(lo, hi, extra);
    quadrature::integrate_weighted(
        |y| heat_kernel(m, nu, cfg, x, y) * Complex64::from_polar(1.0, a_over_b * y * y) * f.eval(y),
        nu,
        &breaks,
        spec,
    )
}

/// u(t, ·) = S(t) f at `points`, evaluated in parallel.
pub fn evolve(
    m: &SLMatrix,
    nu: Order,
    sigma: f64,
    f: &RadialFunction,
    t: f64,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<SampledRadialFunction> {
    let cfg = HeatConfig::new(sigma, t)?;
    let values = points.par_iter().map(|&x| evolve_at(m, nu, &cfg, f, x, spec)).collect::<Result<Vec<_>>>()?;
    SampledRadialFunction::new(points.to_vec(), values)
}

/// x ↦ u(t, x) as a radial function; failures are recorded in `trap`.
pub(crate) fn evolved(
    m: &SLMatrix,
    nu: Order,
    cfg: &HeatConfig,
    f: &RadialFunction,
    spec: &QuadratureSpec,
    trap: &ErrorTrap,
) -> RadialFunction {
    let decay = Decay::Fixed { radius: f.integration_radius(spec) + reach(cfg, spec), chirp: 0.0 };
    let (m, cfg, f, spec, trap) = (*m, *cfg, f.clone(), *spec, trap.clone());
    RadialFunction::new(move |x| trap.catch(evolve_at(&m, nu, &cfg, &f, x, &spec)), decay)
}

/// Initial datum e^{-(i/2)(a/b)y²} e^{-y²/(4σ)} whose evolution is known in closed form.
pub fn golden_initial(m: &SLMatrix, sigma: f64) -> Result<RadialFunction> {
    let (_, a_over_b) = m.chirp_rates();
    RadialFunction::chirped_gaussian(1.0 / (4.0 * sigma), -a_over_b)
}

/// (1+t)^{-(ν+1)} e^{-(i/2)(a/b)x²} e^{-x²/(4σ(1+t))}, the evolution of [`golden_initial`].
pub fn golden_solution(m: &SLMatrix, nu: Order, sigma: f64, t: f64, x: f64) -> Complex64 {
    let (_, a_over_b) = m.chirp_rates();
    let magnitude = (-(nu.nu() + 1.0) * (1.0 + t).ln() - x * x / (4.0 * sigma * (1.0 + t))).exp();
    Complex64::from_polar(magnitude, -0.5 * a_over_b * x * x)
}

/// G_t^{m⁻¹}(x, y) computed as T_x^{ν,m⁻¹}[P_t^{m⁻¹}](y).
pub fn heat_kernel_via_translation(
    m: &SLMatrix,
    nu: Order,
    cfg: &HeatConfig,
    x: f64,
    y: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    translation::translate(&m.inverse(), nu, &p_kernel_function(m, nu, cfg), x, y, spec)
}

/// |∫₀^∞ e^{-δx²} j_ν(2rx) j_ν(2sx) x^{2ν+1} dx - (Γ(ν+1)/(2δ^{ν+1})) e^{-(r²+s²)/δ} j_ν(2irs/δ)|
/// relative to the closed form.
pub fn weber_schafheitlin_residual(
    nu: Order,
    delta: Complex64,
    r: Complex64,
    s: Complex64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(delta.re > 0.0) {
        return Err(Error::Domain(format!("Re δ must be positive, got {delta}")));
    }
    let i = Complex64::i();
    let closed = (ln_gamma(nu.nu() + 1.0).exp() / 2.0)
        * (-(nu.nu() + 1.0) * delta.ln()).exp()
        * (-(r * r + s * s) / delta).exp()
        * specfun::j_nu(nu, 2.0 * i * r * s / delta)?;

    // |j_ν(2rx)| ≤ e^{2|Im r| x}: cut where the Gaussian beats the growth
    let growth = 2.0 * (r.im.abs() + s.im.abs());
    let tail = -spec.tail_threshold().ln();
    let radius = (growth + (growth * growth + 4.0 * delta.re * tail).sqrt()) / (2.0 * delta.re) + 1.0;
    let rate = 2.0 * delta.im.abs() * radius + 2.0 * (r.norm() + s.norm());
    let breaks = quadrature::oscillation_breaks(0.0, radius, rate, spec);
    let trap = ErrorTrap::default();
    let integral = quadrature::integrate_weighted(
        |x| {
            let jr = trap.catch(specfun::j_nu(nu, 2.0 * r * x));
            let js = trap.catch(specfun::j_nu(nu, 2.0 * s * x));
            (-delta * x * x).exp() * jr * js
        },
        nu,
        &breaks,
        spec,
    );
    trap.check()?;
    Ok((integral? - closed).norm() / closed.norm())
}

/// (t^k/k!) σ^k (Δ_ν^{m⁻¹})^k f(x) for k = 0..=n, with the operator powers
/// taken spectrally.
pub fn taylor_terms(
    m: &SLMatrix,
    nu: Order,
    sigma: f64,
    f: &RadialFunction,
    x: f64,
    n: u32,
    spec: &QuadratureSpec,
) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut factorial = 1.0;
    for k in 0..=n {
        if k > 0 {
            factorial *= f64::from(k);
        }
        let power = transform::apply_delta_power_spectral(m, nu, f, k, &[x], spec)?.values()[0];
        let exponent = i32::try_from(k).map_err(|_| Error::Domain("order too large".into()))?;
        out.push(sigma.powi(exponent) * power / factorial);
    }
    Ok(out)
}

/// |u(t, x) - Σ_{k≤n} (t^k/k!) (σ Δ_ν^{m⁻¹})^k f(x)|.
#[allow(clippy::too_many_arguments)]
pub fn short_time_expansion_error(
    m: &SLMatrix,
    nu: Order,
    sigma: f64,
    f: &RadialFunction,
    x: f64,
    t: f64,
    n: u32,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let terms = taylor_terms(m, nu, sigma, f, x, n, spec)?;
    let exact = evolve_at(m, nu, &HeatConfig::new(sigma, t)?, f, x, spec)?;
    Ok(taylor_gap(exact, &terms, t))
}

/// |u - Σ t^k c_k| for precomputed coefficients c_k.
pub fn taylor_gap(exact: Complex64, terms: &[Complex64], t: f64) -> f64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = 1.0;
    for c in terms {
        sum += power * c;
        power *= t;
    }
    (exact - sum).norm()
}

/// ‖u(t, ·) - f‖_{2,ν}.
pub fn recovery_gap(m: &SLMatrix, nu: Order, sigma: f64, f: &RadialFunction, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    let cfg = HeatConfig::new(sigma, t)?;
    let trap = ErrorTrap::default();
    let u = evolved(m, nu, &cfg, f, spec, &trap);
    let (g, decay) = (f.clone(), u.decay());
    let diff = RadialFunction::new(move |x| u.eval(x) - g.eval(x), decay);
    let norm = quadrature::lp_norm(&diff, quadrature::NormParams::new(2.0, nu)?, spec);
    trap.check()?;
    norm
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

    #[test]
    fn kernel_at_zero_and_bound() {
        let m = SLMatrix::rotation(0.6).unwrap();
        let nu = order(0.4);
        let cfg = HeatConfig::new(0.7, 0.3).unwrap();
        for &x in &[0.0, 0.5, 2.0] {
            assert!((heat_kernel(&m, nu, &cfg, x, 0.0) - p_kernel(&m, nu, &cfg, x)).norm() < 1e-15);
        }
        for &(x, y) in &[(0.3, 2.0), (5.0, 5.1), (40.0, 41.0)] {
            assert!(heat_kernel(&m, nu, &cfg, x, y).norm() <= heat_kernel_bound(nu, &cfg, x, y) * (1.0 + 1e-12));
        }
        assert!(HeatConfig::new(-1.0, 1.0).is_err() && HeatConfig::new(1.0, 0.0).is_err());
    }

    #[test]
    fn large_time_limit() {
        let m = SLMatrix::rotation(1.0).unwrap();
        let nu = order(0.9);
        let cfg = HeatConfig::new(1.0, 1e6).unwrap();
        let (_, a_over_b) = m.chirp_rates();
        let expected = amplitude(nu, &cfg) * Complex64::from_polar(1.0, -a_over_b);
        let got = heat_kernel(&m, nu, &cfg, 1.0, 1.0);
        assert!((got - expected).norm() < 1e-6 * expected.norm());
    }

    #[test]
    fn source_has_unit_mass() {
        let m = SLMatrix::rotation(0.8).unwrap();
        let nu = order(1.3);
        let cfg = HeatConfig::new(0.5, 0.4).unwrap();
        let p = p_kernel_function(&m, nu, &cfg);
        let mass = quadrature::integrate_halfline_weighted(
            |y| Complex64::new(p.eval(y).norm(), 0.0),
            nu,
            &tight(),
            p.integration_radius(&tight()),
        )
        .unwrap();
        assert_relative_eq!(mass.re, 1.0, max_relative = 1e-11);
    }

    #[test]
    fn source_transform_factorizes() {
        let m = SLMatrix::rotation(PI / 5.0).unwrap();
        let nu = order(0.2);
        let cfg = HeatConfig::new(0.6, 0.25).unwrap();
        let (d_over_b, _) = m.chirp_rates();
        let p = p_kernel_function(&m, nu, &cfg);
        let constant = transform::normalization_constant(&m, nu);
        for &x in &[0.0, 0.7, 1.5] {
            let got = Complex64::from_polar(1.0, -0.5 * d_over_b * x * x)
                * transform::forward_at(&p, &m, nu, x, &tight()).unwrap()
                / constant;
            let want = (-cfg.sigma() * cfg.t() * x * x / (m.b() * m.b())).exp();
            assert!((got - want).norm() < 1e-10, "x={x}: {got}");
        }
    }

    #[test]
    fn normalization() {
        let m = SLMatrix::rotation(1.2).unwrap();
        let nu = order(0.6);
        let cfg = HeatConfig::new(1.0, 0.1).unwrap();
        assert!(heat_normalization_residual(&m, nu, &cfg, 0.0, &tight()).unwrap() < 1e-10);
        assert!(heat_normalization_residual(&m, nu, &cfg, 2.0, &tight()).unwrap() < 1e-8);
        let sharp = HeatConfig::new(1.0, 0.01).unwrap();
        assert!(heat_normalization_residual(&m, nu, &sharp, 5.0, &tight()).unwrap() < 1e-7);
    }

    #[test]
    fn semigroup() {
        let m = SLMatrix::rotation(0.7).unwrap();
        let nu = order(0.3);
        for &(t, s, x, y) in &[(0.2, 0.2, 1.0, 1.0), (0.1, 0.35, 0.0, 0.0), (0.5, 0.05, 2.0, 1.4)] {
            let whole = heat_kernel(&m, nu, &HeatConfig::new(0.8, t + s).unwrap(), x, y).norm();
            let r = semigroup_residual(&m, nu, 0.8, t, s, x, y, &tight()).unwrap();
            assert!(r <= 1e-7 * whole + 1e-12, "{t} {s} {x} {y}: {r}");
        }
    }

    #[test]
    fn pde_holds() {
        let m = SLMatrix::rotation(PI / 4.0).unwrap();
        let nu = order(0.8);
        let cfg = HeatConfig::new(1.0, 0.2).unwrap();
        assert!(pde_residual(&m, nu, &cfg, 1.0, 0.5) < 1e-12);
        assert!(pde_residual(&m, nu, &cfg, 0.7, 0.0) < 1e-12);
        assert!(pde_residual(&m, nu, &cfg, 0.0, 0.9) < 1e-12);
        let small = HeatConfig::new(1.0, 1e-3).unwrap();
        assert!(pde_residual(&m, nu, &small, 5.0, 5.02) < 1e-10);
    }

    #[test]
    fn x_derivatives_match_differences() {
        let m = SLMatrix::rotation(0.9).unwrap();
        let nu = order(0.45);
        let cfg = HeatConfig::new(0.5, 0.3).unwrap();
        let (x, y, h) = (0.8, 1.1, 1e-4);
        let (_, d1, d2) = heat_kernel_x_derivatives(&m, nu, &cfg, x, y);
        let g = |x| heat_kernel(&m, nu, &cfg, x, y);
        let fd1 = (g(x + h) - g(x - h)) / (2.0 * h);
        let fd2 = (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
        assert!((d1 - fd1).norm() < 1e-7 && (d2 - fd2).norm() < 1e-5);
    }

    #[test]
    fn golden_evolution() {
        let m = SLMatrix::rotation(1.0).unwrap();
        let nu = order(0.5);
        let sigma = 0.5;
        let f = golden_initial(&m, sigma).unwrap();
        let points = [0.0, 1.0, 2.5, 4.0];
        let u = evolve(&m, nu, sigma, &f, 0.5, &points, &tight()).unwrap();
        for (x, v) in u.iter() {
            let want = golden_solution(&m, nu, sigma, 0.5, x);
            assert!((v - want).norm() < 1e-9 * want.norm(), "x={x}: {v} vs {want}");
        }
        let zero = evolve(&m, nu, sigma, &RadialFunction::zero(), 0.5, &points, &tight()).unwrap();
        assert!(zero.values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn translation_route_matches_closed_form() {
        let m = SLMatrix::rotation(0.4).unwrap();
        let nu = order(1.1);
        let cfg = HeatConfig::new(0.9, 0.15).unwrap();
        for &(x, y) in &[(0.5, 0.9), (1.5, 1.2), (0.0, 0.3)] {
            let a = heat_kernel(&m, nu, &cfg, x, y);
            let b = heat_kernel_via_translation(&m, nu, &cfg, x, y, &tight()).unwrap();
            assert!((a - b).norm() < 1e-10 * amplitude(nu, &cfg), "{x} {y}: {a} vs {b}");
        }
    }

    #[test]
    fn weber_schafheitlin() {
        let spec = tight();
        let one = Complex64::new(1.0, 0.0);
        let re = |v: f64| Complex64::new(v, 0.0);
        assert!(weber_schafheitlin_residual(order(0.3), one, re(0.8), re(0.0), &spec).unwrap() < 1e-10);
        assert!(weber_schafheitlin_residual(order(0.5), one, re(0.5), re(0.5), &spec).unwrap() < 1e-10);
        let delta = Complex64::new(1.0, 0.5);
        assert!(weber_schafheitlin_residual(order(0.8), delta, re(0.7), re(0.3), &spec).unwrap() < 1e-9);
        assert!(weber_schafheitlin_residual(order(0.8), re(-1.0), re(0.7), re(0.3), &spec).is_err());
    }

    #[test]
    fn short_time_first_order() {
        let m = SLMatrix::rotation(0.8).unwrap();
        let nu = order(0.3);
        let sigma = 0.5;
        let f = RadialFunction::gaussian(1.0).unwrap();
        let t = 1e-3;
        let x = 0.6;
        let err = short_time_expansion_error(&m, nu, sigma, &f, x, t, 0, &QuadratureSpec::default()).unwrap();
        let predicted = t * sigma * transform::apply_delta(&m.inverse(), nu, &f, x).unwrap().norm();
        assert!((err - predicted).abs() < 0.1 * predicted, "{err} vs {predicted}");
    }
}
