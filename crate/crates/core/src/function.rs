//! Radial (even) functions on [0, ∞): callables with optional analytic
//! derivatives and a decay hint, the sampled output type, and the test corpus.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::sl2::SLMatrix;

pub type ScalarFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// How fast |f(y)| falls off, used to pick truncation radii and panel counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// |f(y)| ≲ exp(-rate (y - center)²) for y beyond `center`; the function
    /// may carry a chirp e^{(i/2) chirp y²} and a cosine of frequency `modulation`.
    Gaussian { rate: f64, center: f64, chirp: f64, modulation: f64 },
    /// f vanishes for y ≥ radius.
    Compact { radius: f64 },
    /// Negligible beyond a fixed radius, possibly carrying a chirp e^{(i/2) chirp y²}.
    Fixed { radius: f64, chirp: f64 },
    /// No decay information.
    Unknown,
}

impl Decay {
    pub fn gaussian(rate: f64) -> Decay {
        Decay::Gaussian { rate, center: 0.0, chirp: 0.0, modulation: 0.0 }
    }

    /// Radius beyond which |f| stays below `eps`; infinite when unknown.
    pub fn radius(&self, eps: f64) -> f64 {
        match *self {
            Decay::Gaussian { rate, center, .. } => center + (-eps.ln() / rate).sqrt() + 2.0,
            Decay::Compact { radius } | Decay::Fixed { radius, .. } => radius,
            Decay::Unknown => f64::INFINITY,
        }
    }

    pub fn support(&self) -> Option<f64> {
        match *self {
            Decay::Compact { radius } => Some(radius),
            _ => None,
        }
    }

    /// Rough phase rate of the function itself at y (radians per unit length).
    pub fn phase_rate(&self, y: f64) -> f64 {
        match *self {
            Decay::Gaussian { chirp, modulation, .. } => chirp.abs() * y + modulation,
            Decay::Fixed { chirp, .. } => chirp.abs() * y,
            _ => 0.0,
        }
    }

    /// Decay of F^m f when f has a centred Gaussian hint: the transform is a
    /// Gaussian of complex rate 1/(4β'b²), β' = rate - (i/2)(chirp + a/b),
    /// shifted by the modulation frequency.
    pub fn after_transform(&self, m: &SLMatrix) -> Option<Decay> {
        match *self {
            Decay::Gaussian { rate, center: 0.0, chirp, modulation } => {
                let (d_over_b, a_over_b) = m.chirp_rates();
                let b2 = m.b() * m.b();
                let beta = Complex64::new(rate, -0.5 * (chirp + a_over_b));
                let q = 1.0 / (4.0 * beta);
                Some(Decay::Gaussian {
                    rate: q.re / b2,
                    center: modulation * m.b().abs(),
                    chirp: d_over_b - 2.0 * q.im / b2,
                    modulation: 0.0,
                })
            }
            _ => None,
        }
    }

    fn chirped(self, extra: f64) -> Decay {
        match self {
            Decay::Gaussian { rate, center, chirp, modulation } => {
                Decay::Gaussian { rate, center, chirp: chirp + extra, modulation }
            }
            Decay::Fixed { radius, chirp } => Decay::Fixed { radius, chirp: chirp + extra },
            other => other,
        }
    }

    fn dilated(self, a: f64) -> Decay {
        let a = a.abs();
        match self {
            Decay::Gaussian { rate, center, chirp, modulation } => {
                Decay::Gaussian { rate: rate / (a * a), center: center * a, chirp: chirp / (a * a), modulation: modulation / a }
            }
            Decay::Compact { radius } => Decay::Compact { radius: radius * a },
            Decay::Fixed { radius, chirp } => Decay::Fixed { radius: radius * a, chirp: chirp / (a * a) },
            Decay::Unknown => Decay::Unknown,
        }
    }
}

/// An even function represented by its values on [0, ∞).
#[derive(Clone)]
pub struct RadialFunction {
    eval: ScalarFn,
    deriv1: Option<ScalarFn>,
    deriv2: Option<ScalarFn>,
    decay: Decay,
    smooth: bool,
}

impl fmt::Debug for RadialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialFunction")
            .field("decay", &self.decay)
            .field("derivatives", &self.has_derivatives())
            .field("smooth", &self.smooth)
            .finish()
    }
}

impl RadialFunction {
    pub fn new(eval: impl Fn(f64) -> Complex64 + Send + Sync + 'static, decay: Decay) -> Self {
        RadialFunction { eval: Arc::new(eval), deriv1: None, deriv2: None, decay, smooth: true }
    }

    pub fn with_derivatives(
        mut self,
        deriv1: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        deriv2: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        self.deriv1 = Some(Arc::new(deriv1));
        self.deriv2 = Some(Arc::new(deriv2));
        self
    }

    /// Marks the function as only piecewise smooth (excluded from finite differencing).
    pub fn non_smooth(mut self) -> Self {
        self.smooth = false;
        self
    }

    pub fn with_decay(mut self, decay: Decay) -> Self {
        self.decay = decay;
        self
    }

    pub fn zero() -> Self {
        RadialFunction::new(|_| Complex64::new(0.0, 0.0), Decay::Compact { radius: 1.0 })
            .with_derivatives(|_| Complex64::new(0.0, 0.0), |_| Complex64::new(0.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        RadialFunction::new(move |_| c, Decay::Unknown)
            .with_derivatives(|_| Complex64::new(0.0, 0.0), |_| Complex64::new(0.0, 0.0))
    }

    /// f(|y|).
    #[inline]
    pub fn eval(&self, y: f64) -> Complex64 {
        (self.eval)(y.abs())
    }

    /// f'(y), odd extension.
    pub fn deriv1(&self, y: f64) -> Option<Complex64> {
        self.deriv1.as_ref().map(|d| if y < 0.0 { -d(-y) } else { d(y) })
    }

    /// f''(y), even extension.
    pub fn deriv2(&self, y: f64) -> Option<Complex64> {
        self.deriv2.as_ref().map(|d| d(y.abs()))
    }

    pub fn has_derivatives(&self) -> bool {
        self.deriv1.is_some() && self.deriv2.is_some()
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    pub fn decay(&self) -> Decay {
        self.decay
    }

    pub fn support(&self) -> Option<f64> {
        self.decay.support()
    }

    pub fn decay_radius(&self, eps: f64) -> f64 {
        self.decay.radius(eps)
    }

    /// Truncation radius for half-line integrals under `spec`.
    pub fn integration_radius(&self, spec: &QuadratureSpec) -> f64 {
        let r = self.decay.radius(spec.tail_threshold());
        if r.is_finite() {
            r
        } else {
            spec.default_truncation
        }
    }

    /// Pointwise product with another radial function; derivatives follow the
    /// product rule when both factors carry them.
    pub fn multiply(&self, other: &RadialFunction, decay: Decay) -> RadialFunction {
        let (f, g) = (self.clone(), other.clone());
        let mut out = RadialFunction::new(move |y| f.eval(y) * g.eval(y), decay);
        if self.has_derivatives() && other.has_derivatives() {
            let (f, g) = (self.clone(), other.clone());
            let (f2, g2) = (self.clone(), other.clone());
            out = out.with_derivatives(
                move |y| f.deriv1(y).unwrap() * g.eval(y) + f.eval(y) * g.deriv1(y).unwrap(),
                move |y| {
                    f2.deriv2(y).unwrap() * g2.eval(y)
                        + 2.0 * f2.deriv1(y).unwrap() * g2.deriv1(y).unwrap()
                        + f2.eval(y) * g2.deriv2(y).unwrap()
                },
            );
        }
        out.smooth = self.smooth && other.smooth;
        out
    }

    pub(crate) fn map_decay(mut self, extra_chirp: Option<f64>, dilation: Option<f64>) -> Self {
        if let Some(c) = extra_chirp {
            self.decay = self.decay.chirped(c);
        }
        if let Some(a) = dilation {
            self.decay = self.decay.dilated(a);
        }
        self
    }

    // ----- test corpus -----

    /// e^{-β y²}.
    pub fn gaussian(beta: f64) -> Result<Self> {
        Self::chirped_gaussian(beta, 0.0)
    }

    /// e^{(i/2) c y²} e^{-β y²}.
    pub fn chirped_gaussian(beta: f64, chirp: f64) -> Result<Self> {
        positive("beta", beta)?;
        if !chirp.is_finite() {
            return Err(Error::Validation("chirp must be finite".into()));
        }
        let k = Complex64::new(-beta, 0.5 * chirp);
        Ok(RadialFunction::new(move |y| (k * y * y).exp(), Decay::Gaussian { rate: beta, center: 0.0, chirp, modulation: 0.0 })
            .with_derivatives(
                move |y| 2.0 * k * y * (k * y * y).exp(),
                move |y| (2.0 * k + 4.0 * k * k * y * y) * (k * y * y).exp(),
            ))
    }

    /// exp(-1/(1-(y/R)²)) on [0, R), zero beyond.
    pub fn bump(radius: f64) -> Result<Self> {
        positive("R", radius)?;
        let r = radius;
        let parts = move |y: f64| -> Option<(f64, f64, f64)> {
            let s = y / r;
            if s >= 1.0 {
                return None;
            }
            let q = 1.0 - s * s;
            let value = (-1.0 / q).exp();
            if value == 0.0 {
                return None;
            }
            let phi = -2.0 * s / (r * q * q);
            let dphi = -2.0 / (r * r * q * q) - 8.0 * s * s / (r * r * q * q * q);
            Some((value, phi, dphi))
        };
        Ok(RadialFunction::new(move |y| Complex64::new(parts(y).map_or(0.0, |(v, _, _)| v), 0.0), Decay::Compact { radius })
            .with_derivatives(
                move |y| Complex64::new(parts(y).map_or(0.0, |(v, p, _)| v * p), 0.0),
                move |y| Complex64::new(parts(y).map_or(0.0, |(v, p, dp)| v * (p * p + dp)), 0.0),
            ))
    }

    /// Indicator of [0, R).
    pub fn boxcar(radius: f64) -> Result<Self> {
        positive("R", radius)?;
        Ok(RadialFunction::new(move |y| Complex64::new(if y < radius { 1.0 } else { 0.0 }, 0.0), Decay::Compact { radius })
            .non_smooth())
    }

    /// e^{-y²} cos(ω y).
    pub fn damped_cosine(omega: f64) -> Result<Self> {
        if !(omega.is_finite() && omega >= 0.0) {
            return Err(Error::Validation(format!("omega must be finite and >= 0, got {omega}")));
        }
        let w = omega;
        Ok(RadialFunction::new(
            move |y| Complex64::new((-y * y).exp() * (w * y).cos(), 0.0),
            Decay::Gaussian { rate: 1.0, center: 0.0, chirp: 0.0, modulation: omega },
        )
        .with_derivatives(
            move |y| {
                let g = (-y * y).exp();
                Complex64::new(g * (-2.0 * y * (w * y).cos() - w * (w * y).sin()), 0.0)
            },
            move |y| {
                let g = (-y * y).exp();
                Complex64::new(g * ((4.0 * y * y - 2.0 - w * w) * (w * y).cos() + 4.0 * w * y * (w * y).sin()), 0.0)
            },
        ))
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Validation(format!("{name} must be positive, got {v}")))
    }
}

/// Values of a radial function on a grid of nonnegative abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledRadialFunction {
    grid: Vec<f64>,
    values: Vec<Complex64>,
}

impl SampledRadialFunction {
    pub fn new(grid: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Validation("grid and values differ in length".into()));
        }
        if grid.first().is_some_and(|g| *g < 0.0) {
            return Err(Error::Validation("grid must be nonnegative".into()));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Validation("grid must be strictly increasing".into()));
        }
        Ok(SampledRadialFunction { grid, values })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.grid.iter().copied().zip(self.values.iter().copied())
    }

    /// max_i |self_i - other(x_i)|.
    pub fn sup_distance(&self, other: impl Fn(f64) -> Complex64) -> f64 {
        self.iter().map(|(x, v)| (v - other(x)).norm()).fold(0.0, f64::max)
    }

    /// Discrete ‖·‖_{p,ν} by the trapezoid rule on the grid (max for p = ∞).
    pub fn lp_norm(&self, p: f64, nu: crate::specfun::Order) -> f64 {
        if p.is_infinite() {
            return self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        }
        let e = nu.weight_exponent();
        let mut total = 0.0;
        for i in 1..self.grid.len() {
            let (x0, x1) = (self.grid[i - 1], self.grid[i]);
            let f0 = self.values[i - 1].norm().powf(p) * x0.powf(e);
            let f1 = self.values[i].norm().powf(p) * x1.powf(e);
            total += 0.5 * (x1 - x0) * (f0 + f1);
        }
        total.powf(1.0 / p)
    }

    /// Cubic spline through the samples, zero outside the grid. When the grid
    /// starts at 0 the slope there is clamped to zero (even function).
    pub fn interpolant(&self) -> Result<RadialFunction> {
        let n = self.grid.len();
        if n < 2 {
            return Err(Error::Validation("need at least two samples to interpolate".into()));
        }
        let x = self.grid.clone();
        let y = self.values.clone();
        let m = spline_second_derivatives(&x, &y);
        let last = x[n - 1];
        let first = x[0];
        Ok(RadialFunction::new(
            move |t| {
                if t < first || t > last {
                    return Complex64::new(0.0, 0.0);
                }
                let i = match x.binary_search_by(|p| p.total_cmp(&t)) {
                    Ok(i) => i.min(n - 2),
                    Err(i) => i.saturating_sub(1).min(n - 2),
                };
                let h = x[i + 1] - x[i];
                let a = (x[i + 1] - t) / h;
                let b = (t - x[i]) / h;
                y[i] * a + y[i + 1] * b + (m[i] * (a * a * a - a) + m[i + 1] * (b * b * b - b)) * (h * h / 6.0)
            },
            Decay::Compact { radius: last },
        ))
    }
}

/// Second derivatives of a cubic spline: clamped zero slope at x = 0,
/// natural elsewhere.
fn spline_second_derivatives(x: &[f64], y: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut diag = vec![0.0; n];
    let mut upper = vec![0.0; n];
    let mut lower = vec![0.0; n];
    let mut rhs = vec![zero; n];
    if x[0] == 0.0 {
        let h = x[1] - x[0];
        diag[0] = h / 3.0;
        upper[0] = h / 6.0;
        rhs[0] = (y[1] - y[0]) / h;
    } else {
        diag[0] = 1.0;
    }
    for i in 1..n - 1 {
        let (h0, h1) = (x[i] - x[i - 1], x[i + 1] - x[i]);
        lower[i] = h0 / 6.0;
        diag[i] = (h0 + h1) / 3.0;
        upper[i] = h1 / 6.0;
        rhs[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
    }
    diag[n - 1] = 1.0;
    // Thomas algorithm
    for i in 1..n {
        let w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        let prev = rhs[i - 1];
        rhs[i] -= prev * w;
    }
    let mut m = vec![zero; n];
    m[n - 1] = rhs[n - 1] / diag[n - 1];
    for i in (0..n - 1).rev() {
        m[i] = (rhs[i] - m[i + 1] * upper[i]) / diag[i];
    }
    m
}
