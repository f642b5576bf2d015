//! Scalar special functions: ln Γ, the normalized Bessel function j_ν and its
//! derivatives, and the exponentially scaled modified variant e^{-u} j_ν(iu).
//!
//! Evaluation of j_ν on the real axis is split into three regimes:
//! power series for |x| ≤ [`SERIES_RADIUS`], Miller's backward recurrence up to
//! [`asymptotic_radius`], and the Hankel expansion beyond.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::{self, QuadratureSpec};

/// Largest |x| handled by the power series on the real axis.
pub const SERIES_RADIUS: f64 = 8.0;

/// Largest |u| for which e^{-u} j_ν(iu) is formed as e^{-u} times the plain series.
pub const SCALED_DIRECT_RADIUS: f64 = 30.0;

/// Beyond this |Im z| the value e^{|Im z|} no longer fits in a double.
const OVERFLOW_IM: f64 = 700.0;

/// Bessel order ν, restricted to ν > -1/2.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && nu > -0.5 {
            Ok(Order(nu))
        } else {
            Err(Error::Domain(format!("order must satisfy nu > -1/2, got {nu}")))
        }
    }

    pub fn nu(self) -> f64 {
        self.0
    }

    /// The order ν + k, used by the derivative identities.
    pub fn shifted(self, k: u32) -> Order {
        Order(self.0 + f64::from(k))
    }

    /// Exponent 2ν+1 of the radial measure y^{2ν+1} dy.
    pub fn weight_exponent(self) -> f64 {
        2.0 * self.0 + 1.0
    }
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(ln_gamma(x))
    } else {
        Err(Error::Domain(format!("log_gamma needs x > 0, got {x}")))
    }
}

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    log_gamma(x).map(f64::exp)
}

pub(crate) fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection keeps the Lanczos sum in its accurate range
        (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x)
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS[0];
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
    }
}

/// Neumaier-compensated accumulator for complex sums.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: Complex64) {
        self.sum.re = neumaier(self.sum.re, x.re, &mut self.carry.re);
        self.sum.im = neumaier(self.sum.im, x.im, &mut self.carry.im);
    }

    pub(crate) fn value(&self) -> Complex64 {
        self.sum + self.carry
    }
}

fn neumaier(sum: f64, x: f64, carry: &mut f64) -> f64 {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *carry += (sum - t) + x;
    } else {
        *carry += (x - t) + sum;
    }
    t
}

/// Σ (-w/4)^n / (n! (ν+1)_n) with w = z², compensated.
fn series(nu: f64, w: Complex64) -> Complex64 {
    let q = -w / 4.0;
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = CompensatedSum::default();
    acc.add(term);
    for n in 1..2000 {
        let n = n as f64;
        term *= q / (n * (n + nu));
        acc.add(term);
        if term.norm() <= 1e-17 * acc.value().norm() && n > 2.0 {
            break;
        }
    }
    acc.value()
}

/// Real-argument series; same recurrence in real arithmetic.
fn series_real(nu: f64, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let (mut sum, mut carry) = (1.0, 0.0);
    for n in 1..2000 {
        let n = n as f64;
        term *= q / (n * (n + nu));
        sum = neumaier(sum, term, &mut carry);
        if term.abs() <= 1e-17 * (sum + carry).abs() && n > 2.0 {
            break;
        }
    }
    sum + carry
}

/// Σ (u²/4)^n / (n! (ν+1)_n) = j_ν(iu); all terms positive.
fn modified_series(nu: f64, u: f64) -> f64 {
    let q = 0.25 * u * u;
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 1..4000 {
        let n = n as f64;
        term *= q / (n * (n + nu));
        sum += term;
        if term <= 1e-17 * sum {
            break;
        }
    }
    sum
}

/// Radius from which the Hankel large-argument expansion is used.
pub fn asymptotic_radius(order: Order) -> f64 {
    30.0 + order.nu() * order.nu()
}

/// Miller backward recurrence for j_ν(x), x > 0, normalized with the Neumann
/// identity Σ_k c_k J_{ν+2k}(x) = (x/2)^ν / Γ(ν+1).
fn miller(nu: f64, x: f64) -> f64 {
    let mut top = (1.2 * x + 30.0 + nu.max(0.0)).ceil() as usize;
    top += top % 2;
    let kmax = top / 2;

    // c_k = (ν+2k)/k · Π_{j<k} (ν+j)/j for k ≥ 1, c_0 = 1
    let mut prod = 1.0;
    for j in 1..kmax {
        prod *= (nu + j as f64) / j as f64;
    }
    let mut c = (nu + 2.0 * kmax as f64) / kmax as f64 * prod;

    let mut next = 0.0;
    let mut cur = 1e-280;
    let mut norm = c * cur;
    for idx in (0..top).rev() {
        let mu = nu + (idx + 1) as f64;
        let prev = 2.0 * mu / x * cur - next;
        next = cur;
        cur = prev;
        if idx % 2 == 0 {
            let k = idx / 2;
            c = if k == 0 {
                1.0
            } else {
                let kf = k as f64;
                c * (kf + 1.0) * (nu + 2.0 * kf) / ((nu + 2.0 * kf + 2.0) * (nu + kf))
            };
            norm += c * cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
        }
    }
    cur / norm
}

/// Hankel expansion of j_ν(z) for large |z| with Re z ≥ 0.
fn hankel_asymptotic(nu: f64, z: Complex64) -> Complex64 {
    let mu = 4.0 * nu * nu;
    let mut p = CompensatedSum::default();
    let mut q = CompensatedSum::default();
    p.add(Complex64::new(1.0, 0.0));
    let mut term = Complex64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (8.0 * k as f64 * z);
        let size = term.norm();
        if size > last {
            break;
        }
        last = size;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p.add(term * sign);
        } else {
            q.add(term * sign);
        }
        if size < 1e-17 {
            break;
        }
    }
    let omega = z - (0.5 * nu + 0.25) * PI;
    let bessel_j = (2.0 / (PI * z)).sqrt() * (p.value() * omega.cos() - q.value() * omega.sin());
    let scale = (ln_gamma(nu + 1.0) + nu * (2.0 / z).ln()).exp();
    bessel_j * scale
}

/// Cosine average (1/μ₀)∫(1-t²)^{ν-1/2} cos(z t) dt on a fixed Gauss–Jacobi rule.
fn mehler_fixed(nu: f64, z: Complex64) -> Complex64 {
    let n = if z.norm() <= 40.0 { 64 } else { 128 };
    let rule = quadrature::jacobi_rule(nu - 0.5, nu - 0.5, n);
    let mut acc = CompensatedSum::default();
    for (t, w) in rule.nodes.iter().zip(&rule.weights) {
        acc.add((z * t).cos() * *w);
    }
    acc.value() / rule.mass
}

/// j_ν(x) for real x.
pub fn j_nu_real(order: Order, x: f64) -> f64 {
    let nu = order.nu();
    let x = x.abs();
    if x <= SERIES_RADIUS {
        series_real(nu, x)
    } else if x < asymptotic_radius(order) {
        miller(nu, x)
    } else {
        hankel_asymptotic(nu, Complex64::new(x, 0.0)).re
    }
}

/// j_ν(z) = Σ (-1)^n Γ(ν+1)/(n! Γ(n+ν+1)) (z/2)^{2n}.
pub fn j_nu(order: Order, z: Complex64) -> Result<Complex64> {
    let nu = order.nu();
    if z.im == 0.0 {
        return Ok(Complex64::new(j_nu_real(order, z.re), 0.0));
    }
    if z.im.abs() > OVERFLOW_IM {
        return Err(Error::Overflow(format!("|Im z| = {} too large", z.im.abs())));
    }
    if z.re == 0.0 {
        let u = z.im.abs();
        let value = if u <= SCALED_DIRECT_RADIUS { modified_series(nu, u) } else { u.exp() * j_nu_scaled(order, u) };
        return Ok(Complex64::new(value, 0.0));
    }
    let zz = if z.re < 0.0 { -z } else { z };
    let r = z.norm();
    Ok(if r <= SERIES_RADIUS {
        series(nu, z * z)
    } else if r >= asymptotic_radius(order) {
        hankel_asymptotic(nu, zz)
    } else {
        mehler_fixed(nu, zz)
    })
}

/// j_ν'(z) = -z/(2(ν+1)) j_{ν+1}(z).
pub fn j_nu_deriv(order: Order, z: Complex64) -> Result<Complex64> {
    Ok(-z / (2.0 * (order.nu() + 1.0)) * j_nu(order.shifted(1), z)?)
}

/// j_ν''(z) from the derivative identity applied twice:
/// -j_{ν+1}(z)/(2(ν+1)) + z² j_{ν+2}(z)/(4(ν+1)(ν+2)).
pub fn j_nu_deriv2(order: Order, z: Complex64) -> Result<Complex64> {
    let nu = order.nu();
    let first = j_nu(order.shifted(1), z)? / (2.0 * (nu + 1.0));
    let second = z * z * j_nu(order.shifted(2), z)? / (4.0 * (nu + 1.0) * (nu + 2.0));
    Ok(second - first)
}

pub fn j_nu_deriv_real(order: Order, x: f64) -> f64 {
    -x / (2.0 * (order.nu() + 1.0)) * j_nu_real(order.shifted(1), x)
}

pub fn j_nu_deriv2_real(order: Order, x: f64) -> f64 {
    let nu = order.nu();
    x * x * j_nu_real(order.shifted(2), x) / (4.0 * (nu + 1.0) * (nu + 2.0)) - j_nu_real(order.shifted(1), x) / (2.0 * (nu + 1.0))
}

/// e^{-u} j_ν(iu), evaluated without forming e^{u}. Depends on |u| only.
pub fn j_nu_scaled(order: Order, u: f64) -> f64 {
    let nu = order.nu();
    let u = u.abs();
    if u <= SCALED_DIRECT_RADIUS {
        (-u).exp() * modified_series(nu, u)
    } else if u >= scaled_asymptotic_radius(order) {
        scaled_asymptotic(nu, u)
    } else {
        scaled_series(nu, u)
    }
}

fn scaled_asymptotic_radius(order: Order) -> f64 {
    50.0 + order.nu() * order.nu()
}

/// Scaled series anchored at its largest term: the peak term is formed in log
/// space with ln Γ, the rest by ratio recurrences outward.
pub(crate) fn scaled_series(nu: f64, u: f64) -> f64 {
    let q = 0.25 * u * u;
    let peak = (0.5 * ((nu * nu + u * u).sqrt() - nu - 1.0)).max(0.0).round();
    let log_peak = ln_gamma(nu + 1.0) - ln_gamma(peak + 1.0) - ln_gamma(peak + nu + 1.0) + 2.0 * peak * (0.5 * u).ln() - u;
    let peak_term = log_peak.exp();

    let mut upper = 0.0;
    let mut term = peak_term;
    let mut n = peak;
    loop {
        n += 1.0;
        term *= q / (n * (n + nu));
        upper += term;
        if term <= 1e-18 * peak_term {
            break;
        }
    }
    let mut lower = 0.0;
    let mut term = peak_term;
    let mut n = peak;
    while n > 0.0 {
        term *= n * (n + nu) / q;
        n -= 1.0;
        lower += term;
        if term <= 1e-18 * peak_term {
            break;
        }
    }
    lower + peak_term + upper
}

/// Large-u expansion: e^{-u} I_ν(u) √(2πu) = Σ (-1)^k a_k(ν)/u^k, then
/// j_ν(iu) = Γ(ν+1) (2/u)^ν I_ν(u).
pub(crate) fn scaled_asymptotic(nu: f64, u: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut sum = 1.0;
    let mut carry = 0.0;
    let mut term: f64 = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..400 {
        let odd = (2 * k - 1) as f64;
        term *= -(mu - odd * odd) / (8.0 * k as f64 * u);
        if term.abs() > last {
            break;
        }
        last = term.abs();
        sum = neumaier(sum, term, &mut carry);
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    let prefactor = (ln_gamma(nu + 1.0) + nu * (2.0 / u).ln()).exp() / (2.0 * PI * u).sqrt();
    prefactor * (sum + carry)
}

/// j_ν(x) through the Mehler integral, evaluated by adaptive Gauss–Jacobi
/// quadrature with weight (1-t²)^{ν-1/2}.
pub fn j_nu_mehler(order: Order, x: f64) -> Result<f64> {
    let spec = QuadratureSpec::default().with_tolerances(1e-12, 1e-13);
    let (mean, _) = quadrature::gegenbauer_mean(|t| Complex64::new((x * t).cos(), 0.0), order, &spec)?;
    Ok(mean.re)
}

/// Δ_ν[j_ν(y·)](x) + y² j_ν(yx), with both derivatives taken from the
/// order-raising identities.
pub fn bessel_ode_residual(order: Order, y: f64, x: f64) -> Complex64 {
    let z = y * x;
    let value = j_nu_real(order, z);
    let first = y * j_nu_deriv_real(order, z);
    let second = y * y * j_nu_deriv2_real(order, z);
    Complex64::new(second + order.weight_exponent() / x * first + y * y * value, 0.0)
}
