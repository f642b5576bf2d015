//! Registry of numerical property checks and the `verify` report.
//!
//! Each check draws its random inputs from a ChaCha stream selected by its id,
//! so a report depends only on the seed (and `runtime_ms`).

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::{RadialFunction, SampledRadialFunction};
use crate::heat::{self, HeatConfig};
use crate::quadrature::{self, NormParams, QuadratureSpec};
use crate::sl2::SLMatrix;
use crate::specfun::{self, Order};
use crate::transform::{self, ErrorTrap};
use crate::translation;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyEntry {
    pub check_id: String,
    pub paper_anchor: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub runtime_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub version: u32,
    pub entries: Vec<VerifyEntry>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }

    pub fn entry(&self, id: &str) -> Option<&VerifyEntry> {
        self.entries.iter().find(|e| e.check_id == id)
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Check ids to run; `None` runs everything.
    pub selection: Option<Vec<String>>,
    pub seed: u64,
    pub spec: QuadratureSpec,
    /// Replaces the registered tolerance of the named checks.
    pub tolerance_overrides: BTreeMap<String, f64>,
}

struct Check {
    id: &'static str,
    anchor: &'static str,
    tolerance: f64,
    run: fn(&mut Ctx) -> Result<f64>,
}

struct Ctx {
    rng: ChaCha8Rng,
    spec: QuadratureSpec,
}

impl Ctx {
    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    fn sign(&mut self) -> f64 {
        if self.rng.gen_bool(0.5) {
            1.0
        } else {
            -1.0
        }
    }

    fn order(&mut self) -> Order {
        Order::new(self.uniform(-0.45, 2.0)).expect("drawn above -1/2")
    }

    /// General SL(2, ℝ) element with |a|, |b| bounded away from zero.
    fn matrix(&mut self) -> SLMatrix {
        let a = self.sign() * self.uniform(0.5, 1.5);
        let b = self.sign() * self.uniform(0.5, 1.5);
        let c = self.uniform(-1.0, 1.0);
        SLMatrix::new(a, b, c, (1.0 + b * c) / a).expect("determinant one by construction")
    }

    fn rotation(&mut self) -> SLMatrix {
        let phi = self.sign() * self.uniform(0.4, PI - 0.4);
        SLMatrix::rotation(phi).expect("sin phi is nonzero")
    }
}

const CHECKS: &[Check] = &[
    Check {
        id: "hankel.reduction",
        anchor: "m = (0,1;-1,0) reduces every operator to its chirp-free Fourier-Bessel form",
        tolerance: 1e-10,
        run: hankel_reduction,
    },
    Check {
        id: "heat.budget_agreement",
        anchor: "semigroup solution is independent of the quadrature budget",
        tolerance: 1e-8,
        run: heat_budget_agreement,
    },
    Check {
        id: "heat.golden_evolution",
        anchor: "evolution of the sigma-matched chirped Gaussian in closed form",
        tolerance: 1e-7,
        run: heat_golden_evolution,
    },
    Check {
        id: "heat.kernel_bound",
        anchor: "heat kernel modulus bound by the Gaussian envelope",
        tolerance: 1e-12,
        run: heat_kernel_bound,
    },
    Check {
        id: "heat.normalization",
        anchor: "heat kernel integrates to one against the chirped weight",
        tolerance: 1e-8,
        run: heat_normalization,
    },
    Check { id: "heat.pde", anchor: "heat kernel solves the chirped heat equation", tolerance: 1e-8, run: heat_pde },
    Check {
        id: "heat.recovery",
        anchor: "semigroup solution tends to the initial datum as t -> 0",
        tolerance: 1e-3,
        run: heat_recovery,
    },
    Check {
        id: "heat.semigroup",
        anchor: "Chapman-Kolmogorov identity G_{t+s} = G_t * G_s",
        tolerance: 1e-7,
        run: heat_semigroup,
    },
    Check {
        id: "heat.taylor_slope",
        anchor: "first-order short-time expansion has quadratic remainder",
        tolerance: 0.2,
        run: heat_taylor_slope,
    },
    Check {
        id: "heat.time_difference_slope",
        anchor: "centered time difference of the kernel converges at second order",
        tolerance: 0.1,
        run: heat_time_difference_slope,
    },
    Check { id: "heat.two_route", anchor: "heat kernel equals the translated source", tolerance: 1e-9, run: heat_two_route },
    Check {
        id: "heat.weber_schafheitlin",
        anchor: "Gaussian integral of a product of two normalized Bessel functions",
        tolerance: 1e-8,
        run: heat_weber_schafheitlin,
    },
    Check {
        id: "specfun.bounds",
        anchor: "|j(x)| <= 1 and e^{-x} j(ix) <= 1 on the real line",
        tolerance: 1e-14,
        run: specfun_bounds,
    },
    Check {
        id: "specfun.ode_residual",
        anchor: "normalized Bessel differential equation",
        tolerance: 1e-8,
        run: specfun_ode_residual,
    },
    Check {
        id: "specfun.regime_agreement",
        anchor: "evaluation regimes agree with the Mehler integral across each switch",
        tolerance: 1e-10,
        run: specfun_regime_agreement,
    },
    Check {
        id: "transform.babenko_p2",
        anchor: "L2 bound of the transform (p = 2 Babenko instance)",
        tolerance: 1e-6,
        run: transform_babenko,
    },
    Check {
        id: "transform.gaussian_closed_form",
        anchor: "transform of the chirped Gaussian (sup-norm relative)",
        tolerance: 1e-8,
        run: transform_gaussian_closed_form,
    },
    Check {
        id: "transform.kernel_eigen",
        anchor: "kernel is an eigenfunction of the chirped Bessel operator",
        tolerance: 1e-8,
        run: transform_kernel_eigen,
    },
    Check {
        id: "transform.operational_identity",
        anchor: "transform intertwines multiplication by x^2 with the chirped Bessel operator",
        tolerance: 1e-5,
        run: transform_operational_identity,
    },
    Check {
        id: "transform.reversibility",
        anchor: "inverse transform undoes the forward transform",
        tolerance: 1e-6,
        run: transform_reversibility,
    },
    Check {
        id: "transform.spectral_power",
        anchor: "operator powers through the transform agree with direct differentiation",
        tolerance: 1e-6,
        run: transform_spectral_power,
    },
    Check {
        id: "translation.commutativity",
        anchor: "translations in different shifts commute",
        tolerance: 1e-8,
        run: translation_commutativity,
    },
    Check {
        id: "translation.compact_support",
        anchor: "translate of a compactly supported function vanishes off |x-y| < R",
        tolerance: 0.0,
        run: translation_compact_support,
    },
    Check {
        id: "translation.contraction",
        anchor: "translation is a contraction in L1 and L2",
        tolerance: 1e-8,
        run: translation_contraction,
    },
    Check {
        id: "translation.convolution_theorem",
        anchor: "transform turns convolution into a chirped product",
        tolerance: 1e-6,
        run: translation_convolution_theorem,
    },
    Check {
        id: "translation.kernel_route",
        anchor: "translation through the triangle kernel matches the angular mean",
        tolerance: 1e-9,
        run: translation_kernel_route,
    },
    Check {
        id: "translation.product_formula",
        anchor: "product formula for the kernel under translation",
        tolerance: 1e-8,
        run: translation_product_formula,
    },
    Check {
        id: "translation.self_adjointness",
        anchor: "translation is self-adjoint and conserves mass",
        tolerance: 1e-7,
        run: translation_self_adjointness,
    },
    Check {
        id: "translation.small_shift",
        anchor: "small translations converge to the identity in sup norm",
        tolerance: 1e-3,
        run: translation_small_shift,
    },
    Check {
        id: "translation.transform_identity",
        anchor: "transform of a translate is a kernel multiple of the transform",
        tolerance: 1e-6,
        run: translation_transform_identity,
    },
    Check {
        id: "translation.young",
        anchor: "Young inequality for (1,1,1), (1,2,2) and (2,2,inf)",
        tolerance: 1e-6,
        run: translation_young,
    },
];

/// Ids of every registered check, sorted.
pub fn check_ids() -> Vec<&'static str> {
    let mut ids: Vec<_> = CHECKS.iter().map(|c| c.id).collect();
    ids.sort_unstable();
    ids
}

/// Runs the selected checks (all when `selection` is `None`) with the default
/// quadrature budget. Unknown ids are a [`Error::Validation`].
pub fn run_verify(selection: Option<Vec<String>>, seed: u64) -> Result<VerifyReport> {
    run_verify_with(&VerifyOptions { selection, seed, ..VerifyOptions::default() })
}

pub fn run_verify_with(options: &VerifyOptions) -> Result<VerifyReport> {
    let selected: Vec<&Check> = match &options.selection {
        None => CHECKS.iter().collect(),
        Some(ids) => ids
            .iter()
            .map(|id| CHECKS.iter().find(|c| c.id == id).ok_or_else(|| Error::Validation(format!("unknown check id {id:?}"))))
            .collect::<Result<_>>()?,
    };
    let mut entries: Vec<VerifyEntry> = selected
        .par_iter()
        .map(|check| {
            let tolerance = options.tolerance_overrides.get(check.id).copied().unwrap_or(check.tolerance);
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
            rng.set_stream(stream_id(check.id));
            let mut ctx = Ctx { rng, spec: options.spec };
            let start = Instant::now();
            let outcome = (check.run)(&mut ctx);
            let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
            // JSON has no infinities; failures to evaluate report f64::MAX
            let max_error = match outcome {
                Ok(e) if e.is_finite() => e,
                _ => f64::MAX,
            };
            VerifyEntry {
                check_id: check.id.to_string(),
                paper_anchor: check.anchor.to_string(),
                max_error,
                tolerance,
                pass: max_error <= tolerance,
                runtime_ms,
            }
        })
        .collect();
    entries.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    entries.dedup_by(|a, b| a.check_id == b.check_id);
    Ok(VerifyReport { version: 1, entries })
}

/// FNV-1a of the id, so a check's draws do not move when others are added.
fn stream_id(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// max that keeps NaN, so a failed evaluation cannot pass as zero error.
fn worse(acc: f64, v: f64) -> f64 {
    if v.is_nan() || acc.is_nan() {
        f64::NAN
    } else {
        acc.max(v)
    }
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, worse)
}

/// Least-squares slope of log(err) against log(step).
fn loglog_slope(steps: &[f64], errors: &[f64]) -> f64 {
    let n = steps.len() as f64;
    let xs: Vec<f64> = steps.iter().map(|s| s.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

/// Smooth test functions used across checks.
fn smooth_corpus() -> Vec<RadialFunction> {
    vec![
        RadialFunction::gaussian(0.8).expect("valid"),
        RadialFunction::chirped_gaussian(0.5, 0.6).expect("valid"),
        RadialFunction::bump(2.0).expect("valid"),
        RadialFunction::damped_cosine(1.5).expect("valid"),
    ]
}

/// (ib)^{-(ν+1)} e^{(i/2)(d/b)x²} e^{-x²/(2b²)}, the image of e^{-(i/2)(a/b)x² - x²/2}.
pub fn gaussian_image(m: &SLMatrix, nu: Order, x: f64) -> Complex64 {
    let (d_over_b, _) = m.chirp_rates();
    transform::normalization_constant(m, nu) / transform::c_nu(nu)
        * Complex64::from_polar(1.0, 0.5 * d_over_b * x * x)
        * (-x * x / (2.0 * m.b() * m.b())).exp()
}

/// Transform of the chirped Gaussian against [`gaussian_image`] at 50 points on
/// [0, 4]. Returns (max pointwise relative error, sup-norm relative error).
pub fn gaussian_closed_form_errors(nu: Order, phi: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let m = SLMatrix::rotation(phi)?;
    let (_, a_over_b) = m.chirp_rates();
    let f = RadialFunction::chirped_gaussian(0.5, -a_over_b)?;
    let points = grid(0.0, 4.0, 50);
    let got = transform::forward(&f, &m, nu, &points, spec)?;
    let want: Vec<Complex64> = points.iter().map(|&x| gaussian_image(&m, nu, x)).collect();
    let pointwise = max_of(got.values().iter().zip(&want).map(|(g, w)| (g - w).norm() / w.norm()));
    let scale = max_of(want.iter().map(|w| w.norm()));
    let sup = max_of(got.values().iter().zip(&want).map(|(g, w)| (g - w).norm())) / scale;
    Ok((pointwise, sup))
}

fn hankel_reduction(ctx: &mut Ctx) -> Result<f64> {
    let hankel = SLMatrix::hankel();
    let spec = ctx.spec;
    let mut worst = 0.0f64;
    let mut bitwise = true;
    let corpus = smooth_corpus();
    for _ in 0..4 {
        let nu = ctx.order();
        let x = ctx.uniform(0.0, 3.0);
        let y = ctx.uniform(0.0, 3.0);
        for f in &corpus {
            bitwise &= transform::kernel_integral(f, &hankel, nu, x, &spec)? == transform::hankel_integral(f, nu, x, &spec)?;
            let phase = Complex64::new(0.0, 1.0).powf(-(nu.nu() + 1.0));
            let numeric =
                transform::forward_at(f, &hankel, nu, x, &spec)? - phase * transform::hankel_transform_at(f, nu, x, &spec)?;
            worst = worse(worst, numeric.norm());
            bitwise &=
                translation::translate(&hankel, nu, f, x, y, &spec)? == translation::classical_translate(nu, f, x, y, &spec)?;
        }
        let (f, g) = (&corpus[0], &corpus[2]);
        bitwise &=
            translation::convolve_at(&hankel, nu, f, g, x, &spec)? == translation::classical_convolve_at(nu, f, g, x, &spec)?;
        let cfg = HeatConfig::new(ctx.uniform(0.3, 1.5), ctx.uniform(0.05, 1.0))?;
        let g = heat::heat_kernel(&hankel, nu, &cfg, x, y);
        bitwise &= g.re == heat::classical_heat_kernel(nu, &cfg, x, y) && g.im == 0.0;
        let k = transform::kernel(&hankel, nu, x, y);
        bitwise &= k == Complex64::new(specfun::j_nu_real(nu, x * y), 0.0);
    }
    Ok(if bitwise { worst } else { 1.0 })
}

fn heat_budget_agreement(ctx: &mut Ctx) -> Result<f64> {
    let loose = ctx.spec;
    let tight = loose.with_tolerances(loose.rel_tol * 1e-2, loose.abs_tol * 1e-2);
    let m = ctx.rotation();
    let nu = ctx.order();
    let cfg = HeatConfig::new(ctx.uniform(0.3, 1.5), ctx.uniform(0.05, 1.0))?;
    let f = RadialFunction::bump(2.0)?;
    let mut worst = 0.0f64;
    for x in grid(0.0, 3.0, 7) {
        let a = heat::evolve_at(&m, nu, &cfg, &f, x, &loose)?;
        let b = heat::evolve_at(&m, nu, &cfg, &f, x, &tight)?;
        worst = worse(worst, (a - b).norm() / (b.norm() + 1e-3));
    }
    Ok(worst)
}

fn heat_golden_evolution(ctx: &mut Ctx) -> Result<f64> {
    let sigma = 0.5;
    let points = grid(0.0, 4.0, 41);
    let mut worst = 0.0f64;
    for m in [SLMatrix::rotation(PI / 3.0)?, ctx.matrix()] {
        for nu in [Order::new(0.0)?, ctx.order()] {
            let f = heat::golden_initial(&m, sigma)?;
            for &t in &[0.1, 0.5, 1.0, 2.0] {
                let u = heat::evolve(&m, nu, sigma, &f, t, &points, &ctx.spec)?;
                for (x, v) in u.iter() {
                    let want = heat::golden_solution(&m, nu, sigma, t, x);
                    worst = worse(worst, (v - want).norm() / want.norm());
                }
            }
        }
    }
    Ok(worst)
}

fn heat_kernel_bound(ctx: &mut Ctx) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let m = ctx.matrix();
        let nu = ctx.order();
        let cfg = HeatConfig::new(ctx.uniform(0.1, 2.0), ctx.uniform(0.01, 3.0))?;
        let (x, y) = (ctx.uniform(0.0, 20.0), ctx.uniform(0.0, 20.0));
        let bound = heat::heat_kernel_bound(nu, &cfg, x, y);
        if bound > 0.0 {
            worst = worse(worst, heat::heat_kernel(&m, nu, &cfg, x, y).norm() / bound - 1.0);
        }
    }
    Ok(worst)
}

fn heat_normalization(ctx: &mut Ctx) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..12 {
        let m = ctx.matrix();
        let nu = ctx.order();
        let cfg = HeatConfig::new(ctx.uniform(0.3, 1.5), ctx.uniform(0.02, 2.0))?;
        let x = ctx.uniform(0.0, 4.0);
        worst = worse(worst, heat::heat_normalization_residual(&m, nu, &cfg, x, &ctx.spec)?);
    }
    Ok(worst)
}

fn heat_pde(ctx: &mut Ctx) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let m = ctx.matrix();
        let nu = ctx.order();
        let cfg = HeatConfig::new(ctx.uniform(0.2, 2.0), ctx.uniform(0.05, 2.0))?;
        let (x, y) = (ctx.uniform(0.0, 4.0), ctx.uniform(0.0, 4.0));
        worst = worse(worst, heat::pde_residual(&m, nu, &cfg, x, y));
    }
    Ok(worst)
}

/// Final gap when the gaps decrease, otherwise 1.
fn heat_recovery(ctx: &mut Ctx) -> Result<f64> {
    let m = ctx.rotation();
    let nu = ctx.order();
    let f = RadialFunction::gaussian(1.0)?;
    let gaps = [1e-1, 1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&t| heat::recovery_gap(&m, nu, 0.5, &f, t, &ctx.spec))
        .collect::<Result<Vec<_>>>()?;
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    Ok(if decreasing { gaps[3] } else { 1.0 })
}

/// Largest r / |G_{t+s}|.
fn heat_semigroup(ctx: &mut Ctx) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let m = ctx.rotation();
        let nu = ctx.order();
        let sigma = ctx.uniform(0.5, 1.5);
        let (t, s) = (ctx.uniform(0.1, 1.0), ctx.uniform(0.1, 1.0));
        let (x, y) = (ctx.uniform(0.0, 2.0), ctx.uniform(0.0, 2.0));
        let r = heat::semigroup_residual(&m, nu, sigma, t, s, x, y, &ctx.spec)?;
        let whole = heat::heat_kernel(&m, nu, &HeatConfig::new(sigma, t + s)?, x, y).norm();
        worst = worse(worst, r / whole);
    }
    Ok(worst)
}

/// |slope - 2| of the first-order Taylor remainder over t = 2^-4 .. 2^-9,
/// measured as a sup over a few points so no single point sits on a zero of
/// the t² coefficient.
fn heat_taylor_slope(ctx: &mut Ctx) -> Result<f64> {
    let m = ctx.rotation();
    let nu = ctx.order();
    let (_, a_over_b) = m.chirp_rates();
    let f = RadialFunction::chirped_gaussian(0.8, -a_over_b)?;
    let sigma = 0.5;
    let points = [0.0, 0.5, 1.0, 1.5, 2.0];
    let terms = points.iter().map(|&x| heat::taylor_terms(&m, nu, sigma, &f, x, 1, &ctx.spec)).collect::<Result<Vec<_>>>()?;
    let times: Vec<f64> = (4..=9).map(|k| 2f64.powi(-k)).collect();
    let errors = times
        .iter()
        .map(|&t| {
            let cfg = HeatConfig::new(sigma, t)?;
            let gaps = points
                .iter()
                .zip(&terms)
                .map(|(&x, c)| Ok(heat::taylor_gap(heat::evolve_at(&m, nu, &cfg, &f, x, &ctx.spec)?, c, t)))
                .collect::<Result<Vec<_>>>()?;
            Ok(max_of(gaps))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((loglog_slope(&times, &errors) - 2.0).abs())
}

fn heat_time_difference_slope(ctx: &mut Ctx) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let m = ctx.matrix();
        let nu = ctx.order();
        let cfg = HeatConfig::new(ctx.uniform(0.3, 1.5), ctx.uniform(0.3, 1.0))?;
        let (x, y) = (ctx.uniform(0.0, 2.0), ctx.uniform(0.0, 2.0));
        let steps: Vec<f64> = (0..4).map(|k| 0.08 * cfg.t() * 0.5f64.powi(k)).collect();
        let errors = steps.iter().map(|&h| heat::centered_difference_error(&m, nu, &cfg, x, y, h)).collect::<Result<Vec<_>>>()?;
        worst = worse(worst, (loglog_slope(&steps, &errors) - 2.0).abs());
    }
    Ok(worst)
}

/// |G - T_x P_t(y)| relative to the kernel amplitude.
fn heat_two_route(ctx: &mut Ctx) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..30 {
        let m = ctx.matrix();
        let nu = ctx.order();
        let cfg = HeatConfig::new(ctx.uniform(0.3, 1.5), ctx.uniform(0.05, 1.0))?;
        let (x, y) = (ctx.uniform(0.0, 3.0), ctx.uniform(0.0, 3.0));
        let direct = heat::heat_kernel(&m, nu, &cfg, x, y);
        let routed = heat::heat_kernel_via_translation(&m, nu, &cfg, x, y, &ctx.spec)?;
        worst = worse(worst, (direct - routed).norm() / heat::amplitude(nu, &cfg));
    }
    Ok(worst)
}

fn heat_weber_schafheitlin(ctx: &mut Ctx) -> Result<f64> {
    let mut worst = 0.0f64;
    for delta in [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.5), Complex64::new(0.3, 2.0)] {
        for _ in 0..5 {
            let nu = ctx.order();
            let (r, s) = (ctx.uniform(0.0, 1.0), ctx.uniform(0.0, 1.0));
            let residual = heat::weber_schafheitlin_residual(nu, delta, r.into(), s.into(), &ctx.spec)?;
            worst = worse(worst, residual);
        }
    }
    Ok(worst)
}

fn specfun_bounds(ctx: &mut Ctx) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let nu = ctx.order();
        let x = ctx.uniform(0.0, 200.0);
        worst = worse(worst, specfun::j_nu_real(nu, x).abs() - 1.0);
        worst = worse(worst, specfun::j_nu_scaled(nu, x) - 1.0);
    }
    Ok(worst)
}

fn specfun_ode_residual(ctx: &mut Ctx) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let nu = ctx.order();
        let x = ctx.uniform(0.05, 60.0);
        worst = worse(worst, specfun::bessel_ode_residual(nu, 1.0, x).norm());
    }
    Ok(worst)
}

fn specfun_regime_agreement(_ctx: &mut Ctx) -> Result<f64> {
    let mut worst = 0.0f64;
    for nu in [-0.25, 0.0, 0.5, 1.7] {
        let order = Order::new(nu)?;
        let far = 30.0 + nu * nu;
        for x in grid(5.0, 11.0, 50).into_iter().chain(grid(far - 3.0, far + 3.0, 50)) {
            worst = worse(worst, (specfun::j_nu_real(order, x) - specfun::j_nu_mehler(order, x)?).abs());
        }
    }
    Ok(worst)
}

/// Largest ‖F f‖₂ / ‖f‖₂ - 1 over the corpus.
fn transform_babenko(ctx: &mut Ctx) -> Result<f64> {
    let m = ctx.matrix();
    let nu = ctx.order();
    let params = NormParams::new(2.0, nu)?;
    let mut worst = 0.0f64;
    for f in smooth_corpus() {
        let image = transform::transformed(&f, &m, nu, &ctx.spec)?;
        let ratio = quadrature::lp_norm(&image, params, &ctx.spec)? / quadrature::lp_norm(&f, params, &ctx.spec)?;
        worst = worse(worst, ratio - 1.0);
    }
    Ok(worst)
}

fn transform_gaussian_closed_form(ctx: &mut Ctx) -> Result<f64> {
    let mut worst = 0.0f64;
    for nu in [-0.25, 0.0, 0.5, 1.7] {
        for phi in [PI / 6.0, PI / 3.0] {
            worst = worse(worst, gaussian_closed_form_errors(Order::new(nu)?, phi, &ctx.spec)?.1);
        }
    }
    Ok(worst)
}

fn transform_kernel_eigen(ctx: &mut Ctx) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let m = ctx.matrix();
        let nu = ctx.order();
        let (x, y) = (ctx.uniform(1e-3, 5.0), ctx.uniform(0.0, 5.0));
        let scale = 1.0 + y * y / (m.b() * m.b());
        worst = worse(worst, transform::kernel_eigen_residual(&m, nu, x, y) / scale);
    }
    Ok(worst)
}

fn transform_operational_identity(ctx: &mut Ctx) -> Result<f64> {
    let m = ctx.matrix();
    let nu = ctx.order();
    let mut worst = 0.0f64;
    for f in smooth_corpus() {
        for x in [0.4, 1.1, 2.0] {
            worst = worse(worst, transform::operational_identity_residual(&m, nu, &f, x, &ctx.spec)?);
        }
    }
    Ok(worst)
}

fn transform_reversibility(ctx: &mut Ctx) -> Result<f64> {
    let m = ctx.matrix();
    let nu = ctx.order();
    let points = grid(0.0, 3.0, 40);
    let mut worst = 0.0f64;
    for f in smooth_corpus() {
        let back = transform::round_trip(&f, &m, nu, &points, &ctx.spec)?;
        worst = worse(worst, back.sup_distance(|x| f.eval(x)));
    }
    Ok(worst)
}

/// k = 1 against the analytic operator, k = 2 against a five-point stencil
/// applied to the analytic k = 1 result.
fn transform_spectral_power(ctx: &mut Ctx) -> Result<f64> {
    let m = ctx.rotation();
    let inv = m.inverse();
    let nu = ctx.order();
    let (_, a_over_b) = m.chirp_rates();
    let f = RadialFunction::chirped_gaussian(0.7, -a_over_b)?;
    let points = [0.0, 0.5, 1.2, 2.0];
    let once = transform::apply_delta_power_spectral(&m, nu, &f, 1, &points, &ctx.spec)?;
    let twice = transform::apply_delta_power_spectral(&m, nu, &f, 2, &points, &ctx.spec)?;
    let delta = |x: f64| transform::apply_delta(&inv, nu, &f, x.abs());
    let mut worst = 0.0f64;
    for (i, &x) in points.iter().enumerate() {
        worst = worse(worst, (once.values()[i] - delta(x)?).norm());
        let h = 1e-3;
        let s = [delta(x - 2.0 * h)?, delta(x - h)?, delta(x)?, delta(x + h)?, delta(x + 2.0 * h)?];
        let d1 = (s[0] - 8.0 * s[1] + 8.0 * s[3] - s[4]) / (12.0 * h);
        let d2 = (-s[0] + 16.0 * s[1] - 30.0 * s[2] + 16.0 * s[3] - s[4]) / (12.0 * h * h);
        let direct = transform::delta_from_derivatives(&inv, nu, x, s[2], d1, d2);
        worst = worse(worst, (twice.values()[i] - direct).norm() / (1.0 + direct.norm()));
    }
    Ok(worst)
}

fn translation_commutativity(ctx: &mut Ctx) -> Result<f64> {
    let m = ctx.matrix();
    let nu = ctx.order();
    let f = RadialFunction::gaussian(0.8)?;
    let trap = ErrorTrap::default();
    let mut worst = 0.0f64;
    for _ in 0..4 {
        let (x, y, z) = (ctx.uniform(0.0, 2.0), ctx.uniform(0.0, 2.0), ctx.uniform(0.0, 2.0));
        let tx = translation::translated(&m, nu, &f, x, &ctx.spec, &trap);
        let ty = translation::translated(&m, nu, &f, y, &ctx.spec, &trap);
        let lhs = translation::translate(&m, nu, &tx, y, z, &ctx.spec)?;
        let rhs = translation::translate(&m, nu, &ty, x, z, &ctx.spec)?;
        trap.check()?;
        worst = worse(worst, (lhs - rhs).norm());
    }
    Ok(worst)
}

fn translation_compact_support(ctx: &mut Ctx) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let m = ctx.matrix();
        let nu = ctx.order();
        let radius = ctx.uniform(0.5, 2.0);
        let f = RadialFunction::bump(radius)?;
        let x = ctx.uniform(0.0, 5.0);
        let y = x + ctx.sign() * (radius + ctx.uniform(0.0, 2.0));
        if y >= 0.0 {
            worst = worse(worst, translation::translate(&m, nu, &f, x, y, &ctx.spec)?.norm());
        }
    }
    Ok(worst)
}

fn translation_contraction(ctx: &mut Ctx) -> Result<f64> {
    let m = ctx.matrix();
    let nu = ctx.order();
    let shifts: Vec<f64> = (0..20).map(|_| ctx.uniform(0.0, 3.0)).collect();
    let spec = ctx.spec;
    let mut worst = 0.0f64;
    for f in smooth_corpus() {
        for p in [1.0, 2.0] {
            let params = NormParams::new(p, nu)?;
            let base = quadrature::lp_norm(&f, params, &spec)?;
            let ratios = shifts
                .par_iter()
                .map(|&x| {
                    let trap = ErrorTrap::default();
                    let shifted = translation::translated(&m, nu, &f, x, &spec, &trap);
                    let norm = quadrature::lp_norm(&shifted, params, &spec);
                    trap.check()?;
                    Ok(norm? / base)
                })
                .collect::<Result<Vec<_>>>()?;
            worst = worse(worst, max_of(ratios) - 1.0);
        }
    }
    Ok(worst)
}

fn translation_convolution_theorem(ctx: &mut Ctx) -> Result<f64> {
    let m = ctx.rotation();
    let nu = ctx.order();
    let (_, a_over_b) = m.chirp_rates();
    let f = RadialFunction::chirped_gaussian(0.6, -a_over_b)?;
    let g = RadialFunction::chirped_gaussian(1.1, -a_over_b)?;
    let residuals = translation::convolution_theorem_residuals(&m, nu, &f, &g, &grid(0.0, 3.0, 20), &ctx.spec)?;
    Ok(max_of(residuals))
}

fn translation_kernel_route(ctx: &mut Ctx) -> Result<f64> {
    let mut worst = 0.0f64;
    let corpus = smooth_corpus();
    for _ in 0..10 {
        let m = ctx.matrix();
        let nu = ctx.order();
        let (x, y) = (ctx.uniform(0.0, 3.0), ctx.uniform(0.0, 3.0));
        for f in &corpus {
            let mean = translation::translate(&m, nu, f, x, y, &ctx.spec)?;
            let kernel = translation::translate_via_kernel(&m, nu, f, x, y, &ctx.spec)?;
            worst = worse(worst, (mean - kernel).norm());
        }
    }
    Ok(worst)
}

fn translation_product_formula(ctx: &mut Ctx) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let m = ctx.matrix();
        let nu = ctx.order();
        let (x, y, z) = (ctx.uniform(0.0, 3.0), ctx.uniform(0.0, 3.0), ctx.uniform(0.0, 3.0));
        worst = worse(worst, translation::product_formula_residual(&m, nu, x, y, z, &ctx.spec)?);
    }
    Ok(worst)
}

fn translation_self_adjointness(ctx: &mut Ctx) -> Result<f64> {
    let m = ctx.matrix();
    let nu = ctx.order();
    let corpus = smooth_corpus();
    let mut worst = 0.0f64;
    for _ in 0..3 {
        let x = ctx.uniform(0.0, 3.0);
        for (f, g) in [(&corpus[0], &corpus[2]), (&corpus[1], &corpus[3])] {
            worst = worse(worst, translation::self_adjointness_residual(&m, nu, f, g, x, &ctx.spec)?);
        }
        for f in [&corpus[0], &corpus[2]] {
            worst = worse(worst, translation::mass_conservation_residual(nu, f, x, &ctx.spec)?);
        }
    }
    Ok(worst)
}

/// sup over a grid of |T_y f - f| at y = 0.1·2^{-k}, k = 0..6. Returns the
/// k = 6 gap when the gaps decrease, otherwise 1.
fn translation_small_shift(ctx: &mut Ctx) -> Result<f64> {
    let m = ctx.matrix();
    let nu = ctx.order();
    let points = grid(0.0, 4.0, 41);
    let mut worst = 0.0f64;
    for f in smooth_corpus() {
        let gaps = (0..=6)
            .map(|k| {
                let shift = 0.1 * 0.5f64.powi(k);
                let diffs = points
                    .par_iter()
                    .map(|&x| Ok((translation::translate(&m, nu, &f, shift, x, &ctx.spec)? - f.eval(x)).norm()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(max_of(diffs))
            })
            .collect::<Result<Vec<f64>>>()?;
        if !gaps.windows(2).all(|w| w[1] < w[0]) {
            return Ok(1.0);
        }
        worst = worse(worst, gaps[6]);
    }
    Ok(worst)
}

fn translation_transform_identity(ctx: &mut Ctx) -> Result<f64> {
    let m = ctx.matrix();
    let nu = ctx.order();
    let (_, a_over_b) = m.chirp_rates();
    let f = RadialFunction::chirped_gaussian(0.5, -a_over_b)?;
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let (x, lambda) = (ctx.uniform(0.0, 2.0), ctx.uniform(0.0, 2.0));
        worst = worse(worst, translation::translate_transform_residual(&m, nu, &f, x, lambda, &ctx.spec)?);
    }
    Ok(worst)
}

/// Largest ‖f∗g‖_r / (‖f‖_p ‖g‖_q) - 1, all norms discrete on a common grid.
fn translation_young(ctx: &mut Ctx) -> Result<f64> {
    let corpus = smooth_corpus();
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let m = ctx.matrix();
        let nu = ctx.order();
        let f = &corpus[ctx.rng.gen_range(0..corpus.len())];
        let g = &corpus[ctx.rng.gen_range(0..corpus.len())];
        let radius = f.integration_radius(&ctx.spec) + g.integration_radius(&ctx.spec);
        let points = grid(0.0, radius, 241);
        let conv = translation::convolve(&m, nu, f, g, &points, &ctx.spec)?;
        let sample = |h: &RadialFunction| SampledRadialFunction::new(points.clone(), points.iter().map(|&x| h.eval(x)).collect());
        let (fs, gs) = (sample(f)?, sample(g)?);
        for (p, q, r) in [(1.0, 1.0, 1.0), (1.0, 2.0, 2.0), (2.0, 2.0, f64::INFINITY)] {
            let ratio = conv.lp_norm(r, nu) / (fs.lp_norm(p, nu) * gs.lp_norm(q, nu));
            worst = worse(worst, ratio - 1.0);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique_and_sorted_in_reports() {
        let ids = check_ids();
        let mut dedup = ids.clone();
        dedup.dedup();
        assert_eq!(ids, dedup);
        let report = run_verify(Some(vec!["specfun.bounds".into(), "heat.kernel_bound".into()]), 3).unwrap();
        let got: Vec<_> = report.entries.iter().map(|e| e.check_id.as_str()).collect();
        assert_eq!(got, ["heat.kernel_bound", "specfun.bounds"]);
    }

    #[test]
    fn unknown_id_is_rejected() {
        assert!(matches!(run_verify(Some(vec!["no.such".into()]), 0), Err(Error::Validation(_))));
    }

    #[test]
    fn tolerance_injection_fails_the_entry() {
        let mut options = VerifyOptions { selection: Some(vec!["heat.pde".into()]), ..VerifyOptions::default() };
        options.tolerance_overrides.insert("heat.pde".into(), -1.0);
        let report = run_verify_with(&options).unwrap();
        assert!(!report.entries[0].pass && !report.all_pass());
    }

    #[test]
    fn slope_of_power_law() {
        let steps = [0.1, 0.05, 0.025];
        let errors: Vec<f64> = steps.iter().map(|h| 3.0 * h * h).collect();
        assert!((loglog_slope(&steps, &errors) - 2.0).abs() < 1e-12);
    }
}
