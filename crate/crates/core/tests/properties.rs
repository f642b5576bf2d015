//! Property tests for the invariants every module must respect.

use canonical_bessel::cli::FunctionSpec;
use canonical_bessel::{heat, specfun, transform, translation};
use canonical_bessel::{Order, QuadratureSpec, RadialFunction, SLMatrix};
use num_complex::Complex64;
use proptest::prelude::*;

fn order() -> impl Strategy<Value = Order> {
    (-0.45f64..3.0).prop_map(|nu| Order::new(nu).unwrap())
}

/// Any SL(2, R) matrix with |b| bounded away from zero.
fn matrix() -> impl Strategy<Value = SLMatrix> {
    (0.3f64..2.0, any::<bool>(), 0.3f64..2.0, any::<bool>(), -1.5f64..1.5).prop_map(|(a, sa, b, sb, c)| {
        let a = if sa { a } else { -a };
        let b = if sb { b } else { -b };
        SLMatrix::new(a, b, c, (1.0 + b * c) / a).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn j_is_even_bounded_and_one_at_zero(nu in order(), x in 0.0f64..60.0) {
        let j = specfun::j_nu_real(nu, x);
        prop_assert_eq!(specfun::j_nu_real(nu, 0.0), 1.0);
        prop_assert_eq!(j, specfun::j_nu_real(nu, -x));
        prop_assert!(j.abs() <= 1.0 + 1e-14, "j = {j}");
    }

    #[test]
    fn derivative_lowers_to_the_next_order(nu in order(), x in 0.01f64..40.0) {
        // j_ν'(x) = -x j_{ν+1}(x) / (2(ν+1))
        let lhs = specfun::j_nu_deriv_real(nu, x);
        let rhs = -x * specfun::j_nu_real(nu.shifted(1), x) / (2.0 * (nu.nu() + 1.0));
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()), "{lhs} vs {rhs}");
    }

    #[test]
    fn ode_holds_on_the_real_axis(nu in order(), x in 0.05f64..30.0) {
        let y = specfun::j_nu_real(nu, x);
        prop_assert!(specfun::bessel_ode_residual(nu, 1.0, x).norm() <= 1e-8 * (1.0 + y.abs()));
    }

    #[test]
    fn scaled_j_at_imaginary_argument_is_positive_and_bounded(nu in order(), u in 0.0f64..500.0) {
        let s = specfun::j_nu_scaled(nu, u);
        prop_assert!(s > 0.0 && s <= 1.0 + 1e-14, "{s}");
    }

    #[test]
    fn inverse_composes_to_identity(m in matrix()) {
        let id = m.compose(&m.inverse());
        prop_assert!((id[0][0] - 1.0).abs() < 1e-12 && id[0][1].abs() < 1e-12);
        prop_assert!(id[1][0].abs() < 1e-12 && (id[1][1] - 1.0).abs() < 1e-12);
        prop_assert_eq!(m.inverse().inverse(), m);
    }

    #[test]
    fn kernel_solves_the_eigen_equation(m in matrix(), nu in order(), x in 0.05f64..4.0, y in 0.0f64..4.0) {
        let scale = 1.0 + y * y / (m.b() * m.b());
        prop_assert!(transform::kernel_eigen_residual(&m, nu, x, y) <= 1e-8 * scale);
    }

    #[test]
    fn kernel_is_symmetric_only_through_its_chirps(m in matrix(), nu in order(), x in 0.0f64..3.0, y in 0.0f64..3.0) {
        // K(x, y) e^{-(i/2)((d/b)x² + (a/b)y²)} is symmetric in (x, y)
        let (d_over_b, a_over_b) = m.chirp_rates();
        let strip = |x: f64, y: f64| {
            transform::kernel(&m, nu, x, y) * Complex64::from_polar(1.0, -0.5 * (d_over_b * x * x + a_over_b * y * y))
        };
        prop_assert!((strip(x, y) - strip(y, x)).norm() <= 1e-12 * (1.0 + strip(x, y).norm()));
    }

    #[test]
    fn heat_kernel_is_symmetric_and_bounded(
        nu in order(), sigma in 0.1f64..2.0, t in 0.01f64..3.0, x in 0.0f64..6.0, y in 0.0f64..6.0,
    ) {
        let cfg = heat::HeatConfig::new(sigma, t).unwrap();
        let g = heat::classical_heat_kernel(nu, &cfg, x, y);
        prop_assert!(g >= 0.0);
        prop_assert!(g <= heat::heat_kernel_bound(nu, &cfg, x, y) * (1.0 + 1e-12));
        prop_assert!((g - heat::classical_heat_kernel(nu, &cfg, y, x)).abs() <= 1e-14 * g.max(1e-300));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn translation_is_symmetric_in_x_and_y(m in matrix(), nu in order(), x in 0.0f64..2.5, y in 0.0f64..2.5) {
        let f = RadialFunction::gaussian(0.7).unwrap();
        let spec = QuadratureSpec::default();
        let a = translation::translate(&m, nu, &f, x, y, &spec).unwrap();
        let b = translation::translate(&m, nu, &f, y, x, &spec).unwrap();
        prop_assert!((a - b).norm() <= 1e-9, "{a} vs {b}");
    }

    #[test]
    fn translation_by_zero_is_the_identity(m in matrix(), nu in order(), y in 0.0f64..3.0) {
        let f = RadialFunction::damped_cosine(1.2).unwrap();
        let t = translation::translate(&m, nu, &f, 0.0, y, &QuadratureSpec::default()).unwrap();
        prop_assert_eq!(t, f.eval(y));
    }

    #[test]
    fn compact_support_grows_by_the_shift(nu in order(), r in 0.3f64..2.0, x in 0.0f64..2.0, extra in 0.01f64..1.0) {
        let f = RadialFunction::bump(r).unwrap();
        let t = translation::classical_translate(nu, &f, x, x + r + extra, &QuadratureSpec::default()).unwrap();
        prop_assert_eq!(t, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn function_specs_round_trip_through_display(beta in 0.01f64..10.0, chirp in -5.0f64..5.0, r in 0.01f64..10.0) {
        for text in [format!("gaussian:beta={beta}"), format!("chirped_gaussian:beta={beta},chirp={chirp}"), format!("bump:R={r}")] {
            let spec: FunctionSpec = text.parse().unwrap();
            let again: FunctionSpec = spec.to_string().parse().unwrap();
            prop_assert_eq!(&spec, &again);
            prop_assert_eq!(spec.build().unwrap().eval(0.3), again.build().unwrap().eval(0.3));
        }
    }
}
