//! The chirped Bessel operator Δ_ν^m: the kernel as an eigenfunction, powers
//! computed through the transform, and the operational identity.

use canonical_bessel::{transform, Order, QuadratureSpec, RadialFunction, SLMatrix};

fn main() -> canonical_bessel::Result<()> {
    let spec = QuadratureSpec::default();
    let nu = Order::new(0.3)?;
    let m = SLMatrix::new(0.9, 1.3, -0.2, (1.0 + 1.3 * -0.2) / 0.9)?;

    for (x, y) in [(0.0, 1.0), (0.7, 2.5), (3.0, 4.0)] {
        println!("eigen residual at x = {x}, y = {y}: {:.2e}", transform::kernel_eigen_residual(&m, nu, x, y));
    }

    let (_, a_over_b) = m.chirp_rates();
    let f = RadialFunction::chirped_gaussian(0.6, -a_over_b)?;
    let points = [0.0, 0.5, 1.5];
    let spectral = transform::apply_delta_power_spectral(&m, nu, &f, 1, &points, &spec)?;
    for (x, v) in spectral.iter() {
        let direct = transform::apply_delta(&m.inverse(), nu, &f, x)?;
        println!("Δ f at {x}: spectral {v:.10}  direct {direct:.10}");
    }

    let g = RadialFunction::damped_cosine(2.0)?;
    println!("operational identity residual: {:.2e}", transform::operational_identity_residual(&m, nu, &g, 1.1, &spec)?);
    Ok(())
}
