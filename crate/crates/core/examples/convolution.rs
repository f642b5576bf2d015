//! Convolution of two chirped Gaussians and the convolution theorem.

use canonical_bessel::{translation, Order, QuadratureSpec, RadialFunction, SLMatrix};

fn main() -> canonical_bessel::Result<()> {
    let spec = QuadratureSpec::default();
    let nu = Order::new(0.8)?;
    let m = SLMatrix::rotation(1.1)?;
    let (_, a_over_b) = m.chirp_rates();
    let f = RadialFunction::chirped_gaussian(0.6, -a_over_b)?;
    let g = RadialFunction::chirped_gaussian(1.1, -a_over_b)?;

    let points = [0.0, 0.5, 1.0, 2.0];
    let conv = translation::convolve(&m, nu, &f, &g, &points, &spec)?;
    for (x, v) in conv.iter() {
        println!("(f * g)({x}) = {v:.12}");
    }

    let residuals = translation::convolution_theorem_residuals(&m, nu, &f, &g, &points, &spec)?;
    for (x, r) in points.iter().zip(&residuals) {
        println!("convolution theorem residual at {x}: {r:.2e}");
    }
    println!("self-adjointness at x = 1: {:.2e}", translation::self_adjointness_residual(&m, nu, &f, &g, 1.0, &spec)?);
    Ok(())
}
