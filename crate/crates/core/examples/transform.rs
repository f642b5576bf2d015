//! Forward transform of a chirped Gaussian against its closed form, and a
//! round trip F^{m⁻¹} F^m of a compactly supported bump.

use std::f64::consts::PI;

use canonical_bessel::{transform, verify, Order, QuadratureSpec, RadialFunction, SLMatrix};

fn main() -> canonical_bessel::Result<()> {
    let spec = QuadratureSpec::default();
    let nu = Order::new(1.7)?;
    let m = SLMatrix::rotation(PI / 3.0)?;
    let (_, a_over_b) = m.chirp_rates();
    let f = RadialFunction::chirped_gaussian(0.5, -a_over_b)?;

    let points = [0.0, 0.5, 1.0, 2.0, 3.0];
    let image = transform::forward(&f, &m, nu, &points, &spec)?;
    println!("m = {m}, nu = {}", nu.nu());
    for (x, v) in image.iter() {
        let want = verify::gaussian_image(&m, nu, x);
        println!("x = {x:3.1}  F f = {v:.12}  closed form error {:.1e}", (v - want).norm());
    }

    let general = SLMatrix::new(1.2, -0.7, 0.4, (1.0 - 0.7 * 0.4) / 1.2)?;
    let bump = RadialFunction::bump(2.0)?;
    let half = Order::new(0.5)?;
    let back = transform::round_trip(&bump, &general, half, &[0.0, 0.8, 1.6, 2.4], &spec)?;
    println!("\nround trip of bump:R=2 under {general}, nu = 0.5");
    for (x, v) in back.iter() {
        println!("x = {x:3.1}  {v:.12}  (f = {:.12})", bump.eval(x).re);
    }
    Ok(())
}
