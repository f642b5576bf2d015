//! Generalized translation: a bump moved away from the origin, the two
//! quadrature routes, and the product formula for the kernel.

use canonical_bessel::{translation, Order, QuadratureSpec, RadialFunction, SLMatrix};

fn main() -> canonical_bessel::Result<()> {
    let spec = QuadratureSpec::default();
    let nu = Order::new(0.0)?;
    let m = SLMatrix::rotation(0.9)?;
    let bump = RadialFunction::bump(1.0)?;

    println!("{:>5} {:>34} {:>12}", "y", "T_2 f(y)", "route gap");
    for y in [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5] {
        let mean = translation::translate(&m, nu, &bump, 2.0, y, &spec)?;
        let kernel = translation::translate_via_kernel(&m, nu, &bump, 2.0, y, &spec)?;
        println!("{y:>5} {mean:>34.12} {:>12.1e}", (mean - kernel).norm());
    }

    // compact support is kept: nothing survives outside |x - y| < R
    println!("\nT_2 f(3.2) = {}", translation::translate(&m, nu, &bump, 2.0, 3.2, &spec)?);

    for (x, y, z) in [(0.4, 1.1, 2.0), (2.5, 0.3, 0.9)] {
        println!(
            "product formula residual at ({x}, {y}, {z}): {:.2e}",
            translation::product_formula_residual(&m, nu, x, y, z, &spec)?
        );
    }
    Ok(())
}
