//! Normalized Bessel function j_ν across its evaluation regimes, against the
//! Mehler integral, plus the overflow-free e^{-u} j_ν(iu).

use canonical_bessel::specfun::{self, Order};
use num_complex::Complex64;

fn main() -> canonical_bessel::Result<()> {
    let nu = Order::new(0.5)?;
    // j_{1/2}(x) = sin(x)/x
    println!("{:>6} {:>22} {:>22} {:>22}", "x", "j_nu", "mehler", "sin(x)/x");
    for x in [0.5, 4.0, 8.0, 12.0, 30.25, 80.0] {
        println!("{x:>6} {:>22.15e} {:>22.15e} {:>22.15e}", specfun::j_nu_real(nu, x), specfun::j_nu_mehler(nu, x)?, x.sin() / x);
    }

    let z = Complex64::new(3.0, 2.0);
    println!("\nj_0.5({z}) = {}", specfun::j_nu(nu, z)?);
    println!("ODE residual at x = 7: {:.2e}", specfun::bessel_ode_residual(nu, 1.0, 7.0).norm());

    // j_ν(iu) overflows long before e^{-u} j_ν(iu) does
    let heavy = Order::new(1.2)?;
    for u in [1.0, 50.0, 800.0, 1e5] {
        println!("e^-u j_1.2(iu), u = {u:>8}: {:.15e}", specfun::j_nu_scaled(heavy, u));
    }
    Ok(())
}
