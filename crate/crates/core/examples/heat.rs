//! Heat flow for the chirped Bessel operator: kernel identities and the
//! evolution of a Gaussian against its closed form.

use canonical_bessel::heat::{self, HeatConfig};
use canonical_bessel::{Order, QuadratureSpec, SLMatrix};

fn main() -> canonical_bessel::Result<()> {
    let spec = QuadratureSpec::default();
    let nu = Order::new(0.5)?;
    let m = SLMatrix::rotation(std::f64::consts::PI / 3.0)?;
    let sigma = 0.5;

    let cfg = HeatConfig::new(sigma, 0.3)?;
    println!("G_t(1, 1.4) = {:.12}", heat::heat_kernel(&m, nu, &cfg, 1.0, 1.4));
    println!("normalization residual: {:.2e}", heat::heat_normalization_residual(&m, nu, &cfg, 1.0, &spec)?);
    println!("PDE residual:           {:.2e}", heat::pde_residual(&m, nu, &cfg, 1.0, 1.4));
    println!("semigroup residual:     {:.2e}", heat::semigroup_residual(&m, nu, sigma, 0.3, 0.2, 1.0, 1.4, &spec)?);

    let f = heat::golden_initial(&m, sigma)?;
    let points = [0.0, 1.0, 2.0, 3.0];
    for t in [0.1, 1.0, 2.0] {
        let u = heat::evolve(&m, nu, sigma, &f, t, &points, &spec)?;
        let worst = u.sup_distance(|x| heat::golden_solution(&m, nu, sigma, t, x));
        println!("t = {t}: u(t, 1) = {:.12}, max error vs closed form {worst:.1e}", u.values()[1]);
    }
    Ok(())
}
