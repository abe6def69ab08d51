//! Star delta functions, sided inverses, Heaviside and principal values.

use stardeform::distributions::{
    delta_difference_residual, delta_tau, heaviside_identities, periodic_comb_check, principal_value_residual, Side,
    SidedInverse,
};
use stardeform::residue::semigroup_on_delta;
use stardeform::scalar::C64;

fn main() -> stardeform::Result<()> {
    let tau = C64::new(1.0, 0.0);
    let a = C64::new(0.5, 0.2);
    let ws: Vec<f64> = (0..9).map(|i| -2.0 + 0.5 * i as f64).collect();

    let delta = delta_tau(a, tau)?;
    println!("delta_*(a+w) at w = 0: {:.12}", delta.eval(C64::new(0.0, 0.0)));
    for side in [Side::Plus, Side::Minus] {
        let inv = SidedInverse::new(a, side, tau)?;
        println!("{side:?} inverse at w = 0: {:.12}, defect {:.1e}", inv.eval(C64::new(0.0, 0.0))?, inv.defect(&ws)?);
    }
    println!("inv+ - inv- - 2 pi i delta: {:.1e}", delta_difference_residual(a, tau, &ws)?);
    println!("Heaviside and sign identities: {:.1e}", heaviside_identities(tau, &ws)?.worst());
    for m in [1, 2] {
        println!("principal value of x^-{m}: {:.1e}", principal_value_residual(m, tau, &ws)?);
    }
    println!("periodic comb: {:.1e}", periodic_comb_check(C64::new(0.0, 0.0), tau, 20, &ws)?);
    // The quadratic exponential acts on delta even at its branch point t = 1/tau.
    println!("semigroup on delta at t = 1/tau: {:.1e}", semigroup_on_delta(tau.inv(), a, tau, &ws)?);
    Ok(())
}
