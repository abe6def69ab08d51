//! Parallel polynomials and covariantly evolving families.

use stardeform::poly::Poly;
use stardeform::residue::{laurent_covariant_residual, ParallelPoly, RelativityFamily};
use stardeform::scalar::C64;

fn main() -> stardeform::Result<()> {
    for (k, m) in [(1, 1), (2, -1), (-3, 2)] {
        let f = ParallelPoly::f_km(k, m);
        println!("f_({k},{m}) = {f}  parallel: {}", f.is_parallel());
    }
    let nu = C64::new(0.5, 0.2);
    let profile = Poly::new(vec![C64::new(1.0, 0.0), C64::new(0.3, 0.0), C64::new(0.0, -0.2), C64::new(0.1, 0.0), C64::new(0.05, 0.0)]);
    let fam = RelativityFamily::new(nu, profile, C64::new(1.0, 0.0), C64::new(1.0, 0.0));
    for z in [0.5, 1.0, 2.0] {
        println!("z = {z}: covariant residual {:.1e}", fam.covariant_residual(C64::new(z, 0.0))?);
    }
    let unit = RelativityFamily::unit_initial(nu);
    println!("unit profile at z = 1, w = 0: {}", unit.at(C64::new(1.0, 0.0))?.eval(C64::new(0.0, 0.0)));
    let ws = [-0.5, 0.0, 0.5];
    println!("Laurent coefficients evolve covariantly: {:.1e}", laurent_covariant_residual(0, nu, C64::new(1.0, 0.0), &ws)?);
    Ok(())
}
