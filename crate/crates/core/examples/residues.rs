//! Laurent coefficients of the quadratic exponential on its double cover.

use stardeform::residue::{
    closed_contour_vanishing, ladder_check, laurent_coeff_closed, orphan_annihilation, phi_psi, residue_contour,
    CONTOUR_NODES,
};
use stardeform::scalar::C64;

fn main() -> stardeform::Result<()> {
    let (nu, tau) = (C64::new(1.0, 0.0), C64::new(1.0, 1.0));
    let ws: Vec<f64> = (0..9).map(|i| -1.0 + 0.25 * i as f64).collect();
    let w = C64::new(0.5, 0.0);
    for k in -2..=2 {
        let closed = laurent_coeff_closed(k, nu, tau, w);
        let contour = residue_contour(k, nu, tau, w, 1.0, CONTOUR_NODES)?;
        println!("a_{:<2} closed {closed:.12}  contour {contour:.12}", 2 * k - 1);
    }
    println!("full contour integral: {:.1e}", closed_contour_vanishing(nu, tau, 1.0, CONTOUR_NODES, &ws)?);
    for k in -2..=2 {
        println!("ladder at k = {k}: {:.1e}", ladder_check(k, nu, tau, &ws)?);
    }

    // For t != 0 the evolved residue vanishes; the generator alone does not kill it.
    let o = orphan_annihilation(C64::new(0.1, 0.0), 0, nu, C64::new(1.0, 0.0), &ws)?;
    println!("t = 0.1: {:.1e}; t = 0 bracket at w = 0: {:.6}", o.annihilation, o.bracket[4]);

    let pp = phi_psi(C64::new(0.7, 0.0), C64::new(1.0, 0.0))?;
    println!("Phi annihilated: {:.1e}", pp.annihilation_residual());
    Ok(())
}
