//! Theta functions as expressions of bilateral star-exponential sums.

use stardeform::scalar::C64;
use stardeform::theta::{
    associativity_demo, imaginary_transform_check, inverse_difference, quasi_periodicity_check, theta_eval, ThetaKind,
};

fn main() -> stardeform::Result<()> {
    let tau = C64::new(1.0, 0.5);
    let ws: Vec<f64> = (0..9).map(|i| -1.0 + 0.25 * i as f64).collect();
    for kind in ThetaKind::ALL {
        println!(
            "{kind}(0.3) = {:.12}  quasi-periodicity {:.1e}",
            theta_eval(kind, C64::new(0.3, 0.0), tau)?,
            quasi_periodicity_check(kind, tau, &ws)?
        );
    }
    for t in [1.0, 2.0] {
        println!("Jacobi relation at tau = {t}: {:.1e}", imaginary_transform_check(C64::new(0.0, 0.0), C64::new(t, 0.0))?);
    }
    let d = inverse_difference(ThetaKind::Three, tau, 14, &ws)?;
    println!("theta3 as a difference of one-sided inverses: {:.1e}", d.difference_residual);

    // Finite sums associate; the one-sided limits do not, and the gap is theta3.
    let demo = associativity_demo(12, tau, &ws)?;
    println!("finite gap {:.1e}, limit gap minus theta3 {:.1e}, limit gap size {:.3}", demo.finite_gap, demo.limit_gap_vs_theta, demo.limit_gap_size);
    Ok(())
}
