//! Star Bessel functions: the unit sum and the addition formula.

use stardeform::scalar::C64;
use stardeform::special::bessel::{addition_residual, bessel_j, bessel_star, bessel_table};

fn main() -> stardeform::Result<()> {
    let (a, tau) = (C64::new(1.0, 0.0), C64::new(1.0, 0.0));
    let ws: Vec<f64> = (0..11).map(|i| -1.0 + 0.2 * i as f64).collect();
    for n in 0..=3 {
        let w = C64::new(0.5, 0.0);
        println!("J_{n}(0.5, tau = 1) = {:.15}   classical J_{n}(0.5) = {:.15}", bessel_star(n, a, w, tau).re, bessel_j(n, w).re);
    }
    let table = bessel_table(a, tau, 20, &ws, 1e-14)?;
    println!("max |sum_n J_n - 1| = {:.2e}", table.unit_sum_residual());
    println!("addition formula residual = {:.2e}", addition_residual(a, C64::new(0.5, 0.0), tau, &ws, 4));
    Ok(())
}
