//! Exploratory: two-parameter re-expansion coefficients a_2n(tau, tau')
//! approach E_2n/(2n)! as tau' approaches tau.

use stardeform::half_series::{euler_numbers, reexpansion_coefficients};
use stardeform::scalar::{rat_to_f64, C64};

fn main() -> stardeform::Result<()> {
    let e = euler_numbers(4)?;
    let tau = C64::new(1.0, 0.0);
    for gap in [0.5, 0.1, 0.01] {
        let a = reexpansion_coefficients(4, tau, tau - gap)?;
        let row: Vec<String> = a.iter().map(|v| format!("{:>10.6}", v.re)).collect();
        println!("tau - tau' = {gap:<5} {}", row.join(" "));
    }
    let mut fact = 1.0;
    let limit: Vec<String> = (0..=4)
        .map(|n| {
            if n > 0 {
                fact *= ((2 * n - 1) * 2 * n) as f64;
            }
            format!("{:>10.6}", rat_to_f64(&e[2 * n]) / fact)
        })
        .collect();
    println!("E_2n/(2n)!        {}", limit.join(" "));
    Ok(())
}
