//! Euler and Bernoulli numbers from inverses in the half-series field.

use stardeform::half_series::{
    bernoulli_identity_residual, bernoulli_numbers, euler_identity_residual, euler_numbers, replacement_principle,
};
use stardeform::scalar::{format_fraction, parse_complex_rational, C64};

fn main() -> stardeform::Result<()> {
    let e = euler_numbers(6)?;
    let b = bernoulli_numbers(6)?;
    for n in (0..=12).step_by(2) {
        println!("E_{n:<2} = {:>10}   B_{n:<2} = {}", format_fraction(&e[n]), format_fraction(&b[n]));
    }
    let ws: Vec<f64> = (0..9).map(|i| -2.0 + 0.5 * i as f64).collect();
    let tau = C64::new(2.0, 0.0);
    println!("euler identity on a grid: {:.1e}", euler_identity_residual(tau, 24, &ws)?);
    println!("bernoulli identity on a grid: {:.1e}", bernoulli_identity_residual(tau, 24, &ws)?);

    // The same coefficients come out of the (iw)^k basis.
    let (ec, bc) = replacement_principle(7, parse_complex_rational("1/3,-1/2")?)?;
    println!("E_(2n)/(2n)! via powers of iw: {}", ec.iter().map(|c| c.re.to_string()).collect::<Vec<_>>().join(", "));
    println!("B_(2n)/(2n)! via powers of iw: {}", bc.iter().map(|c| c.re.to_string()).collect::<Vec<_>>().join(", "));
    Ok(())
}
