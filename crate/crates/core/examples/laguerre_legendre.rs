//! Star Laguerre polynomials from the quadratic exponential and star Legendre
//! polynomials as intertwined classical ones.

use num_traits::Zero;
use stardeform::poly::{intertwine, render};
use stardeform::scalar::{format_crat, parse_complex_rational, CRat, C64};
use stardeform::special::{laguerre, legendre};

fn main() -> stardeform::Result<()> {
    let tau = parse_complex_rational("2,0")?;
    for (n, p) in laguerre::laguerre_table(4, &tau)?.iter().enumerate() {
        println!("L_{n}(x, 2) = {}", render(p, "x", format_crat));
    }
    let t = C64::new(-1.0, 0.0);
    println!(
        "<L_2, L_2> = {:.12}, expected {:.12}",
        laguerre::laguerre_orthogonality(2, 2, t)?.re,
        laguerre::laguerre_norm(2, t).re
    );

    for n in 0..=4 {
        let p = legendre::legendre_star_poly(n, &tau);
        assert_eq!(p, intertwine(&legendre::legendre_classical(n), &CRat::zero(), &tau));
        println!("P_{n}(z, 2) = {}", render(&p, "z", format_crat));
    }
    Ok(())
}
