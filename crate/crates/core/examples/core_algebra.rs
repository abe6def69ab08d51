//! Exact star products and intertwiners on polynomials.

use stardeform::poly::{intertwine, parse_poly, star_power, star_product, w_star_power};
use stardeform::scalar::{parse_complex_rational, CRat, Coeff};

fn main() -> stardeform::Result<()> {
    let tau = parse_complex_rational("1/2,0")?;
    let f = parse_poly("w^2 + 1")?;
    let g = parse_poly("w^3 - 2*w")?;

    let fg = star_product(&f, &g, &tau);
    println!("f = {f}\ng = {g}\nf * g at tau = 1/2: {fg}");
    assert_eq!(fg, star_product(&g, &f, &tau));

    for n in 0..=6 {
        println!("P_{n}(w, 1/2) = {}", w_star_power(n, &tau));
    }
    assert_eq!(star_power(&parse_poly("w")?, 6, &tau), w_star_power(6, &tau));

    // Moving to another expression parameter is an algebra isomorphism.
    let to = parse_complex_rational("-1,1")?;
    let moved = intertwine(&fg, &tau, &to);
    let each = star_product(&intertwine(&f, &tau, &to), &intertwine(&g, &tau, &to), &to);
    println!("I(f * g) at tau' = -1+i: {moved}");
    assert_eq!(moved, each);

    // At tau = 0 the product is the ordinary one.
    assert_eq!(star_product(&f, &g, &CRat::int(0)), &f * &g);
    Ok(())
}
