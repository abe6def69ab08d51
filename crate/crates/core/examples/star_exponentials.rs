//! Linear and quadratic star exponentials, the sheet of the quadratic one,
//! and the growth of cubic exponents.

use stardeform::gauss::{
    gauss_star, series_radius_probe, star_exp_linear, star_exp_quadratic, star_exp_quadratic_principal, PathParam, Sheet,
};
use stardeform::scalar::C64;

fn main() -> stardeform::Result<()> {
    let tau = C64::new(1.0, 0.0);
    let (s, t) = (C64::new(0.3, 0.1), C64::new(-0.2, 0.4));
    let prod = gauss_star(&star_exp_linear(s, tau), &star_exp_linear(t, tau), tau)?;
    let want = star_exp_linear(s + t, tau);
    println!("e_*^(sw) * e_*^(tw): beta = {}, amplitude = {}", prod.beta, prod.prefactor());
    println!("e_*^((s+t)w):        beta = {}, amplitude = {}", want.beta, want.prefactor());

    let a = star_exp_quadratic_principal(C64::new(0.3, 0.0), tau)?;
    let b = star_exp_quadratic_principal(C64::new(0.2, 0.0), tau)?;
    let ab = gauss_star(&a, &b, tau)?;
    println!("e_*^(0.3 w^2) * e_*^(0.2 w^2) at w = 0.5: {}", ab.eval(C64::new(0.5, 0.0)));

    // Going once around the branch point t = 1/tau flips the sign of the root.
    let end = C64::new(0.5, 0.0);
    let around = PathParam::straight(end).then(&PathParam::loop_around(C64::new(1.0, 0.0), end, 1, 64));
    let looped = star_exp_quadratic(end, tau, &around)?;
    println!("after one loop: sheet {:?}", looped.sheet);
    assert_eq!(looped.sheet, Sheet::Minus);

    // c_{n+1}/c_n for e_*^{t w^3}: increasing, so the series in t diverges.
    let ratios = series_radius_probe(3, tau, 15);
    for (n, r) in ratios.iter().enumerate() {
        println!("n = {n:2}  c_(n+1)/c_n = {r:.4}");
    }
    Ok(())
}
