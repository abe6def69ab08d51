//! Star Hermite polynomials: exact identities and orthogonality.

use stardeform::scalar::{CRat, Coeff, C64};
use stardeform::special::hermite::{hermite_checks, hermite_norm, hermite_orthogonality, HermiteFamily};

fn main() -> stardeform::Result<()> {
    let fam = HermiteFamily::new(6, CRat::int(-1));
    for n in 0..=6 {
        println!("H_{n}(w, -1) = {}", fam.get(n));
    }
    let report = hermite_checks(&fam);
    println!("recurrence, ODE and ladder hold exactly: {}", report.all_hold());

    let tau = C64::new(-1.0, 0.0);
    for n in 0..=4 {
        let v = hermite_orthogonality(n, n, tau)?;
        println!("<H_{n}, H_{n}> = {:.12}  expected {:.12}", v.re, hermite_norm(n, tau).re);
    }
    println!("<H_1, H_3> = {:.2e}", hermite_orthogonality(1, 3, tau)?.norm());
    Ok(())
}
