//! Star analogues of classical special functions.

pub mod bessel;
pub mod hermite;
pub mod laguerre;
pub mod legendre;

use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_panels};
use crate::scalar::C64;

/// `∫_0^∞ f` for an integrand decaying like `exp(−c x²)`, `c > 0`.
///
/// The cutoff grows until `exp(−c L²) L^p` is below `e^{−42}`; convergence is
/// judged relative to `∫|f|` so cancelling integrands terminate.
pub(crate) fn gaussian_half_line(f: impl Fn(f64) -> C64, c: f64, p: usize) -> Result<C64> {
    if c <= 0.0 {
        return Err(Error::Domain("integrand does not decay".into()));
    }
    let mut l = (42.0 / c).sqrt();
    while -c * l * l + p as f64 * l.max(1.0).ln() > -42.0 {
        l *= 1.1;
    }
    let scale = integrate_panels(|x| C64::new(f(x).norm(), 0.0), 0.0, l, 16).re;
    integrate(f, 0.0, l, 8, 1e-14, 1e-15 * scale)
}
