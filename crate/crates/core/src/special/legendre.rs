//! Star Legendre polynomials from the Laplace-transform representation
//!
//! `Σ P_n(z,τ) tⁿ = π^{−1/2} ∫_0^∞ s^{−1/2} e^{τs²t²} e^{−s(1−2tz+t²)} ds`.
//!
//! The factor `e^{τs²t²} e^{2tsz}` is the τ-expression of `e_*^{2tsz}`, so
//! `P_n(z,τ)` is the classical `P_n` carried from 0 to τ by the intertwiner.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly, RationalPoly};
use crate::scalar::{binomial_big, factorial_big, CRat, Coeff, C64};

use super::gaussian_half_line;

fn int(n: BigInt) -> CRat {
    CRat::new(BigRational::from_integer(n), BigRational::zero())
}

/// `Γ(p + ½)/√π = (2p)!/(4^p p!)`.
fn half_gamma(p: u32) -> CRat {
    int(factorial_big(2 * p)) / int(BigInt::from(4u32).pow(p) * factorial_big(p))
}

/// `P_n(z,τ)` exactly, from the Gamma moments of the defining integral.
///
/// The `tⁿ` coefficient of the integrand is
/// `Σ_j (2sz)^{n−2j} (τs² − s)^j / ((n−2j)! j!)`.
pub fn legendre_star_poly(n: usize, tau: &CRat) -> RationalPoly {
    let mut coeffs = vec![CRat::zero(); n + 1];
    for j in 0..=n / 2 {
        let deg = n - 2 * j;
        let mut moment = CRat::zero();
        let mut tau_i = CRat::one();
        for i in 0..=j {
            let sign = if (j - i) % 2 == 0 { CRat::one() } else { -CRat::one() };
            let p = (n - j + i) as u32;
            moment += int(binomial_big(j as u32, i as u32)) * tau_i.clone() * sign * half_gamma(p);
            tau_i *= tau.clone();
        }
        let two = int(BigInt::from(2u32).pow(deg as u32));
        let den = int(factorial_big(deg as u32) * factorial_big(j as u32));
        coeffs[deg] = two * moment / den;
    }
    RationalPoly::new(coeffs)
}

/// Classical `P_n` from Rodrigues' formula `(2ⁿ n!)⁻¹ dⁿ/dzⁿ (z²−1)ⁿ`.
pub fn legendre_classical(n: usize) -> RationalPoly {
    let base = RationalPoly::new(vec![CRat::int(-1), CRat::zero(), CRat::one()]);
    let power = (0..n).fold(RationalPoly::one(), |acc, _| &acc * &base);
    let den = int(BigInt::from(2u32).pow(n as u32) * factorial_big(n as u32));
    power.nth_derivative(n).scale(&(CRat::one() / den))
}

/// `P_n(z,τ)` by quadrature of the `tⁿ` coefficient of the defining integral.
///
/// With `s = u²` the weight `s^{−1/2} ds` becomes `2 du`.
pub fn legendre_star_quadrature(n: usize, z: C64, tau: C64) -> Result<C64> {
    let inv_fact: Vec<f64> = (0..=n).map(|k| 1.0 / crate::scalar::factorial(k as u32)).collect();
    let f = |u: f64| {
        let s = u * u;
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..=n / 2 {
            let a = (z * 2.0 * s).powu((n - 2 * j) as u32);
            let b = (tau * s * s - s).powu(j as u32);
            acc += a * b * inv_fact[n - 2 * j] * inv_fact[j];
        }
        acc * 2.0 * (-s).exp() / std::f64::consts::PI.sqrt()
    };
    gaussian_half_line(f, 1.0, 4 * n + 2)
}

/// `P_n(w + a, τ)` for `n ≤ N` on a real grid, by quadrature. Requires `Re τ < 0`.
pub fn legendre_star(n_max: usize, a: C64, tau: C64, ws: &[f64]) -> Result<Vec<Vec<C64>>> {
    if tau.re >= 0.0 {
        return Err(Error::Domain(format!("need Re τ < 0, got τ = {tau}")));
    }
    (0..=n_max)
        .map(|n| ws.iter().map(|&w| legendre_star_quadrature(n, C64::new(w, 0.0) + a, tau)).collect())
        .collect()
}

/// `P_n(w + a, τ)` as a floating polynomial in `w`.
pub fn legendre_star_shifted(n: usize, a: C64, tau: &CRat) -> Poly {
    legendre_star_poly(n, tau).to_c64().compose_linear(&a, &C64::new(1.0, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::intertwine;
    use crate::scalar::{crat, rat};

    #[test]
    fn zero_parameter_is_classical() {
        for n in 0..=8 {
            assert_eq!(legendre_star_poly(n, &CRat::zero()), legendre_classical(n));
        }
    }

    #[test]
    fn intertwined_classical() {
        let tau = crat(rat(-3, 4), rat(1, 5));
        for n in 0..=8 {
            let via = intertwine(&legendre_classical(n), &CRat::zero(), &tau);
            assert_eq!(legendre_star_poly(n, &tau), via);
        }
    }

    #[test]
    fn quadrature_matches_moments() {
        let tau = C64::new(-1.0, 0.0);
        let exact = legendre_star_poly(2, &CRat::int(-1)).to_c64();
        for z in [-0.5, 0.0, 0.8] {
            let q = legendre_star_quadrature(2, C64::new(z, 0.0), tau).unwrap();
            assert!((q - exact.eval_c(C64::new(z, 0.0))).norm() < 1e-12);
        }
        assert!((legendre_star_quadrature(0, C64::new(0.3, 0.0), tau).unwrap() - 1.0).norm() < 1e-13);
    }
}
