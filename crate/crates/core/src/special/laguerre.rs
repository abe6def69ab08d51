//! Star Laguerre polynomials of index −½, read off from the quadratic star-exponential
//!
//! `e_*^{tw_*²} = (1−tτ)^{−1/2} exp(t w²/(1−tτ)) = Σ L_n(w², τ) tⁿ`.
//!
//! Hence `L_n(x,τ) = Σ_k x^k/k! · (k+½)_{n−k}/(n−k)! · τ^{n−k}`, which is
//! `P_{2n}(w,τ)/n!` with `x = w²`.

use std::f64::consts::PI;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly, RationalPoly};
use crate::scalar::{factorial, CRat, Coeff, C64};

use super::gaussian_half_line;

/// `L_n(x, τ)` as a polynomial in `x`.
pub fn laguerre_star(n: usize, tau: &CRat) -> RationalPoly {
    let mut coeffs = vec![CRat::zero(); n + 1];
    for (k, slot) in coeffs.iter_mut().enumerate() {
        let j = n - k;
        // (k+½)_j / (j! k!) τ^j
        let mut c = CRat::one();
        for i in 0..j {
            c = c * CRat::ratio(2 * (k + i) as i64 + 1, 2) / CRat::int(i as i64 + 1);
        }
        for i in 0..k {
            c /= CRat::int(i as i64 + 1);
        }
        for _ in 0..j {
            c *= tau.clone();
        }
        *slot = c;
    }
    RationalPoly::new(coeffs)
}

/// `L_0 … L_N`.
pub fn laguerre_table(n_max: usize, tau: &CRat) -> Result<Vec<RationalPoly>> {
    if tau.is_zero() {
        return Err(Error::Domain("τ = 0".into()));
    }
    Ok((0..=n_max).map(|n| laguerre_star(n, tau)).collect())
}

/// Classical `L_n^{(α)}(x) = Σ_k (−1)^k C(n+α, n−k) x^k/k!` for half-integer `α = num/2`.
pub fn laguerre_classical_half(n: usize, alpha_twice: i64) -> RationalPoly {
    let mut coeffs = vec![CRat::zero(); n + 1];
    for (k, slot) in coeffs.iter_mut().enumerate() {
        // C(n+α, n−k) = Π_{i=1}^{n−k} (k + α + i)/i
        let mut c = CRat::one();
        for i in 1..=(n - k) {
            c = c * CRat::ratio(2 * (k + i) as i64 + alpha_twice, 2) / CRat::int(i as i64);
        }
        for i in 0..k {
            c /= CRat::int(i as i64 + 1);
        }
        *slot = if k % 2 == 0 { c } else { -c };
    }
    RationalPoly::new(coeffs)
}

/// The polynomial `τ^{−n} dⁿ/dxⁿ (x^{n+½} e^{x/τ}) · x^{−½} e^{−x/τ} / n!`.
///
/// Writing the derivative of `x^{½} r(x) e^{x/τ}` as `x^{½} (r/(2x) + r' + r/τ) e^{x/τ}`
/// keeps everything polynomial.
pub fn laguerre_rodrigues(n: usize, tau: &CRat) -> RationalPoly {
    let inv_tau = CRat::one() / tau.clone();
    let mut r = RationalPoly::monomial(CRat::one(), n);
    for _ in 0..n {
        let shifted = RationalPoly::new(r.coeffs().iter().skip(1).cloned().collect());
        r = &(&shifted.scale(&CRat::ratio(1, 2)) + &r.derivative()) + &r.scale(&inv_tau);
    }
    let mut k = CRat::one();
    for i in 0..n {
        k = k * inv_tau.clone() / CRat::int(i as i64 + 1);
    }
    r.scale(&k)
}

/// `τ^{2n} √(−τ) Γ(n+½)/n!`, the norm of `L_n` under the weight `x^{−½} e^{x/τ}`.
pub fn laguerre_norm(n: usize, tau: C64) -> C64 {
    let gamma = (0..n).fold(PI.sqrt(), |g, k| g * (k as f64 + 0.5));
    tau.powu(2 * n as u32) * (-tau).sqrt() * gamma / factorial(n as u32)
}

/// `∫_0^∞ x^{p} e^{x/τ} f(x) g(x) dx` with `p = ±½`, via `x = y²`; requires `Re(1/τ) < 0`.
pub fn laguerre_pairing(f: &Poly, g: &Poly, tau: C64, half_power_positive: bool) -> Result<C64> {
    let c = -tau.inv().re;
    if c <= 0.0 {
        return Err(Error::Domain(format!("need Re(1/τ) < 0, got τ = {tau}")));
    }
    let inv = tau.inv();
    let deg = f.degree().unwrap_or(0) + g.degree().unwrap_or(0);
    let integrand = |y: f64| {
        let x = C64::new(y * y, 0.0);
        // dx = 2y dy; x^{−½} dx = 2 dy and x^{½} dx = 2y² dy
        let jac = if half_power_positive { 2.0 * y * y } else { 2.0 };
        (inv * x).exp() * f.eval_c(x) * g.eval_c(x) * jac
    };
    gaussian_half_line(integrand, c, 2 * deg + 2)
}

/// `∫_0^∞ x^{−½} e^{x/τ} L_n L_m dx`.
pub fn laguerre_orthogonality(n: usize, m: usize, tau: C64) -> Result<C64> {
    let t = crate::scalar::crat_from_c64(tau)?;
    laguerre_pairing(&laguerre_star(n, &t).to_c64(), &laguerre_star(m, &t).to_c64(), tau, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::w_star_power;
    use crate::scalar::{crat, rat};

    fn in_w_squared(p: &RationalPoly) -> RationalPoly {
        let mut coeffs = vec![CRat::zero(); 2 * p.coeffs().len()];
        for (k, c) in p.coeffs().iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        RationalPoly::new(coeffs)
    }

    #[test]
    fn equals_even_star_powers() {
        let tau = crat(rat(2, 5), rat(-1, 3));
        for n in 0..=7 {
            let mut fact = CRat::one();
            for i in 1..=n {
                fact *= CRat::int(i as i64);
            }
            let lhs = in_w_squared(&laguerre_star(n, &tau));
            assert_eq!(lhs, w_star_power(2 * n, &tau).scale(&(CRat::one() / fact)));
        }
    }

    #[test]
    fn classical_at_minus_one() {
        for n in 0..=8 {
            let sign = if n % 2 == 0 { CRat::one() } else { -CRat::one() };
            assert_eq!(laguerre_star(n, &CRat::int(-1)), laguerre_classical_half(n, -1).scale(&sign));
        }
    }

    #[test]
    fn top_derivative_is_one() {
        let tau = crat(rat(-1, 2), rat(1, 1));
        for n in 0..=6 {
            assert_eq!(laguerre_star(n, &tau).nth_derivative(n), RationalPoly::one());
        }
    }

    #[test]
    fn half_index_rodrigues_form_is_the_other_index() {
        let tau = CRat::int(-1);
        for n in 1..=5 {
            let sign = if n % 2 == 0 { CRat::one() } else { -CRat::one() };
            let r = laguerre_rodrigues(n, &tau);
            assert_eq!(r, laguerre_classical_half(n, 1).scale(&sign));
            assert_ne!(r, laguerre_star(n, &tau));
        }
    }

    #[test]
    fn orthogonality() {
        let tau = C64::new(-1.0, 0.0);
        let v = laguerre_orthogonality(2, 2, tau).unwrap();
        assert!((v - laguerre_norm(2, tau)).norm() < 1e-12);
        assert!(laguerre_orthogonality(1, 3, tau).unwrap().norm() < 1e-12);
    }
}
