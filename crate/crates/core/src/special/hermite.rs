//! Star Hermite polynomials, the coefficients of `e_*^{√2 t w} = Σ H_n(w,*) tⁿ/n!`.
//!
//! In τ-expression `H_n(w,τ) = (√2)ⁿ P_n(w,τ)`; at τ = −1 this is the
//! classical table generated by `exp(√2 t w − t²/2)`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{binomial_big, crat_from_c64, factorial, factorial_big, CRat, Coeff, QSqrt2, C64};

use super::gaussian_half_line;

/// Polynomial with coefficients in ℚ(i)(√2).
pub type SqrtPoly = Polynomial<QSqrt2>;

#[derive(Clone, Debug, PartialEq)]
pub struct HermiteFamily {
    pub tau: CRat,
    pub table: Vec<SqrtPoly>,
}

fn big(n: BigInt) -> CRat {
    CRat::new(BigRational::from_integer(n), BigRational::zero())
}

/// `H_n(w,τ)` from `H_n/n! = Σ_p (√2)ⁿ τ^p / (p!(n−2p)!4^p) w^{n−2p}`.
pub fn hermite(n: usize, tau: &CRat) -> SqrtPoly {
    let mut coeffs = vec![QSqrt2::zero(); n + 1];
    let root = QSqrt2::sqrt2_pow(n as u32);
    let mut tau_p = CRat::one();
    for p in 0..=n / 2 {
        let num = big(factorial_big(n as u32)) * tau_p.clone();
        let den = big(factorial_big(p as u32) * factorial_big((n - 2 * p) as u32))
            * big(BigInt::from(4u32).pow(p as u32));
        coeffs[n - 2 * p] = root.clone() * QSqrt2::from_crat(num / den);
        tau_p *= tau.clone();
    }
    Polynomial::new(coeffs)
}

impl HermiteFamily {
    /// `H_0 … H_N` at `tau`.
    pub fn new(n_max: usize, tau: CRat) -> Self {
        let table = (0..=n_max).map(|n| hermite(n, &tau)).collect();
        HermiteFamily { tau, table }
    }

    pub fn max_degree(&self) -> usize {
        self.table.len() - 1
    }

    pub fn get(&self, n: usize) -> &SqrtPoly {
        &self.table[n]
    }

    /// Floating copy of `H_n`.
    pub fn numeric(&self, n: usize) -> crate::poly::Poly {
        self.table[n].to_c64()
    }
}

/// Indices at which each identity failed; empty vectors mean the identity holds exactly.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct HermiteReport {
    /// `τ/√2 H'_n + √2 w H_n = H_{n+1}`.
    pub recurrence: Vec<usize>,
    /// `τ H''_n + 2w H'_n − 2n H_n = 0`.
    pub ode: Vec<usize>,
    /// `H'_n = √2 n H_{n−1}`.
    pub ladder: Vec<usize>,
    /// `dⁿ/dwⁿ H_n = (√2)ⁿ n!`.
    pub top_derivative: Vec<usize>,
}

impl HermiteReport {
    pub fn all_hold(&self) -> bool {
        self.recurrence.is_empty() && self.ode.is_empty() && self.ladder.is_empty() && self.top_derivative.is_empty()
    }
}

/// Checks the recurrence, differential equation and derivative ladder exactly.
pub fn hermite_checks(fam: &HermiteFamily) -> HermiteReport {
    let tau = QSqrt2::from_crat(fam.tau.clone());
    let sqrt2 = QSqrt2::sqrt2();
    let w = SqrtPoly::w();
    let mut report = HermiteReport::default();
    for (n, h) in fam.table.iter().enumerate() {
        let dh = h.derivative();
        if n + 1 < fam.table.len() {
            let lhs = &dh.scale(&(tau.clone() * sqrt2.clone() / QSqrt2::int(2))) + &(&w * h).scale(&sqrt2);
            if lhs != fam.table[n + 1] {
                report.recurrence.push(n);
            }
        }
        let ode = &(&h.nth_derivative(2).scale(&tau) + &(&w * &dh).scale(&QSqrt2::int(2)))
            - &h.scale(&QSqrt2::int(2 * n as i64));
        if !ode.is_zero() {
            report.ode.push(n);
        }
        if n > 0 && dh != fam.table[n - 1].scale(&(sqrt2.clone() * QSqrt2::int(n as i64))) {
            report.ladder.push(n);
        }
        let top = QSqrt2::sqrt2_pow(n as u32) * QSqrt2::from_crat(big(factorial_big(n as u32)));
        if h.nth_derivative(n) != SqrtPoly::constant(top) {
            report.top_derivative.push(n);
        }
    }
    report
}

/// `Σ_k C(n,k) H_k ∗ H_{n−k}`, exactly.
///
/// The exponential law `e_*^{√2tw} ∗ e_*^{√2tw} = e_*^{2√2tw}` makes this `2ⁿ H_n`.
pub fn hermite_convolution(n: usize, tau: &CRat) -> SqrtPoly {
    let t = QSqrt2::from_crat(tau.clone());
    let mut sum = SqrtPoly::zero();
    for k in 0..=n {
        let c = QSqrt2::from_crat(big(binomial_big(n as u32, k as u32)));
        sum = &sum + &hermite(k, tau).star(&hermite(n - k, tau), &t).scale(&c);
    }
    sum
}

/// `n!(−τ)ⁿ √(−τ) √π`, the norm of `H_n` under the weight `e^{w²/τ}`.
pub fn hermite_norm(n: usize, tau: C64) -> C64 {
    let mt = -tau;
    mt.powu(n as u32) * mt.sqrt() * factorial(n as u32) * PI.sqrt()
}

/// `∫_ℝ e^{w²/τ} H_n H_m dw` by quadrature, `Re(1/τ) < 0`.
pub fn hermite_orthogonality(n: usize, m: usize, tau: C64) -> Result<C64> {
    let c = -tau.inv().re;
    if c <= 0.0 {
        return Err(Error::Domain(format!("need Re(1/τ) < 0, got τ = {tau}")));
    }
    let tau_r = crat_from_c64(tau)?;
    let hn = hermite(n, &tau_r).to_c64();
    let hm = hermite(m, &tau_r).to_c64();
    let inv = tau.inv();
    let f = |x: f64| {
        let w = C64::new(x, 0.0);
        let g = (inv * w * w).exp() * hn.eval_c(w) * hm.eval_c(w);
        // even extension: the integrand over ℝ is g(x) + g(−x)
        g + (inv * w * w).exp() * hn.eval_c(-w) * hm.eval_c(-w)
    };
    gaussian_half_line(f, c, n + m)
}
