//! Half-series `e_*^{ℓiw} ∗ Σ_{n≥0} a_n e_*^{niw}`.
//!
//! By the exponential law `e_*^{miw} ∗ e_*^{niw} = e_*^{(m+n)iw}`, products and
//! inverses are those of formal power series in `q = e_*^{iw}`, carried out
//! exactly. The τ-expression is `Σ a_n e^{−(ℓ+n)²τ/4} e^{i(ℓ+n)w}`.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{star_product, w_star_power, RationalPoly};
use crate::scalar::{format_crat, CRat, Coeff, C64};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 24;

/// `e_*^{ℓiw} ∗ Σ_{n<K} a_n e_*^{niw}` with `a_0 ≠ 0` unless the series is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfSeries {
    pub base_deg: i64,
    pub coeffs: Vec<CRat>,
    pub order: usize,
}

fn factorial_rat(n: usize) -> CRat {
    let f: BigInt = (1..=n as u64).map(BigInt::from).product();
    CRat::new(BigRational::from_integer(f), BigRational::zero())
}

impl HalfSeries {
    /// Normalizes leading zeros into the base degree.
    pub fn new(base_deg: i64, mut coeffs: Vec<CRat>, order: usize) -> Self {
        coeffs.resize(order, CRat::zero());
        match coeffs.iter().position(|c| !c.is_zero()) {
            None => HalfSeries { base_deg: 0, coeffs, order },
            Some(shift) => {
                coeffs.drain(..shift);
                coeffs.resize(order, CRat::zero());
                HalfSeries { base_deg: base_deg + shift as i64, coeffs, order }
            }
        }
    }

    pub fn one(order: usize) -> Self {
        Self::new(0, vec![CRat::one()], order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(0, Vec::new(), order)
    }

    /// `Σ_n c_n (x q)^n` from a coefficient rule.
    pub fn from_fn(order: usize, f: impl Fn(usize) -> CRat) -> Self {
        Self::new(0, (0..order).map(f).collect(), order)
    }

    /// `e_*^{x e_*^{iw}} = Σ_n xⁿ/n! e_*^{niw}`.
    pub fn exp_of_q(x: i64, order: usize) -> Self {
        Self::from_fn(order, |n| {
            let mut p = CRat::one();
            for _ in 0..n {
                p *= CRat::int(x);
            }
            p / factorial_rat(n)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeff(&self, n: usize) -> CRat {
        self.coeffs.get(n).cloned().unwrap_or_else(CRat::zero)
    }

    /// Coefficient of `e_*^{jiw}` in absolute grading.
    pub fn coeff_at(&self, j: i64) -> CRat {
        let n = j - self.base_deg;
        if n < 0 { CRat::zero() } else { self.coeff(n as usize) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = vec![CRat::zero(); order];
        for (i, a) in self.coeffs.iter().enumerate().take(order) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(self.base_deg + other.base_deg, out, order)
    }

    /// Sum in absolute grading; the result keeps `order` terms from the lower base.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let order = self.order.min(other.order);
        let base = self.base_deg.min(other.base_deg);
        let coeffs = (0..order as i64).map(|n| self.coeff_at(base + n) + other.coeff_at(base + n)).collect();
        Self::new(base, coeffs, order)
    }

    pub fn scale(&self, k: &CRat) -> Self {
        Self::new(self.base_deg, self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(), self.order)
    }

    /// The inverse by indeterminate coefficients: `b_0 = 1/a_0`,
    /// `b_n = −(Σ_{j=1}^n a_j b_{n−j}) / a_0`.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = self.coeff(0);
        if a0.is_zero() {
            return Err(Error::NonUnit);
        }
        let inv0 = CRat::one() / a0;
        let mut b: Vec<CRat> = Vec::with_capacity(self.order);
        b.push(inv0.clone());
        for n in 1..self.order {
            let mut s = CRat::zero();
            for j in 1..=n {
                s += self.coeff(j) * b[n - j].clone();
            }
            b.push(-(s * inv0.clone()));
        }
        Ok(Self::new(-self.base_deg, b, self.order))
    }

    /// `Σ a_n e^{−(ℓ+n)²τ/4} e^{i(ℓ+n)w}`; requires `Re τ > 0`.
    pub fn tau_expression(&self, tau: C64, w: C64) -> Result<C64> {
        if tau.re <= 0.0 {
            return Err(Error::Domain(format!("need Re τ > 0, got τ = {tau}")));
        }
        let i = C64::new(0.0, 1.0);
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(n, a)| {
                let j = (self.base_deg + n as i64) as f64;
                a.to_c64() * (-j * j * tau / 4.0 + i * j * w).exp()
            })
            .sum())
    }

    pub fn tau_expression_grid(&self, tau: C64, ws: &[f64]) -> Result<Vec<C64>> {
        ws.iter().map(|&w| self.tau_expression(tau, C64::new(w, 0.0))).collect()
    }
}

impl fmt::Display for HalfSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}) e^{{{}iw}}", format_crat(a), self.base_deg + n as i64)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn real(c: &CRat) -> BigRational {
    c.re.clone()
}

/// `Σ_n sⁿ 2ⁿ/n! qⁿ` with the extra leading `1`, the `1 + e^{±2q}` factor.
fn one_plus_exp2(sign: i64, order: usize) -> HalfSeries {
    HalfSeries::one(order).add(&HalfSeries::exp_of_q(2 * sign, order))
}

/// Which reading of the sum in the Euler denominators is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerReading {
    /// `1 + Σ_{k≥0} (±2)^k qᵏ/k! = 1 + e^{±2q}`.
    Literal,
    /// `1 + Σ_{k≥1} (±2)^k qᵏ/k! = e^{±2q}`.
    DropFirst,
}

/// `e^{q}(·)⁻¹ + e^{−q}(·)⁻¹` as a half-series in `q = e_*^{iw}`.
pub fn euler_series(reading: EulerReading, order: usize) -> Result<HalfSeries> {
    let den = |s: i64| match reading {
        EulerReading::Literal => one_plus_exp2(s, order),
        EulerReading::DropFirst => HalfSeries::exp_of_q(2 * s, order),
    };
    let plus = HalfSeries::exp_of_q(1, order).mul(&den(1).inverse()?);
    let minus = HalfSeries::exp_of_q(-1, order).mul(&den(-1).inverse()?);
    Ok(plus.add(&minus))
}

/// `E_0, E_1, …, E_{2N}` read off as `(2n)!` times the coefficients.
pub fn euler_numbers(n: usize) -> Result<Vec<BigRational>> {
    let s = euler_series(EulerReading::Literal, 2 * n + 1)?;
    Ok((0..=2 * n).map(|k| real(&(s.coeff_at(k as i64) * factorial_rat(k)))).collect())
}

/// `½(Σ qⁿ/(n+1)!)⁻¹ + ½(Σ (−q)ⁿ/(n+1)!)⁻¹`.
pub fn bernoulli_series(order: usize) -> Result<HalfSeries> {
    let half = CRat::ratio(1, 2);
    let sign = |n: usize| if n.is_multiple_of(2) { CRat::one() } else { -CRat::one() };
    let a = HalfSeries::from_fn(order, |n| CRat::one() / factorial_rat(n + 1)).inverse()?;
    let b = HalfSeries::from_fn(order, |n| sign(n) / factorial_rat(n + 1)).inverse()?;
    Ok(a.scale(&half).add(&b.scale(&half)))
}

/// `B_0, …, B_{2N}`; the symmetrization removes `B_1`, so odd entries are 0.
pub fn bernoulli_numbers(n: usize) -> Result<Vec<BigRational>> {
    let s = bernoulli_series(2 * n + 1)?;
    Ok((0..=2 * n).map(|k| real(&(s.coeff_at(k as i64) * factorial_rat(k)))).collect())
}

/// Star product of two 2π-periodic τ-expressions given on `nodes` equispaced
/// points, through their Fourier modes: `e^{imw} ∗ e^{inw} = e^{−mnτ/2} e^{i(m+n)w}`.
pub fn periodic_star(f: &[C64], g: &[C64], tau: C64, ws: &[f64]) -> Vec<C64> {
    let n = f.len();
    let i = C64::new(0.0, 1.0);
    let modes = |vals: &[C64]| -> Vec<(i64, C64)> {
        let half = (n / 2) as i64;
        (-half..half)
            .map(|m| {
                let s: C64 = vals
                    .iter()
                    .enumerate()
                    .map(|(j, v)| v * (-i * (m as f64) * 2.0 * std::f64::consts::PI * j as f64 / n as f64).exp())
                    .sum();
                (m, s / n as f64)
            })
            .collect()
    };
    let (fm, gm) = (modes(f), modes(g));
    ws.iter()
        .map(|&w| {
            let mut acc = C64::new(0.0, 0.0);
            for &(m, a) in &fm {
                for &(k, b) in &gm {
                    acc += a * b * (-(m * k) as f64 * tau / 2.0 + i * ((m + k) as f64) * w).exp();
                }
            }
            acc
        })
        .collect()
}

/// `max_w` of the Euler identity computed with numerically star-multiplied
/// τ-expressions against the right side `Σ E_{2n}/(2n)! e_*^{2niw}`.
pub fn euler_identity_residual(tau: C64, order: usize, ws: &[f64]) -> Result<f64> {
    let nodes = 4 * order.next_power_of_two();
    let grid: Vec<f64> = (0..nodes).map(|j| 2.0 * std::f64::consts::PI * j as f64 / nodes as f64).collect();
    let mut lhs = vec![C64::new(0.0, 0.0); ws.len()];
    for s in [1, -1] {
        let e = HalfSeries::exp_of_q(s, order).tau_expression_grid(tau, &grid)?;
        let d = one_plus_exp2(s, order).inverse()?.tau_expression_grid(tau, &grid)?;
        for (acc, v) in lhs.iter_mut().zip(periodic_star(&e, &d, tau, ws)) {
            *acc += v;
        }
    }
    let nums = euler_numbers(order / 2)?;
    let rhs = HalfSeries::new(
        0,
        nums.iter().enumerate().map(|(k, e)| CRat::new(e.clone(), BigRational::zero()) / factorial_rat(k)).collect(),
        nums.len(),
    );
    let mut worst: f64 = 0.0;
    for (l, &w) in lhs.iter().zip(ws) {
        worst = worst.max((l - rhs.tau_expression(tau, C64::new(w, 0.0))?).norm());
    }
    Ok(worst)
}

/// The same for the Bernoulli identity.
pub fn bernoulli_identity_residual(tau: C64, order: usize, ws: &[f64]) -> Result<f64> {
    let lhs = bernoulli_series(order)?;
    let nums = bernoulli_numbers(order / 2)?;
    let rhs = HalfSeries::new(
        0,
        nums.iter().enumerate().map(|(k, b)| CRat::new(b.clone(), BigRational::zero()) / factorial_rat(k)).collect(),
        nums.len(),
    );
    let mut worst: f64 = 0.0;
    for &w in ws {
        let w = C64::new(w, 0.0);
        worst = worst.max((lhs.tau_expression(tau, w)? - rhs.tau_expression(tau, w)?).norm());
    }
    Ok(worst)
}

/// Truncated series in the star powers `(iw)_*^k`, held as its exact
/// τ-expression `Σ_{k<K} a_k i^k P_k(w, τ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StarPowerSeries {
    pub tau: CRat,
    pub order: usize,
    pub expr: RationalPoly,
}

impl StarPowerSeries {
    fn basis(k: usize, tau: &CRat) -> RationalPoly {
        let mut ik = CRat::one();
        for _ in 0..k {
            ik *= CRat::new(BigRational::zero(), BigRational::one());
        }
        w_star_power(k, tau).scale(&ik)
    }

    pub fn from_coeffs(coeffs: &[CRat], tau: CRat) -> Self {
        let order = coeffs.len();
        let mut expr = RationalPoly::zero();
        for (k, a) in coeffs.iter().enumerate() {
            expr = &expr + &Self::basis(k, &tau).scale(a);
        }
        StarPowerSeries { tau, order, expr }
    }

    /// Coefficients in the `(iw)_*^k` basis, by back substitution from the top degree.
    pub fn coeffs(&self) -> Vec<CRat> {
        let mut rest = self.expr.clone();
        let deg = rest.degree().unwrap_or(0);
        let mut out = vec![CRat::zero(); deg + 1];
        for k in (0..=deg).rev() {
            let b = Self::basis(k, &self.tau);
            let lead = b.coeff(k);
            let a = rest.coeff(k) / lead;
            rest = &rest - &b.scale(&a);
            out[k] = a;
        }
        out
    }

    /// Star product, then drop `(iw)_*^k` for `k ≥ order`.
    pub fn mul(&self, other: &Self) -> Self {
        let prod = StarPowerSeries {
            tau: self.tau.clone(),
            order: self.order,
            expr: star_product(&self.expr, &other.expr, &self.tau),
        };
        let mut c = prod.coeffs();
        c.resize(self.order, CRat::zero());
        Self::from_coeffs(&c, self.tau.clone())
    }

    pub fn sub_from_two(&self) -> Self {
        let mut c = self.coeffs();
        c.resize(self.order, CRat::zero());
        for v in c.iter_mut() {
            *v = -v.clone();
        }
        c[0] = c[0].clone() + CRat::int(2);
        Self::from_coeffs(&c, self.tau.clone())
    }

    /// Inverse by Newton's iteration `g ← g ∗ (2 − f ∗ g)`, which doubles the
    /// number of correct terms at each step.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = self.coeffs().first().cloned().unwrap_or_else(CRat::zero);
        if a0.is_zero() {
            return Err(Error::NonUnit);
        }
        let mut g = Self::from_coeffs(&[CRat::one() / a0], self.tau.clone());
        g.order = self.order;
        let mut correct = 1;
        while correct < self.order {
            g = g.mul(&self.mul(&g).sub_from_two());
            correct *= 2;
        }
        Ok(g)
    }
}

/// `E_{2n}/(2n)!` and `B_{2n}/(2n)!` computed with star products in the
/// `(iw)_*^k` basis at parameter `τ`; equal to the half-series values.
pub fn replacement_principle(order: usize, tau: CRat) -> Result<(Vec<CRat>, Vec<CRat>)> {
    let series = |f: &dyn Fn(usize) -> CRat| {
        StarPowerSeries::from_coeffs(&(0..order).map(f).collect::<Vec<_>>(), tau.clone())
    };
    let pow = |x: i64, n: usize| (0..n).fold(CRat::one(), |p, _| p * CRat::int(x));
    let mut euler = StarPowerSeries::from_coeffs(&[], tau.clone());
    euler.order = order;
    for s in [1i64, -1] {
        let e = series(&|n| pow(s, n) / factorial_rat(n));
        let d = series(&|n| pow(2 * s, n) / factorial_rat(n) + if n == 0 { CRat::one() } else { CRat::zero() });
        let term = e.mul(&d.inverse()?);
        euler.expr = &euler.expr + &term.expr;
    }
    let half = CRat::ratio(1, 2);
    let a = series(&|n| CRat::one() / factorial_rat(n + 1)).inverse()?;
    let b = series(&|n| pow(-1, n) / factorial_rat(n + 1)).inverse()?;
    let bern = StarPowerSeries { expr: &a.expr.scale(&half) + &b.expr.scale(&half), ..a };
    let mut ec = euler.coeffs();
    ec.resize(order, CRat::zero());
    let mut bc = bern.coeffs();
    bc.resize(order, CRat::zero());
    Ok((ec, bc))
}

/// Recovers `a_0 … a_{K−1}` of `Σ a_n e_*^{niw}` from its τ-expression at
/// `K` points of `[0, 2π)`, returning the largest coefficient error.
///
/// A vanishing expression therefore forces every coefficient to vanish.
pub fn injectivity_probe(f: &HalfSeries, tau: C64) -> Result<f64> {
    let k = f.order;
    let i = C64::new(0.0, 1.0);
    let ws: Vec<f64> = (0..k).map(|j| 2.0 * std::f64::consts::PI * j as f64 / k as f64).collect();
    let m = DMatrix::from_fn(k, k, |r, n| {
        let j = (f.base_deg + n as i64) as f64;
        (-j * j * tau / 4.0 + i * j * ws[r]).exp()
    });
    let vals = DVector::from_vec(f.tau_expression_grid(tau, &ws)?);
    let sol = m.lu().solve(&vals).ok_or_else(|| Error::Domain("sampling matrix is singular".into()))?;
    Ok((0..k).map(|n| (sol[n] - f.coeff(n).to_c64()).norm()).fold(0.0, f64::max))
}

/// Coefficients `a_{2n}(τ,τ')`, `n ≤ n_max`, of the symmetric element
/// `Σ_k (−1)^k (q^{2k+1} + q^{−2k−1})` written in the `(iw)_*^{2n}` basis of the
/// τ'-expression, when its τ-expression is `Σ c_m e^{−m²τ/4} e^{imw}`:
///
/// `a_{2n} = 2/(2n)! Σ_k (−1)^k (2k+1)^{2n} e^{−(2k+1)²(τ−τ')/4}`.
///
/// Exploratory; the sum converges only for `Re(τ−τ') > 0`.
pub fn reexpansion_coefficients(n_max: usize, tau: C64, tau_prime: C64) -> Result<Vec<C64>> {
    let eps = tau - tau_prime;
    if eps.re <= 0.0 || tau_prime.re <= 0.0 {
        return Err(Error::Domain(format!("need Re τ' > 0 and Re(τ−τ') > 0, got τ = {tau}, τ' = {tau_prime}")));
    }
    let mut out = Vec::with_capacity(n_max + 1);
    let mut fact = 1.0;
    for n in 0..=n_max {
        if n > 0 {
            fact *= (2 * n - 1) as f64 * (2 * n) as f64;
        }
        let p = 2 * n as i32;
        let mut sum = C64::new(0.0, 0.0);
        let mut k = 0u64;
        loop {
            let m = (2 * k + 1) as f64;
            // log of |term|; stop once past the peak and negligible
            let log_mag = p as f64 * m.ln() - m * m * eps.re / 4.0;
            let term = (-m * m * eps / 4.0 + p as f64 * m.ln()).exp();
            sum += if k.is_multiple_of(2) { term } else { -term };
            if m * m * eps.re / 4.0 > p as f64 && log_mag < -40.0 {
                break;
            }
            k += 1;
            if k > 10_000_000 {
                return Err(Error::Truncation(format!("reexpansion sum for n = {n} did not settle")));
            }
        }
        out.push(sum * 2.0 / fact);
    }
    Ok(out)
}
