//! The covariant derivative `∇ = ∂_z + (4z²)⁻¹ ∂²_w` along `τ = 1/z`.
//!
//! `∂_z` acts on the explicit `z` dependence; `τ` is carried along and set to
//! `1/z` afterwards. A function with no `w` dependence is parallel when this
//! derivative vanishes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gauss::{poly_star_gauss, GaussPoly, Sheet};
use crate::poly::Poly;
use crate::scalar::C64;

use super::{generator, laurent_coeff_gauss};

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// `∂_z f + (4z₀²)⁻¹ ∂²_w f` at `z₀`, given `∂_z f` and `f` at `z₀`.
pub fn covariant_from_surface(dz: &GaussPoly, value: &GaussPoly, z0: C64) -> Result<GaussPoly> {
    if z0.norm() == 0.0 {
        return Err(Error::SingularPoint("z = 0".into()));
    }
    let second = value.nth_derivative(2).scale((z0 * z0 * 4.0).inv());
    dz.add(&second)
}

/// Rational polynomial in `z^{±1}` and `τ^{±1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParallelPoly {
    /// `(i, j) ↦` coefficient of `z^i τ^j`.
    pub terms: BTreeMap<(i32, i32), BigRational>,
}

fn rint(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ParallelPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: BigRational, i: i32, j: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, coeff);
        p
    }

    fn add_term(&mut self, i: i32, j: i32, coeff: BigRational) {
        let slot = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// `f_{k,m} = (m+k) z^m − m τ^k z^{m+k}`.
    pub fn f_km(k: i32, m: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(m, 0, rint((m + k) as i64));
        p.add_term(m + k, k, -rint(m as i64));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), v) in &other.terms {
            out.add_term(i, j, v.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    /// `∂_z` at fixed `τ`, then `τ = 1/z`: a Laurent polynomial in `z`, keyed by exponent.
    pub fn covariant(&self) -> BTreeMap<i32, BigRational> {
        let mut out: BTreeMap<i32, BigRational> = BTreeMap::new();
        for (&(i, j), v) in &self.terms {
            if i == 0 {
                continue;
            }
            let e = i - 1 - j;
            let slot = out.entry(e).or_insert_with(BigRational::zero);
            *slot += v * rint(i as i64);
            if slot.is_zero() {
                out.remove(&e);
            }
        }
        out
    }

    pub fn is_parallel(&self) -> bool {
        self.covariant().is_empty()
    }

    /// Value at `(z, τ)`.
    pub fn eval(&self, z: C64, tau: C64) -> C64 {
        self.terms
            .iter()
            .map(|(&(i, j), v)| z.powi(i) * tau.powi(j) * crate::scalar::rat_to_f64(v))
            .sum()
    }
}

impl fmt::Display for ParallelPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&(i, j), v)) in self.terms.iter().enumerate() {
            let sign = if v.is_negative() { "-" } else if n > 0 { "+" } else { "" };
            let sep = if n > 0 { " " } else { "" };
            write!(f, "{sep}{sign}{sep}{}", crate::scalar::format_fraction(&v.abs()))?;
            if i != 0 {
                write!(f, "*z^{i}")?;
            }
            if j != 0 {
                write!(f, "*tau^{j}")?;
            }
        }
        Ok(())
    }
}

/// `F(z, w) = c √z e^{z(ν − w²)} p(zw) e^{κ(zw)²}`, with `z = τ⁻¹`.
///
/// Every such `F` solves `∂_z F = τ w ∂_w F + (w² + ν + τ/2) F`, which is
/// `∇F = (ν + w_*²) ∗ F`.
#[derive(Clone, Debug)]
pub struct RelativityFamily {
    pub nu: C64,
    pub coeff: C64,
    pub profile: Poly,
    pub kappa: C64,
}

impl RelativityFamily {
    pub fn new(nu: C64, profile: Poly, kappa: C64, coeff: C64) -> Self {
        RelativityFamily { nu, coeff, profile, kappa }
    }

    /// The member with `F(1, w) = 1`: `p = 1`, `κ = 1`, `c = e^{−ν}`.
    pub fn unit_initial(nu: C64) -> Self {
        Self::new(nu, Poly::one(), c(1.0), (-nu).exp())
    }

    /// `e_*^{(z+s²)(ν+w_*²)}` seen as a function of `z`, up to the sheet sign.
    pub fn shifted_exponential(nu: C64, s: C64) -> Self {
        let i = C64::new(0.0, 1.0);
        Self::new(nu, Poly::one(), -(s * s).inv(), (nu * s * s).exp() / (i * s))
    }

    /// `F(z, ·)` with the principal `√z`.
    pub fn at(&self, z: C64) -> Result<GaussPoly> {
        self.at_with_root(z, z.sqrt())
    }

    fn at_with_root(&self, z: C64, root: C64) -> Result<GaussPoly> {
        if z.norm() < 1e-12 {
            return Err(Error::Path(format!("z = {z} is too close to 0")));
        }
        let poly = self.profile.compose_linear(&c(0.0), &z);
        let alpha = -z + self.kappa * z * z;
        Ok(GaussPoly::new(poly, alpha, c(0.0), self.coeff * root * (z * self.nu).exp(), Sheet::Plus))
    }

    /// `∂_z F` at fixed `w`.
    pub fn dz(&self, z: C64) -> Result<GaussPoly> {
        let f = self.at(z)?;
        let w2 = Poly::monomial(c(1.0), 2);
        let factor = &Poly::constant((z * 2.0).inv() + self.nu) + &w2.scale(&(self.kappa * z * 2.0 - 1.0));
        let chain = &Poly::w() * &self.profile.derivative().compose_linear(&c(0.0), &z);
        let total = &(&factor * &self.profile.compose_linear(&c(0.0), &z)) + &chain;
        Ok(GaussPoly::new(total, f.alpha, f.beta, self.coeff * z.sqrt() * (z * self.nu).exp(), Sheet::Plus))
    }

    /// Largest coefficient of `∂_z F − τ w ∂_w F − (w² + ν + τ/2) F` at `z`.
    pub fn evolution_residual(&self, z: C64) -> Result<f64> {
        let tau = z.inv();
        let f = self.at(z)?;
        let lhs = self.dz(z)?;
        let transport = f.derivative().mul_poly(&Poly::w().scale(&tau));
        let source = f.mul_poly(&(&Poly::monomial(c(1.0), 2) + &Poly::constant(self.nu + tau / 2.0)));
        Ok(lhs.sub(&transport)?.sub(&source)?.full_poly().max_abs_coeff())
    }

    /// Largest coefficient of `∇F − (ν + w_*²) ∗ F` at `z`.
    pub fn covariant_residual(&self, z: C64) -> Result<f64> {
        let tau = z.inv();
        let f = self.at(z)?;
        let nabla = covariant_from_surface(&self.dz(z)?, &f, z)?;
        let rhs = poly_star_gauss(&generator(self.nu, tau), &f, tau);
        Ok(nabla.sub(&rhs)?.full_poly().max_abs_coeff())
    }

    /// Members along a polygon in `z`, with `√z` continued from the principal value at the start.
    pub fn along(&self, points: &[C64], steps_per_edge: usize) -> Result<Vec<(C64, GaussPoly)>> {
        let first = *points.first().ok_or_else(|| Error::Path("empty path".into()))?;
        let mut root = first.sqrt();
        let mut out = Vec::new();
        for edge in points.windows(2) {
            for n in 0..steps_per_edge {
                let z = edge[0] + (edge[1] - edge[0]) * (n as f64 / steps_per_edge as f64);
                if z.norm() < 1e-12 {
                    return Err(Error::Path(format!("path passes through z = {z}")));
                }
                let next = z.sqrt();
                root = if (next - root).norm() <= (next + root).norm() { next } else { -next };
                out.push((z, self.at_with_root(z, root)?));
            }
        }
        let last = *points.last().unwrap_or(&first);
        if last.norm() < 1e-12 {
            return Err(Error::Path("path ends at z = 0".into()));
        }
        let next = last.sqrt();
        root = if (next - root).norm() <= (next + root).norm() { next } else { -next };
        out.push((last, self.at_with_root(last, root)?));
        Ok(out)
    }
}

/// `max_w |∇a_{2k−1} − (ν + w_*²) ∗ a_{2k−1}|` at `τ`, relative to `max_w |a_{2k−1}|`.
///
/// `a = amp(τ) S(w, τ) e^{−w²/τ}` with `amp = e^{ν/τ}(−τ)^{−1/2}`, so along
/// `z = 1/τ` the derivative `d/dz = −τ² ∂_τ` acts in closed form.
pub fn laurent_covariant_residual(k: i64, nu: C64, tau: C64, ws: &[f64]) -> Result<f64> {
    if tau.norm() == 0.0 {
        return Err(Error::Domain("τ = 0".into()));
    }
    let terms = 60;
    let a = laurent_coeff_gauss(k, nu, tau, terms).with_plus_sheet();
    let tau2 = tau * tau;
    // S(w, τ) = Σ s_l w^{2l} with s_l ∝ τ^{−2l}; recover the unnormalized series
    let s = a.poly.scale(&a.amp);
    let ds = Poly::new(s.coeffs().iter().enumerate().map(|(n, v)| -(*v) * n as f64 / tau).collect());
    let log_amp = &Poly::constant(-nu / tau2 - (tau * 2.0).inv()) + &Poly::monomial(tau2.inv(), 2);
    let d_tau = &(&log_amp * &s) + &ds;
    let dz = GaussPoly::new(d_tau.scale(&-tau2), a.alpha, a.beta, c(1.0), Sheet::Plus);
    let nabla = covariant_from_surface(&dz, &a, tau.inv())?;
    let rhs = poly_star_gauss(&generator(nu, tau), &a, tau);
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &x in ws {
        let w = c(x);
        worst = worst.max((nabla.eval(w) - rhs.eval(w)).norm());
        scale = scale.max(a.eval(w).norm());
    }
    Ok(if scale > 1.0 { worst / scale } else { worst })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::quad_exp_value;
    use num_traits::One;

    #[test]
    fn parallel_polynomials() {
        for k in -3..=3 {
            for m in -3..=3 {
                assert!(ParallelPoly::f_km(k, m).is_parallel(), "k={k} m={m}");
            }
        }
        let p = ParallelPoly::f_km(2, -1).mul(&ParallelPoly::f_km(-3, 2)).add(&ParallelPoly::f_km(1, 1));
        assert!(p.is_parallel());
        let plain = ParallelPoly::monomial(BigRational::one(), 2, 0);
        assert_eq!(plain.covariant(), BTreeMap::from([(1, rint(2))]));
        assert_eq!(ParallelPoly::f_km(1, 1).to_string(), "2*z^1 - 1*z^2*tau^1");
    }

    #[test]
    fn family_solves_the_evolution_equation() {
        let profile = Poly::new(vec![c(1.0), C64::new(0.5, -0.2), c(-0.3), c(0.1), C64::new(0.0, 0.05)]);
        let fam = RelativityFamily::new(C64::new(0.7, 0.2), profile, C64::new(0.1, 0.0), c(1.0));
        for z in [c(1.0), C64::new(0.6, 0.4), c(2.0)] {
            assert!(fam.evolution_residual(z).unwrap() < 1e-12);
            assert!(fam.covariant_residual(z).unwrap() < 1e-12);
        }
    }

    #[test]
    fn unit_initial_profile() {
        let fam = RelativityFamily::unit_initial(c(0.4));
        let f = fam.at(c(1.0)).unwrap();
        for w in [-1.0, 0.0, 0.7] {
            assert!((f.eval(c(w)) - 1.0).norm() < 1e-15);
        }
        assert!(fam.covariant_residual(c(1.7)).unwrap() < 1e-12);
    }

    #[test]
    fn recovers_the_shifted_exponential() {
        let (nu, s) = (c(0.8), C64::new(0.6, 0.3));
        let fam = RelativityFamily::shifted_exponential(nu, s);
        for z in [c(1.0), C64::new(1.5, -0.5)] {
            let tau = z.inv();
            let f = fam.at(z).unwrap();
            let zz = z + s * s;
            for w in [-0.5, 0.0, 0.4] {
                let root = (c(1.0) - tau * zz).sqrt();
                let e = quad_exp_value(zz, root, nu, tau, c(w));
                let v = f.eval(c(w));
                assert!((v - e).norm().min((v + e).norm()) < 1e-12 * e.norm().max(1.0));
            }
        }
    }

    #[test]
    fn path_through_zero_is_rejected() {
        let fam = RelativityFamily::unit_initial(c(1.0));
        assert!(matches!(fam.along(&[c(1.0), c(-1.0)], 8), Err(Error::Path(_))));
        let ok = fam.along(&[c(1.0), C64::new(0.0, 1.0), c(-1.0)], 8).unwrap();
        assert_eq!(ok.len(), 17);
    }

    #[test]
    fn laurent_coefficients_are_covariantly_generated() {
        let ws: Vec<f64> = (0..11).map(|i| -1.0 + 0.2 * i as f64).collect();
        for k in -2..=2 {
            let r = laurent_covariant_residual(k, C64::new(0.9, 0.1), C64::new(1.0, 0.5), &ws).unwrap();
            assert!(r < 1e-10, "k={k}: {r}");
        }
    }
}
