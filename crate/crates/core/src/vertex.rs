//! Truncated formal brackets on the generators `x_m = {s^m}`.
//!
//! Elements are finite sums `Σ c x_m u^k` with `u = w_*² + ν` a formal
//! variable cut at grade `K`. The Witt operators act by
//! `L_n(x_m u^k) = m x_{n+m} u^k + 2 x_{n+m+2} u^{k+1}` and the generators
//! bracket to Laurent coefficients: `[x_m u^k, x_n u^l] = (m−n) a_{m+n−1} u^{k+l}`.
//! Coefficients live in [`CoeffRing`], exact polynomials in `γ, τ⁻¹, ν, w²`
//! with `γ = e^{ν/τ} (−τ)^{−1/2} e^{−w²/τ}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::residue::gamma_factor;
use crate::scalar::{format_fraction, rat_to_f64, C64};

fn rint(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn inv_factorial(n: u32) -> BigRational {
    let f: BigInt = (1..=n as u64).map(BigInt::from).product();
    BigRational::new(BigInt::one(), f)
}

fn pow(x: &BigRational, n: u32) -> BigRational {
    (0..n).fold(BigRational::one(), |p, _| p * x)
}

/// Exponents of `γ^g τ^{−i} ν^j (w²)^l`.
pub type Monomial = (i32, i32, u32, u32);

/// Exact polynomial in `γ^{±1}, τ⁻¹, ν, w²`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoeffRing {
    pub terms: BTreeMap<Monomial, BigRational>,
}

impl CoeffRing {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut r = Self::zero();
        r.add_term((0, 0, 0, 0), c);
        r
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(g, i, j, l), a) in &self.terms {
            for (&(h, p, q, r), b) in &other.terms {
                out.add_term((g + h, i + p, j + q, l + r), a * b);
            }
        }
        out
    }

    /// Value with `γ` replaced by `e^{ν/τ} (−τ)^{−1/2} e^{−w²/τ}` (principal root).
    pub fn eval(&self, tau: C64, nu: C64, w: C64) -> C64 {
        let gamma = gamma_factor(nu, tau, w);
        let w2 = w * w;
        let inv = tau.inv();
        self.terms
            .iter()
            .map(|(&(g, i, j, l), c)| gamma.powi(g) * inv.powi(i) * nu.powu(j) * w2.powu(l) * rat_to_f64(c))
            .sum()
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&(g, i, j, l), c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if n > 0 || c.is_negative() {
                write!(f, "{}{sign} ", if n > 0 { " " } else { "" })?;
            }
            write!(f, "{}", format_fraction(&c.abs()))?;
            for (sym, e) in [("gamma", g as i64), ("tau^-1", i as i64), ("nu", j as i64), ("w^2", l as i64)] {
                match e {
                    0 => {}
                    1 => write!(f, "*{sym}")?,
                    _ => write!(f, "*({sym})^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// `a_{2k−1}` in [`CoeffRing`], the `w²` series cut after `cap` terms.
/// Even indices give zero.
pub fn laurent_coeff_ring(index: i64, cap: u32) -> CoeffRing {
    let mut out = CoeffRing::zero();
    if index.rem_euclid(2) == 0 {
        return out;
    }
    let k = (index + 1) / 2;
    let l0 = (-k).max(0) as u32;
    for l in l0..l0 + cap {
        let nu_pow = (l as i64 + k) as u32;
        let sign = if l % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        out.add_term((1, 2 * l as i32, nu_pow, l), sign * inv_factorial(nu_pow) * inv_factorial(l));
    }
    out
}

/// `[x_m, x_n] = (m−n) a_{m+n−1}`.
pub fn bracket_xx(m: i64, n: i64, cap: u32) -> CoeffRing {
    laurent_coeff_ring(m + n - 1, cap).scale(&rint(m - n))
}

/// `Σ c x_m u^k` with grades `k ≤ K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexElem {
    pub terms: BTreeMap<(i64, u32), BigRational>,
    pub order: u32,
    /// Set when an operation dropped a term above grade `K`.
    pub truncated: bool,
}

impl VertexElem {
    pub fn zero(order: u32) -> Self {
        VertexElem { terms: BTreeMap::new(), order, truncated: false }
    }

    /// `x_m`.
    pub fn x(m: i64, order: u32) -> Self {
        let mut e = Self::zero(order);
        e.add_term(m, 0, BigRational::one());
        e
    }

    fn add_term(&mut self, m: i64, k: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        if k > self.order {
            self.truncated = true;
            return;
        }
        let slot = self.terms.entry((m, k)).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(m, k));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.truncated |= other.truncated;
        for (&(m, k), c) in &other.terms {
            out.add_term(m, k, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = Self::zero(self.order);
        out.truncated = self.truncated;
        for (&(m, k), c) in &self.terms {
            out.add_term(m, k, c * s);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Same terms up to grade `k`.
    pub fn up_to_grade(&self, k: u32) -> Self {
        let mut out = self.clone();
        out.terms.retain(|&(_, g), _| g <= k);
        out
    }

    /// `[L_n, ·]`; terms above grade `K` are dropped and flagged.
    pub fn apply_l(&self, n: i64) -> Self {
        let mut out = Self::zero(self.order);
        out.truncated = self.truncated;
        for (&(m, k), c) in &self.terms {
            out.add_term(n + m, k, c * rint(m));
            out.add_term(n + m + 2, k + 1, c * rint(2));
        }
        out
    }

    /// [`apply_l`](Self::apply_l), failing instead of dropping a term.
    pub fn apply_l_strict(&self, n: i64) -> Result<Self> {
        let out = self.apply_l(n);
        if out.truncated && !self.truncated {
            return Err(Error::TruncationOverflow(self.order as usize));
        }
        Ok(out)
    }

    /// `[self, other]` graded by total `u` power, cut at the smaller order.
    pub fn bracket(&self, other: &Self, cap: u32) -> BTreeMap<u32, CoeffRing> {
        let order = self.order.min(other.order);
        let mut out: BTreeMap<u32, CoeffRing> = BTreeMap::new();
        for (&(m, k), a) in &self.terms {
            for (&(n, l), b) in &other.terms {
                if k + l > order || m == n {
                    continue;
                }
                let term = bracket_xx(m, n, cap).scale(&(a * b));
                let slot = out.entry(k + l).or_default();
                *slot = slot.add(&term);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

impl fmt::Display for VertexElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&(m, k), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            write!(f, "{}*x[{m}]", format_fraction(&c.abs()))?;
            match k {
                0 => {}
                1 => write!(f, "*u")?,
                _ => write!(f, "*u^{k}")?,
            }
        }
        Ok(())
    }
}

/// `y_m = Σ_{k≤K} (−1)^k/k! x_{m+2k} u^k`, the eigenvector of `L_0` with eigenvalue `m`.
pub fn y_generator(m: i64, order: u32) -> VertexElem {
    let mut e = VertexElem::zero(order);
    for k in 0..=order {
        let sign = if k % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        e.add_term(m + 2 * k as i64, k, sign * inv_factorial(k));
    }
    e
}

/// `Σ_{k≤K} (−2)^k/k! x_{m+k} u^k`, the unnormalized variant; not an eigenvector.
pub fn y_generator_variant(m: i64, order: u32) -> VertexElem {
    let mut e = VertexElem::zero(order);
    for k in 0..=order {
        e.add_term(m + k as i64, k, pow(&rint(-2), k) * inv_factorial(k));
    }
    e
}

/// `[L_n, L_ℓ]` applied to `v`.
pub fn witt_commutator(n: i64, ell: i64, v: &VertexElem) -> VertexElem {
    v.apply_l(ell).apply_l(n).sub(&v.apply_l(n).apply_l(ell))
}

/// `[[L_n, L_ℓ], x_m] = (ℓ−n) [L_{n+ℓ}, x_m]`, exactly, at grade `K ≥ 2`.
pub fn witt_identity_check(n: i64, ell: i64, m: i64, order: u32) -> Result<bool> {
    witt_check_with_sign(n, ell, m, order, ell - n)
}

/// The same with the factor `(n−ℓ)`.
pub fn witt_identity_check_flipped(n: i64, ell: i64, m: i64, order: u32) -> Result<bool> {
    witt_check_with_sign(n, ell, m, order, n - ell)
}

fn witt_check_with_sign(n: i64, ell: i64, m: i64, order: u32, factor: i64) -> Result<bool> {
    if order < 2 {
        return Err(Error::TruncationOverflow(order as usize));
    }
    let x = VertexElem::x(m, order);
    let lhs = witt_commutator(n, ell, &x);
    let rhs = x.apply_l_strict(n + ell)?.scale(&rint(factor));
    Ok(lhs.terms == rhs.terms)
}

/// `[L_n, y_m] − m y_{n+m}`, cut at grade `K`.
pub fn eigen_defect(n: i64, y: &VertexElem, m: i64) -> VertexElem {
    let shifted = y_generator(n + m, y.order);
    y.apply_l(n).sub(&shifted.scale(&rint(m))).up_to_grade(y.order)
}

/// `C_{ℓ,m} = [y_ℓ, y_m]` by grade.
pub fn central_term(ell: i64, m: i64, order: u32, cap: u32) -> BTreeMap<u32, CoeffRing> {
    y_generator(ell, order).bracket(&y_generator(m, order), cap)
}

/// `(−2) Σ_n 4^{2n}/(2n)! a_{2n−1} u^{2n}`, the candidate series for `c_1`.
pub fn c1_variant(order: u32, cap: u32) -> BTreeMap<u32, CoeffRing> {
    let mut out = BTreeMap::new();
    for n in 0..=order / 2 {
        let g = 2 * n;
        let k = pow(&rint(4), g) * inv_factorial(g) * rint(-2);
        let v = laurent_coeff_ring(2 * n as i64 - 1, cap).scale(&k);
        if !v.is_zero() {
            out.insert(g, v);
        }
    }
    out
}

fn graded_eq(a: &BTreeMap<u32, CoeffRing>, b: &BTreeMap<u32, CoeffRing>) -> bool {
    a == b
}

fn graded_scale(a: &BTreeMap<u32, CoeffRing>, k: i64) -> BTreeMap<u32, CoeffRing> {
    a.iter()
        .map(|(g, v)| (*g, v.scale(&rint(k))))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// Outcome of the central-extension constraints for `|ℓ|, |m| ≤ range`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralReport {
    pub order: u32,
    /// `c_1 = C_{1,−1}`.
    pub c1: BTreeMap<u32, CoeffRing>,
    /// Every `C_{m,−m} = m c_1`.
    pub diagonal_ok: bool,
    /// Pairs `ℓ + m ≠ 0` with `C_{ℓ,m} ≠ 0`.
    pub off_diagonal_nonzero: Vec<(i64, i64)>,
    /// `C_{0,m} = 0` for all `m`.
    pub y0_central: bool,
    /// `c_1` equals the candidate series.
    pub c1_matches_variant: bool,
}

impl CentralReport {
    /// `C_{ℓ,m} = m c_1 δ_{ℓ+m,0}` throughout.
    pub fn passes(&self) -> bool {
        self.diagonal_ok && self.off_diagonal_nonzero.is_empty()
    }
}

pub fn central_constraint_check(order: u32, range: i64) -> Result<CentralReport> {
    if order < 2 {
        return Err(Error::TruncationOverflow(order as usize));
    }
    let cap = order + 2;
    let c1 = central_term(1, -1, order, cap);
    let mut diagonal_ok = true;
    let mut off = Vec::new();
    let mut y0_central = true;
    for ell in -range..=range {
        for m in -range..=range {
            let c = central_term(ell, m, order, cap);
            if ell + m == 0 {
                diagonal_ok &= graded_eq(&c, &graded_scale(&c1, ell));
            } else if !c.is_empty() {
                off.push((ell, m));
            }
            if ell == 0 && m != 0 && !c.is_empty() {
                y0_central = false;
            }
        }
    }
    let c1_matches_variant = graded_eq(&c1, &c1_variant(order, cap));
    Ok(CentralReport { order, c1, diagonal_ok, off_diagonal_nonzero: off, y0_central, c1_matches_variant })
}

/// `K_{m,n} = [L_m, L_n] − (n−m) L_{m+n}` applied to `y_ℓ` for `|ℓ| ≤ 3`; all vanish up to grade `K`.
pub fn k_centrality_check(m: i64, n: i64, order: u32) -> Result<bool> {
    k_check_with_sign(m, n, order, n - m)
}

/// The same with `(m−n) L_{m+n}`.
pub fn k_centrality_check_flipped(m: i64, n: i64, order: u32) -> Result<bool> {
    k_check_with_sign(m, n, order, m - n)
}

fn k_check_with_sign(m: i64, n: i64, order: u32, factor: i64) -> Result<bool> {
    if order < 2 {
        return Err(Error::TruncationOverflow(order as usize));
    }
    Ok((-3..=3).all(|ell| {
        let y = y_generator(ell, order);
        let k = witt_commutator(m, n, &y).sub(&y.apply_l(m + n).scale(&rint(factor)));
        k.up_to_grade(order).is_zero()
    }))
}

/// Largest `|CoeffRing value − numeric Laurent coefficient|` for `2k−1` in the range.
pub fn dictionary_residual(ks: std::ops::RangeInclusive<i64>, tau: C64, nu: C64, w: C64, cap: u32) -> f64 {
    ks.map(|k| {
        let exact = laurent_coeff_ring(2 * k - 1, cap).eval(tau, nu, w);
        (exact - crate::residue::laurent_coeff_closed(k, nu, tau, w)).norm()
    })
    .fold(0.0, f64::max)
}
