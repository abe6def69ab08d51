//! Jacobi theta functions as expressions of bilateral sums of `e_*^{ikw}`.
//!
//! The expression of `e_*^{ikw}` is `e^{−k²τ/4} e^{ikw}`, so for `Re τ > 0`
//! the bilateral sums converge to entire functions of `w`:
//!
//! * `θ₁ = (1/i) Σ (−1)ⁿ e_*^{(2n+1)iw}`
//! * `θ₂ = Σ e_*^{(2n+1)iw}`
//! * `θ₃ = Σ e_*^{2niw}`
//! * `θ₄ = Σ (−1)ⁿ e_*^{2niw}`

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::gauss::translate_action_fn;
use crate::scalar::C64;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThetaKind {
    One,
    Two,
    Three,
    Four,
}

impl ThetaKind {
    pub const ALL: [ThetaKind; 4] = [ThetaKind::One, ThetaKind::Two, ThetaKind::Three, ThetaKind::Four];

    pub fn index(self) -> u8 {
        match self {
            ThetaKind::One => 1,
            ThetaKind::Two => 2,
            ThetaKind::Three => 3,
            ThetaKind::Four => 4,
        }
    }

    /// `+1` for θ₂, θ₃ and `−1` for θ₁, θ₄: the eigenvalue of `e_*^{2iw}∗`.
    pub fn sign(self) -> f64 {
        match self {
            ThetaKind::Two | ThetaKind::Three => 1.0,
            ThetaKind::One | ThetaKind::Four => -1.0,
        }
    }

    /// Coefficient of `e_*^{ikw}` in the bilateral sum, and the frequency `k`, for index `n`.
    fn term(self, n: i64) -> (i64, C64) {
        let alt = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        match self {
            ThetaKind::One => (2 * n + 1, -I * alt),
            ThetaKind::Two => (2 * n + 1, c(1.0)),
            ThetaKind::Three => (2 * n, c(1.0)),
            ThetaKind::Four => (2 * n, c(alt)),
        }
    }
}

impl TryFrom<u8> for ThetaKind {
    type Error = Error;

    fn try_from(k: u8) -> Result<Self> {
        match k {
            1 => Ok(ThetaKind::One),
            2 => Ok(ThetaKind::Two),
            3 => Ok(ThetaKind::Three),
            4 => Ok(ThetaKind::Four),
            _ => Err(Error::Domain(format!("theta kind must be 1..4, got {k}"))),
        }
    }
}

impl fmt::Display for ThetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theta{}", self.index())
    }
}

/// Default tail tolerance for theta sums.
pub const THETA_TOL: f64 = 1e-16;

fn require_right_half(tau: C64) -> Result<()> {
    if tau.re > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("need Re τ > 0, got τ = {tau}")))
    }
}

/// A truncated theta series `Σ_{|n|≤N}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaSeries {
    pub kind: ThetaKind,
    pub tau: C64,
    pub trunc: usize,
    pub q: C64,
}

impl ThetaSeries {
    /// `N = ⌈√(ln(1/tol)/Re τ)⌉ + 2`, so that `|q|^{N²} < tol`.
    pub fn new(kind: ThetaKind, tau: C64, tol: f64) -> Result<Self> {
        require_right_half(tau)?;
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Error::Domain(format!("tolerance must lie in (0, 1), got {tol}")));
        }
        let trunc = ((1.0 / tol).ln() / tau.re).sqrt().ceil() as usize + 2;
        Ok(ThetaSeries { kind, tau, trunc, q: (-tau).exp() })
    }

    pub fn with_trunc(mut self, trunc: usize) -> Self {
        self.trunc = trunc;
        self
    }

    /// Truncation needed at `w`: the factor `e^{ikw}` grows like `e^{|k Im w|}`.
    fn trunc_at(&self, w: C64) -> usize {
        let y = w.im.abs();
        if y == 0.0 {
            return self.trunc;
        }
        let l = (self.trunc - 2) as f64 * (self.trunc - 2) as f64 * self.tau.re;
        let m = (y + (y * y + l * self.tau.re).sqrt()) / self.tau.re;
        self.trunc.max(m.ceil() as usize + 2)
    }

    pub fn eval(&self, w: C64) -> C64 {
        let n = self.trunc_at(w) as i64;
        (-n - 1..=n)
            .map(|j| {
                let (k, coef) = self.kind.term(j);
                let k = k as f64;
                coef * (-self.tau * k * k / 4.0 + I * k * w).exp()
            })
            .sum()
    }

    /// The same truncated sum as a finite star-exponential sum.
    pub fn exp_sum(&self) -> ExpSum {
        let n = self.trunc as i64;
        let mut s = ExpSum::zero();
        for j in -n - 1..=n {
            let (k, coef) = self.kind.term(j);
            s.add_term(k, coef);
        }
        s
    }
}

/// `θ_kind(w, τ)` to [`THETA_TOL`].
pub fn theta_eval(kind: ThetaKind, w: C64, tau: C64) -> Result<C64> {
    Ok(ThetaSeries::new(kind, tau, THETA_TOL)?.eval(w))
}

/// `max_w |e^{2iw−τ} θ(w+iτ) ∓ θ(w)|`.
pub fn quasi_periodicity_check(kind: ThetaKind, tau: C64, ws: &[f64]) -> Result<f64> {
    let th = ThetaSeries::new(kind, tau, THETA_TOL)?;
    Ok(ws
        .iter()
        .map(|&x| {
            let w = c(x);
            let lhs = (I * w * 2.0 - tau).exp() * th.eval(w + I * tau);
            (lhs - th.eval(w) * kind.sign()).norm()
        })
        .fold(0.0, f64::max))
}

/// Right side of the imaginary transformation, `√(π/τ) e^{−w²/τ} θ₃(πw/(iτ), π²/τ)`.
pub fn imaginary_transform(w: C64, tau: C64) -> Result<C64> {
    require_right_half(tau)?;
    let dual = c(PI * PI) / tau;
    require_right_half(dual)?;
    let th = theta_eval(ThetaKind::Three, w * PI / (I * tau), dual)?;
    Ok((c(PI) / tau).sqrt() * (-w * w / tau).exp() * th)
}

/// `|θ₃(w,τ) − √(π/τ) e^{−w²/τ} θ₃(πw/(iτ), π²/τ)|`.
pub fn imaginary_transform_check(w: C64, tau: C64) -> Result<f64> {
    Ok((theta_eval(ThetaKind::Three, w, tau)? - imaginary_transform(w, tau)?).norm())
}

/// `√(π/τ) Σ_{|n|≤N} e^{−(w+πn)²/τ}`, the Gaussian comb of star-deltas.
pub fn delta_sum_representation(w: C64, tau: C64, n: usize) -> Result<C64> {
    require_right_half(tau)?;
    let n = n as i64;
    let sum: C64 = (-n..=n)
        .map(|j| {
            let x = w + PI * j as f64;
            (-x * x / tau).exp()
        })
        .sum();
    Ok((c(PI) / tau).sqrt() * sum)
}

/// `max_w |e_*^{2iw} ∗ f − σ f|`, the product computed by the translation rule.
pub fn eigen_residual(f: impl Fn(C64) -> C64 + Copy, sigma: f64, tau: C64, ws: &[f64]) -> f64 {
    let moved = translate_action_fn(I, f, tau);
    ws.iter()
        .map(|&x| (moved(c(x)) - f(c(x)) * sigma).norm())
        .fold(0.0, f64::max)
}

/// `e_*^{2iw} ∗ θ_i = ±θ_i` on a grid.
pub fn theta_eigen_check(kind: ThetaKind, tau: C64, ws: &[f64]) -> Result<f64> {
    let th = ThetaSeries::new(kind, tau, THETA_TOL)?;
    Ok(eigen_residual(|w| th.eval(w), kind.sign(), tau, ws))
}

/// A finite sum `Σ c_k e_*^{ikw}`. Products follow the exponential law
/// `e_*^{ikw} ∗ e_*^{ilw} = e_*^{i(k+l)w}`, so they are exact convolutions.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExpSum {
    pub terms: BTreeMap<i64, C64>,
}

impl ExpSum {
    pub fn zero() -> Self {
        ExpSum::default()
    }

    pub fn single(k: i64, coef: C64) -> Self {
        let mut s = ExpSum::zero();
        s.add_term(k, coef);
        s
    }

    pub fn one() -> Self {
        ExpSum::single(0, c(1.0))
    }

    pub fn add_term(&mut self, k: i64, coef: C64) {
        let slot = self.terms.entry(k).or_insert(c(0.0));
        *slot += coef;
        if *slot == c(0.0) {
            self.terms.remove(&k);
        }
    }

    /// `Σ_{n<count} ratioⁿ e_*^{i(first + n·step)w}`, scaled by `coef`.
    pub fn geometric(coef: C64, first: i64, step: i64, ratio: C64, count: usize) -> Self {
        let mut s = ExpSum::zero();
        let mut r = coef;
        for n in 0..count as i64 {
            s.add_term(first + n * step, r);
            r *= ratio;
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ExpSum) -> ExpSum {
        let mut s = self.clone();
        for (&k, &v) in &other.terms {
            s.add_term(k, v);
        }
        s
    }

    pub fn sub(&self, other: &ExpSum) -> ExpSum {
        self.add(&other.scale(c(-1.0)))
    }

    pub fn scale(&self, k: C64) -> ExpSum {
        let mut s = ExpSum::zero();
        for (&j, &v) in &self.terms {
            s.add_term(j, v * k);
        }
        s
    }

    pub fn star(&self, other: &ExpSum) -> ExpSum {
        let mut s = ExpSum::zero();
        for (&k, &a) in &self.terms {
            for (&l, &b) in &other.terms {
                s.add_term(k + l, a * b);
            }
        }
        s
    }

    /// `Σ c_k e^{−k²τ/4} e^{ikw}`.
    pub fn tau_expression(&self, w: C64, tau: C64) -> C64 {
        self.terms
            .iter()
            .map(|(&k, &v)| {
                let k = k as f64;
                v * (-tau * k * k / 4.0 + I * k * w).exp()
            })
            .sum()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// The two groupings of `inv₊ ∗ (1−E) ∗ inv₋` with `E = e_*^{2iw}`.
#[derive(Clone, Debug)]
pub struct AssociativityDemo {
    /// Largest coefficient of the difference of the groupings at finite `N`; exactly 0.
    pub finite_gap: f64,
    /// `max_w |(right − left) − θ₃|` for the limiting groupings.
    pub limit_gap_vs_theta: f64,
    /// `max_w |right − left|`, visibly nonzero.
    pub limit_gap_size: f64,
}

/// Truncated one-sided inverses of `1 − σE`:
/// `inv₊ = Σ_{n=0}^{N} σⁿEⁿ` and `inv₋ = −Σ_{n=1}^{N} σ^{−n}E^{−n}`.
pub fn one_sided_inverses(sigma: f64, n: usize) -> (ExpSum, ExpSum) {
    let plus = ExpSum::geometric(c(1.0), 0, 2, c(sigma), n + 1);
    let minus = ExpSum::geometric(c(-sigma), -2, -2, c(sigma), n);
    (plus, minus)
}

/// Groupings `(inv₊ ∗ f) ∗ inv₋` and `inv₊ ∗ (f ∗ inv₋)` with `f = 1 − e_*^{2iw}`.
///
/// At finite `N` both are the same finite sum. Letting `N → ∞` inside the
/// brackets first turns `inv₊ ∗ f` and `f ∗ inv₋` into 1, leaving `inv₋`
/// and `inv₊`; their difference is `θ₃`.
pub fn associativity_demo(n: usize, tau: C64, ws: &[f64]) -> Result<AssociativityDemo> {
    require_right_half(tau)?;
    let f = ExpSum::one().sub(&ExpSum::single(2, c(1.0)));
    let (plus, minus) = one_sided_inverses(1.0, n);
    let left = plus.star(&f).star(&minus);
    let right = plus.star(&f.star(&minus));
    let finite_gap = left.sub(&right).max_abs_coeff();
    let th = ThetaSeries::new(ThetaKind::Three, tau, THETA_TOL)?;
    let mut vs_theta: f64 = 0.0;
    let mut size: f64 = 0.0;
    for &x in ws {
        let w = c(x);
        let gap = plus.tau_expression(w, tau) - minus.tau_expression(w, tau);
        vs_theta = vs_theta.max((gap - th.eval(w)).norm());
        size = size.max(gap.norm());
    }
    Ok(AssociativityDemo { finite_gap, limit_gap_vs_theta: vs_theta, limit_gap_size: size })
}

/// Residuals of each theta function written as a difference of two inverses.
#[derive(Clone, Debug)]
pub struct InverseDifference {
    pub kind: ThetaKind,
    /// `max_w |u ∗ inv − 1|` over both inverses.
    pub inverse_defect: f64,
    /// `max_w |inv₊ − inv₋ − κθ|`.
    pub difference_residual: f64,
}

/// Checks `θ₃ = (1−E²)⁻¹₊ − (1−E²)⁻¹₋`, `θ₄ = (1+E²)⁻¹₊ − (1+E²)⁻¹₋`,
/// `2iθ₁ = (cos_*w)⁻¹₊ − (cos_*w)⁻¹₋` and `−2θ₂ = (i sin_*w)⁻¹₊ − (i sin_*w)⁻¹₋`,
/// with `E = e_*^{iw}` and all series truncated at `N` terms.
pub fn inverse_difference(kind: ThetaKind, tau: C64, n: usize, ws: &[f64]) -> Result<InverseDifference> {
    require_right_half(tau)?;
    let (u, plus, minus, kappa) = match kind {
        ThetaKind::Three | ThetaKind::Four => {
            let sigma = if kind == ThetaKind::Three { 1.0 } else { -1.0 };
            let u = ExpSum::one().sub(&ExpSum::single(2, c(sigma)));
            let (p, m) = one_sided_inverses(sigma, n);
            (u, p, m, c(1.0))
        }
        ThetaKind::One | ThetaKind::Two => {
            // u = (E − σE⁻¹)/2 with σ = −1 for cos and +1 for i·sin
            let sigma = if kind == ThetaKind::One { -1.0 } else { 1.0 };
            let u = ExpSum::single(1, c(0.5)).add(&ExpSum::single(-1, c(-sigma / 2.0)));
            let p = ExpSum::geometric(c(-2.0 * sigma), 1, 2, c(sigma), n + 1);
            let m = ExpSum::geometric(c(2.0), -1, -2, c(sigma), n + 1);
            let kappa = if kind == ThetaKind::One { I * 2.0 } else { c(-2.0) };
            (u, p, m, kappa)
        }
    };
    let th = ThetaSeries::new(kind, tau, THETA_TOL)?;
    let one = ExpSum::one();
    let defect_p = u.star(&plus).sub(&one);
    let defect_m = u.star(&minus).sub(&one);
    let mut defect: f64 = 0.0;
    let mut diff: f64 = 0.0;
    for &x in ws {
        let w = c(x);
        defect = defect.max(defect_p.tau_expression(w, tau).norm()).max(defect_m.tau_expression(w, tau).norm());
        let d = plus.tau_expression(w, tau) - minus.tau_expression(w, tau);
        diff = diff.max((d - th.eval(w) * kappa).norm());
    }
    Ok(InverseDifference { kind, inverse_defect: defect, difference_residual: diff })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Vec<f64> {
        (0..21).map(|i| -1.0 + 0.1 * i as f64).collect()
    }

    #[test]
    fn special_values() {
        let tau = c(1.0);
        let direct: f64 = 1.0 + 2.0 * (1..12).map(|n| (-(n * n) as f64).exp()).sum::<f64>();
        assert!((theta_eval(ThetaKind::Three, c(0.0), tau).unwrap() - direct).norm() < 1e-15);
        assert!(theta_eval(ThetaKind::One, c(0.0), tau).unwrap().norm() < 1e-16);
        let w = c(0.3);
        let a = theta_eval(ThetaKind::Three, w, tau).unwrap();
        let b = theta_eval(ThetaKind::Three, w + PI, tau).unwrap();
        assert!((a - b).norm() < 1e-14);
        assert!(theta_eval(ThetaKind::Three, w, c(-1.0)).is_err());
    }

    #[test]
    fn quasi_periodic() {
        for kind in ThetaKind::ALL {
            for tau in [c(1.0), C64::new(0.7, 0.4)] {
                assert!(quasi_periodicity_check(kind, tau, &grid()).unwrap() < 1e-10, "{kind}");
            }
        }
        // w = 0 for θ₄
        let tau = c(1.0);
        let lhs = (-tau).exp() * theta_eval(ThetaKind::Four, I * tau, tau).unwrap();
        assert!((lhs + theta_eval(ThetaKind::Four, c(0.0), tau).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn imaginary_transformation() {
        assert!(imaginary_transform_check(c(0.0), c(PI)).unwrap() < 1e-15);
        assert!(imaginary_transform_check(c(0.0), c(1.0)).unwrap() < 1e-14);
        assert!(imaginary_transform_check(c(0.7), c(2.0)).unwrap() < 1e-12);
    }

    #[test]
    fn comb_matches_theta() {
        for (w, tau) in [(0.0, 1.0), (0.4, 2.5), (-1.1, 0.6)] {
            let th = theta_eval(ThetaKind::Three, c(w), c(tau)).unwrap();
            let comb = delta_sum_representation(c(w), c(tau), 12).unwrap();
            assert!((th - comb).norm() < 1e-13);
        }
        let a = delta_sum_representation(c(0.2), c(1.0), 12).unwrap();
        let b = delta_sum_representation(c(0.2 + PI), c(1.0), 12).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn eigen_identity_and_negative_control() {
        for kind in ThetaKind::ALL {
            assert!(theta_eigen_check(kind, c(1.0), &grid()).unwrap() < 1e-10);
        }
        assert!(eigen_residual(|_| c(1.0), 1.0, c(1.0), &grid()) > 0.1);
    }

    #[test]
    fn truncation_is_honest() {
        let th = ThetaSeries::new(ThetaKind::Two, C64::new(0.5, 0.2), 1e-12).unwrap();
        let doubled = th.clone().with_trunc(2 * th.trunc);
        for w in [c(0.0), C64::new(0.4, 0.3)] {
            assert!((th.eval(w) - doubled.eval(w)).norm() < 1e-13);
        }
    }

    #[test]
    fn equal_coefficients_give_theta_three() {
        let tau = c(0.8);
        let th = ThetaSeries::new(ThetaKind::Three, tau, THETA_TOL).unwrap();
        let sum = ExpSum::geometric(c(2.5), -2 * th.trunc as i64, 2, c(1.0), 2 * th.trunc + 1);
        for w in grid() {
            assert!((sum.tau_expression(c(w), tau) - th.eval(c(w)) * 2.5).norm() < 1e-14);
        }
        // e_*^{2iw} ∗ shifts the coefficients by one slot
        let moved = ExpSum::single(2, c(1.0)).star(&sum);
        assert_eq!(moved.terms.len(), sum.terms.len());
    }

    #[test]
    fn associativity_breaks_by_theta() {
        let d = associativity_demo(12, c(1.0), &grid()).unwrap();
        assert_eq!(d.finite_gap, 0.0);
        assert!(d.limit_gap_vs_theta < 1e-8);
        assert!(d.limit_gap_size > 1.0);
    }

    #[test]
    fn theta_as_difference_of_inverses() {
        for kind in ThetaKind::ALL {
            let r = inverse_difference(kind, c(1.0), 14, &grid()).unwrap();
            assert!(r.inverse_defect < 1e-10, "{kind}: {r:?}");
            assert!(r.difference_residual < 1e-10, "{kind}: {r:?}");
        }
    }
}
