//! Laurent coefficients of `e_*^{z(ν+w_*²)}` around its branch point `z = 1/τ`.
//!
//! On the double cover `z = τ⁻¹ + s²` the expression is single valued in `s`:
//! `E(s) = e^{(τ⁻¹+s²)ν} (s√(−τ))⁻¹ e^{−w²/τ − w²/(τ²s²)}`, and only odd
//! powers of `s` occur. Its coefficients are
//!
//! `a_{2k−1} = γ Σ_{l ≥ max(0,−k)} ν^{l+k}/(l+k)! · (−w²/τ²)^l / l!`,
//! `γ = e^{ν/τ} (−τ)^{−1/2} e^{−w²/τ}`.
//!
//! Throughout, `w_*²` is the star square `w∗w`, whose expression is `w² + τ/2`.

pub mod covariant;

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use nalgebra::{Matrix2, Vector2};

use crate::error::{Error, Result};
use crate::gauss::{continue_sqrt, poly_star_gauss, sheet_of, GaussPoly, PathParam, Sheet};
use crate::poly::{w_star_power, Poly};
use crate::quad::{contour_trapezoid, gauss_legendre, GL_ORDER};
use crate::scalar::C64;

pub use covariant::{
    covariant_from_surface, laurent_covariant_residual, ParallelPoly, RelativityFamily,
};

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

const I: C64 = C64::new(0.0, 1.0);

/// Default contour node count.
pub const CONTOUR_NODES: usize = 256;

fn require_nonzero(tau: C64) -> Result<()> {
    if tau.norm() == 0.0 {
        Err(Error::Domain("τ = 0".into()))
    } else {
        Ok(())
    }
}

/// The expression `ν + w∗w = ν + τ/2 + w²`.
pub fn generator(nu: C64, tau: C64) -> Poly {
    &w_star_power(2, &tau) + &Poly::constant(nu)
}

/// `γ = e^{ν/τ} (−τ)^{−1/2} e^{−w²/τ}`, principal root.
pub fn gamma_factor(nu: C64, tau: C64, w: C64) -> C64 {
    (nu / tau).exp() * (-tau).sqrt().inv() * (-w * w / tau).exp()
}

fn first_index(k: i64) -> i64 {
    (-k).max(0)
}

/// `a_{2k−1}(ν,τ,w)` from its double series.
pub fn laurent_coeff_closed(k: i64, nu: C64, tau: C64, w: C64) -> C64 {
    let x = -w * w / (tau * tau);
    let l0 = first_index(k);
    // term for l = l0: ν^{l0+k}/(l0+k)! · x^{l0}/l0!
    let mut term = c(1.0);
    for j in 1..=(l0 + k) {
        term = term * nu / j as f64;
    }
    for j in 1..=l0 {
        term = term * x / j as f64;
    }
    let mut sum = term;
    let mut l = l0;
    loop {
        l += 1;
        term = term * nu * x / ((l + k) as f64 * l as f64);
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() || term.norm() == 0.0 || l > l0 + 400 {
            break;
        }
    }
    gamma_factor(nu, tau, w) * sum
}

/// `a_{2k−1}` as `amp · S(w) · e^{−w²/τ}` with the series `S` cut after `terms` terms.
pub fn laurent_coeff_gauss(k: i64, nu: C64, tau: C64, terms: usize) -> GaussPoly {
    let l0 = first_index(k) as usize;
    let x = -(tau * tau).inv();
    let mut coeffs = vec![c(0.0); 2 * (l0 + terms) + 1];
    let mut term = c(1.0);
    for j in 1..=(l0 as i64 + k) {
        term = term * nu / j as f64;
    }
    for j in 1..=l0 {
        term = term * x / j as f64;
    }
    for l in l0..l0 + terms {
        coeffs[2 * l] = term;
        let next = (l + 1) as f64;
        term = term * nu * x / ((next as i64 + k) as f64 * next);
    }
    let amp = (nu / tau).exp() * (-tau).sqrt().inv();
    GaussPoly::new(Poly::new(coeffs), -tau.inv(), c(0.0), amp, Sheet::Plus)
}

/// Coefficients `a_{2k−1}` for a range of `k`, keyed by `2k − 1`.
#[derive(Clone, Debug)]
pub struct LaurentObj {
    pub nu: C64,
    pub tau: C64,
    pub coeffs: BTreeMap<i64, GaussPoly>,
}

impl LaurentObj {
    pub fn new(nu: C64, tau: C64, ks: RangeInclusive<i64>, terms: usize) -> Result<Self> {
        require_nonzero(tau)?;
        let coeffs = ks.map(|k| (2 * k - 1, laurent_coeff_gauss(k, nu, tau, terms))).collect();
        Ok(LaurentObj { nu, tau, coeffs })
    }

    /// `a_{2k−1}`.
    pub fn get(&self, k: i64) -> Option<&GaussPoly> {
        self.coeffs.get(&(2 * k - 1))
    }
}

/// Expression of `e_*^{z(ν+w_*²)}` given the root `√(1−τz)` on the wanted sheet.
pub fn quad_exp_value(z: C64, root: C64, nu: C64, tau: C64, w: C64) -> C64 {
    let d = c(1.0) - tau * z;
    (z * nu).exp() / root * (z * w * w / d).exp()
}

/// `(2πi)⁻¹ ∮ s^{−2k} e_*^{(τ⁻¹+s²)(ν+w_*²)} ds` over `|s| = radius`.
///
/// The root `√(1−τz) = s√(−τ)` makes the integrand single valued in `s`.
/// The rule is repeated with twice the nodes; disagreement is an error.
pub fn residue_contour(k: i64, nu: C64, tau: C64, w: C64, radius: f64, n_nodes: usize) -> Result<C64> {
    require_nonzero(tau)?;
    if radius <= 0.0 {
        return Err(Error::Domain(format!("radius must be positive, got {radius}")));
    }
    let sq = (-tau).sqrt();
    let inv = tau.inv();
    let f = |s: C64| s.powi(-2 * k as i32) * quad_exp_value(inv + s * s, s * sq, nu, tau, w);
    let v = contour_trapezoid(f, radius, n_nodes);
    let check = contour_trapezoid(f, radius, 2 * n_nodes);
    if (v - check).norm() > 1e-10 * (1.0 + check.norm()) {
        return Err(Error::NodeCount(format!("{n_nodes} nodes give {v}, {} give {check}", 2 * n_nodes)));
    }
    Ok(v)
}

/// `max_w |(ν+w_*²) ∗ a_{2k−1} − (k+½) a_{2k+1}| / max_w |a_{2k+1}|`, or the absolute
/// residual when the right side vanishes.
pub fn ladder_check(k: i64, nu: C64, tau: C64, ws: &[f64]) -> Result<f64> {
    require_nonzero(tau)?;
    let terms = 60;
    let a = laurent_coeff_gauss(k, nu, tau, terms);
    let next = laurent_coeff_gauss(k + 1, nu, tau, terms);
    let lhs = poly_star_gauss(&generator(nu, tau), &a, tau);
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &x in ws {
        let w = c(x);
        let want = next.eval(w) * (k as f64 + 0.5);
        worst = worst.max((lhs.eval(w) - want).norm());
        scale = scale.max(want.norm());
    }
    Ok(if scale > 1.0 { worst / scale } else { worst })
}

/// `max_w |∮_{C²} e_*^{z(ν+w_*²)} dz|` with `z = τ⁻¹ + s²`, `dz = 2s ds`.
pub fn closed_contour_vanishing(nu: C64, tau: C64, radius: f64, n_nodes: usize, ws: &[f64]) -> Result<f64> {
    require_nonzero(tau)?;
    let sq = (-tau).sqrt();
    let inv = tau.inv();
    let two_pi_i = I * 2.0 * std::f64::consts::PI;
    Ok(ws
        .iter()
        .map(|&x| {
            let f = |s: C64| quad_exp_value(inv + s * s, s * sq, nu, tau, c(x)) * s * 2.0;
            (contour_trapezoid(f, radius, n_nodes) * two_pi_i).norm()
        })
        .fold(0.0, f64::max))
}

/// `e_*^{t w_*²} ∗ g` in a form that stays regular at `t = 1/τ`.
///
/// With `g = p(w) e^{a w² + b w}`, `d = 1 − τt` and `Δ' = d − t a τ²`:
/// amplitude `Δ'^{−1/2} e^{τ²t b²/(4Δ')}`, exponent `((t + a + aτt)w² + bw)/Δ'`,
/// polynomial `Σ p_k P_k(λ, τ²t/Δ')` with `λ = w/Δ' + τ²t b/(2Δ')`.
/// The root of `Δ'` is continued along the straight path from `t = 0`.
pub fn quad_exp_star(t: C64, tau: C64, g: &GaussPoly) -> Result<GaussPoly> {
    let (a, b) = (g.alpha, g.beta);
    let tau2 = tau * tau;
    let dp_at = |s: C64| c(1.0) - tau * s - s * a * tau2;
    let dp = dp_at(t);
    if dp.norm() < crate::gauss::SINGULAR_MARGIN {
        return Err(Error::SingularProduct(format!("Δ' vanishes at t = {t}")));
    }
    let root = continue_sqrt(dp_at, &PathParam::straight(t), c(1.0))?;
    let principal = dp.sqrt();
    let sigma = tau2 * t / dp;
    let mut poly = Poly::zero();
    for (k, pk) in g.poly.coeffs().iter().enumerate() {
        poly = &poly + &w_star_power(k, &sigma).scale(pk);
    }
    let poly = poly.compose_linear(&(tau2 * t * b / (dp * 2.0)), &dp.inv());
    let alpha = (t + a + a * tau * t) / dp;
    let amp = g.amp / principal * (tau2 * t * b * b / (dp * 4.0)).exp();
    let sheet = g.sheet.times(sheet_of(root, principal));
    Ok(GaussPoly::new(poly, alpha, b / dp, amp, sheet))
}

/// `max_w |e_*^{tw_*²} ∗ δ_*(w+α) − e^{tα²} δ_*(w+α)|`.
pub fn semigroup_on_delta(t: C64, alpha: C64, tau: C64, ws: &[f64]) -> Result<f64> {
    let delta = crate::distributions::delta_tau(alpha, tau)?;
    let moved = quad_exp_star(t, tau, &delta)?;
    let k = (t * alpha * alpha).exp();
    Ok(ws
        .iter()
        .map(|&x| (moved.eval(c(x)) - delta.eval(c(x)) * k).norm())
        .fold(0.0, f64::max))
}

/// The even and odd solutions `Φ_α`, `Ψ_α` of `(α² − w_*²) ∗ f = 0`, each a
/// combination `a δ_*(w+α) + b δ_*(w−α)`.
#[derive(Clone, Debug)]
pub struct PhiPsi {
    pub alpha: C64,
    pub tau: C64,
    /// `δ_*(w+α)` and `δ_*(w−α)`.
    pub deltas: [GaussPoly; 2],
    pub phi: [C64; 2],
    pub psi: [C64; 2],
}

fn solve_boundary(m: &Matrix2<C64>, rhs: Vector2<C64>, what: &str) -> Result<[C64; 2]> {
    let scale = m.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let sol = m.svd(true, true).solve(&rhs, 1e-12 * scale).map_err(|e| Error::DegenerateBoundary(e.to_string()))?;
    let resid = (m * sol - rhs).norm();
    if resid > 1e-10 * (1.0 + rhs.norm()) {
        return Err(Error::DegenerateBoundary(format!("{what}: boundary data cannot be met")));
    }
    Ok([sol[0], sol[1]])
}

impl PhiPsi {
    /// Solves the boundary systems `Φ(0)=1, Φ'(0)=0` and `Ψ(0)=0, Ψ'(0)=1`.
    /// When the system is singular the minimum-norm solution is kept if it
    /// meets the data; otherwise the call fails.
    pub fn new(alpha: C64, tau: C64) -> Result<Self> {
        let plus = crate::distributions::delta_tau(alpha, tau)?;
        let minus = crate::distributions::delta_tau(-alpha, tau)?;
        let zero = c(0.0);
        let m = Matrix2::new(
            plus.eval(zero),
            minus.eval(zero),
            plus.derivative().eval(zero),
            minus.derivative().eval(zero),
        );
        let phi = solve_boundary(&m, Vector2::new(c(1.0), zero), "Φ")?;
        let psi = solve_boundary(&m, Vector2::new(zero, c(1.0)), "Ψ")?;
        Ok(PhiPsi { alpha, tau, deltas: [plus, minus], phi, psi })
    }

    fn combo(&self, ab: [C64; 2], w: C64, order: usize) -> C64 {
        ab[0] * self.deltas[0].nth_derivative(order).eval(w) + ab[1] * self.deltas[1].nth_derivative(order).eval(w)
    }

    pub fn phi(&self, w: C64) -> C64 {
        self.combo(self.phi, w, 0)
    }

    pub fn psi(&self, w: C64) -> C64 {
        self.combo(self.psi, w, 0)
    }

    pub fn phi_deriv(&self, w: C64) -> C64 {
        self.combo(self.phi, w, 1)
    }

    pub fn psi_deriv(&self, w: C64) -> C64 {
        self.combo(self.psi, w, 1)
    }

    /// Largest coefficient of `(α² − w_*²) ∗ δ_*(w±α)`, closed form.
    pub fn annihilation_residual(&self) -> f64 {
        let p = &Poly::constant(self.alpha * self.alpha) - &w_star_power(2, &self.tau);
        self.deltas
            .iter()
            .map(|d| poly_star_gauss(&p, d, self.tau).full_poly().max_abs_coeff())
            .fold(0.0, f64::max)
    }

    /// `max_w |e_*^{tw_*²} ∗ Φ − e^{tα²} Φ|`, and the same for `Ψ`.
    pub fn semigroup_residual(&self, t: C64, ws: &[f64]) -> Result<f64> {
        let moved = [quad_exp_star(t, self.tau, &self.deltas[0])?, quad_exp_star(t, self.tau, &self.deltas[1])?];
        let k = (t * self.alpha * self.alpha).exp();
        let mut worst: f64 = 0.0;
        for &x in ws {
            let w = c(x);
            for ab in [self.phi, self.psi] {
                let lhs = ab[0] * moved[0].eval(w) + ab[1] * moved[1].eval(w);
                worst = worst.max((lhs - self.combo(ab, w, 0) * k).norm());
            }
        }
        Ok(worst)
    }
}

/// [`PhiPsi::new`].
pub fn phi_psi(alpha: C64, tau: C64) -> Result<PhiPsi> {
    PhiPsi::new(alpha, tau)
}

/// Both sides of the discontinuity at `t = 0`.
#[derive(Clone, Debug)]
pub struct Orphan {
    /// `max_w |e_*^{t(ν+w_*²)} ∗ a_{2k−1}|` over the contour radii `r` and `r/2`.
    pub annihilation: f64,
    /// `(k+½) a_{2k+1}` on the grid: the value of `(ν+w_*²) ∗ a_{2k−1}`.
    pub bracket: Vec<C64>,
    /// Ladder residual backing `bracket`.
    pub bracket_residual: f64,
}

/// `e_*^{t(ν+w_*²)} ∗ a_{2k−1}` for `t ≠ 0`, computed as
/// `(2πi)⁻¹ ∮ s^{−2k} e_*^{(τ⁻¹+s²+t)(ν+w_*²)} ds` on a circle small enough
/// that the shifted branch point stays outside, against the `t = 0` bracket.
pub fn orphan_annihilation(t: C64, k: i64, nu: C64, tau: C64, ws: &[f64]) -> Result<Orphan> {
    require_nonzero(tau)?;
    if t.norm() == 0.0 {
        return Err(Error::Domain("t must be nonzero".into()));
    }
    let inv = tau.inv();
    let outer = (-tau * t).sqrt();
    let radius = (t.norm() / 2.0).min(t.norm().sqrt() / 2.0);
    let mut annihilation: f64 = 0.0;
    for r in [radius, radius / 2.0] {
        for &x in ws {
            let f = |s: C64| {
                let root = outer * (c(1.0) + s * s / t).sqrt();
                s.powi(-2 * k as i32) * quad_exp_value(inv + s * s + t, root, nu, tau, c(x))
            };
            annihilation = annihilation.max(contour_trapezoid(f, r, CONTOUR_NODES).norm());
        }
    }
    let bracket = ws
        .iter()
        .map(|&x| laurent_coeff_closed(k + 1, nu, tau, c(x)) * (k as f64 + 0.5))
        .collect();
    let bracket_residual = ladder_check(k, nu, tau, ws)?;
    Ok(Orphan { annihilation, bracket, bracket_residual })
}

/// Ordered quadrature nodes `(z, dz-weight)` along a polygon.
fn path_nodes(points: &[C64], panel_len: f64) -> Vec<(C64, C64)> {
    let (x, w) = gauss_legendre(GL_ORDER);
    let mut out = Vec::new();
    for seg in points.windows(2) {
        let d = seg[1] - seg[0];
        let panels = (d.norm() / panel_len).ceil().max(1.0) as usize;
        let h = d / panels as f64;
        for p in 0..panels {
            let mid = seg[0] + h * (p as f64 + 0.5);
            for (xi, wi) in x.iter().zip(&w) {
                out.push((mid + h * (0.5 * xi), h * (0.5 * wi)));
            }
        }
    }
    out
}

/// Results of integrating `e_*^{z(ν+w_*²)}` along two paths from 0 to −∞
/// passing on either side of `1/τ`.
#[derive(Clone, Debug)]
pub struct GammaReport {
    /// `max_w |(ν+w_*²) ∗ (∫_{Γ+} − ∫_{Γ−})|`.
    pub annihilated: f64,
    /// `max_w |∫_{Γ+} − ∫_{Γ−}|`, a nonzero solution.
    pub difference_size: f64,
    /// `max_w |(ν+w_*²) ∗ ∫_Γ − 1|` over both paths, the fundamental theorem along each path.
    pub endpoint_residual: f64,
}

/// Requires `Re ν > 0` (decay at −∞) and `Re(1/τ) < 0` (so the paths can
/// pass on both sides of the branch point).
pub fn gamma_difference(nu: C64, tau: C64, ws: &[f64]) -> Result<GammaReport> {
    require_nonzero(tau)?;
    let p = tau.inv();
    if nu.re <= 0.0 || p.re >= 0.0 {
        return Err(Error::Domain(format!("need Re ν > 0 and Re(1/τ) < 0, got ν = {nu}, τ = {tau}")));
    }
    let far = -(36.0 / nu.re + 2.0 * p.norm() + 4.0);
    let gen = generator(nu, tau);
    let mut totals = Vec::new();
    for side in [1.0, -1.0] {
        let corner = C64::new(0.0, p.im + side);
        let left = C64::new(p.re - 1.0, p.im + side);
        let points = [c(0.0), corner, left, c(far)];
        let mut root = c(1.0);
        let mut plain = vec![c(0.0); ws.len()];
        let mut starred = vec![c(0.0); ws.len()];
        for (z, dz) in path_nodes(&points, 0.25) {
            let next = (c(1.0) - tau * z).sqrt();
            root = if (next - root).norm() <= (next + root).norm() { next } else { -next };
            let e = GaussPoly::new(Poly::one(), z / (c(1.0) - tau * z), c(0.0), (z * nu).exp() / root, Sheet::Plus);
            let ge = poly_star_gauss(&gen, &e, tau);
            for (i, &x) in ws.iter().enumerate() {
                plain[i] += e.eval(c(x)) * dz;
                starred[i] += ge.eval(c(x)) * dz;
            }
        }
        totals.push((plain, starred));
    }
    let mut r = GammaReport { annihilated: 0.0, difference_size: 0.0, endpoint_residual: 0.0 };
    for i in 0..ws.len() {
        // the paths run from 0 outward, so each starred integral is E(−∞) − E(0) = −1
        r.annihilated = r.annihilated.max((totals[0].1[i] - totals[1].1[i]).norm());
        r.difference_size = r.difference_size.max((totals[0].0[i] - totals[1].0[i]).norm());
        for (_, s) in &totals {
            r.endpoint_residual = r.endpoint_residual.max((s[i] + 1.0).norm());
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::{gauss_star, star_exp_quadratic_principal};

    fn grid() -> Vec<f64> {
        (0..11).map(|i| -1.0 + 0.2 * i as f64).collect()
    }

    #[test]
    fn closed_form_special_cases() {
        let tau = C64::new(1.0, 1.0);
        let v = laurent_coeff_closed(0, c(0.0), tau, c(0.0));
        assert!((v - (-tau).sqrt().inv()).norm() < 1e-15);
        for k in 1..4 {
            assert_eq!(laurent_coeff_closed(k, c(0.0), tau, c(0.7)), c(0.0));
        }
        for k in -4..0 {
            assert_eq!(laurent_coeff_closed(k, c(1.3), tau, c(0.0)), c(0.0));
        }
    }

    #[test]
    fn contour_matches_closed_form() {
        for tau in [c(1.0), C64::new(1.0, 1.0), C64::new(-0.5, 0.8)] {
            for k in -2..=2 {
                for w in [0.0, 0.3, 0.5] {
                    let nu = C64::new(1.0, -0.2);
                    let closed = laurent_coeff_closed(k, nu, tau, c(w));
                    let contour = residue_contour(k, nu, tau, c(w), 1.0, CONTOUR_NODES).unwrap();
                    assert!((closed - contour).norm() < 1e-10 * (1.0 + closed.norm()), "k={k} τ={tau} w={w}");
                    let half = residue_contour(k, nu, tau, c(w), 0.5, CONTOUR_NODES).unwrap();
                    assert!((half - contour).norm() < 1e-12 * (1.0 + closed.norm()));
                }
            }
        }
    }

    #[test]
    fn series_form_matches_closed_form() {
        let (nu, tau) = (c(1.0), C64::new(1.0, 1.0));
        let a = laurent_coeff_gauss(1, nu, tau, 40);
        for w in grid() {
            assert!((a.eval(c(w)) - laurent_coeff_closed(1, nu, tau, c(w))).norm() < 1e-14);
        }
    }

    #[test]
    fn ladder() {
        assert!(ladder_check(0, c(0.0), c(1.0), &grid()).unwrap() < 1e-15);
        for k in -2..=2 {
            assert!(ladder_check(k, C64::new(1.0, 0.5), C64::new(1.0, 1.0), &grid()).unwrap() < 1e-12);
        }
    }

    #[test]
    fn closed_contour() {
        assert!(closed_contour_vanishing(c(1.0), c(1.0), 1.0, CONTOUR_NODES, &grid()).unwrap() < 1e-10);
        assert!(closed_contour_vanishing(c(0.0), c(1.0), 1.0, CONTOUR_NODES, &grid()).unwrap() < 1e-12);
    }

    #[test]
    fn regular_semigroup_matches_the_product() {
        let tau = C64::new(0.8, 0.3);
        let g = GaussPoly::new(Poly::new(vec![c(1.0), c(0.4), c(-0.2)]), C64::new(-0.3, 0.1), C64::new(0.2, -0.5), c(0.9), Sheet::Plus);
        for t in [C64::new(0.2, 0.1), C64::new(-0.4, 0.3)] {
            let direct = gauss_star(&star_exp_quadratic_principal(t, tau).unwrap(), &g, tau).unwrap();
            let regular = quad_exp_star(t, tau, &g).unwrap();
            for w in grid() {
                assert!((direct.eval(c(w)) - regular.eval(c(w))).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn semigroup_is_regular_at_the_branch_point() {
        let tau = c(2.0);
        assert!(semigroup_on_delta(c(0.0), c(0.3), tau, &grid()).unwrap() < 1e-15);
        assert!(semigroup_on_delta(tau.inv(), c(0.3), tau, &grid()).unwrap() < 1e-12);
        assert!(semigroup_on_delta(c(1.0), I, tau, &grid()).unwrap() < 1e-12);
    }

    #[test]
    fn phi_psi() {
        let pp = PhiPsi::new(c(0.7), c(1.0)).unwrap();
        assert!((pp.phi(c(0.0)) - 1.0).norm() < 1e-14);
        assert!(pp.phi_deriv(c(0.0)).norm() < 1e-14);
        assert!(pp.psi(c(0.0)).norm() < 1e-14);
        assert!((pp.psi_deriv(c(0.0)) - 1.0).norm() < 1e-14);
        for w in grid() {
            assert!((pp.phi(c(w)) - pp.phi(c(-w))).norm() < 1e-14);
            assert!((pp.psi(c(w)) + pp.psi(c(-w))).norm() < 1e-14);
        }
        assert!(pp.annihilation_residual() < 1e-14);
        for t in [c(0.5), c(1.0), C64::new(-0.3, 2.0)] {
            assert!(pp.semigroup_residual(t, &grid()).unwrap() < 1e-12, "t={t}");
        }
        assert!(matches!(PhiPsi::new(c(0.0), c(1.0)), Err(Error::DegenerateBoundary(_))));
    }

    #[test]
    fn orphan() {
        for t in [c(0.1), c(1.0)] {
            let o = orphan_annihilation(t, 0, c(1.0), c(1.0), &grid()).unwrap();
            assert!(o.annihilation < 1e-10, "t={t}: {}", o.annihilation);
            assert!(o.bracket.iter().any(|v| v.norm() > 0.1));
            assert!(o.bracket_residual < 1e-12);
        }
        let o = orphan_annihilation(c(0.1), 0, c(0.0), c(1.0), &grid()).unwrap();
        assert!(o.annihilation < 1e-10);
        assert!(o.bracket.iter().all(|v| v.norm() < 1e-15));
    }

    #[test]
    fn gamma_paths() {
        let r = gamma_difference(c(1.0), C64::new(-1.0, 0.5), &grid()).unwrap();
        assert!(r.endpoint_residual < 1e-8, "{r:?}");
        assert!(r.annihilated < 1e-8, "{r:?}");
        assert!(r.difference_size > 1e-3, "{r:?}");
    }
}
