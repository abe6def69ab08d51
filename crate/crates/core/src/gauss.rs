//! Expressions of star-exponentials: the family `p(w)·exp(αw² + βw)`.
//!
//! Linear exponentials are single valued. Quadratic ones,
//! `(1−τt)^{−1/2} exp(t w²/(1−τt))`, are double valued in `t` with a branch
//! point at `t = 1/τ`; [`Sheet`] records which square root a value carries.
//! The slit for the principal root runs from `1/τ` to infinity along
//! `arg(1/τ)`, which is where `1−τt` is real and non-positive.

use crate::error::{Error, Result};
use crate::poly::{w_star_power, Poly};
use crate::scalar::{factorial, C64};

/// Which square root a double-valued expression carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sheet {
    Plus,
    Minus,
}

impl Sheet {
    pub fn sign(self) -> f64 {
        match self {
            Sheet::Plus => 1.0,
            Sheet::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sheet {
        match self {
            Sheet::Plus => Sheet::Minus,
            Sheet::Minus => Sheet::Plus,
        }
    }

    pub fn times(self, other: Sheet) -> Sheet {
        if self == other { Sheet::Plus } else { Sheet::Minus }
    }
}

/// Distance below which `1 − τt` counts as singular.
pub const SINGULAR_MARGIN: f64 = 1e-6;
/// Threshold for vanishing denominators inside products.
const PRODUCT_MARGIN: f64 = 1e-12;

/// `sheet · amp · poly(w) · exp(αw² + βw)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussPoly {
    pub poly: Poly,
    pub alpha: C64,
    pub beta: C64,
    pub amp: C64,
    pub sheet: Sheet,
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

impl GaussPoly {
    /// Builds the element and moves the leading coefficient into the amplitude.
    pub fn new(poly: Poly, alpha: C64, beta: C64, amp: C64, sheet: Sheet) -> Self {
        GaussPoly { poly, alpha, beta, amp, sheet }.normalized()
    }

    pub fn gaussian(alpha: C64, beta: C64, amp: C64) -> Self {
        GaussPoly::new(Poly::one(), alpha, beta, amp, Sheet::Plus)
    }

    pub fn from_poly(p: Poly) -> Self {
        GaussPoly::new(p, c(0.0), c(0.0), c(1.0), Sheet::Plus)
    }

    pub fn one() -> Self {
        GaussPoly::from_poly(Poly::one())
    }

    pub fn zero() -> Self {
        GaussPoly { poly: Poly::zero(), alpha: c(0.0), beta: c(0.0), amp: c(0.0), sheet: Sheet::Plus }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero() || self.amp == c(0.0)
    }

    fn normalized(mut self) -> Self {
        match self.poly.leading().copied() {
            Some(lead) if self.amp != c(0.0) => {
                self.poly = self.poly.scale(&lead.inv());
                self.amp *= lead;
            }
            _ => {
                self.poly = Poly::zero();
                self.amp = c(0.0);
            }
        }
        self
    }

    /// Overall constant `sheet · amp`.
    pub fn prefactor(&self) -> C64 {
        self.amp * self.sheet.sign()
    }

    /// The same element with the sign absorbed into the amplitude.
    pub fn with_plus_sheet(&self) -> Self {
        GaussPoly { amp: self.prefactor(), sheet: Sheet::Plus, ..self.clone() }
    }

    pub fn eval(&self, w: C64) -> C64 {
        self.prefactor() * self.poly.eval_c(w) * (self.alpha * w * w + self.beta * w).exp()
    }

    pub fn eval_grid(&self, ws: &[f64]) -> Vec<C64> {
        ws.iter().map(|&w| self.eval(c(w))).collect()
    }

    pub fn scale(&self, k: C64) -> Self {
        GaussPoly::new(self.poly.clone(), self.alpha, self.beta, self.amp * k, self.sheet)
    }

    /// Polynomial part with the prefactor folded in.
    pub fn full_poly(&self) -> Poly {
        self.poly.scale(&self.prefactor())
    }

    /// Exponent parameters agree, so the two can be added termwise.
    pub fn same_exponent(&self, other: &GaussPoly) -> bool {
        (self.alpha - other.alpha).norm() <= 1e-14 * (1.0 + self.alpha.norm())
            && (self.beta - other.beta).norm() <= 1e-14 * (1.0 + self.beta.norm())
    }

    /// Sum of two elements with the same exponent.
    pub fn add(&self, other: &GaussPoly) -> Result<GaussPoly> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if !self.same_exponent(other) {
            return Err(Error::Domain("sum of Gaussians with different exponents".into()));
        }
        let p = &self.full_poly() + &other.full_poly();
        Ok(GaussPoly::new(p, self.alpha, self.beta, c(1.0), Sheet::Plus))
    }

    pub fn sub(&self, other: &GaussPoly) -> Result<GaussPoly> {
        self.add(&other.scale(c(-1.0)))
    }

    /// Pointwise product with a polynomial.
    pub fn mul_poly(&self, p: &Poly) -> GaussPoly {
        GaussPoly::new(&self.poly * p, self.alpha, self.beta, self.amp, self.sheet)
    }

    /// Pointwise product (the product of expressions at τ = 0).
    pub fn pointwise(&self, other: &GaussPoly) -> GaussPoly {
        GaussPoly::new(
            &self.poly * &other.poly,
            self.alpha + other.alpha,
            self.beta + other.beta,
            self.amp * other.amp,
            self.sheet.times(other.sheet),
        )
    }

    /// `d/dw`, in closed form.
    pub fn derivative(&self) -> GaussPoly {
        let lin = Poly::linear(self.beta, self.alpha * 2.0);
        let p = &self.poly.derivative() + &(&lin * &self.poly);
        GaussPoly::new(p, self.alpha, self.beta, self.amp, self.sheet)
    }

    pub fn nth_derivative(&self, n: usize) -> GaussPoly {
        (0..n).fold(self.clone(), |g, _| g.derivative())
    }

    /// `f(w + shift)`.
    pub fn shifted(&self, shift: C64) -> GaussPoly {
        let p = self.poly.compose_linear(&shift, &c(1.0));
        let beta = self.beta + self.alpha * shift * 2.0;
        let k = (self.alpha * shift * shift + self.beta * shift).exp();
        GaussPoly::new(p, self.alpha, beta, self.amp * k, self.sheet)
    }

    /// Heat operator `e^{θ∂²}` in closed form.
    ///
    /// With `D = 1 − 4αθ` and `λ = (w + 2θβ)/D`,
    /// `e^{θ∂²}(w^k e^{αw²+βw}) = D^{−1/2} e^{θβ²/D} P_k(λ, 4θ/D) e^{(αw²+βw)/D}`.
    pub fn heat(&self, theta: C64) -> Result<GaussPoly> {
        if theta == c(0.0) {
            return Ok(self.clone());
        }
        let d = c(1.0) - self.alpha * theta * 4.0;
        if d.norm() < PRODUCT_MARGIN {
            return Err(Error::SingularProduct(format!("heat denominator vanishes (θ = {theta})")));
        }
        let sigma = theta * 4.0 / d;
        let mut h = Poly::zero();
        for (k, pk) in self.poly.coeffs().iter().enumerate() {
            h = &h + &w_star_power(k, &sigma).scale(pk);
        }
        let p = h.compose_linear(&(theta * self.beta * 2.0 / d), &d.inv());
        let amp = self.amp * d.sqrt().inv() * (theta * self.beta * self.beta / d).exp();
        Ok(GaussPoly::new(p, self.alpha / d, self.beta / d, amp, self.sheet))
    }

    /// Change of expression parameter from `tau_from` to `tau_to`.
    pub fn intertwine(&self, tau_from: C64, tau_to: C64) -> Result<GaussPoly> {
        self.heat((tau_to - tau_from) / 4.0)
    }

    /// Deformed product with another element of the family.
    pub fn star(&self, other: &GaussPoly, tau: C64) -> Result<GaussPoly> {
        gauss_star(self, other, tau)
    }
}

/// Expression of `e_*^{sw}`: `e^{s²τ/4} e^{sw}`.
pub fn star_exp_linear(s: C64, tau: C64) -> GaussPoly {
    GaussPoly::gaussian(c(0.0), s, (s * s * tau / 4.0).exp())
}

/// Polygonal path in a complex parameter plane.
#[derive(Clone, Debug, PartialEq)]
pub struct PathParam {
    pub points: Vec<C64>,
}

impl PathParam {
    pub fn new(points: Vec<C64>) -> Self {
        PathParam { points }
    }

    /// Straight segment from 0 to `end`.
    pub fn straight(end: C64) -> Self {
        PathParam { points: vec![c(0.0), end] }
    }

    /// Closed polygon of `n` vertices on a circle, starting and ending at `start`.
    pub fn loop_around(center: C64, start: C64, turns: i32, n: usize) -> Self {
        let r = (start - center).norm();
        let phi0 = (start - center).arg();
        let dir = if turns >= 0 { 1.0 } else { -1.0 };
        let steps = n * turns.unsigned_abs() as usize;
        let points = (0..=steps)
            .map(|j| center + C64::from_polar(r, phi0 + dir * 2.0 * std::f64::consts::PI * j as f64 / n as f64))
            .collect();
        PathParam { points }
    }

    pub fn start(&self) -> C64 {
        self.points[0]
    }

    pub fn end(&self) -> C64 {
        *self.points.last().unwrap()
    }

    /// Joins `other` after this path.
    pub fn then(mut self, other: &PathParam) -> PathParam {
        self.points.extend(other.points.iter().skip(1));
        self
    }
}

/// Continues `√(radicand(x))` along `path`, starting from `start_root`.
///
/// The step size is kept below a tenth of the distance to the nearest zero
/// of the radicand so the nearest-root rule never jumps sheets.
pub fn continue_sqrt(radicand: impl Fn(C64) -> C64, path: &PathParam, start_root: C64) -> Result<C64> {
    let mut root = start_root;
    for pair in path.points.windows(2) {
        let (z0, z1) = (pair[0], pair[1]);
        let mut s = 0.0;
        while s < 1.0 {
            let z = z0 + (z1 - z0) * s;
            let r = radicand(z);
            if r.norm() < SINGULAR_MARGIN * SINGULAR_MARGIN {
                return Err(Error::Path(format!("path runs through a branch point near {z}")));
            }
            // radicand is affine along the path for all callers; use |r| / |dr/ds| as a distance
            let dr = (radicand(z1) - radicand(z0)).norm().max(1e-300);
            let ds = (0.05 * r.norm() / dr).clamp(1e-9, 1.0 / 64.0);
            s = (s + ds).min(1.0);
            let next = radicand(z0 + (z1 - z0) * s).sqrt();
            root = if (next - root).norm() <= (next + root).norm() { next } else { -next };
        }
    }
    Ok(root)
}

/// Sheet of a continued root relative to the principal one.
pub fn sheet_of(continued: C64, principal: C64) -> Sheet {
    if (continued - principal).norm() <= (continued + principal).norm() {
        Sheet::Plus
    } else {
        Sheet::Minus
    }
}

/// Expression of `e_*^{t w_*²}` at `τ`: `(1−τt)^{−1/2} exp(t w²/(1−τt))`,
/// the root fixed by continuation along `path` from `t = 0`.
pub fn star_exp_quadratic(t: C64, tau: C64, path: &PathParam) -> Result<GaussPoly> {
    if path.start() != c(0.0) || (path.end() - t).norm() > 1e-14 * (1.0 + t.norm()) {
        return Err(Error::Path("path must run from 0 to t".into()));
    }
    let d = c(1.0) - tau * t;
    if d.norm() < SINGULAR_MARGIN {
        return Err(Error::SingularPoint(format!("tτ = 1 at t = {t}")));
    }
    let root = continue_sqrt(|x| c(1.0) - tau * x, path, c(1.0))?;
    let principal = d.sqrt();
    Ok(GaussPoly::new(Poly::one(), t / d, c(0.0), principal.inv(), sheet_of(root, principal)))
}

/// The same element with the root continued along a straight path.
pub fn star_exp_quadratic_principal(t: C64, tau: C64) -> Result<GaussPoly> {
    star_exp_quadratic(t, tau, &PathParam::straight(t))
}

/// Moves `e_*^{tw_*²}` from one expression parameter to another along a path
/// in the parameter plane, returning the element at the path's end.
pub fn intertwine_quadratic(t: C64, sheet: Sheet, tau_path: &PathParam) -> Result<GaussPoly> {
    let tau0 = tau_path.start();
    let tau1 = tau_path.end();
    let start = (c(1.0) - tau0 * t).sqrt() * sheet.sign();
    let root = continue_sqrt(|s| c(1.0) - s * t, tau_path, start)?;
    let d = c(1.0) - tau1 * t;
    if d.norm() < SINGULAR_MARGIN {
        return Err(Error::SingularPoint(format!("tτ' = 1 at τ' = {tau1}")));
    }
    let principal = d.sqrt();
    Ok(GaussPoly::new(Poly::one(), t / d, c(0.0), principal.inv(), sheet_of(root, principal)))
}

/// Dense bivariate polynomial `Σ q[r][s] x^r y^s`.
#[derive(Clone)]
struct Bivariate {
    q: Vec<Vec<C64>>,
}

impl Bivariate {
    fn one(n: usize) -> Self {
        let mut q = vec![vec![c(0.0); n]; n];
        q[0][0] = c(1.0);
        Bivariate { q }
    }

    /// `x·Q + kx ∂_x Q + ky ∂_y Q` (or the same with `y` leading when `along_y`).
    fn raise(&self, along_y: bool, kx: C64, ky: C64) -> Self {
        let n = self.q.len();
        let mut out = vec![vec![c(0.0); n]; n];
        for r in 0..n {
            for s in 0..n {
                let v = self.q[r][s];
                if v == c(0.0) {
                    continue;
                }
                if along_y {
                    if s + 1 < n {
                        out[r][s + 1] += v;
                    }
                } else if r + 1 < n {
                    out[r + 1][s] += v;
                }
                if r > 0 {
                    out[r - 1][s] += v * kx * r as f64;
                }
                if s > 0 {
                    out[r][s - 1] += v * ky * s as f64;
                }
            }
        }
        Bivariate { q: out }
    }
}

/// Product of two elements at `τ`.
///
/// For `f = A p₁ e^{a₁w²+b₁w}`, `g = B p₂ e^{a₂w²+b₂w}` and `Δ = 1 − a₁a₂τ²`,
/// the Gaussian part is `AB Δ^{−1/2} exp(αw² + βw + γ)` with
/// `α = (a₁+a₂+2a₁a₂τ)/Δ`, `β = (b₁(1+a₂τ)+b₂(1+a₁τ))/Δ`,
/// `γ = τ(2b₁b₂ + τ(a₁b₂²+a₂b₁²))/(4Δ)`. Polynomial factors are produced by
/// differentiating in `b₁`, `b₂`. The formula is regular wherever `Δ ≠ 0`,
/// including at parameters where one factor has no expression at τ = 0.
pub fn gauss_star(f: &GaussPoly, g: &GaussPoly, tau: C64) -> Result<GaussPoly> {
    if f.is_zero() || g.is_zero() {
        return Ok(GaussPoly::zero());
    }
    let (a1, b1, a2, b2) = (f.alpha, f.beta, g.alpha, g.beta);
    let delta = c(1.0) - a1 * a2 * tau * tau;
    if delta.norm() < PRODUCT_MARGIN {
        return Err(Error::SingularProduct(format!("1 − a₁a₂τ² vanishes (τ = {tau})")));
    }
    let alpha = (a1 + a2 + a1 * a2 * tau * 2.0) / delta;
    let beta = (b1 * (c(1.0) + a2 * tau) + b2 * (c(1.0) + a1 * tau)) / delta;
    let gamma = tau * (b1 * b2 * 2.0 + tau * (a1 * b2 * b2 + a2 * b1 * b1)) / (delta * 4.0);

    let d1 = f.poly.degree().unwrap_or(0);
    let d2 = g.poly.degree().unwrap_or(0);
    let n = d1 + d2 + 1;
    let k11 = tau * tau * a2 / (delta * 2.0);
    let k12 = tau / (delta * 2.0);
    let k22 = tau * tau * a1 / (delta * 2.0);
    // λ₁ = ∂E/∂b₁ and λ₂ = ∂E/∂b₂ are affine in w
    let lam1 = Poly::linear(tau * (b2 + tau * a2 * b1) / (delta * 2.0), (c(1.0) + a2 * tau) / delta);
    let lam2 = Poly::linear(tau * (b1 + tau * a1 * b2) / (delta * 2.0), (c(1.0) + a1 * tau) / delta);
    let mut pow1 = vec![Poly::one()];
    let mut pow2 = vec![Poly::one()];
    for _ in 1..n {
        pow1.push(pow1.last().unwrap() * &lam1);
        pow2.push(pow2.last().unwrap() * &lam2);
    }

    let mut result = Poly::zero();
    let mut qj = Bivariate::one(n);
    for j in 0..=d1 {
        let pj = f.poly.coeff(j);
        let mut qjk = qj.clone();
        for k in 0..=d2 {
            let weight = pj * g.poly.coeff(k);
            if weight != c(0.0) {
                for (r, row) in qjk.q.iter().enumerate().take(n) {
                    for (s, &v) in row.iter().enumerate().take(n - r) {
                        if v != c(0.0) {
                            result = &result + &(&pow1[r] * &pow2[s]).scale(&(v * weight));
                        }
                    }
                }
            }
            qjk = qjk.raise(true, k12, k22);
        }
        qj = qj.raise(false, k11, k12);
    }
    let amp = f.amp * g.amp * delta.sqrt().inv() * gamma.exp();
    Ok(GaussPoly::new(result, alpha, beta, amp, f.sheet.times(g.sheet)))
}

/// The same product routed through the τ = 0 expression: pull both factors
/// back, multiply pointwise, push forward.
pub fn gauss_star_via_origin(f: &GaussPoly, g: &GaussPoly, tau: C64) -> Result<GaussPoly> {
    let f0 = f.intertwine(tau, c(0.0))?;
    let g0 = g.intertwine(tau, c(0.0))?;
    f0.pointwise(&g0).intertwine(c(0.0), tau)
}

/// `Σ_{k<terms} τ^k/(2^k k!) f^{(k)}(w) g^{(k)}(w)`, the defining series cut off.
///
/// Converges for Gaussians with small `|α τ|`; used as an independent check
/// of [`gauss_star`].
pub fn gauss_star_series(f: &GaussPoly, g: &GaussPoly, tau: C64, w: C64, terms: usize) -> C64 {
    let mut df = f.clone();
    let mut dg = g.clone();
    let mut weight = c(1.0);
    let mut sum = c(0.0);
    for k in 0..terms {
        sum += weight * df.eval(w) * dg.eval(w);
        df = df.derivative();
        dg = dg.derivative();
        weight = weight * tau / (2.0 * (k + 1) as f64);
    }
    sum
}

/// `p ∗ f` for a polynomial `p`, by the finite sum of derivatives.
pub fn poly_star_gauss(p: &Poly, f: &GaussPoly, tau: C64) -> GaussPoly {
    let mut dp = p.clone();
    let mut df = f.clone();
    let mut weight = c(1.0);
    let mut total = Poly::zero();
    let mut k = 0usize;
    while !dp.is_zero() {
        total = &total + &(&dp * &df.full_poly()).scale(&weight);
        k += 1;
        dp = dp.derivative();
        df = df.derivative();
        weight = weight * tau / (2.0 * k as f64);
    }
    GaussPoly::new(total, f.alpha, f.beta, c(1.0), Sheet::Plus)
}

/// `e_*^{2sw} ∗ f = e^{2sw + s²τ} f(w + sτ)`.
pub fn translate_action(s: C64, f: &GaussPoly, tau: C64) -> GaussPoly {
    let moved = f.shifted(s * tau);
    GaussPoly::new(
        moved.poly,
        moved.alpha,
        moved.beta + s * 2.0,
        moved.amp * (s * s * tau).exp(),
        moved.sheet,
    )
}

/// The same action on an arbitrary function given pointwise.
pub fn translate_action_fn(s: C64, f: impl Fn(C64) -> C64, tau: C64) -> impl Fn(C64) -> C64 {
    move |w| (s * w * 2.0 + s * s * tau).exp() * f(w + s * tau)
}

/// Residual of `e_*^{sw_*²} ∗ e_*^{tw_*²} = e_*^{(s+t)w_*²}` over `ws`.
///
/// Each factor carries the root continued along the straight path from 0.
/// Passing `flip_right = true` deliberately puts the right side on the
/// other sheet.
pub fn quad_exponential_law_with(s: C64, t: C64, tau: C64, ws: &[f64], flip_right: bool) -> Result<f64> {
    let es = star_exp_quadratic_principal(s, tau)?;
    let et = star_exp_quadratic_principal(t, tau)?;
    let mut est = star_exp_quadratic_principal(s + t, tau)?;
    if flip_right {
        est.sheet = est.sheet.flip();
    }
    let lhs = gauss_star(&es, &et, tau)?;
    Ok(ws
        .iter()
        .map(|&w| (lhs.eval(c(w)) - est.eval(c(w))).norm())
        .fold(0.0, f64::max))
}

/// [`quad_exponential_law_with`] on 21 points of [−1, 1].
pub fn quad_exponential_law(s: C64, t: C64, tau: C64) -> Result<f64> {
    let ws: Vec<f64> = (0..21).map(|i| -1.0 + 0.1 * i as f64).collect();
    quad_exponential_law_with(s, t, tau, &ws, false)
}

/// Ratios `c_{n+1}/c_n` with `c_n = sup_{|w|≤1} |P_{nℓ}(w,τ)| / n!`.
///
/// The supremum sits on the unit circle (maximum principle), sampled densely.
pub fn series_radius_probe(ell: usize, tau: C64, n_max: usize) -> Vec<f64> {
    let sup = |deg: usize| -> f64 {
        let p = w_star_power(deg, &tau);
        let m = 16 * deg + 64;
        (0..m)
            .map(|j| p.eval_c(C64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / m as f64)).norm())
            .fold(0.0, f64::max)
    };
    let cs: Vec<f64> = (0..=n_max + 1).map(|n| sup(n * ell) / factorial(n as u32)).collect();
    cs.windows(2).map(|p| p[1] / p[0]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn linear_exponential_product() {
        let (a, b, tau) = (C64::new(0.3, -0.1), C64::new(-0.2, 0.4), C64::new(0.7, 0.2));
        let got = gauss_star(&GaussPoly::gaussian(c(0.0), a * 2.0, c(1.0)), &GaussPoly::gaussian(c(0.0), b * 2.0, c(1.0)), tau).unwrap();
        for w in [-1.0, 0.0, 0.5] {
            let want = ((a + b) * 2.0 * w + a * b * tau * 2.0).exp();
            assert!(close(got.eval(c(w)), want, 1e-14));
        }
    }

    #[test]
    fn polynomial_products_reduce_to_the_finite_sum() {
        let tau = C64::new(0.4, 0.3);
        let f = GaussPoly::from_poly(Poly::new(vec![c(1.0), c(-2.0), c(0.5), C64::new(0.0, 1.0)]));
        let g = GaussPoly::from_poly(Poly::new(vec![c(0.0), c(3.0), c(1.0)]));
        let got = gauss_star(&f, &g, tau).unwrap();
        let want = crate::poly::star_product(&f.full_poly(), &g.full_poly(), &tau);
        for w in [-1.3, 0.2, 2.0] {
            assert!(close(got.eval(c(w)), want.eval_c(c(w)), 1e-13));
        }
    }

    #[test]
    fn both_product_routes_agree() {
        let tau = C64::new(0.6, -0.3);
        let f = GaussPoly::new(Poly::new(vec![c(1.0), c(0.5)]), C64::new(0.2, 0.1), C64::new(0.3, 0.0), c(1.2), Sheet::Plus);
        let g = GaussPoly::new(Poly::new(vec![c(0.0), c(-1.0), c(2.0)]), C64::new(-0.25, 0.0), C64::new(0.0, 0.7), c(0.8), Sheet::Plus);
        let a = gauss_star(&f, &g, tau).unwrap();
        let b = gauss_star_via_origin(&f, &g, tau).unwrap();
        for w in [-1.0, 0.0, 0.7, 1.5] {
            assert!(close(a.eval(c(w)), b.eval(c(w)), 1e-12), "w = {w}");
        }
    }

    #[test]
    fn heat_matches_polynomial_intertwiner() {
        let p = Poly::new(vec![c(1.0), c(0.0), c(-3.0), c(2.0)]);
        let tau = C64::new(0.5, 0.5);
        let got = GaussPoly::from_poly(p.clone()).intertwine(c(0.0), tau).unwrap();
        let want = crate::poly::intertwine(&p, &c(0.0), &tau);
        for w in [-1.0, 0.3, 2.0] {
            assert!(close(got.eval(c(w)), want.eval_c(c(w)), 1e-13));
        }
    }

    #[test]
    fn quadratic_exponential_sheets() {
        let tau = c(1.0);
        let e0 = star_exp_quadratic_principal(c(0.0), tau).unwrap();
        assert_eq!(e0.sheet, Sheet::Plus);
        assert!(close(e0.eval(c(0.7)), c(1.0), 1e-15));
        // once around the branch point t = 1
        let t = c(0.5);
        let path = PathParam::straight(t).then(&PathParam::loop_around(c(1.0), t, 1, 64));
        let e = star_exp_quadratic(t, tau, &path).unwrap();
        assert_eq!(e.sheet, Sheet::Minus);
        let p = star_exp_quadratic_principal(t, tau).unwrap();
        assert!(close(e.eval(c(0.3)), -p.eval(c(0.3)), 1e-14));
        assert!(matches!(star_exp_quadratic_principal(c(1.0), tau), Err(Error::SingularPoint(_))));
    }

    #[test]
    fn translation_agrees_with_product() {
        let tau = C64::new(0.8, 0.1);
        let s = C64::new(0.2, -0.3);
        let f = GaussPoly::new(Poly::new(vec![c(1.0), c(2.0)]), C64::new(-0.2, 0.0), c(0.1), c(1.0), Sheet::Plus);
        let a = translate_action(s, &f, tau);
        let b = gauss_star(&star_exp_linear(s * 2.0, tau), &f, tau).unwrap();
        for w in [-1.0, 0.4] {
            assert!(close(a.eval(c(w)), b.eval(c(w)), 1e-13));
        }
    }
}
