//! Star-functions made from tempered distributions, for `Re τ > 0`.
//!
//! A distribution `f(x)` becomes `f_*(w) = ∫ f(x) δ_*(x−w) dx` where the
//! expression of `δ_*(x−w)` is the Gaussian `(πτ)^{−1/2} e^{−(x−w)²/τ}`.
//! Equivalently `f_*(w) = (2π)^{−1/2} ∫ f̌(t) e^{−t²τ/4} e^{−itw} dt` with
//! `f̌(t) = (2π)^{−1/2} ∫ f(x) e^{itx} dx`.
//!
//! Products of such objects are products of the underlying distributions,
//! never term-wise derivative series.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gauss::{gauss_star, poly_star_gauss, GaussPoly};
use crate::poly::Poly;
use crate::quad::{integrate, integrate_panels};
use crate::scalar::{factorial, C64};
use crate::theta::ExpSum;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

const I: C64 = C64::new(0.0, 1.0);

fn require_right_half(tau: C64) -> Result<()> {
    if tau.re > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("need Re τ > 0, got τ = {tau}")))
    }
}

/// Expression of `δ_*(a+w)`: `(πτ)^{−1/2} e^{−(a+w)²/τ}`.
pub fn delta_tau(a: C64, tau: C64) -> Result<GaussPoly> {
    require_right_half(tau)?;
    let inv = tau.inv();
    let amp = (tau * PI).sqrt().inv() * (-a * a * inv).exp();
    Ok(GaussPoly::gaussian(-inv, -a * inv * 2.0, amp))
}

/// Largest coefficient of `(a+w) ∗ δ_*(a+w)` in closed form.
pub fn delta_annihilation(a: C64, tau: C64) -> Result<f64> {
    let d = delta_tau(a, tau)?;
    let prod = poly_star_gauss(&Poly::linear(a, c(1.0)), &d, tau);
    Ok(prod.full_poly().max_abs_coeff())
}

/// Which half line a sided inverse integrates over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `i ∫_{−∞}^0`.
    Plus,
    /// `−i ∫_0^∞`.
    Minus,
}

impl Side {
    fn direction(self) -> f64 {
        match self {
            Side::Plus => -1.0,
            Side::Minus => 1.0,
        }
    }
}

/// `∫_side t^p (it)^k e^{−t²τ/4} e^{itz} dt`.
///
/// The cutoff `T` is chosen so the Gaussian factor has pushed the
/// integrand `e^{−40}` below its peak; the panel count scales with `|z|T`.
fn side_integral(z: C64, tau: C64, side: Side, p: u32, k: u32) -> Result<C64> {
    let s = side.direction();
    let r = tau.re;
    // growth rate of |e^{itz}| along the half line
    let y = (-s * z.im).max(0.0);
    let peak = y * y / r + p as f64 * (2.0 * y / r + 1.0).max(1.0).ln();
    let log_mag = |u: f64| -u * u * r / 4.0 + u * y + p as f64 * u.max(1e-300).ln();
    let mut t_max = 2.0 * y / r + 1.0;
    while log_mag(t_max) > peak - 40.0 {
        t_max *= 1.2;
    }
    let ik = I.powu(k);
    let f = |u: f64| {
        let t = s * u;
        let weight = c(t).powu(p) * ik * c(t).powu(k);
        weight * (-tau * t * t / 4.0 + I * z * t).exp()
    };
    let panels = (t_max * (1.0 + z.re.abs()) / 2.0).ceil() as usize + 4;
    // rounding floor of a panel sum over an integrand this large
    let scale = (0..=200).map(|j| f(t_max * j as f64 / 200.0).norm()).fold(0.0, f64::max);
    let floor = 1e-15 * scale * t_max;
    let v = integrate(f, 0.0, t_max, panels, 1e-13, floor)?;
    // ∫_{−∞}^0 g(t) dt = ∫_0^∞ g(−u) du; the orientation is already positive
    Ok(v)
}

/// A one-sided inverse power `(a+w)^{−m}_{*±}`, the `m`-th star power of
/// the sided inverse. In Fourier form
///
/// * `(a+w)^{−m}_{*+} = i^m (−1)^{m−1}/(m−1)! ∫_{−∞}^0 t^{m−1} e_*^{it(a+w)} dt`
/// * `(a+w)^{−m}_{*−} = (−i)^m/(m−1)! ∫_0^∞ t^{m−1} e_*^{it(a+w)} dt`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SidedInverse {
    pub a: C64,
    pub side: Side,
    pub tau: C64,
    pub power: u32,
}

impl SidedInverse {
    pub fn new(a: C64, side: Side, tau: C64) -> Result<Self> {
        SidedInverse::power(a, 1, side, tau)
    }

    pub fn power(a: C64, m: u32, side: Side, tau: C64) -> Result<Self> {
        require_right_half(tau)?;
        if m == 0 {
            return Err(Error::Domain("inverse power must be positive".into()));
        }
        Ok(SidedInverse { a, side, tau, power: m })
    }

    fn constant(&self) -> C64 {
        let m = self.power;
        let fact = factorial(m - 1);
        match self.side {
            Side::Plus => {
                let sign = if (m - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
                I.powu(m) * sign / fact
            }
            Side::Minus => (-I).powu(m) / fact,
        }
    }

    /// `k`-th derivative in `w`.
    pub fn eval_deriv(&self, w: C64, k: u32) -> Result<C64> {
        Ok(self.constant() * side_integral(self.a + w, self.tau, self.side, self.power - 1, k)?)
    }

    pub fn eval(&self, w: C64) -> Result<C64> {
        self.eval_deriv(w, 0)
    }

    pub fn grid(&self, ws: &[f64]) -> Result<Vec<C64>> {
        ws.iter().map(|&w| self.eval(c(w))).collect()
    }

    /// `max_w |(a+w) ∗ f − 1|` with `(a+w) ∗ f = (a+w) f + (τ/2) f'`; only meaningful for `m = 1`.
    pub fn defect(&self, ws: &[f64]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for &x in ws {
            let w = c(x);
            let lhs = (self.a + w) * self.eval(w)? + self.tau / 2.0 * self.eval_deriv(w, 1)?;
            worst = worst.max((lhs - 1.0).norm());
        }
        Ok(worst)
    }
}

/// Values of `(a+w)^{−1}_{*±}` on a grid.
pub fn sided_inverse(a: C64, side: Side, tau: C64, ws: &[f64]) -> Result<Vec<C64>> {
    SidedInverse::new(a, side, tau)?.grid(ws)
}

/// `max_w |(a+w)⁻¹_{*+} − (a+w)⁻¹_{*−} − 2πi δ_*(a+w)|`.
pub fn delta_difference_residual(a: C64, tau: C64, ws: &[f64]) -> Result<f64> {
    let plus = sided_inverse(a, Side::Plus, tau, ws)?;
    let minus = sided_inverse(a, Side::Minus, tau, ws)?;
    let delta = delta_tau(a, tau)?;
    Ok(ws
        .iter()
        .zip(plus.iter().zip(&minus))
        .map(|(&w, (p, m))| (p - m - I * 2.0 * PI * delta.eval(c(w))).norm())
        .fold(0.0, f64::max))
}

/// `(2π)^{−1/2} ∫ f̌(t) e^{−t²τ/4} e^{−itw} dt`, for `f̌` growing slower than the Gaussian decays.
pub fn tempered_transform(f_check: impl Fn(f64) -> C64, tau: C64, ws: &[f64]) -> Result<Vec<C64>> {
    require_right_half(tau)?;
    let t_max = (4.0 * 42.0 / tau.re).sqrt();
    ws.iter()
        .map(|&w| {
            let g = |t: f64| f_check(t) * (-tau * t * t / 4.0 - I * t * w).exp();
            let panels = (t_max * (1.0 + w.abs())).ceil() as usize + 8;
            let v = integrate(g, -t_max, t_max, panels, 1e-13, 1e-17)?;
            Ok(v / (2.0 * PI).sqrt())
        })
        .collect()
}

fn sign_of(x: f64) -> C64 {
    c(if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    })
}

/// A function of `x` on the real line with known points of non-smoothness.
#[derive(Clone)]
pub struct Underlying {
    f: Arc<dyn Fn(f64) -> C64 + Send + Sync>,
    breaks: Vec<f64>,
}

impl std::fmt::Debug for Underlying {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Underlying").field("breaks", &self.breaks).finish_non_exhaustive()
    }
}

impl Underlying {
    pub fn new(f: impl Fn(f64) -> C64 + Send + Sync + 'static, breaks: Vec<f64>) -> Self {
        Underlying { f: Arc::new(f), breaks }
    }

    pub fn constant(v: C64) -> Self {
        Underlying::new(move |_| v, Vec::new())
    }

    /// Indicator of `x > 0`.
    pub fn heaviside() -> Self {
        Underlying::new(|x| c(if x > 0.0 { 1.0 } else { 0.0 }), vec![0.0])
    }

    /// Indicator of `x < 0`.
    pub fn heaviside_reflected() -> Self {
        Underlying::new(|x| c(if x < 0.0 { 1.0 } else { 0.0 }), vec![0.0])
    }

    pub fn sgn() -> Self {
        Underlying::new(sign_of, vec![0.0])
    }

    pub fn eval(&self, x: f64) -> C64 {
        (self.f)(x)
    }

    /// Pointwise product, the rule for star products of such star-functions.
    pub fn mul(&self, other: &Underlying) -> Underlying {
        let (f, g) = (self.f.clone(), other.f.clone());
        let mut breaks = self.breaks.clone();
        breaks.extend(&other.breaks);
        Underlying::new(move |x| f(x) * g(x), breaks)
    }

    pub fn add(&self, other: &Underlying) -> Underlying {
        let (f, g) = (self.f.clone(), other.f.clone());
        let mut breaks = self.breaks.clone();
        breaks.extend(&other.breaks);
        Underlying::new(move |x| f(x) + g(x), breaks)
    }

    pub fn scale(&self, k: C64) -> Underlying {
        let f = self.f.clone();
        Underlying::new(move |x| f(x) * k, self.breaks.clone())
    }

    /// `∫ f(x) (πτ)^{−1/2} e^{−(x−w)²/τ} dx`.
    pub fn star_value(&self, tau: C64, w: C64) -> Result<C64> {
        require_right_half(tau)?;
        let inv = tau.inv();
        let norm = (tau * PI).sqrt().inv();
        let kernel = |x: f64| {
            let d = c(x) - w;
            self.eval(x) * norm * (-d * d * inv).exp()
        };
        let decay = inv.re;
        let center = w.re;
        let mut half = (45.0 / decay).sqrt() + 2.0 * w.im.abs() * inv.norm() / decay;
        for _ in 0..30 {
            let edge = kernel(center - half).norm().max(kernel(center + half).norm()) * half;
            if edge < 1e-18 {
                break;
            }
            half *= 1.3;
        }
        let (lo, hi) = (center - half, center + half);
        let mut cuts: Vec<f64> = self.breaks.iter().copied().filter(|b| *b > lo && *b < hi).collect();
        cuts.push(lo);
        cuts.push(hi);
        cuts.push(center);
        cuts.sort_by(|a, b| a.total_cmp(b));
        cuts.dedup();
        let scale = integrate_panels(|x| c(kernel(x).norm()), lo, hi, 64).re;
        let mut total = c(0.0);
        for piece in cuts.windows(2) {
            let panels = ((piece[1] - piece[0]) * 2.0).ceil() as usize + 2;
            total += integrate(kernel, piece[0], piece[1], panels, 1e-14, 1e-17 * scale.max(1e-300))?;
        }
        Ok(total)
    }

    pub fn star_grid(&self, tau: C64, ws: &[f64]) -> Result<Vec<C64>> {
        ws.iter().map(|&w| self.star_value(tau, c(w))).collect()
    }
}

/// `∫ f(x) δ_*(x−w) dx` for a function given pointwise.
pub fn transform_of_function(f: impl Fn(f64) -> C64 + Send + Sync + 'static, breaks: Vec<f64>, tau: C64, w: C64) -> Result<C64> {
    Underlying::new(f, breaks).star_value(tau, w)
}

/// `(a−w)^{−1}_{*+}` as a function of `w`: the plus-side inverse of `a+u` at `u = −w`.
pub fn reflected_plus_inverse(a: C64, tau: C64, w: C64) -> Result<C64> {
    SidedInverse::new(a, Side::Plus, tau)?.eval(-w)
}

/// `Y_*(w)`, `Y_*(−w)` and `sgn_*(w)` on a grid.
#[derive(Clone, Debug)]
pub struct HeavisideSgn {
    pub y_plus: Vec<C64>,
    pub y_minus: Vec<C64>,
    pub sgn: Vec<C64>,
}

/// Residuals of the Heaviside identities; each is computed by multiplying
/// the underlying functions and transforming the product.
#[derive(Clone, Debug)]
pub struct HeavisideReport {
    /// `Y(w) + Y(−w) − 1`.
    pub partition: f64,
    /// `Y ∗ Y − Y`.
    pub idempotent: f64,
    /// `Y(w) ∗ Y(−w)`.
    pub orthogonal: f64,
    /// `sgn ∗ sgn − 1`.
    pub sgn_square: f64,
    /// `sgn(w) + sgn(−w)` where `sgn(−w)` is the transform of `sgn(−x)`.
    pub sgn_odd: f64,
}

impl HeavisideReport {
    pub fn worst(&self) -> f64 {
        [self.partition, self.idempotent, self.orthogonal, self.sgn_square, self.sgn_odd]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

pub fn heaviside_sgn(tau: C64, ws: &[f64]) -> Result<HeavisideSgn> {
    let y_plus = Underlying::heaviside().star_grid(tau, ws)?;
    let y_minus = Underlying::heaviside_reflected().star_grid(tau, ws)?;
    let sgn = Underlying::sgn().star_grid(tau, ws)?;
    Ok(HeavisideSgn { y_plus, y_minus, sgn })
}

pub fn heaviside_identities(tau: C64, ws: &[f64]) -> Result<HeavisideReport> {
    let hs = heaviside_sgn(tau, ws)?;
    let yp = Underlying::heaviside();
    let ym = Underlying::heaviside_reflected();
    let sgn = Underlying::sgn();
    let sgn_reflected = Underlying::new(|x| -sign_of(x), vec![0.0]);
    let yy = yp.mul(&yp).star_grid(tau, ws)?;
    let y_cross = yp.mul(&ym).star_grid(tau, ws)?;
    let ss = sgn.mul(&sgn).star_grid(tau, ws)?;
    let s_ref = sgn_reflected.star_grid(tau, ws)?;
    let mut r = HeavisideReport { partition: 0.0, idempotent: 0.0, orthogonal: 0.0, sgn_square: 0.0, sgn_odd: 0.0 };
    for i in 0..ws.len() {
        r.partition = r.partition.max((hs.y_plus[i] + hs.y_minus[i] - 1.0).norm());
        r.idempotent = r.idempotent.max((yy[i] - hs.y_plus[i]).norm());
        r.orthogonal = r.orthogonal.max(y_cross[i].norm());
        r.sgn_square = r.sgn_square.max((ss[i] - 1.0).norm());
        r.sgn_odd = r.sgn_odd.max((hs.sgn[i] + s_ref[i]).norm());
    }
    Ok(r)
}

/// `max_w |f_* ∗ δ_*(a−w) − f(a) δ_*(a−w)|` for `f(x) = p(x) e^{αx² + βx}`.
///
/// `f_*` is `f` carried from the zero expression to τ; the product is the
/// closed-form Gaussian product.
pub fn eval_pairing(f: &GaussPoly, a: C64, tau: C64, ws: &[f64]) -> Result<f64> {
    require_right_half(tau)?;
    let f_star = f.intertwine(c(0.0), tau)?;
    let delta = delta_tau(-a, tau)?;
    let lhs = gauss_star(&f_star, &delta, tau)?;
    let fa = f.eval(a);
    Ok(ws
        .iter()
        .map(|&w| (lhs.eval(c(w)) - delta.eval(c(w)) * fa).norm())
        .fold(0.0, f64::max))
}

/// `Pf.x^{−m}` as a star-function, by its Fourier side
/// `(i/2) ∫ (it)^{m−1}/(m−1)! sgn(t) e_*^{−itw} dt`; `m = 1` is `v.p. 1/x`.
pub fn principal_value_inverse(m: u32, tau: C64, ws: &[f64]) -> Result<Vec<C64>> {
    require_right_half(tau)?;
    if m == 0 {
        return Err(Error::Domain("inverse power must be positive".into()));
    }
    let k = I * 0.5 * I.powu(m - 1) / factorial(m - 1);
    ws.iter()
        .map(|&w| {
            let pos = side_integral(c(-w), tau, Side::Minus, m - 1, 0)?;
            let neg = side_integral(c(-w), tau, Side::Plus, m - 1, 0)?;
            Ok(k * (pos - neg))
        })
        .collect()
}

/// `max_w |Pf_* − ½(w^{−m}_{*+} + w^{−m}_{*−})|`.
pub fn principal_value_residual(m: u32, tau: C64, ws: &[f64]) -> Result<f64> {
    let pf = principal_value_inverse(m, tau, ws)?;
    let plus = SidedInverse::power(c(0.0), m, Side::Plus, tau)?.grid(ws)?;
    let minus = SidedInverse::power(c(0.0), m, Side::Minus, tau)?.grid(ws)?;
    Ok((0..ws.len()).map(|i| (pf[i] - (plus[i] + minus[i]) * 0.5).norm()).fold(0.0, f64::max))
}

/// `max_w |Σ_{|n|≤N} e_*^{in(a+w)} − 2π Σ_{|n|≤N} δ_*(a+2πn+w)|`.
pub fn periodic_comb_check(a: C64, tau: C64, n: usize, ws: &[f64]) -> Result<f64> {
    require_right_half(tau)?;
    let n = n as i64;
    let fourier = ExpSum::geometric(c(1.0), -n, 1, c(1.0), (2 * n + 1) as usize);
    let norm = (tau * PI).sqrt().inv();
    Ok(ws
        .iter()
        .map(|&x| {
            let w = c(x);
            let lhs = fourier.tau_expression(a + w, tau);
            let comb: C64 = (-n..=n)
                .map(|k| {
                    let d = a + 2.0 * PI * k as f64 + w;
                    norm * (-d * d / tau).exp()
                })
                .sum();
            (lhs - comb * 2.0 * PI).norm()
        })
        .fold(0.0, f64::max))
}

/// Periodic extension of `|x|` from `[−π, π]`.
pub fn triangle_wave(x: f64) -> f64 {
    (x - 2.0 * PI * ((x + PI) / (2.0 * PI)).floor()).abs()
}

/// Fourier coefficients of [`triangle_wave`] as a star sum `Σ a_n e_*^{inw}`:
/// `a_0 = π/2`, `a_n = −2/(πn²)` for odd `n`.
pub fn triangle_coefficients(n: usize) -> ExpSum {
    let mut s = ExpSum::single(0, c(PI / 2.0));
    for k in (1..=n as i64).step_by(2) {
        let v = c(-2.0 / (PI * (k * k) as f64));
        s.add_term(k, v);
        s.add_term(-k, v);
    }
    s
}

/// `max_w |Σ a_n e_*^{inw} − ∫ f̃(x) δ_*(x−w) dx|` for the triangle wave.
pub fn triangle_transport_residual(tau: C64, n: usize, ws: &[f64]) -> Result<f64> {
    let coeffs = triangle_coefficients(n);
    let breaks: Vec<f64> = (-60..=60).map(|k| PI * k as f64).collect();
    let tri = Underlying::new(|x| c(triangle_wave(x)), breaks);
    let mut worst: f64 = 0.0;
    for &x in ws {
        let direct = tri.star_value(tau, c(x))?;
        worst = worst.max((coeffs.tau_expression(c(x), tau) - direct).norm());
    }
    Ok(worst)
}

/// `g_a(w) = (2/τ) ∫_0^1 e^{((a+wt)² − (a+w)²)/τ} w dt + C e^{−(a+w)²/τ}` and its derivative.
pub fn constant_variation_inverse(a: C64, cst: C64, tau: C64, w: C64) -> Result<(C64, C64)> {
    if tau.norm() == 0.0 {
        return Err(Error::Domain("τ = 0".into()));
    }
    let inv = tau.inv();
    let e = |t: f64| {
        let u = a + w * t;
        ((u * u - (a + w) * (a + w)) * inv).exp()
    };
    let value = integrate(|t| e(t) * w, 0.0, 1.0, 4, 1e-14, 1e-300)? * inv * 2.0;
    let dvalue = integrate(
        |t| {
            let de = ((a + w * t) * t * 2.0 - (a + w) * 2.0) * inv;
            e(t) * (c(1.0) + w * de)
        },
        0.0,
        1.0,
        4,
        1e-14,
        1e-300,
    )? * inv
        * 2.0;
    let h = (-(a + w) * (a + w) * inv).exp();
    let dh = -(a + w) * 2.0 * inv * h;
    Ok((value + h * cst, dvalue + dh * cst))
}

/// `max_w |(a+w) ∗ g_a − 1|`.
pub fn constant_variation_defect(a: C64, cst: C64, tau: C64, ws: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &x in ws {
        let w = c(x);
        let (g, dg) = constant_variation_inverse(a, cst, tau, w)?;
        worst = worst.max(((a + w) * g + tau / 2.0 * dg - 1.0).norm());
    }
    Ok(worst)
}

/// Residuals for the four sign choices of `((a+w)⁻¹_{*±} − (b+w)⁻¹_{*±'})/(b−a)`
/// as inverses of `(a+w) ∗ (b+w)`, and the vanishing of the product of the differences.
#[derive(Clone, Debug)]
pub struct ProductInverseReport {
    /// `max |(a+w) ∗ (b+w) ∗ F − 1|` over the four sign pairs.
    pub inverse_defect: f64,
    /// `max |Σ ±F_{±±'}|`, the expansion of the product of differences.
    pub difference_product: f64,
}

pub fn product_inverse_check(a: C64, b: C64, tau: C64, ws: &[f64]) -> Result<ProductInverseReport> {
    if a == b {
        return Err(Error::Domain("need a ≠ b".into()));
    }
    let k = (b - a).inv();
    let sides = [Side::Plus, Side::Minus];
    let mut defect: f64 = 0.0;
    let mut product: f64 = 0.0;
    for &x in ws {
        let w = c(x);
        let mut jets = Vec::new();
        for ca in [a, b] {
            let mut per_side = Vec::new();
            for side in sides {
                let inv = SidedInverse::new(ca, side, tau)?;
                per_side.push([inv.eval_deriv(w, 0)?, inv.eval_deriv(w, 1)?, inv.eval_deriv(w, 2)?]);
            }
            jets.push(per_side);
        }
        let mut signed_sum = c(0.0);
        for (i, _) in sides.iter().enumerate() {
            for (j, _) in sides.iter().enumerate() {
                let f: Vec<C64> = (0..3).map(|d| (jets[0][i][d] - jets[1][j][d]) * k).collect();
                // L_b F = (b+w)F + (τ/2)F', then L_a of that
                let lb = (b + w) * f[0] + tau / 2.0 * f[1];
                let dlb = f[0] + (b + w) * f[1] + tau / 2.0 * f[2];
                let lab = (a + w) * lb + tau / 2.0 * dlb;
                defect = defect.max((lab - 1.0).norm());
                let sign = if i == j { 1.0 } else { -1.0 };
                signed_sum += f[0] * sign;
            }
        }
        product = product.max(signed_sum.norm());
    }
    Ok(ProductInverseReport { inverse_defect: defect, difference_product: product })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::Grid;

    fn grid() -> Vec<f64> {
        Grid::default().points()
    }

    fn small_grid() -> Vec<f64> {
        (0..9).map(|i| -2.0 + 0.5 * i as f64).collect()
    }

    #[test]
    fn delta_basics() {
        let d = delta_tau(c(0.0), c(1.0)).unwrap();
        assert!((d.eval(c(0.5)) - (-0.25f64).exp() / PI.sqrt()).norm() < 1e-15);
        assert!(delta_annihilation(C64::new(0.3, -0.2), C64::new(1.0, 0.5)).unwrap() < 1e-15);
        let mass = Underlying::constant(c(1.0)).star_value(c(1.3), c(0.4)).unwrap();
        assert!((mass - 1.0).norm() < 1e-13);
        assert!(delta_tau(c(0.0), c(-1.0)).is_err());
    }

    #[test]
    fn sided_inverses() {
        for a in [c(0.0), c(1.0), I] {
            for side in [Side::Plus, Side::Minus] {
                let inv = SidedInverse::new(a, side, c(1.0)).unwrap();
                assert!(inv.defect(&grid()).unwrap() < 1e-8, "a={a} {side:?}");
            }
            assert!(delta_difference_residual(a, c(1.0), &grid()).unwrap() < 1e-9);
        }
        // far from the real line the plus side is close to the pointwise inverse
        let a = C64::new(0.0, -10.0);
        let v = SidedInverse::new(a, Side::Plus, c(1.0)).unwrap().eval(c(0.5)).unwrap();
        assert!((v * (a + 0.5) - 1.0).norm() < 1e-2);
    }

    #[test]
    fn transforms() {
        let tau = c(1.0);
        let ws = small_grid();
        let a = 0.7;
        let got = tempered_transform(|t| (I * t * a).exp() / (2.0 * PI).sqrt(), tau, &ws).unwrap();
        let want = delta_tau(c(-a), tau).unwrap().eval_grid(&ws);
        assert!(crate::quad::max_abs_diff(&got, &want) < 1e-12);
        // 1/(a−x) with Im a < 0
        let a = C64::new(0.5, -0.8);
        for &w in &ws {
            let direct = transform_of_function(move |x| (a - x).inv(), vec![], tau, c(w)).unwrap();
            let sided = reflected_plus_inverse(a, tau, c(w)).unwrap();
            assert!((direct - sided).norm() < 1e-9, "w={w}");
        }
    }

    #[test]
    fn heaviside() {
        let r = heaviside_identities(c(1.0), &small_grid()).unwrap();
        assert!(r.worst() < 1e-10, "{r:?}");
        let far = Underlying::heaviside().star_value(c(1.0), c(8.0)).unwrap();
        assert!((far - 1.0).norm() < 1e-12);
    }

    #[test]
    fn pairing() {
        let tau = C64::new(1.0, 0.2);
        let ws = small_grid();
        let x2 = GaussPoly::from_poly(Poly::new(vec![c(0.0), c(0.0), c(1.0)]));
        assert!(eval_pairing(&x2, c(1.0), tau, &ws).unwrap() < 1e-12);
        assert!(eval_pairing(&GaussPoly::one(), c(1.0), tau, &ws).unwrap() < 1e-14);
        let ex = GaussPoly::gaussian(c(0.0), c(1.0), c(1.0));
        assert!(eval_pairing(&ex, c(0.4), tau, &ws).unwrap() < 1e-12);
    }

    #[test]
    fn principal_values() {
        let ws = small_grid();
        assert!(principal_value_residual(1, c(1.0), &ws).unwrap() < 1e-9);
        assert!(principal_value_residual(2, c(1.0), &ws).unwrap() < 1e-9);
        let vp = principal_value_inverse(1, c(1.0), &ws).unwrap();
        for i in 0..ws.len() {
            assert!((vp[i] + vp[ws.len() - 1 - i]).norm() < 1e-12);
        }
        // and it agrees with the direct smoothing of 1/x where that converges
        let plus = SidedInverse::power(c(0.0), 2, Side::Plus, c(1.0)).unwrap().grid(&ws).unwrap();
        let minus = SidedInverse::power(c(0.0), 2, Side::Minus, c(1.0)).unwrap().grid(&ws).unwrap();
        let pf = principal_value_inverse(2, c(1.0), &ws).unwrap();
        let flipped = (0..ws.len()).map(|i| (pf[i] + (plus[i] + minus[i]) * 0.5).norm()).fold(0.0, f64::max);
        assert!(flipped > 1e-3);
    }

    #[test]
    fn periodic() {
        let ws = grid();
        assert!(periodic_comb_check(c(0.0), c(1.0), 20, &ws).unwrap() < 1e-10);
        let a = C64::new(0.3, 0.1);
        let r1 = periodic_comb_check(a, c(1.5), 20, &ws).unwrap();
        let r2 = periodic_comb_check(a + 2.0 * PI, c(1.5), 20, &ws).unwrap();
        assert!(r1 < 1e-10 && r2 < 1e-10);
        assert!(triangle_transport_residual(c(1.0), 41, &small_grid()).unwrap() < 1e-9);
    }

    #[test]
    fn constant_variation() {
        let tau = c(1.0);
        let ws = small_grid();
        for a in [c(0.0), C64::new(0.5, 0.5)] {
            assert!(constant_variation_defect(a, c(0.0), tau, &ws).unwrap() < 1e-8);
            assert!(constant_variation_defect(a, C64::new(2.0, -1.0), tau, &ws).unwrap() < 1e-8);
        }
    }

    #[test]
    fn product_inverses() {
        let r = product_inverse_check(c(0.5), C64::new(-0.5, 0.3), c(1.0), &small_grid()).unwrap();
        assert!(r.inverse_defect < 1e-8, "{r:?}");
        assert!(r.difference_product < 1e-8, "{r:?}");
    }
}
