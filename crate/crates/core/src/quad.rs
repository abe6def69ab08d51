//! Gauss–Legendre quadrature on composite panels, plus the periodic trapezoid rule.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::scalar::C64;

/// Nodes per panel.
pub const GL_ORDER: usize = 24;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * p - pm1) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn default_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GL_ORDER))
}

/// Composite Gauss–Legendre over `[a, b]` with `panels` equal panels.
pub fn integrate_panels(f: impl Fn(f64) -> C64, a: f64, b: f64, panels: usize) -> C64 {
    let (x, w) = default_rule();
    let h = (b - a) / panels as f64;
    let mut total = C64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let mut s = C64::new(0.0, 0.0);
        for (xi, wi) in x.iter().zip(w) {
            s += f(mid + 0.5 * h * xi) * *wi;
        }
        total += s * (0.5 * h);
    }
    total
}

/// Integrate over `[a, b]`, doubling the panel count until two successive
/// estimates agree to `tol` relative (with an absolute floor `abs_floor`).
pub fn integrate(f: impl Fn(f64) -> C64, a: f64, b: f64, start_panels: usize, tol: f64, abs_floor: f64) -> Result<C64> {
    let mut panels = start_panels.max(1);
    let mut prev = integrate_panels(&f, a, b, panels);
    for _ in 0..12 {
        panels *= 2;
        let next = integrate_panels(&f, a, b, panels);
        let err = (next - prev).norm();
        if err <= tol * next.norm() || err <= abs_floor {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Quadrature(format!("no convergence on [{a}, {b}] with {panels} panels")))
}

/// Path integral along the segment from `z0` to `z1` of a function of a complex variable.
pub fn integrate_segment(f: impl Fn(C64) -> C64, z0: C64, z1: C64, panels: usize) -> C64 {
    let d = z1 - z0;
    integrate_panels(|s| f(z0 + d * s) * d, 0.0, 1.0, panels)
}

/// `(2πi)⁻¹ ∮_{|s|=r} f(s) ds` by the trapezoid rule with `n` nodes.
pub fn contour_trapezoid(f: impl Fn(C64) -> C64, radius: f64, n: usize) -> C64 {
    let mut total = C64::new(0.0, 0.0);
    for j in 0..n {
        let phi = 2.0 * PI * j as f64 / n as f64;
        let s = C64::from_polar(radius, phi);
        // ds = i s dφ, so (2πi)⁻¹ ds = s dφ / 2π
        total += f(s) * s;
    }
    total / n as f64
}

/// Points `lo..=hi` evenly spaced, `count ≥ 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count < 2 || lo.is_nan() || hi.is_nan() || hi <= lo {
            return Err(Error::Domain(format!("grid needs count ≥ 2 and lo < hi, got ({lo}, {hi}, {count})")));
        }
        Ok(Grid { lo, hi, count })
    }

    pub fn points(&self) -> Vec<f64> {
        let h = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.lo + i as f64 * h).collect()
    }

    /// Parse `lo,hi,count`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::Parse(format!("grid must be lo,hi,count: {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let lo = parts[0].parse().map_err(|_| bad())?;
        let hi = parts[1].parse().map_err(|_| bad())?;
        let count = parts[2].parse().map_err(|_| bad())?;
        Grid::new(lo, hi, count)
    }
}

impl Default for Grid {
    /// 41 points on [−3, 3].
    fn default() -> Self {
        Grid { lo: -3.0, hi: 3.0, count: 41 }
    }
}

/// Largest modulus of `a − b` over paired samples.
pub fn max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Largest modulus over samples.
pub fn max_abs(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}
