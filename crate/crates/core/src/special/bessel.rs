//! Star Bessel functions, the Fourier coefficients of `e_*^{i a w sin s}`.
//!
//! In τ-expression `e_*^{iaw sin s}` is `exp(−a²τ sin²s / 4) exp(iaw sin s)`,
//! so `J_n(aw,τ) = e^{−a²τ/8} Σ_k I_k(a²τ/8) J_{n−2k}(aw)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::scalar::C64;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Classical `J_n(x)` by its ascending series. Accurate for moderate `|x|`.
pub fn bessel_j_series(n: i64, x: C64) -> C64 {
    let m = n.unsigned_abs();
    let half = x / 2.0;
    let mut term = (0..m).fold(c(1.0), |acc, k| acc * half / (k + 1) as f64);
    let mut sum = term;
    let q = -half * half;
    for j in 1..400u64 {
        term = term * q / (j as f64 * (j + m) as f64);
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() && j > 2 {
            break;
        }
    }
    if n < 0 && m % 2 == 1 { -sum } else { sum }
}

/// Classical `J_0 … J_n` by Miller's backward recurrence, normalised by
/// `J_0 + 2 Σ J_{2k} = 1`.
fn bessel_j_block(n_max: usize, x: C64) -> Vec<C64> {
    if x.norm() < 1.0 {
        return (0..=n_max as i64).map(|n| bessel_j_series(n, x)).collect();
    }
    let r = x.norm();
    let mut start = n_max.max(r as usize) + 20 + (40.0 * r.max(1.0)).sqrt() as usize;
    start += start % 2;
    let mut vals = vec![c(0.0); start + 2];
    vals[start] = c(1.0);
    for k in (1..=start).rev() {
        vals[k - 1] = vals[k] * (2.0 * k as f64) / x - vals[k + 1];
        if vals[k - 1].norm() > 1e250 {
            for v in vals.iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    let norm = vals[0] + vals.iter().skip(2).step_by(2).map(|v| v * 2.0).sum::<C64>();
    vals.truncate(n_max + 1);
    vals.iter().map(|v| v / norm).collect()
}

/// Classical `J_n(x)`, any integer `n`.
pub fn bessel_j(n: i64, x: C64) -> C64 {
    let m = n.unsigned_abs() as usize;
    let v = bessel_j_block(m, x)[m];
    if n < 0 && m % 2 == 1 { -v } else { v }
}

/// Modified Bessel `I_k(z)` by its series; `I_{−k} = I_k`.
pub fn bessel_i(k: i64, z: C64) -> C64 {
    let m = k.unsigned_abs();
    let half = z / 2.0;
    let mut term = (0..m).fold(c(1.0), |acc, j| acc * half / (j + 1) as f64);
    let mut sum = term;
    let q = half * half;
    for j in 1..400u64 {
        term = term * q / (j as f64 * (j + m) as f64);
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() && j > 2 {
            break;
        }
    }
    sum
}

/// `J_n(aw,τ)` for `|n| ≤ n_max` at one point, from the classical values.
fn star_block(n_max: usize, a: C64, w: C64, tau: C64) -> BTreeMap<i64, C64> {
    let z = a * a * tau / 8.0;
    // I_k(z) decays like (|z|/2)^k / k!
    let mut kmax = 1usize;
    let mut t = 1.0;
    while kmax < 200 {
        t *= (z.norm() / 2.0) / kmax as f64;
        if t < 1e-20 {
            break;
        }
        kmax += 1;
    }
    let ik: Vec<C64> = (0..=kmax as i64).map(|k| bessel_i(k, z)).collect();
    let span = n_max + 2 * kmax;
    let classical = bessel_j_block(span, a * w);
    let jn = |n: i64| {
        let m = n.unsigned_abs() as usize;
        if n < 0 && m % 2 == 1 { -classical[m] } else { classical[m] }
    };
    let pre = (-z).exp();
    let mut out = BTreeMap::new();
    for n in -(n_max as i64)..=n_max as i64 {
        let mut s = ik[0] * jn(n);
        for k in 1..=kmax as i64 {
            s += ik[k as usize] * (jn(n - 2 * k) + jn(n + 2 * k));
        }
        out.insert(n, pre * s);
    }
    out
}

/// `J_n(aw,τ)`.
pub fn bessel_star(n: i64, a: C64, w: C64, tau: C64) -> C64 {
    star_block(n.unsigned_abs() as usize, a, w, tau)[&n]
}

/// `(2π)⁻¹ ∫ exp(−a²τ sin²s/4) exp(iaw sin s − ins) ds` by the trapezoid rule.
pub fn bessel_star_by_quadrature(n: i64, a: C64, w: C64, tau: C64, nodes: usize) -> C64 {
    let i = C64::new(0.0, 1.0);
    (0..nodes)
        .map(|j| {
            let s = 2.0 * PI * j as f64 / nodes as f64;
            let x = a * s.sin();
            (-x * x * tau / 4.0 + i * x * w - i * (n as f64) * s).exp()
        })
        .sum::<C64>()
        / nodes as f64
}

/// Values of `J_n(aw,τ)`, `|n| ≤ N`, on a real grid.
#[derive(Clone, Debug)]
pub struct BesselTable {
    pub a: C64,
    pub tau: C64,
    pub n_max: usize,
    pub ws: Vec<f64>,
    pub values: BTreeMap<i64, Vec<C64>>,
}

/// Builds the table; fails if `|J_{±N}|` is not below `tol` somewhere on the grid.
pub fn bessel_table(a: C64, tau: C64, n_max: usize, ws: &[f64], tol: f64) -> Result<BesselTable> {
    let mut values: BTreeMap<i64, Vec<C64>> = BTreeMap::new();
    for &w in ws {
        for (n, v) in star_block(n_max, a, c(w), tau) {
            values.entry(n).or_default().push(v);
        }
    }
    let tail = [-(n_max as i64), n_max as i64]
        .iter()
        .flat_map(|n| values[n].iter())
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    if tail > tol {
        return Err(Error::Truncation(format!("|J_±{n_max}| = {tail:e} exceeds {tol:e}")));
    }
    Ok(BesselTable { a, tau, n_max, ws: ws.to_vec(), values })
}

impl BesselTable {
    pub fn get(&self, n: i64) -> &[C64] {
        &self.values[&n]
    }

    /// `max_w |Σ_n J_n(aw,τ) − 1|`.
    pub fn unit_sum_residual(&self) -> f64 {
        (0..self.ws.len())
            .map(|i| (self.values.values().map(|v| v[i]).sum::<C64>() - 1.0).norm())
            .fold(0.0, f64::max)
    }

    /// `max |J_n − (−1)ⁿ J_{−n}|` over the table.
    pub fn symmetry_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for n in 1..=self.n_max as i64 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            for (p, q) in self.values[&n].iter().zip(&self.values[&-n]) {
                worst = worst.max((p - q * sign).norm());
            }
        }
        worst
    }
}

/// Star products `J_m(aw,*) ∗ J_l(bw,*)` at one point for `|m|, |l| ≤ n_max`.
///
/// Both factors are Fourier coefficients of linear star-exponentials, whose
/// product is `e_*^{i(a sinθ + b sinφ)w}`; the coefficients are extracted by a
/// two-dimensional trapezoid rule with `nodes²` points.
pub fn bessel_products(a: C64, b: C64, w: C64, tau: C64, n_max: usize, nodes: usize) -> BTreeMap<(i64, i64), C64> {
    let i = C64::new(0.0, 1.0);
    let angles: Vec<f64> = (0..nodes).map(|j| 2.0 * PI * j as f64 / nodes as f64).collect();
    let mut grid = vec![vec![c(0.0); nodes]; nodes];
    for (j, th) in angles.iter().enumerate() {
        for (k, ph) in angles.iter().enumerate() {
            let x = a * th.sin() + b * ph.sin();
            grid[j][k] = (-x * x * tau / 4.0 + i * x * w).exp();
        }
    }
    let n = n_max as i64;
    let phase = |m: i64| -> Vec<C64> { angles.iter().map(|t| (-i * (m as f64) * t).exp()).collect() };
    let phases: BTreeMap<i64, Vec<C64>> = (-n..=n).map(|m| (m, phase(m))).collect();
    // partial transform over φ first
    let mut partial: BTreeMap<i64, Vec<C64>> = BTreeMap::new();
    for l in -n..=n {
        let pl = &phases[&l];
        partial.insert(l, grid.iter().map(|row| row.iter().zip(pl).map(|(g, p)| g * p).sum()).collect());
    }
    let scale = (nodes * nodes) as f64;
    let mut out = BTreeMap::new();
    for m in -n..=n {
        let pm = &phases[&m];
        for l in -n..=n {
            let v: C64 = partial[&l].iter().zip(pm).map(|(g, p)| g * p).sum();
            out.insert((m, l), v / scale);
        }
    }
    out
}

/// `max |J_n((a+b)w,τ) − Σ_m J_m(aw,*) ∗ J_{n−m}(bw,*)|` over the grid and `|n| ≤ n_check`.
pub fn addition_residual(a: C64, b: C64, tau: C64, ws: &[f64], n_check: usize) -> f64 {
    let n_max = n_check + 24;
    let mut worst: f64 = 0.0;
    for &w in ws {
        let prods = bessel_products(a, b, c(w), tau, n_max, 64);
        let direct = star_block(n_check, a + b, c(w), tau);
        for n in -(n_check as i64)..=n_check as i64 {
            let sum: C64 = (-(n_max as i64)..=n_max as i64)
                .filter(|m| (n - m).unsigned_abs() as usize <= n_max)
                .map(|m| prods[&(m, n - m)])
                .sum();
            worst = worst.max((sum - direct[&n]).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_values() {
        // J_0(1), J_1(1), J_5(10)
        assert!((bessel_j(0, c(1.0)).re - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((bessel_j(1, c(1.0)).re - 0.440_050_585_744_933_5).abs() < 1e-15);
        assert!((bessel_j(5, c(10.0)).re - (-0.234_061_528_186_793_6)).abs() < 1e-14);
        let z = C64::new(1.3, -0.4);
        for n in -6..=6 {
            assert!((bessel_j(n, z) - bessel_j_series(n, z)).norm() < 1e-14);
        }
    }

    #[test]
    fn star_values_match_the_defining_integral() {
        let (a, tau) = (C64::new(1.0, 0.0), C64::new(1.0, 0.3));
        for n in [-3, 0, 2, 5] {
            for w in [-1.0, 0.25, 0.9] {
                let direct = bessel_star(n, a, c(w), tau);
                let quad = bessel_star_by_quadrature(n, a, c(w), tau, 64);
                assert!((direct - quad).norm() < 1e-14, "n={n} w={w}");
            }
        }
    }

    #[test]
    fn table_identities() {
        let ws: Vec<f64> = (0..21).map(|i| -1.0 + 0.1 * i as f64).collect();
        let t = bessel_table(c(1.0), c(1.0), 20, &ws, 1e-14).unwrap();
        assert!(t.unit_sum_residual() < 1e-13);
        assert!(t.symmetry_residual() < 1e-15);
        assert!(bessel_table(c(1.0), c(1.0), 1, &ws, 1e-14).is_err());
    }

    #[test]
    fn addition_formula() {
        let ws = [-1.0, -0.3, 0.5, 1.0];
        assert!(addition_residual(c(1.0), c(0.5), c(1.0), &ws, 4) < 1e-12);
    }
}
