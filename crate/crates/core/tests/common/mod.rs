//! Independent reference implementations used by the integration tests.
//!
//! Nothing here calls into the library's arithmetic: coefficient vectors are
//! manipulated directly so the oracles can disagree with the code under test.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

pub type C64 = Complex<f64>;
pub type Q = BigRational;
pub type CQ = Complex<BigRational>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn cq(re: Q, im: Q) -> CQ {
    CQ::new(re, im)
}

fn trim(mut v: Vec<CQ>) -> Vec<CQ> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn deriv(f: &[CQ]) -> Vec<CQ> {
    f.iter().enumerate().skip(1).map(|(k, c)| c * CQ::from(Q::from_integer(BigInt::from(k)))).collect()
}

fn mul(f: &[CQ], g: &[CQ]) -> Vec<CQ> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![CQ::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] = &out[i + j] + a * b;
        }
    }
    out
}

fn add_scaled(acc: &mut Vec<CQ>, f: &[CQ], s: &CQ) {
    if acc.len() < f.len() {
        acc.resize(f.len(), CQ::zero());
    }
    for (a, b) in acc.iter_mut().zip(f) {
        *a = &*a + b * s;
    }
}

/// `Σ_k τ^k/(2^k k!) f^{(k)} g^{(k)}` on coefficient vectors.
pub fn star(f: &[CQ], g: &[CQ], tau: &CQ) -> Vec<CQ> {
    let (mut df, mut dg) = (f.to_vec(), g.to_vec());
    let mut weight = CQ::one();
    let mut out = Vec::new();
    let mut k = 0i64;
    while !df.is_empty() && !dg.is_empty() {
        add_scaled(&mut out, &mul(&df, &dg), &weight);
        k += 1;
        weight = weight * tau / CQ::from(q(2 * k, 1));
        df = trim(deriv(&df));
        dg = trim(deriv(&dg));
    }
    trim(out)
}

/// `Σ_k (δ/4)^k/k! f^{(2k)}` with `δ = τ' − τ`.
pub fn intertwine(f: &[CQ], tau: &CQ, tau_to: &CQ) -> Vec<CQ> {
    let delta = (tau_to - tau) / CQ::from(q(4, 1));
    let mut d = f.to_vec();
    let mut weight = CQ::one();
    let mut out = Vec::new();
    let mut k = 0i64;
    while !d.is_empty() {
        add_scaled(&mut out, &d, &weight);
        k += 1;
        weight = weight * &delta / CQ::from(q(k, 1));
        d = trim(deriv(&trim(deriv(&d))));
    }
    trim(out)
}

pub fn to_c64(z: &CQ) -> C64 {
    use num_traits::ToPrimitive;
    C64::new(z.re.to_f64().unwrap(), z.im.to_f64().unwrap())
}

/// `amp · p(w) · exp(αw² + βw)` stored as complex coefficients of `p`.
#[derive(Clone, Debug)]
pub struct Gauss {
    pub p: Vec<C64>,
    pub alpha: C64,
    pub beta: C64,
    pub amp: C64,
}

impl Gauss {
    pub fn eval(&self, w: C64) -> C64 {
        let pv = self.p.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * w + c);
        self.amp * pv * (self.alpha * w * w + self.beta * w).exp()
    }

    /// Derivative: `p' + (2αw + β)p` times the same exponential.
    pub fn derivative(&self) -> Gauss {
        let n = self.p.len();
        let mut out = vec![C64::new(0.0, 0.0); n + 1];
        for (k, c) in self.p.iter().enumerate() {
            if k > 0 {
                out[k - 1] += c * k as f64;
            }
            out[k] += c * self.beta;
            out[k + 1] += c * self.alpha * 2.0;
        }
        Gauss { p: out, ..self.clone() }
    }
}

/// Truncated defining series of `f ∗ g` at one point.
pub fn gauss_star_series(f: &Gauss, g: &Gauss, tau: C64, w: C64, terms: usize) -> C64 {
    let (mut df, mut dg) = (f.clone(), g.clone());
    let mut weight = C64::new(1.0, 0.0);
    let mut sum = C64::new(0.0, 0.0);
    for k in 0..terms {
        sum += weight * df.eval(w) * dg.eval(w);
        df = df.derivative();
        dg = dg.derivative();
        weight = weight * tau / (2.0 * (k + 1) as f64);
    }
    sum
}

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `E_0 … E_{2n}` from `Σ_k C(2m, 2k) E_{2k} = 0`, odd entries zero.
pub fn euler_by_recurrence(n: usize) -> Vec<Q> {
    let mut e = vec![Q::zero(); 2 * n + 1];
    e[0] = Q::one();
    for m in 1..=n {
        let s: Q = (0..m).map(|k| Q::from_integer(binom(2 * m as u64, 2 * k as u64)) * &e[2 * k]).sum();
        e[2 * m] = -s;
    }
    e
}

/// `B_0 … B_n` from `Σ_{k≤m} C(m+1, k) B_k = 0`, with `B_1 = −1/2`.
pub fn bernoulli_by_recurrence(n: usize) -> Vec<Q> {
    let mut b = vec![Q::zero(); n + 1];
    b[0] = Q::one();
    for m in 1..=n {
        let s: Q = (0..m).map(|k| Q::from_integer(binom(m as u64 + 1, k as u64)) * &b[k]).sum();
        b[m] = -s / Q::from_integer(BigInt::from(m + 1));
    }
    b
}

/// `Σ_n e^{−n²τ} e^{2inw}` summed directly.
pub fn theta3_direct(w: C64, tau: C64) -> C64 {
    let i = C64::new(0.0, 1.0);
    let mut s = C64::new(1.0, 0.0);
    for n in 1..200 {
        let nf = n as f64;
        let t = (-nf * nf * tau).exp() * 2.0 * (2.0 * nf * w * i).cos();
        s += t;
        if t.norm() < 1e-300 {
            break;
        }
    }
    s
}

/// `a_{−1}` at `ν = 0`: `(−τ)^{−1/2} e^{−w²/τ}`.
pub fn residue_at_zero_nu(tau: C64, w: C64) -> C64 {
    (-tau).sqrt().inv() * (-w * w / tau).exp()
}

pub fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

pub fn small_q() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=7).prop_map(|(n, d)| q(n, d))
}

pub fn small_cq() -> impl Strategy<Value = CQ> {
    (small_q(), small_q()).prop_map(|(a, b)| cq(a, b))
}

/// Complex rational coefficient vectors of degree at most `max_deg`.
pub fn poly(max_deg: usize) -> impl Strategy<Value = Vec<CQ>> {
    prop::collection::vec(small_cq(), 1..=max_deg + 1).prop_map(trim)
}
