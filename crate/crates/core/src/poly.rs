//! Dense polynomials in `w` and the deformed product on them.
//!
//! The product at parameter `τ` is
//! `f ∗ g = Σ_k τ^k/(2^k k!) ∂^k f ∂^k g`, a finite sum on polynomials.
//! Changing the parameter is the heat operator `e^{((τ'−τ)/4)∂²}`, also finite.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{format_c64, format_crat, powi, Coeff, CRat, C64};

/// Polynomial with coefficients indexed by degree; trailing zeros stripped.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

/// Floating complex polynomial.
pub type Poly = Polynomial<C64>;
/// Exact complex-rational polynomial.
pub type RationalPoly = Polynomial<CRat>;

impl<T: Coeff> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// `c·w^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The variable `w`.
    pub fn w() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// `a + b·w`.
    pub fn linear(a: T, b: T) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `w^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::int(k as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `p(a + b·w)`.
    pub fn compose_linear(&self, a: &T, b: &T) -> Self {
        let inner = Self::linear(a.clone(), b.clone());
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &inner) + &Self::constant(c.clone())
        })
    }

    /// Substitute another polynomial for `w`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    pub fn to_c64(&self) -> Poly {
        self.map(|c| c.to_c64())
    }

    /// Deformed product at parameter `tau`.
    pub fn star(&self, other: &Self, tau: &T) -> Self {
        star_product(self, other, tau)
    }
}

impl Poly {
    pub fn eval_c(&self, w: C64) -> C64 {
        self.eval(&w)
    }

    /// Largest coefficient modulus.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl<T: Coeff> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, o: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<T: Coeff> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, o: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<T: Coeff> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Coeff> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, o: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<T: Coeff> $tr for Polynomial<T> {
            type Output = Polynomial<T>;
            fn $m(self, o: Polynomial<T>) -> Polynomial<T> {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// Renders `p` in the variable `var`, formatting coefficients with `show`.
pub fn render<T: Coeff>(p: &Polynomial<T>, var: &str, show: impl Fn(&T) -> String) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mut s = show(c);
        let compound = s.chars().skip(1).any(|ch| ch == '+' || ch == '-') && !s.contains('e');
        if compound {
            s = format!("({s})");
        }
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) if !compound => ("-", rest.to_string()),
            _ => ("+", s),
        };
        let mono = match k {
            0 => body,
            _ => {
                let v = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                if body == "1" { v } else { format!("{body}{v}") }
            }
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
            out.push_str(&mono);
        } else {
            out.push_str(&format!(" {sign} {mono}"));
        }
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, "w", |c| format_c64(*c)))
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, "w", format_crat))
    }
}

impl fmt::Display for Polynomial<crate::scalar::QSqrt2> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, "w", |c| c.to_string()))
    }
}

/// `Σ_k τ^k/(2^k k!) ∂^k f · ∂^k g`.
pub fn star_product<T: Coeff>(f: &Polynomial<T>, g: &Polynomial<T>, tau: &T) -> Polynomial<T> {
    let kmax = match (f.degree(), g.degree()) {
        (Some(a), Some(b)) => a.min(b),
        _ => return Polynomial::zero(),
    };
    let mut df = f.clone();
    let mut dg = g.clone();
    let mut weight = T::one();
    let mut out = Polynomial::zero();
    for k in 0..=kmax {
        if k > 0 {
            df = df.derivative();
            dg = dg.derivative();
            weight = weight * tau.clone() / T::int(2 * k as i64);
        }
        out = &out + &(&df * &dg).scale(&weight);
    }
    out
}

/// Heat operator `e^{θ∂²}` on a polynomial.
pub fn heat<T: Coeff>(f: &Polynomial<T>, theta: &T) -> Polynomial<T> {
    let mut out = f.clone();
    let mut term = f.clone();
    let mut j = 0i64;
    while !term.is_zero() {
        j += 1;
        term = term.nth_derivative(2).scale(&(theta.clone() / T::int(j)));
        out = &out + &term;
    }
    out
}

/// Change of expression parameter, `e^{((τ'−τ)/4)∂²} f`.
pub fn intertwine<T: Coeff>(f: &Polynomial<T>, tau_from: &T, tau_to: &T) -> Polynomial<T> {
    let theta = (tau_to.clone() - tau_from.clone()) / T::int(4);
    heat(f, &theta)
}

/// `P_n(w,τ) = Σ_{k≤n/2} n!/(4^k k!(n−2k)!) τ^k w^{n−2k}`, the expression of the n-th power of `w`.
pub fn w_star_power<T: Coeff>(n: usize, tau: &T) -> Polynomial<T> {
    let mut coeffs = vec![T::zero(); n + 1];
    // coefficient ratio between consecutive k: τ (n−2k)(n−2k−1) / (4(k+1))
    let mut c = T::one();
    let mut k = 0usize;
    loop {
        coeffs[n - 2 * k] = c.clone();
        if 2 * k + 2 > n {
            break;
        }
        let num = ((n - 2 * k) * (n - 2 * k - 1)) as i64;
        c = c * tau.clone() * T::int(num) / T::int(4 * (k as i64 + 1));
        k += 1;
    }
    Polynomial::new(coeffs)
}

/// Generator of the parameter flow, `¼ f''`.
pub fn infinitesimal_intertwiner<T: Coeff>(f: &Polynomial<T>) -> Polynomial<T> {
    f.nth_derivative(2).scale(&T::ratio(1, 4))
}

/// Star power by repeated multiplication (reference route for `w_star_power`).
pub fn star_power<T: Coeff>(f: &Polynomial<T>, n: usize, tau: &T) -> Polynomial<T> {
    (0..n).fold(Polynomial::one(), |acc, _| star_product(&acc, f, tau))
}

/// Parse `c*w^k` terms joined by `+`/`-`; coefficients may be complex `(a+bi)` or `bi`.
pub fn parse_poly(src: &str) -> Result<RationalPoly> {
    use crate::scalar::parse_complex_rational;
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 0..bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > start && !matches!(bytes[i - 1], b'e' | b'E' | b'^' | b'*') => {
                terms.push(&s[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    terms.push(&s[start..]);
    let mut out = RationalPoly::zero();
    for term in terms {
        let (sign, body) = match term.as_bytes()[0] {
            b'-' => (-1, &term[1..]),
            b'+' => (1, &term[1..]),
            _ => (1, term),
        };
        let (coef_src, power) = match body.find('w') {
            Some(i) => {
                let c = body[..i].trim_end_matches('*');
                let p = match &body[i + 1..] {
                    "" => 1,
                    rest => rest
                        .strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| Error::Parse(format!("bad exponent in {term:?}")))?,
                };
                (c, p)
            }
            None => (body, 0),
        };
        let coef_src = coef_src.trim_start_matches('(').trim_end_matches(')');
        let c = if coef_src.is_empty() { CRat::int(1) } else { parse_complex_rational(coef_src)? };
        let c = if sign < 0 { -c } else { c };
        out = &out + &RationalPoly::monomial(c, power);
    }
    Ok(out)
}

/// `τ^k` helper shared by callers that build coefficient tables.
pub fn tau_pow<T: Coeff>(tau: &T, k: u32) -> T {
    powi(tau, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> CRat {
        CRat::ratio(n, d)
    }

    #[test]
    fn product_of_w_with_itself() {
        let w = RationalPoly::w();
        let got = star_product(&w, &w, &q(2, 1));
        assert_eq!(got, RationalPoly::new(vec![q(1, 1), q(0, 1), q(1, 1)]));
    }

    #[test]
    fn product_of_squares() {
        let tau = q(3, 7);
        let w2 = RationalPoly::monomial(q(1, 1), 2);
        let got = star_product(&w2, &w2, &tau);
        let t = tau.clone();
        let want = RationalPoly::new(vec![t.clone() * t.clone() / q(2, 1), q(0, 1), q(2, 1) * t, q(0, 1), q(1, 1)]);
        assert_eq!(got, want);
    }

    #[test]
    fn unit_is_neutral() {
        let f = parse_poly("3w^4 - (1+2i)w + 5").unwrap();
        assert_eq!(star_product(&f, &RationalPoly::one(), &q(5, 3)), f);
    }

    #[test]
    fn intertwiner_examples() {
        let tau = q(-2, 5);
        let w2 = RationalPoly::monomial(q(1, 1), 2);
        assert_eq!(intertwine(&w2, &q(0, 1), &tau), RationalPoly::new(vec![tau.clone() / q(2, 1), q(0, 1), q(1, 1)]));
        let w3 = RationalPoly::monomial(q(1, 1), 3);
        let want = RationalPoly::new(vec![q(0, 1), q(3, 2) * tau.clone(), q(0, 1), q(1, 1)]);
        assert_eq!(intertwine(&w3, &q(0, 1), &tau), want);
        assert_eq!(intertwine(&w3, &tau, &tau), w3);
    }

    #[test]
    fn powers_match_repeated_products() {
        let tau = CRat::new(q(1, 3).re, q(-2, 1).re);
        for n in 0..10 {
            assert_eq!(w_star_power(n, &tau), star_power(&RationalPoly::w(), n, &tau), "n = {n}");
        }
    }

    #[test]
    fn infinitesimal_generator() {
        assert_eq!(infinitesimal_intertwiner(&RationalPoly::monomial(q(1, 1), 2)), RationalPoly::constant(q(1, 2)));
        assert!(infinitesimal_intertwiner(&RationalPoly::w()).is_zero());
        assert_eq!(infinitesimal_intertwiner(&RationalPoly::monomial(q(1, 1), 4)), RationalPoly::monomial(q(3, 1), 2));
    }

    #[test]
    fn parse_and_display() {
        let p = parse_poly("w^2 - 2w + 0.5").unwrap();
        assert_eq!(p.to_string(), "w^2 - 2w + 1/2");
        let z = parse_poly("(1-2i)*w").unwrap();
        assert_eq!(z.coeff(1), CRat::new(q(1, 1).re, q(-2, 1).re));
        assert_eq!(Poly::new(vec![C64::new(0.5, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)]).to_string(), "w^2 + 0.5");
    }
}
