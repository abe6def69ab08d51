//! Coefficient fields.
//!
//! Two backends share one trait: machine complex numbers ([`C64`]) for
//! anything analytic, and exact complex rationals ([`CRat`]) for identities
//! that must hold with zero residual. [`QSqrt2`] extends the exact field by
//! `√2` so the Hermite family stays exact.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Machine complex number.
pub type C64 = Complex<f64>;
/// Exact complex rational.
pub type CRat = Complex<BigRational>;

/// Field operations needed by the polynomial layer.
pub trait Coeff:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// The rational number `num/den`.
    fn ratio(num: i64, den: i64) -> Self;

    fn int(n: i64) -> Self {
        Self::ratio(n, 1)
    }

    /// Numeric value, for display and cross-checks.
    fn to_c64(&self) -> C64;
}

impl Coeff for C64 {
    fn ratio(num: i64, den: i64) -> Self {
        C64::new(num as f64 / den as f64, 0.0)
    }

    fn to_c64(&self) -> C64 {
        *self
    }
}

impl Coeff for CRat {
    fn ratio(num: i64, den: i64) -> Self {
        CRat::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    fn to_c64(&self) -> C64 {
        C64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

/// Rational to nearest double.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact complex rational from a pair of exact rationals.
pub fn crat(re: BigRational, im: BigRational) -> CRat {
    CRat::new(re, im)
}

/// The exact binary value of a finite double.
pub fn crat_from_c64(z: C64) -> Result<CRat, Error> {
    let conv = |x: f64| BigRational::from_float(x).ok_or_else(|| Error::Domain(format!("not finite: {x}")));
    Ok(CRat::new(conv(z.re)?, conv(z.im)?))
}

/// Exact rational `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Element `a + b√2` with complex-rational `a`, `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSqrt2 {
    pub a: CRat,
    pub b: CRat,
}

impl QSqrt2 {
    pub fn new(a: CRat, b: CRat) -> Self {
        QSqrt2 { a, b }
    }

    pub fn sqrt2() -> Self {
        QSqrt2::new(CRat::zero(), CRat::one())
    }

    pub fn from_crat(a: CRat) -> Self {
        QSqrt2::new(a, CRat::zero())
    }

    /// `(√2)^n`.
    pub fn sqrt2_pow(n: u32) -> Self {
        let two = CRat::int(2);
        let mut half = CRat::one();
        for _ in 0..n / 2 {
            half *= two.clone();
        }
        if n.is_multiple_of(2) {
            QSqrt2::from_crat(half)
        } else {
            QSqrt2::new(CRat::zero(), half)
        }
    }

    fn conj_sqrt2(&self) -> Self {
        QSqrt2::new(self.a.clone(), -self.b.clone())
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = match format_crat(&self.b).as_str() {
            "1" => "√2".to_string(),
            "-1" => "-√2".to_string(),
            b if b.len() > 1 && b[1..].contains(['+', '-']) => format!("({b})√2"),
            b => format!("{b}√2"),
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", format_crat(&self.a)),
            (true, false) => write!(f, "{root}"),
            (false, false) => write!(f, "{}+{root}", format_crat(&self.a)),
        }
    }
}

impl Zero for QSqrt2 {
    fn zero() -> Self {
        QSqrt2::new(CRat::zero(), CRat::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QSqrt2 {
    fn one() -> Self {
        QSqrt2::from_crat(CRat::one())
    }
}

impl Add for QSqrt2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        QSqrt2::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for QSqrt2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        QSqrt2::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for QSqrt2 {
    type Output = Self;
    fn neg(self) -> Self {
        QSqrt2::new(-self.a, -self.b)
    }
}

impl Mul for QSqrt2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let two = CRat::int(2);
        QSqrt2::new(
            self.a.clone() * o.a.clone() + two * self.b.clone() * o.b.clone(),
            self.a * o.b + self.b * o.a,
        )
    }
}

impl Div for QSqrt2 {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        // multiply by the √2-conjugate; the norm a² − 2b² lies in the base field
        let conj = o.conj_sqrt2();
        let norm = (o * conj.clone()).a;
        let num = self * conj;
        QSqrt2::new(num.a / norm.clone(), num.b / norm)
    }
}

impl Coeff for QSqrt2 {
    fn ratio(num: i64, den: i64) -> Self {
        QSqrt2::from_crat(CRat::ratio(num, den))
    }

    fn to_c64(&self) -> C64 {
        self.a.to_c64() + self.b.to_c64() * std::f64::consts::SQRT_2
    }
}

/// Exact rational from a decimal literal such as `-1.25`, `3`, `2e-3` or `1/3`.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut value = BigRational::from_integer(BigInt::from_str(&digits).map_err(|_| bad())?);
    let shift = exp - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    for _ in 0..shift.unsigned_abs() {
        if shift > 0 {
            value *= ten.clone();
        } else {
            value /= ten.clone();
        }
    }
    Ok(if neg { -value } else { value })
}

/// Parse a complex number written `re,im`, `a+bi`, `bi` or `a`.
pub fn parse_complex_rational(s: &str) -> Result<CRat, Error> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some((re, im)) = s.split_once(',') {
        return Ok(CRat::new(parse_rational(re)?, parse_rational(im)?));
    }
    if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not the leading one and not part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                split = Some(i);
                break;
            }
        }
        let imag = |t: &str| -> Result<BigRational, Error> {
            match t {
                "" | "+" => Ok(BigRational::one()),
                "-" => Ok(-BigRational::one()),
                _ => parse_rational(t),
            }
        };
        return match split {
            Some(i) => Ok(CRat::new(parse_rational(&body[..i])?, imag(&body[i..])?)),
            None => Ok(CRat::new(BigRational::zero(), imag(body)?)),
        };
    }
    Ok(CRat::new(parse_rational(&s)?, BigRational::zero()))
}

/// Floating complex from the same grammar as [`parse_complex_rational`].
pub fn parse_complex(s: &str) -> Result<C64, Error> {
    parse_complex_rational(s).map(|z| z.to_c64())
}

/// Decimal expansion of `r` with `digits` significant digits.
pub fn format_rational(r: &BigRational, digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let mut x = r.abs();
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut exp10: i64 = 0;
    while x >= ten {
        x /= ten.clone();
        exp10 += 1;
    }
    while x < BigRational::one() {
        x *= ten.clone();
        exp10 -= 1;
    }
    // x in [1, 10): scale to an integer with `digits` digits and round half up
    let mut scaled = x;
    for _ in 1..digits.max(1) {
        scaled *= ten.clone();
    }
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut mant = (scaled + half).floor().to_integer().to_string();
    if mant.len() > digits.max(1) {
        mant.pop();
        exp10 += 1;
    }
    let sign = if neg { "-" } else { "" };
    let digits_str = mant.trim_end_matches('0');
    let digits_str = if digits_str.is_empty() { "0" } else { digits_str };
    if (-7..21).contains(&exp10) {
        // positional notation
        let point = exp10 + 1;
        let body = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), digits_str)
        } else if point as usize >= digits_str.len() {
            format!("{}{}", digits_str, "0".repeat(point as usize - digits_str.len()))
        } else {
            let (int, frac) = digits_str.split_at(point as usize);
            format!("{int}.{frac}")
        };
        return format!("{sign}{body}");
    }
    let (head, tail) = digits_str.split_at(1);
    let body = if tail.is_empty() { head.to_string() } else { format!("{head}.{tail}") };
    format!("{sign}{body}e{exp10}")
}

/// Exact rational as `p` or `p/q`.
pub fn format_fraction(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Complex rational as `re` or `re+imi`, using exact fractions.
pub fn format_crat(z: &CRat) -> String {
    if z.im.is_zero() {
        return format_fraction(&z.re);
    }
    if z.re.is_zero() {
        return format!("{}i", format_fraction(&z.im));
    }
    let sign = if z.im.is_negative() { "-" } else { "+" };
    format!("{}{}{}i", format_fraction(&z.re), sign, format_fraction(&z.im.abs()))
}

/// Short display of a machine complex number.
pub fn format_c64(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Residual as a decimal string with enough digits to round-trip.
pub fn format_residual(x: f64) -> String {
    format!("{x:.17e}")
}

/// Principal square root.
pub fn csqrt(z: C64) -> C64 {
    z.sqrt()
}

/// Factorial as f64.
pub fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Exact factorial.
pub fn factorial_big(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient as exact integer.
pub fn binomial_big(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial_big(n) / (factorial_big(k) * factorial_big(n - k))
}

/// Binomial coefficient as f64.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Integer power of a coefficient.
pub fn powi<T: Coeff>(x: &T, n: u32) -> T {
    let mut out = T::one();
    for _ in 0..n {
        out = out * x.clone();
    }
    out
}
