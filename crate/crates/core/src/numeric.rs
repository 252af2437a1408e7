//! Floating-point literals and output for `eval`, and the double-double
//! arithmetic `eval_complex` accumulates in.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Digits kept when printing a float.
pub const SIGNIFICANT: usize = 15;

/// `%g`-style rendering with `digits` significant digits, trailing zeros trimmed.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: String| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}", trim(mantissa.to_string()), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(format!("{:.*}", decimals, x))
    }
}

/// `a`, `a+bi`, `a-bi` or `bi`, printed with [`SIGNIFICANT`] digits.
pub fn format_complex(c: Complex64) -> String {
    let re = format_significant(c.re, SIGNIFICANT);
    if c.im == 0.0 {
        return re;
    }
    let im = format_significant(c.im.abs(), SIGNIFICANT);
    let sign = if c.im < 0.0 { '-' } else { '+' };
    if c.re == 0.0 {
        format!("{}{im}i", if c.im < 0.0 { "-" } else { "" })
    } else {
        format!("{re}{sign}{im}i")
    }
}

fn parse_real(text: &str, whole: &str) -> Result<f64> {
    text.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Parse(format!("invalid complex literal `{whole}`")))
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` with decimal parts.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("invalid complex literal `{text}`"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(&t, text)?, 0.0));
    };
    // the sign that separates the parts, skipping exponent signs
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |s: &str| match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(s, text),
    };
    match split {
        Some(i) => Ok(Complex64::new(parse_real(&body[..i], text)?, imag(&body[i..])?)),
        None if body.contains(['+', '-']) && !body.starts_with(['+', '-']) => Err(bad()),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// `hi + lo` with `|lo| <= ulp(hi) / 2`: roughly 106 significant bits.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        DoubleDouble::new(s, e + f)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + -b
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let p = self.hi * b.hi;
        let e = self.hi.mul_add(b.hi, -p) + (self.hi * b.lo + self.lo * b.hi);
        DoubleDouble::new(p, e)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b * q1.into();
        let q2 = r.hi / b.hi;
        let r = r - b * q2.into();
        let q3 = r.hi / b.hi;
        DoubleDouble::new(q1, q2) + q3.into()
    }
}

/// Complex number over [`DoubleDouble`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComplexDd {
    pub re: DoubleDouble,
    pub im: DoubleDouble,
}

impl ComplexDd {
    pub fn new(re: DoubleDouble, im: DoubleDouble) -> Self {
        ComplexDd { re, im }
    }

    pub fn one() -> Self {
        ComplexDd::new(1.0.into(), 0.0.into())
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn recip(self) -> Self {
        let norm = self.re * self.re + self.im * self.im;
        ComplexDd::new(self.re / norm, -self.im / norm)
    }

    /// Principal square root, refined by one Newton step from the `f64` root.
    pub fn sqrt_of(w: Complex64) -> Self {
        let s0 = ComplexDd::from(w.sqrt());
        if w == Complex64::new(0.0, 0.0) {
            return s0;
        }
        let half: DoubleDouble = 0.5.into();
        let correction = (ComplexDd::from(w) - s0 * s0) * s0.recip();
        s0 + ComplexDd::new(correction.re * half, correction.im * half)
    }

    /// `self^k`; a negative `k` needs `self != 0`.
    pub fn powi(self, k: i32) -> Self {
        let mut base = if k < 0 { self.recip() } else { self };
        let mut e = k.unsigned_abs();
        let mut acc = ComplexDd::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl From<Complex64> for ComplexDd {
    fn from(c: Complex64) -> Self {
        ComplexDd::new(c.re.into(), c.im.into())
    }
}

impl Add for ComplexDd {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        ComplexDd::new(self.re + b.re, self.im + b.im)
    }
}

impl Sub for ComplexDd {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        ComplexDd::new(self.re - b.re, self.im - b.im)
    }
}

impl Mul for ComplexDd {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        ComplexDd::new(self.re * b.re - self.im * b.im, self.re * b.im + self.im * b.re)
    }
}
