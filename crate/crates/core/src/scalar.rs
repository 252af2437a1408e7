//! Coefficient scalars.
//!
//! Everything in the ring and series layers is generic over [`Scalar`]. The
//! exact instantiation uses [`Rational`]; `f64`/`f32` are available for quick
//! numeric experiments but never feed a verdict.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::Floor;
use malachite_base::num::conversion::traits::{IsInteger, RoundingFrom};
use malachite_base::rounding_modes::RoundingMode;
use malachite_nz::natural::Natural;
use num_traits::{Num, One, Zero};

use crate::error::{Error, Result};

type Q = malachite_q::Rational;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Q);

impl Rational {
    /// `num / den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(Q::from_signeds(num, den))
    }

    pub fn is_integer(&self) -> bool {
        (&self.0).is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0 < Q::from(0u32)
    }

    pub fn denominator_at_most(&self, bound: u64) -> bool {
        *self.0.denominator_ref() <= Natural::from(bound)
    }

    pub fn cmp_denominator(&self, other: &Rational) -> Ordering {
        self.0.denominator_ref().cmp(other.0.denominator_ref())
    }

    /// Closest `f64`, ties to even.
    pub fn to_f64_nearest(&self) -> f64 {
        f64::rounding_from(&self.0, RoundingMode::Nearest).0
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(&self.0, f)
    }
}

impl Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(&self.0, f)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

/// Floored remainder `a - b * floor(a / b)`.
impl Rem for Rational {
    type Output = Rational;
    fn rem(self, rhs: Rational) -> Rational {
        let q = Q::from((&self.0 / &rhs.0).floor());
        Rational(self.0 - rhs.0 * q)
    }
}

impl Neg for Rational {
    type Output = Rational;
    #[inline]
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Q::from(0u32))
    }

    fn is_zero(&self) -> bool {
        self.0 == Q::from(0u32)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Q::from(1u32))
    }
}

impl Num for Rational {
    type FromStrRadixErr = Error;

    fn from_str_radix(text: &str, radix: u32) -> Result<Self> {
        if radix != 10 {
            return Err(Error::Parse(format!("unsupported radix {radix}")));
        }
        parse_rational(text)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_rational(text)
    }
}

pub trait Scalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> + Send + Sync {
    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// `(hi, lo)` with `hi + lo` closer to the value than `hi` alone.
    fn to_f64_pair(&self) -> (f64, f64) {
        (self.to_f64(), 0.0)
    }

    /// `Some(m)` when the value is the integer `-m` with `m >= 0`.
    fn nonpositive_integer(&self) -> Option<u64>;
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        Rational(Q::from(v))
    }

    fn to_f64(&self) -> f64 {
        self.to_f64_nearest()
    }

    fn to_f64_pair(&self) -> (f64, f64) {
        let hi = self.to_f64_nearest();
        match Q::try_from(hi) {
            Ok(h) => (hi, Rational(&self.0 - h).to_f64_nearest()),
            Err(_) => (hi, 0.0),
        }
    }

    fn nonpositive_integer(&self) -> Option<u64> {
        if self.is_integer() && !(*self > Rational::zero()) {
            u64::try_from(&(-self.0.clone())).ok()
        } else {
            None
        }
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn nonpositive_integer(&self) -> Option<u64> {
                if self.fract() == 0.0 && *self <= 0.0 {
                    Some((-*self) as u64)
                } else {
                    None
                }
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

fn parse_integer(text: &str) -> Option<Q> {
    let digits = text.strip_prefix(['-', '+']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Q::from_str(text.strip_prefix('+').unwrap_or(text)).ok()
}

/// `p/q` (or `p`) as a rational; decimals are rejected so CLI input stays exact.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational literal `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let num = parse_integer(num).ok_or_else(bad)?;
    let den = parse_integer(den).ok_or_else(bad)?;
    if den == Q::from(0u32) {
        return Err(Error::Parse(format!("zero denominator in `{text}`")));
    }
    Ok(Rational(num / den))
}

/// Canonical text: `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

pub fn int(v: i64) -> Rational {
    Rational::from_i64(v)
}

/// Rising factorial `(lambda)_n`, with `(lambda)_0 = 1` for every `lambda`.
pub fn poch<T: Scalar>(lambda: &T, n: usize) -> T {
    let mut acc = T::one();
    for i in 0..n {
        acc = acc * (lambda.clone() + T::from_i64(i as i64));
    }
    acc
}

pub fn factorial<T: Scalar>(n: usize) -> T {
    poch(&T::one(), n)
}
