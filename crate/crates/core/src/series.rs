//! Truncated formal power series in `t` with Laurent-polynomial coefficients.
//!
//! A series of order `N` stores exactly `N + 1` coefficients and every
//! operation works modulo `t^(N+1)`; the coefficient at index `N` is the last
//! reliable one.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct TSeries<T: Scalar> {
    coeffs: Vec<LaurentPoly<T>>,
}

impl<T: Scalar> TSeries<T> {
    /// Pads with zeros or truncates so that the result has the given order.
    pub fn new(mut coeffs: Vec<LaurentPoly<T>>, order: usize) -> Self {
        coeffs.resize(order + 1, LaurentPoly::zero());
        TSeries { coeffs }
    }

    pub fn from_fn<F: FnMut(usize) -> LaurentPoly<T>>(order: usize, f: F) -> Self {
        TSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(LaurentPoly::one(), order)
    }

    pub fn constant(c: LaurentPoly<T>, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[LaurentPoly<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, n: i64) -> Result<&LaurentPoly<T>> {
        usize::try_from(n)
            .ok()
            .and_then(|i| self.coeffs.get(i))
            .ok_or(Error::IndexOutOfRange { index: n, order: self.order() })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }

    pub fn map_coeffs<F: FnMut(&LaurentPoly<T>) -> LaurentPoly<T>>(&self, f: F) -> Self {
        TSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn scale_poly(&self, p: &LaurentPoly<T>) -> Self {
        self.map_coeffs(|c| c * p)
    }

    /// Multiply by `t^k`, dropping whatever falls past the order.
    pub fn shift_t(&self, k: usize) -> Self {
        let order = self.order();
        Self::from_fn(order, |n| if n >= k { self.coeffs[n - k].clone() } else { LaurentPoly::zero() })
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch { left: self.order(), right: other.order() })
        }
    }

    fn zip_with<F>(&self, other: &Self, f: F) -> Result<Self>
    where
        F: Fn(&LaurentPoly<T>, &LaurentPoly<T>) -> LaurentPoly<T>,
    {
        self.check_order(other)?;
        Ok(TSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect() })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Cauchy product.
    pub fn ps_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::from_fn(self.order(), |n| {
            let mut acc = LaurentPoly::zero();
            for k in 0..=n {
                if self.coeffs[k].is_zero() || other.coeffs[n - k].is_zero() {
                    continue;
                }
                acc = acc + &self.coeffs[k] * &other.coeffs[n - k];
            }
            acc
        }))
    }

    /// Multiplicative inverse; the constant term must be a nonzero scalar.
    pub fn ps_inv(&self) -> Result<Self> {
        let c0 = match self.coeffs[0].as_constant() {
            Some(c) if !c.is_zero() => c,
            _ => return Err(Error::NonUnitConstant),
        };
        let inv0 = T::one() / c0;
        let mut out: Vec<LaurentPoly<T>> = vec![LaurentPoly::constant(inv0.clone())];
        for n in 1..=self.order() {
            let mut acc = LaurentPoly::zero();
            for k in 1..=n {
                acc = acc + &self.coeffs[k] * &out[n - k];
            }
            out.push(acc.scale(&(-inv0.clone())));
        }
        Ok(TSeries { coeffs: out })
    }

    fn require_constant(&self, want: T, name: &str) -> Result<()> {
        if self.coeffs[0].as_constant().as_ref() == Some(&want) {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{name} requires constant term {want:?}")))
        }
    }

    /// Formal logarithm of a series with constant term 1.
    pub fn ps_log(&self) -> Result<Self> {
        self.require_constant(T::one(), "ps_log")?;
        let mut out: Vec<LaurentPoly<T>> = vec![LaurentPoly::zero()];
        for n in 1..=self.order() {
            // n b_n = n a_n - sum_{k=1}^{n-1} k b_k a_{n-k}
            let mut acc = self.coeffs[n].scale(&T::from_i64(n as i64));
            for k in 1..n {
                if out[k].is_zero() || self.coeffs[n - k].is_zero() {
                    continue;
                }
                acc = acc - (&out[k] * &self.coeffs[n - k]).scale(&T::from_i64(k as i64));
            }
            out.push(acc.scale(&(T::one() / T::from_i64(n as i64))));
        }
        Ok(TSeries { coeffs: out })
    }

    /// Formal exponential of a series with constant term 0.
    pub fn ps_exp(&self) -> Result<Self> {
        self.require_constant(T::zero(), "ps_exp")?;
        let mut out: Vec<LaurentPoly<T>> = vec![LaurentPoly::one()];
        for n in 1..=self.order() {
            // n e_n = sum_{k=1}^{n} k a_k e_{n-k}
            let mut acc = LaurentPoly::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() || out[n - k].is_zero() {
                    continue;
                }
                acc = acc + (&self.coeffs[k] * &out[n - k]).scale(&T::from_i64(k as i64));
            }
            out.push(acc.scale(&(T::one() / T::from_i64(n as i64))));
        }
        Ok(TSeries { coeffs: out })
    }

    /// `a^r = exp(r log a)` for a series with constant term 1.
    pub fn ps_pow(&self, r: &T) -> Result<Self> {
        self.require_constant(T::one(), "ps_pow")?;
        if r.is_zero() {
            return Ok(Self::one(self.order()));
        }
        self.ps_log()?.scale(r).ps_exp()
    }

    /// `a^(-1/2)` by Newton iteration `y <- y + y (1 - a y^2) / 2`, kept as an
    /// independent route to [`TSeries::ps_pow`].
    pub fn ps_inv_sqrt_newton(&self) -> Result<Self> {
        self.require_constant(T::one(), "ps_inv_sqrt_newton")?;
        let order = self.order();
        let half = T::one() / T::from_i64(2);
        let one = Self::one(order);
        let mut y = one.clone();
        let mut precision = 1usize;
        while precision < order + 1 {
            let ay2 = self.ps_mul(&y.ps_mul(&y)?)?;
            let correction = y.ps_mul(&one.try_sub(&ay2)?)?.scale(&half);
            y = y.try_add(&correction)?;
            precision *= 2;
        }
        Ok(y)
    }
}

impl<T: Scalar> Add<&TSeries<T>> for &TSeries<T> {
    type Output = TSeries<T>;
    /// Panics on order mismatch; use [`TSeries::try_add`] to handle it.
    fn add(self, rhs: &TSeries<T>) -> TSeries<T> {
        self.try_add(rhs).expect("series order mismatch")
    }
}

impl<T: Scalar> Sub<&TSeries<T>> for &TSeries<T> {
    type Output = TSeries<T>;
    /// Panics on order mismatch; use [`TSeries::try_sub`] to handle it.
    fn sub(self, rhs: &TSeries<T>) -> TSeries<T> {
        self.try_sub(rhs).expect("series order mismatch")
    }
}

impl<T: Scalar> Neg for &TSeries<T> {
    type Output = TSeries<T>;
    fn neg(self) -> TSeries<T> {
        self.map_coeffs(|p| -p)
    }
}

impl TSeries<Rational> {
    /// `c0 + (c1)*t + ... + (cN)*t^N + O(t^(N+1))`, zero coefficients omitted.
    pub fn canonical(&self) -> String {
        let mut parts = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = if c.len() == 1 { c.canonical() } else { format!("({})", c.canonical()) };
            parts.push(match n {
                0 => body,
                1 => format!("{body}*t"),
                _ => format!("{body}*t^{n}"),
            });
        }
        parts.push(format!("O(t^{})", self.order() + 1));
        parts.join(" + ")
    }
}

impl fmt::Display for TSeries<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}
