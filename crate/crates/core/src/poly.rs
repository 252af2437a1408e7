//! The Laurent ring `Q[z, 1/z, s, 1/s]` with `s^2 = w`.
//!
//! `s` stands for the square root of `w`. Treating it as an ordinary ring
//! variable makes `sqrt(w) d/dw` a polynomial operator (`d/dw = (1/(2s)) d/ds`)
//! and turns every identity into an exact statement about term maps.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::{ComplexDd, DoubleDouble};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

/// `z^ez * s^es`.
///
/// Ordered graded-lexicographically on `(ez + es, ez)`, descending: the
/// "largest" monomial compares as `Less`, so ascending map iteration yields
/// the canonical print and summation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub ez: i32,
    pub es: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { ez: 0, es: 0 };

    pub fn new(ez: i32, es: i32) -> Self {
        Monomial { ez, es }
    }

    pub fn total(&self) -> i64 {
        self.ez as i64 + self.es as i64
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.ez + other.ez, self.es + other.es)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (other.total(), other.ez).cmp(&(self.total(), self.ez))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite Laurent polynomial in `z` and `s`. No stored coefficient is zero, so
/// structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<T: Scalar> {
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> Default for LaurentPoly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> LaurentPoly<T> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: T, ez: i32, es: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(ez, es), c);
        p
    }

    pub fn z() -> Self {
        Self::monomial(T::one(), 1, 0)
    }

    pub fn s() -> Self {
        Self::monomial(T::one(), 0, 1)
    }

    /// `w = s^2`.
    pub fn w() -> Self {
        Self::monomial(T::one(), 0, 2)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, T)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, ez: i32, es: i32) -> T {
        self.terms.get(&Monomial::new(ez, es)).cloned().unwrap_or_else(T::zero)
    }

    /// The coefficient when `self` is a constant, else `None`.
    pub fn as_constant(&self) -> Option<T> {
        match self.terms.len() {
            0 => Some(T::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(m, v)| (*m, v.clone() * c.clone())))
    }

    /// Multiply by `z^ez s^es`; this is how division by `z` or `w` is done.
    pub fn shift(&self, ez: i32, es: i32) -> Self {
        let by = Monomial::new(ez, es);
        LaurentPoly {
            terms: self.terms.iter().map(|(m, v)| (m.times(&by), v.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn map_terms<F>(&self, f: F) -> Self
    where
        F: Fn(&Monomial, &T) -> Option<(Monomial, T)>,
    {
        Self::from_terms(self.terms.iter().filter_map(|(m, c)| f(m, c)))
    }

    pub fn d_dz(&self) -> Self {
        self.map_terms(|m, c| {
            (m.ez != 0).then(|| (Monomial::new(m.ez - 1, m.es), c.clone() * T::from_i64(m.ez as i64)))
        })
    }

    pub fn d_ds(&self) -> Self {
        self.map_terms(|m, c| {
            (m.es != 0).then(|| (Monomial::new(m.ez, m.es - 1), c.clone() * T::from_i64(m.es as i64)))
        })
    }

    /// `d/dw = (1/(2s)) d/ds`.
    pub fn d_dw(&self) -> Self {
        let half = T::one() / T::from_i64(2);
        self.map_terms(|m, c| {
            (m.es != 0).then(|| {
                (Monomial::new(m.ez, m.es - 2), c.clone() * T::from_i64(m.es as i64) * half.clone())
            })
        })
    }

    /// Set `w = 1` on the principal branch, i.e. `s = 1`.
    pub fn subst_w1(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (Monomial::new(m.ez, 0), c.clone())))
    }

    /// Set `z = 1`.
    pub fn subst_z1(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (Monomial::new(0, m.es), c.clone())))
    }

    /// Terms free of `z`.
    pub fn z_degree_zero_part(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().filter(|(m, _)| m.ez == 0).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    pub fn min_ez(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.ez).min()
    }

    pub fn min_es(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.es).min()
    }

    /// Exact evaluation at `z = z0`, `s = s0`.
    pub fn eval_at(&self, z0: &T, s0: &T) -> Result<T> {
        if z0.is_zero() && self.min_ez().is_some_and(|e| e < 0) {
            return Err(Error::Domain("z = 0 with a negative power of z".into()));
        }
        if s0.is_zero() && self.min_es().is_some_and(|e| e < 0) {
            return Err(Error::Domain("w = 0 with a negative power of s".into()));
        }
        let ipow = |base: &T, e: i32| {
            let mut acc = T::one();
            for _ in 0..e.unsigned_abs() {
                acc = acc * base.clone();
            }
            if e < 0 {
                T::one() / acc
            } else {
                acc
            }
        };
        let mut total = T::zero();
        for (m, c) in &self.terms {
            total = total + c.clone() * ipow(z0, m.ez) * ipow(s0, m.es);
        }
        Ok(total)
    }

    /// Floating-point evaluation with `s0` the principal square root of `w0`.
    /// Powers and the sum are carried in double-double, so cancellation near a
    /// root costs about 53 bits less than it would in plain `f64`.
    pub fn eval_complex(&self, z0: Complex64, w0: Complex64) -> Result<Complex64> {
        if z0 == Complex64::new(0.0, 0.0) && self.min_ez().is_some_and(|e| e < 0) {
            return Err(Error::Domain("z = 0 with a negative power of z".into()));
        }
        if w0 == Complex64::new(0.0, 0.0) && self.min_es().is_some_and(|e| e < 0) {
            return Err(Error::Domain("w = 0 with a negative power of s".into()));
        }
        let z = ComplexDd::from(z0);
        let s = ComplexDd::sqrt_of(w0);
        let mut total = ComplexDd::default();
        for (m, c) in &self.terms {
            let (hi, lo) = c.to_f64_pair();
            let c = ComplexDd::new(DoubleDouble::new(hi, lo), 0.0.into());
            total = total + c * z.powi(m.ez) * s.powi(m.es);
        }
        Ok(total.to_complex())
    }
}

impl<T: Scalar> Add<&LaurentPoly<T>> for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn add(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub<&LaurentPoly<T>> for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn sub(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<T: Scalar> Mul<&LaurentPoly<T>> for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn mul(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn neg(self) -> LaurentPoly<T> {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl<T: Scalar> Add<&LaurentPoly<T>> for LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn add(mut self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
        self
    }
}

impl<T: Scalar> Add<LaurentPoly<T>> for LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn add(mut self, rhs: LaurentPoly<T>) -> LaurentPoly<T> {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<T: Scalar> Sub<&LaurentPoly<T>> for LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn sub(mut self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
        self
    }
}

impl<T: Scalar> Sub<LaurentPoly<T>> for LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn sub(mut self, rhs: LaurentPoly<T>) -> LaurentPoly<T> {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<T: Scalar> Mul<&LaurentPoly<T>> for LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn mul(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        &self * rhs
    }
}

impl<T: Scalar> Mul<LaurentPoly<T>> for LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn mul(self, rhs: LaurentPoly<T>) -> LaurentPoly<T> {
        &self * &rhs
    }
}

impl<T: Scalar> Neg for LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn neg(self) -> LaurentPoly<T> {
        -&self
    }
}

fn push_power(out: &mut String, var: char, e: i32) {
    match e {
        0 => {}
        1 => {
            out.push('*');
            out.push(var);
        }
        _ => {
            out.push('*');
            out.push(var);
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

impl LaurentPoly<Rational> {
    fn render(&self, fold_w: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let mut term = format_rational(c);
            push_power(&mut term, 'z', m.ez);
            if fold_w {
                let half = m.es.div_euclid(2);
                if m.es.rem_euclid(2) == 1 {
                    push_power(&mut term, 's', 1);
                }
                push_power(&mut term, 'w', half);
            } else {
                push_power(&mut term, 's', m.es);
            }
            parts.push(term);
        }
        parts.join(" + ")
    }

    /// Canonical text form, e.g. `3/2*z^2 + -1/2*s^2`.
    pub fn canonical(&self) -> String {
        self.render(false)
    }

    /// Same ordering, with `s^(2m)` written as `w^m` and odd powers as `s*w^m`.
    pub fn canonical_fold_w(&self) -> String {
        self.render(true)
    }
}

impl fmt::Display for LaurentPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// Parses both the plain and the `w`-folded canonical forms.
impl FromStr for LaurentPoly<Rational> {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for term in text.split(" + ") {
            let mut factors = term.split('*');
            let coeff = parse_rational(factors.next().unwrap_or(""))?;
            let (mut ez, mut es) = (0i32, 0i32);
            for factor in factors {
                let (var, exp) = match factor.split_once('^') {
                    Some((v, e)) => {
                        (v, e.parse::<i32>().map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?)
                    }
                    None => (factor, 1),
                };
                match var {
                    "z" => ez += exp,
                    "s" => es += exp,
                    "w" => es += 2 * exp,
                    _ => return Err(Error::Parse(format!("unknown variable `{var}` in `{term}`"))),
                }
            }
            p.add_term(Monomial::new(ez, es), coeff);
        }
        Ok(p)
    }
}
