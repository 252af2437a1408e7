//! Constructors for the two-variable Jacobi, Bateman and Legendre families.
//!
//! Throughout, `u = (z - s)/2` and `v = (z + s)/2` with `s = sqrt(w)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::hypergeom::{appell_f4, hypergeom_coefficients, hypergeom_terminating};
use crate::poly::LaurentPoly;
use crate::scalar::{factorial, poch, Scalar};
use crate::series::TSeries;

/// Largest degree any constructor accepts.
pub const MAX_DEGREE: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiParams<T: Scalar> {
    pub alpha: T,
    pub beta: T,
}

impl<T: Scalar> JacobiParams<T> {
    pub fn new(alpha: T, beta: T) -> Self {
        JacobiParams { alpha, beta }
    }

    pub fn shifted(&self, da: i64, db: i64) -> Self {
        JacobiParams::new(self.alpha.clone() + T::from_i64(da), self.beta.clone() + T::from_i64(db))
    }

    pub fn one_plus_alpha(&self) -> T {
        T::one() + self.alpha.clone()
    }

    pub fn one_plus_beta(&self) -> T {
        T::one() + self.beta.clone()
    }

    /// `1 + alpha + k != 0` and `1 + beta + k != 0` for `0 <= k < n`.
    pub fn check_poles(&self, n: usize) -> Result<()> {
        for k in 0..n {
            let kk = T::from_i64(k as i64);
            if (self.one_plus_alpha() + kk.clone()).is_zero() {
                return Err(Error::ParameterPole(format!("1 + alpha + {k} = 0")));
            }
            if (self.one_plus_beta() + kk).is_zero() {
                return Err(Error::ParameterPole(format!("1 + beta + {k} = 0")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LegendreDenominator {
    /// `k! (n-k)!`, read literally.
    PaperLiteral,
    /// `k! (n-2k)!`, which reproduces the classical Legendre polynomials at `w = 1`.
    Corrected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BatemanHalfPower {
    /// `((z -+ s)/2)^n`
    A,
    /// `(1/2) (z -+ s)^n`
    B,
}

impl LegendreDenominator {
    pub const ALL: [LegendreDenominator; 2] = [LegendreDenominator::PaperLiteral, LegendreDenominator::Corrected];

    pub fn tag(&self) -> &'static str {
        match self {
            LegendreDenominator::PaperLiteral => "paper",
            LegendreDenominator::Corrected => "corrected",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "paper" | "paper-literal" => Ok(LegendreDenominator::PaperLiteral),
            "corrected" => Ok(LegendreDenominator::Corrected),
            _ => Err(Error::Unknown(text.to_string())),
        }
    }
}

impl BatemanHalfPower {
    pub const ALL: [BatemanHalfPower; 2] = [BatemanHalfPower::A, BatemanHalfPower::B];

    pub fn tag(&self) -> &'static str {
        match self {
            BatemanHalfPower::A => "A",
            BatemanHalfPower::B => "B",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "A" | "a" => Ok(BatemanHalfPower::A),
            "B" | "b" => Ok(BatemanHalfPower::B),
            _ => Err(Error::Unknown(text.to_string())),
        }
    }
}

/// Resolution of the two notational ambiguities. Each constructor reads only
/// the axis it depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Convention {
    pub legendre_denominator: LegendreDenominator,
    pub bateman_halfpower: BatemanHalfPower,
}

impl Default for Convention {
    fn default() -> Self {
        Convention { legendre_denominator: LegendreDenominator::Corrected, bateman_halfpower: BatemanHalfPower::B }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "legendre-{},bateman-{}", self.legendre_denominator.tag(), self.bateman_halfpower.tag())
    }
}

fn check_degree(n: usize) -> Result<()> {
    if n > MAX_DEGREE {
        Err(Error::DegreeTooLarge { n, max: MAX_DEGREE })
    } else {
        Ok(())
    }
}

fn half<T: Scalar>() -> T {
    T::one() / T::from_i64(2)
}

/// `(z - s)/2`
pub fn u_var<T: Scalar>() -> LaurentPoly<T> {
    (&LaurentPoly::z() - &LaurentPoly::s()).scale(&half())
}

/// `(z + s)/2`
pub fn v_var<T: Scalar>() -> LaurentPoly<T> {
    (&LaurentPoly::z() + &LaurentPoly::s()).scale(&half())
}

fn powers<T: Scalar>(base: &LaurentPoly<T>, n: usize) -> Vec<LaurentPoly<T>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(LaurentPoly::one());
    for k in 1..=n {
        out.push(&out[k - 1] * base);
    }
    out
}

/// One-variable Jacobi `(1+a)_n / n! 2F1(-n, 1+a+b+n; 1+a; (1-z)/2)`, in `z` only.
pub fn classical_jacobi<T: Scalar>(n: usize, p: &JacobiParams<T>) -> Result<LaurentPoly<T>> {
    check_degree(n)?;
    p.check_poles(n)?;
    let nn = T::from_i64(n as i64);
    let arg = (&LaurentPoly::one() - &LaurentPoly::z()).scale(&half());
    let upper = [-nn.clone(), p.one_plus_alpha() + p.beta.clone() + nn];
    let f = hypergeom_terminating(&upper, &[p.one_plus_alpha()], &arg, n + 1)?;
    Ok(f.scale(&(poch(&p.one_plus_alpha(), n) / factorial::<T>(n))))
}

/// Single sum in powers of `u`:
/// `sum_k (1+a)_n (1+a+b)_(n+k) / (k! (n-k)! (1+a)_k (1+a+b)_n) u^k`.
///
/// The ratio `(1+a+b)_(n+k) / (1+a+b)_n` is taken as `(1+a+b+n)_k`, so
/// `1 + a + b + j = 0` is not a pole.
pub fn jacobi_sum<T: Scalar>(n: usize, p: &JacobiParams<T>) -> Result<LaurentPoly<T>> {
    check_degree(n)?;
    p.check_poles(n)?;
    let a1 = p.one_plus_alpha();
    let ab_n = a1.clone() + p.beta.clone() + T::from_i64(n as i64);
    let u = u_var();
    // c_0 = (1+a)_n / n!, c_(k+1) / c_k = (1+a+b+n+k)(n-k) / ((k+1)(1+a+k))
    let mut c = poch(&a1, n) / factorial::<T>(n);
    let mut uk = LaurentPoly::one();
    let mut acc = LaurentPoly::constant(c.clone());
    for k in 0..n {
        let kk = T::from_i64(k as i64);
        c = c * (ab_n.clone() + kk.clone()) * T::from_i64((n - k) as i64)
            / (T::from_i64(k as i64 + 1) * (a1.clone() + kk));
        uk = &uk * &u;
        acc = acc + uk.scale(&c);
    }
    Ok(acc)
}

/// Double-product form
/// `sum_k (1+a)_n (1+b)_n / (k! (n-k)! (1+a)_k (1+b)_(n-k)) u^k v^(n-k)`.
pub fn jacobi_uv<T: Scalar>(n: usize, p: &JacobiParams<T>) -> Result<LaurentPoly<T>> {
    check_degree(n)?;
    p.check_poles(n)?;
    let a1 = p.one_plus_alpha();
    let us = powers(&u_var(), n);
    let vs = powers(&v_var(), n);
    // c_0 = (1+a)_n / n!, c_(k+1) / c_k = (n-k)(b+n-k) / ((k+1)(1+a+k))
    let mut c = poch(&a1, n) / factorial::<T>(n);
    let mut acc = vs[n].scale(&c);
    for k in 0..n {
        let kk = T::from_i64(k as i64);
        c = c * T::from_i64((n - k) as i64) * (p.beta.clone() + T::from_i64((n - k) as i64))
            / (T::from_i64(k as i64 + 1) * (a1.clone() + kk));
        acc = acc + (&us[k + 1] * &vs[n - k - 1]).scale(&c);
    }
    Ok(acc)
}

/// `(1+a)_n / n! 2F1(-n, 1+a+b+n; 1+a; (s - z)/2)`.
pub fn jacobi_2f1_u<T: Scalar>(n: usize, p: &JacobiParams<T>) -> Result<LaurentPoly<T>> {
    check_degree(n)?;
    p.check_poles(n)?;
    let nn = T::from_i64(n as i64);
    let arg = -u_var::<T>();
    let upper = [-nn.clone(), p.one_plus_alpha() + p.beta.clone() + nn];
    let f = hypergeom_terminating(&upper, &[p.one_plus_alpha()], &arg, n + 1)?;
    Ok(f.scale(&(poch(&p.one_plus_alpha(), n) / factorial::<T>(n))))
}

/// `(1+a)_n / n! v^n 2F1(-n, -b-n; 1+a; u/v)`, with the ratio cleared so that
/// term `k` reads `u^k v^(n-k)`.
pub fn jacobi_2f1_v<T: Scalar>(n: usize, p: &JacobiParams<T>) -> Result<LaurentPoly<T>> {
    check_degree(n)?;
    p.check_poles(n)?;
    let nn = T::from_i64(n as i64);
    let upper = [-nn.clone(), -p.beta.clone() - nn];
    let coeffs = hypergeom_coefficients(&upper, &[p.one_plus_alpha()], n + 1)?;
    let us = powers(&u_var(), n);
    let vs = powers(&v_var(), n);
    let mut acc = LaurentPoly::zero();
    for (k, c) in coeffs.iter().enumerate() {
        acc = acc + (&us[k] * &vs[n - k]).scale(c);
    }
    Ok(acc.scale(&(poch(&p.one_plus_alpha(), n) / factorial::<T>(n))))
}

/// `sum_k (n+k)! / ((k!)^2 (n-k)!) u^k`.
pub fn legendre_sum<T: Scalar>(n: usize) -> Result<LaurentPoly<T>> {
    check_degree(n)?;
    let us = powers(&u_var(), n);
    let mut acc = LaurentPoly::zero();
    for (k, uk) in us.iter().enumerate() {
        let fk = factorial::<T>(k);
        let c = factorial::<T>(n + k) / (fk.clone() * fk * factorial::<T>(n - k));
        acc = acc + uk.scale(&c);
    }
    Ok(acc)
}

/// `sum_{k <= n/2} (-w)^k (1/2)_(n-k) (2z)^(n-2k) / denominator`.
pub fn legendre_ka<T: Scalar>(n: usize, denom: LegendreDenominator) -> Result<LaurentPoly<T>> {
    check_degree(n)?;
    let halfv = half::<T>();
    let mut acc = LaurentPoly::zero();
    for k in 0..=n / 2 {
        let d = factorial::<T>(k)
            * match denom {
                LegendreDenominator::PaperLiteral => factorial::<T>(n - k),
                LegendreDenominator::Corrected => factorial::<T>(n - 2 * k),
            };
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        let two_pow = (0..n - 2 * k).fold(T::one(), |a, _| a * T::from_i64(2));
        let c = sign * poch(&halfv, n - k) * two_pow / d;
        acc = acc + LaurentPoly::monomial(c, (n - 2 * k) as i32, 2 * k as i32);
    }
    Ok(acc)
}

/// `sum_n base_n t^n / (n! (lower)_n)` with `base_n = ((z + sign s)/2)^n` (A)
/// or `(1/2)(z + sign s)^n` (B).
fn bateman_factor<T: Scalar>(lower: &T, sign: i64, half_power: BatemanHalfPower, order: usize) -> Result<TSeries<T>> {
    let diff = &LaurentPoly::z() + &LaurentPoly::s().scale(&T::from_i64(sign));
    let base = match half_power {
        BatemanHalfPower::A => diff.scale(&half()),
        BatemanHalfPower::B => diff,
    };
    let pw = powers(&base, order);
    let mut coeffs = Vec::with_capacity(order + 1);
    for (n, b) in pw.into_iter().enumerate() {
        let den = factorial::<T>(n) * poch(lower, n);
        if den.is_zero() {
            return Err(Error::ParameterPole(format!("lower Pochhammer vanishes at index {n}")));
        }
        let mut c = T::one() / den;
        if half_power == BatemanHalfPower::B {
            c = c * half();
        }
        coeffs.push(b.scale(&c));
    }
    Ok(TSeries::new(coeffs, order))
}

/// Cauchy product of the two Bateman brackets, truncated at `order`.
pub fn bateman_gf<T: Scalar>(p: &JacobiParams<T>, half_power: BatemanHalfPower, order: usize) -> Result<TSeries<T>> {
    check_degree(order)?;
    p.check_poles(order)?;
    let left = bateman_factor(&p.one_plus_alpha(), -1, half_power, order)?;
    let right = bateman_factor(&p.one_plus_beta(), 1, half_power, order)?;
    left.ps_mul(&right)
}

/// `[t^n]` of [`bateman_gf`].
pub fn bateman_n<T: Scalar>(
    p: &JacobiParams<T>,
    half_power: BatemanHalfPower,
    n: usize,
    order: usize,
) -> Result<LaurentPoly<T>> {
    if n > order {
        return Err(Error::IndexOutOfRange { index: n as i64, order });
    }
    Ok(bateman_gf(p, half_power, order)?.coeff(n as i64)?.clone())
}

/// `1 - 2 z t + w t^2`
pub fn legendre_gf_base<T: Scalar>(order: usize) -> TSeries<T> {
    TSeries::new(
        vec![LaurentPoly::one(), LaurentPoly::z().scale(&T::from_i64(-2)), LaurentPoly::w()],
        order,
    )
}

/// `(1 - 2 z t + w t^2)^(-1/2)`
pub fn legendre_gf<T: Scalar>(order: usize) -> Result<TSeries<T>> {
    legendre_gf_base(order).ps_pow(&-half::<T>())
}

/// `(1 - 2 z t + w t^2)^(+1/2)`, the opposite exponent.
pub fn legendre_gf_plus<T: Scalar>(order: usize) -> Result<TSeries<T>> {
    legendre_gf_base(order).ps_pow(&half::<T>())
}

/// `2^(a+b) mu^-1 (1 + s t + mu)^-b (1 - s t + mu)^-a`, `mu = (1 - 2zt + wt^2)^(1/2)`,
/// assembled from the unit-normalized factors `((1 +- s t + mu)/2)`.
pub fn jacobi_gf_closed<T: Scalar>(p: &JacobiParams<T>, order: usize) -> Result<TSeries<T>> {
    let mu = legendre_gf_plus::<T>(order)?;
    let st = TSeries::new(vec![LaurentPoly::zero(), LaurentPoly::s()], order);
    let one = TSeries::one(order);
    let plus = (&(&one + &st) + &mu).scale(&half());
    let minus = (&(&one - &st) + &mu).scale(&half());
    let mu_inv = mu.ps_inv()?;
    let fb = plus.ps_pow(&-p.beta.clone())?;
    let fa = minus.ps_pow(&-p.alpha.clone())?;
    mu_inv.ps_mul(&fb)?.ps_mul(&fa)
}

/// `F4(1+b, 1+a; 1+a, 1+b; t u, t v)` collected by powers of `t`.
pub fn jacobi_gf_f4<T: Scalar>(p: &JacobiParams<T>, order: usize) -> Result<TSeries<T>> {
    check_degree(order)?;
    p.check_poles(order)?;
    let (a1, b1) = (p.one_plus_alpha(), p.one_plus_beta());
    appell_f4(&b1, &a1, &a1, &b1, &u_var(), &v_var(), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    type P = LaurentPoly<Rational>;
    type Params = JacobiParams<Rational>;

    fn p(text: &str) -> P {
        text.parse().unwrap()
    }

    fn params(a: (i64, i64), b: (i64, i64)) -> Params {
        Params::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn jacobi_low_degrees() {
        let pr = params((1, 2), (1, 3));
        assert_eq!(jacobi_sum(0, &pr).unwrap(), P::one());
        // (1+a) + (2+a+b) u
        let want = &P::constant(rat(3, 2)) + &u_var().scale(&(int(2) + rat(1, 2) + rat(1, 3)));
        assert_eq!(jacobi_sum(1, &pr).unwrap(), want);
        // (1+b) u + (1+a) v
        let want = &u_var().scale(&rat(4, 3)) + &v_var().scale(&rat(3, 2));
        assert_eq!(jacobi_uv(1, &pr).unwrap(), want);
        assert_eq!(jacobi_2f1_u(0, &pr).unwrap(), P::one());
        assert_eq!(jacobi_2f1_v(0, &pr).unwrap(), P::one());
    }

    #[test]
    fn sum_and_uv_forms_diverge_off_w1() {
        let zero = params((0, 1), (0, 1));
        assert_eq!(jacobi_uv(1, &zero).unwrap(), P::z());
        assert_eq!(jacobi_sum(1, &zero).unwrap(), p("1*z + -1*s + 1"));
        assert_eq!(jacobi_sum(1, &zero).unwrap().subst_w1(), jacobi_uv(1, &zero).unwrap().subst_w1());
    }

    #[test]
    fn pole_condition() {
        let bad = params((-3, 1), (1, 2));
        assert!(jacobi_sum(2, &bad).is_ok());
        assert!(matches!(jacobi_sum(3, &bad), Err(Error::ParameterPole(_))));
        assert!(matches!(jacobi_uv(3, &bad), Err(Error::ParameterPole(_))));
        // removable: 1 + a + b = 0
        assert!(jacobi_sum(4, &params((-1, 2), (-1, 2))).is_ok());
        assert!(matches!(jacobi_sum(65, &params((0, 1), (0, 1))), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn legendre_sum_low_degrees() {
        assert_eq!(legendre_sum::<Rational>(1).unwrap(), p("1*z + -1*s + 1"));
        let u = u_var::<Rational>();
        let want = &(&P::one() + &u.scale(&int(6))) + &u.pow(2).scale(&int(6));
        // 1 + 3(z-s) + (3/2)(z-s)^2
        assert_eq!(legendre_sum::<Rational>(2).unwrap(), want);
    }

    #[test]
    fn legendre_ka_conventions() {
        for d in LegendreDenominator::ALL {
            assert_eq!(legendre_ka::<Rational>(2, d).unwrap(), p("3/2*z^2 + -1/2*s^2"));
            assert_eq!(legendre_ka::<Rational>(1, d).unwrap(), P::z());
            assert_eq!(legendre_ka::<Rational>(0, d).unwrap(), P::one());
        }
        let c3 = legendre_ka::<Rational>(3, LegendreDenominator::Corrected).unwrap().subst_w1();
        assert_eq!(c3, p("5/2*z^3 + -3/2*z"));
        let l3 = legendre_ka::<Rational>(3, LegendreDenominator::PaperLiteral).unwrap().subst_w1();
        assert_eq!(l3, p("5/2*z^3 + -3/4*z"));
    }

    #[test]
    fn bateman_low_orders() {
        let pr = params((2, 5), (-1, 3));
        let (a1, b1) = (pr.one_plus_alpha(), pr.one_plus_beta());
        assert_eq!(bateman_n(&pr, BatemanHalfPower::A, 0, 4).unwrap(), P::one());
        let zm = p("1*z + -1*s");
        let zp = p("1*z + 1*s");
        let a_one = &zm.scale(&(int(1) / (int(2) * a1.clone()))) + &zp.scale(&(int(1) / (int(2) * b1.clone())));
        assert_eq!(bateman_n(&pr, BatemanHalfPower::A, 1, 4).unwrap(), a_one);
        // every bracket term carries the factor 1/2, including the constant
        assert_eq!(bateman_n(&pr, BatemanHalfPower::B, 0, 4).unwrap(), P::constant(rat(1, 4)));
        assert_eq!(bateman_n(&pr, BatemanHalfPower::B, 1, 4).unwrap(), a_one.scale(&rat(1, 2)));
        assert!(matches!(bateman_n(&pr, BatemanHalfPower::A, 5, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn bateman_n_independent_of_order() {
        let pr = params((1, 3), (2, 7));
        for half_power in BatemanHalfPower::ALL {
            for n in 0..=6 {
                assert_eq!(
                    bateman_n(&pr, half_power, n, 6).unwrap(),
                    bateman_n(&pr, half_power, n, 10).unwrap()
                );
            }
        }
    }

    #[test]
    fn generating_functions_low_order() {
        let pr = params((1, 2), (3, 4));
        let closed = jacobi_gf_closed(&pr, 3).unwrap();
        assert_eq!(closed.coeff(0).unwrap(), &P::one());
        let f4 = jacobi_gf_f4(&pr, 3).unwrap();
        assert_eq!(f4.coeff(0).unwrap(), &P::one());
        assert_eq!(f4.coeff(1).unwrap(), &jacobi_uv(1, &pr).unwrap());
        let zero = params((0, 1), (0, 1));
        assert_eq!(jacobi_gf_closed(&zero, 6).unwrap(), legendre_gf::<Rational>(6).unwrap());
        assert_eq!(legendre_gf::<Rational>(4).unwrap().coeff(1).unwrap(), &P::z());
    }

    #[test]
    fn float_instantiation_tracks_exact() {
        let exact = jacobi_uv(4, &params((1, 2), (1, 4))).unwrap();
        let float = jacobi_uv(4, &JacobiParams::new(0.5f64, 0.25)).unwrap();
        let (z0, s0) = (0.3f64, 0.7f64);
        let e = exact.eval_at(&rat(3, 10), &rat(7, 10)).unwrap();
        let f = float.eval_at(&z0, &s0).unwrap();
        assert!((Scalar::to_f64(&e) - f).abs() < 1e-12);
    }
}
