//! Terminating hypergeometric sums and the truncated Appell `F4` series.

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::scalar::{poch, Scalar};
use crate::series::TSeries;

/// Coefficients `prod (a_i)_k / (prod (b_j)_k k!)` for `k = 0..=m`, where `m`
/// is the first index at which an upper parameter kills the sum.
pub fn hypergeom_coefficients<T: Scalar>(upper: &[T], lower: &[T], n_terms: usize) -> Result<Vec<T>> {
    let last = upper
        .iter()
        .filter_map(Scalar::nonpositive_integer)
        .filter(|&m| (m as usize) < n_terms)
        .min()
        .ok_or(Error::Nonterminating { n_terms })? as usize;

    let mut coeffs = Vec::with_capacity(last + 1);
    let mut term = T::one();
    coeffs.push(term.clone());
    for k in 0..last {
        let kk = T::from_i64(k as i64);
        let mut num = T::one();
        for a in upper {
            num = num * (a.clone() + kk.clone());
        }
        let mut den = T::from_i64(k as i64 + 1);
        for b in lower {
            den = den * (b.clone() + kk.clone());
        }
        if den.is_zero() {
            return Err(Error::ParameterPole(format!("lower Pochhammer vanishes at index {}", k + 1)));
        }
        term = term * num / den;
        coeffs.push(term.clone());
    }
    Ok(coeffs)
}

/// `pFq(upper; lower; arg)` summed exactly; the series must terminate within
/// `n_terms` terms.
pub fn hypergeom_terminating<T: Scalar>(
    upper: &[T],
    lower: &[T],
    arg: &LaurentPoly<T>,
    n_terms: usize,
) -> Result<LaurentPoly<T>> {
    let coeffs = hypergeom_coefficients(upper, lower, n_terms)?;
    // Horner in `arg`
    let mut acc = LaurentPoly::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * arg) + &LaurentPoly::constant(c.clone());
    }
    Ok(acc)
}

/// Appell `F4(a, b; c, c'; t x, t y)` truncated at order `order`, collected by
/// total power of `t`:
///
/// `[t^n] = sum_{m=0}^{n} (a)_n (b)_n / ((c)_m (c')_(n-m) m! (n-m)!) x^m y^(n-m)`.
pub fn appell_f4<T: Scalar>(
    a: &T,
    b: &T,
    c: &T,
    c_prime: &T,
    x: &LaurentPoly<T>,
    y: &LaurentPoly<T>,
    order: usize,
) -> Result<TSeries<T>> {
    let xs: Vec<_> = (0..=order as u32).map(|k| x.pow(k)).collect();
    let ys: Vec<_> = (0..=order as u32).map(|k| y.pow(k)).collect();
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let top = poch(a, n) * poch(b, n);
        let mut acc = LaurentPoly::zero();
        for m in 0..=n {
            let den = poch(c, m) * poch(c_prime, n - m) * crate::scalar::factorial::<T>(m) * crate::scalar::factorial::<T>(n - m);
            if den.is_zero() {
                return Err(Error::ParameterPole(format!("F4 lower parameter vanishes at ({m}, {})", n - m)));
            }
            acc = acc + (&xs[m] * &ys[n - m]).scale(&(top.clone() / den));
        }
        coeffs.push(acc);
    }
    Ok(TSeries::new(coeffs, order))
}
