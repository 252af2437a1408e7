//! The differential operators `Xi = d/dz + sqrt(w) d/dw` and
//! `Delta = (1/w) d/dz + (1/z) d/dw`, with their one-variable pieces.
//!
//! Under `s^2 = w`, `sqrt(w) d/dw = (1/2) d/ds`, so every operator here is an
//! exact endomorphism of the Laurent ring.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::scalar::Scalar;
use crate::series::TSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorId {
    /// `d/dz + sqrt(w) d/dw`
    Xi,
    /// `d/dz`
    XiZ,
    /// `sqrt(w) d/dw`
    XiW,
    /// `(1/w) d/dz + (1/z) d/dw`
    Delta,
    /// `(1/w) d/dz`
    DeltaZ,
    /// `(1/z) d/dw`
    DeltaW,
}

impl OperatorId {
    pub const ALL: [OperatorId; 6] =
        [OperatorId::Xi, OperatorId::XiZ, OperatorId::XiW, OperatorId::Delta, OperatorId::DeltaZ, OperatorId::DeltaW];

    pub fn name(&self) -> &'static str {
        match self {
            OperatorId::Xi => "xi",
            OperatorId::XiZ => "xi-z",
            OperatorId::XiW => "xi-w",
            OperatorId::Delta => "delta",
            OperatorId::DeltaZ => "delta-z",
            OperatorId::DeltaW => "delta-w",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|op| op.name() == text).ok_or_else(|| Error::Unknown(text.to_string()))
    }
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn half_d_ds<T: Scalar>(p: &LaurentPoly<T>) -> LaurentPoly<T> {
    p.d_ds().scale(&(T::one() / T::from_i64(2)))
}

pub fn apply<T: Scalar>(op: OperatorId, p: &LaurentPoly<T>) -> LaurentPoly<T> {
    match op {
        OperatorId::Xi => &p.d_dz() + &half_d_ds(p),
        OperatorId::XiZ => p.d_dz(),
        OperatorId::XiW => half_d_ds(p),
        OperatorId::Delta => &p.d_dz().shift(0, -2) + &p.d_dw().shift(-1, 0),
        OperatorId::DeltaZ => p.d_dz().shift(0, -2),
        OperatorId::DeltaW => p.d_dw().shift(-1, 0),
    }
}

/// Coefficientwise; `t` is inert.
pub fn apply_series<T: Scalar>(op: OperatorId, a: &TSeries<T>) -> TSeries<T> {
    a.map_coeffs(|c| apply(op, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{bateman_gf, bateman_n, legendre_gf, u_var, BatemanHalfPower, JacobiParams};
    use crate::poly::Monomial;
    use crate::scalar::{int, rat, Rational};
    use proptest::prelude::*;

    type P = LaurentPoly<Rational>;

    #[test]
    fn xi_of_w_is_s() {
        assert_eq!(apply(OperatorId::Xi, &P::w()), P::s());
    }

    #[test]
    fn xi_on_powers_of_u() {
        let u = u_var::<Rational>();
        for k in 1..8u32 {
            let want = u.pow(k - 1).scale(&rat(k as i64, 4));
            assert_eq!(apply(OperatorId::Xi, &u.pow(k)), want);
        }
    }

    #[test]
    fn delta_example() {
        let p = P::monomial(int(1), 2, 2);
        assert_eq!(apply(OperatorId::Delta, &p), P::monomial(int(3), 1, 0));
    }

    #[test]
    fn parts_sum_to_whole() {
        let p: P = "3*z^2*s^3 + -1/2*z^-1*s + 7*s^-2 + 1".parse().unwrap();
        assert_eq!(apply(OperatorId::Xi, &p), &apply(OperatorId::XiZ, &p) + &apply(OperatorId::XiW, &p));
        assert_eq!(
            apply(OperatorId::Delta, &p),
            &apply(OperatorId::DeltaZ, &p) + &apply(OperatorId::DeltaW, &p)
        );
    }

    #[test]
    fn operator_names_round_trip() {
        for op in OperatorId::ALL {
            assert_eq!(OperatorId::parse(op.name()).unwrap(), op);
        }
        assert!(OperatorId::parse("nabla").is_err());
    }

    #[test]
    fn series_application() {
        let one = TSeries::<Rational>::one(5);
        assert!(apply_series(OperatorId::Xi, &one).is_zero());
        let pr = JacobiParams::new(rat(1, 3), rat(2, 5));
        let gf = bateman_gf(&pr, BatemanHalfPower::B, 6).unwrap();
        let applied = apply_series(OperatorId::Xi, &gf);
        let direct = apply(OperatorId::Xi, &bateman_n(&pr, BatemanHalfPower::B, 1, 6).unwrap());
        assert_eq!(applied.coeff(1).unwrap(), &direct);
        let lg = apply_series(OperatorId::Delta, &legendre_gf::<Rational>(6).unwrap());
        assert_eq!(lg.order(), 6);
        assert!(lg.coeffs().iter().any(|c| c.min_ez().is_some_and(|e| e < 0)));
    }

    #[test]
    fn specialization_coherence() {
        let p: P = "3*z^2*s^3 + -1/2*z*s + 7*s^2 + 1 + 2*z^-2".parse().unwrap();
        assert_eq!(apply(OperatorId::XiZ, &p).subst_w1(), p.subst_w1().d_dz());
        let zfree: P = "3*s^3 + -1/2*s + 7*s^-2".parse().unwrap();
        assert_eq!(apply(OperatorId::XiW, &zfree), zfree.d_ds().scale(&rat(1, 2)));
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec(((-3i32..4), (-3i32..4), (-9i64..10), (1i64..5)), 0..12).prop_map(|ts| {
            P::from_terms(ts.into_iter().map(|(a, b, p, q)| (Monomial::new(a, b), rat(p, q))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn linearity(p in arb_poly(), q in arb_poly(), a in -5i64..6, b in 1i64..6) {
            let (ca, cb) = (int(a), rat(1, b));
            for op in OperatorId::ALL {
                let lhs = apply(op, &(&p.scale(&ca) + &q.scale(&cb)));
                let rhs = &apply(op, &p).scale(&ca) + &apply(op, &q).scale(&cb);
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn leibniz(p in arb_poly(), q in arb_poly()) {
            let pq = &p * &q;
            for op in [OperatorId::Xi, OperatorId::XiZ, OperatorId::XiW] {
                prop_assert_eq!(apply(op, &pq), &(&apply(op, &p) * &q) + &(&p * &apply(op, &q)));
            }
            // z w Delta(pq) = z d/dz(pq) + w d/dw(pq), each part a derivation
            let zw_delta = apply(OperatorId::Delta, &pq).shift(1, 2);
            let z_part = |f: &P| f.d_dz().shift(1, 0);
            let w_part = |f: &P| f.d_dw().shift(0, 2);
            let expanded = &(&(&z_part(&p) * &q) + &(&p * &z_part(&q))) + &(&(&w_part(&p) * &q) + &(&p * &w_part(&q)));
            prop_assert_eq!(zw_delta, expanded);
        }
    }
}
