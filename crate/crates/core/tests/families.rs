use num_traits::Zero;

use mixrec::claims::certify::sample_params;
use mixrec::families::{
    bateman_gf, bateman_n, jacobi_2f1_u, jacobi_2f1_v, jacobi_gf_closed, jacobi_sum, jacobi_uv, legendre_gf,
    legendre_gf_plus, legendre_ka, legendre_sum,
};
use mixrec::operators::{apply, OperatorId};
use mixrec::scalar::int;
use mixrec::{BatemanHalfPower, LegendreDenominator, Params, Poly, Rational, Series};

fn origin() -> Params {
    Params::new(int(0), int(0))
}

#[test]
fn hypergeometric_forms_agree_with_their_sums() {
    for p in sample_params(3, 6) {
        for n in 0..=7 {
            assert_eq!(jacobi_2f1_u(n, &p).unwrap(), jacobi_sum(n, &p).unwrap(), "2F1 in u, n={n}");
            assert_eq!(jacobi_2f1_v(n, &p).unwrap(), jacobi_uv(n, &p).unwrap(), "2F1 in v, n={n}");
        }
    }
}

#[test]
fn legendre_sum_is_the_origin_jacobi() {
    for n in 0..=8 {
        assert_eq!(legendre_sum::<Rational>(n).unwrap(), jacobi_sum(n, &origin()).unwrap());
    }
}

#[test]
fn legendre_denominators_split_at_three() {
    for n in 0..=2 {
        assert_eq!(
            legendre_ka::<Rational>(n, LegendreDenominator::PaperLiteral).unwrap(),
            legendre_ka::<Rational>(n, LegendreDenominator::Corrected).unwrap()
        );
    }
    assert_ne!(
        legendre_ka::<Rational>(3, LegendreDenominator::PaperLiteral).unwrap(),
        legendre_ka::<Rational>(3, LegendreDenominator::Corrected).unwrap()
    );
}

#[test]
fn the_two_printed_exponents_are_reciprocal() {
    let minus = legendre_gf::<Rational>(8).unwrap();
    let plus = legendre_gf_plus::<Rational>(8).unwrap();
    assert_eq!(minus.ps_mul(&plus).unwrap(), Series::one(8));
    assert_ne!(minus, plus);
}

#[test]
fn closed_jacobi_generating_function_matches_uv() {
    for p in sample_params(9, 3) {
        let gf = jacobi_gf_closed(&p, 5).unwrap();
        for n in 0..=5 {
            assert_eq!(*gf.coeff(n as i64).unwrap(), jacobi_uv(n, &p).unwrap(), "n={n}");
        }
    }
}

#[test]
fn bateman_conventions() {
    let p = Params::new(Rational::new(1, 3), Rational::new(-2, 7));
    let a = bateman_gf(&p, BatemanHalfPower::A, 6).unwrap();
    let b = bateman_gf(&p, BatemanHalfPower::B, 6).unwrap();
    // the literal half on each factor rescales B_n by 2^n / 4
    for n in 0..=6i64 {
        let factor = Rational::new(1 << n, 4);
        assert_eq!(*b.coeff(n).unwrap(), a.coeff(n).unwrap().scale(&factor), "n={n}");
    }
    assert_eq!(bateman_n(&p, BatemanHalfPower::A, 3, 6).unwrap(), *a.coeff(3).unwrap());
    assert_eq!(bateman_n(&origin(), BatemanHalfPower::A, 1, 1).unwrap(), Poly::z());
}

#[test]
fn xi_lowers_the_degree_of_jacobi_polynomials() {
    for p in sample_params(13, 3) {
        for n in 1..=6 {
            let image = apply(OperatorId::Xi, &jacobi_sum(n, &p).unwrap());
            let max = image.terms().map(|(m, _)| m.total()).max().unwrap();
            assert_eq!(max, n as i64 - 1);
        }
    }
}

#[test]
fn subst_w1_of_the_theorem_is_the_corollary_operand() {
    let p = Params::new(Rational::new(3, 4), Rational::new(1, 2));
    for n in 0..=6 {
        let poly = jacobi_sum(n, &p).unwrap();
        let at_one = poly.subst_w1();
        assert!(at_one.terms().all(|(m, _)| m.es == 0));
        assert!((&at_one - &jacobi_uv(n, &p).unwrap().subst_w1()).is_zero());
    }
}

#[test]
fn degree_limit_and_poles_are_errors() {
    assert!(jacobi_sum(65, &origin()).is_err());
    assert!(jacobi_uv(3, &Params::new(int(-2), int(0))).is_err());
    assert!(jacobi_uv(1, &Params::new(int(-2), int(0))).is_ok());
    assert!(Rational::zero().is_integer());
}
