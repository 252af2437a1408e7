//! Registry of the recurrence claims and their exact residuals.
//!
//! Every claim is normalized to the shape
//!
//! ```text
//! operator_side = sum_i c_i * term_i
//! ```
//!
//! where the printed statement fixes the `c_i` ("as stated") and the fitter
//! treats them as unknowns. The residual of an instance is
//! `operator_side - sum_i c_i term_i`; the claim holds for that instance iff
//! the residual is the zero polynomial (or series).

pub mod certify;
pub mod fit;
pub mod linalg;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::families::{
    bateman_gf, jacobi_sum, legendre_ka, BatemanHalfPower, Convention, LegendreDenominator,
};
use crate::operators::{apply, apply_series, OperatorId};
use crate::poly::Monomial;
use crate::scalar::{int, rat, Rational};
use crate::{Params, Poly, Series};

pub use certify::{certify, degree_bound, Certificate, CertificateKind, SamplePlan, Verdict, VerdictStatus};
pub use fit::{fit, Ansatz, FitResult, FitStatus, MatchedForm, Pooling};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    Thm21,
    Cor22,
    Cor23,
    Thm31,
    Cor32,
    Cor33,
    Thm41,
    Cor42,
    Cor43,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Carrier {
    Polynomial,
    Series,
}

/// Which convention axis a claim depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConventionAxis {
    None,
    Bateman,
    Legendre,
}

/// Order of operator application and variable specialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    /// Theorems: no specialization.
    Direct,
    /// Apply the operator, then set `w = 1` (or `z = 1`).
    ApplyThenSubstitute,
    /// Specialize first, then apply the operator exactly as printed.
    SubstituteThenApply,
}

impl Pipeline {
    pub fn tag(&self) -> &'static str {
        match self {
            Pipeline::Direct => "direct",
            Pipeline::ApplyThenSubstitute => "apply-then-substitute",
            Pipeline::SubstituteThenApply => "substitute-then-apply",
        }
    }
}

impl ClaimId {
    pub const ALL: [ClaimId; 9] = [
        ClaimId::Thm21,
        ClaimId::Cor22,
        ClaimId::Cor23,
        ClaimId::Thm31,
        ClaimId::Cor32,
        ClaimId::Cor33,
        ClaimId::Thm41,
        ClaimId::Cor42,
        ClaimId::Cor43,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            ClaimId::Thm21 => "thm-2.1",
            ClaimId::Cor22 => "cor-2.2",
            ClaimId::Cor23 => "cor-2.3",
            ClaimId::Thm31 => "thm-3.1",
            ClaimId::Cor32 => "cor-3.2",
            ClaimId::Cor33 => "cor-3.3",
            ClaimId::Thm41 => "thm-4.1",
            ClaimId::Cor42 => "cor-4.2",
            ClaimId::Cor43 => "cor-4.3",
        }
    }

    /// Accepts the plain id and the `-as-stated` spelling.
    pub fn parse(text: &str) -> Result<Self> {
        let key = text.strip_suffix("-as-stated").unwrap_or(text);
        Self::ALL.into_iter().find(|c| c.id() == key).ok_or_else(|| Error::Unknown(text.to_string()))
    }

    /// The identity as printed, in `operator_side = sum c_i term_i` form.
    pub fn statement(&self) -> &'static str {
        match self {
            ClaimId::Thm21 => "Xi P_n^(a,b) = (1+a+b+n)/4 * P_(n-1)^(a+1,b+1)",
            ClaimId::Cor22 => "d/dz P_n^(a,b)(z,1) = (1+a+b+n)/2 * P_(n-1)^(a+1,b+1)(z,1)",
            ClaimId::Cor23 => "sqrt(w) d/dw P_n^(a,b)(1,w) = -(1+a+b+n)/4 * P_(n-1)^(a+1,b+1)(1,w)",
            ClaimId::Thm31 => "Xi B^(a,b) = t/(2(1+a)) B^(a+1,b) + 3t/(2(1+b)) B^(a,b+1)",
            ClaimId::Cor32 => "d/dz B^(a,b)(z,1) = t/(1+a) B^(a+1,b)(z,1) + t/(1+b) B^(a,b+1)(z,1)",
            ClaimId::Cor33 => "sqrt(w) d/dw B^(a,b)(1,w) = -t/(2(1+a)) B^(a+1,b)(1,w) + t/(2(1+b)) B^(a,b+1)(1,w)",
            ClaimId::Thm41 => "Delta P_n = (n/(zw)) P_n - (1/(2z^2)) P_(n-1)",
            ClaimId::Cor42 => "(1/w) d/dz P_n(z,1) = (n/z) P_n(z,1) - (1/(2z^2)) P_(n-1)(z,1)",
            ClaimId::Cor43 => "(1/z) d/dw P_n(1,w) = (n/w) P_n(1,w) - (1/2) P_(n-1)(1,w)",
        }
    }

    pub fn carrier(&self) -> Carrier {
        match self {
            ClaimId::Thm31 | ClaimId::Cor32 | ClaimId::Cor33 => Carrier::Series,
            _ => Carrier::Polynomial,
        }
    }

    pub fn axis(&self) -> ConventionAxis {
        match self {
            ClaimId::Thm21 | ClaimId::Cor22 | ClaimId::Cor23 => ConventionAxis::None,
            ClaimId::Thm31 | ClaimId::Cor32 | ClaimId::Cor33 => ConventionAxis::Bateman,
            ClaimId::Thm41 | ClaimId::Cor42 | ClaimId::Cor43 => ConventionAxis::Legendre,
        }
    }

    /// Whether the claim depends on `(alpha, beta)`.
    pub fn is_parametric(&self) -> bool {
        self.axis() != ConventionAxis::Legendre
    }

    pub fn is_corollary(&self) -> bool {
        !matches!(self, ClaimId::Thm21 | ClaimId::Thm31 | ClaimId::Thm41)
    }

    /// The first pipeline decides the verdict; the rest are reported alongside.
    pub fn pipelines(&self) -> &'static [Pipeline] {
        if self.is_corollary() {
            &[Pipeline::ApplyThenSubstitute, Pipeline::SubstituteThenApply]
        } else {
            &[Pipeline::Direct]
        }
    }

    /// The conventions a claim is evaluated under, in report order.
    pub fn conventions(&self) -> Vec<Convention> {
        let base = Convention::default();
        match self.axis() {
            ConventionAxis::None => vec![base],
            ConventionAxis::Bateman => BatemanHalfPower::ALL
                .into_iter()
                .map(|h| Convention { bateman_halfpower: h, ..base })
                .collect(),
            ConventionAxis::Legendre => LegendreDenominator::ALL
                .into_iter()
                .map(|d| Convention { legendre_denominator: d, ..base })
                .collect(),
        }
    }

    /// Report label for the convention actually in play.
    pub fn convention_tag(&self, c: &Convention) -> String {
        match self.axis() {
            ConventionAxis::None => "none".to_string(),
            ConventionAxis::Bateman => format!("bateman-{}", c.bateman_halfpower.tag()),
            ConventionAxis::Legendre => format!("legendre-{}", c.legendre_denominator.tag()),
        }
    }

    pub fn ansatz(&self) -> Ansatz {
        let (terms, pooling): (&[&str], Pooling) = match self {
            ClaimId::Thm21 => (&["P_(n-1)^(a+1,b+1)"], Pooling::PerInstance),
            ClaimId::Cor22 => (&["P_(n-1)^(a+1,b+1)(z,1)"], Pooling::PerInstance),
            ClaimId::Cor23 => (&["P_(n-1)^(a+1,b+1)(1,w)"], Pooling::PerInstance),
            ClaimId::Thm31 => (&["t*B^(a+1,b)", "t*B^(a,b+1)"], Pooling::PerInstance),
            ClaimId::Cor32 => (&["t*B^(a+1,b)(z,1)", "t*B^(a,b+1)(z,1)"], Pooling::PerInstance),
            ClaimId::Cor33 => (&["t*B^(a+1,b)(1,w)", "t*B^(a,b+1)(1,w)"], Pooling::PerInstance),
            ClaimId::Thm41 => {
                (&["(n/(zw))*P_n", "(1/(2z^2))*P_(n-1)", "(1/(2z^2))*pi0(P_(n-1))"], Pooling::Shared)
            }
            ClaimId::Cor42 => (
                &["(n/z)*P_n(z,1)", "(1/(2z^2))*P_(n-1)(z,1)", "(1/(2z^2))*pi0(P_(n-1)(z,1))"],
                Pooling::Shared,
            ),
            ClaimId::Cor43 => (
                &["(n/w)*P_n(1,w)", "(1/2)*P_(n-1)(1,w)", "(1/2)*const(P_(n-1)(1,w))"],
                Pooling::Shared,
            ),
        };
        Ansatz { terms: terms.iter().map(|t| t.to_string()).collect(), pooling }
    }
}

impl Serialize for ClaimId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A polynomial or a truncated series; the carrier of a residual.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Poly(Poly),
    Series(Series),
}

impl Value {
    pub fn is_zero(&self) -> bool {
        match self {
            Value::Poly(p) => p.is_zero(),
            Value::Series(s) => s.is_zero(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Value {
        match self {
            Value::Poly(p) => Value::Poly(p.scale(c)),
            Value::Series(s) => Value::Series(s.scale(c)),
        }
    }

    pub fn sub(&self, other: &Value) -> Result<Value> {
        match (self, other) {
            (Value::Poly(a), Value::Poly(b)) => Ok(Value::Poly(a - b)),
            (Value::Series(a), Value::Series(b)) => Ok(Value::Series(a.try_sub(b)?)),
            _ => Err(Error::Precondition("mixed polynomial and series values".into())),
        }
    }

    pub fn canonical(&self) -> String {
        match self {
            Value::Poly(p) => p.canonical(),
            Value::Series(s) => s.canonical(),
        }
    }

    /// Coefficient map keyed by `(power of t, monomial)`; polynomials sit at `t^0`.
    pub fn flatten(&self) -> BTreeMap<(usize, Monomial), Rational> {
        let mut out = BTreeMap::new();
        let mut put = |n: usize, p: &Poly| {
            for (m, c) in p.terms() {
                out.insert((n, *m), c.clone());
            }
        };
        match self {
            Value::Poly(p) => put(0, p),
            Value::Series(s) => {
                for (n, c) in s.coeffs().iter().enumerate() {
                    put(n, c);
                }
            }
        }
        out
    }

    /// The piece of the residual that belongs to degree `n`: the whole
    /// polynomial, or the `t^n` coefficient of a series.
    pub fn component(&self, n: usize) -> Poly {
        match self {
            Value::Poly(p) => p.clone(),
            Value::Series(s) => s.coeff(n as i64).cloned().unwrap_or_default(),
        }
    }
}

/// One concrete instantiation of a claim.
#[derive(Clone, Debug, PartialEq)]
pub struct ClaimInstance {
    pub claim: ClaimId,
    pub n: usize,
    pub params: Params,
    pub convention: Convention,
    /// Series truncation order; unused by polynomial claims.
    pub order: usize,
    pub pipeline: Pipeline,
}

impl ClaimInstance {
    pub fn new(claim: ClaimId, n: usize, params: Params, convention: Convention, order: usize) -> Self {
        ClaimInstance { claim, n, params, convention, order, pipeline: claim.pipelines()[0] }
    }

    pub fn with_pipeline(mut self, pipeline: Pipeline) -> Self {
        self.pipeline = pipeline;
        self
    }
}

/// The operator side, the ansatz terms and the printed coefficients of an instance.
#[derive(Clone, Debug)]
pub struct Pieces {
    pub operator_side: Value,
    pub terms: Vec<Value>,
    pub stated: Vec<Rational>,
}

impl Pieces {
    pub fn residual_with(&self, coeffs: &[Rational]) -> Result<Value> {
        let mut acc = self.operator_side.clone();
        for (c, t) in coeffs.iter().zip(&self.terms) {
            acc = acc.sub(&t.scale(c))?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy)]
enum Subst {
    None,
    W1,
    Z1,
}

impl Subst {
    fn poly(self, p: &Poly) -> Poly {
        match self {
            Subst::None => p.clone(),
            Subst::W1 => p.subst_w1(),
            Subst::Z1 => p.subst_z1(),
        }
    }

    fn series(self, s: &Series) -> Series {
        s.map_coeffs(|c| self.poly(c))
    }
}

fn claim_shape(claim: ClaimId) -> (OperatorId, Subst) {
    match claim {
        ClaimId::Thm21 | ClaimId::Thm31 => (OperatorId::Xi, Subst::None),
        ClaimId::Cor22 | ClaimId::Cor32 => (OperatorId::XiZ, Subst::W1),
        ClaimId::Cor23 | ClaimId::Cor33 => (OperatorId::XiW, Subst::Z1),
        ClaimId::Thm41 => (OperatorId::Delta, Subst::None),
        ClaimId::Cor42 => (OperatorId::DeltaZ, Subst::W1),
        ClaimId::Cor43 => (OperatorId::DeltaW, Subst::Z1),
    }
}

fn operator_poly(op: OperatorId, subst: Subst, pipeline: Pipeline, p: &Poly) -> Poly {
    match pipeline {
        Pipeline::SubstituteThenApply => apply(op, &subst.poly(p)),
        _ => subst.poly(&apply(op, p)),
    }
}

fn operator_series(op: OperatorId, subst: Subst, pipeline: Pipeline, s: &Series) -> Series {
    match pipeline {
        Pipeline::SubstituteThenApply => apply_series(op, &subst.series(s)),
        _ => subst.series(&apply_series(op, s)),
    }
}

fn jacobi_or_zero(n: Option<usize>, p: &Params) -> Result<Poly> {
    match n {
        Some(n) => jacobi_sum(n, p),
        None => Ok(Poly::zero()),
    }
}

fn legendre_or_zero(n: Option<usize>, d: LegendreDenominator) -> Result<Poly> {
    match n {
        Some(n) => legendre_ka(n, d),
        None => Ok(Poly::zero()),
    }
}

/// Builds the operator side, ansatz terms and printed coefficients.
pub fn pieces(inst: &ClaimInstance) -> Result<Pieces> {
    let claim = inst.claim;
    if !claim.pipelines().contains(&inst.pipeline) {
        return Err(Error::Precondition(format!("{claim} has no {} pipeline", inst.pipeline.tag())));
    }
    let (op, subst) = claim_shape(claim);
    let n = inst.n;
    let prev = n.checked_sub(1);
    let p = &inst.params;
    let nn = int(n as i64);
    match claim.axis() {
        ConventionAxis::None => {
            let top = jacobi_sum(n, p)?;
            let lower = jacobi_or_zero(prev, &p.shifted(1, 1))?;
            let k = p.one_plus_alpha() + p.beta.clone() + nn;
            let stated = match claim {
                ClaimId::Thm21 => k * rat(1, 4),
                ClaimId::Cor22 => k * rat(1, 2),
                _ => k * rat(-1, 4),
            };
            Ok(Pieces {
                operator_side: Value::Poly(operator_poly(op, subst, inst.pipeline, &top)),
                terms: vec![Value::Poly(subst.poly(&lower))],
                stated: vec![stated],
            })
        }
        ConventionAxis::Bateman => {
            let half = inst.convention.bateman_halfpower;
            let order = inst.order;
            let b = bateman_gf(p, half, order)?;
            let b_alpha = bateman_gf(&p.shifted(1, 0), half, order)?.shift_t(1);
            let b_beta = bateman_gf(&p.shifted(0, 1), half, order)?.shift_t(1);
            let (a1, b1) = (p.one_plus_alpha(), p.one_plus_beta());
            let stated = match claim {
                ClaimId::Thm31 => vec![rat(1, 2) / a1, rat(3, 2) / b1],
                ClaimId::Cor32 => vec![int(1) / a1, int(1) / b1],
                _ => vec![rat(-1, 2) / a1, rat(1, 2) / b1],
            };
            Ok(Pieces {
                operator_side: Value::Series(operator_series(op, subst, inst.pipeline, &b)),
                terms: vec![Value::Series(subst.series(&b_alpha)), Value::Series(subst.series(&b_beta))],
                stated,
            })
        }
        ConventionAxis::Legendre => {
            let d = inst.convention.legendre_denominator;
            let top = legendre_ka(n, d)?;
            let lower = legendre_or_zero(prev, d)?;
            let (top_s, lower_s) = (subst.poly(&top), subst.poly(&lower));
            let terms = match claim {
                ClaimId::Thm41 => vec![
                    top.shift(-1, -2).scale(&nn),
                    lower.shift(-2, 0).scale(&rat(1, 2)),
                    lower.z_degree_zero_part().shift(-2, 0).scale(&rat(1, 2)),
                ],
                ClaimId::Cor42 => vec![
                    top_s.shift(-1, 0).scale(&nn),
                    lower_s.shift(-2, 0).scale(&rat(1, 2)),
                    lower_s.z_degree_zero_part().shift(-2, 0).scale(&rat(1, 2)),
                ],
                _ => vec![
                    top_s.shift(0, -2).scale(&nn),
                    lower_s.scale(&rat(1, 2)),
                    Poly::constant(lower_s.coeff(0, 0)).scale(&rat(1, 2)),
                ],
            };
            Ok(Pieces {
                operator_side: Value::Poly(operator_poly(op, subst, inst.pipeline, &top)),
                terms: terms.into_iter().map(Value::Poly).collect(),
                stated: vec![int(1), int(-1), int(0)],
            })
        }
    }
}

/// `operator_side - sum(stated_i * term_i)` for the printed statement.
pub fn residual(inst: &ClaimInstance) -> Result<Value> {
    let pcs = pieces(inst)?;
    pcs.residual_with(&pcs.stated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{classical_jacobi, JacobiParams};

    fn inst(claim: ClaimId, n: usize, a: Rational, b: Rational) -> ClaimInstance {
        ClaimInstance::new(claim, n, JacobiParams::new(a, b), Convention::default(), 12)
    }

    fn legendre(claim: ClaimId, n: usize, d: LegendreDenominator) -> ClaimInstance {
        let conv = Convention { legendre_denominator: d, ..Convention::default() };
        ClaimInstance::new(claim, n, JacobiParams::new(int(0), int(0)), conv, 0)
    }

    #[test]
    fn ids_round_trip() {
        for c in ClaimId::ALL {
            assert_eq!(ClaimId::parse(c.id()).unwrap(), c);
        }
        assert_eq!(ClaimId::parse("thm-4.1-as-stated").unwrap(), ClaimId::Thm41);
        assert!(ClaimId::parse("thm-9.9").is_err());
    }

    #[test]
    fn jacobi_xi_degree_one_at_origin() {
        let pcs = pieces(&inst(ClaimId::Thm21, 1, int(0), int(0))).unwrap();
        // Xi P_1 = 1/2 and the printed right side is (2/4) * 1
        assert_eq!(pcs.operator_side, Value::Poly(Poly::constant(rat(1, 2))));
        assert_eq!(pcs.stated, vec![rat(1, 2)]);
        assert!(residual(&inst(ClaimId::Thm21, 1, int(0), int(0))).unwrap().is_zero());
    }

    #[test]
    fn jacobi_claims_hold_small_n() {
        for claim in [ClaimId::Thm21, ClaimId::Cor22, ClaimId::Cor23] {
            for &pipeline in claim.pipelines() {
                for n in 0..=5 {
                    let i = inst(claim, n, rat(2, 3), rat(-1, 5)).with_pipeline(pipeline);
                    assert!(residual(&i).unwrap().is_zero(), "{claim} n={n} {pipeline:?}");
                }
            }
        }
    }

    #[test]
    fn jacobi_z_slice_matches_classical_derivative() {
        // d/dz P_n^(a,b)(z) = (1+a+b+n)/2 P_(n-1)^(a+1,b+1)(z)
        let p = JacobiParams::new(rat(3, 4), rat(5, 7));
        for n in 1..=6 {
            let lhs = classical_jacobi(n, &p).unwrap().d_dz();
            let k = p.one_plus_alpha() + p.beta.clone() + int(n as i64);
            let rhs = classical_jacobi(n - 1, &p.shifted(1, 1)).unwrap().scale(&(k * rat(1, 2)));
            assert_eq!(lhs, rhs);
            let pcs = pieces(&inst(ClaimId::Cor22, n, p.alpha.clone(), p.beta.clone())).unwrap();
            assert_eq!(pcs.operator_side, Value::Poly(lhs));
        }
    }

    #[test]
    fn legendre_delta_residuals() {
        for d in LegendreDenominator::ALL {
            let r = residual(&legendre(ClaimId::Thm41, 2, d)).unwrap();
            assert_eq!(r.canonical(), "1*z^-1");
            let r = residual(&legendre(ClaimId::Thm41, 1, d)).unwrap();
            assert_eq!(r.canonical(), "1/2*z^-2");
        }
    }

    #[test]
    fn legendre_z_slice_residual() {
        let r = residual(&legendre(ClaimId::Cor42, 2, LegendreDenominator::Corrected)).unwrap();
        assert_eq!(r.canonical(), "3/2*z^-1");
        // the literal 1/w survives when the operator is applied after w = 1
        let lit = legendre(ClaimId::Cor42, 2, LegendreDenominator::Corrected).with_pipeline(Pipeline::SubstituteThenApply);
        assert_eq!(residual(&lit).unwrap().canonical(), "-3*z + 3*z*s^-2 + 3/2*z^-1");
    }

    #[test]
    fn bateman_claims_hold_under_b() {
        for claim in [ClaimId::Thm31, ClaimId::Cor32, ClaimId::Cor33] {
            let i = inst(claim, 0, rat(1, 3), rat(4, 5));
            assert!(residual(&i).unwrap().is_zero(), "{claim}");
            let mut a = i.clone();
            a.convention.bateman_halfpower = BatemanHalfPower::A;
            assert!(!residual(&a).unwrap().is_zero(), "{claim} under A");
        }
    }

    #[test]
    fn wrong_pipeline_is_rejected() {
        let i = inst(ClaimId::Thm21, 2, int(0), int(0)).with_pipeline(Pipeline::SubstituteThenApply);
        assert!(matches!(pieces(&i), Err(Error::Precondition(_))));
    }
}
