//! Exact coefficient fitting against an ansatz, with closed-form matching.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::linalg::{solve, Solution};
use super::{pieces, ClaimId, ClaimInstance, Pieces};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, int, Rational};

pub const FIT_LABEL: &str = "engine-derived correction";

/// Largest denominator a matched constant may carry.
const MAX_DENOMINATOR: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pooling {
    /// One solve per instance; coefficients may depend on `(n, alpha, beta)`.
    PerInstance,
    /// One solve over every instance at once; coefficients are constants.
    Shared,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ansatz {
    pub terms: Vec<String>,
    pub pooling: Pooling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitStatus {
    ExactFit,
    Inconsistent,
    Underdetermined,
}

impl FitStatus {
    pub fn tag(&self) -> &'static str {
        match self {
            FitStatus::ExactFit => "exact-fit",
            FitStatus::Inconsistent => "inconsistent",
            FitStatus::Underdetermined => "underdetermined",
        }
    }
}

/// Shapes tried when matching a coefficient across instances, in tie-break order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Const,
    N,
    OnePlusAlphaBetaN,
    OverOnePlusAlpha,
    OverOnePlusBeta,
}

impl Shape {
    pub const ALL: [Shape; 5] =
        [Shape::Const, Shape::N, Shape::OnePlusAlphaBetaN, Shape::OverOnePlusAlpha, Shape::OverOnePlusBeta];

    fn eval(&self, inst: &ClaimInstance) -> Rational {
        let p = &inst.params;
        let n = int(inst.n as i64);
        match self {
            Shape::Const => int(1),
            Shape::N => n,
            Shape::OnePlusAlphaBetaN => p.one_plus_alpha() + p.beta.clone() + n,
            Shape::OverOnePlusAlpha => int(1) / p.one_plus_alpha(),
            Shape::OverOnePlusBeta => int(1) / p.one_plus_beta(),
        }
    }
}

/// `c * shape`, e.g. `1/4*(1+alpha+beta+n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedForm {
    pub c: Rational,
    pub shape: Shape,
}

impl MatchedForm {
    pub fn eval(&self, inst: &ClaimInstance) -> Rational {
        self.c.clone() * self.shape.eval(inst)
    }
}

impl fmt::Display for MatchedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = format_rational(&self.c);
        match self.shape {
            Shape::Const => write!(f, "{c}"),
            Shape::N => write!(f, "{c}*n"),
            Shape::OnePlusAlphaBetaN => write!(f, "{c}*(1+alpha+beta+n)"),
            Shape::OverOnePlusAlpha => write!(f, "{c}/(1+alpha)"),
            Shape::OverOnePlusBeta => write!(f, "{c}/(1+beta)"),
        }
    }
}

impl Serialize for MatchedForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceCoefficients {
    pub n: usize,
    pub alpha: String,
    pub beta: String,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FitResult {
    pub label: &'static str,
    pub ansatz: Ansatz,
    pub status: FitStatus,
    /// One entry per instance, or a single entry for a shared solve.
    pub coefficients: Vec<InstanceCoefficients>,
    pub matched_form: Vec<Option<MatchedForm>>,
    pub rank: Option<usize>,
    /// Residual vanishes on fresh instances; `None` when nothing could be predicted.
    pub out_of_sample: Option<bool>,
    pub note: Option<String>,
}

impl FitResult {
    pub fn is_exact(&self) -> bool {
        self.status == FitStatus::ExactFit
    }

    /// The shared coefficients, or the matched forms rendered per index.
    pub fn rendered_forms(&self) -> Vec<String> {
        self.matched_form.iter().map(|m| m.as_ref().map_or("?".to_string(), |f| f.to_string())).collect()
    }
}

fn system_rows(p: &Pieces) -> Vec<Vec<Rational>> {
    let lhs = p.operator_side.flatten();
    let terms: Vec<_> = p.terms.iter().map(|t| t.flatten()).collect();
    let mut keys: BTreeSet<_> = lhs.keys().copied().collect();
    for t in &terms {
        keys.extend(t.keys().copied());
    }
    let zero = Rational::zero();
    keys.into_iter()
        .map(|k| {
            let mut row: Vec<Rational> = terms.iter().map(|t| t.get(&k).unwrap_or(&zero).clone()).collect();
            row.push(lhs.get(&k).unwrap_or(&zero).clone());
            row
        })
        .collect()
}

fn describe(inst: &ClaimInstance, values: &[Rational]) -> InstanceCoefficients {
    InstanceCoefficients {
        n: inst.n,
        alpha: format_rational(&inst.params.alpha),
        beta: format_rational(&inst.params.beta),
        values: values.iter().map(format_rational).collect(),
    }
}

fn where_(inst: &ClaimInstance) -> String {
    if inst.claim.is_parametric() {
        format!(
            "n={} alpha={} beta={}",
            inst.n,
            format_rational(&inst.params.alpha),
            format_rational(&inst.params.beta)
        )
    } else {
        format!("n={}", inst.n)
    }
}

/// Candidate `c * shape` matching `values[j]` at `instances[j]` for all `j`,
/// preferring the smallest denominator of `c`, then shape order.
pub fn match_form(values: &[Rational], instances: &[ClaimInstance]) -> Option<MatchedForm> {
    let mut best: Option<MatchedForm> = None;
    for shape in Shape::ALL {
        let mut c: Option<Rational> = None;
        let mut ok = true;
        for (v, inst) in values.iter().zip(instances) {
            let g = shape.eval(inst);
            if g.is_zero() {
                if !v.is_zero() {
                    ok = false;
                    break;
                }
                continue;
            }
            let ratio = v.clone() / g;
            match &c {
                None => c = Some(ratio),
                Some(prev) if *prev == ratio => {}
                Some(_) => {
                    ok = false;
                    break;
                }
            }
        }
        let Some(c) = c.filter(|_| ok) else { continue };
        if !c.denominator_at_most(MAX_DENOMINATOR) {
            continue;
        }
        if best.as_ref().is_none_or(|b| c.cmp_denominator(&b.c).is_lt()) {
            best = Some(MatchedForm { c, shape });
        }
    }
    best
}

/// Fits the claim's ansatz on `instances` and checks the result on `fresh`.
pub fn fit(claim: ClaimId, instances: &[ClaimInstance], fresh: &[ClaimInstance]) -> Result<FitResult> {
    if instances.is_empty() {
        return Err(Error::Precondition("fit needs at least one instance".into()));
    }
    if instances.iter().chain(fresh).any(|i| i.claim != claim) {
        return Err(Error::Precondition(format!("instances must all belong to {claim}")));
    }
    let ansatz = claim.ansatz();
    let k = ansatz.terms.len();
    let all: Vec<Pieces> = instances.iter().map(pieces).collect::<Result<_>>()?;
    let mut result = FitResult {
        label: FIT_LABEL,
        ansatz: ansatz.clone(),
        status: FitStatus::ExactFit,
        coefficients: Vec::new(),
        matched_form: vec![None; k],
        rank: Some(k),
        out_of_sample: None,
        note: None,
    };
    match ansatz.pooling {
        Pooling::Shared => {
            let rows: Vec<_> = all.iter().flat_map(system_rows).collect();
            match solve(rows, k) {
                Solution::Unique(x) => {
                    for p in &all {
                        debug_assert!(p.residual_with(&x)?.is_zero());
                    }
                    result.coefficients.push(InstanceCoefficients {
                        n: instances.iter().map(|i| i.n).max().unwrap_or(0),
                        alpha: "*".into(),
                        beta: "*".into(),
                        values: x.iter().map(format_rational).collect(),
                    });
                    result.matched_form = x
                        .iter()
                        .map(|v| {
                            v.denominator_at_most(MAX_DENOMINATOR).then(|| MatchedForm { c: v.clone(), shape: Shape::Const })
                        })
                        .collect();
                    result.out_of_sample = Some(held_out(fresh, |_| Some(x.clone()))?);
                }
                Solution::Inconsistent => {
                    result.status = FitStatus::Inconsistent;
                    result.rank = None;
                    result.note = first_inconsistent_prefix(&all, instances, k);
                }
                Solution::Underdetermined { rank } => {
                    result.status = FitStatus::Underdetermined;
                    result.rank = Some(rank);
                }
            }
        }
        Pooling::PerInstance => {
            let mut solved: Vec<Vec<Rational>> = Vec::new();
            for (p, inst) in all.iter().zip(instances) {
                match solve(system_rows(p), k) {
                    Solution::Unique(x) => {
                        debug_assert!(p.residual_with(&x)?.is_zero());
                        result.coefficients.push(describe(inst, &x));
                        solved.push(x);
                    }
                    Solution::Inconsistent => {
                        result.status = FitStatus::Inconsistent;
                        result.rank = None;
                        result.note = Some(format!("no exact fit at {}", where_(inst)));
                        return Ok(result);
                    }
                    Solution::Underdetermined { rank } => {
                        result.status = FitStatus::Underdetermined;
                        result.rank = Some(rank);
                        result.note = Some(format!("rank {rank} < {k} at {}", where_(inst)));
                        return Ok(result);
                    }
                }
            }
            result.matched_form = (0..k)
                .map(|i| {
                    let column: Vec<_> = solved.iter().map(|x| x[i].clone()).collect();
                    match_form(&column, instances)
                })
                .collect();
            if result.matched_form.iter().all(Option::is_some) {
                let forms: Vec<MatchedForm> = result.matched_form.iter().flatten().cloned().collect();
                result.out_of_sample =
                    Some(held_out(fresh, |inst| Some(forms.iter().map(|f| f.eval(inst)).collect()))?);
            }
        }
    }
    Ok(result)
}

/// The smallest instance prefix that is already inconsistent.
fn first_inconsistent_prefix(all: &[Pieces], instances: &[ClaimInstance], k: usize) -> Option<String> {
    let mut rows = Vec::new();
    for (p, inst) in all.iter().zip(instances) {
        rows.extend(system_rows(p));
        if solve(rows.clone(), k) == Solution::Inconsistent {
            return Some(format!("no common fit once {} is included", where_(inst)));
        }
    }
    None
}

fn held_out<F>(fresh: &[ClaimInstance], coeffs: F) -> Result<bool>
where
    F: Fn(&ClaimInstance) -> Option<Vec<Rational>>,
{
    for inst in fresh {
        let Some(x) = coeffs(inst) else { return Ok(false) };
        if !pieces(inst)?.residual_with(&x)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
