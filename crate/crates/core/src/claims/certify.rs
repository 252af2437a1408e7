//! Per-degree verdicts backed by exact evaluation on a parameter grid.
//!
//! A residual coefficient is a rational function of `(alpha, beta)` whose
//! numerator has degree at most `D(n) = 4n + 4` in each parameter. If it
//! vanishes on `D(n) + 1` distinct values per axis (a tensor grid off the
//! poles), it vanishes identically.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{residual, Carrier, ClaimId, ClaimInstance, Pipeline, Value};
use crate::error::{Error, Result};
use crate::families::Convention;
use crate::scalar::{format_rational, int, Rational};
use crate::Params;

/// Per-axis degree bound of a residual numerator at degree `n`.
pub fn degree_bound(n: usize) -> usize {
    4 * n + 4
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SamplePlan {
    /// Tensor grid; `per_axis = None` sizes each degree at `D(n) + 1`.
    Grid { seed: u64, per_axis: Option<usize> },
    /// Independent random points; evidence, not a proof.
    Random { seed: u64, count: usize },
}

impl SamplePlan {
    pub fn grid(seed: u64) -> Self {
        SamplePlan::Grid { seed, per_axis: None }
    }

    pub fn seed(&self) -> u64 {
        match self {
            SamplePlan::Grid { seed, .. } | SamplePlan::Random { seed, .. } => *seed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    /// Exact evaluation over a grid larger than the degree bound.
    Grid,
    /// Exact evaluation at random samples.
    Random,
    /// The family has no parameters; one instance per degree decides.
    ParameterFree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxisSize {
    pub n: usize,
    pub degree_bound: usize,
    pub per_axis: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub seed: Option<u64>,
    pub degree_bound: Option<String>,
    pub axes: Vec<AxisSize>,
    pub evaluations: usize,
    /// Parameter values rejected by the pole condition.
    pub excluded: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictStatus {
    Holds,
    Fails,
    Error,
}

impl VerdictStatus {
    pub fn tag(&self) -> &'static str {
        match self {
            VerdictStatus::Holds => "holds",
            VerdictStatus::Fails => "fails",
            VerdictStatus::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessParams {
    pub alpha: String,
    pub beta: String,
}

/// Outcome at one degree `n` (or one power of `t` for series claims).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub n: usize,
    pub status: VerdictStatus,
    pub residual_canonical: Option<String>,
    pub witness_params: Option<WitnessParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl Verdict {
    fn holds(n: usize) -> Self {
        Verdict { n, status: VerdictStatus::Holds, residual_canonical: None, witness_params: None, message: None }
    }

    fn error(n: usize, e: &Error) -> Self {
        Verdict {
            n,
            status: VerdictStatus::Error,
            residual_canonical: None,
            witness_params: None,
            message: Some(e.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyOutcome {
    pub certificate: Certificate,
    pub verdicts: Vec<Verdict>,
}

impl CertifyOutcome {
    pub fn holds(&self) -> bool {
        self.verdicts.iter().all(|v| v.status == VerdictStatus::Holds)
    }

    pub fn first_failure(&self) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.status != VerdictStatus::Holds)
    }
}

fn witness(p: &Params) -> WitnessParams {
    WitnessParams { alpha: format_rational(&p.alpha), beta: format_rational(&p.beta) }
}

/// Seeded stream of rationals `p/q`, `q <= 8`, `p` in `[-3q, 5q]`.
pub struct ParamSampler {
    rng: ChaCha8Rng,
}

impl ParamSampler {
    pub fn new(seed: u64) -> Self {
        ParamSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn draw(&mut self) -> Rational {
        let q: i64 = self.rng.gen_range(1..=8);
        let p: i64 = self.rng.gen_range(-3 * q..=5 * q);
        Rational::new(p, q)
    }

    /// Next draw that is not a pole, recording rejected values.
    pub fn draw_valid(&mut self, excluded: &mut BTreeSet<Rational>) -> Rational {
        loop {
            let v = self.draw();
            if is_pole(&v) {
                excluded.insert(v);
            } else {
                return v;
            }
        }
    }

    /// `count` distinct valid values.
    pub fn axis(&mut self, count: usize, excluded: &mut BTreeSet<Rational>) -> Vec<Rational> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let v = self.draw_valid(excluded);
            if seen.insert(v.clone()) {
                out.push(v);
            }
        }
        out
    }
}

/// `1 + x + k = 0` for some `k >= 0`.
fn is_pole(x: &Rational) -> bool {
    x.is_integer() && x.is_negative()
}

fn excluded_list(excluded: &BTreeSet<Rational>) -> Vec<String> {
    excluded.iter().map(|v| format!("{} (pole)", format_rational(v))).collect()
}

/// Verdicts for `claim` under `convention` along `pipeline`.
///
/// Polynomial claims are checked for `n = 1..=n_max`; series claims, whose
/// truncation order is `order`, for every power `t^0..=t^order`.
pub fn certify(
    claim: ClaimId,
    convention: Convention,
    pipeline: Pipeline,
    n_max: usize,
    order: usize,
    plan: &SamplePlan,
) -> Result<CertifyOutcome> {
    match (claim.carrier(), claim.is_parametric()) {
        (Carrier::Polynomial, false) => Ok(parameter_free(claim, convention, pipeline, n_max)),
        (Carrier::Polynomial, true) => polynomial_grid(claim, convention, pipeline, n_max, plan),
        (Carrier::Series, _) => series_samples(claim, convention, pipeline, order, plan),
    }
}

fn origin() -> Params {
    Params::new(int(0), int(0))
}

fn judge(n: usize, r: &Value, p: Option<&Params>) -> Option<Verdict> {
    let part = r.component(n);
    if part.is_zero() {
        return None;
    }
    Some(Verdict {
        n,
        status: VerdictStatus::Fails,
        residual_canonical: Some(part.canonical()),
        witness_params: p.map(witness),
        message: None,
    })
}

fn parameter_free(claim: ClaimId, convention: Convention, pipeline: Pipeline, n_max: usize) -> CertifyOutcome {
    let verdicts = (1..=n_max)
        .map(|n| {
            let inst = ClaimInstance::new(claim, n, origin(), convention, 0).with_pipeline(pipeline);
            match residual(&inst) {
                Ok(r) => judge(n, &r, None).unwrap_or_else(|| Verdict::holds(n)),
                Err(e) => Verdict::error(n, &e),
            }
        })
        .collect();
    CertifyOutcome {
        certificate: Certificate {
            kind: CertificateKind::ParameterFree,
            seed: None,
            degree_bound: None,
            axes: Vec::new(),
            evaluations: n_max,
            excluded: Vec::new(),
        },
        verdicts,
    }
}

fn polynomial_grid(
    claim: ClaimId,
    convention: Convention,
    pipeline: Pipeline,
    n_max: usize,
    plan: &SamplePlan,
) -> Result<CertifyOutcome> {
    let SamplePlan::Grid { seed, per_axis } = plan else {
        return Err(Error::Precondition(format!("{claim} needs a grid sample plan")));
    };
    let size_for = |n: usize| per_axis.unwrap_or(degree_bound(n) + 1);
    for n in (1..=n_max).rev() {
        let needed = degree_bound(n) + 1;
        if size_for(n) < needed {
            return Err(Error::GridTooSmall { needed, got: size_for(n) });
        }
    }
    let largest = (1..=n_max).map(size_for).max().unwrap_or(0);
    let mut sampler = ParamSampler::new(*seed);
    let mut excluded = BTreeSet::new();
    let alphas = sampler.axis(largest, &mut excluded);
    let betas = sampler.axis(largest, &mut excluded);

    let mut axes = Vec::new();
    let mut evaluations = 0;
    let mut verdicts = Vec::new();
    for n in 1..=n_max {
        let size = size_for(n);
        axes.push(AxisSize { n, degree_bound: degree_bound(n), per_axis: size });
        let points: Vec<Params> = alphas[..size]
            .iter()
            .flat_map(|a| betas[..size].iter().map(move |b| Params::new(a.clone(), b.clone())))
            .collect();
        let (verdict, used) = scan(claim, convention, pipeline, n, &points);
        evaluations += used;
        verdicts.push(verdict);
    }
    Ok(CertifyOutcome {
        certificate: Certificate {
            kind: CertificateKind::Grid,
            seed: Some(*seed),
            degree_bound: Some("4n+4".to_string()),
            axes,
            evaluations,
            excluded: excluded_list(&excluded),
        },
        verdicts,
    })
}

/// First failing point in grid order, evaluating in parallel chunks. The
/// count returned is the number of points up to and including the witness,
/// independent of the thread count.
fn scan(claim: ClaimId, convention: Convention, pipeline: Pipeline, n: usize, points: &[Params]) -> (Verdict, usize) {
    let threads = worker_count();
    let chunk = points.len().div_ceil(threads).max(1);
    let outcomes: Vec<Option<(usize, Verdict)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = points
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                scope.spawn(move || {
                    for (i, p) in part.iter().enumerate() {
                        let inst = ClaimInstance::new(claim, n, p.clone(), convention, 0).with_pipeline(pipeline);
                        let found = match residual(&inst) {
                            Ok(r) => judge(n, &r, Some(p)),
                            Err(e) => Some(Verdict::error(n, &e)),
                        };
                        if let Some(v) = found {
                            return Some((c * chunk + i, v));
                        }
                    }
                    None
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("certification worker panicked")).collect()
    });
    match outcomes.into_iter().flatten().next() {
        Some((index, v)) => (v, index + 1),
        None => (Verdict::holds(n), points.len()),
    }
}

/// Worker threads for grid scans; `MIXREC_THREADS=1` forces a serial run.
pub fn worker_count() -> usize {
    std::env::var("MIXREC_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

fn series_samples(
    claim: ClaimId,
    convention: Convention,
    pipeline: Pipeline,
    order: usize,
    plan: &SamplePlan,
) -> Result<CertifyOutcome> {
    let SamplePlan::Random { seed, count } = plan else {
        return Err(Error::Precondition(format!("{claim} needs a random sample plan")));
    };
    let mut sampler = ParamSampler::new(*seed);
    let mut excluded = BTreeSet::new();
    let points: Vec<Params> = (0..*count)
        .map(|_| {
            let a = sampler.draw_valid(&mut excluded);
            let b = sampler.draw_valid(&mut excluded);
            Params::new(a, b)
        })
        .collect();
    let mut verdicts: Vec<Verdict> = (0..=order).map(Verdict::holds).collect();
    for p in &points {
        let inst = ClaimInstance::new(claim, 0, p.clone(), convention, order).with_pipeline(pipeline);
        match residual(&inst) {
            Ok(r) => {
                for (n, v) in verdicts.iter_mut().enumerate() {
                    if v.status == VerdictStatus::Holds {
                        if let Some(f) = judge(n, &r, Some(p)) {
                            *v = f;
                        }
                    }
                }
            }
            Err(e) => {
                for v in verdicts.iter_mut().filter(|v| v.status == VerdictStatus::Holds) {
                    *v = Verdict::error(v.n, &e);
                }
            }
        }
    }
    Ok(CertifyOutcome {
        certificate: Certificate {
            kind: CertificateKind::Random,
            seed: Some(*seed),
            degree_bound: None,
            axes: Vec::new(),
            evaluations: points.len(),
            excluded: excluded_list(&excluded),
        },
        verdicts,
    })
}

/// Pole-free sample points for fitting and out-of-sample checks.
pub fn sample_params(seed: u64, count: usize) -> Vec<Params> {
    let mut sampler = ParamSampler::new(seed);
    let mut excluded = BTreeSet::new();
    (0..count)
        .map(|_| {
            let a = sampler.draw_valid(&mut excluded);
            let b = sampler.draw_valid(&mut excluded);
            Params::new(a, b)
        })
        .collect()
}
