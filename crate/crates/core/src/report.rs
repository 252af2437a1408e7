//! The verification suite and its JSON, CSV and text renderings.

use serde::{Serialize, Serializer};

use crate::claims::certify::{sample_params, Certificate, CertificateKind, Verdict, VerdictStatus};
use crate::claims::{certify, fit, Carrier, ClaimId, ClaimInstance, ConventionAxis, FitResult, Pipeline, SamplePlan};
use crate::compare::{finish, io};
use crate::error::{Error, Result};
use crate::families::{BatemanHalfPower, Convention, LegendreDenominator};
use crate::scalar::int;
use crate::Params;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Fresh instances used to test a fit outside its training set.
pub const OUT_OF_SAMPLE: usize = 5;

fn tag_legendre<S: Serializer>(v: &Option<LegendreDenominator>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(d) => s.serialize_str(d.tag()),
        None => s.serialize_none(),
    }
}

fn tag_bateman<S: Serializer>(v: &Option<BatemanHalfPower>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(h) => s.serialize_str(h.tag()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub claims: Vec<ClaimId>,
    pub n_max: usize,
    /// Series truncation order.
    pub order: usize,
    pub seed: u64,
    /// Fixed grid size per axis; `None` sizes each degree at its bound.
    pub grid_per_axis: Option<usize>,
    /// Parameter samples for series claims.
    pub series_samples: usize,
    /// Restrict Legendre claims to one denominator.
    #[serde(serialize_with = "tag_legendre")]
    pub legendre_denominator: Option<LegendreDenominator>,
    /// Restrict Bateman claims to one half-power convention.
    #[serde(serialize_with = "tag_bateman")]
    pub bateman_halfpower: Option<BatemanHalfPower>,
    pub fit: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            claims: ClaimId::ALL.to_vec(),
            n_max: 10,
            order: 12,
            seed: 42,
            grid_per_axis: None,
            series_samples: 10,
            legendre_denominator: None,
            bateman_halfpower: None,
            fit: true,
        }
    }
}

impl SuiteConfig {
    pub fn conventions(&self, claim: ClaimId) -> Vec<Convention> {
        claim
            .conventions()
            .into_iter()
            .filter(|c| match claim.axis() {
                ConventionAxis::Legendre => {
                    self.legendre_denominator.is_none_or(|d| d == c.legendre_denominator)
                }
                ConventionAxis::Bateman => {
                    self.bateman_halfpower.is_none_or(|h| h == c.bateman_halfpower)
                }
                ConventionAxis::None => true,
            })
            .collect()
    }

    fn plan(&self, claim: ClaimId) -> SamplePlan {
        match claim.carrier() {
            Carrier::Series => SamplePlan::Random { seed: self.seed, count: self.series_samples },
            Carrier::Polynomial => SamplePlan::Grid { seed: self.seed, per_axis: self.grid_per_axis },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Metadata {
    pub sqrt_branch: &'static str,
    pub ring: &'static str,
    pub degree_bound: &'static str,
    pub sampler: &'static str,
    pub fit_label: &'static str,
}

const METADATA: Metadata = Metadata {
    sqrt_branch: "principal",
    ring: "Q[z, z^-1, s, s^-1] with s^2 = w",
    degree_bound: "D(n) = 4n+4 per parameter; grids use D(n)+1 distinct values per axis",
    sampler: "ChaCha8 seeded; p/q with 1 <= q <= 8, -3q <= p <= 5q; negative integers excluded",
    fit_label: crate::claims::fit::FIT_LABEL,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryStatus {
    Holds,
    Fails,
    Error,
}

impl EntryStatus {
    pub fn tag(&self) -> &'static str {
        match self {
            EntryStatus::Holds => "holds",
            EntryStatus::Fails => "fails",
            EntryStatus::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimEntry {
    pub id: ClaimId,
    pub statement: &'static str,
    pub convention: String,
    pub pipeline: Pipeline,
    /// The pipeline that decides the claim's verdict.
    pub primary: bool,
    pub carrier: Carrier,
    pub status: EntryStatus,
    pub certificate: Option<Certificate>,
    pub verdicts: Vec<Verdict>,
    pub fit: Option<FitResult>,
    pub error: Option<String>,
}

impl ClaimEntry {
    /// Convention cell for CSV; secondary pipelines are suffixed.
    pub fn csv_convention(&self) -> String {
        if self.primary {
            self.convention.clone()
        } else {
            format!("{}+{}", self.convention, self.pipeline.tag())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimSummary {
    pub id: ClaimId,
    pub holds_as_stated: bool,
    /// Conventions under which the primary pipeline holds.
    pub holding_conventions: Vec<String>,
    /// Whether every pipeline produced the same verdict under each convention.
    pub pipelines_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub engine_version: &'static str,
    pub config: SuiteConfig,
    pub metadata: Metadata,
    pub claims: Vec<ClaimEntry>,
    pub summary: Vec<ClaimSummary>,
}

impl VerificationReport {
    /// Every selected claim holds as printed under at least one convention.
    pub fn all_hold(&self) -> bool {
        self.summary.iter().all(|s| s.holds_as_stated)
    }

    pub fn entry(&self, id: ClaimId, convention: &str, pipeline: Pipeline) -> Option<&ClaimEntry> {
        self.claims.iter().find(|e| e.id == id && e.convention == convention && e.pipeline == pipeline)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(io)?;
        s.push('\n');
        Ok(s)
    }

    /// One row per verdict: `claim,convention,n,status,residual`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["claim", "convention", "n", "status", "residual"]).map_err(io)?;
        for e in &self.claims {
            let conv = e.csv_convention();
            for v in &e.verdicts {
                w.write_record([
                    e.id.id(),
                    &conv,
                    &v.n.to_string(),
                    v.status.tag(),
                    v.residual_canonical.as_deref().unwrap_or(""),
                ])
                .map_err(io)?;
            }
        }
        finish(w)
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "mixrec {} | n_max={} order={} seed={} samples={}\n",
            self.engine_version, c.n_max, c.order, c.seed, c.series_samples
        );
        for e in &self.claims {
            out.push_str(&format!("\n{} [{}] {}: {}\n", e.id, e.convention, e.pipeline.tag(), e.status.tag()));
            if e.primary {
                out.push_str(&format!("  claim: {}\n", e.statement));
            }
            if let Some(cert) = &e.certificate {
                out.push_str(&format!("  certificate: {}\n", describe_certificate(cert)));
            }
            if let Some(err) = &e.error {
                out.push_str(&format!("  error: {err}\n"));
            }
            let failing: Vec<&Verdict> = e.verdicts.iter().filter(|v| v.status != VerdictStatus::Holds).collect();
            if !failing.is_empty() {
                let ns: Vec<String> = failing.iter().map(|v| v.n.to_string()).collect();
                let what = if e.carrier == Carrier::Series { "t^" } else { "n=" };
                out.push_str(&format!("  fails at {what}{}\n", ns.join(",")));
                let first = failing[0];
                let at = first
                    .witness_params
                    .as_ref()
                    .map(|w| format!(" (alpha={}, beta={})", w.alpha, w.beta))
                    .unwrap_or_default();
                match (&first.residual_canonical, &first.message) {
                    (Some(r), _) => out.push_str(&format!("  first witness {what}{}{at}: residual {r}\n", first.n)),
                    (None, Some(m)) => out.push_str(&format!("  first error {what}{}: {m}\n", first.n)),
                    _ => {}
                }
            }
            if let Some(f) = &e.fit {
                out.push_str(&format!("  fit ({}): {}\n", f.label, f.status.tag()));
                for (term, form) in f.ansatz.terms.iter().zip(f.rendered_forms()) {
                    out.push_str(&format!("    {form} * {term}\n"));
                }
                if let Some(o) = f.out_of_sample {
                    out.push_str(&format!(
                        "    out of sample: {}\n",
                        if o { "reproduced" } else { "not reproduced" }
                    ));
                }
                if let Some(note) = &f.note {
                    out.push_str(&format!("    note: {note}\n"));
                }
            }
        }
        out.push_str("\nsummary\n");
        for s in &self.summary {
            let verdict = if s.holds_as_stated { "holds as stated" } else { "fails as stated" };
            let under = if s.holding_conventions.is_empty() {
                String::new()
            } else {
                format!(" under {}", s.holding_conventions.join(", "))
            };
            let agree = if s.pipelines_agree { "" } else { "; pipelines disagree" };
            out.push_str(&format!("  {}: {verdict}{under}{agree}\n", s.id));
        }
        out
    }
}

fn describe_certificate(c: &Certificate) -> String {
    let excluded =
        if c.excluded.is_empty() { String::new() } else { format!("; excluded {}", c.excluded.join(", ")) };
    match c.kind {
        CertificateKind::Grid => {
            let sizes: Vec<String> = c.axes.iter().map(|a| a.per_axis.to_string()).collect();
            format!(
                "grid, bound {} per axis, sizes {} per axis, {} evaluations, seed {}{excluded}",
                c.degree_bound.as_deref().unwrap_or("?"),
                sizes.join("/"),
                c.evaluations,
                c.seed.unwrap_or_default()
            )
        }
        CertificateKind::Random => {
            format!("{} random samples, seed {}{excluded}", c.evaluations, c.seed.unwrap_or_default())
        }
        CertificateKind::ParameterFree => format!("parameter-free, {} instances", c.evaluations),
    }
}

fn seeded(seed: u64, salt: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt)
}

/// Training and held-out instances for fitting one claim.
pub fn fit_instances(
    claim: ClaimId,
    convention: Convention,
    pipeline: Pipeline,
    cfg: &SuiteConfig,
) -> (Vec<ClaimInstance>, Vec<ClaimInstance>) {
    let make = |n: usize, p: Params| ClaimInstance::new(claim, n, p, convention, cfg.order).with_pipeline(pipeline);
    match (claim.carrier(), claim.is_parametric()) {
        (Carrier::Series, _) => {
            let train = sample_params(seeded(cfg.seed, 1), cfg.series_samples.max(1));
            let fresh = sample_params(seeded(cfg.seed, 2), OUT_OF_SAMPLE);
            (train.into_iter().map(|p| make(0, p)).collect(), fresh.into_iter().map(|p| make(0, p)).collect())
        }
        (Carrier::Polynomial, true) => {
            let n_max = cfg.n_max.max(1);
            let train = sample_params(seeded(cfg.seed, 1), n_max);
            let fresh = sample_params(seeded(cfg.seed, 2), OUT_OF_SAMPLE);
            (
                train.into_iter().enumerate().map(|(i, p)| make(i + 1, p)).collect(),
                fresh.into_iter().enumerate().map(|(i, p)| make(1 + i % n_max, p)).collect(),
            )
        }
        (Carrier::Polynomial, false) => {
            let origin = || Params::new(int(0), int(0));
            let n_max = cfg.n_max.max(1);
            (
                (1..=n_max).map(|n| make(n, origin())).collect(),
                (n_max + 1..=n_max + OUT_OF_SAMPLE).map(|n| make(n, origin())).collect(),
            )
        }
    }
}

/// Fits one claim under one convention and pipeline.
pub fn fit_claim(claim: ClaimId, convention: Convention, pipeline: Pipeline, cfg: &SuiteConfig) -> Result<FitResult> {
    let (train, fresh) = fit_instances(claim, convention, pipeline, cfg);
    fit(claim, &train, &fresh)
}

fn run_entry(claim: ClaimId, convention: Convention, pipeline: Pipeline, cfg: &SuiteConfig) -> Result<ClaimEntry> {
    let mut entry = ClaimEntry {
        id: claim,
        statement: claim.statement(),
        convention: claim.convention_tag(&convention),
        pipeline,
        primary: claim.pipelines()[0] == pipeline,
        carrier: claim.carrier(),
        status: EntryStatus::Error,
        certificate: None,
        verdicts: Vec::new(),
        fit: None,
        error: None,
    };
    match certify(claim, convention, pipeline, cfg.n_max, cfg.order, &cfg.plan(claim)) {
        Ok(out) => {
            entry.status = if out.holds() {
                EntryStatus::Holds
            } else if out.verdicts.iter().any(|v| v.status == VerdictStatus::Fails) {
                EntryStatus::Fails
            } else {
                EntryStatus::Error
            };
            entry.certificate = Some(out.certificate);
            entry.verdicts = out.verdicts;
        }
        // a refused grid is a configuration problem, not a verdict
        Err(e @ Error::GridTooSmall { .. }) => return Err(e),
        Err(e) => entry.error = Some(e.to_string()),
    }
    if cfg.fit {
        match fit_claim(claim, convention, pipeline, cfg) {
            Ok(f) => entry.fit = Some(f),
            Err(e) => {
                entry.error.get_or_insert_with(|| format!("fit: {e}"));
            }
        }
    }
    Ok(entry)
}

/// Runs every selected claim under every applicable convention and pipeline.
///
/// Entries are ordered by claim, convention, then pipeline, so equal configs
/// give byte-identical reports.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let mut claims: Vec<ClaimId> = cfg.claims.clone();
    claims.sort();
    claims.dedup();
    let mut entries = Vec::new();
    let mut summary = Vec::new();
    for &claim in &claims {
        let mut holding = Vec::new();
        let mut agree = true;
        for convention in cfg.conventions(claim) {
            let mut statuses = Vec::new();
            for &pipeline in claim.pipelines() {
                let e = run_entry(claim, convention, pipeline, cfg)?;
                if e.primary && e.status == EntryStatus::Holds {
                    holding.push(e.convention.clone());
                }
                statuses.push(e.status);
                entries.push(e);
            }
            agree &= statuses.windows(2).all(|w| w[0] == w[1]);
        }
        summary.push(ClaimSummary { id: claim, holds_as_stated: !holding.is_empty(), holding_conventions: holding, pipelines_agree: agree });
    }
    Ok(VerificationReport {
        engine_version: ENGINE_VERSION,
        config: cfg.clone(),
        metadata: METADATA,
        claims: entries,
        summary,
    })
}
