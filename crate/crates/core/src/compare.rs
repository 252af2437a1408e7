//! Named families for the command line, generating-function comparisons and
//! expansion tables.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{
    bateman_gf, bateman_n, jacobi_2f1_u, jacobi_2f1_v, jacobi_gf_closed, jacobi_gf_f4, jacobi_sum, jacobi_uv,
    legendre_gf, legendre_gf_plus, legendre_ka, legendre_sum, BatemanHalfPower, Convention, LegendreDenominator,
};
use crate::scalar::{int, poch};
use crate::{Params, Poly, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    JacobiSum,
    JacobiUv,
    Jacobi2f1u,
    Jacobi2f1v,
    LegendreSum,
    LegendreKa,
    Bateman,
}

impl FamilyId {
    pub const ALL: [FamilyId; 7] = [
        FamilyId::JacobiSum,
        FamilyId::JacobiUv,
        FamilyId::Jacobi2f1u,
        FamilyId::Jacobi2f1v,
        FamilyId::LegendreSum,
        FamilyId::LegendreKa,
        FamilyId::Bateman,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyId::JacobiSum => "jacobi-sum",
            FamilyId::JacobiUv => "jacobi-uv",
            FamilyId::Jacobi2f1u => "jacobi-2f1u",
            FamilyId::Jacobi2f1v => "jacobi-2f1v",
            FamilyId::LegendreSum => "legendre-sum",
            FamilyId::LegendreKa => "legendre-ka",
            FamilyId::Bateman => "bateman",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|f| f.name() == text).ok_or_else(|| Error::Unknown(format!("family `{text}`")))
    }

    /// Degree-`n` member. Bateman polynomials are read off a series of order `n`.
    pub fn build(&self, n: usize, p: &Params, c: &Convention) -> Result<Poly> {
        match self {
            FamilyId::JacobiSum => jacobi_sum(n, p),
            FamilyId::JacobiUv => jacobi_uv(n, p),
            FamilyId::Jacobi2f1u => jacobi_2f1_u(n, p),
            FamilyId::Jacobi2f1v => jacobi_2f1_v(n, p),
            FamilyId::LegendreSum => legendre_sum(n),
            FamilyId::LegendreKa => legendre_ka(n, c.legendre_denominator),
            FamilyId::Bateman => bateman_n(p, c.bateman_halfpower, n, n),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Family groups accepted by `gf-compare`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GfFamily {
    Jacobi,
    Legendre,
    Bateman,
}

impl GfFamily {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "jacobi" => Ok(GfFamily::Jacobi),
            "legendre" => Ok(GfFamily::Legendre),
            "bateman" => Ok(GfFamily::Bateman),
            _ => Err(Error::Unknown(format!("gf family `{text}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GfFamily::Jacobi => "jacobi",
            GfFamily::Legendre => "legendre",
            GfFamily::Bateman => "bateman",
        }
    }

    pub fn representations(&self) -> &'static [&'static str] {
        match self {
            GfFamily::Jacobi => &["sum", "uv", "2f1u", "2f1v", "f4", "closed"],
            GfFamily::Legendre => &["gf", "gf-plus", "ka-corrected", "ka-paper", "sum"],
            GfFamily::Bateman => &["gf-A", "gf-B", "uv-scaled"],
        }
    }
}

/// One representation, either per-degree or as a series read coefficientwise.
enum Source {
    Degree(Box<dyn Fn(usize) -> Result<Poly>>),
    Series(Series),
}

impl Source {
    fn at(&self, n: usize) -> Result<Poly> {
        match self {
            Source::Degree(f) => f(n),
            Source::Series(s) => s.coeff(n as i64).cloned(),
        }
    }
}

fn source(family: GfFamily, rep: &str, p: &Params, order: usize) -> Result<Source> {
    let p = p.clone();
    let src = match (family, rep) {
        (GfFamily::Jacobi, "sum") => Source::Degree(Box::new(move |n| jacobi_sum(n, &p))),
        (GfFamily::Jacobi, "uv") => Source::Degree(Box::new(move |n| jacobi_uv(n, &p))),
        (GfFamily::Jacobi, "2f1u") => Source::Degree(Box::new(move |n| jacobi_2f1_u(n, &p))),
        (GfFamily::Jacobi, "2f1v") => Source::Degree(Box::new(move |n| jacobi_2f1_v(n, &p))),
        (GfFamily::Jacobi, "f4") => Source::Series(jacobi_gf_f4(&p, order)?),
        (GfFamily::Jacobi, "closed") => Source::Series(jacobi_gf_closed(&p, order)?),
        (GfFamily::Legendre, "gf") => Source::Series(legendre_gf(order)?),
        (GfFamily::Legendre, "gf-plus") => Source::Series(legendre_gf_plus(order)?),
        (GfFamily::Legendre, "ka-corrected") => {
            Source::Degree(Box::new(|n| legendre_ka(n, LegendreDenominator::Corrected)))
        }
        (GfFamily::Legendre, "ka-paper") => {
            Source::Degree(Box::new(|n| legendre_ka(n, LegendreDenominator::PaperLiteral)))
        }
        (GfFamily::Legendre, "sum") => Source::Degree(Box::new(legendre_sum)),
        (GfFamily::Bateman, "gf-A") => Source::Series(bateman_gf(&p, BatemanHalfPower::A, order)?),
        (GfFamily::Bateman, "gf-B") => Source::Series(bateman_gf(&p, BatemanHalfPower::B, order)?),
        // P_n / ((1+a)_n (1+b)_n)
        (GfFamily::Bateman, "uv-scaled") => Source::Degree(Box::new(move |n| {
            let scale = poch(&p.one_plus_alpha(), n) * poch(&p.one_plus_beta(), n);
            Ok(jacobi_uv(n, &p)?.scale(&(int(1) / scale)))
        })),
        _ => {
            return Err(Error::Unknown(format!(
                "representation `{rep}` for {} (expected one of {})",
                family.name(),
                family.representations().join(", ")
            )))
        }
    };
    Ok(src)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GfRow {
    pub family: String,
    pub n: usize,
    pub left: String,
    pub right: String,
    pub status: &'static str,
    /// `left - right` in canonical form, when nonzero.
    pub difference: Option<String>,
}

/// Every pair of `reps` at every `n <= n_max`, in pair-major order.
pub fn gf_compare(family: GfFamily, reps: &[String], p: &Params, order: usize, n_max: usize) -> Result<Vec<GfRow>> {
    if n_max > order {
        return Err(Error::Precondition(format!("order {order} is below n-max {n_max}")));
    }
    if reps.len() < 2 {
        return Err(Error::Precondition("gf-compare needs at least two representations".into()));
    }
    let sources: Vec<Source> = reps.iter().map(|r| source(family, r, p, order)).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            for n in 0..=n_max {
                let d = &sources[i].at(n)? - &sources[j].at(n)?;
                rows.push(GfRow {
                    family: family.name().to_string(),
                    n,
                    left: reps[i].clone(),
                    right: reps[j].clone(),
                    status: if d.is_zero() { "equal" } else { "unequal" },
                    difference: (!d.is_zero()).then(|| d.canonical()),
                });
            }
        }
    }
    Ok(rows)
}

pub fn gf_rows_csv(rows: &[GfRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["family", "n", "left", "right", "status", "difference"]).map_err(io)?;
    for r in rows {
        let n = r.n.to_string();
        w.write_record([&r.family, &n, &r.left, &r.right, r.status, r.difference.as_deref().unwrap_or("")])
            .map_err(io)?;
    }
    finish(w)
}

pub fn gf_rows_text(rows: &[GfRow]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&format!("{} n={} {} vs {}: {}", r.family, r.n, r.left, r.right, r.status));
        if let Some(d) = &r.difference {
            out.push_str(&format!("  difference {d}"));
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub family: String,
    pub convention: String,
    pub n: usize,
    pub polynomial: String,
}

/// Expansions of one family for `n = 0..=n_max`.
pub fn table(family: FamilyId, p: &Params, c: &Convention, n_max: usize, fold_w: bool) -> Result<Vec<TableRow>> {
    let convention = match family {
        FamilyId::LegendreKa => format!("legendre-{}", c.legendre_denominator.tag()),
        FamilyId::Bateman => format!("bateman-{}", c.bateman_halfpower.tag()),
        _ => "none".to_string(),
    };
    (0..=n_max)
        .map(|n| {
            let poly = family.build(n, p, c)?;
            Ok(TableRow {
                family: family.name().to_string(),
                convention: convention.clone(),
                n,
                polynomial: if fold_w { poly.canonical_fold_w() } else { poly.canonical() },
            })
        })
        .collect()
}

pub fn table_csv(rows: &[TableRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["family", "convention", "n", "polynomial"]).map_err(io)?;
    for r in rows {
        w.write_record([&r.family, &r.convention, &r.n.to_string(), &r.polynomial]).map_err(io)?;
    }
    finish(w)
}

pub(crate) fn io<E: fmt::Display>(e: E) -> Error {
    Error::Io(e.to_string())
}

pub(crate) fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(io)?;
    String::from_utf8(bytes).map_err(io)
}
