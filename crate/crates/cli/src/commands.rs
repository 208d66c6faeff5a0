use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use gkdim_core::freealg::{identity_templates, verify_identity, IdentityReport, SkippedTemplate};
use gkdim_core::oracle::{component_dimension, ComponentDimension};
use gkdim_core::spanning::{
    compare_counts, count_spanning, expected_gk, gk_estimate, growth_table, hilbert_coeffs, Confidence,
    GkEstimate, GrowthTable, HilbertMode, HilbertTable, Reconciliation,
};
use gkdim_core::{FieldSpec, FreePoly, MultiDegree, RelativelyFree};

use crate::config::{Format, RunConfig};

/// What a command hands back to `main`: rendered output and exit status.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

/// Failure before any result exists: bad arguments or parameters.
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Run = Result<Outcome, UsageError>;

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

/// The serialized spelling of a unit-like enum, e.g. `PASS` or `HIGH`.
fn label<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|j| j.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn field(cfg: &RunConfig) -> Result<FieldSpec, UsageError> {
    Ok(FieldSpec::new(cfg.characteristic)?)
}

fn algebra(cfg: &RunConfig) -> Result<RelativelyFree, UsageError> {
    Ok(RelativelyFree::new(cfg.grading, field(cfg)?, cfg.m)?.with_ek_bound(cfg.ek_bound))
}

#[derive(Serialize)]
struct CountReport<'a> {
    config: &'a RunConfig,
    growth: GrowthTable,
    hilbert: HilbertTable,
    reconciliation: Reconciliation,
}

pub fn count(cfg: &RunConfig, multivariate: bool) -> Run {
    let rf = algebra(cfg)?;
    let tmax = cfg.tmax.unwrap_or(30);
    let mode = if multivariate { HilbertMode::Multivariate } else { HilbertMode::Univariate };
    let report = CountReport {
        config: cfg,
        growth: growth_table(&rf, tmax),
        hilbert: hilbert_coeffs(&rf, tmax, mode),
        reconciliation: compare_counts(&rf, tmax),
    };
    let text = if cfg.latex {
        report.growth.to_latex()
    } else {
        match (cfg.format, multivariate) {
            (Format::Json, _) => json(&report),
            (Format::Csv, false) => report.growth.to_csv(),
            (Format::Csv, true) => report.hilbert.to_csv(),
        }
    };
    Ok(Outcome { text, code: 0 })
}

#[derive(Serialize)]
struct GkReport<'a> {
    config: &'a RunConfig,
    estimate: GkEstimate,
    expected: u32,
    status: &'static str,
    growth: GrowthTable,
}

pub fn gk(cfg: &RunConfig) -> Run {
    let rf = algebra(cfg)?;
    let growth = growth_table(&rf, cfg.tmax.unwrap_or(30));
    let estimate = gk_estimate(&growth, cfg.window.unwrap_or(8))?;
    let expected = expected_gk(rf.grading, rf.field, rf.m);
    let matched = estimate.degree == expected && estimate.confidence == Confidence::High;
    let report = GkReport {
        config: cfg,
        status: if matched { "MATCH" } else { "MISMATCH" },
        estimate,
        expected,
        growth,
    };
    let text = match cfg.format {
        Format::Json => json(&report),
        Format::Csv => format!(
            "grading,char,m,tmax,window,estimate,confidence,expected,status\n{},{},{},{},{},{},{},{},{}\n",
            cfg.grading.cli_name(),
            cfg.characteristic,
            cfg.m,
            cfg.tmax.unwrap_or(30),
            report.estimate.window,
            report.estimate.degree,
            label(&report.estimate.confidence),
            report.expected,
            report.status
        ),
    };
    Ok(Outcome {
        text,
        code: if matched { 0 } else { 1 },
    })
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    config: &'a RunConfig,
    all_pass: bool,
    reports: Vec<IdentityReport>,
    skipped: Vec<SkippedTemplate>,
}

pub fn verify(cfg: &RunConfig) -> Run {
    let f = field(cfg)?;
    let set = identity_templates(cfg.grading, f, cfg.m)?;
    let mut polys: Vec<(String, FreePoly)> = set.templates.into_iter().map(|t| (t.name, t.poly)).collect();
    for src in &cfg.extra {
        polys.push((format!("extra {src}"), FreePoly::parse(f, src)?));
    }
    let n = cfg.n.unwrap_or(12);
    let trials = cfg.trials.unwrap_or(100);
    let mut reports = Vec::with_capacity(polys.len());
    for (name, poly) in &polys {
        let mut r = verify_identity(poly, cfg.grading, f, n, trials, cfg.seed)?;
        r.template = name.clone();
        reports.push(r);
    }
    let all_pass = reports.iter().all(IdentityReport::passed);
    for r in reports.iter().filter(|r| !r.passed()) {
        if let Some(w) = &r.witness {
            let vals: Vec<String> = w.assignment.iter().map(|(v, x)| format!("{v} = {x}")).collect();
            eprintln!("FAIL {} at trial {}: {}; value {}", r.template, w.trial, vals.join(", "), w.value);
        }
    }
    let report = VerifyReport {
        config: cfg,
        all_pass,
        reports,
        skipped: set.skipped,
    };
    let text = match cfg.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = String::from("template,status,failing_trial\n");
            for r in &report.reports {
                let trial = r.witness.as_ref().map(|w| w.trial.to_string()).unwrap_or_default();
                let _ = writeln!(s, "\"{}\",{},{}", r.template, label(&r.status), trial);
            }
            s
        }
    };
    Ok(Outcome {
        text,
        code: if all_pass { 0 } else { 1 },
    })
}

#[derive(Serialize)]
struct TotalRow {
    t: u32,
    lower: usize,
    upper: usize,
    spanning: u128,
    exact: bool,
}

#[derive(Serialize)]
struct RankReport<'a> {
    config: &'a RunConfig,
    all_exact: bool,
    /// Every total's bucket uppers add up to the spanning count.
    consistent: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    totals: Vec<TotalRow>,
    components: Vec<ComponentDimension>,
}

pub fn rank(cfg: &RunConfig) -> Run {
    let rf = algebra(cfg)?;
    let mut degrees: Vec<MultiDegree> = cfg.multidegrees.clone();
    if let Some(t) = cfg.total {
        degrees.extend((0..=t).flat_map(|s| MultiDegree::all_of_total(cfg.m, s)));
    }
    if degrees.is_empty() {
        return Err(UsageError("rank needs --total or at least one --multidegree".into()));
    }
    let cap = cfg.max_word_total.unwrap_or(8);
    if let Some(d) = degrees.iter().find(|d| d.total() > cap) {
        return Err(UsageError(format!(
            "multidegree of total {} exceeds --max-word-total {cap}",
            d.total()
        )));
    }
    if let Some(d) = degrees.iter().find(|d| d.m() != cfg.m) {
        return Err(UsageError(format!("multidegree has {} variables of each kind, --m is {}", d.m(), cfg.m)));
    }
    let points = cfg.points.unwrap_or(gkdim_core::oracle::DEFAULT_POINT_BUDGET);
    let components = degrees
        .par_iter()
        .map(|d| component_dimension(&rf, d, cfg.n, points, cfg.seed))
        .collect::<Result<Vec<_>, _>>()?;
    let all_exact = components.iter().all(|c| c.exact);
    let mut totals = Vec::new();
    if let Some(tmax) = cfg.total {
        for t in 0..=tmax {
            let (lower, upper) = components
                .iter()
                .filter(|c| c.multidegree.total() == t)
                .fold((0, 0), |(l, u), c| (l + c.lower, u + c.upper));
            totals.push(TotalRow {
                t,
                lower,
                upper,
                spanning: count_spanning(&rf, t),
                exact: lower == upper,
            });
        }
    }
    let consistent = totals.iter().all(|r| r.upper as u128 == r.spanning);
    for c in components.iter().filter(|c| !c.exact) {
        eprintln!(
            "inexact y{:?} z{:?}: lower {} upper {}",
            c.multidegree.y, c.multidegree.z, c.lower, c.upper
        );
    }
    let report = RankReport {
        config: cfg,
        all_exact,
        consistent,
        totals,
        components,
    };
    let text = match cfg.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut head: Vec<String> = (1..=cfg.m).map(|i| format!("y{i}")).collect();
            head.extend((1..=cfg.m).map(|i| format!("z{i}")));
            head.extend(["lower", "upper", "exact", "n", "points"].map(String::from));
            let mut s = head.join(",") + "\n";
            for c in &report.components {
                let cells: Vec<String> = c.multidegree.y.iter().chain(&c.multidegree.z).map(u32::to_string).collect();
                let _ = writeln!(s, "{},{},{},{},{},{}", cells.join(","), c.lower, c.upper, c.exact, c.n, c.points);
            }
            s
        }
    };
    let failed = !consistent || (cfg.strict && !all_exact);
    Ok(Outcome {
        text,
        code: if failed { 1 } else { 0 },
    })
}
