//! Growth tables, Hilbert coefficients and GK-dimension detection.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::closed_form::{closed_form_count, compare_counts, ReconciliationRow};
use super::count::count_spanning;
use super::enumerate::enumerate_spanning;
use super::{EkBound, RelativelyFree};
use crate::error::{Error, Result};
use crate::freealg::MultiDegree;
use crate::grassmann::GradingSpec;
use crate::scalar::FieldSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub t: u32,
    pub per_degree: u128,
    pub cumulative: u128,
    pub closed_form: i128,
    pub delta: i128,
}

/// Spanning-set counts by total degree with their partial sums, next to the
/// printed formula values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthTable {
    pub grading: GradingSpec,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ek_bound: Option<EkBound>,
    pub rows: Vec<GrowthRow>,
}

pub const CSV_HEADER: &str = "t,per_degree,cumulative,closed_form,delta";

impl GrowthTable {
    /// A table over given per-degree counts (closed-form columns zero).
    pub fn from_counts(grading: GradingSpec, field: FieldSpec, m: usize, per_degree: &[u128]) -> Self {
        let mut acc = 0;
        let rows = per_degree
            .iter()
            .enumerate()
            .map(|(t, &c)| {
                acc += c;
                GrowthRow {
                    t: t as u32,
                    per_degree: c,
                    cumulative: acc,
                    closed_form: 0,
                    delta: -(c as i128),
                }
            })
            .collect();
        GrowthTable {
            grading,
            characteristic: field.characteristic(),
            m,
            ek_bound: None,
            rows,
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn per_degree(&self) -> Vec<u128> {
        self.rows.iter().map(|r| r.per_degree).collect()
    }

    pub fn cumulative(&self) -> Vec<u128> {
        self.rows.iter().map(|r| r.cumulative).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{},{},{}", r.t, r.per_degree, r.cumulative, r.closed_form, r.delta);
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    /// A LaTeX `tabular` block of the table.
    pub fn to_latex(&self) -> String {
        let mut s = String::from("\\begin{tabular}{rrrrr}\n\\hline\n");
        s.push_str("$t$ & per degree & cumulative & closed form & $\\Delta$ \\\\\n\\hline\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{} & {} & {} & {} & {} \\\\",
                r.t, r.per_degree, r.cumulative, r.closed_form, r.delta
            );
        }
        s.push_str("\\hline\n\\end{tabular}\n");
        s
    }
}

/// Counts for `t = 0..=t_max`, computed in parallel by degree.
pub fn growth_table(rf: &RelativelyFree, t_max: u32) -> GrowthTable {
    let counts: Vec<(u128, i128)> = (0..=t_max)
        .into_par_iter()
        .map(|t| (count_spanning(rf, t), closed_form_count(rf, t)))
        .collect();
    let mut acc = 0u128;
    let rows = counts
        .into_iter()
        .enumerate()
        .map(|(t, (c, cf))| {
            acc += c;
            GrowthRow {
                t: t as u32,
                per_degree: c,
                cumulative: acc,
                closed_form: cf,
                delta: cf - c as i128,
            }
        })
        .collect();
    GrowthTable {
        grading: rf.grading,
        characteristic: rf.field.characteristic(),
        m: rf.m,
        ek_bound: matches!(rf.grading, GradingSpec::K(_)).then_some(rf.ek_bound),
        rows,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Confidence {
    High,
    Low,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GkEstimate {
    pub degree: u32,
    pub confidence: Confidence,
    pub window: usize,
    /// The sequence whose polynomial degree is measured.
    pub sequence: &'static str,
}

/// Polynomial degree of the tail of the cumulative growth sequence.
///
/// Takes the last `window` cumulative values and differences them until the
/// result vanishes identically on at least two values; vanishing at order `r`
/// means degree `r − 1`. If no order up to `window − 2` vanishes the
/// confidence is `Low` and the degree reported is the largest order tried.
pub fn gk_estimate(table: &GrowthTable, window: usize) -> Result<GkEstimate> {
    if window > table.len() {
        return Err(Error::WindowTooLarge {
            window,
            len: table.len(),
        });
    }
    if window < 2 {
        return Err(Error::Invalid("window must cover at least two degrees".into()));
    }
    let cumulative = table.cumulative();
    let mut seq: Vec<i128> = cumulative[cumulative.len() - window..]
        .iter()
        .map(|&v| v as i128)
        .collect();
    for order in 0..=window - 2 {
        if seq.iter().all(|&v| v == 0) {
            return Ok(GkEstimate {
                degree: order.saturating_sub(1) as u32,
                confidence: Confidence::High,
                window,
                sequence: "cumulative",
            });
        }
        seq = seq.windows(2).map(|w| w[1] - w[0]).collect();
    }
    Ok(GkEstimate {
        degree: (window - 2) as u32,
        confidence: Confidence::Low,
        window,
        sequence: "cumulative",
    })
}

/// The GK dimension predicted for the relatively-free algebra in `m`
/// variables of each kind.
pub fn expected_gk(grading: GradingSpec, field: FieldSpec, m: usize) -> u32 {
    let m = m as u32;
    match (grading, field.prime()) {
        (GradingSpec::Infinity, None) => 2 * m,
        _ => m,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HilbertMode {
    Univariate,
    Multivariate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiHilbertRow {
    pub multidegree: MultiDegree,
    pub dimension: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum HilbertTable {
    Univariate { rows: Vec<ReconciliationRow> },
    Multivariate { rows: Vec<MultiHilbertRow> },
}

impl HilbertTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        match self {
            HilbertTable::Univariate { rows } => {
                s.push_str("t,coefficient,closed_form,delta\n");
                for r in rows {
                    let _ = writeln!(s, "{},{},{},{}", r.t, r.enumerator, r.closed_form, r.delta);
                }
            }
            HilbertTable::Multivariate { rows } => {
                let m = rows.first().map_or(0, |r| r.multidegree.m());
                let mut head: Vec<String> = (1..=m).map(|i| format!("y{i}")).collect();
                head.extend((1..=m).map(|i| format!("z{i}")));
                head.push("dimension".into());
                s.push_str(&head.join(","));
                s.push('\n');
                for r in rows {
                    let cells: Vec<String> = r
                        .multidegree
                        .y
                        .iter()
                        .chain(&r.multidegree.z)
                        .map(u32::to_string)
                        .chain([r.dimension.to_string()])
                        .collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
            }
        }
        s
    }
}

/// Hilbert series coefficients up to `t_max`: by total degree (with the
/// printed coefficient alongside) or by multidegree (nonzero buckets only).
pub fn hilbert_coeffs(rf: &RelativelyFree, t_max: u32, mode: HilbertMode) -> HilbertTable {
    match mode {
        HilbertMode::Univariate => HilbertTable::Univariate {
            rows: compare_counts(rf, t_max).rows,
        },
        HilbertMode::Multivariate => {
            let mut buckets: BTreeMap<MultiDegree, u128> = BTreeMap::new();
            for t in 0..=t_max {
                for mono in enumerate_spanning(rf, t) {
                    *buckets.entry(mono.multidegree()).or_default() += 1;
                }
            }
            let mut rows: Vec<_> = buckets
                .into_iter()
                .map(|(multidegree, dimension)| MultiHilbertRow { multidegree, dimension })
                .collect();
            rows.sort_by(|a, b| {
                a.multidegree
                    .total()
                    .cmp(&b.multidegree.total())
                    .then_with(|| b.multidegree.cmp(&a.multidegree))
            });
            HilbertTable::Multivariate { rows }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(g: GradingSpec, p: u64, m: usize) -> RelativelyFree {
        RelativelyFree::new(g, FieldSpec::new(p).unwrap(), m).unwrap()
    }

    #[test]
    fn infinity_growth() {
        let t = growth_table(&rf(GradingSpec::Infinity, 0, 1), 6);
        assert_eq!(t.per_degree(), vec![1, 2, 4, 6, 8, 10, 12]);
        assert!(t.cumulative().windows(2).all(|w| w[0] <= w[1]));
        assert!(t.to_csv().starts_with("t,per_degree,cumulative,closed_form,delta\n0,1,1,"));
    }

    #[test]
    fn one_odd_generator_growth_is_eventually_three() {
        let t = growth_table(&rf(GradingSpec::KStar(1), 0, 1), 8);
        assert!(t.per_degree()[2..].iter().all(|&c| c == 3));
    }

    #[test]
    fn gk_examples() {
        let t = growth_table(&rf(GradingSpec::Infinity, 0, 1), 30);
        let e = gk_estimate(&t, 8).unwrap();
        assert_eq!((e.degree, e.confidence), (2, Confidence::High));
        let t = growth_table(&rf(GradingSpec::KStar(2), 0, 2), 40);
        assert_eq!(gk_estimate(&t, 8).unwrap().degree, 2);
        let flat = GrowthTable::from_counts(GradingSpec::Infinity, FieldSpec::RATIONALS, 1, &[1, 0, 0, 0, 0]);
        assert_eq!(gk_estimate(&flat, 4).unwrap().degree, 0);
        assert!(matches!(gk_estimate(&flat, 6), Err(Error::WindowTooLarge { .. })));
    }

    #[test]
    fn low_confidence_when_window_too_short() {
        let cubes: Vec<u128> = (0..10u128).map(|t| t * t * t).collect();
        let t = GrowthTable::from_counts(GradingSpec::Infinity, FieldSpec::RATIONALS, 1, &cubes);
        assert_eq!(gk_estimate(&t, 4).unwrap().confidence, Confidence::Low);
    }

    #[test]
    fn hilbert_modes() {
        let r = rf(GradingSpec::Infinity, 0, 1);
        let HilbertTable::Univariate { rows } = hilbert_coeffs(&r, 4, HilbertMode::Univariate) else {
            panic!()
        };
        assert_eq!(rows.iter().map(|r| r.enumerator).collect::<Vec<_>>(), vec![1, 2, 4, 6, 8]);
        let HilbertTable::Multivariate { rows } = hilbert_coeffs(&r, 2, HilbertMode::Multivariate) else {
            panic!()
        };
        let yz = rows
            .iter()
            .find(|r| r.multidegree == MultiDegree::new(vec![1], vec![1]).unwrap())
            .unwrap();
        assert_eq!(yz.dimension, 2);
        let HilbertTable::Univariate { rows } = hilbert_coeffs(&r, 0, HilbertMode::Univariate) else {
            panic!()
        };
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].enumerator, 1);
    }

    #[test]
    fn latex_block() {
        let t = growth_table(&rf(GradingSpec::K(1), 0, 1), 2);
        let s = t.to_latex();
        assert!(s.starts_with("\\begin{tabular}"));
        assert_eq!(s.matches("\\\\").count(), 4);
    }
}
