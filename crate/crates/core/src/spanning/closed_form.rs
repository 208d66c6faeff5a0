//! The printed closed-form dimension formulas, evaluated literally under the
//! binomial convention of [`binomial`]. They are compared against the
//! enumerator, never used in its place.

use serde::Serialize;

use super::count::{binomial, count_spanning, kappa};
use super::{EkBound, RelativelyFree};
use crate::grassmann::GradingSpec;

/// Which pair of formulas applies: the `a + b` pair (characteristic 0, or
/// `p > k` for the finite gradings) or the `c + d` pair with `κ` in place of
/// the free `z` counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClosedFormFamily {
    #[serde(rename = "a+b")]
    AB,
    #[serde(rename = "c+d")]
    CD,
}

impl ClosedFormFamily {
    pub fn select(rf: &RelativelyFree) -> Self {
        match (rf.grading, rf.field.prime()) {
            (_, None) => ClosedFormFamily::AB,
            (GradingSpec::Infinity, Some(_)) => ClosedFormFamily::CD,
            (GradingSpec::KStar(k) | GradingSpec::K(k), Some(p)) => {
                if p > k as u64 {
                    ClosedFormFamily::AB
                } else {
                    ClosedFormFamily::CD
                }
            }
        }
    }
}

fn c(a: i64, b: i64) -> i128 {
    binomial(a, b)
}

/// `Σ_{l=0}^{⌊m/2⌋} C(top, 2l)·inner(l)`.
fn chain_sum(m: i64, top: i64, inner: impl Fn(i64) -> i128) -> i128 {
    (0..=m / 2).map(|l| c(top, 2 * l) * inner(l)).sum()
}

/// Shared shape of the `E_{k*}` and `E_∞` formulas; `cap` bounds `t₂`.
fn star_like(m: i64, t: i64, cap: Option<i64>, kappa_p: Option<i64>) -> (i128, i128) {
    let mut s1 = 0;
    let mut s2 = 0;
    for t1 in 0..=t {
        let t2 = t - t1;
        if cap.is_some_and(|k| t2 > k) {
            continue;
        }
        let y1 = chain_sum(m, m, |l| c(t1 - 2 * l + m - 1, m - 1));
        let z1 = chain_sum(m, m, |l| match kappa_p {
            None => c(t2 - 2 * l + m - 1, m - 1),
            Some(p) => kappa(t2 - 2 * l, p, m),
        });
        s1 += y1 * z1;
        let y2 = chain_sum(m, m - 1, |l| c(t1 - 2 * l + m - 2, m - 1));
        let z2 = chain_sum(m, m - 1, |l| match kappa_p {
            None => c(t2 - 2 * l + m - 2, m - 1),
            Some(p) => kappa(t2 - 2 * l - 1, p, m),
        });
        s2 += (m * m) as i128 * y2 * z2;
    }
    (s1, s2)
}

fn ek_forms(m: i64, k: i64, t: i64, kappa_p: Option<i64>) -> (i128, i128) {
    let z_count = |n: i64| match kappa_p {
        None => c(n + m - 1, m - 1),
        Some(p) => kappa(n, p, m - 1),
    };
    let mut even = 0;
    let mut odd = 0;
    for t1 in 0..=t {
        let t2 = t - t1;
        for l in 0..=k {
            let beta = k - l;
            for s in 0..=m / 2 {
                if t2 - 2 * s > beta {
                    continue;
                }
                if l % 2 == 0 {
                    even += c(m, l) * c(t1 - l + m - 1, m - 1) * c(m, 2 * s) * z_count(t2 - 2 * s);
                } else {
                    odd += c(m, l - 1)
                        * (m * (m - l + 1)) as i128
                        * c(t1 - l + m - 1, m - 1)
                        * c(m - 1, 2 * s)
                        * z_count(t2 - 2 * s);
                }
            }
        }
    }
    (even, odd)
}

/// The two printed summands (shape-1 count, shape-2 count) at degree `t`.
pub fn closed_form_parts(rf: &RelativelyFree, t: u32) -> (i128, i128) {
    let m = rf.m as i64;
    let t = t as i64;
    let kp = match ClosedFormFamily::select(rf) {
        ClosedFormFamily::AB => None,
        ClosedFormFamily::CD => rf.field.prime().map(|p| p as i64),
    };
    match rf.grading {
        GradingSpec::KStar(k) => star_like(m, t, Some(k as i64), kp),
        GradingSpec::Infinity => star_like(m, t, None, kp),
        GradingSpec::K(k) => ek_forms(m, k as i64, t, kp),
    }
}

/// Value of the printed formula pair at degree `t`.
pub fn closed_form_count(rf: &RelativelyFree, t: u32) -> i128 {
    let (a, b) = closed_form_parts(rf, t);
    a + b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReconciliationRow {
    pub t: u32,
    pub enumerator: u128,
    pub closed_form: i128,
    /// `closed_form − enumerator`.
    pub delta: i128,
}

/// Enumerator counts against the printed formulas, degree by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reconciliation {
    pub grading: GradingSpec,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub m: usize,
    pub family: ClosedFormFamily,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ek_bound: Option<EkBound>,
    pub rows: Vec<ReconciliationRow>,
}

impl Reconciliation {
    pub fn mismatches(&self) -> usize {
        self.rows.iter().filter(|r| r.delta != 0).count()
    }
}

pub fn compare_counts(rf: &RelativelyFree, t_max: u32) -> Reconciliation {
    let rows = (0..=t_max)
        .map(|t| {
            let enumerator = count_spanning(rf, t);
            let closed_form = closed_form_count(rf, t);
            ReconciliationRow {
                t,
                enumerator,
                closed_form,
                delta: closed_form - enumerator as i128,
            }
        })
        .collect();
    Reconciliation {
        grading: rf.grading,
        characteristic: rf.field.characteristic(),
        m: rf.m,
        family: ClosedFormFamily::select(rf),
        ek_bound: matches!(rf.grading, GradingSpec::K(_)).then_some(rf.ek_bound),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    fn rf(g: GradingSpec, p: u64, m: usize) -> RelativelyFree {
        RelativelyFree::new(g, FieldSpec::new(p).unwrap(), m).unwrap()
    }

    #[test]
    fn infinity_single_variable_forms() {
        let r = rf(GradingSpec::Infinity, 0, 1);
        for t in 0..10u32 {
            let (a, b) = closed_form_parts(&r, t);
            assert_eq!(a, t as i128 + 1);
            assert_eq!(b, (t as i128 - 1).max(0));
        }
    }

    #[test]
    fn family_selection() {
        assert_eq!(ClosedFormFamily::select(&rf(GradingSpec::KStar(2), 5, 1)), ClosedFormFamily::AB);
        assert_eq!(ClosedFormFamily::select(&rf(GradingSpec::KStar(5), 3, 1)), ClosedFormFamily::CD);
        assert_eq!(ClosedFormFamily::select(&rf(GradingSpec::Infinity, 7, 1)), ClosedFormFamily::CD);
        assert_eq!(ClosedFormFamily::select(&rf(GradingSpec::K(3), 0, 1)), ClosedFormFamily::AB);
    }

    #[test]
    fn kappa_forms_reduce_when_prime_is_large() {
        // with p beyond every degree in range κ(n, p, m) = C(n+m-1, m-1)
        for m in 1..=3i64 {
            for t in 0..12i64 {
                let plain = star_like(m, t, None, None);
                assert_eq!(plain, star_like(m, t, None, Some(101)));
                assert_eq!(star_like(m, t, Some(4), None), star_like(m, t, Some(4), Some(101)));
            }
        }
    }

    #[test]
    fn unit_degree_a_family() {
        for g in [GradingSpec::KStar(2), GradingSpec::Infinity] {
            assert_eq!(closed_form_parts(&rf(g, 0, 2), 0).0, 1);
        }
    }

    #[test]
    fn report_is_complete() {
        let r = compare_counts(&rf(GradingSpec::Infinity, 0, 1), 6);
        assert_eq!(r.rows.len(), 7);
        assert_eq!(r.rows[4].enumerator, 8);
        for row in &r.rows {
            assert_eq!(row.delta, row.closed_form - row.enumerator as i128);
        }
    }
}
