//! Evaluation-rank oracle.
//!
//! Evaluating polynomials at graded points of `E(n)` gives lower bounds on the
//! dimension of a component of the relatively free algebra: whatever is
//! independent after evaluation is independent modulo the identities. The
//! spanning-set count is the matching upper bound.

mod fast;
mod matrix;
mod points;

pub use matrix::{evaluation_matrix, kernel, rank, EvalMatrix};
pub use points::{
    default_truncation, make_points, random_point, scheduled_point, structured_point, structured_requirement,
    EvaluationPoint, Provenance, RANDOM_DENSITY, STRUCTURED_POINTS,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::freealg::{FreePoly, GradedVariable, MultiDegree, Word};
use crate::grassmann::{GradingSpec, MAX_TRUNCATION};
use crate::scalar::{FieldSpec, Scalar};
use crate::spanning::{enumerate_multidegree, CanonicalMonomial, RelativelyFree};
use fast::Ring;
use matrix::Echelon;

/// Points evaluated per component unless the caller says otherwise.
pub const DEFAULT_POINT_BUDGET: usize = 12;

/// Random points in a row that must leave the rank unchanged before the
/// oracle stops.
pub const STABLE_ROUNDS: usize = 3;

/// All words of multidegree `d`, in lexicographic order.
pub fn words_of_multidegree(d: &MultiDegree) -> Vec<Word> {
    let m = d.m();
    let mut letters: Vec<(GradedVariable, u32)> = (0..m)
        .map(|i| (GradedVariable::y(i as u32 + 1), d.y[i]))
        .chain((0..m).map(|i| (GradedVariable::z(i as u32 + 1), d.z[i])))
        .filter(|(_, e)| *e > 0)
        .collect();
    letters.sort();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(letters: &mut [(GradedVariable, u32)], current: &mut Vec<GradedVariable>, out: &mut Vec<Word>) {
        if letters.iter().all(|(_, e)| *e == 0) {
            out.push(Word(current.clone()));
            return;
        }
        for i in 0..letters.len() {
            if letters[i].1 == 0 {
                continue;
            }
            letters[i].1 -= 1;
            current.push(letters[i].0);
            go(letters, current, out);
            current.pop();
            letters[i].1 += 1;
        }
    }
    go(&mut letters, &mut current, &mut out);
    out
}

/// Lower and upper bounds on one multihomogeneous component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentDimension {
    pub grading: GradingSpec,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub m: usize,
    pub multidegree: MultiDegree,
    /// Rank of all words of the multidegree at the evaluated points.
    pub lower: usize,
    /// Size of the canonical spanning set in the multidegree.
    pub upper: usize,
    pub exact: bool,
    pub n: usize,
    pub points: usize,
    pub seed: u64,
}

fn resolve_truncation(g: GradingSpec, d: &MultiDegree, n: Option<usize>) -> Result<usize> {
    let need = structured_requirement(g, d);
    let n = match n {
        Some(n) if n < need => {
            return Err(Error::TruncationOverflow {
                required: need,
                available: n,
            })
        }
        Some(n) => n,
        None => default_truncation(g, d).min(MAX_TRUNCATION).max(need),
    };
    if n > MAX_TRUNCATION {
        return Err(Error::TruncationOverflow {
            required: n,
            available: MAX_TRUNCATION,
        });
    }
    Ok(n)
}

/// Bounds the dimension of the component of multidegree `d`.
///
/// Structured points come first, then random points until the rank has not
/// moved for [`STABLE_ROUNDS`] points, every word is independent, or
/// `budget` points are spent. With `n = None` the truncation defaults to
/// `2·t·m + k + 8`, raised if the structured points need more.
pub fn component_dimension(
    rf: &RelativelyFree,
    d: &MultiDegree,
    n: Option<usize>,
    budget: usize,
    seed: u64,
) -> Result<ComponentDimension> {
    if d.m() != rf.m {
        return Err(Error::Invalid(format!(
            "multidegree has {} variables of each kind, algebra has {}",
            d.m(),
            rf.m
        )));
    }
    let g = rf.grading;
    let n = resolve_truncation(g, d, n)?;
    let upper = enumerate_multidegree(rf, d).len();
    let ring = Ring::new(rf.field.prime());
    let mut echelon = Echelon::new(rf.field);
    let mut used = 0;
    let mut stable = 0;
    for i in 0..budget.max(STRUCTURED_POINTS) {
        let pt = scheduled_point(g, rf.field, d, n, seed, i)?;
        let images = fast::word_images(ring, &pt.assignment, d)?;
        let columns = images.len();
        let before = echelon.rank();
        fast::absorb(ring, &mut echelon, &images);
        used += 1;
        if echelon.rank() == columns {
            break;
        }
        if i >= STRUCTURED_POINTS {
            stable = if echelon.rank() == before { stable + 1 } else { 0 };
            if stable >= STABLE_ROUNDS {
                break;
            }
        }
    }
    let lower = echelon.rank();
    Ok(ComponentDimension {
        grading: g,
        characteristic: rf.field.characteristic(),
        m: rf.m,
        multidegree: d.clone(),
        lower,
        upper,
        exact: lower == upper,
        n,
        points: used,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub rank: usize,
    pub columns: usize,
    pub independent: bool,
    /// First null vector of the evaluation matrix, first nonzero entry 1.
    pub kernel: Option<Vec<Scalar>>,
    pub n: usize,
    pub points: usize,
}

/// Componentwise maximum of the multidegrees of the words of `polys`.
fn covering_multidegree(polys: &[FreePoly]) -> Result<MultiDegree> {
    let m = polys
        .iter()
        .map(|f| {
            let (a, b) = f.max_indices();
            a.max(b)
        })
        .max()
        .unwrap_or(0)
        .max(1) as usize;
    let mut d = MultiDegree::zero(m);
    for f in polys {
        for (w, _) in f.terms() {
            let e = w.multidegree(m)?;
            for i in 0..m {
                d.y[i] = d.y[i].max(e.y[i]);
                d.z[i] = d.z[i].max(e.z[i]);
            }
        }
    }
    Ok(d)
}

/// Tests whether `polys` stay independent after evaluation at `points`
/// scheduled points. Independence is certified; a kernel vector is only
/// evidence of dependence.
pub fn independence_check(
    polys: &[FreePoly],
    g: GradingSpec,
    field: FieldSpec,
    n: Option<usize>,
    points: usize,
    seed: u64,
) -> Result<IndependenceReport> {
    if let Some(f) = polys.iter().find(|f| f.field() != field) {
        return Err(Error::FieldMismatch {
            left: field.characteristic(),
            right: f.field().characteristic(),
        });
    }
    let d = covering_multidegree(polys)?;
    let n = resolve_truncation(g, &d, n)?;
    let pts = make_points(g, field, &d, n, points.max(STRUCTURED_POINTS), seed)?;
    let mx = evaluation_matrix(polys, &pts, g)?;
    let r = rank(&mx);
    let independent = r == polys.len();
    let kernel = if independent { None } else { kernel(&mx).into_iter().next() };
    Ok(IndependenceReport {
        rank: r,
        columns: polys.len(),
        independent,
        kernel,
        n,
        points: pts.len(),
    })
}

/// [`independence_check`] on canonical monomials.
pub fn monomials_independent(
    monos: &[CanonicalMonomial],
    g: GradingSpec,
    field: FieldSpec,
    n: Option<usize>,
    points: usize,
    seed: u64,
) -> Result<IndependenceReport> {
    let polys = monos.iter().map(|c| c.to_free_poly(field)).collect::<Result<Vec<_>>>()?;
    independence_check(&polys, g, field, n, points, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(y: &[u32], z: &[u32]) -> MultiDegree {
        MultiDegree::new(y.to_vec(), z.to_vec()).unwrap()
    }

    fn rf(g: GradingSpec, p: u64, m: usize) -> RelativelyFree {
        RelativelyFree::new(g, FieldSpec::new(p).unwrap(), m).unwrap()
    }

    #[test]
    fn word_list_is_sorted_multiset_permutations() {
        let ws = words_of_multidegree(&md(&[1, 0], &[2, 0]));
        let (y1, z1) = (GradedVariable::y(1), GradedVariable::z(1));
        assert_eq!(ws, vec![Word(vec![y1, z1, z1]), Word(vec![z1, y1, z1]), Word(vec![z1, z1, y1])]);
        assert_eq!(ws.len(), 3);
        let mut sorted = ws.clone();
        sorted.sort();
        assert_eq!(sorted, ws);
    }

    #[test]
    fn dependency_between_two_orders() {
        let f = FieldSpec::RATIONALS;
        let polys: Vec<FreePoly> = ["z1z2", "[z1,z2]", "z2z1"]
            .iter()
            .map(|s| FreePoly::parse(f, s).unwrap())
            .collect();
        let rep = independence_check(&polys, GradingSpec::Infinity, f, Some(20), 4, 1).unwrap();
        assert_eq!(rep.rank, 2);
        assert_eq!(rep.kernel, Some(vec![f.one(), f.from_i64(-1), f.from_i64(-1)]));
    }

    #[test]
    fn small_components_are_exact() {
        for g in [GradingSpec::KStar(1), GradingSpec::Infinity, GradingSpec::K(1)] {
            for p in [0, 3] {
                let r = rf(g, p, 1);
                for t in 0..=4 {
                    for d in MultiDegree::all_of_total(1, t) {
                        let c = component_dimension(&r, &d, None, DEFAULT_POINT_BUDGET, 7).unwrap();
                        assert!(c.exact, "{g} char {p} {d:?}: {} < {}", c.lower, c.upper);
                    }
                }
            }
        }
    }

    #[test]
    fn fast_rank_matches_general_route() {
        let r = rf(GradingSpec::K(2), 0, 2);
        let d = md(&[1, 1], &[1, 0]);
        let n = default_truncation(r.grading, &d);
        let pts = make_points(r.grading, r.field, &d, n, 3, 5).unwrap();
        let polys: Vec<FreePoly> = words_of_multidegree(&d).into_iter().map(|w| FreePoly::word(r.field, w)).collect();
        let general = rank(&evaluation_matrix(&polys, &pts, r.grading).unwrap());
        let mut e = Echelon::new(r.field);
        let ring = Ring::new(None);
        for pt in &pts {
            fast::absorb(ring, &mut e, &fast::word_images(ring, &pt.assignment, &d).unwrap());
        }
        assert_eq!(e.rank(), general);
    }

    #[test]
    fn undersized_truncation_is_reported() {
        let r = rf(GradingSpec::Infinity, 0, 2);
        let d = md(&[2, 1], &[1, 1]);
        match component_dimension(&r, &d, Some(4), 4, 0) {
            Err(Error::TruncationOverflow { required, available }) => {
                assert_eq!(available, 4);
                assert!(required > 4);
            }
            other => panic!("{other:?}"),
        }
    }
}
