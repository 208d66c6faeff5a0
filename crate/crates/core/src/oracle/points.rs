//! Graded evaluation points for the rank oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freealg::{Assignment, GradedVariable, MultiDegree, VarKind};
use crate::grassmann::{
    random_coefficient, random_homogeneous_with, GeneratorPool, GradingSpec, GrassmannElement,
    Monomial, Parity, MAX_TRUNCATION,
};
use crate::scalar::{FieldSpec, Scalar};

/// Terms per variable at random points.
pub const RANDOM_DENSITY: usize = 3;

/// Structured points tried before random ones.
pub const STRUCTURED_POINTS: usize = 2;

const STRUCTURED_SALT: u64 = 0x5eed_5eed_5eed_5eed;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// Sums of disjoint central pairs sized by the multidegree, plus one odd-length
    /// term per variable, on fresh generators.
    Structured { seed: u64, stream: u64 },
    /// Random parity-correct elements; even variables get a random nonzero constant.
    Random { seed: u64, stream: u64 },
    /// Random parity-correct elements; even variables get the constant 1.
    UnitShifted { seed: u64, stream: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvaluationPoint {
    pub assignment: Assignment,
    pub provenance: Provenance,
}

fn variables(d: &MultiDegree) -> Vec<(GradedVariable, u32)> {
    let m = d.m();
    let ys = (0..m).map(|i| (GradedVariable::y(i as u32 + 1), d.y[i]));
    let zs = (0..m).map(|i| (GradedVariable::z(i as u32 + 1), d.z[i]));
    ys.chain(zs).filter(|(_, e)| *e > 0).collect()
}

/// Generators a structured point for `d` needs under `g`.
pub fn structured_requirement(g: GradingSpec, d: &MultiDegree) -> usize {
    let mut pool = GeneratorPool::new(g, usize::MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let _ = structured_terms(g, FieldSpec::RATIONALS, d, &mut pool, &mut rng);
    pool.required().max(g.k().unwrap_or(0) as usize)
}

type Terms = Vec<(GradedVariable, Vec<(Vec<usize>, Scalar)>)>;

fn structured_terms<R: Rng>(
    g: GradingSpec,
    field: FieldSpec,
    d: &MultiDegree,
    pool: &mut GeneratorPool,
    rng: &mut R,
) -> Terms {
    let scarce = pool.scarce();
    let mut coef = || random_coefficient(field, rng);
    let mut out = Vec::new();
    for (v, deg) in variables(d) {
        let eps = v.parity();
        let mut terms: Vec<(Vec<usize>, Scalar)> = Vec::new();
        // central part: one slot per unit of degree
        for _ in 0..deg {
            match (g, eps) {
                (GradingSpec::Infinity, Parity::Odd) => {
                    terms.push((vec![pool.fresh(Parity::Odd), pool.fresh(Parity::Even)], coef()))
                }
                (GradingSpec::KStar(_) | GradingSpec::Infinity, Parity::Even) => {
                    terms.push((vec![pool.fresh(Parity::Even), pool.fresh(Parity::Even)], coef()))
                }
                (GradingSpec::K(_), Parity::Even) => {
                    terms.push((vec![pool.fresh(Parity::Odd), pool.fresh(Parity::Odd)], coef()))
                }
                (GradingSpec::KStar(_), Parity::Odd) => {
                    for &s in &scarce {
                        terms.push((vec![s, pool.fresh(Parity::Even)], coef()));
                    }
                }
                (GradingSpec::K(_), Parity::Odd) => {
                    for &s in &scarce {
                        terms.push((vec![s, pool.fresh(Parity::Odd)], coef()));
                    }
                }
            }
        }
        // odd-length part
        match (g, eps) {
            (GradingSpec::KStar(_), Parity::Odd) | (GradingSpec::K(_), Parity::Even) => {
                let marker = if eps == Parity::Odd { Parity::Even } else { Parity::Odd };
                let (a, b) = (pool.fresh(marker), pool.fresh(marker));
                for &s in &scarce {
                    terms.push((vec![s, a, b], coef()));
                }
            }
            _ => terms.push((vec![pool.fresh(eps)], coef())),
        }
        out.push((v, terms));
    }
    out
}

fn element(field: FieldSpec, n: usize, terms: &[(Vec<usize>, Scalar)]) -> Result<GrassmannElement> {
    let terms = terms
        .iter()
        .map(|(idx, c)| {
            let mut idx = idx.clone();
            idx.sort();
            Ok((Monomial::from_indices(&idx)?, c.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    GrassmannElement::from_terms(field, n, terms)
}

/// A structured point for multidegree `d`: every variable of positive degree
/// gets one central slot per unit of degree plus an odd-length term, on
/// generators disjoint from every other variable's (the scarce generators
/// `1..=k` of `KStar(k)` and `K(k)` excepted). Even variables also get a
/// random nonzero constant.
pub fn structured_point(
    g: GradingSpec,
    field: FieldSpec,
    d: &MultiDegree,
    n: usize,
    seed: u64,
    stream: u64,
) -> Result<EvaluationPoint> {
    let mut pool = GeneratorPool::new(g, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ STRUCTURED_SALT);
    rng.set_stream(stream);
    let plan = structured_terms(g, field, d, &mut pool, &mut rng);
    let required = pool.required().max(g.k().unwrap_or(0) as usize);
    if required > n {
        return Err(Error::TruncationOverflow {
            required,
            available: n,
        });
    }
    let mut a = Assignment::new(field, n);
    for (v, terms) in plan {
        let mut x = element(field, n, &terms)?;
        if v.kind == VarKind::Y {
            x = x.try_add(&GrassmannElement::scalar(field, n, random_coefficient(field, &mut rng))?)?;
        }
        a.set(v, x);
    }
    Ok(EvaluationPoint {
        assignment: a,
        provenance: Provenance::Structured { seed, stream },
    })
}

/// A random parity-correct point on the variables of positive degree in `d`.
pub fn random_point(
    g: GradingSpec,
    field: FieldSpec,
    d: &MultiDegree,
    n: usize,
    seed: u64,
    stream: u64,
    unit_shift: bool,
) -> Result<EvaluationPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut a = Assignment::new(field, n);
    for (v, _) in variables(d) {
        let mut x = match random_homogeneous_with(field, g, v.parity(), n, RANDOM_DENSITY, &mut rng) {
            Ok(x) => x,
            Err(Error::ImpossibleParity { .. }) => GrassmannElement::zero(field, n)?,
            Err(e) => return Err(e),
        };
        if v.kind == VarKind::Y {
            let c = if unit_shift { field.one() } else { random_coefficient(field, &mut rng) };
            x = x.try_add(&GrassmannElement::scalar(field, n, c)?)?;
        }
        a.set(v, x);
    }
    let provenance = if unit_shift {
        Provenance::UnitShifted { seed, stream }
    } else {
        Provenance::Random { seed, stream }
    };
    Ok(EvaluationPoint { assignment: a, provenance })
}

/// Point number `index` of the schedule: [`STRUCTURED_POINTS`] structured
/// points, then random and structured points alternating. In characteristic
/// `p` every other random point is unit-shifted.
pub fn scheduled_point(
    g: GradingSpec,
    field: FieldSpec,
    d: &MultiDegree,
    n: usize,
    seed: u64,
    index: usize,
) -> Result<EvaluationPoint> {
    if index < STRUCTURED_POINTS {
        return structured_point(g, field, d, n, seed, index as u64);
    }
    let r = (index - STRUCTURED_POINTS) as u64;
    if r % 2 == 1 {
        return structured_point(g, field, d, n, seed, STRUCTURED_POINTS as u64 + r / 2);
    }
    let stream = r / 2;
    random_point(g, field, d, n, seed, stream, field.prime().is_some() && stream % 2 == 1)
}

/// The first `count` points of the schedule for multidegree `d`.
pub fn make_points(
    g: GradingSpec,
    field: FieldSpec,
    d: &MultiDegree,
    n: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<EvaluationPoint>> {
    if n > MAX_TRUNCATION {
        return Err(Error::TruncationOverflow {
            required: n,
            available: MAX_TRUNCATION,
        });
    }
    (0..count).map(|i| scheduled_point(g, field, d, n, seed, i)).collect()
}

/// `2·t·m + k + 8`, raised to what the structured points need.
pub fn default_truncation(g: GradingSpec, d: &MultiDegree) -> usize {
    let base = 2 * d.total() as usize * d.m() + g.k().unwrap_or(0) as usize + 8;
    base.max(structured_requirement(g, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn md(y: &[u32], z: &[u32]) -> MultiDegree {
        MultiDegree::new(y.to_vec(), z.to_vec()).unwrap()
    }

    #[test]
    fn points_are_graded() {
        let d = md(&[2, 1], &[1, 2]);
        for g in [GradingSpec::KStar(2), GradingSpec::Infinity, GradingSpec::K(2)] {
            for p in [0, 5] {
                let f = FieldSpec::new(p).unwrap();
                for pt in make_points(g, f, &d, 40, 6, 3).unwrap() {
                    for (v, x) in &pt.assignment.values {
                        assert!(x.is_homogeneous(g, v.parity()), "{g} {v} {x}");
                    }
                }
            }
        }
    }

    #[test]
    fn structured_odd_images_use_only_scarce_odd_generators() {
        let d = md(&[0], &[2]);
        let pt = structured_point(GradingSpec::KStar(2), q(), &d, 30, 0, 0).unwrap();
        let z = &pt.assignment.values[&GradedVariable::z(1)];
        let odd_support = z.support_mask() & GradingSpec::KStar(2).odd_mask();
        assert!(odd_support.count_ones() <= 2);
        assert_eq!(odd_support & !0b11, 0);
    }

    #[test]
    fn structured_supports_are_disjoint_outside_scarce() {
        let d = md(&[2, 1], &[1, 1]);
        for g in [GradingSpec::KStar(2), GradingSpec::Infinity, GradingSpec::K(2)] {
            let pt = structured_point(g, q(), &d, 48, 0, 0).unwrap();
            let scarce = (1u64 << g.k().unwrap_or(0)) - 1;
            let masks: Vec<u64> = pt.assignment.values.values().map(|x| x.support_mask() & !scarce).collect();
            for i in 0..masks.len() {
                for j in i + 1..masks.len() {
                    assert_eq!(masks[i] & masks[j], 0, "{g}");
                }
            }
        }
    }

    #[test]
    fn fixed_seed_reproduces_points() {
        let d = md(&[1, 1], &[1, 0]);
        let a = make_points(GradingSpec::Infinity, q(), &d, 24, 5, 11).unwrap();
        let b = make_points(GradingSpec::Infinity, q(), &d, 24, 5, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn too_small_truncation_names_requirement() {
        let d = md(&[3, 2], &[2, 2]);
        let need = structured_requirement(GradingSpec::K(2), &d);
        match structured_point(GradingSpec::K(2), q(), &d, need - 1, 0, 0) {
            Err(Error::TruncationOverflow { required, .. }) => assert_eq!(required, need),
            other => panic!("{other:?}"),
        }
        assert!(structured_point(GradingSpec::K(2), q(), &d, need, 0, 0).is_ok());
    }
}
