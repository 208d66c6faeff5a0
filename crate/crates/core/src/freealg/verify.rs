//! Randomized verification that a polynomial vanishes on a graded Grassmann algebra.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{evaluate, Assignment, FreePoly, GradedVariable, VarKind};
use crate::error::{Error, Result};
use crate::grassmann::{
    random_coefficient, random_homogeneous_with, GeneratorPool, GradingSpec, GrassmannElement,
    Monomial, Parity,
};
use crate::scalar::FieldSpec;

/// Terms per variable in the random trials.
pub const RANDOM_DENSITY: usize = 3;

/// Most central pairs given to one variable in the structured trial.
const MAX_PAIRS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub trial: usize,
    pub assignment: BTreeMap<String, GrassmannElement>,
    pub value: GrassmannElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub template: String,
    pub grading: GradingSpec,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Each variable goes to a single generator of its parity, cycling through
/// the generators of that parity in `E(n)`.
fn generator_point(vars: &[GradedVariable], g: GradingSpec, field: FieldSpec, n: usize) -> Result<Assignment> {
    let mut by_parity: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for i in 1..=n {
        by_parity[g.generator_parity(i).bit() as usize].push(i);
    }
    let mut a = Assignment::new(field, n);
    for v in vars {
        let pool = &by_parity[v.parity().bit() as usize];
        let x = if pool.is_empty() {
            GrassmannElement::zero(field, n)?
        } else {
            GrassmannElement::generator(field, n, pool[(v.index as usize - 1) % pool.len()])?
        };
        a.set(*v, x);
    }
    Ok(a)
}

/// Each variable goes to one generator of its parity plus disjoint central
/// pairs of its parity; even variables also get the constant 1.
fn structured_point(vars: &[GradedVariable], g: GradingSpec, field: FieldSpec, n: usize) -> Result<Assignment> {
    let mut pool = GeneratorPool::new(g, n);
    let scarce = pool.scarce();
    let k = scarce.len();
    let per_var = n.saturating_sub(k) / vars.len().max(1);
    let pairs = (per_var.saturating_sub(1) / 2).min(MAX_PAIRS);
    let mut a = Assignment::new(field, n);
    for (slot, v) in vars.iter().enumerate() {
        let eps = v.parity();
        let mut terms: Vec<Vec<usize>> = Vec::new();
        let scarce_here = |j: usize| scarce.get((slot + j) % k.max(1)).copied();
        let single = match g.scarce_parity() {
            Some(sp) if sp == eps => scarce_here(0),
            _ => Some(pool.fresh(eps)),
        };
        terms.extend(single.map(|i| vec![i]));
        for j in 0..pairs {
            let pair = match (eps, g) {
                (Parity::Even, GradingSpec::KStar(_)) => [pool.fresh(Parity::Even), pool.fresh(Parity::Even)],
                (Parity::Even, GradingSpec::K(_)) => [pool.fresh(Parity::Odd), pool.fresh(Parity::Odd)],
                (Parity::Even, GradingSpec::Infinity) => {
                    let q = if j % 2 == 0 { Parity::Even } else { Parity::Odd };
                    [pool.fresh(q), pool.fresh(q)]
                }
                (Parity::Odd, GradingSpec::Infinity) => [pool.fresh(Parity::Odd), pool.fresh(Parity::Even)],
                (Parity::Odd, GradingSpec::KStar(_)) => match scarce_here(j + 1) {
                    Some(s) => [s, pool.fresh(Parity::Even)],
                    None => break,
                },
                (Parity::Odd, GradingSpec::K(_)) => match scarce_here(j + 1) {
                    Some(s) => [s, pool.fresh(Parity::Odd)],
                    None => break,
                },
            };
            let mut pair = pair.to_vec();
            pair.sort();
            terms.push(pair);
        }
        let mut x = GrassmannElement::from_terms(
            field,
            n,
            terms
                .into_iter()
                .filter(|t| t.iter().all(|i| *i <= n))
                .map(|t| Ok((Monomial::from_indices(&t)?, field.one())))
                .collect::<Result<Vec<_>>>()?,
        )?;
        if v.kind == VarKind::Y {
            x = x.try_add(&GrassmannElement::one(field, n)?)?;
        }
        a.set(*v, x);
    }
    Ok(a)
}

fn random_point<R: Rng>(
    vars: &[GradedVariable],
    g: GradingSpec,
    field: FieldSpec,
    n: usize,
    rng: &mut R,
) -> Result<Assignment> {
    let mut a = Assignment::new(field, n);
    for v in vars {
        let mut x = match random_homogeneous_with(field, g, v.parity(), n, RANDOM_DENSITY, rng) {
            Ok(x) => x,
            Err(Error::ImpossibleParity { .. }) => GrassmannElement::zero(field, n)?,
            Err(e) => return Err(e),
        };
        if v.kind == VarKind::Y {
            x = x.try_add(&GrassmannElement::scalar(field, n, random_coefficient(field, rng))?)?;
        }
        a.set(*v, x);
    }
    Ok(a)
}

/// The assignment used by trial `trial`: a generator point, then a structured
/// point, then random homogeneous points drawn from stream `trial` of `seed`.
pub fn trial_point(
    f: &FreePoly,
    g: GradingSpec,
    field: FieldSpec,
    n: usize,
    trial: usize,
    seed: u64,
) -> Result<Assignment> {
    let vars = f.variables();
    match trial {
        0 => generator_point(&vars, g, field, n),
        1 => structured_point(&vars, g, field, n),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            random_point(&vars, g, field, n, &mut rng)
        }
    }
}

/// Evaluates `f` at `trials` graded substitutions into `E(n)` and reports the
/// first one (by trial index) that does not vanish.
pub fn verify_identity(
    f: &FreePoly,
    g: GradingSpec,
    field: FieldSpec,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<IdentityReport> {
    if f.field() != field {
        return Err(Error::FieldMismatch {
            left: f.field().characteristic(),
            right: field.characteristic(),
        });
    }
    let outcomes: Vec<Result<Option<Witness>>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let a = trial_point(f, g, field, n, t, seed)?;
            let value = evaluate(f, &a, g)?;
            Ok((!value.is_zero()).then(|| Witness {
                trial: t,
                assignment: a.values.iter().map(|(v, x)| (v.to_string(), x.clone())).collect(),
                value,
            }))
        })
        .collect();
    let mut witness = None;
    for o in outcomes {
        if let Some(w) = o? {
            witness = Some(w);
            break;
        }
    }
    Ok(IdentityReport {
        template: f.to_string(),
        grading: g,
        characteristic: field.characteristic(),
        n,
        trials,
        seed,
        status: if witness.is_some() { Status::Fail } else { Status::Pass },
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    #[test]
    fn product_of_two_odd_fails_with_generator_witness() {
        let f = FreePoly::parse(q(), "z1z2").unwrap();
        let r = verify_identity(&f, GradingSpec::KStar(2), q(), 12, 20, 7).unwrap();
        assert_eq!(r.status, Status::Fail);
        let w = r.witness.unwrap();
        assert_eq!(w.trial, 0);
        assert_eq!(w.assignment["z1"], GrassmannElement::generator(q(), 12, 1).unwrap());
        assert_eq!(w.assignment["z2"], GrassmannElement::generator(q(), 12, 2).unwrap());
    }

    #[test]
    fn three_odd_vanish_under_two_odd_generators() {
        let f = FreePoly::parse(q(), "z1z2z3").unwrap();
        let r = verify_identity(&f, GradingSpec::KStar(2), q(), 12, 100, 1).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn fifth_power_survives_in_characteristic_zero() {
        let f = FreePoly::parse(q(), "z1^5").unwrap();
        let r = verify_identity(&f, GradingSpec::Infinity, q(), 12, 4, 1).unwrap();
        assert_eq!(r.status, Status::Fail);
        let w = r.witness.unwrap();
        let expect = GrassmannElement::from_json(
            r#"{"n":12,"char":0,"terms":[{"mono":[1],"coef":"1"},{"mono":[2,3],"coef":"1"},{"mono":[4,5],"coef":"1"},{"mono":[6,7],"coef":"1"},{"mono":[8,9],"coef":"1"}]}"#,
        )
        .unwrap();
        assert_eq!(w.assignment["z1"], expect);
        let top = Monomial::from_indices(&[1, 2, 3, 4, 5, 6, 7, 8, 9]).unwrap();
        assert_eq!(w.value.coefficient(top), q().from_i64(120));
    }

    #[test]
    fn deterministic_reports() {
        let f = FreePoly::parse(q(), "[y1,z1]").unwrap();
        let a = verify_identity(&f, GradingSpec::K(1), q(), 8, 30, 99).unwrap();
        let b = verify_identity(&f, GradingSpec::K(1), q(), 8, 30, 99).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.status, Status::Fail);
    }

    #[test]
    fn trial_points_are_graded() {
        let f = FreePoly::parse(q(), "y1y2z1z2z3").unwrap();
        for g in [GradingSpec::KStar(2), GradingSpec::Infinity, GradingSpec::K(3)] {
            for t in 0..6 {
                let a = trial_point(&f, g, q(), 12, t, 5).unwrap();
                for (v, x) in &a.values {
                    assert!(x.is_homogeneous(g, v.parity()), "{g} trial {t} {v}: {x}");
                }
            }
        }
    }
}
