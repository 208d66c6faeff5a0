use gkdim_core::freealg::Assignment;
use gkdim_core::grassmann::structured_even_element;
use gkdim_core::oracle::{
    component_dimension, evaluation_matrix, independence_check, rank, EvaluationPoint, Provenance,
};
use gkdim_core::spanning::{count_spanning, enumerate_spanning};
use gkdim_core::{FieldSpec, FreePoly, GradedVariable, GradingSpec, GrassmannElement, MultiDegree, RelativelyFree};
use proptest::prelude::*;

/// `y1 ↦ c + (p−1 disjoint central pairs)` for every nonzero `c`.
fn shifted_points(f: FieldSpec, p: u64) -> Vec<EvaluationPoint> {
    let n = 2 * p as usize;
    let a = structured_even_element(f, n, p as usize - 1, 1).unwrap();
    (1..p)
        .map(|c| {
            let x = a.try_add(&GrassmannElement::scalar(f, n, f.from_i64(c as i64)).unwrap()).unwrap();
            let mut asg = Assignment::new(f, n);
            asg.set(GradedVariable::y(1), x);
            EvaluationPoint {
                assignment: asg,
                provenance: Provenance::UnitShifted { seed: 0, stream: c },
            }
        })
        .collect()
}

#[test]
fn distinct_powers_stay_independent_in_characteristic_p() {
    for p in [3u64, 5] {
        let f = FieldSpec::new(p).unwrap();
        let cols: Vec<FreePoly> = (1..=2 * p)
            .map(|a| FreePoly::var(f, GradedVariable::y(1)).pow(a as u32).unwrap())
            .collect();
        let mx = evaluation_matrix(&cols, &shifted_points(f, p), GradingSpec::KStar(0)).unwrap();
        assert_eq!(rank(&mx), cols.len(), "p = {p}");
    }
}

#[test]
fn unit_shift_alone_sees_exponents_modulo_p() {
    let f = FieldSpec::new(3).unwrap();
    let cols: Vec<FreePoly> = [1u32, 4]
        .iter()
        .map(|&a| FreePoly::var(f, GradedVariable::y(1)).pow(a).unwrap())
        .collect();
    let pts = shifted_points(f, 3);
    let mx = evaluation_matrix(&cols, &pts[..1], GradingSpec::KStar(0)).unwrap();
    assert_eq!(rank(&mx), 1);
}

#[test]
fn canonical_monomials_are_independent() {
    let f = FieldSpec::RATIONALS;
    let rf = RelativelyFree::new(GradingSpec::K(2), f, 2).unwrap();
    let monos = enumerate_spanning(&rf, 3);
    assert_eq!(monos.len() as u128, count_spanning(&rf, 3));
    let polys: Vec<FreePoly> = monos.iter().map(|c| c.to_free_poly(f).unwrap()).collect();
    let rep = independence_check(&polys, rf.grading, f, None, 4, 3).unwrap();
    assert!(rep.independent, "rank {} of {}", rep.rank, rep.columns);
}

#[test]
fn commutator_of_odd_variables_vanishes_without_odd_generators() {
    let f = FieldSpec::RATIONALS;
    let p = vec![FreePoly::parse(f, "[z1,z2]").unwrap()];
    let rep = independence_check(&p, GradingSpec::KStar(0), f, None, 4, 0).unwrap();
    assert_eq!(rep.rank, 0);
    assert_eq!(rep.kernel, Some(vec![f.one()]));
}

fn grading() -> impl Strategy<Value = GradingSpec> {
    prop_oneof![
        (0u32..4).prop_map(GradingSpec::KStar),
        Just(GradingSpec::Infinity),
        (0u32..4).prop_map(GradingSpec::K),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evaluation_rank_never_exceeds_the_spanning_count(
        g in grading(),
        p in prop::sample::select(vec![0u64, 3, 5]),
        y1 in 0u32..3,
        y2 in 0u32..2,
        z in prop::collection::vec(0u32..2, 2),
        seed in any::<u64>(),
    ) {
        let rf = RelativelyFree::new(g, FieldSpec::new(p).unwrap(), 2).unwrap();
        let d = MultiDegree::new(vec![y1, y2], z).unwrap();
        let c = component_dimension(&rf, &d, None, 8, seed).unwrap();
        prop_assert!(c.lower <= c.upper, "{} > {}", c.lower, c.upper);
        prop_assert!(c.n <= 64);
    }
}
