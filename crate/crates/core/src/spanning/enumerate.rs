use super::{CanonicalMonomial, RelativelyFree};
use crate::freealg::MultiDegree;

/// Indices (1-based) set in `mask`, ascending.
fn members(mask: u64) -> Vec<u32> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut sub = mask;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = sub;
        if sub == 0 {
            done = true;
        } else {
            sub = (sub - 1) & mask;
        }
        Some(out)
    })
}

/// Canonical monomials of multidegree `d`, sorted.
///
/// One candidate per choice of commutator variables `(Z, Y)` with `|Z| ≡ |Y|
/// (mod 2)` among the variables of positive degree; the commutative part is
/// what remains of `d`.
pub fn enumerate_multidegree(rf: &RelativelyFree, d: &MultiDegree) -> Vec<CanonicalMonomial> {
    assert_eq!(d.m(), rf.m, "multidegree has the wrong number of variables");
    let support = |v: &[u32]| {
        v.iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .fold(0u64, |acc, (i, _)| acc | 1 << i)
    };
    let zs = support(&d.z);
    let ys = support(&d.y);
    let mut out = Vec::new();
    for zmask in submasks(zs) {
        for ymask in submasks(ys) {
            if zmask.count_ones() % 2 != ymask.count_ones() % 2 {
                continue;
            }
            let chain_z = members(zmask);
            let chain_y = members(ymask);
            let mut ye = d.y.clone();
            let mut ze = d.z.clone();
            for &i in &chain_y {
                ye[i as usize - 1] -= 1;
            }
            for &i in &chain_z {
                ze[i as usize - 1] -= 1;
            }
            let mono = CanonicalMonomial::from_parts(ye, ze, &chain_z, &chain_y)
                .expect("parities checked");
            if rf.admits(&mono) {
                out.push(mono);
            }
        }
    }
    out.sort();
    out
}

/// All canonical monomials of total degree `t`, sorted.
pub fn enumerate_spanning(rf: &RelativelyFree, t: u32) -> Vec<CanonicalMonomial> {
    let mut out: Vec<_> = MultiDegree::all_of_total(rf.m, t)
        .iter()
        .flat_map(|d| enumerate_multidegree(rf, d))
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::GradingSpec;
    use crate::scalar::FieldSpec;
    use crate::spanning::Shape;

    fn rf(g: GradingSpec, p: u64, m: usize) -> RelativelyFree {
        RelativelyFree::new(g, FieldSpec::new(p).unwrap(), m).unwrap()
    }

    #[test]
    fn infinity_one_variable_degree_four() {
        let list = enumerate_spanning(&rf(GradingSpec::Infinity, 0, 1), 4);
        assert_eq!(list.len(), 8);
        assert_eq!(list.iter().filter(|c| c.shape() == Shape::S1).count(), 5);
        assert_eq!(list.iter().filter(|c| c.shape() == Shape::S2).count(), 3);
    }

    #[test]
    fn one_odd_generator() {
        let list = enumerate_spanning(&rf(GradingSpec::KStar(1), 0, 1), 5);
        let names: Vec<String> = list.iter().map(|c| c.to_string()).collect();
        assert_eq!(names, vec!["y1^3[z1,y1]", "y1^4z1", "y1^5"]);
    }

    #[test]
    fn unit_in_degree_zero() {
        for g in [GradingSpec::KStar(2), GradingSpec::Infinity, GradingSpec::K(1)] {
            let list = enumerate_spanning(&rf(g, 0, 2), 0);
            assert_eq!(list, vec![CanonicalMonomial::unit(2)]);
            assert_eq!(list[0].to_string(), "1");
        }
    }

    #[test]
    fn mixed_commutator_uses_extreme_indices() {
        let r = rf(GradingSpec::Infinity, 0, 3);
        let d = MultiDegree::new(vec![0, 1, 1], vec![1, 1, 1]).unwrap();
        let list = enumerate_multidegree(&r, &d);
        let s2 = list
            .iter()
            .find(|c| c.z_chain == vec![1, 2] && c.mixed.is_some())
            .unwrap();
        assert_eq!(s2.mixed, Some((3, 2)));
        assert_eq!(s2.y_chain, Vec::<u32>::new());
        for c in &list {
            assert_eq!(&c.multidegree(), &d);
        }
    }

    #[test]
    fn characteristic_caps_commutative_z_exponents() {
        let list = enumerate_spanning(&rf(GradingSpec::Infinity, 3, 1), 6);
        assert!(list.iter().all(|c| c.z_exponents[0] < 3));
        assert!(list.iter().any(|c| c.z_exponents[0] == 2));
    }
}
