use gkdim_core::grassmann::{gr_power, random_even_length, random_nilpotent};
use gkdim_core::spanning::kappa;
use gkdim_core::{FieldSpec, GrassmannElement, Monomial};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn chain(field: FieldSpec, n: usize, l: usize) -> GrassmannElement {
    // e1 + e2e3 + ... + e_{2l}e_{2l+1}
    let mut terms = vec![(Monomial::generator(1).unwrap(), field.one())];
    for j in 0..l {
        terms.push((Monomial::from_indices(&[2 * j + 2, 2 * j + 3]).unwrap(), field.one()));
    }
    GrassmannElement::from_terms(field, n, terms).unwrap()
}

#[test]
fn power_vanishes_exactly_from_l_plus_two() {
    let q = FieldSpec::RATIONALS;
    for l in 0..=4 {
        let s = chain(q, 12, l);
        for r in 0..=l as u32 + 4 {
            assert_eq!(gr_power(&s, r).is_zero(), r as usize >= l + 2, "l {l} r {r}");
        }
    }
}

#[test]
fn top_power_is_factorial_times_full_monomial() {
    let q = FieldSpec::RATIONALS;
    for l in 0..=4usize {
        let s = chain(q, 12, l);
        let top = gr_power(&s, l as u32 + 1);
        let full = Monomial::from_indices(&(1..=2 * l + 1).collect::<Vec<_>>()).unwrap();
        let fact: i64 = (1..=l as i64 + 1).product();
        assert_eq!(top.num_terms(), 1);
        assert_eq!(top.coefficient(full), q.from_i64(fact));
    }
}

#[test]
fn small_characteristic_kills_the_factorial() {
    // five pairs: the fifth power carries 5! which vanishes mod 5
    let f = FieldSpec::new(5).unwrap();
    let s = gkdim_core::grassmann::structured_even_element(f, 12, 5, 1).unwrap();
    assert!(gr_power(&s, 5).is_zero());
    assert!(!gr_power(&s, 4).is_zero());
}

#[test]
fn nilpotent_elements_satisfy_the_p_th_power_law() {
    for p in [3u64, 5] {
        let f = FieldSpec::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        for _ in 0..100 {
            let a = random_nilpotent(f, 12, 6, &mut rng).unwrap();
            assert!(gr_power(&a, p as u32).is_zero(), "{a}");
        }
    }
}

#[test]
fn scalar_plus_central_to_the_p() {
    for p in [3u64, 5, 7] {
        let f = FieldSpec::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(100 + p);
        for c in 0..50 {
            let fc = f.from_i64(c);
            let a = random_even_length(f, 12, 5, &mut rng).unwrap();
            let shifted = a.try_add(&GrassmannElement::scalar(f, 12, fc.clone()).unwrap()).unwrap();
            let expect = GrassmannElement::scalar(f, 12, fc.pow(p)).unwrap();
            assert_eq!(gr_power(&shifted, p as u32), expect);
        }
    }
}

fn shifted(f: FieldSpec, c: i64, a: &GrassmannElement) -> GrassmannElement {
    a.try_add(&GrassmannElement::scalar(f, a.truncation(), f.from_i64(c)).unwrap())
        .unwrap()
}

#[test]
fn exponents_reduce_modulo_p_with_the_same_central_part() {
    // (f+a)^(β+p·k) = f^(p·k)·(f+a)^β
    for p in [3u64, 5] {
        let f = FieldSpec::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7 * p);
        for trial in 0..20 {
            let c = 1 + trial % (p as i64 - 1);
            let a = random_even_length(f, 10, 4, &mut rng).unwrap();
            let x = shifted(f, c, &a);
            for beta in 0..p as u32 {
                for k in 0..3u32 {
                    let lhs = gr_power(&x, beta + p as u32 * k);
                    let rhs = gr_power(&x, beta).scale(&f.from_i64(c).pow((p as u32 * k) as u64));
                    assert_eq!(lhs, rhs, "p {p} β {beta} k {k}");
                }
            }
        }
    }
}

#[test]
fn exponent_reduction_needs_the_same_central_part() {
    // with b ≠ a the literal form (f+a)^α = f^(p·k)·(f+b)^β fails
    let f = FieldSpec::new(3).unwrap();
    let a = GrassmannElement::from_terms(f, 6, [(Monomial::from_indices(&[1, 2]).unwrap(), f.one())]).unwrap();
    let b = GrassmannElement::from_terms(f, 6, [(Monomial::from_indices(&[3, 4]).unwrap(), f.one())]).unwrap();
    let lhs = gr_power(&shifted(f, 1, &a), 4);
    let rhs = gr_power(&shifted(f, 1, &b), 1);
    assert_ne!(lhs, rhs);
}

fn kappa_by_enumeration(n: i64, j: i64, k: i64) -> i128 {
    fn go(vars: i64, left: i64, j: i64) -> i128 {
        if vars == 0 {
            return (left == 0) as i128;
        }
        (0..j.min(left + 1)).map(|e| go(vars - 1, left - e, j)).sum()
    }
    if k == 0 {
        return 0;
    }
    go(k, n, j)
}

#[test]
fn kappa_counts_bounded_exponent_monomials() {
    for n in 0..=10 {
        for j in 2..=5 {
            for k in 1..=4 {
                assert_eq!(kappa(n, j, k), kappa_by_enumeration(n, j, k), "κ({n},{j},{k})");
            }
        }
    }
}

proptest! {
    #[test]
    fn odd_part_squares_to_zero(seed in any::<u64>()) {
        let f = FieldSpec::RATIONALS;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_nilpotent(f, 10, 5, &mut rng).unwrap();
        let odd = GrassmannElement::from_terms(
            f,
            10,
            x.terms().filter(|(m, _)| m.len() % 2 == 1).map(|(m, c)| (*m, c.clone())),
        ).unwrap();
        prop_assert!(gr_power(&odd, 2).is_zero());
    }

    #[test]
    fn powers_add_exponents(seed in any::<u64>(), r in 0u32..4, s in 0u32..4) {
        let f = FieldSpec::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = shifted(f, 2, &random_nilpotent(f, 9, 4, &mut rng).unwrap());
        let lhs = gr_power(&x, r).try_mul(&gr_power(&x, s)).unwrap();
        prop_assert_eq!(lhs, gr_power(&x, r + s));
    }
}
