use super::{EkBound, RelativelyFree};
use crate::grassmann::GradingSpec;

/// `C(a, b)`, zero whenever `a < 0`, `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> i128 {
    if a < 0 || b < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: i128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// `κ(n, j, k) = Σ_{r + s·j = n} (−1)^s C(k+r−1, r) C(k, s)`: the number of
/// degree-`n` monomials in `k` commuting variables with every exponent below `j`.
pub fn kappa(n: i64, j: i64, k: i64) -> i128 {
    if n < 0 || j < 1 {
        return 0;
    }
    let mut total = 0;
    let mut s = 0;
    while s * j <= n {
        let r = n - s * j;
        let term = binomial(k + r - 1, r) * binomial(k, s);
        total += if s % 2 == 0 { term } else { -term };
        s += 1;
    }
    total
}

fn ucount(v: i128) -> u128 {
    u128::try_from(v).expect("counts are nonnegative")
}

/// Monomials of degree `r` in `m` commuting variables.
fn free_monomials(r: i64, m: i64) -> u128 {
    ucount(binomial(r + m - 1, m - 1))
}

/// Number of canonical monomials of total degree `t`, computed without
/// listing them.
pub fn count_spanning(rf: &RelativelyFree, t: u32) -> u128 {
    let m = rf.m as i64;
    let t = t as i64;
    let p = rf.field.prime().map(|p| p as i64);
    // commutative z monomials of degree pz, with exponents below p in char p
    let z_monomials = |pz: i64| match p {
        Some(p) => ucount(kappa(pz, p, m)),
        None => free_monomials(pz, m),
    };
    match rf.grading {
        GradingSpec::Infinity | GradingSpec::KStar(_) => {
            let zcap = match rf.grading {
                GradingSpec::KStar(k) => Some(k as i64),
                _ => None,
            };
            let mut total = 0u128;
            for i in 0..=m {
                for j in (0..=m).filter(|j| (i + j) % 2 == 0) {
                    let chains = ucount(binomial(m, i) * binomial(m, j));
                    if chains == 0 || i + j > t {
                        continue;
                    }
                    let rest = t - i - j;
                    let pz_max = match zcap {
                        Some(k) => (k - i).min(rest),
                        None => rest,
                    };
                    let mut inner = 0u128;
                    for pz in 0..=pz_max {
                        inner += z_monomials(pz) * free_monomials(rest - pz, m);
                    }
                    total += chains * inner;
                }
            }
            total
        }
        GradingSpec::K(k) => count_ek(rf, k as i64, t),
    }
}

/// `E_k` count: the exact bound depends on which `z`'s sit in the
/// commutators, so sum over commutator `z`-sets and run a DP over the
/// commutative `z` exponents from `z_m` down to `z_1`.
fn count_ek(rf: &RelativelyFree, k: i64, t: i64) -> u128 {
    let m = rf.m;
    let p = rf.field.prime().map(|p| p as i64);
    let mi = m as i64;
    let mut total = 0u128;
    for zmask in 0u64..(1 << m) {
        let zc = zmask.count_ones() as i64;
        if zc > t {
            continue;
        }
        let budget = (t - zc) as usize;
        // by_flag[f][pz]: f = 0 no top z yet, 1 top z outside chain, 2 inside
        let mut state = vec![vec![0u128; budget + 1]; 3];
        state[0][0] = 1;
        for idx in (0..m).rev() {
            let in_chain = (zmask >> idx & 1) as i64;
            let mut next = vec![vec![0u128; budget + 1]; 3];
            for flag in 0..3 {
                for pz in 0..=budget {
                    let c = state[flag][pz];
                    if c == 0 {
                        continue;
                    }
                    let mut beta = 0usize;
                    while pz + beta <= budget && p.is_none_or(|p| (beta as i64) < p) {
                        let d = beta as i64 + in_chain;
                        let nf = if flag == 0 && d >= 1 && p.is_none_or(|p| d < p) {
                            if in_chain == 1 {
                                2
                            } else {
                                1
                            }
                        } else {
                            flag
                        };
                        next[nf][pz + beta] += c;
                        beta += 1;
                    }
                }
            }
            state = next;
        }
        for j in (0..=mi).filter(|j| (zc + j) % 2 == 0) {
            let ychoices = ucount(binomial(mi, j));
            if ychoices == 0 || zc + j > t {
                continue;
            }
            for pz in 0..=budget as i64 {
                let rest = t - zc - j - pz;
                if rest < 0 {
                    break;
                }
                let ok = |bonus: i64| match rf.ek_bound {
                    EkBound::Exact => pz + j <= k + bonus,
                    EkBound::Commutators => (j / 2) <= k / 2 && pz + j / 2 <= k,
                    EkBound::Letters => (j / 2) <= k / 2 && pz + j <= k,
                };
                let z = pz as usize;
                let mut weight = 0u128;
                if ok(0) {
                    weight += state[0][z] + state[2][z];
                }
                if ok(1) {
                    weight += state[1][z];
                }
                total += ychoices * weight * free_monomials(rest, mi);
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;
    use crate::spanning::enumerate_spanning;

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(2, 2, 3), 3);
        assert_eq!(kappa(0, 4, 2), 1);
        assert_eq!(kappa(4, 2, 3), 0);
        assert_eq!(kappa(0, 3, 0), 0);
    }

    #[test]
    fn counts_match_examples() {
        let q = FieldSpec::RATIONALS;
        let inf = RelativelyFree::new(GradingSpec::Infinity, q, 1).unwrap();
        assert_eq!(count_spanning(&inf, 4), 8);
        assert_eq!(count_spanning(&inf, 0), 1);
        let ks = RelativelyFree::new(GradingSpec::KStar(1), q, 1).unwrap();
        assert_eq!(count_spanning(&ks, 5), 3);
    }

    #[test]
    fn counter_agrees_with_enumerator() {
        for p in [0, 3, 5] {
            let f = FieldSpec::new(p).unwrap();
            for m in 1..=3 {
                for g in [
                    GradingSpec::KStar(1),
                    GradingSpec::KStar(3),
                    GradingSpec::Infinity,
                    GradingSpec::K(0),
                    GradingSpec::K(1),
                    GradingSpec::K(2),
                    GradingSpec::K(4),
                ] {
                    for b in [EkBound::Exact, EkBound::Commutators, EkBound::Letters] {
                        let rf = RelativelyFree::new(g, f, m).unwrap().with_ek_bound(b);
                        for t in 0..=(if m == 3 { 6 } else { 9 }) {
                            assert_eq!(
                                count_spanning(&rf, t),
                                enumerate_spanning(&rf, t).len() as u128,
                                "{g} char {p} m {m} t {t} {b}"
                            );
                        }
                    }
                }
            }
        }
    }
}
