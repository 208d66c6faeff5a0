//! Word evaluation with machine-integer coefficients for component sweeps.
//!
//! In characteristic 0 every image is first scaled to integer coefficients.
//! All words of one multidegree pick up the same nonzero factor, so the rank
//! of a component is unchanged.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::matrix::Echelon;
use crate::error::{Error, Result};
use crate::freealg::{Assignment, GradedVariable, MultiDegree};
use crate::grassmann::Monomial;

#[derive(Clone, Debug, Default)]
pub(crate) struct Sparse(Vec<(u64, i128)>);

fn overflow() -> Error {
    Error::Invalid("coefficient overflow in word evaluation".into())
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Ring {
    p: Option<u64>,
}

impl Ring {
    pub(crate) fn new(p: Option<u64>) -> Self {
        Ring { p }
    }

    fn reduce(self, v: i128) -> i128 {
        match self.p {
            Some(p) => v.rem_euclid(p as i128),
            None => v,
        }
    }

    pub(crate) fn mul(self, a: &Sparse, b: &Sparse) -> Result<Sparse> {
        let mut acc: HashMap<u64, i128> = HashMap::with_capacity(a.0.len() * b.0.len());
        for &(ma, ca) in &a.0 {
            for &(mb, cb) in &b.0 {
                let Some((neg, m)) = Monomial::from_mask(ma).mul(Monomial::from_mask(mb)) else {
                    continue;
                };
                let c = self.reduce(ca.checked_mul(cb).ok_or_else(overflow)?);
                let c = if neg { -c } else { c };
                let e = acc.entry(m.mask()).or_insert(0);
                *e = self.reduce(e.checked_add(c).ok_or_else(overflow)?);
            }
        }
        Ok(Sparse(acc.into_iter().filter(|(_, c)| *c != 0).collect()))
    }

    /// Images of the assigned variables; rational images are scaled by the
    /// common denominator of their coefficients.
    pub(crate) fn images(self, a: &Assignment) -> Result<Vec<(GradedVariable, Sparse)>> {
        let mut out = Vec::new();
        for (v, x) in &a.values {
            let terms: Vec<(u64, i128)> = match self.p {
                Some(_) => x
                    .terms()
                    .map(|(m, c)| (m.mask(), c.as_residue().expect("prime field") as i128))
                    .collect(),
                None => {
                    let l = x
                        .terms()
                        .fold(BigInt::one(), |l, (_, c)| l.lcm(c.as_rational().expect("rational").denom()));
                    x.terms()
                        .map(|(m, c)| {
                            let q = c.as_rational().expect("rational");
                            let v = q.numer() * (&l / q.denom());
                            v.to_i128().map(|v| (m.mask(), v)).ok_or_else(overflow)
                        })
                        .collect::<Result<_>>()?
                }
            };
            out.push((*v, Sparse(terms)));
        }
        Ok(out)
    }
}

/// Images of every word of multidegree `d`, in lexicographic word order.
pub(crate) fn word_images(ring: Ring, a: &Assignment, d: &MultiDegree) -> Result<Vec<Sparse>> {
    let images = ring.images(a)?;
    let degree = |v: &GradedVariable| {
        let i = v.index as usize - 1;
        match v.kind {
            crate::freealg::VarKind::Y => d.y.get(i).copied().unwrap_or(0),
            crate::freealg::VarKind::Z => d.z.get(i).copied().unwrap_or(0),
        }
    };
    let mut letters: Vec<(Sparse, u32)> = Vec::new();
    for (v, img) in images {
        if degree(&v) > 0 {
            letters.push((img, degree(&v)));
        }
    }
    let mut left: Vec<u32> = letters.iter().map(|(_, e)| *e).collect();
    let unit = Sparse(vec![(0, 1)]);
    let mut out = Vec::new();
    descend(ring, &letters, &mut left, &unit, &mut out)?;
    Ok(out)
}

fn descend(ring: Ring, letters: &[(Sparse, u32)], left: &mut [u32], prefix: &Sparse, out: &mut Vec<Sparse>) -> Result<()> {
    if left.iter().all(|e| *e == 0) {
        out.push(prefix.clone());
        return Ok(());
    }
    for i in 0..letters.len() {
        if left[i] == 0 {
            continue;
        }
        left[i] -= 1;
        let next = if prefix.0.is_empty() {
            Sparse::default()
        } else {
            ring.mul(prefix, &letters[i].0)?
        };
        descend(ring, letters, left, &next, out)?;
        left[i] += 1;
    }
    Ok(())
}

/// Feeds one row per Grassmann coordinate into `e`; stops early once the
/// columns are independent.
pub(crate) fn absorb(ring: Ring, e: &mut Echelon, columns: &[Sparse]) {
    let mut rows: BTreeMap<u64, Vec<i128>> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for &(m, c) in &col.0 {
            rows.entry(m).or_insert_with(|| vec![0; columns.len()])[j] = c;
        }
    }
    for (_, row) in rows {
        if e.rank() == columns.len() {
            return;
        }
        match ring.p {
            Some(_) => e.insert_residues(row.into_iter().map(|x| x as u64).collect()),
            None => e.insert_integers(row.into_iter().map(BigInt::from).collect()),
        };
    }
}
