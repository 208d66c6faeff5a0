//! Evaluation matrices and exact rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::points::EvaluationPoint;
use crate::error::Result;
use crate::freealg::{evaluate, FreePoly};
use crate::grassmann::{GradingSpec, Monomial};
use crate::scalar::{FieldSpec, Scalar};

/// Rows are (point, Grassmann monomial) coordinates, columns are the
/// evaluated polynomials. Coordinates that vanish in every column are left
/// out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvalMatrix {
    #[serde(skip)]
    pub field: FieldSpec,
    pub columns: usize,
    pub rows: Vec<Vec<Scalar>>,
}

pub fn evaluation_matrix(polys: &[FreePoly], points: &[EvaluationPoint], g: GradingSpec) -> Result<EvalMatrix> {
    let field = points
        .first()
        .map(|p| p.assignment.field)
        .or_else(|| polys.first().map(|f| f.field()))
        .unwrap_or(FieldSpec::RATIONALS);
    let mut rows = Vec::new();
    for pt in points {
        let images = polys
            .iter()
            .map(|f| evaluate(f, &pt.assignment, g))
            .collect::<Result<Vec<_>>>()?;
        let mut support: Vec<Monomial> = images.iter().flat_map(|x| x.terms().map(|(m, _)| *m)).collect();
        support.sort();
        support.dedup();
        for m in support {
            rows.push(images.iter().map(|x| x.coefficient(m)).collect());
        }
    }
    Ok(EvalMatrix {
        field,
        columns: polys.len(),
        rows,
    })
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Row-reduced basis grown one row at a time. Every stored row is zero at
/// the pivots of the others.
#[derive(Clone, Debug)]
pub(crate) enum Echelon {
    Modular { p: u64, rows: Vec<(usize, Vec<u64>)> },
    /// Fraction-free over ℤ; rows kept primitive.
    Integral { rows: Vec<(usize, Vec<BigInt>)> },
}

impl Echelon {
    pub(crate) fn new(field: FieldSpec) -> Self {
        match field.prime() {
            Some(p) => Echelon::Modular { p, rows: Vec::new() },
            None => Echelon::Integral { rows: Vec::new() },
        }
    }

    pub(crate) fn rank(&self) -> usize {
        match self {
            Echelon::Modular { rows, .. } => rows.len(),
            Echelon::Integral { rows } => rows.len(),
        }
    }

    /// Entries must already be reduced into `[0, p)`.
    pub(crate) fn insert_residues(&mut self, mut r: Vec<u64>) -> bool {
        let Echelon::Modular { p, rows } = self else {
            panic!("residue row inserted over the rationals");
        };
        let p = *p;
        for (piv, b) in rows.iter() {
            let f = r[*piv];
            if f != 0 {
                for (x, y) in r.iter_mut().zip(b) {
                    *x = (*x + p - mulmod(f, *y, p)) % p;
                }
            }
        }
        let Some(c) = r.iter().position(|x| *x != 0) else {
            return false;
        };
        let inv = inv_mod(r[c], p);
        for x in r.iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        for (_, b) in rows.iter_mut() {
            let f = b[c];
            if f != 0 {
                for (x, y) in b.iter_mut().zip(&r) {
                    *x = (*x + p - mulmod(f, *y, p)) % p;
                }
            }
        }
        rows.push((c, r));
        true
    }

    pub(crate) fn insert_integers(&mut self, mut r: Vec<BigInt>) -> bool {
        let Echelon::Integral { rows } = self else {
            panic!("integer row inserted over a prime field");
        };
        for (piv, b) in rows.iter() {
            if !r[*piv].is_zero() {
                let (bp, rp) = (b[*piv].clone(), r[*piv].clone());
                for (x, y) in r.iter_mut().zip(b) {
                    *x = &bp * &*x - &rp * y;
                }
                primitive(&mut r);
            }
        }
        let Some(c) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        primitive(&mut r);
        if r[c].is_negative() {
            r.iter_mut().for_each(|x| *x = -&*x);
        }
        for (_, b) in rows.iter_mut() {
            if !b[c].is_zero() {
                let (bc, rc) = (b[c].clone(), r[c].clone());
                for (x, y) in b.iter_mut().zip(&r) {
                    *x = &rc * &*x - &bc * y;
                }
                primitive(b);
            }
        }
        rows.push((c, r));
        true
    }

    pub(crate) fn insert_scalars(&mut self, row: &[Scalar]) -> bool {
        match self {
            Echelon::Modular { .. } => {
                let r = row.iter().map(|s| s.as_residue().expect("prime field entry")).collect();
                self.insert_residues(r)
            }
            Echelon::Integral { .. } => {
                let qs: Vec<_> = row.iter().map(|s| s.as_rational().expect("rational entry")).collect();
                let l = qs.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
                let r = qs.iter().map(|q| q.numer() * (&l / q.denom())).collect();
                self.insert_integers(r)
            }
        }
    }
}

/// Exact column rank.
pub fn rank(mx: &EvalMatrix) -> usize {
    let mut e = Echelon::new(mx.field);
    for row in &mx.rows {
        if e.rank() == mx.columns {
            break;
        }
        e.insert_scalars(row);
    }
    e.rank()
}

/// Basis of the null space, one vector per non-pivot column in increasing
/// order, each scaled so its first nonzero entry is 1.
pub fn kernel(mx: &EvalMatrix) -> Vec<Vec<Scalar>> {
    let field = mx.field;
    let mut a: Vec<Vec<Scalar>> = mx.rows.clone();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..mx.columns {
        let Some(i) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, i);
        let inv = a[r][c].inv().expect("nonzero pivot");
        a[r] = a[r].iter().map(|x| x.try_mul(&inv).expect("same field")).collect();
        for j in 0..a.len() {
            if j != r && !a[j][c].is_zero() {
                let f = a[j][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[j].iter_mut().zip(&pivot_row) {
                    *x = x.try_sub(&f.try_mul(y).expect("same field")).expect("same field");
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..mx.columns).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); mx.columns];
        v[free] = field.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = a[i][free].try_mul(&field.from_i64(-1)).expect("same field");
        }
        let lead = v.iter().find(|x| !x.is_zero()).expect("free column is set").inv().expect("nonzero");
        basis.push(v.iter().map(|x| x.try_mul(&lead).expect("same field")).collect());
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mx(p: u64, rows: &[&[i64]]) -> EvalMatrix {
        let f = FieldSpec::new(p).unwrap();
        EvalMatrix {
            field: f,
            columns: rows[0].len(),
            rows: rows.iter().map(|r| r.iter().map(|x| f.from_i64(*x)).collect()).collect(),
        }
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // determinant 6
        let rows: &[&[i64]] = &[&[2, 0], &[0, 3]];
        assert_eq!(rank(&mx(0, rows)), 2);
        assert_eq!(rank(&mx(3, rows)), 1);
    }

    #[test]
    fn kernel_of_dependent_columns() {
        let m = mx(0, &[&[1, 0, 1], &[0, 1, -1], &[2, 1, 1]]);
        assert_eq!(rank(&m), 2);
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        let f = FieldSpec::RATIONALS;
        assert_eq!(k[0], vec![f.one(), f.from_i64(-1), f.from_i64(-1)]);
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let m = mx(7, &[&[1, 2], &[3, 4]]);
        assert!(kernel(&m).is_empty());
    }

    #[test]
    fn integral_and_modular_agree_on_generic_matrix() {
        let rows: &[&[i64]] = &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[1, 0, 1, 0], &[0, 1, 1, 1], &[3, 2, 5, 4]];
        assert_eq!(rank(&mx(0, rows)), 3);
        assert_eq!(rank(&mx(101, rows)), 3);
    }
}
