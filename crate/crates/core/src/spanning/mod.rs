//! Canonical spanning sets of the relatively-free graded algebras, their
//! counts, and the growth data derived from them.
//!
//! A canonical monomial is a commutative part `y^α z^β` followed by a chain
//! of commutators in distinct variables:
//!
//! ```text
//! y^α z^β [z_{s1},z_{s2}]⋯ [z_s,y_t] [y_{t1},y_{t2}]⋯
//! ```
//!
//! The middle mixed commutator is present exactly when the commutator part
//! uses an odd number of `z`'s (and then an odd number of `y`'s). Its `z` is
//! the largest commutator `z`, its `y` the smallest commutator `y`.

mod closed_form;
mod count;
mod enumerate;
mod growth;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freealg::{FreePoly, GradedVariable, MultiDegree};
use crate::grassmann::GradingSpec;
use crate::scalar::FieldSpec;

pub use closed_form::{closed_form_count, compare_counts, ClosedFormFamily, Reconciliation, ReconciliationRow};
pub use count::{binomial, count_spanning, kappa};
pub use enumerate::{enumerate_multidegree, enumerate_spanning};
pub use growth::{
    expected_gk, gk_estimate, growth_table, hilbert_coeffs, Confidence, GkEstimate, GrowthTable,
    HilbertMode, HilbertTable, MultiHilbertRow,
};

/// How the `E_k` bound on the commutative `z` part is read.
///
/// With `pz` the commutative `z`-degree:
///
/// * `Exact`: `pz + (y letters in commutators) ≤ k + bonus`, where `bonus`
///   is 1 when the largest `z` occurring with nonzero degree (below `p` in
///   characteristic `p`) appears only in the commutative part. This is the
///   bound that matches evaluation rank.
/// * `Commutators`: `pz ≤ k − (pure y commutators)`, mixed commutator not
///   counted, at most `⌊k/2⌋` pure `y` commutators.
/// * `Letters`: `pz ≤ k − (y letters in commutators)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EkBound {
    #[default]
    Exact,
    Commutators,
    Letters,
}

impl FromStr for EkBound {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(EkBound::Exact),
            "commutators" => Ok(EkBound::Commutators),
            "letters" => Ok(EkBound::Letters),
            _ => Err(Error::Invalid(format!(
                "unknown E_k bound {s:?} (expected exact, commutators or letters)"
            ))),
        }
    }
}

impl fmt::Display for EkBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EkBound::Exact => "exact",
            EkBound::Commutators => "commutators",
            EkBound::Letters => "letters",
        })
    }
}

/// The relatively-free graded algebra of a graded Grassmann algebra on
/// `y_1..y_m`, `z_1..z_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RelativelyFree {
    pub grading: GradingSpec,
    pub field: FieldSpec,
    pub m: usize,
    pub ek_bound: EkBound,
}

impl RelativelyFree {
    pub fn new(grading: GradingSpec, field: FieldSpec, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("m must be at least 1".into()));
        }
        if m > 32 {
            return Err(Error::Invalid(format!("m = {m} is beyond desk scale (at most 32)")));
        }
        Ok(RelativelyFree {
            grading,
            field,
            m,
            ek_bound: EkBound::Exact,
        })
    }

    pub fn with_ek_bound(mut self, b: EkBound) -> Self {
        self.ek_bound = b;
        self
    }

    /// Whether `mono` is one of the canonical spanning elements.
    pub(crate) fn admits(&self, mono: &CanonicalMonomial) -> bool {
        let p = self.field.prime();
        if let Some(p) = p {
            if mono.z_exponents.iter().any(|&b| b as u64 >= p) {
                return false;
            }
        }
        let pz: u32 = mono.z_exponents.iter().sum();
        match self.grading {
            GradingSpec::Infinity => true,
            GradingSpec::KStar(k) => pz + mono.chain_z().len() as u32 <= k,
            GradingSpec::K(k) => {
                let y_letters = mono.chain_y().len() as u32;
                let pure_y = (mono.y_chain.len() / 2) as u32;
                match self.ek_bound {
                    EkBound::Exact => {
                        let chain_z = mono.chain_z();
                        let top = (1..=self.m as u32).rev().find(|&i| {
                            let d = mono.z_exponents[i as usize - 1] as u64
                                + chain_z.contains(&i) as u64;
                            d >= 1 && p.is_none_or(|p| d < p)
                        });
                        let bonus = top.is_some_and(|i| !chain_z.contains(&i)) as u32;
                        pz + y_letters <= k + bonus
                    }
                    EkBound::Commutators => pure_y <= k / 2 && pz + pure_y <= k,
                    EkBound::Letters => pure_y <= k / 2 && pz + y_letters <= k,
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    S1,
    S2,
}

/// A canonical spanning monomial.
///
/// Ordered lexicographically by `(y_exponents, z_exponents, z_chain, mixed,
/// y_chain)`, with an absent mixed commutator first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalMonomial {
    pub y_exponents: Vec<u32>,
    pub z_exponents: Vec<u32>,
    /// Strictly ascending, even length.
    pub z_chain: Vec<u32>,
    /// `(z index, y index)`.
    pub mixed: Option<(u32, u32)>,
    /// Strictly ascending, even length.
    pub y_chain: Vec<u32>,
}

impl CanonicalMonomial {
    /// The unit monomial in `m` variables of each kind.
    pub fn unit(m: usize) -> Self {
        CanonicalMonomial {
            y_exponents: vec![0; m],
            z_exponents: vec![0; m],
            z_chain: Vec::new(),
            mixed: None,
            y_chain: Vec::new(),
        }
    }

    /// Builds the monomial whose commutator part uses the `z`'s in
    /// `chain_z` and the `y`'s in `chain_y` (both ascending), or `None` if
    /// their sizes have different parity.
    pub fn from_parts(
        y_exponents: Vec<u32>,
        z_exponents: Vec<u32>,
        chain_z: &[u32],
        chain_y: &[u32],
    ) -> Option<Self> {
        if chain_z.len() % 2 != chain_y.len() % 2 {
            return None;
        }
        let (z_chain, mixed, y_chain) = if chain_z.len().is_multiple_of(2) {
            (chain_z.to_vec(), None, chain_y.to_vec())
        } else {
            let (zs, zlast) = chain_z.split_at(chain_z.len() - 1);
            (zs.to_vec(), Some((zlast[0], chain_y[0])), chain_y[1..].to_vec())
        };
        Some(CanonicalMonomial {
            y_exponents,
            z_exponents,
            z_chain,
            mixed,
            y_chain,
        })
    }

    pub fn m(&self) -> usize {
        self.y_exponents.len()
    }

    pub fn shape(&self) -> Shape {
        if self.mixed.is_some() {
            Shape::S2
        } else {
            Shape::S1
        }
    }

    /// All `z` indices inside commutators, ascending.
    pub fn chain_z(&self) -> Vec<u32> {
        let mut v = self.z_chain.clone();
        v.extend(self.mixed.map(|(z, _)| z));
        v
    }

    /// All `y` indices inside commutators, ascending.
    pub fn chain_y(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.mixed.map(|(_, y)| y).into_iter().collect();
        v.extend_from_slice(&self.y_chain);
        v
    }

    pub fn total_degree(&self) -> u32 {
        self.y_exponents.iter().sum::<u32>()
            + self.z_exponents.iter().sum::<u32>()
            + self.z_chain.len() as u32
            + self.y_chain.len() as u32
            + if self.mixed.is_some() { 2 } else { 0 }
    }

    pub fn multidegree(&self) -> MultiDegree {
        let mut d = MultiDegree {
            y: self.y_exponents.clone(),
            z: self.z_exponents.clone(),
        };
        for i in self.chain_z() {
            d.z[i as usize - 1] += 1;
        }
        for i in self.chain_y() {
            d.y[i as usize - 1] += 1;
        }
        d
    }

    /// The polynomial `y^α z^β ⋅ (commutator chain)` in the free algebra.
    pub fn to_free_poly(&self, field: FieldSpec) -> Result<FreePoly> {
        let mut letters = Vec::with_capacity(self.total_degree() as usize);
        for (i, &a) in self.y_exponents.iter().enumerate() {
            letters.extend(std::iter::repeat_n(GradedVariable::y(i as u32 + 1), a as usize));
        }
        for (i, &b) in self.z_exponents.iter().enumerate() {
            letters.extend(std::iter::repeat_n(GradedVariable::z(i as u32 + 1), b as usize));
        }
        let mut f = FreePoly::product(field, &letters);
        let bracket = |a: GradedVariable, b: GradedVariable| {
            FreePoly::var(field, a).commutator(&FreePoly::var(field, b))
        };
        for pair in self.z_chain.chunks(2) {
            f = f.try_mul(&bracket(GradedVariable::z(pair[0]), GradedVariable::z(pair[1]))?)?;
        }
        if let Some((z, y)) = self.mixed {
            f = f.try_mul(&bracket(GradedVariable::z(z), GradedVariable::y(y))?)?;
        }
        for pair in self.y_chain.chunks(2) {
            f = f.try_mul(&bracket(GradedVariable::y(pair[0]), GradedVariable::y(pair[1]))?)?;
        }
        Ok(f)
    }
}

impl fmt::Display for CanonicalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |f: &mut fmt::Formatter<'_>, name: char, i: usize, e: u32| -> fmt::Result {
            match e {
                0 => Ok(()),
                1 => write!(f, "{name}{}", i + 1),
                _ => write!(f, "{name}{}^{e}", i + 1),
            }
        };
        for (i, &a) in self.y_exponents.iter().enumerate() {
            power(f, 'y', i, a)?;
        }
        for (i, &b) in self.z_exponents.iter().enumerate() {
            power(f, 'z', i, b)?;
        }
        for pair in self.z_chain.chunks(2) {
            write!(f, "[z{},z{}]", pair[0], pair[1])?;
        }
        if let Some((z, y)) = self.mixed {
            write!(f, "[z{z},y{y}]")?;
        }
        for pair in self.y_chain.chunks(2) {
            write!(f, "[y{},y{}]", pair[0], pair[1])?;
        }
        if self.total_degree() == 0 {
            write!(f, "1")?;
        }
        Ok(())
    }
}
