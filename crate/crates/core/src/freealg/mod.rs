//! The free ℤ₂-graded associative algebra on even variables `y_i` and odd
//! variables `z_i`, and its evaluation into Grassmann algebras.

mod identities;
mod parse;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{GradingSpec, GrassmannElement, Parity};
use crate::scalar::{FieldSpec, Scalar};

pub use identities::{build_g, identity_templates, SkippedTemplate, Template, TemplateSet};
pub use verify::{verify_identity, IdentityReport, Status, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VarKind {
    Y,
    Z,
}

impl VarKind {
    pub fn parity(self) -> Parity {
        match self {
            VarKind::Y => Parity::Even,
            VarKind::Z => Parity::Odd,
        }
    }
}

/// `y_i` (even) or `z_i` (odd), `i ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedVariable {
    pub kind: VarKind,
    pub index: u32,
}

impl GradedVariable {
    pub fn y(index: u32) -> Self {
        GradedVariable {
            kind: VarKind::Y,
            index,
        }
    }

    pub fn z(index: u32) -> Self {
        GradedVariable {
            kind: VarKind::Z,
            index,
        }
    }

    pub fn parity(self) -> Parity {
        self.kind.parity()
    }
}

impl fmt::Display for GradedVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::Y => write!(f, "y{}", self.index),
            VarKind::Z => write!(f, "z{}", self.index),
        }
    }
}

impl FromStr for GradedVariable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::PolyParse(format!("not a variable: {s:?}"));
        let (kind, rest) = match s.as_bytes().first() {
            Some(b'y') => (VarKind::Y, &s[1..]),
            Some(b'z') => (VarKind::Z, &s[1..]),
            _ => return Err(bad()),
        };
        let index: u32 = rest.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(GradedVariable { kind, index })
    }
}

impl Serialize for GradedVariable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GradedVariable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A word in the free algebra; the empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<GradedVariable>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[GradedVariable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.0.iter().filter(|v| v.kind == VarKind::Z).count() as u64)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Exponent vectors over `y_1..y_m`, `z_1..z_m`.
    pub fn multidegree(&self, m: usize) -> Result<MultiDegree> {
        let mut d = MultiDegree::zero(m);
        for v in &self.0 {
            let i = v.index as usize;
            if i > m {
                return Err(Error::Invalid(format!("variable {v} outside y1..y{m}, z1..z{m}")));
            }
            match v.kind {
                VarKind::Y => d.y[i - 1] += 1,
                VarKind::Z => d.z[i - 1] += 1,
            }
        }
        Ok(d)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for v in &self.0 {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Exponents of `y_1..y_m` and `z_1..z_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDegree {
    pub y: Vec<u32>,
    pub z: Vec<u32>,
}

impl MultiDegree {
    pub fn zero(m: usize) -> Self {
        MultiDegree {
            y: vec![0; m],
            z: vec![0; m],
        }
    }

    pub fn new(y: Vec<u32>, z: Vec<u32>) -> Result<Self> {
        if y.len() != z.len() {
            return Err(Error::Invalid(format!(
                "multidegree needs equally many y and z exponents, got {} and {}",
                y.len(),
                z.len()
            )));
        }
        Ok(MultiDegree { y, z })
    }

    pub fn m(&self) -> usize {
        self.y.len()
    }

    pub fn total(&self) -> u32 {
        self.y.iter().sum::<u32>() + self.z.iter().sum::<u32>()
    }

    pub fn z_total(&self) -> u32 {
        self.z.iter().sum()
    }

    /// All multidegrees in `2m` variables with the given total, in
    /// lexicographic order of the concatenated exponent vector `(y, z)`.
    pub fn all_of_total(m: usize, total: u32) -> Vec<MultiDegree> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; 2 * m];
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(cur.clone());
                return;
            }
            for v in (0..=left).rev() {
                cur[pos] = v;
                rec(pos + 1, left - v, cur, out);
            }
            cur[pos] = 0;
        }
        if m == 0 {
            return if total == 0 {
                vec![MultiDegree::zero(0)]
            } else {
                Vec::new()
            };
        }
        let mut raw = Vec::new();
        rec(0, total, &mut cur, &mut raw);
        raw.sort();
        for r in raw {
            out.push(MultiDegree {
                y: r[..m].to_vec(),
                z: r[m..].to_vec(),
            });
        }
        out
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "y({}) z({})", join(&self.y), join(&self.z))
    }
}

/// A noncommutative polynomial: a sparse map from words to nonzero scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreePoly {
    field: FieldSpec,
    terms: BTreeMap<Word, Scalar>,
}

impl FreePoly {
    pub fn zero(field: FieldSpec) -> Self {
        FreePoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        FreePoly::constant(field, field.one())
    }

    pub fn constant(field: FieldSpec, c: Scalar) -> Self {
        let mut p = FreePoly::zero(field);
        p.accumulate(Word::unit(), &c);
        p
    }

    pub fn var(field: FieldSpec, v: GradedVariable) -> Self {
        FreePoly::word(field, Word(vec![v]))
    }

    pub fn word(field: FieldSpec, w: Word) -> Self {
        let mut p = FreePoly::zero(field);
        p.accumulate(w, &field.one());
        p
    }

    /// Product of the variables in order.
    pub fn product(field: FieldSpec, vars: &[GradedVariable]) -> Self {
        FreePoly::word(field, Word(vars.to_vec()))
    }

    pub fn from_terms<I>(field: FieldSpec, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Scalar)>,
    {
        let mut p = FreePoly::zero(field);
        for (w, c) in terms {
            if c.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.characteristic(),
                    right: c.field().characteristic(),
                });
            }
            p.accumulate(w, &c);
        }
        Ok(p)
    }

    fn accumulate(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn check_field(&self, other: &FreePoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.characteristic(),
                right: other.field.characteristic(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &FreePoly) -> Result<FreePoly> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.accumulate(w.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &FreePoly) -> Result<FreePoly> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> FreePoly {
        FreePoly {
            field: self.field,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> FreePoly {
        let mut out = FreePoly::zero(self.field);
        for (w, v) in &self.terms {
            out.accumulate(w.clone(), &(v * c));
        }
        out
    }

    /// Concatenation product.
    pub fn try_mul(&self, other: &FreePoly) -> Result<FreePoly> {
        self.check_field(other)?;
        let mut out = FreePoly::zero(self.field);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.accumulate(a.concat(b), &(ca * cb));
            }
        }
        Ok(out)
    }

    /// `fg − gf`.
    pub fn commutator(&self, other: &FreePoly) -> Result<FreePoly> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// Left-normed commutator `[[a₁,a₂],…,a_r]`; a single entry is returned unchanged.
    pub fn commutator_chain(items: &[FreePoly]) -> Result<FreePoly> {
        let (first, rest) = items
            .split_first()
            .ok_or_else(|| Error::Invalid("empty commutator".into()))?;
        rest.iter().try_fold(first.clone(), |acc, x| acc.commutator(x))
    }

    pub fn pow(&self, r: u32) -> Result<FreePoly> {
        let mut acc = FreePoly::one(self.field);
        for _ in 0..r {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Largest index used for `y` and for `z` variables.
    pub fn max_indices(&self) -> (u32, u32) {
        let mut y = 0;
        let mut z = 0;
        for w in self.terms.keys() {
            for v in &w.0 {
                match v.kind {
                    VarKind::Y => y = y.max(v.index),
                    VarKind::Z => z = z.max(v.index),
                }
            }
        }
        (y, z)
    }

    /// Distinct variables occurring, sorted.
    pub fn variables(&self) -> Vec<GradedVariable> {
        let mut vs: Vec<_> = self.terms.keys().flat_map(|w| w.0.iter().copied()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Parses `2*y1z1 - 1/2[z1,z2]^2 + (y1+z1)(y1-z1)`; see the grammar in the parser.
    pub fn parse(field: FieldSpec, s: &str) -> Result<FreePoly> {
        parse::parse(field, s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_repr()).expect("poly serializes")
    }

    pub fn from_json(field: FieldSpec, s: &str) -> Result<FreePoly> {
        let repr: PolyRepr = serde_json::from_str(s)?;
        FreePoly::from_repr(field, repr)
    }

    pub(crate) fn to_repr(&self) -> PolyRepr {
        PolyRepr {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| PolyTermRepr {
                    word: w.clone(),
                    coef: c.to_string(),
                })
                .collect(),
        }
    }

    pub(crate) fn from_repr(field: FieldSpec, repr: PolyRepr) -> Result<FreePoly> {
        let terms = repr
            .terms
            .into_iter()
            .map(|t| Ok((t.word, field.parse_scalar(&t.coef)?)))
            .collect::<Result<Vec<_>>>()?;
        FreePoly::from_terms(field, terms)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub(crate) struct PolyTermRepr {
    word: Word,
    coef: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub(crate) struct PolyRepr {
    terms: Vec<PolyTermRepr>,
}

impl Serialize for FreePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{w}")?;
            } else {
                write!(f, "({mag}){w}")?;
            }
        }
        Ok(())
    }
}

/// A graded substitution: each variable is sent into `E(n)` over one field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub n: usize,
    #[serde(skip)]
    pub field: FieldSpec,
    pub values: BTreeMap<GradedVariable, GrassmannElement>,
}

impl Assignment {
    pub fn new(field: FieldSpec, n: usize) -> Self {
        Assignment {
            n,
            field,
            values: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, v: GradedVariable, value: GrassmannElement) -> &mut Self {
        self.values.insert(v, value);
        self
    }

    pub fn get(&self, v: &GradedVariable) -> Option<&GrassmannElement> {
        self.values.get(v)
    }
}

/// Image of `f` under the graded homomorphism determined by `assignment`.
///
/// Words sharing a prefix share its product; a vanishing prefix skips every
/// word that extends it.
pub fn evaluate(f: &FreePoly, assignment: &Assignment, g: GradingSpec) -> Result<GrassmannElement> {
    if f.field != assignment.field {
        return Err(Error::FieldMismatch {
            left: f.field.characteristic(),
            right: assignment.field.characteristic(),
        });
    }
    for v in f.variables() {
        let x = assignment
            .get(&v)
            .ok_or_else(|| Error::UnassignedVariable(v.to_string()))?;
        if x.truncation() != assignment.n {
            return Err(Error::TruncationMismatch {
                left: assignment.n,
                right: x.truncation(),
            });
        }
        if !x.is_homogeneous(g, v.parity()) {
            return Err(Error::ParityMismatch {
                variable: v.to_string(),
                expected: v.parity().bit(),
            });
        }
    }
    let mut total = GrassmannElement::zero(assignment.field, assignment.n)?;
    // stack[i] = product of the first i letters of the current word
    let mut stack: Vec<GrassmannElement> = vec![GrassmannElement::one(assignment.field, assignment.n)?];
    let mut current: Vec<GradedVariable> = Vec::new();
    let mut dead_prefix: Option<Vec<GradedVariable>> = None;
    for (w, c) in &f.terms {
        if let Some(d) = &dead_prefix {
            if w.0.starts_with(d) {
                continue;
            }
            dead_prefix = None;
        }
        let common = current
            .iter()
            .zip(&w.0)
            .take_while(|(a, b)| a == b)
            .count();
        current.truncate(common);
        stack.truncate(common + 1);
        let mut dead = false;
        for v in &w.0[common..] {
            let next = stack.last().expect("unit at bottom").mul_unchecked(&assignment.values[v]);
            current.push(*v);
            let zero = next.is_zero();
            stack.push(next);
            if zero {
                dead = true;
                break;
            }
        }
        if dead {
            dead_prefix = Some(current.clone());
            continue;
        }
        total = total.try_add(&stack.last().expect("nonempty").scale(c))?;
    }
    Ok(total)
}
