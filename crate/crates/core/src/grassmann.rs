//! Truncated Grassmann algebras `E(n)` and their ℤ₂-gradings.
//!
//! A basis monomial `e_{i1}⋯e_{il}` (`i1 < ⋯ < il`) is a bitmask with bit
//! `i - 1` standing for `e_i`, so `n` is at most 64.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

pub const MAX_TRUNCATION: usize = 64;

/// Longest monomial drawn by the random element generators.
pub const RANDOM_MAX_LENGTH: usize = 4;

/// An element of ℤ₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u64) -> Parity {
        if b & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit((self.bit() ^ rhs.bit()) as u64)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// A basis monomial of the Grassmann algebra, as a set of generator indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(u64);

impl Monomial {
    pub const UNIT: Monomial = Monomial(0);

    pub fn from_mask(mask: u64) -> Monomial {
        Monomial(mask)
    }

    pub fn generator(i: usize) -> Result<Monomial> {
        if i == 0 || i > MAX_TRUNCATION {
            return Err(Error::GeneratorOutOfRange {
                index: i,
                n: MAX_TRUNCATION,
            });
        }
        Ok(Monomial(1 << (i - 1)))
    }

    /// Builds `e_{i1}⋯e_{il}` from strictly ascending indices.
    pub fn from_indices(indices: &[usize]) -> Result<Monomial> {
        let mut mask = 0u64;
        let mut last = 0;
        for &i in indices {
            if i <= last {
                return Err(Error::Invalid(format!(
                    "monomial indices must be strictly ascending and positive: {indices:?}"
                )));
            }
            mask |= Monomial::generator(i)?.0;
            last = i;
        }
        Ok(Monomial(mask))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_unit(self) -> bool {
        self.0 == 0
    }

    /// Largest generator index, 0 for the unit.
    pub fn max_index(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut m = self.0;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            out.push(b + 1);
            m &= m - 1;
        }
        out
    }

    /// Product of two basis monomials: `None` when supports overlap, otherwise
    /// the merged monomial and whether the sign is negative.
    pub fn mul(self, rhs: Monomial) -> Option<(bool, Monomial)> {
        if self.0 & rhs.0 != 0 {
            return None;
        }
        // each generator of rhs must move left past every larger generator of self
        let mut inversions = 0u32;
        let mut r = rhs.0;
        while r != 0 {
            let b = r.trailing_zeros();
            let above = if b >= 63 { 0 } else { self.0 >> (b + 1) };
            inversions += above.count_ones();
            r &= r - 1;
        }
        Some((inversions & 1 == 1, Monomial(self.0 | rhs.0)))
    }
}

impl Ord for Monomial {
    /// Length first, then lexicographic on the ascending index lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        for i in self.indices() {
            write!(f, "e{i}")?;
        }
        Ok(())
    }
}

/// One of the three ℤ₂-gradings of the Grassmann algebra.
///
/// * `KStar(k)`: `e_1..e_k` odd, the rest even.
/// * `Infinity`: `e_i` odd exactly for odd `i`.
/// * `K(k)`: `e_1..e_k` even, the rest odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GradingSpec {
    KStar(u32),
    Infinity,
    K(u32),
}

impl GradingSpec {
    pub fn generator_parity(self, i: usize) -> Parity {
        let odd = match self {
            GradingSpec::KStar(k) => i <= k as usize,
            GradingSpec::Infinity => i % 2 == 1,
            GradingSpec::K(k) => i > k as usize,
        };
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Mask (within `E(64)`) of the odd generators.
    pub fn odd_mask(self) -> u64 {
        match self {
            GradingSpec::KStar(k) => low_mask(k as usize),
            GradingSpec::Infinity => 0x5555_5555_5555_5555,
            GradingSpec::K(k) => !low_mask(k as usize),
        }
    }

    pub fn parity(self, m: Monomial) -> Parity {
        Parity::from_bit((m.0 & self.odd_mask()).count_ones() as u64)
    }

    /// The parameter `k`, absent for `Infinity`.
    pub fn k(self) -> Option<u32> {
        match self {
            GradingSpec::KStar(k) | GradingSpec::K(k) => Some(k),
            GradingSpec::Infinity => None,
        }
    }

    /// Generators `1..=k` form a finite pool of one parity for `KStar` and `K`.
    pub fn scarce_parity(self) -> Option<Parity> {
        match self {
            GradingSpec::KStar(_) => Some(Parity::Odd),
            GradingSpec::Infinity => None,
            GradingSpec::K(_) => Some(Parity::Even),
        }
    }

    /// The command-line spelling (`kstar:K`, `inf`, `k:K`).
    pub fn cli_name(self) -> String {
        match self {
            GradingSpec::KStar(k) => format!("kstar:{k}"),
            GradingSpec::Infinity => "inf".to_string(),
            GradingSpec::K(k) => format!("k:{k}"),
        }
    }
}

fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

impl fmt::Display for GradingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradingSpec::KStar(k) => write!(f, "k*:{k}"),
            GradingSpec::Infinity => write!(f, "inf"),
            GradingSpec::K(k) => write!(f, "k:{k}"),
        }
    }
}

impl FromStr for GradingSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::GradingParse(s.to_string());
        let t = s.trim().to_ascii_lowercase();
        if t == "inf" || t == "infinity" {
            return Ok(GradingSpec::Infinity);
        }
        let (kind, k) = t.split_once(':').ok_or_else(bad)?;
        let k: u32 = k.parse().map_err(|_| bad())?;
        match kind {
            "kstar" | "k*" => Ok(GradingSpec::KStar(k)),
            "k" => Ok(GradingSpec::K(k)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for GradingSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.cli_name())
    }
}

impl<'de> Deserialize<'de> for GradingSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A sparse element of `E(n)`: nonzero coefficients only, all over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannElement {
    n: usize,
    field: FieldSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl GrassmannElement {
    pub fn zero(field: FieldSpec, n: usize) -> Result<Self> {
        if n > MAX_TRUNCATION {
            return Err(Error::TruncationOverflow {
                required: n,
                available: MAX_TRUNCATION,
            });
        }
        Ok(GrassmannElement {
            n,
            field,
            terms: BTreeMap::new(),
        })
    }

    pub fn scalar(field: FieldSpec, n: usize, c: Scalar) -> Result<Self> {
        GrassmannElement::from_terms(field, n, [(Monomial::UNIT, c)])
    }

    pub fn one(field: FieldSpec, n: usize) -> Result<Self> {
        GrassmannElement::scalar(field, n, field.one())
    }

    pub fn generator(field: FieldSpec, n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::GeneratorOutOfRange { index: i, n });
        }
        GrassmannElement::from_terms(field, n, [(Monomial::generator(i)?, field.one())])
    }

    /// Sums the given terms; repeated monomials accumulate and zeros are dropped.
    pub fn from_terms<I>(field: FieldSpec, n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut out = GrassmannElement::zero(field, n)?;
        for (m, c) in terms {
            if m.max_index() > n {
                return Err(Error::GeneratorOutOfRange {
                    index: m.max_index(),
                    n,
                });
            }
            if c.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.characteristic(),
                    right: c.field().characteristic(),
                });
            }
            out.accumulate(m, &c);
        }
        Ok(out)
    }

    fn accumulate(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn truncation(&self) -> usize {
        self.n
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: Monomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(Monomial::UNIT)
    }

    /// Union of the supports of all terms.
    pub fn support_mask(&self) -> u64 {
        self.terms.keys().fold(0, |acc, m| acc | m.0)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.characteristic(),
                right: other.field.characteristic(),
            });
        }
        if self.n != other.n {
            return Err(Error::TruncationMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(*m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        GrassmannElement {
            n: self.n,
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = GrassmannElement {
            n: self.n,
            field: self.field,
            terms: BTreeMap::new(),
        };
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, v)| (*m, v * c)).collect();
        out
    }

    /// Exterior product, extended bilinearly.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = GrassmannElement {
            n: self.n,
            field: self.field,
            terms: BTreeMap::new(),
        };
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((neg, m)) = a.mul(*b) {
                    let c = ca * cb;
                    out.accumulate(m, &if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.mul_unchecked(self))
    }

    /// Repeated product; `a^0 = 1`.
    pub fn power(&self, r: u32) -> Self {
        let mut acc = GrassmannElement::one(self.field, self.n).expect("truncation already valid");
        for _ in 0..r {
            if acc.is_zero() {
                break;
            }
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// The component of `ℤ₂`-degree `eps` under `g`.
    pub fn homogeneous_project(&self, g: GradingSpec, eps: Parity) -> Self {
        GrassmannElement {
            n: self.n,
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| g.parity(**m) == eps)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// True if every term has parity `eps` (vacuously for 0).
    pub fn is_homogeneous(&self, g: GradingSpec, eps: Parity) -> bool {
        self.terms.keys().all(|m| g.parity(*m) == eps)
    }

    /// True if every monomial has even length, i.e. the element is central.
    pub fn is_even_length(&self) -> bool {
        self.terms.keys().all(|m| m.len() % 2 == 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("element serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c}){m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    mono: Vec<usize>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    n: usize,
    #[serde(rename = "char")]
    characteristic: u64,
    terms: Vec<TermRepr>,
}

impl Serialize for GrassmannElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            n: self.n,
            characteristic: self.field.characteristic(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr {
                    mono: m.indices(),
                    coef: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GrassmannElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ElementRepr::deserialize(d)?;
        let field = FieldSpec::new(repr.characteristic).map_err(D::Error::custom)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let m = Monomial::from_indices(&t.mono).map_err(D::Error::custom)?;
            let c = field.parse_scalar(&t.coef).map_err(D::Error::custom)?;
            terms.push((m, c));
        }
        GrassmannElement::from_terms(field, repr.n, terms).map_err(D::Error::custom)
    }
}

/// Free function form of [`GrassmannElement::try_mul`].
pub fn gr_mul(a: &GrassmannElement, b: &GrassmannElement) -> Result<GrassmannElement> {
    a.try_mul(b)
}

/// Free function form of [`GrassmannElement::power`].
pub fn gr_power(a: &GrassmannElement, r: u32) -> GrassmannElement {
    a.power(r)
}

/// Total of a term's generator parities.
pub fn parity(m: Monomial, g: GradingSpec) -> Parity {
    g.parity(m)
}

/// `e_s e_{s+1} + e_{s+2} e_{s+3} + ⋯` with `a` disjoint pairs starting at `start`.
pub fn structured_even_element(
    field: FieldSpec,
    n: usize,
    a: usize,
    start: usize,
) -> Result<GrassmannElement> {
    if a == 0 {
        return GrassmannElement::zero(field, n);
    }
    let last = start + 2 * a - 1;
    if start == 0 || last > n {
        return Err(Error::TruncationOverflow {
            required: last,
            available: n,
        });
    }
    let terms = (0..a)
        .map(|j| {
            let i = start + 2 * j;
            Monomial::from_indices(&[i, i + 1]).map(|m| (m, field.one()))
        })
        .collect::<Result<Vec<_>>>()?;
    GrassmannElement::from_terms(field, n, terms)
}

/// A nonzero coefficient drawn from `±1..=±10`, reduced into the field.
pub fn random_coefficient<R: Rng>(field: FieldSpec, rng: &mut R) -> Scalar {
    loop {
        let v: i64 = rng.random_range(1..=10) * if rng.random_bool(0.5) { 1 } else { -1 };
        let c = field.from_i64(v);
        if !c.is_zero() {
            return c;
        }
    }
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of monomials of parity `eps` with length in `1..=max_len` inside `E(n)`.
fn count_parity_monomials(g: GradingSpec, eps: Parity, n: usize, max_len: usize) -> u128 {
    let odd = (g.odd_mask() & low_mask(n)).count_ones() as usize;
    let even = n - odd;
    let mut total = 0;
    for len in 1..=max_len.min(n) {
        for i in (0..=len.min(odd)).filter(|i| Parity::from_bit(*i as u64) == eps) {
            total += binom(odd, i) * binom(even, len - i);
        }
    }
    total
}

fn random_monomial<R: Rng>(n: usize, max_len: usize, rng: &mut R) -> Monomial {
    let len = rng.random_range(1..=max_len.min(n));
    let mut idx: Vec<usize> = (1..=n).collect();
    idx.partial_shuffle(rng, len);
    Monomial(idx[..len].iter().fold(0, |acc, i| acc | 1 << (i - 1)))
}

/// A reproducible random element of `E(n)` with every term of parity `eps`.
///
/// Monomials have length `1..=RANDOM_MAX_LENGTH` (no constant term), are
/// distinct, and carry nonzero coefficients.
pub fn random_homogeneous(
    field: FieldSpec,
    g: GradingSpec,
    eps: Parity,
    n: usize,
    density: usize,
    seed: u64,
) -> Result<GrassmannElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_homogeneous_with(field, g, eps, n, density, &mut rng)
}

pub fn random_homogeneous_with<R: Rng>(
    field: FieldSpec,
    g: GradingSpec,
    eps: Parity,
    n: usize,
    density: usize,
    rng: &mut R,
) -> Result<GrassmannElement> {
    if n > MAX_TRUNCATION {
        return Err(Error::TruncationOverflow {
            required: n,
            available: MAX_TRUNCATION,
        });
    }
    if density == 0 {
        return GrassmannElement::zero(field, n);
    }
    let available = count_parity_monomials(g, eps, n, RANDOM_MAX_LENGTH);
    if (density as u128) > available {
        return Err(Error::ImpossibleParity {
            grading: g.to_string(),
            parity: eps.bit(),
            n,
            requested: density,
        });
    }
    let mut chosen = BTreeSet::new();
    if available <= 4096 {
        let mut all: Vec<Monomial> = (1..=RANDOM_MAX_LENGTH.min(n))
            .flat_map(|len| subsets_of_size(n, len))
            .filter(|m| g.parity(*m) == eps)
            .collect();
        all.shuffle(rng);
        chosen.extend(all.into_iter().take(density));
    } else {
        while chosen.len() < density {
            let m = random_monomial(n, RANDOM_MAX_LENGTH, rng);
            if g.parity(m) == eps {
                chosen.insert(m);
            }
        }
    }
    let terms: Vec<_> = chosen
        .into_iter()
        .map(|m| (m, random_coefficient(field, rng)))
        .collect();
    GrassmannElement::from_terms(field, n, terms)
}

/// A random element with zero constant term and no grading constraint.
pub fn random_nilpotent<R: Rng>(
    field: FieldSpec,
    n: usize,
    density: usize,
    rng: &mut R,
) -> Result<GrassmannElement> {
    let mut terms = BTreeMap::new();
    let max = (1u128 << n.min(20)) - 1;
    let density = (density as u128).min(max) as usize;
    while terms.len() < density {
        let m = random_monomial(n, RANDOM_MAX_LENGTH, rng);
        terms.entry(m).or_insert_with(|| random_coefficient(field, rng));
    }
    GrassmannElement::from_terms(field, n, terms)
}

/// A random central element: even-length monomials only, no constant term.
pub fn random_even_length<R: Rng>(
    field: FieldSpec,
    n: usize,
    density: usize,
    rng: &mut R,
) -> Result<GrassmannElement> {
    if n < 2 {
        return GrassmannElement::zero(field, n);
    }
    let mut terms = BTreeMap::new();
    while terms.len() < density {
        let len = if n >= 4 && rng.random_bool(0.3) { 4 } else { 2 };
        let mut idx: Vec<usize> = (1..=n).collect();
        idx.partial_shuffle(rng, len);
        let m = Monomial(idx[..len].iter().fold(0, |acc, i| acc | 1 << (i - 1)));
        terms.entry(m).or_insert_with(|| random_coefficient(field, rng));
    }
    GrassmannElement::from_terms(field, n, terms)
}

fn subsets_of_size(n: usize, len: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut stack = vec![(1usize, 0u64, 0usize)];
    while let Some((next, mask, size)) = stack.pop() {
        if size == len {
            out.push(Monomial(mask));
            continue;
        }
        for i in next..=n {
            if n - i + 1 < len - size {
                break;
            }
            stack.push((i + 1, mask | 1 << (i - 1), size + 1));
        }
    }
    out
}

/// Hands out generators of `E(n)` by parity under a grading.
///
/// Fresh generators are never handed out twice. The generators `1..=k` of a
/// `KStar(k)` or `K(k)` grading form the scarce pool, which is shared rather
/// than consumed.
#[derive(Clone, Debug)]
pub struct GeneratorPool {
    grading: GradingSpec,
    n: usize,
    used: BTreeSet<usize>,
    high_water: usize,
}

impl GeneratorPool {
    pub fn new(grading: GradingSpec, n: usize) -> Self {
        let k = grading.k().unwrap_or(0) as usize;
        GeneratorPool {
            grading,
            n,
            used: (1..=k).collect(),
            high_water: 0,
        }
    }

    /// The scarce generators (`1..=k`) available within the truncation.
    pub fn scarce(&self) -> Vec<usize> {
        let k = self.grading.k().unwrap_or(0) as usize;
        (1..=k.min(self.n)).collect()
    }

    /// Next unused generator of the requested parity outside the scarce pool.
    /// Keeps counting past `n` so callers can report the truncation they need.
    pub fn fresh(&mut self, eps: Parity) -> usize {
        let mut i = 1;
        while self.used.contains(&i) || self.grading.generator_parity(i) != eps {
            i += 1;
        }
        self.used.insert(i);
        self.high_water = self.high_water.max(i);
        i
    }

    /// Largest index handed out so far.
    pub fn required(&self) -> usize {
        self.high_water
    }
}
