//! The `g` family and the generating identities of the three graded
//! Grassmann algebras.

use serde::Serialize;

use super::{FreePoly, GradedVariable};
use crate::error::{Error, Result};
use crate::grassmann::GradingSpec;
use crate::scalar::FieldSpec;

/// `g_h(vars)`: sum over even-size subsets `T` of `(−2)^{−|T|/2}` times the
/// product of the variables outside `T` followed by the commutator chain
/// `[t₁,t₂][t₃,t₄]⋯` over `T`. Only the multilinear form is built.
pub fn build_g(field: FieldSpec, h: usize, vars: &[GradedVariable]) -> Result<FreePoly> {
    if vars.is_empty() {
        return Err(Error::EmptyVariables);
    }
    if h != vars.len() {
        return Err(Error::Invalid(format!(
            "g_{h} takes {h} variables, got {}",
            vars.len()
        )));
    }
    if h >= 64 {
        return Err(Error::Invalid(format!("g_{h} is too large to expand")));
    }
    let minus_two = field.from_i64(-2);
    let mut out = FreePoly::zero(field);
    for mask in 0u64..(1 << h) {
        let size = mask.count_ones();
        if size % 2 == 1 {
            continue;
        }
        let (inside, outside): (Vec<_>, Vec<_>) =
            vars.iter().enumerate().partition(|(i, _)| mask >> i & 1 == 1);
        let outside: Vec<_> = outside.into_iter().map(|(_, v)| *v).collect();
        let mut term = FreePoly::product(field, &outside);
        for pair in inside.chunks(2) {
            let a = FreePoly::var(field, *pair[0].1);
            let b = FreePoly::var(field, *pair[1].1);
            term = term.try_mul(&a.commutator(&b)?)?;
        }
        let coef = minus_two.pow((size / 2) as u64).inv()?;
        out = out.try_add(&term.scale(&coef))?;
    }
    Ok(out)
}

/// One generating identity, instantiated on concrete variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Template {
    pub name: String,
    pub poly: FreePoly,
}

/// A template that needs more variables of one kind than are available.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedTemplate {
    pub name: String,
    pub needed: usize,
    pub available: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TemplateSet {
    pub templates: Vec<Template>,
    pub skipped: Vec<SkippedTemplate>,
}

impl TemplateSet {
    /// Turns the first skipped template into an error.
    pub fn require_all(self) -> Result<Vec<Template>> {
        match self.skipped.first() {
            Some(s) => Err(Error::TooFewVariables {
                template: s.name.clone(),
                needed: s.needed,
                available: s.available,
            }),
            None => Ok(self.templates),
        }
    }

    /// Smallest variable count at which nothing is skipped.
    pub fn variables_needed(&self) -> usize {
        self.skipped.iter().map(|s| s.needed).max().unwrap_or(0)
    }
}

fn y(i: usize) -> GradedVariable {
    GradedVariable::y(i as u32)
}

fn z(i: usize) -> GradedVariable {
    GradedVariable::z(i as u32)
}

fn var(field: FieldSpec, v: GradedVariable) -> FreePoly {
    FreePoly::var(field, v)
}

/// `[y_a,y_{a+1}][y_{a+2},y_{a+3}]⋯` over `y_from..=y_to` (an even count).
fn y_chain(field: FieldSpec, from: usize, to: usize) -> Result<FreePoly> {
    let mut acc = FreePoly::one(field);
    let mut i = from;
    while i < to {
        acc = acc.try_mul(&var(field, y(i)).commutator(&var(field, y(i + 1)))?)?;
        i += 2;
    }
    Ok(acc)
}

fn g_on_first_z(field: FieldSpec, h: usize) -> Result<FreePoly> {
    let vars: Vec<_> = (1..=h).map(z).collect();
    build_g(field, h, &vars)
}

/// The generating identities of the graded algebra selected by `g` over
/// `field`, instantiated on `y_1..y_m`, `z_1..z_m`.
///
/// Commutator slots `x` are instantiated with both kinds. Templates needing
/// more than `m` variables of one kind are listed in `skipped`.
pub fn identity_templates(g: GradingSpec, field: FieldSpec, m: usize) -> Result<TemplateSet> {
    let mut raw: Vec<(String, FreePoly)> = Vec::new();

    for kinds in 0u8..8 {
        let mut counts = [0usize; 2];
        let mut items = Vec::with_capacity(3);
        let mut label = Vec::with_capacity(3);
        for slot in 0..3 {
            let v = if kinds >> (2 - slot) & 1 == 0 {
                counts[0] += 1;
                y(counts[0])
            } else {
                counts[1] += 1;
                z(counts[1])
            };
            label.push(v.to_string());
            items.push(var(field, v));
        }
        raw.push((
            format!("[{}]", label.join(",")),
            FreePoly::commutator_chain(&items)?,
        ));
    }

    let p = field.prime();
    let power_identity = |raw: &mut Vec<(String, FreePoly)>, p: u64| -> Result<()> {
        raw.push((format!("z1^{p}"), var(field, z(1)).pow(p as u32)?));
        Ok(())
    };

    match g {
        GradingSpec::KStar(k) => {
            let k = k as usize;
            let vars: Vec<_> = (1..=k + 1).map(z).collect();
            let name = vars.iter().map(|v| v.to_string()).collect::<String>();
            raw.push((name, FreePoly::product(field, &vars)));
            if let Some(p) = p.filter(|p| *p <= k as u64) {
                power_identity(&mut raw, p)?;
            }
        }
        GradingSpec::Infinity => {
            if let Some(p) = p {
                power_identity(&mut raw, p)?;
            }
        }
        GradingSpec::K(k) => {
            let k = k as usize;
            if k.is_multiple_of(2) {
                let chain = y_chain(field, 1, k)?;
                for x in [y(k + 2), z(1)] {
                    let last = var(field, y(k + 1)).commutator(&var(field, x))?;
                    let name = format!("{}[y{},{}]", chain_name(1, k), k + 1, x);
                    raw.push((name, chain.try_mul(&last)?));
                }
            } else {
                raw.push((chain_name(1, k + 1), y_chain(field, 1, k + 1)?));
            }
            for l in 0..=k {
                let h = k - l + 2;
                let gh = g_on_first_z(field, h)?;
                let gname = format!("g{h}(z1..z{h})");
                if l % 2 == 0 {
                    raw.push((
                        format!("{gname}{}", chain_name(1, l)),
                        gh.try_mul(&y_chain(field, 1, l)?)?,
                    ));
                } else {
                    let tail = y_chain(field, 2, l)?;
                    let head = gh.commutator(&var(field, y(1)))?;
                    raw.push((
                        format!("[{gname},y1]{}", chain_name(2, l)),
                        head.try_mul(&tail)?,
                    ));
                    let fresh = z(h + 1);
                    let mixed = var(field, fresh).commutator(&var(field, y(1)))?;
                    raw.push((
                        format!("{gname}[{fresh},y1]{}", chain_name(2, l)),
                        gh.try_mul(&mixed)?.try_mul(&tail)?,
                    ));
                }
            }
            if let Some(p) = p.filter(|p| *p <= k as u64) {
                power_identity(&mut raw, p)?;
            }
        }
    }

    let mut set = TemplateSet {
        templates: Vec::new(),
        skipped: Vec::new(),
    };
    for (name, poly) in raw {
        let (ny, nz) = poly.max_indices();
        let needed = ny.max(nz) as usize;
        if needed > m {
            set.skipped.push(SkippedTemplate {
                name,
                needed,
                available: m,
            });
        } else {
            set.templates.push(Template { name, poly });
        }
    }
    Ok(set)
}

fn chain_name(from: usize, to: usize) -> String {
    let mut s = String::new();
    let mut i = from;
    while i < to {
        s.push_str(&format!("[y{},y{}]", i, i + 1));
        i += 2;
    }
    s
}
