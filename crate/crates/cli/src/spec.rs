//! The problem-specification format: a single JSON object naming the setting,
//! the ambient structure, and the pair. Group shorthands like `Z12` or
//! `Z2xZ6` are accepted and normalized to invariant factors; element lists
//! are canonicalized on load (sorted, deduplicated, residues reduced).

use serde::{Deserialize, Serialize};

use matchcert_core::fq::{ExtensionField, FieldElement, FqSubspace};
use matchcert_core::group::{FiniteAbelianGroup, GroupElement, GroupSubset};

/// Wire form of a problem: what `check` reads from `--spec`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub setting: Setting,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDesc>,
    #[serde(rename = "A", alias = "a")]
    pub a: Vec<ElementJson>,
    #[serde(rename = "B", alias = "b")]
    pub b: Vec<ElementJson>,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Setting {
    Group,
    Field,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDesc {
    /// `"Z12"`, `"Z2xZ6"` (case-insensitive).
    Shorthand(String),
    /// Cyclic factors; normalized to invariant-factor form on load.
    Factors(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u64,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

/// One element: a bare integer (rank-one groups only) or a residue /
/// coefficient vector. Negative entries are reduced on load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementJson {
    Scalar(i64),
    Vector(Vec<i64>),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<SpecBounds>,
}

impl Options {
    pub fn is_empty(&self) -> bool {
        self.seed.is_none() && self.sample.is_none() && self.bounds.is_none()
    }
}

/// Overrides for the built-in enumeration caps.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SpecBounds {
    /// Largest `|A|` the exhaustive subset oracle will attempt under
    /// `--xcheck`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub naive_size: Option<usize>,
    /// Largest group order for full subgroup-lattice enumeration.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup_order: Option<u64>,
}

/// A spec parsed and validated into core values.
#[derive(Debug, Clone, PartialEq)]
pub enum ParsedProblem {
    Group {
        group: FiniteAbelianGroup,
        a: GroupSubset,
        b: GroupSubset,
    },
    Field {
        field: ExtensionField,
        a: FqSubspace,
        b: FqSubspace,
    },
}

pub fn parse_group_desc(desc: &GroupDesc) -> Result<FiniteAbelianGroup, String> {
    let factors = match desc {
        GroupDesc::Factors(fs) => fs.clone(),
        GroupDesc::Shorthand(s) => parse_group_shorthand(s)?,
    };
    normalize_factors(&factors)
}

fn parse_group_shorthand(s: &str) -> Result<Vec<u64>, String> {
    let mut factors = Vec::new();
    for part in s.split(['x', 'X']) {
        let part = part.trim();
        let digits = part
            .strip_prefix('Z')
            .or_else(|| part.strip_prefix('z'))
            .ok_or_else(|| format!("cannot parse group shorthand {s:?}"))?;
        let n: u64 = digits
            .parse()
            .map_err(|_| format!("cannot parse group shorthand {s:?}"))?;
        factors.push(n);
    }
    Ok(factors)
}

/// Rewrites an arbitrary product of cyclic groups in invariant-factor form,
/// by redistributing prime-power components.
fn normalize_factors(factors: &[u64]) -> Result<FiniteAbelianGroup, String> {
    if factors.iter().any(|&n| n < 1) {
        return Err("cyclic factors must be positive".to_string());
    }
    // prime -> exponents, largest first
    let mut components: std::collections::BTreeMap<u64, Vec<u32>> =
        std::collections::BTreeMap::new();
    for &n in factors {
        let mut n = n;
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                let mut e = 0;
                while n % d == 0 {
                    n /= d;
                    e += 1;
                }
                components.entry(d).or_default().push(e);
            }
            d += 1;
        }
        if n > 1 {
            components.entry(n).or_default().push(1);
        }
    }
    for exps in components.values_mut() {
        exps.sort_unstable_by(|x, y| y.cmp(x));
    }
    let depth = components.values().map(Vec::len).max().unwrap_or(0);
    let mut invariant = Vec::new();
    for slot in 0..depth {
        let mut factor: u64 = 1;
        for (&p, exps) in &components {
            if let Some(&e) = exps.get(slot) {
                factor = factor
                    .checked_mul(p.pow(e))
                    .ok_or_else(|| "group order overflows u64".to_string())?;
            }
        }
        invariant.push(factor);
    }
    invariant.reverse();
    FiniteAbelianGroup::new(invariant).map_err(|e| e.to_string())
}

pub fn parse_field_desc(desc: &FieldDesc) -> Result<ExtensionField, String> {
    match &desc.modulus {
        Some(coeffs) => {
            ExtensionField::new(desc.p, desc.m, coeffs.clone()).map_err(|e| e.to_string())
        }
        None => {
            ExtensionField::with_default_modulus(desc.p, desc.m).map_err(|e| e.to_string())
        }
    }
}

pub fn parse_group_element(
    g: &FiniteAbelianGroup,
    e: &ElementJson,
) -> Result<GroupElement, String> {
    let raw: Vec<i64> = match e {
        ElementJson::Scalar(v) => {
            if g.rank() != 1 {
                return Err(format!(
                    "bare integer element {v} needs a rank-1 group; {g} has rank {}",
                    g.rank()
                ));
            }
            vec![*v]
        }
        ElementJson::Vector(vs) => vs.clone(),
    };
    if raw.len() != g.rank() {
        return Err(format!(
            "element {raw:?} has {} residues, group {g} has rank {}",
            raw.len(),
            g.rank()
        ));
    }
    let residues: Vec<u64> = raw
        .iter()
        .zip(g.invariant_factors())
        .map(|(&v, &n)| v.rem_euclid(n as i64) as u64)
        .collect();
    g.element(residues).map_err(|e| e.to_string())
}

pub fn parse_group_set(
    g: &FiniteAbelianGroup,
    elems: &[ElementJson],
) -> Result<GroupSubset, String> {
    let parsed: Result<Vec<GroupElement>, String> =
        elems.iter().map(|e| parse_group_element(g, e)).collect();
    Ok(GroupSubset::new(parsed?))
}

pub fn parse_field_element(
    l: &ExtensionField,
    e: &ElementJson,
) -> Result<FieldElement, String> {
    let raw: Vec<i64> = match e {
        ElementJson::Scalar(_) => {
            return Err("field elements must be coefficient vectors".to_string())
        }
        ElementJson::Vector(vs) => vs.clone(),
    };
    if raw.len() > l.degree() {
        return Err(format!(
            "coefficient vector {raw:?} longer than the field degree {}",
            l.degree()
        ));
    }
    let mut coeffs: Vec<u64> = raw
        .iter()
        .map(|&v| v.rem_euclid(l.p() as i64) as u64)
        .collect();
    coeffs.resize(l.degree(), 0);
    l.element(coeffs).map_err(|e| e.to_string())
}

pub fn parse_subspace(
    l: &ExtensionField,
    rows: &[ElementJson],
) -> Result<FqSubspace, String> {
    let parsed: Result<Vec<FieldElement>, String> =
        rows.iter().map(|e| parse_field_element(l, e)).collect();
    Ok(l.span(&parsed?))
}

pub fn parse_problem(spec: &ProblemSpec) -> Result<ParsedProblem, String> {
    match spec.setting {
        Setting::Group => {
            let desc = spec
                .group
                .as_ref()
                .ok_or_else(|| "group setting needs a \"group\" entry".to_string())?;
            let group = parse_group_desc(desc)?;
            let a = parse_group_set(&group, &spec.a)?;
            let b = parse_group_set(&group, &spec.b)?;
            Ok(ParsedProblem::Group { group, a, b })
        }
        Setting::Field => {
            let desc = spec
                .field
                .as_ref()
                .ok_or_else(|| "field setting needs a \"field\" entry".to_string())?;
            let field = parse_field_desc(desc)?;
            let a = parse_subspace(&field, &spec.a)?;
            let b = parse_subspace(&field, &spec.b)?;
            Ok(ParsedProblem::Field { field, a, b })
        }
    }
}

/// Canonical wire form of a parsed problem; `parse_problem` inverts this.
pub fn to_spec(problem: &ParsedProblem) -> ProblemSpec {
    match problem {
        ParsedProblem::Group { group, a, b } => ProblemSpec {
            setting: Setting::Group,
            group: Some(GroupDesc::Factors(group.invariant_factors().to_vec())),
            field: None,
            a: a.elements().iter().map(|e| group_element_json(group, e)).collect(),
            b: b.elements().iter().map(|e| group_element_json(group, e)).collect(),
            options: Options::default(),
        },
        ParsedProblem::Field { field, a, b } => ProblemSpec {
            setting: Setting::Field,
            group: None,
            field: Some(FieldDesc {
                p: field.p(),
                m: field.degree(),
                modulus: Some(field.modulus().to_vec()),
            }),
            a: a.basis().iter().map(field_element_json).collect(),
            b: b.basis().iter().map(field_element_json).collect(),
            options: Options::default(),
        },
    }
}

/// Rank-one groups serialize elements as bare integers, everything else as
/// residue vectors.
pub fn group_element_json(g: &FiniteAbelianGroup, e: &GroupElement) -> ElementJson {
    if g.rank() == 1 {
        ElementJson::Scalar(e.residues()[0] as i64)
    } else {
        ElementJson::Vector(e.residues().iter().map(|&r| r as i64).collect())
    }
}

pub fn field_element_json(e: &FieldElement) -> ElementJson {
    ElementJson::Vector(e.coeffs().iter().map(|&c| c as i64).collect())
}
