//! JSON encodings of verdicts, witnesses and certificates, shared by `check`,
//! `census` and `construct`. Both settings use the same shape: a `matchable`
//! flag plus either a `witness` or a `certificate` object with keys `R`, `S`,
//! `Y`, `Z` (and `d` in the field setting).

use serde_json::{json, Map, Value};

use matchcert_core::fq::{ExtensionField, FqSubspace};
use matchcert_core::fq_matching::{LinearCertificate, LinearOutcome, LinearVerdict};
use matchcert_core::group::{subgroup_generated, FiniteAbelianGroup, GroupSubset};
use matchcert_core::group_matching::{
    GroupVerdict, MatchingWitness, NearlyPeriodicCertificate,
};

use crate::spec::{
    field_element_json, group_element_json, parse_field_element, parse_group_element,
    ElementJson,
};

fn element_value(g: &FiniteAbelianGroup, e: &matchcert_core::group::GroupElement) -> Value {
    match group_element_json(g, e) {
        ElementJson::Scalar(v) => json!(v),
        ElementJson::Vector(v) => json!(v),
    }
}

pub fn group_set_json(g: &FiniteAbelianGroup, s: &GroupSubset) -> Value {
    Value::Array(s.elements().iter().map(|e| element_value(g, e)).collect())
}

pub fn subspace_json(s: &FqSubspace) -> Value {
    Value::Array(
        s.basis()
            .iter()
            .map(|b| match field_element_json(b) {
                ElementJson::Vector(v) => json!(v),
                ElementJson::Scalar(_) => unreachable!("field elements are vectors"),
            })
            .collect(),
    )
}

pub fn witness_json(g: &FiniteAbelianGroup, w: &MatchingWitness) -> Value {
    Value::Array(
        w.assignment()
            .iter()
            .map(|(a, b)| json!([element_value(g, a), element_value(g, b)]))
            .collect(),
    )
}

pub fn group_certificate_json(
    g: &FiniteAbelianGroup,
    cert: &NearlyPeriodicCertificate,
) -> Value {
    json!({
        "R": group_set_json(g, &cert.r),
        "S": group_set_json(g, &cert.s),
        "Y": group_set_json(g, &cert.y),
        "Z": group_set_json(g, &cert.z),
    })
}

pub fn linear_certificate_json(cert: &LinearCertificate) -> Value {
    json!({
        "R": subspace_json(&cert.r),
        "S": subspace_json(&cert.s),
        "Y": subspace_json(&cert.y),
        "Z": subspace_json(&cert.z),
        "d": cert.d,
    })
}

fn group_context_json(g: &FiniteAbelianGroup) -> Value {
    json!(g.invariant_factors())
}

fn field_context_json(l: &ExtensionField) -> Value {
    json!({"p": l.p(), "m": l.degree(), "modulus": l.modulus()})
}

/// Full `check` output for the group setting.
pub fn group_verdict_json(
    g: &FiniteAbelianGroup,
    a: &GroupSubset,
    b: &GroupSubset,
    verdict: &GroupVerdict,
    cross_checked: &[&str],
) -> Value {
    let mut map = Map::new();
    map.insert("setting".into(), json!("group"));
    map.insert("group".into(), group_context_json(g));
    map.insert("A".into(), group_set_json(g, a));
    map.insert("B".into(), group_set_json(g, b));
    match verdict {
        GroupVerdict::Matchable(w) => {
            map.insert("matchable".into(), json!(true));
            map.insert("decider".into(), json!("find_matching"));
            map.insert("witness".into(), witness_json(g, w));
        }
        GroupVerdict::Unmatchable(cert) => {
            map.insert("matchable".into(), json!(false));
            map.insert("decider".into(), json!("find_certificate"));
            map.insert("certificate".into(), group_certificate_json(g, cert));
        }
    }
    if !cross_checked.is_empty() {
        map.insert("cross_checked".into(), json!(cross_checked));
    }
    Value::Object(map)
}

/// Full `check` output for the field setting.
pub fn field_verdict_json(
    l: &ExtensionField,
    a: &FqSubspace,
    b: &FqSubspace,
    verdict: &LinearVerdict,
    cross_checked: &[&str],
) -> Value {
    let mut map = Map::new();
    map.insert("setting".into(), json!("field"));
    map.insert("field".into(), field_context_json(l));
    map.insert("A".into(), subspace_json(a));
    map.insert("B".into(), subspace_json(b));
    match &verdict.outcome {
        LinearOutcome::Matchable => {
            map.insert("matchable".into(), json!(true));
            map.insert("decider".into(), json!("find_linear_certificate"));
        }
        LinearOutcome::Unmatchable(cert) => {
            map.insert("matchable".into(), json!(false));
            map.insert("decider".into(), json!("find_linear_certificate"));
            map.insert("certificate".into(), linear_certificate_json(cert));
        }
    }
    if let Some(witnesses) = &verdict.basis_witnesses {
        let list: Vec<Value> = witnesses
            .iter()
            .map(|w| {
                json!({
                    "a_basis": w.a_basis.iter().map(|x| json!(x.coeffs())).collect::<Vec<_>>(),
                    "b_basis": w.b_basis.iter().map(|x| json!(x.coeffs())).collect::<Vec<_>>(),
                })
            })
            .collect();
        map.insert("basis_witnesses".into(), json!(list));
    }
    if !cross_checked.is_empty() {
        map.insert("cross_checked".into(), json!(cross_checked));
    }
    Value::Object(map)
}

fn element_json_from_value(v: &Value) -> Result<ElementJson, String> {
    serde_json::from_value(v.clone()).map_err(|e| format!("bad element: {e}"))
}

pub fn parse_group_set_value(
    g: &FiniteAbelianGroup,
    v: &Value,
) -> Result<GroupSubset, String> {
    let arr = v
        .as_array()
        .ok_or_else(|| "expected an array of elements".to_string())?;
    let mut elems = Vec::with_capacity(arr.len());
    for item in arr {
        elems.push(parse_group_element(g, &element_json_from_value(item)?)?);
    }
    Ok(GroupSubset::new(elems))
}

pub fn parse_subspace_value(l: &ExtensionField, v: &Value) -> Result<FqSubspace, String> {
    let arr = v
        .as_array()
        .ok_or_else(|| "expected an array of basis rows".to_string())?;
    let mut rows = Vec::with_capacity(arr.len());
    for item in arr {
        rows.push(parse_field_element(l, &element_json_from_value(item)?)?);
    }
    Ok(l.span(&rows))
}

/// Reconstructs a group verdict from its JSON form; the certificate's
/// subgroup is recomputed from `R`.
pub fn parse_group_verdict(
    g: &FiniteAbelianGroup,
    v: &Value,
) -> Result<GroupVerdict, String> {
    let matchable = v
        .get("matchable")
        .and_then(Value::as_bool)
        .ok_or_else(|| "verdict is missing \"matchable\"".to_string())?;
    if matchable {
        let pairs = v
            .get("witness")
            .and_then(Value::as_array)
            .ok_or_else(|| "matchable verdict is missing \"witness\"".to_string())?;
        let mut assignment = Vec::with_capacity(pairs.len());
        for pair in pairs {
            let pair = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| "witness entries must be [a, b] pairs".to_string())?;
            let a = parse_group_element(g, &element_json_from_value(&pair[0])?)?;
            let b = parse_group_element(g, &element_json_from_value(&pair[1])?)?;
            assignment.push((a, b));
        }
        MatchingWitness::from_assignment(assignment).ok_or_else(|| {
            "witness pairs do not form an assignment in canonical order".to_string()
        }).map(GroupVerdict::Matchable)
    } else {
        let cert = v
            .get("certificate")
            .ok_or_else(|| "unmatchable verdict is missing \"certificate\"".to_string())?;
        let r = parse_group_set_value(g, cert.get("R").unwrap_or(&Value::Null))?;
        let s = parse_group_set_value(g, cert.get("S").unwrap_or(&Value::Null))?;
        let y = parse_group_set_value(g, cert.get("Y").unwrap_or(&Value::Null))?;
        let z = parse_group_set_value(g, cert.get("Z").unwrap_or(&Value::Null))?;
        let h = subgroup_generated(g, &r).map_err(|e| e.to_string())?;
        Ok(GroupVerdict::Unmatchable(NearlyPeriodicCertificate {
            r,
            s,
            y,
            z,
            h,
        }))
    }
}

/// Reconstructs a linear certificate (if any) from a verdict's JSON form.
pub fn parse_linear_verdict(
    l: &ExtensionField,
    v: &Value,
) -> Result<LinearOutcome, String> {
    let matchable = v
        .get("matchable")
        .and_then(Value::as_bool)
        .ok_or_else(|| "verdict is missing \"matchable\"".to_string())?;
    if matchable {
        return Ok(LinearOutcome::Matchable);
    }
    let cert = v
        .get("certificate")
        .ok_or_else(|| "unmatchable verdict is missing \"certificate\"".to_string())?;
    let r = parse_subspace_value(l, cert.get("R").unwrap_or(&Value::Null))?;
    let s = parse_subspace_value(l, cert.get("S").unwrap_or(&Value::Null))?;
    let y = parse_subspace_value(l, cert.get("Y").unwrap_or(&Value::Null))?;
    let z = parse_subspace_value(l, cert.get("Z").unwrap_or(&Value::Null))?;
    let d = cert
        .get("d")
        .and_then(Value::as_u64)
        .ok_or_else(|| "certificate is missing \"d\"".to_string())? as usize;
    Ok(LinearOutcome::Unmatchable(LinearCertificate { r, s, y, z, d }))
}
