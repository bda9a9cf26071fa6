//! Canonical JSON encodings. Every collection keyed by names is sorted by
//! [`natural_key`], so output is byte-identical across runs whatever order
//! symbols were interned in.

use crate::cobordism::Augmentation;
use crate::dga::{ClosureDga, GeneratorKind};
use crate::distinguisher::{Certificate, LMatrix, TransferReport, ZMatrix};
use crate::laurent::{Laurent, Monomial};
use crate::map::DgaMap;
use crate::matrix::NcMatrix;
use crate::nc::NcPoly;
use crate::ring::{CoefficientRing, UnitRelation};
use crate::spec::ClosureSpec;
use crate::symbol::{natural_key, Gen, Var};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

pub const SCHEMA: u64 = 1;

type Key = Vec<(String, u64)>;

fn mono_key(m: &Monomial) -> Vec<(Key, i32)> {
    let mut k: Vec<(Key, i32)> = m.pairs().iter().map(|(v, e)| (natural_key(&v.name()), *e)).collect();
    k.sort();
    k
}

fn word_key(w: &[Gen]) -> Vec<Key> {
    w.iter().map(|g| natural_key(&g.name())).collect()
}

pub fn monomial(m: &Monomial) -> Value {
    let mut pairs: Vec<(String, i32)> = m.pairs().iter().map(|(v, e)| (v.name(), *e)).collect();
    pairs.sort_by_key(|(n, _)| natural_key(n));
    let mut out = Map::new();
    for (n, e) in pairs {
        out.insert(n, json!(e));
    }
    Value::Object(out)
}

fn sorted_terms(x: &Laurent) -> Vec<(&Monomial, &BigInt)> {
    let mut terms: Vec<(&Monomial, &BigInt)> = x.terms().collect();
    terms.sort_by_cached_key(|(m, _)| mono_key(m));
    terms
}

pub fn laurent(x: &Laurent) -> Value {
    let terms: Vec<Value> = sorted_terms(x).into_iter().map(|(m, c)| json!({"coeff": c.to_string(), "mono": monomial(m)})).collect();
    json!({ "terms": terms })
}

/// Flattened terms: one entry per (integer coefficient, monomial, word).
pub fn nc_poly(x: &NcPoly) -> Value {
    let mut words: Vec<(&Vec<Gen>, &Laurent)> = x.terms().collect();
    words.sort_by_cached_key(|(w, _)| word_key(w));
    let mut terms = Vec::new();
    for (w, c) in words {
        let names: Vec<String> = w.iter().map(|g| g.name()).collect();
        for (m, k) in sorted_terms(c) {
            terms.push(json!({"coeff": k.to_string(), "mono": monomial(m), "word": names}));
        }
    }
    json!({ "terms": terms })
}

pub fn nc_matrix(m: &NcMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| nc_poly(m.get(i, j))).collect())).collect())
}

pub fn laurent_matrix(m: &LMatrix) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(laurent).collect())).collect())
}

pub fn integer_matrix(m: &ZMatrix) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(|x| json!(x.to_string())).collect())).collect())
}

pub fn integers(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(|x| json!(x.to_string())).collect())
}

fn names(vars: &[Var]) -> Value {
    let mut v: Vec<String> = vars.iter().map(|x| x.name()).collect();
    v.sort_by_key(|n| natural_key(n));
    json!(v)
}

/// Object with generator-name keys in natural order.
pub fn by_gen(items: impl IntoIterator<Item = (Gen, Value)>) -> Value {
    let mut v: Vec<(String, Value)> = items.into_iter().map(|(g, x)| (g.name(), x)).collect();
    v.sort_by_cached_key(|(n, _)| natural_key(n));
    Value::Object(v.into_iter().collect())
}

fn by_var(items: impl IntoIterator<Item = (Var, Value)>) -> Value {
    let mut v: Vec<(String, Value)> = items.into_iter().map(|(g, x)| (g.name(), x)).collect();
    v.sort_by_cached_key(|(n, _)| natural_key(n));
    Value::Object(v.into_iter().collect())
}

pub fn spec(s: &ClosureSpec) -> Value {
    let mut basepoints = Vec::new();
    for (col, strands) in s.basepoints() {
        for (strand, label) in strands {
            basepoints.push(json!({"column": col, "strand": strand, "label": laurent(label)}));
        }
    }
    let satellite = match s.satellite() {
        Some(sat) => json!({
            "box": [s.label(sat.box_start), s.label(sat.box_end - 1)],
            "cable": [sat.cable_lo, sat.cable_len],
            "groups": sat.groups.iter().map(|g| json!({
                "kind": g.kind.as_str(),
                "crossings": g.positions.iter().map(|&p| s.label(p)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }),
        None => Value::Null,
    };
    json!({
        "name": s.name(),
        "strands": s.strands(),
        "word": s.word().letters(),
        "labels": s.labels(),
        "components": s.component_count(),
        "basepoints": basepoints,
        "satellite": satellite,
    })
}

pub fn ring(r: &CoefficientRing) -> Value {
    json!({
        "variables": names(r.variables()),
        "free": names(&r.free_variables()),
        "rank": r.rank(),
        "solved": by_var(r.solved().iter().map(|(v, x)| (*v, laurent(x)))),
    })
}

pub fn relations(rels: &[UnitRelation]) -> Value {
    Value::Array(rels.iter().map(|r| json!({"lhs": laurent(&r.lhs), "value": r.value})).collect())
}

pub fn dga(d: &ClosureDga) -> Value {
    let gens: Vec<Value> = d
        .generators()
        .iter()
        .map(|g| {
            json!({
                "name": g.gen.name(),
                "kind": match g.kind { GeneratorKind::Crossing => "crossing", GeneratorKind::Chord => "chord" },
                "degree": g.degree,
                "end_component": g.r,
                "start_component": g.c,
                "strands": [g.strands.0, g.strands.1],
            })
        })
        .collect();
    let diff = by_gen(d.generators().iter().filter(|g| g.degree == 1).map(|g| (g.gen, nc_poly(&d.d_gen(g.gen)))));
    json!({
        "spec": spec(d.spec()),
        "ring": ring(d.ring()),
        "generators": gens,
        "differential": diff,
    })
}

/// Degree-0 images and the ring map; the conjugator only with `full`.
pub fn map(m: &DgaMap, full: bool) -> Value {
    let mut out = Map::new();
    out.insert("source".into(), json!(m.source().name()));
    out.insert("target".into(), json!(m.target().name()));
    out.insert("images".into(), by_gen(m.ordered_images().iter().map(|(g, x)| (*g, nc_poly(x)))));
    out.insert("ring_map".into(), by_var(m.ordered_ring_map().iter().map(|(v, x)| (*v, laurent(x)))));
    if full {
        let (g, ginv) = m.conjugator();
        out.insert("conjugator".into(), nc_matrix(g));
        out.insert("conjugator_inverse".into(), nc_matrix(ginv));
    }
    Value::Object(out)
}

pub fn augmentation(a: &Augmentation) -> Value {
    json!({
        "spec": a.spec.name(),
        "ring": ring(&a.ring),
        "values": by_gen(a.ordered_values().iter().map(|(g, x)| (*g, laurent(x)))),
    })
}

pub fn certificate(c: &Certificate) -> Value {
    json!({
        "generator": c.generator.name(),
        "companion": c.companion.name(),
        "m0": laurent_matrix(&c.m0),
        "n": laurent_matrix(&c.n),
        "m1": laurent_matrix(&c.m1),
        "flips": c.flips.as_ref().map(|f| names(f)),
        "m1_flipped": c.m1_flipped.as_ref().map(laurent_matrix),
        "z": c.z.as_ref().map(integer_matrix),
        "e": integers(&c.e),
        "verdict": c.verdict.as_str(),
    })
}

pub fn transfer(t: &TransferReport) -> Value {
    json!({
        "generators": t.generators.iter().map(|g| g.name()).collect::<Vec<_>>(),
        "m_max": t.m_max,
        "failures": t.failures.iter().map(|(m, g)| json!({"m": m, "generator": g.name()})).collect::<Vec<_>>(),
        "path_matrix_identity": t.path_matrix_identity,
        "ok": t.ok(),
    })
}

/// Wraps a payload with the schema version and command echo.
pub fn envelope(command: &str, inputs: Value, outputs: Value, checks: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "checks": checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_laurent;

    #[test]
    fn laurent_is_sorted_by_name() {
        // Intern s10 before s9 so that interning order disagrees with names.
        let _ = Var::new("s10");
        let x = parse_laurent("s10 + 2*s9^-1*s10 - 3").unwrap();
        let text = laurent(&x).to_string();
        assert_eq!(text, r#"{"terms":[{"coeff":"-3","mono":{}},{"coeff":"2","mono":{"s9":-1,"s10":1}},{"coeff":"1","mono":{"s10":1}}]}"#);
    }

    #[test]
    fn nc_poly_flattens_coefficients() {
        let a = Gen::new("a9");
        let b = Gen::new("a11");
        let mut p = NcPoly::term(parse_laurent("s9 - 1").unwrap(), vec![b, a]);
        p.add_term(Laurent::one(), vec![a]);
        let v = nc_poly(&p);
        let terms = v["terms"].as_array().unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[0]["word"], json!(["a9"]));
        assert_eq!(terms[1]["word"], json!(["a11", "a9"]));
        assert_eq!(terms[1]["coeff"], json!("-1"));
    }
}
