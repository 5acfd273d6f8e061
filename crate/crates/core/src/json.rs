//! JSON encodings of fields, matrices, subspaces and tori.
//!
//! Field elements are coefficient arrays over the field's coefficient field,
//! lowest degree first. Moduli use the same convention.

use num_bigint::BigUint;
use serde::Serializer;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::field::{make_prime_field, FieldElem, FieldSpec};
use crate::matrix::MatrixGF;
use crate::subspace::Subspace;
use crate::torus::{certify_torus, Ambient, PartitionType, Torus};

/// Serializes a big integer as a bare JSON number.
pub fn big<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&big_number(x), s)
}

pub fn big_opt<S: Serializer>(x: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => big(x, s),
        None => s.serialize_none(),
    }
}

pub fn big_number(x: &BigUint) -> serde_json::Number {
    x.to_string().parse().expect("decimal digits form a JSON number")
}

pub fn big_value(x: &BigUint) -> Value {
    Value::Number(big_number(x))
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub fn field_to_json(f: &FieldSpec) -> Value {
    let mut m = Map::new();
    m.insert("p".into(), json!(f.p()));
    m.insert("ell".into(), json!(f.ell()));
    m.insert("modulus".into(), json!(f.modulus()));
    if let Some(b) = f.base().filter(|b| !b.is_prime_field()) {
        m.insert("base".into(), field_to_json(b));
    }
    Value::Object(m)
}

fn uint(v: &Value, key: &str) -> Result<u64> {
    v.get(key).and_then(Value::as_u64).ok_or_else(|| bad(format!("missing or invalid {key:?}")))
}

fn uint_array(v: &Value) -> Result<Vec<u32>> {
    v.as_array()
        .ok_or_else(|| bad("expected an array of integers"))?
        .iter()
        .map(|x| x.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(|| bad("expected a small non-negative integer")))
        .collect()
}

pub fn field_from_json(v: &Value) -> Result<FieldSpec> {
    let p = uint(v, "p")?;
    let ell = uint(v, "ell")?;
    let prime = make_prime_field(p)?;
    let modulus = v.get("modulus").map(uint_array).transpose()?;
    let field = match (v.get("base"), modulus) {
        (Some(b), Some(m)) => FieldSpec::with_modulus(&field_from_json(b)?, m)?,
        (Some(_), None) => return Err(bad("a tower field needs a modulus")),
        (None, None) if ell == 1 => prime,
        (None, None) => return Err(bad("an extension field needs a modulus")),
        (None, Some(m)) => FieldSpec::with_modulus(&prime, m)?,
    };
    if field.p() as u64 != p || field.ell() as u64 != ell {
        return Err(Error::InvalidField(format!("p = {p}, ell = {ell} disagree with the modulus")));
    }
    Ok(field)
}

pub fn elem_to_json(x: &FieldElem) -> Value {
    json!({ "coeffs": x.coeffs() })
}

pub fn elem_from_json(f: &FieldSpec, v: &Value) -> Result<FieldElem> {
    let coeffs = uint_array(v.get("coeffs").ok_or_else(|| bad("missing \"coeffs\""))?)?;
    Ok(f.elem(entry_code(f, &coeffs)?))
}

fn entry_code(f: &FieldSpec, coeffs: &[u32]) -> Result<u32> {
    if f.is_prime_field() {
        return match coeffs {
            [c] if *c < f.order() => Ok(*c),
            _ => Err(bad(format!("{coeffs:?} is not an element of GF({})", f.order()))),
        };
    }
    f.code_of(coeffs)
}

fn rows_json(x: &MatrixGF) -> Value {
    let f = x.field();
    Value::Array(x.rows().iter().map(|r| Value::Array(r.iter().map(|&c| json!(f.coeffs_of(c))).collect())).collect())
}

pub fn matrix_to_json(x: &MatrixGF) -> Value {
    json!({ "field": field_to_json(x.field()), "n": x.n(), "rows": rows_json(x) })
}

fn matrix_rows(f: &FieldSpec, n: usize, v: &Value) -> Result<MatrixGF> {
    let rows = v.as_array().ok_or_else(|| bad("\"rows\" must be an array"))?;
    if rows.len() != n {
        return Err(Error::DimensionMismatch(format!("expected {n} rows, got {}", rows.len())));
    }
    let mut codes = Vec::with_capacity(n * n);
    for r in rows {
        let r = r.as_array().ok_or_else(|| bad("each row must be an array"))?;
        if r.len() != n {
            return Err(Error::DimensionMismatch(format!("expected {n} columns, got {}", r.len())));
        }
        for e in r {
            codes.push(entry_code(f, &uint_array(e)?)?);
        }
    }
    Ok(MatrixGF::from_codes(f.clone(), n, codes))
}

/// A matrix inside an enclosing object that already fixes the field and size.
fn matrix_in(f: &FieldSpec, n: usize, v: &Value) -> Result<MatrixGF> {
    match v.get("rows") {
        Some(rows) => {
            if let Some(inner) = v.get("field") {
                if field_from_json(inner)? != *f {
                    return Err(Error::FieldMismatch);
                }
            }
            matrix_rows(f, n, rows)
        }
        None => matrix_rows(f, n, v),
    }
}

pub fn matrix_from_json(v: &Value) -> Result<MatrixGF> {
    let f = field_from_json(v.get("field").ok_or_else(|| bad("missing \"field\""))?)?;
    let n = uint(v, "n")? as usize;
    matrix_rows(&f, n, v.get("rows").ok_or_else(|| bad("missing \"rows\""))?)
}

pub fn subspace_to_json(s: &Subspace) -> Value {
    let basis: Vec<Value> = s.basis().iter().map(matrix_to_json).collect();
    json!({ "field": field_to_json(s.field()), "n": s.n(), "basis": basis })
}

/// Accepts any spanning set as `"basis"` and reduces it.
pub fn subspace_from_json(v: &Value) -> Result<Subspace> {
    let f = field_from_json(v.get("field").ok_or_else(|| bad("missing \"field\""))?)?;
    let n = uint(v, "n")? as usize;
    if n == 0 {
        return Err(bad("n must be positive"));
    }
    let gens = v
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"basis\" array"))?
        .iter()
        .map(|m| matrix_in(&f, n, m))
        .collect::<Result<Vec<_>>>()?;
    Subspace::span(f, n, &gens)
}

pub fn torus_to_json(t: &Torus) -> Value {
    let mut v = subspace_to_json(t.space());
    let m = v.as_object_mut().expect("object");
    m.insert("ambient".into(), json!(t.ambient()));
    if let Some(ty) = t.cached_type() {
        m.insert("type".into(), json!(ty));
    }
    if let Some(e) = t.cached_idempotents() {
        m.insert("idempotents".into(), Value::Array(e.iter().map(matrix_to_json).collect()));
    }
    m.insert("t3_mode".into(), json!(t.t3_mode()));
    v
}

/// Reads a subspace and its ambient (default `gl`); the result is certified
/// afresh rather than trusted.
pub fn torus_from_json(v: &Value) -> Result<Torus> {
    let s = subspace_from_json(v)?;
    let ambient = match v.get("ambient") {
        Some(a) => serde_json::from_value::<Ambient>(a.clone())?,
        None => Ambient::Gl,
    };
    let t = certify_torus(&s, ambient)?;
    if let Some(ty) = v.get("type") {
        let claimed: PartitionType = serde_json::from_value(ty.clone())?;
        if ambient == Ambient::Gl && crate::torus::torus_type(&t)? != claimed {
            return Err(bad(format!("declared type {claimed} does not match")));
        }
    }
    Ok(t)
}

pub fn ambient_of(v: &Value) -> Result<Ambient> {
    match v.get("ambient") {
        Some(a) => Ok(serde_json::from_value(a.clone())?),
        None => Ok(Ambient::Gl),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{field_of_order, make_extension};
    use crate::torus::canonical_torus;

    #[test]
    fn field_round_trip() {
        let f2 = field_of_order(2).unwrap();
        assert_eq!(field_to_json(&f2), json!({"p":2,"ell":1,"modulus":[0,1]}));
        let f4 = field_of_order(4).unwrap();
        assert_eq!(field_to_json(&f4), json!({"p":2,"ell":2,"modulus":[1,1,1]}));
        let tower = make_extension(&f4, 2).unwrap();
        let v = field_to_json(&tower);
        assert!(v.get("base").is_some());
        for f in [f2, f4, tower, field_of_order(9).unwrap()] {
            assert_eq!(field_from_json(&field_to_json(&f)).unwrap(), f);
        }
        assert!(field_from_json(&json!({"p":2,"ell":2,"modulus":[1,0,1]})).is_err());
        assert!(field_from_json(&json!({"p":4,"ell":1})).is_err());
    }

    #[test]
    fn elem_round_trip() {
        let f9 = field_of_order(9).unwrap();
        for x in f9.elements() {
            assert_eq!(elem_from_json(&f9, &elem_to_json(&x)).unwrap(), x);
        }
    }

    #[test]
    fn matrix_and_subspace_round_trip() {
        let f4 = field_of_order(4).unwrap();
        let x = MatrixGF::from_codes(f4.clone(), 2, vec![0, 1, 2, 3]);
        let v = matrix_to_json(&x);
        assert_eq!(v["rows"], json!([[[0, 0], [1, 0]], [[0, 1], [1, 1]]]));
        assert_eq!(matrix_from_json(&v).unwrap(), x);
        let t = canonical_torus(&PartitionType::new(vec![2, 1]).unwrap(), &f4, Ambient::Gl).unwrap();
        assert_eq!(subspace_from_json(&subspace_to_json(t.space())).unwrap(), *t.space());
        let back = torus_from_json(&torus_to_json(&t)).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn big_numbers_stay_numbers() {
        let x = BigUint::from(9u32).pow(30);
        assert_eq!(serde_json::to_string(&big_value(&x)).unwrap(), x.to_string());
    }
}
