//! JSON wire formats. Rationals are `"p/q"` strings; integers are numbers when they fit in `i64`.

use std::sync::Arc;

use nillat_core::group::GroupElement;
use nillat_core::lattice::UniformSubgroup;
use nillat_core::lie::{catalog, LieAlgebra};
use nillat_core::linalg::{IntMatrix, Matrix, RatMatrix, Rational};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::CliError;

fn bad(what: &str) -> CliError {
    CliError::Format(what.into())
}

pub fn int_to_json(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

pub fn rat_to_json(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn int_from_json(v: &Value) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad("integer expected")),
        Value::String(s) => s.trim().parse().map_err(|_| bad("integer expected")),
        _ => Err(bad("integer expected")),
    }
}

pub fn rat_from_str(s: &str) -> Result<Rational, CliError> {
    let s = s.trim();
    let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad("rational expected"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d == BigInt::from(0) {
                return Err(bad("zero denominator"));
            }
            Ok(Rational::new(parse(n)?, d))
        }
        None => Ok(Rational::from_integer(parse(s)?)),
    }
}

pub fn rat_from_json(v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::Number(n) => n.as_i64().map(|x| Rational::from_integer(x.into())).ok_or_else(|| bad("rational expected")),
        Value::String(s) => rat_from_str(s),
        _ => Err(bad("rational expected")),
    }
}

fn matrix_to_json<T>(m: &Matrix<T>, f: impl Fn(&T) -> Value) -> Value {
    let entries: Vec<Value> = (0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| f(m.get(i, j))).collect())).collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

pub fn int_matrix_to_json(m: &IntMatrix) -> Value {
    matrix_to_json(m, int_to_json)
}

pub fn rat_matrix_to_json(m: &RatMatrix) -> Value {
    matrix_to_json(m, rat_to_json)
}

pub fn rat_matrix_from_json(v: &Value) -> Result<RatMatrix, CliError> {
    let dim = |k: &str| v.get(k).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| bad("matrix needs rows and cols"));
    let (rows, cols) = (dim("rows")?, dim("cols")?);
    let entries = v.get("entries").and_then(Value::as_array).ok_or_else(|| bad("matrix needs entries"))?;
    if entries.len() != rows {
        return Err(bad("entries do not match rows"));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in entries {
        let row = row.as_array().ok_or_else(|| bad("matrix rows must be arrays"))?;
        if row.len() != cols {
            return Err(bad("entries do not match cols"));
        }
        for x in row {
            data.push(rat_from_json(x)?);
        }
    }
    Ok(RatMatrix::new(rows, cols, data)?)
}

pub fn algebra_from_json(v: &Value) -> Result<Arc<LieAlgebra>, CliError> {
    let name = v.get("algebra").and_then(Value::as_str).ok_or_else(|| bad("missing algebra"))?;
    Ok(catalog(name)?)
}

fn rat_vec(v: Option<&Value>, what: &str) -> Result<Vec<Rational>, CliError> {
    v.and_then(Value::as_array).ok_or_else(|| bad(what))?.iter().map(rat_from_json).collect()
}

pub fn element_to_json(g: &GroupElement) -> Value {
    json!({"algebra": g.algebra().name(), "log": g.log().iter().map(rat_to_json).collect::<Vec<_>>()})
}

/// Accepts either the group form `{"log": [...]}` or the algebra form `{"coords": [...]}`.
pub fn element_from_json(v: &Value) -> Result<GroupElement, CliError> {
    let g = algebra_from_json(v)?;
    let log = rat_vec(v.get("log").or_else(|| v.get("coords")), "element needs log or coords")?;
    Ok(GroupElement::new(g, log)?)
}

pub fn lattice_to_json(l: &UniformSubgroup) -> Value {
    let basis: Vec<Value> = l.vectors().iter().map(|b| Value::Array(b.iter().map(rat_to_json).collect())).collect();
    json!({"algebra": l.algebra().name(), "basis": basis, "verified": l.is_verified()})
}

/// Parses a lattice; the `verified` field is ignored and closure is re-checked with `seed`.
pub fn lattice_from_json(v: &Value, seed: u64) -> Result<UniformSubgroup, CliError> {
    let g = algebra_from_json(v)?;
    let basis = v.get("basis").and_then(Value::as_array).ok_or_else(|| bad("lattice needs basis"))?;
    let basis = basis.iter().map(|b| rat_vec(Some(b), "basis vectors must be arrays")).collect::<Result<Vec<_>, _>>()?;
    let lattice = UniformSubgroup::new(g, basis)?;
    Ok(lattice.into_verified_with_seed(seed)?)
}

/// Like [`lattice_from_json`] but keeps lattices that are not closed, unverified.
pub fn lattice_from_json_unchecked(v: &Value) -> Result<UniformSubgroup, CliError> {
    let g = algebra_from_json(v)?;
    let basis = v.get("basis").and_then(Value::as_array).ok_or_else(|| bad("lattice needs basis"))?;
    let basis = basis.iter().map(|b| rat_vec(Some(b), "basis vectors must be arrays")).collect::<Result<Vec<_>, _>>()?;
    Ok(UniformSubgroup::new(g, basis)?)
}
