use henselian::algebra::FiniteAlgebra;
use henselian::linalg::Matrix;
use henselian::poly::{parse_poly, poly_to_json, Poly};
use henselian::ring::{parse_json, parse_value, value_from_json, value_to_json, RingSpec, Value};
use serde_json::Value as Json;

use crate::output::{usage, Failure};

pub type Res<T> = Result<T, Failure>;

pub fn ring(text: &str) -> Res<RingSpec> {
    Ok(text.parse()?)
}

pub fn value(ring: &RingSpec, text: &str) -> Res<Value> {
    Ok(parse_value(ring, text)?)
}

pub fn poly(ring: &RingSpec, text: &str) -> Res<Poly<Value>> {
    Ok(parse_poly(ring, text)?)
}

pub fn vector(ring: &RingSpec, text: &str) -> Res<Vec<Value>> {
    match parse_json(text)? {
        Json::Array(items) => Ok(items
            .iter()
            .map(|c| value_from_json(ring, c))
            .collect::<henselian::Result<Vec<_>>>()?),
        other => Err(usage(format!("expected a coordinate array, got {}", other))),
    }
}

pub fn matrix(ring: &RingSpec, text: &str) -> Res<Matrix<Value>> {
    let Json::Array(rows) = parse_json(text)? else {
        return Err(usage("matrix must be an array of rows"));
    };
    let rows = rows
        .iter()
        .map(|r| match r {
            Json::Array(items) => Ok(items
                .iter()
                .map(|c| value_from_json(ring, c))
                .collect::<henselian::Result<Vec<_>>>()?),
            _ => Err(usage("matrix rows must be arrays")),
        })
        .collect::<Res<Vec<_>>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(usage("matrix rows must be nonempty and of equal length"));
    }
    Ok(Matrix::from_rows(rows))
}

/// `RING / [f]`: the monogenic algebra `RING[X]/(f)`.
pub fn algebra(text: &str) -> Res<FiniteAlgebra<RingSpec>> {
    let (r, f) = text
        .split_once('/')
        .ok_or_else(|| usage(format!("algebra must look like 'Zloc:3 / [-1,0,1]', got '{}'", text)))?;
    let r = ring(r)?;
    let f = poly(&r, f)?;
    Ok(FiniteAlgebra::monogenic(r, f)?)
}

pub fn val_json(ring: &RingSpec, v: &Value) -> Json {
    value_to_json(ring, v)
}

pub fn vec_json(ring: &RingSpec, v: &[Value]) -> Json {
    Json::Array(v.iter().map(|c| value_to_json(ring, c)).collect())
}

pub fn poly_json(ring: &RingSpec, f: &Poly<Value>) -> Json {
    poly_to_json(ring, f)
}

pub fn matrix_json(ring: &RingSpec, m: &Matrix<Value>) -> Json {
    Json::Array(m.to_rows().iter().map(|r| vec_json(ring, r)).collect())
}
