//! JSON job input.
//!
//! A document is either a bare matrix or an object with any of the keys
//! `a`/`A`, `x`/`X`, `directions`. A matrix is an array of rows; an entry is
//! a number or a two-element `[re, im]` array.

use num_complex::Complex64;
use permderiv::ComplexMatrix;
use serde_json::Value;

#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Default)]
pub struct Job {
    pub a: Option<ComplexMatrix>,
    pub x: Option<ComplexMatrix>,
    pub directions: Option<Vec<ComplexMatrix>>,
}

fn bad(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

fn entry(v: &Value, i: usize, j: usize) -> Result<Complex64, InputError> {
    let num = |v: &Value| {
        v.as_f64()
            .filter(|f| f.is_finite())
            .ok_or_else(|| bad(format!("entry ({i},{j}) is not a finite number")))
    };
    match v {
        Value::Number(_) => Ok(Complex64::new(num(v)?, 0.0)),
        Value::Array(pair) if pair.len() == 2 => Ok(Complex64::new(num(&pair[0])?, num(&pair[1])?)),
        _ => Err(bad(format!("entry ({i},{j}) must be a number or [re, im]"))),
    }
}

pub fn parse_matrix(v: &Value, what: &str) -> Result<ComplexMatrix, InputError> {
    let rows = v
        .as_array()
        .ok_or_else(|| bad(format!("{what} must be an array of rows")))?;
    let n = rows.len();
    let mut data = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| bad(format!("{what} row {i} is not an array")))?;
        if row.len() != n {
            return Err(bad(format!("{what} is not square: row {i} has {} entries, expected {n}", row.len())));
        }
        for (j, e) in row.iter().enumerate() {
            data.push(entry(e, i, j).map_err(|e| bad(format!("{what}: {e}")))?);
        }
    }
    ComplexMatrix::from_vec(n, n, data).map_err(|e| bad(e.to_string()))
}

fn key<'a>(obj: &'a serde_json::Map<String, Value>, names: &[&str]) -> Option<&'a Value> {
    names.iter().find_map(|k| obj.get(*k))
}

pub fn parse_job(text: &str) -> Result<Job, InputError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    match &doc {
        Value::Array(_) => Ok(Job {
            a: Some(parse_matrix(&doc, "matrix")?),
            ..Job::default()
        }),
        Value::Object(obj) => {
            if let Some(other) = obj.keys().find(|k| !["a", "A", "x", "X", "directions"].contains(&k.as_str())) {
                return Err(bad(format!("unknown key {other:?}")));
            }
            let a = key(obj, &["a", "A"]).map(|v| parse_matrix(v, "a")).transpose()?;
            let x = key(obj, &["x", "X"]).map(|v| parse_matrix(v, "x")).transpose()?;
            let directions = match obj.get("directions") {
                None => None,
                Some(Value::Array(list)) => Some(
                    list.iter()
                        .enumerate()
                        .map(|(p, m)| parse_matrix(m, &format!("directions[{p}]")))
                        .collect::<Result<Vec<_>, _>>()?,
                ),
                Some(_) => return Err(bad("directions must be an array of matrices")),
            };
            Ok(Job { a, x, directions })
        }
        _ => Err(bad("input must be a matrix or an object")),
    }
}
