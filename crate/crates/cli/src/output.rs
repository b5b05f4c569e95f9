//! JSON encodings of results. Complex values become `[re, im]`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use permderiv::{BoundReport, GaussianInt, Matrix, Scalar};
use serde_json::{json, Value};

pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for Complex64 {
    fn to_json(&self) -> Value {
        json!([self.re, self.im])
    }
}

fn big(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => json!(i),
        None => json!(v.to_string()),
    }
}

impl ToJson for GaussianInt {
    fn to_json(&self) -> Value {
        json!([big(&self.re), big(&self.im)])
    }
}

impl<T: Scalar + ToJson> ToJson for Matrix<T> {
    fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows())
                .map(|i| Value::Array(self.row(i).iter().map(ToJson::to_json).collect()))
                .collect(),
        )
    }
}

pub fn bound(report: &BoundReport) -> Value {
    let witness = report.witness.as_ref().map(|w| {
        json!({
            "attained": w.attained,
            "directions": w.directions.iter().map(ToJson::to_json).collect::<Vec<_>>(),
        })
    });
    json!({
        "value": report.value,
        "kind": report.kind.name(),
        "witness": witness,
    })
}
