//! JSON helpers for arbitrary-precision integers and `p/q` rationals.

use num_bigint::BigInt;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::simplex::Rational;

pub fn int_value(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse().expect("integer literal is a JSON number"))
}

pub fn int_array(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}

pub fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array(m.row_iter().map(int_array).collect())
}

pub fn rational_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Input(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

pub fn as_int(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            n.to_string().parse().map_err(|_| Error::Input(format!("{what}: expected an integer, found {n}")))
        }
        other => Err(Error::Input(format!("{what}: expected an integer, found {other}"))),
    }
}

pub fn as_int_array(v: &Value, what: &str) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| Error::Input(format!("{what}: expected an array")))?
        .iter()
        .map(|x| as_int(x, what))
        .collect()
}

/// A JSON list of equally long integer rows.
pub fn as_matrix(v: &Value, what: &str) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Input(format!("{what}: expected a list of rows")))?
        .iter()
        .map(|r| as_int_array(r, what))
        .collect::<Result<Vec<_>>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    IntMatrix::from_rows(rows, cols).map_err(|e| Error::Input(format!("{what}: {e}")))
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))
}
