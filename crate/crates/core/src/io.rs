//! JSON encodings shared by the library and the command-line tool.
//!
//! Rationals are `"p/q"` strings (integers may also be plain numbers on input),
//! matrices are arrays of rows, subspaces are `{"dim", "basis"}` objects (a bare
//! array of spanning vectors is also accepted on input).

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::forms::AlternatingForm;
use crate::matrix::{QMatrix, ZMatrix};
use crate::rational::{format_rational, parse_rational, q, Rational};
use crate::subspace::Subspace;

pub fn parse_rational_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(x) => x
            .as_i64()
            .map(q)
            .ok_or_else(|| Error::input("numbers must be integers or \"p/q\" strings")),
        _ => Err(Error::input("expected a rational as a number or \"p/q\" string")),
    }
}

pub fn parse_vector(v: &Value) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| Error::input("expected an array of rationals"))?
        .iter()
        .map(parse_rational_value)
        .collect()
}

pub fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_rational(x))).collect())
}

pub fn parse_qmatrix(v: &Value) -> Result<QMatrix> {
    let rows = v.as_array().ok_or_else(|| Error::input("matrix must be an array of rows"))?;
    if rows.is_empty() {
        return Err(Error::input("empty matrix"));
    }
    QMatrix::from_rows(rows.iter().map(parse_vector).collect::<Result<_>>()?)
}

pub fn qmatrix_json(m: &QMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector_json(r)).collect())
}

pub fn zmatrix_json(m: &ZMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

pub fn bigints_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

/// Parses `"1,5,2;2,-1,-1;3,2,0"` into an integer matrix.
pub fn parse_int_matrix_str(s: &str) -> Result<ZMatrix> {
    let rows: Vec<Vec<BigInt>> = s
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse::<BigInt>().map_err(|_| Error::input(format!("bad integer {x:?}"))))
                .collect()
        })
        .collect::<Result<_>>()?;
    ZMatrix::from_rows(rows)
}

/// A form is either a skew matrix or `{"dim": n, "wedges": [[i, j, "c"], ...]}` with 1-based indices.
pub fn parse_form(v: &Value) -> Result<AlternatingForm> {
    if v.is_array() {
        return AlternatingForm::new(parse_qmatrix(v)?);
    }
    let n = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::input("form needs a matrix or \"dim\" with \"wedges\""))? as usize;
    let mut terms = Vec::new();
    for t in v.get("wedges").and_then(Value::as_array).into_iter().flatten() {
        let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| Error::input("wedge terms are [i, j, c]"))?;
        let idx = |x: &Value| -> Result<usize> {
            match x.as_u64() {
                Some(i) if i >= 1 && (i as usize) <= n => Ok(i as usize - 1),
                _ => Err(Error::input(format!("wedge index out of range 1..={n}"))),
            }
        };
        terms.push((idx(&t[0])?, idx(&t[1])?, parse_rational_value(&t[2])?));
    }
    Ok(AlternatingForm::from_wedges(n, &terms))
}

pub fn form_json(w: &AlternatingForm) -> Value {
    qmatrix_json(w.matrix())
}

/// A spanning set as an array of vectors, or the `{"dim", "basis"}` object of [`subspace_json`].
pub fn parse_subspace(ambient: usize, v: &Value) -> Result<Subspace> {
    let vecs: Vec<Vec<Rational>> = v
        .get("basis")
        .unwrap_or(v)
        .as_array()
        .ok_or_else(|| Error::input("subspace must be an array of vectors"))?
        .iter()
        .map(parse_vector)
        .collect::<Result<_>>()?;
    if vecs.iter().any(|x| x.len() != ambient) {
        return Err(Error::input(format!("subspace vectors must have {ambient} coordinates")));
    }
    Ok(Subspace::span(ambient, &vecs))
}

pub fn subspace_json(s: &Subspace) -> Value {
    json!({"dim": s.dim(), "basis": s.basis().iter().map(|b| vector_json(b)).collect::<Vec<_>>()})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let m = QMatrix::from_rows(vec![vec![q(1), crate::rational::qf(-1, 2)], vec![q(0), q(3)]]).unwrap();
        assert_eq!(parse_qmatrix(&qmatrix_json(&m)).unwrap(), m);
    }

    #[test]
    fn int_matrix_string() {
        let m = parse_int_matrix_str("1,5,2;2,-1,-1;3,2,0").unwrap();
        assert_eq!(m, ZMatrix::from_i64(&[&[1, 5, 2], &[2, -1, -1], &[3, 2, 0]]));
        assert_eq!(parse_int_matrix_str("1,2;3").unwrap_err().kind(), "input");
        assert_eq!(parse_int_matrix_str("1,x").unwrap_err().kind(), "input");
    }

    #[test]
    fn form_encodings_agree() {
        let w = parse_form(&json!({"dim": 4, "wedges": [[1, 2, 1], [3, 4, "-2"]]})).unwrap();
        assert_eq!(parse_form(&form_json(&w)).unwrap(), w);
        assert!(parse_form(&json!([[0, 1], [0, 0]])).is_err());
        assert!(parse_form(&json!({"dim": 2, "wedges": [[1, 3, 1]]})).is_err());
    }

    #[test]
    fn subspace_round_trip() {
        let s = Subspace::span(3, &[vec![q(1), q(2), q(0)], vec![q(2), q(4), q(0)], vec![q(0), q(0), q(1)]]);
        let back = parse_subspace(3, &subspace_json(&s)).unwrap();
        assert_eq!(back.basis(), s.basis());
        assert_eq!(parse_subspace(3, &json!([["1", "2", "0"], [0, 0, 1]])).unwrap().basis(), s.basis());
    }
}
