//! JSON density-matrix files:
//!
//! ```json
//! {"convention": "spin", "rows": [[[0.25, 0.0], [0.0, 0.0], ...], ...]}
//! ```
//!
//! `convention` is `"spin"` or `"two_qubit"`; `rows` holds four rows of four
//! `[re, im]` pairs. Shape errors carry the JSON path of the offending value.

use serde_json::{json, Value};

use crate::state::{DensityMatrix, IndexConvention};
use crate::{Complex64, Error, Result};

fn parse_err(position: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        position: position.into(),
        message: message.into(),
    }
}

fn describe(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn array_of_len<'a>(v: &'a Value, len: usize, path: &str) -> Result<&'a Vec<Value>> {
    let arr = v
        .as_array()
        .ok_or_else(|| parse_err(path, format!("expected an array, found {}", describe(v))))?;
    if arr.len() != len {
        return Err(parse_err(
            path,
            format!("expected {len} elements, found {}", arr.len()),
        ));
    }
    Ok(arr)
}

pub fn parse_density_json(text: &str) -> Result<DensityMatrix> {
    let root: Value = serde_json::from_str(text).map_err(|e| {
        parse_err(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let obj = root
        .as_object()
        .ok_or_else(|| parse_err("$", format!("expected an object, found {}", describe(&root))))?;

    let convention = match obj.get("convention") {
        None => return Err(parse_err("$.convention", "missing field")),
        Some(Value::String(tag)) => IndexConvention::from_json_tag(tag).ok_or_else(|| {
            parse_err(
                "$.convention",
                format!("expected \"spin\" or \"two_qubit\", found {tag:?}"),
            )
        })?,
        Some(other) => {
            return Err(parse_err(
                "$.convention",
                format!("expected a string, found {}", describe(other)),
            ))
        }
    };

    let rows = obj
        .get("rows")
        .ok_or_else(|| parse_err("$.rows", "missing field"))?;
    let rows = array_of_len(rows, 4, "$.rows")?;
    let mut entries = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (i, row) in rows.iter().enumerate() {
        let row = array_of_len(row, 4, &format!("$.rows[{i}]"))?;
        for (j, cell) in row.iter().enumerate() {
            let path = format!("$.rows[{i}][{j}]");
            let pair = array_of_len(cell, 2, &path)?;
            let part = |k: usize| {
                pair[k].as_f64().ok_or_else(|| {
                    parse_err(
                        format!("{path}[{k}]"),
                        format!("expected a number, found {}", describe(&pair[k])),
                    )
                })
            };
            entries[i][j] = Complex64::new(part(0)?, part(1)?);
        }
    }
    DensityMatrix::new(entries, convention)
}

pub fn density_to_json(rho: &DensityMatrix) -> String {
    let rows: Vec<Value> = rho
        .entries()
        .iter()
        .map(|row| Value::Array(row.iter().map(|z| json!([z.re, z.im])).collect()))
        .collect();
    let doc = json!({
        "convention": rho.convention().json_tag(),
        "rows": rows,
    });
    serde_json::to_string_pretty(&doc).expect("serializing plain numbers cannot fail")
}
