//! The JSON instance format shared with the command-line tool.
//!
//! ```json
//! {
//!   "n": 4,
//!   "C": [[1, 3, ["0", "2", "0", "4"]], ...],
//!   "g": [["1", "0", "0", "0"], ...],
//!   "J": [[[...], ...], [[...], ...], [[...], ...]]
//! }
//! ```
//!
//! `C` lists only the nonzero brackets `[X_i, X_j]` with 1-based `i < j`;
//! the antisymmetric counterparts are implied. Scalars are `"p/q"` strings
//! on the rational backend and plain numbers on the float backend (the
//! parser accepts either spelling on either backend, converting as needed).

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::frame::{constants_from_brackets, LieFrame};
use crate::hn::HnStructure;
use crate::linalg::Matrix;
use crate::scalar::{Backend, Scalar};
use crate::tensor::Endo;

/// Parsed instance data before any mathematical validation. Building the
/// frame and the structure happens separately so that input errors and
/// failed structure invariants keep distinct exit paths.
#[derive(Clone, Debug)]
pub struct RawInstance {
    pub n: usize,
    pub brackets: Vec<(usize, usize, Vec<Scalar>)>,
    pub g: Matrix,
    pub j: [Matrix; 3],
}

impl RawInstance {
    /// Builds the frame and validated structure.
    pub fn build(&self) -> Result<HnStructure> {
        let frame = self.build_frame()?;
        let [m1, m2, m3] = self.j.clone();
        HnStructure::new(
            &frame,
            Endo::new(&frame, m1)?,
            Endo::new(&frame, m2)?,
            Endo::new(&frame, m3)?,
        )
    }

    pub fn build_frame(&self) -> Result<LieFrame> {
        let backend = self.g.backend();
        let c = constants_from_brackets(self.n, backend, &self.brackets)?;
        LieFrame::new(self.n, c, self.g.clone())
    }
}

fn scalar_from_value(v: &Value, backend: Backend) -> Result<Scalar> {
    match v {
        Value::String(s) => Scalar::parse(s, backend),
        Value::Number(num) => match backend {
            Backend::Float => num
                .as_f64()
                .map(Scalar::Float)
                .ok_or_else(|| Error::Parse(format!("bad number {num}"))),
            Backend::Rational => {
                if let Some(i) = num.as_i64() {
                    Ok(Scalar::from_int(i, Backend::Rational))
                } else {
                    Err(Error::Parse(format!(
                        "non-integer number {num} on the rational backend; use a \"p/q\" string"
                    )))
                }
            }
        },
        other => Err(Error::Parse(format!("expected scalar, got {other}"))),
    }
}

fn scalar_to_value(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(_) => Value::String(s.to_text()),
        Scalar::Float(x) => json!(x),
    }
}

fn matrix_from_value(v: &Value, n: usize, backend: Backend, what: &str) -> Result<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array of rows")))?;
    if rows.len() != n {
        return Err(Error::Parse(format!(
            "{what} has {} rows, expected {n}",
            rows.len()
        )));
    }
    let mut out = Vec::with_capacity(n);
    for (r, row) in rows.iter().enumerate() {
        let cells = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("{what} row {r} must be an array")))?;
        if cells.len() != n {
            return Err(Error::Parse(format!(
                "{what} row {r} has {} entries, expected {n}",
                cells.len()
            )));
        }
        let mut parsed = Vec::with_capacity(n);
        for cell in cells {
            parsed.push(scalar_from_value(cell, backend)?);
        }
        out.push(parsed);
    }
    Matrix::from_rows(out)
}

fn matrix_to_value(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    (0..m.cols())
                        .map(|c| scalar_to_value(m.at(r, c)))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Parses an instance document on the requested backend.
pub fn parse_instance(text: &str, backend: Backend) -> Result<RawInstance> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Parse("instance must be a JSON object".into()))?;

    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing or bad \"n\"".into()))? as usize;
    if n == 0 || n > 32 {
        return Err(Error::Parse(format!("unsupported dimension {n}")));
    }

    let g = matrix_from_value(
        obj.get("g")
            .ok_or_else(|| Error::Parse("missing \"g\"".into()))?,
        n,
        backend,
        "g",
    )?;

    let j_value = obj
        .get("J")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing or bad \"J\"".into()))?;
    if j_value.len() != 3 {
        return Err(Error::Parse(format!(
            "\"J\" must hold three matrices, found {}",
            j_value.len()
        )));
    }
    let mut j = Vec::with_capacity(3);
    for (a, m) in j_value.iter().enumerate() {
        j.push(matrix_from_value(m, n, backend, &format!("J{}", a + 1))?);
    }

    let mut brackets = Vec::new();
    if let Some(c_value) = obj.get("C") {
        let entries = c_value
            .as_array()
            .ok_or_else(|| Error::Parse("\"C\" must be an array".into()))?;
        for entry in entries {
            let parts = entry
                .as_array()
                .ok_or_else(|| Error::Parse("each \"C\" entry must be [i, j, [..]]".into()))?;
            if parts.len() != 3 {
                return Err(Error::Parse("each \"C\" entry must be [i, j, [..]]".into()));
            }
            let i = parts[0]
                .as_u64()
                .ok_or_else(|| Error::Parse("bracket index must be a positive integer".into()))?
                as usize;
            let jdx = parts[1]
                .as_u64()
                .ok_or_else(|| Error::Parse("bracket index must be a positive integer".into()))?
                as usize;
            if i == 0 || jdx == 0 || i >= jdx || jdx > n {
                return Err(Error::Parse(format!(
                    "bracket pair ({i}, {jdx}) out of range (need 1 <= i < j <= {n})"
                )));
            }
            let comps = parts[2]
                .as_array()
                .ok_or_else(|| Error::Parse("bracket components must be an array".into()))?;
            if comps.len() != n {
                return Err(Error::Parse(format!(
                    "bracket ({i}, {jdx}) has {} components, expected {n}",
                    comps.len()
                )));
            }
            let mut parsed = Vec::with_capacity(n);
            for c in comps {
                parsed.push(scalar_from_value(c, backend)?);
            }
            brackets.push((i - 1, jdx - 1, parsed));
        }
    }

    let j: [Matrix; 3] = j.try_into().expect("length checked");
    Ok(RawInstance { n, brackets, g, j })
}

/// Serializes a structure to the instance format. Only nonzero brackets
/// with `i < j` are listed, 1-based, in lexicographic order.
pub fn instance_to_json(h: &HnStructure) -> Value {
    let frame = h.frame();
    let n = frame.n();
    let mut c_rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let comps: Vec<&Scalar> = (0..n).map(|k| frame.c(i, j, k)).collect();
            if comps.iter().all(|v| v.is_zero()) {
                continue;
            }
            c_rows.push(json!([
                i + 1,
                j + 1,
                comps.iter().map(|v| scalar_to_value(v)).collect::<Vec<_>>(),
            ]));
        }
    }
    let mut obj = Map::new();
    obj.insert("n".into(), json!(n));
    obj.insert("C".into(), Value::Array(c_rows));
    obj.insert("g".into(), matrix_to_value(frame.metric()));
    obj.insert(
        "J".into(),
        Value::Array((1..=3).map(|a| matrix_to_value(h.j(a).matrix())).collect()),
    );
    Value::Object(obj)
}

/// Renders a JSON document with sorted keys and a trailing newline; the
/// output is byte-identical across runs for equal values.
pub fn to_pretty_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{example_g4, ExampleParams};

    fn example_json() -> String {
        let p = ExampleParams::from_ints([1, 2, 3, 4], Backend::Rational).unwrap();
        to_pretty_string(&instance_to_json(&example_g4(&p).unwrap()))
    }

    #[test]
    fn instances_round_trip_exactly() {
        let text = example_json();
        let raw = parse_instance(&text, Backend::Rational).unwrap();
        let h = raw.build().unwrap();
        let p = ExampleParams::from_ints([1, 2, 3, 4], Backend::Rational).unwrap();
        let original = example_g4(&p).unwrap();
        assert!(LieFrame::same(h.frame(), original.frame()));
        assert_eq!(h.j(1), original.j(1));
        assert_eq!(h.j(2), original.j(2));
        assert_eq!(h.j(3), original.j(3));
        // Serializing again gives identical bytes.
        assert_eq!(to_pretty_string(&instance_to_json(&h)), text);
    }

    #[test]
    fn rational_files_parse_on_the_float_backend() {
        let text = example_json();
        let raw = parse_instance(&text, Backend::Float).unwrap();
        let h = raw.build().unwrap();
        assert_eq!(h.frame().backend(), Backend::Float);
    }

    #[test]
    fn malformed_documents_are_parse_errors() {
        assert!(matches!(
            parse_instance("{", Backend::Rational),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_instance("{\"n\": 4}", Backend::Rational),
            Err(Error::Parse(_))
        ));
        // Bad bracket index range (needs 1 <= i < j <= n).
        let doc: Value = serde_json::from_str(&example_json()).unwrap();
        let mut bad = doc.clone();
        bad["C"][0][0] = json!(0);
        assert!(matches!(
            parse_instance(&bad.to_string(), Backend::Rational),
            Err(Error::Parse(_))
        ));
        let mut bad = doc;
        bad["C"][0][1] = json!(9);
        assert!(matches!(
            parse_instance(&bad.to_string(), Backend::Rational),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn fractions_and_integers_both_parse_as_rationals() {
        let doc = json!({
            "n": 4,
            "C": [],
            "g": [
                ["1/2", 0, "0", "0"],
                [0, "1", "0", "0"],
                ["0", "0", "-1", "0"],
                ["0", "0", "0", "-3/2"],
            ],
            "J": [
                [["0","-1","0","0"],["1","0","0","0"],["0","0","0","1"],["0","0","-1","0"]],
                [["0","0","-1","0"],["0","0","0","-1"],["1","0","0","0"],["0","1","0","0"]],
                [["0","0","0","1"],["0","0","-1","0"],["0","1","0","0"],["-1","0","0","0"]],
            ],
        });
        let raw = parse_instance(&doc.to_string(), Backend::Rational).unwrap();
        assert_eq!(raw.g.at(0, 0), &Scalar::ratio(1, 2, Backend::Rational));
        // Non-integer numbers are rejected on the rational backend.
        let doc = doc.to_string().replace("\"1/2\"", "0.5");
        assert!(parse_instance(&doc, Backend::Rational).is_err());
    }
}
