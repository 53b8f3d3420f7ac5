//! JSON input documents describing an algebra by its brackets.
//!
//! ```json
//! {
//!   "mode": "exact",
//!   "structure_constants": [
//!     { "i": 0, "j": 1, "coefficients": { "1": "-1", "2": "-3" } },
//!     { "i": 0, "j": 2, "coefficients": { "1": "-3", "2": 1 } }
//!   ]
//! }
//! ```
//!
//! Entry `(i, j)` lists the components of `[E_i, E_j]`. Coefficients are
//! rational strings (`"p/q"`, integers, decimals) or bare integers; bare
//! non-integer numbers are accepted only in float mode.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::lie::StructureConstants;
use crate::scalar::{parse_rational, rational_from_f64, Rational, Scalar, Tolerance};
use crate::tensor::{Tensor3, DIM};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown mode `{other}`, expected `exact` or `float`")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Exact(Rational),
    Float(f64),
}

impl Coefficient {
    pub fn to_scalar<T: Scalar>(&self) -> T {
        match self {
            Coefficient::Exact(q) => T::from_rational(q),
            Coefficient::Float(x) => {
                T::from_rational(&rational_from_f64(*x).expect("finite by construction"))
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Exact(q) => q.is_zero(),
            Coefficient::Float(x) => *x == 0.0,
        }
    }

    fn parse(value: &Value) -> Result<Self, String> {
        match value {
            Value::String(s) => parse_rational(s).map(Coefficient::Exact).map_err(|e| e.to_string()),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Coefficient::Exact(Rational::from_int(i)))
                } else if let Some(u) = n.as_u64() {
                    Ok(Coefficient::Exact(Rational::from_integer(u.into())))
                } else {
                    match n.as_f64() {
                        Some(x) if x.is_finite() => Ok(Coefficient::Float(x)),
                        _ => Err(format!("number {n} is not finite")),
                    }
                }
            }
            other => Err(format!("coefficient must be a string or number, got {other}")),
        }
    }
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Coefficient::Exact(q) => s.serialize_str(&q.to_string()),
            Coefficient::Float(x) => s.serialize_f64(*x),
        }
    }
}

/// Components of one bracket `[E_i, E_j]` with `i < j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawEntry")]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "serialize_coefficients")]
    pub coefficients: BTreeMap<usize, Coefficient>,
}

fn serialize_coefficients<S: Serializer>(
    map: &BTreeMap<usize, Coefficient>,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_map(map.iter().map(|(k, v)| (k.to_string(), v)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    i: i64,
    j: i64,
    #[serde(default)]
    coefficients: BTreeMap<String, Value>,
}

fn basis_index(value: i64, what: &str) -> Result<usize, String> {
    usize::try_from(value)
        .ok()
        .filter(|v| *v < DIM)
        .ok_or_else(|| format!("{what} = {value} is not a basis index in 0..{DIM}"))
}

impl TryFrom<RawEntry> for BracketEntry {
    type Error = String;

    fn try_from(raw: RawEntry) -> Result<Self, String> {
        let i = basis_index(raw.i, "i")?;
        let j = basis_index(raw.j, "j")?;
        if i >= j {
            return Err(format!("entry (i={i}, j={j}) must have i < j"));
        }
        let mut coefficients = BTreeMap::new();
        for (key, value) in &raw.coefficients {
            let k = key
                .trim()
                .parse::<i64>()
                .map_err(|_| format!("coefficient key `{key}` in [E{i},E{j}] is not an integer"))
                .and_then(|k| basis_index(k, "coefficient key"))?;
            let c = Coefficient::parse(value).map_err(|e| format!("[E{i},E{j}] component {k}: {e}"))?;
            coefficients.insert(k, c);
        }
        Ok(BracketEntry { i, j, coefficients })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDocument")]
pub struct InputDocument {
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub structure_constants: Vec<BracketEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default)]
    mode: Mode,
    #[serde(default)]
    tolerance: Option<Value>,
    structure_constants: Brackets,
}

impl TryFrom<RawDocument> for InputDocument {
    type Error = String;

    fn try_from(raw: RawDocument) -> Result<Self, String> {
        let tolerance = match &raw.tolerance {
            None => None,
            Some(v) => {
                let eps = match v {
                    Value::Number(n) => n.as_f64(),
                    Value::String(s) => s.trim().parse::<f64>().ok(),
                    _ => None,
                };
                let eps = eps.ok_or_else(|| format!("tolerance {v} is not a decimal number"))?;
                Tolerance::new(eps).map_err(|e| e.to_string())?;
                Some(eps)
            }
        };
        Ok(InputDocument {
            mode: raw.mode,
            tolerance,
            structure_constants: raw.structure_constants.0,
        })
    }
}

/// Bracket list with each pair `(i, j)` at most once.
struct Brackets(Vec<BracketEntry>);

impl<'de> Deserialize<'de> for Brackets {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let entries = Vec::<BracketEntry>::deserialize(d)?;
        let mut seen = BTreeSet::new();
        for e in &entries {
            if !seen.insert((e.i, e.j)) {
                return Err(serde::de::Error::custom(format!(
                    "bracket (i={}, j={}) is given more than once",
                    e.i, e.j
                )));
            }
        }
        Ok(Brackets(entries))
    }
}

/// A parse or validation failure, anchored to the input when possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocumentError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            return f.write_str(&self.message);
        }
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for DocumentError {}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError {
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        })
    }

    /// Exact mode admits neither a tolerance nor bare non-integer numbers.
    pub fn check_mode(&self) -> Result<(), String> {
        if self.mode == Mode::Float {
            return Ok(());
        }
        if self.tolerance.is_some() {
            return Err("a tolerance is only meaningful in float mode".into());
        }
        for e in &self.structure_constants {
            for (k, c) in &e.coefficients {
                if let Coefficient::Float(x) = c {
                    return Err(format!(
                        "[E{},E{}] component {k}: bare number {x} is not exact; quote it as a rational string or use float mode",
                        e.i, e.j
                    ));
                }
            }
        }
        Ok(())
    }

    /// Canonical exact-mode document listing the non-zero brackets.
    pub fn from_constants(c: &StructureConstants<Rational>) -> Self {
        let structure_constants = [(0, 1), (0, 2), (1, 2)]
            .into_iter()
            .filter_map(|(i, j)| {
                let coefficients: BTreeMap<_, _> = (0..DIM)
                    .filter(|&k| !c.get(k, i, j).is_zero())
                    .map(|k| (k, Coefficient::Exact(c.get(k, i, j).clone())))
                    .collect();
                (!coefficients.is_empty()).then_some(BracketEntry { i, j, coefficients })
            })
            .collect();
        InputDocument { mode: Mode::Exact, tolerance: None, structure_constants }
    }

    /// Brackets with every coefficient in the scalar field `T`; unlisted
    /// components are zero and `[E_j, E_i] = −[E_i, E_j]`.
    pub fn to_constants<T: Scalar>(&self) -> StructureConstants<T> {
        let mut c = Tensor3::<T>::zeros();
        for e in &self.structure_constants {
            for (&k, v) in &e.coefficients {
                let x: T = v.to_scalar();
                c[(k, e.j, e.i)] = -x.clone();
                c[(k, e.i, e.j)] = x;
            }
        }
        StructureConstants::try_from_array(c, &Tolerance::default())
            .expect("antisymmetric by construction")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(pos) => msg[..pos].to_string(),
        None => msg.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{construct_example, ExampleSpec};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn parses_example_document() {
        let text = r#"{
  "mode": "exact",
  "structure_constants": [
    { "i": 0, "j": 1, "coefficients": { "1": "-1", "2": "-3" } },
    { "i": 0, "j": 2, "coefficients": { "1": -3, "2": "1" } }
  ]
}"#;
        let doc = InputDocument::parse(text).unwrap();
        let c = doc.to_constants::<Rational>();
        let want = construct_example(&ExampleSpec { a1: q(1, 1), a2: q(3, 1) });
        assert_eq!(&c, want.constants());
        assert_eq!(*c.get(2, 1, 0), q(3, 1));
    }

    #[test]
    fn emit_parse_round_trip() {
        let alg = construct_example(&ExampleSpec { a1: q(-1, 2), a2: q(7, 3) });
        let doc = InputDocument::from_constants(alg.constants());
        let back = InputDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(&back.to_constants::<Rational>(), alg.constants());
        assert!(doc.to_json().contains("\"-1/2\""));
    }

    #[test]
    fn abelian_document_is_empty() {
        let doc = InputDocument::from_constants(&StructureConstants::zero());
        assert!(doc.structure_constants.is_empty());
        assert_eq!(InputDocument::parse(r#"{"structure_constants": []}"#).unwrap(), doc);
    }

    fn error_of(text: &str) -> DocumentError {
        InputDocument::parse(text).unwrap_err()
    }

    #[test]
    fn rejects_reversed_pair_with_line() {
        let e = error_of("{\n\"structure_constants\": [\n{\"i\": 2, \"j\": 1, \"coefficients\": {}}]\n}");
        assert_eq!(e.line, 3);
        assert!(e.message.contains("i < j"), "{e}");
    }

    #[test]
    fn rejects_bad_indices_and_literals() {
        assert!(error_of(r#"{"structure_constants": [{"i": 0, "j": 3}]}"#).message.contains("basis index"));
        assert!(error_of(r#"{"structure_constants": [{"i": 0, "j": 1, "coefficients": {"5": 1}}]}"#)
            .message
            .contains("basis index"));
        assert!(error_of(r#"{"structure_constants": [{"i": 0, "j": 1, "coefficients": {"0": "1/0"}}]}"#)
            .message
            .contains("zero denominator"));
        assert!(error_of(r#"{"structure_constants": [{"i": 0, "j": 1, "coefficients": {"0": "x"}}]}"#)
            .message
            .contains("malformed"));
    }

    #[test]
    fn rejects_duplicates_and_unknown_fields() {
        let dup = r#"{"structure_constants": [{"i": 0, "j": 1}, {"i": 0, "j": 1}]}"#;
        assert!(error_of(dup).message.contains("more than once"));
        assert!(error_of(r#"{"structure_constants": [], "extra": 1}"#).message.contains("unknown field"));
        assert!(error_of("{\"structure_constants\": [").line >= 1);
    }

    #[test]
    fn float_literals_need_float_mode() {
        let exact = r#"{"structure_constants": [{"i": 1, "j": 2, "coefficients": {"0": 0.5}}]}"#;
        let mut doc = InputDocument::parse(exact).unwrap();
        assert!(doc.check_mode().unwrap_err().contains("float mode"));
        doc.mode = Mode::Float;
        assert!(doc.check_mode().is_ok());
        let float = r#"{"mode": "float", "tolerance": 1e-6,
            "structure_constants": [{"i": 1, "j": 2, "coefficients": {"0": 0.5}}]}"#;
        let doc = InputDocument::parse(float).unwrap();
        assert_eq!(doc.tolerance, Some(1e-6));
        assert_eq!(*doc.to_constants::<f64>().get(0, 1, 2), 0.5);
        assert_eq!(*doc.to_constants::<Rational>().get(0, 2, 1), q(-1, 2));
        let tol_exact = InputDocument::parse(r#"{"tolerance": 1, "structure_constants": []}"#).unwrap();
        assert!(tol_exact.check_mode().is_err());
    }

    #[test]
    fn decimal_strings_are_exact() {
        let text = r#"{"structure_constants": [{"i": 1, "j": 2, "coefficients": {"0": "0.1"}}]}"#;
        let c = InputDocument::parse(text).unwrap().to_constants::<Rational>();
        assert_eq!(*c.get(0, 1, 2), q(1, 10));
    }
}
