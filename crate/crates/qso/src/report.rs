//! JSON reports with 17 significant digits.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Map, Value};

use qso_core::{Eigenvalue, SimplexPoint};

/// Pretty printer that writes every float as `d.dddddddddddddddde±x`.
struct Digits17<'a>(PrettyFormatter<'a>);

impl Formatter for Digits17<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object_value(writer)
    }
}

/// Serializes `value` as indented JSON. Non-finite floats become `null`.
pub fn to_json_string(value: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("writing to a Vec cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// Top-level report document.
#[derive(Debug, Clone)]
pub struct Report {
    pub operator: Value,
    pub parameters: Map<String, Value>,
    pub seed: Option<u64>,
    pub tolerances: Map<String, Value>,
    pub results: Vec<Value>,
}

impl Report {
    pub fn new(operator: Value) -> Self {
        Self { operator, parameters: Map::new(), seed: None, tolerances: Map::new(), results: Vec::new() }
    }

    pub fn parameter(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_owned(), value.into());
        self
    }

    pub fn tolerance(mut self, key: &str, value: f64) -> Self {
        self.tolerances.insert(key.to_owned(), float(value));
        self
    }

    pub fn to_value(&self) -> Value {
        json!({
            "operator": self.operator,
            "parameters": self.parameters,
            "seed": self.seed,
            "tolerances": self.tolerances,
            "results": self.results,
        })
    }

    pub fn to_json(&self) -> String {
        to_json_string(&self.to_value())
    }
}

pub fn float(v: f64) -> Value {
    Value::from(v)
}

pub fn opt_float(v: Option<f64>) -> Value {
    v.map_or(Value::Null, Value::from)
}

pub fn point(x: &SimplexPoint) -> Value {
    Value::from(x.coords().to_vec())
}

pub fn eigenvalues(values: &[Eigenvalue]) -> Value {
    values.iter().map(|e| json!({ "re": e.re, "im": e.im, "modulus": e.modulus() })).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        let s = to_json_string(&json!({ "x": 2.0 / 7.0, "n": 3, "bad": f64::NAN }));
        assert!(s.contains("2.8571428571428570e-1"), "{s}");
        assert!(s.contains("\"n\": 3"));
        assert!(s.contains("\"bad\": null"));
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["x"].as_f64().unwrap(), 2.0 / 7.0);
    }
}
