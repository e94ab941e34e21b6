//! Output records. Human output is one line per record; structured output is
//! one JSON object per line with keys in sorted order.

use std::fmt::Write as _;

use clap::ValueEnum;
use num_bigint::BigInt;
use serde_json::{Map, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Str(String),
    /// Arbitrary-precision integers travel as decimal strings in JSON.
    Int(BigInt),
    Count(u64),
    Bool(bool),
    List(Vec<Value>),
    None,
}

impl From<&str> for Value {
    fn from(s: &str) -> Value {
        Value::Str(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Value {
        Value::Str(s)
    }
}

impl From<&BigInt> for Value {
    fn from(n: &BigInt) -> Value {
        Value::Int(n.clone())
    }
}

impl From<BigInt> for Value {
    fn from(n: BigInt) -> Value {
        Value::Int(n)
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Value {
        Value::Count(n as u64)
    }
}

impl From<u64> for Value {
    fn from(n: u64) -> Value {
        Value::Count(n)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Value {
        Value::Bool(b)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(o: Option<T>) -> Value {
        o.map_or(Value::None, Into::into)
    }
}

/// A list of displayable items, rendered by their `Display` form.
pub fn list<T: ToString>(items: impl IntoIterator<Item = T>) -> Value {
    Value::List(items.into_iter().map(|x| Value::Str(x.to_string())).collect())
}

impl Value {
    fn json(&self) -> Json {
        match self {
            Value::Str(s) => Json::String(s.clone()),
            Value::Int(n) => Json::String(n.to_string()),
            Value::Count(n) => Json::from(*n),
            Value::Bool(b) => Json::Bool(*b),
            Value::List(v) => Json::Array(v.iter().map(Value::json).collect()),
            Value::None => Json::Null,
        }
    }

    fn human(&self, top: bool) -> String {
        match self {
            Value::Str(s) if top && (s.is_empty() || s.contains(char::is_whitespace)) => format!("{s:?}"),
            Value::Str(s) => s.clone(),
            Value::Int(n) => n.to_string(),
            Value::Count(n) => n.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::List(v) => {
                let items: Vec<String> = v.iter().map(|x| x.human(false)).collect();
                format!("{{{}}}", items.join(", "))
            }
            Value::None => "-".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub kind: String,
    pub fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new(kind: impl Into<String>) -> Record {
        Record {
            kind: kind.into(),
            fields: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, v: impl Into<Value>) -> Record {
        self.fields.push((key.to_string(), v.into()));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => {
                let mut s = self.kind.clone();
                for (k, v) in &self.fields {
                    let _ = write!(s, " {k}={}", v.human(true));
                }
                s
            }
            Format::Json => {
                let mut m = Map::new();
                m.insert("record".into(), Json::String(self.kind.clone()));
                for (k, v) in &self.fields {
                    m.insert(k.clone(), v.json());
                }
                Json::Object(m).to_string()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn human_and_json_forms() {
        let r = Record::new("xy")
            .with("c", BigInt::from(5))
            .with("x", list(["(5, x+2)"]))
            .with("poly", "5*x^2 - 4*x + 1")
            .with("ok", true)
            .with("alpha", Option::<String>::None);
        assert_eq!(
            r.render(Format::Human),
            r#"xy c=5 x={(5, x+2)} poly="5*x^2 - 4*x + 1" ok=true alpha=-"#
        );
        assert_eq!(
            r.render(Format::Json),
            r#"{"alpha":null,"c":"5","ok":true,"poly":"5*x^2 - 4*x + 1","record":"xy","x":["(5, x+2)"]}"#
        );
    }
}
