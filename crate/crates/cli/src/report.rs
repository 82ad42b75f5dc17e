//! Report envelope, run settings and the numbers-as-strings rule.

use serde::Serialize;
use serde_json::{json, Value};

use uxh::error::Error;
use uxh::field::{Field, FieldSpec, PrimeField, DEFAULT_PRIMES};
use uxh::generic::{Consensus, DEFAULT_SEEDS};

use crate::Common;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    /// The computation succeeded but the answer is negative.
    Negative,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::Negative => 2,
            Outcome::Error => 1,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Outcome::Ok => "ok",
            Outcome::Negative => "negative",
            Outcome::Error => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Settings {
    pub consensus: Consensus<PrimeField>,
    pub primes: Vec<u64>,
    pub seeds: Vec<u64>,
}

impl Settings {
    pub fn from_common(common: &Common) -> Result<Self, Error> {
        let primes = common.primes.clone().unwrap_or_else(|| DEFAULT_PRIMES.to_vec());
        let seeds = match &common.seeds {
            Some(s) => s.clone(),
            None => seeds_from_env()?.unwrap_or_else(|| DEFAULT_SEEDS.to_vec()),
        };
        let fields = primes.iter().map(|&p| PrimeField::new(p)).collect::<Result<Vec<_>, _>>()?;
        let consensus = Consensus::new(fields, seeds.clone())?;
        Ok(Settings { consensus, primes, seeds })
    }

    pub fn field(&self) -> &PrimeField {
        self.consensus.first_field()
    }

    fn specs(&self) -> Vec<FieldSpec> {
        self.consensus.fields().iter().map(|f| f.spec()).collect()
    }
}

/// `UXH_SEED` as a comma-separated seed list.
fn seeds_from_env() -> Result<Option<Vec<u64>>, Error> {
    let Ok(raw) = std::env::var("UXH_SEED") else { return Ok(None) };
    let seeds = raw
        .split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|e| Error::Parse(format!("UXH_SEED `{raw}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if seeds.is_empty() {
        return Err(Error::Parse("UXH_SEED is empty".into()));
    }
    Ok(Some(seeds))
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

/// Result of one command: the payload and whether it is a positive answer.
pub type CommandResult = Result<(Value, Outcome), Error>;

#[derive(Clone, Debug)]
pub struct Envelope {
    pub command: String,
    pub outcome: Outcome,
    pub body: Value,
    pub error: Option<ErrorBody>,
}

impl Envelope {
    pub fn new(command: &str, settings: &Settings, result: CommandResult) -> Self {
        let provenance = json!({
            "tool": "uxh",
            "version": VERSION,
            "command": command,
            "fields": settings.specs(),
            "seeds": settings.seeds,
        });
        match result {
            Ok((value, outcome)) => {
                let mut body = provenance;
                body["status"] = json!(outcome.label());
                body["result"] = value;
                Envelope { command: command.into(), outcome, body: stringify_numbers(body), error: None }
            }
            Err(e) => Self::failed(command, Some(provenance), e),
        }
    }

    pub fn failed(command: &str, provenance: Option<Value>, e: Error) -> Self {
        let err = ErrorBody { code: e.code().into(), message: e.to_string() };
        let mut body = provenance.unwrap_or_else(|| json!({ "tool": "uxh", "version": VERSION, "command": command }));
        body["status"] = json!("error");
        body["error"] = json!(err);
        Envelope { command: command.into(), outcome: Outcome::Error, body: stringify_numbers(body), error: Some(err) }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.body).expect("JSON values serialize")
    }
}

/// Every JSON number becomes its decimal string.
pub fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_numbers).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_become_strings() {
        let v = stringify_numbers(json!({"a": 1, "b": [2, -3, true], "c": {"d": null, "e": "x"}}));
        assert_eq!(v, json!({"a": "1", "b": ["2", "-3", true], "c": {"d": null, "e": "x"}}));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Outcome::Ok.exit_code(), 0);
        assert_eq!(Outcome::Negative.exit_code(), 2);
        assert_eq!(Outcome::Error.exit_code(), 1);
    }
}
