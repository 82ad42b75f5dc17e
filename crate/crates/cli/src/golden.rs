//! The golden manifest: commands with expected report values, run as data.

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::Parser;
use serde::Deserialize;
use serde_json::{json, Value};

use uxh::error::{Error, Result};

use crate::report::{stringify_numbers, CommandResult, Outcome, Settings};
use crate::Cli;

pub const DEFAULT_MANIFEST: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/golden.json");

#[derive(Debug, Deserialize)]
pub struct Manifest {
    pub entries: Vec<Entry>,
}

#[derive(Debug, Deserialize)]
pub struct Entry {
    pub name: String,
    /// Command line without the program name.
    pub args: Vec<String>,
    /// JSON pointer into the report -> expected value.
    pub expect: serde_json::Map<String, Value>,
    #[serde(default = "exact")]
    pub tolerance: String,
}

fn exact() -> String {
    "exact".into()
}

pub fn load(path: &Path) -> Result<Manifest> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
    let manifest: Manifest = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if let Some(e) = manifest.entries.iter().find(|e| e.tolerance != "exact") {
        return Err(Error::Invalid(format!("entry `{}`: only exact tolerance is supported", e.name)));
    }
    if manifest.entries.iter().any(|e| e.args.first().map(String::as_str) == Some("golden")) {
        return Err(Error::Invalid("golden entries cannot run golden".into()));
    }
    Ok(manifest)
}

/// Run one entry with the golden run's primes and seeds unless it sets its own.
fn run_entry(settings: &Settings, entry: &Entry) -> Value {
    let argv = std::iter::once("uxh".to_string()).chain(entry.args.iter().cloned());
    let mut cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return json!({ "name": entry.name, "pass": false, "error": { "code": "usage", "message": e.to_string() } });
        }
    };
    cli.common.primes.get_or_insert_with(|| settings.primes.clone());
    cli.common.seeds.get_or_insert_with(|| settings.seeds.clone());
    cli.common.out = None;
    let envelope = crate::run(&cli);
    let mut checks = Vec::new();
    let mut pass = true;
    for (pointer, expected) in &entry.expect {
        let expected = stringify_numbers(expected.clone());
        let observed = envelope.body.pointer(pointer).cloned().unwrap_or(Value::Null);
        let ok = observed == expected;
        pass &= ok;
        checks.push(json!({ "pointer": pointer, "expected": expected, "observed": observed, "pass": ok }));
    }
    let mut out = json!({ "name": entry.name, "args": entry.args, "status": envelope.body["status"], "pass": pass, "checks": checks });
    if let Some(err) = envelope.error {
        out["error"] = json!(err);
    }
    out
}

pub fn run(settings: &Settings, manifest: Option<&Path>, only: Option<&str>, jobs: Option<usize>) -> CommandResult {
    let path = manifest.unwrap_or(Path::new(DEFAULT_MANIFEST));
    let manifest = load(path)?;
    let entries: Vec<&Entry> = manifest.entries.iter().filter(|e| only.is_none_or(|s| e.name.contains(s))).collect();
    if entries.is_empty() {
        return Err(Error::Invalid("no golden entries selected".into()));
    }
    let jobs = jobs
        .or_else(|| std::thread::available_parallelism().ok().map(|n| n.get()))
        .unwrap_or(1)
        .clamp(1, entries.len());
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Value>>> = Mutex::new(vec![None; entries.len()]);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(entry) = entries.get(i) else { break };
                let value = run_entry(settings, entry);
                results.lock().expect("no worker panicked")[i] = Some(value);
            });
        }
    });
    let results: Vec<Value> = results.into_inner().expect("no worker panicked").into_iter().map(|v| v.expect("every entry ran")).collect();
    let passed = results.iter().filter(|r| r["pass"] == json!(true)).count();
    let outcome = if passed == results.len() { Outcome::Ok } else { Outcome::Negative };
    let summary = json!({ "entries": results.len(), "passed": passed, "failed": results.len() - passed });
    Ok((json!({ "summary": summary, "entries": results }), outcome))
}
