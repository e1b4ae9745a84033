//! Expected values for fixtures. Every entry carries a provenance tag; a registry document
//! with an untagged entry is rejected.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::harness::fixtures::Provenance;

const BUILTIN: &str = include_str!("../../fixtures/expected.json");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expected {
    pub fixture: String,
    pub quantity: String,
    pub value: Value,
    pub provenance: Provenance,
    pub note: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    fixture: String,
    quantity: String,
    value: Value,
    provenance: Option<Provenance>,
    #[serde(default)]
    note: String,
}

pub fn parse_registry(text: &str) -> Result<Vec<Expected>> {
    let entries: Vec<Entry> = serde_json::from_str(text).map_err(|e| Error::Input(format!("registry: {e}")))?;
    let mut out: Vec<Expected> = Vec::with_capacity(entries.len());
    for e in entries {
        let Some(provenance) = e.provenance else {
            return Err(Error::Input(format!("registry: {}/{} has no provenance", e.fixture, e.quantity)));
        };
        if out.iter().any(|x| x.fixture == e.fixture && x.quantity == e.quantity) {
            return Err(Error::Input(format!("registry: duplicate {}/{}", e.fixture, e.quantity)));
        }
        out.push(Expected { fixture: e.fixture, quantity: e.quantity, value: e.value, provenance, note: e.note });
    }
    Ok(out)
}

pub fn registry() -> Vec<Expected> {
    parse_registry(BUILTIN).expect("builtin registry is valid")
}

pub fn lookup(fixture: &str, quantity: &str) -> Option<Expected> {
    registry().into_iter().find(|e| e.fixture == fixture && e.quantity == quantity)
}

/// The expected value deserialized into `T`; panics when missing, for use in tests.
pub fn expect<T: serde::de::DeserializeOwned>(fixture: &str, quantity: &str) -> T {
    let e = lookup(fixture, quantity).unwrap_or_else(|| panic!("no expected value {fixture}/{quantity}"));
    serde_json::from_value(e.value).unwrap_or_else(|err| panic!("{fixture}/{quantity}: {err}"))
}
