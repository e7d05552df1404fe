//! JSON input for local systems and divisor tuples.
//!
//! ```json
//! {"rank": 2, "q": 3, "places": [{"id": "x1", "degree": 1, "eigenvalues": ["2", "3"]}]}
//! ```
//!
//! Divisors map place ids to multiplicities: `{"x1": [1, 0]}`.
//! Eigenvalues may be JSON integers or strings such as `"-3/2"`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, rat, Rational};
use crate::numbers::is_prime_power;
use crate::whittaker::{DivisorTuple, LocalSystemSpec, Place};

#[derive(Deserialize)]
#[serde(untagged)]
enum RawNumber {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlace {
    id: String,
    degree: u32,
    eigenvalues: Vec<RawNumber>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    rank: usize,
    q: u64,
    places: Vec<RawPlace>,
}

fn schema(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::InvalidInput(format!("{field}: {msg}"))
}

fn decode<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| schema(what, e))
}

pub fn parse_local_system_str(text: &str) -> Result<LocalSystemSpec> {
    let raw: RawSpec = decode(text, "local system")?;
    if raw.rank == 0 {
        return Err(schema("rank", "must be at least 1"));
    }
    if !is_prime_power(raw.q) {
        return Err(Error::NotPrimePower(raw.q));
    }
    let mut places = Vec::with_capacity(raw.places.len());
    for (i, p) in raw.places.into_iter().enumerate() {
        let field = format!("places[{i}]");
        if p.degree == 0 {
            return Err(schema(&format!("{field}.degree"), "must be positive"));
        }
        if p.eigenvalues.len() != raw.rank {
            return Err(schema(
                &format!("{field}.eigenvalues"),
                format!("expected {} entries, found {}", raw.rank, p.eigenvalues.len()),
            ));
        }
        let mut ev: Vec<Rational> = Vec::with_capacity(raw.rank);
        for (k, x) in p.eigenvalues.into_iter().enumerate() {
            let v = match x {
                RawNumber::Int(n) => rat(n),
                RawNumber::Text(s) => {
                    parse_rational(&s).map_err(|e| schema(&format!("{field}.eigenvalues[{k}]"), e))?
                }
            };
            ev.push(v);
        }
        places.push(Place::new(p.id, p.degree, ev)?);
    }
    LocalSystemSpec::new(raw.rank, raw.q, places)
}

pub fn parse_divisors_str(text: &str) -> Result<DivisorTuple> {
    let raw: BTreeMap<String, Vec<u32>> = decode(text, "divisors")?;
    Ok(DivisorTuple::new(raw))
}

/// Parses divisors and checks them against `spec`.
pub fn parse_divisors_for(text: &str, spec: &LocalSystemSpec) -> Result<DivisorTuple> {
    let d = parse_divisors_str(text)?;
    for (id, v) in d.entries() {
        spec.place(id)?;
        if v.len() != spec.rank() {
            return Err(schema(
                &format!("divisors.{id}"),
                format!("expected {} entries, found {}", spec.rank(), v.len()),
            ));
        }
    }
    Ok(d)
}

pub fn parse_local_system(path: &Path) -> Result<LocalSystemSpec> {
    parse_local_system_str(&std::fs::read_to_string(path)?)
}

pub fn parse_divisors(path: &Path) -> Result<DivisorTuple> {
    parse_divisors_str(&std::fs::read_to_string(path)?)
}
