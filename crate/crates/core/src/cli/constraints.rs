//! Line-oriented constraint files for `enumerate`.
//!
//! ```text
//! # prescribed low anti-plurigenera
//! P[-1] = 0
//! P[-2] >= 1
//! P[-6] <= 2
//! sum_bound = 24
//! max_index = 30
//! p1_min = 0
//! p1_max = 10
//! require_feasible = true
//! ```
//!
//! `#` starts a comment. Every scalar key may appear at most once.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::basket::Rational;
use crate::enumeration::{EnumerationConstraints, Prescription, Relation};
use crate::error::{Error, Result};

fn err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

/// `a` or `a/b`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn split_relation(s: &str) -> Option<(&str, Relation, &str)> {
    for (token, rel) in [
        (">=", Relation::AtLeast),
        ("<=", Relation::AtMost),
        ("=", Relation::Eq),
    ] {
        if let Some((lhs, rhs)) = s.split_once(token) {
            return Some((lhs.trim(), rel, rhs.trim()));
        }
    }
    None
}

fn parse_prescription(lhs: &str, rel: Relation, rhs: &str, line: usize) -> Result<Prescription> {
    let m = lhs
        .strip_prefix("P[-")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| err(line, format!("expected P[-m], got {lhs:?}")))?;
    let m: u64 = m
        .trim()
        .parse()
        .map_err(|_| err(line, format!("bad index in {lhs:?}")))?;
    let value: BigInt = rhs
        .parse()
        .map_err(|_| err(line, format!("expected an integer, got {rhs:?}")))?;
    Ok(Prescription {
        m,
        relation: rel,
        value,
    })
}

fn parse_u32(value: &str, line: usize) -> Result<u32> {
    value.parse().map_err(|_| {
        err(
            line,
            format!("expected a non-negative integer, got {value:?}"),
        )
    })
}

pub fn parse_constraints(text: &str) -> Result<EnumerationConstraints> {
    let mut c = EnumerationConstraints::default();
    let (mut p1_min, mut p1_max) = (*c.p1_range.start(), *c.p1_range.end());
    let mut seen = HashSet::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rel, value) = split_relation(content)
            .ok_or_else(|| err(line, format!("cannot parse {content:?}")))?;
        if key.starts_with("P[") {
            c.prescribed
                .push(parse_prescription(key, rel, value, line)?);
            continue;
        }
        if rel != Relation::Eq {
            return Err(err(
                line,
                format!("{key} takes '=', not '{}'", rel.symbol()),
            ));
        }
        if !seen.insert(key.to_string()) {
            return Err(err(line, format!("duplicate key {key}")));
        }
        match key {
            "sum_bound" => c.sum_bound = parse_rational(value).map_err(|e| err(line, e))?,
            "max_index" => c.max_index = Some(parse_u32(value, line)?),
            "p1_min" => p1_min = parse_u32(value, line)?,
            "p1_max" => p1_max = parse_u32(value, line)?,
            "require_feasible" => {
                c.require_feasible = match value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(err(line, format!("expected true or false, got {value:?}"))),
                }
            }
            _ => return Err(err(line, format!("unknown key {key:?}"))),
        }
    }
    c.p1_range = p1_min..=p1_max;
    c.validate()?;
    Ok(c)
}
