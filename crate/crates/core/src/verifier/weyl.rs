//! Named Weyl group elements and the root images claimed for them.
//!
//! ```text
//! ID ; TYPE ; READING ; WORD ; ASSERTION, ASSERTION, ...
//! ```
//!
//! `READING` is `rtl` when the rightmost letter acts first and `ltr` when
//! the leftmost does. Assertions:
//!
//! | form            | meaning                                         |
//! |-----------------|-------------------------------------------------|
//! | `maps a>b`      | `w(a) = b`                                      |
//! | `chain a b c…`  | `w(a) = b`, `w(b) = c`, …                       |
//! | `swap a b`      | `w(a) = b` and `w(b) = a`                       |
//! | `fixes a`       | `w(a) = a`                                      |
//! | `negative a`    | `w(a)` is negative                              |
//! | `levi J>K`      | `w(Φ_J) = Φ_K`                                  |
//! | `normalises J`  | `w(Φ_J) = Φ_J`                                  |
//! | `centralises J` | `w` fixes every simple root of `J`              |
//! | `radical K a`   | `w(a)` is a root of the unipotent radical `Q_K` |

use crate::rootdata::{parse_nodes, Root, RootSystem};
use crate::weylgrp::{act, maps_levi, WeylWord};

use super::data::{records, DataSet};
use super::{Check, SuiteReport, VerifyError};

const FILE: &str = "weyl_claims.dat";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reading {
    RightToLeft,
    LeftToRight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Assertion {
    Maps(Root, Root),
    Fixes(Root),
    Negative(Root),
    Levi(Vec<usize>, Vec<usize>),
    Centralises(Vec<usize>),
    Radical(Vec<usize>, Root),
}

#[derive(Clone, Debug)]
pub struct WeylClaim {
    pub id: String,
    pub line: usize,
    pub group: String,
    pub reading: Reading,
    pub word: String,
    pub assertions: Vec<Assertion>,
}

fn bad(line: usize, msg: impl Into<String>) -> VerifyError {
    VerifyError::Data {
        file: FILE,
        line,
        msg: msg.into(),
    }
}

fn parse_assertions(rs: &RootSystem, s: &str, line: usize) -> Result<Vec<Assertion>, VerifyError> {
    let root = |t: &str| rs.root_from_label(t).map_err(VerifyError::from);
    let nodes = |t: &str| parse_nodes(t, rs.rank()).map_err(VerifyError::from);
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        let toks: Vec<&str> = item.split_whitespace().collect();
        match toks.as_slice() {
            ["maps", pair] | ["levi", pair] => {
                let (a, b) = pair
                    .split_once('>')
                    .ok_or_else(|| bad(line, format!("expected `a>b` in `{item}`")))?;
                out.push(if toks[0] == "maps" {
                    Assertion::Maps(root(a)?, root(b)?)
                } else {
                    Assertion::Levi(nodes(a)?, nodes(b)?)
                });
            }
            ["chain", rest @ ..] if rest.len() >= 2 => {
                for w in rest.windows(2) {
                    out.push(Assertion::Maps(root(w[0])?, root(w[1])?));
                }
            }
            ["swap", a, b] => {
                out.push(Assertion::Maps(root(a)?, root(b)?));
                out.push(Assertion::Maps(root(b)?, root(a)?));
            }
            ["fixes", a] => out.push(Assertion::Fixes(root(a)?)),
            ["negative", a] => out.push(Assertion::Negative(root(a)?)),
            ["normalises", j] => out.push(Assertion::Levi(nodes(j)?, nodes(j)?)),
            ["centralises", j] => out.push(Assertion::Centralises(nodes(j)?)),
            ["radical", k, a] => out.push(Assertion::Radical(nodes(k)?, root(a)?)),
            _ => return Err(bad(line, format!("unrecognised assertion `{item}`"))),
        }
    }
    Ok(out)
}

pub fn parse_claims(text: &str) -> Result<Vec<WeylClaim>, VerifyError> {
    records(text)
        .map(|(line, f)| {
            if f.len() != 5 {
                return Err(bad(line, "claims have 5 fields"));
            }
            let rs = RootSystem::of(f[1])?;
            let reading = match f[2] {
                "rtl" => Reading::RightToLeft,
                "ltr" => Reading::LeftToRight,
                r => return Err(bad(line, format!("unknown reading `{r}`"))),
            };
            WeylWord::parse(&rs, f[3])?;
            Ok(WeylClaim {
                id: f[0].to_string(),
                line,
                group: f[1].to_string(),
                reading,
                word: f[3].to_string(),
                assertions: parse_assertions(&rs, f[4], line)?,
            })
        })
        .collect()
}

/// The element as a word acting right to left.
pub fn claim_word(rs: &RootSystem, c: &WeylClaim) -> Result<WeylWord, VerifyError> {
    let w = WeylWord::parse(rs, &c.word)?;
    Ok(match c.reading {
        Reading::RightToLeft => w,
        Reading::LeftToRight => w.inverse(),
    })
}

fn in_radical(rs: &RootSystem, k: &[usize], r: &Root) -> bool {
    r.is_positive() && (0..rs.rank()).any(|i| !k.contains(&i) && r.coeffs()[i] != 0)
}

/// Human-readable failure for one assertion, or `None` when it holds.
pub fn evaluate(rs: &RootSystem, w: &WeylWord, a: &Assertion) -> Option<String> {
    let img = |r: &Root| act(rs, w, r);
    match a {
        Assertion::Maps(x, y) => (img(x) != *y).then(|| format!("{x} maps to {}, not {y}", img(x))),
        Assertion::Fixes(x) => (img(x) != *x).then(|| format!("{x} maps to {}", img(x))),
        Assertion::Negative(x) => img(x)
            .is_positive()
            .then(|| format!("{x} maps to positive {}", img(x))),
        Assertion::Levi(j, k) => (!maps_levi(rs, w, j, k))
            .then(|| format!("Φ_{} is not mapped to Φ_{}", show(j), show(k))),
        Assertion::Centralises(j) => j
            .iter()
            .map(|&i| rs.simple(i))
            .find(|s| img(s) != *s)
            .map(|s| format!("{s} maps to {}", img(&s))),
        Assertion::Radical(k, x) => (!in_radical(rs, k, &img(x)))
            .then(|| format!("{x} maps to {}, outside Q_{}", img(x), show(k))),
    }
}

fn show(j: &[usize]) -> String {
    j.iter().map(|i| (i + 1).to_string()).collect()
}

fn check_claim(c: &WeylClaim) -> Result<Check, VerifyError> {
    let rs = RootSystem::of(&c.group)?;
    let w = claim_word(&rs, c)?;
    let failures: Vec<String> = c
        .assertions
        .iter()
        .filter_map(|a| evaluate(&rs, &w, a))
        .collect();
    let letters = w.len();
    Ok(if failures.is_empty() {
        Check::new(
            &c.id,
            true,
            format!("{letters} letters, {} assertions hold", c.assertions.len()),
        )
    } else {
        Check::failed(&c.id, failures.join("; "))
    })
}

pub fn check_weyl_claims(data: &DataSet) -> SuiteReport {
    let checks = match parse_claims(&data.weyl_claims) {
        Err(e) => vec![Check::failed(FILE, e.to_string())],
        Ok(claims) => claims
            .iter()
            .map(|c| check_claim(c).unwrap_or_else(|e| Check::failed(&c.id, e.to_string())))
            .collect(),
    };
    SuiteReport::new("weyl", checks)
}
