//! Involution spec files.
//!
//! A spec is a TOML document with three sections:
//!
//! ```toml
//! [field]
//! d = 5                      # radicand of Q(sqrt d); omit the section for Q
//!
//! [involution]
//! alphabet = "abc"           # the first k lowercase letters, in order
//! top = "abB"                # uppercase letters are inverses
//! bottom = "cCA"
//! flips = "coherent"         # "coherent", "none", or the flipped letters, e.g. "ac"
//! interval_length = "1"      # optional; defaults to the common row sum
//!
//! [lengths]
//! a = "sqrt5 - 2"            # one expression per letter
//! b = "(3 - sqrt5)/2"
//! c = "(3 - sqrt5)/2"
//! ```
//!
//! Rows may contain spaces between letters. Length expressions use integers,
//! `+ - * /`, parentheses and `sqrtD` with the declared radicand.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use linvol::involution::{Flips, GeneralizedPermutation, LinearInvolution};
use linvol::word::{parse_letters, SignedLetter};
use linvol::FieldElem;
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed spec: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error("alphabet {0:?} must be the first k lowercase letters")]
    Alphabet(String),
    #[error("{field}: {msg}")]
    Field { field: String, msg: String },
    #[error("{0}")]
    Involution(#[from] linvol::InvolutionError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    field: Option<RawField>,
    involution: RawInvolution,
    lengths: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    d: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInvolution {
    alphabet: String,
    top: String,
    bottom: String,
    flips: String,
    interval_length: Option<String>,
}

fn field_err(field: &str, msg: impl ToString) -> SpecError {
    SpecError::Field { field: field.to_string(), msg: msg.to_string() }
}

fn row(field: &str, src: &str) -> Result<Vec<SignedLetter>, SpecError> {
    let compact: String = src.split_whitespace().collect();
    parse_letters(&compact).map_err(|e| field_err(field, e))
}

/// Parses spec text into an involution.
pub fn parse(src: &str) -> Result<LinearInvolution, SpecError> {
    let raw: Raw = toml::from_str(src)?;
    let d = raw.field.map_or(0, |f| f.d);
    let alphabet = raw.involution.alphabet.trim();
    let k = alphabet.chars().count();
    let expected: String = (0..k as u8).map(|i| SignedLetter::pos(i).to_char()).collect();
    if k == 0 || k > 26 || alphabet != expected {
        return Err(SpecError::Alphabet(alphabet.to_string()));
    }
    let top = row("involution.top", &raw.involution.top)?;
    let bottom = row("involution.bottom", &raw.involution.bottom)?;
    if let Some(x) = top.iter().chain(&bottom).find(|x| x.base as usize >= k) {
        return Err(field_err("involution", format!("letter {x} is outside the alphabet")));
    }
    let perm = GeneralizedPermutation::new(top, bottom)?;

    let flips = match raw.involution.flips.trim() {
        "coherent" => Flips::Coherent,
        "none" => Flips::Explicit(BTreeSet::new()),
        list => {
            let letters = row("involution.flips", list)?;
            if let Some(x) = letters.iter().find(|x| !x.positive || x.base as usize >= k) {
                return Err(field_err("involution.flips", format!("{x} is not a letter of the alphabet")));
            }
            Flips::Explicit(letters.iter().map(|x| x.base).collect())
        }
    };

    let parse_expr = |field: &str, expr: &str| FieldElem::parse_with(expr, d).map_err(|e| field_err(field, e));
    if let Some(name) = raw.lengths.keys().find(|n| !expected.contains(n.as_str()) || n.chars().count() != 1) {
        return Err(field_err("lengths", format!("unknown letter {name:?}")));
    }
    let lengths = expected
        .chars()
        .map(|c| {
            let key = c.to_string();
            let expr = raw.lengths.get(&key).ok_or_else(|| field_err("lengths", format!("missing length of {c}")))?;
            parse_expr(&format!("lengths.{c}"), expr)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let interval_length =
        raw.involution.interval_length.as_deref().map(|e| parse_expr("involution.interval_length", e)).transpose()?;
    Ok(LinearInvolution::build(perm, lengths, flips, interval_length)?)
}

pub fn load(path: &Path) -> Result<LinearInvolution, SpecError> {
    let src =
        std::fs::read_to_string(path).map_err(|source| SpecError::Read { path: path.display().to_string(), source })?;
    parse(&src)
}
