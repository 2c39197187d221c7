//! Line-oriented text format for factor spectra.
//!
//! ```text
//! #cutoff 4/1
//! #p 1
//! #a1 1
//! #a2 0
//! # free-form comment
//! 1 1/1 4
//! 1 2/1 4
//! ```
//!
//! Header lines are `#cutoff <rational>`, exactly one of `#p <int>` / `#q <int>`, and for
//! even factors `#a1 <int>` and `#a2 <int>`. Odd factors may carry `#symmetric true|false`
//! when the full (untruncated) spectrum's symmetry is known in closed form. Body lines are
//! `<sign> <radicand num/den> <multiplicity>`; any other `#` line is a comment. Writers
//! emit radicands in lowest terms, so write-then-read reproduces the input exactly.

use std::fmt::Write as _;

use crate::rational::{display, format_fraction, parse_rational, Q};
use crate::spectra::{AlgebraicEigenvalue, FactorSpectralData, Parity, Spectrum};
use crate::{Error, Result};

pub fn write_factor(data: &FactorSpectralData) -> String {
    let mut out = String::new();
    writeln!(out, "#cutoff {}", format_fraction(&data.cutoff())).unwrap();
    match data.parity {
        Parity::Even(p) => {
            writeln!(out, "#p {p}").unwrap();
            writeln!(out, "#a1 {}", data.a1).unwrap();
            writeln!(out, "#a2 {}", data.a2).unwrap();
        }
        Parity::Odd(q) => {
            writeln!(out, "#q {q}").unwrap();
            if let Some(sym) = data.known_symmetric {
                writeln!(out, "#symmetric {sym}").unwrap();
            }
        }
    }
    for (lambda, mult) in data.spectrum.iter() {
        writeln!(out, "{} {} {}", lambda.sign(), format_fraction(&lambda.radicand()), mult).unwrap();
    }
    out
}

fn parse_count(line: usize, what: &str, token: &str) -> Result<u64> {
    let value: i64 = token.parse().map_err(|_| Error::Parse { line, msg: format!("{what}: expected an integer, got {token:?}") })?;
    u64::try_from(value).map_err(|_| Error::Parse { line, msg: format!("{what} must be nonnegative, got {value}") })
}

fn header_value<'a>(line: usize, key: &str, value: Option<&'a str>) -> Result<&'a str> {
    value.ok_or_else(|| Error::Parse { line, msg: format!("#{key} needs a value") })
}

pub fn read_factor(text: &str) -> Result<FactorSpectralData> {
    let mut cutoff: Option<Q> = None;
    let mut parity: Option<Parity> = None;
    let (mut a1, mut a2): (Option<u64>, Option<u64>) = (None, None);
    let mut symmetric: Option<bool> = None;
    let mut body: Vec<(usize, AlgebraicEigenvalue, u64)> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            let mut tokens = rest.split_whitespace();
            let key = tokens.next().unwrap_or("");
            let value = tokens.next();
            let set_parity = |current: Option<Parity>, new: Parity| match current {
                None => Ok(Some(new)),
                Some(_) => Err(Error::Parse { line, msg: "duplicate #p/#q header".into() }),
            };
            match key {
                "cutoff" => {
                    let v = parse_rational(header_value(line, key, value)?).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
                    cutoff = Some(v);
                }
                "p" => parity = set_parity(parity, Parity::Even(parse_count(line, "#p", header_value(line, key, value)?)? as usize))?,
                "q" => parity = set_parity(parity, Parity::Odd(parse_count(line, "#q", header_value(line, key, value)?)? as usize))?,
                "a1" => a1 = Some(parse_count(line, "#a1", header_value(line, key, value)?)?),
                "a2" => a2 = Some(parse_count(line, "#a2", header_value(line, key, value)?)?),
                "symmetric" => {
                    symmetric = Some(match header_value(line, key, value)? {
                        "true" => true,
                        "false" => false,
                        other => return Err(Error::Parse { line, msg: format!("#symmetric expects true|false, got {other:?}") }),
                    })
                }
                _ => {} // comment
            }
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(Error::Parse { line, msg: format!("expected `<sign> <radicand> <multiplicity>`, got {trimmed:?}") });
        }
        let sign: i8 = match tokens[0] {
            "-1" => -1,
            "0" => 0,
            "1" | "+1" => 1,
            other => return Err(Error::Parse { line, msg: format!("sign must be -1, 0 or 1, got {other:?}") }),
        };
        let radicand = parse_rational(tokens[1]).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
        let lambda = AlgebraicEigenvalue::new(sign, radicand).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
        let mult = parse_count(line, "multiplicity", tokens[2])?;
        if mult == 0 {
            return Err(Error::Parse { line, msg: "multiplicity must be at least 1".into() });
        }
        body.push((line, lambda, mult));
    }

    let cutoff = cutoff.ok_or(Error::Parse { line: 0, msg: "missing #cutoff header".into() })?;
    let parity = parity.ok_or(Error::Parse { line: 0, msg: "missing #p or #q header".into() })?;
    let mut spectrum = Spectrum::new(cutoff).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
    for (line, lambda, mult) in body {
        if !lambda.within(&cutoff) {
            return Err(Error::Parse { line, msg: format!("{lambda} exceeds #cutoff {}", display(&cutoff)) });
        }
        if matches!(parity, Parity::Even(_)) && lambda.sign() <= 0 {
            return Err(Error::Parse { line, msg: format!("even factors list positive eigenvalues only, got {lambda}") });
        }
        spectrum.insert(lambda, mult).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
    }
    match parity {
        Parity::Even(p) => {
            if symmetric.is_some() {
                return Err(Error::Parse { line: 0, msg: "#symmetric applies to odd factors only".into() });
            }
            let (a1, a2) = match (a1, a2) {
                (Some(a1), Some(a2)) => (a1, a2),
                _ => return Err(Error::Parse { line: 0, msg: "even factor needs #a1 and #a2 headers".into() }),
            };
            FactorSpectralData::even(p, spectrum, a1, a2).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })
        }
        Parity::Odd(q) => {
            if a1.is_some() || a2.is_some() {
                return Err(Error::Parse { line: 0, msg: "#a1/#a2 apply to even factors only".into() });
            }
            Ok(FactorSpectralData::odd(q, spectrum).with_known_symmetry(symmetric))
        }
    }
}
