//! Text parsers for every external input surface: subtraction sets,
//! pile lists, positions, polynomial coefficient strings, and the simple
//! key=value config format. All parsers reject malformed input with an
//! error; none panic on untrusted text.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::set::SubtractionSet;

/// Largest element accepted from text input. Keeps hostile input from
/// requesting absurd recurrence orders.
pub const MAX_ELEMENT: i64 = 1 << 24;

/// Comma-separated positive integers, e.g. "1,3,5".
pub fn parse_set(text: &str) -> Result<SubtractionSet> {
    let mut elems = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(Error::Parse(format!("empty entry in set '{text}'")));
        }
        let v: i64 = part
            .parse()
            .map_err(|_| Error::Parse(format!("bad set entry '{part}'")))?;
        if v > MAX_ELEMENT {
            return Err(Error::Parse(format!("set entry {v} too large")));
        }
        elems.push(v);
    }
    SubtractionSet::new(&elems).map_err(|e| Error::Parse(e.to_string()))
}

/// Semicolon-separated sets, one per pile, e.g. "1,2;1,3".
pub fn parse_sets(text: &str) -> Result<Vec<SubtractionSet>> {
    text.split(';').map(parse_set).collect()
}

/// Comma-separated non-negative pile counts, e.g. "4,0,2".
pub fn parse_position(text: &str) -> Result<Vec<u64>> {
    let mut counts = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let v: u64 = part
            .parse()
            .map_err(|_| Error::Parse(format!("bad position entry '{part}'")))?;
        if v as i64 > MAX_ELEMENT {
            return Err(Error::Parse(format!("position entry {v} too large")));
        }
        counts.push(v);
    }
    if counts.is_empty() {
        return Err(Error::Parse("empty position".into()));
    }
    Ok(counts)
}

/// Space-separated integer coefficients, ascending degree.
pub fn parse_poly(text: &str) -> Result<IntPolynomial> {
    let mut coeffs = Vec::new();
    for part in text.split_whitespace() {
        let c: BigInt = part
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient '{part}'")))?;
        coeffs.push(c);
    }
    if coeffs.is_empty() {
        return Err(Error::Parse("no coefficients".into()));
    }
    if coeffs.len() > 1 << 16 {
        return Err(Error::Parse("too many coefficients".into()));
    }
    Ok(IntPolynomial::new(coeffs))
}

/// key=value lines; '#' starts a comment, blank lines ignored.
/// Later keys override earlier ones.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Parse(format!(
                "line {}: expected key=value, got '{line}'",
                lineno + 1
            )));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_parsing() {
        let s = parse_set("5, 3").unwrap();
        assert_eq!(s.elements(), &[3, 5]);
        assert!(parse_set("0,2").is_err());
        assert!(parse_set("").is_err());
        assert!(parse_set("1,,2").is_err());
        assert!(parse_set("a").is_err());
        assert!(parse_set("99999999999999999999").is_err());
    }

    #[test]
    fn sets_and_positions() {
        let sets = parse_sets("1;1,3").unwrap();
        assert_eq!(sets.len(), 2);
        assert_eq!(sets[1].elements(), &[1, 3]);

        assert_eq!(parse_position("1,0,4").unwrap(), vec![1, 0, 4]);
        assert!(parse_position("-1").is_err());
        assert!(parse_position("").is_err());
    }

    #[test]
    fn poly_parsing() {
        let p = parse_poly("1 0 2").unwrap();
        assert_eq!(p.to_string(), "1 0 2");
        assert!(parse_poly("").is_err());
        assert!(parse_poly("1 x").is_err());
        // trailing zeros trim to the canonical form
        assert_eq!(parse_poly("1 1 0").unwrap().to_string(), "1 1");
    }

    #[test]
    fn config_parsing() {
        let cfg = parse_config("n_max = 100\n# comment\nmode=float64\n\nmode=exact\n").unwrap();
        assert_eq!(cfg.get("n_max").map(String::as_str), Some("100"));
        assert_eq!(cfg.get("mode").map(String::as_str), Some("exact"));
        assert!(parse_config("garbage line").is_err());
    }
}
