//! Series literals `c0 + c1*t + c2*t^2` over `F_{p^k}`.
//!
//! A coefficient is the integer `sum a_i p^i` encoding the field element
//! `sum a_i X^i` modulo the field's modulus. Terms may come in any order;
//! repeated powers are added. Powers at or above the precision are dropped.

use iwahori_core::{Field, Series};

use crate::error::ParseError;

fn term(field: &Field, text: &str, base: usize) -> Result<(u64, usize), ParseError> {
    let err = |m: String| ParseError::new(base, m);
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(err("empty term".into()));
    }
    let (coef, power) = match t.find('t') {
        None => (t.as_str(), None),
        Some(i) => {
            let head = &t[..i];
            let tail = &t[i + 1..];
            let coef = match head.strip_suffix('*') {
                Some(c) => c,
                None if head.is_empty() => "1",
                None => return Err(err(format!("expected '*' before t in {text:?}"))),
            };
            let e = match tail.strip_prefix('^') {
                Some(e) => e.parse::<usize>().map_err(|_| err(format!("bad exponent in {text:?}")))?,
                None if tail.is_empty() => 1,
                None => return Err(err(format!("unexpected {tail:?} after t"))),
            };
            (coef, Some(e))
        }
    };
    let c: u64 = coef.parse().map_err(|_| err(format!("bad coefficient {coef:?}")))?;
    if !field.contains(c) {
        return Err(err(format!("coefficient {c} is not an element of F_{}^{}", field.p(), field.k())));
    }
    Ok((c, power.unwrap_or(0)))
}

/// Parses a series truncated to precision `n`.
pub fn parse_series(field: &Field, text: &str, n: usize) -> Result<Series, ParseError> {
    let mut coeffs = vec![0u64; n];
    let mut base = 0;
    for part in text.split('+') {
        let (c, e) = term(field, part, base)?;
        if e < n {
            coeffs[e] = field.add(coeffs[e], c);
        }
        base += part.len() + 1;
    }
    Ok(Series::new(coeffs, n))
}

/// `a, b, c` as a vector of series.
pub fn parse_vector(field: &Field, text: &str, n: usize) -> Result<Vec<Series>, ParseError> {
    text.split(',').map(|s| parse_series(field, s, n)).collect()
}

/// Rows separated by `;`, entries by `,`.
pub fn parse_matrix(field: &Field, text: &str, n: usize) -> Result<Vec<Vec<Series>>, ParseError> {
    text.split(';').map(|row| parse_vector(field, row, n)).collect()
}
