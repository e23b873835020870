//! Braid words from text: `"2 -3 1"` or `"s2 s3^-1 s1"`.

use hhh_core::braid::BraidWord;

use crate::CliError;

fn letter(token: &str) -> Option<i32> {
    let Some(rest) = token.strip_prefix(['s', 'σ']) else {
        return token.parse().ok().filter(|&l: &i32| l != 0);
    };
    let (index, exponent) = match rest.split_once('^') {
        Some((i, e)) => (i, e.trim_matches(['{', '}'])),
        None => (rest, "1"),
    };
    let i: i32 = index.parse().ok().filter(|&i: &i32| i > 0)?;
    match exponent {
        "1" | "+1" => Some(i),
        "-1" => Some(-i),
        _ => None,
    }
}

/// Parses whitespace- or comma-separated letters and validates them against
/// the strand count.
pub fn parse_braid(text: &str, strands: usize) -> Result<BraidWord, CliError> {
    let mut letters = Vec::new();
    for token in text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
        letters.push(letter(token).ok_or_else(|| CliError::Parse(format!("malformed braid letter {token:?}")))?);
    }
    BraidWord::new(strands, letters).map_err(|e| CliError::Parse(e.to_string()))
}
