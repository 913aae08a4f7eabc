//! Helpers shared by the text formats for polynomials and algebra elements.

use crate::error::{Error, Result};

/// Split a sum at top-level `+` signs (ignoring those inside parentheses).
/// Returns trimmed, non-empty terms.
pub fn split_terms(s: &str) -> Result<Vec<&str>> {
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                terms.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
    }
    terms.push(&s[start..]);
    let terms: Vec<&str> = terms.into_iter().map(str::trim).collect();
    if terms.iter().any(|t| t.is_empty()) {
        return Err(Error::Parse(format!("empty term in {s:?}")));
    }
    Ok(terms)
}
