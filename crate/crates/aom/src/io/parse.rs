//! Text literals for menus, preferences, and bound targets.
//!
//! Grammar: menus are labels joined by `;` (`a;b;c`), preferences are labels
//! joined by `>` covering the whole alphabet (`a1>a2>a3`), bound targets are
//! `alternative@menu` (`a1@a1;a2;a3`). Whitespace around tokens is ignored.

use crate::core::alphabet::{canonical_menu, Alphabet, Menu};
use crate::core::preference::Preference;
use crate::error::{Error, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::ParseError {
        line: 0,
        msg: msg.into(),
    }
}

/// Parse `a;b;c` against a known alphabet.
pub fn parse_menu(text: &str, alphabet: &Alphabet) -> Result<Menu> {
    let labels: Vec<&str> = text.split(';').map(str::trim).collect();
    if labels.iter().any(|l| l.is_empty()) {
        return Err(bad(format!("empty label in menu `{text}`")));
    }
    canonical_menu(&labels, alphabet)
}

/// Split a menu cell into labels without an alphabet (used while inferring
/// the alphabet from a file).
pub fn split_menu_labels(text: &str) -> Result<Vec<String>> {
    let labels: Vec<String> = text.split(';').map(|l| l.trim().to_string()).collect();
    if labels.is_empty() || labels.iter().any(|l| l.is_empty()) {
        return Err(bad(format!("empty label in menu `{text}`")));
    }
    Ok(labels)
}

/// Parse `a1>a2>...`, requiring every alphabet label exactly once.
pub fn parse_preference(text: &str, alphabet: &Alphabet) -> Result<Preference> {
    let labels: Vec<&str> = text.split('>').map(str::trim).collect();
    if labels.iter().any(|l| l.is_empty()) {
        return Err(bad(format!("empty label in preference `{text}`")));
    }
    if labels.len() != alphabet.len() {
        return Err(bad(format!(
            "preference lists {} alternatives, alphabet has {}",
            labels.len(),
            alphabet.len()
        )));
    }
    let mut order = Vec::with_capacity(labels.len());
    for l in labels {
        order.push(alphabet.index_of(l)?);
    }
    let mut seen = vec![false; alphabet.len()];
    for &alt in &order {
        if seen[alt] {
            return Err(bad(format!("duplicate label in preference `{text}`")));
        }
        seen[alt] = true;
    }
    Preference::from_order(&order)
}

/// Render a preference as `a1>a2>...`.
pub fn render_preference(pref: &Preference, alphabet: &Alphabet) -> String {
    pref.order()
        .iter()
        .map(|&alt| alphabet.label(alt))
        .collect::<Vec<_>>()
        .join(">")
}

/// Parse `alt@menu`, e.g. `a1@a1;a2;a3`.
pub fn parse_target(text: &str, alphabet: &Alphabet) -> Result<(usize, Menu)> {
    let Some((alt_text, menu_text)) = text.split_once('@') else {
        return Err(bad(format!("target `{text}` is not of the form alt@menu")));
    };
    let alt = alphabet.index_of(alt_text.trim())?;
    let menu = parse_menu(menu_text, alphabet)?;
    if !menu.contains(alt) {
        return Err(Error::AlternativeNotInMenu {
            alt,
            menu: menu.mask().0,
        });
    }
    Ok((alt, menu))
}
