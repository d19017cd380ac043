use std::sync::LazyLock;

use regex::Regex;

use super::{IngredientObject, Lexicons, Quantity};
use crate::text::tokenize;

static PARENTHETICAL: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\([^)]*\)|\[[^\]]*\]").unwrap());

// Leading amount: "1 1/2", "1-1/2", "1/2", "1.5", ".5", "2", optionally
// followed by a range upper bound that is ignored ("2-3", "2 to 3").
static AMOUNT: LazyLock<Regex> = LazyLock::new(|| {
    let num = r"\d+\s+\d+/\d+|\d+-\d+/\d+|\d+/\d+|\d*\.\d+|\d+";
    Regex::new(&format!(r"^\s*(?P<q>{num})(?:\s*(?:-|–|to)\s*(?:{num}))?\s*")).unwrap()
});

const UNICODE_FRACTIONS: &[(char, &str)] = &[
    ('½', "1/2"),
    ('⅓', "1/3"),
    ('⅔', "2/3"),
    ('¼', "1/4"),
    ('¾', "3/4"),
    ('⅕', "1/5"),
    ('⅖', "2/5"),
    ('⅗', "3/5"),
    ('⅘', "4/5"),
    ('⅙', "1/6"),
    ('⅚', "5/6"),
    ('⅛', "1/8"),
    ('⅜', "3/8"),
    ('⅝', "5/8"),
    ('⅞', "7/8"),
];

const TRAILING_NOTES: &[&str] =
    &[" to taste", " for garnish", " for dusting", " for serving", " as needed", " or more"];

fn expand_unicode_fractions(line: &str) -> String {
    let mut out = String::with_capacity(line.len() + 8);
    for c in line.chars() {
        match UNICODE_FRACTIONS.iter().find(|(u, _)| *u == c) {
            Some((_, ascii)) => {
                if out.chars().last().is_some_and(|p| p.is_ascii_digit()) {
                    out.push(' ');
                }
                out.push_str(ascii);
            }
            None => out.push(c),
        }
    }
    out
}

/// Matches the longest unit alias (up to two words) at the start of `rest`.
/// Returns the canonical unit and the byte length consumed.
fn match_unit<'a>(rest: &str, lexicons: &'a Lexicons, have_quantity: bool) -> Option<(&'a str, usize)> {
    let words: Vec<(usize, &str)> =
        rest.split_whitespace().take(2).map(|w| (w.as_ptr() as usize - rest.as_ptr() as usize + w.len(), w)).collect();
    for n in (1..=words.len()).rev() {
        let end = words[n - 1].0;
        let candidate = rest[..end].split_whitespace().collect::<Vec<_>>().join(" ");
        let trimmed = candidate.trim_end_matches(',');
        for form in [trimmed, trimmed.trim_end_matches('.')] {
            if form.chars().count() == 1 && !have_quantity {
                continue;
            }
            if let Some(unit) = lexicons.canonical_unit(form) {
                return Some((unit, end));
            }
        }
    }
    None
}

fn lemmatized_name(text: &str, lexicons: &Lexicons) -> String {
    tokenize(text)
        .into_iter()
        .filter(|w| w.chars().any(char::is_alphabetic))
        .map(|w| lexicons.lemmatize(w))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses one ingredient line into quantity, unit and lemmatized name.
///
/// Parenthetical notes are dropped and everything after the first comma is
/// treated as preparation notes. Abbreviation and generalization are filled
/// in later by [`super::parse_recipe`]; here the abbreviation equals the
/// full name.
pub fn parse_ingredient_line(line: &str, lexicons: &Lexicons) -> IngredientObject {
    let cleaned = PARENTHETICAL.replace_all(&expand_unicode_fractions(line), " ").into_owned();

    let (quantity, mut rest) = match AMOUNT.captures(&cleaned) {
        Some(caps) => {
            let raw = caps["q"].replacen('-', " ", 1);
            let q = Quantity::parse_number(&raw).and_then(Quantity::new);
            (q, &cleaned[caps.get(0).unwrap().end()..])
        }
        None => (None, cleaned.as_str()),
    };

    let mut unit = None;
    let before_unit = rest;
    if let Some((u, consumed)) = match_unit(rest, lexicons, quantity.is_some()) {
        unit = Some(u.to_string());
        rest = rest[consumed..].trim_start();
        if let Some(stripped) = rest.strip_prefix("of ") {
            rest = stripped;
        }
    }

    let name_part = |rest: &str| -> String {
        let mut s = rest.split(',').next().unwrap_or("").to_lowercase();
        for note in TRAILING_NOTES {
            if let Some(pos) = s.find(note) {
                s.truncate(pos);
            }
        }
        lemmatized_name(&s, lexicons)
    };

    let mut full_name = name_part(rest);
    if full_name.is_empty() && unit.is_some() {
        // "2 cloves": the unit word was the ingredient itself.
        unit = None;
        full_name = name_part(before_unit);
    }
    if full_name.is_empty() {
        full_name = lemmatized_name(line, lexicons);
    }
    if full_name.is_empty() {
        full_name = line.trim().to_lowercase();
    }

    IngredientObject {
        abbreviation: full_name.clone(),
        full_name,
        generalization: None,
        quantity,
        unit,
        raw_line: line.to_string(),
    }
}
