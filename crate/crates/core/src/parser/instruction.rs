use std::collections::BTreeSet;
use std::sync::LazyLock;

use regex::Regex;

use super::{Lexicons, Quantity, TimeRange};
use crate::text::word_spans;

const CONNECTORS: &[&str] = &["and", "then"];
const TOOL_CONTEXT: &[&str] = &["a", "an", "the", "with", "using", "in", "into", "on", "onto"];
const MAX_ADVERBS: usize = 2;
const MAX_LIST_ITEM_WORDS: usize = 5;

fn is_adverb(word: &str) -> bool {
    let w = word.to_lowercase();
    (w.ends_with("ly") && w.len() > 3) || matches!(w.as_str(), "then" | "immediately" | "gently" | "again" | "also")
}

/// Splits a raw instruction line into simple steps.
///
/// Sentences are split first (a `.`, `;`, `!` or `?` followed by whitespace
/// and an uppercase letter or digit). Each sentence is then split before a
/// connector ("and", "then", "and then") when the following clause, after at
/// most two adverbs, starts with a cooking verb. Connectors at split points
/// are dropped, and a serial comma is inserted into short "a, b and c" lists.
pub fn split_instruction_line(line: &str, lexicons: &Lexicons) -> Vec<String> {
    sentences(line)
        .into_iter()
        .flat_map(|s| split_clauses(s, lexicons))
        .map(|f| insert_serial_comma(&f, lexicons))
        .filter(|f| !f.is_empty())
        .collect()
}

fn sentences(line: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let chars: Vec<(usize, char)> = line.char_indices().collect();
    for (k, &(i, c)) in chars.iter().enumerate() {
        if !matches!(c, '.' | ';' | '!' | '?') {
            continue;
        }
        let Some(&(_, ws)) = chars.get(k + 1) else { continue };
        if !ws.is_whitespace() {
            continue;
        }
        let next = chars[k + 1..].iter().find(|(_, c)| !c.is_whitespace());
        if let Some(&(_, n)) = next {
            if n.is_uppercase() || n.is_ascii_digit() {
                out.push(line[start..i + c.len_utf8()].trim());
                start = i + c.len_utf8();
            }
        }
    }
    out.push(line[start..].trim());
    out.retain(|s| !s.is_empty());
    out
}

fn split_clauses(sentence: &str, lexicons: &Lexicons) -> Vec<String> {
    let tokens = word_spans(sentence);
    let mut fragments = Vec::new();
    let mut seg_start = 0usize;
    let mut k = 0;
    while k < tokens.len() {
        let word = tokens[k].text.to_lowercase();
        if !CONNECTORS.contains(&word.as_str()) || k == 0 {
            k += 1;
            continue;
        }
        // Connector run ("and then") and the clause start after it.
        let mut clause = k + 1;
        while clause < tokens.len() && CONNECTORS.contains(&tokens[clause].text.to_lowercase().as_str()) {
            clause += 1;
        }
        let mut verb_at = clause;
        let mut adverbs = 0;
        while verb_at < tokens.len() && adverbs < MAX_ADVERBS && is_adverb(tokens[verb_at].text) {
            verb_at += 1;
            adverbs += 1;
        }
        let splits = verb_at < tokens.len() && {
            let lemma = lexicons.lemmatize(tokens[verb_at].text);
            // "brown sugar", "whipping cream": the verb modifies a food noun.
            let compound = tokens
                .get(verb_at + 1)
                .is_some_and(|next| lexicons.is_food_noun(&format!("{lemma} {}", lexicons.lemmatize(next.text))));
            lexicons.is_cooking_verb(&lemma) && !lexicons.is_food_noun(&lemma) && !compound
        };
        if splits && clause < tokens.len() {
            let left = sentence[seg_start..tokens[k].start].trim().trim_end_matches(',').trim_end();
            if !left.is_empty() {
                fragments.push(left.to_string());
            }
            seg_start = tokens[clause].start;
            k = clause;
        } else {
            k += 1;
        }
    }
    let tail = sentence[seg_start..].trim();
    if !tail.is_empty() {
        fragments.push(tail.to_string());
    }
    fragments
}

/// "the water, 1/2 cup sugar and chocolate" → "the water, 1/2 cup sugar, and
/// chocolate". Only applied when the item before "and" is short and holds no
/// cooking verb, so clauses such as "In a bowl, beat eggs and sugar" are left
/// alone.
fn insert_serial_comma(fragment: &str, lexicons: &Lexicons) -> String {
    let tokens = word_spans(fragment);
    let mut inserts = Vec::new();
    for (k, tok) in tokens.iter().enumerate() {
        if !tok.text.eq_ignore_ascii_case("and") || k == 0 {
            continue;
        }
        let before = fragment[..tok.start].trim_end();
        if before.ends_with(',') {
            continue;
        }
        let Some(comma) = before.rfind(',') else { continue };
        let item: Vec<_> = tokens[..k].iter().filter(|t| t.start > comma).collect();
        if item.is_empty() || item.len() > MAX_LIST_ITEM_WORDS {
            continue;
        }
        if item.iter().any(|t| lexicons.is_cooking_verb(&lexicons.lemmatize(t.text))) {
            continue;
        }
        inserts.push(before.len());
    }
    let mut out = fragment.to_string();
    for pos in inserts.into_iter().rev() {
        out.insert(pos, ',');
    }
    out
}

/// Main verb of an imperative instruction: the first token if it is a
/// cooking verb, else the first cooking verb in the text, else the first
/// word's lemma.
pub fn extract_main_verb(instruction_text: &str, lexicons: &Lexicons) -> String {
    let lemmas: Vec<String> = word_spans(instruction_text)
        .into_iter()
        .filter(|t| t.text.chars().any(char::is_alphabetic))
        .map(|t| lexicons.lemmatize(t.text))
        .collect();
    lemmas
        .iter()
        .find(|l| lexicons.is_cooking_verb(l))
        .or_else(|| lemmas.first())
        .map(|l| l.split_whitespace().collect::<String>())
        .filter(|l| !l.is_empty())
        .unwrap_or_else(|| "unknown".to_string())
}

/// Tools mentioned in the text, by lexicon name. Tool words that double as
/// cooking verbs ("whisk", "spoon") only count after a determiner or
/// preposition ("with a whisk").
pub fn extract_tools(instruction_text: &str, lexicons: &Lexicons) -> BTreeSet<String> {
    let lemmas = lexicons.lemmas(instruction_text);
    let mut found = BTreeSet::new();
    let mut i = 0;
    while i < lemmas.len() {
        let hit = lexicons.tools.iter().find(|tool| {
            let n = tool.lemmas.len();
            i + n <= lemmas.len() && lemmas[i..i + n] == tool.lemmas[..] && {
                let head = &tool.lemmas[n - 1];
                !lexicons.is_cooking_verb(head) || has_tool_context(&lemmas, i, lexicons)
            }
        });
        match hit {
            Some(tool) => {
                found.insert(tool.name.clone());
                i += tool.lemmas.len();
            }
            None => i += 1,
        }
    }
    found
}

fn has_tool_context(lemmas: &[String], at: usize, lexicons: &Lexicons) -> bool {
    for back in 1..=3 {
        let Some(j) = at.checked_sub(back) else { return false };
        let w = lemmas[j].as_str();
        if TOOL_CONTEXT.contains(&w) {
            return true;
        }
        if lexicons.is_cooking_verb(w) {
            return false;
        }
    }
    false
}

static TIME: LazyLock<Regex> = LazyLock::new(|| {
    let num = r"\d+\s+\d+/\d+|\d+/\d+|\d+(?:\.\d+)?";
    Regex::new(&format!(
        r"(?i)\b(?P<a>{num})(?:\s*(?:-|–|to|or)\s*(?P<b>{num}))?\s*-?\s*(?P<u>seconds?|secs?|minutes?|mins?|hours?|hrs?|hr)\b"
    ))
    .unwrap()
});

fn unit_seconds(unit: &str) -> u32 {
    let u = unit.to_lowercase();
    if u.starts_with("sec") {
        1
    } else if u.starts_with("min") {
        60
    } else {
        3600
    }
}

fn seconds(num: &str, unit: u32) -> Option<u32> {
    use num_traits::ToPrimitive;
    let r = Quantity::parse_number(num)? * num_rational::Rational64::from_integer(unit as i64);
    r.round().to_integer().to_u32()
}

/// Duration range mentioned in the text. A single value gives `(v, v)`;
/// several matches are merged into the widest span.
pub fn extract_time_range(instruction_text: &str) -> Option<TimeRange> {
    TIME.captures_iter(instruction_text)
        .filter_map(|caps| {
            let unit = unit_seconds(&caps["u"]);
            let a = seconds(&caps["a"], unit)?;
            let b = caps.name("b").and_then(|b| seconds(b.as_str(), unit)).unwrap_or(a);
            Some(TimeRange { min_seconds: a.min(b), max_seconds: a.max(b) })
        })
        .reduce(TimeRange::span)
}
