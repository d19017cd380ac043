//! Rule-based English lemmatizer tuned for recipe vocabulary.
//!
//! The exception table is consulted first; otherwise plural `-s/-es/-ies`,
//! `-ing` and `-ed` suffixes are stripped with a small set of Porter-style
//! repairs (undoubling, restoring a final `e`).

use std::collections::HashMap;

fn is_consonant_at(w: &[u8], i: usize) -> bool {
    match w[i] {
        b'a' | b'e' | b'i' | b'o' | b'u' => false,
        b'y' => i == 0 || !is_consonant_at(w, i - 1),
        _ => true,
    }
}

fn has_vowel(w: &[u8]) -> bool {
    (0..w.len()).any(|i| !is_consonant_at(w, i))
}

/// Porter "measure": the number of vowel-consonant sequences.
fn measure(w: &[u8]) -> usize {
    let mut m = 0;
    let mut prev_vowel = false;
    for i in 0..w.len() {
        let vowel = !is_consonant_at(w, i);
        if prev_vowel && !vowel {
            m += 1;
        }
        prev_vowel = vowel;
    }
    m
}

fn ends_cvc(w: &[u8]) -> bool {
    let n = w.len();
    n >= 3
        && is_consonant_at(w, n - 3)
        && !is_consonant_at(w, n - 2)
        && is_consonant_at(w, n - 1)
        && !matches!(w[n - 1], b'w' | b'x' | b'y')
}

/// Repairs a stem left after removing `-ing` or `-ed`.
fn repair(stem: &str) -> String {
    let w = stem.as_bytes();
    let n = w.len();
    if n >= 4 && w[n - 1] == w[n - 2] && is_consonant_at(w, n - 1) && !matches!(w[n - 1], b'l' | b's' | b'z' | b'f') {
        return stem[..n - 1].to_string();
    }
    for suffix in ["bl", "dl", "fl", "gl", "kl", "pl", "tl", "zl", "iz"] {
        if stem.ends_with(suffix) {
            return format!("{stem}e");
        }
    }
    if measure(w) == 1 && ends_cvc(w) {
        return format!("{stem}e");
    }
    stem.to_string()
}

fn strip_suffixes(word: &str) -> String {
    let n = word.len();
    if n <= 3 || !word.is_ascii() {
        return word.to_string();
    }
    if word.ends_with("ies") && n > 4 {
        return format!("{}y", &word[..n - 3]);
    }
    if word.ends_with("sses") {
        return word[..n - 2].to_string();
    }
    if ["shes", "ches", "xes", "zes", "oes"].iter().any(|s| word.ends_with(s)) {
        return word[..n - 2].to_string();
    }
    if word.ends_with('s') && !["ss", "us", "is"].iter().any(|s| word.ends_with(s)) {
        return word[..n - 1].to_string();
    }
    if word.ends_with("ied") && n > 4 {
        return format!("{}y", &word[..n - 3]);
    }
    if word.ends_with("ing") && n > 5 {
        let stem = &word[..n - 3];
        if has_vowel(stem.as_bytes()) {
            return repair(stem);
        }
    }
    if word.ends_with("eed") {
        return word.to_string();
    }
    if word.ends_with("ed") && n > 4 {
        let stem = &word[..n - 2];
        if has_vowel(stem.as_bytes()) {
            return repair(stem);
        }
    }
    word.to_string()
}

/// Lowercases `word` and maps it to its lemma.
pub fn lemmatize_with(word: &str, exceptions: &HashMap<String, String>) -> String {
    let lower = word.to_lowercase();
    let lower = lower.trim_matches(|c: char| c == '\'' || c == '’');
    if let Some(l) = exceptions.get(lower) {
        return l.clone();
    }
    strip_suffixes(lower)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lem(w: &str) -> String {
        lemmatize_with(w, &HashMap::new())
    }

    #[test]
    fn plural_rules() {
        assert_eq!(lem("apples"), "apple");
        assert_eq!(lem("slices"), "slice");
        assert_eq!(lem("berries"), "berry");
        assert_eq!(lem("potatoes"), "potato");
        assert_eq!(lem("peaches"), "peach");
        assert_eq!(lem("glasses"), "glass");
        assert_eq!(lem("spices"), "spice");
        assert_eq!(lem("minutes"), "minute");
        assert_eq!(lem("pies"), "pie");
    }

    #[test]
    fn words_that_only_look_plural() {
        assert_eq!(lem("asparagus"), "asparagus");
        assert_eq!(lem("press"), "press");
        assert_eq!(lem("gas"), "gas");
    }

    #[test]
    fn ing_and_ed_rules() {
        assert_eq!(lem("baking"), "bake");
        assert_eq!(lem("stirring"), "stir");
        assert_eq!(lem("sliced"), "slice");
        assert_eq!(lem("peeled"), "peel");
        assert_eq!(lem("chopped"), "chop");
        assert_eq!(lem("shredded"), "shred");
        assert_eq!(lem("melted"), "melt");
        assert_eq!(lem("softened"), "soften");
        assert_eq!(lem("grated"), "grate");
        assert_eq!(lem("drizzled"), "drizzle");
        assert_eq!(lem("sprinkling"), "sprinkle");
        assert_eq!(lem("caramelized"), "caramelize");
        assert_eq!(lem("dried"), "dry");
        assert_eq!(lem("chilled"), "chill");
        assert_eq!(lem("stuffed"), "stuff");
    }

    #[test]
    fn short_words_untouched() {
        assert_eq!(lem("shred"), "shred");
        assert_eq!(lem("seed"), "seed");
        assert_eq!(lem("bring"), "bring");
        assert_eq!(lem("string"), "string");
        assert_eq!(lem("red"), "red");
    }

    #[test]
    fn exceptions_take_precedence() {
        let mut ex = HashMap::new();
        ex.insert("leaves".to_string(), "leaf".to_string());
        assert_eq!(lemmatize_with("Leaves", &ex), "leaf");
    }

    #[test]
    fn lowercases() {
        assert_eq!(lem("Beat"), "beat");
        assert_eq!(lem("APPLES"), "apple");
    }
}
