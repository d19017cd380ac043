//! Word tokenization shared by every stage.

/// A word token with its byte span in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    pub start: usize,
    pub end: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

/// Splits `text` into word tokens: maximal runs of alphanumeric characters,
/// with `'` and `-` kept when they sit between two alphanumerics
/// ("all-purpose", "confectioners'" is split as "confectioners").
pub fn word_spans(text: &str) -> Vec<Token<'_>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if !is_word_char(chars[i].1) {
            i += 1;
            continue;
        }
        let start = chars[i].0;
        let mut j = i + 1;
        while j < chars.len() {
            let c = chars[j].1;
            if is_word_char(c) {
                j += 1;
            } else if (c == '-' || c == '\'' || c == '’') && j + 1 < chars.len() && is_word_char(chars[j + 1].1) {
                j += 2;
            } else {
                break;
            }
        }
        let end = if j < chars.len() { chars[j].0 } else { text.len() };
        out.push(Token { text: &text[start..end], start, end });
        i = j;
    }
    out
}

/// Word tokens of `text`, without spans.
pub fn tokenize(text: &str) -> Vec<&str> {
    word_spans(text).into_iter().map(|t| t.text).collect()
}

/// Lowercased word tokens, the form used for embedding training.
pub fn lower_tokens(text: &str) -> Vec<String> {
    word_spans(text).into_iter().map(|t| t.text.to_lowercase()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_on_punctuation_and_keeps_hyphenated_words() {
        assert_eq!(
            tokenize("Mix 2 cups all-purpose flour, then bake."),
            vec!["Mix", "2", "cups", "all-purpose", "flour", "then", "bake"]
        );
    }

    #[test]
    fn fractions_split_into_digits() {
        assert_eq!(tokenize("1/2 cup"), vec!["1", "2", "cup"]);
    }

    #[test]
    fn spans_point_back_into_source() {
        let s = "  beat  eggs ";
        for t in word_spans(s) {
            assert_eq!(&s[t.start..t.end], t.text);
        }
    }

    #[test]
    fn empty_and_symbol_only_input() {
        assert!(tokenize("").is_empty());
        assert!(tokenize(" -- ; ").is_empty());
    }
}
