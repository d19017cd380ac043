use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use thiserror::Error;

use super::lemma::lemmatize_with;
use crate::text::tokenize;

const VERBS: &str = include_str!("../../lexicons/verbs.txt");
const VERB_CLUSTERS: &str = include_str!("../../lexicons/verb_clusters.tsv");
const UNITS: &str = include_str!("../../lexicons/units.tsv");
const TOOLS: &str = include_str!("../../lexicons/tools.txt");
const HYPERNYMS: &str = include_str!("../../lexicons/hypernyms.tsv");
const LEMMA_EXCEPTIONS: &str = include_str!("../../lexicons/lemma_exceptions.tsv");
const STOPWORDS: &str = include_str!("../../lexicons/stopwords.txt");

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("failed to read lexicon file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}:{line}: {message}")]
    Malformed { file: String, line: usize, message: String },
    #[error("verb cluster representative `{0}` does not map to itself")]
    NonFixedRepresentative(String),
    #[error("unit alias `{alias}` maps to both `{first}` and `{second}`")]
    ConflictingUnitAlias { alias: String, first: String, second: String },
}

/// A multi-word tool name, stored as lemmas for matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tool {
    pub name: String,
    pub lemmas: Vec<String>,
}

/// Word lists that drive the parser and the verb canonicalization.
#[derive(Debug, Clone)]
pub struct Lexicons {
    pub cooking_verbs: BTreeSet<String>,
    pub verb_clusters: BTreeMap<String, String>,
    /// alias → canonical unit. Single-character aliases are case-sensitive,
    /// every other alias is stored lowercase.
    pub unit_aliases: BTreeMap<String, String>,
    pub tools: Vec<Tool>,
    /// noun phrase (lemmatized) → transitive hypernyms (lemmatized).
    pub hypernyms: BTreeMap<String, BTreeSet<String>>,
    pub lemma_exceptions: HashMap<String, String>,
    pub stopwords: BTreeSet<String>,
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn records(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

fn split_tab<'a>(file: &str, line: usize, rec: &'a str) -> Result<(&'a str, &'a str), LexiconError> {
    rec.split_once('\t').ok_or_else(|| LexiconError::Malformed {
        file: file.to_string(),
        line,
        message: "expected two TAB-separated columns".into(),
    })
}

struct Sources<'a> {
    verbs: std::borrow::Cow<'a, str>,
    verb_clusters: std::borrow::Cow<'a, str>,
    units: std::borrow::Cow<'a, str>,
    tools: std::borrow::Cow<'a, str>,
    hypernyms: std::borrow::Cow<'a, str>,
    lemma_exceptions: std::borrow::Cow<'a, str>,
    stopwords: std::borrow::Cow<'a, str>,
}

impl Lexicons {
    /// The lexicons compiled into the crate.
    pub fn bundled() -> Self {
        Self::from_sources(Sources {
            verbs: VERBS.into(),
            verb_clusters: VERB_CLUSTERS.into(),
            units: UNITS.into(),
            tools: TOOLS.into(),
            hypernyms: HYPERNYMS.into(),
            lemma_exceptions: LEMMA_EXCEPTIONS.into(),
            stopwords: STOPWORDS.into(),
        })
        .expect("bundled lexicons are valid")
    }

    /// Loads lexicon files from `dir`. Any file missing from the directory
    /// falls back to the bundled copy, so a directory may override just one
    /// list.
    pub fn load_dir(dir: &Path) -> Result<Self, LexiconError> {
        let read = |name: &str, fallback: &'static str| -> Result<std::borrow::Cow<'static, str>, LexiconError> {
            let path = dir.join(name);
            if path.exists() {
                fs::read_to_string(&path)
                    .map(Into::into)
                    .map_err(|source| LexiconError::Io { path: path.display().to_string(), source })
            } else {
                Ok(fallback.into())
            }
        };
        Self::from_sources(Sources {
            verbs: read("verbs.txt", VERBS)?,
            verb_clusters: read("verb_clusters.tsv", VERB_CLUSTERS)?,
            units: read("units.tsv", UNITS)?,
            tools: read("tools.txt", TOOLS)?,
            hypernyms: read("hypernyms.tsv", HYPERNYMS)?,
            lemma_exceptions: read("lemma_exceptions.tsv", LEMMA_EXCEPTIONS)?,
            stopwords: read("stopwords.txt", STOPWORDS)?,
        })
    }

    fn from_sources(src: Sources<'_>) -> Result<Self, LexiconError> {
        let mut lemma_exceptions = HashMap::new();
        for (line, rec) in records(&src.lemma_exceptions) {
            let (word, lemma) = split_tab("lemma_exceptions.tsv", line, rec)?;
            lemma_exceptions.insert(word.trim().to_lowercase(), lemma.trim().to_lowercase());
        }
        let lemma = |w: &str| lemmatize_with(w.trim(), &lemma_exceptions);
        let phrase = |p: &str| -> String { tokenize(p).iter().map(|w| lemma(w)).collect::<Vec<_>>().join(" ") };

        let cooking_verbs: BTreeSet<String> = records(&src.verbs).map(|(_, v)| lemma(v)).collect();

        let mut verb_clusters = BTreeMap::new();
        for (line, rec) in records(&src.verb_clusters) {
            let (member, rep) = split_tab("verb_clusters.tsv", line, rec)?;
            verb_clusters.insert(lemma(member), lemma(rep));
        }
        let reps: BTreeSet<String> = verb_clusters.values().cloned().collect();
        for rep in reps {
            match verb_clusters.get(&rep) {
                None => {
                    verb_clusters.insert(rep.clone(), rep);
                }
                Some(target) if *target != rep => return Err(LexiconError::NonFixedRepresentative(rep)),
                Some(_) => {}
            }
        }

        let mut unit_aliases: BTreeMap<String, String> = BTreeMap::new();
        for (line, rec) in records(&src.units) {
            let (canonical, aliases) = split_tab("units.tsv", line, rec)?;
            let canonical = canonical.trim().to_lowercase();
            let all = std::iter::once(canonical.as_str()).chain(aliases.split(','));
            for alias in all.map(str::trim).filter(|a| !a.is_empty()) {
                let key = if alias.chars().count() == 1 { alias.to_string() } else { alias.to_lowercase() };
                if let Some(prev) = unit_aliases.get(&key) {
                    if *prev != canonical {
                        return Err(LexiconError::ConflictingUnitAlias {
                            alias: key,
                            first: prev.clone(),
                            second: canonical,
                        });
                    }
                }
                unit_aliases.insert(key, canonical.clone());
            }
        }

        let mut tools: Vec<Tool> = records(&src.tools)
            .map(|(_, t)| Tool {
                name: t.trim().to_lowercase(),
                lemmas: tokenize(t).iter().map(|w| lemma(w)).collect(),
            })
            .filter(|t| !t.lemmas.is_empty())
            .collect();
        // Longest names first so "food processor" wins over "processor".
        tools.sort_by(|a, b| b.lemmas.len().cmp(&a.lemmas.len()).then_with(|| a.name.cmp(&b.name)));

        let mut direct: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (line, rec) in records(&src.hypernyms) {
            let (noun, hyps) = split_tab("hypernyms.tsv", line, rec)?;
            let entry = direct.entry(phrase(noun)).or_default();
            entry.extend(hyps.split(',').map(str::trim).filter(|h| !h.is_empty()).map(phrase));
        }
        let hypernyms = transitive_closure(&direct);

        let stopwords = records(&src.stopwords).map(|(_, w)| w.trim().to_lowercase()).collect();

        Ok(Self { cooking_verbs, verb_clusters, unit_aliases, tools, hypernyms, lemma_exceptions, stopwords })
    }

    pub fn lemmatize(&self, word: &str) -> String {
        lemmatize_with(word, &self.lemma_exceptions)
    }

    /// Lemmas of every word token in `text`, in order.
    pub fn lemmas(&self, text: &str) -> Vec<String> {
        tokenize(text).into_iter().map(|w| self.lemmatize(w)).collect()
    }

    pub fn is_cooking_verb(&self, lemma: &str) -> bool {
        self.cooking_verbs.contains(lemma)
    }

    pub fn is_stopword(&self, word: &str) -> bool {
        self.stopwords.contains(word)
    }

    /// Noun approximation used without a POS tagger: not a stopword, not a
    /// cooking verb, not an `-ly` adverb and not a number.
    pub fn is_noun(&self, lemma: &str) -> bool {
        !lemma.is_empty()
            && !self.is_stopword(lemma)
            && !self.is_cooking_verb(lemma)
            && !lemma.ends_with("ly")
            && lemma.chars().any(char::is_alphabetic)
    }

    /// Transitive hypernyms of a lemmatized noun phrase, if the phrase is known.
    pub fn hypernyms_of(&self, phrase: &str) -> Option<&BTreeSet<String>> {
        self.hypernyms.get(phrase)
    }

    /// A cooking verb that is also a food noun ("cream", "juice", "zest").
    pub fn is_food_noun(&self, lemma: &str) -> bool {
        self.hypernyms_of(lemma).is_some_and(|h| h.contains("food"))
    }

    pub fn canonical_unit(&self, alias: &str) -> Option<&str> {
        let key = if alias.chars().count() == 1 { alias.to_string() } else { alias.to_lowercase() };
        self.unit_aliases.get(&key).map(String::as_str)
    }
}

impl Default for Lexicons {
    fn default() -> Self {
        Self::bundled()
    }
}

fn transitive_closure(direct: &BTreeMap<String, BTreeSet<String>>) -> BTreeMap<String, BTreeSet<String>> {
    let mut out = BTreeMap::new();
    for noun in direct.keys() {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<&String> = direct[noun].iter().collect();
        while let Some(h) = stack.pop() {
            if h != noun && seen.insert(h.clone()) {
                if let Some(next) = direct.get(h) {
                    stack.extend(next.iter());
                }
            }
        }
        out.insert(noun.clone(), seen);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_lexicons_load() {
        let lex = Lexicons::bundled();
        assert!(lex.cooking_verbs.len() >= 120, "{} verbs", lex.cooking_verbs.len());
        assert!(lex.is_cooking_verb("bake"));
        assert!(!lex.is_cooking_verb("sugar"));
        assert_eq!(lex.canonical_unit("cups"), Some("cup"));
        assert_eq!(lex.canonical_unit("T"), Some("tablespoon"));
        assert_eq!(lex.canonical_unit("t"), Some("teaspoon"));
        assert_eq!(lex.canonical_unit("TBSP"), Some("tablespoon"));
    }

    #[test]
    fn verb_representatives_are_fixed_points() {
        let lex = Lexicons::bundled();
        for rep in lex.verb_clusters.values() {
            assert_eq!(lex.verb_clusters.get(rep), Some(rep));
        }
    }

    #[test]
    fn hypernyms_are_transitive_and_lemmatized() {
        let lex = Lexicons::bundled();
        let cinnamon = lex.hypernyms_of("cinnamon").unwrap();
        assert!(cinnamon.contains("spice"));
        assert!(cinnamon.contains("food"));
        assert!(lex.hypernyms_of("bake powder").is_none());
        assert!(lex.hypernyms_of("baking powder").unwrap().contains("leaven"));
    }

    #[test]
    fn load_dir_overrides_single_file() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("verbs.txt"), "spiralize\n").unwrap();
        let lex = Lexicons::load_dir(dir.path()).unwrap();
        assert!(lex.is_cooking_verb("spiralize"));
        assert!(!lex.is_cooking_verb("bake"));
        assert_eq!(lex.canonical_unit("cup"), Some("cup"));
    }

    #[test]
    fn rejects_non_fixed_representative() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("verb_clusters.tsv"), "cream\tbeat\nbeat\twhisk\n").unwrap();
        assert!(matches!(Lexicons::load_dir(dir.path()), Err(LexiconError::NonFixedRepresentative(_))));
    }

    #[test]
    fn rejects_conflicting_unit_alias() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("units.tsv"), "cup\tc\ncan\tc\n").unwrap();
        assert!(matches!(Lexicons::load_dir(dir.path()), Err(LexiconError::ConflictingUnitAlias { .. })));
    }

    #[test]
    fn malformed_tsv_reports_line() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("verb_clusters.tsv"), "# header\nbeat beat\n").unwrap();
        match Lexicons::load_dir(dir.path()) {
            Err(LexiconError::Malformed { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
