use std::collections::BTreeSet;

use rayon::prelude::*;

use super::instruction::{extract_main_verb, extract_time_range, extract_tools, split_instruction_line};
use super::{parse_ingredient_line, IngredientObject, Instruction, Lexicons, ParsedRecipe};
use crate::corpus::RawRecipe;

/// A run of consecutive words shared by an ingredient name and a text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct SharedRun {
    name_start: usize,
    text_start: usize,
    len: usize,
    ends_with_noun: bool,
}

impl SharedRun {
    /// Ordering key: longer first, then noun-final, then closer to the head
    /// of the name, then earlier in the text.
    fn better_than(&self, other: &SharedRun) -> bool {
        let key = |r: &SharedRun| (r.len, r.ends_with_noun, r.name_start + r.len, std::cmp::Reverse(r.text_start));
        key(self) > key(other)
    }
}

/// Longest consecutive word sequence shared by `name` and `text`. Runs made
/// only of stopwords and cooking verbs are not abbreviations and are
/// ignored.
fn best_shared_run(name: &[String], text: &[String], lexicons: &Lexicons) -> Option<SharedRun> {
    let mut best: Option<SharedRun> = None;
    for a in 0..name.len() {
        for b in 0..text.len() {
            let mut len = 0;
            while a + len < name.len() && b + len < text.len() && name[a + len] == text[b + len] {
                len += 1;
            }
            // Every prefix of a maximal run is a candidate too; prefixes can
            // win the noun tie-break only against other runs, never against
            // their own longer run, so only the maximal run is considered
            // from this start.
            if len == 0 || !name[a..a + len].iter().any(|w| lexicons.is_noun(w)) {
                continue;
            }
            let run =
                SharedRun { name_start: a, text_start: b, len, ends_with_noun: lexicons.is_noun(&name[a + len - 1]) };
            if best.is_none_or(|cur| run.better_than(&cur)) {
                best = Some(run);
            }
        }
    }
    best
}

fn name_words(ingredient: &IngredientObject) -> Vec<String> {
    ingredient.full_name.split_whitespace().map(str::to_string).collect()
}

/// Longest run of consecutive words the ingredient name shares with the
/// lemmatized instruction text; ties prefer a run ending with a noun.
pub fn derive_abbreviation(
    ingredient: &IngredientObject,
    instruction_text: &str,
    lexicons: &Lexicons,
) -> Option<String> {
    let name = name_words(ingredient);
    let text = lexicons.lemmas(instruction_text);
    best_shared_run(&name, &text, lexicons).map(|r| name[r.name_start..r.name_start + r.len].join(" "))
}

/// Transitive hypernyms of an ingredient, looked up by its full name and
/// then by shorter suffixes down to the head noun.
fn ingredient_hypernyms<'a>(ingredient: &IngredientObject, lexicons: &'a Lexicons) -> Option<&'a BTreeSet<String>> {
    let words = name_words(ingredient);
    (0..words.len()).find_map(|k| lexicons.hypernyms_of(&words[k..].join(" ")))
}

fn generalization_in(
    missing: &IngredientObject,
    text: &[String],
    blocked: &[bool],
    lexicons: &Lexicons,
) -> Option<String> {
    let targets = ingredient_hypernyms(missing, lexicons)?;
    text.iter().zip(blocked).filter(|(_, &b)| !b).map(|(w, _)| w).find_map(|noun| {
        if !lexicons.is_noun(noun) || !targets.contains(noun) {
            return None;
        }
        let hyps = lexicons.hypernyms_of(noun)?;
        (hyps.contains("food") || hyps.contains("fruit")).then(|| noun.clone())
    })
}

/// Marks every occurrence of every phrase in `phrases` within `text`.
fn block_phrases<'a>(text: &[String], phrases: impl IntoIterator<Item = &'a str>) -> Vec<bool> {
    let mut blocked = vec![false; text.len()];
    for phrase in phrases {
        let words: Vec<&str> = phrase.split_whitespace().collect();
        if words.is_empty() || words.len() > text.len() {
            continue;
        }
        for start in 0..=text.len() - words.len() {
            if text[start..start + words.len()].iter().zip(&words).all(|(a, b)| a == b) {
                blocked[start..start + words.len()].iter_mut().for_each(|x| *x = true);
            }
        }
    }
    blocked
}

/// Hypernym of a missing ingredient that the text uses in its place
/// ("spice" for "ground cinnamon"). Already-found abbreviations are removed
/// from the text first; a candidate must be a noun whose own hypernyms
/// include "food" or "fruit".
pub fn derive_generalization(
    missing: &IngredientObject,
    instruction_text: &str,
    found_abbrevs: &BTreeSet<String>,
    lexicons: &Lexicons,
) -> Option<String> {
    let text = lexicons.lemmas(instruction_text);
    let blocked = block_phrases(&text, found_abbrevs.iter().map(String::as_str));
    generalization_in(missing, &text, &blocked, lexicons)
}

/// Parses a whole recipe: ingredient lines, instruction splitting, and the
/// per-step verb, tools, time range and ingredient links.
///
/// An ingredient's abbreviation is its best shared run over all steps of the
/// recipe. A step links an ingredient when the ingredient shares a run with
/// that step, unless the run lies strictly inside a longer run claimed by
/// another ingredient ("powder" inside "cocoa powder"). Ingredients with no
/// abbreviation are linked through their generalization instead.
pub fn parse_recipe(raw: &RawRecipe, lexicons: &Lexicons) -> ParsedRecipe {
    let mut ingredients: Vec<IngredientObject> =
        raw.ingredient_lines.iter().map(|l| parse_ingredient_line(l, lexicons)).collect();
    let fragments: Vec<String> =
        raw.instruction_lines.iter().flat_map(|l| split_instruction_line(l, lexicons)).collect();
    let fragment_lemmas: Vec<Vec<String>> =
        fragments.iter().map(|f| mask_tool_phrases(lexicons.lemmas(f), lexicons)).collect();
    let names: Vec<Vec<String>> = ingredients.iter().map(name_words).collect();

    // runs[f][i]: best run of ingredient i inside fragment f.
    let runs: Vec<Vec<Option<SharedRun>>> = fragment_lemmas
        .iter()
        .map(|text| names.iter().map(|name| best_shared_run(name, text, lexicons)).collect())
        .collect();

    let mut found = BTreeSet::new();
    let mut has_abbreviation = vec![false; ingredients.len()];
    for (i, ingredient) in ingredients.iter_mut().enumerate() {
        let best = runs.iter().filter_map(|r| r[i]).fold(None::<SharedRun>, |acc, r| match acc {
            Some(cur) if !r.better_than(&cur) => Some(cur),
            _ => Some(r),
        });
        if let Some(r) = best {
            ingredient.abbreviation = names[i][r.name_start..r.name_start + r.len].join(" ");
            found.insert(ingredient.abbreviation.clone());
            has_abbreviation[i] = true;
        }
    }

    let all_lemmas: Vec<String> = fragment_lemmas.iter().flatten().cloned().collect();
    let blocked = block_phrases(&all_lemmas, found.iter().map(String::as_str));
    for (i, ingredient) in ingredients.iter_mut().enumerate() {
        if !has_abbreviation[i] {
            ingredient.generalization = generalization_in(ingredient, &all_lemmas, &blocked, lexicons);
        }
    }

    let instructions = fragments
        .iter()
        .enumerate()
        .map(|(position, text)| {
            let lemmas = &fragment_lemmas[position];
            let mut linked = claim_runs(&runs[position], &ingredients, &names);
            let fragment_blocked = block_phrases(lemmas, found.iter().map(String::as_str));
            for (i, ingredient) in ingredients.iter().enumerate() {
                if let Some(g) = &ingredient.generalization {
                    if lemmas.iter().zip(&fragment_blocked).any(|(w, &b)| !b && w == g) {
                        linked.insert(i);
                    }
                }
            }
            Instruction {
                recipe_id: raw.id.clone(),
                position,
                raw_text: text.clone(),
                main_verb: extract_main_verb(text, lexicons),
                ingredients: linked.into_iter().collect(),
                tools: extract_tools(text, lexicons),
                time_range: extract_time_range(text),
            }
        })
        .collect();

    ParsedRecipe { id: raw.id.clone(), dish: raw.dish.clone(), servings: raw.servings, ingredients, instructions }
}

/// Resolves overlapping runs within one step. A run strictly contained in a
/// longer run of another ingredient loses ("powder" inside "cocoa powder").
/// When several ingredients claim exactly the same words, those whose
/// abbreviation is exactly these words win ("sugar" goes to "white sugar",
/// abbreviated "sugar", rather than to "confectioner sugar"); if none is,
/// all claimants are linked.
fn claim_runs(runs: &[Option<SharedRun>], ingredients: &[IngredientObject], names: &[Vec<String>]) -> BTreeSet<usize> {
    let spans: Vec<(usize, (usize, usize))> =
        runs.iter().enumerate().filter_map(|(i, r)| r.map(|r| (i, (r.text_start, r.text_start + r.len)))).collect();
    let words = |i: usize| {
        let r = runs[i].expect("claimed run");
        names[i][r.name_start..r.name_start + r.len].join(" ")
    };
    let mut linked = BTreeSet::new();
    for &(i, (s, e)) in &spans {
        let shadowed = spans.iter().any(|&(_, (s2, e2))| s2 <= s && e <= e2 && e2 - s2 > e - s);
        if shadowed {
            continue;
        }
        let same: Vec<usize> = spans.iter().filter(|&&(_, sp)| sp == (s, e)).map(|&(j, _)| j).collect();
        let exact = |j: usize| ingredients[j].abbreviation == words(j);
        if same.len() == 1 || exact(i) || !same.iter().any(|&j| exact(j)) {
            linked.insert(i);
        }
    }
    linked
}

/// Hides the words of multi-word tools ("baking pan") from ingredient
/// matching so that "baking" does not link "baking soda".
fn mask_tool_phrases(mut lemmas: Vec<String>, lexicons: &Lexicons) -> Vec<String> {
    for tool in lexicons.tools.iter().filter(|t| t.lemmas.len() > 1) {
        let n = tool.lemmas.len();
        let mut k = 0;
        while k + n <= lemmas.len() {
            if lemmas[k..k + n] == tool.lemmas[..] {
                lemmas[k..k + n].iter_mut().for_each(|w| *w = String::from("\u{0}"));
                k += n;
            } else {
                k += 1;
            }
        }
    }
    lemmas
}

/// Parses recipes in parallel; output order matches input order.
pub fn parse_recipes(raws: &[RawRecipe], lexicons: &Lexicons) -> Vec<ParsedRecipe> {
    raws.par_iter().map(|r| parse_recipe(r, lexicons)).collect()
}
