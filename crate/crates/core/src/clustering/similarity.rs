use std::collections::BTreeSet;

use crate::corpus::IngredientFrequencyTable;
use crate::parser::{IngredientObject, Instruction, Lexicons, ParsedRecipe};

use super::{canonicalize_verb, SimilarityConfig};

/// Jaccard index of the word sets of two phrases; 1.0 when both are empty.
pub fn word_jaccard(a: &str, b: &str) -> f64 {
    let a: BTreeSet<&str> = a.split_whitespace().collect();
    let b: BTreeSet<&str> = b.split_whitespace().collect();
    let union = a.union(&b).count();
    if union == 0 {
        return 1.0;
    }
    a.intersection(&b).count() as f64 / union as f64
}

/// Maximum word-set Jaccard over the full-name/abbreviation combinations of
/// two ingredient objects.
pub fn ingredient_object_similarity(a: &IngredientObject, b: &IngredientObject) -> f64 {
    [
        (&a.full_name, &b.full_name),
        (&a.full_name, &b.abbreviation),
        (&a.abbreviation, &b.full_name),
        (&a.abbreviation, &b.abbreviation),
    ]
    .into_iter()
    .map(|(x, y)| word_jaccard(x, y))
    .fold(0.0, f64::max)
}

/// Recipe count of an ingredient; ingredients missing from the table count 1.
pub fn frequency_of(freq: &IngredientFrequencyTable, ingredient: &IngredientObject) -> u32 {
    freq.get(&ingredient.full_name).copied().unwrap_or(1).max(1)
}

/// Greedy one-to-one matching of two ingredient sets: pairs with similarity
/// at least `t1` are taken in order of decreasing similarity, then
/// decreasing larger frequency, then the lexicographically smaller
/// (unordered) name pair. Returns index pairs `(i in a, j in b)`.
pub fn match_ingredients(
    a: &[&IngredientObject],
    b: &[&IngredientObject],
    freq: &IngredientFrequencyTable,
    t1: f64,
) -> Vec<(usize, usize)> {
    let key = |o: &IngredientObject| (o.full_name.clone(), o.abbreviation.clone());
    let mut candidates = Vec::new();
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let s = ingredient_object_similarity(x, y);
            if s >= t1 {
                let n = frequency_of(freq, x).max(frequency_of(freq, y));
                let (kx, ky) = (key(x), key(y));
                let names = if kx <= ky { (kx, ky) } else { (ky, kx) };
                candidates.push((s, n, names, i, j));
            }
        }
    }
    candidates.sort_by(|p, q| q.0.total_cmp(&p.0).then(q.1.cmp(&p.1)).then_with(|| p.2.cmp(&q.2)));
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut out = Vec::new();
    for (_, _, _, i, j) in candidates {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            out.push((i, j));
        }
    }
    out
}

/// Weighted Jaccard (Ruzicka) similarity of two ingredient sets, weighting
/// each ingredient by the number of recipes it appears in.
///
/// A matched pair counts as one shared element weighted `max(n_a, n_b)` in
/// both numerator and denominator; unmatched ingredients add their own
/// count to the denominator. Taking the larger count keeps the measure
/// symmetric. Two empty sets are identical (1.0).
pub fn weighted_jaccard(
    a: &[&IngredientObject],
    b: &[&IngredientObject],
    freq: &IngredientFrequencyTable,
    config: &SimilarityConfig,
) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let matches = match_ingredients(a, b, freq, config.t1);
    let mut matched_a = vec![false; a.len()];
    let mut matched_b = vec![false; b.len()];
    let (mut num, mut den) = (0u64, 0u64);
    for &(i, j) in &matches {
        matched_a[i] = true;
        matched_b[j] = true;
        let (x, y) = (frequency_of(freq, a[i]) as u64, frequency_of(freq, b[j]) as u64);
        num += x.max(y);
        den += x.max(y);
    }
    den += a.iter().zip(&matched_a).filter(|(_, m)| !**m).map(|(o, _)| frequency_of(freq, o) as u64).sum::<u64>();
    den += b.iter().zip(&matched_b).filter(|(_, m)| !**m).map(|(o, _)| frequency_of(freq, o) as u64).sum::<u64>();
    num as f64 / den as f64
}

/// An instruction together with its resolved ingredient objects.
#[derive(Debug, Clone)]
pub struct LinkedInstruction<'a> {
    pub instruction: &'a Instruction,
    pub ingredients: Vec<&'a IngredientObject>,
}

impl<'a> LinkedInstruction<'a> {
    pub fn new(recipe: &'a ParsedRecipe, instruction: &'a Instruction) -> Self {
        LinkedInstruction { instruction, ingredients: recipe.linked(instruction).collect() }
    }

    /// Every instruction of every recipe, in corpus order.
    pub fn all(recipes: &'a [ParsedRecipe]) -> Vec<Self> {
        recipes.iter().flat_map(|r| r.instructions.iter().map(move |i| LinkedInstruction::new(r, i))).collect()
    }
}

/// Two instructions may be clustered together iff their canonical verbs are
/// equal and they share enough weighted ingredient mass (`J_W > t2`); two
/// ingredient-free instructions pass on the verb alone, while an
/// ingredient-free instruction never pairs with one that has ingredients.
pub fn candidate_pair(
    a: &LinkedInstruction<'_>,
    b: &LinkedInstruction<'_>,
    freq: &IngredientFrequencyTable,
    config: &SimilarityConfig,
    lexicons: &Lexicons,
) -> bool {
    if canonicalize_verb(&a.instruction.main_verb, lexicons) != canonicalize_verb(&b.instruction.main_verb, lexicons) {
        return false;
    }
    ingredients_compatible(&a.ingredients, &b.ingredients, freq, config)
}

pub(crate) fn ingredients_compatible(
    a: &[&IngredientObject],
    b: &[&IngredientObject],
    freq: &IngredientFrequencyTable,
    config: &SimilarityConfig,
) -> bool {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => true,
        (false, false) => weighted_jaccard(a, b, freq, config) > config.t2,
        _ => false,
    }
}
