mod common;

use std::collections::BTreeSet;

use num_rational::Rational64;
use procmap_core::corpus::RawRecipe;
use procmap_core::parser::{
    derive_abbreviation, derive_generalization, extract_main_verb, extract_time_range, extract_tools,
    parse_ingredient_line, parse_recipe, parse_recipes, split_instruction_line, IngredientObject, ParsedRecipe,
    Quantity, TimeRange,
};
use procmap_core::Lexicons;
use proptest::prelude::*;

use common::*;

fn lex() -> Lexicons {
    Lexicons::bundled()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

#[test]
fn lemmatizer_examples() {
    let lex = lex();
    assert_eq!(lex.lemmatize("apples"), "apple");
    assert_eq!(lex.lemmatize("slices"), "slice");
    assert_eq!(lex.lemmatize("leaves"), "leaf");
    assert_eq!(lex.lemmatize("Berries"), "berry");
}

#[test]
fn ingredient_line_examples() {
    let lex = lex();
    let sugar = parse_ingredient_line("1/2 cup sugar", &lex);
    assert_eq!(sugar.quantity.map(Quantity::ratio), Some(Rational64::new(1, 2)));
    assert_eq!(sugar.unit.as_deref(), Some("cup"));
    assert_eq!(sugar.full_name, "sugar");

    let salt = parse_ingredient_line("salt", &lex);
    assert_eq!((salt.quantity, salt.unit.as_deref(), salt.full_name.as_str()), (None, None, "salt"));

    let apples = parse_ingredient_line("2 Granny Smith apples, peeled", &lex);
    assert_eq!(apples.quantity.map(Quantity::ratio), Some(Rational64::from_integer(2)));
    assert_eq!(apples.unit, None);
    assert_eq!(apples.full_name, "granny smith apple");

    let mixed = parse_ingredient_line("1 1/2 cups all-purpose flour (sifted)", &lex);
    assert_eq!(mixed.quantity.map(Quantity::ratio), Some(Rational64::new(3, 2)));
    assert_eq!(mixed.unit.as_deref(), Some("cup"));
    assert!(!mixed.full_name.contains("sift"));

    let unicode = parse_ingredient_line("½ teaspoon salt", &lex);
    assert_eq!(unicode.quantity.map(Quantity::ratio), Some(Rational64::new(1, 2)));
    assert_eq!(unicode.unit.as_deref(), Some("teaspoon"));
}

#[test]
fn abbreviation_examples() {
    let lex = lex();
    let named = |n: &str| IngredientObject::named(n, &lex);
    assert_eq!(
        derive_abbreviation(&named("granny smith apple"), "peel the apples and slice", &lex).as_deref(),
        Some("apple")
    );
    assert_eq!(derive_abbreviation(&named("sugar"), "stir in sugar", &lex).as_deref(), Some("sugar"));
    assert_eq!(derive_abbreviation(&named("ground cinnamon"), "sift sugar and spices", &lex), None);
}

#[test]
fn generalization_examples() {
    let lex = lex();
    let named = |n: &str| IngredientObject::named(n, &lex);
    let found = set(&["sugar"]);
    assert_eq!(
        derive_generalization(&named("ground cinnamon"), "sift sugar and spices", &found, &lex).as_deref(),
        Some("spice")
    );
    assert_eq!(derive_generalization(&named("flour"), "bake until golden", &BTreeSet::new(), &lex), None);
    for spice in ["cinnamon", "clove", "allspice"] {
        assert_eq!(
            derive_generalization(&named(spice), "sift sugar and spices", &found, &lex).as_deref(),
            Some("spice")
        );
    }
}

#[test]
fn splitting_examples() {
    let lex = lex();
    assert_eq!(
        split_instruction_line(
            "Combine the water, 1/2 cup sugar and chocolate in a saucepan and cook over low heat just until the chocolate melts",
            &lex
        ),
        ["Combine the water, 1/2 cup sugar, and chocolate in a saucepan", "cook over low heat just until the chocolate melts"]
    );
    assert_eq!(split_instruction_line("Serve.", &lex), ["Serve."]);
    assert_eq!(
        split_instruction_line("Peel apples and sugar them and bake 10 minutes", &lex),
        ["Peel apples and sugar them", "bake 10 minutes"]
    );
    assert_eq!(split_instruction_line("Preheat oven. Grease a pan; then bake.", &lex).len(), 3);
}

#[test]
fn verb_examples() {
    let lex = lex();
    assert_eq!(extract_main_verb("Beat butter and sugar until creamy", &lex), "beat");
    assert_eq!(extract_main_verb("In a large bowl, mix flour and sugar", &lex), "mix");
    assert_eq!(extract_main_verb("Slowly add the eggs", &lex), "add");
}

#[test]
fn tool_examples() {
    let lex = lex();
    assert_eq!(extract_tools("mix in a large bowl", &lex), set(&["bowl"]));
    assert_eq!(extract_tools("beat with an electric mixer", &lex), set(&["mixer"]));
    assert_eq!(extract_tools("bake in preheated oven in a greased pan", &lex), set(&["oven", "pan"]));
}

#[test]
fn time_examples() {
    let range = |a, b| Some(TimeRange { min_seconds: a, max_seconds: b });
    assert_eq!(extract_time_range("about 2 minutes"), range(120, 120));
    assert_eq!(extract_time_range("bake 30 to 35 minutes"), range(1800, 2100));
    assert_eq!(extract_time_range("let stand 1 hour, stirring every 10 minutes"), range(600, 3600));
    assert_eq!(extract_time_range("bake 1-2 hours"), range(3600, 7200));
    assert_eq!(extract_time_range("bake until golden"), None);
}

fn recipe(ingredients: &[&str], instructions: &[&str]) -> RawRecipe {
    RawRecipe {
        id: "t".into(),
        dish: "apple cake".into(),
        servings: None,
        ingredient_lines: ingredients.iter().map(|s| s.to_string()).collect(),
        instruction_lines: instructions.iter().map(|s| s.to_string()).collect(),
    }
}

#[test]
fn recipe_examples() {
    let lex = lex();
    let p = parse_recipe(&recipe(&["1 cup sugar", "1 teaspoon ground cinnamon"], &["Sift sugar and spices."]), &lex);
    let names: Vec<_> = p.linked(&p.instructions[0]).map(|o| o.full_name.as_str()).collect();
    assert_eq!(names, ["sugar", "ground cinnamon"]);
    assert_eq!(p.ingredients[1].generalization.as_deref(), Some("spice"));

    let p = parse_recipe(&recipe(&["salt"], &["Serve."]), &lex);
    assert_eq!(p.instructions.len(), 1);
    assert_eq!(p.instructions[0].main_verb, "serve");
    assert!(p.instructions[0].ingredients.is_empty());
}

#[test]
fn golden_r1() {
    let corpus = mini_corpus();
    let r1 = corpus.recipes.iter().find(|r| r.id == "r1").unwrap();
    let parsed = parse_recipe(r1, &lex());
    let golden: ParsedRecipe =
        serde_json::from_str(&std::fs::read_to_string(fixture_path("apple_cake_mini.r1.parsed.json")).unwrap())
            .unwrap();
    assert_eq!(parsed, golden);
}

fn check_recipe_invariants(p: &ParsedRecipe, lex: &Lexicons) -> Result<(), TestCaseError> {
    for (i, ins) in p.instructions.iter().enumerate() {
        prop_assert_eq!(ins.position, i);
        prop_assert!(!ins.main_verb.is_empty());
        prop_assert!(!ins.main_verb.contains(char::is_whitespace));
        prop_assert_eq!(ins.main_verb.to_lowercase(), ins.main_verb.clone());
        prop_assert!(ins.ingredients.iter().all(|&k| k < p.ingredients.len()));
        prop_assert!(ins.ingredients.windows(2).all(|w| w[0] < w[1]));
        if let Some(t) = ins.time_range {
            prop_assert!(t.min_seconds <= t.max_seconds);
        }
    }
    for ing in &p.ingredients {
        let words: Vec<&str> = ing.full_name.split(' ').collect();
        let abbrev: Vec<&str> = ing.abbreviation.split(' ').collect();
        prop_assert!(!ing.abbreviation.is_empty());
        prop_assert!(words.windows(abbrev.len()).any(|w| w == abbrev.as_slice()), "{:?}", ing);
        if let Some(q) = ing.quantity {
            prop_assert!(q.ratio() > Rational64::from_integer(0));
        }
        if let Some(g) = &ing.generalization {
            prop_assert!(lex.hypernyms_of(g).is_some() || lex.is_food_noun(g), "{g}");
        }
    }
    Ok(())
}

#[test]
fn mini_corpus_invariants_and_thread_independence() {
    let lex = lex();
    let corpus = mini_corpus();
    let parallel = parse_recipes(&corpus.recipes, &lex);
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| parse_recipes(&corpus.recipes, &lex));
    assert_eq!(parallel, serial);
    for (p, raw) in parallel.iter().zip(&corpus.recipes) {
        assert_eq!(p.id, raw.id);
        check_recipe_invariants(p, &lex).unwrap();
    }
}

const WORDS: &[&str] = &[
    "beat", "butter", "sugar", "and", "then", "fold", "apples", "the", "in", "a", "bowl", "bake", "30", "minutes",
    "cinnamon", "slowly", "add", "eggs", "brown", "oven", "until", "golden", ",", "1/2", "cup", "sift", "spices",
];

fn sentence() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(WORDS), 1..14).prop_map(|w| w.join(" ").replace(" ,", ","))
}

fn significant(s: &str) -> String {
    // Splitting may drop joining connectors and normalize list commas.
    s.replace(['.', ','], " ").split_whitespace().filter(|w| !matches!(*w, "and" | "then")).collect()
}

proptest! {
    #[test]
    fn splitting_keeps_content(line in prop::collection::vec(sentence(), 1..3).prop_map(|s| s.join(". "))) {
        let lex = lex();
        let parts = split_instruction_line(&line, &lex);
        prop_assert!(!parts.is_empty());
        prop_assert!(parts.iter().all(|p| !p.trim().is_empty() && p.trim() == p));
        prop_assert_eq!(significant(&parts.join(" ")), significant(&line));
    }

    #[test]
    fn parsed_recipes_satisfy_invariants(
        ingredients in prop::collection::vec(prop::sample::select(&["1 cup sugar", "2 eggs", "1 teaspoon ground cinnamon", "3 Granny Smith apples, peeled", "salt", "1/2 cup butter", "2 cups flour"][..]), 1..6),
        steps in prop::collection::vec(sentence(), 1..5),
    ) {
        let lex = lex();
        let raw = recipe(&ingredients, &steps.iter().map(String::as_str).collect::<Vec<_>>());
        let a = parse_recipe(&raw, &lex);
        prop_assert_eq!(&a, &parse_recipe(&raw, &lex));
        check_recipe_invariants(&a, &lex)?;
    }

    #[test]
    fn abbreviation_is_contiguous_subsequence(name in prop::collection::vec(prop::sample::select(WORDS), 1..4), text in sentence()) {
        let lex = lex();
        let obj = IngredientObject::named(&name.join(" "), &lex);
        if let Some(abbrev) = derive_abbreviation(&obj, &text, &lex) {
            let words: Vec<&str> = obj.full_name.split(' ').collect();
            let a: Vec<&str> = abbrev.split(' ').collect();
            prop_assert!(words.windows(a.len()).any(|w| w == a.as_slice()));
        }
    }
}
