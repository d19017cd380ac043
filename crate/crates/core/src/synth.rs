//! Seeded generator of synthetic apple cake recipes, used for end-to-end
//! benchmarks and tests. Recipes share a common skeleton but vary in
//! phrasing, optional steps, step order, ingredients and quantities.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Corpus, RawRecipe};

fn pick<'a>(rng: &mut ChaCha8Rng, options: &[&'a str]) -> &'a str {
    options.choose(rng).expect("non-empty options")
}

struct Draft {
    ingredients: Vec<String>,
    steps: Vec<String>,
}

fn recipe(rng: &mut ChaCha8Rng) -> Draft {
    let mut ing = Vec::new();
    let mut steps = Vec::new();
    let apples = rng.gen_range(2..=6);
    let apple = pick(rng, &["Granny Smith apples", "apples", "tart apples", "McIntosh apples"]);
    ing.push(format!("{apples} {apple}, peeled, cored and sliced"));
    ing.push(format!("{} cups all-purpose flour", pick(rng, &["1 1/2", "2", "2 1/4", "3"])));
    ing.push(format!("{} cup white sugar", pick(rng, &["1", "3/4", "1 1/2", "2"])));
    let fat = pick(rng, &["butter", "vegetable oil", "shortening"]);
    ing.push(match fat {
        "vegetable oil" => format!("{} cup vegetable oil", pick(rng, &["1/2", "3/4", "1"])),
        other => format!("{} cup {other}, softened", pick(rng, &["1/2", "3/4", "1"])),
    });
    ing.push(format!("{} eggs", rng.gen_range(2..=4)));
    ing.push(format!("{} teaspoons baking powder", pick(rng, &["1", "2"])));
    ing.push("1/2 teaspoon salt".into());
    let cinnamon = rng.gen_bool(0.8);
    if cinnamon {
        ing.push(format!("{} teaspoon ground cinnamon", pick(rng, &["1", "2", "1 1/2"])));
    }
    let spices = rng.gen_bool(0.3);
    if spices {
        ing.push("1/4 teaspoon ground nutmeg".into());
        ing.push("1/4 teaspoon ground cloves".into());
    }
    let milk = rng.gen_bool(0.5);
    if milk {
        ing.push(format!("{} cup milk", pick(rng, &["1/2", "3/4", "1"])));
    }
    let vanilla = rng.gen_bool(0.6);
    if vanilla {
        ing.push("1 teaspoon vanilla extract".into());
    }
    let nuts = rng.gen_bool(0.25);
    if nuts {
        ing.push(format!("1/2 cup chopped {}", pick(rng, &["walnuts", "pecans"])));
    }
    let raisins = rng.gen_bool(0.1);
    if raisins {
        ing.push("1/2 cup raisins".into());
    }
    let yeast = rng.gen_bool(0.02);
    if yeast {
        ing.push("1 package active dry yeast".into());
    }
    let topping = rng.gen_bool(0.35);
    if topping {
        ing.push("2 tablespoons brown sugar".into());
    }
    let glaze = rng.gen_bool(0.25);
    if glaze {
        ing.push("1 cup confectioners' sugar".into());
    }

    if rng.gen_bool(0.9) {
        steps.push(format!(
            "Preheat oven to {} degrees F ({} degrees C).",
            pick(rng, &["350", "375"]),
            pick(rng, &["175", "190"])
        ));
    }
    if rng.gen_bool(0.8) {
        steps.push(
            pick(
                rng,
                &[
                    "Grease and flour a 9x13 inch baking pan.",
                    "Grease a 9 inch springform pan.",
                    "Grease and flour a 10 inch tube pan.",
                    "Lightly grease a 9x9 inch pan.",
                ],
            )
            .to_string(),
        );
    }
    let mut prep =
        vec![pick(rng, &["Peel and slice the apples.", "Peel, core and chop the apples.", "Slice the apples thinly."])
            .to_string()];
    if cinnamon && rng.gen_bool(0.5) {
        prep.push(
            pick(
                rng,
                &[
                    "Toss the apples with the cinnamon and 2 tablespoons of the sugar.",
                    "In a small bowl, mix the apples with cinnamon.",
                ],
            )
            .to_string(),
        );
    }
    let mut batter = Vec::new();
    if fat == "vegetable oil" {
        batter.push(
            pick(
                rng,
                &["In a large bowl, beat the eggs and oil until smooth.", "Whisk together the oil, eggs and sugar."],
            )
            .to_string(),
        );
    } else {
        batter.push(format!(
            "{} the {fat} and sugar {}.",
            pick(rng, &["Cream", "Beat"]),
            pick(rng, &["until light and fluffy", "with an electric mixer", "in a large bowl",])
        ));
        batter.push(pick(rng, &["Beat in the eggs one at a time.", "Add the eggs and beat well."]).to_string());
    }
    if vanilla {
        batter.push("Stir in the vanilla.".into());
    }
    let mut dry = format!(
        "{} the flour, baking powder{}",
        pick(rng, &["Sift together", "Combine", "Mix"]),
        if cinnamon { ", cinnamon" } else { "" }
    );
    dry.push_str(" and salt.");
    if spices {
        dry = "Sift the flour, baking powder, salt and spices.".into();
    }
    batter.push(dry);
    batter.push(if milk {
        "Stir the flour mixture into the batter alternately with the milk.".to_string()
    } else {
        pick(rng, &["Stir the flour mixture into the batter.", "Gradually mix in the flour mixture."]).to_string()
    });
    if rng.gen_bool(0.5) {
        steps.extend(prep);
        steps.extend(batter);
    } else {
        steps.extend(batter);
        steps.extend(prep);
    }
    steps.push(
        pick(rng, &["Fold in the apples.", "Stir in the apples.", "Fold the apples into the batter."]).to_string(),
    );
    if nuts {
        steps.push("Stir in the nuts.".into());
    }
    if raisins {
        steps.push("Fold in the raisins.".into());
    }
    if yeast {
        steps.push("Dissolve the yeast in warm water and let stand 10 minutes.".into());
    }
    steps.push(
        pick(
            rng,
            &[
                "Pour the batter into the prepared pan.",
                "Spread the batter evenly in the prepared pan.",
                "Pour into the pan.",
            ],
        )
        .to_string(),
    );
    if topping {
        steps.push("Sprinkle with brown sugar.".into());
    }
    steps.push(format!(
        "Bake {} minutes{}.",
        pick(rng, &["40 to 45", "45", "50 to 55", "60"]),
        pick(rng, &["", ", or until a toothpick inserted in the center comes out clean", " in the preheated oven"])
    ));
    if rng.gen_bool(0.85) {
        steps.push(
            pick(
                rng,
                &[
                    "Cool in the pan for 10 minutes, then turn out onto a wire rack.",
                    "Let cool before serving.",
                    "Cool on a wire rack.",
                ],
            )
            .to_string(),
        );
    }
    if glaze {
        steps.push("Dust with confectioners' sugar.".into());
    }
    if rng.gen_bool(0.3) {
        steps.push(pick(rng, &["Serve warm.", "Serve with whipped cream."]).to_string());
    }
    Draft { ingredients: ing, steps }
}

/// `n` synthetic apple cake recipes, reproducible from `seed`.
pub fn synthesize_corpus(n: usize, seed: u64) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let recipes = (0..n)
        .map(|i| {
            let d = recipe(&mut rng);
            RawRecipe {
                id: format!("s{:04}", i + 1),
                dish: String::new(),
                servings: [Some(8), Some(12), Some(12), Some(16), None].choose(&mut rng).copied().flatten(),
                ingredient_lines: d.ingredients,
                instruction_lines: d.steps,
            }
        })
        .collect();
    Corpus::new("apple cake", format!("synthetic corpus, seed {seed}"), recipes).expect("generated recipes are valid")
}
