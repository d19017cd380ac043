//! `procmap`: build and serve summary graphs of recipe corpora.

use std::fs;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use tracing::info;

use procmap_core::clustering::{cluster_instructions, ClusterFile, SimilarityConfig};
use procmap_core::corpus::{corpus_stats, ingredient_frequencies, load_corpus, write_corpus};
use procmap_core::embeddings::{EmbeddingModel, Hyperparameters};
use procmap_core::graph::{summarize_corpus, InvertedWeight, PruneConfig};
use procmap_core::parser::{Lexicons, ParsedCorpus};
use procmap_core::pipeline::{parse_corpus, run_pipeline, train_embeddings, PipelineConfig};
use procmap_core::synth::synthesize_corpus;
use procmap_service::{AppState, DEFAULT_PORT};

#[derive(Debug, Parser)]
#[command(name = "procmap", version, about = "Summarize a corpus of recipes for one dish into a weighted graph")]
struct Cli {
    /// Directory with lexicon files overriding the bundled ones.
    #[arg(long, global = true, value_name = "DIR")]
    lexicons: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print corpus statistics as JSON.
    Stats { corpus: PathBuf },
    /// Parse ingredients and instructions.
    Parse {
        corpus: PathBuf,
        #[arg(short, long, default_value = "parsed.json")]
        output: PathBuf,
    },
    /// Train the instruction embedding model.
    Embed {
        #[arg(required = true)]
        parsed: Vec<PathBuf>,
        #[arg(short, long, default_value = "model.bin")]
        output: PathBuf,
        /// Additional parsed recipes used only as training text.
        #[arg(long, value_name = "PARSED")]
        extra_corpus: Vec<PathBuf>,
        #[command(flatten)]
        hp: EmbedArgs,
    },
    /// Cluster instructions.
    Cluster {
        parsed: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(short, long, default_value = "clusters.json")]
        output: PathBuf,
        #[command(flatten)]
        similarity: SimilarityArgs,
    },
    /// Build, prune and summarize the graph; also writes graph.hidden.json
    /// next to the output.
    Graph {
        parsed: PathBuf,
        clusters: PathBuf,
        #[arg(short, long, default_value = "graph.json")]
        output: PathBuf,
        #[command(flatten)]
        prune: PruneArgs,
    },
    /// Serve a graph over HTTP.
    Serve {
        graph: PathBuf,
        /// Hidden graph; defaults to graph.hidden.json next to the graph.
        #[arg(long)]
        hidden: Option<PathBuf>,
        #[command(flatten)]
        server: ServerArgs,
    },
    /// Run every stage from a corpus and write all artifacts to a directory.
    Run {
        corpus: PathBuf,
        #[arg(short, long, default_value = "out")]
        output: PathBuf,
        #[command(flatten)]
        hp: EmbedArgs,
        #[command(flatten)]
        similarity: SimilarityArgs,
        #[command(flatten)]
        prune: PruneArgs,
        /// Serve the result when done.
        #[arg(long)]
        serve: bool,
        #[command(flatten)]
        server: ServerArgs,
    },
    /// Write a synthetic apple cake corpus.
    Synth {
        #[arg(short, long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(short, long, default_value = "corpus.json")]
        output: PathBuf,
    },
}

#[derive(Debug, Args)]
struct EmbedArgs {
    #[arg(long, default_value_t = Hyperparameters::default().window)]
    window: usize,
    #[arg(long, default_value_t = Hyperparameters::default().epochs)]
    epochs: usize,
    #[arg(long, default_value_t = Hyperparameters::default().negative)]
    negative: usize,
    #[arg(long, default_value_t = Hyperparameters::default().min_count)]
    min_count: u32,
    #[arg(long, default_value_t = Hyperparameters::default().bigram_threshold)]
    bigram_threshold: f64,
    #[arg(long, default_value_t = Hyperparameters::default().learning_rate)]
    learning_rate: f32,
    #[arg(long, default_value_t = Hyperparameters::default().seed)]
    seed: u64,
}

impl EmbedArgs {
    fn hyperparameters(&self) -> Hyperparameters {
        Hyperparameters {
            window: self.window,
            epochs: self.epochs,
            negative: self.negative,
            min_count: self.min_count,
            bigram_threshold: self.bigram_threshold,
            learning_rate: self.learning_rate,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
struct SimilarityArgs {
    /// Ingredient-object similarity threshold.
    #[arg(long, default_value_t = SimilarityConfig::default().t1)]
    t1: f64,
    /// Weighted ingredient-set similarity threshold.
    #[arg(long, default_value_t = SimilarityConfig::default().t2)]
    t2: f64,
}

impl SimilarityArgs {
    fn config(&self) -> Result<SimilarityConfig> {
        Ok(SimilarityConfig::new(self.t1, self.t2)?)
    }
}

fn parse_inverted(s: &str) -> Result<InvertedWeight, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string()))
        .map_err(|_| format!("expected `reciprocal` or `max-minus`, got `{s}`"))
}

#[derive(Debug, Args)]
struct PruneArgs {
    /// Number of shortest paths to enumerate.
    #[arg(long = "k", default_value_t = PruneConfig::default().k_paths)]
    k_paths: usize,
    /// Number of paths to display.
    #[arg(long = "display", default_value_t = PruneConfig::default().display_paths)]
    display_paths: usize,
    /// Nodes and edges with at most this weight are pruned.
    #[arg(long, default_value_t = PruneConfig::default().min_weight)]
    min_weight: u32,
    /// Fraction of shortest recipes ignored by the path-length bound.
    #[arg(long = "trim", default_value_t = PruneConfig::default().trim_fraction)]
    trim_fraction: f64,
    /// Edge cost: `reciprocal` (1/w) or `max-minus` (max − w + 1).
    #[arg(long, default_value = "reciprocal", value_parser = parse_inverted)]
    inverted_weight: InvertedWeight,
}

impl PruneArgs {
    fn config(&self) -> Result<PruneConfig> {
        let config = PruneConfig {
            min_weight: self.min_weight,
            k_paths: self.k_paths,
            display_paths: self.display_paths,
            trim_fraction: self.trim_fraction,
            inverted_weight: self.inverted_weight,
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Debug, Args)]
struct ServerArgs {
    #[arg(long, default_value_t = DEFAULT_PORT)]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    host: IpAddr,
    /// Directory of built UI assets to serve alongside the API.
    #[arg(long = "static", value_name = "DIR")]
    static_dir: Option<PathBuf>,
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let json = serde_json::to_string_pretty(value)?;
    fs::write(path, json + "\n").with_context(|| format!("cannot write {}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("malformed {}", path.display()))
}

fn hidden_path(graph: &Path) -> PathBuf {
    graph.with_file_name("graph.hidden.json")
}

fn serve(state: AppState, args: &ServerArgs) -> Result<()> {
    let addr = SocketAddr::new(args.host, args.port);
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(procmap_service::serve(state, addr, args.static_dir.clone()))?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let lexicons = match &cli.lexicons {
        Some(dir) => Lexicons::load_dir(dir)?,
        None => Lexicons::bundled(),
    };
    match cli.command {
        Command::Stats { corpus } => {
            let stats = corpus_stats(&load_corpus(&corpus)?)?;
            println!("{}", serde_json::to_string_pretty(&stats)?);
        }
        Command::Parse { corpus, output } => {
            let parsed = parse_corpus(&load_corpus(&corpus)?, &lexicons);
            write_json(&output, &parsed)?;
            info!("parsed {} recipes into {}", parsed.recipes.len(), output.display());
        }
        Command::Embed { parsed, output, extra_corpus, hp } => {
            let mut recipes = Vec::new();
            for p in &parsed {
                recipes.extend(read_json::<ParsedCorpus>(p)?.recipes);
            }
            let mut extra = Vec::new();
            for p in &extra_corpus {
                extra.extend(read_json::<ParsedCorpus>(p)?.recipes);
            }
            let model = train_embeddings(&recipes, &extra, &hp.hyperparameters())?;
            model.save(&output)?;
            info!("trained {} token vectors into {}", model.vocabulary.len(), output.display());
        }
        Command::Cluster { parsed, model, output, similarity } => {
            let parsed: ParsedCorpus = read_json(&parsed)?;
            let model = EmbeddingModel::load(&model)?;
            let config = similarity.config()?;
            let freq = ingredient_frequencies(&parsed.recipes);
            let clusters = cluster_instructions(&parsed.recipes, &model, &freq, &config, &lexicons);
            info!(
                "{} instructions in {} clusters",
                parsed.recipes.iter().map(|r| r.instructions.len()).sum::<usize>(),
                clusters.len()
            );
            write_json(&output, &ClusterFile { config, clusters })?;
        }
        Command::Graph { parsed, clusters, output, prune } => {
            let parsed: ParsedCorpus = read_json(&parsed)?;
            let clusters: ClusterFile = read_json(&clusters)?;
            let freq = ingredient_frequencies(&parsed.recipes);
            let bundle = summarize_corpus(
                &parsed.dish,
                &parsed.recipes,
                &clusters.clusters,
                &freq,
                &prune.config()?,
                clusters.config.t1,
            )?;
            bundle.display.save(&output)?;
            bundle.hidden.save(hidden_path(&output))?;
            info!(
                "graph with {} nodes and {} display paths written to {}",
                bundle.display.nodes.len(),
                bundle.display.paths.as_ref().map_or(0, Vec::len),
                output.display()
            );
        }
        Command::Serve { graph, hidden, server } => {
            let state = AppState::from_files(&graph, hidden.as_deref(), lexicons)?;
            serve(state, &server)?;
        }
        Command::Run { corpus, output, hp, similarity, prune, serve: then_serve, server } => {
            let config = PipelineConfig {
                embeddings: hp.hyperparameters(),
                similarity: similarity.config()?,
                prune: prune.config()?,
            };
            let corpus = load_corpus(&corpus)?;
            let out = run_pipeline(&corpus, &lexicons, &config)?;
            fs::create_dir_all(&output).with_context(|| format!("cannot create {}", output.display()))?;
            write_json(&output.join("parsed.json"), &out.parsed)?;
            out.model.save(output.join("model.bin"))?;
            write_json(
                &output.join("clusters.json"),
                &ClusterFile { config: config.similarity, clusters: out.clusters },
            )?;
            let graph = output.join("graph.json");
            out.graph.display.save(&graph)?;
            out.graph.hidden.save(hidden_path(&graph))?;
            info!("artifacts written to {}", output.display());
            if then_serve {
                serve(AppState::with_bundle(out.graph, lexicons), &server)?;
            }
        }
        Command::Synth { n, seed, output } => {
            if n == 0 {
                bail!("--n must be at least 1");
            }
            write_corpus(&synthesize_corpus(n, seed), &output)?;
            info!("wrote {n} synthetic recipes to {}", output.display());
        }
    }
    Ok(())
}

fn main() -> std::process::ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()))
        .with_writer(std::io::stderr)
        .init();
    match run(Cli::parse()) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::ExitCode::FAILURE
        }
    }
}
