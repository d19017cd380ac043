use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;

use procmap_core::graph::{GraphBundle, GraphError, SummaryGraph};
use procmap_core::pipeline::{run_pipeline, PipelineConfig, PipelineError};
use procmap_core::{Corpus, Lexicons};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error("{0} has no display paths; pass the display graph, not the hidden one")]
    NotADisplayGraph(PathBuf),
}

/// The loaded graph, shared read-only by all request handlers.
#[derive(Debug)]
pub struct LoadedGraph {
    pub bundle: GraphBundle,
    /// Pre-rendered `/api/graph` body.
    pub display_json: String,
}

impl LoadedGraph {
    pub fn new(bundle: GraphBundle) -> Self {
        let display_json = bundle.display.to_json();
        LoadedGraph { bundle, display_json }
    }
}

/// Server state. The server is stateless with respect to clients: which
/// paths a user has revealed is tracked by the client.
#[derive(Debug, Clone)]
pub struct AppState {
    pub graph: Option<Arc<LoadedGraph>>,
    pub lexicons: Arc<Lexicons>,
}

impl AppState {
    /// A server with nothing to serve; graph endpoints answer 503.
    pub fn empty(lexicons: Lexicons) -> Self {
        AppState { graph: None, lexicons: Arc::new(lexicons) }
    }

    pub fn with_bundle(bundle: GraphBundle, lexicons: Lexicons) -> Self {
        AppState { graph: Some(Arc::new(LoadedGraph::new(bundle))), lexicons: Arc::new(lexicons) }
    }

    /// Loads `graph.json` and its hidden graph. Without an explicit hidden
    /// path, `graph.hidden.json` next to the display graph is used when
    /// present; otherwise the display graph doubles as the hidden graph and
    /// path reveal can only return displayed paths.
    pub fn from_files(display: &Path, hidden: Option<&Path>, lexicons: Lexicons) -> Result<Self, LoadError> {
        let display_graph = SummaryGraph::load(display)?;
        if display_graph.paths.is_none() {
            return Err(LoadError::NotADisplayGraph(display.to_path_buf()));
        }
        let sibling = display.with_file_name("graph.hidden.json");
        let hidden_path = hidden.map(Path::to_path_buf).or_else(|| sibling.exists().then_some(sibling));
        let hidden_graph = match hidden_path {
            Some(p) => SummaryGraph::load(p)?,
            None => SummaryGraph { paths: None, ..display_graph.clone() },
        };
        Ok(Self::with_bundle(GraphBundle { display: display_graph, hidden: hidden_graph }, lexicons))
    }

    /// Runs the whole pipeline on a corpus and serves the result.
    pub fn from_corpus(corpus: &Corpus, lexicons: Lexicons, config: &PipelineConfig) -> Result<Self, LoadError> {
        let output = run_pipeline(corpus, &lexicons, config)?;
        Ok(Self::with_bundle(output.graph, lexicons))
    }
}
