//! Read-only HTTP JSON API over a built summary graph.
//!
//! | Endpoint | Result |
//! |---|---|
//! | `GET /api/graph` | the display graph (`graph.json`) |
//! | `GET /api/nodes/{id}` | full summary of any node, displayed or hidden |
//! | `GET /api/nodes/{id}/instructions?limit=n` | member instructions by (recipe id, position) |
//! | `GET /api/ingredients?order=rarity\|frequency&limit=n` | ingredients with recipe counts |
//! | `GET /api/paths?ingredient=name` | paths through nodes using the ingredient |
//! | `GET /api/health` | load status and graph sizes |
//!
//! Errors are JSON objects `{"error": code, "message": text}`; graph
//! endpoints answer 503 while no graph is loaded.

pub mod api;
pub mod error;
pub mod state;

use std::net::SocketAddr;
use std::path::PathBuf;

use axum::http::Method;
use axum::routing::get;
use axum::Router;
use tower_http::cors::{Any, CorsLayer};
use tower_http::services::ServeDir;

pub use error::{ApiError, ErrorBody};
pub use state::{AppState, LoadError, LoadedGraph};

pub const DEFAULT_PORT: u16 = 8750;

/// The API router, optionally serving static UI assets for all other paths.
pub fn router(state: AppState, static_dir: Option<PathBuf>) -> Router {
    let cors = CorsLayer::new().allow_origin(Any).allow_methods([Method::GET]).allow_headers(Any);
    let api = Router::new()
        .route("/api/graph", get(api::graph))
        .route("/api/nodes/{id}", get(api::node))
        .route("/api/nodes/{id}/instructions", get(api::node_instructions))
        .route("/api/ingredients", get(api::ingredients))
        .route("/api/paths", get(api::paths))
        .route("/api/health", get(api::health))
        .with_state(state);
    let app = match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    };
    app.layer(cors)
}

/// Serves the router until the process is stopped.
pub async fn serve(state: AppState, addr: SocketAddr, static_dir: Option<PathBuf>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state, static_dir)).await
}
