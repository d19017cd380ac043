use std::sync::Arc;

use axum::extract::rejection::{PathRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::header;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::{Deserialize, Serialize};

use procmap_core::graph::{
    paths_with_ingredient, rare_ingredients, MemberInstruction, Node, NodeId, RareIngredient, Reveal,
};

use crate::error::ApiError;
use crate::state::{AppState, LoadedGraph};

fn loaded(state: &AppState) -> Result<&Arc<LoadedGraph>, ApiError> {
    state.graph.as_ref().ok_or(ApiError::NotLoaded)
}

fn node_id(path: Result<Path<NodeId>, PathRejection>) -> Result<NodeId, ApiError> {
    path.map(|Path(id)| id).map_err(|e| ApiError::BadRequest(e.body_text()))
}

fn query<T>(q: Result<Query<T>, QueryRejection>) -> Result<T, ApiError> {
    q.map(|Query(v)| v).map_err(|e| ApiError::BadRequest(e.body_text()))
}

pub async fn graph(State(state): State<AppState>) -> Result<Response, ApiError> {
    let g = loaded(&state)?;
    Ok(([(header::CONTENT_TYPE, "application/json")], g.display_json.clone()).into_response())
}

/// A node of the hidden graph with its full summary.
#[derive(Debug, Serialize, Deserialize)]
pub struct NodeDetail {
    #[serde(flatten)]
    pub node: Node,
    /// Whether the node is part of the display graph.
    pub displayed: bool,
}

pub async fn node(
    State(state): State<AppState>,
    path: Result<Path<NodeId>, PathRejection>,
) -> Result<Json<NodeDetail>, ApiError> {
    let g = loaded(&state)?;
    let id = node_id(path)?;
    let node = g.bundle.node(id).ok_or(ApiError::NodeNotFound(id))?;
    Ok(Json(NodeDetail { node: node.clone(), displayed: g.bundle.display.node(id).is_some() }))
}

#[derive(Debug, Deserialize)]
pub struct InstructionsQuery {
    pub limit: Option<usize>,
}

/// Member instructions ordered by (recipe id, position).
pub async fn node_instructions(
    State(state): State<AppState>,
    path: Result<Path<NodeId>, PathRejection>,
    q: Result<Query<InstructionsQuery>, QueryRejection>,
) -> Result<Json<Vec<MemberInstruction>>, ApiError> {
    let g = loaded(&state)?;
    let id = node_id(path)?;
    let limit = query(q)?.limit.unwrap_or(usize::MAX);
    let node = g.bundle.node(id).ok_or(ApiError::NodeNotFound(id))?;
    Ok(Json(node.summary.instructions.iter().take(limit).cloned().collect()))
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IngredientOrder {
    #[default]
    Rarity,
    Frequency,
}

#[derive(Debug, Deserialize)]
pub struct IngredientsQuery {
    #[serde(default)]
    pub order: IngredientOrder,
    pub limit: Option<usize>,
}

/// Corpus ingredients with their recipe counts: rarest first by default,
/// or most frequent first with `order=frequency`. Ties are alphabetical.
pub async fn ingredients(
    State(state): State<AppState>,
    q: Result<Query<IngredientsQuery>, QueryRejection>,
) -> Result<Json<Vec<RareIngredient>>, ApiError> {
    let g = loaded(&state)?;
    let q = query(q)?;
    let limit = q.limit.unwrap_or(usize::MAX);
    let table = g.bundle.display.rare_ingredients.iter().map(|r| (r.name.clone(), r.count)).collect();
    let list = match q.order {
        IngredientOrder::Rarity => rare_ingredients(&table, limit),
        IngredientOrder::Frequency => {
            let mut all = rare_ingredients(&table, usize::MAX);
            all.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.name.cmp(&b.name)));
            all.truncate(limit);
            all
        }
    };
    Ok(Json(list))
}

#[derive(Debug, Deserialize)]
pub struct PathsQuery {
    pub ingredient: String,
}

pub async fn paths(
    State(state): State<AppState>,
    q: Result<Query<PathsQuery>, QueryRejection>,
) -> Result<Json<Reveal>, ApiError> {
    let g = loaded(&state)?;
    let q = query(q)?;
    if q.ingredient.trim().is_empty() {
        return Err(ApiError::BadRequest("ingredient must not be empty".into()));
    }
    Ok(Json(paths_with_ingredient(&g.bundle, &q.ingredient, &state.lexicons)?))
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Health {
    pub status: String,
    pub dish: Option<String>,
    pub nodes: usize,
    pub edges: usize,
    pub paths: usize,
    pub hidden_nodes: usize,
    pub hidden_edges: usize,
}

pub async fn health(State(state): State<AppState>) -> Json<Health> {
    Json(match &state.graph {
        None => Health {
            status: "no_graph".into(),
            dish: None,
            nodes: 0,
            edges: 0,
            paths: 0,
            hidden_nodes: 0,
            hidden_edges: 0,
        },
        Some(g) => {
            let (d, h) = (&g.bundle.display, &g.bundle.hidden);
            Health {
                status: "ok".into(),
                dish: Some(d.dish.clone()),
                nodes: d.nodes.len(),
                edges: d.edges.len(),
                paths: d.paths.as_ref().map_or(0, Vec::len),
                hidden_nodes: h.nodes.len(),
                hidden_edges: h.edges.len(),
            }
        }
    })
}
