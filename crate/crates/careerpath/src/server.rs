//! HTTP JSON API over a dataset loaded once at startup.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::Context;
use axum::extract::rejection::QueryRejection;
use axum::extract::{Query as QueryParams, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use careerpath_core::{suggest, Dataset, EngineConfig, EngineError, Query};
use tower_http::cors::CorsLayer;
use tower_http::trace::TraceLayer;

use crate::response::{ErrorBody, HealthResponse, SuggestResponse};

pub const DEFAULT_PORT: u16 = 8080;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub data_path: PathBuf,
    pub port: u16,
    pub engine: EngineConfig,
    /// Tracing filter the process was started with.
    pub log_level: String,
}

#[derive(Debug, Clone)]
pub struct AppState {
    pub dataset: Arc<Dataset>,
    pub engine: EngineConfig,
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
}

impl ApiError {
    fn bad_request(code: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            code,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::INTERNAL_SERVER_ERROR,
            code: "internal",
            message: message.into(),
        }
    }
}

impl From<EngineError> for ApiError {
    fn from(err: EngineError) -> Self {
        match err {
            EngineError::EmptyGoal => ApiError::bad_request("empty_goal", err.to_string()),
            EngineError::InvalidEducation(_) => {
                ApiError::bad_request("invalid_education", err.to_string())
            }
            EngineError::ZeroLimit => ApiError::bad_request("invalid_limit", err.to_string()),
            EngineError::ThresholdOutOfRange { .. } | EngineError::EmptyPath => {
                ApiError::internal(err.to_string())
            }
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = ErrorBody {
            error: self.code.to_string(),
            message: self.message,
        };
        (self.status, Json(body)).into_response()
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/v1/health", get(health))
        .route("/api/v1/suggest", get(suggest_handler))
        .fallback(not_found)
        .layer(CorsLayer::permissive())
        .layer(TraceLayer::new_for_http())
        .with_state(state)
}

async fn health(State(state): State<AppState>) -> Json<HealthResponse> {
    Json(HealthResponse {
        status: "ok".to_string(),
        records: state.dataset.len(),
    })
}

async fn not_found() -> ApiError {
    ApiError {
        status: StatusCode::NOT_FOUND,
        code: "not_found",
        message: "no such endpoint".to_string(),
    }
}

async fn suggest_handler(
    State(state): State<AppState>,
    params: Result<QueryParams<HashMap<String, String>>, QueryRejection>,
) -> Result<Json<SuggestResponse>, ApiError> {
    let QueryParams(params) =
        params.map_err(|e| ApiError::bad_request("invalid_query", e.body_text()))?;

    let goal = params.get("goal").ok_or_else(|| {
        ApiError::bad_request("missing_goal", "query parameter `goal` is required")
    })?;
    let education = params.get("education").ok_or_else(|| {
        ApiError::bad_request(
            "missing_education",
            "query parameter `education` is required: high_school or bachelors",
        )
    })?;
    let limit = match params.get("limit") {
        None => state.engine.limit,
        Some(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n > 0 => Some(n),
            _ => {
                return Err(ApiError::bad_request(
                    "invalid_limit",
                    format!("limit must be a positive integer, got {raw:?}"),
                ))
            }
        },
    };

    let query = Query::parse(goal.as_str(), education)?;
    let config = EngineConfig {
        limit,
        ..state.engine
    };
    let list = suggest(&query, &state.dataset, &config)?;
    Ok(Json(SuggestResponse::new(&query, &list)))
}

pub async fn serve(config: ServiceConfig, dataset: Dataset) -> anyhow::Result<()> {
    config.engine.validate()?;
    let addr = SocketAddr::from(([0, 0, 0, 0], config.port));
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .with_context(|| format!("cannot listen on {addr}"))?;
    tracing::info!(
        records = dataset.len(),
        data = %config.data_path.display(),
        log_level = %config.log_level,
        "listening on http://{}",
        listener.local_addr()?
    );
    let state = AppState {
        dataset: Arc::new(dataset),
        engine: config.engine,
    };
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
        .context("server error")
}
