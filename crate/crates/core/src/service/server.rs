use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, Method, StatusCode, Uri};
use axum::response::{IntoResponse, Response};
use axum::Router;

use super::Api;

pub const DEFAULT_ADDR: &str = "127.0.0.1:8080";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServerConfig {
    pub addr: SocketAddr,
    /// Saved dataset directory.
    pub store: PathBuf,
    /// Session log; defaults to `sessions.jsonl` inside the store directory.
    pub sessions: Option<PathBuf>,
}

impl ServerConfig {
    pub fn sessions_path(&self) -> PathBuf {
        self.sessions.clone().unwrap_or_else(|| self.store.join("sessions.jsonl"))
    }
}

async fn handle(State(api): State<Arc<Api>>, method: Method, uri: Uri, body: Bytes) -> Response {
    let path = uri.path().to_string();
    let query = uri.query().unwrap_or("").to_string();
    let res = tokio::task::spawn_blocking(move || api.dispatch(method.as_str(), &path, &query, &body)).await;
    match res {
        Ok(r) => {
            let status = StatusCode::from_u16(r.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
            (status, [(header::CONTENT_TYPE, "application/json")], r.body).into_response()
        }
        Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
    }
}

/// Every request goes through `Api::dispatch`.
pub fn router(api: Arc<Api>) -> Router {
    Router::new().fallback(handle).with_state(api)
}

pub async fn serve(api: Arc<Api>, addr: SocketAddr) -> std::io::Result<()> {
    serve_on(api, tokio::net::TcpListener::bind(addr).await?).await
}

/// Serve on an already bound listener, e.g. one bound to port 0.
pub async fn serve_on(api: Arc<Api>, listener: tokio::net::TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router(api)).await
}
