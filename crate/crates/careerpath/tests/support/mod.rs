#![allow(dead_code)]

use std::io::{Read, Write};
use std::net::TcpStream;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use careerpath::server::{router, AppState};
use careerpath_core::{load_dataset, Dataset, EngineConfig};
use http_body_util::BodyExt;
use tower::ServiceExt;

pub fn fixture() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/table1.csv")
}

pub fn table1() -> Dataset {
    load_dataset(std::fs::File::open(fixture()).unwrap()).unwrap()
}

pub fn careerpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_careerpath"))
        .args(args)
        .env_remove("CAREERPATH_DATA")
        .env_remove("CAREERPATH_PORT")
        .output()
        .expect("spawn careerpath")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

pub fn app(dataset: Dataset) -> axum::Router {
    router(AppState {
        dataset: Arc::new(dataset),
        engine: EngineConfig::default(),
    })
}

/// Issues a GET against the router in-process.
pub async fn get(app: &axum::Router, uri: &str) -> (StatusCode, serde_json::Value) {
    let response = app
        .clone()
        .oneshot(Request::get(uri).body(Body::empty()).unwrap())
        .await
        .unwrap();
    let status = response.status();
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    let json = serde_json::from_slice(&bytes).unwrap_or(serde_json::Value::Null);
    (status, json)
}

/// Minimal HTTP/1.1 GET over a real socket; returns (status, body).
pub fn raw_get(port: u16, path: &str) -> std::io::Result<(u16, String)> {
    let mut stream = TcpStream::connect(("127.0.0.1", port))?;
    write!(
        stream,
        "GET {path} HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\n\r\n"
    )?;
    let mut raw = String::new();
    stream.read_to_string(&mut raw)?;
    let status = raw
        .split_whitespace()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let body = raw
        .split_once("\r\n\r\n")
        .map(|(_, b)| b.to_string())
        .unwrap_or_default();
    Ok((status, body))
}

pub fn free_port() -> u16 {
    std::net::TcpListener::bind("127.0.0.1:0")
        .unwrap()
        .local_addr()
        .unwrap()
        .port()
}
