mod support;

use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use axum::http::StatusCode;
use careerpath_core::Dataset;
use support::{app, get, table1};

#[tokio::test]
async fn health_reports_record_count() {
    let app = app(table1());
    let (status, body) = get(&app, "/api/v1/health").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, serde_json::json!({"status": "ok", "records": 9}));
}

#[tokio::test]
async fn suggest_returns_table_paths() {
    let app = app(table1());
    let (status, body) = get(
        &app,
        "/api/v1/suggest?goal=Software%20Engineer&education=bachelors",
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    let paths: Vec<&str> = body["suggestions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["path"].as_str().unwrap())
        .collect();
    assert_eq!(
        paths,
        ["Masters, Computer Science", "Masters, Software Engineering"]
    );
    assert_eq!(body["query"]["goal"], "Software Engineer");
    assert_eq!(body["suggestions"][0]["score"], 100.0);
    assert_eq!(body["suggestions"][0]["source_record"], "1");
    assert_eq!(
        body["suggestions"][0]["segments"][0]["university"],
        "Stanford University"
    );
}

#[tokio::test]
async fn limit_parameter() {
    let app = app(table1());
    let (status, body) = get(
        &app,
        "/api/v1/suggest?goal=Data+Scientist&education=bachelors&limit=1",
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["suggestions"].as_array().unwrap().len(), 1);
}

#[tokio::test]
async fn validation_errors_have_codes() {
    let app = app(table1());
    let cases = [
        ("/api/v1/suggest?education=bachelors", "missing_goal"),
        (
            "/api/v1/suggest?goal=%20%20&education=bachelors",
            "empty_goal",
        ),
        ("/api/v1/suggest?goal=Chef", "missing_education"),
        (
            "/api/v1/suggest?goal=Chef&education=masters",
            "invalid_education",
        ),
        (
            "/api/v1/suggest?goal=Chef&education=bachelors&limit=0",
            "invalid_limit",
        ),
        (
            "/api/v1/suggest?goal=Chef&education=bachelors&limit=x",
            "invalid_limit",
        ),
    ];
    for (uri, code) in cases {
        let (status, body) = get(&app, uri).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{uri}");
        assert_eq!(body["error"], code, "{uri}");
        assert!(body["message"].as_str().is_some_and(|m| !m.is_empty()));
    }
    let (_, body) = get(&app, "/api/v1/suggest?goal=Chef&education=masters").await;
    let message = body["message"].as_str().unwrap();
    assert!(message.contains("high_school") && message.contains("bachelors"));
}

#[tokio::test]
async fn unknown_route_is_json_404() {
    let app = app(Dataset::default());
    let (status, body) = get(&app, "/api/v2/nothing").await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(body["error"], "not_found");
}

#[tokio::test]
async fn repeated_requests_are_identical() {
    let app = app(table1());
    let uri = "/api/v1/suggest?goal=English%20Professor&education=high_school";
    let (_, first) = get(&app, uri).await;
    for _ in 0..5 {
        assert_eq!(get(&app, uri).await.1, first);
    }
}

#[tokio::test]
async fn empty_dataset_yields_empty_list() {
    let app = app(Dataset::default());
    let (status, body) = get(&app, "/api/v1/suggest?goal=Chef&education=high_school").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["suggestions"], serde_json::json!([]));
}

#[test]
fn serve_over_real_socket() {
    let port = support::free_port();
    let mut child = Command::new(env!("CARGO_BIN_EXE_careerpath"))
        .args(["serve", "--data", support::fixture().to_str().unwrap()])
        .env("CAREERPATH_PORT", port.to_string())
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();

    let deadline = Instant::now() + Duration::from_secs(10);
    let health = loop {
        match support::raw_get(port, "/api/v1/health") {
            Ok(reply) => break reply,
            Err(_) if Instant::now() < deadline => std::thread::sleep(Duration::from_millis(50)),
            Err(err) => {
                let _ = child.kill();
                panic!("service did not come up: {err}");
            }
        }
    };
    let suggest = support::raw_get(
        port,
        "/api/v1/suggest?goal=Fashion%20Designer&education=high_school",
    );
    let _ = child.kill();
    let _ = child.wait();

    assert_eq!(health.0, 200);
    assert!(health.1.contains("\"records\":9"), "{}", health.1);
    let (status, body) = suggest.unwrap();
    assert_eq!(status, 200);
    assert!(body.contains("Bachelors, Fashion Designing"));
}
