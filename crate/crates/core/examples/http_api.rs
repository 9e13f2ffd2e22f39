// Serve the JSON API on a local port and talk to it over plain HTTP.

use std::io::{Read, Write};
use std::net::TcpStream;
use std::sync::Arc;

use bgf::clock::Clock;
use bgf::corpus::Format;
use bgf::dataset::Dataset;
use bgf::service::{router, Api, SessionStore};

const ERASMUS: &[u8] = include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/erasmus.xml"));

fn request(addr: &str, method: &str, path: &str, body: &str) -> std::io::Result<(u16, String)> {
    let mut stream = TcpStream::connect(addr)?;
    write!(
        stream,
        "{method} {path} HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )?;
    let mut raw = String::new();
    stream.read_to_string(&mut raw)?;
    let status = raw.split(' ').nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let body = raw.split_once("\r\n\r\n").map(|(_, b)| b.to_string()).unwrap_or_default();
    Ok((status, body))
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let api = Arc::new(Api::new(Dataset::reproducible(ERASMUS, Format::Xml, 5)?, SessionStore::in_memory(Clock::epoch())));
    let runtime = tokio::runtime::Runtime::new()?;
    let listener = runtime.block_on(tokio::net::TcpListener::bind("127.0.0.1:0"))?;
    let addr = listener.local_addr()?.to_string();
    runtime.spawn(async move { axum::serve(listener, router(api)).await });

    let (status, body) = request(&addr, "GET", "/api/v1/health", "")?;
    println!("GET /api/v1/health -> {status} {}", body.trim());
    assert_eq!(status, 200);

    let (status, body) = request(&addr, "POST", "/api/v1/search", r#"{"q": "Erasmus"}"#)?;
    let hits: serde_json::Value = serde_json::from_str(&body)?;
    println!("POST /api/v1/search -> {status}, first hit {}", hits["persons"][0]["person_id"]);
    assert_eq!(hits["persons"][0]["person_id"], "erasmus");

    let (status, body) = request(&addr, "GET", "/api/v1/person/erasmus/fact/birth-date", "")?;
    let view: serde_json::Value = serde_json::from_str(&body)?;
    let values: Vec<&serde_json::Value> = view["alternatives"].as_array().into_iter().flatten().map(|a| &a["value"]).collect();
    println!("GET .../fact/birth-date -> {status}, values {values:?}");

    let (status, body) = request(&addr, "GET", "/api/v1/person/nobody", "")?;
    println!("GET /api/v1/person/nobody -> {status} {}", body.trim().replace('\n', " "));
    assert_eq!(status, 404);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
