//! Helpers that drive the built `bgf` binary: store construction, a served
//! API on an ephemeral port, and the endpoint/CLI pairs compared for parity.

#![allow(dead_code)]

pub mod oracles;
pub mod precedence;

use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpStream;
use std::path::{Path, PathBuf};
use std::process::{Child, Command, Stdio};

use bgf::dataset::Dataset;
use percent_encoding::{utf8_percent_encode, NON_ALPHANUMERIC};

pub const BIN: &str = env!("CARGO_BIN_EXE_bgf");

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// Run the binary with the fixed clock; stdout on success, stderr as the error.
pub fn bgf(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(BIN).arg("--fixed-clock").args(args).output().map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(out.stdout)
    } else {
        Err(String::from_utf8_lossy(&out.stderr).into_owned())
    }
}

/// ingest, annotate and interpret one fixture into `dir/store`.
pub fn build_store(dir: &Path, corpus: &str) -> PathBuf {
    let raw = dir.join("raw");
    let store = dir.join("store");
    let s = |p: &Path| p.to_str().unwrap().to_string();
    bgf(&["ingest", "--in", &s(&fixture(corpus)), "--format", "xml", "--out", &s(&raw)]).unwrap();
    bgf(&["annotate", "--corpus", &s(&raw), "--config", &s(&fixture("pipeline.toml"))]).unwrap();
    bgf(&["interpret", "--corpus", &s(&raw), "--out", &s(&store), "--iri-seed", "3"]).unwrap();
    store
}

/// A `bgf serve` child process, killed on drop.
pub struct Server {
    child: Child,
    pub addr: String,
}

impl Server {
    /// Serve a store with its default session log.
    pub fn start(store: &Path) -> Server {
        let mut child = Command::new(BIN)
            .args(["--fixed-clock", "serve", "--addr", "127.0.0.1:0", "--store"])
            .arg(store)
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .expect("spawn server");
        let mut line = String::new();
        BufReader::new(child.stdout.take().unwrap()).read_line(&mut line).expect("server banner");
        let addr = line.trim().strip_prefix("listening on http://").expect("banner names the address").to_string();
        Server { child, addr }
    }

    pub fn request(&self, method: &str, target: &str, body: &str) -> (u16, Vec<u8>) {
        let mut stream = TcpStream::connect(&self.addr).expect("connect");
        write!(
            stream,
            "{method} {target} HTTP/1.1\r\nHost: {}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
            self.addr,
            body.len()
        )
        .unwrap();
        let mut raw = Vec::new();
        stream.read_to_end(&mut raw).unwrap();
        let split = raw.windows(4).position(|w| w == b"\r\n\r\n").expect("header end");
        let head = String::from_utf8_lossy(&raw[..split]).into_owned();
        let status = head.split_whitespace().nth(1).and_then(|s| s.parse().ok()).expect("status");
        (status, raw[split + 4..].to_vec())
    }

    pub fn get(&self, target: &str) -> (u16, Vec<u8>) {
        self.request("GET", target, "")
    }
}

impl Drop for Server {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

pub struct ParityCase {
    pub target: String,
    pub cli: Vec<String>,
}

fn enc(s: &str) -> String {
    utf8_percent_encode(s, NON_ALPHANUMERIC).to_string()
}

/// Every read endpoint, with the CLI invocation that must print the same bytes.
pub fn parity_cases(store: &Path) -> Vec<ParityCase> {
    let ds = Dataset::load(store).expect("saved store loads");
    let person = ds.persons.iter().max_by_key(|p| p.entry_ids.len()).expect("a person").person_id.clone();
    let entry = ds.persons.iter().find(|p| p.person_id == person).unwrap().entry_ids[0].clone();
    let description = ds.iris.nlp_description(&entry);
    let mut cases: Vec<(String, Vec<&str>)> = vec![
        (format!("/person/{person}"), vec!["person", "--person", &person]),
        (format!("/person/{person}/raw"), vec!["raw", "--person", &person]),
        (format!("/person/{person}/timeline"), vec!["timeline", "--person", &person]),
        ("/viz/participation".into(), vec!["participation"]),
        (format!("/viz/participation?person={person}&type=Marriage"), vec!["participation", "--person", &person, "--type", "Marriage"]),
        ("/viz/climax".into(), vec!["climax"]),
        ("/viz/climax?mode=event-count&type=Marriage".into(), vec!["climax", "--mode", "event-count", "--type", "Marriage"]),
        ("/viz/storyteller".into(), vec!["storyteller"]),
        (format!("/viz/storyteller?person={person}&mode=event-count"), vec!["storyteller", "--person", &person, "--mode", "event-count"]),
        ("/stats/concept?q=huwen&group_by=gender".into(), vec!["concept-stats", "--q", "huwen", "--group-by", "gender"]),
        ("/stats/concept?q=c-marry&group_by=birth-century".into(), vec!["concept-stats", "--q", "c-marry", "--group-by", "birth-century"]),
        ("/stats/adjective-ratio".into(), vec!["adjective-ratio"]),
        ("/stats/adjective-ratio?source=nnbw".into(), vec!["adjective-ratio", "--source", "nnbw"]),
        ("/stats/names".into(), vec!["names"]),
        ("/stats/names?source=vdaa".into(), vec!["names", "--source", "vdaa"]),
        ("/provenance/conformance".into(), vec!["conformance"]),
        ("/search?q=huwen".into(), vec!["search", "--q", "huwen"]),
        ("/search?q=&gender=female&page_size=2".into(), vec!["search", "--facet", "gender=female", "--page-size", "2"]),
    ];
    let iri_target = format!("/provenance?iri={}", enc(&description));
    cases.push((iri_target, vec!["provenance", "--entity", &description]));
    for kind in ["birth-date", "birth-place", "death-date", "death-place"] {
        cases.push((format!("/person/{person}/fact/{kind}"), vec!["facts", "--person", &person, "--kind", kind]));
    }
    cases
        .into_iter()
        .map(|(t, args)| {
            let mut cli = vec!["query".to_string(), "--store".to_string(), store.to_str().unwrap().to_string(), "--json".to_string()];
            cli.extend(args.into_iter().map(str::to_string));
            ParityCase { target: format!("/api/v1{t}"), cli }
        })
        .collect()
}

/// Mismatching cases, each described; empty when every endpoint agrees.
pub fn parity_mismatches(server: &Server, cases: &[ParityCase]) -> Vec<String> {
    let mut bad = Vec::new();
    for case in cases {
        let (status, body) = server.get(&case.target);
        let args: Vec<&str> = case.cli.iter().map(String::as_str).collect();
        match bgf(&args) {
            Ok(cli) if status == 200 && cli == body => {}
            Ok(cli) => bad.push(format!(
                "{}: status {status}, http {} bytes vs cli {} bytes",
                case.target,
                body.len(),
                cli.len()
            )),
            Err(e) => bad.push(format!("{}: cli failed: {e}", case.target)),
        }
    }
    bad
}

/// One stored session: created with a search, refined twice, then branched
/// from its root. Returns the session id and every step id.
pub fn create_session(server: &Server) -> (String, Vec<String>) {
    let post = |target: &str, body: &str| {
        let (status, body) = server.request("POST", target, body);
        assert_eq!(status, 200, "{target}: {}", String::from_utf8_lossy(&body));
        serde_json::from_slice::<serde_json::Value>(&body).unwrap()
    };
    let v = post("/api/v1/session", r#"{"q":"huwen"}"#);
    let id = v["session"]["session_id"].as_str().expect("session id").to_string();
    let root = v["path"][0].as_str().expect("root step").to_string();
    post(&format!("/api/v1/session/{id}/step"), r#"{"refine":{"add":{"gender":["female"]}}}"#);
    post(&format!("/api/v1/session/{id}/step"), r#"{"refine":{"q":"geboren"}}"#);
    let v = post(
        &format!("/api/v1/session/{id}/branch"),
        &format!(r#"{{"from":"{root}","operation":{{"refine":{{"add":{{"source":["nnbw"]}}}}}}}}"#),
    );
    let steps = v["session"]["steps"].as_array().unwrap().iter().map(|s| s["step_id"].as_str().unwrap().to_string()).collect();
    (id, steps)
}

/// Session reads and their CLI equivalents over the store's session log.
pub fn session_cases(store: &Path, id: &str, steps: &[String]) -> Vec<ParityCase> {
    let base = || vec!["query".to_string(), "--store".to_string(), store.to_str().unwrap().to_string(), "--json".to_string()];
    let mut cases = vec![ParityCase {
        target: format!("/api/v1/session/{id}"),
        cli: [base(), vec!["session".into(), "--id".into(), id.into()]].concat(),
    }];
    for step in steps {
        cases.push(ParityCase {
            target: format!("/api/v1/session/{id}/step/{step}"),
            cli: [base(), vec!["session".into(), "--id".into(), id.into(), "--step".into(), step.clone()]].concat(),
        });
    }
    cases
}

/// Payload of every stored path, read through the API.
pub fn replay(server: &Server, id: &str, steps: &[String]) -> Vec<Vec<u8>> {
    steps
        .iter()
        .map(|step| {
            let (status, body) = server.get(&format!("/api/v1/session/{id}/step/{step}"));
            assert_eq!(status, 200);
            body
        })
        .collect()
}
