mod common;

use common::{build_store, create_session, parity_cases, parity_mismatches, replay, session_cases, Server};

#[test]
fn read_endpoints_match_cli_json() {
    let dir = tempfile::tempdir().unwrap();
    let store = build_store(dir.path(), "corpus.xml");
    let server = Server::start(&store);
    let cases = parity_cases(&store);
    assert!(cases.len() >= 20);
    let bad = parity_mismatches(&server, &cases);
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn session_reads_match_cli_and_replay_identically() {
    let dir = tempfile::tempdir().unwrap();
    let store = build_store(dir.path(), "corpus.xml");
    let server = Server::start(&store);
    let (id, steps) = create_session(&server);
    assert_eq!(steps.len(), 4);

    let bad = parity_mismatches(&server, &session_cases(&store, &id, &steps));
    assert!(bad.is_empty(), "{bad:#?}");

    let first = replay(&server, &id, &steps);
    assert_eq!(replay(&server, &id, &steps), first);
    drop(server);

    let restarted = Server::start(&store);
    assert_eq!(replay(&restarted, &id, &steps), first, "replay from the log differs");
}

#[test]
fn errors_use_the_envelope() {
    let dir = tempfile::tempdir().unwrap();
    let store = build_store(dir.path(), "fig3.xml");
    let server = Server::start(&store);
    for (target, status) in [
        ("/api/v1/person/nobody", 404),
        ("/api/v1/viz/climax?mode=loudest", 400),
        ("/api/v1/nowhere", 404),
        ("/elsewhere", 404),
    ] {
        let (got, body) = server.get(target);
        assert_eq!(got, status, "{target}");
        let v: serde_json::Value = serde_json::from_slice(&body).unwrap();
        assert!(v["code"].is_string() && v["message"].is_string(), "{target}: {v}");
    }
    let (got, _) = server.request("DELETE", "/api/v1/health", "");
    assert_eq!(got, 405);
}
