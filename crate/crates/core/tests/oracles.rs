//! Analytics and pattern matching against brute-force recomputation over
//! every fixture, whole and split into per-person and per-entry stores.

mod common;
use common::oracles;

#[test]
fn timeline_matches_brute_force() {
    oracles::timeline_matches_brute_force();
}

#[test]
fn concept_stats_match_brute_force() {
    oracles::concept_stats_match_brute_force();
}

#[test]
fn adjective_ratio_matches_brute_force() {
    oracles::adjective_ratio_matches_brute_force();
}

#[test]
fn participation_and_climax_match_brute_force() {
    oracles::participation_and_climax_match_brute_force();
}

#[test]
fn fact_alternatives_match_brute_force() {
    oracles::fact_alternatives_match_brute_force();
}

#[test]
fn pattern_matching_matches_brute_force() {
    oracles::pattern_matching_matches_brute_force();
}
