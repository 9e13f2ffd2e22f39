use std::collections::{BTreeSet, HashMap};

use crate::corpus::PartialDate;

use super::{LadIndex, Predicate, RoleLabel};

fn arg0_surfaces(index: &LadIndex<'_>, p: &Predicate) -> BTreeSet<String> {
    p.roles
        .iter()
        .filter(|r| r.label == RoleLabel::Arg0)
        .flat_map(|r| r.term_ids.iter())
        .map(|t| index.surface(t).to_lowercase())
        .collect()
}

/// First timex value (in term order) touched by any of the predicate's roles.
pub fn predicate_time(index: &LadIndex<'_>, p: &Predicate) -> Option<PartialDate> {
    let role_terms: BTreeSet<&str> = p.roles.iter().flat_map(|r| r.term_ids.iter().map(String::as_str)).collect();
    index
        .doc
        .timexes
        .iter()
        .find(|t| t.term_ids.iter().any(|id| role_terms.contains(id.as_str())))
        .map(|t| t.value)
}

/// Whether two predicates denote the same event.
pub fn corefer(index: &LadIndex<'_>, a: &Predicate, b: &Predicate) -> bool {
    let same_frame = matches!((&a.frame_id, &b.frame_id), (Some(x), Some(y)) if x == y);
    if !same_frame {
        return false;
    }
    let (sa, sb) = (arg0_surfaces(index, a), arg0_surfaces(index, b));
    if sa.is_disjoint(&sb) {
        return false;
    }
    match (predicate_time(index, a), predicate_time(index, b)) {
        (Some(x), Some(y)) => x.is_compatible(&y),
        _ => true,
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Transitive closure of pairwise coreference; predicates that merge with
/// nothing stay singletons. Sets are ordered by their first predicate.
pub fn resolve_event_coref(index: &LadIndex<'_>) -> Vec<Vec<String>> {
    let preds = &index.doc.predicates;
    let mut parent: Vec<usize> = (0..preds.len()).collect();
    for i in 0..preds.len() {
        for j in i + 1..preds.len() {
            if corefer(index, &preds[i], &preds[j]) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut sets: Vec<Vec<String>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for i in 0..preds.len() {
        let root = find(&mut parent, i);
        let k = *slot.entry(root).or_insert_with(|| {
            sets.push(Vec::new());
            sets.len() - 1
        });
        sets[k].push(preds[i].id.clone());
    }
    sets
}
