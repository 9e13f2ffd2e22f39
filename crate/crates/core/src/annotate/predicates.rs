use std::collections::{BTreeMap, HashMap, HashSet};

use super::{EntityClass, LadIndex, Lexicons, Pos, Predicate, Role, RoleLabel};

struct Group {
    anchor: usize,
    terms: Vec<usize>,
}

/// Shallow semantic role assignment over linear sentence order.
///
/// Every VERB with a concept becomes a predicate (framed when the concept
/// has a frame entry). Arg0 is the nearest preceding noun, pronoun or person
/// span; Arg1 the nearest following noun or person span before the next verb.
/// Prepositional groups (and free-standing date expressions) holding a timex
/// become `time` roles, those holding a LOC entity `location` roles; each
/// group attaches to the nearest preceding predicate in its sentence, or the
/// nearest following one when none precedes.
pub fn tag_predicates(index: &LadIndex<'_>, lex: &Lexicons) -> Vec<Predicate> {
    let doc = index.doc;
    let terms = &doc.terms;
    let mut entity_of: HashMap<usize, usize> = HashMap::new();
    for (e, ent) in doc.entities.iter().enumerate() {
        for t in &ent.term_ids {
            if let Some(p) = index.term_position(t) {
                entity_of.insert(p, e);
            }
        }
    }
    let mut timex_of: HashMap<usize, usize> = HashMap::new();
    for (x, tmx) in doc.timexes.iter().enumerate() {
        for t in &tmx.term_ids {
            if let Some(p) = index.term_position(t) {
                timex_of.insert(p, x);
            }
        }
    }
    let concept_of: HashMap<&str, &str> =
        doc.concepts.iter().map(|c| (c.term_id.as_str(), c.concept_id.as_str())).collect();

    let mut sentences: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, t) in terms.iter().enumerate() {
        sentences.entry(index.sentence_of(&t.id).unwrap_or(0)).or_default().push(i);
    }

    let mut out = Vec::new();
    for positions in sentences.values() {
        let is_opener = |i: usize| terms[i].has_flag("prep") && !entity_of.contains_key(&i);
        let mut groups: Vec<Group> = Vec::new();
        for (k, &j) in positions.iter().enumerate() {
            if !is_opener(j) {
                continue;
            }
            let members: Vec<usize> = positions[k + 1..]
                .iter()
                .copied()
                .take_while(|&m| !is_opener(m) && terms[m].pos != Pos::Verb && terms[m].pos != Pos::Punct)
                .collect();
            if !members.is_empty() {
                groups.push(Group { anchor: j, terms: members });
            }
        }
        let grouped: HashSet<usize> = groups.iter().flat_map(|g| g.terms.iter().copied()).collect();
        let in_sentence: HashSet<usize> = positions.iter().copied().collect();
        for tmx in &doc.timexes {
            let members: Vec<usize> = tmx.term_ids.iter().filter_map(|t| index.term_position(t)).collect();
            if !members.is_empty()
                && members.iter().all(|m| in_sentence.contains(m))
                && !members.iter().any(|m| grouped.contains(m))
            {
                groups.push(Group { anchor: members[0], terms: members });
            }
        }
        groups.sort_by_key(|g| g.anchor);
        let grouped: HashSet<usize> = groups.iter().flat_map(|g| g.terms.iter().copied()).collect();

        // Candidate argument spans: person entities, nouns and non-possessive pronouns.
        let mut units: Vec<Vec<usize>> = Vec::new();
        let mut seen_entities = HashSet::new();
        for &i in positions {
            if grouped.contains(&i) || timex_of.contains_key(&i) {
                continue;
            }
            if let Some(&e) = entity_of.get(&i) {
                if doc.entities[e].class == EntityClass::PER && seen_entities.insert(e) {
                    let span: Vec<usize> =
                        doc.entities[e].term_ids.iter().filter_map(|t| index.term_position(t)).collect();
                    if !span.iter().any(|m| grouped.contains(m)) {
                        units.push(span);
                    }
                }
                continue;
            }
            let t = &terms[i];
            if t.pos == Pos::Noun || (t.pos == Pos::Pron && !t.has_flag("possessive")) {
                units.push(vec![i]);
            }
        }

        let preds: Vec<usize> = positions
            .iter()
            .copied()
            .filter(|&i| terms[i].pos == Pos::Verb && concept_of.contains_key(terms[i].id.as_str()))
            .collect();
        let mut group_roles: HashMap<usize, Vec<Role>> = HashMap::new();
        for g in &groups {
            let label = if g.terms.iter().any(|m| timex_of.contains_key(m)) {
                RoleLabel::Time
            } else if g.terms.iter().any(|m| entity_of.get(m).is_some_and(|&e| doc.entities[e].class == EntityClass::LOC)) {
                RoleLabel::Location
            } else {
                continue;
            };
            let owner = preds.iter().rev().find(|&&p| p < g.anchor).or_else(|| preds.iter().find(|&&p| p > g.anchor));
            if let Some(&p) = owner {
                group_roles.entry(p).or_default().push(Role {
                    label,
                    term_ids: g.terms.iter().map(|&m| terms[m].id.clone()).collect(),
                });
            }
        }

        for &p in &preds {
            let term = &terms[p];
            let concept_id = concept_of.get(term.id.as_str()).map(|c| c.to_string());
            let frame_id = concept_id.as_deref().and_then(|c| lex.frames.get(c)).map(|f| f.frame_id.clone());
            let mut roles = Vec::new();
            let to_ids = |span: &[usize]| span.iter().map(|&m| terms[m].id.clone()).collect::<Vec<_>>();
            if let Some(u) = units.iter().filter(|u| *u.last().unwrap() < p).max_by_key(|u| *u.last().unwrap()) {
                roles.push(Role { label: RoleLabel::Arg0, term_ids: to_ids(u) });
            }
            let next_verb = positions.iter().copied().find(|&m| m > p && terms[m].pos == Pos::Verb);
            if let Some(u) = units
                .iter()
                .filter(|u| u[0] > p && next_verb.is_none_or(|v| u[0] < v))
                .min_by_key(|u| u[0])
            {
                roles.push(Role { label: RoleLabel::Arg1, term_ids: to_ids(u) });
            }
            roles.extend(group_roles.remove(&p).unwrap_or_default());
            out.push(Predicate {
                id: format!("pr{}", out.len() + 1),
                term_id: term.id.clone(),
                frame_id,
                concept_id,
                roles,
            });
        }
    }
    out
}
