//! Closed vocabulary: every predicate a statement may use is listed here.

use std::collections::HashSet;
use std::sync::OnceLock;

macro_rules! namespace {
    ($module:ident, $prefix:literal, $base:literal, { $($name:ident = $local:literal),* $(,)? }) => {
        pub mod $module {
            pub const PREFIX: &str = $prefix;
            pub const NS: &str = $base;
            $(pub const $name: &str = concat!($base, $local);)*
        }
    };
}

namespace!(rdf, "rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#", { TYPE = "type" });
namespace!(owl, "owl", "http://www.w3.org/2002/07/owl#", { SAME_AS = "sameAs" });
namespace!(xsd, "xsd", "http://www.w3.org/2001/XMLSchema#", { INTEGER = "integer" });
namespace!(prov, "prov", "http://www.w3.org/ns/prov#", {
    ENTITY = "Entity",
    ACTIVITY = "Activity",
    AGENT = "Agent",
    WAS_DERIVED_FROM = "wasDerivedFrom",
    WAS_GENERATED_BY = "wasGeneratedBy",
    WAS_ASSOCIATED_WITH = "wasAssociatedWith",
    USED = "used",
    STARTED_AT_TIME = "startedAtTime",
    ENDED_AT_TIME = "endedAtTime",
    WAS_INFORMED_BY = "wasInformedBy",
    HAD_PLAN = "hadPlan",
});
namespace!(pplan, "pplan", "http://purl.org/net/p-plan#", {
    PLAN = "Plan",
    STEP = "Step",
    CORRESPONDS_TO_STEP = "correspondsToStep",
    IS_STEP_OF_PLAN = "isStepOfPlan",
    IS_PRECEDED_BY = "isPrecededBy",
});
namespace!(sem, "sem", "http://semanticweb.cs.vu.nl/2009/11/sem/", {
    EVENT = "Event",
    HAS_TIME = "hasTime",
    HAS_PLACE = "hasPlace",
    HAS_ACTOR = "hasActor",
});
namespace!(gaf, "gaf", "http://groundedannotationframework.org/gaf#", {
    MENTION = "Mention",
    DENOTED_BY = "denotedBy",
});
namespace!(pb, "pb", "http://www.newsreader-project.eu/ontologies/propbank/", {
    ARG0 = "Arg0",
    ARG1 = "Arg1",
    ARG2 = "Arg2",
});
namespace!(edm, "edm", "http://www.europeana.eu/schemas/edm/", {
    PROVIDED_CHO = "ProvidedCHO",
    AGGREGATED_CHO = "aggregatedCHO",
});
namespace!(ore, "ore", "http://www.openarchives.org/ore/terms/", {
    AGGREGATION = "Aggregation",
    PROXY = "Proxy",
    AGGREGATES = "aggregates",
    PROXY_FOR = "proxyFor",
    PROXY_IN = "proxyIn",
});
namespace!(bgn, "bgn", "http://biographynet.nl/schema/", {
    ORIGINAL_DESCRIPTION = "OriginalDescription",
    NLP_DESCRIPTION = "NlpDescription",
    TEXT = "Text",
    PERSON = "Person",
    LOCATION = "Location",
    ORGANIZATION = "Organization",
    THING = "Thing",
    PARTIAL_DATE = "partialDate",
    INCLUDES = "includes",
    HAS_RELATIVE = "hasRelative",
    HAS_PROFESSION = "hasProfession",
    FAMILY_ROLE = "familyRole",
    SAME_AS_CANDIDATE = "sameAsCandidate",
    PROFESSION_TAG = "professionTag",
    ENTRY_ID = "entryId",
    SOURCE = "source",
    AUTHOR = "author",
    PUBLISHER = "publisher",
    FILE_YEAR = "fileYear",
    NAME = "name",
    GENDER = "gender",
    EDUCATION = "education",
    OCCUPATION = "occupation",
    HAS_TEXT = "hasText",
    LABEL = "label",
    DOC_ID = "docId",
    BEGIN_INDEX = "beginIndex",
    END_INDEX = "endIndex",
    LEMMA = "lemma",
    POS = "pos",
    POLARITY = "polarity",
    TIME_DENOTED_BY = "timeDenotedBy",
    PART_OF = "partOf",
    STEP_NAME = "stepName",
    TOOL_VERSION = "toolVersion",
    COMMIT = "commit",
    STEP_INDEX = "stepIndex",
    STEP_ID = "stepId",
    INPUT_LAYERS = "inputLayers",
    OUTPUT_LAYERS = "outputLayers",
    EXPECTS_INPUT = "expectsInput",
    EXPECTS_OUTPUT = "expectsOutput",
    AGENT_ROLE = "agentRole",
    CONTACT = "contact",
    DOCUMENTATION = "documentation",
});

pub const PREFIXES: [(&str, &str); 10] = [
    (rdf::PREFIX, rdf::NS),
    (owl::PREFIX, owl::NS),
    (xsd::PREFIX, xsd::NS),
    (prov::PREFIX, prov::NS),
    (pplan::PREFIX, pplan::NS),
    (sem::PREFIX, sem::NS),
    (gaf::PREFIX, gaf::NS),
    (pb::PREFIX, pb::NS),
    (edm::PREFIX, edm::NS),
    (ore::PREFIX, ore::NS),
];

const BGN_PREFIX: (&str, &str) = (bgn::PREFIX, bgn::NS);

pub const PREDICATES: &[&str] = &[
    rdf::TYPE,
    owl::SAME_AS,
    prov::WAS_DERIVED_FROM,
    prov::WAS_GENERATED_BY,
    prov::WAS_ASSOCIATED_WITH,
    prov::USED,
    prov::STARTED_AT_TIME,
    prov::ENDED_AT_TIME,
    prov::WAS_INFORMED_BY,
    prov::HAD_PLAN,
    pplan::CORRESPONDS_TO_STEP,
    pplan::IS_STEP_OF_PLAN,
    pplan::IS_PRECEDED_BY,
    sem::HAS_TIME,
    sem::HAS_PLACE,
    sem::HAS_ACTOR,
    gaf::DENOTED_BY,
    pb::ARG0,
    pb::ARG1,
    pb::ARG2,
    edm::AGGREGATED_CHO,
    ore::AGGREGATES,
    ore::PROXY_FOR,
    ore::PROXY_IN,
    bgn::INCLUDES,
    bgn::HAS_RELATIVE,
    bgn::HAS_PROFESSION,
    bgn::FAMILY_ROLE,
    bgn::SAME_AS_CANDIDATE,
    bgn::PROFESSION_TAG,
    bgn::ENTRY_ID,
    bgn::SOURCE,
    bgn::AUTHOR,
    bgn::PUBLISHER,
    bgn::FILE_YEAR,
    bgn::NAME,
    bgn::GENDER,
    bgn::EDUCATION,
    bgn::OCCUPATION,
    bgn::HAS_TEXT,
    bgn::LABEL,
    bgn::DOC_ID,
    bgn::BEGIN_INDEX,
    bgn::END_INDEX,
    bgn::LEMMA,
    bgn::POS,
    bgn::POLARITY,
    bgn::TIME_DENOTED_BY,
    bgn::PART_OF,
    bgn::STEP_NAME,
    bgn::TOOL_VERSION,
    bgn::COMMIT,
    bgn::STEP_INDEX,
    bgn::STEP_ID,
    bgn::INPUT_LAYERS,
    bgn::OUTPUT_LAYERS,
    bgn::EXPECTS_INPUT,
    bgn::EXPECTS_OUTPUT,
    bgn::AGENT_ROLE,
    bgn::CONTACT,
    bgn::DOCUMENTATION,
];

fn registry() -> &'static HashSet<&'static str> {
    static REG: OnceLock<HashSet<&'static str>> = OnceLock::new();
    REG.get_or_init(|| PREDICATES.iter().copied().collect())
}

pub fn is_registered(predicate: &str) -> bool {
    registry().contains(predicate)
}

fn all_prefixes() -> impl Iterator<Item = (&'static str, &'static str)> {
    PREFIXES.into_iter().chain(std::iter::once(BGN_PREFIX))
}

/// Expand `prefix:local` to a full iri.
pub fn expand(name: &str) -> Option<String> {
    let (prefix, local) = name.split_once(':')?;
    all_prefixes().find(|(p, _)| *p == prefix).map(|(_, ns)| format!("{ns}{local}"))
}

/// Shorten a full iri to `prefix:local` where a known namespace applies.
pub fn compact(iri: &str) -> String {
    for (p, ns) in all_prefixes() {
        if let Some(local) = iri.strip_prefix(ns) {
            if !local.is_empty() && !local.contains(['/', '#']) {
                return format!("{p}:{local}");
            }
        }
    }
    iri.to_string()
}
