//! Command-line front end over the library.
//!
//! Every stage reads and writes plain files: `ingest` and `interpret` produce
//! a store directory (see [`crate::dataset`]), `annotate` writes one JSON
//! layered document per entry. `query ... --json` prints exactly the payload
//! the HTTP API serves for the same store.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::analytics::{ClimaxMode, FactValue};
use crate::annotate::{LayeredDocument, Pipeline, PipelineConfig};
use crate::clock::Clock;
use crate::corpus::{aggregate_persons, corpus_stats, declared_links, parse_entries, Format};
use crate::dataset::{Dataset, LAD_DIR};
use crate::evaluate::{
    compare_conclusions, hypothesis_sample, intrinsic_eval_both, score_documents, AdjectiveScorer, GoldAnnotation,
    SampleTriple,
};
use crate::graph::{match_pattern, parse_pattern_query, serialize, SerialFormat};
use crate::interpret::InterpretOptions;
use crate::service::{render_json, serve_on, Api, ApiError, SearchRequest, ServerConfig, SessionStore, DEFAULT_ADDR};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Corpus(#[from] crate::corpus::CorpusError),
    #[error(transparent)]
    Pipeline(#[from] crate::annotate::PipelineError),
    #[error(transparent)]
    Dataset(#[from] crate::dataset::DatasetError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
    #[error(transparent)]
    Eval(#[from] crate::evaluate::EvalError),
    #[error(transparent)]
    Api(#[from] ApiError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(io_err(path))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_slice(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

#[derive(Debug, Parser)]
#[command(name = "bgf", version, about = "Biographical knowledge graphs with grounded provenance")]
pub struct Cli {
    /// Use a fixed clock starting at 2000-01-01T00:00:00Z (reproducible output).
    #[arg(long, global = true, env = "BGF_FIXED_CLOCK")]
    pub fixed_clock: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a corpus file into a store directory.
    Ingest {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "xml")]
        format: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the annotation pipeline over every entry of a store.
    Annotate {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Defaults to the store's own `lad` directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Turn layered documents into graph statements.
    Interpret {
        /// Defaults to the corpus store's `lad` directory.
        #[arg(long)]
        lad: Option<PathBuf>,
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        iri_seed: Option<u64>,
    },
    #[command(subcommand)]
    Graph(GraphCommand),
    Query {
        #[arg(long, env = "BGF_STORE")]
        store: PathBuf,
        /// Session log; defaults to `sessions.jsonl` inside the store.
        #[arg(long, env = "BGF_SESSIONS")]
        sessions: Option<PathBuf>,
        /// Print the API payload instead of a text summary.
        #[arg(long, global = true)]
        json: bool,
        #[command(subcommand)]
        query: QueryCommand,
    },
    #[command(subcommand)]
    Eval(EvalCommand),
    /// Serve the HTTP API.
    Serve {
        #[arg(long, env = "BGF_ADDR", default_value = DEFAULT_ADDR)]
        addr: String,
        #[arg(long, env = "BGF_STORE")]
        store: PathBuf,
        /// Session log; defaults to `sessions.jsonl` inside the store.
        #[arg(long, env = "BGF_SESSIONS")]
        sessions: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GraphCommand {
    Export {
        #[arg(long, env = "BGF_STORE")]
        store: PathBuf,
        /// quads-lines, triples-lines or json.
        #[arg(long, default_value = "quads-lines")]
        format: String,
        /// Standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Query {
        #[arg(long, env = "BGF_STORE")]
        store: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct PersonArg {
    /// Person id or iri.
    #[arg(long)]
    pub person: String,
}

#[derive(Debug, Subcommand)]
pub enum QueryCommand {
    Timeline(PersonArg),
    ConceptStats {
        #[arg(long)]
        q: String,
        #[arg(long, default_value = "source")]
        group_by: String,
    },
    AdjectiveRatio {
        #[arg(long)]
        source: Option<String>,
    },
    Names {
        #[arg(long)]
        source: Option<String>,
    },
    /// Descriptions with broken provenance and statements without grounding.
    Conformance,
    Participation {
        #[arg(long = "person")]
        persons: Vec<String>,
        #[arg(long = "type")]
        types: Vec<String>,
    },
    Climax {
        #[arg(long, default_value = "distinct-participants")]
        mode: String,
        #[arg(long = "type")]
        types: Vec<String>,
    },
    Storyteller {
        #[arg(long = "person")]
        persons: Vec<String>,
        #[arg(long = "type")]
        types: Vec<String>,
        #[arg(long, default_value = "distinct-participants")]
        mode: String,
    },
    Facts {
        #[arg(long)]
        person: String,
        /// birth-date, birth-place, death-date or death-place.
        #[arg(long)]
        kind: String,
    },
    Person(PersonArg),
    /// Entries and graph quads of one person.
    Raw(PersonArg),
    Provenance {
        #[arg(long)]
        entity: String,
    },
    Search {
        #[arg(long, default_value = "")]
        q: String,
        /// `field=value`, repeatable.
        #[arg(long = "facet")]
        facets: Vec<String>,
        #[arg(long, default_value_t = 1)]
        page: usize,
        #[arg(long, default_value_t = crate::service::DEFAULT_PAGE_SIZE)]
        page_size: usize,
    },
    /// A stored search session, at its pointer or at one step.
    Session {
        #[arg(long)]
        id: String,
        #[arg(long)]
        step: Option<String>,
    },
    CorpusStats {
        /// source, gender, birth-century or death-century; repeatable.
        #[arg(long = "facet", required = true)]
        facets: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum EvalCommand {
    /// Score system layers against a gold file.
    Intrinsic {
        /// A layered document JSON file.
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Draw confirm / oppose / neutral samples for two sources.
    Sample {
        #[arg(long, env = "BGF_STORE")]
        store: PathBuf,
        #[arg(long)]
        source_a: String,
        #[arg(long)]
        source_b: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare human and system subjectivity judgements on drawn samples.
    Compare {
        #[arg(long)]
        samples: PathBuf,
        /// JSON object mapping doc id to true (subjective) or false.
        #[arg(long)]
        human: PathBuf,
        /// Same shape as `--human`; derived from `--threshold` when absent.
        #[arg(long)]
        system: Option<PathBuf>,
        #[arg(long, default_value_t = 0.1)]
        threshold: f64,
        #[arg(long)]
        json: bool,
    },
}

/// Parse `args` (including the program name) and run, writing to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    execute(cli, out)
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let clock = if cli.fixed_clock { Clock::epoch() } else { Clock::System };
    let mut text = String::new();
    match cli.command {
        Command::Ingest { input, format, out: dir } => {
            let format = match format.as_str() {
                "xml" => Format::Xml,
                "json" => Format::Json,
                f => return Err(CliError::Usage(format!("unknown corpus format {f:?}; expected xml or json"))),
            };
            let entries = parse_entries(&read(&input)?, format)?;
            aggregate_persons(&entries, &declared_links(&entries))?;
            let ds = Dataset::from_entries(entries, Default::default())?;
            ds.save(&dir)?;
            writeln!(text, "ingested {} entries for {} persons into {}", ds.entries.len(), ds.persons.len(), dir.display())
                .ok();
        }
        Command::Annotate { corpus, config, out: lad_out } => {
            let config = match config {
                Some(path) => PipelineConfig::load(&path)?,
                None => PipelineConfig::default(),
            };
            let pipeline = Pipeline::new(config)?;
            let mut ds = Dataset::load(&corpus)?;
            ds.annotate(&pipeline, &clock)?;
            let dir = lad_out.unwrap_or_else(|| corpus.join(LAD_DIR));
            write_lads(&dir, &ds)?;
            writeln!(text, "annotated {} entries into {}", ds.lads.len(), dir.display()).ok();
        }
        Command::Interpret { lad, corpus, out: dir, iri_seed } => {
            let mut ds = Dataset::load(&corpus)?;
            if let Some(lad_dir) = lad {
                ds.lads = read_lads(&lad_dir)?;
            }
            let mut options = InterpretOptions::with_iris(ds.iris.clone());
            options.iri_seed = iri_seed;
            ds.interpret(&options, &clock)?;
            ds.save(&dir)?;
            writeln!(text, "interpreted {} entries; {} statements in {}", ds.lads.len(), ds.store.len(), dir.display())
                .ok();
        }
        Command::Graph(GraphCommand::Export { store, format, out: file }) => {
            let ds = Dataset::load(&store)?;
            let rendered = serialize(&ds.store, format.parse::<SerialFormat>()?);
            match file {
                Some(path) => std::fs::write(&path, rendered).map_err(io_err(&path))?,
                None => text.push_str(&String::from_utf8_lossy(&rendered)),
            }
        }
        Command::Graph(GraphCommand::Query { store, pattern, json }) => {
            let ds = Dataset::load(&store)?;
            let src = String::from_utf8_lossy(&read(&pattern)?).into_owned();
            let query = parse_pattern_query(&src)?;
            let bindings = match_pattern(&ds.store, &query.patterns, query.graph.as_deref());
            if json {
                let rows: Vec<BTreeMap<&str, String>> = bindings
                    .rows
                    .iter()
                    .map(|row| bindings.vars.iter().map(String::as_str).zip(row.iter().map(|t| t.lexical())).collect())
                    .collect();
                text = render_json(&rows);
            } else {
                writeln!(text, "{}", bindings.vars.iter().map(|v| format!("?{v}")).collect::<Vec<_>>().join("\t")).ok();
                for row in &bindings.rows {
                    writeln!(text, "{}", row.iter().map(|t| t.lexical()).collect::<Vec<_>>().join("\t")).ok();
                }
            }
        }
        Command::Query { store, sessions, json, query } => {
            let log = sessions.unwrap_or_else(|| store.join("sessions.jsonl"));
            let sessions = if log.exists() { SessionStore::open(&log, clock)? } else { SessionStore::in_memory(clock) };
            let api = Api::new(Dataset::load(&store)?, sessions);
            text = run_query(&api, query, json)?;
        }
        Command::Eval(cmd) => text = run_eval(cmd)?,
        Command::Serve { addr, store, sessions } => {
            let addr = addr.parse().map_err(|e| CliError::Usage(format!("bad address {addr:?}: {e}")))?;
            let config = ServerConfig { addr, store, sessions };
            let api = Api::new(Dataset::load(&config.store)?, SessionStore::open(&config.sessions_path(), clock)?);
            let runtime = tokio::runtime::Runtime::new().map_err(io_err(Path::new("<runtime>")))?;
            let addr_err = |e| CliError::Io { path: config.addr.to_string().into(), source: e };
            runtime.block_on(async {
                let listener = tokio::net::TcpListener::bind(config.addr).await.map_err(addr_err)?;
                let bound = listener.local_addr().map_err(addr_err)?;
                writeln!(out, "listening on http://{bound}").map_err(io_err(Path::new("<stdout>")))?;
                out.flush().map_err(io_err(Path::new("<stdout>")))?;
                serve_on(std::sync::Arc::new(api), listener).await.map_err(addr_err)
            })?;
        }
    }
    out.write_all(text.as_bytes()).map_err(io_err(Path::new("<stdout>")))
}

fn write_lads(dir: &Path, ds: &Dataset) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    for (id, lad) in &ds.lads {
        let path = dir.join(format!("{id}.json"));
        std::fs::write(&path, lad.to_json()).map_err(io_err(&path))?;
    }
    Ok(())
}

fn read_lads(dir: &Path) -> Result<BTreeMap<String, LayeredDocument>, CliError> {
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(dir).map_err(io_err(dir))? {
        let path = entry.map_err(io_err(dir))?.path();
        if path.extension().is_some_and(|x| x == "json") {
            let text = String::from_utf8_lossy(&read(&path)?).into_owned();
            let lad = LayeredDocument::from_json(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            out.insert(lad.doc_id.clone(), lad);
        }
    }
    Ok(out)
}

fn climax_mode(s: &str) -> Result<ClimaxMode, CliError> {
    match s {
        "distinct-participants" => Ok(ClimaxMode::DistinctParticipants),
        "event-count" => Ok(ClimaxMode::EventCount),
        m => Err(CliError::Usage(format!("unknown climax mode {m:?}"))),
    }
}

fn value_text(v: &FactValue) -> String {
    match v {
        FactValue::Date(d) => d.to_string(),
        FactValue::Place(p) => p.clone(),
    }
}

fn emit<T: Serialize>(json: bool, payload: &T, summary: impl FnOnce(&T) -> String) -> String {
    if json {
        render_json(payload)
    } else {
        summary(payload)
    }
}

/// Run one `query` subcommand against an API instance.
pub fn run_query(api: &Api, query: QueryCommand, json: bool) -> Result<String, CliError> {
    let out = match query {
        QueryCommand::Timeline(p) => emit(json, &api.timeline(&p.person)?, |t| {
            let mut s = format!("timeline of {}\n", t.person);
            for e in &t.entries {
                let date = e.date.map_or_else(|| "undated".to_string(), |d| d.to_string());
                writeln!(s, "{date}\t{}\t{}\t{}", e.types.join(","), e.place.as_deref().unwrap_or("-"), e
                    .entry_id
                    .as_deref()
                    .unwrap_or("-"))
                .ok();
            }
            s
        }),
        QueryCommand::ConceptStats { q, group_by } => emit(json, &api.concept_stats(&q, &group_by)?, |c| {
            let mut s = format!("{} by {:?}: concepts {:?}, lemmas {:?}\n", c.query, c.group_by, c.concepts, c.lemmas);
            for g in &c.groups {
                writeln!(s, "{}\t{}/{}\t{}", g.group, g.count, g.size, g.rate.decimal()).ok();
            }
            for d in &c.diagnostics {
                writeln!(s, "note: {d}").ok();
            }
            s
        }),
        QueryCommand::AdjectiveRatio { source } => emit(json, &api.adjective_ratio(source.as_deref())?, |rs| {
            rs.iter()
                .map(|r| format!("{}\t{}/{}\t{}\n", r.source, r.adjectives, r.words, r.ratio.decimal()))
                .collect()
        }),
        QueryCommand::Names { source } => emit(json, &api.names(source.as_deref()), |ns| {
            ns.iter().map(|n| format!("{}\t{}\n", n.count, n.name)).collect()
        }),
        QueryCommand::Conformance => emit(json, &api.conformance(), |r| {
            let mut s = format!("{} descriptions, {} content statements\n", r.descriptions, r.content_statements);
            for g in &r.broken_chains {
                writeln!(s, "chain\t{}\tmissing {}", g.description, g.missing).ok();
            }
            for g in &r.ungrounded {
                writeln!(s, "ungrounded\t{}\t{}", g.reason, g.statement.trim_end()).ok();
            }
            s
        }),
        QueryCommand::Participation { persons, types } => emit(json, &api.participation(&persons, &types)?, |g| {
            let mut s = String::new();
            for a in &g.actors {
                writeln!(s, "actor {}\t{}\t{} events", a.label, a.iri, a.event_count).ok();
            }
            for e in &g.events {
                writeln!(s, "{}\t{}\t{}", e.year, e.event_type, e.participants.join(",")).ok();
            }
            writeln!(s, "{} undated events", g.residue.len()).ok();
            s
        }),
        QueryCommand::Climax { mode, types } => emit(json, &api.climax(climax_mode(&mode)?, &types)?, |series| {
            let mut s = String::new();
            for g in &series.groups {
                let points: Vec<String> = g.points.iter().map(|p| format!("{}:{}", p.year, p.score)).collect();
                writeln!(s, "{}\t{}", g.event_type, points.join(" ")).ok();
            }
            s
        }),
        QueryCommand::Storyteller { persons, types, mode } => {
            render_json(&api.storyteller(&persons, &types, climax_mode(&mode)?)?)
        }
        QueryCommand::Facts { person, kind } => emit(json, &api.fact(&person, &kind)?, |f| {
            let mut s = format!("{} of {}\n", f.kind.as_str(), f.person);
            for (i, a) in f.alternatives.iter().enumerate() {
                let sources: Vec<String> =
                    a.sources.iter().map(|v| format!("{}:{}", v.entry_id, serde_json::to_value(v.origin).unwrap_or_default().as_str().unwrap_or(""))).collect();
                writeln!(s, "[{i}] {}\t{} supports\t{:?}\t{}", value_text(&a.value), a.support_count, a.versus_selected, sources.join(" "))
                    .ok();
            }
            for p in &f.pairs {
                writeln!(s, "[{}] vs [{}]: {:?}", p.a, p.b, p.class).ok();
            }
            s
        }),
        QueryCommand::Session { id, step } => match step {
            Some(step) => render_json(&api.session_at(&id, &step)?),
            None => render_json(&api.session(&id)?),
        },
        QueryCommand::Person(p) => render_json(&api.person(&p.person)?),
        QueryCommand::Raw(p) => render_json(&api.raw(&p.person)?),
        QueryCommand::Provenance { entity } => render_json(&api.provenance(&entity)?),
        QueryCommand::Search { q, facets, page, page_size } => {
            let mut req = SearchRequest::query(&q);
            req.page = page;
            req.page_size = page_size;
            for f in &facets {
                let (k, v) = f
                    .split_once('=')
                    .ok_or_else(|| CliError::Usage(format!("facet {f:?} is not of the form field=value")))?;
                req.facets.entry(k.to_string()).or_default().push(v.to_string());
            }
            emit(json, &api.search(&req)?, |r| {
                let mut s = format!("{} persons, {} entries\n", r.total_persons, r.total_entries);
                for p in &r.persons {
                    let ids: Vec<&str> = p.entries.iter().map(|e| e.entry_id.as_str()).collect();
                    writeln!(s, "{}\t{}\t{}\t{}", p.weight, p.person_id, p.label, ids.join(",")).ok();
                }
                s
            })
        }
        QueryCommand::CorpusStats { facets } => {
            let names: Vec<&str> = facets.iter().map(String::as_str).collect();
            let stats = corpus_stats(&api.dataset().entries, &names)?;
            emit(json, &stats, |st| {
                let mut s = format!("{} entries\n", st.entry_count);
                for c in &st.cells {
                    writeln!(s, "{}\t{}", c.key.join(" / "), c.count).ok();
                }
                s
            })
        }
    };
    Ok(out)
}

fn run_eval(cmd: EvalCommand) -> Result<String, CliError> {
    match cmd {
        EvalCommand::Intrinsic { system, gold, json } => {
            let lad = LayeredDocument::from_json(&String::from_utf8_lossy(&read(&system)?))
                .map_err(|e| CliError::Usage(format!("{}: {e}", system.display())))?;
            let gold = GoldAnnotation::from_json(&String::from_utf8_lossy(&read(&gold)?))?;
            let reports = intrinsic_eval_both(&lad, &gold)?;
            Ok(emit(json, &reports, |rs| {
                rs.iter()
                    .map(|r| {
                        format!(
                            "{}\t{}\tP {}\tR {}\tF1 {}\t{} errors\n",
                            r.layer.as_str(),
                            r.matching.as_str(),
                            r.precision.decimal(),
                            r.recall.decimal(),
                            r.f1.decimal(),
                            r.errors.len()
                        )
                    })
                    .collect()
            }))
        }
        EvalCommand::Sample { store, source_a, source_b, k, out } => {
            let ds = Dataset::load(&store)?;
            let scores = score_documents(ds.documents(), &AdjectiveScorer);
            let triple = hypothesis_sample(&scores, &source_a, &source_b, k)?;
            let rendered = render_json(&triple);
            match out {
                Some(path) => {
                    std::fs::write(&path, &rendered).map_err(io_err(&path))?;
                    Ok(format!("wrote {} samples of {} documents to {}\n", 3, 2 * k, path.display()))
                }
                None => Ok(rendered),
            }
        }
        EvalCommand::Compare { samples, human, system, threshold, json } => {
            let triple: SampleTriple = read_json(&samples)?;
            let human: BTreeMap<String, bool> = read_json(&human)?;
            let system: BTreeMap<String, bool> = match system {
                Some(path) => read_json(&path)?,
                None => triple
                    .samples()
                    .iter()
                    .flat_map(|(_, docs)| docs.iter())
                    .map(|d| (d.doc_id.clone(), d.score >= threshold))
                    .collect(),
            };
            let report = compare_conclusions(&triple, &human, &system);
            Ok(emit(json, &report, |r| {
                let mut s = String::new();
                for a in &r.samples {
                    writeln!(s, "{}\t{}/{} agree", a.sample, a.agreed, a.compared).ok();
                }
                for e in &r.sources {
                    writeln!(s, "{}\tover {}\tunder {}", e.source, e.over, e.under).ok();
                }
                if !r.bias_flags.is_empty() {
                    writeln!(s, "bias: {}", r.bias_flags.join(", ")).ok();
                }
                s
            }))
        }
    }
}
