//! An ingested corpus together with its annotations and graph, kept in
//! memory and persisted as a directory.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::annotate::{LayeredDocument, Lexicons, Pipeline, PipelineConfig, PipelineError};
use crate::clock::Clock;
use crate::corpus::{
    aggregate_persons, declared_links, parse_entries, serialize_entries, BiographyEntry, CorpusError, Format,
    PersonRecord,
};
use crate::graph::{
    conformance, entry_statements, parse_store, person_statements, serialize, ConformanceReport, GraphError, Iris,
    SerialFormat, Store,
};
use crate::interpret::{interpret_document, InterpretError, InterpretOptions, InterpretationResult};

pub const CORPUS_FILE: &str = "corpus.json";
pub const PERSONS_FILE: &str = "persons.json";
pub const GRAPH_FILE: &str = "graph.nq";
pub const LAD_DIR: &str = "lad";

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Interpret(#[from] InterpretError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("unknown entry {0:?}")]
    UnknownEntry(String),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> DatasetError + '_ {
    move |source| DatasetError::Io { path: path.to_path_buf(), source }
}

#[derive(Debug)]
pub struct Dataset {
    pub entries: Vec<BiographyEntry>,
    pub persons: Vec<PersonRecord>,
    /// Layered documents keyed by entry id.
    pub lads: BTreeMap<String, LayeredDocument>,
    pub store: Store,
    pub iris: Iris,
    pub lexicons: Lexicons,
}

impl Dataset {
    /// Aggregate entries into persons through their declared links and load
    /// the person and original description statements.
    pub fn from_entries(entries: Vec<BiographyEntry>, iris: Iris) -> Result<Self, DatasetError> {
        let persons = aggregate_persons(&entries, &declared_links(&entries))?;
        let mut ds =
            Dataset { entries, persons, lads: BTreeMap::new(), store: Store::new(), iris, lexicons: Lexicons::builtin() };
        let mut statements = Vec::new();
        for p in &ds.persons {
            let label = ds.entry(&p.entry_ids[0]).map(|e| e.display_name().to_string()).unwrap_or_default();
            statements.extend(person_statements(p, &label, &ds.iris));
            for id in &p.entry_ids {
                if let Some(e) = ds.entry(id) {
                    statements.extend(entry_statements(e, &p.person_id, &ds.iris));
                }
            }
        }
        ds.store.assert(statements)?;
        Ok(ds)
    }

    pub fn from_corpus_bytes(bytes: &[u8], format: Format, iris: Iris) -> Result<Self, DatasetError> {
        Self::from_entries(parse_entries(bytes, format)?, iris)
    }

    /// Ingest, annotate and interpret in one go.
    pub fn build(
        entries: Vec<BiographyEntry>,
        pipeline: &Pipeline,
        options: &InterpretOptions,
        clock: &Clock,
    ) -> Result<Self, DatasetError> {
        let mut ds = Self::from_entries(entries, options.iris.clone())?;
        ds.lexicons = pipeline.lexicons.clone();
        ds.annotate(pipeline, clock)?;
        ds.interpret(options, clock)?;
        Ok(ds)
    }

    /// Default pipeline, interpretation seeded with `seed`, fixed clock: the
    /// same bytes always give the same store.
    pub fn reproducible(bytes: &[u8], format: Format, seed: u64) -> Result<Self, DatasetError> {
        let pipeline = Pipeline::new(PipelineConfig::default())?;
        let entries = parse_entries(bytes, format)?;
        Self::build(entries, &pipeline, &InterpretOptions::default().seeded(seed), &Clock::epoch())
    }

    pub fn entry(&self, entry_id: &str) -> Option<&BiographyEntry> {
        self.entries.iter().find(|e| e.entry_id == entry_id)
    }

    pub fn person(&self, person_id: &str) -> Option<&PersonRecord> {
        self.persons.iter().find(|p| p.person_id == person_id)
    }

    pub fn person_of(&self, entry_id: &str) -> Option<&PersonRecord> {
        self.persons.iter().find(|p| p.entry_ids.iter().any(|e| e == entry_id))
    }

    pub fn annotate(&mut self, pipeline: &Pipeline, clock: &Clock) -> Result<(), DatasetError> {
        for e in &self.entries {
            self.lads.insert(e.entry_id.clone(), pipeline.run(e, clock)?);
        }
        Ok(())
    }

    /// Interpret one annotated entry, replacing any earlier interpretation.
    pub fn interpret_entry(
        &mut self,
        entry_id: &str,
        options: &InterpretOptions,
        clock: &Clock,
    ) -> Result<InterpretationResult, DatasetError> {
        let entry = self.entry(entry_id).ok_or_else(|| DatasetError::UnknownEntry(entry_id.to_string()))?;
        let lad = self.lads.get(entry_id).ok_or_else(|| DatasetError::UnknownEntry(entry_id.to_string()))?;
        let person = self.person_of(entry_id).ok_or_else(|| DatasetError::UnknownEntry(entry_id.to_string()))?;
        let result = interpret_document(lad, entry, person, options, clock)?;
        self.store.remove_graph(&result.graph);
        self.store.assert(result.all_statements())?;
        Ok(result)
    }

    pub fn interpret(&mut self, options: &InterpretOptions, clock: &Clock) -> Result<(), DatasetError> {
        let ids: Vec<String> = self.lads.keys().cloned().collect();
        for id in ids {
            self.interpret_entry(&id, options, clock)?;
        }
        Ok(())
    }

    /// Provenance and grounding audit of the whole store.
    pub fn conformance(&self) -> ConformanceReport {
        let texts = self.entries.iter().map(|e| (e.entry_id.clone(), e.text.clone())).collect();
        conformance(&self.store, &texts)
    }

    /// `(source id, layered document)` pairs for every annotated entry.
    pub fn documents(&self) -> Vec<(&str, &LayeredDocument)> {
        self.entries
            .iter()
            .filter_map(|e| self.lads.get(&e.entry_id).map(|l| (e.source_id.as_str(), l)))
            .collect()
    }

    pub fn save(&self, dir: &Path) -> Result<(), DatasetError> {
        let lad_dir = dir.join(LAD_DIR);
        fs::create_dir_all(&lad_dir).map_err(io_err(&lad_dir))?;
        let path = dir.join(CORPUS_FILE);
        fs::write(&path, serialize_entries(&self.entries, Format::Json)).map_err(io_err(&path))?;
        let path = dir.join(PERSONS_FILE);
        let persons = serde_json::to_string_pretty(&self.persons).expect("person records serialize");
        fs::write(&path, persons).map_err(io_err(&path))?;
        let path = dir.join(GRAPH_FILE);
        fs::write(&path, serialize(&self.store, SerialFormat::QuadsLines)).map_err(io_err(&path))?;
        for (id, lad) in &self.lads {
            let path = lad_dir.join(format!("{}.json", file_stem(id)));
            fs::write(&path, lad.to_json()).map_err(io_err(&path))?;
        }
        Ok(())
    }

    /// Reload a saved directory. Missing person and annotation files are
    /// tolerated; the graph file is required.
    pub fn load(dir: &Path) -> Result<Self, DatasetError> {
        let path = dir.join(CORPUS_FILE);
        let entries = parse_entries(&fs::read(&path).map_err(io_err(&path))?, Format::Json)?;
        let path = dir.join(PERSONS_FILE);
        let persons = if path.exists() {
            let text = fs::read_to_string(&path).map_err(io_err(&path))?;
            serde_json::from_str(&text).map_err(|e| DatasetError::Format { path: path.clone(), message: e.to_string() })?
        } else {
            aggregate_persons(&entries, &declared_links(&entries))?
        };
        let path = dir.join(GRAPH_FILE);
        let store = parse_store(&fs::read(&path).map_err(io_err(&path))?, SerialFormat::QuadsLines)?;
        let mut lads = BTreeMap::new();
        let lad_dir = dir.join(LAD_DIR);
        if lad_dir.is_dir() {
            let mut files: Vec<PathBuf> = fs::read_dir(&lad_dir)
                .map_err(io_err(&lad_dir))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            for path in files {
                let text = fs::read_to_string(&path).map_err(io_err(&path))?;
                let lad = LayeredDocument::from_json(&text)
                    .map_err(|e| DatasetError::Format { path: path.clone(), message: e.to_string() })?;
                lads.insert(lad.doc_id.clone(), lad);
            }
        }
        Ok(Dataset { entries, persons, lads, store, iris: Iris::default(), lexicons: Lexicons::builtin() })
    }
}

fn file_stem(id: &str) -> String {
    id.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}
