pub mod analytics;
pub mod annotate;
pub mod cli;
pub mod clock;
pub mod corpus;
pub mod dataset;
pub mod evaluate;
pub mod graph;
pub mod interpret;
pub mod service;
