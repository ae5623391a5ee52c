//! Library side of the `rotknot` command: the corpus and the checks that
//! `rotknot corpus run` performs.

pub mod corpus;
pub mod suite;

pub use corpus::{CheckResult, CorpusEntry, CorpusError, Coverage};
