//! Corpus construction and the inequality verifiers.

pub mod corpus;
pub mod factor;
pub mod verify;

pub use corpus::{build_corpus, CorpusEntry, Interval};
pub use factor::{h_factorize, h_factorize_entry, trace_theorem21_proof, HFactorization};
pub use verify::*;
