//! A desk-scale laboratory for unlearning-based data influence analysis.
//!
//! The crate trains a tiny decoder-only language model on seeded synthetic
//! domain corpora with controlled relatedness, erases one domain at a time via
//! gradient-ascent unlearning with retraining regularization (GRACE), and
//! measures what each corpus contributed: per-capability degradation ratios,
//! high-impact detection, corpus/capability correlation matrices, hierarchical
//! clustering, and relation classification.
//!
//! Module map:
//!
//! * [`corpus`] — synthetic domain generation, plain-text ingestion, the
//!   piece-shuffle randomizer, and split construction.
//! * [`model`] — the micro transformer: init, loss, gradients, optimizers,
//!   pretraining, checkpoints.
//! * [`grace`] — the unlearn/retrain scheduler with the randomized-text
//!   stopping criterion.
//! * [`probes`] — capability evaluation (perplexity and cloze-accuracy probes)
//!   and per-token loss-delta case studies.
//! * [`analysis`] — degradation ratios, high-impact detection, correlation
//!   matrices, average-linkage clustering, relation classification.
//! * [`pipeline`] — experiment configuration, the staged runner, the run
//!   registry, and report emission.
//!
//! The `gracelab` binary drives the pipeline from a TOML config; see the
//! `book/` guide for a walkthrough.

pub mod analysis;
pub mod corpus;
pub mod grace;
pub mod model;
pub mod pipeline;
pub mod probes;
pub mod rng;

#[cfg(doctest)]
mod book;
