//! Corpora: synthetic domain generation, text ingestion, the piece-shuffle
//! randomizer, and split construction.
//!
//! Synthetic domains are produced by seeded template grammars. Each domain
//! owns a private token-id block and a pool of fixed productions over it;
//! linked domains additionally share a per-link pool of productions drawn over
//! both blocks. A document interleaves private and shared productions, with
//! the overlap weight of a link giving the fraction of production draws that
//! come from that link's shared pool. Relatedness between domains is thereby
//! a controllable ground truth.

mod generate;
mod ingest;
mod randomize;
mod splits;

pub use generate::DomainUniverse;
pub use ingest::{ingest_text_dir, ByteTokenizer};
pub use randomize::randomize_text;
pub use splits::make_splits;

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Label used for document sets that pool sequences from several domains.
pub const MIXED_LABEL: &str = "mixed";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("invalid domain spec `{name}`: {reason}")]
    InvalidSpec { name: String, reason: String },
    #[error("vocab blocks of `{a}` and `{b}` overlap")]
    OverlappingBlocks { a: String, b: String },
    #[error("link weight between `{a}` and `{b}` is asymmetric ({wa} vs {wb})")]
    AsymmetricLink { a: String, b: String, wa: f64, wb: f64 },
    #[error("unknown domain `{0}`")]
    UnknownDomain(String),
    #[error("duplicate domain name `{0}`")]
    DuplicateDomain(String),
    #[error("empty token sequence")]
    EmptySequence,
    #[error("sequence tagged `{found}` placed in document set `{expected}`")]
    DomainMismatch { expected: String, found: String },
    #[error("not enough sequences: need {needed}, have {available}")]
    NotEnoughSequences { needed: usize, available: usize },
    #[error("randomizer max_piece_len must be >= 1")]
    InvalidRandomizer,
    #[error("empty file: {0}")]
    EmptyFile(PathBuf),
    #[error("no readable files in directory: {0}")]
    EmptyDirectory(PathBuf),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed jsonl record at line {line}: {source}")]
    Jsonl {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
}

/// Specification of one synthetic domain.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DomainSpec {
    pub name: String,
    /// Half-open token-id range `[start, end)` owned by this domain.
    /// Blocks of distinct domains must be disjoint.
    pub vocab_block: (u32, u32),
    /// Fraction of production draws that come from pools shared with linked
    /// domains. Must equal the sum of this domain's link weights.
    pub shared_fraction: f64,
    /// Linked domains and their overlap weights. A link must be declared on
    /// both sides with the same weight.
    #[serde(default)]
    pub links: Vec<Link>,
    pub doc_count: usize,
    /// Inclusive token-length range for generated documents.
    pub doc_length: (usize, usize),
}

/// One side of a link between two domains.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Link {
    pub to: String,
    pub weight: f64,
}

impl DomainSpec {
    /// Validates the spec in isolation (cross-domain invariants are checked
    /// by [`DomainUniverse::new`]).
    pub fn validate(&self) -> Result<(), CorpusError> {
        let fail = |reason: &str| CorpusError::InvalidSpec {
            name: self.name.clone(),
            reason: reason.to_string(),
        };
        if self.name.is_empty()
            || !self
                .name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            return Err(fail("name must be non-empty [A-Za-z0-9_-]"));
        }
        if self.vocab_block.0 >= self.vocab_block.1 {
            return Err(fail("vocab block is empty"));
        }
        if self.doc_count == 0 {
            return Err(fail("doc_count must be positive"));
        }
        if self.doc_length.0 == 0 || self.doc_length.0 > self.doc_length.1 {
            return Err(fail("doc_length range must satisfy 1 <= min <= max"));
        }
        if !(0.0..=1.0).contains(&self.shared_fraction) {
            return Err(fail("shared_fraction must lie in [0, 1]"));
        }
        let mut seen = BTreeSet::new();
        let mut weight_sum = 0.0;
        for link in &self.links {
            if link.to == self.name {
                return Err(fail("domain cannot link to itself"));
            }
            if !seen.insert(link.to.clone()) {
                return Err(fail("duplicate link target"));
            }
            if !(0.0..=1.0).contains(&link.weight) {
                return Err(fail("link weight must lie in [0, 1]"));
            }
            weight_sum += link.weight;
        }
        if (weight_sum - self.shared_fraction).abs() > 1e-9 {
            return Err(fail(
                "shared_fraction must equal the sum of link weights (private fraction is the complement)",
            ));
        }
        Ok(())
    }
}

/// A tokenized document tagged with the domain it came from.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq, Hash)]
pub struct TokenSequence {
    pub domain: String,
    pub tokens: Vec<u32>,
}

impl TokenSequence {
    pub fn new(domain: impl Into<String>, tokens: Vec<u32>) -> Result<Self, CorpusError> {
        if tokens.is_empty() {
            return Err(CorpusError::EmptySequence);
        }
        Ok(Self {
            domain: domain.into(),
            tokens,
        })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// An immutable collection of token sequences.
///
/// Per-domain sets (from generation or ingestion) carry the domain name and
/// enforce that every sequence is tagged with it; pooled sets (retrain pool,
/// dev set) carry a label and keep each sequence's own tag.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DocumentSet {
    pub domain: String,
    pub sequences: Vec<TokenSequence>,
}

impl DocumentSet {
    /// A set whose sequences all belong to `domain`.
    pub fn homogeneous(
        domain: impl Into<String>,
        sequences: Vec<TokenSequence>,
    ) -> Result<Self, CorpusError> {
        let domain = domain.into();
        for seq in &sequences {
            if seq.domain != domain {
                return Err(CorpusError::DomainMismatch {
                    expected: domain,
                    found: seq.domain.clone(),
                });
            }
        }
        Ok(Self { domain, sequences })
    }

    /// A pooled set; sequences keep their own domain tags.
    pub fn mixed(label: impl Into<String>, sequences: Vec<TokenSequence>) -> Self {
        Self {
            domain: label.into(),
            sequences,
        }
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn total_tokens(&self) -> usize {
        self.sequences.iter().map(TokenSequence::len).sum()
    }

    /// Writes the set as JSONL, one `{domain, tokens}` record per sequence.
    pub fn write_jsonl(&self, path: &Path) -> Result<(), CorpusError> {
        let io_err = |source| CorpusError::Io {
            path: path.to_path_buf(),
            source,
        };
        let file = std::fs::File::create(path).map_err(io_err)?;
        let mut out = BufWriter::new(file);
        for seq in &self.sequences {
            let line = serde_json::to_string(seq).expect("token sequences serialize");
            writeln!(out, "{line}").map_err(io_err)?;
        }
        out.flush().map_err(io_err)
    }

    /// Reads a JSONL file written by [`DocumentSet::write_jsonl`]. The set
    /// label is the common domain tag when there is one, [`MIXED_LABEL`]
    /// otherwise.
    pub fn read_jsonl(path: &Path) -> Result<Self, CorpusError> {
        let file = std::fs::File::open(path).map_err(|source| CorpusError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let reader = BufReader::new(file);
        let mut sequences = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line.map_err(|source| CorpusError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            if line.trim().is_empty() {
                continue;
            }
            let seq: TokenSequence = serde_json::from_str(&line)
                .map_err(|source| CorpusError::Jsonl { line: idx + 1, source })?;
            sequences.push(seq);
        }
        let label = match sequences.first() {
            Some(first) if sequences.iter().all(|s| s.domain == first.domain) => {
                first.domain.clone()
            }
            _ => MIXED_LABEL.to_string(),
        };
        Ok(Self {
            domain: label,
            sequences,
        })
    }
}

impl fmt::Display for DocumentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} docs, {} tokens)",
            self.domain,
            self.len(),
            self.total_tokens()
        )
    }
}

/// Configuration of the piece-shuffle randomizer.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct RandomizerConfig {
    /// Pieces are cut with lengths drawn uniformly from `1..=max_piece_len`.
    pub max_piece_len: usize,
    pub seed: u64,
}

impl Default for RandomizerConfig {
    fn default() -> Self {
        Self {
            max_piece_len: 4,
            seed: 0,
        }
    }
}

impl RandomizerConfig {
    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.max_piece_len < 1 {
            return Err(CorpusError::InvalidRandomizer);
        }
        Ok(())
    }
}

/// The four pairwise-disjoint document sets a GRACE run consumes.
#[derive(Debug, Clone)]
pub struct SplitPlan {
    /// Training side of the target corpus (ascent batches come from here).
    pub unlearn_set: DocumentSet,
    /// Held-out target documents monitored for the endpoint.
    pub target_eval_set: DocumentSet,
    /// Non-target documents available for retraining (the 90% side).
    pub retrain_pool: DocumentSet,
    /// Non-target documents monitored for the retraining trigger (the 10% side).
    pub dev_set: DocumentSet,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(name: &str, block: (u32, u32)) -> DomainSpec {
        DomainSpec {
            name: name.to_string(),
            vocab_block: block,
            shared_fraction: 0.0,
            links: vec![],
            doc_count: 4,
            doc_length: (8, 8),
        }
    }

    #[test]
    fn spec_rejects_empty_vocab_block() {
        let mut s = spec("a", (10, 10));
        assert!(s.validate().is_err());
        s.vocab_block = (10, 12);
        assert!(s.validate().is_ok());
    }

    #[test]
    fn spec_rejects_zero_doc_count() {
        let mut s = spec("a", (0, 8));
        s.doc_count = 0;
        assert!(s.validate().is_err());
    }

    #[test]
    fn spec_requires_shared_fraction_matching_links() {
        let mut s = spec("a", (0, 8));
        s.links = vec![Link {
            to: "b".into(),
            weight: 0.3,
        }];
        assert!(s.validate().is_err());
        s.shared_fraction = 0.3;
        assert!(s.validate().is_ok());
    }

    #[test]
    fn homogeneous_rejects_foreign_tags() {
        let seqs = vec![
            TokenSequence::new("a", vec![1, 2]).unwrap(),
            TokenSequence::new("b", vec![3]).unwrap(),
        ];
        assert!(matches!(
            DocumentSet::homogeneous("a", seqs),
            Err(CorpusError::DomainMismatch { .. })
        ));
    }

    #[test]
    fn jsonl_round_trip_preserves_sequences() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("docs.jsonl");
        let set = DocumentSet::homogeneous(
            "a",
            vec![
                TokenSequence::new("a", vec![1, 2, 3]).unwrap(),
                TokenSequence::new("a", vec![4]).unwrap(),
            ],
        )
        .unwrap();
        set.write_jsonl(&path).unwrap();
        let back = DocumentSet::read_jsonl(&path).unwrap();
        assert_eq!(set, back);
    }

    #[test]
    fn jsonl_mixed_sets_get_mixed_label() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("docs.jsonl");
        let set = DocumentSet::mixed(
            "pool",
            vec![
                TokenSequence::new("a", vec![1]).unwrap(),
                TokenSequence::new("b", vec![2]).unwrap(),
            ],
        );
        set.write_jsonl(&path).unwrap();
        let back = DocumentSet::read_jsonl(&path).unwrap();
        assert_eq!(back.domain, MIXED_LABEL);
        assert_eq!(back.sequences, set.sequences);
    }
}
