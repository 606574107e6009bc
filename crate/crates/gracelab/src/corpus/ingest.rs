//! Plain-text ingestion: the optional real-text path next to synthetic
//! generation. Tokenization is byte-level over a fixed 256-entry base
//! vocabulary plus a reserved UNK id, so no tokenizer training is involved.

use super::{CorpusError, DocumentSet, TokenSequence};
use std::path::Path;

/// Byte-level tokenizer: token id = byte value, plus a reserved UNK id.
///
/// Valid UTF-8 input never produces UNK; the id exists so downstream vocab
/// sizing has a defined slot for unknown symbols.
#[derive(Debug, Clone, Copy, Default)]
pub struct ByteTokenizer;

impl ByteTokenizer {
    pub const UNK_ID: u32 = 256;

    /// 256 byte ids plus UNK.
    pub fn vocab_size(&self) -> usize {
        257
    }

    pub fn encode(&self, text: &str) -> Vec<u32> {
        text.bytes().map(u32::from).collect()
    }
}

/// Reads every regular file in `dir` (sorted by file name) into one
/// [`TokenSequence`] each.
pub fn ingest_text_dir(
    dir: &Path,
    domain: &str,
    tokenizer: &ByteTokenizer,
) -> Result<DocumentSet, CorpusError> {
    let io_err = |path: &Path, source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| io_err(dir, e))?
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| io_err(dir, e))?
        .into_iter()
        .map(|entry| entry.path())
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CorpusError::EmptyDirectory(dir.to_path_buf()));
    }

    let mut sequences = Vec::with_capacity(files.len());
    for path in &files {
        let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        let tokens = tokenizer.encode(&text);
        if tokens.is_empty() {
            return Err(CorpusError::EmptyFile(path.clone()));
        }
        sequences.push(TokenSequence {
            domain: domain.to_string(),
            tokens,
        });
    }
    DocumentSet::homogeneous(domain, sequences)
}
