//! The piece-shuffle randomizer behind the unlearning endpoint.
//!
//! A sequence is cut into pieces with lengths drawn uniformly from
//! `1..=max_piece_len`, and the pieces are pasted back in shuffled order. The
//! output keeps the input's token multiset exactly, so it shares the lexical
//! distribution while the cross-piece structure is destroyed.

use super::{CorpusError, RandomizerConfig, TokenSequence};
use crate::rng::{hash_tokens, mix, seeded_rng};
use rand::seq::SliceRandom;
use rand::Rng;

/// Returns the piece-shuffled copy of `seq`.
///
/// Deterministic under `(seq, cfg)`: the per-sequence stream is derived from
/// `cfg.seed` and the token content, so calling it over a whole document set
/// randomizes each document independently.
pub fn randomize_text(
    seq: &TokenSequence,
    cfg: &RandomizerConfig,
) -> Result<TokenSequence, CorpusError> {
    cfg.validate()?;
    if seq.tokens.is_empty() {
        return Err(CorpusError::EmptySequence);
    }
    if seq.tokens.len() == 1 {
        // Only one piece ordering exists.
        return Ok(seq.clone());
    }
    let mut rng = seeded_rng(mix(cfg.seed, hash_tokens(&seq.tokens)));

    let mut pieces: Vec<&[u32]> = Vec::new();
    let mut rest = seq.tokens.as_slice();
    while !rest.is_empty() {
        let len = rng.random_range(1..=cfg.max_piece_len).min(rest.len());
        let (piece, tail) = rest.split_at(len);
        pieces.push(piece);
        rest = tail;
    }
    pieces.shuffle(&mut rng);

    let tokens = pieces.concat();
    Ok(TokenSequence {
        domain: seq.domain.clone(),
        tokens,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(tokens: &[u32]) -> Vec<u32> {
        let mut v = tokens.to_vec();
        v.sort_unstable();
        v
    }

    #[test]
    fn single_token_sequence_is_identity() {
        let seq = TokenSequence::new("d", vec![7]).unwrap();
        for n in 1..=5 {
            let cfg = RandomizerConfig { max_piece_len: n, seed: 99 };
            assert_eq!(randomize_text(&seq, &cfg).unwrap(), seq);
        }
    }

    #[test]
    fn multiset_is_preserved() {
        // Oracle: compare sorted token lists.
        let seq = TokenSequence::new("d", vec![10, 11, 12, 13]).unwrap();
        let cfg = RandomizerConfig { max_piece_len: 2, seed: 5 };
        let out = randomize_text(&seq, &cfg).unwrap();
        assert_eq!(sorted(&out.tokens), sorted(&seq.tokens));
        assert_eq!(out.domain, seq.domain);
    }

    #[test]
    fn multiset_preserved_across_100_seeds() {
        let seq = TokenSequence::new("d", (0..17).map(|i| i * 3).collect()).unwrap();
        let expected = sorted(&seq.tokens);
        for seed in 0..100 {
            let cfg = RandomizerConfig { max_piece_len: 4, seed };
            let out = randomize_text(&seq, &cfg).unwrap();
            assert_eq!(sorted(&out.tokens), expected, "seed {seed}");
        }
    }

    #[test]
    fn deterministic_under_seed() {
        let seq = TokenSequence::new("d", (0..32).collect()).unwrap();
        let cfg = RandomizerConfig { max_piece_len: 3, seed: 12 };
        assert_eq!(
            randomize_text(&seq, &cfg).unwrap(),
            randomize_text(&seq, &cfg).unwrap()
        );
    }

    #[test]
    fn actually_permutes_long_sequences() {
        // Not a contract of the op, but guards against an accidental identity
        // implementation: over many seeds at least one order must change.
        let seq = TokenSequence::new("d", (0..64).collect()).unwrap();
        let changed = (0..20).any(|seed| {
            let cfg = RandomizerConfig { max_piece_len: 4, seed };
            randomize_text(&seq, &cfg).unwrap().tokens != seq.tokens
        });
        assert!(changed);
    }

    #[test]
    fn empty_sequence_is_rejected() {
        let seq = TokenSequence { domain: "d".into(), tokens: vec![] };
        let cfg = RandomizerConfig::default();
        assert!(matches!(
            randomize_text(&seq, &cfg),
            Err(CorpusError::EmptySequence)
        ));
    }

    #[test]
    fn invalid_piece_len_is_rejected() {
        let seq = TokenSequence::new("d", vec![1, 2]).unwrap();
        let cfg = RandomizerConfig { max_piece_len: 0, seed: 0 };
        assert!(matches!(
            randomize_text(&seq, &cfg),
            Err(CorpusError::InvalidRandomizer)
        ));
    }
}
