//! Seeded synthetic domain generation.
//!
//! A universe owns the production pools for a set of domain specs: one
//! private pool per domain and one shared pool per linked pair. Shared pools
//! are derived from the pair, not from either side, so both domains emit the
//! same shared productions and the overlap weight of a link is realized as
//! the fraction of production draws taken from that pool.

use super::{CorpusError, DocumentSet, DomainSpec, TokenSequence};
use crate::rng::{derive_seed, mix, seeded_rng};
use rand::Rng;
use std::collections::BTreeMap;

/// Productions per private pool.
const PRIVATE_POOL_SIZE: usize = 32;
/// Productions per shared (link) pool.
const SHARED_POOL_SIZE: usize = 24;
/// Inclusive production length range, in tokens.
const PRODUCTION_LEN: (usize, usize) = (4, 8);

type Production = Vec<u32>;

/// A validated set of domain specs plus their derived production pools.
pub struct DomainUniverse {
    specs: Vec<DomainSpec>,
    by_name: BTreeMap<String, usize>,
    private_pools: Vec<Vec<Production>>,
    /// Keyed by (min_idx, max_idx) of the linked pair.
    shared_pools: BTreeMap<(usize, usize), Vec<Production>>,
}

impl DomainUniverse {
    /// Validates all specs and cross-domain invariants, then builds the
    /// production pools. Pool contents are a pure function of `(specs, seed)`.
    pub fn new(specs: Vec<DomainSpec>, seed: u64) -> Result<Self, CorpusError> {
        if specs.is_empty() {
            return Err(CorpusError::InvalidSpec {
                name: String::new(),
                reason: "no domain specs".to_string(),
            });
        }
        let mut by_name = BTreeMap::new();
        for (idx, spec) in specs.iter().enumerate() {
            spec.validate()?;
            if by_name.insert(spec.name.clone(), idx).is_some() {
                return Err(CorpusError::DuplicateDomain(spec.name.clone()));
            }
        }
        // Disjoint vocab blocks.
        let mut blocks: Vec<(u32, u32, &str)> = specs
            .iter()
            .map(|s| (s.vocab_block.0, s.vocab_block.1, s.name.as_str()))
            .collect();
        blocks.sort();
        for pair in blocks.windows(2) {
            if pair[1].0 < pair[0].1 {
                return Err(CorpusError::OverlappingBlocks {
                    a: pair[0].2.to_string(),
                    b: pair[1].2.to_string(),
                });
            }
        }
        // Links must exist and be declared symmetrically with equal weight.
        for spec in &specs {
            for link in &spec.links {
                let other_idx = *by_name
                    .get(&link.to)
                    .ok_or_else(|| CorpusError::UnknownDomain(link.to.clone()))?;
                let other = &specs[other_idx];
                let reverse = other.links.iter().find(|l| l.to == spec.name);
                match reverse {
                    Some(r) if (r.weight - link.weight).abs() <= 1e-9 => {}
                    Some(r) => {
                        return Err(CorpusError::AsymmetricLink {
                            a: spec.name.clone(),
                            b: other.name.clone(),
                            wa: link.weight,
                            wb: r.weight,
                        })
                    }
                    None => {
                        return Err(CorpusError::AsymmetricLink {
                            a: spec.name.clone(),
                            b: other.name.clone(),
                            wa: link.weight,
                            wb: 0.0,
                        })
                    }
                }
            }
        }

        let private_pools = specs
            .iter()
            .map(|spec| {
                let pool_seed = derive_seed(seed, &format!("pool:{}", spec.name));
                build_pool(PRIVATE_POOL_SIZE, pool_seed, |rng| {
                    rng.random_range(spec.vocab_block.0..spec.vocab_block.1)
                })
            })
            .collect();

        let mut shared_pools = BTreeMap::new();
        for spec in &specs {
            let a = by_name[&spec.name];
            for link in &spec.links {
                let b = by_name[&link.to];
                let key = (a.min(b), a.max(b));
                if shared_pools.contains_key(&key) {
                    continue;
                }
                let (lo, hi) = (&specs[key.0], &specs[key.1]);
                let pool_seed = derive_seed(seed, &format!("pool:{}+{}", lo.name, hi.name));
                let pool = build_pool(SHARED_POOL_SIZE, pool_seed, |rng| {
                    // Each token comes from either block with equal chance, so
                    // shared productions mix both vocabularies.
                    if rng.random::<bool>() {
                        rng.random_range(lo.vocab_block.0..lo.vocab_block.1)
                    } else {
                        rng.random_range(hi.vocab_block.0..hi.vocab_block.1)
                    }
                });
                shared_pools.insert(key, pool);
            }
        }

        Ok(Self {
            specs,
            by_name,
            private_pools,
            shared_pools,
        })
    }

    pub fn specs(&self) -> &[DomainSpec] {
        &self.specs
    }

    pub fn spec(&self, name: &str) -> Result<&DomainSpec, CorpusError> {
        self.by_name
            .get(name)
            .map(|&i| &self.specs[i])
            .ok_or_else(|| CorpusError::UnknownDomain(name.to_string()))
    }

    /// Generates the domain's corpus: `spec.doc_count` documents, lengths
    /// drawn from `spec.doc_length`. Deterministic under `(specs, seed)`.
    pub fn generate(&self, name: &str, seed: u64) -> Result<DocumentSet, CorpusError> {
        let spec = self.spec(name)?;
        self.generate_n(name, spec.doc_count, seed)
    }

    /// Generates `count` documents from the domain's grammar, e.g. held-out
    /// evaluation sets drawn with a different seed than the training corpus.
    pub fn generate_n(&self, name: &str, count: usize, seed: u64) -> Result<DocumentSet, CorpusError> {
        let idx = *self
            .by_name
            .get(name)
            .ok_or_else(|| CorpusError::UnknownDomain(name.to_string()))?;
        let spec = &self.specs[idx];
        let private = &self.private_pools[idx];
        // Cumulative link weights select the shared pool for a draw.
        let links: Vec<(f64, &Vec<Production>)> = {
            let mut acc = 0.0;
            spec.links
                .iter()
                .map(|link| {
                    acc += link.weight;
                    let other = self.by_name[&link.to];
                    let key = (idx.min(other), idx.max(other));
                    (acc, &self.shared_pools[&key])
                })
                .collect()
        };

        let mut rng = seeded_rng(mix(seed, idx as u64));
        let (len_lo, len_hi) = spec.doc_length;
        let mut sequences = Vec::with_capacity(count);
        for _ in 0..count {
            let len = rng.random_range(len_lo..=len_hi);
            let mut tokens = Vec::with_capacity(len);
            while tokens.len() < len {
                let u: f64 = rng.random();
                let pool = links
                    .iter()
                    .find(|(cum, _)| u < *cum)
                    .map(|(_, pool)| *pool)
                    .unwrap_or(private);
                let production = &pool[rng.random_range(0..pool.len())];
                for &t in production {
                    if tokens.len() == len {
                        break;
                    }
                    tokens.push(t);
                }
            }
            sequences.push(TokenSequence {
                domain: spec.name.clone(),
                tokens,
            });
        }
        DocumentSet::homogeneous(spec.name.clone(), sequences)
    }

    /// All productions a domain's documents can contain: its private pool and
    /// every shared pool reachable through a positive-weight link.
    pub fn reachable_productions(&self, name: &str) -> Result<Vec<&[u32]>, CorpusError> {
        let idx = *self
            .by_name
            .get(name)
            .ok_or_else(|| CorpusError::UnknownDomain(name.to_string()))?;
        let mut out: Vec<&[u32]> = self.private_pools[idx].iter().map(Vec::as_slice).collect();
        for link in &self.specs[idx].links {
            if link.weight <= 0.0 {
                continue;
            }
            let other = self.by_name[&link.to];
            let key = (idx.min(other), idx.max(other));
            out.extend(self.shared_pools[&key].iter().map(Vec::as_slice));
        }
        Ok(out)
    }

    /// Connected components of the positive-weight link graph, each sorted,
    /// components ordered by their first member. Used to group domains into
    /// capability categories with known ground truth.
    pub fn linked_components(&self) -> Vec<Vec<String>> {
        let n = self.specs.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (idx, spec) in self.specs.iter().enumerate() {
            for link in &spec.links {
                if link.weight > 0.0 {
                    let other = self.by_name[&link.to];
                    let (a, b) = (find(&mut parent, idx), find(&mut parent, other));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for idx in 0..n {
            let root = find(&mut parent, idx);
            groups.entry(root).or_default().push(self.specs[idx].name.clone());
        }
        let mut out: Vec<Vec<String>> = groups.into_values().collect();
        for g in &mut out {
            g.sort();
        }
        out.sort();
        out
    }
}

fn build_pool(size: usize, seed: u64, mut draw: impl FnMut(&mut rand_chacha::ChaCha8Rng) -> u32) -> Vec<Production> {
    let mut rng = seeded_rng(seed);
    (0..size)
        .map(|_| {
            let len = rng.random_range(PRODUCTION_LEN.0..=PRODUCTION_LEN.1);
            (0..len).map(|_| draw(&mut rng)).collect()
        })
        .collect()
}
