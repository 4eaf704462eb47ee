//! Bounded breadth-first search over the Cayley graph of a finite set of
//! integer 3×3 generators.
//!
//! States are matrices with every entry bounded by `entry_cap`, so the
//! search runs on small fixed-size integer arrays. Found words are
//! re-evaluated with exact arithmetic before they are returned.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use num_traits::ToPrimitive;

use super::{evaluate_word, Esl3Error, GeneratorCatalog, Letter, Word};
use crate::arith::Ring;
use crate::matrix::SquareMatrix;

pub const DEFAULT_ENTRY_CAP: i64 = 16;
pub const DEFAULT_NODE_LIMIT: usize = 1_000_000;
pub const MAX_SEARCH_LEN: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub entry_cap: i64,
    pub node_limit: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            entry_cap: DEFAULT_ENTRY_CAP,
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }
}

type Key = [i64; 9];

const IDENTITY: Key = [1, 0, 0, 0, 1, 0, 0, 0, 1];

fn to_key(m: &SquareMatrix) -> Option<Key> {
    if m.ring() != Ring::Integers || m.dim() != 3 {
        return None;
    }
    let mut key = [0i64; 9];
    for (slot, v) in key.iter_mut().zip(m.raw_entries()) {
        *slot = v.to_i64()?;
    }
    Some(key)
}

fn mul(a: &Key, b: &Key) -> Key {
    let mut out = [0i64; 9];
    for i in 0..3 {
        for j in 0..3 {
            out[i * 3 + j] = (0..3).map(|k| a[i * 3 + k] * b[k * 3 + j]).sum();
        }
    }
    out
}

fn within(key: &Key, cap: i64) -> bool {
    key.iter().all(|v| v.abs() <= cap)
}

struct Alphabet {
    letters: Vec<Letter>,
    forward: Vec<Key>,
    backward: Vec<Key>,
}

/// Generators in the given order, each followed by its inverse unless the
/// inverse duplicates an earlier letter (involutions).
fn alphabet(generators: &[&str], catalog: &GeneratorCatalog) -> Result<Alphabet, Esl3Error> {
    let mut letters = Vec::new();
    let mut forward: Vec<Key> = Vec::new();
    let mut backward = Vec::new();
    for name in generators {
        let g = catalog.lookup(name)?;
        let gi = g.inverse()?;
        let g_key = to_key(g).ok_or(Esl3Error::NotIntegral3x3)?;
        let gi_key = to_key(&gi).ok_or(Esl3Error::NotIntegral3x3)?;
        for (letter, key, inv_key) in [
            (Letter::new(*name), g_key, gi_key),
            (Letter::inv(*name), gi_key, g_key),
        ] {
            if !forward.contains(&key) {
                letters.push(letter);
                forward.push(key);
                backward.push(inv_key);
            }
        }
    }
    Ok(Alphabet {
        letters,
        forward,
        backward,
    })
}

/// Shortest word over `generators` evaluating to `target`, searching words
/// up to `max_len` letters whose prefix products stay within the entry cap.
///
/// Runs breadth-first from both ends, one full layer at a time; the first
/// meeting point gives a shortest word, and ties are broken by generator
/// order.
pub fn bounded_word_search(
    target: &SquareMatrix,
    generators: &[&str],
    max_len: usize,
    catalog: &GeneratorCatalog,
    config: SearchConfig,
) -> Result<Option<Word>, Esl3Error> {
    if max_len > MAX_SEARCH_LEN {
        return Err(Esl3Error::InvalidLength(max_len));
    }
    let target_key = to_key(target).ok_or(Esl3Error::NotIntegral3x3)?;
    if target_key == IDENTITY {
        return Ok(Some(Word::empty()));
    }
    if !within(&target_key, config.entry_cap) {
        return Ok(None);
    }
    let alpha = alphabet(generators, catalog)?;

    // node -> (predecessor, letter index); the roots map to themselves.
    let mut fwd: HashMap<Key, (Key, usize)> = HashMap::new();
    let mut bwd: HashMap<Key, (Key, usize)> = HashMap::new();
    fwd.insert(IDENTITY, (IDENTITY, usize::MAX));
    bwd.insert(target_key, (target_key, usize::MAX));
    let mut fwd_layer = vec![IDENTITY];
    let mut bwd_layer = vec![target_key];
    let (mut fwd_depth, mut bwd_depth) = (0usize, 0usize);

    while fwd_depth + bwd_depth < max_len {
        let expand_forward = fwd_layer.len() <= bwd_layer.len();
        let mut next = Vec::new();
        let mut meet = None;
        if expand_forward {
            'layer: for node in &fwd_layer {
                for (idx, g) in alpha.forward.iter().enumerate() {
                    let child = mul(node, g);
                    if !within(&child, config.entry_cap) {
                        continue;
                    }
                    if let Entry::Vacant(slot) = fwd.entry(child) {
                        slot.insert((*node, idx));
                        next.push(child);
                        if bwd.contains_key(&child) {
                            meet = Some(child);
                            break 'layer;
                        }
                    }
                }
            }
            fwd_depth += 1;
            fwd_layer = next;
        } else {
            'layer: for node in &bwd_layer {
                // node = prefix·g, so the predecessor prefix is node·g⁻¹.
                for (idx, g_inv) in alpha.backward.iter().enumerate() {
                    let parent = mul(node, g_inv);
                    if !within(&parent, config.entry_cap) {
                        continue;
                    }
                    if let Entry::Vacant(slot) = bwd.entry(parent) {
                        slot.insert((*node, idx));
                        next.push(parent);
                        if fwd.contains_key(&parent) {
                            meet = Some(parent);
                            break 'layer;
                        }
                    }
                }
            }
            bwd_depth += 1;
            bwd_layer = next;
        }
        if fwd.len() + bwd.len() > config.node_limit {
            return Err(Esl3Error::SearchBudgetExceeded {
                limit: config.node_limit,
            });
        }
        if let Some(m) = meet {
            let word = stitch(&m, &fwd, &bwd, &alpha.letters);
            debug_assert_eq!(evaluate_word(&word, catalog).ok().as_ref(), Some(target));
            return Ok(Some(word));
        }
        if fwd_layer.is_empty() || bwd_layer.is_empty() {
            break;
        }
    }
    Ok(None)
}

fn stitch(
    meet: &Key,
    fwd: &HashMap<Key, (Key, usize)>,
    bwd: &HashMap<Key, (Key, usize)>,
    letters: &[Letter],
) -> Word {
    let mut head = Vec::new();
    let mut cur = *meet;
    while let Some(&(prev, idx)) = fwd.get(&cur) {
        if idx == usize::MAX {
            break;
        }
        head.push(letters[idx].clone());
        cur = prev;
    }
    head.reverse();
    let mut cur = *meet;
    while let Some(&(next, idx)) = bwd.get(&cur) {
        if idx == usize::MAX {
            break;
        }
        head.push(letters[idx].clone());
        cur = next;
    }
    Word::new(head)
}

/// Outcome of reaching one target from a seed generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationOutcome {
    pub target: String,
    /// Word over the seed generators, when found.
    pub word: Option<Word>,
    pub budget_exceeded: bool,
}

/// Finite stand-in for "these seeds generate the targets": repeatedly
/// searches for each unreached target over the seeds plus every target
/// already reached, expanding found words back into seed letters.
pub fn generation_check(
    seeds: &[&str],
    targets: &[&str],
    catalog: &GeneratorCatalog,
    max_len: usize,
    config: SearchConfig,
) -> Result<Vec<GenerationOutcome>, Esl3Error> {
    let mut pool: Vec<String> = seeds.iter().map(|s| s.to_string()).collect();
    let mut macros: Vec<(String, Word)> = Vec::new();
    let mut found: HashMap<String, Word> = HashMap::new();
    let mut exceeded: HashMap<String, bool> = HashMap::new();
    for seed in seeds {
        catalog.lookup(seed)?;
        if targets.contains(seed) {
            found.insert(seed.to_string(), Word::gen(seed));
        }
    }
    loop {
        let mut progress = false;
        for target in targets {
            if found.contains_key(*target) {
                continue;
            }
            let goal = catalog.lookup(target)?;
            let names: Vec<&str> = pool.iter().map(String::as_str).collect();
            match bounded_word_search(goal, &names, max_len, catalog, config) {
                Ok(Some(w)) => {
                    let expanded = w.expand(&macros).free_reduce();
                    debug_assert_eq!(evaluate_word(&expanded, catalog).ok().as_ref(), Some(goal));
                    macros.push((target.to_string(), expanded.clone()));
                    found.insert(target.to_string(), expanded);
                    pool.push(target.to_string());
                    exceeded.remove(*target);
                    progress = true;
                }
                Ok(None) => {}
                Err(Esl3Error::SearchBudgetExceeded { .. }) => {
                    exceeded.insert(target.to_string(), true);
                }
                Err(e) => return Err(e),
            }
        }
        if !progress {
            break;
        }
    }
    Ok(targets
        .iter()
        .map(|t| GenerationOutcome {
            target: t.to_string(),
            word: found.get(*t).cloned(),
            budget_exceeded: exceeded.contains_key(*t),
        })
        .collect())
}
