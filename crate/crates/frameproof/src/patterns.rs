//! t-pattern machinery.
//!
//! A `t`-pattern of a codeword is a choice of `t` of its (position, symbol)
//! pairs; the pattern is *own* when no other codeword agrees on all `t`
//! positions. A codeword with at least one own `t`-pattern is uniquely
//! identified by it, which caps the number of such codewords at
//! `C(N,t) * q^t`. Codewords without one sit far from every small coalition:
//! in a `w`-frameproof code their distance to any `j` other codewords is at
//! least `(w-j)t + 1`.

use num_bigint::BigUint;
use num_traits::pow::Pow;
use rayon::prelude::*;
use thiserror::Error;

use crate::code::{Code, PositionSymbol};
use crate::combinatorics::{binomial_big, find_combination};
use crate::verifier::{self, Coalition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern size {t} out of range 1..={n_len}")]
    PatternSizeOutOfRange { t: usize, n_len: usize },
    #[error("codeword index {index} out of range (n = {n})")]
    WordIndexOutOfRange { index: usize, n: usize },
    #[error("precondition violated: code is not {w}-frameproof")]
    NotFrameproof { w: usize },
}

/// An own pattern: `t` (position, symbol) pairs with distinct positions,
/// sorted by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    entries: Vec<PositionSymbol>,
}

impl Pattern {
    pub fn entries(&self) -> &[PositionSymbol] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.position)
    }
}

/// The split of a code's indices into those with an own `t`-pattern and the
/// rest. The two sides are disjoint and together cover every index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternPartition {
    t: usize,
    own_indices: Vec<usize>,
    rest_indices: Vec<usize>,
}

impl PatternPartition {
    pub fn t(&self) -> usize {
        self.t
    }

    /// Indices of codewords holding at least one own `t`-pattern.
    pub fn own_indices(&self) -> &[usize] {
        &self.own_indices
    }

    /// Indices of the remaining codewords.
    pub fn rest_indices(&self) -> &[usize] {
        &self.rest_indices
    }
}

fn check_t(code: &Code, t: usize) -> Result<(), PatternError> {
    if t == 0 || t > code.length() {
        return Err(PatternError::PatternSizeOutOfRange {
            t,
            n_len: code.length(),
        });
    }
    Ok(())
}

/// The least own `t`-pattern of codeword `index` (by sorted position tuple),
/// or `None` when every `t`-pattern also occurs in some other codeword.
pub fn has_own_pattern(
    code: &Code,
    index: usize,
    t: usize,
) -> Result<Option<Pattern>, PatternError> {
    check_t(code, t)?;
    if index >= code.size() {
        return Err(PatternError::WordIndexOutOfRange {
            index,
            n: code.size(),
        });
    }
    let word = code.word(index);
    let hit = find_combination(code.length(), t, |positions| {
        let shared = code.words().iter().enumerate().any(|(other, candidate)| {
            other != index
                && positions
                    .iter()
                    .all(|&i| candidate.symbol(i) == word.symbol(i))
        });
        if shared {
            None
        } else {
            Some(
                positions
                    .iter()
                    .map(|&position| PositionSymbol {
                        position,
                        symbol: word.symbol(position),
                    })
                    .collect::<Vec<_>>(),
            )
        }
    });
    Ok(hit.map(|entries| Pattern { entries }))
}

/// Splits the code by own-`t`-pattern possession. Word scans run in parallel;
/// the outcome is a pure function of the code, so scheduling cannot change it.
pub fn partition(code: &Code, t: usize) -> Result<PatternPartition, PatternError> {
    check_t(code, t)?;
    let own_flags: Vec<bool> = (0..code.size())
        .into_par_iter()
        .map(|index| {
            has_own_pattern(code, index, t)
                .expect("index and t validated")
                .is_some()
        })
        .collect();
    let (own_indices, rest_indices) = (0..code.size()).partition(|&i| own_flags[i]);
    Ok(PatternPartition {
        t,
        own_indices,
        rest_indices,
    })
}

/// Confirms the counting bound: the number of codewords with an own
/// `t`-pattern never exceeds `C(N,t) * q^t`. A `false` return signals a bug,
/// not a property of the input.
pub fn check_counting_bound(code: &Code, t: usize) -> Result<bool, PatternError> {
    let part = partition(code, t)?;
    let cap = binomial_big(code.length() as u64, t as u64)
        * BigUint::from(code.alphabet_size()).pow(t as u32);
    Ok(BigUint::from(part.own_indices().len()) <= cap)
}

/// Exhaustively confirms the distance bound for patternless codewords: in a
/// `w`-frameproof code, every codeword without an own `t`-pattern has
/// distance at least `(w-j)t + 1` to every set of `j <= w` other codewords.
///
/// The input must already verify `w`-frameproof; anything else is a contract
/// error. Enumeration is exhaustive over all `O(n^w)` tuples, intended for
/// desk-scale codes only.
pub fn check_distance_bound(code: &Code, w: usize, t: usize) -> Result<bool, PatternError> {
    check_t(code, t)?;
    if !verifier::is_frameproof(code, w).is_frameproof() {
        return Err(PatternError::NotFrameproof { w });
    }
    let part = partition(code, t)?;
    let n = code.size();
    for &framed in part.rest_indices() {
        let others: Vec<usize> = (0..n).filter(|&i| i != framed).collect();
        for j in 1..=w.min(others.len()) {
            let threshold = (w - j) * t + 1;
            let violated = find_combination(others.len(), j, |combo| {
                let members: Vec<usize> = combo.iter().map(|&k| others[k]).collect();
                let coalition = Coalition::new(members).expect("distinct indices");
                let d = verifier::distance(code, framed, &coalition)
                    .expect("validated indices");
                if d < threshold {
                    Some(())
                } else {
                    None
                }
            });
            if violated.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
