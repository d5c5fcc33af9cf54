//! Exact brute-force frameproof verification.
//!
//! A code is `w`-frameproof when every codeword keeps positive distance to
//! every coalition of at most `w` other codewords, where the distance counts
//! the positions whose symbol appears in no coalition member. Growing a
//! coalition can only lower the distance, so it suffices to enumerate
//! coalitions of size exactly `min(w, n-1)`; this is an invisible
//! optimization, results are identical to the full enumeration.
//!
//! For binary codes of length at most 64, codewords are packed into machine
//! words: the positions escaping a coalition `D` from a word `c` are exactly
//! the bits set in `AND_{d in D} (c XOR d)`, so a distance-zero test is a
//! handful of word operations.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::code::Code;
use crate::combinatorics::find_combination;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifierError {
    #[error("coalition must be non-empty")]
    EmptyCoalition,
    #[error("coalition contains duplicate index {0}")]
    DuplicateMember(usize),
    #[error("codeword index {index} out of range (n = {n})")]
    WordIndexOutOfRange { index: usize, n: usize },
    #[error("position {position} out of range (N = {n_len})")]
    PositionOutOfRange { position: usize, n_len: usize },
    #[error("framed codeword {0} may not belong to the coalition")]
    FramedInCoalition(usize),
    #[error("descendant count exceeds 128-bit arithmetic")]
    CountOverflow,
}

/// A non-empty set of codeword indices, kept sorted and distinct.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coalition {
    members: Vec<usize>,
}

impl Coalition {
    pub fn new(mut members: Vec<usize>) -> Result<Self, VerifierError> {
        if members.is_empty() {
            return Err(VerifierError::EmptyCoalition);
        }
        members.sort_unstable();
        for pair in members.windows(2) {
            if pair[0] == pair[1] {
                return Err(VerifierError::DuplicateMember(pair[0]));
            }
        }
        Ok(Coalition { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    fn check_against(&self, code: &Code) -> Result<(), VerifierError> {
        let n = code.size();
        match self.members.last() {
            Some(&max) if max >= n => Err(VerifierError::WordIndexOutOfRange { index: max, n }),
            _ => Ok(()),
        }
    }
}

/// Outcome of a frameproof verification: either clean, or the least witness of
/// a framed codeword. The witness is present exactly when the code fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameproofReport {
    w: usize,
    checked_size: usize,
    witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub framed: usize,
    pub coalition: Coalition,
}

impl FrameproofReport {
    pub fn is_frameproof(&self) -> bool {
        self.witness.is_none()
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    /// The coalition bound `w` that was tested.
    pub fn coalition_bound(&self) -> usize {
        self.w
    }

    /// The coalition size actually enumerated, `min(w, n-1)`.
    pub fn checked_coalition_size(&self) -> usize {
        self.checked_size
    }
}

/// Symbols appearing at `position` among the coalition members.
pub fn descendant_symbols(
    code: &Code,
    coalition: &Coalition,
    position: usize,
) -> Result<BTreeSet<u32>, VerifierError> {
    coalition.check_against(code)?;
    if position >= code.length() {
        return Err(VerifierError::PositionOutOfRange {
            position,
            n_len: code.length(),
        });
    }
    Ok(coalition
        .members()
        .iter()
        .map(|&d| code.word(d).symbol(position))
        .collect())
}

/// Number of positions of codeword `framed` whose symbol appears in no
/// coalition member. Equals the cardinality of the framed word's
/// corresponding set minus the union of the coalition's corresponding sets.
pub fn distance(code: &Code, framed: usize, coalition: &Coalition) -> Result<usize, VerifierError> {
    coalition.check_against(code)?;
    if framed >= code.size() {
        return Err(VerifierError::WordIndexOutOfRange {
            index: framed,
            n: code.size(),
        });
    }
    let word = code.word(framed);
    let mut escaped = 0;
    for position in 0..code.length() {
        let symbol = word.symbol(position);
        let covered = coalition
            .members()
            .iter()
            .any(|&d| code.word(d).symbol(position) == symbol);
        if !covered {
            escaped += 1;
        }
    }
    Ok(escaped)
}

/// Size of the descendant set of the coalition: the product over positions of
/// the number of distinct symbols there. Counted, never materialized.
pub fn descendant_count(code: &Code, coalition: &Coalition) -> Result<u128, VerifierError> {
    coalition.check_against(code)?;
    let mut total: u128 = 1;
    for position in 0..code.length() {
        let distinct = descendant_symbols(code, coalition, position)?.len() as u128;
        total = total
            .checked_mul(distinct)
            .ok_or(VerifierError::CountOverflow)?;
    }
    Ok(total)
}

/// Binary fast path: one machine word per codeword, position `i` at bit
/// `N-1-i` so that integer order equals codeword lexicographic order.
fn pack_binary(code: &Code) -> Option<Vec<u64>> {
    if code.alphabet_size() != 2 || code.length() > 64 {
        return None;
    }
    let n_len = code.length();
    Some(
        code.words()
            .iter()
            .map(|w| {
                w.symbols()
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, &s)| acc | ((s as u64) << (n_len - 1 - i)))
            })
            .collect(),
    )
}

fn framed_by_generic(code: &Code, framed: usize, members: &[usize]) -> bool {
    for position in 0..code.length() {
        let symbol = code.word(framed).symbol(position);
        if !members
            .iter()
            .any(|&d| code.word(d).symbol(position) == symbol)
        {
            return false;
        }
    }
    true
}

/// Exhaustive verification. On failure the returned witness is the least one:
/// smallest framed index first, then the smallest coalition in sorted-tuple
/// order. Framed indices are scanned in parallel; each scan enumerates its
/// coalitions in lexicographic order, so the reduction below is
/// schedule-independent.
pub fn is_frameproof(code: &Code, w: usize) -> FrameproofReport {
    assert!(w >= 1, "coalition bound w must be at least 1");
    let n = code.size();
    if n == 1 {
        // no admissible (c, D) pair
        return FrameproofReport {
            w,
            checked_size: 0,
            witness: None,
        };
    }
    let size = w.min(n - 1);
    let packed = pack_binary(code);

    let witness = (0..n)
        .into_par_iter()
        .filter_map(|framed| {
            let others: Vec<usize> = (0..n).filter(|&i| i != framed).collect();
            let hit = match &packed {
                Some(bits) => find_combination(others.len(), size, |combo| {
                    let mut mask = u64::MAX;
                    for &k in combo {
                        mask &= bits[framed] ^ bits[others[k]];
                        if mask == 0 {
                            break;
                        }
                    }
                    if mask == 0 {
                        Some(combo.iter().map(|&k| others[k]).collect::<Vec<_>>())
                    } else {
                        None
                    }
                }),
                None => find_combination(others.len(), size, |combo| {
                    let members: Vec<usize> = combo.iter().map(|&k| others[k]).collect();
                    if framed_by_generic(code, framed, &members) {
                        Some(members)
                    } else {
                        None
                    }
                }),
            };
            hit.map(|members| Witness {
                framed,
                coalition: Coalition::new(members).expect("combination indices are distinct"),
            })
        })
        .min_by_key(|witness| witness.framed);

    if let Some(w) = &witness {
        debug_assert!(!w.coalition.contains(w.framed));
        debug_assert_eq!(distance(code, w.framed, &w.coalition), Ok(0));
    }
    FrameproofReport {
        w,
        checked_size: size,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha12Rng;

    fn code(text: &str) -> Code {
        Code::parse(text).unwrap()
    }

    fn coalition(members: &[usize]) -> Coalition {
        Coalition::new(members.to_vec()).unwrap()
    }

    #[test]
    fn coalition_validation() {
        assert_eq!(
            Coalition::new(vec![]).unwrap_err(),
            VerifierError::EmptyCoalition
        );
        assert_eq!(
            Coalition::new(vec![2, 1, 2]).unwrap_err(),
            VerifierError::DuplicateMember(2)
        );
        assert_eq!(coalition(&[3, 1]).members(), &[1, 3]);
    }

    #[test]
    fn descendant_symbols_examples() {
        // D = {(1,0,0), (0,1,0)}
        let c = code("3 3 2\n1 0 0\n0 1 0\n0 0 1");
        let d = coalition(&[0, 1]);
        let at = |i| descendant_symbols(&c, &d, i).unwrap();
        assert_eq!(at(0), [0, 1].into_iter().collect());
        assert_eq!(at(2), [0].into_iter().collect());
        assert_eq!(at(1).len(), 2);
        assert!(matches!(
            descendant_symbols(&c, &d, 3),
            Err(VerifierError::PositionOutOfRange { position: 3, .. })
        ));
    }

    #[test]
    fn distance_examples() {
        // c = (0,1,2), D = {(0,0,0), (1,1,1)} over q = 3: only position 2 escapes
        let c = code("3 3 3\n0 1 2\n0 0 0\n1 1 1");
        assert_eq!(distance(&c, 0, &coalition(&[1, 2])).unwrap(), 1);
        // c in D gives distance 0
        assert_eq!(distance(&c, 1, &coalition(&[1, 2])).unwrap(), 0);
        // disjoint symbols: c = (1,1,1), D = {(0,0,0)}
        assert_eq!(distance(&c, 2, &coalition(&[1])).unwrap(), 3);
        assert!(matches!(
            distance(&c, 9, &coalition(&[0])),
            Err(VerifierError::WordIndexOutOfRange { index: 9, .. })
        ));
    }

    #[test]
    fn descendant_count_examples() {
        let c = code("3 2 2\n1 0 0\n0 1 0");
        assert_eq!(descendant_count(&c, &coalition(&[0, 1])).unwrap(), 4);
        assert_eq!(descendant_count(&c, &coalition(&[0])).unwrap(), 1);
        // full binary cube on N = 2
        let cube = code("2 4 2\n0 0\n0 1\n1 0\n1 1");
        assert_eq!(descendant_count(&cube, &coalition(&[0, 1, 2, 3])).unwrap(), 4);
    }

    #[test]
    fn frameproof_positive_example() {
        // the weight-1 rows plus all-ones: 2-frameproof, exhibits N(2) = 3
        let c = code("3 4 2\n1 0 0\n0 1 0\n0 0 1\n1 1 1");
        let report = is_frameproof(&c, 2);
        assert!(report.is_frameproof());
        assert_eq!(report.checked_coalition_size(), 2);
    }

    #[test]
    fn frameproof_negative_example_with_least_witness() {
        let c = code("2 3 2\n0 1\n1 0\n1 1");
        let report = is_frameproof(&c, 2);
        assert!(!report.is_frameproof());
        let witness = report.witness().unwrap();
        assert_eq!(witness.framed, 2);
        assert_eq!(witness.coalition.members(), &[0, 1]);
    }

    #[test]
    fn single_word_vacuous() {
        let c = code("2 1 3\n0 2");
        assert!(is_frameproof(&c, 5).is_frameproof());
    }

    #[test]
    fn generic_path_matches_packed_path() {
        // force the generic path by checking a q = 3 embedding of binary data
        let mut rng = ChaCha12Rng::seed_from_u64(99);
        for _ in 0..40 {
            let n_len = rng.random_range(2..=5);
            let n = rng.random_range(2..=6);
            let rows: Vec<Vec<u32>> = (0..n)
                .map(|_| (0..n_len).map(|_| rng.random_range(0..2)).collect())
                .collect();
            let Ok(binary) = Code::new(n_len, 2, rows.clone()) else {
                continue;
            };
            let widened = Code::new(n_len, 3, rows).unwrap();
            for w in 1..=3 {
                let a = is_frameproof(&binary, w);
                let b = is_frameproof(&widened, w);
                assert_eq!(a.is_frameproof(), b.is_frameproof());
                assert_eq!(a.witness(), b.witness());
            }
        }
    }

    #[test]
    fn monotone_in_w() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..30 {
            let n_len = rng.random_range(2..=5);
            let n = rng.random_range(2..=7);
            let q = rng.random_range(2..=3);
            let rows: Vec<Vec<u32>> = (0..n)
                .map(|_| (0..n_len).map(|_| rng.random_range(0..q)).collect())
                .collect();
            let Ok(code) = Code::new(n_len, q, rows) else {
                continue;
            };
            let mut prev = true;
            for w in 1..=4 {
                let now = is_frameproof(&code, w).is_frameproof();
                // frameproof at w implies frameproof at every smaller bound
                assert!(prev || !now);
                prev = now;
            }
        }
    }
}
