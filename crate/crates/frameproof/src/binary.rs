//! Binary-specific extremal analysis.
//!
//! Complementing the symbols of a row of the representation matrix preserves
//! frameproofness, so every binary code is equivalent to one in *standard
//! form*, where each row carries at most `n/2` ones. For lengths
//! `N < C(w+1, 2)` no binary `w`-frameproof code can have more than `N`
//! codewords, and at `n = N` the standard-form matrix must be a permutation
//! matrix. The exhaustive searches here confirm instances of that bound and
//! locate the minimal length admitting `N + 1` codewords.
//!
//! Candidate codes are enumerated as subsets of `{0,1}^N` that contain the
//! all-zero word: row complements map any code to such a subset, so this
//! prunes a factor of about `2^N / (N+1)` without losing anything. Witnesses
//! are still genuine codes and go through the verifier unchanged.

use rayon::prelude::*;
use thiserror::Error;

use crate::code::{Code, CodeError};
use crate::combinatorics::{binomial_saturating, find_combination};
use crate::verifier;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BinaryError {
    #[error("operation requires a binary code, got q = {0}")]
    NotBinary(u32),
    #[error("coalition bound w must be at least 2, got {0}")]
    SmallW(usize),
    #[error("length {n_len} is not below C(w+1, 2) = {threshold} for w = {w}")]
    LengthNotInRange {
        n_len: usize,
        w: usize,
        threshold: u64,
    },
    #[error("search guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("length {0} is degenerate: two-word codes are vacuously frameproof")]
    DegenerateLength(usize),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Hard limits on the exhaustive searches. The defaults keep runs at desk
/// scale; raise them deliberately when more is wanted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum code length (candidate words are packed in one machine word).
    pub max_length: usize,
    /// Maximum number of candidate codes a single search may enumerate.
    pub max_candidates: u128,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_length: 16,
            max_candidates: 200_000_000,
        }
    }
}

/// The `N x n` 0/1 matrix whose columns are the codewords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<Vec<bool>>,
}

impl RepresentationMatrix {
    pub fn from_code(code: &Code) -> Result<Self, BinaryError> {
        if code.alphabet_size() != 2 {
            return Err(BinaryError::NotBinary(code.alphabet_size()));
        }
        let rows = code.length();
        let cols = code.size();
        let bits = (0..rows)
            .map(|i| (0..cols).map(|j| code.word(j).symbol(i) == 1).collect())
            .collect();
        Ok(RepresentationMatrix { rows, cols, bits })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> bool {
        self.bits[row][col]
    }

    pub fn row_weight(&self, row: usize) -> usize {
        self.bits[row].iter().filter(|&&b| b).count()
    }
}

/// Complements exactly the rows with more than `n/2` ones; rows at exactly
/// `n/2` stay, which makes the output canonical. Idempotent, and equivalent
/// to the input code in the frameproof sense.
pub fn to_standard_form(code: &Code) -> Result<Code, BinaryError> {
    let matrix = RepresentationMatrix::from_code(code)?;
    let flips: Vec<bool> = (0..matrix.rows())
        .map(|i| 2 * matrix.row_weight(i) > matrix.cols())
        .collect();
    apply_row_complements(code, &flips)
}

/// Applies a 0/1 symbol swap to each selected row.
pub fn apply_row_complements(code: &Code, complement: &[bool]) -> Result<Code, BinaryError> {
    if code.alphabet_size() != 2 {
        return Err(BinaryError::NotBinary(code.alphabet_size()));
    }
    assert_eq!(
        complement.len(),
        code.length(),
        "one complement flag per row"
    );
    let rows: Vec<Vec<u32>> = code
        .words()
        .iter()
        .map(|word| {
            word.symbols()
                .iter()
                .zip(complement)
                .map(|(&s, &flip)| if flip { 1 - s } else { s })
                .collect()
        })
        .collect();
    Ok(Code::new(code.length(), 2, rows)?)
}

/// Invariance check: row-wise symbol permutations never change the frameproof
/// verdict. `false` would signal a bug, not a property of the input.
pub fn frameproofness_is_equivalence_invariant(
    code: &Code,
    w: usize,
    complement: &[bool],
) -> Result<bool, BinaryError> {
    let image = apply_row_complements(code, complement)?;
    Ok(verifier::is_frameproof(code, w).is_frameproof()
        == verifier::is_frameproof(&image, w).is_frameproof())
}

/// True when `n = N` and the standard form has exactly one 1 in every row and
/// every column, i.e. the matrix is a permutation matrix of order `N`.
pub fn is_permutation_matrix_form(code: &Code) -> Result<bool, BinaryError> {
    let standard = to_standard_form(code)?;
    let matrix = RepresentationMatrix::from_code(&standard)?;
    if matrix.rows() != matrix.cols() {
        return Ok(false);
    }
    let rows_ok = (0..matrix.rows()).all(|i| matrix.row_weight(i) == 1);
    let cols_ok = (0..matrix.cols()).all(|j| {
        (0..matrix.rows()).filter(|&i| matrix.entry(i, j)).count() == 1
    });
    Ok(rows_ok && cols_ok)
}

/// Packs position 0 into the most significant of `n_len` bits, so integer
/// order equals codeword lexicographic order.
fn int_to_word(value: u32, n_len: usize) -> Vec<u32> {
    (0..n_len)
        .map(|i| (value >> (n_len - 1 - i)) & 1)
        .collect()
}

fn guard(n_len: usize, limits: &SearchLimits) -> Result<(), BinaryError> {
    if n_len < 2 {
        // a length-1 binary code holds at most two distinct words, and any
        // two-word code is frameproof for every w because coalitions are
        // single codewords; the excess-code question is vacuous there
        return Err(BinaryError::DegenerateLength(n_len));
    }
    if n_len > limits.max_length {
        return Err(BinaryError::GuardExceeded(format!(
            "length {n_len} exceeds the limit of {}",
            limits.max_length
        )));
    }
    let candidates = binomial_saturating((1u64 << n_len) - 1, n_len as u64);
    if candidates > limits.max_candidates {
        return Err(BinaryError::GuardExceeded(format!(
            "about {candidates} candidate codes exceed the budget of {}",
            limits.max_candidates
        )));
    }
    Ok(())
}

/// Searches all binary codes of length `n_len` with `n_len + 1` codewords for
/// a `w`-frameproof one, up to row-complement equivalence: candidates contain
/// the zero word and `n_len` nonzero words. Returns the least witness in
/// codeword-lexicographic order, or `None`. First elements are scanned in
/// parallel; each scan is sequential and lexicographic, so the reduction is
/// schedule-independent.
fn find_excess_code(
    w: usize,
    n_len: usize,
    limits: &SearchLimits,
) -> Result<Option<Code>, BinaryError> {
    guard(n_len, limits)?;
    let nonzero: Vec<u32> = (1..(1u32 << n_len)).collect();
    let pick = n_len; // zero word plus n_len others gives n = N + 1
    let coalition_size = w.min(n_len);

    let violation_free = |words: &[u32]| -> bool {
        let n = words.len();
        for framed in 0..n {
            let others: Vec<usize> = (0..n).filter(|&i| i != framed).collect();
            let framed_word = words[framed];
            let hit = find_combination(others.len(), coalition_size, |combo| {
                let mut mask = u32::MAX;
                for &k in combo {
                    mask &= framed_word ^ words[others[k]];
                    if mask == 0 {
                        break;
                    }
                }
                if mask == 0 {
                    Some(())
                } else {
                    None
                }
            });
            if hit.is_some() {
                return false;
            }
        }
        true
    };

    let witness_int = (0..nonzero.len())
        .into_par_iter()
        .filter_map(|first| {
            // combinations of the remaining pool, lexicographic; the fixed
            // first element keeps global order intact
            let rest = &nonzero[first + 1..];
            if rest.len() + 1 < pick {
                return None;
            }
            let mut words = Vec::with_capacity(pick + 1);
            find_combination(rest.len(), pick - 1, |combo| {
                words.clear();
                words.push(0);
                words.push(nonzero[first]);
                words.extend(combo.iter().map(|&k| rest[k]));
                if violation_free(&words) {
                    Some(words.clone())
                } else {
                    None
                }
            })
        })
        .min();

    match witness_int {
        None => Ok(None),
        Some(words) => {
            let rows: Vec<Vec<u32>> = words.iter().map(|&v| int_to_word(v, n_len)).collect();
            let code = Code::new(n_len, 2, rows)?;
            let report = verifier::is_frameproof(&code, w);
            assert!(report.is_frameproof(), "witness must verify");
            Ok(Some(code))
        }
    }
}

/// Exhaustively confirms that no binary `w`-frameproof code of length
/// `n_len < C(w+1, 2)` has `n_len + 1` codewords. `true` is the expected
/// outcome on every in-range input; `false` would contradict the bound.
pub fn confirm_no_excess_code(w: usize, n_len: usize) -> Result<bool, BinaryError> {
    confirm_no_excess_code_with(w, n_len, &SearchLimits::default())
}

pub fn confirm_no_excess_code_with(
    w: usize,
    n_len: usize,
    limits: &SearchLimits,
) -> Result<bool, BinaryError> {
    if w < 2 {
        return Err(BinaryError::SmallW(w));
    }
    let threshold = (w as u64 + 1) * w as u64 / 2;
    if n_len as u64 >= threshold {
        return Err(BinaryError::LengthNotInRange {
            n_len,
            w,
            threshold,
        });
    }
    Ok(find_excess_code(w, n_len, limits)?.is_none())
}

/// Least length `N <= n_max` admitting a binary `w`-frameproof code with
/// `N + 1` codewords, with a verified witness. The scan starts at length 2:
/// the lone length-1 candidate `{0, 1}` is frameproof only vacuously and
/// does not count as an excess code.
pub fn search_nw(w: usize, n_max: usize) -> Result<Option<(usize, Code)>, BinaryError> {
    search_nw_with(w, n_max, &SearchLimits::default())
}

pub fn search_nw_with(
    w: usize,
    n_max: usize,
    limits: &SearchLimits,
) -> Result<Option<(usize, Code)>, BinaryError> {
    if w < 2 {
        return Err(BinaryError::SmallW(w));
    }
    for n_len in 2..=n_max {
        guard(n_len, limits)?;
    }
    for n_len in 2..=n_max {
        if let Some(code) = find_excess_code(w, n_len, limits)? {
            return Ok(Some((n_len, code)));
        }
    }
    Ok(None)
}

fn least_prime_at_least(n: u64) -> u64 {
    let is_prime = |m: u64| {
        if m < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    };
    let mut candidate = n.max(2);
    while !is_prime(candidate) {
        candidate += 1;
    }
    candidate
}

/// The concrete finite window `(C(w+1,2), r^2)` bracketing the minimal length
/// that admits more than `N` codewords: below `C(w+1,2)` none exists, and the
/// affine plane of the least prime `r >= w+1` provides an
/// `(r^2, r^2+r, 2)` code that is `w`-frameproof.
pub fn excess_length_window(w: u64) -> (u64, u64) {
    assert!(w >= 2, "w >= 2 required");
    let lower = (w + 1) * w / 2;
    let r = least_prime_at_least(w + 1);
    (lower, r * r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::affine_plane_code;
    use rand::prelude::*;
    use rand_chacha::ChaCha12Rng;

    fn code(text: &str) -> Code {
        Code::parse(text).unwrap()
    }

    #[test]
    fn standard_form_examples() {
        // both rows carry two ones over n = 3 and get complemented
        let c = code("2 3 2\n1 1\n1 0\n0 1");
        let std_form = to_standard_form(&c).unwrap();
        assert_eq!(std_form, code("2 3 2\n0 0\n0 1\n1 0"));

        // a row with exactly n/2 ones stays put
        let tie = code("1 2 2\n0\n1");
        assert_eq!(to_standard_form(&tie).unwrap(), tie);

        // idempotence
        let c = code("3 4 2\n1 0 0\n0 1 0\n0 0 1\n1 1 1");
        let once = to_standard_form(&c).unwrap();
        assert_eq!(to_standard_form(&once).unwrap(), once);

        let ternary = code("1 2 3\n0\n2");
        assert!(matches!(
            to_standard_form(&ternary),
            Err(BinaryError::NotBinary(3))
        ));
    }

    #[test]
    fn equivalence_preserves_verdict() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        // a frameproof input, a non-frameproof input, and random patterns
        let good = affine_plane_code(3).unwrap();
        let bad = code("2 3 2\n0 0\n0 1\n1 0");
        for sample in [&good, &bad] {
            for _ in 0..5 {
                let flips: Vec<bool> =
                    (0..sample.length()).map(|_| rng.random_bool(0.5)).collect();
                assert!(frameproofness_is_equivalence_invariant(sample, 2, &flips).unwrap());
            }
            let identity = vec![false; sample.length()];
            assert!(frameproofness_is_equivalence_invariant(sample, 2, &identity).unwrap());
        }
    }

    #[test]
    fn permutation_matrix_detection() {
        let identity4 = code("4 4 2\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1");
        assert!(is_permutation_matrix_form(&identity4).unwrap());

        // n = 4 > N = 3
        let excess = code("3 4 2\n1 0 0\n0 1 0\n0 0 1\n1 1 1");
        assert!(!is_permutation_matrix_form(&excess).unwrap());

        let identity3 = code("3 3 2\n1 0 0\n0 1 0\n0 0 1");
        assert!(is_permutation_matrix_form(&identity3).unwrap());

        // complement of a permutation matrix normalizes back to one
        let complemented = code("3 3 2\n0 1 1\n1 0 1\n1 1 0");
        assert!(is_permutation_matrix_form(&complemented).unwrap());
    }

    #[test]
    fn no_excess_code_small_instances() {
        assert!(confirm_no_excess_code(2, 2).unwrap());
        assert!(confirm_no_excess_code(3, 4).unwrap());
        // boundary: N = C(w+1,2) is out of range, and indeed a witness exists there
        assert!(matches!(
            confirm_no_excess_code(2, 3),
            Err(BinaryError::LengthNotInRange { .. })
        ));
        assert!(matches!(confirm_no_excess_code(1, 1), Err(BinaryError::SmallW(1))));
    }

    #[test]
    fn guard_rejects_oversized_searches() {
        assert!(matches!(
            confirm_no_excess_code(10, 30),
            Err(BinaryError::GuardExceeded(_))
        ));
        assert!(matches!(
            search_nw(5, 30),
            Err(BinaryError::GuardExceeded(_))
        ));
        let tight = SearchLimits {
            max_length: 16,
            max_candidates: 2,
        };
        assert!(matches!(
            confirm_no_excess_code_with(2, 2, &tight),
            Err(BinaryError::GuardExceeded(_))
        ));
        assert!(matches!(
            confirm_no_excess_code(2, 1),
            Err(BinaryError::DegenerateLength(1))
        ));
    }

    #[test]
    fn nw_search_finds_length_three_for_pairs() {
        let (n_len, witness) = search_nw(2, 4).unwrap().unwrap();
        assert_eq!(n_len, 3);
        assert_eq!(witness.size(), 4);
        assert!(verifier::is_frameproof(&witness, 2).is_frameproof());
        // the lexicographically least zero-containing witness: the even-weight code
        assert_eq!(witness.to_canonical_string(), "3 4 2\n0 0 0\n0 1 1\n1 0 1\n1 1 0\n");

        // nothing up to length 5 for w = 3
        assert_eq!(search_nw(3, 5).unwrap(), None);
    }

    #[test]
    fn excess_length_windows() {
        assert_eq!(excess_length_window(2), (3, 9));
        assert_eq!(excess_length_window(3), (6, 25));
        assert_eq!(excess_length_window(4), (10, 25));
    }

    #[test]
    fn standard_form_preserves_verdict_on_random_codes() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        let mut checked = 0;
        while checked < 30 {
            let n_len = rng.random_range(2..=5);
            let n = rng.random_range(2..=6);
            let rows: Vec<Vec<u32>> = (0..n)
                .map(|_| (0..n_len).map(|_| rng.random_range(0..2)).collect())
                .collect();
            let Ok(sample) = Code::new(n_len, 2, rows) else {
                continue;
            };
            checked += 1;
            let standard = to_standard_form(&sample).unwrap();
            for w in 1..=3 {
                assert_eq!(
                    verifier::is_frameproof(&sample, w).is_frameproof(),
                    verifier::is_frameproof(&standard, w).is_frameproof()
                );
            }
        }
    }
}
