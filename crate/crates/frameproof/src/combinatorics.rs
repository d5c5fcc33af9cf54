//! Small enumeration and counting helpers shared across the crate.

use num_bigint::BigUint;
use num_traits::One;

/// Visits every k-subset of `{0, .., n-1}` as a sorted index slice, in
/// lexicographic order. Stops as soon as `f` returns `Some` and hands the
/// value back; returns `None` after the full enumeration otherwise.
pub(crate) fn find_combination<R>(
    n: usize,
    k: usize,
    mut f: impl FnMut(&[usize]) -> Option<R>,
) -> Option<R> {
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if let Some(r) = f(&idx) {
            return Some(r);
        }
        // advance to the next combination in lex order
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return None;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact binomial coefficient C(n, k).
pub(crate) fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// C(n, k) saturating at `u128::MAX`; used only for feasibility estimates.
pub(crate) fn binomial_saturating(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
