//! Cross-cutting invariants checked against independent oracles: the
//! descendant-set definition of frameproofness, distance monotonicity, the
//! patternless-count bound, and schedule independence of witnesses.

use std::collections::BTreeSet;

use rand::prelude::*;
use rand_chacha::ChaCha12Rng;

use frameproof::patterns::partition;
use frameproof::verifier::{self, Coalition};
use frameproof::Code;

fn random_code(rng: &mut ChaCha12Rng, n_len: usize, n: usize, q: u32) -> Option<Code> {
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|_| (0..n_len).map(|_| rng.random_range(0..q)).collect())
        .collect();
    Code::new(n_len, q, rows).ok()
}

fn subsets_up_to(pool: &[usize], max_size: usize, mut f: impl FnMut(&[usize])) {
    fn recurse(
        pool: &[usize],
        max_size: usize,
        start: usize,
        acc: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if !acc.is_empty() {
            f(acc);
        }
        if acc.len() == max_size {
            return;
        }
        for k in start..pool.len() {
            acc.push(pool[k]);
            recurse(pool, max_size, k + 1, acc, f);
            acc.pop();
        }
    }
    recurse(pool, max_size, 0, &mut Vec::new(), &mut f);
}

/// Materializes the full descendant set of a coalition: the cartesian product
/// of the per-position symbol sets.
fn materialize_descendants(code: &Code, members: &[usize]) -> BTreeSet<Vec<u32>> {
    let mut vectors: Vec<Vec<u32>> = vec![Vec::new()];
    for position in 0..code.length() {
        let symbols: BTreeSet<u32> = members
            .iter()
            .map(|&d| code.word(d).symbol(position))
            .collect();
        vectors = vectors
            .into_iter()
            .flat_map(|prefix| {
                symbols.iter().map(move |&s| {
                    let mut next = prefix.clone();
                    next.push(s);
                    next
                })
            })
            .collect();
    }
    vectors.into_iter().collect()
}

#[test]
fn distance_verdict_matches_descendant_set_definition() {
    let mut rng = ChaCha12Rng::seed_from_u64(404);
    let mut checked = 0;
    while checked < 60 {
        let n_len = rng.random_range(1..=6);
        let n = rng.random_range(1..=8);
        let q = rng.random_range(2..=3);
        let Some(code) = random_code(&mut rng, n_len, n, q) else {
            continue;
        };
        checked += 1;
        for w in 1..=3usize {
            // original definition: every coalition's descendant set meets the
            // code only in the coalition itself
            let indices: Vec<usize> = (0..code.size()).collect();
            let mut clean = true;
            subsets_up_to(&indices, w.min(code.size()), |members| {
                let descendants = materialize_descendants(&code, members);
                for (i, word) in code.words().iter().enumerate() {
                    if !members.contains(&i) && descendants.contains(word.symbols()) {
                        clean = false;
                    }
                }
            });
            assert_eq!(
                verifier::is_frameproof(&code, w).is_frameproof(),
                clean,
                "verdicts must agree (N={n_len}, n={n}, q={q}, w={w})"
            );
        }
    }
}

#[test]
fn descendant_count_matches_materialization() {
    let mut rng = ChaCha12Rng::seed_from_u64(405);
    let mut checked = 0;
    while checked < 40 {
        let n_len = rng.random_range(1..=5);
        let n = rng.random_range(2..=6);
        let q = rng.random_range(2..=3);
        let Some(code) = random_code(&mut rng, n_len, n, q) else {
            continue;
        };
        checked += 1;
        let members: Vec<usize> = (0..code.size().min(3)).collect();
        let coalition = Coalition::new(members.clone()).unwrap();
        let counted = verifier::descendant_count(&code, &coalition).unwrap();
        let materialized = materialize_descendants(&code, &members).len() as u128;
        assert_eq!(counted, materialized);
    }
}

#[test]
fn distance_is_monotone_under_coalition_growth() {
    let mut rng = ChaCha12Rng::seed_from_u64(406);
    let mut checked = 0;
    while checked < 50 {
        let n_len = rng.random_range(1..=6);
        let n = rng.random_range(3..=8);
        let q = rng.random_range(2..=3);
        let Some(code) = random_code(&mut rng, n_len, n, q) else {
            continue;
        };
        checked += 1;
        let framed = rng.random_range(0..code.size());
        let others: Vec<usize> = (0..code.size()).filter(|&i| i != framed).collect();
        let small_len = rng.random_range(1..others.len());
        let small = Coalition::new(others[..small_len].to_vec()).unwrap();
        let large = Coalition::new(others.clone()).unwrap();
        let d_small = verifier::distance(&code, framed, &small).unwrap();
        let d_large = verifier::distance(&code, framed, &large).unwrap();
        assert!(d_large <= d_small);
    }
}

#[test]
fn patternless_words_are_few_at_large_pattern_sizes() {
    // in a verified w-frameproof code, at most w codewords lack an own
    // t-pattern once t (w)(w-1)/2 exceeds N(q-1) - w
    let mut rng = ChaCha12Rng::seed_from_u64(407);
    let mut verified = 0;
    let mut attempts = 0;
    while verified < 40 && attempts < 4000 {
        attempts += 1;
        let n_len = rng.random_range(2..=7);
        let n = rng.random_range(3..=9);
        let q = rng.random_range(2..=3);
        let Some(code) = random_code(&mut rng, n_len, n, q) else {
            continue;
        };
        let w = 2usize;
        if !verifier::is_frameproof(&code, w).is_frameproof() {
            continue;
        }
        verified += 1;
        let pairs = w * (w - 1) / 2; // 1 for w = 2
        let cutoff = code.length() as i64 * (q as i64 - 1) - w as i64;
        for t in 1..=code.length() {
            if (t * pairs) as i64 > cutoff {
                let part = partition(&code, t).unwrap();
                assert!(
                    part.rest_indices().len() <= w,
                    "patternless count exceeds w at t={t}"
                );
            }
        }
    }
    assert!(verified >= 20, "sample must include verified codes");
}

#[test]
fn witnesses_are_schedule_independent() {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let quad = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(408);
    let mut disagreements_possible = 0;
    let mut checked = 0;
    while checked < 60 {
        let n_len = rng.random_range(2..=5);
        let n = rng.random_range(3..=8);
        let q = rng.random_range(2..=3);
        let Some(code) = random_code(&mut rng, n_len, n, q) else {
            continue;
        };
        checked += 1;
        for w in 1..=3usize {
            let a = single.install(|| verifier::is_frameproof(&code, w));
            let b = quad.install(|| verifier::is_frameproof(&code, w));
            let c = verifier::is_frameproof(&code, w);
            assert_eq!(a, b);
            assert_eq!(a, c);
            if !a.is_frameproof() {
                disagreements_possible += 1;
            }
        }
    }
    assert!(
        disagreements_possible > 0,
        "sample must include codes with witnesses"
    );
}
