//! t-pattern analysis: which codewords are pinned down by t of their
//! (position, symbol) pairs, and the distance guarantees for the rest.
//!
//! ```bash
//! cargo run --example pattern_analysis
//! ```

use frameproof::constructions::affine_plane_code;
use frameproof::patterns::{check_counting_bound, check_distance_bound, has_own_pattern, partition};
use frameproof::Code;

fn main() {
    let code = Code::parse("3 4 2\n1 0 0\n0 1 0\n0 0 1\n1 1 1").unwrap();
    for t in 1..=3 {
        let part = partition(&code, t).unwrap();
        println!(
            "t = {t}: {} words own a t-pattern, {} do not",
            part.own_indices().len(),
            part.rest_indices().len()
        );
    }

    // the first own 2-pattern of the all-ones word
    if let Some(pattern) = has_own_pattern(&code, 3, 2).unwrap() {
        let pairs: Vec<String> = pattern
            .entries()
            .iter()
            .map(|e| format!("({}, {})", e.position, e.symbol))
            .collect();
        println!("all-ones word is identified by {{{}}}", pairs.join(", "));
    }

    // the counting and distance bounds, checked exhaustively
    let affine = affine_plane_code(3).unwrap();
    for t in 1..=3 {
        assert!(check_counting_bound(&affine, t).unwrap());
    }
    println!("counting bound holds on the (9, 12, 2) affine code for t <= 3");
    assert!(check_distance_bound(&affine, 2, 1).unwrap());
    println!("distance bound (w-j)t+1 holds exhaustively at w = 2, t = 1");
}
