//! Extremal searches: the least binary length carrying more codewords than
//! positions, and exhaustive confirmations that shorter lengths cannot.
//!
//! ```bash
//! cargo run --example search_minimal_length
//! ```

use frameproof::binary::{confirm_no_excess_code, excess_length_window, search_nw};

fn main() {
    // minimal N with a (N, N+1, 2) 2-frameproof code
    match search_nw(2, 4).unwrap() {
        Some((n_len, witness)) => {
            println!("w = 2: least length with an excess code is N = {n_len}; witness:");
            for word in witness.words() {
                println!("  {word}");
            }
        }
        None => println!("w = 2: none up to the bound"),
    }

    // for w = 3 nothing exists up to length 5
    match search_nw(3, 5).unwrap() {
        None => println!("w = 3: no excess code up to length 5"),
        Some((n_len, _)) => println!("w = 3: unexpectedly found one at {n_len}"),
    }

    // exhaustive confirmations below the quadratic threshold
    for (w, n_len) in [(2usize, 2usize), (3, 4), (3, 5)] {
        let confirmed = confirm_no_excess_code(w, n_len).unwrap();
        println!("no ({n_len}, {}, 2) {w}-frameproof code: confirmed = {confirmed}", n_len + 1);
    }

    // the window bracketing the minimal excess length
    for w in 2..=6u64 {
        let (lower, upper) = excess_length_window(w);
        println!("w = {w}: minimal excess length lies in [{lower}, {upper}]");
    }
}
