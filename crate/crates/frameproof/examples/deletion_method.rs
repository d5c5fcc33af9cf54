//! The probabilistic construction: sample 2M codewords under the two-level
//! symbol distribution, delete every word framed by some coalition of w
//! others, keep the verified survivors.
//!
//! ```bash
//! cargo run --example deletion_method
//! ```

use frameproof::bounds::deletion_budget;
use frameproof::constructions::{
    deletion_method, optimize_distribution, RandomCodeParams, GENERATOR_NAME,
};

fn main() {
    let (n_len, q, w, target) = (20usize, 2u64, 2usize, 4usize);
    let budget = deletion_budget(n_len as u64, q, w as u64).unwrap();
    println!("admissible budget for N={n_len}, q={q}, w={w}: M < {budget:.4}");

    let choice = optimize_distribution(q, w as u64);
    println!(
        "sampling distribution: lambda = {:.4}, mu = {:.4}, coverage probability P = {:.4}",
        choice.lambda, choice.mu, choice.p
    );

    for seed in 0..4u64 {
        let params = RandomCodeParams::new(n_len, q, w, target, seed, 0).unwrap();
        match deletion_method(&params) {
            Ok(run) => println!(
                "seed {seed} ({GENERATOR_NAME}): drew {}, deleted {}, kept a verified ({}, {}, {}) {w}-frameproof code",
                run.sampled,
                run.deleted,
                run.code.length(),
                run.code.size(),
                run.code.alphabet_size(),
            ),
            Err(e) => println!("seed {seed}: {e}"),
        }
    }

    // a target above the budget is rejected up front
    match RandomCodeParams::new(6, 2, 2, 1, 0, 0) {
        Err(e) => println!("over-budget request: {e}"),
        Ok(_) => unreachable!("budget check must reject M = 1 at N = 6"),
    }
}
