//! Verify codes against coalitions of bounded size and inspect witnesses.
//!
//! ```bash
//! cargo run --example verify_code
//! ```

use frameproof::{is_frameproof, Coalition, Code};

fn main() {
    // the classic length-3 example: three weight-1 words plus the all-ones
    // word; no pair of codewords can frame a third
    let good = Code::parse("3 4 2\n1 0 0\n0 1 0\n0 0 1\n1 1 1").unwrap();
    let report = is_frameproof(&good, 2);
    println!(
        "({}, {}, {}) code, w = 2: frameproof = {}",
        good.length(),
        good.size(),
        good.alphabet_size(),
        report.is_frameproof()
    );

    // shrink the length and frameproofness breaks down
    let bad = Code::parse("2 3 2\n0 1\n1 0\n1 1").unwrap();
    let report = is_frameproof(&bad, 2);
    match report.witness() {
        Some(witness) => {
            let coalition: Vec<String> = witness
                .coalition
                .members()
                .iter()
                .map(|&i| bad.word(i).to_string())
                .collect();
            println!(
                "({}, {}, {}) code, w = 2: framed word [{}] lies in the descendant set of {{{}}}",
                bad.length(),
                bad.size(),
                bad.alphabet_size(),
                bad.word(witness.framed),
                coalition.join("}, {")
            );
        }
        None => println!("unexpectedly frameproof"),
    }

    // distances drive the verdict: a positive distance to every coalition of
    // at most w other words is exactly w-frameproofness
    let coalition = Coalition::new(vec![0, 1]).unwrap();
    let d = frameproof::distance(&good, 3, &coalition).unwrap();
    println!(
        "distance from [{}] to the first two codewords: {d}",
        good.word(3)
    );
}
