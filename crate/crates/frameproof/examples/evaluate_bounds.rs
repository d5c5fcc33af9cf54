//! Evaluate the four cardinality bounds at chosen parameters.
//!
//! ```bash
//! cargo run --example evaluate_bounds
//! ```

use frameproof::bounds::{bound_report, BoundQuery, BoundValue};
use frameproof::cli::format_float;

fn show(value: &BoundValue) -> String {
    match value {
        BoundValue::Value(v) => format_float(*v),
        BoundValue::Inapplicable(reason) => format!("inapplicable ({reason})"),
    }
}

fn main() {
    for (n_len, q, w) in [(20, 2, 2), (300, 2, 25), (60, 3, 10), (12, 5, 3)] {
        let query = BoundQuery::new(n_len, q, w).unwrap();
        let report = bound_report(&query);
        println!("N = {n_len}, q = {q}, w = {w}");
        println!(
            "  classical upper ({}): {}",
            report.blackburn_caveat,
            show(&report.blackburn_upper)
        );
        println!("  combinatorial upper:    {}", format_float(report.new_upper));
        println!("  uniform-sampling lower: {}", format_float(report.st08_lower));
        println!("  two-level lower:        {}", show(&report.new_lower));
    }
}
