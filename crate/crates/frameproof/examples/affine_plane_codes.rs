//! Build binary frameproof codes from affine-plane incidence matrices.
//!
//! The plane of prime order r has r^2 points and r^2 + r lines with any two
//! lines meeting in at most one point; reading lines as codewords over the
//! point positions gives an (r^2, r^2+r, 2) code that is (r-1)-frameproof —
//! more codewords than positions.
//!
//! ```bash
//! cargo run --example affine_plane_codes
//! ```

use frameproof::constructions::affine_plane_code;
use frameproof::is_frameproof;
use std::time::Instant;

fn main() {
    for order in [2u32, 3, 5] {
        let code = affine_plane_code(order).unwrap();
        let w = (order as usize - 1).max(1);
        let started = Instant::now();
        let report = is_frameproof(&code, w);
        println!(
            "order {order}: ({}, {}, {}) code, {w}-frameproof = {} ({} ms exhaustive check)",
            code.length(),
            code.size(),
            code.alphabet_size(),
            report.is_frameproof(),
            started.elapsed().as_millis()
        );
    }

    match affine_plane_code(4) {
        Err(e) => println!("order 4 is rejected: {e}"),
        Ok(_) => unreachable!("only prime orders are supported"),
    }
}
