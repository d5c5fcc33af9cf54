//! The code file format: parse, validate, and round-trip.
//!
//! ```bash
//! cargo run --example code_files
//! ```

use frameproof::{Code, CodeError};

fn main() {
    // header `N n q`, then n rows of N symbols; `#` lines are comments
    let text = "# a hand-written example\n3 4 2\n1 0 0\n0 1 0\n# comments may sit between rows\n0 0 1\n1 1 1\n";
    let code = Code::parse(text).unwrap();
    println!(
        "parsed a ({}, {}, {}) code",
        code.length(),
        code.size(),
        code.alphabet_size()
    );

    // canonical output carries no comments and round-trips bit-exactly
    let canonical = code.to_canonical_string();
    print!("{canonical}");
    assert_eq!(Code::parse(&canonical).unwrap(), code);

    // validation: rows must be distinct, symbols within the alphabet
    match Code::parse("2 2 2\n0 1\n0 1") {
        Err(CodeError::DuplicateCodeword { first, second }) => {
            println!("duplicate rows rejected (rows {first} and {second})")
        }
        other => println!("unexpected: {other:?}"),
    }
    match Code::parse("2 1 2\n0 5") {
        Err(CodeError::SymbolOutOfRange { symbol, q, .. }) => {
            println!("symbol {symbol} rejected against alphabet size {q}")
        }
        other => println!("unexpected: {other:?}"),
    }

    // corresponding sets: the (position, symbol) view of a codeword
    let pairs: Vec<String> = code
        .word(0)
        .corresponding_set()
        .iter()
        .map(|e| format!("({}, {})", e.position, e.symbol))
        .collect();
    println!("corresponding set of the first word: {{{}}}", pairs.join(", "));
}
