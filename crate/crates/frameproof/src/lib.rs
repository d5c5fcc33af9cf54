//! Toolkit for `w`-frameproof fingerprinting codes: exact brute-force
//! verification with witnesses, pattern analyses, bound evaluation and
//! comparison, affine-plane and probabilistic constructions, and binary
//! extremal searches.
//!
//! Start with the runnable examples (`cargo run --example <name>`) or the
//! `frameproof` command-line tool.

pub mod binary;
pub mod bounds;
pub mod cli;
pub mod code;
pub mod constructions;
pub mod patterns;
pub mod verifier;

mod combinatorics;

pub use code::{Code, CodeError, Codeword, PositionSymbol};
pub use verifier::{distance, is_frameproof, Coalition, FrameproofReport, VerifierError, Witness};
