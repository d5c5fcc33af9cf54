//! Code model: `(N, n, q)` codes over the alphabet `{0, .., q-1}`,
//! corresponding sets, and the text file format.
//!
//! A code is an ordered collection of `n` pairwise-distinct codewords of
//! length `N`. Symbols are 0-based everywhere, including in files. All types
//! are immutable after construction and safe to share across threads.
//!
//! File format (UTF-8 text): a header line `N n q` followed by exactly `n`
//! rows of `N` space-separated symbols. Lines starting with `#` are comments
//! and may appear before the header and between rows; canonical output emits
//! no comments and ends with a trailing newline.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::{BufRead, Write};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("row {row}: expected {expected} symbols, found {found}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}, position {position}: symbol {symbol} not in alphabet of size {q}")]
    SymbolOutOfRange {
        row: usize,
        position: usize,
        symbol: u32,
        q: u32,
    },
    #[error("rows {first} and {second} are duplicate codewords")]
    DuplicateCodeword { first: usize, second: usize },
    #[error("header declares {declared} codewords, found {found} rows")]
    RowCountMismatch { declared: usize, found: usize },
    #[error("a code must contain at least one codeword")]
    Empty,
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(u32),
    #[error("code length must be at least 1")]
    ZeroLength,
    #[error("row {row}: bad symbol token {token:?}")]
    BadSymbol { row: usize, token: String },
    #[error("i/o error: {0}")]
    Io(String),
}

/// One codeword; symbols are validated against the owning [`Code`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    symbols: Vec<u32>,
}

impl Codeword {
    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn symbol(&self, position: usize) -> u32 {
        self.symbols[position]
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The set `{(i, c_i)}` of (position, symbol) pairs of this codeword.
    /// Its cardinality is always the code length, and distinct codewords
    /// have distinct corresponding sets.
    pub fn corresponding_set(&self) -> BTreeSet<PositionSymbol> {
        self.symbols
            .iter()
            .enumerate()
            .map(|(position, &symbol)| PositionSymbol { position, symbol })
            .collect()
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A (position, symbol) pair; the element type of corresponding sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositionSymbol {
    pub position: usize,
    pub symbol: u32,
}

/// An `(N, n, q)` code: `n` pairwise-distinct codewords of length `N` over
/// `{0, .., q-1}`. Codeword order is preserved; indices in reports refer to
/// load order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    length: usize,
    q: u32,
    words: Vec<Codeword>,
}

impl Code {
    /// Validates lengths, symbol ranges and pairwise distinctness. Duplicate
    /// rows are rejected rather than deduplicated: a duplicated word trivially
    /// breaks frameproofness and dropping rows would hide input errors.
    pub fn new(length: usize, q: u32, rows: Vec<Vec<u32>>) -> Result<Self, CodeError> {
        if length == 0 {
            return Err(CodeError::ZeroLength);
        }
        if q < 2 {
            return Err(CodeError::AlphabetTooSmall(q));
        }
        if rows.is_empty() {
            return Err(CodeError::Empty);
        }
        let mut seen: HashMap<&[u32], usize> = HashMap::with_capacity(rows.len());
        for (row, word) in rows.iter().enumerate() {
            if word.len() != length {
                return Err(CodeError::RowLength {
                    row,
                    expected: length,
                    found: word.len(),
                });
            }
            for (position, &symbol) in word.iter().enumerate() {
                if symbol >= q {
                    return Err(CodeError::SymbolOutOfRange {
                        row,
                        position,
                        symbol,
                        q,
                    });
                }
            }
            if let Some(&first) = seen.get(word.as_slice()) {
                return Err(CodeError::DuplicateCodeword { first, second: row });
            }
            seen.insert(word.as_slice(), row);
        }
        drop(seen);
        let words = rows.into_iter().map(|symbols| Codeword { symbols }).collect();
        Ok(Code { length, q, words })
    }

    /// Code length `N` (number of positions).
    pub fn length(&self) -> usize {
        self.length
    }

    /// Code size `n` (number of codewords).
    pub fn size(&self) -> usize {
        self.words.len()
    }

    /// Alphabet size `q`.
    pub fn alphabet_size(&self) -> u32 {
        self.q
    }

    pub fn words(&self) -> &[Codeword] {
        &self.words
    }

    pub fn word(&self, index: usize) -> &Codeword {
        &self.words[index]
    }

    /// Parses the text file format. Comment lines (`#`) and blank lines are
    /// skipped; the first remaining line must be the `N n q` header.
    pub fn parse(text: &str) -> Result<Self, CodeError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| CodeError::MalformedHeader("empty input".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(CodeError::MalformedHeader(format!(
                "expected `N n q`, got {header:?}"
            )));
        }
        let length: usize = fields[0]
            .parse()
            .map_err(|_| CodeError::MalformedHeader(format!("bad N {:?}", fields[0])))?;
        let declared: usize = fields[1]
            .parse()
            .map_err(|_| CodeError::MalformedHeader(format!("bad n {:?}", fields[1])))?;
        let q: u32 = fields[2]
            .parse()
            .map_err(|_| CodeError::MalformedHeader(format!("bad q {:?}", fields[2])))?;
        let mut rows = Vec::with_capacity(declared);
        for (row, line) in lines.enumerate() {
            let mut symbols = Vec::with_capacity(length);
            for token in line.split_whitespace() {
                let symbol: u32 = token.parse().map_err(|_| CodeError::BadSymbol {
                    row,
                    token: token.to_string(),
                })?;
                symbols.push(symbol);
            }
            rows.push(symbols);
        }
        if rows.len() != declared {
            return Err(CodeError::RowCountMismatch {
                declared,
                found: rows.len(),
            });
        }
        Code::new(length, q, rows)
    }

    pub fn from_reader(mut reader: impl BufRead) -> Result<Self, CodeError> {
        let mut text = String::new();
        reader
            .read_to_string(&mut text)
            .map_err(|e| CodeError::Io(e.to_string()))?;
        Code::parse(&text)
    }

    /// Canonical form: header, rows in stored order, single spaces, trailing
    /// newline, no comments. `Code::parse` round-trips this bit-exactly.
    pub fn to_canonical_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {} {}\n", self.length, self.words.len(), self.q));
        for word in &self.words {
            out.push_str(&word.to_string());
            out.push('\n');
        }
        out
    }

    pub fn write_to(&self, mut writer: impl Write) -> Result<(), CodeError> {
        writer
            .write_all(self.to_canonical_string().as_bytes())
            .map_err(|e| CodeError::Io(e.to_string()))
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}
