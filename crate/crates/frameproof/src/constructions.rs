//! Code constructions.
//!
//! Two routes to concrete frameproof codes:
//!
//! * the incidence matrix of an affine plane of prime order `r` yields an
//!   `(r^2, r^2+r, 2)` code that is `(r-1)`-frameproof, because two lines
//!   share at most one point;
//! * sampling `2M` random codewords under a two-level symbol distribution
//!   and deleting the framed word of every violating pair leaves a verified
//!   `w`-frameproof code, with more than `M` expected survivors whenever `M`
//!   stays below the admissible budget.
//!
//! Planes are built for prime orders only, by arithmetic mod `r`. Sampling
//! uses a fixed, named generator (ChaCha12) with an explicit 64-bit seed;
//! equal seeds give bit-identical output regardless of thread count.

use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::bounds::{self, ratio_to_f64};
use crate::code::{Code, CodeError};
use crate::combinatorics::find_combination;
use crate::verifier;

/// Stable name of the sampling generator, recorded in file provenance.
pub const GENERATOR_NAME: &str = "chacha12";

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("order {0} is not prime; only prime-order planes are supported")]
    UnsupportedOrder(u32),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(
        "target size {target} exceeds the admissible budget {budget:.6} for N={n_len}, q={q}, w={w}"
    )]
    BudgetExceeded {
        target: usize,
        budget: f64,
        n_len: usize,
        q: u64,
        w: usize,
    },
    #[error("construction failed after {attempts} attempts: best run kept {best_size} of the {target} requested codewords")]
    RetriesExhausted {
        attempts: u32,
        target: usize,
        best_size: usize,
        best: Option<Code>,
    },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// The affine plane AG(2, r) for prime `r`: `r^2` points and `r^2 + r` lines,
/// `r` points per line, one line through any two distinct points.
#[derive(Debug, Clone)]
pub struct AffinePlane {
    order: u32,
    points: Vec<(u32, u32)>,
    lines: Vec<Vec<usize>>,
}

impl AffinePlane {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// All points `(x, y)` over the integers mod `r`, indexed as `x*r + y`.
    pub fn points(&self) -> &[(u32, u32)] {
        &self.points
    }

    /// Lines as sorted point-index sets: first the `r^2` lines
    /// `y = m x + b`, then the `r` vertical lines `x = c`.
    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds AG(2, r) and asserts its defining incidence properties.
pub fn affine_plane(order: u32) -> Result<AffinePlane, ConstructionError> {
    if !is_prime(order) {
        return Err(ConstructionError::UnsupportedOrder(order));
    }
    let r = order as usize;
    let points: Vec<(u32, u32)> = (0..order)
        .flat_map(|x| (0..order).map(move |y| (x, y)))
        .collect();
    let mut lines = Vec::with_capacity(r * r + r);
    for slope in 0..order {
        for intercept in 0..order {
            let line: Vec<usize> = (0..order)
                .map(|x| {
                    let y = (slope * x + intercept) % order;
                    (x * order + y) as usize
                })
                .collect();
            lines.push(line);
        }
    }
    for x in 0..order {
        lines.push((0..order).map(|y| (x * order + y) as usize).collect());
    }

    for line in &lines {
        assert_eq!(line.len(), r, "every line carries exactly r points");
    }
    // one common line through every point pair
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            let through = lines
                .iter()
                .filter(|line| line.contains(&a) && line.contains(&b))
                .count();
            assert_eq!(through, 1, "points {a} and {b} lie on {through} lines");
        }
    }

    Ok(AffinePlane {
        order,
        points,
        lines,
    })
}

/// The binary code whose representation matrix is the point-line incidence
/// matrix of AG(2, r): positions are points, codewords are lines. The result
/// is an `(r^2, r^2+r, 2)` code in which two codewords share at most one
/// common 1, hence it is `(r-1)`-frameproof.
pub fn affine_plane_code(order: u32) -> Result<Code, ConstructionError> {
    let plane = affine_plane(order)?;
    let n_len = plane.points().len();
    let rows: Vec<Vec<u32>> = plane
        .lines()
        .iter()
        .map(|line| {
            let mut word = vec![0u32; n_len];
            for &p in line {
                word[p] = 1;
            }
            word
        })
        .collect();
    // two lines meet in at most one point
    for a in 0..rows.len() {
        for b in a + 1..rows.len() {
            let common = rows[a]
                .iter()
                .zip(&rows[b])
                .filter(|(x, y)| **x == 1 && **y == 1)
                .count();
            assert!(common <= 1, "columns {a} and {b} share {common} ones");
        }
    }
    Ok(Code::new(n_len, 2, rows)?)
}

/// Parameters of the probabilistic construction. `target_size` is the `M` of
/// the budget `M < 2^(-(w+1)/w) * P^(-N/w)`; `2M` codewords are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomCodeParams {
    n_len: usize,
    q: u64,
    w: usize,
    target_size: usize,
    seed: u64,
    retry_limit: u32,
}

impl RandomCodeParams {
    pub fn new(
        n_len: usize,
        q: u64,
        w: usize,
        target_size: usize,
        seed: u64,
        retry_limit: u32,
    ) -> Result<Self, ConstructionError> {
        if n_len == 0 || target_size == 0 {
            return Err(ConstructionError::InvalidParams(
                "N and M must be at least 1".into(),
            ));
        }
        if q < 2 || w < 2 {
            return Err(ConstructionError::InvalidParams(
                "q >= 2 and w >= 2 required".into(),
            ));
        }
        if q > w as u64 + 1 {
            return Err(ConstructionError::InvalidParams(format!(
                "the two-level distribution requires q <= w + 1, got q = {q}, w = {w}"
            )));
        }
        let budget = bounds::deletion_budget(n_len as u64, q, w as u64)
            .expect("parameters validated above");
        if target_size as f64 >= budget {
            return Err(ConstructionError::BudgetExceeded {
                target: target_size,
                budget,
                n_len,
                q,
                w,
            });
        }
        Ok(RandomCodeParams {
            n_len,
            q,
            w,
            target_size,
            seed,
            retry_limit,
        })
    }

    pub fn n_len(&self) -> usize {
        self.n_len
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn retry_limit(&self) -> u32 {
        self.retry_limit
    }

    fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// A raw sample of codewords, drawn independently with repetition: duplicates
/// stay until deletion turns the survivors into a [`Code`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodewordSample {
    n_len: usize,
    q: u64,
    seed: u64,
    words: Vec<Vec<u32>>,
}

impl CodewordSample {
    pub fn words(&self) -> &[Vec<u32>] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Draws `2M` codewords, coordinatewise i.i.d.: the distinguished symbol
/// `q-1` has probability `1 - (q-1)/(w+1)` and every other symbol has
/// probability `1/(w+1)`. Sampling a uniform integer in `{0, .., w}` and
/// clamping anything at or above `q-1` onto the distinguished symbol realizes
/// those weights exactly.
pub fn random_code(params: &RandomCodeParams) -> CodewordSample {
    let mut rng = ChaCha12Rng::seed_from_u64(params.seed);
    let draws = 2 * params.target_size;
    let cutoff = (params.q - 1) as usize;
    let words = (0..draws)
        .map(|_| {
            (0..params.n_len)
                .map(|_| {
                    let k = rng.random_range(0..=params.w);
                    if k < cutoff {
                        k as u32
                    } else {
                        cutoff as u32
                    }
                })
                .collect()
        })
        .collect();
    CodewordSample {
        n_len: params.n_len,
        q: params.q,
        seed: params.seed,
        words,
    }
}

/// Result of a successful deletion run.
#[derive(Debug, Clone)]
pub struct DeletionRun {
    pub code: Code,
    /// Seed of the successful attempt (initial seed plus retries).
    pub seed: u64,
    pub attempts: u32,
    pub sampled: usize,
    pub deleted: usize,
}

fn deletion_attempt(params: &RandomCodeParams) -> (Option<Code>, usize, usize) {
    let sample = random_code(params);
    let total = sample.len();
    let coalition_size = params.w.min(total - 1);
    let words = sample.words();

    let mut framed = vec![false; total];
    for c in 0..total {
        let others: Vec<usize> = (0..total).filter(|&i| i != c).collect();
        let hit = find_combination(others.len(), coalition_size, |combo| {
            let covered = (0..params.n_len).all(|i| {
                combo
                    .iter()
                    .any(|&k| words[others[k]][i] == words[c][i])
            });
            if covered {
                Some(())
            } else {
                None
            }
        });
        framed[c] = hit.is_some();
    }

    let survivors: Vec<Vec<u32>> = (0..total)
        .filter(|&i| !framed[i])
        .map(|i| words[i].clone())
        .collect();
    let deleted = total - survivors.len();
    if survivors.is_empty() {
        return (None, total, deleted);
    }
    let code = Code::new(params.n_len, params.q as u32, survivors)
        .expect("surviving codewords are pairwise distinct");
    // post-verification is a contract, not an assumption
    let report = verifier::is_frameproof(&code, params.w);
    assert!(
        report.is_frameproof(),
        "deletion survivors must verify {}-frameproof",
        params.w
    );
    (Some(code), total, deleted)
}

/// The deletion construction: sample `2M` words, frame every word at distance
/// zero from some coalition of `w` others, drop all framed words at once, and
/// verify the survivors. When a word is framed by several coalitions it is
/// deleted once. Retries with seed+1 until at least `M` words survive or the
/// retry limit is exhausted; the error then carries the best attempt.
///
/// Violating-pair enumeration is exhaustive, so the cost grows like
/// `(2M)^(w+1)`; this is a desk-scale construction.
pub fn deletion_method(params: &RandomCodeParams) -> Result<DeletionRun, ConstructionError> {
    let mut best: Option<Code> = None;
    let mut attempts = 0;
    for attempt in 0..=params.retry_limit {
        attempts += 1;
        let seed = params.seed.wrapping_add(attempt as u64);
        let run = params.with_seed(seed);
        let (code, sampled, deleted) = deletion_attempt(&run);
        if let Some(code) = code {
            if code.size() >= params.target_size {
                return Ok(DeletionRun {
                    code,
                    seed,
                    attempts,
                    sampled,
                    deleted,
                });
            }
            if best.as_ref().is_none_or(|b| code.size() > b.size()) {
                best = Some(code);
            }
        }
    }
    Err(ConstructionError::RetriesExhausted {
        attempts,
        target: params.target_size,
        best_size: best.as_ref().map_or(0, Code::size),
        best,
    })
}

/// The sampling distribution recommendation for `(q, w)`: the two-level
/// choice when `q <= w + 1`, the uniform distribution otherwise, together
/// with the coverage probability `P` it induces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionChoice {
    pub lambda: f64,
    pub mu: f64,
    pub p: f64,
}

/// Closed-form distribution choice, cross-checked against a grid search with
/// step 1e-4. For the two-level branch the grid maximizes the per-symbol term
/// `p (1-p)^w` whose maximizer `1/(w+1)` is what the closed form builds on;
/// for the uniform branch it maximizes the full objective
/// `sum_j p_j (1-p_j)^w` over two-level distributions.
pub fn optimize_distribution(q: u64, w: u64) -> DistributionChoice {
    assert!(q >= 2 && w >= 2, "q >= 2 and w >= 2 required");
    const STEP: f64 = 1e-4;
    const TOLERANCE: f64 = 1e-6;
    let symbol_term = |p: f64| p * (1.0 - p).powi(w as i32);
    if q <= w + 1 {
        let (lambda, mu) = bounds::two_level_choice(q, w);
        let (lambda, mu) = (ratio_to_f64(&lambda), ratio_to_f64(&mu));
        let p = bounds::success_probability(lambda, mu, q, w)
            .expect("two-level choice satisfies constraints");
        let mut grid_best = f64::NEG_INFINITY;
        let mut candidate = 0.0;
        while candidate <= 1.0 {
            grid_best = grid_best.max(symbol_term(candidate));
            candidate += STEP;
        }
        assert!(
            (symbol_term(mu) - grid_best).abs() <= TOLERANCE,
            "closed-form mu must match the grid optimum of p(1-p)^w"
        );
        DistributionChoice { lambda, mu, p }
    } else {
        let uniform = 1.0 / q as f64;
        let p = bounds::success_probability(uniform, uniform, q, w)
            .expect("uniform distribution satisfies constraints");
        let objective = |lambda: f64| {
            let mu = (1.0 - lambda) / (q - 1) as f64;
            symbol_term(lambda) + (q - 1) as f64 * symbol_term(mu)
        };
        let mut grid_best = f64::NEG_INFINITY;
        let mut candidate = 0.0;
        while candidate <= 1.0 {
            grid_best = grid_best.max(objective(candidate));
            candidate += STEP;
        }
        assert!(
            objective(uniform) >= grid_best - TOLERANCE,
            "uniform must match the two-level grid optimum when q > w + 1"
        );
        DistributionChoice {
            lambda: uniform,
            mu: uniform,
            p,
        }
    }
}
