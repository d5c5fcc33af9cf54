//! Evaluation of the four cardinality bounds and the comparison predicates
//! behind the reference tables.
//!
//! For an `(N, n, q)` `w`-frameproof code the toolkit evaluates:
//!
//! * `blackburn_upper_leading`: `(N / (N - (t-1)*ceil(N/w))) * q^ceil(N/w)`
//!   with `t` in `{1, .., w}`, `t = N mod w`; the lower-order term of the
//!   original statement is omitted and reports carry that caveat.
//! * `new_upper`: `q^(ceil(N(q-1)/C(w,2)) * log_q(e*q*C(w,2)/(q-1))) + w`,
//!   equivalently `B^k + w` for `B = e*q*C(w,2)/(q-1)`; both routes are
//!   exposed and must agree to 1e-9 relative.
//! * `st08_lower`: `(1 - 1/w!) * (q^w / (q^w - (q-1)^w))^(N/w)`.
//! * `new_lower` (for `q <= w+1`): `2^(-(w+1)/w) * (1/P)^(N/w)` where `P` is
//!   the coalition-coverage probability at the two-level distribution
//!   `lambda = 1 - (q-1)/(w+1)`, `mu = 1/(w+1)`.
//!
//! Inequality predicates are decided exactly: pure big-rational arithmetic
//! where possible, and a rational interval enclosure of `e` where the
//! comparison involves `e` and logarithms. Bound *values* are `f64` and only
//! meant for human comparison.

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type BigRational = Ratio<BigInt>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("inapplicable: {0}")]
    Inapplicable(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Parameters of a bound evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundQuery {
    pub n_len: u64,
    pub q: u64,
    pub w: u64,
}

impl BoundQuery {
    pub fn new(n_len: u64, q: u64, w: u64) -> Result<Self, BoundsError> {
        if n_len == 0 {
            return Err(BoundsError::InvalidQuery("N must be at least 1".into()));
        }
        if q < 2 {
            return Err(BoundsError::InvalidQuery("q must be at least 2".into()));
        }
        if w < 2 {
            return Err(BoundsError::InvalidQuery("w must be at least 2".into()));
        }
        Ok(BoundQuery { n_len, q, w })
    }
}

/// A bound value, or the reason it does not apply at this query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundValue {
    Value(f64),
    Inapplicable(&'static str),
}

impl BoundValue {
    pub fn value(&self) -> Option<f64> {
        match self {
            BoundValue::Value(v) => Some(*v),
            BoundValue::Inapplicable(_) => None,
        }
    }
}

pub const BLACKBURN_CAVEAT: &str = "leading term only; O(q^(ceil(N/w)-1)) omitted";

/// All four bounds at one query, with applicability flags.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub query: BoundQuery,
    pub blackburn_upper: BoundValue,
    pub blackburn_caveat: &'static str,
    pub new_upper: f64,
    pub st08_lower: f64,
    pub new_lower: BoundValue,
}

pub fn bound_report(query: &BoundQuery) -> BoundReport {
    let blackburn_upper = match blackburn_upper_leading(query) {
        Ok(v) => BoundValue::Value(v),
        Err(BoundsError::Inapplicable(reason)) => BoundValue::Inapplicable(reason),
        Err(e) => unreachable!("validated query: {e}"),
    };
    let new_lower = match new_lower(query) {
        Ok(v) => BoundValue::Value(v),
        Err(BoundsError::Inapplicable(reason)) => BoundValue::Inapplicable(reason),
        Err(e) => unreachable!("validated query: {e}"),
    };
    BoundReport {
        query: *query,
        blackburn_upper,
        blackburn_caveat: BLACKBURN_CAVEAT,
        new_upper: new_upper(query),
        st08_lower: st08_lower(query),
        new_lower,
    }
}

fn binom2(w: u64) -> u64 {
    w * (w - 1) / 2
}

/// Leading term of the classical upper bound.
pub fn blackburn_upper_leading(query: &BoundQuery) -> Result<f64, BoundsError> {
    let (n, q, w) = (query.n_len, query.q, query.w);
    let t = if n % w == 0 { w } else { n % w };
    let ceil = n.div_ceil(w);
    let denom = n as i128 - (t as i128 - 1) * ceil as i128;
    if denom <= 0 {
        return Err(BoundsError::Inapplicable(
            "degenerate denominator N - (t-1)*ceil(N/w)",
        ));
    }
    Ok(n as f64 / denom as f64 * (q as f64).powi(ceil as i32))
}

fn new_upper_exponent(query: &BoundQuery) -> u64 {
    (query.n_len * (query.q - 1)).div_ceil(binom2(query.w))
}

fn new_upper_base(query: &BoundQuery) -> f64 {
    std::f64::consts::E * query.q as f64 * binom2(query.w) as f64 / (query.q - 1) as f64
}

/// The combinatorial upper bound, evaluated in the literal
/// `q^(k * log_q B)` form.
pub fn new_upper(query: &BoundQuery) -> f64 {
    let k = new_upper_exponent(query) as f64;
    let base = new_upper_base(query);
    let q = query.q as f64;
    q.powf(k * base.ln() / q.ln()) + query.w as f64
}

/// Same bound through the algebraically equal `B^k` route; the two routes
/// cross-check each other.
pub fn new_upper_base_route(query: &BoundQuery) -> f64 {
    let k = new_upper_exponent(query);
    new_upper_base(query).powf(k as f64) + query.w as f64
}

/// The probabilistic lower bound with uniformly random codewords. The
/// factorial is exact; only the final exponentiation is floating point.
pub fn st08_lower(query: &BoundQuery) -> f64 {
    let (n, q, w) = (query.n_len, query.q, query.w);
    let mut factorial = BigUint::one();
    for i in 2..=w {
        factorial *= BigUint::from(i);
    }
    let coeff = BigRational::one()
        - BigRational::new(BigInt::one(), BigInt::from(factorial));
    let qw = BigInt::from(q).pow(w as u32);
    let q1w = BigInt::from(q - 1).pow(w as u32);
    let base = BigRational::new(qw.clone(), qw - q1w);
    ratio_to_f64(&coeff) * ratio_to_f64(&base).powf(n as f64 / w as f64)
}

/// The two-level distribution of the probabilistic construction:
/// `lambda = 1 - (q-1)/(w+1)` for the distinguished symbol and
/// `mu = 1/(w+1)` for each of the other `q-1` symbols. A probability
/// distribution only for `q <= w + 2`; the construction uses `q <= w + 1`.
pub fn two_level_choice(q: u64, w: u64) -> (BigRational, BigRational) {
    let lambda = BigRational::one()
        - BigRational::new(BigInt::from(q - 1), BigInt::from(w + 1));
    let mu = BigRational::new(BigInt::one(), BigInt::from(w + 1));
    (lambda, mu)
}

/// Probability that one fixed position of a random codeword is covered by a
/// random coalition of `w` codewords: `lambda(1-(1-lambda)^w) +
/// (q-1)mu(1-(1-mu)^w)`. Exact-rational form.
pub fn success_probability_exact(
    lambda: &BigRational,
    mu: &BigRational,
    q: u64,
    w: u64,
) -> Result<BigRational, BoundsError> {
    let one = BigRational::one();
    if lambda < &BigRational::zero() || lambda > &one || mu < &BigRational::zero() || mu > &one {
        return Err(BoundsError::Precondition(
            "lambda and mu must lie in [0, 1]".into(),
        ));
    }
    if lambda.clone() + BigRational::from(BigInt::from(q - 1)) * mu.clone() != one {
        return Err(BoundsError::Precondition(
            "lambda + (q-1) mu must equal 1".into(),
        ));
    }
    let w = w as i32;
    let lam_term = lambda * &(BigRational::one() - (BigRational::one() - lambda).pow(w));
    let mu_term = BigRational::from(BigInt::from(q - 1))
        * mu
        * (BigRational::one() - (BigRational::one() - mu).pow(w));
    Ok(lam_term + mu_term)
}

/// Floating-point variant of [`success_probability_exact`]; the probability
/// constraint is checked to 1e-12.
pub fn success_probability(lambda: f64, mu: f64, q: u64, w: u64) -> Result<f64, BoundsError> {
    if !(0.0..=1.0).contains(&lambda) || !(0.0..=1.0).contains(&mu) {
        return Err(BoundsError::Precondition(
            "lambda and mu must lie in [0, 1]".into(),
        ));
    }
    if (lambda + (q - 1) as f64 * mu - 1.0).abs() > 1e-12 {
        return Err(BoundsError::Precondition(
            "lambda + (q-1) mu must equal 1".into(),
        ));
    }
    let w = w as i32;
    Ok(lambda * (1.0 - (1.0 - lambda).powi(w)) + (q - 1) as f64 * mu * (1.0 - (1.0 - mu).powi(w)))
}

/// Coverage probability at the two-level choice, exact.
pub fn two_level_success_probability(q: u64, w: u64) -> BigRational {
    let (lambda, mu) = two_level_choice(q, w);
    success_probability_exact(&lambda, &mu, q, w).expect("two-level choice satisfies constraints")
}

/// The probabilistic lower bound at the two-level distribution; requires
/// `q <= w + 1`.
pub fn new_lower(query: &BoundQuery) -> Result<f64, BoundsError> {
    let (n, q, w) = (query.n_len, query.q, query.w);
    if q > w + 1 {
        return Err(BoundsError::Inapplicable("requires q <= w + 1"));
    }
    let p = ratio_to_f64(&two_level_success_probability(q, w));
    let factor = 2f64.powf(-((w + 1) as f64) / w as f64);
    Ok(factor * (1.0 / p).powf(n as f64 / w as f64))
}

/// Largest admissible sample target for the deletion construction; equals the
/// lower-bound value itself.
pub fn deletion_budget(n_len: u64, q: u64, w: u64) -> Result<f64, BoundsError> {
    new_lower(&BoundQuery::new(n_len, q, w)?)
}

/// Strict comparison deciding when the two-level distribution beats the
/// uniform one: `(1-a) a^w + a (w/(w+1))^w > ((q-1)/q)^w` for
/// `a = (q-1)/(w+1)`. Exact rationals; requires `q <= w + 1`.
pub fn table2_predicate(q: u64, w: u64) -> Result<bool, BoundsError> {
    if q < 2 || w < 2 {
        return Err(BoundsError::Precondition("q >= 2 and w >= 2 required".into()));
    }
    if q > w + 1 {
        return Err(BoundsError::Precondition(format!(
            "q <= w + 1 required, got q = {q}, w = {w}"
        )));
    }
    let a = BigRational::new(BigInt::from(q - 1), BigInt::from(w + 1));
    let w_ratio = BigRational::new(BigInt::from(w), BigInt::from(w + 1));
    let lhs = (BigRational::one() - &a) * a.clone().pow(w as i32)
        + &a * w_ratio.pow(w as i32);
    let rhs = BigRational::new(BigInt::from(q - 1), BigInt::from(q)).pow(w as i32);
    Ok(lhs > rhs)
}

/// The simplified sufficient inequality behind the large-`w` regime:
/// `(q-1)/(w+1) * (w/(w+1))^w > ((q-1)/q)^w` for `w >= 8`, `2 <= q <= w/2+1`.
/// Exact rationals.
pub fn appendix_inequality(q: u64, w: u64) -> Result<bool, BoundsError> {
    if w < 8 {
        return Err(BoundsError::Precondition(format!("w >= 8 required, got {w}")));
    }
    if q < 2 || 2 * q > w + 2 {
        return Err(BoundsError::Precondition(format!(
            "2 <= q <= w/2 + 1 required, got q = {q}, w = {w}"
        )));
    }
    let coeff = BigRational::new(BigInt::from(q - 1), BigInt::from(w + 1));
    let lhs = coeff * BigRational::new(BigInt::from(w), BigInt::from(w + 1)).pow(w as i32);
    let rhs = BigRational::new(BigInt::from(q - 1), BigInt::from(q)).pow(w as i32);
    Ok(lhs > rhs)
}

/// Rational enclosure of `e` from partial sums of `sum 1/i!`; the tail after
/// `terms` is below `2/(terms+1)!`.
fn e_interval(terms: u32) -> (BigRational, BigRational) {
    let mut factorial = BigUint::one();
    let mut lo = BigRational::one();
    for i in 1..=terms {
        factorial *= BigUint::from(i);
        lo += BigRational::new(BigInt::one(), BigInt::from(factorial.clone()));
    }
    let next = factorial * BigUint::from(terms + 1);
    let hi = &lo + BigRational::new(BigInt::from(2), BigInt::from(next));
    (lo, hi)
}

/// Decides `e^k * r^k < q^m` exactly. A wide-margin `f64` comparison settles
/// clear cases; anything inside the guard band falls back to the rational
/// enclosure of `e`, refined until it separates the two sides.
fn exp_inequality_holds(k: u64, r: &BigRational, m: u64, q: u64) -> bool {
    let lhs_log = k as f64 * (1.0 + ratio_to_f64(r).ln());
    let rhs_log = m as f64 * (q as f64).ln();
    let margin = 1e-9 * (lhs_log.abs() + rhs_log.abs() + 1.0);
    if (rhs_log - lhs_log).abs() > margin {
        return lhs_log < rhs_log;
    }
    let k32 = u32::try_from(k).expect("exponent fits u32");
    let m32 = u32::try_from(m).expect("exponent fits u32");
    let r_pow = r.pow(k32 as i32);
    let rhs = BigRational::from(BigInt::from(q).pow(m32));
    for terms in [32u32, 64, 128, 256, 512] {
        let (lo, hi) = e_interval(terms);
        if hi.pow(k32 as i32) * &r_pow < rhs {
            return true;
        }
        if lo.pow(k32 as i32) * &r_pow >= rhs {
            return false;
        }
    }
    unreachable!("rational enclosure of e failed to separate the comparison")
}

/// Rate-form comparison of the two upper bounds, the large-`N` limit of the
/// ceiling form: `((q-1)/C(w,2)) * log_q(e q C(w,2)/(q-1)) < 1/w`.
pub fn table1_rate_predicate(q: u64, w: u64) -> Result<bool, BoundsError> {
    if q < 2 || w < 2 {
        return Err(BoundsError::Precondition("q >= 2 and w >= 2 required".into()));
    }
    // cleared of logarithms: e^k * r^k < q^C with k = (q-1) w, r = q C/(q-1)
    let c2 = binom2(w);
    let k = (q - 1) * w;
    let r = BigRational::new(BigInt::from(q * c2), BigInt::from(q - 1));
    Ok(exp_inequality_holds(k, &r, c2, q))
}

/// Length-dependent ceiling form of the same comparison:
/// `ceil(N(q-1)/C(w,2)) * log_q(e q C(w,2)/(q-1)) < ceil(N/w)`.
pub fn table1_predicate_at(n_len: u64, q: u64, w: u64) -> Result<bool, BoundsError> {
    if n_len == 0 || q < 2 || w < 2 {
        return Err(BoundsError::Precondition(
            "N >= 1, q >= 2 and w >= 2 required".into(),
        ));
    }
    let c2 = binom2(w);
    let k = (n_len * (q - 1)).div_ceil(c2);
    let m = n_len.div_ceil(w);
    let r = BigRational::new(BigInt::from(q * c2), BigInt::from(q - 1));
    Ok(exp_inequality_holds(k, &r, m, q))
}

/// Which improvement predicate a threshold scan runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TablePredicate {
    Table1Rate,
    Table2,
}

fn predicate_holds(which: TablePredicate, q: u64, w: u64) -> bool {
    match which {
        TablePredicate::Table1Rate => table1_rate_predicate(q, w).unwrap_or(false),
        TablePredicate::Table2 => {
            q <= w + 1 && table2_predicate(q, w).unwrap_or(false)
        }
    }
}

/// Stable threshold of a predicate on `[2, w_max]`: the onset of the final
/// all-true suffix. This guards against non-monotone flips; a plain first
/// `true` could sit inside an island.
pub fn find_min_w(q: u64, which: TablePredicate, w_max: u64) -> Option<u64> {
    if w_max < 2 || !predicate_holds(which, q, w_max) {
        return None;
    }
    let mut w = w_max;
    while w > 2 && predicate_holds(which, q, w - 1) {
        w -= 1;
    }
    Some(w)
}

/// Minimal `w` per alphabet size at which the combinatorial upper bound
/// improves on the classical one, as published.
pub const TABLE1_REFERENCE: [(u64, u64); 12] = [
    (2, 25),
    (3, 33),
    (4, 42),
    (5, 51),
    (6, 51),
    (7, 60),
    (8, 68),
    (9, 77),
    (10, 94),
    (11, 102),
    (12, 110),
    (13, 118),
];

/// Minimal `w` per alphabet size at which the two-level lower bound improves
/// on the uniform one, as published.
pub const TABLE2_REFERENCE: [(u64, u64); 6] =
    [(2, 5), (3, 7), (4, 8), (5, 8), (40, 49), (41, 50)];

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    // Ratio::to_f64 is None only outside f64 range, which desk-scale
    // queries never reach; fall back to a sign-correct infinity.
    r.to_f64().unwrap_or(if r.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}
