//! Hamming-ball combinatorics and decoding-radius formulas.
//!
//! Counts are arbitrary precision; radii are exact rationals produced by
//! bisection, so every comparison made here is exact.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::code::{hamming, Word};
use crate::error::{Error, Result};

/// Elementary-step budget for exhaustive enumeration of `F_q^n`.
pub const ENUMERATION_BUDGET: u64 = 100_000_000;

/// Largest pair distance handled by the coordinate-class fallback.
pub const STRUCTURED_MAX_DISTANCE: usize = 20;

/// `C(n, k)`, zero whenever `k < 0`, `k > n` or `n < 0`.
pub fn binom(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from((n - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    acc
}

/// `Vol_q(r, n) = Σ_{i≤r} C(n,i)(q−1)^i`.
pub fn ball_volume(q: u64, r: usize, n: usize) -> BigUint {
    let base = BigUint::from(q.saturating_sub(1));
    (0..=r.min(n))
        .map(|i| binom(n as i64, i as i64) * base.pow(i as u32))
        .sum()
}

/// Levenshtein's closed form for the largest intersection of two radius-t
/// balls whose centres are at distance d.
pub fn levenshtein_n(n: usize, q: u64, t: usize, d: usize) -> BigUint {
    let (n, t, d) = (n as i64, t as i64, d as i64);
    let outer_top = t - (d + 1) / 2;
    if outer_top < 0 {
        return BigUint::zero();
    }
    let q1 = BigUint::from(q - 1);
    let q2 = BigUint::from(q - 2);
    let mut total = BigUint::zero();
    for i in 0..=outer_top {
        let outer = binom(n - d, i) * q1.pow(i as u32);
        if outer.is_zero() {
            continue;
        }
        let lo = (d - t + i).max(0);
        let hi = t - i;
        let mut inner = BigUint::zero();
        for a in lo..=hi {
            for b in lo..=hi {
                let rest = d - a - b;
                if rest < 0 {
                    continue;
                }
                inner += binom(d, a) * binom(d - a, b) * q2.pow(rest as u32);
            }
        }
        total += outer * inner;
    }
    total
}

/// `hist[i][j]` = number of words z with `d(z,x) = i` and `d(z,y) = j`.
///
/// Exhaustive over `F_q^n` when that fits the budget, otherwise a
/// coordinate-by-coordinate convolution over agreement classes (z equal to
/// both, to x only, to y only, or to neither), restricted to pairs at
/// distance at most [`STRUCTURED_MAX_DISTANCE`].
pub fn intersection_histogram(q: u64, x: &Word, y: &Word) -> Result<Vec<Vec<BigUint>>> {
    let n = x.len();
    if y.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: y.len(),
        });
    }
    if q < 2 {
        return Err(Error::InvalidParameter(format!("q = {q}")));
    }
    if let Some(s) = x
        .symbols()
        .iter()
        .chain(y.symbols())
        .find(|s| s.index() as u64 >= q)
    {
        return Err(Error::ForeignSymbol {
            index: s.index(),
            q: q as u32,
        });
    }
    let steps = q
        .checked_pow(n as u32)
        .and_then(|v| v.checked_mul(n.max(1) as u64));
    match steps {
        Some(s) if s <= ENUMERATION_BUDGET => Ok(exhaustive_histogram(q, x, y)),
        _ => {
            let dxy = hamming(x.symbols(), y.symbols());
            if dxy > STRUCTURED_MAX_DISTANCE {
                return Err(Error::Budget(format!(
                    "q^n = {q}^{n} too large and d(x,y) = {dxy} > {STRUCTURED_MAX_DISTANCE}"
                )));
            }
            Ok(class_histogram(q, x, y))
        }
    }
}

fn exhaustive_histogram(q: u64, x: &Word, y: &Word) -> Vec<Vec<BigUint>> {
    let n = x.len();
    let xs = x.indices();
    let ys = y.indices();
    let mut counts = vec![vec![0u64; n + 1]; n + 1];
    let mut z = vec![0u32; n];
    loop {
        let dx = z.iter().zip(&xs).filter(|(a, b)| a != b).count();
        let dy = z.iter().zip(&ys).filter(|(a, b)| a != b).count();
        counts[dx][dy] += 1;
        let mut i = 0;
        loop {
            if i == n {
                return counts
                    .into_iter()
                    .map(|row| row.into_iter().map(BigUint::from).collect())
                    .collect();
            }
            z[i] += 1;
            if (z[i] as u64) < q {
                break;
            }
            z[i] = 0;
            i += 1;
        }
    }
}

fn class_histogram(q: u64, x: &Word, y: &Word) -> Vec<Vec<BigUint>> {
    let n = x.len();
    let mut hist = vec![vec![BigUint::zero(); n + 1]; n + 1];
    hist[0][0] = BigUint::one();
    let others = BigUint::from(q - 1);
    let neither = BigUint::from(q - 2);
    for (a, b) in x.symbols().iter().zip(y.symbols()) {
        let mut next = vec![vec![BigUint::zero(); n + 1]; n + 1];
        for i in 0..n {
            for j in 0..n {
                let c = &hist[i][j];
                if c.is_zero() {
                    continue;
                }
                if a == b {
                    next[i][j] += c;
                    next[i + 1][j + 1] += c * &others;
                } else {
                    next[i][j + 1] += c;
                    next[i + 1][j] += c;
                    next[i + 1][j + 1] += c * &neither;
                }
            }
        }
        hist = next;
    }
    hist
}

/// Sums a histogram from [`intersection_histogram`] over the radius-t box.
pub fn histogram_count(hist: &[Vec<BigUint>], t: usize) -> BigUint {
    hist.iter()
        .take(t + 1)
        .flat_map(|row| row.iter().take(t + 1))
        .sum()
}

/// `|B_t(x) ∩ B_t(y)|` by direct enumeration; the test oracle for
/// [`levenshtein_n`].
pub fn intersection_oracle(q: u64, x: &Word, y: &Word, t: usize) -> Result<BigUint> {
    Ok(histogram_count(&intersection_histogram(q, x, y)?, t))
}

/// Both sides of `Σ C(a_i+1, 2) = C(c+1, 2) − ½ Σ a_i (c − a_i)`, `c = Σ a_i`.
pub fn triangular_identity_sides(a: &[u64]) -> Result<(BigInt, BigInt)> {
    if a.is_empty() || a.contains(&0) {
        return Err(Error::InvalidParameter(
            "expected a nonempty sequence of positive integers".into(),
        ));
    }
    let c: BigInt = a.iter().map(|&v| BigInt::from(v)).sum();
    let pair = |v: &BigInt| v * (v + 1u32) / 2u32;
    let lhs: BigInt = a.iter().map(|&v| pair(&BigInt::from(v))).sum();
    let cross: BigInt = a
        .iter()
        .map(|&v| BigInt::from(v) * (&c - BigInt::from(v)))
        .sum();
    debug_assert!((&cross % 2u32).is_zero());
    let rhs = pair(&c) - cross / 2u32;
    Ok((lhs, rhs))
}

/// Which decoding-radius curve to evaluate.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum RadiusMode {
    /// Two reads found by a linear scan (pair distance at least ℓ).
    Linear,
    /// Two reads found by an exhaustive pair search (distance at least 2ℓ−1).
    Quadratic,
    /// Single-read list decoding, `1 − √(R(1+ε))`.
    Johnson,
}

impl std::str::FromStr for RadiusMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(RadiusMode::Linear),
            "quadratic" => Ok(RadiusMode::Quadratic),
            "johnson" => Ok(RadiusMode::Johnson),
            other => Err(Error::InvalidParameter(format!("unknown mode {other:?}"))),
        }
    }
}

/// Parses a plain decimal such as `0.0001` or `3` into an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidParameter(format!("not a decimal number: {s:?}"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let denom = BigInt::from(10u32).pow(frac.len() as u32);
    let r = BigRational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(numer.into(), denom.into())
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Largest dyadic lower bound of `√x` found by bisection down to `tol`.
pub fn sqrt_rational(x: &BigRational, tol: &BigRational) -> Result<BigRational> {
    if x.is_negative() {
        return Err(Error::InvalidParameter(format!(
            "negative radicand {}",
            to_f64(x)
        )));
    }
    let mut lo = BigRational::zero();
    let mut hi = if x > &BigRational::one() {
        x.clone()
    } else {
        BigRational::one()
    };
    let two = BigRational::from_integer(2.into());
    while &(&hi - &lo) > tol {
        let mid = (&lo + &hi) / &two;
        if &(&mid * &mid) <= x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Finite-length radius bound `1 − √((k/n)(1 − ℓ/(2n) + ε))` (linear) or
/// `1 − √((k/n)(1 − ℓ/n + ε))` (quadratic), within 10⁻¹². Johnson mode
/// ignores ℓ.
pub fn radius_bound(
    n: usize,
    k: usize,
    ell: usize,
    epsilon: &BigRational,
    mode: RadiusMode,
) -> Result<BigRational> {
    if !epsilon.is_positive() {
        return Err(Error::InvalidParameter("epsilon must be positive".into()));
    }
    if k < 2 || k > n || ell > n {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= k <= n and ell <= n (n={n}, k={k}, ell={ell})"
        )));
    }
    let rate = rational(k as i64, n as i64);
    let slack = match mode {
        RadiusMode::Linear => rational(ell as i64, 2 * n as i64),
        RadiusMode::Quadratic => rational(ell as i64, n as i64),
        RadiusMode::Johnson => BigRational::zero(),
    };
    let radicand = rate * (BigRational::one() - slack + epsilon);
    let tol = rational(1, 1_000_000_000_000);
    Ok(BigRational::one() - sqrt_rational(&radicand, &tol)?)
}

/// Bisection steps for [`asymptotic_radius`]; 2⁻³² < 10⁻⁹.
const RADIUS_BISECTION_STEPS: u32 = 32;

/// Largest ρ in [0, 1) with `ρ ≤ 1 − √(R(A − cρ))` for the mode's (A, c),
/// returned as a lower end of a bracket of width 2⁻³².
///
/// The inequality is squared into `(1−ρ)² − R(A − cρ) ≥ 0`, a convex
/// quadratic negative at ρ = 1, so the admissible set in [0, 1) is an
/// interval starting at 0 and the bisection is exact. Returns 0 when no ρ
/// qualifies.
pub fn asymptotic_radius(
    rate: &BigRational,
    epsilon: &BigRational,
    mode: RadiusMode,
) -> Result<BigRational> {
    let one = BigRational::one();
    if !rate.is_positive() || rate >= &one {
        return Err(Error::InvalidParameter("rate must lie in (0, 1)".into()));
    }
    if epsilon.is_negative() {
        return Err(Error::InvalidParameter("epsilon must be >= 0".into()));
    }
    let (offset, slope) = match mode {
        RadiusMode::Johnson => (epsilon.clone(), BigRational::zero()),
        RadiusMode::Linear => ((&one - rate) / rational(4, 1) + epsilon, rational(1, 2)),
        RadiusMode::Quadratic => ((&one - rate) / rational(2, 1) + epsilon, one.clone()),
    };
    let a = &one + offset;
    let admissible = |rho: &BigRational| {
        let gap = &one - rho;
        &gap * &gap - rate * (&a - &slope * rho) >= BigRational::zero()
    };
    let mut lo = BigRational::zero();
    if !admissible(&lo) {
        return Ok(lo);
    }
    let mut hi = one.clone();
    let two = rational(2, 1);
    for _ in 0..RADIUS_BISECTION_STEPS {
        let mid = (&lo + &hi) / &two;
        if admissible(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Code and channel parameters of a reconstruction instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionParams {
    pub n: usize,
    pub q: u64,
    pub k: usize,
    pub d: usize,
    pub t: usize,
    /// Unique-decoding radius `⌊(d−1)/2⌋`.
    pub e: usize,
    /// Excess `t − e`.
    pub ell: usize,
    /// `N_{n,q}(t, d) + 1`.
    pub n_required: BigUint,
}

impl ReconstructionParams {
    pub fn new(n: usize, q: u64, k: usize, t: usize) -> Result<Self> {
        if k < 1 || k > n || t > n || q < 2 {
            return Err(Error::InvalidParameter(format!(
                "invalid parameters n={n}, q={q}, k={k}, t={t}"
            )));
        }
        let d = n - k + 1;
        let e = (d - 1) / 2;
        if t < e {
            return Err(Error::InvalidParameter(format!(
                "t = {t} is below the unique-decoding radius {e}"
            )));
        }
        Ok(ReconstructionParams {
            n,
            q,
            k,
            d,
            t,
            e,
            ell: t - e,
            n_required: levenshtein_n(n, q, t, d) + 1u32,
        })
    }

    /// Whether ℓ < d/2, the regime where a far pair at distance 2ℓ−1 is
    /// guaranteed (for odd d).
    pub fn far_pair_guaranteed(&self) -> bool {
        self.d % 2 == 1 && 2 * self.ell < self.d
    }
}

/// `N_{n,q}(t, d) + 1` reads suffice for unique reconstruction.
pub fn required_reads(params: &ReconstructionParams) -> BigUint {
    levenshtein_n(params.n, params.q, params.t, params.d) + 1u32
}
