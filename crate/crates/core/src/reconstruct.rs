//! Reconstruction decoders over a set of distinct reads.
//!
//! The two-read decoder is the linear-time path: pick the first read, scan
//! once for the read farthest from it, build the multiplicity matrix from
//! that pair, list-decode and filter the list against every read. The
//! remaining decoders (exhaustive pair search, brute force, single-read list
//! decoding) exist for comparison and as oracles.

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::code::{hamming, RsCode, Word};
use crate::error::{Error, Result};
use crate::field::Symbol;
use crate::kv::{interpolate_with_plan, y_roots};
use crate::multiplicity::{threshold_check_with_cost, MultiplicityMatrix};

/// Largest codebook the exhaustive decoders will scan.
pub const BRUTE_FORCE_BUDGET: u64 = 1_000_000;

/// Distinct equal-length reads, each assumed within distance `t` of the
/// transmitted codeword.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadSet {
    reads: Vec<Word>,
    t: usize,
}

impl ReadSet {
    pub fn new(reads: Vec<Word>, t: usize) -> Result<Self> {
        let n = match reads.first() {
            Some(r) => r.len(),
            None => return Err(Error::ReadSet("at least one read is required".into())),
        };
        if let Some(bad) = reads.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        if t > n {
            return Err(Error::ReadSet(format!("radius t = {t} exceeds n = {n}")));
        }
        let mut seen = HashSet::with_capacity(reads.len());
        for (i, r) in reads.iter().enumerate() {
            if !seen.insert(r) {
                return Err(Error::ReadSet(format!("read {i} is a duplicate")));
            }
        }
        Ok(ReadSet { reads, t })
    }

    pub fn reads(&self) -> &[Word] {
        &self.reads
    }

    pub fn len(&self) -> usize {
        self.reads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reads.is_empty()
    }

    pub fn n(&self) -> usize {
        self.reads[0].len()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Largest pairwise distance, by exhaustive comparison.
    pub fn max_pairwise_distance(&self) -> usize {
        let mut best = 0;
        for (i, a) in self.reads.iter().enumerate() {
            for b in &self.reads[i + 1..] {
                best = best.max(hamming(a.symbols(), b.symbols()));
            }
        }
        best
    }

    /// Whether `c` lies within `t` of every read.
    pub fn consistent_with(&self, c: &Word) -> bool {
        self.reads
            .iter()
            .all(|y| y.len() == c.len() && hamming(y.symbols(), c.symbols()) <= self.t)
    }

    fn validate_for(&self, code: &RsCode) -> Result<()> {
        for r in &self.reads {
            r.validate(code.field(), code.n())?;
        }
        Ok(())
    }
}

/// Which decoder produced a report.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    TwoReads,
    MaxPair,
    BruteForce,
    SingleRead,
    /// `reconstruct_core` called with a caller-chosen subset.
    Subset,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::TwoReads => "two-reads",
            Strategy::MaxPair => "max-pair",
            Strategy::BruteForce => "brute",
            Strategy::SingleRead => "single-list",
            Strategy::Subset => "subset",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A pair of reads chosen to seed the multiplicity matrix.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PairSelection {
    pub first: usize,
    pub second: usize,
    pub distance: usize,
    /// Symbol comparisons spent on the search.
    pub comparisons: u64,
}

/// First read and the read farthest from it (earliest index on ties).
/// Costs exactly `n·(|Y|−1)` symbol comparisons.
pub fn find_far_read(y: &ReadSet) -> Result<PairSelection> {
    if y.len() < 2 {
        return Err(Error::ReadSet(
            "pair selection needs at least two reads".into(),
        ));
    }
    let u = y.reads[0].symbols();
    let mut best = (0, 0);
    for (i, r) in y.reads.iter().enumerate().skip(1) {
        let d = hamming(u, r.symbols());
        if d > best.1 || best.0 == 0 {
            best = (i, d);
        }
    }
    Ok(PairSelection {
        first: 0,
        second: best.0,
        distance: best.1,
        comparisons: (y.n() * (y.len() - 1)) as u64,
    })
}

/// Pair at maximum distance, lexicographically smallest `(i, j)` on ties.
pub fn find_max_pair(y: &ReadSet) -> Result<PairSelection> {
    if y.len() < 2 {
        return Err(Error::ReadSet(
            "pair selection needs at least two reads".into(),
        ));
    }
    let mut best = (0, 1, hamming(y.reads[0].symbols(), y.reads[1].symbols()));
    for i in 0..y.len() {
        for j in i + 1..y.len() {
            let d = hamming(y.reads[i].symbols(), y.reads[j].symbols());
            if d > best.2 {
                best = (i, j, d);
            }
        }
    }
    let pairs = (y.len() * (y.len() - 1) / 2) as u64;
    Ok(PairSelection {
        first: best.0,
        second: best.1,
        distance: best.2,
        comparisons: pairs * y.n() as u64,
    })
}

/// `⌈1/ε⌉`, the multiplicity unit corresponding to slack ε.
pub fn mu_for_epsilon(epsilon: &BigRational) -> Result<u32> {
    if !epsilon.is_positive() {
        return Err(Error::InvalidParameter("epsilon must be positive".into()));
    }
    let inv = BigRational::one() / epsilon;
    let (q, r) = inv.numer().div_rem(inv.denom());
    let ceil = if r.is_positive() { q + 1 } else { q };
    ceil.to_u32()
        .ok_or_else(|| Error::InvalidParameter("1/epsilon does not fit in u32".into()))
}

/// How the final filter resolved.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Decoded,
    /// No candidate is within t of every read.
    NoSurvivor,
    /// Several candidates are within t of every read.
    Ambiguous {
        survivors: usize,
    },
    /// The single-read decoder was run beyond its guaranteed radius; its
    /// list is not trusted.
    BeyondRadius,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct PhaseTimings {
    pub pair_selection: Duration,
    pub interpolation: Duration,
    pub factorization: Duration,
    pub filter: Duration,
    pub total: Duration,
}

#[derive(Clone, Debug)]
pub struct ReconstructionReport {
    pub strategy: Strategy,
    pub outcome: Outcome,
    pub decoded: Option<Word>,
    pub message: Option<Vec<Symbol>>,
    pub list_size: usize,
    /// `C(M)`; zero for brute force.
    pub cost: BigUint,
    /// Score of the decoded word against M.
    pub score: Option<BigUint>,
    /// `2(k−1)·C(M)`.
    pub threshold_squared: BigUint,
    /// `μ·|Y'|·(n − t)`, the score every consistent codeword is guaranteed.
    pub guaranteed_score: BigUint,
    /// Whether `guaranteed_score² > 2(k−1)·C(M)`, i.e. the transmitted
    /// codeword is certain to be listed.
    pub guarantee_met: bool,
    pub pair_distance: Option<usize>,
    pub mu: u32,
    pub sources: usize,
    pub pair_comparisons: u64,
    pub filter_comparisons: u64,
    pub timings: PhaseTimings,
}

impl ReconstructionReport {
    /// The decoded word, or the failure as an error.
    pub fn codeword(&self) -> Result<&Word> {
        match (&self.outcome, &self.decoded) {
            (Outcome::Decoded, Some(c)) => Ok(c),
            (Outcome::Ambiguous { survivors }, _) => Err(Error::Ambiguous { count: *survivors }),
            _ => Err(Error::DecodeFailure),
        }
    }

    pub fn is_success(&self) -> bool {
        self.outcome == Outcome::Decoded
    }
}

/// Keeps the candidates within t of every read; counts symbol comparisons.
fn filter_candidates(y: &ReadSet, candidates: &[Word]) -> (Vec<usize>, u64) {
    let mut survivors = Vec::new();
    let mut comparisons = 0u64;
    let n = y.n() as u64;
    for (idx, c) in candidates.iter().enumerate() {
        let mut ok = true;
        for r in &y.reads {
            comparisons += n;
            if hamming(r.symbols(), c.symbols()) > y.t {
                ok = false;
                break;
            }
        }
        if ok {
            survivors.push(idx);
        }
    }
    (survivors, comparisons)
}

/// Builds M from the reads at `subset` (indices into Y) with unit `mu`,
/// list-decodes, and returns the unique list entry within t of all of Y.
pub fn reconstruct_core(
    code: &RsCode,
    y: &ReadSet,
    subset: &[usize],
    mu: u32,
) -> Result<ReconstructionReport> {
    y.validate_for(code)?;
    run_core(
        code,
        y,
        subset,
        mu,
        Strategy::Subset,
        None,
        Duration::ZERO,
        Instant::now(),
    )
}

#[allow(clippy::too_many_arguments)]
fn run_core(
    code: &RsCode,
    y: &ReadSet,
    subset: &[usize],
    mu: u32,
    strategy: Strategy,
    pair: Option<PairSelection>,
    pair_time: Duration,
    started: Instant,
) -> Result<ReconstructionReport> {
    if subset.is_empty() {
        return Err(Error::ReadSet("the read subset is empty".into()));
    }
    if let Some(&bad) = subset.iter().find(|&&i| i >= y.len()) {
        return Err(Error::ReadSet(format!("subset index {bad} out of range")));
    }
    let chosen: Vec<Word> = subset.iter().map(|&i| y.reads[i].clone()).collect();
    let m = MultiplicityMatrix::from_reads(code.field(), &chosen, mu)?;

    let clock = Instant::now();
    let (_plan, interpolant) = interpolate_with_plan(&m, code)?;
    let interpolation = clock.elapsed();

    let clock = Instant::now();
    let messages = y_roots(&interpolant, code.k());
    let candidates: Vec<Word> = messages.iter().map(|f| code.encode_unchecked(f)).collect();
    let factorization = clock.elapsed();

    let clock = Instant::now();
    let (survivors, filter_comparisons) = filter_candidates(y, &candidates);
    let filter = clock.elapsed();

    let cost = m.cost();
    let guaranteed_score =
        BigUint::from(mu) * BigUint::from(subset.len()) * BigUint::from(code.n() - y.t);
    let check = threshold_check_with_cost(&cost, code.k(), &guaranteed_score);

    let (outcome, decoded, message) = match survivors.as_slice() {
        [only] => (
            Outcome::Decoded,
            Some(candidates[*only].clone()),
            Some(messages[*only].clone()),
        ),
        [] => (Outcome::NoSurvivor, None, None),
        many => (
            Outcome::Ambiguous {
                survivors: many.len(),
            },
            None,
            None,
        ),
    };
    let score = decoded.as_ref().map(|c| m.score_unchecked(c.symbols()));

    Ok(ReconstructionReport {
        strategy,
        outcome,
        decoded,
        message,
        list_size: candidates.len(),
        cost,
        score,
        threshold_squared: check.threshold_squared,
        guaranteed_score,
        guarantee_met: check.passes,
        pair_distance: pair.map(|p| p.distance),
        mu,
        sources: subset.len(),
        pair_comparisons: pair.map_or(0, |p| p.comparisons),
        filter_comparisons,
        timings: PhaseTimings {
            pair_selection: pair_time,
            interpolation,
            factorization,
            filter,
            total: started.elapsed(),
        },
    })
}

fn with_pair(
    code: &RsCode,
    y: &ReadSet,
    mu: u32,
    strategy: Strategy,
    select: fn(&ReadSet) -> Result<PairSelection>,
) -> Result<ReconstructionReport> {
    y.validate_for(code)?;
    let started = Instant::now();
    let pair = select(y)?;
    let pair_time = started.elapsed();
    run_core(
        code,
        y,
        &[pair.first, pair.second],
        mu,
        strategy,
        Some(pair),
        pair_time,
        started,
    )
}

/// Two-read reconstruction with the linear-time far-read scan.
pub fn reconstruct_two_reads(code: &RsCode, y: &ReadSet, mu: u32) -> Result<ReconstructionReport> {
    with_pair(code, y, mu, Strategy::TwoReads, find_far_read)
}

/// Two-read reconstruction with the quadratic maximum-distance pair search.
pub fn reconstruct_max_pair(code: &RsCode, y: &ReadSet, mu: u32) -> Result<ReconstructionReport> {
    with_pair(code, y, mu, Strategy::MaxPair, find_max_pair)
}

/// List decoding from the first read alone, filtered against all of Y.
/// Beyond the radius where the threshold check guarantees the transmitted
/// codeword is listed, the result is [`Outcome::BeyondRadius`].
pub fn single_read_list_reconstruct(
    code: &RsCode,
    y: &ReadSet,
    mu: u32,
) -> Result<ReconstructionReport> {
    y.validate_for(code)?;
    let mut r = run_core(
        code,
        y,
        &[0],
        mu,
        Strategy::SingleRead,
        None,
        Duration::ZERO,
        Instant::now(),
    )?;
    if !r.guarantee_met {
        r.outcome = Outcome::BeyondRadius;
        r.decoded = None;
        r.message = None;
        r.score = None;
    }
    Ok(r)
}

/// Every `(message, codeword)` within t of all reads, by exhaustive scan.
pub fn consistent_codewords(code: &RsCode, y: &ReadSet) -> Result<Vec<(Vec<Symbol>, Word)>> {
    y.validate_for(code)?;
    Ok(code
        .codewords(BRUTE_FORCE_BUDGET)?
        .filter(|(_, c)| y.consistent_with(c))
        .collect())
}

/// Scans all `q^k` codewords for the unique one consistent with Y.
pub fn brute_force_reconstruct(code: &RsCode, y: &ReadSet) -> Result<ReconstructionReport> {
    let started = Instant::now();
    let mut found = consistent_codewords(code, y)?;
    let scanned = code.size().unwrap_or(u64::MAX);
    let elapsed = started.elapsed();
    let list_size = found.len();
    let (outcome, decoded, message) = match found.len() {
        1 => {
            let (m, c) = found.pop().expect("one survivor");
            (Outcome::Decoded, Some(c), Some(m))
        }
        0 => (Outcome::NoSurvivor, None, None),
        s => (Outcome::Ambiguous { survivors: s }, None, None),
    };
    Ok(ReconstructionReport {
        strategy: Strategy::BruteForce,
        outcome,
        decoded,
        message,
        list_size,
        cost: BigUint::default(),
        score: None,
        threshold_squared: BigUint::default(),
        guaranteed_score: BigUint::default(),
        guarantee_met: false,
        pair_distance: None,
        mu: 0,
        sources: 0,
        pair_comparisons: 0,
        filter_comparisons: scanned.saturating_mul((y.n() * y.len()) as u64),
        timings: PhaseTimings {
            filter: elapsed,
            total: elapsed,
            ..PhaseTimings::default()
        },
    })
}
