//! Read-set generators and the uniqueness verifier.
//!
//! Reads are substitution-corrupted copies of a codeword. A substituted
//! symbol is drawn uniformly from the q−1 symbols that differ from the
//! original, so every word of a sphere is equally likely.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::ball_volume;
use crate::code::{hamming, RsCode, Word};
use crate::error::{Error, Result};
use crate::field::{Field, Symbol};
use crate::reconstruct::{consistent_codewords, ReadSet};

/// Balls up to this size are enumerated rather than rejection-sampled when
/// most of their words are requested.
const ENUMERATE_BALL_MAX: u64 = 1_000_000;

/// Largest core `adversarial_core` will enumerate.
pub const ADVERSARIAL_CORE_MAX: u64 = 100_000;

pub const WITNESS_ATTEMPTS: usize = 100;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GenMode {
    Random,
    Adversarial,
    Witness,
}

impl GenMode {
    pub fn as_str(self) -> &'static str {
        match self {
            GenMode::Random => "random",
            GenMode::Adversarial => "adversarial",
            GenMode::Witness => "witness",
        }
    }
}

impl FromStr for GenMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(GenMode::Random),
            "adversarial" => Ok(GenMode::Adversarial),
            "witness" => Ok(GenMode::Witness),
            _ => Err(Error::InvalidParameter(format!("unknown generator {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ChannelConfig {
    pub code: RsCode,
    pub t: usize,
    pub mode: GenMode,
    pub count: usize,
    pub seed: u64,
    /// Every read carries exactly t errors instead of at most t.
    pub exact_t: bool,
}

impl ChannelConfig {
    /// Runs the configured generator around `c`. The adversarial core does
    /// not depend on `c` or `count`.
    pub fn generate(&self, c: &Word) -> Result<ReadSet> {
        match self.mode {
            GenMode::Random => random_read_set(self, c),
            GenMode::Adversarial => adversarial_core(&self.code, self.t).map(|(_, _, core)| core),
            GenMode::Witness => witness_read_set(
                &self.code,
                c,
                self.t,
                self.count.saturating_sub(2),
                self.seed,
            ),
        }
    }
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `c` with `w` errors at uniformly chosen positions.
fn corrupt<R: Rng>(rng: &mut R, q: u32, c: &Word, w: usize) -> Word {
    let mut out = c.clone();
    let n = c.len();
    for j in index::sample(rng, n, w) {
        out.symbols_mut()[j] = shifted(q, c.symbols()[j], rng.gen_range(1..q));
    }
    out
}

/// The symbol `offset` steps after `s` in index order, modulo q.
fn shifted(q: u32, s: Symbol, offset: u32) -> Symbol {
    Symbol::from_index((s.index() + offset) % q)
}

/// Error-weight distribution of a uniform draw from the ball (or sphere).
fn weight_sampler(q: u32, n: usize, t: usize, exact_t: bool) -> WeightedIndex<f64> {
    let lo = if exact_t { t } else { 0 };
    // log of C(n, w)·(q−1)^w, shifted so the largest weight is 1
    let mut logs = Vec::with_capacity(t + 1);
    let mut log_binom = 0.0f64;
    let log_q1 = ((q - 1) as f64).ln();
    for w in 0..=t {
        if w > 0 {
            log_binom += ((n - w + 1) as f64).ln() - (w as f64).ln();
        }
        logs.push(log_binom + w as f64 * log_q1);
    }
    let top = logs[lo..].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = (0..=t)
        .map(|w| if w < lo { 0.0 } else { (logs[w] - top).exp() })
        .collect();
    WeightedIndex::new(weights).expect("at least one admissible weight")
}

/// Every word at distance in `[lo, hi]` from `center`, in a fixed order.
pub fn ball_words(q: u32, center: &Word, lo: usize, hi: usize) -> Vec<Word> {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        q: u32,
        center: &Word,
        pos: usize,
        left: usize,
        lo: usize,
        used: usize,
        cur: &mut Word,
        out: &mut Vec<Word>,
    ) {
        if pos == center.len() {
            if used >= lo {
                out.push(cur.clone());
            }
            return;
        }
        // not enough positions left to reach `lo`
        if used + (center.len() - pos) < lo {
            return;
        }
        rec(q, center, pos + 1, left, lo, used, cur, out);
        if left > 0 {
            let orig = center.symbols()[pos];
            for off in 1..q {
                cur.symbols_mut()[pos] = shifted(q, orig, off);
                rec(q, center, pos + 1, left - 1, lo, used + 1, cur, out);
            }
            cur.symbols_mut()[pos] = orig;
        }
    }
    let mut out = Vec::new();
    let mut cur = center.clone();
    rec(q, center, 0, hi, lo, 0, &mut cur, &mut out);
    out
}

/// `count` distinct reads within t of `c` (exactly t if `exact_t`), drawn
/// uniformly from the ball (or sphere) by rejection of duplicates.
pub fn random_read_set(cfg: &ChannelConfig, c: &Word) -> Result<ReadSet> {
    let code = &cfg.code;
    c.validate(code.field(), code.n())?;
    sample_reads(code.field(), c, cfg.t, cfg.count, cfg.exact_t, cfg.seed)
}

/// [`random_read_set`] around an arbitrary word of `field^n`.
pub fn sample_reads(
    field: &Field,
    c: &Word,
    t: usize,
    count: usize,
    exact_t: bool,
    seed: u64,
) -> Result<ReadSet> {
    c.validate(field, c.len())?;
    let n = c.len();
    let q = field.q();
    if t > n {
        return Err(Error::InvalidParameter(format!("t = {t} exceeds n = {n}")));
    }
    if count == 0 {
        return Err(Error::InvalidParameter("count must be at least 1".into()));
    }
    let lo = if exact_t { t } else { 0 };
    let mut volume = ball_volume(q as u64, t, n);
    if exact_t && t > 0 {
        volume -= ball_volume(q as u64, t - 1, n);
    }
    if BigUint::from(count) > volume {
        return Err(Error::InvalidParameter(format!(
            "{count} distinct reads requested but the ball holds only {volume}"
        )));
    }
    let mut rng = rng_for(seed);
    if let Some(v) = volume.to_u64().filter(|&v| v <= ENUMERATE_BALL_MAX) {
        if count as u64 * 2 > v {
            let all = ball_words(q, c, lo, t);
            let reads = all.choose_multiple(&mut rng, count).cloned().collect();
            return ReadSet::new(reads, t);
        }
    }
    let weights = weight_sampler(q, n, t, exact_t);
    let mut seen = HashSet::with_capacity(count);
    let mut reads = Vec::with_capacity(count);
    while reads.len() < count {
        let w = weights.sample(&mut rng);
        let r = corrupt(&mut rng, q, c, w);
        if seen.insert(r.clone()) {
            reads.push(r);
        }
    }
    ReadSet::new(reads, t)
}

/// Two codewords at distance d and every word within `ℓ−1` of a point
/// between them; each core word lies within t of both codewords.
///
/// `x` encodes the zero message and `y` the minimum-weight message. The
/// centre `u` copies `y` on (d−1)/2 of their differing coordinates, takes a
/// third symbol on one more, and copies `x` everywhere else.
pub fn adversarial_core(code: &RsCode, t: usize) -> Result<(Word, Word, ReadSet)> {
    let (n, d) = (code.n(), code.d());
    let q = code.field().q();
    if d % 2 == 0 {
        return Err(Error::InvalidParameter(format!("d = {d} must be odd")));
    }
    let e = (d - 1) / 2;
    if t <= e || t > n {
        return Err(Error::InvalidParameter(format!(
            "t = {t} must exceed the half distance {e} and not exceed n = {n}"
        )));
    }
    let ell = t - e;
    if 2 * ell >= d {
        return Err(Error::InvalidParameter(format!(
            "excess {ell} must be below d/2 = {d}/2"
        )));
    }
    if q < 3 {
        return Err(Error::InvalidParameter(
            "a third symbol needs q >= 3".into(),
        ));
    }
    let volume = ball_volume(q as u64, ell - 1, n);
    if volume > BigUint::from(ADVERSARIAL_CORE_MAX) {
        return Err(Error::Budget(format!(
            "core volume {volume} exceeds {ADVERSARIAL_CORE_MAX}"
        )));
    }
    let x = code.encode_unchecked(&vec![Symbol::ZERO; code.k()]);
    let y = code.encode_unchecked(&code.min_weight_message());
    let support: Vec<usize> = (0..n)
        .filter(|&j| x.symbols()[j] != y.symbols()[j])
        .collect();
    debug_assert_eq!(support.len(), d);
    let mut u = x.clone();
    for &j in &support[..e] {
        u.symbols_mut()[j] = y.symbols()[j];
    }
    let j = support[e];
    let third = (0..q)
        .map(Symbol::from_index)
        .find(|&s| s != x.symbols()[j] && s != y.symbols()[j])
        .expect("q >= 3");
    u.symbols_mut()[j] = third;
    let core = ReadSet::new(ball_words(q, &u, 0, ell - 1), t)?;
    Ok((x, y, core))
}

/// Outcome of an exhaustive consistency scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Unique(Word),
    /// Two or more consistent codewords, in message order.
    Ambiguous(Vec<Word>),
    NoneFound,
}

/// Scans all q^k codewords for those within t of every read.
pub fn verify_unique(code: &RsCode, y: &ReadSet) -> Result<Verification> {
    let mut found: Vec<Word> = consistent_codewords(code, y)?
        .into_iter()
        .map(|(_, c)| c)
        .collect();
    Ok(match found.len() {
        0 => Verification::NoneFound,
        1 => Verification::Unique(found.pop().expect("one codeword")),
        _ => Verification::Ambiguous(found),
    })
}

/// A read set around `c` certified to determine `c` uniquely.
///
/// Every read carries exactly t errors. The first two have error supports
/// at opposite ends of a random permutation of the coordinates, with
/// different wrong symbols where the supports overlap, so their distance is
/// `min(n, 2t)`. `extra` further reads are random. The set is shuffled and
/// regenerated until only `c` is consistent with it.
pub fn witness_read_set(
    code: &RsCode,
    c: &Word,
    t: usize,
    extra: usize,
    seed: u64,
) -> Result<ReadSet> {
    c.validate(code.field(), code.n())?;
    let (n, d) = (code.n(), code.d());
    let q = code.field().q();
    if d % 2 == 0 {
        return Err(Error::InvalidParameter(format!("d = {d} must be odd")));
    }
    let e = (d - 1) / 2;
    if t <= e || t > n {
        return Err(Error::InvalidParameter(format!(
            "t = {t} must exceed the half distance {e} and not exceed n = {n}"
        )));
    }
    if 2 * t > n && q < 3 {
        return Err(Error::InvalidParameter(
            "overlapping error supports need q >= 3".into(),
        ));
    }
    let sphere = ball_volume(q as u64, t, n) - ball_volume(q as u64, t - 1, n);
    if BigUint::from(extra + 2) > sphere {
        return Err(Error::InvalidParameter(format!(
            "{} distinct reads requested but the sphere holds only {sphere}",
            extra + 2
        )));
    }
    let mut rng = rng_for(seed);
    for _ in 0..WITNESS_ATTEMPTS {
        let reads = witness_candidate(&mut rng, q, c, t, extra);
        let set = ReadSet::new(reads, t)?;
        if verify_unique(code, &set)? == Verification::Unique(c.clone()) {
            return Ok(set);
        }
    }
    Err(Error::Certification {
        attempts: WITNESS_ATTEMPTS,
    })
}

fn witness_candidate<R: Rng>(rng: &mut R, q: u32, c: &Word, t: usize, extra: usize) -> Vec<Word> {
    let n = c.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut a = c.clone();
    let mut b = c.clone();
    for &j in &perm[..t] {
        a.symbols_mut()[j] = shifted(q, c.symbols()[j], rng.gen_range(1..q));
    }
    for &j in &perm[n - t..] {
        let orig = c.symbols()[j];
        let s = loop {
            let s = shifted(q, orig, rng.gen_range(1..q));
            if s != a.symbols()[j] || a.symbols()[j] == orig {
                break s;
            }
        };
        b.symbols_mut()[j] = s;
    }
    debug_assert_eq!(hamming(a.symbols(), b.symbols()), n.min(2 * t));
    let mut seen: HashSet<Word> = [a.clone(), b.clone()].into_iter().collect();
    let mut reads = vec![a, b];
    while reads.len() < extra + 2 {
        let r = corrupt(rng, q, c, t);
        if seen.insert(r.clone()) {
            reads.push(r);
        }
    }
    reads.shuffle(rng);
    reads
}

/// Parsed contents of a read-set file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadSetFile {
    pub q: u64,
    pub reads: ReadSet,
}

/// Parses `q n t` followed by one line of n symbol indices per read.
/// Blank lines are ignored.
pub fn parse_read_set(text: &str) -> Result<ReadSetFile> {
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| perr(1, "empty input".into()))?;
    let nums: Vec<u64> = header
        .split_whitespace()
        .map(|s| {
            s.parse::<u64>()
                .map_err(|e| perr(hline, format!("{s:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    let [q, n, t] = nums[..] else {
        return Err(perr(hline, "header must be `q n t`".into()));
    };
    if n == 0 || t > n {
        return Err(perr(
            hline,
            format!("need 1 <= n and t <= n, got n = {n}, t = {t}"),
        ));
    }
    let mut reads = Vec::new();
    for (lno, line) in lines {
        let idx: Vec<u32> = line
            .split_whitespace()
            .map(|s| {
                let v: u32 = s.parse().map_err(|e| perr(lno, format!("{s:?}: {e}")))?;
                if v as u64 >= q {
                    return Err(perr(lno, format!("symbol {v} is not below q = {q}")));
                }
                Ok(v)
            })
            .collect::<Result<_>>()?;
        if idx.len() as u64 != n {
            return Err(perr(
                lno,
                format!("expected {n} symbols, found {}", idx.len()),
            ));
        }
        reads.push(Word::from_indices(&idx));
    }
    if reads.is_empty() {
        return Err(perr(hline, "no reads follow the header".into()));
    }
    let reads = ReadSet::new(reads, t as usize).map_err(|e| perr(hline, e.to_string()))?;
    Ok(ReadSetFile { q, reads })
}

/// Inverse of [`parse_read_set`], with LF line endings.
pub fn format_read_set(q: u64, y: &ReadSet) -> String {
    let mut out = format!("{q} {} {}\n", y.n(), y.t());
    for r in y.reads() {
        let _ = writeln!(out, "{}", r.join(" "));
    }
    out
}
