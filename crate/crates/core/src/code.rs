//! Reed-Solomon codes in evaluation form and Hamming-metric helpers.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Symbol};

/// A length-n word over some field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn from_indices(indices: &[u32]) -> Self {
        Word(indices.iter().map(|&i| Symbol::from_index(i)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Word(vec![Symbol::ZERO; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn symbols_mut(&mut self) -> &mut [Symbol] {
        &mut self.0
    }

    pub fn indices(&self) -> Vec<u32> {
        self.0.iter().map(|s| s.index()).collect()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|s| !s.is_zero()).count()
    }

    /// Checks every symbol against `field` and the length against `n`.
    pub fn validate(&self, field: &Field, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: self.len(),
            });
        }
        for &s in &self.0 {
            field.check(s)?;
        }
        Ok(())
    }

    /// Writes the word as separator-joined decimal indices.
    pub fn join(&self, sep: &str) -> String {
        let parts: Vec<String> = self.0.iter().map(|s| s.index().to_string()).collect();
        parts.join(sep)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.join(" "))
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

/// Hamming distance between two equal-length words.
pub fn distance(u: &Word, v: &Word) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: u.len(),
            got: v.len(),
        });
    }
    Ok(hamming(u.symbols(), v.symbols()))
}

#[inline]
pub(crate) fn hamming(u: &[Symbol], v: &[Symbol]) -> usize {
    u.iter().zip(v).filter(|(a, b)| a != b).count()
}

/// `distance(c, y) <= t`.
pub fn in_ball(c: &Word, y: &Word, t: usize) -> Result<bool> {
    Ok(distance(c, y)? <= t)
}

/// An `[n, k]_q` Reed-Solomon code: evaluations of polynomials of degree
/// below k at the n distinct points `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsCode {
    field: Field,
    n: usize,
    k: usize,
    alpha: Vec<Symbol>,
}

impl RsCode {
    pub fn new(field: Field, n: usize, k: usize, alpha: Vec<Symbol>) -> Result<Self> {
        let q = field.q() as usize;
        if n > q {
            return Err(Error::InvalidCode(format!("n = {n} exceeds q = {q}")));
        }
        if k < 2 || k > n {
            return Err(Error::InvalidCode(format!(
                "k = {k} must satisfy 2 <= k <= n = {n}"
            )));
        }
        if alpha.len() != n {
            return Err(Error::InvalidCode(format!(
                "{} evaluation points given for n = {n}",
                alpha.len()
            )));
        }
        let mut seen = vec![false; q];
        for &a in &alpha {
            field.check(a)?;
            if std::mem::replace(&mut seen[a.index() as usize], true) {
                return Err(Error::InvalidCode(format!(
                    "duplicate evaluation point {a}"
                )));
            }
        }
        Ok(RsCode { field, n, k, alpha })
    }

    /// Code evaluated at `δ₀, …, δ_{n−1}`.
    pub fn with_default_points(field: Field, n: usize, k: usize) -> Result<Self> {
        let q = field.q() as usize;
        if n > q {
            return Err(Error::InvalidCode(format!("n = {n} exceeds q = {q}")));
        }
        let alpha = (0..n as u32).map(Symbol::from_index).collect();
        Self::new(field, n, k, alpha)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum distance `n − k + 1`.
    pub fn d(&self) -> usize {
        self.n - self.k + 1
    }

    pub fn alpha(&self) -> &[Symbol] {
        &self.alpha
    }

    /// `(f(α₁), …, f(α_n))` for `f = Σ message[i]·x^i`.
    pub fn encode(&self, message: &[Symbol]) -> Result<Word> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                got: message.len(),
            });
        }
        for &m in message {
            self.field.check(m)?;
        }
        Ok(self.encode_unchecked(message))
    }

    pub(crate) fn encode_unchecked(&self, message: &[Symbol]) -> Word {
        Word(
            self.alpha
                .iter()
                .map(|&a| self.field.eval_unchecked(message, a))
                .collect(),
        )
    }

    /// Coefficients (length k) of `∏_{j<k−1} (X − α_j)`, whose codeword has
    /// weight exactly d.
    pub fn min_weight_message(&self) -> Vec<Symbol> {
        let f = &self.field;
        let mut g = vec![Symbol::ONE];
        for &a in &self.alpha[..self.k - 1] {
            let mut next = vec![Symbol::ZERO; g.len() + 1];
            for (i, &c) in g.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], c);
                next[i] = f.sub(next[i], f.mul(c, a));
            }
            g = next;
        }
        g
    }

    /// Number of codewords `q^k`, if it fits in a u64.
    pub fn size(&self) -> Option<u64> {
        (self.field.q() as u64).checked_pow(self.k as u32)
    }

    /// Enumerates every (message, codeword) pair in lexicographic message
    /// order (coefficient of x^0 varies slowest). Fails if `q^k > budget`.
    pub fn codewords(&self, budget: u64) -> Result<Codewords<'_>> {
        match self.size() {
            Some(s) if s <= budget => Ok(Codewords {
                code: self,
                next: Some(vec![Symbol::ZERO; self.k]),
            }),
            _ => Err(Error::Budget(format!(
                "q^k = {}^{} codewords exceeds {budget}",
                self.field.q(),
                self.k
            ))),
        }
    }
}

pub struct Codewords<'a> {
    code: &'a RsCode,
    next: Option<Vec<Symbol>>,
}

impl Iterator for Codewords<'_> {
    type Item = (Vec<Symbol>, Word);

    fn next(&mut self) -> Option<Self::Item> {
        let msg = self.next.take()?;
        let word = self.code.encode_unchecked(&msg);
        let q = self.code.field.q();
        let mut succ = msg.clone();
        let mut i = succ.len();
        while i > 0 {
            i -= 1;
            let v = succ[i].index() + 1;
            if v < q {
                succ[i] = Symbol::from_index(v);
                self.next = Some(succ);
                break;
            }
            succ[i] = Symbol::ZERO;
        }
        Some((msg, word))
    }
}
