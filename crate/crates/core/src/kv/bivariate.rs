use std::collections::BTreeMap;

use crate::field::{Field, Symbol};

/// `C(n, k) mod p` as a prime-subfield element, via Lucas' theorem.
pub(crate) struct BinomialsModP {
    p: u64,
    fact: Vec<u64>,
    inv_fact: Vec<u64>,
}

impl BinomialsModP {
    pub(crate) fn new(p: u32) -> Self {
        let p = p as u64;
        let mut fact = vec![1u64; p as usize];
        for i in 1..p as usize {
            fact[i] = fact[i - 1] * i as u64 % p;
        }
        let mut inv_fact = vec![1u64; p as usize];
        inv_fact[p as usize - 1] = mod_pow(fact[p as usize - 1], p - 2, p);
        for i in (1..p as usize).rev() {
            inv_fact[i - 1] = inv_fact[i] * i as u64 % p;
        }
        BinomialsModP { p, fact, inv_fact }
    }

    pub(crate) fn get(&self, mut n: u64, mut k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let p = self.p;
        let mut acc = 1u64;
        while k > 0 || n > 0 {
            let (ni, ki) = ((n % p) as usize, (k % p) as usize);
            if ki > ni {
                return 0;
            }
            acc = acc * self.fact[ni] % p * self.inv_fact[ki] % p * self.inv_fact[ni - ki] % p;
            n /= p;
            k /= p;
        }
        acc
    }

    pub(crate) fn symbol(&self, field: &Field, n: usize, k: usize) -> Symbol {
        field.from_int(self.get(n as u64, k as u64))
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Drops trailing zero coefficients.
pub(crate) fn trim(p: &mut Vec<Symbol>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn poly_mul(field: &Field, a: &[Symbol], b: &[Symbol]) -> Vec<Symbol> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Symbol::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn poly_add_scaled(field: &Field, acc: &mut Vec<Symbol>, p: &[Symbol], scale: Symbol) {
    if scale.is_zero() {
        return;
    }
    if acc.len() < p.len() {
        acc.resize(p.len(), Symbol::ZERO);
    }
    for (a, &c) in acc.iter_mut().zip(p) {
        *a = field.add(*a, field.mul(c, scale));
    }
    trim(acc);
}

/// A polynomial `Q(X, Y) = Σ q_{a,b} X^a Y^b` over GF(q), stored as a map
/// from `(a, b)` to the nonzero coefficient `q_{a,b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePolynomial {
    field: Field,
    terms: BTreeMap<(usize, usize), Symbol>,
}

impl BivariatePolynomial {
    pub fn zero(field: &Field) -> Self {
        BivariatePolynomial {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Sums the given terms; zero results are dropped.
    pub fn from_terms(
        field: &Field,
        terms: impl IntoIterator<Item = ((usize, usize), Symbol)>,
    ) -> Self {
        let mut p = Self::zero(field);
        for (key, c) in terms {
            p.add_term(key, c);
        }
        p
    }

    /// `Σ_b rows[b](X)·Y^b`.
    pub(crate) fn from_rows(field: &Field, rows: &[Vec<Symbol>]) -> Self {
        Self::from_terms(
            field,
            rows.iter()
                .enumerate()
                .flat_map(|(b, row)| row.iter().enumerate().map(move |(a, &c)| ((a, b), c))),
        )
    }

    pub(crate) fn to_rows(&self) -> Vec<Vec<Symbol>> {
        let mut rows = vec![Vec::new(); self.y_degree().map_or(0, |d| d + 1)];
        for (&(a, b), &c) in &self.terms {
            let row: &mut Vec<Symbol> = &mut rows[b];
            if row.len() <= a {
                row.resize(a + 1, Symbol::ZERO);
            }
            row[a] = c;
        }
        rows
    }

    fn add_term(&mut self, key: (usize, usize), c: Symbol) {
        if c.is_zero() {
            return;
        }
        let f = &self.field;
        let sum = match self.terms.get(&key) {
            Some(&old) => f.add(old, c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms as `((x-degree, y-degree), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), Symbol)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coefficient(&self, a: usize, b: usize) -> Symbol {
        self.terms.get(&(a, b)).copied().unwrap_or(Symbol::ZERO)
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    /// Largest `a + (k−1)·b` over the monomials `X^a Y^b`.
    pub fn weighted_degree(&self, k: usize) -> Option<usize> {
        let w = k.saturating_sub(1);
        self.terms.keys().map(|&(a, b)| a + w * b).max()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f);
        for (&(a1, b1), &c1) in &self.terms {
            for (&(a2, b2), &c2) in &other.terms {
                out.add_term((a1 + a2, b1 + b2), f.mul(c1, c2));
            }
        }
        out
    }

    /// `Q(X + α, Y + δ)`.
    pub fn shift(&self, alpha: Symbol, delta: Symbol) -> Self {
        let f = &self.field;
        let binom = BinomialsModP::new(f.characteristic());
        let mut out = Self::zero(f);
        for (&(a, b), &c) in &self.terms {
            for r in 0..=a {
                let xr = f.mul(binom.symbol(f, a, r), f.pow(alpha, (a - r) as u64));
                if xr.is_zero() {
                    continue;
                }
                let cx = f.mul(c, xr);
                for s in 0..=b {
                    let ys = f.mul(binom.symbol(f, b, s), f.pow(delta, (b - s) as u64));
                    out.add_term((r, s), f.mul(cx, ys));
                }
            }
        }
        out
    }

    /// Coefficients of the univariate `Q(X, f(X))`, trimmed (empty means zero).
    pub fn compose_y(&self, f_coeffs: &[Symbol]) -> Vec<Symbol> {
        let field = &self.field;
        let rows = self.to_rows();
        // Horner in Y with polynomial coefficients
        let mut acc: Vec<Symbol> = Vec::new();
        for row in rows.iter().rev() {
            acc = poly_mul(field, &acc, f_coeffs);
            poly_add_scaled(field, &mut acc, row, Symbol::ONE);
        }
        acc
    }

    /// Evaluates `Q(x, y)`.
    pub fn evaluate(&self, x: Symbol, y: Symbol) -> Symbol {
        let f = &self.field;
        self.terms.iter().fold(Symbol::ZERO, |acc, (&(a, b), &c)| {
            f.add(acc, f.mul(c, f.mul(f.pow(x, a as u64), f.pow(y, b as u64))))
        })
    }
}
