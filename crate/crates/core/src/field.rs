//! Finite fields GF(q) for q = p^m up to 2^16.
//!
//! Elements are addressed by their canonical index: for a prime field the
//! index is the residue itself, and for an extension field the base-p digits
//! of the index are the polynomial-basis coordinates (lowest digit is the
//! constant term). Index 0 is always the additive identity and index 1 the
//! multiplicative identity.
//!
//! Each extension field is reduced modulo the smallest primitive polynomial
//! of degree m, where polynomials are ranked by the integer whose base-p
//! digits are their coefficients. For the small binary fields this coincides
//! with the Conway polynomials (X^2+X+1, X^3+X+1, X^4+X+1, ...).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_Q: u64 = 1 << 16;

/// A field element, identified by its canonical index `δ_index`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(u32);

impl Symbol {
    pub const ZERO: Symbol = Symbol(0);
    pub const ONE: Symbol = Symbol(1);

    /// Wraps a raw index without range checking; use [`Field::element`] to
    /// validate against a field.
    #[inline]
    pub const fn from_index(index: u32) -> Self {
        Symbol(index)
    }

    #[inline]
    pub const fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    q: u32,
    p: u32,
    m: u32,
    /// Monic reduction polynomial, coefficients low to high (empty for m = 1).
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a fixed generator g, doubled to skip a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Handle to an immutable GF(q). Cloning is cheap.
#[derive(Clone)]
pub struct Field {
    tables: Arc<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("q", &self.tables.q)
            .field("p", &self.tables.p)
            .field("m", &self.tables.m)
            .field("modulus", &self.tables.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.tables, &other.tables)
            || (self.tables.q == other.tables.q && self.tables.modulus == other.tables.modulus)
    }
}

impl Eq for Field {}

/// Splits q into (p, m) with q = p^m, or `None` when q is not a prime power.
fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

fn digits(mut x: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(x % p);
        x /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Multiplies the element with coordinates `x` by X modulo the monic `modulus`.
fn times_x(x: &mut [u32], modulus: &[u32], p: u32) {
    let m = x.len();
    let top = x[m - 1];
    for i in (1..m).rev() {
        x[i] = x[i - 1];
    }
    x[0] = 0;
    if top != 0 {
        for i in 0..m {
            x[i] = (x[i] + (p - top) * modulus[i] % p) % p;
        }
    }
}

/// Builds the power table of X modulo `modulus`; `None` unless X has order q - 1.
fn power_table_of_x(modulus: &[u32], p: u32, m: u32, q: u32) -> Option<Vec<u32>> {
    let order = (q - 1) as usize;
    let mut exp = Vec::with_capacity(2 * order);
    let mut x = vec![0u32; m as usize];
    x[0] = 1;
    for i in 0..order {
        let idx = undigits(&x, p);
        if i > 0 && idx == 1 {
            return None;
        }
        exp.push(idx);
        times_x(&mut x, modulus, p);
    }
    (undigits(&x, p) == 1).then_some(exp)
}

impl Field {
    /// Constructs GF(q).
    pub fn new(q: u64) -> Result<Field> {
        if !(2..=MAX_Q).contains(&q) {
            return Err(Error::FieldSize { q });
        }
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower { q })?;
        let q = q as u32;
        let order = (q - 1) as usize;

        let (modulus, mut exp) = if m == 1 {
            let exp = (1..q.max(2))
                .find_map(|g| {
                    let mut table = Vec::with_capacity(2 * order);
                    let mut x = 1u64;
                    for i in 0..order {
                        if i > 0 && x == 1 {
                            return None;
                        }
                        table.push(x as u32);
                        x = x * g as u64 % q as u64;
                    }
                    (x == 1).then_some(table)
                })
                .expect("every prime field has a generator");
            (Vec::new(), exp)
        } else {
            let pm = p.pow(m);
            (0..pm)
                .filter(|low| low % p != 0)
                .find_map(|low| {
                    let mut modulus = digits(low, p, m);
                    modulus.push(1);
                    power_table_of_x(&modulus, p, m, q).map(|exp| (modulus, exp))
                })
                .expect("a primitive polynomial exists for every degree")
        };

        let mut log = vec![u32::MAX; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        exp.extend_from_within(..);

        Ok(Field {
            tables: Arc::new(Tables {
                q,
                p,
                m,
                modulus,
                exp,
                log,
            }),
        })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.tables.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.tables.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.tables.m
    }

    /// Reduction polynomial (coefficients low to high, monic), for m > 1.
    pub fn modulus(&self) -> Option<&[u32]> {
        (self.tables.m > 1).then_some(&self.tables.modulus[..])
    }

    /// `δ_index`, validated.
    pub fn element(&self, index: u32) -> Result<Symbol> {
        self.check(Symbol(index))
    }

    pub fn check(&self, s: Symbol) -> Result<Symbol> {
        if s.0 < self.tables.q {
            Ok(s)
        } else {
            Err(Error::ForeignSymbol {
                index: s.0,
                q: self.tables.q,
            })
        }
    }

    /// All elements in canonical order δ₀, …, δ_{q−1}.
    pub fn elements(&self) -> impl Iterator<Item = Symbol> {
        (0..self.tables.q).map(Symbol)
    }

    /// Polynomial-basis coordinates of `s` over GF(p), constant term first.
    pub fn coordinates(&self, s: Symbol) -> Vec<u32> {
        digits(s.0, self.tables.p, self.tables.m)
    }

    pub fn from_coordinates(&self, coords: &[u32]) -> Result<Symbol> {
        let p = self.tables.p;
        if coords.len() != self.tables.m as usize {
            return Err(Error::LengthMismatch {
                expected: self.tables.m as usize,
                got: coords.len(),
            });
        }
        if let Some(&bad) = coords.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidParameter(format!(
                "coordinate {bad} is not in GF({p})"
            )));
        }
        Ok(Symbol(undigits(coords, p)))
    }

    /// The image of the integer `n` in the prime subfield.
    #[inline]
    pub fn from_int(&self, n: u64) -> Symbol {
        Symbol((n % self.tables.p as u64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Symbol, b: Symbol) -> Symbol {
        let t = &*self.tables;
        if t.m == 1 {
            let s = a.0 + b.0;
            Symbol(if s >= t.q { s - t.q } else { s })
        } else if t.p == 2 {
            Symbol(a.0 ^ b.0)
        } else {
            let (p, mut x, mut y) = (t.p, a.0, b.0);
            let (mut out, mut place) = (0, 1);
            for _ in 0..t.m {
                out += ((x % p + y % p) % p) * place;
                x /= p;
                y /= p;
                place *= p;
            }
            Symbol(out)
        }
    }

    #[inline]
    pub fn neg(&self, a: Symbol) -> Symbol {
        let t = &*self.tables;
        if a.0 == 0 || t.p == 2 {
            a
        } else if t.m == 1 {
            Symbol(t.q - a.0)
        } else {
            let (p, mut x) = (t.p, a.0);
            let (mut out, mut place) = (0, 1);
            for _ in 0..t.m {
                out += ((p - x % p) % p) * place;
                x /= p;
                place *= p;
            }
            Symbol(out)
        }
    }

    #[inline]
    pub fn sub(&self, a: Symbol, b: Symbol) -> Symbol {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Symbol, b: Symbol) -> Symbol {
        if a.0 == 0 || b.0 == 0 {
            return Symbol::ZERO;
        }
        let t = &*self.tables;
        Symbol(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Symbol) -> Result<Symbol> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.tables;
        let order = t.q - 1;
        Ok(Symbol(
            t.exp[((order - t.log[a.0 as usize]) % order) as usize],
        ))
    }

    pub fn div(&self, a: Symbol, b: Symbol) -> Result<Symbol> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `a^0 = 1` for every a (including 0).
    pub fn pow(&self, a: Symbol, e: u64) -> Symbol {
        if e == 0 {
            return Symbol::ONE;
        }
        if a.0 == 0 {
            return Symbol::ZERO;
        }
        let t = &*self.tables;
        let order = (t.q - 1) as u64;
        let l = t.log[a.0 as usize] as u64 * (e % order) % order;
        Symbol(t.exp[l as usize])
    }

    /// Evaluates `Σ coeffs[i]·x^i` by Horner's rule.
    pub fn poly_eval(&self, coeffs: &[Symbol], x: Symbol) -> Result<Symbol> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "polynomial has no coefficients".into(),
            ));
        }
        self.check(x)?;
        for &c in coeffs {
            self.check(c)?;
        }
        Ok(self.eval_unchecked(coeffs, x))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, coeffs: &[Symbol], x: Symbol) -> Symbol {
        coeffs
            .iter()
            .rev()
            .fold(Symbol::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }
}
