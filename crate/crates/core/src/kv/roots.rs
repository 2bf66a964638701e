//! Roth-Ruckenstein search for the y-roots `f(X)` of `Q(X, Y)`, deg f < k.

use super::bivariate::{poly_add_scaled, BinomialsModP, BivariatePolynomial};
use crate::field::{Field, Symbol};

/// All `f` with `deg f < k` and `Q(X, f(X)) ≡ 0`, as length-k coefficient
/// vectors in lexicographic order. Each root is reported once.
pub fn y_roots(q: &BivariatePolynomial, k: usize) -> Vec<Vec<Symbol>> {
    if q.is_zero() || k == 0 {
        return Vec::new();
    }
    let field = q.field();
    let binom = BinomialsModP::new(field.characteristic());
    let mut found = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    descend(field, &binom, q.to_rows(), k, &mut prefix, &mut found);
    found.retain(|f| q.compose_y(f).is_empty());
    found.sort();
    found.dedup();
    found
}

fn descend(
    field: &Field,
    binom: &BinomialsModP,
    mut rows: Vec<Vec<Symbol>>,
    k: usize,
    prefix: &mut Vec<Symbol>,
    found: &mut Vec<Vec<Symbol>>,
) {
    if prefix.len() == k {
        found.push(prefix.clone());
        return;
    }
    strip_x_power(&mut rows);
    // univariate slice Q(0, Y)
    let slice: Vec<Symbol> = rows
        .iter()
        .map(|r| r.first().copied().unwrap_or(Symbol::ZERO))
        .collect();
    for gamma in field.elements() {
        if !field.eval_unchecked(&slice, gamma).is_zero() {
            continue;
        }
        prefix.push(gamma);
        let next = substitute(field, binom, &rows, gamma);
        descend(field, binom, next, k, prefix, found);
        prefix.pop();
    }
}

/// Divides out the largest power of X common to every term.
fn strip_x_power(rows: &mut [Vec<Symbol>]) {
    let shift = rows
        .iter()
        .filter_map(|r| r.iter().position(|c| !c.is_zero()))
        .min()
        .unwrap_or(0);
    if shift > 0 {
        for r in rows.iter_mut() {
            if r.len() >= shift {
                r.drain(..shift);
            }
        }
    }
}

/// `Q(X, X·Y + γ)`: row s becomes `X^s · Σ_{b≥s} C(b,s) γ^{b−s} Q_b(X)`.
fn substitute(
    field: &Field,
    binom: &BinomialsModP,
    rows: &[Vec<Symbol>],
    gamma: Symbol,
) -> Vec<Vec<Symbol>> {
    let mut out = Vec::with_capacity(rows.len());
    for s in 0..rows.len() {
        let mut acc: Vec<Symbol> = Vec::new();
        for (b, row) in rows.iter().enumerate().skip(s) {
            let scale = field.mul(binom.symbol(field, b, s), field.pow(gamma, (b - s) as u64));
            poly_add_scaled(field, &mut acc, row, scale);
        }
        if !acc.is_empty() {
            let mut shifted = vec![Symbol::ZERO; s];
            shifted.extend(acc);
            acc = shifted;
        }
        out.push(acc);
    }
    while out.last().is_some_and(Vec::is_empty) {
        out.pop();
    }
    out
}
