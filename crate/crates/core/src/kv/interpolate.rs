//! Interpolation with multiplicities by Koetter's incremental algorithm.
//!
//! One candidate polynomial is kept per y-degree class `0..=L`; its leading
//! monomial (under weighted degree, then y-degree) always has y-degree equal
//! to its class. Each Hasse-derivative constraint is processed in turn: the
//! violating candidate with the smallest leading monomial becomes the pivot,
//! the other violators are cancelled against it, and the pivot is multiplied
//! by `(X − α)`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::bivariate::{trim, BinomialsModP, BivariatePolynomial};
use crate::code::RsCode;
use crate::error::{Error, Result};
use crate::field::{Field, Symbol};
use crate::multiplicity::MultiplicityMatrix;

/// Largest monomial basis the planner will accept.
pub const MAX_MONOMIALS: u64 = 1_000_000;

/// Sizing of the interpolation problem for a given cost and dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationPlan {
    /// Number of linear constraints, `C(M)`.
    pub constraints: BigUint,
    /// Target (1, k−1)-weighted degree Δ.
    pub delta: usize,
    /// y-degree cap `⌊Δ/(k−1)⌋`.
    pub y_cap: usize,
    /// Monomials `(a, b)` with `a + (k−1)b ≤ Δ`, by weighted degree then y-degree.
    pub basis: Vec<(usize, usize)>,
}

/// Number of monomials `X^a Y^b` with `a + w·b ≤ delta`.
pub fn monomial_count(delta: usize, w: usize) -> u64 {
    (0..=delta / w).map(|b| (delta - w * b + 1) as u64).sum()
}

/// Smallest Δ whose monomial count strictly exceeds `constraints`.
pub fn choose_interpolation_degree(constraints: &BigUint, k: usize) -> Result<InterpolationPlan> {
    if k < 2 {
        return Err(Error::InvalidParameter("k must be at least 2".into()));
    }
    let c = constraints
        .to_u64()
        .filter(|&c| c < MAX_MONOMIALS)
        .ok_or_else(|| {
            Error::Budget(format!(
                "{constraints} constraints exceed the {MAX_MONOMIALS}-monomial budget"
            ))
        })?;
    if c == 0 {
        return Err(Error::InvalidParameter(
            "interpolation needs at least one constraint".into(),
        ));
    }
    let w = k - 1;
    let mut delta = 0;
    while monomial_count(delta, w) <= c {
        delta += 1;
    }
    let y_cap = delta / w;
    let mut basis: Vec<(usize, usize)> = (0..=y_cap)
        .flat_map(|b| (0..=delta - w * b).map(move |a| (a, b)))
        .collect();
    basis.sort_by_key(|&(a, b)| (a + w * b, b));
    Ok(InterpolationPlan {
        constraints: constraints.clone(),
        delta,
        y_cap,
        basis,
    })
}

/// Dense working polynomial: `rows[b]` holds the X-coefficients of `Y^b`.
struct Candidate {
    rows: Vec<Vec<Symbol>>,
    /// Weighted degree of the leading monomial; its y-degree is the class.
    lead_wdeg: usize,
}

struct HasseEvaluator<'a> {
    field: &'a Field,
    binom: BinomialsModP,
    alpha_pows: Vec<Symbol>,
    delta_pows: Vec<Symbol>,
}

impl<'a> HasseEvaluator<'a> {
    fn new(field: &'a Field) -> Self {
        HasseEvaluator {
            field,
            binom: BinomialsModP::new(field.characteristic()),
            alpha_pows: Vec::new(),
            delta_pows: Vec::new(),
        }
    }

    fn set_point(&mut self, alpha: Symbol, delta: Symbol, x_len: usize, y_len: usize) {
        let f = self.field;
        let powers = |base: Symbol, len: usize| {
            let mut v = Vec::with_capacity(len);
            let mut acc = Symbol::ONE;
            for _ in 0..len {
                v.push(acc);
                acc = f.mul(acc, base);
            }
            v
        };
        self.alpha_pows = powers(alpha, x_len);
        self.delta_pows = powers(delta, y_len);
    }

    /// Coefficient of `X^r Y^s` in `g(X + α, Y + δ)`.
    fn eval(&self, g: &[Vec<Symbol>], r: usize, s: usize) -> Symbol {
        let f = self.field;
        let mut total = Symbol::ZERO;
        for (b, row) in g.iter().enumerate().skip(s) {
            if row.len() <= r {
                continue;
            }
            let ys = f.mul(self.binom.symbol(f, b, s), self.delta_pows[b - s]);
            if ys.is_zero() {
                continue;
            }
            let mut inner = Symbol::ZERO;
            for (a, &c) in row.iter().enumerate().skip(r) {
                if c.is_zero() {
                    continue;
                }
                let xs = f.mul(self.binom.symbol(f, a, r), self.alpha_pows[a - r]);
                inner = f.add(inner, f.mul(c, xs));
            }
            total = f.add(total, f.mul(inner, ys));
        }
        total
    }
}

/// Nonzero Q of weighted degree at most the planned Δ that vanishes with
/// multiplicity at least `m_{i,j}` at every point `(α_j, δ_i)`.
pub fn interpolate(m: &MultiplicityMatrix, code: &RsCode) -> Result<BivariatePolynomial> {
    interpolate_with_plan(m, code).map(|(_, q)| q)
}

pub fn interpolate_with_plan(
    m: &MultiplicityMatrix,
    code: &RsCode,
) -> Result<(InterpolationPlan, BivariatePolynomial)> {
    let field = code.field();
    if m.field() != field {
        return Err(Error::InvalidParameter(
            "multiplicity matrix and code use different fields".into(),
        ));
    }
    if m.n() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: m.n(),
        });
    }
    let k = code.k();
    let w = k - 1;
    let plan = choose_interpolation_degree(&m.cost(), k)?;

    let mut cands: Vec<Candidate> = (0..=plan.y_cap)
        .map(|b| {
            let mut rows = vec![Vec::new(); b + 1];
            rows[b] = vec![Symbol::ONE];
            Candidate {
                rows,
                lead_wdeg: w * b,
            }
        })
        .collect();

    let mut hasse = HasseEvaluator::new(field);
    let mut discrepancies = vec![Symbol::ZERO; cands.len()];
    for (j, &alpha) in code.alpha().iter().enumerate() {
        for &(delta, mult) in m.column(j) {
            let mult = mult as usize;
            let x_len = cands
                .iter()
                .flat_map(|c| c.rows.iter().map(Vec::len))
                .max()
                .unwrap_or(0)
                + mult;
            hasse.set_point(alpha, delta, x_len, plan.y_cap + 1);
            for total in 0..mult {
                for s in 0..=total {
                    let r = total - s;
                    for (d, c) in discrepancies.iter_mut().zip(&cands) {
                        *d = hasse.eval(&c.rows, r, s);
                    }
                    let pivot = (0..cands.len())
                        .filter(|&b| !discrepancies[b].is_zero())
                        .min_by_key(|&b| (cands[b].lead_wdeg, b));
                    let Some(pivot) = pivot else { continue };
                    let dp = discrepancies[pivot];
                    let pivot_rows = std::mem::take(&mut cands[pivot].rows);
                    for (b, cand) in cands.iter_mut().enumerate() {
                        let db = discrepancies[b];
                        if b == pivot || db.is_zero() {
                            continue;
                        }
                        combine(field, &mut cand.rows, dp, &pivot_rows, db);
                    }
                    let pc = &mut cands[pivot];
                    pc.rows = times_x_minus(field, pivot_rows, alpha);
                    pc.lead_wdeg += 1;
                }
            }
        }
    }

    let best = cands
        .iter()
        .enumerate()
        .min_by_key(|(b, c)| (c.lead_wdeg, *b))
        .map(|(_, c)| c)
        .expect("at least one candidate");
    let q = BivariatePolynomial::from_rows(field, &best.rows);
    assert!(!q.is_zero(), "interpolation produced the zero polynomial");
    assert!(
        q.weighted_degree(k).unwrap_or(0) <= plan.delta,
        "interpolation exceeded the planned weighted degree"
    );
    Ok((plan, q))
}

/// `g ← dp·g − db·pivot`.
fn combine(field: &Field, g: &mut Vec<Vec<Symbol>>, dp: Symbol, pivot: &[Vec<Symbol>], db: Symbol) {
    if g.len() < pivot.len() {
        g.resize(pivot.len(), Vec::new());
    }
    let minus_db = field.neg(db);
    for (b, row) in g.iter_mut().enumerate() {
        for c in row.iter_mut() {
            *c = field.mul(*c, dp);
        }
        if let Some(prow) = pivot.get(b) {
            if row.len() < prow.len() {
                row.resize(prow.len(), Symbol::ZERO);
            }
            for (c, &pc) in row.iter_mut().zip(prow) {
                *c = field.add(*c, field.mul(pc, minus_db));
            }
        }
        trim(row);
    }
}

/// `(X − α)·g`.
fn times_x_minus(field: &Field, mut g: Vec<Vec<Symbol>>, alpha: Symbol) -> Vec<Vec<Symbol>> {
    let neg_alpha = field.neg(alpha);
    for row in g.iter_mut() {
        if row.is_empty() {
            continue;
        }
        row.insert(0, Symbol::ZERO);
        for a in 0..row.len() - 1 {
            let next = row[a + 1];
            row[a] = field.add(row[a], field.mul(next, neg_alpha));
        }
    }
    g
}
