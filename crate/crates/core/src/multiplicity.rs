//! Multiplicity matrices built from reads, with their cost and score.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::bounds::binom;
use crate::code::Word;
use crate::error::{Error, Result};
use crate::field::{Field, Symbol};

/// Upper limit on `μ·|Y'|`, the common column sum.
pub const MAX_COLUMN_SUM: u64 = 1 << 20;

/// A q×n matrix of interpolation multiplicities. Row i is the field element
/// `δ_i`, column j the evaluation point `α_j`.
///
/// Columns are stored sparsely as `(row, multiplicity)` pairs sorted by row;
/// a column built from |Y'| reads has at most |Y'| nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityMatrix {
    field: Field,
    columns: Vec<Vec<(Symbol, u32)>>,
    mu: u32,
    sources: usize,
}

impl MultiplicityMatrix {
    /// Accumulates μ at `(y_j, j)` for every read y and coordinate j.
    pub fn from_reads(field: &Field, reads: &[Word], mu: u32) -> Result<Self> {
        let first = reads
            .first()
            .ok_or_else(|| Error::InvalidParameter("no reads given".into()))?;
        if mu == 0 {
            return Err(Error::InvalidParameter("mu must be at least 1".into()));
        }
        let column_sum = mu as u64 * reads.len() as u64;
        if column_sum > MAX_COLUMN_SUM {
            return Err(Error::MultiplicityOverflow(column_sum));
        }
        let n = first.len();
        for y in reads {
            y.validate(field, n)?;
        }
        let mut columns = Vec::with_capacity(n);
        for j in 0..n {
            let mut col: Vec<(Symbol, u32)> = Vec::with_capacity(reads.len());
            for y in reads {
                let row = y.symbols()[j];
                match col.binary_search_by_key(&row, |&(r, _)| r) {
                    Ok(pos) => col[pos].1 += mu,
                    Err(pos) => col.insert(pos, (row, mu)),
                }
            }
            columns.push(col);
        }
        Ok(MultiplicityMatrix {
            field: field.clone(),
            columns,
            mu,
            sources: reads.len(),
        })
    }

    /// Builds a matrix from explicit `(row, column, multiplicity)` entries;
    /// repeated positions accumulate. `mu` and `sources` are set to 0.
    pub fn from_entries(
        field: &Field,
        n: usize,
        entries: impl IntoIterator<Item = (Symbol, usize, u32)>,
    ) -> Result<Self> {
        let mut columns: Vec<Vec<(Symbol, u32)>> = vec![Vec::new(); n];
        for (row, j, m) in entries {
            field.check(row)?;
            if j >= n {
                return Err(Error::InvalidParameter(format!(
                    "column {j} out of range for n = {n}"
                )));
            }
            if m == 0 {
                continue;
            }
            let col = &mut columns[j];
            match col.binary_search_by_key(&row, |&(r, _)| r) {
                Ok(pos) => col[pos].1 += m,
                Err(pos) => col.insert(pos, (row, m)),
            }
        }
        Ok(MultiplicityMatrix {
            field: field.clone(),
            columns,
            mu: 0,
            sources: 0,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn mu(&self) -> u32 {
        self.mu
    }

    /// Number of reads that contributed, |Y'|.
    pub fn sources(&self) -> usize {
        self.sources
    }

    /// `m_{i,j}`.
    pub fn get(&self, row: Symbol, col: usize) -> u32 {
        self.columns[col]
            .binary_search_by_key(&row, |&(r, _)| r)
            .map(|pos| self.columns[col][pos].1)
            .unwrap_or(0)
    }

    /// Nonzero entries of column j, sorted by row.
    pub fn column(&self, col: usize) -> &[(Symbol, u32)] {
        &self.columns[col]
    }

    pub fn column_sum(&self, col: usize) -> u64 {
        self.columns[col].iter().map(|&(_, m)| m as u64).sum()
    }

    /// Nonzero entries as `(row, column, multiplicity)`, column-major.
    pub fn entries(&self) -> impl Iterator<Item = (Symbol, usize, u32)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |&(r, m)| (r, j, m)))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// `C(M) = Σ C(m_{i,j}+1, 2)`.
    pub fn cost(&self) -> BigUint {
        self.entries().map(|(_, _, m)| binom(m as i64 + 1, 2)).sum()
    }

    /// `⟨M, [v]⟩ = Σ_j m_{v_j, j}`.
    pub fn score(&self, v: &Word) -> Result<BigUint> {
        v.validate(&self.field, self.n())?;
        Ok(self.score_unchecked(v.symbols()))
    }

    pub(crate) fn score_unchecked(&self, v: &[Symbol]) -> BigUint {
        let total: u64 = v
            .iter()
            .enumerate()
            .map(|(j, &s)| self.get(s, j) as u64)
            .sum();
        BigUint::from(total)
    }
}

/// Closed form of the cost of a matrix built from |Y'| reads:
/// `n·C(μ|Y'|+1, 2) − (μ²/2)·Σ_{u,v∈Y'} d(u,v)`, where `pairwise` counts
/// every ordered pair (so it is even).
pub fn cost_closed_form(n: usize, sources: usize, mu: u32, pairwise: &BigUint) -> Result<BigUint> {
    if (pairwise % 2u32) != BigUint::zero() {
        return Err(Error::InvalidParameter(
            "ordered pairwise distance sum must be even".into(),
        ));
    }
    let column = mu as i64 * sources as i64;
    let full = BigUint::from(n) * binom(column + 1, 2);
    let mu2 = BigUint::from(mu) * BigUint::from(mu);
    let removed = mu2 * pairwise / 2u32;
    if removed > full {
        return Err(Error::InvalidParameter(
            "pairwise distance sum is too large for these parameters".into(),
        ));
    }
    Ok(full - removed)
}

/// Outcome of the list-membership test `s² > 2(k−1)·C(M)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdCheck {
    pub passes: bool,
    /// `2(k−1)·C(M)`, the exact quantity the squared score is compared with.
    pub threshold_squared: BigUint,
    /// `√(2(k−1)·C(M))`, for diagnostics only.
    pub threshold: f64,
}

/// Strict integer comparison `score² > 2(k−1)·cost(M)`.
pub fn kv_threshold_check(m: &MultiplicityMatrix, k: usize, score: &BigUint) -> ThresholdCheck {
    threshold_check_with_cost(&m.cost(), k, score)
}

pub fn threshold_check_with_cost(cost: &BigUint, k: usize, score: &BigUint) -> ThresholdCheck {
    assert!(k >= 2, "threshold is undefined for k < 2");
    let threshold_squared = BigUint::from(2 * (k - 1)) * cost;
    ThresholdCheck {
        passes: score * score > threshold_squared,
        threshold: threshold_squared.to_f64().unwrap_or(f64::INFINITY).sqrt(),
        threshold_squared,
    }
}
