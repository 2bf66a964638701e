//! Soft-decision list decoding: interpolation with multiplicities followed
//! by y-root extraction.
//!
//! Any codeword whose score against the multiplicity matrix satisfies
//! `score² > 2(k−1)·C(M)` is returned, and the list never exceeds
//! `⌊√(2·C(M)/(k−1))⌋` entries. Roots below the threshold that happen to
//! factor out are kept; callers filter them.

mod bivariate;
mod interpolate;
mod roots;

pub use bivariate::BivariatePolynomial;
pub use interpolate::{
    choose_interpolation_degree, interpolate, interpolate_with_plan, monomial_count,
    InterpolationPlan, MAX_MONOMIALS,
};
pub use roots::y_roots;

use num_bigint::BigUint;

use crate::code::{RsCode, Word};
use crate::error::Result;
use crate::field::Symbol;
use crate::multiplicity::MultiplicityMatrix;

/// Result of one list-decoding run.
#[derive(Clone, Debug)]
pub struct KvList {
    pub plan: InterpolationPlan,
    pub interpolant: BivariatePolynomial,
    /// Message polynomials, lexicographically ordered.
    pub messages: Vec<Vec<Symbol>>,
    /// Codewords of `messages`, in the same order.
    pub codewords: Vec<Word>,
}

/// `⌊√(2·C/(k−1))⌋`.
pub fn list_size_bound(cost: &BigUint, k: usize) -> BigUint {
    (cost * 2u32 / BigUint::from(k - 1)).sqrt()
}

pub fn kv_list_decode(code: &RsCode, m: &MultiplicityMatrix) -> Result<KvList> {
    let (plan, interpolant) = interpolate_with_plan(m, code)?;
    let messages = y_roots(&interpolant, code.k());
    let codewords = messages.iter().map(|f| code.encode_unchecked(f)).collect();
    Ok(KvList {
        plan,
        interpolant,
        messages,
        codewords,
    })
}
