//! Sequence reconstruction for Reed-Solomon codes.
//!
//! Given many distinct noisy reads of one codeword, each within Hamming
//! distance `t`, the two-read decoder selects a far-apart pair of reads in a
//! single linear scan, turns them into a multiplicity matrix, list-decodes
//! with soft-decision interpolation and keeps the one candidate that lies
//! within `t` of every read. The pair's distance lowers the interpolation
//! cost, which lets the decoder succeed beyond the Johnson radius.
//!
//! Supporting modules cover finite-field arithmetic, Hamming-ball
//! combinatorics, decoding-radius curves, baseline decoders and read-set
//! generators.

pub mod bounds;
pub mod channel;
pub mod cli;
pub mod code;
pub mod error;
pub mod field;
pub mod kv;
pub mod multiplicity;
pub mod reconstruct;

pub use code::{distance, RsCode, Word};
pub use error::{Error, Result};
pub use field::{Field, Symbol};
pub use multiplicity::MultiplicityMatrix;
pub use reconstruct::ReadSet;
