//! BCH syndrome reconciliation: Berlekamp-Massey decoding in the coset of
//! Alice's syndrome, repeated over low-weight flips of Bob's observation.

mod code;
mod field;
mod list;

pub use code::{bm_decode, build_bch, BchCode};
pub use field::Gf2mField;
pub use list::{
    bch_candidates, bch_list_size, bch_reconcile, BchCandidate, BchOutcome, ListConfig,
};
