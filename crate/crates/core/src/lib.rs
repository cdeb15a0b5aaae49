//! Short-blocklength Slepian-Wolf reconciliation for secret key generation.
//!
//! Alice and Bob hold correlated binary strings. Alice publishes helper
//! data (a syndrome, or polar-transform bits plus a CRC) and Bob recovers
//! her string from it and his own observation. Three codec families are
//! provided:
//!
//! * [`ldpc`]: sum-product decoding in a syndrome coset followed by
//!   ordered-statistics reprocessing, optionally over every iteration.
//! * [`polar`]: high-entropy polar-transform bits plus a CRC, decoded by
//!   CRC-aided successive-cancellation list decoding.
//! * [`bch`]: BCH syndromes decoded by Berlekamp-Massey, wrapped in a list
//!   search over low-weight flips of Bob's observation.
//!
//! [`harness`] runs Monte-Carlo frame-error campaigns over these codecs and
//! [`bounds`] supplies the normal-approximation floor they are compared to.

pub mod bch;
pub mod bounds;
pub mod channel;
pub mod error;
pub mod gf2;
pub mod harness;
pub mod ldpc;
pub mod polar;

pub use error::{Error, Result};
