//! Binary linear algebra, CRC and entropy helpers shared by all codecs.

mod alist;
mod bitvec;
mod crc;
mod entropy;
mod matrix;

pub use alist::{read_alist, write_alist};
pub use bitvec::BitVec;
pub use crc::{crc_check, crc_compute, CrcSpec};
pub use entropy::{binary_entropy, inverse_binary_entropy};
pub use matrix::{
    syndrome, systematize, systematize_with_rhs, DenseMatrix, Gf2Matrix, SparseMatrix, Systematized,
};
