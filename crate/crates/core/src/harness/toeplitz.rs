use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::{BitVec, DenseMatrix};

/// Seeded `k × n` Toeplitz matrix over GF(2), a universal hash family.
///
/// Entry `(r, c)` is `diagonal[r + n - 1 - c]`, so every diagonal is
/// constant and the `n + k - 1` diagonal bits determine the matrix.
#[derive(Clone, Debug)]
pub struct ToeplitzHash {
    seed: u64,
    diagonal: BitVec,
    matrix: DenseMatrix,
}

impl ToeplitzHash {
    pub fn new(n: usize, k: usize, seed: u64) -> Result<Self> {
        if n == 0 || k == 0 || k > n {
            return Err(Error::InvalidParameter(format!(
                "Toeplitz hash needs 1 <= k <= n, got k = {k}, n = {n}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let diagonal = BitVec::from_fn(n + k - 1, |_| rng.random());
        let rows = (0..k)
            .map(|r| BitVec::from_fn(n, |c| diagonal.get(r + n - 1 - c)))
            .collect();
        let matrix = DenseMatrix::from_rows(n, rows)?;
        Ok(Self {
            seed,
            diagonal,
            matrix,
        })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn input_len(&self) -> usize {
        self.matrix.cols()
    }

    pub fn output_len(&self) -> usize {
        self.matrix.rows()
    }

    pub fn diagonal(&self) -> &BitVec {
        &self.diagonal
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }
}

/// Compresses a reconciled string into a key: `T yᵗ`.
pub fn privacy_amplify(y: &BitVec, hash: &ToeplitzHash) -> Result<BitVec> {
    hash.matrix.mul_vec(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random(n: usize, seed: u64) -> BitVec {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        BitVec::from_fn(n, |_| rng.random())
    }

    #[test]
    fn constant_diagonals() {
        let h = ToeplitzHash::new(20, 7, 3).unwrap();
        let m = h.matrix();
        for r in 0..6 {
            for c in 0..19 {
                assert_eq!(m.get(r, c), m.get(r + 1, c + 1));
            }
        }
        assert_eq!(h.diagonal().len(), 26);
    }

    #[test]
    fn zero_and_linearity() {
        let h = ToeplitzHash::new(128, 64, 9).unwrap();
        assert!(privacy_amplify(&BitVec::zeros(128), &h).unwrap().is_zero());
        for s in 0..50 {
            let (a, b) = (random(128, 2 * s), random(128, 2 * s + 1));
            let lhs = privacy_amplify(&(&a ^ &b), &h).unwrap();
            let rhs = &privacy_amplify(&a, &h).unwrap() ^ &privacy_amplify(&b, &h).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let a = ToeplitzHash::new(64, 16, 5).unwrap();
        let b = ToeplitzHash::new(64, 16, 5).unwrap();
        assert_eq!(a.diagonal(), b.diagonal());
        let y = random(64, 1);
        assert_eq!(
            privacy_amplify(&y, &a).unwrap(),
            privacy_amplify(&y, &b).unwrap()
        );
    }

    /// A single-bit difference survives hashing unless the matching column
    /// is zero, which happens with probability `2^-k`.
    #[test]
    fn one_bit_difference_collision_rate() {
        let (n, k, trials) = (32, 4, 20_000u64);
        let y = random(n, 77);
        let mut y2 = y.clone();
        y2.flip(11);
        let mut equal = 0;
        for seed in 0..trials {
            let h = ToeplitzHash::new(n, k, seed).unwrap();
            if privacy_amplify(&y, &h).unwrap() == privacy_amplify(&y2, &h).unwrap() {
                equal += 1;
            }
        }
        let rate = equal as f64 / trials as f64;
        let expect = 1.0 / 16.0;
        let se = (expect * (1.0 - expect) / trials as f64).sqrt();
        assert!((rate - expect).abs() < 4.0 * se, "{rate}");
    }

    #[test]
    fn rejects_bad_lengths() {
        assert!(ToeplitzHash::new(8, 9, 0).is_err());
        assert!(ToeplitzHash::new(8, 0, 0).is_err());
        let h = ToeplitzHash::new(8, 4, 0).unwrap();
        assert!(privacy_amplify(&BitVec::zeros(9), &h).is_err());
    }
}
