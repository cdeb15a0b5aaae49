use super::bitvec::BitVec;
use crate::error::{Error, Result};

/// Cyclic redundancy check defined by a generator polynomial over GF(2).
///
/// The generator is stored by coefficient: bit `i` of `generator` is the
/// coefficient of `x^i`. Messages are read first bit as the highest-degree
/// coefficient, and the CRC is emitted the same way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrcSpec {
    degree: usize,
    generator: BitVec,
    low_mask: u64,
}

impl CrcSpec {
    /// The default 11-bit generator `x^11 + x^10 + x^9 + x^5 + x^4 + x + 1`.
    pub const DEFAULT_11_POLY: u64 = 0b1110_0011_0011;

    pub fn new(generator: BitVec) -> Result<Self> {
        let degree = generator
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::InvalidParameter("empty CRC generator".into()))?;
        if degree == 0 || degree > 63 {
            return Err(Error::InvalidParameter(format!(
                "CRC degree {degree} not in 1..=63"
            )));
        }
        if !generator.get(degree) {
            return Err(Error::InvalidParameter(
                "CRC generator leading coefficient must be 1".into(),
            ));
        }
        if !generator.get(0) {
            return Err(Error::InvalidParameter(
                "CRC generator constant term must be 1".into(),
            ));
        }
        let low_mask = generator
            .iter_ones()
            .filter(|&i| i < degree)
            .fold(0u64, |acc, i| acc | (1 << i));
        Ok(Self {
            degree,
            generator,
            low_mask,
        })
    }

    /// Builds from an integer whose bit `i` is the coefficient of `x^i`.
    pub fn from_poly(poly: u64) -> Result<Self> {
        if poly == 0 {
            return Err(Error::InvalidParameter("zero CRC generator".into()));
        }
        let degree = 63 - poly.leading_zeros() as usize;
        Self::new(BitVec::from_fn(degree + 1, |i| (poly >> i) & 1 == 1))
    }

    pub fn default_11() -> Self {
        Self::from_poly(Self::DEFAULT_11_POLY).expect("valid built-in polynomial")
    }

    /// Number of CRC bits `l`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generator(&self) -> &BitVec {
        &self.generator
    }

    /// Generator as an integer, bit `i` = coefficient of `x^i`.
    pub fn poly(&self) -> u64 {
        self.low_mask | (1 << self.degree)
    }

    fn remainder(&self, bits: impl Iterator<Item = bool>) -> u64 {
        let top = 1u64 << (self.degree - 1);
        let mask = (1u64 << self.degree) - 1;
        let mut reg = 0u64;
        for b in bits {
            let feedback = ((reg & top) != 0) ^ b;
            reg = (reg << 1) & mask;
            if feedback {
                reg ^= self.low_mask;
            }
        }
        reg
    }
}

/// Remainder of `m(x) · x^l` divided by the generator, `l` bits, highest
/// degree first.
pub fn crc_compute(message: &BitVec, spec: &CrcSpec) -> BitVec {
    let reg = spec.remainder(message.iter());
    let l = spec.degree;
    BitVec::from_fn(l, |i| (reg >> (l - 1 - i)) & 1 == 1)
}

/// Checks a word laid out as `message ∥ crc`.
pub fn crc_check(word: &BitVec, spec: &CrcSpec) -> bool {
    let l = spec.degree;
    if word.len() < l {
        return false;
    }
    let split = word.len() - l;
    crc_compute(&word.slice(0, split), spec) == word.slice(split, word.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Schoolbook polynomial long division, coefficients highest degree first.
    fn long_division_remainder(dividend: &[u8], divisor: &[u8]) -> Vec<u8> {
        let mut rem = dividend.to_vec();
        let d = divisor.len();
        for i in 0..=(rem.len() - d) {
            if rem[i] == 1 {
                for j in 0..d {
                    rem[i + j] ^= divisor[j];
                }
            }
        }
        rem[rem.len() - (d - 1)..].to_vec()
    }

    fn divisor_msb_first(spec: &CrcSpec) -> Vec<u8> {
        (0..=spec.degree())
            .rev()
            .map(|i| spec.generator().bit(i))
            .collect()
    }

    #[test]
    fn zero_message_zero_crc() {
        let spec = CrcSpec::default_11();
        assert!(crc_compute(&BitVec::zeros(40), &spec).is_zero());
    }

    #[test]
    fn single_one_gives_x_l_mod_g() {
        let spec = CrcSpec::default_11();
        let mut dividend = vec![1u8];
        dividend.extend(std::iter::repeat_n(0, 11));
        let expected = long_division_remainder(&dividend, &divisor_msb_first(&spec));
        let crc = crc_compute(&BitVec::from_bits(&[1]), &spec);
        assert_eq!(crc.to_bits(), expected);
        // x^11 mod g = x^10 + x^9 + x^5 + x^4 + x + 1
        assert_eq!(crc.to_string(), "11000110011");
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(CrcSpec::from_poly(0b1010).is_err());
        assert!(CrcSpec::from_poly(1).is_err());
        assert!(CrcSpec::new(BitVec::parse("110").unwrap()).is_err());
    }

    #[test]
    fn random_messages_pass_and_single_flips_fail() {
        use rand::{Rng, SeedableRng};
        let spec = CrcSpec::default_11();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let len = rng.random_range(1..200);
            let m = BitVec::from_fn(len, |_| rng.random());
            let word = m.concat(&crc_compute(&m, &spec));
            assert!(crc_check(&word, &spec));
            let mut bad = word.clone();
            bad.flip(rng.random_range(0..word.len()));
            assert!(!crc_check(&bad, &spec));
        }
    }

    proptest! {
        #[test]
        fn matches_long_division(bits in prop::collection::vec(0u8..2, 1..150)) {
            let spec = CrcSpec::default_11();
            let mut dividend = bits.clone();
            dividend.extend(std::iter::repeat_n(0, spec.degree()));
            let expected = long_division_remainder(&dividend, &divisor_msb_first(&spec));
            prop_assert_eq!(crc_compute(&BitVec::from_bits(&bits), &spec).to_bits(), expected);
        }
    }
}
