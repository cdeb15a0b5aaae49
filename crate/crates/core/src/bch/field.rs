use crate::error::{Error, Result};

/// Default primitive polynomials, bit `i` = coefficient of `x^i`.
const PRIMITIVE: [(usize, u32); 10] = [
    (3, 0b1011),
    (4, 0x13),
    (5, 0x25),
    (6, 0x43),
    (7, 0x89),
    (8, 0x11D),
    (9, 0x211),
    (10, 0x409),
    (11, 0x805),
    (12, 0x1053),
];

/// GF(2^w) with log/antilog tables. Elements are `u16` bit patterns in the
/// polynomial basis; `alpha` is the class of `x`.
#[derive(Clone, Debug)]
pub struct Gf2mField {
    w: usize,
    poly: u32,
    /// `exp[i] = α^i` for `0 <= i < 2 * order`, doubled to skip a reduction.
    exp: Vec<u16>,
    /// `log[x]` for `x != 0`; `log[0]` is unused.
    log: Vec<u32>,
}

impl Gf2mField {
    /// Field with the built-in primitive polynomial for `3 <= w <= 12`.
    pub fn new(w: usize) -> Result<Self> {
        let poly = PRIMITIVE
            .iter()
            .find(|(d, _)| *d == w)
            .map(|(_, p)| *p)
            .ok_or_else(|| Error::InvalidParameter(format!("no built-in field for w = {w}")))?;
        Self::with_poly(w, poly)
    }

    /// Checks that `poly` has degree `w` and that `x` has full order modulo it.
    pub fn with_poly(w: usize, poly: u32) -> Result<Self> {
        if !(2..=15).contains(&w) || poly >> w != 1 {
            return Err(Error::InvalidParameter(format!(
                "polynomial {poly:#x} does not have degree {w}"
            )));
        }
        let order = (1usize << w) - 1;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u32; order + 1];
        let mut x: u32 = 1;
        for i in 0..order {
            if i > 0 && x == 1 {
                return Err(Error::InvalidParameter(format!(
                    "polynomial {poly:#x} is not primitive"
                )));
            }
            exp[i] = x as u16;
            log[x as usize] = i as u32;
            x <<= 1;
            if x >> w != 0 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(Error::InvalidParameter(format!(
                "polynomial {poly:#x} is not primitive"
            )));
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Ok(Self { w, poly, exp, log })
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// Multiplicative order `2^w - 1`.
    pub fn order(&self) -> usize {
        (1 << self.w) - 1
    }

    /// `α^e` for any exponent.
    #[inline]
    pub fn alpha_pow(&self, e: usize) -> u16 {
        self.exp[e % self.order()]
    }

    /// Discrete log of a nonzero element.
    #[inline]
    pub fn log(&self, x: u16) -> usize {
        debug_assert!(x != 0);
        self.log[x as usize] as usize
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        assert!(a != 0, "zero has no inverse");
        let l = self.log[a as usize] as usize;
        self.exp[(self.order() - l) % self.order()]
    }

    #[inline]
    pub fn div(&self, a: u16, b: u16) -> u16 {
        self.mul(a, self.inv(b))
    }
}
