use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::LLR_CLAMP;
use crate::error::{Error, Result};
use crate::gf2::{crc_compute, BitVec, CrcSpec};

use super::boxplus;

/// Multiplies by `G_n = F^{⊗m}`, `F = [[1, 0], [1, 1]]`, in natural bit
/// order. The transform is its own inverse.
pub fn polar_transform(u: &BitVec) -> Result<BitVec> {
    let n = u.len();
    if !n.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "polar length {n} is not a power of two"
        )));
    }
    let mut x = u.to_bits();
    transform_in_place(&mut x);
    Ok(BitVec::from_bits(&x))
}

pub(crate) fn transform_in_place(x: &mut [u8]) {
    let n = x.len();
    let mut half = 1;
    while half < n {
        for block in x.chunks_exact_mut(2 * half) {
            let (a, b) = block.split_at_mut(half);
            for (l, r) in a.iter_mut().zip(b.iter()) {
                *l ^= r;
            }
        }
        half *= 2;
    }
}

/// Ranks transform positions by decreasing conditional entropy
/// `H(U[i] | Y_B, U[..i])` under a BSC(`design_p`) correlation.
///
/// The entropy of each position is estimated by genie-aided successive
/// cancellation: `mc_budget` error patterns are drawn, the decoder is fed
/// the true previous bits, and `log2(1 + e^{-λ_i})` (the information
/// content of the true bit given its LLR) is averaged per position. Equal
/// estimates keep the lower index first.
pub fn construct_reliability_order(
    n: usize,
    design_p: f64,
    mc_budget: usize,
    seed: u64,
) -> Result<Vec<usize>> {
    Ok(order_from_entropies(&estimate_conditional_entropies(
        n, design_p, mc_budget, seed,
    )?))
}

/// Per-position conditional entropy estimates in bits.
pub fn estimate_conditional_entropies(
    n: usize,
    design_p: f64,
    mc_budget: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if !n.is_power_of_two() || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "polar length {n} is not a power of two >= 2"
        )));
    }
    if !(design_p > 0.0 && design_p < 0.5) {
        return Err(Error::InvalidProbability(design_p));
    }
    if mc_budget == 0 {
        return Err(Error::InvalidParameter("mc_budget must be >= 1".into()));
    }
    const CHUNK: usize = 1024;
    let magnitude = ((1.0 - design_p) / design_p).ln().min(LLR_CLAMP);
    let chunks = mc_budget.div_ceil(CHUNK);
    let partial: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let trials = CHUNK.min(mc_budget - c * CHUNK);
            let mut sums = vec![0.0; n];
            let mut llr = vec![0.0; n];
            let mut scratch = vec![0.0; 2 * n];
            for _ in 0..trials {
                for l in llr.iter_mut() {
                    *l = if rng.random::<f64>() < design_p {
                        -magnitude
                    } else {
                        magnitude
                    };
                }
                genie_zero(&llr, &mut scratch, &mut sums);
            }
            sums
        })
        .collect();
    let mut total = vec![0.0; n];
    for sums in partial {
        for (t, s) in total.iter_mut().zip(sums) {
            *t += s;
        }
    }
    Ok(total.into_iter().map(|s| s / mc_budget as f64).collect())
}

/// Genie-aided SC with the all-zero word: every partial sum is zero, so
/// the right-branch rule reduces to `a + b`. Adds `log2(1 + e^{-λ_i})` of
/// each leaf to `acc`.
fn genie_zero(llr: &[f64], scratch: &mut [f64], acc: &mut [f64]) {
    let n = llr.len();
    if n == 1 {
        acc[0] += ln1p_exp_neg(llr[0]) / std::f64::consts::LN_2;
        return;
    }
    let half = n / 2;
    let (child, rest) = scratch.split_at_mut(half);
    let (acc_left, acc_right) = acc.split_at_mut(half);
    for k in 0..half {
        child[k] = boxplus(llr[k], llr[k + half]);
    }
    genie_zero(child, rest, acc_left);
    for k in 0..half {
        child[k] = llr[k] + llr[k + half];
    }
    genie_zero(child, rest, acc_right);
}

/// `ln(1 + e^{-x})` without overflow for negative `x`.
#[inline]
pub(crate) fn ln1p_exp_neg(x: f64) -> f64 {
    if x >= 0.0 {
        (-x).exp().ln_1p()
    } else {
        -x + x.exp().ln_1p()
    }
}

pub(crate) fn order_from_entropies(entropies: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..entropies.len()).collect();
    order.sort_by(|&a, &b| entropies[b].total_cmp(&entropies[a]));
    order
}

/// Writes an entropy order as one index per line, highest entropy first.
pub fn write_order(order: &[usize]) -> String {
    order.iter().map(|i| format!("{i}\n")).collect()
}

pub fn read_order(text: &str) -> Result<Vec<usize>> {
    let order = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim().parse::<usize>().map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    validate_permutation(&order)?;
    Ok(order)
}

fn validate_permutation(order: &[usize]) -> Result<()> {
    let n = order.len();
    let mut seen = vec![false; n];
    for &i in order {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidParameter(format!(
                "order is not a permutation of 0..{n}"
            )));
        }
    }
    Ok(())
}

/// Polar source code with side information.
///
/// Alice publishes the transform bits at the `n_he` highest-entropy
/// positions (in entropy order) followed by a CRC computed over her
/// observation.
#[derive(Clone, Debug)]
pub struct PolarCode {
    n: usize,
    reliability_order: Vec<usize>,
    n_he: usize,
    /// For each transform position, its slot in the public message if pinned.
    slot: Vec<Option<usize>>,
    crc: CrcSpec,
}

impl PolarCode {
    pub fn new(reliability_order: Vec<usize>, n_he: usize, crc: CrcSpec) -> Result<Self> {
        let n = reliability_order.len();
        if !n.is_power_of_two() || n < 2 {
            return Err(Error::InvalidParameter(format!(
                "polar length {n} is not a power of two >= 2"
            )));
        }
        validate_permutation(&reliability_order)?;
        if n_he + crc.degree() > n {
            return Err(Error::InvalidParameter(format!(
                "{n_he} pinned bits plus {} CRC bits exceed n = {n}",
                crc.degree()
            )));
        }
        let mut slot = vec![None; n];
        for (k, &pos) in reliability_order[..n_he].iter().enumerate() {
            slot[pos] = Some(k);
        }
        Ok(Self {
            n,
            reliability_order,
            n_he,
            slot,
            crc,
        })
    }

    /// Constructs the order by Monte-Carlo and sizes the pinned set so the
    /// public message has `public_bits` bits in total.
    pub fn build(
        n: usize,
        public_bits: usize,
        crc: CrcSpec,
        design_p: f64,
        mc_budget: usize,
        seed: u64,
    ) -> Result<Self> {
        let n_he = public_bits.checked_sub(crc.degree()).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "public message of {public_bits} bits cannot hold a {}-bit CRC",
                crc.degree()
            ))
        })?;
        let order = construct_reliability_order(n, design_p, mc_budget, seed)?;
        Self::new(order, n_he, crc)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn log_n(&self) -> usize {
        self.n.trailing_zeros() as usize
    }

    pub fn reliability_order(&self) -> &[usize] {
        &self.reliability_order
    }

    /// Pinned (transmitted) transform positions, highest entropy first.
    pub fn high_entropy_set(&self) -> &[usize] {
        &self.reliability_order[..self.n_he]
    }

    pub fn crc(&self) -> &CrcSpec {
        &self.crc
    }

    #[inline]
    pub(crate) fn slot(&self, pos: usize) -> Option<usize> {
        self.slot[pos]
    }

    /// Bits revealed on the public channel: pinned bits plus CRC.
    pub fn leakage_bits(&self) -> usize {
        self.n_he + self.crc.degree()
    }

    pub fn key_bits(&self) -> usize {
        self.n - self.leakage_bits()
    }

    pub fn unpinned_count(&self) -> usize {
        self.n - self.n_he
    }
}

/// Alice's public message: pinned transform bits followed by the CRC of
/// `y_a`.
pub fn encode_public_message(y_a: &BitVec, code: &PolarCode) -> Result<BitVec> {
    if y_a.len() != code.n() {
        return Err(Error::DimensionMismatch {
            expected: code.n(),
            actual: y_a.len(),
        });
    }
    let u = polar_transform(y_a)?;
    Ok(u.gather(code.high_entropy_set())
        .concat(&crc_compute(y_a, code.crc())))
}
