//! Correlated binary source and soft-information helpers.
//!
//! Alice observes `yA` with i.i.d. uniform bits, Bob observes
//! `yB = yA ⊕ e` with `e` i.i.d. Bernoulli(p).
//!
//! Every trial draws from its own ChaCha8 stream: the generator is seeded
//! with `seed` (via `SeedableRng::seed_from_u64`) and the stream id is set to
//! the trial index. Alice's bits come from 64-bit words, least significant
//! bit first; then one `f64` uniform per position decides the flip. The
//! output is therefore a pure function of `(seed, trial)`.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// Per-bit log-likelihood ratios `ln(Pr(bit = 0) / Pr(bit = 1))`.
pub type LlrVec = Vec<f64>;

/// Magnitude limit applied to all soft values.
pub const LLR_CLAMP: f64 = 30.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SourceParams {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl SourceParams {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self> {
        let params = Self { n, p, seed };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("blocklength must be >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidProbability(self.p));
        }
        Ok(())
    }
}

/// Draws the observation pair for one trial.
pub fn sample_pair(params: &SourceParams, trial: u64) -> (BitVec, BitVec) {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(trial);
    let n = params.n;
    let words = (0..n.div_ceil(64)).map(|_| rng.next_u64()).collect();
    let y_a = BitVec::from_words(n, words);
    let mut y_b = y_a.clone();
    for i in 0..n {
        if rng.random::<f64>() < params.p {
            y_b.flip(i);
        }
    }
    (y_a, y_b)
}

/// Channel LLRs for Bob's observation under crossover `p`.
///
/// Rejects `p ∈ {0, 1}`, where the ratio is infinite; see [`llr_clamped`].
pub fn llr_init(y_b: &BitVec, p: f64) -> Result<LlrVec> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    let mag = ((1.0 - p) / p).ln();
    Ok(y_b.iter().map(|b| if b { -mag } else { mag }).collect())
}

/// Like [`llr_init`] but accepts any `p ∈ [0, 1]`, limiting magnitudes to
/// `limit`.
pub fn llr_clamped(y_b: &BitVec, p: f64, limit: f64) -> Result<LlrVec> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let mag = if p == 0.0 {
        limit
    } else if p == 1.0 {
        -limit
    } else {
        ((1.0 - p) / p).ln().clamp(-limit, limit)
    };
    Ok(y_b.iter().map(|b| if b { -mag } else { mag }).collect())
}

/// Hard decision of an LLR; zero decides to bit 0.
#[inline]
pub fn hard_decision(llr: f64) -> bool {
    llr < 0.0
}
