//! CRC-aided successive-cancellation list decoding of the polar source
//! code.
//!
//! Bob runs SC over the transform positions in natural order. Pinned
//! positions take the published value; every other position splits each
//! path in two and the list is pruned back to the `L` smallest path
//! metrics. The path metric is `Σ ln(1 + e^{-(1-2u_i)λ_i})` over all
//! positions, which equals `-ln Pr(u | y_B)` up to a constant when the
//! exact check-node rule is used.
//!
//! LLR storage per path: the layer for a node of size `s` lives at
//! `[s, 2s)`, so one `n`-entry buffer holds all depths below the root.
//! Left-sibling partial sums use the same layout.

use crate::channel::{llr_clamped, LLR_CLAMP};
use crate::error::{Error, Result};
use crate::gf2::{crc_compute, BitVec};

use super::boxplus;
use super::code::{ln1p_exp_neg, transform_in_place, PolarCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SclConfig {
    pub list_size: usize,
}

impl SclConfig {
    pub fn new(list_size: usize) -> Result<Self> {
        if list_size == 0 {
            return Err(Error::InvalidParameter("list size must be >= 1".into()));
        }
        Ok(Self { list_size })
    }
}

/// One surviving path at the end of decoding.
#[derive(Clone, Debug)]
pub struct FinalPath {
    pub estimate: BitVec,
    pub metric: f64,
    pub crc_ok: bool,
}

#[derive(Clone, Debug)]
pub struct SclOutput {
    pub estimate: BitVec,
    pub crc_ok: bool,
    pub metric: f64,
    /// Surviving paths in list order.
    pub finals: Vec<FinalPath>,
    /// Σ over positions of the number of live paths; a work proxy.
    pub path_steps: u64,
}

#[derive(Clone)]
struct Path {
    llr: Vec<f64>,
    left: Vec<u8>,
    u: Vec<u8>,
    metric: f64,
}

impl Path {
    fn new(n: usize) -> Self {
        Self {
            llr: vec![0.0; n],
            left: vec![0; n],
            u: vec![0; n],
            metric: 0.0,
        }
    }

    /// Computes the LLR of position `i`, reusing layers shared with `i - 1`.
    fn descend(&mut self, channel: &[f64], i: usize, log_n: usize) -> f64 {
        let n = channel.len();
        if n == 1 {
            return channel[0];
        }
        let first = if i == 0 {
            1
        } else {
            log_n - i.trailing_zeros() as usize
        };
        for depth in first..=log_n {
            let s = n >> depth;
            let (low, high) = self.llr.split_at_mut(2 * s);
            let out = &mut low[s..2 * s];
            let parent: &[f64] = if depth == 1 { channel } else { &high[..2 * s] };
            if depth == first && i != 0 {
                let left = &self.left[s..2 * s];
                for k in 0..s {
                    out[k] = if left[k] == 0 {
                        parent[k + s] + parent[k]
                    } else {
                        parent[k + s] - parent[k]
                    };
                }
            } else {
                for k in 0..s {
                    out[k] = boxplus(parent[k], parent[k + s]);
                }
            }
        }
        self.llr[1]
    }

    /// Records decision `bit` at position `i` and propagates partial sums
    /// into the left-sibling buffers.
    fn decide(&mut self, i: usize, bit: u8, cost: f64, scratch: &mut [u8]) {
        self.u[i] = bit;
        self.metric += cost;
        let n = self.u.len();
        scratch[0] = bit;
        let mut s = 1;
        let mut idx = i;
        while 2 * s <= n {
            if idx & 1 == 0 {
                self.left[s..2 * s].copy_from_slice(&scratch[..s]);
                return;
            }
            if 2 * s == n {
                return;
            }
            for k in 0..s {
                scratch[s + k] = scratch[k];
                scratch[k] ^= self.left[s + k];
            }
            s *= 2;
            idx >>= 1;
        }
    }
}

/// Both branch penalties, using `ln(1 + e^λ) = λ + ln(1 + e^{-λ})`.
#[inline]
fn penalties(llr: f64) -> [f64; 2] {
    let p0 = ln1p_exp_neg(llr);
    [p0, p0 + llr]
}

#[inline]
fn penalty(llr: f64, bit: u8) -> f64 {
    if bit == 0 {
        ln1p_exp_neg(llr)
    } else {
        ln1p_exp_neg(-llr)
    }
}

/// Decodes Alice's observation from her public message `s` and Bob's
/// observation under crossover `p`. Returns the best CRC-passing path, or
/// the best path overall if none passes.
pub fn scl_decode(
    s: &BitVec,
    y_b: &BitVec,
    p: f64,
    code: &PolarCode,
    cfg: &SclConfig,
) -> Result<BitVec> {
    if !(0.0..0.5).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let llr = llr_clamped(y_b, p, LLR_CLAMP)?;
    Ok(scl_decode_llr(s, &llr, code, cfg)?.estimate)
}

/// List decoding from arbitrary channel LLRs of Alice's bits.
pub fn scl_decode_llr(
    s: &BitVec,
    channel_llr: &[f64],
    code: &PolarCode,
    cfg: &SclConfig,
) -> Result<SclOutput> {
    let n = code.n();
    if channel_llr.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: channel_llr.len(),
        });
    }
    if s.len() != code.leakage_bits() {
        return Err(Error::DimensionMismatch {
            expected: code.leakage_bits(),
            actual: s.len(),
        });
    }
    if cfg.list_size == 0 {
        return Err(Error::InvalidParameter("list size must be >= 1".into()));
    }
    let log_n = code.log_n();
    let channel: Vec<f64> = channel_llr
        .iter()
        .map(|l| l.clamp(-LLR_CLAMP, LLR_CLAMP))
        .collect();

    let mut paths = vec![Path::new(n)];
    let mut spare: Vec<Path> = Vec::new();
    let mut scratch = vec![0u8; n];
    let mut leaf = Vec::with_capacity(2 * cfg.list_size);
    let mut ranked: Vec<(f64, usize, u8)> = Vec::with_capacity(2 * cfg.list_size);
    let mut costs: Vec<[f64; 2]> = Vec::with_capacity(cfg.list_size);
    let mut keep: Vec<[bool; 2]> = Vec::with_capacity(cfg.list_size);
    let mut path_steps = 0u64;

    for i in 0..n {
        path_steps += paths.len() as u64;
        leaf.clear();
        for path in paths.iter_mut() {
            leaf.push(path.descend(&channel, i, log_n));
        }

        if let Some(slot) = code.slot(i) {
            let bit = s.bit(slot);
            for (path, &llr) in paths.iter_mut().zip(&leaf) {
                path.decide(i, bit, penalty(llr, bit), &mut scratch);
            }
            continue;
        }

        costs.clear();
        costs.extend(leaf.iter().map(|&llr| penalties(llr)));
        keep.clear();
        if 2 * paths.len() <= cfg.list_size {
            keep.resize(paths.len(), [true, true]);
        } else {
            ranked.clear();
            for (j, (path, c)) in paths.iter().zip(&costs).enumerate() {
                ranked.push((path.metric + c[0], j, 0));
                ranked.push((path.metric + c[1], j, 1));
            }
            // Keys are distinct, so the selected set does not depend on
            // the selection algorithm.
            ranked.select_nth_unstable_by(cfg.list_size - 1, |a, b| {
                a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2))
            });
            keep.resize(paths.len(), [false, false]);
            for &(_, j, b) in &ranked[..cfg.list_size] {
                keep[j][b as usize] = true;
            }
        }

        let old = std::mem::take(&mut paths);
        let mut survivors = Vec::with_capacity(old.len());
        for (j, path) in old.into_iter().enumerate() {
            if keep[j] == [false, false] {
                spare.push(path);
            } else {
                survivors.push((j, path));
            }
        }
        for (j, mut path) in survivors {
            let c = costs[j];
            match keep[j] {
                [true, true] => {
                    let mut twin = spare.pop().unwrap_or_else(|| Path::new(n));
                    twin.clone_from(&path);
                    path.decide(i, 0, c[0], &mut scratch);
                    twin.decide(i, 1, c[1], &mut scratch);
                    paths.push(path);
                    paths.push(twin);
                }
                [true, false] => {
                    path.decide(i, 0, c[0], &mut scratch);
                    paths.push(path);
                }
                [false, true] => {
                    path.decide(i, 1, c[1], &mut scratch);
                    paths.push(path);
                }
                [false, false] => unreachable!(),
            }
        }
    }

    let crc_bits = s.slice(code.leakage_bits() - code.crc().degree(), s.len());
    let finals: Vec<FinalPath> = paths
        .iter()
        .map(|path| {
            let mut x = path.u.clone();
            transform_in_place(&mut x);
            let estimate = BitVec::from_bits(&x);
            let crc_ok = crc_compute(&estimate, code.crc()) == crc_bits;
            FinalPath {
                estimate,
                metric: path.metric,
                crc_ok,
            }
        })
        .collect();

    let best_of = |filter: &dyn Fn(&FinalPath) -> bool| {
        finals
            .iter()
            .filter(|f| filter(f))
            .min_by(|a, b| a.metric.total_cmp(&b.metric))
            .cloned()
    };
    let chosen = best_of(&|f| f.crc_ok)
        .or_else(|| best_of(&|_| true))
        .expect("list is never empty");
    Ok(SclOutput {
        estimate: chosen.estimate,
        crc_ok: chosen.crc_ok,
        metric: chosen.metric,
        finals,
        path_steps,
    })
}
