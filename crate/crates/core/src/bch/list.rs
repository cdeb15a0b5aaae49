use crate::error::{Error, Result};
use crate::gf2::BitVec;

use super::code::BchCode;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ListConfig {
    /// Maximum number of flipped positions of Bob's observation.
    pub t_list: usize,
}

/// One list entry: the flip pattern applied to `y_b`, the coset word the
/// algebraic decoder returned for it, and that word's distance to `y_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BchCandidate {
    pub flips: Vec<usize>,
    pub word: BitVec,
    pub distance: usize,
}

#[derive(Clone, Debug)]
pub struct BchOutcome {
    /// `None` when no flip pattern produced a candidate.
    pub estimate: Option<BitVec>,
    pub distance: Option<usize>,
    /// Number of algebraic decodings run.
    pub decoder_calls: u64,
}

/// Number of flip patterns of weight `<= t_list` over `n` positions.
pub fn bch_list_size(n: usize, t_list: usize) -> u128 {
    let mut total = 0u128;
    let mut c = 1u128;
    for i in 0..=t_list.min(n) {
        total += c;
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    total
}

fn check_inputs(s_a: &BitVec, y_b: &BitVec, code: &BchCode) -> Result<()> {
    if s_a.len() != code.m() {
        return Err(Error::DimensionMismatch {
            expected: code.m(),
            actual: s_a.len(),
        });
    }
    if y_b.len() != code.n() {
        return Err(Error::DimensionMismatch {
            expected: code.n(),
            actual: y_b.len(),
        });
    }
    Ok(())
}

/// Power sums of the syndrome difference `s_a ⊕ syndrome(y_b)`.
fn base_sums(s_a: &BitVec, y_b: &BitVec, code: &BchCode) -> Result<Vec<u16>> {
    let mut diff = code.syndrome(y_b)?;
    diff ^= s_a;
    Ok(code.power_sums(&diff))
}

/// Visits every flip pattern of weight `w` over `0..n` in lexicographic
/// order; `visit` returns `false` to stop.
fn for_each_pattern(n: usize, w: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if w > n {
        return;
    }
    let mut idx: Vec<usize> = (0..w).collect();
    loop {
        if !visit(&idx) {
            return;
        }
        // Advance to the next combination.
        let mut i = w;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - w + i {
                idx[i] += 1;
                for j in i + 1..w {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn candidate_for(
    code: &BchCode,
    base: &[u16],
    y_b: &BitVec,
    flips: &[usize],
    sums: &mut Vec<u16>,
) -> Option<BchCandidate> {
    sums.clear();
    sums.extend_from_slice(base);
    for &i in flips {
        code.add_position(sums, i);
    }
    let errors = code.locate(sums)?;
    let mut word = y_b.clone();
    for &i in flips {
        word.flip(i);
    }
    for &i in &errors {
        word.flip(i);
    }
    let distance = word.distance(y_b);
    Some(BchCandidate {
        flips: flips.to_vec(),
        word,
        distance,
    })
}

/// The full candidate list, in weight-major lexicographic flip order.
/// Patterns whose algebraic decoding fails contribute nothing.
pub fn bch_candidates(
    s_a: &BitVec,
    y_b: &BitVec,
    code: &BchCode,
    cfg: &ListConfig,
) -> Result<Vec<BchCandidate>> {
    check_inputs(s_a, y_b, code)?;
    let base = base_sums(s_a, y_b, code)?;
    let mut sums = Vec::with_capacity(base.len());
    let mut out = Vec::new();
    for w in 0..=cfg.t_list {
        for_each_pattern(code.n(), w, |flips| {
            out.extend(candidate_for(code, &base, y_b, flips, &mut sums));
            true
        });
    }
    Ok(out)
}

/// Bob's side of the BCH scheme: the candidate closest to `y_b`, ties to
/// the earliest flip pattern.
///
/// The scan stops after weight `w` once the best distance is at most
/// `t + w + 1`: every coset word within `t + w` of `y_b` is reached by some
/// pattern of weight `<= w`, so later patterns cannot do strictly better.
/// The result is the same as scanning the whole list.
pub fn bch_reconcile(
    s_a: &BitVec,
    y_b: &BitVec,
    p: f64,
    code: &BchCode,
    cfg: &ListConfig,
) -> Result<BchOutcome> {
    if !(0.0..0.5).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    check_inputs(s_a, y_b, code)?;
    let base = base_sums(s_a, y_b, code)?;
    let mut sums = Vec::with_capacity(base.len());
    let mut best: Option<BchCandidate> = None;
    let mut calls = 0u64;
    for w in 0..=cfg.t_list {
        for_each_pattern(code.n(), w, |flips| {
            calls += 1;
            if let Some(c) = candidate_for(code, &base, y_b, flips, &mut sums) {
                if best.as_ref().is_none_or(|b| c.distance < b.distance) {
                    best = Some(c);
                }
            }
            true
        });
        if best
            .as_ref()
            .is_some_and(|b| b.distance <= code.t() + w + 1)
        {
            break;
        }
    }
    Ok(BchOutcome {
        distance: best.as_ref().map(|b| b.distance),
        estimate: best.map(|b| b.word),
        decoder_calls: calls,
    })
}
