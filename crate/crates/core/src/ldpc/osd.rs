//! Ordered-statistics reprocessing in a syndrome coset.
//!
//! Positions are ranked by posterior reliability. Elimination of H picks
//! its pivots from the least reliable columns first, so the complementary
//! free positions form the most reliable independent set (an information
//! set of the code). Those positions are hard-decided, every flip pattern of
//! weight up to the order is applied, and the pivot positions are solved so
//! each candidate meets the target syndrome. Candidates are ranked by
//! correlation with the channel LLRs.

use crate::channel::hard_decision;
use crate::error::{Error, Result};
use crate::gf2::{systematize_with_rhs, BitVec};

use super::LdpcCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OsdConfig {
    /// Maximum number of flipped information positions.
    pub order: usize,
    /// Reprocess the posterior of every SP iteration, not only the last.
    pub iterative: bool,
}

impl Default for OsdConfig {
    fn default() -> Self {
        Self {
            order: 2,
            iterative: false,
        }
    }
}

/// Best candidate of one reprocessing run.
#[derive(Clone, Debug)]
pub struct OsdCandidate {
    pub word: BitVec,
    /// `Σ (1 − 2·c[i]) · channel_llr[i]`; larger is better.
    pub correlation: f64,
    /// Number of flip patterns scored.
    pub evaluated: u64,
}

/// `Σ_{i ≤ t} C(k, i)`, the number of flip patterns of an order-`t` search
/// over `k` positions.
pub fn osd_list_size(k: usize, t: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for i in 0..=t.min(k) {
        total += binom;
        binom = binom * (k - i) as u128 / (i + 1) as u128;
    }
    total
}

/// Information set, order-0 word and per-position flip effects derived
/// from one reliability ordering.
#[derive(Clone, Debug)]
pub(crate) struct OsdBasis {
    /// Free (information) positions, most reliable first.
    pub info: Vec<usize>,
    pub pivots: Vec<usize>,
    pub base: BitVec,
    /// `deltas[k]` is what flipping `info[k]` XORs into the word.
    deltas: Vec<BitVec>,
}

impl OsdBasis {
    pub fn new(code: &LdpcCode, s: &BitVec, posterior: &[f64]) -> Result<Self> {
        let n = code.n();
        let mut by_reliability: Vec<usize> = (0..n).collect();
        // Stable sort keeps lower indices first among equal magnitudes.
        by_reliability.sort_by(|&a, &b| posterior[b].abs().total_cmp(&posterior[a].abs()));
        let priority: Vec<usize> = by_reliability.iter().rev().copied().collect();

        let sys = systematize_with_rhs(code.dense_parity_check(), &priority, Some(s));
        let rhs = sys.rhs.expect("rhs was supplied");
        let rank = sys.pivots.len();
        if (rank..code.m()).any(|r| rhs.get(r)) {
            return Err(Error::InconsistentSyndrome);
        }

        let mut is_pivot = vec![false; n];
        for &p in &sys.pivots {
            is_pivot[p] = true;
        }
        let info: Vec<usize> = by_reliability
            .iter()
            .copied()
            .filter(|&i| !is_pivot[i])
            .collect();

        let mut base = BitVec::zeros(n);
        for &i in &info {
            base.set(i, hard_decision(posterior[i]));
        }
        let info_part = base.clone();
        let mut deltas_by_pos: Vec<Option<BitVec>> = vec![None; n];
        for &i in &info {
            let mut d = BitVec::zeros(n);
            d.set(i, true);
            deltas_by_pos[i] = Some(d);
        }
        for (r, &p) in sys.pivots.iter().enumerate() {
            let row = sys.matrix.row(r);
            base.set(p, rhs.get(r) ^ row.dot(&info_part));
            for j in row.iter_ones().filter(|&j| j != p) {
                deltas_by_pos[j]
                    .as_mut()
                    .expect("non-pivot column in a reduced row is an info position")
                    .set(p, true);
            }
        }
        let deltas = info
            .iter()
            .map(|&i| deltas_by_pos[i].take().expect("info delta"))
            .collect();
        Ok(Self {
            info,
            pivots: sys.pivots,
            base,
            deltas,
        })
    }

    /// Identifies the candidate list: the pivot set plus the hard decisions
    /// on the information set.
    pub fn list_key(&self) -> (BitVec, BitVec) {
        let n = self.base.len();
        let mut pivots = BitVec::zeros(n);
        for &p in &self.pivots {
            pivots.set(p, true);
        }
        let info_bits = self.base.gather(&self.info);
        (pivots, info_bits)
    }

    /// Scores every flip pattern of weight `≤ order`, weight by weight and
    /// lexicographically within a weight. Ties keep the earlier candidate.
    pub fn search(&self, order: usize, channel_llr: &[f64]) -> OsdCandidate {
        let n = self.base.len();
        let abs: Vec<f64> = channel_llr.iter().map(|x| x.abs()).collect();
        let total: f64 = abs.iter().sum();
        let channel_hard = BitVec::from_fn(n, |i| hard_decision(channel_llr[i]));
        // Work on the discrepancy word z = candidate ⊕ channel hard decision;
        // correlation = Σ|L| − 2·Σ_{z_i = 1} |L_i|.
        let z0 = &self.base ^ &channel_hard;
        let mut best = Search {
            abs: &abs,
            deltas: &self.deltas,
            best_cost: discrepancy(z0.words(), &abs),
            best_z: z0.words().to_vec(),
            evaluated: 1,
        };
        let order = order.min(self.info.len());
        let mut stack: Vec<Vec<u64>> = vec![z0.words().to_vec(); order + 1];
        for weight in 1..=order {
            best.combinations(&mut stack, 0, 0, weight);
        }
        let word = &BitVec::from_words(n, best.best_z) ^ &channel_hard;
        OsdCandidate {
            word,
            correlation: total - 2.0 * best.best_cost,
            evaluated: best.evaluated,
        }
    }
}

struct Search<'a> {
    abs: &'a [f64],
    deltas: &'a [BitVec],
    best_cost: f64,
    best_z: Vec<u64>,
    evaluated: u64,
}

impl Search<'_> {
    fn combinations(&mut self, stack: &mut [Vec<u64>], depth: usize, start: usize, weight: usize) {
        let remaining = weight - depth;
        let k = self.deltas.len();
        for j in start..=(k - remaining) {
            let (lower, upper) = stack.split_at_mut(depth + 1);
            let next = &mut upper[0];
            next.copy_from_slice(&lower[depth]);
            for (w, d) in next.iter_mut().zip(self.deltas[j].words()) {
                *w ^= d;
            }
            if remaining == 1 {
                self.evaluated += 1;
                let cost = discrepancy(next, self.abs);
                if cost < self.best_cost {
                    self.best_cost = cost;
                    self.best_z.copy_from_slice(next);
                }
            } else {
                self.combinations(stack, depth + 1, j + 1, weight);
            }
        }
    }
}

#[inline]
fn discrepancy(words: &[u64], abs: &[f64]) -> f64 {
    let mut sum = 0.0;
    for (wi, &w) in words.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let b = w.trailing_zeros() as usize;
            sum += abs[wi * 64 + b];
            w &= w - 1;
        }
    }
    sum
}

/// One ordered-statistics pass on `posterior`, scored against `channel_llr`.
/// The returned word always has syndrome `s`.
pub fn osd_reprocess(
    code: &LdpcCode,
    s: &BitVec,
    posterior: &[f64],
    channel_llr: &[f64],
    cfg: &OsdConfig,
) -> Result<OsdCandidate> {
    for len in [posterior.len(), channel_llr.len()] {
        if len != code.n() {
            return Err(Error::DimensionMismatch {
                expected: code.n(),
                actual: len,
            });
        }
    }
    if s.len() != code.m() {
        return Err(Error::DimensionMismatch {
            expected: code.m(),
            actual: s.len(),
        });
    }
    Ok(OsdBasis::new(code, s, posterior)?.search(cfg.order, channel_llr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{llr_clamped, sample_pair, SourceParams, LLR_CLAMP};
    use crate::gf2::{DenseMatrix, SparseMatrix};
    use crate::ldpc::build_regular_ldpc;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn correlation(word: &BitVec, llr: &[f64]) -> f64 {
        word.iter()
            .zip(llr)
            .map(|(b, l)| if b { -l } else { *l })
            .sum()
    }

    /// Exhaustive maximum-likelihood decoding in the coset of `s`.
    fn brute_force_ml(h: &DenseMatrix, s: &BitVec, llr: &[f64]) -> Option<BitVec> {
        let n = h.cols();
        let mut best: Option<(f64, BitVec)> = None;
        for x in 0u64..(1 << n) {
            let word = BitVec::from_fn(n, |i| (x >> i) & 1 == 1);
            if h.mul_vec(&word).unwrap() != *s {
                continue;
            }
            let c = correlation(&word, llr);
            if best.as_ref().is_none_or(|(b, _)| c > *b) {
                best = Some((c, word));
            }
        }
        best.map(|(_, w)| w)
    }

    fn random_code(rng: &mut ChaCha8Rng, m: usize, n: usize) -> LdpcCode {
        let rows = (0..m)
            .map(|_| BitVec::from_fn(n, |_| rng.random_bool(0.35)))
            .collect();
        let dense = DenseMatrix::from_rows(n, rows).unwrap();
        LdpcCode::from_matrix(SparseMatrix::from_dense(&dense), None).unwrap()
    }

    #[test]
    fn list_size_formula() {
        assert_eq!(osd_list_size(64, 2), 1 + 64 + 2016);
        assert_eq!(osd_list_size(64, 0), 1);
        assert_eq!(osd_list_size(5, 9), 32);
    }

    #[test]
    fn order_zero_recovers_correct_basis() {
        let code = build_regular_ldpc(128, 3, 6, 1).unwrap();
        let params = SourceParams::new(128, 0.0, 1).unwrap();
        let (y_a, y_b) = sample_pair(&params, 0);
        let s = code.syndrome(&y_a).unwrap();
        let llr = llr_clamped(&y_b, 0.0, LLR_CLAMP).unwrap();
        let cfg = OsdConfig {
            order: 0,
            iterative: false,
        };
        let out = osd_reprocess(&code, &s, &llr, &llr, &cfg).unwrap();
        assert_eq!(out.word, y_a);
        assert_eq!(out.evaluated, 1);
    }

    #[test]
    fn evaluated_count_matches_formula() {
        let code = build_regular_ldpc(128, 3, 6, 1).unwrap();
        let params = SourceParams::new(128, 0.05, 2).unwrap();
        let (y_a, y_b) = sample_pair(&params, 0);
        let s = code.syndrome(&y_a).unwrap();
        let llr = llr_clamped(&y_b, 0.05, LLR_CLAMP).unwrap();
        let cfg = OsdConfig {
            order: 2,
            iterative: false,
        };
        let out = osd_reprocess(&code, &s, &llr, &llr, &cfg).unwrap();
        let k = code.n() - code.rank();
        assert_eq!(out.evaluated as u128, osd_list_size(k, 2));
        assert_eq!(code.syndrome(&out.word).unwrap(), s);
    }

    #[test]
    fn full_order_equals_coset_ml() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for instance in 0..300 {
            let n = 8 + instance % 9;
            let m = n / 2;
            let code = random_code(&mut rng, m, n);
            let y = BitVec::from_fn(n, |_| rng.random());
            let s = code.syndrome(&y).unwrap();
            let llr: Vec<f64> = (0..n).map(|_| rng.random_range(-4.0..4.0)).collect();
            let posterior: Vec<f64> = llr
                .iter()
                .map(|l| l + rng.random_range(-1.0..1.0))
                .collect();
            let cfg = OsdConfig {
                order: n,
                iterative: false,
            };
            let out = osd_reprocess(&code, &s, &posterior, &llr, &cfg).unwrap();
            let ml = brute_force_ml(code.dense_parity_check(), &s, &llr).unwrap();
            assert_eq!(out.word, ml, "instance {instance}");
            assert!((out.correlation - correlation(&ml, &llr)).abs() < 1e-9);
        }
    }

    #[test]
    fn order_monotone_metric() {
        let code = build_regular_ldpc(128, 3, 6, 1).unwrap();
        let params = SourceParams::new(128, 0.06, 3).unwrap();
        for t in 0..50 {
            let (y_a, y_b) = sample_pair(&params, t);
            let s = code.syndrome(&y_a).unwrap();
            let llr = llr_clamped(&y_b, 0.06, LLR_CLAMP).unwrap();
            let metric = |order| {
                let cfg = OsdConfig {
                    order,
                    iterative: false,
                };
                osd_reprocess(&code, &s, &llr, &llr, &cfg)
                    .unwrap()
                    .correlation
            };
            let (m0, m1, m2) = (metric(0), metric(1), metric(2));
            assert!(m2 >= m1 && m1 >= m0);
        }
    }

    #[test]
    fn inconsistent_syndrome_is_reported() {
        // Two identical rows: only even-weight syndromes over them are reachable.
        let dense = DenseMatrix::from_strs(&["1101", "1101"]).unwrap();
        let code = LdpcCode::from_matrix(SparseMatrix::from_dense(&dense), None).unwrap();
        let s = BitVec::parse("10").unwrap();
        let llr = [1.0; 4];
        let err = osd_reprocess(&code, &s, &llr, &llr, &OsdConfig::default());
        assert!(matches!(err, Err(Error::InconsistentSyndrome)));
    }

    #[test]
    fn dimension_checks() {
        let code = build_regular_ldpc(24, 3, 6, 1).unwrap();
        let cfg = OsdConfig::default();
        let s = BitVec::zeros(12);
        assert!(osd_reprocess(&code, &s, &[0.0; 23], &[0.0; 24], &cfg).is_err());
        assert!(osd_reprocess(&code, &s, &[0.0; 24], &[0.0; 25], &cfg).is_err());
        assert!(osd_reprocess(&code, &BitVec::zeros(11), &[0.0; 24], &[0.0; 24], &cfg).is_err());
    }
}
