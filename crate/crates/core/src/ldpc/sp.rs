//! Flooding sum-product decoding relative to a target syndrome.
//!
//! The only change from channel decoding is at the check nodes: check `j`
//! constrains its neighbours to XOR to `s[j]` instead of zero, so its
//! outgoing messages are multiplied by `1 - 2·s[j]`.

use crate::channel::{hard_decision, LlrVec, LLR_CLAMP};
use crate::error::{Error, Result};
use crate::gf2::BitVec;

use super::LdpcCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpConfig {
    pub max_iterations: usize,
    /// Stop as soon as the hard decision satisfies the syndrome.
    pub early_stop: bool,
}

impl Default for SpConfig {
    fn default() -> Self {
        Self {
            max_iterations: 50,
            early_stop: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpOutput {
    /// Posterior LLRs after each completed iteration.
    pub trace: Vec<LlrVec>,
    pub hard: BitVec,
    pub converged: bool,
}

impl SpOutput {
    pub fn iterations(&self) -> usize {
        self.trace.len()
    }

    /// Posterior after the last iteration.
    pub fn posterior(&self) -> &[f64] {
        self.trace.last().map_or(&[], Vec::as_slice)
    }
}

pub fn sp_syndrome_decode(
    code: &LdpcCode,
    s: &BitVec,
    llr_in: &[f64],
    cfg: &SpConfig,
) -> Result<SpOutput> {
    if cfg.max_iterations == 0 {
        return Err(Error::InvalidParameter(
            "max_iterations must be >= 1".into(),
        ));
    }
    check_len(code.m(), s.len())?;
    check_len(code.n(), llr_in.len())?;

    let n = code.n();
    let edges = code.edge_var.len();
    let mut c2v = vec![0.0f64; edges];
    let mut v2c = vec![0.0f64; edges];
    let mut tanh_buf = Vec::new();
    let mut suffix = Vec::new();
    let mut posterior = llr_in.to_vec();
    let mut trace = Vec::with_capacity(cfg.max_iterations);
    let mut hard = BitVec::zeros(n);
    let mut converged = false;

    for _ in 0..cfg.max_iterations {
        for (e, &v) in code.edge_var.iter().enumerate() {
            v2c[e] = (posterior[v] - c2v[e]).clamp(-LLR_CLAMP, LLR_CLAMP);
        }

        for j in 0..code.m() {
            let range = code.check_offsets[j]..code.check_offsets[j + 1];
            let sign = if s.get(j) { -1.0 } else { 1.0 };
            tanh_buf.clear();
            tanh_buf.extend(v2c[range.clone()].iter().map(|&x| (0.5 * x).tanh()));
            let d = tanh_buf.len();
            suffix.clear();
            suffix.resize(d + 1, 1.0);
            for k in (0..d).rev() {
                suffix[k] = suffix[k + 1] * tanh_buf[k];
            }
            let mut prefix = 1.0;
            for (k, e) in range.enumerate() {
                let prod = prefix * suffix[k + 1];
                c2v[e] = (sign * 2.0 * prod.atanh()).clamp(-LLR_CLAMP, LLR_CLAMP);
                prefix *= tanh_buf[k];
            }
        }

        for v in 0..n {
            let incoming: f64 = code.var_edges[code.var_offsets[v]..code.var_offsets[v + 1]]
                .iter()
                .map(|&e| c2v[e])
                .sum();
            posterior[v] = llr_in[v] + incoming;
            hard.set(v, hard_decision(posterior[v]));
        }
        trace.push(posterior.clone());

        converged = syndrome_matches(code, &hard, s);
        if converged && cfg.early_stop {
            break;
        }
    }

    Ok(SpOutput {
        trace,
        hard,
        converged,
    })
}

fn syndrome_matches(code: &LdpcCode, hard: &BitVec, s: &BitVec) -> bool {
    (0..code.m()).all(|j| {
        let parity = code.edge_var[code.check_offsets[j]..code.check_offsets[j + 1]]
            .iter()
            .filter(|&&v| hard.get(v))
            .count()
            & 1;
        (parity == 1) == s.get(j)
    })
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, actual })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{llr_clamped, llr_init, sample_pair, SourceParams};
    use crate::ldpc::build_regular_ldpc;

    /// Textbook zero-syndrome BP in the phi domain, kept independent of the
    /// decoder above.
    fn reference_bp(code: &LdpcCode, llr: &[f64], iterations: usize) -> Vec<f64> {
        let h = code.parity_check();
        let phi = |x: f64| {
            let x = x.max(1e-12);
            -((0.5 * x).tanh()).ln()
        };
        let m = h.rows();
        // r[j][k]: message from check j to its k-th neighbour.
        let mut r: Vec<Vec<f64>> = (0..m).map(|j| vec![0.0; h.row_support(j).len()]).collect();
        let mut post = llr.to_vec();
        for _ in 0..iterations {
            let q: Vec<Vec<f64>> = (0..m)
                .map(|j| {
                    h.row_support(j)
                        .iter()
                        .enumerate()
                        .map(|(k, &v)| post[v] - r[j][k])
                        .collect()
                })
                .collect();
            for j in 0..m {
                let total: f64 = q[j].iter().map(|x| phi(x.abs())).sum();
                let neg = q[j].iter().filter(|x| **x < 0.0).count();
                for k in 0..q[j].len() {
                    let own_neg = usize::from(q[j][k] < 0.0);
                    let sign = if (neg - own_neg) % 2 == 0 { 1.0 } else { -1.0 };
                    r[j][k] = sign * phi(total - phi(q[j][k].abs()));
                }
            }
            post = llr.to_vec();
            for j in 0..m {
                for (k, &v) in h.row_support(j).iter().enumerate() {
                    post[v] += r[j][k];
                }
            }
        }
        post
    }

    #[test]
    fn own_syndrome_converges_immediately() {
        let code = build_regular_ldpc(128, 3, 6, 1).unwrap();
        let params = SourceParams::new(128, 0.03, 3).unwrap();
        for t in 0..20 {
            let (_, y_b) = sample_pair(&params, t);
            let s = code.syndrome(&y_b).unwrap();
            let llr = llr_init(&y_b, 0.03).unwrap();
            let out = sp_syndrome_decode(&code, &s, &llr, &SpConfig::default()).unwrap();
            assert!(out.converged);
            assert_eq!(out.iterations(), 1);
            assert_eq!(out.hard, y_b);
        }
    }

    #[test]
    fn noiseless_side_information() {
        let code = build_regular_ldpc(128, 3, 6, 1).unwrap();
        let params = SourceParams::new(128, 0.0, 4).unwrap();
        let (y_a, y_b) = sample_pair(&params, 0);
        let s = code.syndrome(&y_a).unwrap();
        let llr = llr_clamped(&y_b, 0.0, LLR_CLAMP).unwrap();
        let out = sp_syndrome_decode(&code, &s, &llr, &SpConfig::default()).unwrap();
        assert!(out.converged);
        assert_eq!(out.hard, y_a);
    }

    #[test]
    fn matches_reference_bp_on_zero_syndrome() {
        let code = build_regular_ldpc(96, 3, 6, 5).unwrap();
        let params = SourceParams::new(96, 0.08, 5).unwrap();
        let cfg = SpConfig {
            max_iterations: 6,
            early_stop: false,
        };
        for t in 0..10 {
            let (y_a, y_b) = sample_pair(&params, t);
            // All-zero coset observed through the error pattern.
            let llr: Vec<f64> = llr_init(&(&y_a ^ &y_b), 0.08).unwrap();
            let out = sp_syndrome_decode(&code, &BitVec::zeros(code.m()), &llr, &cfg).unwrap();
            let reference = reference_bp(&code, &llr, 6);
            for (a, b) in out.posterior().iter().zip(&reference) {
                if a.abs() < 25.0 {
                    assert!((a - b).abs() < 1e-6, "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn flipped_syndrome_mirrors_signs() {
        // After one iteration only the neighbours of a flipped check move.
        let code = build_regular_ldpc(64, 3, 6, 7).unwrap();
        let llr: Vec<f64> = (0..64)
            .map(|i| ((i * 37 % 11) as f64 - 5.0) * 0.7)
            .collect();
        let cfg = SpConfig {
            max_iterations: 1,
            early_stop: false,
        };
        let zero = sp_syndrome_decode(&code, &BitVec::zeros(32), &llr, &cfg).unwrap();
        let mut s = BitVec::zeros(32);
        s.set(0, true);
        let one = sp_syndrome_decode(&code, &s, &llr, &cfg).unwrap();
        let touched = code.parity_check().row_support(0);
        for v in 0..64 {
            if !touched.contains(&v) {
                assert_eq!(zero.posterior()[v], one.posterior()[v]);
            }
        }
    }

    #[test]
    fn some_frames_fail_at_p003() {
        let code = build_regular_ldpc(128, 3, 6, 1).unwrap();
        let params = SourceParams::new(128, 0.03, 8).unwrap();
        let mut failures = 0;
        for t in 0..10_000 {
            let (y_a, y_b) = sample_pair(&params, t);
            let s = code.syndrome(&y_a).unwrap();
            let llr = llr_init(&y_b, 0.03).unwrap();
            let out = sp_syndrome_decode(&code, &s, &llr, &SpConfig::default()).unwrap();
            if !out.converged || out.hard != y_a {
                failures += 1;
            }
        }
        assert!(failures > 0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let code = build_regular_ldpc(24, 3, 6, 1).unwrap();
        let cfg = SpConfig::default();
        assert!(sp_syndrome_decode(&code, &BitVec::zeros(11), &[0.0; 24], &cfg).is_err());
        assert!(sp_syndrome_decode(&code, &BitVec::zeros(12), &[0.0; 23], &cfg).is_err());
        let zero_iter = SpConfig {
            max_iterations: 0,
            early_stop: true,
        };
        assert!(sp_syndrome_decode(&code, &BitVec::zeros(12), &[0.0; 24], &zero_iter).is_err());
    }
}
