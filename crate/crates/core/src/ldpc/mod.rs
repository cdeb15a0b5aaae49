//! LDPC syndrome reconciliation: sum-product decoding in the coset of
//! Alice's syndrome, followed by ordered-statistics reprocessing.

mod code;
mod osd;
mod sp;

pub use code::{build_regular_ldpc, LdpcCode};
pub use osd::{osd_list_size, osd_reprocess, OsdCandidate, OsdConfig};
pub use sp::{sp_syndrome_decode, SpConfig, SpOutput};

use std::collections::HashSet;

use crate::channel::{llr_clamped, LLR_CLAMP};
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use osd::OsdBasis;

/// Result of [`ldpc_reconcile`].
#[derive(Clone, Debug)]
pub struct LdpcOutcome {
    pub estimate: BitVec,
    pub correlation: f64,
    pub sp_converged: bool,
    pub sp_iterations: usize,
    /// Reprocessing passes actually run (duplicates skipped).
    pub osd_passes: usize,
    pub candidates_evaluated: u64,
}

/// Bob's side of the LDPC scheme.
///
/// With `osd_cfg.iterative` the posterior of every SP iteration is
/// reprocessed and the best candidate over all passes wins; passes whose
/// information set and hard decisions repeat an earlier pass are skipped.
pub fn ldpc_reconcile(
    code: &LdpcCode,
    s: &BitVec,
    y_b: &BitVec,
    p: f64,
    sp_cfg: &SpConfig,
    osd_cfg: &OsdConfig,
) -> Result<LdpcOutcome> {
    if y_b.len() != code.n() {
        return Err(Error::DimensionMismatch {
            expected: code.n(),
            actual: y_b.len(),
        });
    }
    let channel = llr_clamped(y_b, p, LLR_CLAMP)?;
    let sp = sp_syndrome_decode(code, s, &channel, sp_cfg)?;

    let passes: &[Vec<f64>] = if osd_cfg.iterative {
        &sp.trace
    } else {
        std::slice::from_ref(sp.trace.last().expect("at least one iteration"))
    };

    let mut seen = HashSet::new();
    let mut best: Option<OsdCandidate> = None;
    let mut osd_passes = 0;
    let mut evaluated = 0;
    for posterior in passes {
        let basis = OsdBasis::new(code, s, posterior)?;
        if !seen.insert(basis.list_key()) {
            continue;
        }
        osd_passes += 1;
        let cand = basis.search(osd_cfg.order, &channel);
        evaluated += cand.evaluated;
        if best
            .as_ref()
            .is_none_or(|b| cand.correlation > b.correlation)
        {
            best = Some(cand);
        }
    }
    let best = best.expect("at least one reprocessing pass");
    Ok(LdpcOutcome {
        estimate: best.word,
        correlation: best.correlation,
        sp_converged: sp.converged,
        sp_iterations: sp.iterations(),
        osd_passes,
        candidates_evaluated: evaluated,
    })
}
