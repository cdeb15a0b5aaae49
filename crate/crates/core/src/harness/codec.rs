use crate::bch::{bch_reconcile, build_bch, BchCode, ListConfig};
use crate::channel::{llr_clamped, LLR_CLAMP};
use crate::error::{Error, Result};
use crate::gf2::{read_alist, BitVec, CrcSpec};
use crate::ldpc::{build_regular_ldpc, ldpc_reconcile, LdpcCode, OsdConfig, SpConfig};
use crate::polar::{encode_public_message, read_order, scl_decode_llr, PolarCode, SclConfig};

use super::config::CodecConfig;

/// A constructed codec, ready for trials.
#[derive(Clone, Debug)]
pub enum Codec {
    Polar {
        code: PolarCode,
        cfg: SclConfig,
    },
    Bch {
        code: BchCode,
        cfg: ListConfig,
    },
    Ldpc {
        code: LdpcCode,
        sp: SpConfig,
        osd: OsdConfig,
    },
}

/// What one reconciliation produced.
#[derive(Clone, Debug)]
pub struct TrialResult {
    /// `None` when the decoder declared failure.
    pub estimate: Option<BitVec>,
    pub ops: u64,
}

impl Codec {
    /// Runs any construction the config asks for.
    pub fn build(cfg: &CodecConfig) -> Result<Self> {
        cfg.validate()?;
        let wrap = |e: Error| Error::Config(e.to_string());
        Ok(match cfg {
            CodecConfig::Polar(p) => {
                let crc = CrcSpec::from_poly(p.crc_poly).map_err(wrap)?;
                let public = p.public_bits.unwrap_or(p.n / 2);
                let code = match &p.order_file {
                    Some(path) => {
                        let order = read_order(&std::fs::read_to_string(path)?).map_err(wrap)?;
                        if order.len() != p.n {
                            return Err(Error::Config(format!(
                                "order file has {} entries, expected {}",
                                order.len(),
                                p.n
                            )));
                        }
                        PolarCode::new(order, public - crc.degree(), crc).map_err(wrap)?
                    }
                    None => PolarCode::build(
                        p.n,
                        public,
                        crc,
                        p.design_p,
                        p.mc_budget,
                        p.construction_seed,
                    )
                    .map_err(wrap)?,
                };
                Codec::Polar {
                    code,
                    cfg: SclConfig::new(p.list_size).map_err(wrap)?,
                }
            }
            CodecConfig::Bch(b) => Codec::Bch {
                code: build_bch(b.w, b.t).map_err(wrap)?,
                cfg: ListConfig { t_list: b.t_list },
            },
            CodecConfig::Ldpc(l) => {
                let code = match &l.alist {
                    Some(path) => {
                        let h = read_alist(&std::fs::read_to_string(path)?).map_err(wrap)?;
                        LdpcCode::from_matrix(h, None).map_err(wrap)?
                    }
                    None => {
                        build_regular_ldpc(l.n, l.dv, l.dc, l.construction_seed).map_err(wrap)?
                    }
                };
                Codec::Ldpc {
                    code,
                    sp: SpConfig {
                        max_iterations: l.max_iterations,
                        early_stop: true,
                    },
                    osd: OsdConfig {
                        order: l.osd_order,
                        iterative: l.iterative,
                    },
                }
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Codec::Polar { .. } => "polar-scl",
            Codec::Bch { .. } => "bch-list",
            Codec::Ldpc { osd, .. } if osd.iterative => "ldpc-osd-iter",
            Codec::Ldpc { .. } => "ldpc-osd",
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Codec::Polar { code, .. } => code.n(),
            Codec::Bch { code, .. } => code.n(),
            Codec::Ldpc { code, .. } => code.n(),
        }
    }

    /// Public bits: pinned bits plus CRC for polar, `n - k` for BCH and
    /// `rank(H)` for LDPC.
    pub fn leakage_bits(&self) -> usize {
        match self {
            Codec::Polar { code, .. } => code.leakage_bits(),
            Codec::Bch { code, .. } => code.m(),
            Codec::Ldpc { code, .. } => code.rank(),
        }
    }

    pub fn list_param(&self) -> usize {
        match self {
            Codec::Polar { cfg, .. } => cfg.list_size,
            Codec::Bch { cfg, .. } => cfg.t_list,
            Codec::Ldpc { osd, .. } => osd.order,
        }
    }

    /// Alice encodes `y_a`, Bob reconciles with `y_b`.
    pub fn reconcile(&self, y_a: &BitVec, y_b: &BitVec, p: f64) -> Result<TrialResult> {
        Ok(match self {
            Codec::Polar { code, cfg } => {
                let s = encode_public_message(y_a, code)?;
                let llr = llr_clamped(y_b, p, LLR_CLAMP)?;
                let out = scl_decode_llr(&s, &llr, code, cfg)?;
                TrialResult {
                    estimate: Some(out.estimate),
                    ops: out.path_steps,
                }
            }
            Codec::Bch { code, cfg } => {
                let s = code.syndrome(y_a)?;
                let out = bch_reconcile(&s, y_b, p, code, cfg)?;
                TrialResult {
                    estimate: out.estimate,
                    ops: out.decoder_calls,
                }
            }
            Codec::Ldpc { code, sp, osd } => {
                let s = code.syndrome(y_a)?;
                let out = ldpc_reconcile(code, &s, y_b, p, sp, osd)?;
                TrialResult {
                    estimate: Some(out.estimate),
                    ops: out.sp_iterations as u64 + out.candidates_evaluated,
                }
            }
        })
    }
}
