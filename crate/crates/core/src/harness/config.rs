use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{binary_entropy, inverse_binary_entropy, CrcSpec};

/// A Monte-Carlo campaign, normally read from TOML:
///
/// ```toml
/// seed = 7
/// workers = 4
/// max_frames = 1000000
/// target_errors = 100
/// h_grid = [0.25, 0.2225, 0.1944]
///
/// [[codec]]
/// family = "polar"
/// n = 128
/// list_size = 128
///
/// [[codec]]
/// family = "bch"
/// w = 7
/// t = 10
/// t_list = 2
///
/// [[codec]]
/// family = "ldpc"
/// n = 128
/// osd_order = 2
/// iterative = true
/// ```
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_workers")]
    pub workers: usize,
    #[serde(default = "default_max_frames")]
    pub max_frames: u64,
    #[serde(default = "default_target_errors")]
    pub target_errors: u64,
    /// Grid of `h(p)` values; exactly one of `h_grid` and `p_grid` is set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_grid: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_grid: Option<Vec<f64>>,
    /// Emit normal-approximation bound rows next to the measured points.
    #[serde(default = "yes")]
    pub bound: bool,
    #[serde(default = "yes")]
    pub bound_log_term: bool,
    #[serde(rename = "codec", default)]
    pub codecs: Vec<CodecConfig>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum CodecConfig {
    Polar(PolarParams),
    Bch(BchParams),
    Ldpc(LdpcParams),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PolarParams {
    pub n: usize,
    /// Pinned bits plus CRC bits; defaults to `n / 2`.
    #[serde(default)]
    pub public_bits: Option<usize>,
    pub list_size: usize,
    #[serde(default = "default_crc_poly")]
    pub crc_poly: u64,
    #[serde(default = "default_design_p")]
    pub design_p: f64,
    #[serde(default = "default_mc_budget")]
    pub mc_budget: usize,
    #[serde(default = "default_construction_seed")]
    pub construction_seed: u64,
    /// Reliability-order file; skips the Monte-Carlo construction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_file: Option<PathBuf>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BchParams {
    pub w: usize,
    pub t: usize,
    #[serde(default)]
    pub t_list: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LdpcParams {
    pub n: usize,
    #[serde(default = "default_dv")]
    pub dv: usize,
    #[serde(default = "default_dc")]
    pub dc: usize,
    #[serde(default = "default_osd_order")]
    pub osd_order: usize,
    #[serde(default)]
    pub iterative: bool,
    #[serde(default = "default_max_iterations")]
    pub max_iterations: usize,
    #[serde(default = "default_construction_seed")]
    pub construction_seed: u64,
    /// Parity-check matrix in alist format; overrides the PEG construction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alist: Option<PathBuf>,
}

fn default_seed() -> u64 {
    1
}
fn default_workers() -> usize {
    1
}
fn default_max_frames() -> u64 {
    1_000_000
}
fn default_target_errors() -> u64 {
    100
}
fn yes() -> bool {
    true
}
fn default_crc_poly() -> u64 {
    CrcSpec::DEFAULT_11_POLY
}
fn default_design_p() -> f64 {
    0.03
}
fn default_mc_budget() -> usize {
    100_000
}
fn default_construction_seed() -> u64 {
    1
}
fn default_dv() -> usize {
    3
}
fn default_dc() -> usize {
    6
}
fn default_osd_order() -> usize {
    2
}
fn default_max_iterations() -> usize {
    50
}

/// One operating point: crossover probability and the matching `h(p)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridPoint {
    pub p: f64,
    pub h: f64,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file; relative artifact paths are resolved against
    /// the file's directory.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut cfg = Self::from_toml(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for codec in &mut cfg.codecs {
            let file = match codec {
                CodecConfig::Polar(p) => p.order_file.as_mut(),
                CodecConfig::Ldpc(l) => l.alist.as_mut(),
                CodecConfig::Bch(_) => None,
            };
            if let Some(f) = file {
                if f.is_relative() {
                    *f = base.join(&*f);
                }
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.max_frames == 0 {
            return bad("max_frames must be >= 1".into());
        }
        if self.target_errors == 0 {
            return bad("target_errors must be >= 1".into());
        }
        if self.workers == 0 {
            return bad("workers must be >= 1".into());
        }
        if self.codecs.is_empty() {
            return bad("at least one [[codec]] is required".into());
        }
        self.grid()?;
        for codec in &self.codecs {
            codec.validate()?;
        }
        Ok(())
    }

    /// Operating points in config order.
    pub fn grid(&self) -> Result<Vec<GridPoint>> {
        match (&self.h_grid, &self.p_grid) {
            (Some(hs), None) if !hs.is_empty() => hs
                .iter()
                .map(|&h| {
                    let p = inverse_binary_entropy(h)
                        .map_err(|_| Error::Config(format!("h grid value {h} outside [0, 1]")))?;
                    if p >= 0.5 {
                        return Err(Error::Config("h = 1 gives an uncorrelated source".into()));
                    }
                    Ok(GridPoint { p, h })
                })
                .collect(),
            (None, Some(ps)) if !ps.is_empty() => ps
                .iter()
                .map(|&p| {
                    if !(0.0..0.5).contains(&p) {
                        return Err(Error::Config(format!("p grid value {p} outside [0, 0.5)")));
                    }
                    Ok(GridPoint {
                        p,
                        h: binary_entropy(p)?,
                    })
                })
                .collect(),
            _ => Err(Error::Config(
                "exactly one non-empty h_grid or p_grid is required".into(),
            )),
        }
    }
}

impl CodecConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        match self {
            CodecConfig::Polar(p) => {
                if !p.n.is_power_of_two() || p.n < 2 {
                    return bad(format!("polar n = {} is not a power of two", p.n));
                }
                if p.list_size == 0 {
                    return bad("polar list_size must be >= 1".into());
                }
                if !(p.design_p > 0.0 && p.design_p < 0.5) {
                    return bad(format!("design_p = {} outside (0, 0.5)", p.design_p));
                }
                if p.mc_budget == 0 {
                    return bad("mc_budget must be >= 1".into());
                }
                let crc = CrcSpec::from_poly(p.crc_poly)
                    .map_err(|e| Error::Config(format!("crc_poly: {e}")))?;
                let public = p.public_bits.unwrap_or(p.n / 2);
                if public < crc.degree() || public > p.n {
                    return bad(format!(
                        "public_bits = {public} must lie in [{}, {}]",
                        crc.degree(),
                        p.n
                    ));
                }
            }
            CodecConfig::Bch(b) => {
                if !(3..=12).contains(&b.w) {
                    return bad(format!("bch w = {} outside 3..=12", b.w));
                }
                if b.t == 0 {
                    return bad("bch t must be >= 1".into());
                }
            }
            CodecConfig::Ldpc(l) => {
                if l.max_iterations == 0 {
                    return bad("max_iterations must be >= 1".into());
                }
                if l.alist.is_none() && (l.n * l.dv) % l.dc.max(1) != 0 {
                    return bad(format!(
                        "n * dv = {} not divisible by dc = {}",
                        l.n * l.dv,
                        l.dc
                    ));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
seed = 7
workers = 2
max_frames = 5000
h_grid = [0.25, 0.1944]

[[codec]]
family = "polar"
n = 128
list_size = 8

[[codec]]
family = "bch"
w = 7
t = 10
t_list = 2

[[codec]]
family = "ldpc"
n = 128
iterative = true
"#;

    #[test]
    fn parses_sample() {
        let cfg = ExperimentConfig::from_toml(SAMPLE).unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.target_errors, 100);
        assert_eq!(cfg.codecs.len(), 3);
        match &cfg.codecs[0] {
            CodecConfig::Polar(p) => {
                assert_eq!(p.crc_poly, CrcSpec::DEFAULT_11_POLY);
                assert_eq!(p.public_bits, None);
            }
            other => panic!("unexpected {other:?}"),
        }
        match &cfg.codecs[2] {
            CodecConfig::Ldpc(l) => assert!(l.iterative && l.osd_order == 2 && l.dv == 3),
            other => panic!("unexpected {other:?}"),
        }
        let grid = cfg.grid().unwrap();
        assert!((grid[1].p - 0.03).abs() < 1e-4);
    }

    #[test]
    fn round_trips_through_toml() {
        let cfg = ExperimentConfig::from_toml(SAMPLE).unwrap();
        let text = toml::to_string(&cfg).unwrap();
        assert_eq!(ExperimentConfig::from_toml(&text).unwrap(), cfg);
    }

    #[test]
    fn rejects_invalid_configs() {
        let cases = [
            SAMPLE.replace("max_frames = 5000", "max_frames = 0"),
            SAMPLE.replace("workers = 2", "workers = 0"),
            SAMPLE.replace("h_grid = [0.25, 0.1944]", "h_grid = [1.5]"),
            SAMPLE.replace("h_grid = [0.25, 0.1944]", "h_grid = [0.2]\np_grid = [0.1]"),
            SAMPLE.replace("h_grid = [0.25, 0.1944]", ""),
            SAMPLE.replace("list_size = 8", "list_size = 0"),
            SAMPLE.replace("n = 128\nlist_size", "n = 100\nlist_size"),
            SAMPLE.replace("t = 10", "t = 0"),
            SAMPLE.replace("family = \"bch\"", "family = \"turbo\""),
            SAMPLE.replace("t_list = 2", "t_list = 2\nbogus = 1"),
        ];
        for text in cases {
            assert!(ExperimentConfig::from_toml(&text).is_err(), "{text}");
        }
    }
}
