//! Monte-Carlo frame-error campaigns over the reconciliation codecs.

mod codec;
mod config;
mod report;
mod run;
mod toeplitz;

pub use codec::{Codec, TrialResult};
pub use config::{BchParams, CodecConfig, ExperimentConfig, GridPoint, LdpcParams, PolarParams};
pub use report::{
    emit_csv, emit_csv_verbose, format_prob, wilson_interval, FerEstimate, CSV_HEADER,
};
pub use run::{bound_estimate, point_seed, run_fer_experiment, Campaign};
pub use toeplitz::{privacy_amplify, ToeplitzHash};
