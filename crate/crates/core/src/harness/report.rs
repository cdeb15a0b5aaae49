use std::fmt::Write;
use std::time::Duration;

/// Header of the CSV produced by [`emit_csv`].
pub const CSV_HEADER: &str =
    "code,n,rate,list_param,p,h_cond,frames,errors,fer,ci_low,ci_high,leakage_bits,seed";

/// Frame-error estimate at one operating point.
#[derive(Clone, Debug, PartialEq)]
pub struct FerEstimate {
    /// `polar-scl`, `bch-list`, `ldpc-osd`, `ldpc-osd-iter` or `bound`.
    pub code: String,
    pub n: usize,
    /// Key rate `1 - leakage_bits / n`.
    pub rate: f64,
    /// List size, flip budget or OSD order, depending on the family.
    pub list_param: usize,
    pub p: f64,
    pub h_cond: f64,
    pub frames: u64,
    pub errors: u64,
    pub fer: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub leakage_bits: usize,
    pub seed: u64,
    /// Frames whose privacy-amplified keys differ.
    pub key_mismatches: u64,
    /// Family-specific work counter summed over frames.
    pub decode_ops: u64,
    pub wall_time: Duration,
}

/// 95% Wilson score interval for `errors` out of `frames`.
pub fn wilson_interval(errors: u64, frames: u64) -> (f64, f64) {
    if frames == 0 {
        return (0.0, 1.0);
    }
    const Z: f64 = 1.959_963_984_540_054;
    let n = frames as f64;
    let phat = errors as f64 / n;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / n;
    let centre = (phat + z2 / (2.0 * n)) / denom;
    let half = Z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let low = if errors == 0 {
        0.0
    } else {
        (centre - half).max(0.0)
    };
    let high = if errors == frames {
        1.0
    } else {
        (centre + half).min(1.0)
    };
    (low.min(phat), high.max(phat))
}

/// Six significant digits; fixed notation from `1e-4` up, scientific
/// below. Zero prints as `0.00000`.
pub fn format_prob(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".into();
    }
    let sci = format!("{x:.5e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if exp < -4 {
        sci
    } else {
        let decimals = (5 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    }
}

fn row(out: &mut String, r: &FerEstimate) {
    let _ = write!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.code,
        r.n,
        format_prob(r.rate),
        r.list_param,
        format_prob(r.p),
        format_prob(r.h_cond),
        r.frames,
        r.errors,
        format_prob(r.fer),
        format_prob(r.ci_low),
        format_prob(r.ci_high),
        r.leakage_bits,
        r.seed
    );
}

/// Header plus one line per estimate. Contains no timing, so identical
/// campaigns give identical bytes.
pub fn emit_csv(results: &[FerEstimate]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in results {
        row(&mut out, r);
        out.push('\n');
    }
    out
}

/// [`emit_csv`] with key-mismatch, work and timing columns appended.
pub fn emit_csv_verbose(results: &[FerEstimate]) -> String {
    let mut out = format!("{CSV_HEADER},key_mismatches,decode_ops,wall_time_s\n");
    for r in results {
        row(&mut out, r);
        let _ = writeln!(
            out,
            ",{},{},{:.3}",
            r.key_mismatches,
            r.decode_ops,
            r.wall_time.as_secs_f64()
        );
    }
    out
}
