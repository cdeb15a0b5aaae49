use crate::error::{Error, Result};

/// Binary entropy `h(p)` in bits, with `h(0) = h(1) = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    Ok(entropy_unchecked(p))
}

fn entropy_unchecked(p: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// The unique `p ∈ [0, 0.5]` with `h(p) = h`, found by bisection.
pub fn inverse_binary_entropy(h: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&h) {
        return Err(Error::InvalidEntropy(h));
    }
    if h == 0.0 {
        return Ok(0.0);
    }
    if h == 1.0 {
        return Ok(0.5);
    }
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    // Runs until the bracket can no longer shrink in f64.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if entropy_unchecked(mid) < h {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
