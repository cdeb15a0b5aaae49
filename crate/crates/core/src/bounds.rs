//! Normal-approximation floor on the frame-error rate of Slepian-Wolf
//! coding with BSC(p) side information.

use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::gf2::binary_entropy;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundQuery {
    /// Blocklength.
    pub n: usize,
    /// Public-message bits.
    pub m: usize,
    /// Crossover probability.
    pub p: f64,
}

impl BoundQuery {
    pub fn new(n: usize, m: usize, p: f64) -> Result<Self> {
        let q = Self { n, m, p };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.m > self.n {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= m <= n, got m = {}, n = {}",
                self.m, self.n
            )));
        }
        if !(self.p > 0.0 && self.p < 0.5) {
            return Err(Error::InvalidProbability(self.p));
        }
        Ok(())
    }
}

/// Standard normal upper tail.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// Source dispersion `p (1 - p) log2²((1 - p) / p)` in bits².
pub fn source_dispersion(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    let l = ((1.0 - p) / p).log2();
    Ok(p * (1.0 - p) * l * l)
}

/// `Q((m - n h(p) + ½ log2 n) / sqrt(n V(p)))`, clamped to `[0, 1]`.
pub fn sw_fer_lower_bound(q: &BoundQuery) -> Result<f64> {
    sw_fer_lower_bound_with(q, true)
}

/// As [`sw_fer_lower_bound`]; `log_term = false` drops the `½ log2 n`
/// correction.
pub fn sw_fer_lower_bound_with(q: &BoundQuery, log_term: bool) -> Result<f64> {
    q.validate()?;
    let n = q.n as f64;
    let mut num = q.m as f64 - n * binary_entropy(q.p)?;
    if log_term {
        num += 0.5 * n.log2();
    }
    let den = (n * source_dispersion(q.p)?).sqrt();
    Ok(q_function(num / den).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_function_values() {
        assert!((q_function(0.0) - 0.5).abs() < 1e-15);
        assert!((q_function(1.959963984540054) - 0.025).abs() < 1e-9);
        assert!((q_function(-1.0) + q_function(1.0) - 1.0).abs() < 1e-15);
        // Tail oracle: Q(x) ~ φ(x)/x (1 - 1/x² + 3/x⁴) for large x.
        let x: f64 = 6.0;
        let phi = (-x * x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let approx = phi / x * (1.0 - 1.0 / (x * x) + 3.0 / x.powi(4));
        assert!((q_function(x) / approx - 1.0).abs() < 3e-3);
    }

    #[test]
    fn n128_example() {
        let v = source_dispersion(0.03).unwrap();
        assert!((v - 0.732).abs() < 1e-3);
        let b = sw_fer_lower_bound(&BoundQuery::new(128, 64, 0.03).unwrap()).unwrap();
        let arg = (64.0 - 128.0 * binary_entropy(0.03).unwrap() + 3.5) / (128.0 * v).sqrt();
        assert!((arg - 4.40).abs() < 0.01);
        assert!(b > 4e-6 && b < 7e-6, "{b}");
    }

    #[test]
    fn zero_argument_gives_half() {
        let (n, p) = (256usize, 0.07);
        let h = binary_entropy(p).unwrap();
        // Pick p so that m is an integer: solve on a fine grid instead.
        let m = (n as f64 * h - 0.5 * (n as f64).log2()).round() as usize;
        let target = m as f64 + 0.5 * (n as f64).log2();
        let p_star = crate::gf2::inverse_binary_entropy(target / n as f64).unwrap();
        let b = sw_fer_lower_bound(&BoundQuery::new(n, m, p_star).unwrap()).unwrap();
        assert!((b - 0.5).abs() < 1e-6, "{b}");
    }

    #[test]
    fn vanishes_as_p_goes_to_zero() {
        let b = sw_fer_lower_bound(&BoundQuery::new(128, 1, 1e-9).unwrap()).unwrap();
        assert!(b < 1e-12);
    }

    #[test]
    fn log_term_flag() {
        let q = BoundQuery::new(128, 40, 0.05).unwrap();
        let with = sw_fer_lower_bound_with(&q, true).unwrap();
        let without = sw_fer_lower_bound_with(&q, false).unwrap();
        assert!(without > with);
    }

    #[test]
    fn monotone_in_m_and_p() {
        let n = 128;
        for i in 1..100 {
            let p = 0.005 * i as f64;
            let mut prev = f64::INFINITY;
            for m in 1..=n {
                let b = sw_fer_lower_bound(&BoundQuery::new(n, m, p).unwrap()).unwrap();
                assert!((0.0..=1.0).contains(&b));
                assert!(b <= prev);
                prev = b;
            }
        }
        for m in [20, 64, 100] {
            let mut prev = 0.0;
            for i in 1..100 {
                let p = 0.005 * i as f64;
                let b = sw_fer_lower_bound(&BoundQuery::new(n, m, p).unwrap()).unwrap();
                assert!(b >= prev, "m = {m}, p = {p}");
                prev = b;
            }
        }
    }

    #[test]
    fn symmetric_ingredients() {
        for i in 1..50 {
            let p = 0.01 * i as f64;
            let d = (binary_entropy(p).unwrap() - binary_entropy(1.0 - p).unwrap()).abs();
            assert!(d < 1e-12);
            let v = (source_dispersion(p).unwrap() - source_dispersion(1.0 - p).unwrap()).abs();
            assert!(v < 1e-12);
        }
    }

    #[test]
    fn rejects_degenerate_queries() {
        assert!(BoundQuery::new(128, 64, 0.0).is_err());
        assert!(BoundQuery::new(128, 64, 0.5).is_err());
        assert!(BoundQuery::new(128, 0, 0.1).is_err());
        assert!(BoundQuery::new(128, 129, 0.1).is_err());
        assert!(source_dispersion(1.0).is_err());
    }
}
