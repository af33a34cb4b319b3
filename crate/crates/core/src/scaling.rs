//! Iterated-logarithm scale factors.
//!
//! `iterlog` at depth `j` is the j-fold logarithm of `x` clipped to 1:
//! it equals `ln(ln(…ln(x)…))` when `x` exceeds the exponential tower
//! `e↑↑j` and 1 otherwise, so it is continuous, ≥ 1 everywhere, and
//! non-decreasing. Depth 0 is the empty iteration and returns 1.
//!
//! From these the per-block quantities are derived: the scale
//! `s_k(n) = √(n·∂₁(n)···∂_k(n))` (reciprocal of a tent's peak value)
//! and the slope `1/(n·s_k(n))` (per-unit-distance decrement of the
//! tent, and the decay envelope of the block norms).

use crate::error::{Error, Result};

/// Towers are precomputed once; `e↑↑4` already overflows f64, so every
/// representable double sits below the depth-4 threshold.
const MAX_TOWER: usize = 8;

fn towers() -> &'static [f64; MAX_TOWER + 1] {
    use std::sync::OnceLock;
    static TOWERS: OnceLock<[f64; MAX_TOWER + 1]> = OnceLock::new();
    TOWERS.get_or_init(|| {
        let mut t = [1.0f64; MAX_TOWER + 1];
        for j in 1..=MAX_TOWER {
            t[j] = t[j - 1].exp();
        }
        t
    })
}

/// The number of iterated-log factors and the scales derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScaleParams {
    k: u32,
}

impl ScaleParams {
    pub fn new(k: u32) -> ScaleParams {
        ScaleParams { k }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The exponential tower `e↑↑j` (`tower(0) = 1`); saturates to +∞
    /// once it leaves the double range.
    pub fn tower(j: u32) -> f64 {
        towers()[(j as usize).min(MAX_TOWER)]
    }

    /// The clipped j-fold logarithm of `x`.
    pub fn iterlog_depth(j: u32, x: f64) -> Result<f64> {
        if x <= 0.0 || x.is_nan() {
            return Err(Error::domain(format!(
                "iterated logarithm needs x > 0, got {x}"
            )));
        }
        if j == 0 || x <= ScaleParams::tower(j) {
            return Ok(1.0);
        }
        let mut v = x;
        for _ in 0..j {
            v = v.ln();
        }
        Ok(v)
    }

    /// The clipped k-fold logarithm at this instance's depth.
    pub fn iterlog(&self, x: f64) -> Result<f64> {
        ScaleParams::iterlog_depth(self.k, x)
    }

    /// `∂₁(n)·∂₂(n)···∂_k(n)`; the empty product for k = 0.
    pub fn log_factor_product(&self, n: u64) -> Result<f64> {
        if n < 1 {
            return Err(Error::domain("scale factors are defined for n ≥ 1"));
        }
        let x = n as f64;
        let mut prod = 1.0;
        for j in 1..=self.k {
            prod *= ScaleParams::iterlog_depth(j, x)?;
        }
        Ok(prod)
    }

    /// `s_k(n) = √(n·∂₁(n)···∂_k(n))`.
    pub fn scale(&self, n: u64) -> Result<f64> {
        Ok((n as f64 * self.log_factor_product(n)?).sqrt())
    }

    /// `1/(n·s_k(n))` — the tent slope and the decay envelope.
    pub fn slope(&self, n: u64) -> Result<f64> {
        Ok(1.0 / (n as f64 * self.scale(n)?))
    }

    /// `1/(n·∂₁(n)···∂_k(n))` — one term of the divergent minorizing series.
    pub fn series_term(&self, n: u64) -> Result<f64> {
        Ok(1.0 / (n as f64 * self.log_factor_product(n)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_values() {
        assert_eq!(ScaleParams::tower(0), 1.0);
        assert!((ScaleParams::tower(1) - std::f64::consts::E).abs() < 1e-15);
        assert!((ScaleParams::tower(2) - 15.154262241479262).abs() / 15.154262241479262 < 1e-12);
        assert!(ScaleParams::tower(4).is_infinite());
    }

    #[test]
    fn iterlog_examples() {
        let p1 = ScaleParams::new(1);
        assert_eq!(p1.iterlog(2.0).unwrap(), 1.0); // 2 ≤ e
        assert!((p1.iterlog(10.0).unwrap() - 10f64.ln()).abs() < 1e-15);
        let p2 = ScaleParams::new(2);
        assert!((p2.iterlog(100.0).unwrap() - 100f64.ln().ln()).abs() < 1e-15);
        assert!((p2.iterlog(100.0).unwrap() - 1.5271796258079011).abs() < 1e-12);
        // depth 0 is identically 1
        let p0 = ScaleParams::new(0);
        assert_eq!(p0.iterlog(1e9).unwrap(), 1.0);
        assert!(p1.iterlog(0.0).is_err());
        assert!(p1.iterlog(-3.0).is_err());
    }

    #[test]
    fn iterlog_is_clipped_and_monotone() {
        for k in 0..=4u32 {
            let p = ScaleParams::new(k);
            let mut prev = 0.0;
            let mut x = 0.5;
            while x < 1e9 {
                let v = p.iterlog(x).unwrap();
                assert!(v >= 1.0, "iterlog_{k}({x}) = {v} < 1");
                if x >= 1.0 {
                    assert!(v >= prev - 1e-12);
                    prev = v;
                }
                x *= 1.7;
            }
        }
    }

    #[test]
    fn continuity_at_thresholds() {
        // ln applied k times to tower(k) is 1; for k = 4 peel one ln
        // analytically (ln tower(4) = tower(3)) since tower(4) overflows.
        for k in 1..=4u32 {
            let peel = if k == 4 { 1 } else { 0 };
            let mut v = ScaleParams::tower(k - peel);
            for _ in 0..(k - peel) {
                v = v.ln();
            }
            assert!((v - 1.0).abs() <= 1e-12, "iterated ln at tower({k}) = {v}");
        }
    }

    #[test]
    fn deeper_iterlog_is_smaller() {
        // from depth 1 on: depth 0 is pinned at 1 and sits below everything
        for k in 1..=2u32 {
            let lo = ScaleParams::tower(k + 1) + 1.0;
            let mut x = lo;
            while x < 1e9 {
                let shallow = ScaleParams::iterlog_depth(k, x).unwrap();
                let deep = ScaleParams::iterlog_depth(k + 1, x).unwrap();
                assert!(
                    deep <= shallow + 1e-12,
                    "depth {} at {x}: {deep} > {shallow}",
                    k + 1
                );
                x *= 2.3;
            }
        }
    }

    #[test]
    fn scale_examples() {
        for k in 0..=3u32 {
            assert!((ScaleParams::new(k).scale(1).unwrap() - 1.0).abs() < 1e-15);
        }
        let p1 = ScaleParams::new(1);
        assert!((p1.scale(2).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!((p1.scale(10).unwrap() - (10.0 * 10f64.ln()).sqrt()).abs() < 1e-12);
        assert!((p1.scale(10).unwrap() - 4.798526).abs() < 1e-6);
        assert!(p1.scale(0).is_err());
    }

    #[test]
    fn slope_examples() {
        assert!((ScaleParams::new(1).slope(1).unwrap() - 1.0).abs() < 1e-15);
        assert!((ScaleParams::new(1).slope(2).unwrap() - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-15);
        assert!((ScaleParams::new(0).slope(4).unwrap() - 0.125).abs() < 1e-15);
    }

    #[test]
    fn scale_is_monotone_in_n() {
        for k in 0..=3u32 {
            let p = ScaleParams::new(k);
            let mut prev = 0.0;
            for n in 1..400u64 {
                let s = p.scale(n).unwrap();
                assert!(s >= prev - 1e-12);
                prev = s;
            }
        }
    }

    #[test]
    fn peak_slope_identities() {
        for k in 0..=3u32 {
            let p = ScaleParams::new(k);
            for n in [1u64, 2, 3, 7, 30, 1000, 123_456] {
                let s = p.scale(n).unwrap();
                let sl = p.slope(n).unwrap();
                // n · s · slope = 1
                assert!((n as f64 * s * sl - 1.0).abs() < 1e-12);
                // scale · slope = 1/n
                assert!((s * sl - 1.0 / n as f64).abs() / (1.0 / n as f64) < 1e-12);
                // s² · slope · n = s
                assert!((s * s * sl * n as f64 - s).abs() / s < 1e-12);
            }
        }
    }
}
