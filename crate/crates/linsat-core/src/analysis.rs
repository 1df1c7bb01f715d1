//! Closed-form performance curves: the decoded-interferometry semicircle
//! law, the information-set-decoding expected ratio, and the `r/q` hardness
//! wall, sampled into landscape data for plotting.
//!
//! The decoding-radius fraction `ell/m` is always an exogenous input here;
//! nothing derives it from an instance.

use crate::Rat;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("{name} = {value} outside its valid range")]
    RangeError { name: &'static str, value: String },
}

fn range_err(name: &'static str, value: impl std::fmt::Display) -> AnalysisError {
    AnalysisError::RangeError {
        name,
        value: value.to_string(),
    }
}

/// One sample of the approximability landscape at a fixed `r/q`.
#[derive(Debug, Clone, PartialEq)]
pub struct LandscapePoint {
    /// Decoding-radius fraction, exact grid value.
    pub ell_over_m: Rat,
    pub r_over_q: Rat,
    /// Semicircle-law ratio; exactly 1.0 on saturated points.
    pub alpha_dqi: f64,
    /// The worst-case barrier `r/q`.
    pub hardness_wall: Rat,
    /// Whether `ell/m >= 1 - r/q` (decided in exact arithmetic).
    pub saturated: bool,
}

/// The unsaturated branch of the semicircle law,
/// `(sqrt(l (1 - rho)) + sqrt(rho (1 - l)))^2` with `l = ell/m`,
/// `rho = r/q`. Exposed separately so the boundary behavior can be checked
/// against the closed form.
pub fn semicircle_unsaturated(ell_over_m: f64, r_over_q: f64) -> f64 {
    let root = (ell_over_m * (1.0 - r_over_q)).sqrt() + (r_over_q * (1.0 - ell_over_m)).sqrt();
    root * root
}

/// Semicircle-law approximation ratio. Saturates at exactly 1.0 once
/// `ell/m >= 1 - r/q`; on the boundary both branches coincide at 1, so the
/// saturated value is returned there. The open branch is clamped to 1 to
/// absorb rounding just below the boundary.
pub fn semicircle_ratio(ell_over_m: f64, r_over_q: f64) -> Result<f64, AnalysisError> {
    if !(0.0..=1.0).contains(&ell_over_m) {
        return Err(range_err("ell_over_m", ell_over_m));
    }
    if !(r_over_q > 0.0 && r_over_q < 1.0) {
        return Err(range_err("r_over_q", r_over_q));
    }
    if ell_over_m >= 1.0 - r_over_q {
        Ok(1.0)
    } else {
        Ok(semicircle_unsaturated(ell_over_m, r_over_q).min(1.0))
    }
}

/// Expected ratio of solving an `n x n` subsystem exactly and treating the
/// remaining constraints as random: `n/m + (1 - n/m) * r/q`.
pub fn prange_expected_ratio(n_over_m: f64, r_over_q: f64) -> Result<f64, AnalysisError> {
    if !(0.0..=1.0).contains(&n_over_m) {
        return Err(range_err("n_over_m", n_over_m));
    }
    if !(0.0..=1.0).contains(&r_over_q) {
        return Err(range_err("r_over_q", r_over_q));
    }
    Ok(n_over_m + (1.0 - n_over_m) * r_over_q)
}

/// Smallest `ell/m` at which the semicircle law reaches 1: `1 - r/q`.
pub fn saturation_threshold(r_over_q: Rat) -> Result<Rat, AnalysisError> {
    if r_over_q <= Rat::from_integer(0) || r_over_q >= Rat::from_integer(1) {
        return Err(range_err("r_over_q", r_over_q));
    }
    Ok(Rat::from_integer(1) - r_over_q)
}

fn rat_to_f64(x: Rat) -> f64 {
    x.to_f64().expect("desk-scale rationals convert to f64")
}

/// Samples the semicircle law on a uniform `ell/m` grid over `[0, 1]`
/// (inclusive, `steps` points). Saturation is decided in exact rational
/// arithmetic, so saturated points carry `alpha_dqi` exactly 1.
pub fn landscape_curve(r_over_q: Rat, steps: usize) -> Result<Vec<LandscapePoint>, AnalysisError> {
    if r_over_q <= Rat::from_integer(0) || r_over_q >= Rat::from_integer(1) {
        return Err(range_err("r_over_q", r_over_q));
    }
    if steps < 2 {
        return Err(range_err("steps", steps));
    }
    let threshold = Rat::from_integer(1) - r_over_q;
    let rho = rat_to_f64(r_over_q);
    let points = (0..steps)
        .map(|i| {
            let ell = Rat::new(i as i64, steps as i64 - 1);
            let saturated = ell >= threshold;
            let alpha = if saturated {
                1.0
            } else {
                semicircle_ratio(rat_to_f64(ell), rho).expect("grid values are in range")
            };
            LandscapePoint {
                ell_over_m: ell,
                r_over_q,
                alpha_dqi: alpha,
                hardness_wall: r_over_q,
                saturated,
            }
        })
        .collect();
    Ok(points)
}
