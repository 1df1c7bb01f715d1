//! Classical toolkit for max-LINSAT(q, r): maximize the number of linear
//! constraints over `F_q` whose forms land in prescribed acceptance sets.
//!
//! The crate provides exact finite-field arithmetic for any prime power
//! `q <= 2^16` ([`gf`]), the instance model with a line-based text format
//! ([`instance`]), seeded instance generators ([`generators`]), the
//! singleton-to-size-`r` gadget expansion with its exact satisfaction
//! accounting ([`reduction`]), classical baseline solvers ([`solvers`]), and
//! closed-form performance curves ([`analysis`]).
//!
//! Counting is exact throughout: satisfied counts are integers, ratios are
//! rationals ([`Rat`]), and floating point only appears where square roots
//! force it (the semicircle law).

pub mod analysis;
pub mod generators;
pub mod gf;
pub mod instance;
pub mod reduction;
pub mod seeding;
pub mod solvers;

/// Exact rational type used for ratios, fractions, and bounds.
pub type Rat = num_rational::Ratio<i64>;

pub use analysis::{landscape_curve, prange_expected_ratio, saturation_threshold, semicircle_ratio, AnalysisError, LandscapePoint};
pub use generators::{GenConfig, GenError, Kind};
pub use gf::{FieldElement, FieldError, FieldSpec};
pub use instance::{Assignment, Constraint, EvalResult, Instance, InstanceError};
pub use reduction::{binomial, predicted_fraction, r_subsets_containing, reduce, soundness_bound, verify_reduction, ReductionError, ReductionReport};
pub use solvers::{brute_force, brute_force_capped, conditional_expectations, prange_isd, random_assignment, Algorithm, SolveError, SolveResult};

/// Parses a rational from `a/b`, a decimal like `0.25`, or an integer.
pub fn parse_rational(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| format!("invalid numerator `{}`", num))?;
        let d: i64 = den.trim().parse().map_err(|_| format!("invalid denominator `{}`", den))?;
        if d == 0 {
            return Err("denominator is zero".into());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int_part: i64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| format!("invalid number `{}`", s))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid number `{}`", s));
        }
        let digits: i64 = frac.parse().map_err(|_| format!("invalid number `{}`", s))?;
        let scale = 10i64
            .checked_pow(frac.len() as u32)
            .ok_or_else(|| format!("too many decimal places in `{}`", s))?;
        let magnitude = Rat::from_integer(int_part.abs()) + Rat::new(digits, scale);
        let negative = s.starts_with('-');
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let n: i64 = s.parse().map_err(|_| format!("invalid number `{}`", s))?;
    Ok(Rat::from_integer(n))
}
