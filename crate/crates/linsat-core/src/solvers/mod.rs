//! Classical baselines: exhaustive search (defines OPT), uniformly random
//! assignment, the derandomized conditional-expectations greedy, and
//! Prange-style information-set decoding.

pub mod linalg;

use crate::gf::FieldElement;
use crate::instance::{Assignment, EvalResult, Instance, InstanceError};
use crate::seeding::stream_rng;
use linalg::{solve_linear_system, LinearSolution, Matrix};
use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

/// Default cap on brute-force enumeration (number of assignments).
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    BruteForce,
    Random,
    CondExp,
    Prange,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::BruteForce => "brute",
            Algorithm::Random => "random",
            Algorithm::CondExp => "ce",
            Algorithm::Prange => "prange",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Algorithm, String> {
        match s {
            "brute" => Ok(Algorithm::BruteForce),
            "random" => Ok(Algorithm::Random),
            "ce" => Ok(Algorithm::CondExp),
            "prange" => Ok(Algorithm::Prange),
            other => Err(format!("unknown algorithm `{}`", other)),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("enumeration of {states} assignments exceeds the cap of {cap}")]
    TooLarge { states: u128, cap: u64 },
    #[error("iteration count must be at least 1")]
    ZeroIterations,
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// A solver's output; `eval` is always a fresh re-evaluation of `assignment`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub assignment: Assignment,
    pub eval: EvalResult,
    pub algorithm: Algorithm,
    pub iterations: Option<u64>,
    pub seed: Option<u64>,
}

fn finish(
    inst: &Instance,
    values: Vec<FieldElement>,
    algorithm: Algorithm,
    iterations: Option<u64>,
    seed: Option<u64>,
) -> SolveResult {
    let assignment = Assignment::new(values);
    let eval = inst
        .evaluate(&assignment)
        .expect("solver assignments match the instance shape");
    SolveResult {
        assignment,
        eval,
        algorithm,
        iterations,
        seed,
    }
}

/// Exhaustive optimum with the default enumeration cap.
pub fn brute_force(inst: &Instance) -> Result<SolveResult, SolveError> {
    brute_force_capped(inst, DEFAULT_ENUM_CAP)
}

/// Exhaustive optimum. Ties break toward the lexicographically smallest
/// assignment, which the ascending enumeration order provides for free.
pub fn brute_force_capped(inst: &Instance, cap: u64) -> Result<SolveResult, SolveError> {
    let q = inst.spec().q();
    let states = (u128::from(q)).checked_pow(inst.n() as u32);
    match states {
        Some(s) if s <= u128::from(cap) => {}
        _ => {
            return Err(SolveError::TooLarge {
                states: states.unwrap_or(u128::MAX),
                cap,
            })
        }
    }

    let mut values = vec![FieldElement::ZERO; inst.n()];
    let mut best_values = values.clone();
    let mut best = inst.satisfied_count(&values);
    'outer: loop {
        // odometer increment: last variable fastest, so assignments appear
        // in ascending lexicographic order
        let mut i = inst.n();
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            let next = values[i].value() + 1;
            if next < q {
                values[i] = FieldElement::from_raw(next);
                break;
            }
            values[i] = FieldElement::ZERO;
        }
        let s = inst.satisfied_count(&values);
        if s > best {
            best = s;
            best_values = values.clone();
        }
    }
    Ok(finish(inst, best_values, Algorithm::BruteForce, None, None))
}

/// One uniformly random assignment from the seeded stream.
pub fn random_assignment(inst: &Instance, seed: u64) -> SolveResult {
    let q = inst.spec().q();
    let mut rng = stream_rng(seed, 0);
    let values = (0..inst.n())
        .map(|_| FieldElement::from_raw(rng.gen_range(0..q)))
        .collect();
    finish(inst, values, Algorithm::Random, None, Some(seed))
}

/// Derandomized greedy: fixes variables in index order, choosing the value
/// that maximizes the exact conditional expectation of the satisfied count.
///
/// A constraint whose undetermined suffix still has a nonzero coefficient is
/// uniform over the field regardless of the prefix, so it contributes
/// `|F_i| / q`; a fully determined constraint contributes 0 or 1. Scores are
/// scaled by `q` to stay in integers, and each greedy step can only raise
/// the expectation, so the final count is at least `sum_i |F_i| / q`.
pub fn conditional_expectations(inst: &Instance) -> SolveResult {
    let spec = inst.spec();
    let q = spec.q();
    let n = inst.n();
    let m = inst.m();

    // index of the last nonzero coefficient per row (None for all-zero rows)
    let last_nonzero: Vec<Option<usize>> = inst
        .rows()
        .iter()
        .map(|row| row.coeffs().iter().rposition(|c| !c.is_zero()))
        .collect();

    let mut partial = vec![FieldElement::ZERO; m];
    let mut values = Vec::with_capacity(n);
    for t in 0..n {
        let mut best_value = FieldElement::ZERO;
        let mut best_score = 0u64;
        for v in spec.elements() {
            // score * q: determined constraints contribute q or 0, undetermined |F_i|
            let mut score = 0u64;
            for (i, row) in inst.rows().iter().enumerate() {
                let determined = match last_nonzero[i] {
                    None => true,
                    Some(last) => last <= t,
                };
                if determined {
                    let lhs = spec.add(partial[i], spec.mul(row.coeffs()[t], v));
                    if row.accepts(lhs) {
                        score += u64::from(q);
                    }
                } else {
                    score += row.accept().len() as u64;
                }
            }
            // ties break toward the smallest encoding: elements() ascends
            // and the comparison is strict
            if score > best_score {
                best_score = score;
                best_value = v;
            }
        }
        for (i, row) in inst.rows().iter().enumerate() {
            partial[i] = spec.add(partial[i], spec.mul(row.coeffs()[t], best_value));
        }
        values.push(best_value);
    }
    finish(inst, values, Algorithm::CondExp, None, None)
}

/// Information-set decoding: each iteration samples `min(n, m)` constraints,
/// picks a target inside each of their acceptance sets, solves the linear
/// subsystem exactly, and keeps the best candidate over the full instance.
///
/// Rank-deficient but consistent subsystems fill free variables with seeded
/// random values; an inconsistent subsystem resamples its targets once and
/// then falls back to a random assignment for that iteration. With `n > m`
/// the whole (underdetermined) system is solved, i.e. a maximal independent
/// subsystem. Ties across iterations keep the earliest.
pub fn prange_isd(inst: &Instance, seed: u64, iterations: u64) -> Result<SolveResult, SolveError> {
    if iterations == 0 {
        return Err(SolveError::ZeroIterations);
    }
    let n = inst.n();
    let m = inst.m();
    let subsystem = n.min(m);

    let mut best_values: Option<Vec<FieldElement>> = None;
    let mut best = 0usize;
    for iter in 0..iterations {
        let mut rng = stream_rng(seed, iter + 1);

        let mut indices: Vec<usize> = (0..m).collect();
        let rows: Vec<usize> = if subsystem < m {
            let (chosen, _) = indices.partial_shuffle(&mut rng, subsystem);
            chosen.to_vec()
        } else {
            indices
        };
        let a = Matrix::from_rows(
            rows.iter()
                .map(|&i| inst.rows()[i].coeffs().to_vec())
                .collect(),
        );

        let mut candidate = None;
        for _attempt in 0..2 {
            let targets: Vec<FieldElement> = rows
                .iter()
                .map(|&i| {
                    let accept = inst.rows()[i].accept();
                    accept[rng.gen_range(0..accept.len())]
                })
                .collect();
            match solve_linear_system(inst.spec(), &a, &targets) {
                LinearSolution::Unique(x) => {
                    candidate = Some(x);
                    break;
                }
                LinearSolution::Parametrized(ps) => {
                    let free: Vec<FieldElement> = (0..ps.free_cols().len())
                        .map(|_| FieldElement::from_raw(rng.gen_range(0..inst.spec().q())))
                        .collect();
                    candidate = Some(ps.instantiate(&free));
                    break;
                }
                LinearSolution::Inconsistent => {}
            }
        }
        let values = candidate.unwrap_or_else(|| {
            (0..n)
                .map(|_| FieldElement::from_raw(rng.gen_range(0..inst.spec().q())))
                .collect()
        });

        let s = inst.satisfied_count(&values);
        if best_values.is_none() || s > best {
            best = s;
            best_values = Some(values);
        }
    }
    Ok(finish(
        inst,
        best_values.expect("at least one iteration ran"),
        Algorithm::Prange,
        Some(iterations),
        Some(seed),
    ))
}
