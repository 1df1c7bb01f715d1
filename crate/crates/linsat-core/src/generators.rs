//! Seeded instance families: uniformly random, coefficient-free three-ones
//! rows, Vandermonde-structured rows, and planted near-satisfiable instances.
//!
//! Every generator is a pure function of its [`GenConfig`]: row `i` draws
//! from RNG substream `i + 1` and instance-level choices (planted assignment,
//! forced-row selection, evaluation-point shuffle) from substream 0, so the
//! output is bit-identical across runs, platforms, and thread counts.

use crate::gf::{FieldElement, FieldError, FieldSpec};
use crate::instance::{Assignment, Constraint, Instance};
use crate::seeding::stream_rng;
use crate::Rat;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Random,
    E3Lin,
    Opi,
    Planted,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Random => "random",
            Kind::E3Lin => "e3lin",
            Kind::Opi => "opi",
            Kind::Planted => "planted",
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Kind, String> {
        match s {
            "random" => Ok(Kind::Random),
            "e3lin" => Ok(Kind::E3Lin),
            "opi" => Ok(Kind::Opi),
            "planted" => Ok(Kind::Planted),
            other => Err(format!("unknown instance kind `{}`", other)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub q: u32,
    pub n: usize,
    pub m: usize,
    /// Uniform acceptance-set size, `1 <= r <= q - 1`.
    pub r: usize,
    pub seed: u64,
    pub kind: Kind,
    /// Fraction of constraints the planted assignment must satisfy; only
    /// read by [`planted`].
    pub planted_sat_fraction: Rat,
}

impl GenConfig {
    pub fn new(q: u32, n: usize, m: usize, r: usize, seed: u64, kind: Kind) -> GenConfig {
        GenConfig {
            q,
            n,
            m,
            r,
            seed,
            kind,
            planted_sat_fraction: Rat::from_integer(1),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("generator for kind `{expected}` called with kind `{got}`")]
    KindMismatch { expected: &'static str, got: &'static str },
    #[error("acceptance-set size r={r} must satisfy 1 <= r <= q-1 = {}", q - 1)]
    AcceptanceSize { r: usize, q: u32 },
    #[error("three-ones rows need n >= 3, got n={0}")]
    TooFewVariables(usize),
    #[error("Vandermonde instances need m <= q distinct evaluation points, got m={m}, q={q}")]
    TooManyPoints { m: usize, q: u32 },
    #[error("Vandermonde instances need n <= m, got n={n}, m={m}")]
    TooManyVariables { n: usize, m: usize },
    #[error("planted satisfaction fraction {0} must lie in (0, 1]")]
    PlantedFraction(Rat),
    #[error("instance needs n >= 1 and m >= 1")]
    EmptyShape,
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn common_checks(cfg: &GenConfig) -> Result<FieldSpec, GenError> {
    let spec = FieldSpec::from_order(cfg.q)?;
    if cfg.n == 0 || cfg.m == 0 {
        return Err(GenError::EmptyShape);
    }
    if cfg.r == 0 || cfg.r > (cfg.q - 1) as usize {
        return Err(GenError::AcceptanceSize { r: cfg.r, q: cfg.q });
    }
    Ok(spec)
}

fn expect_kind(cfg: &GenConfig, expected: Kind) -> Result<(), GenError> {
    if cfg.kind == expected {
        Ok(())
    } else {
        Err(GenError::KindMismatch {
            expected: expected.as_str(),
            got: cfg.kind.as_str(),
        })
    }
}

/// A uniformly random size-`r` subset of `F_q`, sorted.
fn random_acceptance_set(spec: &FieldSpec, r: usize, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    let mut pool: Vec<u32> = (0..spec.q()).collect();
    let (chosen, _) = pool.partial_shuffle(rng, r);
    let mut set: Vec<FieldElement> = chosen.iter().map(|&v| FieldElement::from_raw(v)).collect();
    set.sort_unstable();
    set
}

fn random_element(spec: &FieldSpec, rng: &mut ChaCha8Rng) -> FieldElement {
    FieldElement::from_raw(rng.gen_range(0..spec.q()))
}

/// Uniform coefficients, redrawn while the row is all-zero so every
/// constraint is a genuine linear form (a zero row would be constant and
/// its satisfaction probability no longer `|F_i|/q`).
fn random_row(spec: &FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    loop {
        let coeffs: Vec<FieldElement> = (0..n).map(|_| random_element(spec, rng)).collect();
        if coeffs.iter().any(|c| !c.is_zero()) {
            return coeffs;
        }
    }
}

/// Uniform nonzero coefficient rows and uniform acceptance sets.
pub fn random(cfg: &GenConfig) -> Result<Instance, GenError> {
    expect_kind(cfg, Kind::Random)?;
    let spec = common_checks(cfg)?;
    let rows = (0..cfg.m)
        .map(|i| {
            let mut rng = stream_rng(cfg.seed, i as u64 + 1);
            let coeffs = random_row(&spec, cfg.n, &mut rng);
            let accept = random_acceptance_set(&spec, cfg.r, &mut rng);
            Constraint::new(coeffs, accept)
        })
        .collect();
    Ok(Instance::new(spec, cfg.n, rows).expect("generated rows satisfy instance invariants"))
}

/// Rows with exactly three coefficients equal to 1 at distinct positions.
/// With `r = 1` the output is a system of three-variable equations.
pub fn e3lin(cfg: &GenConfig) -> Result<Instance, GenError> {
    expect_kind(cfg, Kind::E3Lin)?;
    let spec = common_checks(cfg)?;
    if cfg.n < 3 {
        return Err(GenError::TooFewVariables(cfg.n));
    }
    let rows = (0..cfg.m)
        .map(|i| {
            let mut rng = stream_rng(cfg.seed, i as u64 + 1);
            let mut idx: Vec<usize> = (0..cfg.n).collect();
            let (chosen, _) = idx.partial_shuffle(&mut rng, 3);
            let mut coeffs = vec![FieldElement::ZERO; cfg.n];
            for &j in chosen.iter() {
                coeffs[j] = FieldElement::ONE;
            }
            let accept = random_acceptance_set(&spec, cfg.r, &mut rng);
            Constraint::new(coeffs, accept)
        })
        .collect();
    Ok(Instance::new(spec, cfg.n, rows).expect("generated rows satisfy instance invariants"))
}

/// Vandermonde rows: constraint `i` evaluates the monomials `y_i^0 .. y_i^(n-1)`
/// at a distinct field point `y_i`. Points are the first `m` elements in
/// encoding order, shuffled by substream 0.
pub fn opi(cfg: &GenConfig) -> Result<Instance, GenError> {
    expect_kind(cfg, Kind::Opi)?;
    let spec = common_checks(cfg)?;
    if cfg.m > cfg.q as usize {
        return Err(GenError::TooManyPoints { m: cfg.m, q: cfg.q });
    }
    if cfg.n > cfg.m {
        return Err(GenError::TooManyVariables { n: cfg.n, m: cfg.m });
    }
    let mut points: Vec<FieldElement> = spec.elements().take(cfg.m).collect();
    points.shuffle(&mut stream_rng(cfg.seed, 0));
    let rows = (0..cfg.m)
        .map(|i| {
            let mut rng = stream_rng(cfg.seed, i as u64 + 1);
            let y = points[i];
            let mut coeffs = Vec::with_capacity(cfg.n);
            let mut power = FieldElement::ONE;
            for _ in 0..cfg.n {
                coeffs.push(power);
                power = spec.mul(power, y);
            }
            let accept = random_acceptance_set(&spec, cfg.r, &mut rng);
            Constraint::new(coeffs, accept)
        })
        .collect();
    Ok(Instance::new(spec, cfg.n, rows).expect("generated rows satisfy instance invariants"))
}

/// Random-structure instance plus an assignment forced to satisfy at least
/// `ceil(planted_sat_fraction * m)` constraints. Forcing inserts the planted
/// linear-form value into the acceptance set, evicting a random element.
pub fn planted(cfg: &GenConfig) -> Result<(Instance, Assignment), GenError> {
    expect_kind(cfg, Kind::Planted)?;
    let spec = common_checks(cfg)?;
    let f = cfg.planted_sat_fraction;
    if f <= Rat::from_integer(0) || f > Rat::from_integer(1) {
        return Err(GenError::PlantedFraction(f));
    }
    let forced_count = (f * Rat::from_integer(cfg.m as i64))
        .ceil()
        .to_integer()
        .to_usize()
        .expect("forced count fits usize");

    let mut head_rng = stream_rng(cfg.seed, 0);
    let planted_values: Vec<FieldElement> = (0..cfg.n)
        .map(|_| random_element(&spec, &mut head_rng))
        .collect();
    let mut row_order: Vec<usize> = (0..cfg.m).collect();
    let (forced, _) = row_order.partial_shuffle(&mut head_rng, forced_count);
    let mut is_forced = vec![false; cfg.m];
    for &i in forced.iter() {
        is_forced[i] = true;
    }

    let rows: Vec<Constraint> = (0..cfg.m)
        .map(|i| {
            let mut rng = stream_rng(cfg.seed, i as u64 + 1);
            let coeffs = random_row(&spec, cfg.n, &mut rng);
            let mut accept = random_acceptance_set(&spec, cfg.r, &mut rng);
            if is_forced[i] {
                let value = linear_form(&spec, &coeffs, &planted_values);
                if !accept.contains(&value) {
                    let evict = rng.gen_range(0..accept.len());
                    accept[evict] = value;
                    accept.sort_unstable();
                }
            }
            Constraint::new(coeffs, accept)
        })
        .collect();
    let inst = Instance::new(spec, cfg.n, rows).expect("generated rows satisfy instance invariants");
    Ok((inst, Assignment::new(planted_values)))
}

/// Dispatches on `cfg.kind`; the planted assignment is `Some` only for
/// [`Kind::Planted`].
pub fn generate(cfg: &GenConfig) -> Result<(Instance, Option<Assignment>), GenError> {
    match cfg.kind {
        Kind::Random => Ok((random(cfg)?, None)),
        Kind::E3Lin => Ok((e3lin(cfg)?, None)),
        Kind::Opi => Ok((opi(cfg)?, None)),
        Kind::Planted => {
            let (inst, x) = planted(cfg)?;
            Ok((inst, Some(x)))
        }
    }
}

fn linear_form(spec: &FieldSpec, coeffs: &[FieldElement], values: &[FieldElement]) -> FieldElement {
    let mut acc = FieldElement::ZERO;
    for (c, x) in coeffs.iter().zip(values) {
        acc = spec.add(acc, spec.mul(*c, *x));
    }
    acc
}
