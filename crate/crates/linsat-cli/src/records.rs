//! Result records: JSON-lines for per-run data, CSV for summaries.

use linsat_core::{Rat, SolveResult};
use serde::{Deserialize, Serialize};

/// Fixed-precision decimal rendering used everywhere a ratio is reported.
pub fn ratio_decimal(satisfied: usize, total: usize) -> String {
    format!("{:.6}", satisfied as f64 / total as f64)
}

pub fn ratio_fraction(satisfied: usize, total: usize) -> String {
    Rat::new(satisfied as i64, total as i64).to_string()
}

/// One solver invocation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveRecord {
    pub algorithm: String,
    pub seed: Option<u64>,
    pub iterations: Option<u64>,
    pub satisfied: u64,
    pub constraints: u64,
    pub ratio_fraction: String,
    pub ratio_decimal: String,
    pub assignment: String,
    pub wall_time_ms: f64,
}

impl SolveRecord {
    pub fn from_result(result: &SolveResult, wall_time_ms: f64) -> SolveRecord {
        SolveRecord {
            algorithm: result.algorithm.as_str().to_string(),
            seed: result.seed,
            iterations: result.iterations,
            satisfied: result.eval.satisfied() as u64,
            constraints: result.eval.total() as u64,
            ratio_fraction: ratio_fraction(result.eval.satisfied(), result.eval.total()),
            ratio_decimal: ratio_decimal(result.eval.satisfied(), result.eval.total()),
            assignment: result.assignment.serialize(),
            wall_time_ms,
        }
    }

    pub const CSV_HEADER: &'static str =
        "algorithm,seed,iterations,satisfied,constraints,ratio_fraction,ratio_decimal,assignment,wall_time_ms";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{:.3}",
            self.algorithm,
            opt(self.seed),
            opt(self.iterations),
            self.satisfied,
            self.constraints,
            self.ratio_fraction,
            self.ratio_decimal,
            self.assignment,
            self.wall_time_ms,
        )
    }
}

/// One (instance, algorithm) cell of a bench run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchRecord {
    pub kind: String,
    pub instance_index: usize,
    pub q: u32,
    pub r: usize,
    pub n: usize,
    pub m: usize,
    pub instance_seed: u64,
    pub algorithm: String,
    pub algo_seed: Option<u64>,
    pub iterations: Option<u64>,
    pub satisfied: u64,
    pub constraints: u64,
    pub ratio_fraction: String,
    pub ratio_decimal: String,
    pub wall_time_ms: f64,
}

impl BenchRecord {
    pub const CSV_HEADER: &'static str = "kind,instance_index,q,r,n,m,instance_seed,algorithm,algo_seed,iterations,satisfied,constraints,ratio_fraction,ratio_decimal,wall_time_ms";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{:.3}",
            self.kind,
            self.instance_index,
            self.q,
            self.r,
            self.n,
            self.m,
            self.instance_seed,
            self.algorithm,
            opt(self.algo_seed),
            opt(self.iterations),
            self.satisfied,
            self.constraints,
            self.ratio_fraction,
            self.ratio_decimal,
            self.wall_time_ms,
        )
    }
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

/// Mean ratio and sample standard deviation per (kind, algorithm) cell.
pub fn summary_csv(records: &[BenchRecord]) -> String {
    let mut cells: Vec<(String, String, Vec<f64>)> = Vec::new();
    for rec in records {
        let ratio = rec.satisfied as f64 / rec.constraints as f64;
        match cells
            .iter_mut()
            .find(|(k, a, _)| *k == rec.kind && *a == rec.algorithm)
        {
            Some((_, _, ratios)) => ratios.push(ratio),
            None => cells.push((rec.kind.clone(), rec.algorithm.clone(), vec![ratio])),
        }
    }
    let mut out = String::from("kind,algorithm,samples,mean_ratio,stddev_ratio\n");
    for (kind, algorithm, ratios) in cells {
        let n = ratios.len();
        let mean = ratios.iter().sum::<f64>() / n as f64;
        let stddev = if n > 1 {
            let var = ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            var.sqrt()
        } else {
            0.0
        };
        out.push_str(&format!(
            "{},{},{},{:.6},{:.6}\n",
            kind, algorithm, n, mean, stddev
        ));
    }
    out
}
