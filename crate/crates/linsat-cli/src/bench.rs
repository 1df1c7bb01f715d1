//! The bench harness: generates a family of instances per kind, runs every
//! requested algorithm on each, and persists records, a summary, and a run
//! manifest. All primary outputs (instance files, record bodies, summary)
//! are byte-identical across re-runs of the same manifest; wall times and
//! the run manifest's timestamps are the only varying data.

use crate::manifest::BenchManifest;
use crate::records::{summary_csv, BenchRecord};
use crate::{CliError, RecordFormat};
use linsat_core::generators::generate;
use linsat_core::seeding::derive_seed;
use linsat_core::solvers::{
    brute_force_capped, conditional_expectations, prange_isd, random_assignment,
};
use linsat_core::{Algorithm, Instance, SolveError, SolveResult};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

#[derive(Serialize)]
struct RunManifest {
    command: String,
    tool_version: String,
    config: BTreeMap<String, String>,
    input_hashes: BTreeMap<String, String>,
    started_at_unix_ms: u128,
    duration_ms: u128,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{:02x}", b)).collect()
}

/// Dispatches one solver run; shared by `solve` and `bench`.
pub fn run_algorithm(
    inst: &Instance,
    algo: Algorithm,
    seed: u64,
    iters: u64,
    cap: u64,
) -> Result<SolveResult, SolveError> {
    match algo {
        Algorithm::BruteForce => brute_force_capped(inst, cap),
        Algorithm::Random => Ok(random_assignment(inst, seed)),
        Algorithm::CondExp => Ok(conditional_expectations(inst)),
        Algorithm::Prange => prange_isd(inst, seed, iters),
    }
}

pub fn run_bench(
    manifest: &BenchManifest,
    manifest_path: &Path,
    manifest_text: &str,
    out_dir: &Path,
    format: RecordFormat,
) -> Result<(), CliError> {
    let started_at = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0);
    let clock = Instant::now();

    let instances_dir = out_dir.join("instances");
    std::fs::create_dir_all(&instances_dir)
        .map_err(|e| CliError::Io(format!("creating {}: {}", instances_dir.display(), e)))?;

    let mut records = Vec::new();
    for &kind in &manifest.kinds {
        for index in 0..manifest.instances {
            let label = format!("bench.instance.{}", kind.as_str());
            let instance_seed = derive_seed(manifest.seed, &label, index as u64);
            let cfg = manifest.gen_config(kind, instance_seed);
            let (inst, _planted) =
                generate(&cfg).map_err(|e| CliError::Module(e.to_string()))?;

            let path = instances_dir.join(format!("{}-{:04}.linsat", kind.as_str(), index));
            std::fs::write(&path, inst.serialize())
                .map_err(|e| CliError::Io(format!("writing {}: {}", path.display(), e)))?;

            for &algo in &manifest.algos {
                let label = format!("bench.solve.{}.{}", kind.as_str(), algo.as_str());
                let algo_seed = derive_seed(manifest.seed, &label, index as u64);
                let clock = Instant::now();
                let result = run_algorithm(&inst, algo, algo_seed, manifest.iters, manifest.cap)
                    .map_err(|e| CliError::Module(e.to_string()))?;
                let wall_time_ms = clock.elapsed().as_secs_f64() * 1e3;

                // re-validate against an independent evaluation
                let fresh = inst
                    .evaluate(&result.assignment)
                    .map_err(|e| CliError::Module(e.to_string()))?;
                if fresh.satisfied() != result.eval.satisfied() {
                    return Err(CliError::Module(format!(
                        "solver-reported count {} disagrees with re-evaluation {}",
                        result.eval.satisfied(),
                        fresh.satisfied()
                    )));
                }

                records.push(BenchRecord {
                    kind: kind.as_str().to_string(),
                    instance_index: index,
                    q: manifest.q,
                    r: manifest.r,
                    n: manifest.n,
                    m: inst.m(),
                    instance_seed,
                    algorithm: algo.as_str().to_string(),
                    algo_seed: result.seed,
                    iterations: result.iterations,
                    satisfied: fresh.satisfied() as u64,
                    constraints: fresh.total() as u64,
                    ratio_fraction: crate::records::ratio_fraction(fresh.satisfied(), fresh.total()),
                    ratio_decimal: crate::records::ratio_decimal(fresh.satisfied(), fresh.total()),
                    wall_time_ms,
                });
            }
        }
    }

    // cells already arrive in (kind, instance, algo) order; sort to stay
    // schedule-independent if generation ever fans out
    records.sort_by(|a, b| {
        let ka = manifest.kinds.iter().position(|k| k.as_str() == a.kind);
        let kb = manifest.kinds.iter().position(|k| k.as_str() == b.kind);
        let aa = manifest.algos.iter().position(|x| x.as_str() == a.algorithm);
        let ab = manifest.algos.iter().position(|x| x.as_str() == b.algorithm);
        (ka, a.instance_index, aa).cmp(&(kb, b.instance_index, ab))
    });

    let records_path = match format {
        RecordFormat::Jsonl => {
            let mut body = String::new();
            for rec in &records {
                body.push_str(&serde_json::to_string(rec).expect("records serialize"));
                body.push('\n');
            }
            let path = out_dir.join("records.jsonl");
            std::fs::write(&path, body)
                .map_err(|e| CliError::Io(format!("writing {}: {}", path.display(), e)))?;
            path
        }
        RecordFormat::Csv => {
            let mut body = String::from(BenchRecord::CSV_HEADER);
            body.push('\n');
            for rec in &records {
                body.push_str(&rec.csv_row());
                body.push('\n');
            }
            let path = out_dir.join("records.csv");
            std::fs::write(&path, body)
                .map_err(|e| CliError::Io(format!("writing {}: {}", path.display(), e)))?;
            path
        }
    };

    let summary_path = out_dir.join("summary.csv");
    std::fs::write(&summary_path, summary_csv(&records))
        .map_err(|e| CliError::Io(format!("writing {}: {}", summary_path.display(), e)))?;

    let mut input_hashes = BTreeMap::new();
    input_hashes.insert(
        manifest_path.display().to_string(),
        sha256_hex(manifest_text.as_bytes()),
    );
    let run_manifest = RunManifest {
        command: "bench".to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: manifest.config_map(),
        input_hashes,
        started_at_unix_ms: started_at,
        duration_ms: clock.elapsed().as_millis(),
    };
    let manifest_out = out_dir.join("run_manifest.json");
    let body = serde_json::to_string_pretty(&run_manifest).expect("manifest serializes");
    std::fs::write(&manifest_out, body)
        .map_err(|e| CliError::Io(format!("writing {}: {}", manifest_out.display(), e)))?;

    eprintln!(
        "bench: {} records -> {}, summary -> {}",
        records.len(),
        records_path.display(),
        summary_path.display()
    );
    Ok(())
}
