//! Key-value manifest files.
//!
//! Grammar: one `key = value` pair per line; `#` starts a comment; blank
//! lines are ignored. List values are comma-separated. Fractions accept
//! `a/b`, decimals, or integers.

use linsat_core::{parse_rational, Algorithm, GenConfig, Kind, Rat};
use std::collections::BTreeMap;

pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `key = value`", lineno + 1))?;
        let key = key.trim().to_string();
        if key.is_empty() {
            return Err(format!("line {}: empty key", lineno + 1));
        }
        if map.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(format!("line {}: duplicate key `{}`", lineno + 1, key));
        }
    }
    Ok(map)
}

fn parse_field<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, String> {
    match map.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse()
            .map(Some)
            .map_err(|_| format!("invalid value for `{}`: `{}`", key, raw)),
    }
}

/// Generator settings read from a manifest; every field is optional so CLI
/// flags can fill or override them.
#[derive(Debug, Default, Clone)]
pub struct GenManifest {
    pub q: Option<u32>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub r: Option<usize>,
    pub seed: Option<u64>,
    pub kind: Option<Kind>,
    pub planted_sat_fraction: Option<Rat>,
}

impl GenManifest {
    pub fn parse(text: &str) -> Result<GenManifest, String> {
        let map = parse_key_values(text)?;
        let known = ["q", "n", "m", "r", "seed", "kind", "planted_sat_fraction"];
        for key in map.keys() {
            if !known.contains(&key.as_str()) {
                return Err(format!("unknown key `{}`", key));
            }
        }
        Ok(GenManifest {
            q: parse_field(&map, "q")?,
            n: parse_field(&map, "n")?,
            m: parse_field(&map, "m")?,
            r: parse_field(&map, "r")?,
            seed: parse_field(&map, "seed")?,
            kind: parse_field(&map, "kind")?,
            planted_sat_fraction: map
                .get("planted_sat_fraction")
                .map(|raw| parse_rational(raw))
                .transpose()?,
        })
    }
}

/// A bench run: the cross product of instance kinds and algorithms over a
/// family of seeded instances.
#[derive(Debug, Clone)]
pub struct BenchManifest {
    pub seed: u64,
    pub q: u32,
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub kinds: Vec<Kind>,
    pub algos: Vec<Algorithm>,
    /// Instances generated per kind.
    pub instances: usize,
    /// Iteration count passed to the information-set solver.
    pub iters: u64,
    /// Enumeration cap for the exhaustive solver.
    pub cap: u64,
    pub planted_sat_fraction: Rat,
}

impl BenchManifest {
    pub fn parse(text: &str) -> Result<BenchManifest, String> {
        let map = parse_key_values(text)?;
        let known = [
            "seed", "q", "n", "m", "r", "kinds", "algos", "instances", "iters", "cap",
            "planted_sat_fraction",
        ];
        for key in map.keys() {
            if !known.contains(&key.as_str()) {
                return Err(format!("unknown key `{}`", key));
            }
        }
        let require = |key: &str| {
            map.get(key)
                .cloned()
                .ok_or_else(|| format!("missing required key `{}`", key))
        };
        let kinds: Vec<Kind> = require("kinds")?
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<_, _>>()?;
        let algos: Vec<Algorithm> = require("algos")?
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<_, _>>()?;
        if kinds.is_empty() || algos.is_empty() {
            return Err("`kinds` and `algos` must be nonempty".into());
        }
        let manifest = BenchManifest {
            seed: parse_field(&map, "seed")?.unwrap_or(0),
            q: parse_field(&map, "q")?.ok_or("missing required key `q`")?,
            n: parse_field(&map, "n")?.ok_or("missing required key `n`")?,
            m: parse_field(&map, "m")?.ok_or("missing required key `m`")?,
            r: parse_field(&map, "r")?.ok_or("missing required key `r`")?,
            kinds,
            algos,
            instances: parse_field(&map, "instances")?.unwrap_or(1),
            iters: parse_field(&map, "iters")?.unwrap_or(1),
            cap: parse_field(&map, "cap")?.unwrap_or(linsat_core::solvers::DEFAULT_ENUM_CAP),
            planted_sat_fraction: map
                .get("planted_sat_fraction")
                .map(|raw| parse_rational(raw))
                .transpose()?
                .unwrap_or_else(|| Rat::from_integer(1)),
        };
        if manifest.instances == 0 {
            return Err("`instances` must be at least 1".into());
        }
        Ok(manifest)
    }

    /// The resolved configuration as flat strings, for the run manifest.
    pub fn config_map(&self) -> BTreeMap<String, String> {
        let mut map = BTreeMap::new();
        map.insert("seed".into(), self.seed.to_string());
        map.insert("q".into(), self.q.to_string());
        map.insert("n".into(), self.n.to_string());
        map.insert("m".into(), self.m.to_string());
        map.insert("r".into(), self.r.to_string());
        map.insert(
            "kinds".into(),
            self.kinds.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(","),
        );
        map.insert(
            "algos".into(),
            self.algos.iter().map(|a| a.as_str()).collect::<Vec<_>>().join(","),
        );
        map.insert("instances".into(), self.instances.to_string());
        map.insert("iters".into(), self.iters.to_string());
        map.insert("cap".into(), self.cap.to_string());
        map.insert(
            "planted_sat_fraction".into(),
            self.planted_sat_fraction.to_string(),
        );
        map
    }

    pub fn gen_config(&self, kind: Kind, seed: u64) -> GenConfig {
        let mut cfg = GenConfig::new(self.q, self.n, self.m, self.r, seed, kind);
        cfg.planted_sat_fraction = self.planted_sat_fraction;
        cfg
    }
}
