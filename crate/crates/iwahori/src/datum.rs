//! `--group` / `--delta` arguments and the root-datum JSON format.
//!
//! Simple-root indices are 1-based wherever a user sees them. Permutations
//! given 0-based (they contain a 0) are accepted as well.

use std::path::Path;

use iwahori_core::{DatumSpec, RootDatum};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaJson {
    pub perm: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullDatumJson {
    #[serde(default)]
    pub name: String,
    pub ambient_rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<DeltaJson>,
    /// Basis of the cocharacter lattice, all of `Z^d` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_basis: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortDatumJson {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DatumJson {
    Full(FullDatumJson),
    Short(ShortDatumJson),
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Datum(msg.into())
}

/// Normalizes a permutation to 0-based.
pub fn perm_to_zero_based(perm: &[usize]) -> CliResult<Vec<usize>> {
    let shift = if perm.contains(&0) { 0 } else { 1 };
    let p: Vec<usize> = perm.iter().map(|&i| i.wrapping_sub(shift)).collect();
    let mut seen = vec![false; p.len()];
    for &i in &p {
        if i >= p.len() || std::mem::replace(&mut seen[i], true) {
            return Err(bad(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(p)
}

impl DatumJson {
    pub fn to_spec(&self) -> CliResult<DatumSpec> {
        match self {
            DatumJson::Short(s) => DatumSpec::builtin(&format!("{}:{}", s.kind, s.rank)).map_err(Into::into),
            DatumJson::Full(f) => {
                let r = f.simple_roots.len();
                let d = f.ambient_rank;
                let mut spec = DatumSpec {
                    name: if f.name.is_empty() { String::from("custom") } else { f.name.clone() },
                    ambient_rank: d,
                    simple_roots: f.simple_roots.clone(),
                    simple_coroots: f.simple_coroots.clone(),
                    delta_perm: (0..r).collect(),
                    delta_matrix: (0..d).map(|i| (0..d).map(|j| (i == j) as i64).collect()).collect(),
                    lattice_basis: f.lattice_basis.clone(),
                };
                match &f.delta {
                    None => {}
                    Some(DeltaJson { perm, matrix: Some(m) }) => {
                        spec.delta_perm = perm_to_zero_based(perm)?;
                        spec.delta_matrix = m.clone();
                    }
                    // matrix derived from the permutation
                    Some(DeltaJson { perm, matrix: None }) => {
                        spec = spec.with_delta_perm(perm_to_zero_based(perm)?)?;
                    }
                }
                Ok(spec)
            }
        }
    }

    pub fn from_spec(spec: &DatumSpec) -> DatumJson {
        DatumJson::Full(FullDatumJson {
            name: spec.name.clone(),
            ambient_rank: spec.ambient_rank,
            simple_roots: spec.simple_roots.clone(),
            simple_coroots: spec.simple_coroots.clone(),
            delta: Some(DeltaJson {
                perm: spec.delta_perm.iter().map(|i| i + 1).collect(),
                matrix: Some(spec.delta_matrix.clone()),
            }),
            lattice_basis: spec.lattice_basis.clone(),
        })
    }
}

pub fn spec_from_json(text: &str) -> CliResult<DatumSpec> {
    let j: DatumJson = serde_json::from_str(text).map_err(|e| bad(format!("datum JSON: {e}")))?;
    j.to_spec()
}

/// `GL:n`, `SL:n`, `SP:2n` or `file:PATH`.
pub fn spec_from_group(group: &str) -> CliResult<DatumSpec> {
    if let Some(path) = group.strip_prefix("file:") {
        let text = std::fs::read_to_string(Path::new(path)).map_err(|e| bad(format!("{path}: {e}")))?;
        return spec_from_json(&text);
    }
    DatumSpec::builtin(group).map_err(Into::into)
}

/// `id` or `perm:i,j,...`.
pub fn apply_delta(spec: DatumSpec, delta: &str) -> CliResult<DatumSpec> {
    let delta = delta.trim();
    if delta == "id" {
        let r = spec.simple_roots.len();
        return Ok(if spec.delta_perm == (0..r).collect::<Vec<_>>() {
            spec
        } else {
            spec.with_delta_perm((0..r).collect())?
        });
    }
    let Some(list) = delta.strip_prefix("perm:") else {
        return Err(bad(format!("--delta expects id or perm:..., got {delta:?}")));
    };
    let perm: Vec<usize> = list
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| bad(format!("bad index {s:?} in --delta"))))
        .collect::<CliResult<_>>()?;
    Ok(spec.with_delta_perm(perm_to_zero_based(&perm)?)?)
}

pub fn load_datum(group: &str, delta: Option<&str>) -> CliResult<RootDatum> {
    let mut spec = spec_from_group(group)?;
    if let Some(d) = delta {
        spec = apply_delta(spec, d)?;
    }
    Ok(RootDatum::new(spec)?)
}
