//! Content-addressed store of computed runs. An entry lives in
//! `<out>/archive/<key>/`, where the key hashes the system, the parameters
//! and the order; `manifest.json` (written last) lists every file with its
//! SHA-256, so an interrupted write is never mistaken for a complete entry.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use klcells::cells::{CellKind, CellPartition, Cells, EdgeConvention};
use klcells::coxeter::CoxeterSystem;
use klcells::kl::Params;
use klcells::weights::ScanReport;

use crate::config::{Mode, RunConfig};
use crate::pipeline::{CheckResult, Run};
use crate::CliError;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Canonical description of what determines the tables and cells.
pub fn key_material(sys: &CoxeterSystem, params: &Params, convention: EdgeConvention) -> serde_json::Value {
    let rank = params.rank();
    serde_json::json!({
        "format": 1,
        "system": sys.spec().name,
        "matrix": sys.spec().matrix,
        "v": params.all().iter().map(|m| m.exps()[..rank].to_vec()).collect::<Vec<_>>(),
        "order": params.order().functionals(),
        "convention": convention,
    })
}

pub fn key(sys: &CoxeterSystem, params: &Params, convention: EdgeConvention) -> String {
    let text = serde_json::to_string(&key_material(sys, params, convention)).expect("serializable");
    sha256_hex(text.as_bytes())
}

pub fn entry_dir(out: &Path, key: &str) -> PathBuf {
    out.join("archive").join(&key[..16])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionFile {
    /// Blocks as lists of reduced words.
    pub blocks: Vec<Vec<String>>,
    /// Covering pairs `(lower, upper)` of block indices.
    pub hasse: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellsFile {
    pub system: String,
    pub convention: EdgeConvention,
    pub left: PartitionFile,
    pub right: PartitionFile,
    pub two_sided: PartitionFile,
}

impl PartitionFile {
    pub fn new(sys: &CoxeterSystem, p: &CellPartition) -> PartitionFile {
        PartitionFile {
            blocks: p
                .blocks
                .iter()
                .map(|b| b.iter().map(|&x| sys.word_text(x as usize)).collect())
                .collect(),
            hasse: p.hasse.clone(),
        }
    }

    pub fn to_partition(&self, sys: &CoxeterSystem, kind: CellKind) -> Result<CellPartition, CliError> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        let mut block_of = vec![u32::MAX; sys.size()];
        for (k, b) in self.blocks.iter().enumerate() {
            let mut v = Vec::with_capacity(b.len());
            for word in b {
                let w = sys.parse_word(word)?;
                if block_of[w] != u32::MAX {
                    return Err(CliError::Archive(format!("{word} in two blocks")));
                }
                block_of[w] = k as u32;
                v.push(w as u32);
            }
            blocks.push(v);
        }
        if block_of.contains(&u32::MAX) {
            return Err(CliError::Archive("blocks do not cover the group".into()));
        }
        Ok(CellPartition {
            kind,
            blocks,
            block_of,
            hasse: self.hasse.clone(),
        })
    }
}

impl CellsFile {
    pub fn new(sys: &CoxeterSystem, cells: &Cells, convention: EdgeConvention) -> CellsFile {
        CellsFile {
            system: sys.spec().name.clone(),
            convention,
            left: PartitionFile::new(sys, &cells.left),
            right: PartitionFile::new(sys, &cells.right),
            two_sided: PartitionFile::new(sys, &cells.two_sided),
        }
    }

    pub fn to_cells(&self, sys: &CoxeterSystem) -> Result<Cells, CliError> {
        Ok(Cells {
            left: self.left.to_partition(sys, CellKind::Left)?,
            right: self.right.to_partition(sys, CellKind::Right)?,
            two_sided: self.two_sided.to_partition(sys, CellKind::TwoSided)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestFile {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub key: String,
    pub files: Vec<ManifestFile>,
}

pub fn to_json_bytes<T: Serialize>(x: &T) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(x).expect("serializable");
    v.push(b'\n');
    v
}

/// Labels for the two-sided blocks: size and the distinct left-cell characters.
pub fn two_sided_labels(run: &Run) -> Vec<String> {
    let cells = &run.cells;
    let mut chars: Vec<BTreeSet<String>> = vec![BTreeSet::new(); cells.two_sided.len()];
    if let Some(dec) = &run.decompositions {
        for (k, d) in dec.iter().enumerate() {
            let t = cells.two_sided.block_of[cells.left.blocks[k][0] as usize] as usize;
            chars[t].insert(d.to_string());
        }
    }
    cells
        .two_sided
        .blocks
        .iter()
        .zip(&chars)
        .map(|(b, c)| {
            if c.is_empty() {
                format!("{} elements", b.len())
            } else {
                format!("{} elements\\n{}", b.len(), c.iter().cloned().collect::<Vec<_>>().join("\\n"))
            }
        })
        .collect()
}

pub fn left_labels(run: &Run) -> Vec<String> {
    run.cells
        .left
        .blocks
        .iter()
        .enumerate()
        .map(|(k, b)| match &run.decompositions {
            Some(d) => format!("{} elements\\n{}", b.len(), d[k]),
            None => format!("{} elements", b.len()),
        })
        .collect()
}

pub fn summary(run: &Run) -> serde_json::Value {
    let (mode, order, weights) = match &run.mode {
        Mode::Order(o) => ("order", Some(o.describe()), None),
        Mode::Weight(w) => ("weight", None, Some(w.clone())),
    };
    serde_json::json!({
        "system": run.sys.spec().name,
        "size": run.sys.size(),
        "mode": mode,
        "order": order,
        "class_weights": weights,
        "p_entries": run.data.kl.entry_count(),
        "m_entries": run.data.mu.len(),
        "left_cells": run.cells.left.len(),
        "right_cells": run.cells.right.len(),
        "two_sided_cells": run.cells.two_sided.len(),
    })
}

pub fn characters_json(run: &Run) -> Option<serde_json::Value> {
    let (table, chars, dec) = (run.table.as_ref()?, run.left_characters.as_ref()?, run.decompositions.as_ref()?);
    let cells = &run.cells;
    let left: Vec<serde_json::Value> = cells
        .left
        .blocks
        .iter()
        .enumerate()
        .map(|(k, b)| {
            serde_json::json!({
                "cell": k,
                "two_sided": cells.two_sided.block_of[b[0] as usize],
                "size": b.len(),
                "character": dec[k].to_string(),
                "values": chars[k],
            })
        })
        .collect();
    Some(serde_json::json!({
        "table": table.system,
        "labels": table.labels,
        "classes": table.classes.iter().map(|c| run.sys.word_text(c.representative)).collect::<Vec<_>>(),
        "left": left,
    }))
}

/// Files of an entry, in a fixed order.
pub fn render(run: &Run, checks: Option<&[CheckResult]>) -> Vec<(String, Vec<u8>)> {
    let sys = &run.sys;
    let mut files: Vec<(String, Vec<u8>)> = Vec::new();
    let k = key_material(sys, &run.data.params, run.config.convention);
    files.push(("key.json".into(), to_json_bytes(&k)));
    files.push(("summary.json".into(), to_json_bytes(&summary(run))));
    files.push(("system.json".into(), to_json_bytes(&sys.summary_json())));
    let dumps: BTreeSet<&str> = run.config.dump.iter().map(|s| s.as_str()).collect();
    if dumps.contains("tsv") {
        files.push(("p.tsv".into(), run.data.p_tsv(sys).into_bytes()));
        files.push(("mu.tsv".into(), run.data.mu_tsv(sys).into_bytes()));
    }
    if dumps.contains("json") {
        files.push(("p.json".into(), to_json_bytes(&run.data.p_json(sys))));
        files.push(("mu.json".into(), to_json_bytes(&run.data.mu_json(sys))));
    }
    let cells = CellsFile::new(sys, &run.cells, run.config.convention);
    files.push(("cells.json".into(), to_json_bytes(&cells)));
    let name = sys.spec().name.clone();
    files.push((
        "left.dot".into(),
        run.cells.left.to_dot(&format!("{name} left cells"), Some(&left_labels(run))).into_bytes(),
    ));
    files.push((
        "two_sided.dot".into(),
        run.cells
            .two_sided
            .to_dot(&format!("{name} two-sided cells"), Some(&two_sided_labels(run)))
            .into_bytes(),
    ));
    if let Some(c) = characters_json(run) {
        files.push(("characters.json".into(), to_json_bytes(&c)));
    }
    if let Some(c) = checks {
        files.push(("checks.json".into(), to_json_bytes(&c)));
    }
    files.sort_by(|a, b| a.0.cmp(&b.0));
    files
}

pub fn read_manifest(dir: &Path) -> Option<Manifest> {
    let text = fs::read_to_string(dir.join("manifest.json")).ok()?;
    serde_json::from_str(&text).ok()
}

/// The manifest exists and every listed file has its recorded hash.
pub fn verify(dir: &Path) -> Result<Manifest, CliError> {
    let manifest = read_manifest(dir).ok_or_else(|| CliError::Archive(format!("no entry at {}", dir.display())))?;
    for f in &manifest.files {
        let path = dir.join(&f.name);
        let bytes = fs::read(&path).map_err(|e| CliError::io(&path, e))?;
        if sha256_hex(&bytes) != f.sha256 {
            return Err(CliError::Archive(format!("{} does not match its manifest hash", path.display())));
        }
    }
    Ok(manifest)
}

/// Write the entry through a temporary directory renamed into place.
pub fn write(out: &Path, key: &str, files: &[(String, Vec<u8>)]) -> Result<PathBuf, CliError> {
    let dir = entry_dir(out, key);
    let parent = dir.parent().expect("entry has a parent");
    fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
    let tmp = parent.join(format!(".tmp-{}", &key[..16]));
    if tmp.exists() {
        fs::remove_dir_all(&tmp).map_err(|e| CliError::io(&tmp, e))?;
    }
    fs::create_dir_all(&tmp).map_err(|e| CliError::io(&tmp, e))?;
    let mut listed = Vec::new();
    for (name, bytes) in files {
        let path = tmp.join(name);
        fs::write(&path, bytes).map_err(|e| CliError::io(&path, e))?;
        listed.push(ManifestFile {
            name: name.clone(),
            sha256: sha256_hex(bytes),
        });
    }
    let manifest = Manifest {
        key: key.to_string(),
        files: listed,
    };
    let path = tmp.join("manifest.json");
    fs::write(&path, to_json_bytes(&manifest)).map_err(|e| CliError::io(&path, e))?;
    if dir.exists() {
        fs::remove_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    }
    fs::rename(&tmp, &dir).map_err(|e| CliError::io(&dir, e))?;
    Ok(dir)
}

/// File names belonging to an export format.
pub fn format_files(format: &str) -> Result<&'static [&'static str], CliError> {
    Ok(match format {
        "dot" => &["left.dot", "two_sided.dot"],
        "tsv" => &["p.tsv", "mu.tsv"],
        "json" => &["cells.json", "characters.json", "summary.json", "system.json", "p.json", "mu.json"],
        other => return Err(CliError::Config(format!("unknown format {other:?}"))),
    })
}

/// Copy the files of `format` from a verified entry to `dest`; returns the
/// names copied.
pub fn export(entry: &Path, format: &str, dest: &Path) -> Result<Vec<String>, CliError> {
    let manifest = verify(entry)?;
    fs::create_dir_all(dest).map_err(|e| CliError::io(dest, e))?;
    let mut copied = Vec::new();
    for name in format_files(format)? {
        if manifest.files.iter().any(|f| f.name == *name) {
            let to = dest.join(name);
            fs::copy(entry.join(name), &to).map_err(|e| CliError::io(&to, e))?;
            copied.push(name.to_string());
        }
    }
    if copied.is_empty() {
        return Err(CliError::Archive(format!(
            "entry {} has no {format} files",
            entry.display()
        )));
    }
    Ok(copied)
}

/// What was asked of an entry beyond its key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Request {
    pub dump: Vec<String>,
    pub checks: Vec<String>,
    pub seed: u64,
    pub r_sample: usize,
}

impl Request {
    pub fn new(config: &RunConfig) -> Request {
        let mut dump = config.dump.clone();
        dump.sort();
        dump.dedup();
        Request {
            dump,
            checks: config.checks.clone(),
            seed: config.seed,
            r_sample: config.r_sample,
        }
    }
}

pub struct Stored {
    pub dir: PathBuf,
    pub key: String,
    /// Present unless the entry was served from the archive.
    pub run: Option<Run>,
    pub checks: Vec<CheckResult>,
    pub cached: bool,
}

/// Compute a run and its checks, or reuse a verified entry with the same key
/// and request.
pub fn compute_and_store(config: &RunConfig) -> Result<Stored, CliError> {
    let sys = config.system()?;
    let params = config.params(&sys)?;
    let key = key(&sys, &params, config.convention);
    let dir = entry_dir(&config.out, &key);
    let request = Request::new(config);
    if !config.force {
        if let Ok(m) = verify(&dir) {
            let same = fs::read(dir.join("request.json")).ok().and_then(|b| serde_json::from_slice::<Request>(&b).ok())
                == Some(request.clone());
            if m.key == key && same {
                let checks = match fs::read(dir.join("checks.json")) {
                    Ok(b) => serde_json::from_slice(&b).map_err(|e| CliError::Archive(e.to_string()))?,
                    Err(_) => Vec::new(),
                };
                return Ok(Stored {
                    dir,
                    key,
                    run: None,
                    checks,
                    cached: true,
                });
            }
        }
    }
    let run = crate::pipeline::run(config)?;
    let checks = crate::pipeline::run_checks(&run, &config.checks)?;
    let mut files = render(&run, if config.checks.is_empty() { None } else { Some(&checks) });
    files.push(("request.json".into(), to_json_bytes(&request)));
    files.sort_by(|a, b| a.0.cmp(&b.0));
    let dir = write(&config.out, &key, &files)?;
    Ok(Stored {
        dir,
        key,
        run: Some(run),
        checks,
        cached: false,
    })
}

fn partition_digest(p: &CellPartition) -> String {
    let text = serde_json::to_string(&(&p.blocks, &p.hasse)).expect("serializable");
    sha256_hex(text.as_bytes())
}

/// Scan results: `scan.json` (regions with cell counts and partition
/// digests), `scan.txt`, and DOT files per region, in `<out>/scan-<system>/`.
pub fn write_scan(out: &Path, report: &ScanReport) -> Result<PathBuf, CliError> {
    let dir = out.join(format!("scan-{}", report.system));
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let regions: Vec<serde_json::Value> = report
        .regions
        .iter()
        .enumerate()
        .map(|(k, r)| {
            serde_json::json!({
                "index": k,
                "describe": r.describe(),
                "kind": r.kind,
                "lo": r.lo,
                "hi": r.hi,
                "weights": r.weights,
                "order": r.order,
                "validity": r.validity,
                "prime_validity": r.prime_validity,
                "mirrored": r.mirrored,
                "specialization": r.specialization,
                "tiebreak_agreement": r.tiebreak_agreement,
                "left_cells": r.left.len(),
                "two_sided_cells": r.two_sided.len(),
                "left_digest": partition_digest(&r.left),
                "two_sided_digest": partition_digest(&r.two_sided),
                "partition_class": r.partition_class,
                "symmetric_class": r.symmetric_class,
            })
        })
        .collect();
    let doc = serde_json::json!({
        "system": report.system,
        "breakpoints": report.breakpoints,
        "partition_classes": report.partition_classes,
        "symmetric_classes": report.symmetric_classes,
        "swap": report.swap,
        "steps": report.steps,
        "regions": regions,
    });
    let mut files = vec![
        ("scan.json".to_string(), to_json_bytes(&doc)),
        ("scan.txt".to_string(), report.summary().into_bytes()),
    ];
    for (k, r) in report.regions.iter().enumerate() {
        let title = format!("{} {}", report.system, r.describe());
        files.push((format!("region{k:02}_left.dot"), r.left.to_dot(&format!("{title} left"), None).into_bytes()));
        files.push((
            format!("region{k:02}_two_sided.dot"),
            r.two_sided.to_dot(&format!("{title} two-sided"), None).into_bytes(),
        ));
    }
    for (name, bytes) in files {
        let path = dir.join(name);
        fs::write(&path, bytes).map_err(|e| CliError::io(&path, e))?;
    }
    Ok(dir)
}
