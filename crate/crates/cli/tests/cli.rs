use std::fs;
use std::path::Path;
use std::process::Command;

use klcells::cells::{Cells, EdgeConvention};
use klcells::coxeter::CoxeterSystem;
use klcells::kl::{compute_kl, Params};
use klcells_cli::archive::{self, CellsFile};
use klcells_cli::config::{class_weights, parse_list, parse_order, RunConfig};
use klcells_cli::pipeline::{f4_case, run_checks, Status};

fn sys(name: &str) -> CoxeterSystem {
    CoxeterSystem::new(name.parse().unwrap()).unwrap()
}

fn config(system: &str, weight: &[i64], out: &Path) -> RunConfig {
    RunConfig {
        system: system.into(),
        weight: Some(weight.to_vec()),
        out: out.to_path_buf(),
        ..RunConfig::default()
    }
}

fn klcells() -> Command {
    Command::new(env!("CARGO_BIN_EXE_klcells"))
}

#[test]
fn order_and_weight_parsing() {
    let o = parse_order("0,1;1,0").unwrap();
    assert_eq!(o.describe(), "0,1;1,0");
    assert!(parse_order("1,2;2,4").is_err());
    assert!(parse_order("a,b").is_err());
    assert_eq!(parse_list("1, 2").unwrap(), vec![1, 2]);
    let f4 = sys("F4");
    assert_eq!(class_weights(&f4, &[1, 2]).unwrap(), vec![1, 2]);
    assert_eq!(class_weights(&f4, &[1, 1, 2, 2]).unwrap(), vec![1, 2]);
    assert!(class_weights(&f4, &[1, 2, 2, 2]).is_err());
    assert!(class_weights(&f4, &[0, 1]).is_err());
    assert_eq!(f4_case(&[2, 4]), Some("b2a"));
    assert_eq!(f4_case(&[2, 3]), Some("between"));
    assert_eq!(f4_case(&[1, 3]), Some("beyond"));
    assert_eq!(f4_case(&[3, 3]), Some("equal"));
    assert_eq!(f4_case(&[2, 1]), None);
}

#[test]
fn json_config_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    fs::write(&path, r#"{"system": "B3", "weight": [2, 1], "checks": ["L"]}"#).unwrap();
    let c = RunConfig::load(&path).unwrap();
    assert_eq!(c.system, "B3");
    assert_eq!(c.weight, Some(vec![2, 1]));
    assert_eq!(c.seed, RunConfig::default().seed);
    fs::write(&path, r#"{"system": "B3", "wieght": [2, 1]}"#).unwrap();
    assert!(RunConfig::load(&path).is_err());
    let both = RunConfig {
        order: Some("1,0;0,1".into()),
        ..config("B3", &[1, 2], dir.path())
    };
    assert!(both.params(&sys("B3")).is_err());
}

#[test]
fn cells_file_round_trips() {
    let w = sys("B3");
    let data = compute_kl(&w, &Params::weight_per_class(&w, &[1, 2]).unwrap()).unwrap();
    let cells = Cells::new(&w, &data.mu, EdgeConvention::ModuleClosure);
    let file = CellsFile::new(&w, &cells, EdgeConvention::ModuleClosure);
    let text = serde_json::to_string(&file).unwrap();
    let back: CellsFile = serde_json::from_str(&text).unwrap();
    let again = back.to_cells(&w).unwrap();
    assert!(again.left.same_blocks(&cells.left));
    assert!(again.two_sided.same_blocks(&cells.two_sided));
    assert_eq!(again.two_sided.hasse, cells.two_sided.hasse);
}

#[test]
fn archive_is_deterministic_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = config("B3", &[1, 2], dir.path());
    c.checks = vec!["lemmas".into(), "L".into()];
    c.dump = vec!["tsv".into(), "json".into()];
    let first = archive::compute_and_store(&c).unwrap();
    assert!(!first.cached);
    assert!(first.checks.iter().all(|r| r.status == Status::Pass));
    let files: Vec<(String, Vec<u8>)> = archive::verify(&first.dir)
        .unwrap()
        .files
        .iter()
        .map(|f| (f.name.clone(), fs::read(first.dir.join(&f.name)).unwrap()))
        .collect();

    let second = archive::compute_and_store(&c).unwrap();
    assert!(second.cached);
    assert_eq!(second.checks.len(), 2);

    c.force = true;
    let third = archive::compute_and_store(&c).unwrap();
    assert!(!third.cached);
    assert_eq!(third.dir, first.dir);
    for (name, bytes) in &files {
        assert_eq!(&fs::read(third.dir.join(name)).unwrap(), bytes, "{name}");
    }

    // A changed request recomputes under the same key.
    c.force = false;
    c.checks = vec!["lemmas".into()];
    assert!(!archive::compute_and_store(&c).unwrap().cached);

    // Corrupting a file invalidates the entry.
    fs::write(first.dir.join("cells.json"), b"{}").unwrap();
    assert!(archive::verify(&first.dir).is_err());
    assert!(!archive::compute_and_store(&c).unwrap().cached);
}

#[test]
fn archive_key_separates_parameters() {
    let w = sys("B3");
    let a = Params::weight_per_class(&w, &[1, 2]).unwrap();
    let b = Params::weight_per_class(&w, &[2, 1]).unwrap();
    let c = Params::weight_per_class(&w, &[2, 4]).unwrap();
    let conv = EdgeConvention::ModuleClosure;
    assert_ne!(archive::key(&w, &a, conv), archive::key(&w, &b, conv));
    assert_ne!(archive::key(&w, &a, conv), archive::key(&w, &a, EdgeConvention::Verbatim));
    assert_eq!(archive::key(&w, &a, conv), archive::key(&w, &a, conv));
    assert_ne!(archive::key(&w, &a, conv), archive::key(&w, &c, conv));
}

#[test]
fn export_copies_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let stored = archive::compute_and_store(&config("A2", &[1], dir.path())).unwrap();
    let dest = dir.path().join("export");
    let copied = archive::export(&stored.dir, "dot", &dest).unwrap();
    assert_eq!(copied, vec!["left.dot", "two_sided.dot"]);
    let dot = fs::read_to_string(dest.join("left.dot")).unwrap();
    assert_eq!(dot.matches("[label=").count(), 4);
    assert!(archive::export(&stored.dir, "xml", &dest).is_err());
    assert!(archive::export(&dir.path().join("missing"), "dot", &dest).is_err());
}

#[test]
fn checks_on_a_small_run() {
    let dir = tempfile::tempdir().unwrap();
    let c = config("I2(4)", &[1, 3], dir.path());
    let run = klcells_cli::pipeline::run(&c).unwrap();
    let names: Vec<String> = ["lemmas", "bounds", "r", "consistent", "L", "distinguished", "relations"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for r in run_checks(&run, &names).unwrap() {
        assert_eq!(r.status, Status::Pass, "{}: {}", r.name, r.detail);
    }
}

#[test]
fn binary_compute_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let status = klcells()
        .args(["compute", "--type", "A1", "--weight", "1", "--out", out])
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let entries: Vec<_> = fs::read_dir(dir.path().join("archive")).unwrap().collect();
    assert_eq!(entries.len(), 1);

    let dest = dir.path().join("dot");
    let status = klcells()
        .args(["export", "--type", "A1", "--weight", "1", "--out", out, "--format", "dot", "--dest"])
        .arg(&dest)
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    assert!(dest.join("two_sided.dot").exists());

    let missing = klcells()
        .args(["export", "--type", "A2", "--weight", "1", "--out", out, "--format", "dot", "--dest"])
        .arg(&dest)
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));

    let bad = klcells().args(["compute", "--type", "Z7", "--weight", "1", "--out", out]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn binary_scan_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let status = klcells()
        .args(["scan", "--type", "I2(4)", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let doc: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("scan-I2(4)/scan.json")).unwrap()).unwrap();
    assert_eq!(doc["partition_classes"], 3);
}
