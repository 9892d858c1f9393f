use std::path::Path;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use klcells::cells::{check_property_l, check_refinement, CellPartition, Cells};
use klcells::coxeter::CoxeterSystem;
use klcells::kl::{
    check_bounds, check_lemmas, check_r_lemma, compute_kl_with_progress, compute_r, compute_kl, verify_bar_identity,
    KlData, Params,
};
use klcells::laurent::{MonomialOrder, Tiebreak};
use klcells::reps::{
    cell_character, compare_constructible, compare_order, generate, is_regular, CharacterTable, ConstructibleFile,
    Decomposition, OrderFile, SpecializedAction,
};
use klcells::weights::{
    check_specialization, check_star, distinguished_involutions, gamma_plus_w, normalize_weight, validity_interval,
    Bound,
};

use crate::config::{Mode, RunConfig};
use crate::CliError;

/// One computed `(system, parameters)` with its cells and, when a character
/// table is available, the characters of its left cells.
pub struct Run {
    pub config: RunConfig,
    pub sys: CoxeterSystem,
    pub mode: Mode,
    pub data: KlData,
    pub cells: Cells,
    pub table: Option<CharacterTable>,
    /// Characters at `v = 1`, one per left cell.
    pub left_characters: Option<Vec<Vec<i64>>>,
    pub decompositions: Option<Vec<Decomposition>>,
}

/// The shipped table for the type, else the closed form for dihedral groups
/// or a table generated on the spot for rank one.
pub fn character_table(sys: &CoxeterSystem, data_dir: &Path) -> Result<Option<CharacterTable>, CliError> {
    let path = data_dir.join("chartables").join(format!("{}.json", sys.spec().name));
    if path.exists() {
        return Ok(Some(CharacterTable::load(&path, sys)?));
    }
    if sys.rank() == 2 && sys.spec().m(0, 1) != 2 {
        return Ok(Some(generate::dihedral_table(sys)?));
    }
    if sys.rank() == 1 {
        return Ok(Some(generate::weyl_table(sys)?));
    }
    Ok(None)
}

pub fn run(config: &RunConfig) -> Result<Run, CliError> {
    let sys = config.system()?;
    let mode = config.mode(&sys)?;
    let params = config.params(&sys)?;
    let data = if config.progress {
        compute_kl_with_progress(&sys, &params, |level, max| eprintln!("level {level}/{max}"))?
    } else {
        compute_kl(&sys, &params)?
    };
    let cells = Cells::new(&sys, &data.mu, config.convention);
    let table = character_table(&sys, &config.data_dir())?;
    let (left_characters, decompositions) = match &table {
        Some(t) => {
            use rayon::prelude::*;
            let chars: Vec<Vec<i64>> = cells
                .left
                .blocks
                .par_iter()
                .map(|b| cell_character(&sys, &data, b, &t.classes))
                .collect();
            let dec = chars.iter().map(|c| t.decompose(c)).collect::<Result<Vec<_>, _>>()?;
            (Some(chars), Some(dec))
        }
        None => (None, None),
    };
    Ok(Run {
        config: config.clone(),
        sys,
        mode,
        data,
        cells,
        table,
        left_characters,
        decompositions,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub data: serde_json::Value,
}

impl CheckResult {
    fn new(name: &str, pass: bool, detail: String, data: serde_json::Value) -> CheckResult {
        CheckResult {
            name: name.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            detail,
            data,
        }
    }

    fn skip(name: &str, detail: &str) -> CheckResult {
        CheckResult {
            name: name.into(),
            status: Status::Skip,
            detail: detail.into(),
            data: serde_json::Value::Null,
        }
    }
}

pub const ALL_CHECKS: [&str; 11] = [
    "lemmas",
    "bounds",
    "r",
    "consistent",
    "L",
    "distinguished",
    "characters",
    "relations",
    "constructible",
    "order",
    "specialization",
];

fn json<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("serializable")
}

/// The F4 reference case for class weights `[a, b]` with `b ≥ a`.
pub fn f4_case(class_weights: &[i64]) -> Option<&'static str> {
    let w = normalize_weight(class_weights);
    let (a, b) = (w[0], w[1]);
    if b < a {
        return None;
    }
    Some(if b == a {
        "equal"
    } else if b == 2 * a {
        "b2a"
    } else if b < 2 * a {
        "between"
    } else {
        "beyond"
    })
}

pub fn run_check(run: &Run, name: &str) -> Result<CheckResult, CliError> {
    let sys = &run.sys;
    let data = &run.data;
    Ok(match name {
        "lemmas" => {
            let r = check_lemmas(sys, data);
            CheckResult::new(
                name,
                r.ok(),
                format!("{} P and {} M entries", r.p_checked, r.m_checked),
                json(&r),
            )
        }
        "bounds" => {
            let r = check_bounds(sys, data);
            CheckResult::new(
                name,
                r.violations.is_empty(),
                format!("max |exponent| {:?} <= {:?}", r.max_abs, r.coordinate_bounds),
                json(&r),
            )
        }
        "r" => {
            let r = compute_r(sys, &data.params);
            let targets: Vec<usize> = if run.config.r_sample == 0 || run.config.r_sample >= sys.size() {
                (0..sys.size()).collect()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(run.config.seed);
                let mut v = sample(&mut rng, sys.size(), run.config.r_sample).into_vec();
                v.sort_unstable();
                v
            };
            let id = verify_bar_identity(sys, &data.kl, &r, &targets);
            let lemma = check_r_lemma(sys, &data.params, &r);
            CheckResult::new(
                name,
                id.violations.is_empty() && lemma.is_empty(),
                format!("{} pairs over {} elements w", id.pairs_checked, targets.len()),
                serde_json::json!({"identity": id, "r_lemma_violations": lemma}),
            )
        }
        "consistent" => CheckResult::new(
            name,
            run.cells.consistent(),
            format!(
                "{} left, {} right, {} two-sided",
                run.cells.left.len(),
                run.cells.right.len(),
                run.cells.two_sided.len()
            ),
            serde_json::Value::Null,
        ),
        "L" => {
            let r = check_property_l(&run.cells);
            CheckResult::new(
                name,
                r.holds(),
                format!("{} pairs of left cells", r.pairs_checked),
                json(&r),
            )
        }
        "distinguished" => {
            if !matches!(run.mode, Mode::Weight(_)) {
                return Ok(CheckResult::skip(name, "needs a weight function"));
            }
            let r = distinguished_involutions(sys, &data.kl, &[1], &run.cells.left);
            let words: Vec<String> = r.involutions().iter().map(|&d| sys.word_text(d as usize)).collect();
            CheckResult::new(
                name,
                r.ok(),
                format!("{} cells, {} findings", r.cells.len(), r.findings().len()),
                serde_json::json!({"involutions": words, "findings": r.findings()}),
            )
        }
        "characters" => match (&run.table, &run.left_characters) {
            (Some(t), Some(chars)) => {
                let regular = is_regular(t, chars);
                CheckResult::new(
                    name,
                    regular,
                    format!("{} left cells decompose; sum is regular: {regular}", chars.len()),
                    serde_json::Value::Null,
                )
            }
            _ => CheckResult::skip(name, "no character table"),
        },
        "relations" => {
            let bad: Vec<usize> = run
                .cells
                .left
                .blocks
                .iter()
                .enumerate()
                .filter(|(_, b)| !SpecializedAction::new(sys, data, b).satisfies_relations(sys, b.len()))
                .map(|(k, _)| k)
                .collect();
            CheckResult::new(
                name,
                bad.is_empty(),
                format!("{} left cell modules", run.cells.left.len()),
                json(&bad),
            )
        }
        "constructible" | "order" => {
            let (Mode::Weight(w), Some(dec)) = (&run.mode, &run.decompositions) else {
                return Ok(CheckResult::skip(name, "needs a weight function and a character table"));
            };
            if sys.spec().name != "F4" {
                return Ok(CheckResult::skip(name, "reference data exists for F4 only"));
            }
            let Some(case) = f4_case(w) else {
                return Ok(CheckResult::skip(name, "reference data is for b >= a"));
            };
            let dir = run.config.data_dir();
            if name == "constructible" {
                let reference = ConstructibleFile::load(&dir.join("constructible").join(format!("f4_{case}.json")))?;
                let r = compare_constructible(&run.cells, dec, &reference)?;
                CheckResult::new(name, r.ok(), format!("case {case}"), json(&r))
            } else {
                let reference = OrderFile::load(&dir.join("reference").join("f4_lr_order.json"))?;
                let c = reference
                    .case(case)
                    .ok_or_else(|| CliError::Config(format!("no reference order for {case}")))?;
                let r = compare_order(&run.cells, dec, c);
                CheckResult::new(
                    name,
                    r.isomorphic(),
                    format!("case {case}: {} blocks, expected {}", r.blocks, r.expected_blocks),
                    json(&r),
                )
            }
        }
        "specialization" => specialization_check(run)?,
        other => return Err(CliError::Config(format!("unknown check {other:?}"))),
    })
}

/// Compare the run with its counterpart in the other mode when condition (*)
/// certifies the specialization.
fn specialization_check(run: &Run) -> Result<CheckResult, CliError> {
    let name = "specialization";
    let sys = &run.sys;
    if sys.classes().count != 2 {
        return Ok(CheckResult::skip(name, "needs two generator classes"));
    }
    let (r, sigma) = match &run.mode {
        Mode::Order(order) => {
            let set = gamma_plus_w(&run.data.kl, &run.data.mu, order);
            let Some(iv) = validity_interval(&set) else {
                return Ok(CheckResult::skip(name, "no weight function satisfies (*) for this order"));
            };
            let sigma = interior_weights(&iv.lo, &iv.hi);
            let direct = compute_kl(sys, &Params::weight_per_class(sys, &sigma)?)?;
            (check_specialization(&run.data, &direct, &sigma), sigma)
        }
        Mode::Weight(w) => {
            let order = MonomialOrder::weighted(w[0], w[1], Tiebreak::I).expect("rank two");
            let gamma = compute_kl(sys, &Params::generic(sys, order.clone())?)?;
            let set = gamma_plus_w(&gamma.kl, &gamma.mu, &order);
            if !check_star(w, &set).is_empty() {
                return Ok(CheckResult::skip(name, "(*) fails at this weight for the weighted order"));
            }
            (check_specialization(&gamma, &run.data, w), w.clone())
        }
    };
    Ok(CheckResult::new(
        name,
        r.ok(),
        format!("sigma {sigma:?}: {} P and {} M entries", r.p_checked, r.m_checked),
        json(&r),
    ))
}

fn interior_weights(lo: &Bound, hi: &Bound) -> Vec<i64> {
    let frac = |b: &Bound| match b {
        Bound::Finite(r) => (*r.numer(), *r.denom()),
        Bound::Infinite => (1, 0),
    };
    let (a, b) = frac(lo);
    let (c, d) = frac(hi);
    normalize_weight(&[b + d, a + c])
}

pub fn run_checks(run: &Run, names: &[String]) -> Result<Vec<CheckResult>, CliError> {
    names.iter().map(|n| run_check(run, n)).collect()
}

/// `coarse` is a union of the blocks of each of `fine`.
pub fn refinement_check(coarse: &CellPartition, fine: &[(String, CellPartition)]) -> Vec<CheckResult> {
    fine.iter()
        .map(|(label, p)| {
            let bad = check_refinement(coarse, p);
            CheckResult::new(
                &format!("refines {label}"),
                bad.is_empty(),
                format!("{} coarse blocks, {} fine", coarse.len(), p.len()),
                json(&bad),
            )
        })
        .collect()
}

pub fn format_results(results: &[CheckResult]) -> String {
    let mut s = String::new();
    for r in results {
        let tag = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        s.push_str(&format!("{tag}  {:<16} {}\n", r.name, r.detail));
    }
    s
}
