//! Published lists of left-cell characters and of the order on two-sided
//! cells, and their comparison with computed cells.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Decomposition, RepsError};
use crate::cells::Cells;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSidedEntry {
    /// A character naming the two-sided cell (its special character).
    pub label: String,
    /// Distinct characters of the left cells it contains.
    pub characters: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructibleFile {
    pub system: String,
    pub case: String,
    pub ratio: String,
    pub class_weights: Vec<i64>,
    pub two_sided: Vec<TwoSidedEntry>,
    /// Characters that must not occur as left-cell characters.
    #[serde(default)]
    pub absent: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCase {
    pub case: String,
    pub class_weights: Vec<i64>,
    /// Covering pairs `[lower, upper]` of two-sided cells, named by label.
    pub order: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderFile {
    pub system: String,
    pub cases: Vec<OrderCase>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, RepsError> {
    let text = std::fs::read_to_string(path).map_err(|e| RepsError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| RepsError::Schema(format!("{}: {e}", path.display())))
}

impl ConstructibleFile {
    pub fn load(path: &Path) -> Result<ConstructibleFile, RepsError> {
        read_json(path)
    }
}

impl OrderFile {
    pub fn load(path: &Path) -> Result<OrderFile, RepsError> {
        read_json(path)
    }

    pub fn case(&self, name: &str) -> Option<&OrderCase> {
        self.cases.iter().find(|c| c.case == name)
    }
}

fn canonical(text: &str) -> Result<Vec<(String, i64)>, RepsError> {
    Decomposition::parse(text)
        .map(|d| d.canonical())
        .ok_or_else(|| RepsError::Schema(format!("bad character {text}")))
}

/// The two-sided block of each label: the unique block one of whose left
/// cells has the label as a constituent.
pub fn locate_labels(cells: &Cells, left_chars: &[Decomposition]) -> BTreeMap<String, BTreeSet<usize>> {
    let mut at: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
    for (k, d) in left_chars.iter().enumerate() {
        let t = cells.two_sided.block_of[cells.left.blocks[k][0] as usize] as usize;
        for l in d.labels() {
            at.entry(l.to_string()).or_default().insert(t);
        }
    }
    at
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ConstructibleReport {
    /// Reference cells whose label is in no unique computed block.
    pub unlocated: Vec<String>,
    /// `(label, expected, found)` where the sets of characters differ.
    pub mismatched: Vec<(String, Vec<String>, Vec<String>)>,
    /// Computed two-sided blocks not named by any reference entry.
    pub unclaimed_blocks: Vec<usize>,
    /// Characters listed as absent that occur.
    pub present_but_absent: Vec<String>,
}

impl ConstructibleReport {
    pub fn ok(&self) -> bool {
        self.unlocated.is_empty()
            && self.mismatched.is_empty()
            && self.unclaimed_blocks.is_empty()
            && self.present_but_absent.is_empty()
    }
}

/// Compare the distinct left-cell characters of each two-sided cell with the
/// reference lists.
pub fn compare_constructible(
    cells: &Cells,
    left_chars: &[Decomposition],
    reference: &ConstructibleFile,
) -> Result<ConstructibleReport, RepsError> {
    let located = locate_labels(cells, left_chars);
    let mut per_block: Vec<BTreeSet<Vec<(String, i64)>>> = vec![BTreeSet::new(); cells.two_sided.len()];
    for (k, d) in left_chars.iter().enumerate() {
        let t = cells.two_sided.block_of[cells.left.blocks[k][0] as usize] as usize;
        per_block[t].insert(d.canonical());
    }
    let mut report = ConstructibleReport::default();
    let mut claimed = BTreeSet::new();
    for entry in &reference.two_sided {
        let block = match located.get(&entry.label) {
            Some(s) if s.len() == 1 => *s.iter().next().expect("one element"),
            _ => {
                report.unlocated.push(entry.label.clone());
                continue;
            }
        };
        claimed.insert(block);
        let expected: BTreeSet<Vec<(String, i64)>> =
            entry.characters.iter().map(|c| canonical(c)).collect::<Result<_, _>>()?;
        if expected != per_block[block] {
            let show = |s: &BTreeSet<Vec<(String, i64)>>| {
                s.iter()
                    .map(|v| Decomposition { parts: v.clone() }.to_string())
                    .collect::<Vec<_>>()
            };
            report.mismatched.push((entry.label.clone(), show(&expected), show(&per_block[block])));
        }
    }
    report.unclaimed_blocks = (0..cells.two_sided.len()).filter(|b| !claimed.contains(b)).collect();
    let all: BTreeSet<Vec<(String, i64)>> = per_block.into_iter().flatten().collect();
    for a in &reference.absent {
        if all.contains(&canonical(a)?) {
            report.present_but_absent.push(a.clone());
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OrderReport {
    pub unlocated: Vec<String>,
    /// Covering pairs in the reference but not computed, and conversely.
    pub missing: Vec<(String, String)>,
    pub extra: Vec<(String, String)>,
    pub blocks: usize,
    pub expected_blocks: usize,
}

impl OrderReport {
    /// The labelled Hasse diagrams coincide.
    pub fn isomorphic(&self) -> bool {
        self.unlocated.is_empty() && self.missing.is_empty() && self.extra.is_empty() && self.blocks == self.expected_blocks
    }
}

/// Compare the Hasse diagram of the two-sided order with reference covering
/// pairs, naming computed blocks through their constituents.
pub fn compare_order(cells: &Cells, left_chars: &[Decomposition], reference: &OrderCase) -> OrderReport {
    let located = locate_labels(cells, left_chars);
    let mut report = OrderReport {
        blocks: cells.two_sided.len(),
        ..Default::default()
    };
    let mut names: BTreeSet<&str> = BTreeSet::new();
    for (a, b) in &reference.order {
        names.insert(a);
        names.insert(b);
    }
    report.expected_blocks = names.len();
    let mut name_of: BTreeMap<usize, String> = BTreeMap::new();
    for n in &names {
        match located.get(*n) {
            Some(s) if s.len() == 1 => {
                name_of.insert(*s.iter().next().expect("one element"), n.to_string());
            }
            _ => report.unlocated.push(n.to_string()),
        }
    }
    let computed: BTreeSet<(String, String)> = cells
        .two_sided
        .hasse
        .iter()
        .map(|&(a, b)| {
            let name = |x: u32| name_of.get(&(x as usize)).cloned().unwrap_or_else(|| format!("#{x}"));
            (name(a), name(b))
        })
        .collect();
    let expected: BTreeSet<(String, String)> = reference.order.iter().cloned().collect();
    report.missing = expected.difference(&computed).cloned().collect();
    report.extra = computed.difference(&expected).cloned().collect();
    report
}
