//! Left, right and two-sided cells from the M-table.

use std::fmt::Write as _;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use crate::coxeter::CoxeterSystem;
use crate::kl::MuTable;

/// Orientation of the generating relation of the left preorder.
///
/// `ModuleClosure` reads `y ≤_L w` as "`C_y` occurs in `H C_w`": descent edges
/// `sw → w` for `sw > w`, and `y → w` when `M^s_{y,w} ≠ 0`. `Verbatim` instead
/// takes descent edges `y → sy` for `sy > y`; every edge then increases Bruhat
/// order, so all cells are singletons. It is kept for comparison only.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeConvention {
    #[default]
    ModuleClosure,
    Verbatim,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeReason {
    Descent,
    Mu,
}

/// A generating pair `from ≤_L to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub from: u32,
    pub to: u32,
    pub s: u8,
    pub reason: EdgeReason,
}

pub fn left_edges(sys: &CoxeterSystem, mu: &MuTable, convention: EdgeConvention) -> Vec<Edge> {
    let mut edges = Vec::new();
    for w in 0..sys.size() {
        for s in 0..sys.rank() {
            let sw = sys.lmul(s, w);
            if sw > w {
                let (from, to) = match convention {
                    EdgeConvention::ModuleClosure => (sw, w),
                    EdgeConvention::Verbatim => (w, sw),
                };
                edges.push(Edge {
                    from: from as u32,
                    to: to as u32,
                    s: s as u8,
                    reason: EdgeReason::Descent,
                });
            }
        }
        for e in mu.entries(w) {
            edges.push(Edge {
                from: e.y,
                to: w as u32,
                s: e.s,
                reason: EdgeReason::Mu,
            });
        }
    }
    edges.sort();
    edges
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellKind {
    Left,
    Right,
    TwoSided,
}

/// A partition of `W` into blocks with the induced order on blocks.
///
/// Blocks are sorted by least element index (hence by least length), each
/// block's elements ascending. `hasse` holds the transitive reduction as pairs
/// `(lower, upper)` of block indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellPartition {
    pub kind: CellKind,
    pub blocks: Vec<Vec<u32>>,
    pub block_of: Vec<u32>,
    pub hasse: Vec<(u32, u32)>,
}

impl CellPartition {
    /// Strongly connected components of the digraph on `0..size`, ordered by
    /// the reachability of `from → to`.
    pub fn from_edges(kind: CellKind, size: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> CellPartition {
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(size, 0);
        for _ in 0..size {
            g.add_node(());
        }
        let edges: Vec<(u32, u32)> = edges.into_iter().collect();
        for &(a, b) in &edges {
            g.add_edge(a.into(), b.into(), ());
        }
        let mut blocks: Vec<Vec<u32>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut v: Vec<u32> = c.into_iter().map(|n| n.index() as u32).collect();
                v.sort_unstable();
                v
            })
            .collect();
        blocks.sort_by_key(|b| b[0]);
        let mut block_of = vec![0u32; size];
        for (k, b) in blocks.iter().enumerate() {
            for &x in b {
                block_of[x as usize] = k as u32;
            }
        }
        let mut quotient: Vec<(u32, u32)> = edges
            .iter()
            .map(|&(a, b)| (block_of[a as usize], block_of[b as usize]))
            .filter(|(a, b)| a != b)
            .collect();
        quotient.sort_unstable();
        quotient.dedup();
        let hasse = transitive_reduction(blocks.len(), &quotient);
        CellPartition {
            kind,
            blocks,
            block_of,
            hasse,
        }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `reach[a][b]` iff block `a ≤ b`, reflexive.
    pub fn closure(&self) -> Vec<Vec<bool>> {
        closure(self.blocks.len(), &self.hasse)
    }

    /// Canonical form for comparing partitions of the same group.
    pub fn block_sets(&self) -> Vec<Vec<u32>> {
        self.blocks.clone()
    }

    pub fn same_blocks(&self, other: &CellPartition) -> bool {
        self.blocks == other.blocks
    }

    /// Image under a bijection of `W` (e.g. a diagram automorphism).
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> CellPartition {
        let mut pairs: Vec<(usize, Vec<u32>)> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let mut v: Vec<u32> = b.iter().map(|&x| f(x)).collect();
                v.sort_unstable();
                (k, v)
            })
            .collect();
        pairs.sort_by_key(|(_, b)| b[0]);
        let mut new_index = vec![0u32; self.len()];
        for (new, (old, _)) in pairs.iter().enumerate() {
            new_index[*old] = new as u32;
        }
        let blocks: Vec<Vec<u32>> = pairs.into_iter().map(|(_, b)| b).collect();
        let mut block_of = vec![0u32; self.block_of.len()];
        for (k, b) in blocks.iter().enumerate() {
            for &x in b {
                block_of[x as usize] = k as u32;
            }
        }
        let mut hasse: Vec<(u32, u32)> = self
            .hasse
            .iter()
            .map(|&(a, b)| (new_index[a as usize], new_index[b as usize]))
            .collect();
        hasse.sort_unstable();
        CellPartition {
            kind: self.kind,
            blocks,
            block_of,
            hasse,
        }
    }

    pub fn to_json(&self, sys: &CoxeterSystem) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind,
            "blocks": self.blocks.iter().map(|b| b.iter().map(|&x| sys.word_text(x as usize)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "hasse": self.hasse,
        })
    }

    /// Graphviz rendering of the block order; `labels` override the default
    /// `size` node labels.
    pub fn to_dot(&self, name: &str, labels: Option<&[String]>) -> String {
        let mut out = String::new();
        writeln!(out, "digraph \"{name}\" {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        for (k, b) in self.blocks.iter().enumerate() {
            let label = match labels {
                Some(l) => l[k].clone(),
                None => format!("{} elements", b.len()),
            };
            writeln!(out, "  b{k} [label=\"{label}\"];").unwrap();
        }
        for (a, b) in &self.hasse {
            writeln!(out, "  b{a} -> b{b};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn closure(n: usize, edges: &[(u32, u32)]) -> Vec<Vec<bool>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a as usize].push(b as usize);
    }
    let mut reach = vec![vec![false; n]; n];
    for (start, row) in reach.iter_mut().enumerate() {
        let mut stack = vec![start];
        row[start] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !row[y] {
                    row[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    reach
}

fn transitive_reduction(n: usize, edges: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let reach = closure(n, edges);
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || !reach[a][b] {
                continue;
            }
            let implied = (0..n).any(|c| c != a && c != b && reach[a][c] && reach[c][b]);
            if !implied {
                out.push((a as u32, b as u32));
            }
        }
    }
    out
}

/// Left, right and two-sided cells of one run.
#[derive(Clone, Debug, Serialize)]
pub struct Cells {
    pub left: CellPartition,
    pub right: CellPartition,
    pub two_sided: CellPartition,
}

impl Cells {
    pub fn new(sys: &CoxeterSystem, mu: &MuTable, convention: EdgeConvention) -> Cells {
        let edges = left_edges(sys, mu, convention);
        let left = CellPartition::from_edges(CellKind::Left, sys.size(), edges.iter().map(|e| (e.from, e.to)));
        let right = right_cells(sys, &left);
        let inv = |x: u32| sys.inv(x as usize) as u32;
        let both = edges
            .iter()
            .flat_map(|e| [(e.from, e.to), (inv(e.from), inv(e.to))]);
        let two_sided = CellPartition::from_edges(CellKind::TwoSided, sys.size(), both);
        Cells { left, right, two_sided }
    }

    /// Left blocks contained in each two-sided block.
    pub fn left_in_two_sided(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.two_sided.len()];
        for (k, b) in self.left.blocks.iter().enumerate() {
            out[self.two_sided.block_of[b[0] as usize] as usize].push(k);
        }
        out
    }

    /// Each two-sided block is a union of left blocks and of right blocks.
    pub fn consistent(&self) -> bool {
        let unions = |p: &CellPartition| {
            p.blocks.iter().all(|b| {
                let t = self.two_sided.block_of[b[0] as usize];
                b.iter().all(|&x| self.two_sided.block_of[x as usize] == t)
            })
        };
        unions(&self.left) && unions(&self.right)
    }
}

/// Right cells are the inverses of left cells, with the same order.
pub fn right_cells(sys: &CoxeterSystem, left: &CellPartition) -> CellPartition {
    let mut right = left.relabel(|x| sys.inv(x as usize) as u32);
    right.kind = CellKind::Right;
    right
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PropertyLReport {
    pub pairs_checked: usize,
    /// Pairs of distinct left blocks `(B1, B2)` with `B1 ≤_L B2` in one two-sided block.
    pub violations: Vec<(usize, usize)>,
}

impl PropertyLReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `y ≤_L w` and `y ∼_LR w` imply `y ∼_L w`.
pub fn check_property_l(cells: &Cells) -> PropertyLReport {
    let reach = cells.left.closure();
    let mut report = PropertyLReport::default();
    let two = &cells.two_sided.block_of;
    let first = |k: usize| cells.left.blocks[k][0] as usize;
    for a in 0..cells.left.len() {
        for b in 0..cells.left.len() {
            if a == b || two[first(a)] != two[first(b)] {
                continue;
            }
            report.pairs_checked += 1;
            if reach[a][b] {
                report.violations.push((a, b));
            }
        }
    }
    report
}

/// Every block of `coarse` is a union of blocks of `fine`; returns the
/// offending coarse blocks.
pub fn check_refinement(coarse: &CellPartition, fine: &CellPartition) -> Vec<usize> {
    coarse
        .blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| {
            b.iter().any(|&x| {
                let fb = &fine.blocks[fine.block_of[x as usize] as usize];
                fb.iter()
                    .any(|&z| coarse.block_of[z as usize] != coarse.block_of[x as usize])
            })
        })
        .map(|(k, _)| k)
        .collect()
}
