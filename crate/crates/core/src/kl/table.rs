use serde::Serialize;

use super::Params;
use crate::coxeter::CoxeterSystem;
use crate::laurent::{LaurentPoly, Monomial};

/// All `P*_{y,w}` for `y ≤ w`, stored per `w` as rows sorted by `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlTable {
    pub(crate) rows: Vec<Vec<(u32, LaurentPoly)>>,
    pub(crate) v_elem: Vec<Monomial>,
}

impl KlTable {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Nonzero entries `(y, P*_{y,w})` of `C_w`, increasing in `y`.
    pub fn row(&self, w: usize) -> &[(u32, LaurentPoly)] {
        &self.rows[w]
    }

    pub fn p_star(&self, y: usize, w: usize) -> Option<&LaurentPoly> {
        let row = &self.rows[w];
        row.binary_search_by_key(&(y as u32), |e| e.0).ok().map(|i| &row[i].1)
    }

    /// `P_{y,w} = v_w v_y⁻¹ P*_{y,w}`.
    pub fn p(&self, y: usize, w: usize) -> Option<LaurentPoly> {
        let shift = self.v_elem[w].div(&self.v_elem[y]);
        self.p_star(y, w).map(|q| q.shift(&shift))
    }

    pub fn v_elem(&self, w: usize) -> &Monomial {
        &self.v_elem[w]
    }

    pub fn entry_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(w, row)| row.iter().map(move |(y, p)| (*y as usize, w, p)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuEntry {
    pub s: u8,
    pub y: u32,
    pub m: LaurentPoly,
}

/// Nonzero `M^s_{y,w}` for `sy < y < w < sw`, stored per `w` sorted by `(y, s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuTable {
    pub(crate) by_w: Vec<Vec<MuEntry>>,
}

impl MuTable {
    /// Number of elements `w` (rows), not of entries.
    pub fn size(&self) -> usize {
        self.by_w.len()
    }

    pub fn entries(&self, w: usize) -> &[MuEntry] {
        &self.by_w[w]
    }

    pub fn get(&self, s: usize, y: usize, w: usize) -> Option<&LaurentPoly> {
        self.by_w[w]
            .binary_search_by(|e| (e.y, e.s).cmp(&(y as u32, s as u8)))
            .ok()
            .map(|i| &self.by_w[w][i].m)
    }

    pub fn len(&self) -> usize {
        self.by_w.iter().map(|v| v.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(s, y, w, M)` in increasing `w`, then `y`, then `s`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize, &LaurentPoly)> {
        self.by_w
            .iter()
            .enumerate()
            .flat_map(|(w, v)| v.iter().map(move |e| (e.s as usize, e.y as usize, w, &e.m)))
    }
}

/// Kazhdan–Lusztig data for one `(system, parameters, order)`.
#[derive(Clone, Debug)]
pub struct KlData {
    pub params: Params,
    pub kl: KlTable,
    pub mu: MuTable,
}

impl KlData {
    /// TSV lines `y_word<TAB>w_word<TAB>P*` for every stored entry.
    pub fn p_tsv(&self, sys: &CoxeterSystem) -> String {
        let order = self.params.order();
        let mut out = String::from("y\tw\tP*\n");
        for (y, w, p) in self.kl.iter() {
            out.push_str(&format!("{}\t{}\t{}\n", sys.word_text(y), sys.word_text(w), p.to_text(order)));
        }
        out
    }

    /// TSV lines `s<TAB>y_word<TAB>w_word<TAB>M` with 1-based `s`.
    pub fn mu_tsv(&self, sys: &CoxeterSystem) -> String {
        let order = self.params.order();
        let mut out = String::from("s\ty\tw\tM\n");
        for (s, y, w, m) in self.mu.iter() {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                s + 1,
                sys.word_text(y),
                sys.word_text(w),
                m.to_text(order)
            ));
        }
        out
    }

    pub fn p_json(&self, sys: &CoxeterSystem) -> serde_json::Value {
        let order = self.params.order();
        serde_json::Value::Array(
            self.kl
                .iter()
                .map(|(y, w, p)| {
                    serde_json::json!({"y": sys.word_text(y), "w": sys.word_text(w), "poly": p.to_json(order)})
                })
                .collect(),
        )
    }

    pub fn mu_json(&self, sys: &CoxeterSystem) -> serde_json::Value {
        let order = self.params.order();
        serde_json::Value::Array(
            self.mu
                .iter()
                .map(|(s, y, w, m)| {
                    serde_json::json!({"s": s + 1, "y": sys.word_text(y), "w": sys.word_text(w), "poly": m.to_json(order)})
                })
                .collect(),
        )
    }
}
