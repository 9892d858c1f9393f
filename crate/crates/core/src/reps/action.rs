use crate::coxeter::{ConjugacyClass, CoxeterSystem};
use crate::kl::KlData;
use crate::laurent::{Int, LaurentPoly, Monomial};

/// Matrix of `T_s` on the left cell module with basis `e_w (w ∈ cell)`:
/// `T_s e_w = e_{sw} + v_s e_w - Σ (-1)^{l(w)-l(z)} M^s_{z,w} e_z` if `sw > w`,
/// and `-v_s⁻¹ e_w` if `sw < w`, with `e_z = 0` outside the cell.
/// Entry `[i][j]` is the coefficient of `e_{cell[i]}` in `T_s e_{cell[j]}`.
pub fn cell_action_matrix(sys: &CoxeterSystem, data: &KlData, cell: &[u32], s: usize) -> Vec<Vec<LaurentPoly>> {
    let n = cell.len();
    let pos = |x: usize| cell.binary_search(&(x as u32)).ok();
    let vs = data.params.v(s);
    let mut mat = vec![vec![LaurentPoly::zero(); n]; n];
    for (j, &w) in cell.iter().enumerate() {
        let w = w as usize;
        let sw = sys.lmul(s, w);
        if sw < w {
            mat[j][j] = LaurentPoly::monomial(vs.inv(), Int::from(-1));
            continue;
        }
        if let Some(i) = pos(sw) {
            mat[i][j] = LaurentPoly::one();
        }
        mat[j][j] = LaurentPoly::monomial(*vs, Int::ONE);
        for e in data.mu.entries(w) {
            if e.s as usize != s {
                continue;
            }
            if let Some(i) = pos(e.y as usize) {
                let odd = (sys.len(w) - sys.len(e.y as usize)) % 2 == 1;
                let term = if odd { e.m.clone() } else { e.m.neg() };
                mat[i][j] = mat[i][j].add(&term);
            }
        }
    }
    mat
}

/// Sparse integer matrices of the generators at `v_s = 1`, as columns.
pub struct SpecializedAction {
    pub dim: usize,
    pub columns: Vec<Vec<Vec<(usize, i64)>>>,
}

impl SpecializedAction {
    pub fn new(sys: &CoxeterSystem, data: &KlData, cell: &[u32]) -> SpecializedAction {
        let n = cell.len();
        let pos = |x: usize| cell.binary_search(&(x as u32)).ok();
        let mut columns = vec![vec![Vec::new(); n]; sys.rank()];
        for (s, cols) in columns.iter_mut().enumerate() {
            for (j, &w) in cell.iter().enumerate() {
                let w = w as usize;
                let sw = sys.lmul(s, w);
                if sw < w {
                    cols[j].push((j, -1));
                    continue;
                }
                let mut col: Vec<(usize, i64)> = vec![(j, 1)];
                if let Some(i) = pos(sw) {
                    col.push((i, 1));
                }
                for e in data.mu.entries(w) {
                    if e.s as usize != s {
                        continue;
                    }
                    if let Some(i) = pos(e.y as usize) {
                        let m1 = e.m.eval_at_one().as_i64().expect("M(1) fits in i64");
                        let odd = (sys.len(w) - sys.len(e.y as usize)) % 2 == 1;
                        col.push((i, if odd { m1 } else { -m1 }));
                    }
                }
                col.sort_unstable();
                col.retain(|&(_, c)| c != 0);
                cols[j] = col;
            }
        }
        SpecializedAction { dim: n, columns }
    }

    /// `T_{s_1} ⋯ T_{s_k} v` for the word `s_1 ⋯ s_k`.
    pub fn apply_word(&self, word: &[u8], v: &[i64]) -> Vec<i64> {
        let mut cur = v.to_vec();
        for &s in word.iter().rev() {
            let mut next = vec![0i64; self.dim];
            for (j, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for &(i, a) in &self.columns[s as usize][j] {
                    next[i] += a * c;
                }
            }
            cur = next;
        }
        cur
    }

    pub fn trace(&self, word: &[u8]) -> i64 {
        let mut t = 0;
        let mut e = vec![0i64; self.dim];
        for j in 0..self.dim {
            e[j] = 1;
            t += self.apply_word(word, &e)[j];
            e[j] = 0;
        }
        t
    }

    /// Check `s² = 1` and `(st)^{m(s,t)} = 1` on basis vectors `0..limit`.
    pub fn satisfies_relations(&self, sys: &CoxeterSystem, limit: usize) -> bool {
        let n = sys.rank();
        let mut words: Vec<Vec<u8>> = (0..n).map(|s| vec![s as u8, s as u8]).collect();
        for s in 0..n {
            for t in s + 1..n {
                let m = sys.spec().m(s, t) as usize;
                words.push([s as u8, t as u8].repeat(m));
            }
        }
        let mut e = vec![0i64; self.dim];
        for j in 0..self.dim.min(limit) {
            e[j] = 1;
            for w in &words {
                if self.apply_word(w, &e) != e {
                    return false;
                }
            }
            e[j] = 0;
        }
        true
    }
}

/// Character values of the cell module at `v = 1` on each conjugacy class.
pub fn cell_character(sys: &CoxeterSystem, data: &KlData, cell: &[u32], classes: &[ConjugacyClass]) -> Vec<i64> {
    let action = SpecializedAction::new(sys, data, cell);
    classes.iter().map(|c| action.trace(sys.word(c.representative))).collect()
}

/// Evaluate a Laurent matrix at all variables equal to one.
pub fn specialize_matrix(mat: &[Vec<LaurentPoly>]) -> Vec<Vec<Int>> {
    mat.iter()
        .map(|row| row.iter().map(|p| p.eval_at_one()).collect())
        .collect()
}

/// Quadratic relation `(T_s - v_s)(T_s + v_s⁻¹) = 0` for a generic matrix.
pub fn satisfies_quadratic(mat: &[Vec<LaurentPoly>], vs: &Monomial) -> bool {
    let n = mat.len();
    let shifted = |c: &Monomial, sign: i64| {
        let mut m = mat.to_vec();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = row[i].add(&LaurentPoly::monomial(*c, Int::from(sign)));
        }
        m
    };
    let a = shifted(vs, -1);
    let b = shifted(&vs.inv(), 1);
    for i in 0..n {
        for j in 0..n {
            let mut acc = LaurentPoly::zero();
            for k in 0..n {
                if !a[i][k].is_zero() && !b[k][j].is_zero() {
                    acc.add_mul(&a[i][k], &b[k][j]);
                }
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}
