use rayon::prelude::*;
use serde::Serialize;

use super::{KlTable, Params};
use crate::coxeter::CoxeterSystem;
use crate::laurent::{Int, LaurentPoly, Monomial};

/// `R_{x,y}` for `x ≤ y`, stored per `y` as rows sorted by `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RTable {
    rows: Vec<Vec<(u32, LaurentPoly)>>,
}

impl RTable {
    pub fn row(&self, y: usize) -> &[(u32, LaurentPoly)] {
        &self.rows[y]
    }

    pub fn get(&self, x: usize, y: usize) -> Option<&LaurentPoly> {
        let row = &self.rows[y];
        row.binary_search_by_key(&(x as u32), |e| e.0).ok().map(|i| &row[i].1)
    }
}

/// R-polynomials by the recursion on the least left descent `s` of `y`:
/// `R_{x,y} = R_{sx,sy} + (v_s - v_s⁻¹) R_{x,sy}` if `sx > x`, else `R_{sx,sy}`.
pub fn compute_r(sys: &CoxeterSystem, params: &Params) -> RTable {
    let size = sys.size();
    let mut rows: Vec<Vec<(u32, LaurentPoly)>> = Vec::with_capacity(size);
    rows.push(vec![(0, LaurentPoly::one())]);
    let mut acc: Vec<LaurentPoly> = vec![LaurentPoly::zero(); size];
    for y in 1..size {
        let s = sys.left_descents(y)[0];
        let sy = sys.lmul(s, y);
        let q = LaurentPoly::from_terms([(*params.v(s), Int::ONE), (params.v(s).inv(), Int::from(-1))]);
        for (x, r) in &rows[sy] {
            let x = *x as usize;
            let sx = sys.lmul(s, x);
            acc[sx].add_scaled(&Int::ONE, &Monomial::ONE, r);
            if sx > x {
                acc[x].add_mul(&q, r);
            }
        }
        let mut row = Vec::new();
        for (x, p) in acc.iter_mut().enumerate().take(y + 1) {
            if !p.is_zero() {
                row.push((x as u32, std::mem::take(p)));
            }
        }
        rows.push(row);
    }
    RTable { rows }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct IdentityReport {
    pub pairs_checked: usize,
    pub violations: Vec<(String, String)>,
}

/// Check `bar(P*_{x,w}) - P*_{x,w} = Σ_{x<y≤w} R_{x,y} P*_{y,w}` for all `x < w`
/// with `w` in `targets`.
pub fn verify_bar_identity(sys: &CoxeterSystem, kl: &KlTable, r: &RTable, targets: &[usize]) -> IdentityReport {
    let per_w: Vec<(usize, Vec<(String, String)>)> = targets
        .par_iter()
        .map(|&w| {
            let row = kl.row(w);
            let mut bad = Vec::new();
            for (i, (x, pxw)) in row.iter().enumerate() {
                let x = *x as usize;
                if x == w {
                    continue;
                }
                let mut rhs = LaurentPoly::zero();
                for (y, pyw) in &row[i + 1..] {
                    if let Some(rxy) = r.get(x, *y as usize) {
                        rhs.add_mul(rxy, pyw);
                    }
                }
                if pxw.bar().sub(pxw) != rhs {
                    bad.push((sys.word_text(x), sys.word_text(w)));
                }
            }
            (row.len() - 1, bad)
        })
        .collect();
    let mut report = IdentityReport::default();
    for (n, bad) in per_w {
        report.pairs_checked += n;
        report.violations.extend(bad);
    }
    report
}

/// `v_y v_x⁻¹ R_{x,y}` is a polynomial in the `v_s²` with constant term
/// `(-1)^{l(y)-l(x)}`; returns the offending pairs.
pub fn check_r_lemma(sys: &CoxeterSystem, params: &Params, r: &RTable) -> Vec<(String, String)> {
    let mut squares: Vec<Monomial> = params.all().iter().map(|v| v.pow(2)).collect();
    squares.sort();
    squares.dedup();
    let mut bad = Vec::new();
    for y in 0..sys.size() {
        let vy = params.v_elem(sys, y);
        for (x, p) in r.row(y) {
            let x = *x as usize;
            let shifted = p.shift(&vy.div(&params.v_elem(sys, x)));
            let sign = if (sys.len(y) - sys.len(x)) % 2 == 0 { 1 } else { -1 };
            let ok = shifted.terms().iter().all(|(m, _)| super::in_semigroup(m, &squares))
                && shifted.constant_term() == Int::from(sign);
            if !ok {
                bad.push((sys.word_text(x), sys.word_text(y)));
            }
        }
    }
    bad
}
