use rayon::prelude::*;

use super::{KlData, KlError, KlTable, MuEntry, MuTable, Params};
use crate::coxeter::CoxeterSystem;
use crate::laurent::{Int, LaurentPoly};

type Row = Vec<(u32, LaurentPoly)>;

/// Compute every `C_w` and every nonzero `M^s_{y,w}` by induction on length.
///
/// For each `w` and each `s` with `sw > w`, the element
/// `T_s C_w + v_s⁻¹ C_w - Σ M^s_{y,w} C_y` equals `C_{sw}`. Every left descent of
/// `sw` yields a candidate row; all candidates must agree exactly.
pub fn compute_kl(sys: &CoxeterSystem, params: &Params) -> Result<KlData, KlError> {
    compute_kl_with_progress(sys, params, |_, _| {})
}

/// As [`compute_kl`], calling `progress(level, max_level)` after each length.
pub fn compute_kl_with_progress<F: Fn(usize, usize)>(
    sys: &CoxeterSystem,
    params: &Params,
    progress: F,
) -> Result<KlData, KlError> {
    let size = sys.size();
    let n = sys.rank();
    let mut rows: Vec<Row> = Vec::with_capacity(size);
    rows.push(vec![(0, LaurentPoly::one())]);
    let mut by_w: Vec<Vec<MuEntry>> = vec![Vec::new(); size];
    let top = sys.max_length();
    for l in 0..top {
        let level = sys.level(l);
        let jobs: Vec<(usize, usize)> = level
            .clone()
            .flat_map(|w| (0..n).filter(move |&s| !sys.is_left_descent(s, w)).map(move |s| (w, s)))
            .collect();
        let done: &[Row] = &rows;
        let results: Vec<(usize, usize, Vec<MuEntry>, Row)> = jobs
            .par_iter()
            .map(|&(w, s)| extend(sys, params, done, w, s).map(|(mu, row)| (w, s, mu, row)))
            .collect::<Result<_, _>>()?;

        let next = sys.level(l + 1);
        let mut candidates: Vec<Option<Row>> = vec![None; next.len()];
        for (w, s, mu, row) in results {
            by_w[w].extend(mu);
            let u = sys.lmul(s, w);
            let slot = &mut candidates[u - next.start];
            match slot {
                None => *slot = Some(row),
                Some(first) => {
                    if *first != row {
                        return Err(KlError::DescentMismatch {
                            u: sys.word_text(u),
                            s: s + 1,
                        });
                    }
                }
            }
        }
        for (k, c) in candidates.into_iter().enumerate() {
            let row = c.unwrap_or_else(|| panic!("element {} was not reached", next.start + k));
            rows.push(row);
        }
        for w in level {
            by_w[w].sort_by(|a, b| (a.y, a.s).cmp(&(b.y, b.s)));
        }
        progress(l + 1, top);
    }
    let v_elem = (0..size).map(|w| params.v_elem(sys, w)).collect();
    Ok(KlData {
        params: params.clone(),
        kl: KlTable { rows, v_elem },
        mu: MuTable { by_w },
    })
}

/// `C_{sw}` and the nonzero `M^s_{·,w}` from the rows of all shorter elements.
fn extend(
    sys: &CoxeterSystem,
    params: &Params,
    rows: &[Row],
    w: usize,
    s: usize,
) -> Result<(Vec<MuEntry>, Row), KlError> {
    let order = params.order();
    let vs = params.v(s);
    let vs_inv = vs.inv();
    let u = sys.lmul(s, w);
    let mut e: Vec<LaurentPoly> = vec![LaurentPoly::zero(); u + 1];
    for (y, p) in &rows[w] {
        let y = *y as usize;
        let sy = sys.lmul(s, y);
        e[sy].add_scaled(&Int::ONE, &crate::laurent::Monomial::ONE, p);
        if sy < y {
            e[y].add_scaled(&Int::ONE, vs, p);
        } else {
            e[y].add_scaled(&Int::ONE, &vs_inv, p);
        }
    }
    let mut mu = Vec::new();
    for y in (1..w).rev() {
        if e[y].is_zero() || !sys.is_left_descent(s, y) {
            continue;
        }
        let m = e[y].symmetrize_nonneg(order);
        if m.is_zero() {
            continue;
        }
        let minus = m.neg();
        for (z, p) in &rows[y] {
            e[*z as usize].add_mul(&minus, p);
        }
        mu.push(MuEntry {
            s: s as u8,
            y: y as u32,
            m,
        });
    }
    let mut row = Vec::new();
    for (y, p) in e.into_iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let ok = if y == u {
            p.is_one()
        } else {
            p.is_strictly_negative(order)
        };
        if !ok {
            return Err(KlError::NotNegative {
                y: sys.word_text(y),
                u: sys.word_text(u),
                poly: p.to_text(order),
            });
        }
        row.push((y as u32, p));
    }
    Ok((mu, row))
}
