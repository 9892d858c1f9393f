//! Independent reference computation of the Kazhdan–Lusztig basis straight
//! from bar-invariance, without M-polynomials or Bruhat order.

use super::{KlError, KlTable, Params};
use crate::coxeter::CoxeterSystem;
use crate::laurent::{Int, LaurentPoly, Monomial};

pub const ORACLE_LIMIT: usize = 48;

/// Dense `bar(T_y) = Σ_x c[y][x] T_x`, built by multiplying out
/// `bar(T_{s1...sk}) = T_{s1}⁻¹ ... T_{sk}⁻¹` with `T_s⁻¹ = T_s - (v_s - v_s⁻¹)`.
pub fn bar_t_matrix(sys: &CoxeterSystem, params: &Params) -> Vec<Vec<LaurentPoly>> {
    let size = sys.size();
    let mut out: Vec<Vec<LaurentPoly>> = Vec::with_capacity(size);
    let mut id = vec![LaurentPoly::zero(); size];
    id[0] = LaurentPoly::one();
    out.push(id);
    for y in 1..size {
        let s = sys.word(y)[0] as usize;
        let rest = &out[sys.lmul(s, y)];
        let q = LaurentPoly::from_terms([(*params.v(s), Int::ONE), (params.v(s).inv(), Int::from(-1))]);
        let mut h = vec![LaurentPoly::zero(); size];
        for (x, a) in rest.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            // T_s T_x, then subtract (v_s - v_s⁻¹) T_x.
            let sx = sys.lmul(s, x);
            h[sx].add_scaled(&Int::ONE, &Monomial::ONE, a);
            if sx < x {
                h[x].add_mul(&q, a);
            }
            h[x].sub_mul(&q, a);
        }
        out.push(h);
    }
    out
}

/// Dense R-polynomials from the oracle: `R_{x,y} = bar(c[y][x])`.
pub fn oracle_r(sys: &CoxeterSystem, params: &Params) -> Vec<Vec<LaurentPoly>> {
    bar_t_matrix(sys, params)
        .into_iter()
        .map(|col| col.iter().map(|p| p.bar()).collect())
        .collect()
}

/// Solve `P*_{x,w} - bar(P*_{x,w}) = Σ_{y>x} bar(R_{x,y}) bar(P*_{y,w})` from the top
/// down, taking the part in `Γ₋` at each step.
pub fn oracle_kl(sys: &CoxeterSystem, params: &Params, limit: usize) -> Result<KlTable, KlError> {
    let size = sys.size();
    if size > limit {
        return Err(KlError::CostGuard { size, limit });
    }
    let order = params.order();
    let bt = bar_t_matrix(sys, params);
    let mut rows = Vec::with_capacity(size);
    for w in 0..size {
        let mut p: Vec<LaurentPoly> = vec![LaurentPoly::zero(); w + 1];
        let mut pbar: Vec<LaurentPoly> = vec![LaurentPoly::zero(); w + 1];
        p[w] = LaurentPoly::one();
        pbar[w] = LaurentPoly::one();
        for x in (0..w).rev() {
            let mut rhs = LaurentPoly::zero();
            for y in x + 1..=w {
                if !pbar[y].is_zero() && !bt[y][x].is_zero() {
                    rhs.add_mul(&bt[y][x], &pbar[y]);
                }
            }
            let (pos, c, neg) = rhs.split(order);
            if !c.is_zero() || pos != neg.bar().neg() {
                return Err(KlError::Oracle {
                    x: sys.word_text(x),
                    w: sys.word_text(w),
                });
            }
            pbar[x] = neg.bar();
            p[x] = neg;
        }
        let row = p
            .into_iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(y, q)| (y as u32, q))
            .collect();
        rows.push(row);
    }
    let v_elem = (0..size).map(|w| params.v_elem(sys, w)).collect();
    Ok(KlTable { rows, v_elem })
}
