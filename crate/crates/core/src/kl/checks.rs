use serde::Serialize;

use super::KlData;
use crate::coxeter::CoxeterSystem;
use crate::laurent::{LaurentPoly, Monomial, MAX_RANK};

#[derive(Clone, Debug, Default, Serialize)]
pub struct LemmaReport {
    pub p_checked: usize,
    pub m_checked: usize,
    /// `v_w v_y⁻¹ P*_{y,w}` is not a polynomial in the `v_s²` with constant term 1.
    pub p_violations: Vec<String>,
    /// `v_s v_w v_y⁻¹ M^s_{y,w}` is not a polynomial in the `v_t²` with constant term 0.
    pub m_violations: Vec<String>,
    pub bar_violations: Vec<String>,
}

impl LemmaReport {
    pub fn ok(&self) -> bool {
        self.p_violations.is_empty() && self.m_violations.is_empty() && self.bar_violations.is_empty()
    }
}

/// Structural checks on a computed table: integrality of `P` and `M` in the
/// squares of the parameters, their constant terms, and `bar(M) = M`.
pub fn check_lemmas(sys: &CoxeterSystem, data: &KlData) -> LemmaReport {
    let params = &data.params;
    let mut squares: Vec<Monomial> = params.all().iter().map(|v| v.pow(2)).collect();
    squares.sort();
    squares.dedup();
    let mut report = LemmaReport::default();
    for (y, w, p) in data.kl.iter() {
        report.p_checked += 1;
        let shifted = p.shift(&data.kl.v_elem(w).div(data.kl.v_elem(y)));
        if !in_square_semiring(&shifted, &squares) || !shifted.constant_term().is_one() {
            report
                .p_violations
                .push(format!("P*({}, {})", sys.word_text(y), sys.word_text(w)));
        }
    }
    for (s, y, w, m) in data.mu.iter() {
        report.m_checked += 1;
        let label = || format!("M^{}({}, {})", s + 1, sys.word_text(y), sys.word_text(w));
        let shift = params.v(s).mul(data.kl.v_elem(w)).div(data.kl.v_elem(y));
        let shifted = m.shift(&shift);
        if !in_square_semiring(&shifted, &squares) || !shifted.constant_term().is_zero() {
            report.m_violations.push(label());
        }
        if &m.bar() != m {
            report.bar_violations.push(label());
        }
    }
    report
}

fn in_square_semiring(p: &LaurentPoly, gens: &[Monomial]) -> bool {
    p.terms().iter().all(|(m, _)| in_semigroup(m, gens))
}

/// Whether `m` is a nonnegative integer combination of `gens`. All gens have
/// nonnegative exponents with at least one positive, so the search is finite.
pub fn in_semigroup(m: &Monomial, gens: &[Monomial]) -> bool {
    if m.is_one() {
        return true;
    }
    if m.0.iter().any(|&e| e < 0) {
        return false;
    }
    let Some((g, rest)) = gens.split_first() else {
        return false;
    };
    let mut cur = *m;
    loop {
        if in_semigroup(&cur, rest) {
            return true;
        }
        cur = cur.div(g);
        if cur.0.iter().any(|&e| e < 0) {
            return false;
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BoundsReport {
    /// Largest `|exponent|` seen in each coordinate.
    pub max_abs: Vec<i32>,
    /// Exponent of `v_{w0}` in each coordinate, an upper bound for `|exponent|`.
    pub coordinate_bounds: Vec<i32>,
    /// `l(w0)`; with two or more parameter coordinates the bound is strict.
    pub bound: usize,
    pub violations: Vec<String>,
}

/// Every monomial of every `P*` and `M` has each exponent bounded in absolute
/// value by the corresponding exponent of `v_{w0}`, and, when there are at
/// least two coordinates, strictly by `l(w0)`.
pub fn check_bounds(sys: &CoxeterSystem, data: &KlData) -> BoundsReport {
    let rank = data.params.rank();
    let bound = sys.max_length();
    let top = data.params.v_elem(sys, sys.w0());
    let coordinate_bounds: Vec<i32> = top.0[..rank].iter().map(|e| e.abs()).collect();
    let strict = rank >= 2;
    let mut max_abs = [0i32; MAX_RANK];
    let mut violations = Vec::new();
    let mut visit = |p: &LaurentPoly, label: &dyn Fn() -> String| {
        let mut bad = false;
        for (m, _) in p.terms() {
            for k in 0..rank {
                let a = m.0[k].abs();
                max_abs[k] = max_abs[k].max(a);
                bad |= a > coordinate_bounds[k] || (strict && a as usize >= bound);
            }
        }
        if bad {
            violations.push(label());
        }
    };
    for (y, w, p) in data.kl.iter() {
        visit(p, &|| format!("P*({}, {})", sys.word_text(y), sys.word_text(w)));
    }
    for (s, y, w, m) in data.mu.iter() {
        visit(m, &|| format!("M^{}({}, {})", s + 1, sys.word_text(y), sys.word_text(w)));
    }
    BoundsReport {
        max_abs: max_abs[..rank].to_vec(),
        coordinate_bounds,
        bound,
        violations,
    }
}
