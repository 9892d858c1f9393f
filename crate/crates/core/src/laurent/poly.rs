use std::cmp::Ordering;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use super::{Int, Monomial, MonomialOrder};

/// An element of `Z[Γ]`: a finite sum of monomials with nonzero integer
/// coefficients. Terms are kept sorted by exponent vector, which makes
/// equality, hashing and merging canonical.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, Int)>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(Monomial::ONE, Int::ONE)
    }

    pub fn monomial(m: Monomial, c: Int) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: vec![(m, c)] }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Int)>>(iter: I) -> LaurentPoly {
        let mut terms: Vec<(Monomial, Int)> = iter.into_iter().collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Monomial, Int)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        LaurentPoly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Int)] {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Int {
        match self.terms.binary_search_by(|(t, _)| t.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn constant_term(&self) -> Int {
        self.coeff(&Monomial::ONE)
    }

    /// `self += c · shift · other`.
    pub fn add_scaled(&mut self, c: &Int, shift: &Monomial, other: &LaurentPoly) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let scaled = other
            .terms
            .iter()
            .map(|(m, k)| (m.mul(shift), if c.is_one() { k.clone() } else { c * k }));
        if self.terms.is_empty() {
            self.terms = scaled.filter(|(_, k)| !k.is_zero()).collect();
            return;
        }
        let old = std::mem::take(&mut self.terms);
        self.terms = merge(old, scaled);
    }

    /// `self -= a · b`.
    pub fn sub_mul(&mut self, a: &LaurentPoly, b: &LaurentPoly) {
        for (m, c) in &a.terms {
            self.add_scaled(&-c, m, b);
        }
    }

    /// `self += a · b`.
    pub fn add_mul(&mut self, a: &LaurentPoly, b: &LaurentPoly) {
        for (m, c) in &a.terms {
            self.add_scaled(c, m, b);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r.add_scaled(&Int::ONE, &Monomial::ONE, other);
        r
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r.add_scaled(&Int::from(-1), &Monomial::ONE, other);
        r
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut r = LaurentPoly::zero();
        r.add_mul(small, big);
        r
    }

    pub fn scale(&self, c: &Int) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        r.add_scaled(c, &Monomial::ONE, self);
        r
    }

    pub fn shift(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    /// The bar involution `γ ↦ γ⁻¹`.
    pub fn bar(&self) -> LaurentPoly {
        let mut terms: Vec<(Monomial, Int)> =
            self.terms.iter().map(|(m, c)| (m.inv(), c.clone())).collect();
        terms.reverse();
        if !terms.windows(2).all(|w| w[0].0 < w[1].0) {
            terms.sort_by(|a, b| a.0.cmp(&b.0));
        }
        LaurentPoly { terms }
    }

    /// Decompose into parts supported on `Γ₊`, `{1}` and `Γ₋`.
    pub fn split(&self, order: &MonomialOrder) -> (LaurentPoly, Int, LaurentPoly) {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut constant = Int::ZERO;
        for (m, c) in &self.terms {
            match order.sign(m) {
                Ordering::Greater => pos.push((*m, c.clone())),
                Ordering::Less => neg.push((*m, c.clone())),
                Ordering::Equal => constant = c.clone(),
            }
        }
        (LaurentPoly { terms: pos }, constant, LaurentPoly { terms: neg })
    }

    /// The unique bar-invariant element agreeing with `self` on `Γ₊ ∪ {1}`:
    /// `a₁ + Σ_{γ∈Γ₊} a_γ (γ + γ⁻¹)`.
    pub fn symmetrize_nonneg(&self, order: &MonomialOrder) -> LaurentPoly {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            match order.sign(m) {
                Ordering::Greater => {
                    out.push((*m, c.clone()));
                    out.push((m.inv(), c.clone()));
                }
                Ordering::Equal => out.push((*m, c.clone())),
                Ordering::Less => {}
            }
        }
        LaurentPoly::from_terms(out)
    }

    /// True when some monomial lies in `Γ₊ ∪ {1}`.
    pub fn has_nonneg_part(&self, order: &MonomialOrder) -> bool {
        self.terms.iter().any(|(m, _)| !order.is_negative(m))
    }

    pub fn is_strictly_negative(&self, order: &MonomialOrder) -> bool {
        !self.has_nonneg_part(order)
    }

    /// Terms sorted from the highest to the lowest monomial of `order`.
    pub fn sorted_desc(&self, order: &MonomialOrder) -> Vec<(Monomial, Int)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| order.compare(&b.0, &a.0));
        t
    }

    /// Highest monomial with its coefficient.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(Monomial, Int)> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(&a.0, &b.0))
            .cloned()
    }

    /// Apply the ring map `x^e ↦ v^{⟨weights, e⟩}` into `Z[v, v⁻¹]`.
    pub fn specialize(&self, weights: &[i64]) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let n: i64 = weights
                .iter()
                .enumerate()
                .map(|(k, w)| w * m.0[k] as i64)
                .sum();
            (Monomial::new(&[n as i32]), c.clone())
        }))
    }

    /// Value at `x1 = ... = xr = 1`.
    pub fn eval_at_one(&self) -> Int {
        let mut s = Int::ZERO;
        for (_, c) in &self.terms {
            s += c;
        }
        s
    }

    /// Text form `c*x^i*y^j + ...`, sorted descending by `order`.
    pub fn to_text(&self, order: &MonomialOrder) -> String {
        let rank = order.rank();
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.sorted_desc(order).iter().enumerate() {
            let neg = c.signum() < 0;
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                write!(s, "{abs}").unwrap();
            } else {
                if !abs.is_one() {
                    write!(s, "{abs}*").unwrap();
                }
                m.fmt_with(rank, &mut s).unwrap();
            }
        }
        s
    }

    /// JSON form: list of `[exponent-vector, coefficient]`, descending by `order`.
    pub fn to_json(&self, order: &MonomialOrder) -> serde_json::Value {
        let rank = order.rank();
        serde_json::Value::Array(
            self.sorted_desc(order)
                .into_iter()
                .map(|(m, c)| serde_json::json!([&m.0[..rank], c]))
                .collect(),
        )
    }
}

fn merge<I: Iterator<Item = (Monomial, Int)>>(old: Vec<(Monomial, Int)>, add: I) -> Vec<(Monomial, Int)> {
    let mut out = Vec::with_capacity(old.len() + 4);
    let mut a = old.into_iter().peekable();
    let mut b = add.peekable();
    loop {
        match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                Ordering::Less => out.push(a.next().unwrap()),
                Ordering::Greater => {
                    let t = b.next().unwrap();
                    if !t.1.is_zero() {
                        out.push(t);
                    }
                }
                Ordering::Equal => {
                    let (m, mut c) = a.next().unwrap();
                    let (_, d) = b.next().unwrap();
                    c += &d;
                    if !c.is_zero() {
                        out.push((m, c));
                    }
                }
            },
            (Some(_), None) => {
                out.extend(a);
                break;
            }
            (None, Some(_)) => {
                out.extend(b.filter(|t| !t.1.is_zero()));
                break;
            }
            (None, None) => break,
        }
    }
    out
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(&[i32], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|(e, c)| (Monomial::new(e), Int::from(*c))))
    }

    fn lex_xy() -> MonomialOrder {
        MonomialOrder::lex(2, &[0, 1]).unwrap()
    }

    #[test]
    fn bar_examples() {
        let q = p(&[(&[2, -1], 1), (&[0, 0], 3)]);
        assert_eq!(q.bar(), p(&[(&[-2, 1], 1), (&[0, 0], 3)]));
        assert!(LaurentPoly::zero().bar().is_zero());
    }

    #[test]
    fn split_examples() {
        let o = lex_xy();
        let q = p(&[(&[1, 0], 1), (&[-1, 0], -1)]);
        let (pos, c, neg) = q.split(&o);
        assert_eq!(pos, p(&[(&[1, 0], 1)]));
        assert!(c.is_zero());
        assert_eq!(neg, p(&[(&[-1, 0], -1)]));
        let (pos, c, neg) = p(&[(&[0, 0], 3)]).split(&o);
        assert!(pos.is_zero() && neg.is_zero());
        assert_eq!(c, Int::from(3));
        // v_s v_t^-1 + v_s^-1 v_t under v_s > v_t
        let m = p(&[(&[1, -1], 1), (&[-1, 1], 1)]);
        let (pos, c, neg) = m.split(&o);
        assert_eq!(pos, p(&[(&[1, -1], 1)]));
        assert!(c.is_zero());
        assert_eq!(neg, p(&[(&[-1, 1], 1)]));
    }

    #[test]
    fn symmetrize_examples() {
        let o = lex_xy();
        let q = p(&[(&[1, -1], 1), (&[-3, 0], 5), (&[-1, 2], -2)]);
        assert_eq!(q.symmetrize_nonneg(&o), p(&[(&[1, -1], 1), (&[-1, 1], 1)]));
        assert!(p(&[(&[-1, 0], 4)]).symmetrize_nonneg(&o).is_zero());
        assert_eq!(p(&[(&[0, 0], 1), (&[0, -1], 1)]).symmetrize_nonneg(&o), LaurentPoly::one());
    }

    #[test]
    fn text_form() {
        let o = lex_xy();
        let q = p(&[(&[1, -1], 1), (&[-1, 1], 2), (&[0, 0], -3)]);
        assert_eq!(q.to_text(&o), "x*y^-1 - 3 + 2*x^-1*y");
        assert_eq!(LaurentPoly::zero().to_text(&o), "0");
    }
}
