use serde::Serialize;

use super::KlError;
use crate::coxeter::CoxeterSystem;
use crate::laurent::{Monomial, MonomialOrder};

/// Hecke algebra parameters `v_s ∈ Γ` for every generator, together with
/// the total order on `Γ` that defines the Kazhdan–Lusztig basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Params {
    v: Vec<Monomial>,
    order: MonomialOrder,
}

impl Params {
    /// Validates that `v_s` is constant on generator classes and lies in `Γ₊`.
    pub fn new(sys: &CoxeterSystem, v: Vec<Monomial>, order: MonomialOrder) -> Result<Params, KlError> {
        if v.len() != sys.rank() {
            return Err(KlError::InvalidParams(format!(
                "{} parameters for {} generators",
                v.len(),
                sys.rank()
            )));
        }
        let classes = sys.classes();
        for s in 0..v.len() {
            for t in 0..v.len() {
                if classes.class_of[s] == classes.class_of[t] && v[s] != v[t] {
                    return Err(KlError::InvalidParams(format!(
                        "generators {} and {} are conjugate but have different parameters",
                        s + 1,
                        t + 1
                    )));
                }
            }
            if !order.is_positive(&v[s]) {
                return Err(KlError::InvalidParams(format!(
                    "v_{} is not positive under the order {}",
                    s + 1,
                    order.describe()
                )));
            }
            if v[s].0[order.rank()..].iter().any(|&e| e != 0) {
                return Err(KlError::InvalidParams(format!("v_{} exceeds the rank of the order", s + 1)));
            }
        }
        Ok(Params { v, order })
    }

    /// One independent variable per generator class: `v_s` is the unit
    /// monomial of the class of `s`. The order must have rank equal to the
    /// number of classes.
    pub fn generic(sys: &CoxeterSystem, order: MonomialOrder) -> Result<Params, KlError> {
        let classes = sys.classes();
        if order.rank() != classes.count {
            return Err(KlError::InvalidParams(format!(
                "order has rank {} but there are {} generator classes",
                order.rank(),
                classes.count
            )));
        }
        let v = classes.class_of.iter().map(|&c| Monomial::unit(c)).collect();
        Params::new(sys, v, order)
    }

    /// Single-variable parameters `v_s = v^{L(s)}` from a weight per generator.
    pub fn weight(sys: &CoxeterSystem, weights: &[i64]) -> Result<Params, KlError> {
        if weights.iter().any(|&l| l <= 0) {
            return Err(KlError::InvalidParams("weights must be positive".into()));
        }
        let v = weights.iter().map(|&l| Monomial::new(&[l as i32])).collect();
        Params::new(sys, v, MonomialOrder::single())
    }

    /// Expand one weight per generator class into one per generator.
    pub fn weight_per_class(sys: &CoxeterSystem, class_weights: &[i64]) -> Result<Params, KlError> {
        let classes = sys.classes();
        if class_weights.len() != classes.count {
            return Err(KlError::InvalidParams(format!(
                "{} class weights for {} classes",
                class_weights.len(),
                classes.count
            )));
        }
        let w: Vec<i64> = classes.class_of.iter().map(|&c| class_weights[c]).collect();
        Params::weight(sys, &w)
    }

    #[inline]
    pub fn v(&self, s: usize) -> &Monomial {
        &self.v[s]
    }

    pub fn all(&self) -> &[Monomial] {
        &self.v
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn rank(&self) -> usize {
        self.order.rank()
    }

    /// `v_w`, the product of `v_s` along a reduced word.
    pub fn v_elem(&self, sys: &CoxeterSystem, w: usize) -> Monomial {
        sys.word(w)
            .iter()
            .fold(Monomial::ONE, |acc, &s| acc.mul(&self.v[s as usize]))
    }

    /// The same parameters with a different order.
    pub fn with_order(&self, sys: &CoxeterSystem, order: MonomialOrder) -> Result<Params, KlError> {
        Params::new(sys, self.v.clone(), order)
    }
}
