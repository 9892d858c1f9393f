//! Kazhdan–Lusztig bases, M-polynomials and R-polynomials.

mod checks;
mod compute;
mod oracle;
mod params;
mod rpoly;
mod table;

pub use checks::{check_bounds, check_lemmas, in_semigroup, BoundsReport, LemmaReport};
pub use compute::{compute_kl, compute_kl_with_progress};
pub use oracle::{bar_t_matrix, oracle_kl, oracle_r, ORACLE_LIMIT};
pub use params::Params;
pub use rpoly::{check_r_lemma, compute_r, verify_bar_identity, IdentityReport, RTable};
pub use table::{KlData, KlTable, MuEntry, MuTable};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum KlError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("coefficient of T_{y} in C_{u} is {poly}, not in the negative part (is the order valid?)")]
    NotNegative { y: String, u: String, poly: String },
    #[error("left descents of {u} give different C_{u} (generator {s})")]
    DescentMismatch { u: String, s: usize },
    #[error("oracle system inconsistent at ({x}, {w})")]
    Oracle { x: String, w: String },
    #[error("group of size {size} exceeds the oracle limit {limit}")]
    CostGuard { size: usize, limit: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;
    use crate::laurent::{MonomialOrder, Monomial, Int, LaurentPoly};

    #[test]
    fn rank_one() {
        let sys = CoxeterSystem::new("A1".parse().unwrap()).unwrap();
        let params = Params::weight(&sys, &[1]).unwrap();
        let data = compute_kl(&sys, &params).unwrap();
        let p = data.kl.p_star(0, 1).unwrap();
        assert_eq!(p, &LaurentPoly::monomial(Monomial::new(&[-1]), Int::ONE));
        assert!(data.mu.is_empty());
    }

    #[test]
    fn dihedral_matches_oracle() {
        let sys = CoxeterSystem::new("I2:4".parse().unwrap()).unwrap();
        let order = MonomialOrder::lex(2, &[0, 1]).unwrap();
        let params = Params::generic(&sys, order).unwrap();
        let data = compute_kl(&sys, &params).unwrap();
        let oracle = oracle_kl(&sys, &params, ORACLE_LIMIT).unwrap();
        assert_eq!(data.kl, oracle);
        // Bruhat pairs: 1 + 2·2 + 2·4 + 2·6 + 8.
        assert_eq!(data.kl.entry_count(), 33);
    }

    #[test]
    fn invalid_order_rejected() {
        let sys = CoxeterSystem::new("I2:4".parse().unwrap()).unwrap();
        let order = MonomialOrder::weighted(1, -1, crate::laurent::Tiebreak::I).unwrap();
        assert!(matches!(Params::generic(&sys, order), Err(KlError::InvalidParams(_))));
    }
}
