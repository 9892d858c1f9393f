//! Exact Laurent polynomials over `Z` in the free abelian group `Γ ≅ Z^r`,
//! and the total orders used to split them into positive and negative parts.

mod int;
mod monomial;
mod poly;

pub use int::Int;
pub use monomial::{var_names, Monomial, MonomialOrder, Tiebreak, MAX_RANK};
pub use poly::LaurentPoly;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("rank {0} is outside 1..={max}", max = MAX_RANK)]
    BadRank(usize),
    #[error("functional has length {found}, expected {expected}")]
    FunctionalLength { expected: usize, found: usize },
    #[error("order functionals have rank {found}, need {rank} for a total order")]
    RankDeficient { rank: usize, found: usize },
}
