//! Kazhdan–Lusztig bases, M-polynomials and cells of finite Coxeter groups
//! with unequal parameters.

pub mod cells;
pub mod coxeter;
pub mod kl;
pub mod laurent;
pub mod reps;
pub mod weights;
