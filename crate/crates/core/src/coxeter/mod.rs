//! Finite Coxeter groups: presets, enumeration, Bruhat order, classes.

mod bruhat;
mod spec;
mod system;

pub use bruhat::{bruhat_leq_subword, BruhatOrder};
pub use spec::CoxeterSpec;
pub use system::{ConjugacyClass, CoxeterSystem, GeneratorClasses, DEFAULT_CAP};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("cannot parse Coxeter type `{0}`")]
    Parse(String),
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("enumeration exceeded the cap of {cap} elements; the group is infinite or too large")]
    Cap { cap: usize },
    #[error("invalid word `{0}`")]
    Word(String),
}
