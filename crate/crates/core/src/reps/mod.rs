//! Cell representations at `v = 1` and their decomposition into irreducible
//! characters.

mod action;
mod f4_labels;
pub mod generate;
mod reference;
mod table;

pub use action::{cell_action_matrix, cell_character, satisfies_quadratic, specialize_matrix, SpecializedAction};
pub use reference::{
    compare_constructible, compare_order, locate_labels, ConstructibleFile, ConstructibleReport, OrderCase, OrderFile,
    OrderReport, TwoSidedEntry,
};
pub use table::{CharacterTable, CharacterTableFile, ClassEntry, Decomposition, IrreducibleEntry};

use crate::coxeter::CoxeterSystem;
use crate::kl::KlData;

#[derive(Debug, thiserror::Error)]
pub enum RepsError {
    #[error("cannot read character table: {0}")]
    Io(String),
    #[error("malformed character table: {0}")]
    Schema(String),
    #[error("character table fails orthogonality: {0}")]
    Orthogonality(String),
    #[error("character does not decompose: {0}")]
    Decomposition(String),
    #[error("cannot generate character table: {0}")]
    Generate(String),
}

/// Decomposition of the character of every block of `cells`.
pub fn decompose_cells(
    sys: &CoxeterSystem,
    data: &KlData,
    table: &CharacterTable,
    cells: &[Vec<u32>],
) -> Result<Vec<Decomposition>, RepsError> {
    use rayon::prelude::*;
    cells
        .par_iter()
        .map(|c| table.decompose(&cell_character(sys, data, c, &table.classes)))
        .collect()
}

/// The sum of the characters of all left cells is the regular character.
pub fn is_regular(table: &CharacterTable, characters: &[Vec<i64>]) -> bool {
    let k = table.classes.len();
    let mut sum = vec![0i64; k];
    for chi in characters {
        for (a, b) in sum.iter_mut().zip(chi) {
            *a += b;
        }
    }
    sum[0] == table.order as i64 && sum[1..].iter().all(|&x| x == 0)
}
