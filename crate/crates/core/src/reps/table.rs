use std::path::Path;

use serde::{Deserialize, Serialize};

use super::RepsError;
use crate::coxeter::{ConjugacyClass, CoxeterSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    /// Representative as a word with 1-based generators (`e` for the identity).
    pub word: String,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleEntry {
    pub label: String,
    /// `⟨χ, χ⟩`. Equals 1 for an irreducible character; a sum over a Galois
    /// orbit of `k` irreducibles (used for dihedral groups) has norm `k`.
    #[serde(default = "one")]
    pub norm: i64,
    pub values: Vec<i64>,
}

fn one() -> i64 {
    1
}

/// On-disk form of a character table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTableFile {
    pub system: String,
    pub classes: Vec<ClassEntry>,
    pub irreducibles: Vec<IrreducibleEntry>,
}

/// A validated character table whose columns follow the conjugacy classes
/// of a particular [`CoxeterSystem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub system: String,
    pub classes: Vec<ConjugacyClass>,
    pub labels: Vec<String>,
    pub norms: Vec<i64>,
    pub values: Vec<Vec<i64>>,
    pub order: usize,
}

impl CharacterTable {
    pub fn load(path: &Path, sys: &CoxeterSystem) -> Result<CharacterTable, RepsError> {
        let text = std::fs::read_to_string(path).map_err(|e| RepsError::Io(format!("{}: {e}", path.display())))?;
        let file: CharacterTableFile =
            serde_json::from_str(&text).map_err(|e| RepsError::Schema(format!("{}: {e}", path.display())))?;
        CharacterTable::from_file(&file, sys)
    }

    pub fn from_file(file: &CharacterTableFile, sys: &CoxeterSystem) -> Result<CharacterTable, RepsError> {
        let classes = sys.conjugacy_classes();
        let class_map = sys.class_map(&classes);
        let k = classes.len();
        if file.classes.len() != k {
            return Err(RepsError::Schema(format!(
                "{} classes in table, {} in the group",
                file.classes.len(),
                k
            )));
        }
        // perm[j] = position in the file of the group's class j.
        let mut perm = vec![usize::MAX; k];
        for (f, c) in file.classes.iter().enumerate() {
            let w = sys
                .parse_word(&c.word)
                .map_err(|e| RepsError::Schema(format!("class word: {e}")))?;
            let j = class_map[w];
            if perm[j] != usize::MAX {
                return Err(RepsError::Schema(format!("class words {} repeat a class", c.word)));
            }
            if classes[j].size != c.size {
                return Err(RepsError::Schema(format!(
                    "class of {} has size {}, table says {}",
                    c.word, classes[j].size, c.size
                )));
            }
            perm[j] = f;
        }
        let mut labels = Vec::new();
        let mut norms = Vec::new();
        let mut values = Vec::new();
        for irr in &file.irreducibles {
            if irr.values.len() != k {
                return Err(RepsError::Schema(format!("{} has {} values", irr.label, irr.values.len())));
            }
            labels.push(irr.label.clone());
            norms.push(irr.norm);
            values.push(perm.iter().map(|&f| irr.values[f]).collect::<Vec<i64>>());
        }
        let table = CharacterTable {
            system: file.system.clone(),
            classes,
            labels,
            norms,
            values,
            order: sys.size(),
        };
        table.validate()?;
        Ok(table)
    }

    pub fn to_file(&self, sys: &CoxeterSystem) -> CharacterTableFile {
        CharacterTableFile {
            system: self.system.clone(),
            classes: self
                .classes
                .iter()
                .map(|c| ClassEntry {
                    word: sys.word_text(c.representative),
                    size: c.size,
                })
                .collect(),
            irreducibles: self
                .labels
                .iter()
                .zip(&self.norms)
                .zip(&self.values)
                .map(|((l, n), v)| IrreducibleEntry {
                    label: l.clone(),
                    norm: *n,
                    values: v.clone(),
                })
                .collect(),
        }
    }

    /// `Σ_c |c| χ(c) ψ(c)`, i.e. `|W|·⟨χ, ψ⟩` for rational characters.
    pub fn weighted_product(&self, a: &[i64], b: &[i64]) -> i128 {
        self.classes
            .iter()
            .zip(a.iter().zip(b))
            .map(|(c, (x, y))| c.size as i128 * *x as i128 * *y as i128)
            .sum()
    }

    pub(crate) fn validate(&self) -> Result<(), RepsError> {
        let n = self.order as i128;
        let mut total_norm = 0;
        for i in 0..self.values.len() {
            if self.values[i][0] <= 0 {
                return Err(RepsError::Orthogonality(format!("{} has degree {}", self.labels[i], self.values[i][0])));
            }
            for j in 0..=i {
                let p = self.weighted_product(&self.values[i], &self.values[j]);
                let expect = if i == j { n * self.norms[i] as i128 } else { 0 };
                if p != expect {
                    return Err(RepsError::Orthogonality(format!(
                        "<{}, {}> = {p}/{n}",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
            total_norm += self.norms[i];
        }
        if total_norm as usize != self.classes.len() {
            return Err(RepsError::Orthogonality(format!(
                "{} irreducibles for {} classes",
                total_norm,
                self.classes.len()
            )));
        }
        Ok(())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Multiplicities of each row in `chi`; they must be nonnegative integers
    /// that reconstruct `chi` exactly.
    pub fn decompose(&self, chi: &[i64]) -> Result<Decomposition, RepsError> {
        let n = self.order as i128;
        let mut mult = Vec::with_capacity(self.values.len());
        for (i, row) in self.values.iter().enumerate() {
            let p = self.weighted_product(chi, row);
            let d = n * self.norms[i] as i128;
            if p % d != 0 || p < 0 {
                return Err(RepsError::Decomposition(format!(
                    "multiplicity of {} is {p}/{d}",
                    self.labels[i]
                )));
            }
            mult.push((p / d) as i64);
        }
        for (c, &x) in chi.iter().enumerate() {
            let back: i64 = mult.iter().zip(&self.values).map(|(m, row)| m * row[c]).sum();
            if back != x {
                return Err(RepsError::Decomposition("multiplicities do not reconstruct the character".into()));
            }
        }
        Ok(Decomposition {
            parts: mult
                .iter()
                .enumerate()
                .filter(|(_, &m)| m > 0)
                .map(|(i, &m)| (self.labels[i].clone(), m))
                .collect(),
        })
    }
}

/// Constituents with multiplicities, in table order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Decomposition {
    pub parts: Vec<(String, i64)>,
}

impl Decomposition {
    /// Parse `9_3+6_1+2*16_1`.
    pub fn parse(text: &str) -> Option<Decomposition> {
        let mut parts = Vec::new();
        for p in text.split('+') {
            let p = p.trim();
            let (m, label) = match p.split_once('*') {
                Some((m, l)) => (m.trim().parse().ok()?, l.trim()),
                None => (1, p),
            };
            if label.is_empty() {
                return None;
            }
            parts.push((label.to_string(), m));
        }
        Some(Decomposition { parts })
    }

    /// Same constituents regardless of order.
    pub fn canonical(&self) -> Vec<(String, i64)> {
        let mut v = self.parts.clone();
        v.sort();
        v
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.parts.iter().map(|(l, _)| l.as_str())
    }
}

impl std::fmt::Display for Decomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let text: Vec<String> = self
            .parts
            .iter()
            .map(|(l, m)| if *m == 1 { l.clone() } else { format!("{m}*{l}") })
            .collect();
        f.write_str(&text.join("+"))
    }
}
