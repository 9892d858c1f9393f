//! Elements of the free abelian group `Γ ≅ Z^r` and total orders on it.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::LaurentError;

/// Largest supported rank of `Γ` (one coordinate per generator class).
pub const MAX_RANK: usize = 4;

/// A monomial `x1^e1 ... xr^er`, written additively as its exponent vector.
/// Coordinates beyond the active rank are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Monomial(pub [i32; MAX_RANK]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_RANK]);

    pub fn new(exps: &[i32]) -> Monomial {
        assert!(exps.len() <= MAX_RANK, "rank {} exceeds {MAX_RANK}", exps.len());
        let mut e = [0; MAX_RANK];
        e[..exps.len()].copy_from_slice(exps);
        Monomial(e)
    }

    /// The `k`-th coordinate generator.
    pub fn unit(k: usize) -> Monomial {
        let mut e = [0; MAX_RANK];
        e[k] = 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; MAX_RANK]
    }

    pub fn exps(&self) -> &[i32; MAX_RANK] {
        &self.0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(e)
    }

    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a -= *b;
        }
        Monomial(e)
    }

    #[inline]
    pub fn inv(&self) -> Monomial {
        let mut e = self.0;
        for a in e.iter_mut() {
            *a = -*a;
        }
        Monomial(e)
    }

    pub fn pow(&self, n: i32) -> Monomial {
        let mut e = self.0;
        for a in e.iter_mut() {
            *a *= n;
        }
        Monomial(e)
    }

    /// Write in the text form used by dumps, e.g. `x^-2*y` or `v^3`.
    pub fn fmt_with(&self, rank: usize, f: &mut impl fmt::Write) -> fmt::Result {
        let names = var_names(rank);
        let mut first = true;
        for (k, name) in names.iter().enumerate() {
            let e = self.0[k];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Variable names for the text form: `v` in rank one, `x, y, z` up to rank
/// three, and `x1 ... xr` beyond.
pub fn var_names(rank: usize) -> Vec<String> {
    match rank {
        0 => vec![],
        1 => vec!["v".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        r => (1..=r).map(|k| format!("x{k}")).collect(),
    }
}

/// A total, translation-invariant order on `Γ` given by a stack of integer
/// functionals: `γ > 1` iff the first functional that does not vanish on `γ`
/// is positive. The stack must have full rank so that only `1` is neutral.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    rank: usize,
    functionals: Vec<Vec<i64>>,
}

impl MonomialOrder {
    pub fn new(rank: usize, functionals: Vec<Vec<i64>>) -> Result<MonomialOrder, LaurentError> {
        if rank == 0 || rank > MAX_RANK {
            return Err(LaurentError::BadRank(rank));
        }
        if let Some(f) = functionals.iter().find(|f| f.len() != rank) {
            return Err(LaurentError::FunctionalLength {
                expected: rank,
                found: f.len(),
            });
        }
        let found = matrix_rank(&functionals);
        if found != rank {
            return Err(LaurentError::RankDeficient { rank, found });
        }
        Ok(MonomialOrder { rank, functionals })
    }

    /// Pure lexicographic order; `priority[0]` is the dominant coordinate.
    pub fn lex(rank: usize, priority: &[usize]) -> Result<MonomialOrder, LaurentError> {
        let functionals = priority
            .iter()
            .map(|&k| {
                let mut f = vec![0; rank];
                if k < rank {
                    f[k] = 1;
                }
                f
            })
            .collect();
        MonomialOrder::new(rank, functionals)
    }

    /// The order `v^n > 1 ⇔ n > 0` on a rank-one group.
    pub fn single() -> MonomialOrder {
        MonomialOrder {
            rank: 1,
            functionals: vec![vec![1]],
        }
    }

    /// Rank-two weighted order: `x^i y^j > 1` iff `c·i + d·j > 0`, with ties on
    /// that line broken by the sign of `i` (`Tiebreak::I`) or of `j`.
    pub fn weighted(c: i64, d: i64, tiebreak: Tiebreak) -> Result<MonomialOrder, LaurentError> {
        let tb = match tiebreak {
            Tiebreak::I => vec![1, 0],
            Tiebreak::J => vec![0, 1],
        };
        MonomialOrder::new(2, vec![vec![c, d], tb])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn functionals(&self) -> &[Vec<i64>] {
        &self.functionals
    }

    /// Sign of `γ` relative to `1`.
    #[inline]
    pub fn sign(&self, g: &Monomial) -> Ordering {
        for f in &self.functionals {
            let mut v: i64 = 0;
            for (k, c) in f.iter().enumerate() {
                v += c * g.0[k] as i64;
            }
            match v.cmp(&0) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    #[inline]
    pub fn is_positive(&self, g: &Monomial) -> bool {
        self.sign(g) == Ordering::Greater
    }

    #[inline]
    pub fn is_negative(&self, g: &Monomial) -> bool {
        self.sign(g) == Ordering::Less
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.sign(&a.div(b))
    }

    pub fn describe(&self) -> String {
        let rows: Vec<String> = self
            .functionals
            .iter()
            .map(|f| f.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        rows.join(";")
    }
}

/// Which coordinate decides comparisons on the tie line of a weighted order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tiebreak {
    I,
    J,
}

fn matrix_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational64>> = rows
        .iter()
        .map(|r| r.iter().map(|&c| Rational64::from_integer(c)).collect())
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let factor = m[i][col] / m[rank][col];
                for k in col..ncols {
                    let sub = factor * m[rank][k];
                    m[i][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}
