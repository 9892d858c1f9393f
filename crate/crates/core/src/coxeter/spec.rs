use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CoxeterError;

/// A Coxeter matrix together with a display name. Generators are numbered
/// from zero; `matrix[s][t]` is the order of `st`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterSpec {
    pub name: String,
    pub matrix: Vec<Vec<u32>>,
}

impl CoxeterSpec {
    pub fn from_matrix(name: impl Into<String>, matrix: Vec<Vec<u32>>) -> Result<CoxeterSpec, CoxeterError> {
        let spec = CoxeterSpec {
            name: name.into(),
            matrix,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn m(&self, s: usize, t: usize) -> u32 {
        self.matrix[s][t]
    }

    fn validate(&self) -> Result<(), CoxeterError> {
        let n = self.matrix.len();
        if n == 0 || n > 16 {
            return Err(CoxeterError::InvalidMatrix(format!("rank {n} not in 1..=16")));
        }
        for (s, row) in self.matrix.iter().enumerate() {
            if row.len() != n {
                return Err(CoxeterError::InvalidMatrix(format!("row {s} has length {}", row.len())));
            }
            for (t, &m) in row.iter().enumerate() {
                if s == t && m != 1 {
                    return Err(CoxeterError::InvalidMatrix(format!("m({s},{s}) = {m}, expected 1")));
                }
                if s != t && m < 2 {
                    return Err(CoxeterError::InvalidMatrix(format!("m({s},{t}) = {m} < 2")));
                }
                if self.matrix[t][s] != m {
                    return Err(CoxeterError::InvalidMatrix(format!("m({s},{t}) != m({t},{s})")));
                }
            }
        }
        Ok(())
    }

    fn chain(name: String, bonds: &[u32]) -> CoxeterSpec {
        let n = bonds.len() + 1;
        let mut matrix = vec![vec![2; n]; n];
        for (k, row) in matrix.iter_mut().enumerate() {
            row[k] = 1;
        }
        for (k, &m) in bonds.iter().enumerate() {
            matrix[k][k + 1] = m;
            matrix[k + 1][k] = m;
        }
        CoxeterSpec { name, matrix }
    }

    pub fn a(n: usize) -> CoxeterSpec {
        CoxeterSpec::chain(format!("A{n}"), &vec![3; n.saturating_sub(1)])
    }

    /// Type `B_n` with generator 0 the special node `t` and the double bond
    /// between generators 0 and 1.
    pub fn b(n: usize) -> CoxeterSpec {
        let mut bonds = vec![3; n.saturating_sub(1)];
        if n >= 2 {
            bonds[0] = 4;
        }
        CoxeterSpec::chain(format!("B{n}"), &bonds)
    }

    /// Type `D_n`: a chain `0 - 1 - ... - (n-2)` with generator `n-1`
    /// attached to `n-3`.
    pub fn d(n: usize) -> CoxeterSpec {
        let mut spec = CoxeterSpec::chain(format!("D{n}"), &vec![3; n - 2]);
        spec.matrix.push(vec![2; n]);
        for row in spec.matrix.iter_mut().take(n - 1) {
            row.push(2);
        }
        spec.matrix[n - 1][n - 1] = 1;
        spec.matrix[n - 1][n - 3] = 3;
        spec.matrix[n - 3][n - 1] = 3;
        spec
    }

    /// Type `F_4` with the double bond between generators 1 and 2.
    pub fn f4() -> CoxeterSpec {
        CoxeterSpec::chain("F4".into(), &[3, 4, 3])
    }

    pub fn h(n: usize) -> CoxeterSpec {
        let mut bonds = vec![3; n - 1];
        bonds[0] = 5;
        CoxeterSpec::chain(format!("H{n}"), &bonds)
    }

    pub fn i2(m: u32) -> CoxeterSpec {
        CoxeterSpec::chain(format!("I2({m})"), &[m])
    }

    /// Direct product: block-diagonal matrix with commuting blocks.
    pub fn product(parts: &[CoxeterSpec]) -> CoxeterSpec {
        let n: usize = parts.iter().map(|p| p.rank()).sum();
        let mut matrix = vec![vec![2; n]; n];
        let mut off = 0;
        for p in parts {
            for s in 0..p.rank() {
                for t in 0..p.rank() {
                    matrix[off + s][off + t] = p.matrix[s][t];
                }
            }
            off += p.rank();
        }
        let name = parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join("x");
        CoxeterSpec { name, matrix }
    }
}

impl fmt::Display for CoxeterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Accepts `F4`, `F_4`, `I2:4`, `I_2(4)`, `G2`, `A3`, `B4`, `D4`, `H3`, and
/// products such as `A1xA1`.
impl FromStr for CoxeterSpec {
    type Err = CoxeterError;

    fn from_str(text: &str) -> Result<CoxeterSpec, CoxeterError> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace() && *c != '_').collect();
        let parts: Vec<&str> = cleaned.split(['x', 'X', '*']).collect();
        if parts.len() > 1 {
            let specs = parts.iter().map(|p| p.parse()).collect::<Result<Vec<CoxeterSpec>, _>>()?;
            let spec = CoxeterSpec::product(&specs);
            spec.validate()?;
            return Ok(spec);
        }
        let bad = || CoxeterError::Parse(text.to_string());
        let mut chars = cleaned.chars();
        let family = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rest: String = chars.collect();
        if family == 'I' {
            let (r, m) = rest
                .split_once(':')
                .or_else(|| rest.strip_suffix(')').and_then(|r| r.split_once('(')))
                .ok_or_else(bad)?;
            if r != "2" {
                return Err(bad());
            }
            let m: u32 = m.parse().map_err(|_| bad())?;
            if m < 2 {
                return Err(bad());
            }
            return Ok(CoxeterSpec::i2(m));
        }
        let n: usize = rest.parse().map_err(|_| bad())?;
        let spec = match (family, n) {
            ('A', n) if n >= 1 => CoxeterSpec::a(n),
            ('B' | 'C', n) if n >= 2 => CoxeterSpec::b(n),
            ('D', n) if n >= 4 => CoxeterSpec::d(n),
            ('F', 4) => CoxeterSpec::f4(),
            ('G', 2) => CoxeterSpec {
                name: "G2".into(),
                ..CoxeterSpec::i2(6)
            },
            ('H', 3 | 4) => CoxeterSpec::h(n),
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("I2:4".parse::<CoxeterSpec>().unwrap(), CoxeterSpec::i2(4));
        assert_eq!("I_2(4)".parse::<CoxeterSpec>().unwrap(), CoxeterSpec::i2(4));
        assert_eq!("F_4".parse::<CoxeterSpec>().unwrap().matrix[1][2], 4);
        let p: CoxeterSpec = "A1xA1".parse().unwrap();
        assert_eq!(p.matrix, vec![vec![1, 2], vec![2, 1]]);
        let d: CoxeterSpec = "D4".parse().unwrap();
        assert_eq!(d.matrix[3][1], 3);
        assert_eq!(d.matrix[3][2], 2);
        assert!("Q7".parse::<CoxeterSpec>().is_err());
        assert!("F5".parse::<CoxeterSpec>().is_err());
    }

    #[test]
    fn matrix_validation() {
        assert!(CoxeterSpec::from_matrix("bad", vec![vec![1, 3], vec![2, 1]]).is_err());
        assert!(CoxeterSpec::from_matrix("bad", vec![vec![1, 1], vec![1, 1]]).is_err());
        assert!(CoxeterSpec::from_matrix("ok", vec![vec![1, 5], vec![5, 1]]).is_ok());
    }
}
