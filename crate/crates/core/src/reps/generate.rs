//! Character tables from scratch: exact Burnside–Dixon for groups whose
//! characters are rational (all finite Weyl groups), and the closed form for
//! dihedral groups. Used to produce the shipped table files.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{CharacterTable, RepsError};
use crate::coxeter::{ConjugacyClass, CoxeterSystem};

fn product(sys: &CoxeterSystem, a: usize, b: usize) -> usize {
    sys.word(b).iter().fold(a, |x, &s| sys.rmul(x, s as usize))
}

/// `c[i][j][k] = #{x ∈ C_i : x⁻¹ g_k ∈ C_j}`, the class multiplication constants.
fn class_constants(sys: &CoxeterSystem, classes: &[ConjugacyClass], class_map: &[usize]) -> Vec<Vec<Vec<i64>>> {
    let k = classes.len();
    let mut c = vec![vec![vec![0i64; k]; k]; k];
    for x in 0..sys.size() {
        let i = class_map[x];
        let xinv = sys.inv(x);
        for (kk, cl) in classes.iter().enumerate() {
            let y = product(sys, xinv, cl.representative);
            c[i][class_map[y]][kk] += 1;
        }
    }
    c
}

/// Characteristic polynomial `det(λI - A) = λ^n + c_1 λ^{n-1} + ... + c_n` by
/// Faddeev–LeVerrier; returns `[1, c_1, ..., c_n]`.
fn char_poly(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mut coeffs = vec![BigInt::one()];
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{k-1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for l in 0..n {
                    if !a[i][l].is_zero() && !m[l][j].is_zero() {
                        acc += &a[i][l] * &m[l][j];
                    }
                }
                next[i][j] = acc;
            }
            next[i][i] += &coeffs[k - 1];
        }
        m = next;
        let mut tr = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                if !a[i][l].is_zero() && !m[l][i].is_zero() {
                    tr += &a[i][l] * &m[l][i];
                }
            }
        }
        coeffs.push(-tr / BigInt::from(k));
    }
    coeffs
}

fn eval_poly(coeffs: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    coeffs.iter().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

/// Basis of `{v : A v = 0}` over `Q`.
fn nullspace(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m = a.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Irreducible characters of a group all of whose characters are rational,
/// with columns in the order of `classes`. Rows are unsorted.
pub fn rational_characters(sys: &CoxeterSystem, classes: &[ConjugacyClass]) -> Result<Vec<Vec<i64>>, RepsError> {
    let class_map = sys.class_map(classes);
    let c = class_constants(sys, classes, &class_map);
    let k = classes.len();
    let order = BigRational::from_integer(BigInt::from(sys.size()));
    for attempt in 0..8u64 {
        // A deterministic "generic" combination Σ r_j A_j with (A_j)[i][l] = c[i][j][l].
        let r: Vec<i64> = (0..k as u64).map(|j| ((j * j * 7 + j * 3 + attempt * 11) % 29 + 1) as i64).collect();
        let a: Vec<Vec<BigInt>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|l| BigInt::from((0..k).map(|j| r[j] * c[i][j][l]).sum::<i64>()))
                    .collect()
            })
            .collect();
        let cp = char_poly(&a);
        let bound: i64 = (0..k).map(|j| r[j] * classes[j].size as i64).sum();
        let roots: Vec<i64> = (-bound..=bound).filter(|&x| eval_poly(&cp, x).is_zero()).collect();
        if roots.len() != k {
            continue;
        }
        let mut rows = Vec::with_capacity(k);
        for lambda in roots {
            let shifted: Vec<Vec<BigRational>> = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|l| {
                            let mut x = a[i][l].clone();
                            if i == l {
                                x -= lambda;
                            }
                            BigRational::from_integer(x)
                        })
                        .collect()
                })
                .collect();
            let ns = nullspace(&shifted);
            if ns.len() != 1 {
                return Err(RepsError::Generate("eigenspace is not one-dimensional".into()));
            }
            let v = &ns[0];
            let omega: Vec<BigRational> = v.iter().map(|x| x / &v[0]).collect();
            // χ(1)² = |W| / Σ_j ω_j² / |C_j|
            let mut s = BigRational::zero();
            for (j, w) in omega.iter().enumerate() {
                s += w * w / BigRational::from_integer(BigInt::from(classes[j].size));
            }
            let d2 = &order / s;
            if !d2.is_integer() {
                return Err(RepsError::Generate("degree squared is not an integer".into()));
            }
            let d2 = d2.to_integer();
            let d = d2.sqrt();
            if &d * &d != d2 {
                return Err(RepsError::Generate("degree is not an integer".into()));
            }
            let d = BigRational::from_integer(d);
            let mut row = Vec::with_capacity(k);
            for (j, w) in omega.iter().enumerate() {
                let val = &d * w / BigRational::from_integer(BigInt::from(classes[j].size));
                if !val.is_integer() {
                    return Err(RepsError::Generate("character value is not an integer".into()));
                }
                row.push(val.to_integer().to_i64().expect("character value fits in i64"));
            }
            rows.push(row);
        }
        return Ok(rows);
    }
    Err(RepsError::Generate(
        "no generic combination separated the characters (are they rational?)".into(),
    ))
}

/// Integer Cartan matrix for a crystallographic Coxeter matrix: `a_ij a_ji =
/// 4cos²(π/m)`, with the larger entry above the diagonal.
fn cartan(sys: &CoxeterSystem) -> Option<Vec<Vec<i64>>> {
    let n = sys.rank();
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        for j in i + 1..n {
            let (x, y) = match sys.spec().m(i, j) {
                2 => (0, 0),
                3 => (-1, -1),
                4 => (-2, -1),
                6 => (-3, -1),
                _ => return None,
            };
            a[i][j] = x;
            a[j][i] = y;
        }
    }
    Some(a)
}

/// `b_χ`: the least `i` with `χ` a constituent of the `i`-th symmetric power
/// of the reflection representation, from `Σ_i ⟨χ, S^i V⟩ q^i = |W|⁻¹ Σ_w χ(w)/det(1 - qw)`.
pub fn b_invariants(sys: &CoxeterSystem, classes: &[ConjugacyClass], chars: &[Vec<i64>]) -> Option<Vec<usize>> {
    let a = cartan(sys)?;
    let n = sys.rank();
    let gen: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|i| {
            let mut m: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| (r == c) as i64).collect()).collect();
            for j in 0..n {
                m[i][j] -= a[i][j];
            }
            m
        })
        .collect();
    let depth = sys.max_length() + 1;
    let series: Vec<Vec<BigInt>> = classes
        .iter()
        .map(|c| {
            let mut m: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|cc| (r == cc) as i64).collect()).collect();
            for &s in sys.word(c.representative) {
                let g = &gen[s as usize];
                m = (0..n)
                    .map(|r| (0..n).map(|cc| (0..n).map(|l| m[r][l] * g[l][cc]).sum()).collect())
                    .collect();
            }
            let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            // det(1 - qM) = Σ c_i q^i; invert as a power series.
            let cp = char_poly(&big);
            let mut inv = vec![BigInt::zero(); depth + 1];
            inv[0] = BigInt::one();
            for d in 1..=depth {
                let mut acc = BigInt::zero();
                for i in 1..=n.min(d) {
                    acc -= &cp[i] * &inv[d - i];
                }
                inv[d] = acc;
            }
            inv
        })
        .collect();
    let order = BigInt::from(sys.size());
    let mut out = Vec::with_capacity(chars.len());
    for chi in chars {
        let mut b = None;
        for d in 0..=depth {
            let mut acc = BigInt::zero();
            for (j, c) in classes.iter().enumerate() {
                acc += BigInt::from(c.size as i64 * chi[j]) * &series[j][d];
            }
            if !acc.is_zero() {
                debug_assert!((&acc % &order).is_zero() && acc.is_positive());
                b = Some(d);
                break;
            }
        }
        out.push(b?);
    }
    Some(out)
}

/// Character table of a Weyl group with labels `phi{d},{b}` (primes separate
/// equal pairs). Type `F4` gets the labels `d_k` of Carter's tables.
pub fn weyl_table(sys: &CoxeterSystem) -> Result<CharacterTable, RepsError> {
    let classes = sys.conjugacy_classes();
    let chars = rational_characters(sys, &classes)?;
    let b = b_invariants(sys, &classes, &chars)
        .ok_or_else(|| RepsError::Generate("no integral reflection representation".into()))?;
    let mut idx: Vec<usize> = (0..chars.len()).collect();
    idx.sort_by(|&x, &y| (chars[x][0], b[x], &chars[y]).cmp(&(chars[y][0], b[y], &chars[x])));
    let values: Vec<Vec<i64>> = idx.iter().map(|&i| chars[i].clone()).collect();
    let db: Vec<(i64, usize)> = idx.iter().map(|&i| (chars[i][0], b[i])).collect();
    let mut labels = Vec::with_capacity(values.len());
    for (k, &(d, bb)) in db.iter().enumerate() {
        let same: Vec<usize> = (0..db.len()).filter(|&j| db[j] == (d, bb)).collect();
        let prime = match same.len() {
            1 => "",
            _ if same[0] == k => "'",
            _ => "''",
        };
        labels.push(format!("phi{d},{bb}{prime}"));
    }
    let mut table = CharacterTable {
        system: sys.spec().name.clone(),
        classes,
        labels,
        norms: vec![1; values.len()],
        values,
        order: sys.size(),
    };
    if sys.spec().name == "F4" {
        super::f4_labels::relabel(sys, &mut table)?;
    }
    table.validate()?;
    Ok(table)
}

/// Rational character table of `I_2(m)`: the linear characters and, for each
/// Galois orbit of 2-dimensional characters, the orbit sum (norm = orbit size).
pub fn dihedral_table(sys: &CoxeterSystem) -> Result<CharacterTable, RepsError> {
    if sys.rank() != 2 {
        return Err(RepsError::Generate("not a dihedral group".into()));
    }
    let m = sys.spec().m(0, 1) as i64;
    let classes = sys.conjugacy_classes();
    let r = sys.rmul(sys.rmul(0, 0), 1);
    // Describe each class by its representative: rotation (st)^k or reflection.
    let mut kind = Vec::with_capacity(classes.len());
    for c in &classes {
        let w = c.representative;
        if sys.len(w) % 2 == 1 {
            let s_type = sys.word(w)[0] == 0;
            kind.push(Err(s_type));
        } else {
            let mut x = 0;
            let mut k = 0;
            while x != w {
                x = product(sys, x, r);
                k += 1;
            }
            kind.push(Ok(k));
        }
    }
    let mut labels = Vec::new();
    let mut norms = Vec::new();
    let mut values = Vec::new();
    let linear: Vec<(&str, i64, i64)> = if m % 2 == 0 {
        vec![("1", 1, 1), ("eps_s", -1, 1), ("eps_t", 1, -1), ("sgn", -1, -1)]
    } else {
        vec![("1", 1, 1), ("sgn", -1, -1)]
    };
    for (label, vs, vt) in linear {
        labels.push(label.to_string());
        norms.push(1);
        values.push(
            kind.iter()
                .map(|k| match k {
                    Ok(rot) => {
                        // (st)^k has value (vs·vt)^k
                        if rot % 2 == 0 {
                            1
                        } else {
                            vs * vt
                        }
                    }
                    Err(true) => vs,
                    Err(false) => vt,
                })
                .collect(),
        );
    }
    // Orbits of ρ_j, 1 ≤ j < m/2, under j ↦ aj: grouped by d = m / gcd(j, m).
    let mut seen = Vec::new();
    for j in 1..(m + 1) / 2 {
        if 2 * j == m {
            continue;
        }
        let d = m / gcd(j, m);
        if seen.contains(&d) {
            continue;
        }
        seen.push(d);
        let size = euler_phi(d) / 2;
        labels.push(if size == 1 { format!("rho{j}") } else { format!("rho{j}[{size}]") });
        norms.push(size);
        values.push(
            kind.iter()
                .map(|k| match k {
                    Ok(rot) => ramanujan_sum(d, *rot),
                    Err(_) => 0,
                })
                .collect(),
        );
    }
    let table = CharacterTable {
        system: sys.spec().name.clone(),
        classes,
        labels,
        norms,
        values,
        order: sys.size(),
    };
    table.validate()?;
    Ok(table)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn euler_phi(n: i64) -> i64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as i64
}

/// `c_d(k) = Σ_{a ∈ (Z/d)^×} ζ_d^{ak}`, an integer: `μ(d/g)·φ(d)/φ(d/g)` with `g = gcd(k, d)`.
fn ramanujan_sum(d: i64, k: i64) -> i64 {
    let g = gcd(k, d);
    let q = d / g;
    mobius(q) * euler_phi(d) / euler_phi(q)
}

fn mobius(mut n: i64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}
