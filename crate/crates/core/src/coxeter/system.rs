use std::collections::HashMap;
use std::ops::Range;

use serde::Serialize;

use super::{CoxeterError, CoxeterSpec};

pub const DEFAULT_CAP: usize = 20000;

/// Partition of the generators by odd-bond connectivity. Class indices are
/// assigned in order of first appearance, so generator 0 is always in class 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorClasses {
    pub class_of: Vec<usize>,
    pub count: usize,
}

impl GeneratorClasses {
    pub fn members(&self, class: usize) -> Vec<usize> {
        (0..self.class_of.len()).filter(|&s| self.class_of[s] == class).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub size: usize,
}

/// A finite Coxeter group with all elements enumerated. Elements are dense
/// indices sorted by length and then by canonical (lexicographically least)
/// reduced word; index 0 is the identity and the last index is `w0`.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    spec: CoxeterSpec,
    rank: usize,
    length: Vec<u32>,
    left: Vec<u32>,
    right: Vec<u32>,
    inverse: Vec<u32>,
    words: Vec<Vec<u8>>,
    level_start: Vec<usize>,
    classes: GeneratorClasses,
}

impl CoxeterSystem {
    pub fn new(spec: CoxeterSpec) -> Result<CoxeterSystem, CoxeterError> {
        CoxeterSystem::with_cap(spec, DEFAULT_CAP)
    }

    pub fn with_cap(spec: CoxeterSpec, cap: usize) -> Result<CoxeterSystem, CoxeterError> {
        let n = spec.rank();
        let (roots, gens) = root_permutations(&spec, cap)?;
        let positive: Vec<bool> = roots.iter().map(|r| is_positive(r)).collect();

        // Breadth-first closure under right multiplication by ascents.
        let mut perms: Vec<Vec<u32>> = vec![(0..roots.len() as u32).collect()];
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        index.insert(perms[0].clone(), 0);
        let mut length = vec![0u32];
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &u in &frontier {
                for (s, g) in gens.iter().enumerate() {
                    if !positive[perms[u][s] as usize] {
                        continue;
                    }
                    let us: Vec<u32> = g.iter().map(|&a| perms[u][a as usize]).collect();
                    if index.contains_key(&us) {
                        continue;
                    }
                    if perms.len() >= cap {
                        return Err(CoxeterError::Cap { cap });
                    }
                    index.insert(us.clone(), perms.len() as u32);
                    length.push(length[u] + 1);
                    next.push(perms.len());
                    perms.push(us);
                }
            }
            frontier = next;
        }
        let size = perms.len();
        let mut left = vec![0u32; size * n];
        let mut right = vec![0u32; size * n];
        for (u, p) in perms.iter().enumerate() {
            for (s, g) in gens.iter().enumerate() {
                let us: Vec<u32> = g.iter().map(|&a| p[a as usize]).collect();
                let su: Vec<u32> = p.iter().map(|&a| g[a as usize]).collect();
                right[u * n + s] = index[&us];
                left[u * n + s] = index[&su];
            }
        }
        drop(index);
        drop(perms);

        // Canonical words: least left descent first, then the word of the rest.
        let mut words: Vec<Vec<u8>> = vec![Vec::new(); size];
        for u in 1..size {
            let s = (0..n)
                .find(|&s| length[left[u * n + s] as usize] < length[u])
                .expect("non-identity element has a left descent");
            let su = left[u * n + s] as usize;
            let mut w = Vec::with_capacity(length[u] as usize);
            w.push(s as u8);
            w.extend_from_slice(&words[su]);
            words[u] = w;
        }
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by(|&a, &b| length[a].cmp(&length[b]).then_with(|| words[a].cmp(&words[b])));
        let mut new_of = vec![0u32; size];
        for (new, &old) in order.iter().enumerate() {
            new_of[old] = new as u32;
        }
        let remap = |table: &[u32]| {
            let mut out = vec![0u32; size * n];
            for (new, &old) in order.iter().enumerate() {
                for s in 0..n {
                    out[new * n + s] = new_of[table[old * n + s] as usize];
                }
            }
            out
        };
        let left = remap(&left);
        let right = remap(&right);
        let length: Vec<u32> = order.iter().map(|&o| length[o]).collect();
        let words: Vec<Vec<u8>> = order.iter().map(|&o| std::mem::take(&mut words[o])).collect();

        let mut inverse = vec![0u32; size];
        for (u, w) in words.iter().enumerate() {
            let mut x = 0usize;
            for &s in w.iter().rev() {
                x = right[x * n + s as usize] as usize;
            }
            inverse[u] = x as u32;
        }
        let max_len = length[size - 1] as usize;
        let mut level_start = vec![0usize; max_len + 2];
        for l in 0..=max_len + 1 {
            level_start[l] = length.partition_point(|&x| (x as usize) < l);
        }
        let classes = generator_classes(&spec);
        Ok(CoxeterSystem {
            spec,
            rank: n,
            length,
            left,
            right,
            inverse,
            words,
            level_start,
            classes,
        })
    }

    pub fn spec(&self) -> &CoxeterSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn size(&self) -> usize {
        self.length.len()
    }

    #[inline]
    pub fn len(&self, w: usize) -> usize {
        self.length[w] as usize
    }

    /// `s·w`.
    #[inline]
    pub fn lmul(&self, s: usize, w: usize) -> usize {
        self.left[w * self.rank + s] as usize
    }

    /// `w·s`.
    #[inline]
    pub fn rmul(&self, w: usize, s: usize) -> usize {
        self.right[w * self.rank + s] as usize
    }

    #[inline]
    pub fn inv(&self, w: usize) -> usize {
        self.inverse[w] as usize
    }

    /// `sw < w`. Indices are sorted by length, so this is an index comparison.
    #[inline]
    pub fn is_left_descent(&self, s: usize, w: usize) -> bool {
        self.lmul(s, w) < w
    }

    #[inline]
    pub fn is_right_descent(&self, w: usize, s: usize) -> bool {
        self.rmul(w, s) < w
    }

    pub fn left_descents(&self, w: usize) -> Vec<usize> {
        (0..self.rank).filter(|&s| self.is_left_descent(s, w)).collect()
    }

    pub fn w0(&self) -> usize {
        self.size() - 1
    }

    pub fn max_length(&self) -> usize {
        self.len(self.w0())
    }

    /// Elements of length `l`, as an index range.
    pub fn level(&self, l: usize) -> Range<usize> {
        self.level_start[l]..self.level_start[l + 1]
    }

    pub fn word(&self, w: usize) -> &[u8] {
        &self.words[w]
    }

    pub fn classes(&self) -> &GeneratorClasses {
        &self.classes
    }

    pub fn from_word(&self, word: &[usize]) -> Option<usize> {
        let mut x = 0;
        for &s in word {
            if s >= self.rank {
                return None;
            }
            x = self.rmul(x, s);
        }
        Some(x)
    }

    /// Word text with 1-based generator numbers: `e` for the identity,
    /// `1213`, or `1.10.2` when the rank reaches 10.
    pub fn word_text(&self, w: usize) -> String {
        let word = &self.words[w];
        if word.is_empty() {
            return "e".into();
        }
        let parts: Vec<String> = word.iter().map(|s| (s + 1).to_string()).collect();
        if self.rank >= 10 {
            parts.join(".")
        } else {
            parts.concat()
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<usize, CoxeterError> {
        let text = text.trim();
        if text.is_empty() || text == "e" || text == "1_W" {
            return Ok(0);
        }
        let bad = || CoxeterError::Word(text.to_string());
        let letters: Vec<usize> = if text.contains('.') || text.contains(',') {
            text.split(['.', ','])
                .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else {
            text.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        };
        if letters.iter().any(|&s| s == 0) {
            return Err(bad());
        }
        let word: Vec<usize> = letters.iter().map(|s| s - 1).collect();
        self.from_word(&word).ok_or_else(bad)
    }

    /// Conjugacy classes by orbit closure under `x ↦ s x s`; representatives
    /// are the least index in each orbit, classes are listed by representative.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let size = self.size();
        let mut seen = vec![false; size];
        let mut out = Vec::new();
        for start in 0..size {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut count = 0;
            while let Some(x) = stack.pop() {
                count += 1;
                for s in 0..self.rank {
                    let y = self.rmul(self.lmul(s, x), s);
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            out.push(ConjugacyClass {
                representative: start,
                size: count,
            });
        }
        out
    }

    /// Index of the conjugacy class containing each element.
    pub fn class_map(&self, classes: &[ConjugacyClass]) -> Vec<usize> {
        let mut map = vec![usize::MAX; self.size()];
        for (k, c) in classes.iter().enumerate() {
            let mut stack = vec![c.representative];
            map[c.representative] = k;
            while let Some(x) = stack.pop() {
                for s in 0..self.rank {
                    let y = self.rmul(self.lmul(s, x), s);
                    if map[y] == usize::MAX {
                        map[y] = k;
                        stack.push(y);
                    }
                }
            }
        }
        map
    }

    /// Permutations of the generators preserving the Coxeter matrix.
    /// Only searched for rank at most 8.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.rank;
        if n > 8 {
            return vec![(0..n).collect()];
        }
        let mut out = Vec::new();
        let mut perm = Vec::with_capacity(n);
        let mut used = vec![false; n];
        self.extend_automorphism(&mut perm, &mut used, &mut out);
        out
    }

    fn extend_automorphism(&self, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let k = perm.len();
        if k == self.rank {
            out.push(perm.clone());
            return;
        }
        for img in 0..self.rank {
            if used[img] {
                continue;
            }
            if (0..k).all(|j| self.spec.m(j, k) == self.spec.m(perm[j], img)) {
                used[img] = true;
                perm.push(img);
                self.extend_automorphism(perm, used, out);
                perm.pop();
                used[img] = false;
            }
        }
    }

    /// Image of `w` under the group automorphism induced by a diagram
    /// automorphism `perm`.
    pub fn apply_automorphism(&self, perm: &[usize], w: usize) -> usize {
        let mut x = 0;
        for &s in &self.words[w] {
            x = self.rmul(x, perm[s as usize]);
        }
        x
    }

    pub fn length_histogram(&self) -> Vec<usize> {
        (0..=self.max_length()).map(|l| self.level(l).len()).collect()
    }

    pub fn summary_json(&self) -> serde_json::Value {
        let classes = self.conjugacy_classes();
        serde_json::json!({
            "type": self.spec.name,
            "rank": self.rank,
            "coxeter_matrix": self.spec.matrix,
            "size": self.size(),
            "longest_length": self.max_length(),
            "length_histogram": self.length_histogram(),
            "generator_classes": self.classes.class_of,
            "conjugacy_classes": classes.iter().map(|c| serde_json::json!({
                "representative": self.word_text(c.representative),
                "size": c.size,
            })).collect::<Vec<_>>(),
        })
    }
}

fn generator_classes(spec: &CoxeterSpec) -> GeneratorClasses {
    let n = spec.rank();
    let mut class_of = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        class_of[start] = count;
        let mut stack = vec![start];
        while let Some(s) = stack.pop() {
            for t in 0..n {
                if class_of[t] == usize::MAX && spec.m(s, t) % 2 == 1 {
                    class_of[t] = count;
                    stack.push(t);
                }
            }
        }
        count += 1;
    }
    GeneratorClasses { class_of, count }
}

// Root coordinates are compared after rounding to this many units.
const SNAP: f64 = 1e7;

fn is_positive(r: &[f64]) -> bool {
    r.iter().sum::<f64>() > 0.0
}

/// All roots of the geometric representation, and each generator as a
/// permutation of them. Simple root `s` is root `s`.
fn root_permutations(spec: &CoxeterSpec, cap: usize) -> Result<(Vec<Vec<f64>>, Vec<Vec<u32>>), CoxeterError> {
    let n = spec.rank();
    let form: Vec<Vec<f64>> = (0..n)
        .map(|s| {
            (0..n)
                .map(|t| -(std::f64::consts::PI / spec.m(s, t) as f64).cos())
                .collect()
        })
        .collect();
    let key = |r: &[f64]| -> Vec<i64> { r.iter().map(|x| (x * SNAP).round() as i64).collect() };
    let reflect = |s: usize, r: &[f64]| -> Vec<f64> {
        let b: f64 = (0..n).map(|t| form[s][t] * r[t]).sum();
        let mut out = r.to_vec();
        out[s] -= 2.0 * b;
        out
    };
    let mut roots: Vec<Vec<f64>> = (0..n)
        .map(|s| {
            let mut e = vec![0.0; n];
            e[s] = 1.0;
            e
        })
        .collect();
    let mut index: HashMap<Vec<i64>, u32> = roots.iter().enumerate().map(|(k, r)| (key(r), k as u32)).collect();
    let mut k = 0;
    while k < roots.len() {
        for s in 0..n {
            let img = reflect(s, &roots[k]);
            let kk = key(&img);
            if !index.contains_key(&kk) {
                if roots.len() >= 2 * cap {
                    return Err(CoxeterError::Cap { cap });
                }
                index.insert(kk, roots.len() as u32);
                roots.push(img);
            }
        }
        k += 1;
    }
    let gens = (0..n)
        .map(|s| roots.iter().map(|r| index[&key(&reflect(s, r))]).collect())
        .collect();
    Ok((roots, gens))
}
