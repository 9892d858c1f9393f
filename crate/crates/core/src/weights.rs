//! Weight functions versus abstract orders: the sets Γ₊(W) and Γ₊′(W), the
//! conditions they impose on a specialization, distinguished involutions, and
//! the scan that splits the ratio line of a two-class system into regions.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::cells::{CellPartition, Cells, EdgeConvention};
use crate::coxeter::CoxeterSystem;
use crate::kl::{compute_kl, KlData, KlError, KlTable, MuTable, Params};
use crate::laurent::{Int, LaurentPoly, Monomial, MonomialOrder, Tiebreak};

#[derive(Debug, thiserror::Error)]
pub enum WeightsError {
    #[error("the scan needs exactly two generator classes, found {0}")]
    NotTwoClass(usize),
    #[error(transparent)]
    Kl(#[from] KlError),
    #[error("order {order} admits no weight function (its Γ₊(W) gives an empty interval)")]
    EmptyInterval { order: String },
    #[error("region {region} is not covered by the validity interval {interval} of order {order}")]
    IntervalMismatch {
        region: String,
        interval: String,
        order: String,
    },
    #[error("scan did not terminate within {0} steps")]
    Guard(usize),
    #[error("weights must be positive: {0:?}")]
    NonPositive(Vec<i64>),
}

/// Divide by the gcd of the values.
pub fn normalize_weight(weights: &[i64]) -> Vec<i64> {
    let g = weights.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return weights.to_vec();
    }
    weights.iter().map(|x| x / g).collect()
}

/// Ratio `2·l(w0)` beyond which `L(class 1)/L(class 0)` is in the asymptotic case.
pub fn asymptotic_class_bound(sys: &CoxeterSystem) -> i64 {
    2 * sys.max_length() as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SetTag {
    /// Inverse of a monomial of some `P*_{y,w}`, `y < w`.
    GammaA,
    /// Consecutive ratio of the monomials of some `M^s_{y,w}`.
    GammaB,
    /// `δ_w⁻¹` against a lower monomial of `P*_{1,w}`.
    Delta,
    /// Consecutive ratio of the `δ_w` in one left cell.
    DeltaChain,
}

/// A finite set of monomials, each with the first reason it was added.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MonomialSet {
    pub members: Vec<(Monomial, SetTag)>,
}

impl MonomialSet {
    pub fn from_unsorted(mut v: Vec<(Monomial, SetTag)>) -> MonomialSet {
        v.sort();
        v.dedup_by(|a, b| a.0 == b.0);
        MonomialSet { members: v }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.members.binary_search_by(|(x, _)| x.cmp(m)).is_ok()
    }

    pub fn union(&self, other: &MonomialSet) -> MonomialSet {
        MonomialSet::from_unsorted(self.members.iter().chain(&other.members).cloned().collect())
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.members.iter().map(|(m, _)| m)
    }
}

/// Γ₊(W): inverses of the monomials of all `P*_{y,w}` with `y < w`, and the
/// ratios `γ_{i-1}⁻¹γ_i` of consecutive monomials of each `M^s_{y,w}`.
pub fn gamma_plus_w(kl: &KlTable, mu: &MuTable, order: &MonomialOrder) -> MonomialSet {
    let per_w: Vec<Vec<(Monomial, SetTag)>> = (0..kl.size())
        .into_par_iter()
        .map(|w| {
            let mut out = Vec::new();
            for (y, p) in kl.row(w) {
                if *y as usize == w {
                    continue;
                }
                out.extend(p.terms().iter().map(|(m, _)| (m.inv(), SetTag::GammaA)));
            }
            for e in mu.entries(w) {
                out.extend(consecutive_ratios(&e.m, order).into_iter().map(|m| (m, SetTag::GammaB)));
            }
            out.sort();
            out.dedup_by(|a, b| a.0 == b.0);
            out
        })
        .collect();
    MonomialSet::from_unsorted(per_w.into_iter().flatten().collect())
}

fn consecutive_ratios(p: &LaurentPoly, order: &MonomialOrder) -> Vec<Monomial> {
    let mut ms: Vec<Monomial> = p.terms().iter().map(|(m, _)| *m).collect();
    ms.sort_by(|a, b| order.compare(a, b));
    ms.windows(2).map(|w| w[1].div(&w[0])).collect()
}

/// `δ_w` and `n_w` from `P*_{1,w} = n_w δ_w⁻¹ + (lower terms)`; `δ_1 = 1`.
fn delta_top(kl: &KlTable, order: &MonomialOrder, w: usize) -> (Monomial, Int) {
    let p = kl.p_star(0, w).expect("P*_{1,w} is nonzero");
    let (m, c) = p.leading(order).expect("P*_{1,w} is nonzero");
    (m.inv(), c)
}

/// Extra monomials of Γ₊′(W), plus pairs of elements in one left cell
/// sharing `δ_w` (left out of the chain).
#[derive(Clone, Debug, Default, Serialize)]
pub struct PrimeSet {
    pub set: MonomialSet,
    pub duplicates: Vec<(u32, u32)>,
}

/// Γ₊′(W) = Γ₊(W) ∪ {δ_w⁻¹γ⁻¹ : γ a lower monomial of `P*_{1,w}`} ∪ the
/// consecutive ratios of the sorted `δ_w` within each left cell.
pub fn gamma_plus_prime_w(
    kl: &KlTable,
    mu: &MuTable,
    order: &MonomialOrder,
    left: &CellPartition,
) -> PrimeSet {
    let mut extra = Vec::new();
    let size = kl.size();
    let deltas: Vec<Monomial> = (0..size).map(|w| delta_top(kl, order, w).0).collect();
    for w in 1..size {
        let p = kl.p_star(0, w).expect("P*_{1,w} is nonzero");
        let top = deltas[w].inv();
        for (m, _) in p.terms() {
            if *m != top {
                extra.push((top.div(m), SetTag::Delta));
            }
        }
    }
    let mut duplicates = Vec::new();
    for block in &left.blocks {
        let mut members: Vec<u32> = block.clone();
        members.sort_by(|&a, &b| order.compare(&deltas[a as usize], &deltas[b as usize]).then(a.cmp(&b)));
        for pair in members.windows(2) {
            let (a, b) = (pair[0] as usize, pair[1] as usize);
            if deltas[a] == deltas[b] {
                duplicates.push((pair[0], pair[1]));
            } else {
                extra.push((deltas[b].div(&deltas[a]), SetTag::DeltaChain));
            }
        }
    }
    let set = gamma_plus_w(kl, mu, order).union(&MonomialSet::from_unsorted(extra));
    PrimeSet { set, duplicates }
}

/// Members `γ` of `set` with `σ(γ)` not a strictly positive power of `v`,
/// where `σ(x_k) = v^{sigma[k]}`.
pub fn check_star(sigma: &[i64], set: &MonomialSet) -> Vec<Monomial> {
    set.monomials()
        .filter(|m| {
            let n: i64 = sigma.iter().enumerate().map(|(k, a)| a * m.0[k] as i64).sum();
            n <= 0
        })
        .copied()
        .collect()
}

/// A ratio in `[0, ∞]`; `Infinite` stands for an unbounded end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Finite(Rational64),
    Infinite,
}

impl Bound {
    fn cmp_bound(&self, other: &Bound) -> Ordering {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => a.cmp(b),
            (Bound::Finite(_), Bound::Infinite) => Ordering::Less,
            (Bound::Infinite, Bound::Finite(_)) => Ordering::Greater,
            (Bound::Infinite, Bound::Infinite) => Ordering::Equal,
        }
    }

    /// Numerator and denominator, with `∞ = 1/0`.
    fn fraction(&self) -> (i64, i64) {
        match self {
            Bound::Finite(r) => (*r.numer(), *r.denom()),
            Bound::Infinite => (1, 0),
        }
    }

    fn inverse(&self) -> Bound {
        match self {
            Bound::Finite(r) if *r.numer() == 0 => Bound::Infinite,
            Bound::Finite(r) => Bound::Finite(r.recip()),
            Bound::Infinite => Bound::Finite(Rational64::from_integer(0)),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(r) => write!(f, "{r}"),
            Bound::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Open interval of ratios `ρ = L(class 1)/L(class 0)` on which every member
/// `x^i y^j` of a set satisfies `i + ρ j > 0`, with the members that bind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
    pub lo_binding: Vec<Monomial>,
    pub hi_binding: Vec<Monomial>,
}

impl Interval {
    pub fn contains_ratio(&self, r: Rational64) -> bool {
        let b = Bound::Finite(r);
        self.lo.cmp_bound(&b) == Ordering::Less && b.cmp_bound(&self.hi) == Ordering::Less
    }

    /// `(lo, hi) ⊇ (a, b)`.
    pub fn covers(&self, a: &Bound, b: &Bound) -> bool {
        self.lo.cmp_bound(a) != Ordering::Greater && b.cmp_bound(&self.hi) != Ordering::Greater
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// `None` when the constraints are inconsistent.
pub fn validity_interval(set: &MonomialSet) -> Option<Interval> {
    let mut lo = Bound::Finite(Rational64::from_integer(0));
    let mut hi = Bound::Infinite;
    let mut lo_binding = Vec::new();
    let mut hi_binding = Vec::new();
    for m in set.monomials() {
        let (i, j) = (m.0[0] as i64, m.0[1] as i64);
        if m.0[2..].iter().any(|&e| e != 0) {
            return None;
        }
        match j.cmp(&0) {
            Ordering::Equal => {
                if i <= 0 {
                    return None;
                }
            }
            Ordering::Greater => {
                // ρ > -i/j
                let b = Bound::Finite(Rational64::new(-i, j));
                if b.cmp_bound(&Bound::Finite(Rational64::from_integer(0))) != Ordering::Greater {
                    continue;
                }
                match b.cmp_bound(&lo) {
                    Ordering::Greater => {
                        lo = b;
                        lo_binding = vec![*m];
                    }
                    Ordering::Equal => lo_binding.push(*m),
                    Ordering::Less => {}
                }
            }
            Ordering::Less => {
                // ρ < i/(-j)
                if i <= 0 {
                    return None;
                }
                let b = Bound::Finite(Rational64::new(i, -j));
                match b.cmp_bound(&hi) {
                    Ordering::Less => {
                        hi = b;
                        hi_binding = vec![*m];
                    }
                    Ordering::Equal => hi_binding.push(*m),
                    Ordering::Greater => {}
                }
            }
        }
    }
    if lo.cmp_bound(&hi) != Ordering::Less {
        return None;
    }
    Some(Interval {
        lo,
        hi,
        lo_binding,
        hi_binding,
    })
}

/// The minimizer of `Δ` in one left cell.
#[derive(Clone, Debug, Serialize)]
pub struct CellMinimum {
    pub cell: usize,
    pub element: u32,
    pub delta: i64,
    pub n: Int,
    /// No other element of the cell attains `delta`.
    pub unique: bool,
    pub involution: bool,
}

impl CellMinimum {
    pub fn ok(&self) -> bool {
        self.unique && self.involution && (self.n.is_one() || self.n == Int::from(-1))
    }
}

/// `Δ(w)` and `n_w` from `σ(P*_{1,w}) = n_w v^{-Δ(w)} + (lower powers)`, and
/// the `Δ`-minimizer of each left cell.
#[derive(Clone, Debug, Serialize)]
pub struct DistinguishedReport {
    pub delta: Vec<i64>,
    pub n: Vec<Int>,
    pub cells: Vec<CellMinimum>,
}

impl DistinguishedReport {
    pub fn ok(&self) -> bool {
        self.cells.iter().all(|c| c.ok())
    }

    /// Cells whose minimizer fails uniqueness, `d² = 1` or `n = ±1`.
    pub fn findings(&self) -> Vec<&CellMinimum> {
        self.cells.iter().filter(|c| !c.ok()).collect()
    }

    pub fn involutions(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.cells.iter().map(|c| c.element).collect();
        v.sort_unstable();
        v
    }
}

/// `sigma` maps the variables of `kl` to powers of `v` (use `[1]` for a table
/// already computed at a weight function).
pub fn distinguished_involutions(
    sys: &CoxeterSystem,
    kl: &KlTable,
    sigma: &[i64],
    left: &CellPartition,
) -> DistinguishedReport {
    let single = MonomialOrder::single();
    let (delta, n): (Vec<i64>, Vec<Int>) = (0..sys.size())
        .map(|w| {
            let p = kl.p_star(0, w).expect("P*_{1,w} is nonzero").specialize(sigma);
            let (m, c) = p.leading(&single).expect("σ(P*_{1,w}) is nonzero");
            (-(m.0[0] as i64), c)
        })
        .unzip();
    let cells = left
        .blocks
        .iter()
        .enumerate()
        .map(|(k, b)| {
            let best = b.iter().map(|&x| delta[x as usize]).min().expect("cells are nonempty");
            let at: Vec<u32> = b.iter().copied().filter(|&x| delta[x as usize] == best).collect();
            let d = at[0];
            CellMinimum {
                cell: k,
                element: d,
                delta: best,
                n: n[d as usize].clone(),
                unique: at.len() == 1,
                involution: sys.inv(d as usize) == d as usize,
            }
        })
        .collect();
    DistinguishedReport { delta, n, cells }
}

/// Entrywise comparison of `σ` applied to tables over Γ with tables computed
/// directly at the weight function.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SpecializationReport {
    pub p_checked: usize,
    pub m_checked: usize,
    pub p_mismatches: Vec<(u32, u32)>,
    pub m_mismatches: Vec<(u8, u32, u32)>,
    /// `M ≠ 0` over Γ but `σ(M) = 0`.
    pub vanished: Vec<(u8, u32, u32)>,
}

impl SpecializationReport {
    pub fn ok(&self) -> bool {
        self.p_mismatches.is_empty() && self.m_mismatches.is_empty() && self.vanished.is_empty()
    }
}

pub fn check_specialization(gamma: &KlData, direct: &KlData, sigma: &[i64]) -> SpecializationReport {
    let size = gamma.kl.size();
    let parts: Vec<SpecializationReport> = (0..size)
        .into_par_iter()
        .map(|w| {
            let mut r = SpecializationReport::default();
            let (a, b) = (gamma.kl.row(w), direct.kl.row(w));
            r.p_checked = a.len();
            if a.len() != b.len() {
                r.p_mismatches.push((u32::MAX, w as u32));
            }
            for ((y, p), (y2, q)) in a.iter().zip(b) {
                if y != y2 || p.specialize(sigma) != *q {
                    r.p_mismatches.push((*y, w as u32));
                }
            }
            let direct_mu = direct.mu.entries(w);
            let mut matched = 0;
            for e in gamma.mu.entries(w) {
                r.m_checked += 1;
                let s = e.m.specialize(sigma);
                if s.is_zero() {
                    r.vanished.push((e.s, e.y, w as u32));
                    continue;
                }
                match direct.mu.get(e.s as usize, e.y as usize, w) {
                    Some(q) if *q == s => matched += 1,
                    _ => r.m_mismatches.push((e.s, e.y, w as u32)),
                }
            }
            if matched != direct_mu.len() {
                for e in direct_mu {
                    if gamma.mu.get(e.s as usize, e.y as usize, w).is_none() {
                        r.m_mismatches.push((e.s, e.y, w as u32));
                    }
                }
            }
            r
        })
        .collect();
    let mut report = SpecializationReport::default();
    for r in parts {
        report.p_checked += r.p_checked;
        report.m_checked += r.m_checked;
        report.p_mismatches.extend(r.p_mismatches);
        report.m_mismatches.extend(r.m_mismatches);
        report.vanished.extend(r.vanished);
    }
    report
}

/// An exact ratio `d/c` recomputed over Γ with the weighted order `(c, d)`
/// and a tiebreak, then specialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TiebreakCheck {
    pub tiebreak: Tiebreak,
    /// Specialized tables equal the tables computed at the weight function.
    pub specializes: bool,
    /// Cells from the specialized M-table equal the direct cells.
    pub same_partition: bool,
}

impl Default for TiebreakCheck {
    fn default() -> TiebreakCheck {
        TiebreakCheck {
            tiebreak: Tiebreak::I,
            specializes: false,
            same_partition: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    Open,
    Exact,
}

/// One region of the ratio line `ρ = L(class 1)/L(class 0)`.
#[derive(Clone, Debug, Serialize)]
pub struct Region {
    pub kind: RegionKind,
    pub lo: Bound,
    pub hi: Bound,
    /// Class weights `[L(class 0), L(class 1)]` of the representative.
    pub weights: [i64; 2],
    /// Order over Γ used for an open region (`None` for exact ratios, which
    /// are computed at the weight function itself).
    pub order: Option<String>,
    pub validity: Option<Interval>,
    /// Interval on which (*′) holds for the order of an open region.
    pub prime_validity: Option<Interval>,
    /// Obtained from the opposite region by the diagram automorphism.
    pub mirrored: bool,
    pub specialization: Option<SpecializationReport>,
    /// Exact ratio recomputed over Γ with each tiebreak (cross-check).
    pub tiebreak_agreement: Option<[TiebreakCheck; 2]>,
    pub left: CellPartition,
    pub two_sided: CellPartition,
    /// Index into the list of distinct left-cell partitions.
    pub partition_class: usize,
    /// Same, identifying a partition with its image under the automorphism.
    pub symmetric_class: usize,
}

impl Region {
    pub fn describe(&self) -> String {
        match self.kind {
            RegionKind::Exact => format!("b/a = {}", self.lo),
            RegionKind::Open => format!("{} < b/a < {}", self.lo, self.hi),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub system: String,
    /// Breakpoints in increasing order.
    pub breakpoints: Vec<Bound>,
    /// Regions in increasing order of ratio, tiling `(0, ∞)`.
    pub regions: Vec<Region>,
    pub partition_classes: usize,
    pub symmetric_classes: usize,
    /// Diagram automorphism exchanging the two classes, if any.
    pub swap: Option<Vec<usize>>,
    pub steps: usize,
}

impl ScanReport {
    /// Index of the region containing the ratio `weights[1]/weights[0]`.
    pub fn locate(&self, weights: [i64; 2]) -> Option<usize> {
        let r = Bound::Finite(Rational64::new(weights[1], weights[0]));
        self.regions.iter().position(|g| match g.kind {
            RegionKind::Exact => g.lo == r,
            RegionKind::Open => g.lo.cmp_bound(&r) == Ordering::Less && r.cmp_bound(&g.hi) == Ordering::Less,
        })
    }

    /// Regions grouped by partition class.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.partition_classes];
        for (k, r) in self.regions.iter().enumerate() {
            out[r.partition_class].push(k);
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {} regions, {} partition classes ({} up to symmetry)\n",
            self.system,
            self.regions.len(),
            self.partition_classes,
            self.symmetric_classes
        );
        for r in &self.regions {
            s.push_str(&format!(
                "  {:<24} weights {:>3},{:<3} class {:>2} (sym {:>2})  left {:>4}  two-sided {:>3}{}\n",
                r.describe(),
                r.weights[0],
                r.weights[1],
                r.partition_class,
                r.symmetric_class,
                r.left.len(),
                r.two_sided.len(),
                if r.mirrored { "  mirrored" } else { "" }
            ));
        }
        s
    }
}

#[derive(Clone, Debug, Default)]
pub struct ScanOptions {
    /// Also compute exact ratios over Γ with both tiebreaks and compare.
    pub cross_check: bool,
    /// Compare every open region with direct tables at its representative.
    pub verify_specialization: bool,
    /// Do not use the class-swapping automorphism; scan all of `(0, ∞)`.
    pub no_mirror: bool,
    pub convention: EdgeConvention,
}

fn mediant(lo: &Bound, hi: &Bound) -> [i64; 2] {
    let (a, b) = lo.fraction();
    let (c, d) = hi.fraction();
    let (num, den) = (a + c, b + d);
    let g = num.gcd(&den);
    [den / g, num / g]
}

fn class_swap(sys: &CoxeterSystem) -> Option<Vec<usize>> {
    let classes = sys.classes();
    sys.diagram_automorphisms().into_iter().find(|p| {
        (0..sys.rank()).all(|s| classes.class_of[p[s]] != classes.class_of[s])
    })
}

struct Computed {
    kind: RegionKind,
    lo: Bound,
    hi: Bound,
    weights: [i64; 2],
    order: Option<String>,
    validity: Option<Interval>,
    prime_validity: Option<Interval>,
    specialization: Option<SpecializationReport>,
    tiebreak_agreement: Option<[TiebreakCheck; 2]>,
    cells: Cells,
}

fn exact_region(sys: &CoxeterSystem, ratio: Rational64, opts: &ScanOptions) -> Result<Computed, WeightsError> {
    let weights = [*ratio.denom(), *ratio.numer()];
    let data = compute_kl(sys, &Params::weight_per_class(sys, &weights)?)?;
    let cells = Cells::new(sys, &data.mu, opts.convention);
    let tiebreak_agreement = if opts.cross_check {
        let mut agree = [TiebreakCheck::default(); 2];
        for (k, tb) in [Tiebreak::I, Tiebreak::J].into_iter().enumerate() {
            let order = MonomialOrder::weighted(weights[0], weights[1], tb).expect("rank two");
            let gamma = compute_kl(sys, &Params::generic(sys, order)?)?;
            let spec = check_specialization(&gamma, &data, &weights);
            let gcells = Cells::new(sys, &specialized_mu(&gamma.mu, &weights), opts.convention);
            agree[k] = TiebreakCheck {
                tiebreak: tb,
                specializes: spec.ok(),
                same_partition: gcells.left.same_blocks(&cells.left),
            };
        }
        Some(agree)
    } else {
        None
    };
    let r = Bound::Finite(ratio);
    Ok(Computed {
        kind: RegionKind::Exact,
        lo: r,
        hi: r,
        weights,
        order: None,
        validity: None,
        prime_validity: None,
        specialization: None,
        tiebreak_agreement,
        cells,
    })
}

/// `σ(M)` with vanishing entries dropped.
pub fn specialized_mu(mu: &MuTable, sigma: &[i64]) -> MuTable {
    let by_w = (0..mu.size())
        .map(|w| {
            mu.entries(w)
                .iter()
                .filter_map(|e| {
                    let m = e.m.specialize(sigma);
                    (!m.is_zero()).then(|| crate::kl::MuEntry { s: e.s, y: e.y, m })
                })
                .collect()
        })
        .collect();
    MuTable { by_w }
}

/// Compute over Γ with `order`; returns the region's data and the validity
/// interval of the order.
fn open_region(
    sys: &CoxeterSystem,
    order: MonomialOrder,
    lo_hint: Option<Bound>,
    hi: Bound,
    opts: &ScanOptions,
) -> Result<Computed, WeightsError> {
    let described = order.describe();
    let gamma = compute_kl(sys, &Params::generic(sys, order.clone())?)?;
    let set = gamma_plus_w(&gamma.kl, &gamma.mu, &order);
    let validity = validity_interval(&set).ok_or(WeightsError::EmptyInterval {
        order: described.clone(),
    })?;
    let lo = lo_hint.map_or(validity.lo, |h| if h.cmp_bound(&validity.lo) == Ordering::Greater { h } else { validity.lo });
    if !validity.covers(&lo, &hi) {
        return Err(WeightsError::IntervalMismatch {
            region: format!("({lo}, {hi})"),
            interval: validity.to_string(),
            order: described,
        });
    }
    let weights = mediant(&lo, &hi);
    let cells = Cells::new(sys, &gamma.mu, opts.convention);
    let prime = gamma_plus_prime_w(&gamma.kl, &gamma.mu, &order, &cells.left);
    let specialization = if opts.verify_specialization {
        let direct = compute_kl(sys, &Params::weight_per_class(sys, &weights)?)?;
        Some(check_specialization(&gamma, &direct, &weights))
    } else {
        None
    };
    Ok(Computed {
        kind: RegionKind::Open,
        lo,
        hi,
        weights,
        order: Some(described),
        prime_validity: validity_interval(&prime.set),
        validity: Some(validity),
        specialization,
        tiebreak_agreement: None,
        cells,
    })
}

/// Split the ratio line into regions on which the cells are constant, by
/// descending from the order where class 1 dominates.
pub fn scan_equivalence_classes(sys: &CoxeterSystem, opts: &ScanOptions) -> Result<ScanReport, WeightsError> {
    let count = sys.classes().count;
    if count != 2 {
        return Err(WeightsError::NotTwoClass(count));
    }
    let swap = if opts.no_mirror { None } else { class_swap(sys) };
    let stop = Rational64::from_integer(if swap.is_some() { 1 } else { 0 });
    let guard = 8 * sys.max_length().pow(3);
    let one = Rational64::from_integer(1);

    let mut computed: Vec<Computed> = Vec::new();
    let mut order = MonomialOrder::lex(2, &[1, 0]).expect("rank two");
    let mut hi = Bound::Infinite;
    let mut steps = 0;
    loop {
        steps += 1;
        if steps > guard {
            return Err(WeightsError::Guard(guard));
        }
        let floor = if swap.is_some() { Some(Bound::Finite(stop)) } else { None };
        let region = open_region(sys, order, floor, hi, opts)?;
        let lo = region.lo;
        computed.push(region);
        let Bound::Finite(r) = lo else { unreachable!("lower ends are finite") };
        if r == Rational64::from_integer(0) {
            break;
        }
        computed.push(exact_region(sys, r, opts)?);
        if swap.is_some() && r == one {
            break;
        }
        order = MonomialOrder::weighted(*r.denom(), *r.numer(), Tiebreak::I).expect("rank two");
        hi = lo;
    }
    computed.reverse();

    let mut regions: Vec<Region> = Vec::new();
    if let Some(perm) = &swap {
        let map = |x: u32| sys.apply_automorphism(perm, x as usize) as u32;
        for c in computed.iter().rev() {
            if c.kind == RegionKind::Exact && c.lo == Bound::Finite(one) {
                continue;
            }
            regions.push(Region {
                kind: c.kind,
                lo: c.hi.inverse(),
                hi: c.lo.inverse(),
                weights: [c.weights[1], c.weights[0]],
                order: None,
                validity: None,
                prime_validity: None,
                mirrored: true,
                specialization: None,
                tiebreak_agreement: None,
                left: c.cells.left.relabel(map),
                two_sided: c.cells.two_sided.relabel(map),
                partition_class: 0,
                symmetric_class: 0,
            });
        }
    }
    for c in computed {
        regions.push(Region {
            kind: c.kind,
            lo: c.lo,
            hi: c.hi,
            weights: c.weights,
            order: c.order,
            validity: c.validity,
            prime_validity: c.prime_validity,
            mirrored: false,
            specialization: c.specialization,
            tiebreak_agreement: c.tiebreak_agreement,
            left: c.cells.left,
            two_sided: c.cells.two_sided,
            partition_class: 0,
            symmetric_class: 0,
        });
    }

    let mut distinct: Vec<Vec<Vec<u32>>> = Vec::new();
    for r in regions.iter_mut() {
        r.partition_class = match distinct.iter().position(|b| *b == r.left.blocks) {
            Some(k) => k,
            None => {
                distinct.push(r.left.blocks.clone());
                distinct.len() - 1
            }
        };
    }
    let mut sym_of: Vec<usize> = (0..distinct.len()).collect();
    if let Some(perm) = &swap {
        let map = |x: u32| sys.apply_automorphism(perm, x as usize) as u32;
        for (k, r) in regions.iter().enumerate() {
            let image = r.left.relabel(map).blocks;
            if let Some(j) = distinct.iter().position(|b| *b == image) {
                let (a, b) = (regions[k].partition_class, j);
                let (a, b) = (sym_of[a].min(sym_of[b]), sym_of[a].max(sym_of[b]));
                for s in sym_of.iter_mut() {
                    if *s == b {
                        *s = a;
                    }
                }
            }
        }
    }
    let mut sym_ids: Vec<usize> = sym_of.clone();
    sym_ids.sort_unstable();
    sym_ids.dedup();
    for r in regions.iter_mut() {
        r.symmetric_class = sym_ids.binary_search(&sym_of[r.partition_class]).expect("present");
    }

    let breakpoints = regions
        .iter()
        .filter(|r| r.kind == RegionKind::Exact)
        .map(|r| r.lo)
        .collect();
    Ok(ScanReport {
        system: sys.spec().name.clone(),
        breakpoints,
        partition_classes: distinct.len(),
        symmetric_classes: sym_ids.len(),
        regions,
        swap,
        steps,
    })
}
