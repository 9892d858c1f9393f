use num_rational::Rational64;

use klcells::cells::{Cells, EdgeConvention};
use klcells::coxeter::CoxeterSystem;
use klcells::kl::{compute_kl, Params};
use klcells::laurent::{Monomial, MonomialOrder, Tiebreak};
use klcells::weights::{
    asymptotic_class_bound, check_specialization, check_star, distinguished_involutions, gamma_plus_prime_w,
    gamma_plus_w, normalize_weight, scan_equivalence_classes, validity_interval, Bound, MonomialSet, ScanOptions,
    SetTag,
};

fn sys(name: &str) -> CoxeterSystem {
    CoxeterSystem::new(name.parse().unwrap()).unwrap()
}

fn mono(i: i32, j: i32) -> Monomial {
    Monomial::new(&[i, j])
}

fn set(ms: &[(i32, i32)]) -> MonomialSet {
    MonomialSet::from_unsorted(ms.iter().map(|&(i, j)| (mono(i, j), SetTag::GammaA)).collect())
}

fn finite(n: i64, d: i64) -> Bound {
    Bound::Finite(Rational64::new(n, d))
}

#[test]
fn normalize_examples() {
    assert_eq!(normalize_weight(&[2, 2, 4, 4]), vec![1, 1, 2, 2]);
    assert_eq!(normalize_weight(&[1, 1, 1, 1]), vec![1, 1, 1, 1]);
    assert_eq!(normalize_weight(&[6, 6, 9, 9]), vec![2, 2, 3, 3]);
}

#[test]
fn validity_interval_examples() {
    let i = validity_interval(&set(&[(1, 0), (0, 1)])).unwrap();
    assert_eq!((i.lo, i.hi), (finite(0, 1), Bound::Infinite));
    let i = validity_interval(&set(&[(-4, 1), (1, 0)])).unwrap();
    assert_eq!((i.lo, i.hi), (finite(4, 1), Bound::Infinite));
    assert_eq!(i.lo_binding, vec![mono(-4, 1)]);
    let i = validity_interval(&set(&[(-5, 2), (3, -1)])).unwrap();
    assert_eq!((i.lo, i.hi), (finite(5, 2), finite(3, 1)));
    assert!(i.contains_ratio(Rational64::new(11, 4)));
    assert!(!i.contains_ratio(Rational64::from_integer(3)));
    assert!(validity_interval(&set(&[(-1, 0)])).is_none());
    assert!(validity_interval(&set(&[(-3, 1), (2, -1)])).is_none());
}

#[test]
fn f4_gamma_plus_intervals() {
    let w = sys("F4");
    let lex_y = MonomialOrder::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
    let data = compute_kl(&w, &Params::generic(&w, lex_y.clone()).unwrap()).unwrap();
    let g = gamma_plus_w(&data.kl, &data.mu, &lex_y);
    let i = validity_interval(&g).unwrap();
    assert_eq!((i.lo, i.hi), (finite(4, 1), Bound::Infinite));
    assert!(check_star(&[1, 5], &g).is_empty());
    assert!(!check_star(&[1, 4], &g).is_empty());
    assert!(check_star(&[1, 4], &MonomialSet::default()).is_empty());

    let cells = Cells::new(&w, &data.mu, EdgeConvention::ModuleClosure);
    let prime = gamma_plus_prime_w(&data.kl, &data.mu, &lex_y, &cells.left);
    assert!(g.monomials().all(|m| prime.set.contains(m)));
    let ip = validity_interval(&prime.set).unwrap();
    assert_eq!((ip.lo, ip.hi), (finite(9, 1), Bound::Infinite));

    let mid = MonomialOrder::weighted(2, 5, Tiebreak::J).unwrap();
    let data = compute_kl(&w, &Params::generic(&w, mid.clone()).unwrap()).unwrap();
    let i = validity_interval(&gamma_plus_w(&data.kl, &data.mu, &mid)).unwrap();
    assert_eq!((i.lo, i.hi), (finite(5, 2), finite(3, 1)));
}

#[test]
fn dihedral_gamma_plus_is_valid_on_its_side() {
    for m in [4, 6] {
        let w = sys(&format!("I2({m})"));
        let lex_y = MonomialOrder::lex(2, &[1, 0]).unwrap();
        let data = compute_kl(&w, &Params::generic(&w, lex_y.clone()).unwrap()).unwrap();
        let g = gamma_plus_w(&data.kl, &data.mu, &lex_y);
        // Every member is positive for the order it came from.
        assert!(g.monomials().all(|x| lex_y.is_positive(x)), "m={m}");
        let i = validity_interval(&g).unwrap();
        assert_eq!((i.lo, i.hi), (finite(1, 1), Bound::Infinite), "m={m}");
    }
}

#[test]
fn rank_one_gamma_plus_is_the_parameter() {
    let w = sys("A1");
    let order = MonomialOrder::single();
    let data = compute_kl(&w, &Params::generic(&w, order.clone()).unwrap()).unwrap();
    let g = gamma_plus_w(&data.kl, &data.mu, &order);
    let v: Vec<Monomial> = g.monomials().copied().collect();
    assert_eq!(v, vec![*data.params.v(0)]);
}

#[test]
fn dihedral_distinguished_involutions() {
    // The lighter generator s gives singleton cells {s} and {s·w0}; the
    // middle cells are distinguished by t and by sts.
    for m in [4, 6] {
        let w = sys(&format!("I2({m})"));
        for (weights, s, t) in [([1, 2], 0, 1), ([2, 1], 1, 0)] {
            let data = compute_kl(&w, &Params::weight_per_class(&w, &weights).unwrap()).unwrap();
            let cells = Cells::new(&w, &data.mu, EdgeConvention::ModuleClosure);
            let report = distinguished_involutions(&w, &data.kl, &[1], &cells.left);
            assert!(report.ok(), "m={m}: {:?}", report.findings());
            let sts = w.from_word(&[s, t, s]).unwrap();
            let mut expected: Vec<u32> = [0, w.lmul(s, 0), w.lmul(t, 0), sts, w.lmul(s, w.w0()), w.w0()]
                .iter()
                .map(|&x| x as u32)
                .collect();
            expected.sort_unstable();
            assert_eq!(report.involutions(), expected, "m={m} {weights:?}");
            assert_eq!(cells.left.blocks[cells.left.block_of[w.lmul(s, 0)] as usize].len(), 1);
        }
    }
}

#[test]
fn scan_counts() {
    for (name, classes) in [("I2(4)", 3), ("B3", 5)] {
        let w = sys(name);
        let report = scan_equivalence_classes(&w, &ScanOptions::default()).unwrap();
        assert_eq!(report.partition_classes, classes, "{name}");
        // The regions tile the ratio line.
        for pair in report.regions.windows(2) {
            assert_eq!(pair[0].hi, pair[1].lo, "{name}");
        }
        assert_eq!(report.regions[0].lo, finite(0, 1));
        assert_eq!(report.regions.last().unwrap().hi, Bound::Infinite);
        // Weights up to 10 land in a region with the same cells.
        for a in 1..=4 {
            for b in 1..=10 {
                let k = report.locate([a, b]).unwrap();
                let data = compute_kl(&w, &Params::weight_per_class(&w, &[a, b]).unwrap()).unwrap();
                let cells = Cells::new(&w, &data.mu, EdgeConvention::ModuleClosure);
                assert!(cells.left.same_blocks(&report.regions[k].left), "{name} {a},{b}");
            }
        }
    }
}

#[test]
fn asymptotic_bound_is_twice_longest_length() {
    assert_eq!(asymptotic_class_bound(&sys("F4")), 48);
    assert_eq!(asymptotic_class_bound(&sys("B3")), 18);
}

#[test]
fn specialization_of_generic_tables() {
    let w = sys("B3");
    let order = MonomialOrder::lex(2, &[1, 0]).unwrap();
    let gamma = compute_kl(&w, &Params::generic(&w, order).unwrap()).unwrap();
    // B3 with the class of the special generator dominating: valid for large b/a.
    let direct = compute_kl(&w, &Params::weight_per_class(&w, &[1, 7]).unwrap()).unwrap();
    let r = check_specialization(&gamma, &direct, &[1, 7]);
    assert!(r.ok(), "{r:?}");
    assert!(r.p_checked > 0 && r.m_checked > 0);
    let equal = compute_kl(&w, &Params::weight_per_class(&w, &[1, 1]).unwrap()).unwrap();
    assert!(!check_specialization(&gamma, &equal, &[1, 1]).ok());
}
