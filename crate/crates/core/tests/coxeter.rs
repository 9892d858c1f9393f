use std::collections::BTreeSet;

use klcells::coxeter::{bruhat_leq_subword, BruhatOrder, CoxeterSpec, CoxeterSystem};

fn sys(name: &str) -> CoxeterSystem {
    CoxeterSystem::new(name.parse().unwrap()).unwrap()
}

#[test]
fn group_orders_and_longest_lengths() {
    for (name, size, l0) in [
        ("A1", 2, 1),
        ("A2", 6, 3),
        ("A3", 24, 6),
        ("B3", 48, 9),
        ("B4", 384, 16),
        ("D4", 192, 12),
        ("H3", 120, 15),
        ("F4", 1152, 24),
        ("I2(4)", 8, 4),
        ("I2(5)", 10, 5),
        ("I2(8)", 16, 8),
        ("A1xA1", 4, 2),
    ] {
        let w = sys(name);
        assert_eq!(w.size(), size, "{name}");
        assert_eq!(w.max_length(), l0, "{name}");
        assert_eq!(w.len(w.w0()), l0, "{name}");
    }
}

#[test]
fn presets_match_matrices() {
    assert_eq!(CoxeterSpec::f4().matrix, "F4".parse::<CoxeterSpec>().unwrap().matrix);
    assert_eq!(CoxeterSpec::i2(6).matrix, vec![vec![1, 6], vec![6, 1]]);
    assert!("X9".parse::<CoxeterSpec>().is_err());
}

#[test]
fn elements_are_ordered_by_length() {
    let w = sys("B3");
    assert_eq!(w.len(0), 0);
    for x in 1..w.size() {
        assert!(w.len(x - 1) <= w.len(x));
    }
    let hist = w.length_histogram();
    assert_eq!(hist.iter().sum::<usize>(), 48);
    // Poincaré polynomial of B3 is [2][4][6], symmetric.
    let rev: Vec<usize> = hist.iter().rev().cloned().collect();
    assert_eq!(hist, rev);
}

#[test]
fn multiplication_tables_are_consistent() {
    let w = sys("F4");
    for x in 0..w.size() {
        for s in 0..w.rank() {
            assert_eq!(w.lmul(s, w.lmul(s, x)), x);
            assert_eq!(w.rmul(w.rmul(x, s), s), x);
            // s x^{-1} = (x s)^{-1}
            assert_eq!(w.lmul(s, w.inv(x)), w.inv(w.rmul(x, s)));
            assert_ne!(w.len(w.lmul(s, x)), w.len(x));
        }
        assert_eq!(w.inv(w.inv(x)), x);
        let word: Vec<usize> = w.word(x).iter().map(|&g| g as usize).collect();
        assert_eq!(w.from_word(&word), Some(x));
        assert_eq!(w.parse_word(&w.word_text(x)).unwrap(), x);
    }
}

#[test]
fn w0_has_every_descent() {
    let w = sys("B4");
    let w0 = w.w0();
    for s in 0..w.rank() {
        assert!(w.is_left_descent(s, w0));
        assert!(w.is_right_descent(w0, s));
    }
}

#[test]
fn bruhat_order_matches_subword_criterion() {
    for name in ["A3", "B3", "I2(4)", "H3"] {
        let w = sys(name);
        let b = BruhatOrder::new(&w);
        for x in 0..w.size() {
            assert!(b.leq(0, x));
            assert!(b.leq(x, w.w0()));
            for y in 0..w.size() {
                assert_eq!(b.leq(y, x), bruhat_leq_subword(&w, y, x), "{name} {y} {x}");
            }
        }
    }
}

#[test]
fn dihedral_bruhat_is_by_length() {
    let w = sys("I2(4)");
    let b = BruhatOrder::new(&w);
    let sts = w.parse_word("121").unwrap();
    let tst = w.parse_word("212").unwrap();
    assert!(!b.leq(sts, tst));
    for x in 0..w.size() {
        for y in 0..w.size() {
            assert_eq!(b.leq(y, x), y == x || w.len(y) < w.len(x));
        }
    }
}

#[test]
fn generator_classes() {
    let f4 = sys("F4");
    assert_eq!(f4.classes().count, 2);
    assert_eq!(f4.classes().members(0), vec![0, 1]);
    assert_eq!(f4.classes().members(1), vec![2, 3]);
    assert_eq!(sys("A3").classes().count, 1);
    assert_eq!(sys("I2(6)").classes().count, 2);
    assert_eq!(sys("I2(5)").classes().count, 1);
    assert_eq!(sys("B4").classes().members(0), vec![0]);
}

/// Conjugacy classes by brute-force orbits.
fn orbit_count(w: &CoxeterSystem) -> Vec<usize> {
    let mut seen = vec![false; w.size()];
    let mut sizes = Vec::new();
    for x in 0..w.size() {
        if seen[x] {
            continue;
        }
        let mut orbit = BTreeSet::from([x]);
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for s in 0..w.rank() {
                let z = w.rmul(w.lmul(s, y), s);
                if orbit.insert(z) {
                    stack.push(z);
                }
            }
        }
        for &y in &orbit {
            seen[y] = true;
        }
        sizes.push(orbit.len());
    }
    sizes.sort_unstable();
    sizes
}

#[test]
fn conjugacy_classes_match_orbits() {
    for (name, count) in [("A1", 2), ("I2(4)", 5), ("A3", 5), ("B3", 10), ("B4", 20), ("F4", 25)] {
        let w = sys(name);
        let classes = w.conjugacy_classes();
        assert_eq!(classes.len(), count, "{name}");
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, orbit_count(&w), "{name}");
        let map = w.class_map(&classes);
        for (k, c) in classes.iter().enumerate() {
            assert_eq!(map[c.representative], k);
        }
    }
}

#[test]
fn diagram_automorphisms() {
    let f4 = sys("F4");
    let autos = f4.diagram_automorphisms();
    assert!(autos.contains(&vec![3, 2, 1, 0]));
    let swap = vec![3, 2, 1, 0];
    for x in 0..f4.size() {
        let y = f4.apply_automorphism(&swap, x);
        assert_eq!(f4.len(y), f4.len(x));
        assert_eq!(f4.apply_automorphism(&swap, y), x);
    }
    assert_eq!(sys("B3").diagram_automorphisms().len(), 1);
}
