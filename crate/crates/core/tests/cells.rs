use std::collections::BTreeSet;

use klcells::cells::{
    check_property_l, check_refinement, left_edges, CellKind, CellPartition, Cells, EdgeConvention, EdgeReason,
};
use klcells::coxeter::CoxeterSystem;
use klcells::kl::{compute_kl, MuTable, Params};
use klcells::laurent::MonomialOrder;

fn sys(name: &str) -> CoxeterSystem {
    CoxeterSystem::new(name.parse().unwrap()).unwrap()
}

fn cells_at(w: &CoxeterSystem, weights: &[i64]) -> Cells {
    let data = compute_kl(w, &Params::weight_per_class(w, weights).unwrap()).unwrap();
    Cells::new(w, &data.mu, EdgeConvention::ModuleClosure)
}

fn generic_cells(w: &CoxeterSystem, order: MonomialOrder) -> (MuTable, Cells) {
    let data = compute_kl(w, &Params::generic(w, order).unwrap()).unwrap();
    let cells = Cells::new(w, &data.mu, EdgeConvention::ModuleClosure);
    (data.mu, cells)
}

/// Left cells straight from the definition: `x ~ y` iff each reaches the
/// other along generating edges (Floyd–Warshall on the relation).
fn brute_left_blocks(w: &CoxeterSystem, mu: &MuTable) -> BTreeSet<Vec<u32>> {
    let n = w.size();
    let mut reach = vec![vec![false; n]; n];
    for (x, row) in reach.iter_mut().enumerate() {
        row[x] = true;
    }
    for e in left_edges(w, mu, EdgeConvention::ModuleClosure) {
        reach[e.from as usize][e.to as usize] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    (0..n)
        .map(|x| (0..n).filter(|&y| reach[x][y] && reach[y][x]).map(|y| y as u32).collect())
        .collect()
}

#[test]
fn scc_blocks_match_brute_force() {
    for name in ["A3", "B3", "I2(6)", "H3"] {
        let w = sys(name);
        let weights: Vec<i64> = (0..w.classes().count as i64).map(|k| k + 1).collect();
        let data = compute_kl(&w, &Params::weight_per_class(&w, &weights).unwrap()).unwrap();
        let cells = Cells::new(&w, &data.mu, EdgeConvention::ModuleClosure);
        let blocks: BTreeSet<Vec<u32>> = cells.left.blocks.iter().cloned().collect();
        assert_eq!(blocks, brute_left_blocks(&w, &data.mu), "{name}");
    }
}

#[test]
fn equal_parameter_type_a_counts() {
    // Left cells of S_n are counted by involutions, two-sided cells by partitions.
    for (name, left, two) in [("A1", 2, 2), ("A2", 4, 3), ("A3", 10, 5)] {
        let w = sys(name);
        let c = cells_at(&w, &[1]);
        assert_eq!((c.left.len(), c.two_sided.len()), (left, two), "{name}");
        assert!(c.consistent());
    }
}

#[test]
fn dihedral_unequal_cells() {
    for m in [4, 6, 8] {
        let w = sys(&format!("I2({m})"));
        let (_, c) = generic_cells(&w, MonomialOrder::lex(2, &[0, 1]).unwrap());
        assert_eq!(c.left.len(), 6, "m={m}");
        let s = w.parse_word("1").unwrap();
        let t = w.parse_word("2").unwrap();
        let tst = w.parse_word("212").unwrap();
        let tw0 = w.lmul(1, w.w0());
        let marks = [0, s, t, tst, tw0, w.w0()];
        let mut hit: Vec<u32> = marks.iter().map(|&x| c.left.block_of[x]).collect();
        hit.sort_unstable();
        hit.dedup();
        assert_eq!(hit.len(), 6, "m={m}: one mark per left cell");
        assert!(check_property_l(&c).holds());
    }
}

#[test]
fn identity_and_longest_element_are_extreme_singletons() {
    for (name, weights) in [("B3", vec![1, 2]), ("A3", vec![1]), ("I2(5)", vec![1])] {
        let w = sys(name);
        let c = cells_at(&w, &weights);
        for p in [&c.left, &c.two_sided] {
            let one = p.block_of[0] as usize;
            let top = p.block_of[w.w0()] as usize;
            assert_eq!(p.blocks[one], vec![0]);
            assert_eq!(p.blocks[top], vec![w.w0() as u32]);
            let reach = p.closure();
            for b in 0..p.len() {
                assert!(reach[top][b] && reach[b][one], "{name}");
            }
        }
    }
}

#[test]
fn right_cells_are_inverse_left_cells() {
    let w = sys("B3");
    let c = cells_at(&w, &[2, 1]);
    assert_eq!(c.right.kind, CellKind::Right);
    for (k, b) in c.left.blocks.iter().enumerate() {
        let inv: BTreeSet<u32> = b.iter().map(|&x| w.inv(x as usize) as u32).collect();
        let rb = c.right.block_of[*inv.iter().next().unwrap() as usize];
        let right: BTreeSet<u32> = c.right.blocks[rb as usize].iter().cloned().collect();
        assert_eq!(inv, right, "left block {k}");
        if b.iter().all(|&x| b.contains(&(w.inv(x as usize) as u32))) {
            assert_eq!(&c.right.blocks[rb as usize], b);
        }
    }
    assert!(c.consistent());
}

#[test]
fn descent_edges_at_identity() {
    let w = sys("A3");
    let data = compute_kl(&w, &Params::weight(&w, &[1, 1, 1]).unwrap()).unwrap();
    let edges = left_edges(&w, &data.mu, EdgeConvention::ModuleClosure);
    for s in 0..w.rank() {
        let sw = w.lmul(s, 0) as u32;
        assert!(edges
            .iter()
            .any(|e| e.from == sw && e.to == 0 && e.reason == EdgeReason::Descent));
    }
}

#[test]
fn verbatim_orientation_gives_singletons() {
    let w = sys("I2(4)");
    let data = compute_kl(&w, &Params::weight(&w, &[2, 1]).unwrap()).unwrap();
    let c = Cells::new(&w, &data.mu, EdgeConvention::Verbatim);
    assert_eq!(c.left.len(), w.size());
}

#[test]
fn property_l_on_b_types() {
    for (name, weights) in [("B3", [1, 1]), ("B3", [2, 1]), ("B3", [1, 3]), ("B4", [1, 2]), ("B4", [3, 1])] {
        let w = sys(name);
        let c = cells_at(&w, &weights);
        let r = check_property_l(&c);
        assert!(r.holds(), "{name} {weights:?}: {:?}", r.violations);
    }
}

#[test]
fn refinement_examples() {
    let w = sys("B3");
    let c = cells_at(&w, &[1, 1]);
    assert!(check_refinement(&c.left, &c.left).is_empty());
    let singletons = CellPartition::from_edges(CellKind::Left, w.size(), std::iter::empty());
    assert!(check_refinement(&c.left, &singletons).is_empty());
    assert!(!check_refinement(&singletons, &c.left).is_empty());
}

#[test]
fn dot_output_lists_every_block() {
    let w = sys("A2");
    let c = cells_at(&w, &[1]);
    let dot = c.two_sided.to_dot("A2", None);
    assert_eq!(dot.matches("[label=").count(), 3);
    assert_eq!(dot.matches(" -> ").count(), c.two_sided.hasse.len());
}
