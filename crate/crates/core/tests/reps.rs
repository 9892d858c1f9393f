use std::path::PathBuf;

use klcells::cells::{Cells, EdgeConvention};
use klcells::coxeter::CoxeterSystem;
use klcells::kl::{compute_kl, Params};
use klcells::laurent::{Int, LaurentPoly, Monomial, MonomialOrder};
use klcells::reps::{
    cell_action_matrix, cell_character, decompose_cells, generate, is_regular, satisfies_quadratic, CharacterTable,
    CharacterTableFile, Decomposition, SpecializedAction,
};

fn sys(name: &str) -> CoxeterSystem {
    CoxeterSystem::new(name.parse().unwrap()).unwrap()
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn shipped(w: &CoxeterSystem) -> CharacterTable {
    CharacterTable::load(&data_dir().join("chartables").join(format!("{}.json", w.spec().name)), w).unwrap()
}

#[test]
fn shipped_tables_equal_generated_ones() {
    for name in ["A1", "A2", "A3", "B2", "B3", "B4", "G2", "F4"] {
        let w = sys(name);
        let generated = generate::weyl_table(&w).unwrap();
        let path = data_dir().join("chartables").join(format!("{name}.json"));
        let file: CharacterTableFile = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        assert_eq!(generated.to_file(&w), file, "{name}");
        assert_eq!(shipped(&w), generated);
    }
}

#[test]
fn table_shapes() {
    let f4 = shipped(&sys("F4"));
    assert_eq!(f4.labels.len(), 25);
    assert_eq!(f4.classes.len(), 25);
    for label in ["1_1", "1_4", "4_5", "9_4", "16_1", "12_1", "8_4"] {
        assert!(f4.index_of(label).is_some(), "{label}");
    }
    let sum: i64 = f4.values.iter().map(|r| r[0] * r[0]).sum();
    assert_eq!(sum, 1152);
    let a1 = shipped(&sys("A1"));
    assert_eq!(a1.values, vec![vec![1, 1], vec![1, -1]]);
    let i4 = generate::dihedral_table(&sys("I2(4)")).unwrap();
    assert_eq!(i4.labels.len(), 5);
    assert_eq!(generate::dihedral_table(&sys("I2(8)")).unwrap().norms.iter().sum::<i64>(), 7);
}

#[test]
fn column_orthogonality() {
    for name in ["B3", "F4"] {
        let t = shipped(&sys(name));
        let k = t.classes.len();
        for a in 0..k {
            for b in 0..k {
                let s: i64 = t.values.iter().map(|r| r[a] * r[b]).sum();
                let expected = if a == b { (t.order / t.classes[a].size) as i64 } else { 0 };
                assert_eq!(s, expected, "{name} columns {a} {b}");
            }
        }
    }
}

#[test]
fn decomposition_text_round_trips() {
    let d = Decomposition::parse("9_3+6_1+12_1+4_4+2*16_1").unwrap();
    assert_eq!(d.to_string(), "9_3+6_1+12_1+4_4+2*16_1");
    assert_eq!(d.labels().count(), 5);
    assert_eq!(
        Decomposition::parse("6_1+16_1+12_1").unwrap().canonical(),
        Decomposition::parse("12_1+6_1+16_1").unwrap().canonical()
    );
    assert!(Decomposition::parse("2*").is_none());
}

#[test]
fn trivial_and_sign_cells() {
    let w = sys("B3");
    let data = compute_kl(&w, &Params::weight_per_class(&w, &[1, 2]).unwrap()).unwrap();
    let t = shipped(&w);
    let trivial = cell_character(&w, &data, &[0], &t.classes);
    assert!(trivial.iter().all(|&x| x == 1));
    let sign = cell_character(&w, &data, &[w.w0() as u32], &t.classes);
    for (c, &x) in t.classes.iter().zip(&sign) {
        assert_eq!(x, if w.len(c.representative) % 2 == 0 { 1 } else { -1 });
    }
    assert_eq!(t.decompose(&trivial).unwrap().to_string(), "phi1,0");
}

#[test]
fn type_a_left_cells_are_irreducible() {
    let w = sys("A3");
    let data = compute_kl(&w, &Params::weight(&w, &[1, 1, 1]).unwrap()).unwrap();
    let cells = Cells::new(&w, &data.mu, EdgeConvention::ModuleClosure);
    let t = shipped(&w);
    let dec = decompose_cells(&w, &data, &t, &cells.left.blocks).unwrap();
    for d in &dec {
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[0].1, 1);
    }
    // Each irreducible occurs as often as its degree.
    for (label, row) in t.labels.iter().zip(&t.values) {
        let n = dec.iter().filter(|d| d.parts[0].0 == *label).count() as i64;
        assert_eq!(n, row[0], "{label}");
    }
    let chars: Vec<Vec<i64>> = cells.left.blocks.iter().map(|b| cell_character(&w, &data, b, &t.classes)).collect();
    assert!(is_regular(&t, &chars));
}

#[test]
fn cell_modules_satisfy_hecke_relations() {
    let w = sys("B3");
    let order = MonomialOrder::lex(2, &[1, 0]).unwrap();
    let data = compute_kl(&w, &Params::generic(&w, order).unwrap()).unwrap();
    let cells = Cells::new(&w, &data.mu, EdgeConvention::ModuleClosure);
    for b in &cells.left.blocks {
        for s in 0..w.rank() {
            let mat = cell_action_matrix(&w, &data, b, s);
            assert!(satisfies_quadratic(&mat, data.params.v(s)));
        }
        assert!(SpecializedAction::new(&w, &data, b).satisfies_relations(&w, b.len()));
    }
}

#[test]
fn longest_element_cell_acts_by_minus_inverse_parameter() {
    let w = sys("I2(4)");
    let data = compute_kl(&w, &Params::generic(&w, MonomialOrder::lex(2, &[0, 1]).unwrap()).unwrap()).unwrap();
    for s in 0..2 {
        let mat = cell_action_matrix(&w, &data, &[w.w0() as u32], s);
        let expected = LaurentPoly::monomial(data.params.v(s).inv(), Int::from(-1i64));
        assert_eq!(mat, vec![vec![expected]]);
    }
    let mat = cell_action_matrix(&w, &data, &[0], 0);
    assert_eq!(mat[0][0], LaurentPoly::monomial(Monomial::unit(0), Int::ONE));
}

#[test]
fn f4_equal_parameter_cells() {
    let w = sys("F4");
    let data = compute_kl(&w, &Params::weight_per_class(&w, &[1, 1]).unwrap()).unwrap();
    let cells = Cells::new(&w, &data.mu, EdgeConvention::ModuleClosure);
    assert_eq!(cells.left.len(), 72);
    let t = shipped(&w);
    let dec = decompose_cells(&w, &data, &t, &cells.left.blocks).unwrap();
    let texts: Vec<Vec<(String, i64)>> = dec.iter().map(|d| d.canonical()).collect();
    for expected in ["4_1+9_2+9_3+6_2+12_1+2*16_1", "9_3+6_1+12_1+4_4+16_1", "1_1", "1_4"] {
        let e = Decomposition::parse(expected).unwrap().canonical();
        assert!(texts.contains(&e), "{expected}");
    }
}
