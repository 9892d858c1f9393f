use std::cmp::Ordering;

use proptest::prelude::*;

use klcells::laurent::{Int, LaurentPoly, Monomial, MonomialOrder, Tiebreak};

fn mono(i: i32, j: i32) -> Monomial {
    Monomial::new(&[i, j])
}

fn poly(terms: &[(i32, i32, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().map(|&(i, j, c)| (mono(i, j), Int::from(c))))
}

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i32..=6, -6i32..=6, -20i64..=20), 0..8).prop_map(|t| poly(&t))
}

fn arb_order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::lex(2, &[0, 1]).unwrap()),
        Just(MonomialOrder::lex(2, &[1, 0]).unwrap()),
        (1i64..6, 1i64..6, any::<bool>()).prop_map(|(c, d, t)| {
            MonomialOrder::weighted(c, d, if t { Tiebreak::I } else { Tiebreak::J }).unwrap()
        }),
    ]
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), LaurentPoly::zero());
        prop_assert_eq!(a.mul(&LaurentPoly::one()), a.clone());
        prop_assert_eq!(a.add(&a.neg()), LaurentPoly::zero());
    }

    #[test]
    fn bar_is_a_ring_involution(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
        prop_assert_eq!(a.add(&b).bar(), a.bar().add(&b.bar()));
    }

    #[test]
    fn fused_updates_agree(a in arb_poly(), b in arb_poly(), c in arb_poly(), k in -5i64..5, i in -3i32..3, j in -3i32..3) {
        let mut x = a.clone();
        x.add_mul(&b, &c);
        prop_assert_eq!(&x, &a.add(&b.mul(&c)));
        x.sub_mul(&b, &c);
        prop_assert_eq!(&x, &a);
        let mut y = a.clone();
        y.add_scaled(&Int::from(k), &mono(i, j), &b);
        prop_assert_eq!(y, a.add(&b.shift(&mono(i, j)).scale(&Int::from(k))));
    }

    #[test]
    fn specialization_is_a_ring_map(a in arb_poly(), b in arb_poly(), s in 1i64..5, t in 1i64..5) {
        let w = [s, t];
        prop_assert_eq!(a.mul(&b).specialize(&w), a.specialize(&w).mul(&b.specialize(&w)));
        prop_assert_eq!(a.add(&b).specialize(&w), a.specialize(&w).add(&b.specialize(&w)));
        prop_assert_eq!(a.bar().specialize(&w), a.specialize(&w).bar());
        prop_assert_eq!(a.specialize(&w).eval_at_one(), a.eval_at_one());
    }

    #[test]
    fn orders_are_total_and_compatible(order in arb_order(), i in -8i32..8, j in -8i32..8, k in -8i32..8, l in -8i32..8) {
        let g = mono(i, j);
        let h = mono(k, l);
        let s = order.compare(&g, &h);
        prop_assert_eq!(s == Ordering::Equal, g == h);
        prop_assert_eq!(order.compare(&h, &g), s.reverse());
        prop_assert_eq!(order.compare(&g.mul(&h), &h.mul(&h)), s);
        prop_assert_eq!(order.sign(&g.inv()), order.sign(&g).reverse());
    }

    #[test]
    fn split_reassembles(a in arb_poly(), order in arb_order()) {
        let (pos, c, neg) = a.split(&order);
        let back = pos.add(&LaurentPoly::monomial(Monomial::ONE, c.clone())).add(&neg);
        prop_assert_eq!(back, a.clone());
        prop_assert!(pos.terms().iter().all(|(m, _)| order.is_positive(m)));
        prop_assert!(neg.is_strictly_negative(&order));
        let sym = a.symmetrize_nonneg(&order);
        prop_assert_eq!(sym.bar(), sym.clone());
        let (sp, sc, _) = sym.split(&order);
        prop_assert_eq!(sp, pos);
        prop_assert_eq!(sc, c);
    }

    #[test]
    fn big_coefficients_do_not_overflow(e in 40u32..70) {
        // (1 + x)^e has central binomial coefficients beyond i64 for e ≥ 67.
        let base = poly(&[(0, 0, 1), (1, 0, 1)]);
        let mut p = LaurentPoly::one();
        for _ in 0..e {
            p = p.mul(&base);
        }
        prop_assert_eq!(p.eval_at_one().to_big(), num_bigint::BigInt::from(2).pow(e));
        let q = p.mul(&poly(&[(0, 0, 1), (1, 0, -1)]));
        prop_assert_eq!(q.eval_at_one(), Int::from(0i64));
    }
}

#[test]
fn bar_example() {
    let p = poly(&[(2, -1, 1), (0, 0, 3)]);
    assert_eq!(p.bar(), poly(&[(-2, 1, 1), (0, 0, 3)]));
    assert_eq!(LaurentPoly::zero().bar(), LaurentPoly::zero());
}

#[test]
fn order_examples() {
    let lex_y = MonomialOrder::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
    assert!(lex_y.is_positive(&mono(-5, 1)));
    let w = MonomialOrder::new(2, vec![vec![1, 2], vec![1, 0]]).unwrap();
    assert_eq!(w.sign(&mono(-2, 1)), Ordering::Less);
    assert_eq!(w.compare(&mono(3, 4), &mono(3, 4)), Ordering::Equal);
    assert!(MonomialOrder::new(2, vec![vec![1, 2], vec![2, 4]]).is_err());
    assert_eq!(MonomialOrder::weighted(2, 5, Tiebreak::J).unwrap().describe(), "2,5;0,1");
}

#[test]
fn split_examples() {
    let lex = MonomialOrder::lex(2, &[0, 1]).unwrap();
    let p = poly(&[(1, 0, 1), (-1, 0, -1)]);
    assert_eq!(p.split(&lex), (poly(&[(1, 0, 1)]), Int::from(0i64), poly(&[(-1, 0, -1)])));
    assert_eq!(poly(&[(0, 0, 3)]).split(&lex), (LaurentPoly::zero(), Int::from(3i64), LaurentPoly::zero()));
    let m = poly(&[(1, -1, 1), (-1, 1, 1)]);
    assert_eq!(m.split(&lex), (poly(&[(1, -1, 1)]), Int::from(0i64), poly(&[(-1, 1, 1)])));
    assert_eq!(poly(&[(0, 0, 1), (-1, 0, 1)]).symmetrize_nonneg(&lex), LaurentPoly::one());
    assert_eq!(poly(&[(-1, 2, 4)]).symmetrize_nonneg(&lex), LaurentPoly::zero());
    let q = poly(&[(1, 1, 1), (-3, 0, 7)]);
    assert_eq!(q.symmetrize_nonneg(&lex), poly(&[(1, 1, 1), (-1, -1, 1)]));
}
