use std::collections::BTreeMap;

use hhh_core::bimodule::{word_bimodule, GradedBimodule};
use hhh_core::braid::BraidWord;
use hhh_core::hecke::{homfly, HeckeElement, Homfly};
use hhh_core::hochschild::koszul_hh_complex;
use hhh_core::homology::{compare_up_to_shift, hhh, HhhPlan};
use hhh_core::rouquier::{braid_complex, validate_complex};
use hhh_core::{demazure_split, poly_mul, transposition_action, LaurentPoly, Mono, Poly, Rational};
use proptest::prelude::*;

const NVARS: usize = 3;

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::array::uniform3(0u32..3), -4i64..5), 0..6).prop_map(|terms| {
        Poly::from_terms(
            NVARS,
            terms.into_iter().map(|(e, c)| (Mono::from_exponents(&e), Rational::from_int(c))).collect(),
        )
    })
}

fn letters(m: usize, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    let k = m as i32 - 1;
    prop::collection::vec((1..=k, any::<bool>()).prop_map(|(i, s)| if s { i } else { -i }), 0..=max_len)
}

fn word(max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2usize..=3).prop_flat_map(move |m| letters(m, max_len).prop_map(move |l| BraidWord::new(m, l).unwrap()))
}

proptest! {
    #[test]
    fn transposition_is_an_involution(p in poly(), i in 1usize..=NVARS) {
        let once = transposition_action(i, &p).unwrap();
        prop_assert_eq!(transposition_action(i, &once).unwrap(), p);
    }

    #[test]
    fn demazure_split_reassembles(p in poly(), i in 1usize..=NVARS) {
        let (sym, quot) = demazure_split(i, &p).unwrap();
        let yi = Poly::var(NVARS, i - 1);
        prop_assert_eq!(sym.add(&yi.mul(&quot)), p);
        prop_assert_eq!(transposition_action(i, &sym).unwrap(), sym);
        prop_assert_eq!(transposition_action(i, &quot).unwrap(), quot);
    }

    #[test]
    fn transpositions_satisfy_braid_relation(p in poly(), i in 1usize..NVARS) {
        let s = |j: usize, x: &Poly| transposition_action(j, x).unwrap();
        prop_assert_eq!(s(i, &s(i + 1, &s(i, &p))), s(i + 1, &s(i, &s(i + 1, &p))));
    }

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        let m = |x: &Poly, y: &Poly| poly_mul(x, y).unwrap();
        prop_assert_eq!(m(&a, &b), m(&b, &a));
        prop_assert_eq!(m(&m(&a, &b), &c), m(&a, &m(&b, &c)));
        prop_assert_eq!(m(&a, &b.add(&c)), m(&a, &b).add(&m(&a, &c)));
    }
}

fn bimodule_word() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (2usize..=4).prop_flat_map(|m| (Just(m), prop::collection::vec(1..m, 0..=3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tensor_is_associative_and_ranks_multiply((m, w) in bimodule_word(), i in 1usize..=3, j in 1usize..=3) {
        let (i, j) = (1 + (i - 1) % (m - 1), 1 + (j - 1) % (m - 1));
        let a = word_bimodule(m, &w).unwrap();
        let (b, c) = (GradedBimodule::elementary(m, i).unwrap(), GradedBimodule::elementary(m, j).unwrap().shift(2));
        prop_assert!(a.validate().is_ok());
        let left = a.tensor(&b).unwrap().tensor(&c).unwrap();
        let right = a.tensor(&b.tensor(&c).unwrap()).unwrap();
        prop_assert_eq!(left.degrees(), right.degrees());
        prop_assert_eq!(left.actions(), right.actions());
        prop_assert_eq!(a.tensor(&c).unwrap().graded_rank(), a.graded_rank().mul(&c.graded_rank()));
    }

    #[test]
    fn koszul_complex_is_additive((m, w) in bimodule_word(), i in 1usize..=3, k in -2i32..=2) {
        let i = 1 + (i - 1) % (m - 1);
        let a = word_bimodule(m, &w).unwrap();
        let b = GradedBimodule::elementary(m, i).unwrap().shift(2 * k);
        let sum = koszul_hh_complex(&a.direct_sum(&b).unwrap());
        let (ca, cb) = (koszul_hh_complex(&a), koszul_hh_complex(&b));
        // copy I of a ⊕ b lists the generators of a, then those of b
        let (ra, rb) = (a.rank(), b.rank());
        let place = |gen: usize, in_b: bool| {
            if in_b { (gen / rb) * (ra + rb) + ra + gen % rb } else { (gen / ra) * (ra + rb) + gen % ra }
        };
        for (h, degs) in &sum.terms {
            let mut expect = vec![0; degs.len()];
            for (g, d) in ca.terms[h].iter().enumerate() { expect[place(g, false)] = *d; }
            for (g, d) in cb.terms[h].iter().enumerate() { expect[place(g, true)] = *d; }
            prop_assert_eq!(degs, &expect);
        }
        for (h, d) in &sum.diffs {
            let mut expect: Vec<BTreeMap<usize, Poly>> = vec![BTreeMap::new(); d.ncols()];
            for (c, in_b) in [(&ca, false), (&cb, true)] {
                for (col, entries) in c.diffs[h].cols.iter().enumerate() {
                    for (row, p) in entries {
                        expect[place(col, in_b)].insert(place(*row, in_b), p.clone());
                    }
                }
            }
            for (col, entries) in d.cols.iter().enumerate() {
                let got: BTreeMap<usize, Poly> = entries.iter().cloned().collect();
                prop_assert_eq!(&got, &expect[col]);
            }
        }
    }

    #[test]
    fn braid_complexes_are_complexes_with_binomial_census(w in word(4)) {
        let c = braid_complex(&w).unwrap();
        prop_assert!(validate_complex(&c).is_ok());
        // positive crossings contribute t in {-1, 0}, negative ones {0, 1}
        let mut expect: BTreeMap<i32, usize> = BTreeMap::from([(0, 1)]);
        for &l in w.letters() {
            let step = if l > 0 { -1 } else { 1 };
            let mut next = BTreeMap::new();
            for (t, n) in expect {
                *next.entry(t).or_insert(0) += n;
                *next.entry(t + step).or_insert(0) += n;
            }
            expect = next;
        }
        let mut got: BTreeMap<i32, usize> = BTreeMap::new();
        for (t, _, _) in c.census() { *got.entry(t).or_insert(0) += 1; }
        prop_assert_eq!(got, expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn reduction_preserves_hhh(w in word(4)) {
        prop_assert_eq!(hhh(&w, 8, true).unwrap(), hhh(&w, 8, false).unwrap());
    }

    #[test]
    fn conjugation_invariance(w in word(4), k in 0usize..4) {
        let (a, b) = (hhh(&w, 12, true).unwrap(), hhh(&w.rotate(k), 12, true).unwrap());
        prop_assert!(compare_up_to_shift(&a, &b).is_some(), "{:?} vs {:?}", a, b);
    }

    #[test]
    fn slices_are_order_independent(w in word(4)) {
        let plan = HhhPlan::new(&w, 8, true).unwrap();
        let forward: Vec<_> = plan.q_values().into_iter().flat_map(|q| plan.compute_q(q).unwrap()).collect();
        let mut backward: Vec<_> = plan.q_values().into_iter().rev().flat_map(|q| plan.compute_q(q).unwrap()).collect();
        backward.sort();
        let mut sorted = forward.clone();
        sorted.sort();
        prop_assert_eq!(sorted, backward);
    }
}

fn hecke_word(m: usize) -> impl Strategy<Value = HeckeElement> {
    letters(m, 4).prop_map(move |l| hhh_core::hecke::braid_image(&BraidWord::new(m, l).unwrap()))
}

/// `h` rewritten over `(1 - q^2)^d`.
fn over(h: &Homfly, d: u32) -> LaurentPoly {
    let f = LaurentPoly::one().sub(&LaurentPoly::x(2));
    h.numerator.mul(&f.pow(d - h.denominator))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hecke_associativity((x, y, z) in (2usize..=4).prop_flat_map(|m| (hecke_word(m), hecke_word(m), hecke_word(m)))) {
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn homfly_markov_invariance(w in word(5), k in 0usize..5, positive in any::<bool>()) {
        let p = homfly(&w);
        prop_assert_eq!(&homfly(&w.rotate(k)), &p);
        prop_assert_eq!(&homfly(&w.stabilize(positive)), &p);
    }

    #[test]
    fn homfly_skein(w in word(4), i in 1usize..=2) {
        // T - q^2 T^{-1} = q^2 - 1 gives v^{-1} P(βσ) - q^2 v P(βσ^{-1}) = (q^2 - 1) P(β)
        let i = 1 + (i - 1) % (w.strands() - 1);
        let plus = homfly(&w.concat(&BraidWord::new(w.strands(), vec![i as i32]).unwrap()).unwrap());
        let minus = homfly(&w.concat(&BraidWord::new(w.strands(), vec![-(i as i32)]).unwrap()).unwrap());
        let zero = homfly(&w);
        let d = plus.denominator.max(minus.denominator).max(zero.denominator);
        let lhs = over(&plus, d).shift(0, -1).sub(&over(&minus, d).shift(2, 1));
        let rhs = over(&zero, d).mul(&LaurentPoly::x(2).sub(&LaurentPoly::one()));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn far_commutation_in_hecke() {
    for m in 3usize..=5 {
        for i in 1..m {
            for j in 1..m {
                if i.abs_diff(j) > 1 {
                    let (a, b) = (HeckeElement::generator(m, i), HeckeElement::generator(m, j));
                    assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
                }
            }
        }
    }
}
