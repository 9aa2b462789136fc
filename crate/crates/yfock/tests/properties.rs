use proptest::prelude::*;
use yfock::algebraics::{int, PolyU, RatFuncU};
use yfock::daha::{intertwiner_apply, intertwiner_word, phi_simple, WeylElt};
use yfock::tensor_space::{
    apply_dunkl, apply_swap, compose, decompose, BasisTriple, DunklParams, Ranks, SwapKind, TensorVec,
};
use yfock::wedge_fock::{clifford, clifford_finite, wedge_project, CliffordKind, FockWindow, WedgeVec, Window};

fn r22() -> Ranks {
    Ranks::new(2, 2).unwrap()
}

fn ranks_strategy() -> impl Strategy<Value = Ranks> {
    (2i64..4, 2i64..4).prop_map(|(n, l)| Ranks::new(n, l).unwrap())
}

/// `prod (u - a_i) / prod (u - b_j)` with at least as many poles as roots.
fn ratfunc_strategy() -> impl Strategy<Value = RatFuncU> {
    (proptest::collection::vec(-3i64..4, 0..3), proptest::collection::vec(-3i64..4, 3..4)).prop_map(|(a, b)| {
        let num: Vec<_> = a.iter().map(|&x| int(x)).collect();
        let den: Vec<_> = b.iter().map(|&x| int(x)).collect();
        RatFuncU::new(PolyU::from_roots(&num), PolyU::from_roots(&den)).unwrap()
    })
}

fn tensor_strategy(n: usize, kmax: i64) -> impl Strategy<Value = TensorVec> {
    let triple = (1i64..3, 1i64..3, -kmax..=kmax).prop_map(|(kbar, kdot, kund)| BasisTriple { kbar, kdot, kund });
    proptest::collection::vec((proptest::collection::vec(triple, n), -3i64..4), 1..4).prop_map(|terms| {
        let r = r22();
        let mut v = TensorVec::zero(r, terms[0].0.len());
        for (t, c) in terms {
            v.add_scaled(&TensorVec::from_triples(r, &t), &int(c));
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_is_multiplicative(f in ratfunc_strategy(), g in ratfunc_strategy(), k in 0usize..6) {
        let fg = f.mul(&g).expand(k).unwrap();
        prop_assert_eq!(fg, f.expand(k).unwrap().mul(&g.expand(k).unwrap()));
    }

    #[test]
    fn compose_inverts_decompose(r in ranks_strategy(), k in -200i64..200) {
        prop_assert_eq!(compose(decompose(k, r), r), k);
        let t = decompose(k, r);
        prop_assert!((1..=r.n).contains(&t.kbar) && (1..=r.l).contains(&t.kdot));
    }

    #[test]
    fn decompose_inverts_compose(r in ranks_strategy(), a in 1i64..4, b in 1i64..4, c in -20i64..20) {
        let t = BasisTriple { kbar: (a - 1) % r.n + 1, kdot: (b - 1) % r.l + 1, kund: c };
        prop_assert_eq!(decompose(compose(t, r), r), t);
    }

    #[test]
    fn dunkl_operators_commute(v in tensor_strategy(4, 2), i in 0usize..4, j in 0usize..4) {
        let p = DunklParams::standard(r22());
        let a = apply_dunkl(i, &p, &apply_dunkl(j, &p, &v).unwrap()).unwrap();
        let b = apply_dunkl(j, &p, &apply_dunkl(i, &p, &v).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn wedge_is_antisymmetric(v in tensor_strategy(3, 2), i in 0usize..2) {
        let t = apply_swap(SwapKind::Full, i, i + 1, &v).unwrap();
        prop_assert_eq!(wedge_project(&t), wedge_project(&v).scale(&int(-1)));
    }

    #[test]
    fn clifford_anticommutes(seq in proptest::collection::btree_set(-6i64..6, 1..4), a in -6i64..6, b in -6i64..6) {
        let r = r22();
        let key: Vec<i64> = seq.into_iter().rev().collect();
        let w = WedgeVec::basis(r, &key);
        use CliffordKind::*;
        let op = |k1, x: i64, k2, y: i64| clifford_finite(k1, x, &clifford_finite(k2, y, &w));
        let cc = op(Create, a, Create, b).add(&op(Create, b, Create, a));
        let aa = op(Annihilate, a, Annihilate, b).add(&op(Annihilate, b, Annihilate, a));
        let ca = op(Create, a, Annihilate, b).add(&op(Annihilate, b, Create, a));
        prop_assert!(cc.is_zero());
        prop_assert!(aa.is_zero());
        if a == b {
            prop_assert_eq!(ca, w);
        } else {
            prop_assert!(ca.is_zero());
        }
    }

    #[test]
    fn intertwiner_is_word_independent(
        lambda in proptest::collection::vec(-1i64..2, 3),
        perm in 0usize..6,
        v in tensor_strategy(3, 1),
    ) {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let w = WeylElt::translation(lambda).mul(&WeylElt::permutation(perms[perm].to_vec()));
        prop_assume!(w.length() <= 4);
        let p = DunklParams::standard(r22());
        let (k1, w1) = w.reduced_word();
        let (k2, w2) = w.alternative_word();
        prop_assert_eq!(w1.len(), w.length());
        prop_assert_eq!(w2.len(), w.length());
        let a = intertwiner_word(k1, &w1, &p, &v).unwrap();
        let b = intertwiner_word(k2, &w2, &p, &v).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a, intertwiner_apply(&w, &p, &v).unwrap());
    }

    #[test]
    fn intertwiner_braid_relation(v in tensor_strategy(3, 2), i in 0usize..3) {
        let p = DunklParams::standard(r22());
        let j = (i + 1) % 3;
        let word = |a, b| {
            phi_simple(a, &p, &phi_simple(b, &p, &phi_simple(a, &p, &v).unwrap()).unwrap()).unwrap()
        };
        prop_assert_eq!(word(i, j), word(j, i));
    }
}

#[test]
fn clifford_respects_the_window_tail() {
    let w = FockWindow::vacuum(Window::new(r22(), 0, 1, 1).unwrap());
    let top = w.window.tail_top();
    assert!(clifford(CliffordKind::Create, top, &w).unwrap().is_zero());
    assert!(clifford(CliffordKind::Annihilate, top, &w).is_err());
    let out = clifford(CliffordKind::Annihilate, 0, &w).unwrap();
    assert_eq!(out.window.m, -1);
}
