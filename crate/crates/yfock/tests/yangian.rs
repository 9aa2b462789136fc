use proptest::prelude::*;
use yfock::affine_actions::{act_fock, h_chi, op_fock, uprime_subspace, AffineGen, Chevalley};
use yfock::algebraics::int;
use yfock::daha::{is_regular_pairing, RegSeq};
use yfock::diagrams::{enumerate, SemiDiagram};
use yfock::tensor_space::{apply_swap, DunklParams, Ranks, SwapKind, TensorVec};
use yfock::wedge_fock::{embed_tail, restrict, wedge_project, FockWindow, WedgeVec, Window};
use yfock::yangian::{
    intertwining_check, phi_norm, psi_r, q1_check, q2_check, rtt_check, stability_check, that_column,
    verify_hw_finite, verify_hw_fock, Report, Yangian,
};

fn r22() -> Ranks {
    Ranks::new(2, 2).unwrap()
}

fn assert_pass(rep: &Report) {
    assert!(rep.passed(), "{}", rep.to_json());
}

fn low_diagrams() -> Vec<SemiDiagram> {
    enumerate(r22(), 1).into_iter().flatten().collect()
}

#[test]
fn finite_highest_weight() {
    for sd in low_diagrams() {
        let r = sd.finite_part(sd.degree().max(1)).unwrap().r().unwrap();
        assert_pass(&verify_hw_finite(&r, 2, 4).unwrap());
    }
}

#[test]
fn fock_highest_weight() {
    for sd in low_diagrams() {
        let hw = verify_hw_fock(&sd, 4).unwrap();
        assert_pass(&hw.report);
    }
}

#[test]
fn rtt_on_small_window() {
    let r = r22();
    let w = Window::new(r, 0, 1, 1).unwrap();
    assert_pass(&rtt_check(w, &DunklParams::standard(r), 3).unwrap());
}

#[test]
fn intertwining_and_stability() {
    let r = r22();
    let w = Window::new(r, 0, 1, 1).unwrap();
    assert_pass(&intertwining_check(w, &DunklParams::standard(r), 3).unwrap());
    assert_pass(&stability_check(w, 3).unwrap());
}

#[test]
fn q_embedding() {
    let w = Window::new(r22(), 0, 1, 1).unwrap();
    assert_pass(&q1_check(w).unwrap());
    assert_pass(&q2_check(w).unwrap());
}

#[test]
fn q_embedding_with_nonzero_d_symbol() {
    // N = 3 is the smallest rank where the W-term survives.
    let w = Window::new(Ranks::new(3, 2).unwrap(), 0, 1, 1).unwrap();
    assert_pass(&q1_check(w).unwrap());
    assert_pass(&q2_check(w).unwrap());
    let w = Window::new(Ranks::new(2, 3).unwrap(), 0, 1, 1).unwrap();
    assert_pass(&q2_check(w).unwrap());
}

#[test]
fn intertwining_at_other_charges() {
    let r = r22();
    for m in [-1, 1, 3] {
        let w = Window::new(r, m, 1, 1).unwrap();
        assert_pass(&intertwining_check(w, &DunklParams::standard(r), 3).unwrap());
    }
    let r = Ranks::new(2, 3).unwrap();
    let w = Window::new(r, 0, 0, 0).unwrap();
    assert_pass(&intertwining_check(w, &DunklParams::standard(r), 3).unwrap());
}

fn window_vectors(w: Window) -> Vec<FockWindow> {
    w.basis().iter().map(|k| FockWindow::basis(w, k).unwrap()).collect()
}

#[test]
fn qdet_is_central() {
    let r = r22();
    let w = Window::new(r, 0, 1, 1).unwrap();
    let y = Yangian::normalized(r, DunklParams::standard(r), 3, 0);
    for v in window_vectors(w) {
        let dv = y.qdet_series(&v.vec).unwrap();
        for s in 1..=2 {
            for t in 1..=2 {
                for m in 1..=3usize {
                    for k in 1..=3 - m {
                        let a = y.apply(s, t, m, &dv[k]).unwrap();
                        let b = y.qdet_series(&y.apply(s, t, m, &v.vec).unwrap()).unwrap()[k].clone();
                        assert_eq!(a, b, "T{s}{t}^({m}) against Delta^({k})");
                    }
                }
            }
        }
    }
}

#[test]
fn action_preserves_degree_and_spin_weight() {
    let r = r22();
    let w = Window::new(r, 0, 2, 2).unwrap();
    let y = Yangian::normalized(r, DunklParams::standard(r), 3, 0);
    for v in window_vectors(w) {
        let d = v.homogeneous_degree().unwrap();
        let key = v.vec.terms().keys().next().unwrap().clone();
        let phi = phi_norm(r, &y.params, 0, &key).unwrap();
        for t in 1..=2 {
            for ser in y.column(t, &v.vec).unwrap() {
                for x in ser.iter().filter(|x| !x.is_zero()) {
                    let fx = FockWindow::new(w, x.clone()).unwrap();
                    assert_eq!(fx.homogeneous_degree(), Some(d));
                    for k in x.terms().keys() {
                        assert_eq!(phi_norm(r, &y.params, 0, k).unwrap(), phi);
                    }
                }
            }
        }
    }
}

#[test]
fn uprime_subspace_is_invariant() {
    let r = r22();
    let chi = [0, 0];
    let y = Yangian::normalized(r, DunklParams::standard(r), 2, 0);
    for d in 1..=2 {
        let u = uprime_subspace(r, &chi, 0, d, d).unwrap();
        let w = u.window;
        let mut gens: Vec<FockWindow> = Vec::new();
        for k in w.basis_of_degree(d) {
            let v = FockWindow::basis(w, &k).unwrap();
            gens.push(op_fock(&h_chi(r, 1, &chi).unwrap(), &v).unwrap());
            gens.push(act_fock(AffineGen::SlL(Chevalley::F, 1), &v).unwrap());
        }
        for k in w.basis_of_degree(d - 1) {
            let v = FockWindow::basis(w, &k).unwrap();
            gens.push(act_fock(AffineGen::SlL(Chevalley::F, 0), &v).unwrap());
        }
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let g = FockWindow::new(w, g.vec.clone()).unwrap();
            assert!(u.contains(&g));
            for s in 1..=2 {
                for t in 1..=2 {
                    for x in y.fock_series(s, t, &g).unwrap() {
                        assert!(u.contains(&x), "T{s}{t} leaves U' at degree {d}");
                    }
                }
            }
        }
    }
}

#[test]
fn distinct_diagrams_have_distinct_qdet_series() {
    let sds: Vec<SemiDiagram> = enumerate(r22(), 2).into_iter().flatten().collect();
    let mut seen = Vec::new();
    for sd in &sds {
        let hw = verify_hw_fock(sd, 4).unwrap();
        assert_pass(&hw.report);
        let delta = hw.delta.unwrap();
        assert!(!seen.contains(&delta));
        seen.push(delta);
    }
}

#[test]
fn psi_rejects_tall_columns() {
    let r = RegSeq::new(2, vec![1, 1, 2, 2]).unwrap();
    assert!(psi_r(&r, 1).is_err());
    let not_regular = RegSeq::new(2, vec![-1, 0, 0, 1]);
    if let Ok(nr) = not_regular {
        if !is_regular_pairing(&nr) {
            assert!(psi_r(&nr, 2).is_err());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wedge_kernel_is_preserved(
        seq in proptest::collection::vec(-5i64..3, 3),
        i in 0usize..2,
        s in 1i64..3,
        t in 1i64..3,
    ) {
        let r = r22();
        let v = TensorVec::basis(r, seq);
        let x = v.add(&apply_swap(SwapKind::Full, i, i + 1, &v).unwrap());
        prop_assert!(wedge_project(&x).is_zero());
        let col = that_column(t, 3, &DunklParams::standard(r), &x).unwrap();
        for c in &col[(s - 1) as usize] {
            prop_assert!(wedge_project(c).is_zero());
        }
    }

    #[test]
    fn stability_on_random_vectors(coeffs in proptest::collection::vec(-3i64..4, 16)) {
        let r = r22();
        let w = Window::new(r, 0, 1, 1).unwrap();
        let keys = w.basis_of_degree(1);
        let mut v = WedgeVec::zero(r, w.size());
        for (k, c) in keys.iter().zip(&coeffs) {
            v.add_wedge(k, int(*c));
        }
        let fv = FockWindow::new(w, v).unwrap();
        let big = embed_tail(&fv, 2).unwrap();
        let y = Yangian::normalized(r, DunklParams::standard(r), 3, 0);
        for (s, t) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let a = y.fock_series(s, t, &fv).unwrap();
            let b = y.fock_series(s, t, &big).unwrap();
            for (x, z) in a.iter().zip(&b) {
                prop_assert_eq!(&restrict(z, 1).unwrap().vec, &x.vec);
            }
        }
    }
}
