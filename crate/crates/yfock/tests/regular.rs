use std::collections::BTreeSet;

use yfock::algebraics::int;
use yfock::daha::{is_regular_combinatorial, is_regular_pairing, x_r, zeta0, RegSeq};
use yfock::diagrams::{diagram_from_r, FiniteSkew, Square};
use yfock::tensor_space::{DunklParams, Ranks};

fn rows(layout: &[(i64, &[i64])]) -> BTreeSet<Square> {
    layout.iter().flat_map(|&(i, cols)| cols.iter().map(move |&j| (i, j))).collect()
}

fn expand(parts: &[(i64, usize)]) -> Vec<i64> {
    parts.iter().flat_map(|&(v, k)| std::iter::repeat_n(v, k)).collect()
}

#[test]
fn five_row_skew_example() {
    let r = RegSeq::new(3, expand(&[(-2, 1), (-1, 1), (0, 3), (1, 4), (2, 4), (3, 2)])).unwrap();
    assert!(is_regular_pairing(&r));
    assert!(is_regular_combinatorial(&r));
    let want = rows(&[(1, &[1, 2, 3]), (2, &[1, 2, 3]), (3, &[0, 1, 2]), (4, &[0, 1, 2]), (5, &[-2, -1, 0])]);
    let d = diagram_from_r(&r);
    assert_eq!(d, want);
    let fs = FiniteSkew::from_squares(3, &d).unwrap();
    assert_eq!(fs.starts, vec![1, 1, 0, 0, -2]);
    assert_eq!(fs.r().unwrap(), r);
}

#[test]
fn six_row_overhang_example() {
    let r = RegSeq::new(3, expand(&[(-2, 3), (-1, 2), (0, 2), (1, 3), (2, 4), (3, 4)])).unwrap();
    assert!(!is_regular_pairing(&r));
    assert!(!is_regular_combinatorial(&r));
    let want = rows(&[
        (1, &[1, 2, 3]),
        (2, &[1, 2, 3]),
        (3, &[1, 2, 3]),
        (4, &[-2, 2, 3]),
        (5, &[-2, -1, 0]),
        (6, &[-2, -1, 0]),
    ]);
    let d = diagram_from_r(&r);
    assert_eq!(d, want);
    assert!(FiniteSkew::from_squares(3, &d).is_err());
}

#[test]
fn regularity_matches_skewness_and_weights() {
    for (l, m) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let ranks = Ranks::new(2, l).unwrap();
        let p = DunklParams::standard(ranks);
        for r in RegSeq::enumerate(l, m, -2, 2) {
            let pairing = is_regular_pairing(&r);
            assert_eq!(pairing, is_regular_combinatorial(&r), "{:?}", r.r);
            let d = diagram_from_r(&r);
            assert_eq!(d.len(), r.n());
            assert!(d.iter().all(|&(i, _)| (1..=m).contains(&i)));
            let fs = FiniteSkew::from_squares(l, &d);
            assert_eq!(pairing, fs.is_ok(), "{:?}", r.r);
            if let Ok(fs) = fs {
                assert_eq!(fs.r().unwrap(), r);
                let z = zeta0(&p, r.n(), l).unwrap();
                let want = yfock::daha::zeta_r(&r, &fs).unwrap();
                assert_eq!(x_r(&r).apply_weight(&z), want, "{:?}", r.r);
            }
        }
    }
}

#[test]
fn vacuum_weight() {
    let r = RegSeq::new(2, vec![1, 1, 2, 2]).unwrap();
    let fs = FiniteSkew::from_squares(2, &diagram_from_r(&r)).unwrap();
    let z = yfock::daha::zeta_r(&r, &fs).unwrap();
    assert_eq!(z.c, vec![int(-2), int(-1), int(-3), int(-2)]);
}
