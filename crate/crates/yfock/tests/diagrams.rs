use std::collections::{BTreeMap, BTreeSet, HashMap};

use proptest::prelude::*;
use yfock::diagrams::{
    drinfeld_sigma, enumerate, h_vac, skew_schur, skew_shape, verify_characters, Character, SemiDiagram,
};
use yfock::tensor_space::Ranks;

fn ranks() -> Vec<Ranks> {
    [(2, 2), (2, 3), (3, 2)].into_iter().map(|(n, l)| Ranks::new(n, l).unwrap()).collect()
}

#[test]
fn enumerated_diagrams_are_valid_and_distinct() {
    for r in ranks() {
        let all = enumerate(r, 3);
        assert_eq!(all[0], vec![SemiDiagram::vacuum(r)]);
        let mut seen = BTreeSet::new();
        for (d, sds) in all.iter().enumerate() {
            for sd in sds {
                sd.validate().unwrap();
                assert_eq!(sd.degree(), d as i64);
                assert!(seen.insert(sd.clone()));
            }
        }
    }
}

#[test]
fn omega_separates_diagrams() {
    for r in ranks() {
        let sds: Vec<SemiDiagram> = enumerate(r, 3).into_iter().flatten().collect();
        let omegas: Vec<String> = sds.iter().map(|sd| sd.omega().to_string()).collect();
        let distinct: BTreeSet<&String> = omegas.iter().collect();
        assert_eq!(distinct.len(), sds.len(), "{r:?}");
        let ratios: BTreeSet<String> = sds.iter().map(|sd| sd.qdet_ratio().to_string()).collect();
        assert_eq!(ratios.len(), sds.len(), "{r:?}");
    }
}

#[test]
fn qdet_ratio_has_closed_form() {
    for r in ranks() {
        for sd in enumerate(r, 3).into_iter().flatten() {
            assert_eq!(sd.qdet_ratio(), sd.qdet_closed_form(), "{:?}", sd.overrides());
        }
    }
}

#[test]
fn vacuum_data_is_trivial() {
    for r in ranks() {
        let v = SemiDiagram::vacuum(r);
        assert!(v.is_vacuum());
        assert!(v.omega().is_one());
        assert!(v.drinfeld().iter().all(|p| p.degree() == Some(0)));
        for i in 1..=2 * (r.n as usize) {
            assert_eq!(v.h(i), h_vac(r, i));
        }
    }
}

#[test]
fn sigma_of_drinfeld_data_is_an_involution() {
    for r in ranks() {
        for sd in enumerate(r, 2).into_iter().flatten() {
            let ps = sd.drinfeld();
            assert_eq!(drinfeld_sigma(&drinfeld_sigma(&ps)), ps);
        }
    }
}

#[test]
fn characters_match_quotient_dimensions() {
    for r in ranks() {
        let rep = verify_characters(r, 2).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
    }
}

// Jacobi-Trudi oracle: s_{lambda/mu} = det[h_{lambda_i - mu_j - i + j}].

type Poly = BTreeMap<Vec<i64>, i64>;

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn add_scaled(acc: &mut Poly, p: &Poly, c: i64) {
    for (e, x) in p {
        *acc.entry(e.clone()).or_insert(0) += c * x;
    }
    acc.retain(|_, c| *c != 0);
}

/// Complete homogeneous symmetric polynomial `h_k` in `n` variables.
fn h(k: i64, n: usize) -> Poly {
    let mut out = Poly::new();
    if k < 0 {
        return out;
    }
    fn rec(i: usize, left: i64, e: &mut Vec<i64>, out: &mut Poly) {
        if i + 1 == e.len() {
            e[i] = left;
            out.insert(e.clone(), 1);
            return;
        }
        for v in 0..=left {
            e[i] = v;
            rec(i + 1, left - v, e, out);
        }
    }
    rec(0, k, &mut vec![0; n], &mut out);
    out
}

fn det(m: &[Vec<Poly>], row: usize, cols: u32, memo: &mut HashMap<(usize, u32), Poly>) -> Poly {
    let size = m.len();
    if row == size {
        return [(vec![0; m_vars(m)], 1)].into_iter().collect();
    }
    if let Some(p) = memo.get(&(row, cols)) {
        return p.clone();
    }
    let mut acc = Poly::new();
    let mut sign = 1;
    for c in 0..size {
        if cols & (1 << c) != 0 {
            continue;
        }
        if !m[row][c].is_empty() {
            let minor = det(m, row + 1, cols | (1 << c), memo);
            add_scaled(&mut acc, &mul(&m[row][c], &minor), sign);
        }
        sign = -sign;
    }
    memo.insert((row, cols), acc.clone());
    acc
}

fn m_vars(m: &[Vec<Poly>]) -> usize {
    m.iter().flatten().flat_map(|p| p.keys()).map(|e| e.len()).next().unwrap_or(0)
}

fn jacobi_trudi(lambda: &[i64], mu: &[i64], n: usize) -> Character {
    let len = lambda.len();
    let mu_at = |j: usize| mu.get(j).copied().unwrap_or(0);
    let m: Vec<Vec<Poly>> = (0..len)
        .map(|i| (0..len).map(|j| h(lambda[i] - mu_at(j) - i as i64 + j as i64, n)).collect())
        .collect();
    if len == 0 {
        return [(vec![0; n], 1)].into_iter().collect();
    }
    det(&m, 0, 0, &mut HashMap::new())
}

fn partitions(total: i64, max: i64) -> Vec<Vec<i64>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(total)).rev() {
        for rest in partitions(total - first, first) {
            out.push([vec![first], rest].concat());
        }
    }
    out
}

fn contained(mu: &[i64], lambda: &[i64]) -> bool {
    mu.len() <= lambda.len() && mu.iter().zip(lambda).all(|(a, b)| a <= b)
}

#[test]
fn skew_schur_matches_jacobi_trudi() {
    let mut shapes = 0;
    for big in 0..=8 {
        for lambda in partitions(big, big) {
            for small in (big - 6).max(0)..=big {
                for mu in partitions(small, small) {
                    if !contained(&mu, &lambda) {
                        continue;
                    }
                    shapes += 1;
                    let sq = skew_shape(&lambda, &mu);
                    for n in 1..=3 {
                        let got = skew_schur(&sq, n);
                        let want = jacobi_trudi(&lambda, &mu, n as usize);
                        assert_eq!(got, want, "{lambda:?}/{mu:?}, N={n}");
                    }
                }
            }
        }
    }
    assert!(shapes > 300);
}

proptest! {
    #[test]
    fn random_prefix_diagrams_have_consistent_data(h in proptest::collection::vec(0i64..4, 1..6)) {
        let r = Ranks::new(2, 2).unwrap();
        if let Ok(sd) = SemiDiagram::from_prefix(r, &h) {
            let d = sd.degree();
            prop_assert!(d >= 0);
            prop_assume!(d <= 3);
            let a = sd.finite_part(d.max(1)).unwrap();
            let b = sd.finite_part(d.max(1) + 1).unwrap();
            let ca = skew_schur(&a.squares(), 2);
            let cb = skew_schur(&b.squares(), 2);
            prop_assert_eq!(yfock::diagrams::sl_reduce(&ca), yfock::diagrams::sl_reduce(&cb));
            prop_assert!(enumerate(r, d)[d as usize].contains(&sd));
        }
    }
}
