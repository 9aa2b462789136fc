//! Extended affine Weyl group of type `A_{n-1}^{(1)}`, the dDAHA
//! representation on the tensor space, intertwiners, and regular elements.
//!
//! Factor indices in roots and permutations are 0-based; simple reflection
//! `i` is `s_i` for `1 <= i < n` and `0` is the affine one.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::algebraics::{int, Rat};
use crate::diagrams::FiniteSkew;
use crate::error::{Error, Result};
use crate::yangian::Report;
use crate::tensor_space::{
    apply_dunkl, apply_swap, apply_zpow, BasisTriple, DunklParams, Key, Ranks, SwapKind, TensorVec,
};

/// `alpha_ij + k delta` with `alpha_ij = eps_i - eps_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffRoot {
    pub i: usize,
    pub j: usize,
    pub k: i64,
}

impl AffRoot {
    pub fn is_positive(&self) -> bool {
        self.k > 0 || (self.k == 0 && self.i < self.j)
    }

    /// The simple root `alpha_i`; `alpha_0 = delta - (eps_1 - eps_n)`.
    pub fn simple(i: usize, n: usize) -> AffRoot {
        if i == 0 {
            AffRoot { i: n - 1, j: 0, k: 1 }
        } else {
            AffRoot { i: i - 1, j: i, k: 0 }
        }
    }
}

/// `t_lambda sigma`, with `sigma(eps_i) = eps_{sigma(i)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElt {
    pub lambda: Vec<i64>,
    pub sigma: Vec<usize>,
}

fn permute<T: Clone>(sigma: &[usize], x: &[T]) -> Vec<T> {
    // sigma(x)_{sigma(i)} = x_i
    let mut out = x.to_vec();
    for (i, &s) in sigma.iter().enumerate() {
        out[s] = x[i].clone();
    }
    out
}

impl WeylElt {
    pub fn identity(n: usize) -> Self {
        WeylElt { lambda: vec![0; n], sigma: (0..n).collect() }
    }

    pub fn translation(lambda: Vec<i64>) -> Self {
        let n = lambda.len();
        WeylElt { lambda, sigma: (0..n).collect() }
    }

    pub fn permutation(sigma: Vec<usize>) -> Self {
        WeylElt { lambda: vec![0; sigma.len()], sigma }
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    /// Simple reflection `s_i`; `s_0 = t_{eps_1 - eps_n} s_{(1 n)}`.
    pub fn simple(i: usize, n: usize) -> Self {
        let mut sigma: Vec<usize> = (0..n).collect();
        if i == 0 {
            sigma.swap(0, n - 1);
            let mut lambda = vec![0; n];
            lambda[0] = 1;
            lambda[n - 1] -= 1;
            WeylElt { lambda, sigma }
        } else {
            sigma.swap(i - 1, i);
            Self::permutation(sigma)
        }
    }

    /// `pi = t_{eps_1} s_1 ... s_{n-1}`.
    pub fn pi(n: usize) -> Self {
        let sigma = (0..n).map(|i| (i + 1) % n).collect();
        let mut lambda = vec![0; n];
        lambda[0] = 1;
        WeylElt { lambda, sigma }
    }

    pub fn pi_pow(k: i64, n: usize) -> Self {
        let base = if k >= 0 { Self::pi(n) } else { Self::pi(n).inverse() };
        (0..k.unsigned_abs()).fold(Self::identity(n), |acc, _| acc.mul(&base))
    }

    /// `(t_l s)(t_m t) = t_{l + s(m)} s t`.
    pub fn mul(&self, o: &WeylElt) -> WeylElt {
        let sm = permute(&self.sigma, &o.lambda);
        WeylElt {
            lambda: self.lambda.iter().zip(&sm).map(|(a, b)| a + b).collect(),
            sigma: o.sigma.iter().map(|&t| self.sigma[t]).collect(),
        }
    }

    pub fn inverse(&self) -> WeylElt {
        let n = self.n();
        let mut inv = vec![0; n];
        for (i, &s) in self.sigma.iter().enumerate() {
            inv[s] = i;
        }
        let neg: Vec<i64> = self.lambda.iter().map(|x| -x).collect();
        WeylElt { lambda: permute(&inv, &neg), sigma: inv }
    }

    /// `t_lambda(abar + k delta) = abar + (k - (lambda, abar)) delta`.
    pub fn apply_root(&self, a: AffRoot) -> AffRoot {
        let (si, sj) = (self.sigma[a.i], self.sigma[a.j]);
        AffRoot { i: si, j: sj, k: a.k - (self.lambda[si] - self.lambda[sj]) }
    }

    /// `t_lambda(zeta) = zeta + zeta(c) lambda` on the finite part.
    pub fn apply_weight(&self, z: &WeightFn) -> WeightFn {
        let c = permute(&self.sigma, &z.c);
        WeightFn {
            level: z.level.clone(),
            c: c.iter().zip(&self.lambda).map(|(x, l)| x + &z.level * int(*l)).collect(),
        }
    }

    /// `S(w) = R_+ ∩ w^{-1}(R_-)`.
    pub fn inversion_set(&self) -> Vec<AffRoot> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let c = self.lambda[self.sigma[i]] - self.lambda[self.sigma[j]];
                let kmin = if i < j { 0 } else { 1 };
                let kmax = if self.sigma[i] > self.sigma[j] { c } else { c - 1 };
                out.extend((kmin..=kmax).map(|k| AffRoot { i, j, k }));
            }
        }
        out.sort();
        out
    }

    pub fn length(&self) -> usize {
        self.inversion_set().len()
    }

    /// `w = pi^k s_{i_1} ... s_{i_l}` with `l = length(w)`, by stripping right
    /// descents.
    pub fn reduced_word(&self) -> (i64, Vec<usize>) {
        let n = self.n();
        let mut w = self.clone();
        let mut word = Vec::new();
        'outer: loop {
            for i in 0..n {
                if !w.apply_root(AffRoot::simple(i, n)).is_positive() {
                    word.push(i);
                    w = w.mul(&Self::simple(i, n));
                    continue 'outer;
                }
            }
            break;
        }
        word.reverse();
        let k: i64 = w.lambda.iter().sum();
        debug_assert_eq!(w, Self::pi_pow(k, n));
        (k, word)
    }

    /// Reduced word ending with a descent other than the greedy choice, when
    /// one exists; used to test word independence.
    pub fn alternative_word(&self) -> (i64, Vec<usize>) {
        let n = self.n();
        let descents: Vec<usize> = (0..n)
            .filter(|&i| !self.apply_root(AffRoot::simple(i, n)).is_positive())
            .collect();
        match descents.last() {
            Some(&i) if descents.len() > 1 => {
                let (k, mut word) = self.mul(&Self::simple(i, n)).reduced_word();
                word.push(i);
                (k, word)
            }
            _ => self.reduced_word(),
        }
    }
}

/// A weight `level c^* + sum_i c_i eps_i`, paired with affine roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFn {
    pub level: Rat,
    pub c: Vec<Rat>,
}

impl WeightFn {
    pub fn pair(&self, a: AffRoot) -> Rat {
        &self.c[a.i] - &self.c[a.j] + &self.level * int(a.k)
    }
}

/// dDAHA generators in the representation on the tensor space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DahaGen {
    /// `t_{eps_i}` acts as `z_i^{-1}`.
    T(usize),
    /// `eps_i^vee` acts as `-d_i`.
    EpsCheck(usize),
    /// The central element acts as `kappa`.
    C,
    /// Simple reflection (0 is the affine one).
    S(usize),
    Pi,
    PiInv,
}

pub fn pi_apply(g: DahaGen, p: &DunklParams, v: &TensorVec) -> Result<TensorVec> {
    let n = v.len;
    match g {
        DahaGen::T(i) => apply_zpow(i, -1, v),
        DahaGen::EpsCheck(i) => Ok(apply_dunkl(i, p, v)?.scale(&-Rat::one())),
        DahaGen::C => Ok(v.scale(&p.kappa)),
        DahaGen::S(0) => {
            let w = kp_swap(0, n - 1, v)?;
            apply_zpow(n - 1, 1, &apply_zpow(0, -1, &w)?)
        }
        DahaGen::S(i) => {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, len: n });
            }
            kp_swap(i - 1, i, v)
        }
        DahaGen::Pi => {
            let mut w = v.clone();
            for i in (1..n).rev() {
                w = kp_swap(i - 1, i, &w)?;
            }
            apply_zpow(0, -1, &w)
        }
        DahaGen::PiInv => {
            let mut w = apply_zpow(0, 1, v)?;
            for i in 1..n {
                w = kp_swap(i - 1, i, &w)?;
            }
            Ok(w)
        }
    }
}

fn kp_swap(i: usize, j: usize, v: &TensorVec) -> Result<TensorVec> {
    apply_swap(SwapKind::SpinL, i, j, &apply_swap(SwapKind::Z, i, j, v)?)
}

/// `alpha_i^vee = -d_i + d_{i+1}`, `alpha_0^vee = kappa + d_1 - d_n`.
pub fn alpha_check(i: usize, p: &DunklParams, v: &TensorVec) -> Result<TensorVec> {
    let n = v.len;
    if i == 0 {
        let mut w = v.scale(&p.kappa);
        w.add_scaled(&apply_dunkl(0, p, v)?, &Rat::one());
        w.add_scaled(&apply_dunkl(n - 1, p, v)?, &-Rat::one());
        Ok(w)
    } else {
        Ok(apply_dunkl(i, p, v)?.sub(&apply_dunkl(i - 1, p, v)?))
    }
}

/// `phi_i = 1 + s_i alpha_i^vee`.
pub fn phi_simple(i: usize, p: &DunklParams, v: &TensorVec) -> Result<TensorVec> {
    let a = alpha_check(i, p, v)?;
    Ok(v.add(&pi_apply(DahaGen::S(i), p, &a)?))
}

/// `phi_w = phi_pi^k phi_{i_1} ... phi_{i_l}` for the word `(k, [i_1..i_l])`.
pub fn intertwiner_word(k: i64, word: &[usize], p: &DunklParams, v: &TensorVec) -> Result<TensorVec> {
    let mut w = v.clone();
    for &i in word.iter().rev() {
        w = phi_simple(i, p, &w)?;
    }
    let g = if k >= 0 { DahaGen::Pi } else { DahaGen::PiInv };
    for _ in 0..k.unsigned_abs() {
        w = pi_apply(g, p, &w)?;
    }
    Ok(w)
}

pub fn intertwiner_apply(w: &WeylElt, p: &DunklParams, v: &TensorVec) -> Result<TensorVec> {
    let (k, word) = w.reduced_word();
    intertwiner_word(k, &word, p, v)
}

/// `v_0` tensored with the given color labels: spin `a` on block `a`, all
/// `z`-exponents 0.
pub fn v0(ranks: Ranks, colors: &[i64]) -> Result<TensorVec> {
    let n = colors.len() as i64;
    if n == 0 || n % ranks.l != 0 {
        return Err(Error::Invalid(format!("L={} must divide n={n}", ranks.l)));
    }
    let m = n / ranks.l;
    let triples: Vec<BasisTriple> = colors
        .iter()
        .enumerate()
        .map(|(i, &kbar)| BasisTriple { kbar, kdot: i as i64 / m + 1, kund: 0 })
        .collect();
    Ok(TensorVec::from_triples(ranks, &triples))
}

/// `zeta_0(eps_i^vee) = i - nu(a) - a m` for `i` in block `a`; level `kappa`.
pub fn zeta0(p: &DunklParams, n: usize, l: i64) -> Result<WeightFn> {
    if n == 0 || n as i64 % l != 0 {
        return Err(Error::Invalid(format!("L={l} must divide n={n}")));
    }
    let m = n as i64 / l;
    let c = (1..=n as i64)
        .map(|i| {
            let a = (i - 1) / m + 1;
            int(i) - p.nu(a) - int(a * m)
        })
        .collect();
    Ok(WeightFn { level: p.kappa.clone(), c })
}

/// Nondecreasing `r = a - L lambda` whose `a` is a weight-0 spin configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegSeq {
    pub spin_rank: i64,
    pub r: Vec<i64>,
    pub a: Vec<i64>,
    pub lambda: Vec<i64>,
}

impl RegSeq {
    pub fn new(spin_rank: i64, r: Vec<i64>) -> Result<Self> {
        let l = spin_rank;
        if l < 2 {
            return Err(Error::Invalid(format!("L must be at least 2, got {l}")));
        }
        if r.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invalid(format!("{r:?} is not nondecreasing")));
        }
        let n = r.len() as i64;
        if n == 0 || n % l != 0 {
            return Err(Error::Invalid(format!("length {n} is not a positive multiple of L={l}")));
        }
        let a: Vec<i64> = r.iter().map(|&x| (x - 1).rem_euclid(l) + 1).collect();
        let m = n / l;
        for s in 1..=l {
            if a.iter().filter(|&&x| x == s).count() as i64 != m {
                return Err(Error::Invalid(format!("{r:?} is not a weight-0 spin configuration")));
            }
        }
        let lambda = r.iter().zip(&a).map(|(x, y)| (y - x) / l).collect();
        Ok(RegSeq { spin_rank: l, r, a, lambda })
    }

    pub fn n(&self) -> usize {
        self.r.len()
    }

    pub fn m(&self) -> i64 {
        self.n() as i64 / self.spin_rank
    }

    /// `gamma_lambda^{-1}` as a map: stable ascending argsort of `lambda`.
    fn gamma_inv(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.n()).collect();
        idx.sort_by_key(|&i| self.lambda[i]);
        idx
    }

    /// `b = gamma_lambda(a)` and `eta = gamma_lambda(lambda)`.
    pub fn b_eta(&self) -> (Vec<i64>, Vec<i64>) {
        let g = self.gamma_inv();
        (g.iter().map(|&i| self.a[i]).collect(), g.iter().map(|&i| self.lambda[i]).collect())
    }

    /// All members of the set with `lambda` entries in `[lo, hi]`.
    pub fn enumerate(spin_rank: i64, m: i64, lo: i64, hi: i64) -> Vec<RegSeq> {
        let l = spin_rank;
        let n = (l * m) as usize;
        let values: Vec<i64> = (lo..=hi).rev().flat_map(|lam| (1..=l).map(move |a| a - l * lam)).collect();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut counts = vec![0i64; l as usize + 1];
        fn rec(
            start: usize,
            values: &[i64],
            n: usize,
            l: i64,
            m: i64,
            cur: &mut Vec<i64>,
            counts: &mut Vec<i64>,
            out: &mut Vec<RegSeq>,
        ) {
            if cur.len() == n {
                out.push(RegSeq::new(l, cur.clone()).expect("valid by construction"));
                return;
            }
            for idx in start..values.len() {
                let a = ((values[idx] - 1).rem_euclid(l) + 1) as usize;
                if counts[a] == m {
                    continue;
                }
                counts[a] += 1;
                cur.push(values[idx]);
                rec(idx, values, n, l, m, cur, counts, out);
                cur.pop();
                counts[a] -= 1;
            }
        }
        rec(0, &values, n, l, m, &mut cur, &mut counts, &mut out);
        out
    }
}

/// `w_b`: sends `(a-1) m + j` to the `j`-th smallest position with `b = a`.
pub fn w_of_spin_config(b: &[i64], l: i64) -> WeylElt {
    let n = b.len();
    let m = n / l as usize;
    let mut sigma = vec![0; n];
    for a in 1..=l {
        for (j, pos) in (0..n).filter(|&i| b[i] == a).enumerate() {
            sigma[(a as usize - 1) * m + j] = pos;
        }
    }
    WeylElt::permutation(sigma)
}

/// `x_r = t_lambda gamma_lambda^{-1} w_{gamma_lambda(a)}`.
pub fn x_r(r: &RegSeq) -> WeylElt {
    let (b, _) = r.b_eta();
    let gamma_inv = WeylElt::permutation(r.gamma_inv());
    WeylElt::translation(r.lambda.clone())
        .mul(&gamma_inv)
        .mul(&w_of_spin_config(&b, r.spin_rank))
}

/// No root of `S(x_r)` pairs with `zeta_0` into `{-1, 0, 1}`, at `kappa = L`,
/// `nu(a) = a`.
pub fn is_regular_pairing(r: &RegSeq) -> bool {
    let ranks = Ranks { n: 2, l: r.spin_rank };
    let z = zeta0(&DunklParams::standard(ranks), r.n(), r.spin_rank).expect("L divides n");
    let bad = [int(-1), Rat::zero(), int(1)];
    x_r(r).inversion_set().into_iter().all(|a| !bad.contains(&z.pair(a)))
}

/// Dominant path of `b` plus the `eta_j - eta_i ∈ {0, 1}` pairing condition.
pub fn is_regular_combinatorial(r: &RegSeq) -> bool {
    let l = r.spin_rank;
    let (b, eta) = r.b_eta();
    let n = b.len();
    let mut counts = vec![0i64; l as usize + 1];
    // prefix[i] = counts of 1 and L among b_1..b_i
    let mut first = vec![0i64; n];
    let mut last = vec![0i64; n];
    for i in 0..n {
        counts[b[i] as usize] += 1;
        if (1..l as usize).any(|a| counts[a] < counts[a + 1]) {
            return false;
        }
        first[i] = counts[1];
        last[i] = counts[l as usize];
    }
    for i in 0..n {
        if b[i] != 1 {
            continue;
        }
        for j in i + 1..n {
            if b[j] == l && first[i] == last[j] && !(0..=1).contains(&(eta[j] - eta[i])) {
                return false;
            }
        }
    }
    true
}

/// `zeta_r = L c^* - sum_i (c_i + m) eps_i` with natural-order contents.
pub fn zeta_r(r: &RegSeq, d: &FiniteSkew) -> Result<WeightFn> {
    if !is_regular_pairing(r) {
        return Err(Error::NotRegular(format!("{:?}", r.r)));
    }
    let m = int(r.m());
    let c = d.contents_natural().into_iter().map(|c| -(int(c) + &m)).collect();
    Ok(WeightFn { level: int(r.spin_rank), c })
}

/// All basis tensors of length `n` with `|kund| <= kmax` on every factor.
pub fn tensor_window(ranks: Ranks, n: usize, kmax: i64) -> Vec<TensorVec> {
    let mut one = Vec::new();
    for kbar in 1..=ranks.n {
        for kdot in 1..=ranks.l {
            for kund in -kmax..=kmax {
                one.push(BasisTriple { kbar, kdot, kund });
            }
        }
    }
    let mut keys: Vec<Vec<BasisTriple>> = vec![Vec::new()];
    for _ in 0..n {
        keys = keys.into_iter().flat_map(|k| one.iter().map(move |&t| [k.clone(), vec![t]].concat())).collect();
    }
    keys.iter().map(|k| TensorVec::from_triples(ranks, k)).collect()
}

/// The dDAHA relations on a tensor window: commuting Dunkl operators, the
/// cross relation `s_i d_{i-1} = d_i s_i + 1`, `phi_i^2 = 1 - (alpha_i^vee)^2`,
/// the braid relations and `phi_pi phi_i = phi_{i+1} phi_pi`, and the weight
/// of `v_0` under `eps_i^vee`.
pub fn verify_daha(ranks: Ranks, n: usize, kmax: i64) -> Result<Report> {
    let p = &DunklParams::standard(ranks);
    let vs = tensor_window(ranks, n, kmax);
    let mut rep = Report::new("daha");
    let d: Vec<Memo> = (0..n).map(|i| Memo::new(move |v| apply_dunkl(i, p, v))).collect();
    let s: Vec<Memo> = (0..n).map(|i| Memo::new(move |v| pi_apply(DahaGen::S(i), p, v))).collect();
    let phi: Vec<Memo> = (0..n).map(|i| Memo::new(move |v| phi_simple(i, p, v))).collect();
    let alpha: Vec<Memo> = (0..n).map(|i| Memo::new(move |v| alpha_check(i, p, v))).collect();
    let pi = Memo::new(|v| pi_apply(DahaGen::Pi, p, v));
    let count = |f: &dyn Fn(&TensorVec) -> Result<bool>| -> Result<usize> {
        let mut bad = 0;
        for v in &vs {
            if !f(v)? {
                bad += 1;
            }
        }
        Ok(bad)
    };
    let mut push = |id: String, bad: usize| rep.push(id, bad == 0, format!("{bad} of {} vectors fail", vs.len()));
    for i in 0..n {
        for j in i + 1..n {
            push(
                format!("[d_{i}, d_{j}] = 0"),
                count(&|v| Ok(d[i].apply(&d[j].apply(v)?)? == d[j].apply(&d[i].apply(v)?)?))?,
            );
        }
    }
    for i in 1..n {
        push(
            format!("s_{i} d_{} = d_{i} s_{i} + 1", i - 1),
            count(&|v| Ok(s[i].apply(&d[i - 1].apply(v)?)? == d[i].apply(&s[i].apply(v)?)?.add(v)))?,
        );
    }
    for i in 0..n {
        push(
            format!("phi_{i}^2 = 1 - alpha_{i}^2"),
            count(&|v| Ok(phi[i].apply(&phi[i].apply(v)?)? == v.sub(&alpha[i].apply(&alpha[i].apply(v)?)?)))?,
        );
        let j = (i + 1) % n;
        if n > 2 {
            let word = |a: usize, b: usize, v: &TensorVec| phi[a].apply(&phi[b].apply(&phi[a].apply(v)?)?);
            push(
                format!("phi_{i} phi_{j} phi_{i} = phi_{j} phi_{i} phi_{j}"),
                count(&|v| Ok(word(i, j, v)? == word(j, i, v)?))?,
            );
        }
        push(
            format!("phi_pi phi_{i} = phi_{j} phi_pi"),
            count(&|v| Ok(pi.apply(&phi[i].apply(v)?)? == phi[j].apply(&pi.apply(v)?)?))?,
        );
    }
    // v_0 needs L | n; use the smallest such length at least n.
    let n0 = n.div_ceil(ranks.l as usize) * ranks.l as usize;
    let z = zeta0(p, n0, ranks.l)?;
    let colors: Vec<i64> = (0..n0 as i64).map(|i| i % ranks.n + 1).collect();
    let v = v0(ranks, &colors)?;
    let bad = (0..n0)
        .filter(|&i| pi_apply(DahaGen::EpsCheck(i), p, &v).map(|w| w != v.scale(&z.c[i])).unwrap_or(true))
        .count();
    rep.push(format!("eps_i^vee v_0 = zeta_0(eps_i^vee) v_0, n={n0}"), bad == 0, format!("{bad} of {n0} fail"));
    Ok(rep)
}

/// A linear operator memoized on basis tensors.
struct Memo<'a> {
    f: Box<dyn Fn(&TensorVec) -> Result<TensorVec> + 'a>,
    cache: RefCell<HashMap<Key, TensorVec>>,
}

impl<'a> Memo<'a> {
    fn new(f: impl Fn(&TensorVec) -> Result<TensorVec> + 'a) -> Self {
        Memo { f: Box::new(f), cache: RefCell::new(HashMap::new()) }
    }

    fn apply(&self, v: &TensorVec) -> Result<TensorVec> {
        let mut out = TensorVec::zero(v.ranks, v.len);
        for (k, c) in v.terms() {
            if let Some(img) = self.cache.borrow().get(k) {
                out.add_scaled(img, c);
                continue;
            }
            let img = (self.f)(&TensorVec::basis(v.ranks, k.clone()))?;
            out.add_scaled(&img, c);
            self.cache.borrow_mut().insert(k.clone(), img);
        }
        Ok(out)
    }
}
