//! The tensor power of the affinized vector module, as sparse exact vectors
//! keyed by momentum sequences, with the elementary operators built on it:
//! factor swaps, matrix units, divided differences, the classical r-matrix
//! and the matrix Dunkl operators.
//!
//! Factor positions are 0-based; spin and color labels are 1-based.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebraics::{int, rat, Rat};
use crate::error::{Error, Result};

/// The ranks `N` (color, `gl_N`) and `L` (spin, `gl_L`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranks {
    pub n: i64,
    pub l: i64,
}

impl Ranks {
    pub fn new(n: i64, l: i64) -> Result<Self> {
        if n < 2 || l < 2 {
            return Err(Error::Invalid(format!("ranks must be at least 2, got N={n}, L={l}")));
        }
        Ok(Ranks { n, l })
    }

    pub fn nl(&self) -> i64 {
        self.n * self.l
    }
}

/// `k = kbar - N (kdot + L kund)` with `kbar` in `[1, N]`, `kdot` in `[1, L]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisTriple {
    pub kbar: i64,
    pub kdot: i64,
    pub kund: i64,
}

pub fn decompose(k: i64, r: Ranks) -> BasisTriple {
    let kbar = (k - 1).rem_euclid(r.n) + 1;
    let q = (kbar - k) / r.n;
    let kdot = (q - 1).rem_euclid(r.l) + 1;
    let kund = (q - kdot) / r.l;
    BasisTriple { kbar, kdot, kund }
}

pub fn compose(t: BasisTriple, r: Ranks) -> i64 {
    t.kbar - r.n * (t.kdot + r.l * t.kund)
}

pub fn kund(k: i64, r: Ranks) -> i64 {
    decompose(k, r).kund
}

/// Dunkl parameters: `kappa` and `nu(1..=L)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DunklParams {
    pub kappa: Rat,
    pub nu: Vec<Rat>,
}

impl DunklParams {
    /// `kappa = L`, `nu(a) = a + chi(a)/2`.
    pub fn with_chi(r: Ranks, chi: &[i64]) -> Self {
        let nu = (1..=r.l)
            .map(|a| int(a) + rat(chi.get((a - 1) as usize).copied().unwrap_or(0), 2))
            .collect();
        DunklParams { kappa: int(r.l), nu }
    }

    /// `kappa = L`, `nu(a) = a`.
    pub fn standard(r: Ranks) -> Self {
        Self::with_chi(r, &[])
    }

    pub fn nu(&self, a: i64) -> &Rat {
        &self.nu[(a - 1) as usize]
    }
}

pub type Key = Vec<i64>;

/// Sparse vector on `u_{k_1} ⊗ ... ⊗ u_{k_n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVec {
    pub ranks: Ranks,
    pub len: usize,
    terms: BTreeMap<Key, Rat>,
}

impl TensorVec {
    pub fn zero(ranks: Ranks, len: usize) -> Self {
        TensorVec { ranks, len, terms: BTreeMap::new() }
    }

    pub fn basis(ranks: Ranks, key: Key) -> Self {
        let mut v = Self::zero(ranks, key.len());
        v.terms.insert(key, Rat::one());
        v
    }

    pub fn from_triples(ranks: Ranks, triples: &[BasisTriple]) -> Self {
        Self::basis(ranks, triples.iter().map(|&t| compose(t, ranks)).collect())
    }

    pub fn terms(&self) -> &BTreeMap<Key, Rat> {
        &self.terms
    }

    pub fn coeff(&self, key: &[i64]) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Key, c: Rat) {
        add_to(&mut self.terms, key, c);
    }

    pub fn add_scaled(&mut self, o: &TensorVec, c: &Rat) {
        for (k, x) in &o.terms {
            add_to(&mut self.terms, k.clone(), x * c);
        }
    }

    pub fn add(&self, o: &TensorVec) -> TensorVec {
        let mut r = self.clone();
        r.add_scaled(o, &Rat::one());
        r
    }

    pub fn sub(&self, o: &TensorVec) -> TensorVec {
        let mut r = self.clone();
        r.add_scaled(o, &-Rat::one());
        r
    }

    pub fn scale(&self, c: &Rat) -> TensorVec {
        let mut r = Self::zero(self.ranks, self.len);
        if !c.is_zero() {
            r.terms = self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect();
        }
        r
    }

    /// Extends a per-key linear rule `f(key, out)` linearly.
    pub fn map_linear(&self, mut f: impl FnMut(&[i64], &mut Vec<(Key, Rat)>)) -> TensorVec {
        let mut out = Self::zero(self.ranks, self.len);
        let mut buf = Vec::new();
        for (k, c) in &self.terms {
            buf.clear();
            f(k, &mut buf);
            for (k2, c2) in buf.drain(..) {
                add_to(&mut out.terms, k2, c2 * c);
            }
        }
        out
    }

    fn check(&self, i: usize) -> Result<()> {
        if i >= self.len {
            return Err(Error::IndexOutOfRange { index: i, len: self.len });
        }
        Ok(())
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.check(i)?;
        self.check(j)?;
        if i == j {
            return Err(Error::Invalid(format!("factor pair ({i}, {j}) must be distinct")));
        }
        Ok(())
    }
}

pub(crate) fn add_to(m: &mut BTreeMap<Key, Rat>, k: Key, c: Rat) {
    if c.is_zero() {
        return;
    }
    match m.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwapKind {
    /// `K_ij`: exchanges the `z`-exponents.
    Z,
    /// `P_ij`: exchanges the `C^L` labels.
    SpinL,
    /// Exchanges the `C^N` labels.
    SpinN,
    /// Exchanges whole factors.
    Full,
}

pub(crate) fn swap_key(kind: SwapKind, i: usize, j: usize, key: &[i64], r: Ranks) -> Key {
    let mut out = key.to_vec();
    if kind == SwapKind::Full {
        out.swap(i, j);
        return out;
    }
    let (mut a, mut b) = (decompose(key[i], r), decompose(key[j], r));
    match kind {
        SwapKind::Z => std::mem::swap(&mut a.kund, &mut b.kund),
        SwapKind::SpinL => std::mem::swap(&mut a.kdot, &mut b.kdot),
        SwapKind::SpinN => std::mem::swap(&mut a.kbar, &mut b.kbar),
        SwapKind::Full => unreachable!(),
    }
    out[i] = compose(a, r);
    out[j] = compose(b, r);
    out
}

pub fn apply_swap(kind: SwapKind, i: usize, j: usize, v: &TensorVec) -> Result<TensorVec> {
    v.check_pair(i, j)?;
    let r = v.ranks;
    Ok(v.map_linear(|k, out| out.push((swap_key(kind, i, j, k, r), Rat::one()))))
}

/// `z_j/(z_j - z_i) (K_ij - 1)` on one key, by the geometric-sum identity.
pub(crate) fn divdiff_key(p: usize, q: usize, key: &[i64], r: Ranks, out: &mut Vec<(Key, Rat)>) {
    let (tp, tq) = (decompose(key[p], r), decompose(key[q], r));
    let (a, b) = (tp.kund, tq.kund);
    if a == b {
        return;
    }
    let (lo, gap, sign) = if a > b { (b, a - b, 1) } else { (a, b - a, -1) };
    for t in 0..gap {
        let mut k = key.to_vec();
        k[p] = compose(BasisTriple { kund: lo + (gap - 1 - t), ..tp }, r);
        k[q] = compose(BasisTriple { kund: lo + t + 1, ..tq }, r);
        out.push((k, int(sign)));
    }
}

pub fn apply_divdiff(i: usize, j: usize, v: &TensorVec) -> Result<TensorVec> {
    v.check_pair(i, j)?;
    let r = v.ranks;
    Ok(v.map_linear(|k, out| divdiff_key(i, j, k, r, out)))
}

/// `r_ij = 1/2 sum_a (e_aa)_i (e_aa)_j + sum_{a<b} (e_ab)_i (e_ba)_j` with
/// `e_ab v_c = delta_bc v_a`.
pub(crate) fn rmatrix_key(i: usize, j: usize, key: &[i64], r: Ranks, out: &mut Vec<(Key, Rat)>) {
    let (ci, cj) = (decompose(key[i], r).kdot, decompose(key[j], r).kdot);
    if ci == cj {
        out.push((key.to_vec(), rat(1, 2)));
    } else if ci > cj {
        out.push((swap_key(SwapKind::SpinL, i, j, key, r), Rat::one()));
    }
}

pub fn apply_rmatrix(i: usize, j: usize, v: &TensorVec) -> Result<TensorVec> {
    v.check_pair(i, j)?;
    let r = v.ranks;
    Ok(v.map_linear(|k, out| rmatrix_key(i, j, k, r, out)))
}

pub(crate) fn dunkl_key(i: usize, p: &DunklParams, key: &[i64], r: Ranks, out: &mut Vec<(Key, Rat)>) {
    let n = key.len();
    let t = decompose(key[i], r);
    let diag = &p.kappa * int(t.kund) + p.nu(t.kdot) + rat(n as i64, 2 * r.l) - rat(1, 2);
    out.push((key.to_vec(), diag));
    let mut tmp = Vec::new();
    for j in 0..n {
        if j == i {
            continue;
        }
        let swapped = swap_key(SwapKind::SpinL, i, j, key, r);
        tmp.clear();
        if j > i {
            divdiff_key(i, j, &swapped, r, &mut tmp);
            rmatrix_key(i, j, key, r, &mut tmp);
            out.append(&mut tmp);
        } else {
            divdiff_key(j, i, &swapped, r, &mut tmp);
            rmatrix_key(j, i, key, r, &mut tmp);
            out.extend(tmp.drain(..).map(|(k, c)| (k, -c)));
        }
    }
}

/// The matrix Dunkl operator `d_i`, acting trivially on the `C^N` labels.
pub fn apply_dunkl(i: usize, p: &DunklParams, v: &TensorVec) -> Result<TensorVec> {
    v.check(i)?;
    if p.nu.len() != v.ranks.l as usize {
        return Err(Error::Invalid(format!("nu needs {} entries", v.ranks.l)));
    }
    let r = v.ranks;
    Ok(v.map_linear(|k, out| dunkl_key(i, p, k, r, out)))
}

/// `(E_ts)_i`: color label `s -> t` on factor `i`.
pub fn apply_color_unit(i: usize, t: i64, s: i64, v: &TensorVec) -> Result<TensorVec> {
    v.check(i)?;
    let r = v.ranks;
    Ok(v.map_linear(|k, out| {
        let x = decompose(k[i], r);
        if x.kbar == s {
            let mut k2 = k.to_vec();
            k2[i] = compose(BasisTriple { kbar: t, ..x }, r);
            out.push((k2, Rat::one()));
        }
    }))
}

/// `(z^m e_ab)_i`: spin label `b -> a` and `z`-exponent `+m` on factor `i`.
pub fn apply_spin_unit(i: usize, a: i64, b: i64, m: i64, v: &TensorVec) -> Result<TensorVec> {
    v.check(i)?;
    let r = v.ranks;
    Ok(v.map_linear(|k, out| {
        let x = decompose(k[i], r);
        if x.kdot == b {
            let mut k2 = k.to_vec();
            k2[i] = compose(BasisTriple { kdot: a, kund: x.kund + m, ..x }, r);
            out.push((k2, Rat::one()));
        }
    }))
}

/// Multiplication by `z_i^m`.
pub fn apply_zpow(i: usize, m: i64, v: &TensorVec) -> Result<TensorVec> {
    v.check(i)?;
    let r = v.ranks;
    Ok(v.map_linear(|k, out| {
        let x = decompose(k[i], r);
        let mut k2 = k.to_vec();
        k2[i] = compose(BasisTriple { kund: x.kund + m, ..x }, r);
        out.push((k2, Rat::one()));
    }))
}
