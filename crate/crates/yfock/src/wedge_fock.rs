//! Finite wedge powers and the degree-bounded windows that stand in for the
//! charge sectors of the fermionic Fock space.
//!
//! A window of charge `M` and size `n = s + l N L` (`s = M mod NL`) holds the
//! finite part `w` of a semi-infinite wedge `w ∧ u_{M-n} ∧ u_{M-n-1} ∧ ...`.
//! Nothing semi-infinite is ever materialized.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebraics::Rat;
use crate::error::{Error, Result};
use crate::tensor_space::{add_to, kund, Key, Ranks, TensorVec};

/// Sorts into strictly decreasing order with the sign of the permutation;
/// `None` if a momentum repeats.
pub fn normal_order(seq: &[i64]) -> Option<(Key, i8)> {
    let mut v = seq.to_vec();
    let mut sign = 1i8;
    // insertion sort counts transpositions exactly
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] < v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some((v, sign))
}

/// Sparse vector on normally ordered wedges `u_{k_1} ∧ ... ∧ u_{k_n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeVec {
    pub ranks: Ranks,
    pub len: usize,
    terms: BTreeMap<Key, Rat>,
}

impl WedgeVec {
    pub fn zero(ranks: Ranks, len: usize) -> Self {
        WedgeVec { ranks, len, terms: BTreeMap::new() }
    }

    /// The wedge of `seq` in the given order, normal ordered.
    pub fn basis(ranks: Ranks, seq: &[i64]) -> Self {
        let mut w = Self::zero(ranks, seq.len());
        if let Some((k, s)) = normal_order(seq) {
            w.terms.insert(k, Rat::from_integer(s.into()));
        }
        w
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

    /// Adds `c` times the wedge of `seq` (any order).
    pub fn add_wedge(&mut self, seq: &[i64], c: Rat) {
        if let Some((k, s)) = normal_order(seq) {
            add_to(&mut self.terms, k, if s < 0 { -c } else { c });
        }
    }

    pub fn add_scaled(&mut self, o: &WedgeVec, c: &Rat) {
        for (k, x) in &o.terms {
            add_to(&mut self.terms, k.clone(), x * c);
        }
    }

    pub fn add(&self, o: &WedgeVec) -> WedgeVec {
        let mut r = self.clone();
        r.add_scaled(o, &Rat::one());
        r
    }

    pub fn sub(&self, o: &WedgeVec) -> WedgeVec {
        let mut r = self.clone();
        r.add_scaled(o, &-Rat::one());
        r
    }

    pub fn scale(&self, c: &Rat) -> WedgeVec {
        let mut r = Self::zero(self.ranks, self.len);
        if !c.is_zero() {
            r.terms = self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect();
        }
        r
    }

    /// The decreasing-order pure tensor representing each wedge.
    pub fn to_tensor(&self) -> TensorVec {
        let mut t = TensorVec::zero(self.ranks, self.len);
        for (k, c) in &self.terms {
            t.add_term(k.clone(), c.clone());
        }
        t
    }

    /// Extends a per-key rule producing unordered momentum sequences.
    pub fn map_linear(&self, len: usize, mut f: impl FnMut(&[i64], &mut Vec<(Key, Rat)>)) -> WedgeVec {
        let mut out = Self::zero(self.ranks, len);
        let mut buf = Vec::new();
        for (k, c) in &self.terms {
            buf.clear();
            f(k, &mut buf);
            for (k2, c2) in buf.drain(..) {
                out.add_wedge(&k2, c2 * c);
            }
        }
        out
    }
}

/// The quotient map `V^{⊗n} -> V^{∧n}`.
pub fn wedge_project(v: &TensorVec) -> WedgeVec {
    let mut w = WedgeVec::zero(v.ranks, v.len);
    for (k, c) in v.terms() {
        w.add_wedge(k, c.clone());
    }
    w
}

/// `o_i = M - i + 1` (1-based `i`).
pub fn vacuum_momentum(m: i64, i: usize) -> i64 {
    m - i as i64 + 1
}

/// `sum_i (kund(o_i) - kund(k_i))` for a normally ordered key.
pub fn degree(seq: &[i64], m: i64, r: Ranks) -> Result<i64> {
    let n = seq.len();
    if n > 0 && kund(seq[n - 1], r) > kund(vacuum_momentum(m, n), r) {
        return Err(Error::Invalid(format!("key {seq:?} violates the window bound for charge {m}")));
    }
    Ok((0..n)
        .map(|i| kund(vacuum_momentum(m, i + 1), r) - kund(seq[i], r))
        .sum())
}

/// Window shape: charge `M`, level `l` and degree bound `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub ranks: Ranks,
    pub m: i64,
    pub l: i64,
    pub d: i64,
}

impl Window {
    pub fn new(ranks: Ranks, m: i64, l: i64, d: i64) -> Result<Self> {
        if l < 0 || d < 0 {
            return Err(Error::Invalid(format!("window needs l, d >= 0, got l={l}, d={d}")));
        }
        Ok(Window { ranks, m, l, d })
    }

    pub fn s(&self) -> i64 {
        self.m.rem_euclid(self.ranks.nl())
    }

    /// Number of explicit factors `s + l N L`.
    pub fn size(&self) -> usize {
        (self.s() + self.l * self.ranks.nl()) as usize
    }

    /// The window is a faithful copy of the degree-`d` Fock piece once `l >= d`.
    pub fn is_stable(&self) -> bool {
        self.l >= self.d
    }

    /// First momentum of the implicit vacuum tail.
    pub fn tail_top(&self) -> i64 {
        self.m - self.size() as i64
    }

    pub fn vacuum_key(&self) -> Key {
        (1..=self.size()).map(|i| vacuum_momentum(self.m, i)).collect()
    }

    /// All keys of degree exactly `deg` (`deg <= d` not required here).
    pub fn basis_of_degree(&self, deg: i64) -> Vec<Key> {
        self.enumerate(deg).into_iter().filter(|(_, g)| *g == deg).map(|(k, _)| k).collect()
    }

    /// All keys of degree at most `d`, in lexicographic order.
    pub fn basis(&self) -> Vec<Key> {
        self.enumerate(self.d).into_iter().map(|(k, _)| k).collect()
    }

    fn enumerate(&self, dmax: i64) -> Vec<(Key, i64)> {
        let r = self.ranks;
        let n = self.size();
        let mut out = Vec::new();
        if n == 0 {
            if dmax >= 0 {
                out.push((Vec::new(), 0));
            }
            return out;
        }
        let c = kund(vacuum_momentum(self.m, n), r);
        let lo = 1 - r.nl() * (1 + c);
        let ku_o: Vec<i64> = (1..=n).map(|i| kund(vacuum_momentum(self.m, i), r)).collect();
        let mut cur = Vec::with_capacity(n);
        // Positions are filled from the last one upward so momenta grow. The
        // open positions above `pos` contribute at least their value at the
        // tightest packing, and every bound is monotone in `k`.
        fn rec(
            pos: usize,
            floor: i64,
            partial: i64,
            cur: &mut Vec<i64>,
            ctx: (&[i64], i64, Ranks),
            out: &mut Vec<(Key, i64)>,
        ) {
            let (ku_o, dmax, r) = ctx;
            let mut k = floor;
            loop {
                let p = partial + ku_o[pos] - kund(k, r);
                let rest: i64 = (0..pos).map(|i| ku_o[i] - kund(k + (pos - i) as i64, r)).sum();
                if p + rest > dmax {
                    break;
                }
                cur.push(k);
                if pos == 0 {
                    let mut key = cur.clone();
                    key.reverse();
                    out.push((key, p));
                } else {
                    rec(pos - 1, k + 1, p, cur, ctx, out);
                }
                cur.pop();
                k += 1;
            }
        }
        rec(n - 1, lo, 0, &mut cur, (&ku_o, dmax, r), &mut out);
        out.sort();
        out
    }
}

/// A window vector: the finite part of a Fock vector of charge `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockWindow {
    pub window: Window,
    pub vec: WedgeVec,
}

impl FockWindow {
    pub fn new(window: Window, vec: WedgeVec) -> Result<Self> {
        if vec.len != window.size() {
            return Err(Error::Invalid(format!(
                "wedge of length {} does not fit a window of size {}",
                vec.len,
                window.size()
            )));
        }
        for k in vec.terms().keys() {
            let g = degree(k, window.m, window.ranks)?;
            if g > window.d {
                return Err(Error::WindowOverflow(format!("degree {g} exceeds bound {}", window.d)));
            }
        }
        Ok(FockWindow { window, vec })
    }

    pub fn zero(window: Window) -> Self {
        FockWindow { window, vec: WedgeVec::zero(window.ranks, window.size()) }
    }

    pub fn vacuum(window: Window) -> Self {
        FockWindow { window, vec: WedgeVec::basis(window.ranks, &window.vacuum_key()) }
    }

    pub fn basis(window: Window, key: &[i64]) -> Result<Self> {
        Self::new(window, WedgeVec::basis(window.ranks, key))
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero()
    }

    /// Homogeneous degree, if the vector is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.vec.terms().keys().map(|k| degree(k, self.window.m, self.window.ranks).ok());
        let first = it.next()??;
        it.all(|g| g == Some(first)).then_some(first)
    }

    pub fn add(&self, o: &FockWindow) -> Result<FockWindow> {
        self.same_shape(o)?;
        Ok(FockWindow { window: self.window, vec: self.vec.add(&o.vec) })
    }

    pub fn sub(&self, o: &FockWindow) -> Result<FockWindow> {
        self.same_shape(o)?;
        Ok(FockWindow { window: self.window, vec: self.vec.sub(&o.vec) })
    }

    pub fn scale(&self, c: &Rat) -> FockWindow {
        FockWindow { window: self.window, vec: self.vec.scale(c) }
    }

    fn same_shape(&self, o: &FockWindow) -> Result<()> {
        let (a, b) = (self.window, o.window);
        if (a.m, a.l, a.ranks) != (b.m, b.l, b.ranks) {
            return Err(Error::Invalid("window shapes differ".into()));
        }
        Ok(())
    }
}

/// Appends the vacuum tail so the vector lives in the level-`l2` window.
pub fn embed_tail(w: &FockWindow, l2: i64) -> Result<FockWindow> {
    let src = w.window;
    if l2 <= src.l {
        return Err(Error::Invalid(format!("target level {l2} must exceed {}", src.l)));
    }
    let dst = Window { l: l2, ..src };
    let tail: Vec<i64> = (src.size() + 1..=dst.size()).map(|i| vacuum_momentum(src.m, i)).collect();
    let mut vec = WedgeVec::zero(src.ranks, dst.size());
    for (k, c) in w.vec.terms() {
        let mut key = k.clone();
        key.extend_from_slice(&tail);
        vec.terms.insert(key, c.clone());
    }
    Ok(FockWindow { window: dst, vec })
}

/// Inverse of [`embed_tail`]; fails if some key does not end in the tail.
pub fn restrict(w: &FockWindow, l2: i64) -> Result<FockWindow> {
    let src = w.window;
    if l2 > src.l || l2 < 0 {
        return Err(Error::Invalid(format!("target level {l2} must not exceed {}", src.l)));
    }
    let dst = Window { l: l2, ..src };
    let cut = dst.size();
    let mut vec = WedgeVec::zero(src.ranks, cut);
    for (k, c) in w.vec.terms() {
        let tail_ok = (cut..k.len()).all(|i| k[i] == vacuum_momentum(src.m, i + 1));
        if !tail_ok {
            return Err(Error::WindowOverflow(format!("key {k:?} does not end in the vacuum tail")));
        }
        vec.terms.insert(k[..cut].to_vec(), c.clone());
    }
    Ok(FockWindow { window: dst, vec })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CliffordKind {
    Create,
    Annihilate,
}

/// `psi*_k` prepends `u_k`; `psi_k` deletes `u_k` with sign `(-1)^{i-1}`.
pub fn clifford_finite(kind: CliffordKind, k: i64, w: &WedgeVec) -> WedgeVec {
    match kind {
        CliffordKind::Create => w.map_linear(w.len + 1, |key, out| {
            let mut s = Vec::with_capacity(key.len() + 1);
            s.push(k);
            s.extend_from_slice(key);
            out.push((s, Rat::one()));
        }),
        CliffordKind::Annihilate => w.map_linear(w.len.saturating_sub(1), |key, out| {
            if let Some(i) = key.iter().position(|&x| x == k) {
                let mut s = key.to_vec();
                s.remove(i);
                let c = if i % 2 == 0 { Rat::one() } else { -Rat::one() };
                out.push((s, c));
            }
        }),
    }
}

/// Clifford operators on Fock windows. Creation below the tail top is zero;
/// annihilation there would need a larger window.
pub fn clifford(kind: CliffordKind, k: i64, w: &FockWindow) -> Result<FockWindow> {
    let src = w.window;
    let in_tail = k <= src.tail_top();
    let (dm, vec) = match kind {
        CliffordKind::Create if in_tail => (1, WedgeVec::zero(src.ranks, src.size() + 1)),
        CliffordKind::Create => (1, clifford_finite(kind, k, &w.vec)),
        CliffordKind::Annihilate if in_tail => {
            if w.is_zero() {
                (-1, WedgeVec::zero(src.ranks, src.size().saturating_sub(1)))
            } else {
                return Err(Error::WindowOverflow(format!("psi_{k} reaches into the vacuum tail")));
            }
        }
        CliffordKind::Annihilate => {
            if src.size() == 0 {
                return Err(Error::WindowOverflow("annihilation on an empty window".into()));
            }
            (-1, clifford_finite(kind, k, &w.vec))
        }
    };
    let m2 = src.m + dm;
    let nl = src.ranks.nl();
    let n2 = src.size() as i64 + dm;
    let l2 = (n2 - m2.rem_euclid(nl)) / nl;
    let dst = Window { m: m2, l: l2, ..src };
    FockWindow::new(dst, vec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraics::int;

    fn r22() -> Ranks {
        Ranks::new(2, 2).unwrap()
    }

    #[test]
    fn normal_order_examples() {
        assert_eq!(normal_order(&[3, 5]), Some((vec![5, 3], -1)));
        assert_eq!(normal_order(&[3, 3]), None);
        assert_eq!(normal_order(&[1, 2, 3]), Some((vec![3, 2, 1], -1)));
        assert_eq!(normal_order(&[2, 1, 2]), None);
    }

    #[test]
    fn wedge_project_examples() {
        let r = r22();
        let w = wedge_project(&TensorVec::basis(r, vec![3, 5]));
        assert_eq!(w.coeff(&[5, 3]), int(-1));
        assert!(wedge_project(&TensorVec::basis(r, vec![4, 4])).is_zero());
    }

    #[test]
    fn degree_examples() {
        let r = r22();
        assert_eq!(degree(&[0, -1, -2, -3], 0, r), Ok(0));
        assert_eq!(degree(&[4, -1, -2, -3], 0, r), Ok(1));
        assert!(degree(&[0, -1, -2, -8], 0, r).is_err());
    }

    #[test]
    fn window_enumeration_is_stable_in_l() {
        let r = r22();
        for d in 0..=2 {
            let a = Window::new(r, 0, d, d).unwrap().basis_of_degree(d).len();
            let b = Window::new(r, 0, d + 1, d).unwrap().basis_of_degree(d).len();
            assert_eq!(a, b, "degree {d}");
        }
        let w = Window::new(r, 0, 1, 1).unwrap();
        assert_eq!(w.basis_of_degree(0), vec![w.vacuum_key()]);
    }

    #[test]
    fn embed_restrict_roundtrip() {
        let r = r22();
        let win = Window::new(r, 0, 1, 1).unwrap();
        let v = FockWindow::basis(win, &[4, -1, -2, -3]).unwrap();
        let big = embed_tail(&v, 2).unwrap();
        assert_eq!(big.vec.terms().keys().next().unwrap().len(), 8);
        assert_eq!(restrict(&big, 1).unwrap(), v);
        assert_eq!(embed_tail(&FockWindow::vacuum(win), 3).unwrap().vec.terms().len(), 1);
    }

    #[test]
    fn clifford_on_vacuum() {
        let r = r22();
        let win = Window::new(r, 0, 1, 1).unwrap();
        let vac = FockWindow::vacuum(win);
        let up = clifford(CliffordKind::Create, 1, &vac).unwrap();
        assert_eq!(up.window.m, 1);
        assert_eq!(up.homogeneous_degree(), Some(0));
        assert!(clifford(CliffordKind::Annihilate, 3, &vac).unwrap().is_zero());
        assert!(clifford(CliffordKind::Create, -7, &vac).unwrap().is_zero());
        assert!(clifford(CliffordKind::Annihilate, -7, &vac).is_err());
    }
}
