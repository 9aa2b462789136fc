//! Level-`L` `sl_N`-hat, level-`N` `sl_L`-hat and Heisenberg actions on
//! tensors, wedges and Fock windows, the fermion bilinears behind them, and
//! the quotient by `U'(b^chi)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebraics::{int, Rat};
use crate::error::{Error, Result};
use crate::tensor_space::{compose, decompose, Key, Ranks, TensorVec};
use crate::wedge_fock::{
    clifford, embed_tail, restrict, CliffordKind, FockWindow, WedgeVec, Window,
};

/// `E_{st} (x) e_{ab} (x) z^m` on one factor; `None` is the identity on that
/// factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unit {
    pub color: Option<(i64, i64)>,
    pub spin: Option<(i64, i64)>,
    pub m: i64,
    pub coeff: Rat,
}

/// A one-body operator plus the central constant it picks up on the Fock
/// space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OneBody {
    pub units: Vec<Unit>,
    pub central: Rat,
}

impl OneBody {
    pub fn unit(color: Option<(i64, i64)>, spin: Option<(i64, i64)>, m: i64) -> Self {
        OneBody { units: vec![Unit { color, spin, m, coeff: Rat::one() }], central: Rat::zero() }
    }

    pub fn add(mut self, o: OneBody) -> Self {
        self.units.extend(o.units);
        self.central += o.central;
        self
    }

    pub fn scale(mut self, c: &Rat) -> Self {
        for u in &mut self.units {
            u.coeff *= c;
        }
        self.central *= c;
        self
    }

    fn max_shift(&self) -> i64 {
        self.units.iter().map(|u| u.m.abs()).max().unwrap_or(0)
    }

    /// Image of `u_k`.
    pub fn on_momentum(&self, k: i64, r: Ranks) -> Vec<(i64, Rat)> {
        let t = decompose(k, r);
        let mut out = Vec::new();
        for u in &self.units {
            let mut t2 = t;
            if let Some((s, c)) = u.color {
                if t.kbar != c {
                    continue;
                }
                t2.kbar = s;
            }
            if let Some((a, b)) = u.spin {
                if t.kdot != b {
                    continue;
                }
                t2.kdot = a;
            }
            t2.kund += u.m;
            out.push((compose(t2, r), u.coeff.clone()));
        }
        out
    }

    /// Coefficient of `u_k` in the image of `u_k`.
    fn diagonal(&self, k: i64, r: Ranks) -> Rat {
        self.on_momentum(k, r).into_iter().filter(|(k2, _)| *k2 == k).map(|(_, c)| c).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chevalley {
    E,
    F,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffineGen {
    /// `E_s, F_s, H_s` of `sl_N`-hat, `s` in `[0, N)`.
    SlN(Chevalley, i64),
    /// `e_a, f_a, h_a` of `sl_L`-hat, `a` in `[0, L)`.
    SlL(Chevalley, i64),
    /// `B(m)`, `m != 0`.
    Heis(i64),
}

impl AffineGen {
    pub fn one_body(self, r: Ranks) -> Result<OneBody> {
        let (n, l) = (r.n, r.l);
        let bad = || Error::Invalid(format!("generator {self:?} out of range for N={n}, L={l}"));
        let color = |s, t, m| OneBody::unit(Some((s, t)), None, m);
        let spin = |a, b, m| OneBody::unit(None, Some((a, b)), m);
        let neg = int(-1);
        Ok(match self {
            AffineGen::SlN(g, s) if (1..n).contains(&s) => match g {
                Chevalley::E => color(s, s + 1, 0),
                Chevalley::F => color(s + 1, s, 0),
                Chevalley::H => color(s, s, 0).add(color(s + 1, s + 1, 0).scale(&neg)),
            },
            AffineGen::SlN(g, 0) => match g {
                Chevalley::E => color(n, 1, 1),
                Chevalley::F => color(1, n, -1),
                Chevalley::H => {
                    let mut op = color(n, n, 0).add(color(1, 1, 0).scale(&neg));
                    op.central = int(l);
                    op
                }
            },
            AffineGen::SlL(g, c) if (1..l).contains(&c) => {
                // e_{L-a} = e_{a+1,a}
                let a = l - c;
                match g {
                    Chevalley::E => spin(a + 1, a, 0),
                    Chevalley::F => spin(a, a + 1, 0),
                    Chevalley::H => spin(a + 1, a + 1, 0).add(spin(a, a, 0).scale(&neg)),
                }
            }
            AffineGen::SlL(g, 0) => match g {
                Chevalley::E => spin(1, l, 1),
                Chevalley::F => spin(l, 1, -1),
                Chevalley::H => {
                    let mut op = spin(1, 1, 0).add(spin(l, l, 0).scale(&neg));
                    op.central = int(n);
                    op
                }
            },
            AffineGen::Heis(m) if m != 0 => OneBody::unit(None, None, m),
            _ => return Err(bad()),
        })
    }
}

/// `J_{st}^{ab}(m)`.
pub fn bilinear(s: i64, t: i64, a: i64, b: i64, m: i64) -> OneBody {
    OneBody::unit(Some((s, t)), Some((a, b)), m)
}

/// `J_{st}(m) = sum_a J_{st}^{aa}(m)`.
pub fn bilinear_color(s: i64, t: i64, m: i64) -> OneBody {
    OneBody::unit(Some((s, t)), None, m)
}

/// `J^{ab}(m) = sum_s J_{ss}^{ab}(m)`.
pub fn bilinear_spin(a: i64, b: i64, m: i64) -> OneBody {
    OneBody::unit(None, Some((a, b)), m)
}

/// Images at or below `floor` are dropped.
fn on_key(op: &OneBody, key: &[i64], r: Ranks, floor: i64, out: &mut Vec<(Key, Rat)>) {
    for (i, &k) in key.iter().enumerate() {
        for (k2, c) in op.on_momentum(k, r) {
            if k2 <= floor {
                continue;
            }
            let mut key2 = key.to_vec();
            key2[i] = k2;
            out.push((key2, c));
        }
    }
}

/// Diagonal action through the coproduct; no central term.
pub fn op_tensor(op: &OneBody, v: &TensorVec) -> TensorVec {
    let r = v.ranks;
    v.map_linear(|key, out| on_key(op, key, r, i64::MIN, out))
}

pub fn op_wedge(op: &OneBody, v: &WedgeVec) -> WedgeVec {
    op_wedge_above(op, v, i64::MIN)
}

fn op_wedge_above(op: &OneBody, v: &WedgeVec, floor: i64) -> WedgeVec {
    let r = v.ranks;
    v.map_linear(v.len, |key, out| on_key(op, key, r, floor, out))
}

/// Action on a window vector, normally ordered with respect to `|0>`.
///
/// The vector is padded with vacuum blocks deep enough that every tail
/// factor beyond the padding is sent into the occupied tail, acted on as a
/// finite wedge, and cut back. Images inside the occupied tail vanish.
/// Diagonal terms of the infinite tail are replaced by the normal-ordering
/// constant
/// `sum_{k <= top} e(k) - sum_{k <= 0} e(k)`.
pub fn op_fock(op: &OneBody, w: &FockWindow) -> Result<FockWindow> {
    let src = w.window;
    let r = src.ranks;
    let pad = src.l + op.max_shift() + 2;
    let ext = embed_tail(w, pad)?;
    let top = ext.window.tail_top();
    let mut vec = op_wedge_above(op, &ext.vec, top);
    let mut c = op.central.clone();
    if top <= 0 {
        for k in top + 1..=0 {
            c -= op.diagonal(k, r);
        }
    } else {
        for k in 1..=top {
            c += op.diagonal(k, r);
        }
    }
    vec.add_scaled(&ext.vec, &c);
    let raise = op.units.iter().filter(|u| !u.coeff.is_zero()).map(|u| -u.m).max().unwrap_or(0);
    let d2 = src.d + raise.max(0);
    let out = FockWindow { window: Window { d: d2, ..ext.window }, vec };
    let cut = restrict(&out, src.l)?;
    FockWindow::new(cut.window, cut.vec)
}

pub fn act_tensor(g: AffineGen, v: &TensorVec) -> Result<TensorVec> {
    Ok(op_tensor(&g.one_body(v.ranks)?, v))
}

pub fn act_wedge(g: AffineGen, v: &WedgeVec) -> Result<WedgeVec> {
    Ok(op_wedge(&g.one_body(v.ranks)?, v))
}

pub fn act_fock(g: AffineGen, w: &FockWindow) -> Result<FockWindow> {
    op_fock(&g.one_body(w.window.ranks)?, w)
}

/// `J_{st}^{ab}(m)` on a window vector.
pub fn fermion_bilinear(s: i64, t: i64, a: i64, b: i64, m: i64, w: &FockWindow) -> Result<FockWindow> {
    op_fock(&bilinear(s, t, a, b, m), w)
}

/// Weight data attached to a charge `M` and a level-`L` dominant weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualWeightData {
    pub m: i64,
    /// `a_0, ..., a_{N-1}`.
    pub lambda: Vec<i64>,
    pub l: Vec<i64>,
    /// Coefficients of `omega_0, ..., omega_{L-1}`.
    pub omega: Vec<i64>,
    /// `chi(1), ..., chi(L)`, normalized by `chi(1) = 0`.
    pub chi: Vec<i64>,
}

/// Solves `a_s = l_s - l_{s+1}`, `M = sum l_s`, and reads off
/// `omega = sum_s omega_{l_s}` and `chi` from
/// `bar omega = sum_a chi(L + 1 - a) bar theta_a`.
pub fn dual_weight(r: Ranks, m: i64, lambda: &[i64]) -> Result<DualWeightData> {
    let (n, l) = (r.n, r.l);
    if lambda.len() as i64 != n || lambda.iter().any(|&a| a < 0) || lambda.iter().sum::<i64>() != l {
        return Err(Error::Invalid(format!("{lambda:?} is not a dominant weight of level {l}")));
    }
    let weighted: i64 = (1..n).map(|s| s * lambda[s as usize]).sum();
    if (m - weighted).rem_euclid(n) != 0 {
        return Err(Error::Invalid(format!("{lambda:?} is not congruent to charge {m}")));
    }
    let ln = (m - weighted) / n;
    let ls: Vec<i64> = (1..=n).map(|s| ln + (s..n).map(|t| lambda[t as usize]).sum::<i64>()).collect();
    let mut omega = vec![0i64; l as usize];
    for &x in &ls {
        omega[x.rem_euclid(l) as usize] += 1;
    }
    // chi(L + 1 - a) = #{s : l_s mod L >= a}
    let chi = (1..=l)
        .map(|b| {
            let a = l + 1 - b;
            ls.iter().filter(|&&x| x.rem_euclid(l) >= a).count() as i64
        })
        .collect();
    Ok(DualWeightData { m, lambda: lambda.to_vec(), l: ls, omega, chi })
}

/// `Xi_1(l_1) ... Xi_N(l_N) |0>`, in the window of its own degree.
pub fn frenkel_hw(r: Ranks, m: i64, lambda: &[i64]) -> Result<FockWindow> {
    let dw = dual_weight(r, m, lambda)?;
    let big = 1 + dw.l.iter().map(|x| x.abs()).max().unwrap_or(0);
    let start = Window::new(r, 0, big, big * big * r.n)?;
    let mut w = FockWindow::vacuum(start);
    for (idx, &ls) in dw.l.iter().enumerate().rev() {
        let s = idx as i64 + 1;
        if ls > 0 {
            for j in 0..ls {
                w = clifford(CliffordKind::Create, s + r.n * j, &w)?;
            }
        } else {
            for j in 1..=-ls {
                w = clifford(CliffordKind::Annihilate, s - r.n * j, &w)?;
            }
        }
    }
    let d = w.homogeneous_degree().unwrap_or(0);
    FockWindow::new(Window { d, ..w.window }, w.vec)
}

/// A subspace of wedge vectors kept in echelon form: each row's pivot is its
/// smallest key.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<Key, BTreeMap<Key, Rat>>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &BTreeMap<Key, Rat>) -> BTreeMap<Key, Rat> {
        let mut v = v.clone();
        let mut cursor: Option<Key> = None;
        loop {
            let next = match &cursor {
                None => v.keys().find(|k| self.rows.contains_key(*k)).cloned(),
                Some(c) => v
                    .range::<Key, _>((std::ops::Bound::Excluded(c.clone()), std::ops::Bound::Unbounded))
                    .map(|(k, _)| k)
                    .find(|k| self.rows.contains_key(*k))
                    .cloned(),
            };
            let Some(p) = next else { break };
            let c = v[&p].clone();
            for (k, x) in &self.rows[&p] {
                let e = v.entry(k.clone()).or_insert_with(Rat::zero);
                *e -= &c * x;
                if e.is_zero() {
                    v.remove(k);
                }
            }
            cursor = Some(p);
        }
        v
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &BTreeMap<Key, Rat>) -> bool {
        let rem = self.reduce(v);
        let Some((p, c)) = rem.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let row = rem.into_iter().map(|(k, x)| (k, x / &c)).collect();
        self.rows.insert(p, row);
        true
    }

    pub fn contains(&self, v: &BTreeMap<Key, Rat>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// `U'(b^chi) F_M` in degree `d`, inside the level-`l` window.
#[derive(Clone, Debug)]
pub struct UPrime {
    pub window: Window,
    pub chi: Vec<i64>,
    pub degree: i64,
    pub span: Echelon,
    pub ambient_dim: usize,
}

impl UPrime {
    pub fn quotient_dim(&self) -> usize {
        self.ambient_dim - self.span.rank()
    }

    /// Whether `w` vanishes in the quotient.
    pub fn contains(&self, w: &FockWindow) -> bool {
        self.span.contains(w.vec.terms())
    }

    pub fn remainder(&self, w: &FockWindow) -> BTreeMap<Key, Rat> {
        self.span.reduce(w.vec.terms())
    }
}

/// `h_a^chi = h_a - (chi(L + 1 - a) - chi(L - a))`.
pub fn h_chi(r: Ranks, a: i64, chi: &[i64]) -> Result<OneBody> {
    let mut op = AffineGen::SlL(Chevalley::H, a).one_body(r)?;
    op.central -= int(chi[(r.l - a) as usize] - chi[(r.l - a - 1) as usize]);
    Ok(op)
}

/// Since `U'(b^chi)` is generated by `h_a^chi, f_0, ..., f_{L-1}` as a
/// non-unital algebra, `U'(b^chi) F = sum_g g F` over generators `g`. The
/// degree-`d` piece is then spanned by `h_a^chi` and `f_a` (`a > 0`) on
/// degree `d` and by `f_0` on degree `d - 1`.
pub fn uprime_subspace(r: Ranks, chi: &[i64], m: i64, d: i64, l: i64) -> Result<UPrime> {
    if chi.len() as i64 != r.l {
        return Err(Error::Invalid(format!("chi needs {} entries", r.l)));
    }
    if l < d {
        return Err(Error::Invalid(format!("window level {l} is below degree {d}")));
    }
    let win = Window::new(r, m, l, d)?;
    let top = win.basis_of_degree(d);
    let mut jobs: Vec<(OneBody, Key)> = Vec::new();
    for a in 1..r.l {
        let h = h_chi(r, a, chi)?;
        let f = AffineGen::SlL(Chevalley::F, a).one_body(r)?;
        for k in &top {
            jobs.push((h.clone(), k.clone()));
            jobs.push((f.clone(), k.clone()));
        }
    }
    if d > 0 {
        let f0 = AffineGen::SlL(Chevalley::F, 0).one_body(r)?;
        for k in Window::new(r, m, l, d - 1)?.basis_of_degree(d - 1) {
            jobs.push((f0.clone(), k));
        }
    }
    let images: Vec<Result<BTreeMap<Key, Rat>>> = jobs
        .par_iter()
        .map(|(op, k)| {
            let w = FockWindow::basis(win, k)?;
            Ok(op_fock(op, &w)?.vec.terms().clone())
        })
        .collect();
    let mut span = Echelon::default();
    for im in images {
        let im = im?;
        if !im.is_empty() {
            span.insert(&im);
        }
    }
    Ok(UPrime { window: win, chi: chi.to_vec(), degree: d, span, ambient_dim: top.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r22() -> Ranks {
        Ranks::new(2, 2).unwrap()
    }

    #[test]
    fn cartan_kills_vacuum() {
        let r = r22();
        let w = FockWindow::vacuum(Window::new(r, 0, 1, 1).unwrap());
        for s in 1..r.n {
            assert!(act_fock(AffineGen::SlN(Chevalley::H, s), &w).unwrap().is_zero());
        }
        for a in 1..r.l {
            assert!(act_fock(AffineGen::SlL(Chevalley::H, a), &w).unwrap().is_zero());
        }
    }

    #[test]
    fn dual_weight_examples() {
        let r = r22();
        let v = dual_weight(r, 0, &[2, 0]).unwrap();
        assert_eq!(v.l, vec![0, 0]);
        assert_eq!(v.omega, vec![2, 0]);
        assert_eq!(v.chi, vec![0, 0]);
        assert_eq!(dual_weight(r, 2, &[0, 2]).unwrap().l, vec![2, 0]);
        assert!(dual_weight(r, 1, &[2, 0]).is_err());
    }

    #[test]
    fn frenkel_vector_for_two_lambda_one() {
        let r = r22();
        let w = frenkel_hw(r, 2, &[0, 2]).unwrap();
        assert_eq!(w.window.m, 2);
        let keys: Vec<&Key> = w.vec.terms().keys().collect();
        assert_eq!(keys.len(), 1);
        assert_eq!(&keys[0][..3], &[3, 1, 0]);
        let vac = frenkel_hw(r, 0, &[2, 0]).unwrap();
        assert_eq!(vac.vec.terms().keys().next().unwrap(), &vac.window.vacuum_key());
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::default();
        let v = |xs: &[(i64, i64)]| xs.iter().map(|&(k, c)| (vec![k], int(c))).collect::<BTreeMap<_, _>>();
        assert!(e.insert(&v(&[(1, 1), (2, 1)])));
        assert!(e.insert(&v(&[(2, 1), (3, 1)])));
        assert!(!e.insert(&v(&[(1, 1), (3, -1)])));
        assert!(e.contains(&v(&[(1, 2), (2, 4), (3, 2)])));
        assert!(!e.contains(&v(&[(3, 1)])));
        assert_eq!(e.rank(), 2);
    }
}
