//! The Yangian action on wedges through Dunkl L-operators, its renormalized
//! stable version on Fock windows, the quantum determinant, highest-weight
//! vectors and the verification suites built on them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::affine_actions::{bilinear, bilinear_color, bilinear_spin, op_fock, uprime_subspace, OneBody, UPrime};
use crate::algebraics::{int, rat, shift_arg_generic, Rat, RatFuncU, SeriesU};
use crate::daha::{intertwiner_apply, is_regular_pairing, v0, x_r, RegSeq};
use crate::diagrams::{diagram_from_r, FiniteSkew, SemiDiagram};
use crate::error::{Error, Result};
use crate::tensor_space::{
    apply_color_unit, apply_dunkl, decompose, kund, DunklParams, Key, Ranks, TensorVec,
};
use crate::wedge_fock::{embed_tail, restrict, vacuum_momentum, wedge_project, FockWindow, WedgeVec, Window};

// ---------------------------------------------------------------------------
// Reports

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

/// Outcome of a verification suite, one case per checked identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.to_string(), cases: Vec::new() }
    }

    pub fn push(&mut self, id: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.cases.push(Case { id: id.into(), status, detail: detail.into() });
    }

    pub fn extend(&mut self, o: Report) {
        self.cases.extend(o.cases);
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> Vec<&Case> {
        self.cases.iter().filter(|c| c.status == Status::Fail).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

// ---------------------------------------------------------------------------
// L-operator on tensors

/// `[s-1][k]`: coefficient of `u^{-k}` in `T_{st}(u)` applied to a fixed
/// vector, for every `s`.
pub type Column = Vec<Vec<WedgeVec>>;

/// All entries `T^_{st}(u) v` of one column, as series up to `u^{-order}`.
///
/// The factors are multiplied from the right: with `Y_b` the partial
/// product over factors `i+1..n` ending in chain index `b`, factor `i`
/// contributes `L^i_{ab} = delta_ab + (E_ba)_i sum_m d_i^m u^{-m-1}`.
pub fn that_column(t: i64, order: usize, p: &DunklParams, v: &TensorVec) -> Result<Vec<Vec<TensorVec>>> {
    let r = v.ranks;
    if !(1..=r.n).contains(&t) {
        return Err(Error::Invalid(format!("color index {t} out of range")));
    }
    let n = v.len;
    let zero_series = || vec![TensorVec::zero(r, n); order + 1];
    let mut cur: Vec<Vec<TensorVec>> = (0..r.n).map(|_| zero_series()).collect();
    cur[(t - 1) as usize][0] = v.clone();
    let one = Rat::one();
    for i in (0..n).rev() {
        let mut next: Vec<Vec<TensorVec>> = (0..r.n).map(|_| zero_series()).collect();
        for (bi, ser) in cur.iter().enumerate() {
            let b = bi as i64 + 1;
            for k in 0..=order {
                if ser[k].is_zero() {
                    continue;
                }
                next[bi][k].add_scaled(&ser[k], &one);
                let mut w = ser[k].clone();
                for m in 0..order - k {
                    for a in 1..=r.n {
                        let e = apply_color_unit(i, b, a, &w)?;
                        next[(a - 1) as usize][k + m + 1].add_scaled(&e, &one);
                    }
                    if m + 1 < order - k {
                        w = apply_dunkl(i, p, &w)?;
                    }
                }
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// Coefficient of `u^{-k}` in `T^_{st}(u) v`.
pub fn that_apply(s: i64, t: i64, k: usize, v: &TensorVec, p: &DunklParams) -> Result<TensorVec> {
    let col = that_column(t, k, p, v)?;
    col.into_iter()
        .nth((s - 1) as usize)
        .map(|mut ser| ser.swap_remove(k))
        .ok_or_else(|| Error::Invalid(format!("color index {s} out of range")))
}

// ---------------------------------------------------------------------------
// Renormalization

fn spin_counts(key: &[i64], r: Ranks) -> Vec<i64> {
    let mut c = vec![0i64; r.l as usize];
    for &k in key {
        c[(decompose(k, r).kdot - 1) as usize] += 1;
    }
    c
}

/// `Phi_{s, lev}(u) = prod_a (u - g_a + 1) / (u - g_a)` for the wedge `key`
/// of charge `charge`, with
/// `g_a = s/L + (kappa + N) lev + kappa (kund(o_1) + [s > 0]) + nu(a) + x_a / 2`
/// and `x_a = #{kdot = a} - n/L`.
pub fn big_phi(r: Ranks, p: &DunklParams, charge: i64, key: &[i64], lev: i64) -> RatFuncU {
    let s = charge.rem_euclid(r.nl());
    let n = key.len() as i64;
    let counts = spin_counts(key, r);
    let ds = if s > 0 { 1 } else { 0 };
    let base = rat(s, r.l)
        + &p.kappa * int(kund(vacuum_momentum(charge, 1), r) + ds)
        + (&p.kappa + int(r.n)) * int(lev);
    let mut f = RatFuncU::one();
    for a in 1..=r.l {
        let x = rat(counts[(a - 1) as usize] * r.l - n, r.l);
        let g = &base + p.nu(a) + x / int(2);
        f = f.mul(&RatFuncU::mobius(&g - int(1), g));
    }
    f
}

/// `phi(u)_{s + l N L} = prod_{lev < l} Phi_{s, lev}(u)` on the wedge `key`.
pub fn phi_norm(r: Ranks, p: &DunklParams, charge: i64, key: &[i64]) -> Result<RatFuncU> {
    let nl = r.nl();
    let s = charge.rem_euclid(nl);
    let n = key.len() as i64;
    if n < s || (n - s) % nl != 0 {
        return Err(Error::Invalid(format!("wedge length {n} does not fit charge {charge}")));
    }
    Ok((0..(n - s) / nl).fold(RatFuncU::one(), |acc, lev| acc.mul(&big_phi(r, p, charge, key, lev))))
}

fn convolve(a: &SeriesU, col: &[WedgeVec]) -> Vec<WedgeVec> {
    (0..col.len())
        .map(|k| {
            let mut acc = WedgeVec::zero(col[0].ranks, col[0].len);
            for j in 0..=k {
                if !a.coeff(j).is_zero() {
                    acc.add_scaled(&col[k - j], a.coeff(j));
                }
            }
            acc
        })
        .collect()
}

// ---------------------------------------------------------------------------
// The action on wedges

/// `rho(T_{st}(u))` on wedges, or the renormalized `phi(u)^{-1} rho` once a
/// charge is fixed. Columns on basis wedges are cached.
pub struct Yangian {
    pub ranks: Ranks,
    pub params: DunklParams,
    pub order: usize,
    pub charge: Option<i64>,
    cache: Mutex<HashMap<(i64, Key), Arc<Column>>>,
}

impl Yangian {
    pub fn new(ranks: Ranks, params: DunklParams, order: usize) -> Self {
        Yangian { ranks, params, order, charge: None, cache: Mutex::new(HashMap::new()) }
    }

    pub fn normalized(ranks: Ranks, params: DunklParams, order: usize, charge: i64) -> Self {
        Yangian { charge: Some(charge), ..Self::new(ranks, params, order) }
    }

    fn column_key(&self, t: i64, key: &Key) -> Result<Arc<Column>> {
        if let Some(c) = self.cache.lock().expect("cache lock").get(&(t, key.clone())) {
            return Ok(c.clone());
        }
        let v = TensorVec::basis(self.ranks, key.clone());
        let raw = that_column(t, self.order, &self.params, &v)?;
        let mut col: Column = raw.iter().map(|ser| ser.iter().map(wedge_project).collect()).collect();
        if let Some(m) = self.charge {
            let inv = phi_norm(self.ranks, &self.params, m, key)?.expand(self.order)?.inv()?;
            col = col.iter().map(|ser| convolve(&inv, ser)).collect();
        }
        let col = Arc::new(col);
        self.cache.lock().expect("cache lock").insert((t, key.clone()), col.clone());
        Ok(col)
    }

    /// `T_{st}(u) w` for all `s`, as series.
    pub fn column(&self, t: i64, w: &WedgeVec) -> Result<Column> {
        if !(1..=self.ranks.n).contains(&t) {
            return Err(Error::Invalid(format!("color index {t} out of range")));
        }
        let parts: Vec<(Arc<Column>, Rat)> = w
            .terms()
            .par_iter()
            .map(|(k, c)| Ok((self.column_key(t, k)?, c.clone())))
            .collect::<Result<_>>()?;
        let mut out: Column =
            (0..self.ranks.n).map(|_| vec![WedgeVec::zero(self.ranks, w.len); self.order + 1]).collect();
        for (col, c) in parts {
            for (o, ser) in out.iter_mut().zip(col.iter()) {
                for (acc, x) in o.iter_mut().zip(ser) {
                    acc.add_scaled(x, &c);
                }
            }
        }
        Ok(out)
    }

    /// `T_{st}(u) w` as a series of length `order + 1`.
    pub fn series(&self, s: i64, t: i64, w: &WedgeVec) -> Result<Vec<WedgeVec>> {
        if !(1..=self.ranks.n).contains(&s) {
            return Err(Error::Invalid(format!("color index {s} out of range")));
        }
        Ok(self.column(t, w)?.swap_remove((s - 1) as usize))
    }

    /// Coefficient of `u^{-k}` in `T_{st}(u) w`.
    pub fn apply(&self, s: i64, t: i64, k: usize, w: &WedgeVec) -> Result<WedgeVec> {
        if k > self.order {
            return Err(Error::Invalid(format!("order {k} exceeds configured order {}", self.order)));
        }
        if k == 0 {
            return Ok(if s == t { w.clone() } else { WedgeVec::zero(w.ranks, w.len) });
        }
        Ok(self.series(s, t, w)?.swap_remove(k))
    }

    /// `T_{st}(u - j) Y(u)` for a vector-valued series `Y`.
    pub fn apply_shifted(&self, s: i64, t: i64, j: i64, ys: &[WedgeVec]) -> Result<Vec<WedgeVec>> {
        let (r, len) = (ys[0].ranks, ys[0].len);
        let mut out = vec![WedgeVec::zero(r, len); self.order + 1];
        for (b, y) in ys.iter().enumerate().take(self.order + 1) {
            if y.is_zero() {
                continue;
            }
            let z = self.series(s, t, y)?;
            let shifted = shift_arg_generic(
                &z[..=self.order - b],
                &int(-j),
                || WedgeVec::zero(r, len),
                |acc, x, c| acc.add_scaled(x, c),
            );
            for (a, x) in shifted.into_iter().enumerate() {
                out[a + b].add_scaled(&x, &Rat::one());
            }
        }
        Ok(out)
    }

    /// `Delta(u) w = sum_sigma sgn(sigma) T_{1 sigma(1)}(u) ... T_{N sigma(N)}(u - N + 1) w`.
    pub fn qdet_series(&self, w: &WedgeVec) -> Result<Vec<WedgeVec>> {
        let mut ys = vec![WedgeVec::zero(w.ranks, w.len); self.order + 1];
        ys[0] = w.clone();
        self.qdet_rows(self.ranks.n, 0, ys)
    }

    fn qdet_rows(&self, row: i64, used: u64, ys: Vec<WedgeVec>) -> Result<Vec<WedgeVec>> {
        if row == 0 {
            return Ok(ys);
        }
        let mut acc = vec![WedgeVec::zero(ys[0].ranks, ys[0].len); self.order + 1];
        for c in 1..=self.ranks.n {
            if used & (1 << c) != 0 {
                continue;
            }
            let below = (1..c).filter(|&c2| used & (1 << c2) != 0).count();
            let sign = if below % 2 == 0 { int(1) } else { int(-1) };
            let z = self.apply_shifted(row, c, row - 1, &ys)?;
            if z.iter().all(|x| x.is_zero()) {
                continue;
            }
            let rest = self.qdet_rows(row - 1, used | (1 << c), z)?;
            for (a, x) in acc.iter_mut().zip(&rest) {
                a.add_scaled(x, &sign);
            }
        }
        Ok(acc)
    }

    /// Coefficient of `u^{-k}` in `Delta(u) w`.
    pub fn qdet_apply(&self, k: usize, w: &WedgeVec) -> Result<WedgeVec> {
        if k > self.order {
            return Err(Error::Invalid(format!("order {k} exceeds configured order {}", self.order)));
        }
        Ok(self.qdet_series(w)?.swap_remove(k))
    }

    fn check_fock(&self, fw: &FockWindow) -> Result<()> {
        if self.charge != Some(fw.window.m) {
            return Err(Error::Invalid(format!(
                "window of charge {} needs the action normalized at that charge",
                fw.window.m
            )));
        }
        if !fw.window.is_stable() {
            return Err(Error::Invalid(format!(
                "window level {} is below its degree bound {}",
                fw.window.l, fw.window.d
            )));
        }
        Ok(())
    }

    fn wrap(window: Window, vs: Vec<WedgeVec>) -> Result<Vec<FockWindow>> {
        vs.into_iter().map(|v| FockWindow::new(window, v)).collect()
    }

    /// `rho-bar(T_{st}(u))` on a window vector.
    pub fn fock_series(&self, s: i64, t: i64, fw: &FockWindow) -> Result<Vec<FockWindow>> {
        self.check_fock(fw)?;
        Self::wrap(fw.window, self.series(s, t, &fw.vec)?)
    }

    pub fn fock_apply(&self, s: i64, t: i64, k: usize, fw: &FockWindow) -> Result<FockWindow> {
        self.check_fock(fw)?;
        FockWindow::new(fw.window, self.apply(s, t, k, &fw.vec)?)
    }

    pub fn fock_qdet_series(&self, fw: &FockWindow) -> Result<Vec<FockWindow>> {
        self.check_fock(fw)?;
        Self::wrap(fw.window, self.qdet_series(&fw.vec)?)
    }
}

/// Coefficient of `u^{-k}` of `rho(T_{st}(u)) w`.
pub fn rho_apply(s: i64, t: i64, k: usize, w: &WedgeVec, p: &DunklParams) -> Result<WedgeVec> {
    Yangian::new(w.ranks, p.clone(), k).apply(s, t, k, w)
}

/// Coefficient of `u^{-k}` of `rho-bar(T_{st}(u)) w` at charge `m`.
pub fn rho_bar_apply(s: i64, t: i64, k: usize, w: &WedgeVec, p: &DunklParams, m: i64) -> Result<WedgeVec> {
    Yangian::normalized(w.ranks, p.clone(), k, m).apply(s, t, k, w)
}

// ---------------------------------------------------------------------------
// Highest-weight vectors

/// The finite diagram of a regular `r` with at most `n` squares per column.
pub fn finite_diagram(r: &RegSeq, n: i64) -> Result<FiniteSkew> {
    if !is_regular_pairing(r) {
        return Err(Error::NotRegular(format!("{:?}", r.r)));
    }
    let fs = FiniteSkew::from_squares(r.spin_rank, &diagram_from_r(r))?;
    if !fs.is_type_n(n) {
        return Err(Error::Invalid(format!(
            "a column of height {} exceeds N={n}",
            fs.max_column_height()
        )));
    }
    Ok(fs)
}

/// `psi_r = wedge(phi_{x_r} (v_0 (x) v_r))` at `kappa = L`, `nu(a) = a`, where
/// `v_r` colors each square by its height in its column.
pub fn psi_r(r: &RegSeq, n: i64) -> Result<WedgeVec> {
    let fs = finite_diagram(r, n)?;
    let ranks = Ranks::new(n, r.spin_rank)?;
    let v = v0(ranks, &fs.heights_natural())?;
    let x = intertwiner_apply(&x_r(r), &DunklParams::standard(ranks), &v)?;
    let w = wedge_project(&x);
    if w.is_zero() {
        return Err(Error::Invalid(format!("psi vanishes for r = {:?}", r.r)));
    }
    Ok(w)
}

/// `lambda` with `target = lambda * base`, if any.
pub fn eigenvalue(target: &WedgeVec, base: &WedgeVec) -> Option<Rat> {
    let (k, c) = base.terms().iter().next()?;
    let lam = target.coeff(k) / c;
    (target == &base.scale(&lam)).then_some(lam)
}

fn eigenvalue_mod(u: &UPrime, target: &FockWindow, base: &BTreeMap<Key, Rat>) -> Option<Rat> {
    let t = u.remainder(target);
    let (k, c) = base.iter().next()?;
    let lam = t.get(k).cloned().unwrap_or_else(Rat::zero) / c;
    let ok = base.iter().all(|(k, c)| t.get(k).cloned().unwrap_or_else(Rat::zero) == c * &lam)
        && t.keys().all(|k| base.contains_key(k));
    ok.then_some(lam)
}

/// `prod (u - m - c + 1) / (u - m - c)` over the bottom squares of the
/// columns with at least `k` squares.
pub fn finite_eigenvalue(fs: &FiniteSkew, k: i64) -> RatFuncU {
    let m = fs.m();
    fs.columns()
        .iter()
        .filter(|(_, (top, bottom))| bottom - top + 1 >= k)
        .fold(RatFuncU::one(), |acc, (&j, &(_, bottom))| {
            let c = j - bottom;
            acc.mul(&RatFuncU::mobius(int(m + c - 1), int(m + c)))
        })
}

fn series_string(s: &SeriesU) -> String {
    s.to_string()
}

/// Highest-weight checks for `psi_r` under `rho`.
pub fn verify_hw_finite(r: &RegSeq, n: i64, order: usize) -> Result<Report> {
    let mut rep = Report::new("hw");
    let tag = format!("{:?}", r.r);
    let fs = finite_diagram(r, n)?;
    let psi = psi_r(r, n)?;
    rep.push(format!("{tag} psi nonzero"), true, format!("{} terms", psi.terms().len()));
    let ranks = Ranks::new(n, r.spin_rank)?;
    let y = Yangian::new(ranks, DunklParams::standard(ranks), order);
    for t in 1..=n {
        let col = y.column(t, &psi)?;
        for s in t + 1..=n {
            let bad: Vec<usize> = (1..=order).filter(|&j| !col[(s - 1) as usize][j].is_zero()).collect();
            rep.push(format!("{tag} T{s}{t} annihilates"), bad.is_empty(), format!("nonzero orders {bad:?}"));
        }
        let ser: Option<Vec<Rat>> = col[(t - 1) as usize].iter().map(|x| eigenvalue(x, &psi)).collect();
        let want = finite_eigenvalue(&fs, t).expand(order)?;
        match ser {
            Some(c) => {
                let got = SeriesU::from_coeffs(c);
                rep.push(
                    format!("{tag} T{t}{t} eigenvalue"),
                    got == want,
                    format!("got {}, want {}", series_string(&got), series_string(&want)),
                );
            }
            None => rep.push(format!("{tag} T{t}{t} eigenvalue"), false, "not an eigenvector"),
        }
    }
    Ok(rep)
}

/// Result of the Fock highest-weight checks; `delta` is the quotient
/// eigenvalue series of the quantum determinant when it exists.
#[derive(Clone, Debug)]
pub struct FockHw {
    pub report: Report,
    pub delta: Option<SeriesU>,
}

/// The highest-weight vector `Psi` of a charge-0 semi-infinite diagram in
/// the window of level `max(degree, 1)`.
pub fn psi_fock(sd: &SemiDiagram) -> Result<FockWindow> {
    let d = sd.degree();
    let l = d.max(1);
    let fs = sd.finite_part(l)?;
    let psi = psi_r(&fs.r()?, sd.ranks.n)?;
    FockWindow::new(Window::new(sd.ranks, 0, l, d)?, psi)
}

/// Highest-weight checks for `[Psi]` in the quotient by `U'(b^0)`.
pub fn verify_hw_fock(sd: &SemiDiagram, order: usize) -> Result<FockHw> {
    let ranks = sd.ranks;
    let tag = format!("h{:?}", sd.overrides());
    let mut rep = Report::new("fock-hw");
    let psi = psi_fock(sd)?;
    let w = psi.window;
    let u = uprime_subspace(ranks, &vec![0; ranks.l as usize], 0, w.d, w.l)?;
    let base = u.remainder(&psi);
    rep.push(format!("{tag} [Psi] nonzero"), !base.is_empty(), format!("quotient dim {}", u.quotient_dim()));
    if base.is_empty() {
        return Ok(FockHw { report: rep, delta: None });
    }
    let y = Yangian::normalized(ranks, DunklParams::standard(ranks), order, 0);
    let mut eig: Vec<Option<SeriesU>> = Vec::new();
    for t in 1..=ranks.n {
        let col = y.column(t, &psi.vec)?;
        for s in t + 1..=ranks.n {
            let bad: Vec<usize> = (1..=order)
                .filter(|&j| {
                    let x = FockWindow { window: w, vec: col[(s - 1) as usize][j].clone() };
                    !u.contains(&x)
                })
                .collect();
            rep.push(format!("{tag} T{s}{t} annihilates"), bad.is_empty(), format!("nonzero orders {bad:?}"));
        }
        let ser: Option<Vec<Rat>> = col[(t - 1) as usize]
            .iter()
            .map(|x| eigenvalue_mod(&u, &FockWindow { window: w, vec: x.clone() }, &base))
            .collect();
        rep.push(format!("{tag} T{t}{t} eigenvector"), ser.is_some(), "");
        eig.push(ser.map(SeriesU::from_coeffs));
    }
    let ps = sd.drinfeld();
    for k in 1..ranks.n {
        let id = format!("{tag} Drinfeld ratio {k}");
        let (Some(a), Some(b)) = (&eig[k as usize], &eig[(k - 1) as usize]) else {
            rep.push(id, false, "missing eigenvalue");
            continue;
        };
        let got = a.div(b)?.shift_arg(&int(-k));
        let p = &ps[(k - 1) as usize];
        let want = RatFuncU::new(p.shift(&int(-1)), p.clone())?.expand(order)?;
        rep.push(id, got == want, format!("got {}, want {}", series_string(&got), series_string(&want)));
    }
    let dq = y.qdet_series(&psi.vec)?;
    let delta: Option<Vec<Rat>> =
        dq.iter().map(|x| eigenvalue_mod(&u, &FockWindow { window: w, vec: x.clone() }, &base)).collect();
    let delta = delta.map(SeriesU::from_coeffs);
    let want = sd.qdet_ratio().expand(order)?;
    match &delta {
        Some(got) => rep.push(
            format!("{tag} qdet eigenvalue"),
            got == &want,
            format!("got {}, want {}", series_string(got), series_string(&want)),
        ),
        None => rep.push(format!("{tag} qdet eigenvalue"), false, "not an eigenvector"),
    }
    Ok(FockHw { report: rep, delta })
}

// ---------------------------------------------------------------------------
// Structural checks

/// RTT coefficient identities
/// `[T^(a+1)_pq, T^(b)_st] - [T^(a)_pq, T^(b+1)_st] = T^(b)_sq T^(a)_pt - T^(a)_sq T^(b)_pt`
/// for `a, b <= max`, on every basis vector of the window.
pub fn rtt_check(window: Window, p: &DunklParams, max: usize) -> Result<Report> {
    let r = window.ranks;
    let y = Yangian::new(r, p.clone(), max + 1);
    let basis = window.basis();
    let quads: Vec<(i64, i64, i64, i64)> = (1..=r.n)
        .flat_map(|a| (1..=r.n).flat_map(move |b| (1..=r.n).flat_map(move |c| (1..=r.n).map(move |d| (a, b, c, d)))))
        .collect();
    let results: Vec<Result<Case>> = quads
        .par_iter()
        .map(|&(pp, q, s, t)| {
            let mut bad = Vec::new();
            for key in &basis {
                let e = WedgeVec::basis(r, key);
                let prod = |x1: (i64, i64, usize), x2: (i64, i64, usize)| -> Result<WedgeVec> {
                    let inner = y.apply(x2.0, x2.1, x2.2, &e)?;
                    y.apply(x1.0, x1.1, x1.2, &inner)
                };
                for a in 0..=max {
                    for b in 0..=max {
                        let lhs = prod((pp, q, a + 1), (s, t, b))?
                            .sub(&prod((s, t, b), (pp, q, a + 1))?)
                            .sub(&prod((pp, q, a), (s, t, b + 1))?)
                            .add(&prod((s, t, b + 1), (pp, q, a))?);
                        let rhs = prod((s, q, b), (pp, t, a))?.sub(&prod((s, q, a), (pp, t, b))?);
                        if lhs != rhs {
                            bad.push(format!("{key:?} a={a} b={b}"));
                        }
                    }
                }
            }
            Ok(Case {
                id: format!("T{pp}{q} T{s}{t}"),
                status: if bad.is_empty() { Status::Pass } else { Status::Fail },
                detail: if bad.is_empty() { format!("{} vectors", basis.len()) } else { bad.join("; ") },
            })
        })
        .collect();
    let mut rep = Report::new("rtt");
    for c in results {
        rep.cases.push(c?);
    }
    Ok(rep)
}

/// `rho^{(n + NL)}(T(u)) (w ^ tail) = (Phi_{s,l}(u) rho^{(n)}(T(u)) w) ^ tail` on
/// every basis vector of the window, for all `T_{st}`.
pub fn intertwining_check(window: Window, p: &DunklParams, order: usize) -> Result<Report> {
    let r = window.ranks;
    let y = Yangian::new(r, p.clone(), order);
    let mut rep = Report::new("intertwining");
    for key in window.basis() {
        let w = FockWindow::basis(window, &key)?;
        let big = embed_tail(&w, window.l + 1)?;
        let phi = big_phi(r, p, window.m, &key, window.l).expand(order)?;
        let mut bad = Vec::new();
        for t in 1..=r.n {
            let small = y.column(t, &w.vec)?;
            let large = y.column(t, &big.vec)?;
            for s in 1..=r.n {
                let lifted: Vec<WedgeVec> = convolve(&phi, &small[(s - 1) as usize])
                    .into_iter()
                    .map(|v| Ok(embed_tail(&FockWindow { window: Window { d: i64::MAX, ..window }, vec: v }, window.l + 1)?.vec))
                    .collect::<Result<_>>()?;
                if lifted != large[(s - 1) as usize] {
                    bad.push(format!("T{s}{t}"));
                }
            }
        }
        rep.push(format!("{key:?}"), bad.is_empty(), bad.join(" "));
    }
    Ok(rep)
}

/// `rho-bar` computed at level `l` and `l + 1` agree on every basis vector.
pub fn stability_check(window: Window, order: usize) -> Result<Report> {
    let r = window.ranks;
    let y = Yangian::normalized(r, DunklParams::standard(r), order, window.m);
    let mut rep = Report::new("stability");
    for key in window.basis() {
        let w = FockWindow::basis(window, &key)?;
        let big = embed_tail(&w, window.l + 1)?;
        let mut bad = Vec::new();
        for t in 1..=r.n {
            for s in 1..=r.n {
                let a = y.fock_series(s, t, &w)?;
                let b = y.fock_series(s, t, &big)?;
                let same = a.iter().zip(&b).all(|(x, z)| restrict(z, window.l).map(|z| z.vec == x.vec).unwrap_or(false));
                if !same {
                    bad.push(format!("T{s}{t}"));
                }
            }
        }
        rep.push(format!("{key:?}"), bad.is_empty(), bad.join(" "));
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// The embedding of Q^(1), Q^(2) into the Fock action, in contracted form

fn heis(n: i64) -> OneBody {
    OneBody::unit(None, None, n)
}

/// `J~_{ij}(n) = J_{ji}(n) - delta_ij B(n) / N`.
fn jt(i: i64, j: i64, n: i64, big_n: i64) -> OneBody {
    let op = bilinear_color(j, i, n);
    if i == j {
        op.add(heis(n).scale(&rat(-1, big_n)))
    } else {
        op
    }
}

/// `I^{aa}(n) = J^{aa}(n) - B(n) / L`.
fn iaa(a: i64, n: i64, l: i64) -> OneBody {
    bilinear_spin(a, a, n).add(heis(n).scale(&rat(-1, l)))
}

/// Contraction of `sum_{st} (t_alpha)_{st} Y_{st}` against `(t_alpha)_{pq}`:
/// `Y_{qp} - delta_pq / N sum_s Y_{ss}`.
fn contract(
    p: i64,
    q: i64,
    big_n: i64,
    w: &FockWindow,
    y: impl Fn(i64, i64, &FockWindow) -> Result<FockWindow>,
) -> Result<WedgeVec> {
    let mut out = y(q, p, w)?.vec;
    if p == q {
        for s in 1..=big_n {
            out.add_scaled(&y(s, s, w)?.vec, &rat(-1, big_n));
        }
    }
    Ok(out)
}

fn op2(a: &OneBody, b: &OneBody, w: &FockWindow) -> Result<FockWindow> {
    op_fock(a, &op_fock(b, w)?)
}

/// Traceless parts of `rho-bar(T^(1))` and `J(0)` on every basis vector of a
/// charge-0 window: `T^(1)_pq - delta_pq/N tr = J_qp(0) - delta_pq/N tr`.
pub fn q1_check(window: Window) -> Result<Report> {
    let r = window.ranks;
    let y = Yangian::normalized(r, DunklParams::standard(r), 1, window.m);
    let mut rep = Report::new("q1");
    for p in 1..=r.n {
        for q in 1..=r.n {
            let mut bad = Vec::new();
            for key in window.basis() {
                let w = FockWindow::basis(window, &key)?;
                let lhs = contract(q, p, r.n, &w, |s, t, x| y.fock_apply(s, t, 1, x))?;
                let rhs = contract(p, q, r.n, &w, |s, t, x| op_fock(&bilinear_color(s, t, 0), x))?;
                if lhs != rhs {
                    bad.push(format!("{key:?}"));
                }
            }
            rep.push(format!("p={p} q={q}"), bad.is_empty(), bad.join(" "));
        }
    }
    Ok(rep)
}

/// Individual terms of the contracted `Q^(2)` right-hand side at `kappa = L`,
/// `chi = 0`, charge 0.
fn q2_terms(p: i64, q: i64, w: &FockWindow) -> Result<Vec<(&'static str, WedgeVec)>> {
    let r = w.window.ranks;
    let (n, l) = (r.n, r.l);
    let dmax = w.window.d;
    let m = w.window.m;
    let jc = |a: i64, b: i64, k: i64| move |s: i64, t: i64, x: &FockWindow| op_fock(&bilinear(s, t, a, b, k), x);
    let mut terms = Vec::new();

    // (M/N - N/4) J_alpha(0); the (L - kappa) T_alpha term vanishes.
    let c0 = rat(m, n) - rat(n, 4);
    terms.push(("J(0)", contract(p, q, n, w, |s, t, x| op_fock(&bilinear_color(s, t, 0), x))?.scale(&c0)));

    // sum_a (I^aa(0)/2 + a - nu(a)) J^aa_alpha(0), with a - nu(a) = 0.
    let mut t3 = WedgeVec::zero(r, w.vec.len);
    for a in 1..=l {
        let inner = jc(a, a, 0);
        let v = contract(p, q, n, w, |s, t, x| op_fock(&iaa(a, 0, l), &inner(s, t, x)?))?;
        t3.add_scaled(&v, &rat(1, 2));
    }
    terms.push(("I(0)J(0)", t3));

    // sum_{a<b} J^ab(0) J^ba_alpha(0)
    let mut t4 = WedgeVec::zero(r, w.vec.len);
    for a in 1..=l {
        for b in a + 1..=l {
            let inner = jc(b, a, 0);
            let v = contract(p, q, n, w, |s, t, x| op_fock(&bilinear_spin(a, b, 0), &inner(s, t, x)?))?;
            t4.add_scaled(&v, &Rat::one());
        }
    }
    terms.push(("J^ab(0)J^ba(0)", t4));

    // sum_{k>0} (sum_{a!=b} J^ab(-k) J^ba_alpha(k) + sum_a I^aa(-k) J^aa_alpha(k))
    let mut t5 = WedgeVec::zero(r, w.vec.len);
    for k in 1..=dmax {
        for a in 1..=l {
            for b in 1..=l {
                let inner = jc(b, a, k);
                let left = if a == b { iaa(a, -k, l) } else { bilinear_spin(a, b, -k) };
                let v = contract(p, q, n, w, |s, t, x| op_fock(&left, &inner(s, t, x)?))?;
                t5.add_scaled(&v, &Rat::one());
            }
        }
    }
    terms.push(("spin modes", t5));

    // (1/N + 1/L) sum B(-k) J_alpha(k) + (1/N) sum J_alpha(-k) B(k)
    let mut t6 = WedgeVec::zero(r, w.vec.len);
    for k in 1..=dmax {
        let v = contract(p, q, n, w, |s, t, x| op2(&heis(-k), &bilinear_color(s, t, k), x))?;
        t6.add_scaled(&v, &(rat(1, n) + rat(1, l)));
        let v = contract(p, q, n, w, |s, t, x| op2(&bilinear_color(s, t, -k), &heis(k), x))?;
        t6.add_scaled(&v, &rat(1, n));
    }
    terms.push(("B J", t6));

    // f-term: 1/2 sum_{k>0} sum_r [J~_pr(-k) J~_rq(k) - J~_rq(-k) J~_pr(k)]
    let mut t7 = WedgeVec::zero(r, w.vec.len);
    for k in 1..=dmax {
        for rr in 1..=n {
            t7.add_scaled(&op2(&jt(p, rr, -k, n), &jt(rr, q, k, n), w)?.vec, &rat(1, 2));
            t7.add_scaled(&op2(&jt(rr, q, -k, n), &jt(p, rr, k, n), w)?.vec, &rat(-1, 2));
        }
    }
    terms.push(("f", t7));

    // W-term: 1/4 [D(0) + 2 sum_{k>0} D(k)]
    let d_of = |k: i64| -> Result<WedgeVec> {
        let mut acc = WedgeVec::zero(r, w.vec.len);
        for rr in 1..=n {
            acc.add_scaled(&op2(&jt(p, rr, -k, n), &jt(rr, q, k, n), w)?.vec, &Rat::one());
            acc.add_scaled(&op2(&jt(rr, q, -k, n), &jt(p, rr, k, n), w)?.vec, &Rat::one());
        }
        if p == q {
            for i in 1..=n {
                for j in 1..=n {
                    acc.add_scaled(&op2(&jt(i, j, -k, n), &jt(j, i, k, n), w)?.vec, &rat(-2, n));
                }
            }
        }
        Ok(acc)
    };
    let mut t8 = d_of(0)?.scale(&rat(1, 4));
    for k in 1..=dmax {
        t8.add_scaled(&d_of(k)?, &rat(1, 2));
    }
    terms.push(("W", t8));
    Ok(terms)
}

/// The contracted `Q^(2)` identity at `kappa = L`, `chi = 0`:
/// `-(X_pq - delta_pq/N tr X)` with `X = T^(2) - 1/2 (T^(1))^2` against the
/// fermion-bilinear side. Mismatches list every term.
pub fn q2_check(window: Window) -> Result<Report> {
    let r = window.ranks;
    if window.m != 0 {
        return Err(Error::Invalid("the Q^(2) check runs at charge 0".into()));
    }
    let y = Yangian::normalized(r, DunklParams::standard(r), 2, window.m);
    let x_op = |s: i64, t: i64, w: &FockWindow| -> Result<FockWindow> {
        let mut v = y.fock_apply(s, t, 2, w)?;
        for rr in 1..=r.n {
            let inner = y.fock_apply(rr, t, 1, w)?;
            v = v.sub(&y.fock_apply(s, rr, 1, &inner)?.scale(&rat(1, 2)))?;
        }
        Ok(v)
    };
    let mut rep = Report::new("q2");
    for p in 1..=r.n {
        for q in 1..=r.n {
            let mut bad = Vec::new();
            for key in window.basis() {
                let w = FockWindow::basis(window, &key)?;
                let lhs = contract(q, p, r.n, &w, x_op)?.scale(&int(-1));
                let terms = q2_terms(p, q, &w)?;
                let mut rhs = WedgeVec::zero(r, w.vec.len);
                for (_, v) in &terms {
                    rhs.add_scaled(v, &Rat::one());
                }
                if lhs != rhs {
                    let parts: Vec<String> = terms.iter().map(|(name, v)| format!("{name}: {:?}", v.terms())).collect();
                    bad.push(format!(
                        "{key:?}: lhs {:?}, rhs {:?}, diff {:?} [{}]",
                        lhs.terms(),
                        rhs.terms(),
                        lhs.sub(&rhs).terms(),
                        parts.join(", ")
                    ));
                }
            }
            rep.push(format!("p={p} q={q}"), bad.is_empty(), bad.join("; "));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor_space::BasisTriple;

    fn r22() -> Ranks {
        Ranks::new(2, 2).unwrap()
    }

    #[test]
    fn single_factor_expansion() {
        let r = r22();
        let p = DunklParams::standard(r);
        let v = TensorVec::from_triples(r, &[BasisTriple { kbar: 1, kdot: 2, kund: 1 }]);
        assert_eq!(that_apply(2, 2, 0, &v, &p).unwrap(), v);
        assert!(that_apply(1, 2, 0, &v, &p).unwrap().is_zero());
        let e = apply_color_unit(0, 2, 1, &v).unwrap();
        assert_eq!(that_apply(1, 2, 1, &v, &p).unwrap(), e);
        let de = apply_color_unit(0, 2, 1, &apply_dunkl(0, &p, &v).unwrap()).unwrap();
        assert_eq!(that_apply(1, 2, 2, &v, &p).unwrap(), de);
    }

    #[test]
    fn vacuum_eigenvalue_and_phi() {
        let r = r22();
        let p = DunklParams::standard(r);
        let vac: Key = (0..4).map(|i| -i).collect();
        let w = WedgeVec::basis(r, &vac);
        let y = Yangian::new(r, p.clone(), 4);
        let want = RatFuncU::mobius(int(0), int(2)).expand(4).unwrap();
        let got: Vec<Rat> = y.series(1, 1, &w).unwrap().iter().map(|x| eigenvalue(x, &w).unwrap()).collect();
        assert_eq!(SeriesU::from_coeffs(got), want);
        assert_eq!(phi_norm(r, &p, 0, &vac).unwrap().expand(4).unwrap(), want);
        assert!(phi_norm(r, &p, 0, &[]).unwrap().is_one());
        let yb = Yangian::normalized(r, p, 4, 0);
        let dq = yb.qdet_series(&w).unwrap();
        assert_eq!(dq[0], w);
        assert!(dq[1..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn vacuum_psi() {
        let r = RegSeq::new(2, vec![1, 1, 2, 2]).unwrap();
        let psi = psi_r(&r, 2).unwrap();
        let vac: Key = vec![0, -1, -2, -3];
        assert_eq!(psi.terms().len(), 1);
        assert!(!psi.coeff(&vac).is_zero());
    }
}
