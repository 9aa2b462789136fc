//! Skew diagrams: finite diagrams with `m` rows of `L` squares, the
//! semi-infinite diagrams given by row offsets `h`, their contents, Drinfeld
//! polynomials, quantum-determinant data and skew Schur functions.
//!
//! Squares are `(row, column)` with rows numbered from the top downward.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebraics::{int, rat_string, PolyU, RatFuncU};
use crate::daha::RegSeq;
use crate::affine_actions::uprime_subspace;
use crate::error::{Error, Result};
use crate::tensor_space::Ranks;
use crate::yangian::Report;

pub type Square = (i64, i64);

/// `D_r = {(n_i, r_i)}` with
/// `n_i = #{j <= i : a_j = a_i, lambda_j = lambda_i} + #{j > i : a_j = a_i, lambda_j < lambda_i}`.
pub fn diagram_from_r(r: &RegSeq) -> BTreeSet<Square> {
    let n = r.n();
    (0..n)
        .map(|i| {
            let same = |j: usize| r.a[j] == r.a[i];
            let below = (0..=i).filter(|&j| same(j) && r.lambda[j] == r.lambda[i]).count();
            let above = (i + 1..n).filter(|&j| same(j) && r.lambda[j] < r.lambda[i]).count();
            ((below + above) as i64, r.r[i])
        })
        .collect()
}

/// Column multiplicities, as a nondecreasing sequence.
pub fn r_of_squares(sq: &BTreeSet<Square>) -> Vec<i64> {
    let mut r: Vec<i64> = sq.iter().map(|&(_, j)| j).collect();
    r.sort();
    r
}

/// A skew diagram with rows `1..=m`, row `i` occupying columns
/// `starts[i-1] ..= starts[i-1] + L - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSkew {
    pub l: i64,
    pub starts: Vec<i64>,
}

impl FiniteSkew {
    pub fn new(l: i64, starts: Vec<i64>) -> Result<Self> {
        if l < 1 {
            return Err(Error::Invalid(format!("row length must be positive, got {l}")));
        }
        if starts.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::Invalid(format!("row starts {starts:?} do not form a skew shape")));
        }
        Ok(FiniteSkew { l, starts })
    }

    /// Recognizes a type `D_L^m` diagram; fails on anything else.
    pub fn from_squares(l: i64, sq: &BTreeSet<Square>) -> Result<Self> {
        let m = sq.len() as i64 / l;
        if sq.len() as i64 != m * l {
            return Err(Error::Invalid(format!("{} squares is not a multiple of L={l}", sq.len())));
        }
        let mut starts = Vec::with_capacity(m as usize);
        for i in 1..=m {
            let cols: Vec<i64> = sq.range((i, i64::MIN)..=(i, i64::MAX)).map(|&(_, j)| j).collect();
            let ok = cols.len() as i64 == l && cols.windows(2).all(|w| w[1] == w[0] + 1);
            if !ok {
                return Err(Error::Invalid(format!("row {i} is not a bar of {l} squares")));
            }
            starts.push(cols[0]);
        }
        Self::new(l, starts)
    }

    pub fn m(&self) -> i64 {
        self.starts.len() as i64
    }

    pub fn squares(&self) -> BTreeSet<Square> {
        self.starts
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| (s..s + self.l).map(move |j| (i as i64 + 1, j)))
            .collect()
    }

    /// Column -> (top row, bottom row).
    pub fn columns(&self) -> BTreeMap<i64, (i64, i64)> {
        let mut out: BTreeMap<i64, (i64, i64)> = BTreeMap::new();
        for (i, j) in self.squares() {
            let e = out.entry(j).or_insert((i, i));
            e.0 = e.0.min(i);
            e.1 = e.1.max(i);
        }
        out
    }

    pub fn max_column_height(&self) -> i64 {
        self.columns().values().map(|(t, b)| b - t + 1).max().unwrap_or(0)
    }

    /// Type `D_L^m(N)`: no column holds more than `n` squares.
    pub fn is_type_n(&self, n: i64) -> bool {
        self.max_column_height() <= n
    }

    /// Squares column by column from the left, top to bottom within a column.
    pub fn natural_order(&self) -> Vec<Square> {
        let mut sq: Vec<Square> = self.squares().into_iter().collect();
        sq.sort_by_key(|&(i, j)| (j, i));
        sq
    }

    pub fn contents_natural(&self) -> Vec<i64> {
        self.natural_order().into_iter().map(|(i, j)| j - i).collect()
    }

    /// Height of each square inside its column, counted from the bottom.
    pub fn heights_natural(&self) -> Vec<i64> {
        let cols = self.columns();
        self.natural_order().into_iter().map(|(i, j)| cols[&j].1 - i + 1).collect()
    }

    pub fn r(&self) -> Result<RegSeq> {
        RegSeq::new(self.l, r_of_squares(&self.squares()))
    }
}

pub fn r_from_diagram(d: &FiniteSkew) -> Result<RegSeq> {
    d.r()
}

/// A semi-infinite diagram: row `k + 1` sits directly above row `k`, shifted
/// right by `h_k`; row 1 is the lowest. Only the entries differing from the
/// vacuum sequence are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemiDiagram {
    pub ranks: Ranks,
    overrides: BTreeMap<usize, i64>,
}

impl SemiDiagram {
    pub fn vacuum(ranks: Ranks) -> Self {
        SemiDiagram { ranks, overrides: BTreeMap::new() }
    }

    /// `h_1, h_2, ...` given as a prefix; later entries are vacuum.
    pub fn from_prefix(ranks: Ranks, h: &[i64]) -> Result<Self> {
        let overrides = (1..=h.len())
            .filter(|&i| h[i - 1] != h_vac(ranks, i))
            .map(|i| (i, h[i - 1]))
            .collect();
        let sd = SemiDiagram { ranks, overrides };
        sd.validate()?;
        Ok(sd)
    }

    pub fn overrides(&self) -> &BTreeMap<usize, i64> {
        &self.overrides
    }

    pub fn h(&self, i: usize) -> i64 {
        self.overrides.get(&i).copied().unwrap_or_else(|| h_vac(self.ranks, i))
    }

    /// Last index that may differ from the vacuum.
    pub fn support(&self) -> usize {
        self.overrides.keys().next_back().copied().unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some((&i, &h)) = self.overrides.iter().find(|(_, &h)| h < 0) {
            return Err(Error::Invalid(format!("h_{i} = {h} is negative")));
        }
        let n = self.ranks.n as usize;
        for k in 1..=self.support().max(1) {
            let s: i64 = (k..k + n).map(|i| self.h(i)).sum();
            if s < self.ranks.l {
                return Err(Error::Invalid(format!("a column above row {k} exceeds height {n}")));
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> i64 {
        self.overrides.iter().map(|(&i, &h)| i as i64 * (h - h_vac(self.ranks, i))).sum()
    }

    pub fn is_vacuum(&self) -> bool {
        self.overrides.is_empty()
    }

    /// `r_1 = 1 + sum_i (h_vac_i - h_i)`, the content of the first square.
    pub fn r1(&self) -> i64 {
        1 + self.overrides.iter().map(|(&i, &h)| h_vac(self.ranks, i) - h).sum::<i64>()
    }

    /// Starting columns of rows `1..=k`, with row 1 starting at `r_1`.
    pub fn row_starts(&self, k: usize) -> Vec<i64> {
        let mut x = self.r1();
        (1..=k)
            .map(|i| {
                let cur = x;
                x += self.h(i);
                cur
            })
            .collect()
    }

    /// The first `N l` rows, lowest row at vertical coordinate `N l`.
    pub fn finite_part(&self, l: i64) -> Result<FiniteSkew> {
        if l < self.degree() {
            return Err(Error::Invalid(format!("l={l} is below the degree {}", self.degree())));
        }
        let rows = (self.ranks.n * l) as usize;
        let mut starts = self.row_starts(rows);
        starts.reverse();
        FiniteSkew::new(self.ranks.l, starts)
    }

    /// Contents of bottom squares of columns of height `k < N`, in the
    /// semi-infinite convention (`c(s_1) = r_1`).
    pub fn bottom_contents(&self) -> BTreeMap<i64, Vec<i64>> {
        let l = self.degree().max(1);
        let fp = self.finite_part(l).expect("l >= degree");
        let shift = self.ranks.n * l;
        let mut out: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for (j, (top, bottom)) in fp.columns() {
            let h = bottom - top + 1;
            if h < self.ranks.n {
                out.entry(h).or_default().push(j - bottom + shift);
            }
        }
        out
    }

    /// `P_k(u) = prod (u - k - c + 1)` for `k = 1..N-1`.
    pub fn drinfeld(&self) -> Vec<PolyU> {
        let bc = self.bottom_contents();
        (1..self.ranks.n)
            .map(|k| {
                let roots: Vec<_> = bc.get(&k).into_iter().flatten().map(|&c| int(k + c - 1)).collect();
                PolyU::from_roots(&roots)
            })
            .collect()
    }

    /// `Omega(u) = prod_k (u + 2 - r_1 - k - sum_{i<k} h_i) / (u + 1 - k - sum_{i<k} h_vac_i)`.
    pub fn omega(&self) -> RatFuncU {
        let r1 = self.r1();
        let (mut sh, mut sv) = (0i64, 0i64);
        let mut acc = RatFuncU::one();
        for k in 1..=self.support() as i64 + 1 {
            let num = -(2 - r1 - k - sh);
            let den = -(1 - k - sv);
            acc = acc.mul(&RatFuncU::mobius(int(num), int(den)));
            sh += self.h(k as usize);
            sv += h_vac(self.ranks, k as usize);
        }
        acc
    }

    /// `Omega(u) / Omega(u - L)`.
    pub fn qdet_ratio(&self) -> RatFuncU {
        let om = self.omega();
        om.div(&om.shift(&int(-self.ranks.l))).expect("nonzero rational function")
    }

    /// The closed product form of the quantum-determinant eigenvalue.
    pub fn qdet_closed_form(&self) -> RatFuncU {
        let r1 = self.r1();
        let l = self.ranks.l;
        let (mut sh, mut sv) = (0i64, 0i64);
        let mut acc = RatFuncU::one();
        for k in 1..=self.support() as i64 + 1 {
            let a = 2 - r1 - k - sh;
            let b = 1 - k - sv;
            acc = acc
                .mul(&RatFuncU::mobius(int(-a), int(-b)))
                .mul(&RatFuncU::mobius(int(-(b - l)), int(-(a - l))));
            sh += self.h(k as usize);
            sv += h_vac(self.ranks, k as usize);
        }
        acc
    }

    pub fn to_json(&self) -> DiagramJson {
        let poly = |p: &PolyU| p.coeffs().iter().map(rat_string).collect::<Vec<_>>();
        let om = self.omega();
        DiagramJson {
            n: self.ranks.n,
            l: self.ranks.l,
            h_overrides: self.overrides.iter().map(|(&i, &h)| [i as i64, h]).collect(),
            degree: self.degree(),
            drinfeld: self.drinfeld().iter().map(poly).collect(),
            omega: RatJson { num: poly(om.num()), den: poly(om.den()) },
        }
    }
}

pub fn h_vac(r: Ranks, i: usize) -> i64 {
    if i as i64 % r.n == 0 {
        r.l
    } else {
        0
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RatJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DiagramJson {
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(rename = "L")]
    pub l: i64,
    pub h_overrides: Vec<[i64; 2]>,
    pub degree: i64,
    pub drinfeld: Vec<Vec<String>>,
    pub omega: RatJson,
}

/// All semi-infinite diagrams of degree `0..=dmax`, grouped by degree.
///
/// Every diagram of degree `d` agrees with the vacuum beyond `N d`, so the
/// search runs over `h_1..h_{N d}` with `sum_i i h_i` fixed by the degree.
pub fn enumerate(ranks: Ranks, dmax: i64) -> Vec<Vec<SemiDiagram>> {
    (0..=dmax).map(|d| enumerate_degree(ranks, d)).collect()
}

fn enumerate_degree(ranks: Ranks, d: i64) -> Vec<SemiDiagram> {
    if d == 0 {
        return vec![SemiDiagram::vacuum(ranks)];
    }
    let s = (ranks.n * d) as usize;
    let budget: i64 = d + (1..=s).map(|i| i as i64 * h_vac(ranks, i)).sum::<i64>();
    let mut out = Vec::new();
    let mut h = vec![0i64; s];
    fn rec(i: usize, left: i64, h: &mut Vec<i64>, ranks: Ranks, out: &mut Vec<SemiDiagram>) {
        let s = h.len();
        let n = ranks.n as usize;
        if i > s {
            if left == 0 {
                if let Ok(sd) = SemiDiagram::from_prefix(ranks, h) {
                    out.push(sd);
                }
            }
            return;
        }
        // windows that end at i and lie inside the prefix are final now
        let window_ok = |h: &Vec<i64>| i < n || h[i - n..i].iter().sum::<i64>() >= ranks.l;
        for v in 0..=left / i as i64 {
            h[i - 1] = v;
            if window_ok(h) {
                rec(i + 1, left - v * i as i64, h, ranks, out);
            }
        }
        h[i - 1] = 0;
    }
    rec(1, budget, &mut h, ranks, &mut out);
    out.sort();
    out
}

/// Polynomial in `x_1..x_N` as exponent vector -> coefficient.
pub type Character = BTreeMap<Vec<i64>, i64>;

/// Sum over semistandard fillings with `1..=n`: weakly increasing along
/// rows, strictly increasing down columns.
pub fn skew_schur(sq: &BTreeSet<Square>, n: i64) -> Character {
    let cells: Vec<Square> = sq.iter().copied().collect();
    let mut fill: BTreeMap<Square, i64> = BTreeMap::new();
    let mut exps = vec![0i64; n as usize];
    let mut out = Character::new();
    fn rec(
        idx: usize,
        cells: &[Square],
        n: i64,
        fill: &mut BTreeMap<Square, i64>,
        exps: &mut Vec<i64>,
        out: &mut Character,
    ) {
        if idx == cells.len() {
            *out.entry(exps.clone()).or_insert(0) += 1;
            return;
        }
        let (i, j) = cells[idx];
        let lo_row = fill.get(&(i, j - 1)).copied().unwrap_or(1);
        let lo_col = fill.get(&(i - 1, j)).map(|&x| x + 1).unwrap_or(1);
        for v in lo_row.max(lo_col)..=n {
            fill.insert((i, j), v);
            exps[v as usize - 1] += 1;
            rec(idx + 1, cells, n, fill, exps, out);
            exps[v as usize - 1] -= 1;
        }
        fill.remove(&(i, j));
    }
    rec(0, &cells, n, &mut fill, &mut exps, &mut out);
    out
}

pub fn ssyt_count(sq: &BTreeSet<Square>, n: i64) -> i64 {
    skew_schur(sq, n).values().sum()
}

/// Squares of `lambda / mu` in rows `1..`.
pub fn skew_shape(lambda: &[i64], mu: &[i64]) -> BTreeSet<Square> {
    lambda
        .iter()
        .enumerate()
        .flat_map(|(i, &lam)| {
            let m = mu.get(i).copied().unwrap_or(0);
            (m + 1..=lam).map(move |j| (i as i64 + 1, j))
        })
        .collect()
}

/// Reduction modulo `x_1 ... x_N = 1`: exponents relative to the last one.
pub fn sl_reduce(ch: &Character) -> Character {
    let mut out = Character::new();
    for (e, &c) in ch {
        let last = *e.last().unwrap_or(&0);
        let key: Vec<i64> = e.iter().map(|x| x - last).collect();
        *out.entry(key).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `sum_{deg sd = d} s_{finite part}` for `d = 0..=dmax`, reduced to `sl_N`.
pub fn character_series(ranks: Ranks, dmax: i64) -> Vec<Character> {
    enumerate(ranks, dmax)
        .into_iter()
        .enumerate()
        .map(|(d, sds)| {
            let mut acc = Character::new();
            for sd in sds {
                let fp = sd.finite_part(d as i64).expect("l = degree");
                for (k, c) in sl_reduce(&skew_schur(&fp.squares(), ranks.n)) {
                    *acc.entry(k).or_insert(0) += c;
                }
            }
            acc
        })
        .collect()
}

/// `P(u) -> P(u + a)` for each polynomial.
pub fn drinfeld_shift(ps: &[PolyU], a: i64) -> Vec<PolyU> {
    ps.iter().map(|p| p.shift(&int(a))).collect()
}

/// `P_k(u) -> (-1)^{deg P_k} P_k(-u + k - 1)`.
pub fn drinfeld_sigma(ps: &[PolyU]) -> Vec<PolyU> {
    ps.iter()
        .enumerate()
        .map(|(idx, p)| {
            let k = idx as i64 + 1;
            let q = p.shift(&int(-(k - 1))).reflect();
            let sign = if p.degree().unwrap_or(0) % 2 == 1 { int(-1) } else { int(1) };
            q.scale(&sign)
        })
        .collect()
}

/// The character identity at desk scale: for each degree `d <= dmax`, the
/// number of SSYT fillings of the degree-`d` finite parts equals the
/// dimension of the degree-`d` quotient by `U'(b^0)` at levels `d` and
/// `d + 1`; the `sl_N` characters do not depend on the level of the finite
/// part.
pub fn verify_characters(ranks: Ranks, dmax: i64) -> Result<Report> {
    let mut rep = Report::new("characters");
    let chi = vec![0; ranks.l as usize];
    for (d, sds) in enumerate(ranks, dmax).into_iter().enumerate() {
        let d = d as i64;
        let mut want = 0;
        let mut ch = [Character::new(), Character::new()];
        for sd in &sds {
            for (slot, l) in [d, d + 1].into_iter().enumerate() {
                let sq = sd.finite_part(l)?.squares();
                if slot == 0 {
                    want += ssyt_count(&sq, ranks.n);
                }
                for (k, c) in sl_reduce(&skew_schur(&sq, ranks.n)) {
                    *ch[slot].entry(k).or_insert(0) += c;
                }
            }
        }
        for l in [d, d + 1] {
            let q = uprime_subspace(ranks, &chi, 0, d, l)?;
            let got = q.quotient_dim() as i64;
            rep.push(
                format!("degree {d}, level {l}: quotient dim"),
                got == want,
                format!("{} diagrams, SSYT count {want}, quotient {got} of {}", sds.len(), q.ambient_dim),
            );
        }
        rep.push(format!("degree {d}: finite-part character stable"), ch[0] == ch[1], "");
        if d == 0 {
            let one: Character = [(vec![0; ranks.n as usize], 1)].into_iter().collect();
            rep.push("degree 0: character is 1", ch[0] == one, "");
        }
    }
    Ok(rep)
}
