//! Exact scalar tower over the rationals: polynomials in `u`, rational
//! functions in `u`, and series in `u^{-1}` truncated at a fixed order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Canonical text form: `"p/q"`, or `"p"` for integers.
pub fn rat_string(r: &Rat) -> String {
    r.to_string()
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Polynomial in `u` with coefficients in ascending powers; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyU {
    coeffs: Vec<Rat>,
}

impl PolyU {
    pub fn zero() -> Self {
        PolyU { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monic linear factor `u - a`.
    pub fn root_factor(a: Rat) -> Self {
        Self::from_coeffs(vec![-a, Rat::one()])
    }

    /// `prod (u - a)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rat>) -> Self {
        roots
            .into_iter()
            .fold(Self::one(), |acc, a| &acc * &Self::root_factor(a.clone()))
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyU { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rat::one() / self.lead()))
    }

    /// Euclidean division; `d` must be nonzero.
    pub fn div_rem(&self, d: &PolyU) -> Result<(PolyU, PolyU)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead = d.lead();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((PolyU::zero(), self.clone()));
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((PolyU::from_coeffs(q), PolyU::from_coeffs(r)))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(a: &PolyU, b: &PolyU) -> PolyU {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        x.monic()
    }

    /// `p(u) -> p(u + a)`.
    pub fn shift(&self, a: &Rat) -> PolyU {
        let step = PolyU::from_coeffs(vec![a.clone(), Rat::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(PolyU::zero(), |acc, c| &(&acc * &step) + &PolyU::constant(c.clone()))
    }

    /// `p(u) -> p(-u)`.
    pub fn reflect(&self) -> PolyU {
        PolyU::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }
}

impl Add for &PolyU {
    type Output = PolyU;
    fn add(self, o: &PolyU) -> PolyU {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rat::zero();
        PolyU::from_coeffs(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + o.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Neg for &PolyU {
    type Output = PolyU;
    fn neg(self) -> PolyU {
        PolyU::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &PolyU {
    type Output = PolyU;
    fn sub(self, o: &PolyU) -> PolyU {
        self + &(-o)
    }
}

impl Mul for &PolyU {
    type Output = PolyU;
    fn mul(self, o: &PolyU) -> PolyU {
        if self.is_zero() || o.is_zero() {
            return PolyU::zero();
        }
        let mut c = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        PolyU::from_coeffs(c)
    }
}

impl fmt::Display for PolyU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "u")?,
                (1, false) => write!(f, "{mag}*u")?,
                (_, true) => write!(f, "u^{k}")?,
                (_, false) => write!(f, "{mag}*u^{k}")?,
            }
        }
        Ok(())
    }
}

/// Rational function `num/den`, kept reduced with a monic denominator so
/// that equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFuncU {
    num: PolyU,
    den: PolyU,
}

impl RatFuncU {
    pub fn new(num: PolyU, den: PolyU) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFuncU { num, den: PolyU::one() });
        }
        let g = PolyU::gcd(&num, &den);
        let (n, _) = num.div_rem(&g)?;
        let (d, _) = den.div_rem(&g)?;
        let inv = Rat::one() / d.lead();
        Ok(RatFuncU { num: n.scale(&inv), den: d.scale(&inv) })
    }

    pub fn one() -> Self {
        Self::from_poly(PolyU::one())
    }

    pub fn from_poly(p: PolyU) -> Self {
        RatFuncU { num: p, den: PolyU::one() }
    }

    /// `(u - a)/(u - b)`.
    pub fn mobius(a: Rat, b: Rat) -> Self {
        Self::new(PolyU::root_factor(a), PolyU::root_factor(b)).expect("nonzero denominator")
    }

    pub fn num(&self) -> &PolyU {
        &self.num
    }

    pub fn den(&self) -> &PolyU {
        &self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == PolyU::one() && self.den == PolyU::one()
    }

    pub fn mul(&self, o: &RatFuncU) -> RatFuncU {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominator")
    }

    pub fn div(&self, o: &RatFuncU) -> Result<RatFuncU> {
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn add(&self, o: &RatFuncU) -> RatFuncU {
        Self::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .expect("nonzero denominator")
    }

    pub fn sub(&self, o: &RatFuncU) -> RatFuncU {
        self.add(&RatFuncU { num: -&o.num, den: o.den.clone() })
    }

    /// `f(u) -> f(u + a)`.
    pub fn shift(&self, a: &Rat) -> RatFuncU {
        Self::new(self.num.shift(a), self.den.shift(a)).expect("nonzero denominator")
    }

    /// Expansion at `u = ∞` up to `u^{-order}`.
    pub fn expand(&self, order: usize) -> Result<SeriesU> {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        if self.num.is_zero() {
            return Ok(SeriesU::zero(order));
        }
        if dn > dd {
            return Err(Error::NotExpandable { num: dn, den: dd });
        }
        // With w = 1/u: f = w^(dd-dn) * N(w) / D(w), where N, D are the
        // reversed coefficient lists and D(0) = 1 (monic denominator).
        let nrev: Vec<Rat> = self.num.coeffs().iter().rev().cloned().collect();
        let drev: Vec<Rat> = self.den.coeffs().iter().rev().cloned().collect();
        let shift = dd - dn;
        let mut out = vec![Rat::zero(); order + 1];
        let mut q = vec![Rat::zero(); order + 1];
        for k in 0..=order {
            let mut acc = nrev.get(k).cloned().unwrap_or_else(Rat::zero);
            for j in 1..=k.min(drev.len().saturating_sub(1)) {
                acc -= &drev[j] * &q[k - j];
            }
            q[k] = acc;
        }
        for k in 0..=order {
            if k + shift <= order {
                out[k + shift] = q[k].clone();
            }
        }
        Ok(SeriesU { coeffs: out })
    }
}

impl fmt::Display for RatFuncU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == PolyU::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Series `c_0 + c_1 u^{-1} + ... + c_K u^{-K}`; arithmetic truncates at
/// the smaller order of the operands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesU {
    coeffs: Vec<Rat>,
}

impl SeriesU {
    pub fn zero(order: usize) -> Self {
        SeriesU { coeffs: vec![Rat::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rat::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least the constant term");
        SeriesU { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> SeriesU {
        let mut c = self.coeffs.clone();
        c.resize(order + 1, Rat::zero());
        SeriesU { coeffs: c }
    }

    pub fn scale(&self, c: &Rat) -> SeriesU {
        SeriesU { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn add(&self, o: &SeriesU) -> SeriesU {
        let k = self.order().min(o.order());
        SeriesU { coeffs: (0..=k).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect() }
    }

    pub fn sub(&self, o: &SeriesU) -> SeriesU {
        let k = self.order().min(o.order());
        SeriesU { coeffs: (0..=k).map(|i| &self.coeffs[i] - &o.coeffs[i]).collect() }
    }

    pub fn mul(&self, o: &SeriesU) -> SeriesU {
        let k = self.order().min(o.order());
        let coeffs = (0..=k)
            .map(|i| {
                (0..=i).fold(Rat::zero(), |acc, j| acc + &self.coeffs[j] * &o.coeffs[i - j])
            })
            .collect();
        SeriesU { coeffs }
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<SeriesU> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = self.order();
        let mut out = vec![Rat::zero(); k + 1];
        out[0] = Rat::one() / c0;
        for i in 1..=k {
            let acc = (1..=i).fold(Rat::zero(), |acc, j| acc + &self.coeffs[j] * &out[i - j]);
            out[i] = -acc / c0;
        }
        Ok(SeriesU { coeffs: out })
    }

    pub fn div(&self, o: &SeriesU) -> Result<SeriesU> {
        Ok(self.mul(&o.inv()?))
    }

    /// Re-expansion of `f(u + a)` from the coefficients of `f(u)`.
    pub fn shift_arg(&self, a: &Rat) -> SeriesU {
        shift_arg_generic(&self.coeffs, a, Rat::zero, |acc, c, x| *acc += c * x)
            .pipe(|coeffs| SeriesU { coeffs })
    }
}

trait Pipe: Sized {
    fn pipe<T>(self, f: impl FnOnce(Self) -> T) -> T {
        f(self)
    }
}
impl<T> Pipe for T {}

/// Coefficients of `f(u + a)` given those of `f(u)`, for any coefficient
/// type supporting accumulation `acc += x * scalar`:
/// `u^{-m} = (u + a)^{-m}` re-expands as `sum_j (-1)^j C(m+j-1, j) a^j u^{-m-j}`.
pub fn shift_arg_generic<T: Clone>(
    coeffs: &[T],
    a: &Rat,
    zero: impl Fn() -> T,
    mut axpy: impl FnMut(&mut T, &T, &Rat),
) -> Vec<T> {
    let k = coeffs.len() - 1;
    let mut out: Vec<T> = (0..=k).map(|_| zero()).collect();
    out[0] = coeffs[0].clone();
    for m in 1..=k {
        let mut apow = Rat::one();
        for j in 0..=(k - m) {
            let mut c = Rat::from_integer(binomial((m + j - 1) as u64, j as u64)) * &apow;
            if j % 2 == 1 {
                c = -c;
            }
            axpy(&mut out[m + j], &coeffs[m], &c);
            apow *= a;
        }
    }
    out
}

impl fmt::Display for SeriesU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k == 0 { format!("{c}") } else { format!("{c}*u^-{k}") })
            .collect();
        write!(f, "{} + O(u^-{})", parts.join(" + "), self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> PolyU {
        PolyU::from_coeffs(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn expand_geometric() {
        let f = RatFuncU::new(p(&[0, 1]), p(&[-2, 1])).unwrap();
        let s = f.expand(3).unwrap();
        assert_eq!(s.coeffs(), &[int(1), int(2), int(4), int(8)]);
    }

    #[test]
    fn expand_constant_one() {
        let s = RatFuncU::one().expand(4).unwrap();
        assert_eq!(s, SeriesU::one(4));
    }

    #[test]
    fn expand_rejects_polynomial_growth() {
        let f = RatFuncU::from_poly(p(&[0, 0, 1]));
        assert_eq!(f.expand(2), Err(Error::NotExpandable { num: 2, den: 0 }));
    }

    #[test]
    fn expand_with_leading_zeros() {
        // 1/(u^2 - 1) = u^-2 + u^-4 + ...
        let f = RatFuncU::new(p(&[1]), p(&[-1, 0, 1])).unwrap();
        let s = f.expand(5).unwrap();
        assert_eq!(s.coeffs(), &[int(0), int(0), int(1), int(0), int(1), int(0)]);
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p(&[0, 1]).shift(&int(0)), p(&[0, 1]));
        assert_eq!(p(&[-1, 1]).shift(&int(1)), p(&[0, 1]));
        assert_eq!(p(&[-1, 0, 1]).shift(&int(2)), p(&[3, 4, 1]));
    }

    #[test]
    fn rational_functions_reduce() {
        let f = RatFuncU::new(p(&[-2, 1]), p(&[4, -4, 1])).unwrap();
        assert_eq!(f.num(), &p(&[1]));
        assert_eq!(f.den(), &p(&[-2, 1]));
        let g = RatFuncU::new(p(&[0, 2]), p(&[0, 4])).unwrap();
        assert_eq!(g, RatFuncU::from_poly(PolyU::constant(rat(1, 2))));
    }

    #[test]
    fn series_shift_matches_rational_shift() {
        let f = RatFuncU::new(p(&[3, 1]), p(&[-5, 0, 1])).unwrap();
        let a = rat(-3, 2);
        let lhs = f.expand(6).unwrap().shift_arg(&a);
        let rhs = f.shift(&a).expand(6).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_inverse_roundtrip() {
        let f = RatFuncU::new(p(&[1, 1]), p(&[-3, 1])).unwrap();
        let s = f.expand(5).unwrap();
        assert_eq!(s.mul(&s.inv().unwrap()), SeriesU::one(5));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[3, -4, 1]).to_string(), "u^2 - 4*u + 3");
        assert_eq!(rat_string(&rat(-6, 4)), "-3/2");
    }
}
