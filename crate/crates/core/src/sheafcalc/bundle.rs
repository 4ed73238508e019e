use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::chow::{ChowClass, ChowRing};
use crate::error::{Error, Result};
use crate::exactpoly::{binomial, factorial, Scalar};

/// Rank and total Chern class of a (possibly virtual) bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleClass {
    pub rank: i64,
    pub total: ChowClass,
}

impl BundleClass {
    /// Fails unless the constant term of `total` is 1.
    pub fn new(rank: i64, total: ChowClass) -> Result<Self> {
        if !total.constant_term().is_one() {
            return Err(Error::NonHomogeneous(alloc::format!("total Chern class {total} must start with 1")));
        }
        Ok(BundleClass { rank, total })
    }

    pub fn from_text(ring: &Arc<ChowRing>, rank: i64, text: &str) -> Result<Self> {
        Self::new(rank, ring.parse(text)?)
    }

    pub fn trivial(ring: &Arc<ChowRing>, rank: i64) -> Self {
        BundleClass { rank, total: ring.one() }
    }

    /// Line bundle with first Chern class `c1`.
    pub fn line(c1: &ChowClass) -> Self {
        BundleClass { rank: 1, total: &c1.ring().one() + c1 }
    }

    pub fn ring(&self) -> &Arc<ChowRing> {
        self.total.ring()
    }

    /// `c_i`; zero past the ring's top degree.
    pub fn chern(&self, i: u32) -> ChowClass {
        self.total.component(i)
    }

    fn top(&self) -> u32 {
        self.ring().top_degree()
    }

    pub fn sum(&self, other: &BundleClass) -> BundleClass {
        BundleClass { rank: self.rank + other.rank, total: &self.total * &other.total }
    }

    pub fn pow(&self, e: u32) -> BundleClass {
        BundleClass { rank: self.rank * i64::from(e), total: self.total.pow(e) }
    }

    /// Formal inverse, i.e. the negative of the bundle in K-theory.
    pub fn negate(&self) -> BundleClass {
        BundleClass { rank: -self.rank, total: inverse_total(&self.total) }
    }

    pub fn dual(&self) -> BundleClass {
        let mut acc = self.ring().zero();
        for i in 0..=self.top() {
            let c = self.chern(i);
            acc = if i % 2 == 0 { &acc + &c } else { &acc - &c };
        }
        BundleClass { rank: self.rank, total: acc }
    }

    /// `c(E ⊗ L)` with `c_1(L) = t`:
    /// `c_i = Σ_j C(r − j, i − j) c_j t^(i−j)`.
    pub fn twist_by_line(&self, t: &ChowClass) -> BundleClass {
        let ring = self.ring();
        let mut acc = ring.zero();
        for i in 0..=self.top() {
            for j in 0..=i {
                let cj = self.chern(j);
                if cj.is_zero() {
                    continue;
                }
                let b = binomial(self.rank - i64::from(j), i64::from(i - j));
                if b.is_zero() {
                    continue;
                }
                acc = &acc + &(&cj * &t.pow(i - j)).scale(&b);
            }
        }
        BundleClass { rank: self.rank, total: acc }
    }
}

/// `1 / c` for a class with constant term 1.
pub fn inverse_total(c: &ChowClass) -> ChowClass {
    let ring = c.ring();
    let x = c - &ring.one();
    let mut acc = ring.one();
    let mut power = ring.one();
    for _ in 0..ring.top_degree() {
        power = -&(&power * &x);
        acc = &acc + &power;
    }
    acc
}

/// `Π num_i^{e_i} / Π den_j^{f_j}` with rank bookkeeping.
pub fn whitney_quotient(num: &[(&BundleClass, u32)], den: &[(&BundleClass, u32)]) -> Result<BundleClass> {
    let ring = num.first().or(den.first()).map(|(b, _)| b.ring().clone()).ok_or(Error::SpecMismatch)?;
    let mut acc = BundleClass::trivial(&ring, 0);
    for (b, e) in num {
        acc = acc.sum(&b.pow(*e));
    }
    for (b, e) in den {
        acc = acc.sum(&b.pow(*e).negate());
    }
    Ok(acc)
}

/// Which characteristic series a [`CharSeries`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    ChernCharacter,
    Todd,
}

/// Graded characteristic series stored as one inhomogeneous class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSeries {
    pub kind: SeriesKind,
    pub total: ChowClass,
}

impl CharSeries {
    pub fn component(&self, d: u32) -> ChowClass {
        self.total.component(d)
    }

    /// Product of Chern characters is the character of the tensor product.
    pub fn tensor(&self, other: &CharSeries) -> CharSeries {
        CharSeries { kind: SeriesKind::ChernCharacter, total: &self.total * &other.total }
    }

    pub fn add(&self, other: &CharSeries) -> CharSeries {
        CharSeries { kind: self.kind, total: &self.total + &other.total }
    }

    pub fn sub(&self, other: &CharSeries) -> CharSeries {
        CharSeries { kind: self.kind, total: &self.total - &other.total }
    }

    pub fn scale(&self, c: i64) -> CharSeries {
        CharSeries { kind: self.kind, total: self.total.scale_int(c) }
    }

    /// Character of the dual: `ch_k ↦ (−1)^k ch_k`.
    pub fn dual(&self) -> CharSeries {
        let ring = self.total.ring();
        let mut acc = ring.zero();
        for d in 0..=ring.top_degree() {
            let c = self.component(d);
            acc = if d % 2 == 0 { &acc + &c } else { &acc - &c };
        }
        CharSeries { kind: self.kind, total: acc }
    }
}

/// Power sums `p_1..p_top` of the Chern roots (Newton's identities).
fn power_sums(b: &BundleClass) -> Vec<ChowClass> {
    let top = b.ring().top_degree() as usize;
    let e: Vec<ChowClass> = (0..=top as u32).map(|i| b.chern(i)).collect();
    let mut p: Vec<ChowClass> = alloc::vec![b.ring().zero(); top + 1];
    for k in 1..=top {
        let mut acc = e[k].scale_int(k as i64);
        if k % 2 == 0 {
            acc = -&acc;
        }
        for i in 1..k {
            let term = &e[i] * &p[k - i];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        p[k] = acc;
    }
    p
}

pub fn chern_to_ch(b: &BundleClass) -> CharSeries {
    let ring = b.ring();
    let p = power_sums(b);
    let mut acc = ring.scalar(Scalar::from_int(b.rank));
    for (k, pk) in p.iter().enumerate().skip(1) {
        acc = &acc + &pk.scale(&factorial(k as u32).inv().expect("nonzero"));
    }
    CharSeries { kind: SeriesKind::ChernCharacter, total: acc }
}

/// Inverse of [`chern_to_ch`]; the rank is read off the degree-0 part.
pub fn ch_to_chern(s: &CharSeries) -> Result<BundleClass> {
    let ring = s.total.ring();
    let top = ring.top_degree() as usize;
    let rank = s.total.constant_term().to_i64().ok_or_else(|| Error::NonIntegral(s.total.constant_term().to_string()))?;
    let p: Vec<ChowClass> = (0..=top).map(|k| s.component(k as u32).scale(&factorial(k as u32))).collect();
    let mut e: Vec<ChowClass> = alloc::vec![ring.zero(); top + 1];
    e[0] = ring.one();
    for k in 1..=top {
        let mut acc = ring.zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        e[k] = acc.scale(&Scalar::from_frac(1, k as i64));
    }
    let total = e.iter().fold(ring.zero(), |a, c| &a + c);
    Ok(BundleClass { rank, total })
}

/// Truncated power series with rational coefficients.
fn series_mul(a: &[Scalar], b: &[Scalar], n: usize) -> Vec<Scalar> {
    let mut out = alloc::vec![Scalar::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += &(x * y);
        }
    }
    out
}

fn series_inv(a: &[Scalar], n: usize) -> Vec<Scalar> {
    let a0 = a[0].inv().expect("unit constant term");
    let mut out = alloc::vec![Scalar::zero(); n + 1];
    out[0] = a0.clone();
    for k in 1..=n {
        let mut acc = Scalar::zero();
        for i in 1..=k.min(a.len() - 1) {
            acc += &(&a[i] * &out[k - i]);
        }
        out[k] = -(&acc * &a0);
    }
    out
}

/// `log f` for `f(0) = 1`, via `(log f)' = f'/f`.
fn series_log(f: &[Scalar], n: usize) -> Vec<Scalar> {
    let deriv: Vec<Scalar> = (1..=n).map(|k| f.get(k).cloned().unwrap_or_default() * Scalar::from_int(k as i64)).collect();
    let q = series_mul(&deriv, &series_inv(f, n), n);
    let mut out = alloc::vec![Scalar::zero(); n + 1];
    for k in 1..=n {
        out[k] = &q[k - 1] / &Scalar::from_int(k as i64);
    }
    out
}

/// Coefficients `a_k` of `log(x / (1 − e^{−x}))`, `k = 0..=n`.
pub fn todd_log_coefficients(n: usize) -> Vec<Scalar> {
    // (1 − e^{−x}) / x = Σ (−1)^m x^m / (m+1)!
    let g: Vec<Scalar> = (0..=n)
        .map(|m| {
            let c = factorial(m as u32 + 1).inv().expect("nonzero");
            if m % 2 == 0 { c } else { -c }
        })
        .collect();
    let f = series_inv(&g, n);
    series_log(&f, n)
}

/// `exp(x)` for a class without constant term, truncated at the top degree.
pub fn exp_class(x: &ChowClass) -> ChowClass {
    let ring = x.ring();
    let mut acc = ring.one();
    let mut term = ring.one();
    for k in 1..=ring.top_degree() {
        term = (&term * x).scale(&Scalar::from_frac(1, i64::from(k)));
        acc = &acc + &term;
    }
    acc
}

/// `td = exp(Σ a_k p_k)` with `p_k` the Chern-root power sums.
pub fn todd(b: &BundleClass) -> CharSeries {
    let top = b.ring().top_degree() as usize;
    let a = todd_log_coefficients(top);
    let p = power_sums(b);
    let mut x = b.ring().zero();
    for k in 1..=top {
        x = &x + &p[k].scale(&a[k]);
    }
    CharSeries { kind: SeriesKind::Todd, total: exp_class(&x) }
}
