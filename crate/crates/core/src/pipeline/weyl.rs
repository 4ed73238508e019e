//! Antisymmetrization over `S3 × S2` and the rewrite of block-symmetric
//! polynomials in elementary symmetric functions.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, Poly, RingSpec, Scalar, Term};

/// Root variables `β1, β2, β3, δ1, δ2`, all of weight 1.
pub const ROOT_NAMES: [&str; 5] = ["beta1", "beta2", "beta3", "delta1", "delta2"];
/// Elementary symmetric functions `b1, b2, b3` of the `β` and `d1, d2` of the `δ`.
pub const SYMMETRIC_NAMES: [(&str, u32); 5] = [("b1", 1), ("b2", 2), ("b3", 3), ("d1", 1), ("d2", 2)];

/// The root ring, `Δ`, and the twelve signed permutations.
#[derive(Clone, Debug)]
pub struct WeylData {
    roots: Arc<RingSpec>,
    symmetric: Arc<RingSpec>,
    delta: Poly,
    group: Vec<([usize; 5], i64)>,
    elementary: [Poly; 5],
}

fn sign_of(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

impl WeylData {
    pub fn new() -> Result<Self> {
        let roots = RingSpec::graded(&ROOT_NAMES.map(|n| (n, 1)))?;
        let symmetric = RingSpec::graded(&SYMMETRIC_NAMES)?;
        let v: Vec<Poly> = ROOT_NAMES.iter().map(|n| Poly::var(&roots, n)).collect::<Result<_>>()?;
        let delta = &(&(&(&v[0] - &v[1]) * &(&v[0] - &v[2])) * &(&v[1] - &v[2])) * &(&v[3] - &v[4]);
        let s3 = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut group = Vec::with_capacity(12);
        for s in &s3 {
            for t in [[3, 4], [4, 3]] {
                let perm = [s[0], s[1], s[2], t[0], t[1]];
                group.push((perm, sign_of(&s[..]) * sign_of(&t[..])));
            }
        }
        let one = Poly::one(&roots);
        let elementary = [
            &(&v[0] + &v[1]) + &v[2],
            &(&(&v[0] * &v[1]) + &(&v[0] * &v[2])) + &(&v[1] * &v[2]),
            &(&v[0] * &v[1]) * &v[2],
            &v[3] + &v[4],
            &(&v[3] * &v[4]) * &one,
        ];
        Ok(WeylData { roots, symmetric, delta, group, elementary })
    }

    pub fn roots(&self) -> &Arc<RingSpec> {
        &self.roots
    }

    pub fn symmetric(&self) -> &Arc<RingSpec> {
        &self.symmetric
    }

    pub fn delta(&self) -> &Poly {
        &self.delta
    }

    /// `(permutation of root indices, sign)`, twelve entries.
    pub fn group(&self) -> &[([usize; 5], i64)] {
        &self.group
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        crate::exactpoly::parse_poly(text, &self.roots)
    }

    /// `w(r)`: substitutes `root_i ↦ root_{perm[i]}`.
    pub fn act(&self, perm: &[usize; 5], r: &Poly) -> Result<Poly> {
        let slots: Vec<Option<Poly>> =
            perm.iter().map(|&j| Poly::var(&self.roots, ROOT_NAMES[j]).map(Some)).collect::<Result<_>>()?;
        r.substitute(&slots, &self.roots)
    }

    /// `φ(r)/12 = Δ⁻¹ Σ_w sign(w) w(r) / 12`, rewritten in `b1, b2, b3, d1, d2`.
    pub fn antisymmetrize_phi(&self, r: &Poly) -> Result<Poly> {
        let mut acc = Poly::zero(&self.roots);
        for (perm, sign) in &self.group {
            let w = self.act(perm, r)?;
            acc = if *sign > 0 { &acc + &w } else { &acc - &w };
        }
        let q = divide_exact(&acc, &self.delta)?;
        Ok(self.to_elementary(&q)?.scale(&Scalar::from_frac(1, self.group.len() as i64)))
    }

    /// Rewrites a polynomial symmetric in `β` and in `δ` separately.
    pub fn to_elementary(&self, p: &Poly) -> Result<Poly> {
        let mut rest = p.clone();
        let mut out = Poly::zero(&self.symmetric);
        while let Some(Term { mono, coeff }) = lex_leading(&rest) {
            let a: Vec<u32> = mono.exponents(5).iter().map(|&e| u32::from(e)).collect();
            if a[0] < a[1] || a[1] < a[2] || a[3] < a[4] {
                return Err(Error::NotSymmetric(rest.render()));
            }
            let powers = [a[0] - a[1], a[1] - a[2], a[2], a[3] - a[4], a[4]];
            let mut expanded = Poly::constant(&self.roots, coeff.clone());
            for (e, &k) in self.elementary.iter().zip(&powers) {
                expanded = &expanded * &e.pow(k);
            }
            rest = &rest - &expanded;
            let target = Monomial::from_exponents(&powers)?;
            out = &out + &Poly::from_terms(&self.symmetric, [(target, coeff)]);
        }
        Ok(out)
    }

    /// The seven anti-invariant elements of the relation ideal, in the
    /// order they are conventionally listed.
    pub fn anti_invariants(&self) -> Result<Vec<Poly>> {
        let b = |i: usize| Poly::var(&self.roots, ROOT_NAMES[i % 3]);
        let d = |k: usize| Poly::var(&self.roots, ROOT_NAMES[3 + k]);
        let cube = |p: Poly| p.pow(3);
        // Σ_i f(β_i, β_{i+1}) (β_i − δ_k)³ (β_{i+1} − δ_k)³, weighted by `dk`
        let cyc = |k: usize, weight_by_delta: bool, squares: bool| -> Result<Poly> {
            let mut acc = Poly::zero(&self.roots);
            for i in 0..3 {
                let (bi, bj) = (b(i)?, b(i + 1)?);
                let lead = if squares { &bi.pow(2) - &bj.pow(2) } else { &bi - &bj };
                let mut t = &(&lead * &cube(&bi - &d(k)?)) * &cube(&bj - &d(k)?);
                if weight_by_delta {
                    t = &t * &d(k)?;
                }
                acc = &acc + &t;
            }
            Ok(acc)
        };
        let diff = |w: bool, sq: bool| -> Result<Poly> { Ok(&cyc(0, w, sq)? - &cyc(1, w, sq)?) };
        let first = &(&(&(&b(0)? + &b(1)?) + &b(2)?) - &(&d(0)? + &d(1)?)) * &self.delta;
        let mut fifth = Poly::zero(&self.roots);
        for i in 0..3 {
            let t = &(&(&b(i)? - &b(i + 1)?) * &cube(&b(i + 2)? - &d(0)?)) * &cube(&b(i + 2)? - &d(1)?);
            fifth = &fifth + &(&t * &(&d(0)? - &d(1)?));
        }
        let mut inner = Poly::zero(&self.roots);
        for k in 0..2 {
            let mut part = Poly::zero(&self.roots);
            for i in 0..3 {
                part = &part + &(&cube(&b(i)? - &d(k)?) * &cube(&b(i + 1)? - &d(k)?));
            }
            inner = if k == 0 { &inner + &part } else { &inner - &part };
        }
        let vander = &(&(&b(0)? - &b(1)?) * &(&b(1)? - &b(2)?)) * &(&b(2)? - &b(0)?);
        Ok(alloc::vec![
            first,
            diff(false, false)?,
            diff(true, false)?,
            diff(false, true)?,
            diff(true, true)?,
            fifth,
            &vander * &inner,
        ])
    }

    /// `Π (1 + x)` over the given linear forms in the roots, truncated.
    pub fn total_chern_of_roots(&self, roots: &[Poly], top: u32) -> Poly {
        roots.iter().fold(Poly::one(&self.roots), |acc, x| (&acc * &(&Poly::one(&self.roots) + x)).truncate(top))
    }
}

fn lex_leading(p: &Poly) -> Option<Term> {
    let n = p.spec().nvars();
    p.terms().iter().max_by(|x, y| x.mono.exponents(n).cmp(y.mono.exponents(n))).cloned()
}

/// Quotient `p / q` when `q` divides `p` exactly.
pub fn divide_exact(p: &Poly, q: &Poly) -> Result<Poly> {
    let spec = p.spec();
    let lead = q.leading().ok_or_else(|| Error::NotDivisible("division by zero".into()))?.clone();
    let inv = lead.coeff.inv().expect("nonzero leading coefficient");
    let mut rest = p.clone();
    let mut quotient = Poly::zero(spec);
    while let Some(t) = rest.leading().cloned() {
        if !lead.mono.divides(&t.mono) {
            return Err(Error::NotDivisible(format!("{} does not divide {}", q.render(), p.render())));
        }
        let m = lead.mono.quotient_of(&t.mono);
        let c = &t.coeff * &inv;
        let step = Poly::from_terms(spec, [(m, c)]);
        rest = &rest - &(&step * q);
        quotient = &quotient + &step;
    }
    Ok(quotient)
}
