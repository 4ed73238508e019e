use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Maximum number of variables in any ring.
pub const MAX_VARS: usize = 16;

/// Largest exponent a single variable may carry.
pub const MAX_EXPONENT: u32 = u16::MAX as u32;

/// Monomial order on a [`RingSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Weighted degree first, ties broken reverse-lexicographically.
    WeightedRevLex,
    /// The first `leading` variables form a block that dominates the rest;
    /// each block is compared by its own weighted degree, then reverse-lex.
    Elimination { leading: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub weight: u32,
}

/// Ordered, weighted variable list plus a monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    vars: Vec<Variable>,
    order: MonomialOrder,
}

impl RingSpec {
    pub fn new<S: AsRef<str>>(vars: &[(S, u32)], order: MonomialOrder) -> Result<Arc<Self>> {
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables { count: vars.len(), max: MAX_VARS });
        }
        let mut out: Vec<Variable> = Vec::with_capacity(vars.len());
        for (name, weight) in vars {
            let name = name.as_ref();
            if *weight == 0 {
                return Err(Error::ZeroWeight(name.to_string()));
            }
            if out.iter().any(|v| v.name == name) {
                return Err(Error::DuplicateVariable(name.to_string()));
            }
            out.push(Variable { name: name.to_string(), weight: *weight });
        }
        if let MonomialOrder::Elimination { leading } = order {
            if leading == 0 || leading > out.len() {
                return Err(Error::InvalidBlock { block: leading, vars: out.len() });
            }
        }
        Ok(Arc::new(RingSpec { vars: out, order }))
    }

    /// Weighted reverse-lex spec; the common case.
    pub fn graded<S: AsRef<str>>(vars: &[(S, u32)]) -> Result<Arc<Self>> {
        Self::new(vars, MonomialOrder::WeightedRevLex)
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.vars[i].weight
    }

    pub fn max_weight(&self) -> u32 {
        self.vars.iter().map(|v| v.weight).max().unwrap_or(1)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        let pairs: Vec<(&str, u32)> = self.vars.iter().map(|v| (v.name.as_str(), v.weight)).collect();
        Self::new(&pairs, order)
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        self.block_degree(m, 0, self.vars.len())
    }

    fn block_degree(&self, m: &Monomial, lo: usize, hi: usize) -> u32 {
        (lo..hi).map(|i| m.0[i] as u32 * self.vars[i].weight).sum()
    }

    fn revlex_block(&self, a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
        let da = self.block_degree(a, lo, hi);
        let db = self.block_degree(b, lo, hi);
        if da != db {
            return da.cmp(&db);
        }
        for i in (lo..hi).rev() {
            if a.0[i] != b.0[i] {
                // smaller exponent in the last differing variable wins
                return b.0[i].cmp(&a.0[i]);
            }
        }
        Ordering::Equal
    }

    /// Compare two monomials in this ring's order.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = self.vars.len();
        match self.order {
            MonomialOrder::WeightedRevLex => self.revlex_block(a, b, 0, n),
            MonomialOrder::Elimination { leading } => self
                .revlex_block(a, b, 0, leading)
                .then_with(|| self.revlex_block(a, b, leading, n)),
        }
    }

    /// A key whose lexicographic order agrees with [`RingSpec::cmp`].
    pub fn order_key(&self, m: &Monomial) -> OrderKey {
        let n = self.vars.len();
        let mut key = [0u32; MAX_VARS + 2];
        let fill = |key: &mut [u32; MAX_VARS + 2], at: usize, lo: usize, hi: usize| {
            key[at] = self.block_degree(m, lo, hi);
            for (slot, i) in (lo..hi).rev().enumerate() {
                key[at + 1 + slot] = MAX_EXPONENT - m.0[i] as u32;
            }
            at + 1 + (hi - lo)
        };
        match self.order {
            MonomialOrder::WeightedRevLex => {
                fill(&mut key, 0, 0, n);
            }
            MonomialOrder::Elimination { leading } => {
                let next = fill(&mut key, 0, 0, leading);
                fill(&mut key, next, leading, n);
            }
        }
        OrderKey(key)
    }

    /// All monomials of weighted degree exactly `d`, in no particular order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = Monomial::one();
        self.enumerate(0, d, &mut cur, &mut |m| {
            out.push(*m);
            true
        });
        out
    }

    /// Depth-first enumeration of degree-`d` monomials; `visit` returning
    /// `false` prunes (used by standard-monomial counting, where divisibility
    /// is monotone only on completed monomials, so it never prunes partials).
    pub(crate) fn enumerate(
        &self,
        i: usize,
        remaining: u32,
        cur: &mut Monomial,
        visit: &mut dyn FnMut(&Monomial) -> bool,
    ) {
        let n = self.vars.len();
        if i == n {
            if remaining == 0 {
                visit(cur);
            }
            return;
        }
        let w = self.vars[i].weight;
        if i + 1 == n {
            if remaining.is_multiple_of(w) && remaining / w <= MAX_EXPONENT {
                cur.0[i] = (remaining / w) as u16;
                visit(cur);
                cur.0[i] = 0;
            }
            return;
        }
        let mut e = 0u32;
        while e * w <= remaining {
            cur.0[i] = e as u16;
            self.enumerate(i + 1, remaining - e * w, cur, visit);
            e += 1;
        }
        cur.0[i] = 0;
    }

    /// Render a monomial with this spec's names (`1` for the unit monomial).
    pub fn fmt_monomial(&self, m: &Monomial, f: &mut dyn fmt::Write) -> fmt::Result {
        let mut first = true;
        for (i, v) in self.vars.iter().enumerate() {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            f.write_str(&v.name)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

/// Totally ordered image of a monomial under a fixed spec.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OrderKey([u32; MAX_VARS + 2]);

/// Dense exponent vector aligned with a [`RingSpec`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub(crate) [u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables { count: exps.len(), max: MAX_VARS });
        }
        let mut m = Monomial::one();
        for (i, &e) in exps.iter().enumerate() {
            if e > MAX_EXPONENT {
                return Err(Error::ExponentOverflow { cap: MAX_EXPONENT });
            }
            m.0[i] = e as u16;
        }
        Ok(m)
    }

    pub fn var(i: usize, e: u32) -> Self {
        let mut m = Monomial::one();
        m.0[i] = e as u16;
        m
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn exponents(&self, n: usize) -> &[u16] {
        &self.0[..n]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.0[i] = out.0[i].checked_add(other.0[i])?;
        }
        Some(out)
    }

    /// Product; panics past the exponent cap (use `checked_mul` to observe it).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent exceeds cap")
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut out = *other;
        for i in 0..MAX_VARS {
            out.0[i] -= self.0[i];
        }
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.0[i] = out.0[i].max(other.0[i]);
        }
        out
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of variables with a positive exponent.
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for i in 0..MAX_VARS {
            if self.0[i] != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(
            RingSpec::graded(&[("a", 1), ("a", 2)]).unwrap_err(),
            Error::DuplicateVariable("a".into())
        );
        assert_eq!(RingSpec::graded(&[("a", 0)]).unwrap_err(), Error::ZeroWeight("a".into()));
        assert!(RingSpec::new(&[("a", 1)], MonomialOrder::Elimination { leading: 2 }).is_err());
    }

    #[test]
    fn chow_m_grading() {
        let spec = RingSpec::graded(&[("alpha", 1), ("beta", 1), ("x", 2), ("y", 2), ("z", 2)]).unwrap();
        let m = Monomial::from_exponents(&[0, 1, 0, 0, 8]).unwrap();
        assert_eq!(spec.degree(&m), 17);
        let t = RingSpec::graded(&[("t", 1)]).unwrap();
        assert_eq!(t.nvars(), 1);
    }

    #[test]
    fn revlex_breaks_ties_on_last_variable() {
        let spec = RingSpec::graded(&[("x", 1), ("y", 1), ("z", 1)]).unwrap();
        let xz = Monomial::from_exponents(&[1, 0, 1]).unwrap();
        let y2 = Monomial::from_exponents(&[0, 2, 0]).unwrap();
        // degrevlex: y^2 > xz
        assert_eq!(spec.cmp(&y2, &xz), Ordering::Greater);
        let x = Monomial::var(0, 1);
        assert_eq!(spec.cmp(&xz, &x), Ordering::Greater);
    }

    #[test]
    fn elimination_block_dominates() {
        let spec = RingSpec::new(&[("t", 1), ("x", 1), ("y", 1)], MonomialOrder::Elimination { leading: 1 })
            .unwrap();
        let t = Monomial::var(0, 1);
        let y3 = Monomial::var(2, 3);
        assert_eq!(spec.cmp(&t, &y3), Ordering::Greater);
    }

    #[test]
    fn order_key_matches_cmp() {
        for order in [MonomialOrder::WeightedRevLex, MonomialOrder::Elimination { leading: 2 }] {
            let spec = RingSpec::new(&[("a", 1), ("b", 2), ("c", 1), ("d", 3)], order).unwrap();
            let mut all = Vec::new();
            for d in 0..=6 {
                all.extend(spec.monomials_of_degree(d));
            }
            for x in &all {
                for y in &all {
                    assert_eq!(spec.cmp(x, y), spec.order_key(x).cmp(&spec.order_key(y)));
                }
            }
        }
    }

    #[test]
    fn degree_enumeration_counts() {
        let spec = RingSpec::graded(&[("a", 1), ("b", 1), ("x", 2)]).unwrap();
        // degree 2: a^2, ab, b^2, x
        assert_eq!(spec.monomials_of_degree(2).len(), 4);
        assert_eq!(spec.monomials_of_degree(0).len(), 1);
    }
}
