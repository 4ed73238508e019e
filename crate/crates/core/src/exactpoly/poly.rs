use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::scalar::Scalar;
use super::spec::{Monomial, RingSpec};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: Scalar,
}

/// Sparse polynomial over a [`RingSpec`], terms strictly descending in the
/// spec's monomial order with no zero coefficients.
#[derive(Clone)]
pub struct Poly {
    spec: Arc<RingSpec>,
    terms: Vec<Term>,
}

pub(crate) fn same_spec(a: &Arc<RingSpec>, b: &Arc<RingSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_spec(&self.spec, &other.spec) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(spec: &Arc<RingSpec>) -> Self {
        Poly { spec: spec.clone(), terms: Vec::new() }
    }

    pub fn constant(spec: &Arc<RingSpec>, c: Scalar) -> Self {
        Self::monomial(spec, Monomial::one(), c)
    }

    pub fn one(spec: &Arc<RingSpec>) -> Self {
        Self::constant(spec, Scalar::one())
    }

    pub fn monomial(spec: &Arc<RingSpec>, mono: Monomial, coeff: Scalar) -> Self {
        let terms = if coeff.is_zero() { Vec::new() } else { alloc::vec![Term { mono, coeff }] };
        Poly { spec: spec.clone(), terms }
    }

    pub fn var(spec: &Arc<RingSpec>, name: &str) -> Result<Self> {
        let i = spec.index_of(name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
        Ok(Self::monomial(spec, Monomial::var(i, 1), Scalar::one()))
    }

    /// Builds a canonical polynomial from arbitrary terms (duplicates merged).
    pub fn from_terms(spec: &Arc<RingSpec>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += &c;
        }
        Self::from_map(spec, acc)
    }

    fn from_map(spec: &Arc<RingSpec>, acc: BTreeMap<Monomial, Scalar>) -> Self {
        let mut terms: Vec<Term> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(mono, coeff)| Term { mono, coeff }).collect();
        terms.sort_by(|a, b| spec.cmp(&b.mono, &a.mono));
        Poly { spec: spec.clone(), terms }
    }

    /// Trusts the caller that `terms` is already canonical.
    pub(crate) fn from_sorted(spec: &Arc<RingSpec>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| spec.cmp(&w[0].mono, &w[1].mono) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        Poly { spec: spec.clone(), terms }
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_mono(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.iter().find(|t| t.mono == *m).map(|t| t.coeff.clone()).unwrap_or_default()
    }

    /// Constant term.
    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one())
    }

    /// Largest weighted degree of a term (`None` for zero).
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| self.spec.degree(&t.mono)).max()
    }

    /// `Some(d)` when every term has weighted degree `d`; zero is homogeneous of
    /// every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.spec.degree(&self.terms.first()?.mono);
        self.terms.iter().all(|t| self.spec.degree(&t.mono) == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Splits into homogeneous pieces keyed by weighted degree.
    pub fn graded_components(&self) -> BTreeMap<u32, Poly> {
        let mut parts: BTreeMap<u32, Vec<Term>> = BTreeMap::new();
        for t in &self.terms {
            parts.entry(self.spec.degree(&t.mono)).or_default().push(t.clone());
        }
        parts.into_iter().map(|(d, ts)| (d, Poly::from_sorted(&self.spec, ts))).collect()
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> Poly {
        let ts = self.terms.iter().filter(|t| self.spec.degree(&t.mono) == d).cloned().collect();
        Poly::from_sorted(&self.spec, ts)
    }

    /// Drops every term of degree above `d`.
    pub fn truncate(&self, d: u32) -> Poly {
        let ts = self.terms.iter().filter(|t| self.spec.degree(&t.mono) <= d).cloned().collect();
        Poly::from_sorted(&self.spec, ts)
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if same_spec(&self.spec, &other.spec) {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let spec = &self.spec;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |t: &Term| if negate { -&t.coeff } else { t.coeff.clone() };
        while i < a.len() && j < b.len() {
            match spec.cmp(&a[i].mono, &b[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term { mono: b[j].mono, coeff: rhs(&b[j]) });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].coeff - &b[j].coeff } else { &a[i].coeff + &b[j].coeff };
                    if !c.is_zero() {
                        out.push(Term { mono: a[i].mono, coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| Term { mono: t.mono, coeff: rhs(t) }));
        Poly { spec: spec.clone(), terms: out }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.spec));
        }
        if other.len() == 1 {
            let t = &other.terms[0];
            return self.checked_mul_term(&t.mono, &t.coeff);
        }
        if self.len() == 1 {
            let t = &self.terms[0];
            return other.checked_mul_term(&t.mono, &t.coeff);
        }
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for s in &self.terms {
            for t in &other.terms {
                let m = s.mono.checked_mul(&t.mono).ok_or(Error::ExponentOverflow {
                    cap: super::spec::MAX_EXPONENT,
                })?;
                let c = &s.coeff * &t.coeff;
                match acc.get_mut(&m) {
                    Some(e) => *e += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(Self::from_map(&self.spec, acc))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(&self.spec);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.spec);
        }
        let terms = self.terms.iter().map(|t| Term { mono: t.mono, coeff: &t.coeff * c }).collect();
        Poly { spec: self.spec.clone(), terms }
    }

    fn checked_mul_term(&self, m: &Monomial, c: &Scalar) -> Result<Poly> {
        if c.is_zero() {
            return Ok(Poly::zero(&self.spec));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mono = t.mono.checked_mul(m).ok_or(Error::ExponentOverflow { cap: super::spec::MAX_EXPONENT })?;
            terms.push(Term { mono, coeff: &t.coeff * c });
        }
        // multiplying by a monomial preserves any monomial order
        Ok(Poly { spec: self.spec.clone(), terms })
    }

    /// `self * c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        self.checked_mul_term(m, c).expect("monomial exponent exceeds cap")
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(t) if !t.coeff.is_one() => self.scale(&t.coeff.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// Re-sorts the same terms under another spec with identical variables.
    pub fn with_spec(&self, spec: &Arc<RingSpec>) -> Result<Poly> {
        if spec.vars() != self.spec.vars() {
            return Err(Error::SpecMismatch);
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| spec.cmp(&b.mono, &a.mono));
        Ok(Poly { spec: spec.clone(), terms })
    }

    /// Evaluates at `images[i]` for variable `i`; all images share `target`.
    /// A missing image is only an error when the variable actually occurs.
    pub fn substitute(&self, images: &[Option<Poly>], target: &Arc<RingSpec>) -> Result<Poly> {
        let n = self.spec.nvars();
        for img in images.iter().flatten() {
            if !same_spec(img.spec(), target) {
                return Err(Error::SpecMismatch);
            }
        }
        let mut powers: Vec<Vec<Poly>> = alloc::vec![Vec::new(); n];
        let mut acc = Poly::zero(target);
        for t in &self.terms {
            let mut prod = Poly::constant(target, t.coeff.clone());
            for i in 0..n {
                let e = t.mono.exponent(i) as usize;
                if e == 0 {
                    continue;
                }
                let img = images
                    .get(i)
                    .and_then(|x| x.as_ref())
                    .ok_or_else(|| Error::MissingImage(self.spec.name(i).into()))?;
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Poly::one(target));
                }
                while cache.len() <= e {
                    let next = &cache[cache.len() - 1] * img;
                    cache.push(next);
                }
                prod = &prod * &cache[e];
            }
            acc = &acc + &prod;
        }
        Ok(acc)
    }

    /// Substitution keyed by variable name; unnamed variables must not occur.
    pub fn substitute_named(&self, images: &[(&str, Poly)], target: &Arc<RingSpec>) -> Result<Poly> {
        let mut slots: Vec<Option<Poly>> = alloc::vec![None; self.spec.nvars()];
        for (name, p) in images {
            let i = self.spec.index_of(name).ok_or_else(|| Error::UnknownVariable((*name).into()))?;
            slots[i] = Some(p.clone());
        }
        self.substitute(&slots, target)
    }

    /// Moves the polynomial into `target` by variable name.
    pub fn map_into(&self, target: &Arc<RingSpec>) -> Result<Poly> {
        let mut slots = Vec::with_capacity(self.spec.nvars());
        for v in self.spec.vars() {
            slots.push(Some(Poly::var(target, &v.name)?));
        }
        self.substitute(&slots, target)
    }

    /// Canonical text.
    pub fn render(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mag = t.coeff.abs();
            if t.mono.is_one() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            self.spec.fmt_monomial(&t.mono, f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomials from different rings")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomials from different rings")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomials from different rings")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|t| Term { mono: t.mono, coeff: -&t.coeff }).collect();
        Poly { spec: self.spec.clone(), terms }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn spec() -> Arc<RingSpec> {
        RingSpec::graded(&[("x", 1), ("y", 1), ("h", 1)]).unwrap()
    }

    #[test]
    fn binomial_cube() {
        let s = spec();
        let p = parse_poly("1 + h", &s).unwrap().pow(3);
        assert_eq!(p.render(), "h^3 + 3*h^2 + 3*h + 1");
    }

    #[test]
    fn difference_of_squares() {
        let s = spec();
        let x = Poly::var(&s, "x").unwrap();
        let y = Poly::var(&s, "y").unwrap();
        assert_eq!(&(&x + &y) * &(&x - &y), parse_poly("x^2 - y^2", &s).unwrap());
    }

    #[test]
    fn weighted_components() {
        let s = RingSpec::graded(&[("alpha", 1), ("x", 2)]).unwrap();
        let p = parse_poly("x^2 + alpha*x", &s).unwrap();
        let parts = p.graded_components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&3].render(), "alpha*x");
        assert_eq!(parts[&4].render(), "x^2");
        assert!(Poly::zero(&s).graded_components().is_empty());
    }

    #[test]
    fn product_degree() {
        let s = RingSpec::graded(&[("alpha", 1), ("beta", 1), ("x", 2), ("y", 2), ("z", 2)]).unwrap();
        let p = &Poly::var(&s, "beta").unwrap() * &Poly::var(&s, "z").unwrap().pow(8);
        assert_eq!(p.homogeneous_degree(), Some(17));
        assert_eq!(p.render(), "beta*z^8");
    }

    #[test]
    fn substitution_is_a_homomorphism() {
        let m = RingSpec::graded(&[("alpha", 1), ("z", 2)]).unwrap();
        let t = RingSpec::graded(&[("tau", 1), ("rho", 1), ("b1", 1)]).unwrap();
        let a = parse_poly("rho + tau", &t).unwrap();
        let z = parse_poly("tau*(tau + rho + b1/3)", &t).unwrap();
        let imgs = [("alpha", a), ("z", z)];
        let sq = parse_poly("alpha^2", &m).unwrap().substitute_named(&imgs, &t).unwrap();
        assert_eq!(sq, parse_poly("rho^2 + 2*rho*tau + tau^2", &t).unwrap());
        let nz = parse_poly("9*z", &m).unwrap().substitute_named(&imgs, &t).unwrap();
        assert_eq!(nz, parse_poly("9*tau^2 + 9*tau*rho + 3*tau*b1", &t).unwrap());
    }

    #[test]
    fn missing_image_only_when_used() {
        let m = RingSpec::graded(&[("a", 1), ("b", 1)]).unwrap();
        let p = parse_poly("a^2", &m).unwrap();
        let imgs = [Some(Poly::var(&m, "a").unwrap()), None];
        assert_eq!(p.substitute(&imgs, &m).unwrap(), p);
        let q = parse_poly("b", &m).unwrap();
        assert_eq!(q.substitute(&imgs, &m).unwrap_err(), Error::MissingImage("b".into()));
    }

    #[test]
    fn mismatched_specs() {
        let a = Poly::one(&spec());
        let b = Poly::one(&RingSpec::graded(&[("t", 1)]).unwrap());
        assert_eq!(a.try_add(&b).unwrap_err(), Error::SpecMismatch);
    }

    #[test]
    fn exponent_guard() {
        let s = RingSpec::graded(&[("t", 1)]).unwrap();
        let big = Poly::monomial(&s, Monomial::var(0, 40000), Scalar::one());
        let two = &big + &Poly::one(&s);
        assert!(matches!(two.try_mul(&two), Err(Error::ExponentOverflow { .. })));
    }
}
