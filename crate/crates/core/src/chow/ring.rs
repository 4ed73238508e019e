use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactpoly::{parse_poly, same_spec, Monomial, Poly, RingSpec, Scalar};
use crate::groebner::{Budget, GroebnerBasis, Ideal, SeriesVector};

/// Graded Artinian quotient `Q[vars]/I` standing in for the Chow ring of a
/// smooth projective variety of dimension `top`.
#[derive(Debug)]
pub struct ChowRing {
    name: String,
    spec: Arc<RingSpec>,
    ideal: Ideal,
    top: u32,
    series: SeriesVector,
    point: Option<Poly>,
}

impl ChowRing {
    /// Builds the quotient, caching its basis and series.
    ///
    /// Relations must be homogeneous. The quotient must vanish above `top`.
    /// A point class, when given, must be a nonzero class spanning the
    /// one-dimensional top piece.
    pub fn build(
        name: &str,
        spec: &Arc<RingSpec>,
        relations: Vec<Poly>,
        top: u32,
        point: Option<Poly>,
        budget: &Budget,
    ) -> Result<Arc<ChowRing>> {
        for r in &relations {
            if !r.is_homogeneous() {
                return Err(Error::NonHomogeneous(r.render()));
            }
        }
        let budget = Budget { degree_bound: Some(top + spec.max_weight()), ..*budget };
        let ideal = Ideal::new(spec, relations)?.with_basis(&budget)?;
        let series = ideal.hilbert_series(top)?;
        let ring = ChowRing { name: name.into(), spec: spec.clone(), ideal, top, series, point: None };
        match point {
            Some(p) => ring.installing_point(p).map(Arc::new),
            None => Ok(Arc::new(ring)),
        }
    }

    fn installing_point(mut self, p: Poly) -> Result<ChowRing> {
        let dim = self.series.get(self.top as usize) as usize;
        if dim != 1 {
            return Err(Error::TopNotOneDimensional { dim });
        }
        let p = p.map_into(&self.spec)?;
        let nf = self.basis().normal_form(&p).component(self.top);
        if nf.is_zero() {
            return Err(Error::ZeroTopClass);
        }
        self.point = Some(nf);
        Ok(self)
    }

    /// Copy under another name; classes of the old ring do not carry over.
    pub fn renamed(&self, name: &str) -> Arc<ChowRing> {
        Arc::new(ChowRing {
            name: name.into(),
            spec: self.spec.clone(),
            ideal: self.ideal.clone(),
            top: self.top,
            series: self.series.clone(),
            point: self.point.clone(),
        })
    }

    /// Copy of this ring with a point class installed.
    pub fn with_point_class(&self, p: &Poly) -> Result<Arc<ChowRing>> {
        let ring = ChowRing {
            name: self.name.clone(),
            spec: self.spec.clone(),
            ideal: self.ideal.clone(),
            top: self.top,
            series: self.series.clone(),
            point: None,
        };
        ring.installing_point(p.clone()).map(Arc::new)
    }

    /// Installs `c_top / euler` as the point class (Gauss–Bonnet).
    pub fn gauss_bonnet_point(&self, c_top: &ChowClass, euler: i64) -> Result<Arc<ChowRing>> {
        if euler == 0 {
            return Err(Error::ZeroTopClass);
        }
        let top = c_top.component(self.top);
        if top.is_zero() {
            return Err(Error::ZeroTopClass);
        }
        self.with_point_class(&top.value.scale(&Scalar::from_frac(1, euler)))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn basis(&self) -> &GroebnerBasis {
        self.ideal.basis().expect("chow rings always cache a basis")
    }

    pub fn relations(&self) -> &[Poly] {
        self.ideal.generators()
    }

    pub fn top_degree(&self) -> u32 {
        self.top
    }

    pub fn series(&self) -> &SeriesVector {
        &self.series
    }

    pub fn point_poly(&self) -> Option<&Poly> {
        self.point.as_ref()
    }

    pub fn point_class(self: &Arc<Self>) -> Option<ChowClass> {
        self.point.as_ref().map(|p| ChowClass { ring: self.clone(), value: p.clone() })
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        self.basis().normal_form(p)
    }

    /// Standard monomials of degree `d`, the basis of the degree-`d` piece.
    pub fn graded_basis(&self, d: u32) -> Vec<Monomial> {
        if d > self.top {
            return Vec::new();
        }
        self.basis().standard_monomials(d)
    }

    pub fn class(self: &Arc<Self>, p: &Poly) -> Result<ChowClass> {
        let p = if same_spec(p.spec(), &self.spec) { p.clone() } else { p.map_into(&self.spec)? };
        Ok(ChowClass { value: self.normal_form(&p), ring: self.clone() })
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<ChowClass> {
        self.class(&parse_poly(text, &self.spec)?)
    }

    pub fn var(self: &Arc<Self>, name: &str) -> Result<ChowClass> {
        self.class(&Poly::var(&self.spec, name)?)
    }

    pub fn one(self: &Arc<Self>) -> ChowClass {
        ChowClass { ring: self.clone(), value: Poly::one(&self.spec) }
    }

    pub fn zero(self: &Arc<Self>) -> ChowClass {
        ChowClass { ring: self.clone(), value: Poly::zero(&self.spec) }
    }

    pub fn scalar(self: &Arc<Self>, c: Scalar) -> ChowClass {
        ChowClass { ring: self.clone(), value: Poly::constant(&self.spec, c) }
    }

    pub fn monomial(self: &Arc<Self>, m: Monomial) -> ChowClass {
        ChowClass { ring: self.clone(), value: self.normal_form(&Poly::monomial(&self.spec, m, Scalar::one())) }
    }

    /// Degree of the top-piece integral; the point class integrates to 1.
    pub fn integrate(&self, c: &ChowClass) -> Result<Scalar> {
        let point = self.point.as_ref().ok_or_else(|| Error::NoPointClass(self.name.clone()))?;
        let top = c.value.component(self.top);
        let lead = point.leading().expect("nonzero point class");
        Ok(&top.coefficient(&lead.mono) / &lead.coeff)
    }

    /// Coordinates of the degree-`d` component of `c` in [`Self::graded_basis`].
    pub fn coordinates(&self, c: &ChowClass, d: u32) -> Vec<Scalar> {
        let comp = c.value.component(d);
        self.graded_basis(d).iter().map(|m| comp.coefficient(m)).collect()
    }

    /// Class with the given coordinates in degree `d`.
    pub fn from_coordinates(self: &Arc<Self>, coords: &[Scalar], d: u32) -> ChowClass {
        let basis = self.graded_basis(d);
        let p = Poly::from_terms(&self.spec, basis.into_iter().zip(coords.iter().cloned()));
        ChowClass { ring: self.clone(), value: p }
    }

    pub(crate) fn compatible(a: &Arc<ChowRing>, b: &Arc<ChowRing>) -> bool {
        Arc::ptr_eq(a, b) || (a.name == b.name && same_spec(&a.spec, &b.spec))
    }
}

/// An element of a [`ChowRing`], always held in normal form.
#[derive(Clone)]
pub struct ChowClass {
    ring: Arc<ChowRing>,
    value: Poly,
}

impl PartialEq for ChowClass {
    fn eq(&self, other: &Self) -> bool {
        ChowRing::compatible(&self.ring, &other.ring) && self.value == other.value
    }
}

impl Eq for ChowClass {}

impl ChowClass {
    pub fn ring(&self) -> &Arc<ChowRing> {
        &self.ring
    }

    pub fn value(&self) -> &Poly {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Re-homes the class into a compatible ring (e.g. one with a point class).
    pub fn in_ring(&self, ring: &Arc<ChowRing>) -> Result<ChowClass> {
        ring.class(&self.value)
    }

    fn check(&self, other: &ChowClass) -> Result<()> {
        if ChowRing::compatible(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    fn wrap(&self, p: Poly) -> ChowClass {
        ChowClass { ring: self.ring.clone(), value: p }
    }

    pub fn try_add(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check(other)?;
        Ok(self.wrap(&self.value + &other.value))
    }

    pub fn try_sub(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check(other)?;
        Ok(self.wrap(&self.value - &other.value))
    }

    pub fn try_mul(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check(other)?;
        let prod = self.value.try_mul(&other.value)?.truncate(self.ring.top);
        Ok(self.wrap(self.ring.normal_form(&prod)))
    }

    pub fn scale(&self, c: &Scalar) -> ChowClass {
        self.wrap(self.value.scale(c))
    }

    pub fn scale_int(&self, c: i64) -> ChowClass {
        self.scale(&Scalar::from_int(c))
    }

    pub fn pow(&self, e: u32) -> ChowClass {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn component(&self, d: u32) -> ChowClass {
        self.wrap(self.value.component(d))
    }

    /// Components in degrees `0..=top` (zero pieces included).
    pub fn components(&self) -> Vec<ChowClass> {
        (0..=self.ring.top).map(|d| self.component(d)).collect()
    }

    pub fn constant_term(&self) -> Scalar {
        self.value.constant_term()
    }

    /// `Some(d)` for a nonzero homogeneous class.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.value.homogeneous_degree()
    }

    pub fn integrate(&self) -> Result<Scalar> {
        self.ring.integrate(self)
    }

    pub fn render(&self) -> String {
        self.value.render()
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

impl fmt::Debug for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.ring.name, self.value)
    }
}

impl Add for &ChowClass {
    type Output = ChowClass;
    fn add(self, rhs: &ChowClass) -> ChowClass {
        self.try_add(rhs).unwrap_or_else(|_| panic!("{}", mismatch(self, rhs)))
    }
}

impl Sub for &ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: &ChowClass) -> ChowClass {
        self.try_sub(rhs).unwrap_or_else(|_| panic!("{}", mismatch(self, rhs)))
    }
}

impl Mul for &ChowClass {
    type Output = ChowClass;
    fn mul(self, rhs: &ChowClass) -> ChowClass {
        self.try_mul(rhs).unwrap_or_else(|_| panic!("{}", mismatch(self, rhs)))
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        self.wrap(-&self.value)
    }
}

fn mismatch(a: &ChowClass, b: &ChowClass) -> String {
    format!("classes from different rings `{}` and `{}`", a.ring.name, b.ring.name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    pub(crate) fn p2() -> Arc<ChowRing> {
        let s = RingSpec::graded(&[("k", 1)]).unwrap();
        let k3 = parse_poly("k^3", &s).unwrap();
        let pt = parse_poly("k^2", &s).unwrap();
        ChowRing::build("P2", &s, alloc::vec![k3], 2, Some(pt), &Budget::unlimited()).unwrap()
    }

    #[test]
    fn projective_plane() {
        let r = p2();
        assert_eq!(r.series(), &SeriesVector(alloc::vec![1, 1, 1]));
        assert_eq!(r.graded_basis(1).len(), 1);
        assert_eq!(r.point_class().unwrap().integrate().unwrap(), Scalar::one());
        let c = r.parse("(1 + k)^3").unwrap();
        assert_eq!(c.integrate().unwrap(), Scalar::from_int(3));
        let gb = r.gauss_bonnet_point(&c, 3).unwrap();
        assert_eq!(gb.point_poly().unwrap().render(), "k^2");
    }

    #[test]
    fn integration_is_linear_and_ignores_lower_degrees() {
        let r = p2();
        let a = r.parse("3*k^2 + k + 5").unwrap();
        let b = r.parse("-k^2 + 7*k").unwrap();
        assert_eq!(a.integrate().unwrap(), Scalar::from_int(3));
        assert_eq!((&a + &b).integrate().unwrap(), Scalar::from_int(2));
        assert!(r.parse("k").unwrap().integrate().unwrap().is_zero());
    }

    #[test]
    fn build_errors() {
        let s = RingSpec::graded(&[("x", 1), ("y", 1)]).unwrap();
        let rels = alloc::vec![parse_poly("x^2", &s).unwrap(), parse_poly("y^2", &s).unwrap()];
        let b = Budget::unlimited();
        let ring = ChowRing::build("P1xP1", &s, rels.clone(), 2, None, &b).unwrap();
        assert_eq!(ring.series(), &SeriesVector(alloc::vec![1, 2, 1]));
        let p = parse_poly("x*y", &s).unwrap();
        assert!(ChowRing::build("P1xP1", &s, rels.clone(), 2, Some(p), &b).is_ok());
        assert!(matches!(
            ChowRing::build("bad", &s, rels.clone(), 1, None, &b),
            Err(Error::NotFinite { top_degree: 1 })
        ));
        let zero_top = parse_poly("x^2", &s).unwrap();
        assert_eq!(ChowRing::build("P1xP1", &s, rels.clone(), 2, Some(zero_top), &b).unwrap_err(), Error::ZeroTopClass);
        let nh = alloc::vec![parse_poly("x^2 + y", &s).unwrap()];
        assert!(matches!(ChowRing::build("bad", &s, nh, 2, None, &b), Err(Error::NonHomogeneous(_))));
        let wide = alloc::vec![parse_poly("x^2", &s).unwrap(), parse_poly("y^3", &s).unwrap()];
        assert_eq!(
            ChowRing::build("P1xP2", &s, wide, 3, Some(parse_poly("x*y^2", &s).unwrap()), &b).map(|r| r.top_degree()),
            Ok(3)
        );
        let flat = alloc::vec![parse_poly("x^2", &s).unwrap(), parse_poly("x*y", &s).unwrap(), parse_poly("y^3", &s).unwrap()];
        let r = ChowRing::build("two-top", &s, flat, 2, None, &b).unwrap();
        assert_eq!(r.series(), &SeriesVector(alloc::vec![1, 2, 1]));
        let s2 = RingSpec::graded(&[("x", 1), ("y", 1)]).unwrap();
        let two = alloc::vec![parse_poly("x^2", &s2).unwrap(), parse_poly("y^2", &s2).unwrap(), parse_poly("x*y", &s2).unwrap()];
        assert_eq!(
            ChowRing::build("dim2", &s2, two, 1, Some(parse_poly("x", &s2).unwrap()), &b).unwrap_err(),
            Error::TopNotOneDimensional { dim: 2 }
        );
    }
}
