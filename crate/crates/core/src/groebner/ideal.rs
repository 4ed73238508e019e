use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::buchberger::{groebner_basis, Budget, GroebnerBasis};
use crate::error::{Error, Result};
use crate::exactpoly::{same_spec, MonomialOrder, Poly, RingSpec};

/// Graded dimensions of a quotient ring, indexed by weighted degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SeriesVector(pub Vec<u64>);

impl SeriesVector {
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn get(&self, d: usize) -> u64 {
        self.0.get(d).copied().unwrap_or(0)
    }

    /// Coefficientwise sum, padding the shorter vector with zeros.
    pub fn plus(&self, other: &SeriesVector) -> SeriesVector {
        let n = self.0.len().max(other.0.len());
        SeriesVector((0..n).map(|d| self.get(d) + other.get(d)).collect())
    }

    /// Product of generating functions.
    pub fn times(&self, other: &SeriesVector) -> SeriesVector {
        if self.0.is_empty() || other.0.is_empty() {
            return SeriesVector::default();
        }
        let mut out = alloc::vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        SeriesVector(out)
    }

    /// `t^lo + ... + t^hi`.
    pub fn range(lo: usize, hi: usize) -> SeriesVector {
        SeriesVector((0..=hi).map(|d| u64::from(d >= lo)).collect())
    }
}

impl fmt::Display for SeriesVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// Polynomial ideal given by generators, optionally with a cached basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    spec: Arc<RingSpec>,
    generators: Vec<Poly>,
    basis: Option<Arc<GroebnerBasis>>,
}

impl Ideal {
    pub fn new(spec: &Arc<RingSpec>, generators: Vec<Poly>) -> Result<Self> {
        if generators.iter().any(|g| !same_spec(g.spec(), spec)) {
            return Err(Error::SpecMismatch);
        }
        Ok(Ideal { spec: spec.clone(), generators, basis: None })
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn basis(&self) -> Option<&Arc<GroebnerBasis>> {
        self.basis.as_ref()
    }

    fn require_basis(&self) -> Result<&GroebnerBasis> {
        self.basis.as_deref().ok_or(Error::NoBasis)
    }

    /// Same ideal with its reduced basis cached.
    pub fn with_basis(mut self, budget: &Budget) -> Result<Self> {
        if self.basis.is_none() {
            self.basis = Some(Arc::new(groebner_basis(&self.spec, &self.generators, budget)?));
        }
        Ok(self)
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        self.require_basis()?.try_normal_form(p)
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Whether every generator of `other` lies in this ideal.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dimensions of the quotient in degrees `0..=top`, after confirming that
    /// every degree in `(top, top + max weight]` (hence every degree past `top`)
    /// has no standard monomials.
    pub fn hilbert_series(&self, top: u32) -> Result<SeriesVector> {
        let gb = self.require_basis()?;
        let window = top + self.spec.max_weight();
        if gb.degree_bound().is_some_and(|b| b < window) {
            return Err(Error::NotFinite { top_degree: top });
        }
        for d in top + 1..=window {
            if !gb.standard_monomials(d).is_empty() {
                return Err(Error::NotFinite { top_degree: top });
            }
        }
        Ok(self.graded_dimensions(top))
    }

    /// Standard-monomial counts in degrees `0..=upto`, with no finiteness check.
    pub fn graded_dimensions(&self, upto: u32) -> SeriesVector {
        let gb = self.basis.as_deref().expect("basis cached");
        SeriesVector((0..=upto).map(|d| gb.standard_monomials(d).len() as u64).collect())
    }

    pub fn render_generators(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.render()).collect()
    }
}

/// Two-sided containment test; computes missing bases on the fly.
pub fn ideal_equal(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<bool> {
    if !same_spec(&a.spec, &b.spec) {
        return Err(Error::SpecMismatch);
    }
    let a = a.clone().with_basis(budget)?;
    let b = b.clone().with_basis(budget)?;
    Ok(a.contains_ideal(&b)? && b.contains_ideal(&a)?)
}

/// Intersection of `ideal` with the subring on the variables not in `drop`.
///
/// The result lives in a fresh weighted-revlex spec on the surviving
/// variables (original relative order).
pub fn eliminate(ideal: &Ideal, drop: &[&str], budget: &Budget) -> Result<Ideal> {
    let spec = &ideal.spec;
    for name in drop {
        if spec.index_of(name).is_none() {
            return Err(Error::UnknownVariable((*name).into()));
        }
    }
    let (dropped, kept): (Vec<_>, Vec<_>) =
        spec.vars().iter().map(|v| (v.name.as_str(), v.weight)).partition(|(n, _)| drop.contains(n));
    if dropped.is_empty() {
        return Ideal::new(spec, ideal.generators.clone());
    }
    let mut order_vars = dropped.clone();
    order_vars.extend(kept.iter().copied());
    let elim = RingSpec::new(&order_vars, MonomialOrder::Elimination { leading: dropped.len() })?;
    let gens: Vec<Poly> = ideal.generators.iter().map(|g| g.map_into(&elim)).collect::<Result<_>>()?;
    let gb = groebner_basis(&elim, &gens, budget)?;
    let target = RingSpec::graded(&kept)?;
    let nd = dropped.len();
    let back: Vec<Option<Poly>> = (0..nd)
        .map(|_| Ok(None))
        .chain(kept.iter().map(|(n, _)| Poly::var(&target, n).map(Some)))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for p in gb.polys() {
        if p.terms().iter().all(|t| (0..nd).all(|i| t.mono.exponent(i) == 0)) {
            out.push(p.substitute(&back, &target)?);
        }
    }
    Ideal::new(&target, out)
}

/// Kernel of the graded map from the free ring on `source` to the quotient
/// of the images' ring by `target_relations`, sending variable `i` to
/// `images[i]`.
pub fn morphism_kernel(
    source: &Arc<RingSpec>,
    images: &[Poly],
    target_relations: &[Poly],
    budget: &Budget,
) -> Result<Ideal> {
    if images.len() != source.nvars() {
        return Err(Error::MissingImage(
            source.vars().get(images.len()).map(|v| v.name.clone()).unwrap_or_default(),
        ));
    }
    let target = match images.first() {
        Some(p) => p.spec().clone(),
        None => return Ideal::new(source, Vec::new()),
    };
    for (i, img) in images.iter().enumerate() {
        if !same_spec(img.spec(), &target) {
            return Err(Error::SpecMismatch);
        }
        if !img.is_zero() && img.homogeneous_degree() != Some(source.weight(i)) {
            return Err(Error::NonHomogeneous(format!("image of {}", source.name(i))));
        }
    }
    // graph ring: target variables (to be eliminated) then source variables
    let nt = target.nvars();
    let mut vars: Vec<(String, u32)> =
        target.vars().iter().enumerate().map(|(i, v)| (format!("t{i}"), v.weight)).collect();
    vars.extend(source.vars().iter().enumerate().map(|(i, v)| (format!("s{i}"), v.weight)));
    let graph = RingSpec::new(&vars, MonomialOrder::Elimination { leading: nt })?;
    let embed: Vec<Option<Poly>> =
        (0..nt).map(|i| Poly::var(&graph, &format!("t{i}")).map(Some)).collect::<Result<_>>()?;
    let mut gens = Vec::new();
    for r in target_relations {
        gens.push(r.substitute(&embed, &graph)?);
    }
    for (i, img) in images.iter().enumerate() {
        let s = Poly::var(&graph, &format!("s{i}"))?;
        gens.push(&s - &img.substitute(&embed, &graph)?);
    }
    let gb = groebner_basis(&graph, &gens, budget)?;
    let back: Vec<Option<Poly>> = (0..nt)
        .map(|_| None)
        .chain((0..source.nvars()).map(|i| Some(Poly::var(source, source.name(i)).expect("source variable"))))
        .collect();
    let mut out = Vec::new();
    for p in gb.polys() {
        if p.terms().iter().all(|t| (0..nt).all(|i| t.mono.exponent(i) == 0)) {
            out.push(p.substitute(&back, source)?);
        }
    }
    Ideal::new(source, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    #[test]
    fn scalar_multiple_and_containment() {
        let s = RingSpec::graded(&[("x", 1), ("y", 1)]).unwrap();
        let x = Ideal::new(&s, alloc::vec![parse_poly("x", &s).unwrap()]).unwrap();
        let x2 = Ideal::new(&s, alloc::vec![parse_poly("2*x", &s).unwrap()]).unwrap();
        let sq = Ideal::new(&s, alloc::vec![parse_poly("x^2", &s).unwrap()]).unwrap();
        let b = Budget::unlimited();
        assert!(ideal_equal(&x, &x2, &b).unwrap());
        assert!(!ideal_equal(&sq, &x, &b).unwrap());
    }

    #[test]
    fn series_of_x_squared() {
        let s = RingSpec::graded(&[("x", 1)]).unwrap();
        let i = Ideal::new(&s, alloc::vec![parse_poly("x^2", &s).unwrap()])
            .unwrap()
            .with_basis(&Budget::unlimited())
            .unwrap();
        assert_eq!(i.hilbert_series(1).unwrap(), SeriesVector(alloc::vec![1, 1]));
        assert_eq!(i.hilbert_series(0).unwrap_err(), Error::NotFinite { top_degree: 0 });
    }

    #[test]
    fn twisted_cubic_elimination() {
        let s = RingSpec::graded(&[("t", 1), ("x", 1), ("y", 1)]).unwrap();
        // not homogeneous for weight-1 variables; elimination does not care
        let i = Ideal::new(&s, alloc::vec![parse_poly("x - t^2", &s).unwrap(), parse_poly("y - t^3", &s).unwrap()])
            .unwrap();
        let e = eliminate(&i, &["t"], &Budget::unlimited()).unwrap();
        let expected = Ideal::new(e.spec(), alloc::vec![parse_poly("x^3 - y^2", e.spec()).unwrap()]).unwrap();
        assert!(ideal_equal(&e, &expected, &Budget::unlimited()).unwrap());
    }

    #[test]
    fn substitution_elimination() {
        let s = RingSpec::graded(&[("b1", 1), ("b3", 3), ("d2", 2)]).unwrap();
        let i = Ideal::new(
            &s,
            alloc::vec![
                parse_poly("3*b3 + b1^3 - 4*b1*d2", &s).unwrap(),
                parse_poly("b1*b3 - d2^2", &s).unwrap()
            ],
        )
        .unwrap();
        let e = eliminate(&i, &["b3"], &Budget::unlimited()).unwrap();
        let g = parse_poly("b1*(4*b1*d2 - b1^3)/3 - d2^2", e.spec()).unwrap();
        let expected = Ideal::new(e.spec(), alloc::vec![g]).unwrap();
        assert!(ideal_equal(&e, &expected, &Budget::unlimited()).unwrap());
    }

    #[test]
    fn kernels() {
        let x = RingSpec::graded(&[("x", 1)]).unwrap();
        let u = RingSpec::graded(&[("u", 1)]).unwrap();
        let k = morphism_kernel(
            &u,
            &[parse_poly("x", &x).unwrap()],
            &[parse_poly("x^3", &x).unwrap()],
            &Budget::unlimited(),
        )
        .unwrap();
        let expected = Ideal::new(&u, alloc::vec![parse_poly("u^3", &u).unwrap()]).unwrap();
        assert!(ideal_equal(&k, &expected, &Budget::unlimited()).unwrap());

        let t = RingSpec::graded(&[("t", 1)]).unwrap();
        let uv = RingSpec::graded(&[("u", 2), ("v", 3)]).unwrap();
        let k = morphism_kernel(
            &uv,
            &[parse_poly("t^2", &t).unwrap(), parse_poly("t^3", &t).unwrap()],
            &[],
            &Budget::unlimited(),
        )
        .unwrap();
        let expected = Ideal::new(&uv, alloc::vec![parse_poly("u^3 - v^2", &uv).unwrap()]).unwrap();
        assert!(ideal_equal(&k, &expected, &Budget::unlimited()).unwrap());
        let imgs = [("u", parse_poly("t^2", &t).unwrap()), ("v", parse_poly("t^3", &t).unwrap())];
        for g in k.generators() {
            assert!(g.substitute_named(&imgs, &t).unwrap().is_zero());
        }
    }

    #[test]
    fn kernel_rejects_degree_mismatch() {
        let t = RingSpec::graded(&[("t", 1)]).unwrap();
        let u = RingSpec::graded(&[("u", 1)]).unwrap();
        let err = morphism_kernel(&u, &[parse_poly("t^2", &t).unwrap()], &[], &Budget::unlimited()).unwrap_err();
        assert!(matches!(err, Error::NonHomogeneous(_)));
    }

    #[test]
    fn series_algebra() {
        let a = SeriesVector(alloc::vec![1, 2, 2, 1]);
        assert_eq!(a.times(&SeriesVector::range(1, 2)), SeriesVector(alloc::vec![0, 1, 3, 4, 3, 1]));
        assert!(a.is_palindromic());
        assert_eq!(a.plus(&SeriesVector(alloc::vec![1])).total(), 7);
        assert_eq!(alloc::format!("{a}"), "(1,2,2,1)");
    }
}
