use alloc::sync::Arc;
use alloc::vec::Vec;

use super::morphism::RingMorphism;
use super::ring::{ChowClass, ChowRing};
use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, Poly, RingSpec, Scalar};
use crate::linalg::{solve, Matrix};

/// Writes `c` as a polynomial in `gens`, where variable `i` of `gen_spec`
/// stands for `gens[i]` and carries its degree as weight.
///
/// With `standard = Some(ring)`, only standard monomials of that presented
/// ring are used, which makes the answer unique whenever the presented ring
/// maps injectively. Otherwise all monomials are allowed and the solution
/// with free coordinates set to zero is returned.
pub fn express_in_subring(
    c: &ChowClass,
    gen_spec: &Arc<RingSpec>,
    gens: &[ChowClass],
    standard: Option<&ChowRing>,
) -> Result<Poly> {
    let ring = c.ring();
    if gens.len() != gen_spec.nvars() {
        return Err(Error::SpecMismatch);
    }
    let mut out = Poly::zero(gen_spec);
    for d in 0..=ring.top_degree() {
        let rhs = ring.coordinates(c, d);
        if rhs.iter().all(Scalar::is_zero) {
            continue;
        }
        let monos: Vec<Monomial> = match standard {
            Some(r) => r.graded_basis(d),
            None => gen_spec.monomials_of_degree(d),
        };
        let cols: Vec<Vec<Scalar>> = monos
            .iter()
            .map(|m| {
                let mut v = ring.one();
                for (i, g) in gens.iter().enumerate() {
                    for _ in 0..m.exponent(i) {
                        v = &v * g;
                    }
                }
                ring.coordinates(&v, d)
            })
            .collect();
        let sol = solve(&Matrix::from_columns(&cols, rhs.len()), &rhs).ok_or(Error::NotInSubring)?;
        out = &out + &Poly::from_terms(gen_spec, monos.into_iter().zip(sol.particular));
    }
    Ok(out)
}

/// One perpendicularity condition `constant + Σ coefficients[i]·x_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentEquation {
    pub constant: Scalar,
    pub coefficients: Vec<Scalar>,
}

/// All corrected classes `γ + Σ x_i·corr_i` that are perpendicular to the
/// pushed-forward kernel: `particular + span(directions)`.
#[derive(Clone, Debug)]
pub struct DescentSolution {
    pub particular: ChowClass,
    pub directions: Vec<ChowClass>,
    pub coefficients: Vec<Scalar>,
    pub equations: Vec<DescentEquation>,
}

/// Corrects `gamma` (a class on the blow-up) by a combination of
/// `corrections` so that its restriction to the exceptional divisor pairs to
/// zero with every kernel class of complementary degree.
pub fn perpendicular_descent(
    gamma: &ChowClass,
    kernel: &[ChowClass],
    restriction: &RingMorphism,
    corrections: &[ChowClass],
) -> Result<DescentSolution> {
    let e = restriction.target();
    let top = e.top_degree();
    let rg = restriction.apply(gamma)?;
    let rc: Vec<ChowClass> = corrections.iter().map(|c| restriction.apply(c)).collect::<Result<_>>()?;
    let mut equations = Vec::new();
    for delta in kernel {
        let delta = delta.in_ring(e)?;
        let pair = |x: &ChowClass| -> Result<Scalar> {
            let prod = x * &delta;
            if prod.component(top).is_zero() {
                Ok(Scalar::zero())
            } else {
                e.integrate(&prod)
            }
        };
        let eq = DescentEquation { constant: pair(&rg)?, coefficients: rc.iter().map(pair).collect::<Result<_>>()? };
        if !eq.constant.is_zero() || eq.coefficients.iter().any(|c| !c.is_zero()) {
            equations.push(eq);
        }
    }
    let n = corrections.len();
    let sol = if equations.is_empty() {
        crate::linalg::AffineSolution {
            particular: alloc::vec![Scalar::zero(); n],
            directions: (0..n)
                .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
                .collect(),
        }
    } else {
        let a = Matrix::from_rows(equations.iter().map(|q| q.coefficients.clone()).collect(), n);
        let b: Vec<Scalar> = equations.iter().map(|q| -&q.constant).collect();
        solve(&a, &b).ok_or(Error::NoDescent)?
    };
    let combine = |coeffs: &[Scalar]| {
        corrections.iter().zip(coeffs).fold(gamma.ring().zero(), |acc, (c, x)| &acc + &c.scale(x))
    };
    Ok(DescentSolution {
        particular: gamma + &combine(&sol.particular),
        directions: sol.directions.iter().map(|v| combine(v)).collect(),
        coefficients: sol.particular,
        equations,
    })
}

/// Class `[X]` of a subvariety from its restriction `A*(Y) → A*(X)`:
/// the unique `c` of codimension `dim Y − dim X` with `∫_Y c·g = ∫_X g|_X`
/// for every `g` of degree `dim X`. Both rings need point classes.
pub fn fundamental_class(restriction: &RingMorphism) -> Result<ChowClass> {
    let (y, x) = (restriction.source(), restriction.target());
    let dim = x.top_degree();
    let codim = y.top_degree().checked_sub(dim).ok_or(Error::NotInImage)?;
    let tests: Vec<ChowClass> = y.graded_basis(dim).into_iter().map(|m| y.monomial(m)).collect();
    let candidates: Vec<ChowClass> = y.graded_basis(codim).into_iter().map(|m| y.monomial(m)).collect();
    let mut rows = Vec::with_capacity(tests.len());
    let mut rhs = Vec::with_capacity(tests.len());
    for g in &tests {
        rows.push(candidates.iter().map(|c| y.integrate(&(c * g))).collect::<Result<Vec<_>>>()?);
        rhs.push(x.integrate(&restriction.apply(g)?)?);
    }
    let sol = solve(&Matrix::from_rows(rows, candidates.len()), &rhs).ok_or(Error::NotInImage)?;
    if !sol.directions.is_empty() {
        return Err(Error::NotInImage);
    }
    Ok(candidates.iter().zip(&sol.particular).fold(y.zero(), |acc, (c, s)| &acc + &c.scale(s)))
}

impl DescentSolution {
    /// Whether `c` is one of the corrected classes.
    pub fn contains(&self, c: &ChowClass) -> Result<bool> {
        let ring = self.particular.ring();
        let diff = c.try_sub(&self.particular)?;
        let all: Vec<Scalar> = (0..=ring.top_degree()).flat_map(|d| ring.coordinates(&diff, d)).collect();
        let cols: Vec<Vec<Scalar>> = self
            .directions
            .iter()
            .map(|v| (0..=ring.top_degree()).flat_map(|d| ring.coordinates(v, d)).collect())
            .collect();
        Ok(all.iter().all(Scalar::is_zero) || solve(&Matrix::from_columns(&cols, all.len()), &all).is_some())
    }
}
