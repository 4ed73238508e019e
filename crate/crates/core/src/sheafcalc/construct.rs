use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::bundle::{exp_class, todd, BundleClass, CharSeries};
use crate::chow::{ChowClass, ChowRing, DivisorPush, RingMorphism};
use crate::error::{Error, Result};
use crate::exactpoly::{binomial, Poly, RingSpec, Scalar};
use crate::groebner::Budget;

/// Spec with `var` (weight 1) prepended to the base variables.
fn extended_spec(base: &ChowRing, var: &str) -> Result<Arc<RingSpec>> {
    let mut vars: Vec<(String, u32)> = alloc::vec![(var.into(), 1)];
    vars.extend(base.spec().vars().iter().map(|v| (v.name.clone(), v.weight)));
    RingSpec::graded(&vars)
}

/// `A*(P(U)) = A*(X)[ρ] / (Σ_i ρ^i c_{r−i}(U))`; returns the ring and `ρ`.
///
/// The point class, when the base has one, becomes `pt_X · ρ^{r−1}`.
pub fn projective_bundle(
    base: &Arc<ChowRing>,
    u: &BundleClass,
    var: &str,
    budget: &Budget,
) -> Result<(Arc<ChowRing>, ChowClass)> {
    if u.rank < 1 {
        return Err(Error::NonHomogeneous(format!("projective bundle of rank {}", u.rank)));
    }
    let r = u.rank as u32;
    let spec = extended_spec(base, var)?;
    let rho = Poly::var(&spec, var)?;
    let mut rels: Vec<Poly> = base.relations().iter().map(|p| p.map_into(&spec)).collect::<Result<_>>()?;
    let mut bundle_rel = Poly::zero(&spec);
    for i in 0..=r {
        let c = u.chern(r - i).value().map_into(&spec)?;
        bundle_rel = &bundle_rel + &(&rho.pow(i) * &c);
    }
    rels.push(bundle_rel);
    let point = match base.point_poly() {
        Some(p) => Some(&p.map_into(&spec)? * &rho.pow(r - 1)),
        None => None,
    };
    let name = format!("P({})", base.name());
    let ring = ChowRing::build(&name, &spec, rels, base.top_degree() + r - 1, point, budget)?;
    let taut = ring.var(var)?;
    Ok((ring, taut))
}

/// Inputs describing a smooth blow-up `Bl_X Y`.
pub struct BlowupData<'a> {
    /// Restriction `A*(Y) → A*(X)`; must be surjective.
    pub restriction: &'a RingMorphism,
    /// Generators of its kernel.
    pub kernel: &'a [ChowClass],
    /// Normal bundle of `X` in `Y`, on `X`.
    pub normal: &'a BundleClass,
    /// Class of `X` in `A*(Y)`.
    pub center: &'a ChowClass,
    /// Name of the new variable `τ`, with `[E] = −τ`.
    pub var: &'a str,
}

/// Keel's presentation
/// `A*(Y)[τ] / (τ·ker, τ^d + Σ_{j<d} c̃_j(N) τ^{d−j} + [X])`
/// where `c̃_j` are lifts of the normal Chern classes to `A*(Y)`.
///
/// Before building, checks that the kernel generators restrict to zero, that
/// the restriction is surjective, and that `A*(Y)/(kernel)` has the same
/// graded dimensions as `A*(X)`, so the kernel is complete.
pub fn blowup_ring(data: &BlowupData<'_>, budget: &Budget) -> Result<Arc<ChowRing>> {
    let ambient = data.restriction.source();
    let center_ring = data.restriction.target();
    for g in data.kernel {
        if !data.restriction.apply(g)?.is_zero() {
            return Err(Error::KernelMismatch(format!("{g} does not restrict to zero")));
        }
    }
    if !data.restriction.is_surjective() {
        return Err(Error::KernelMismatch("restriction is not surjective".into()));
    }
    let mut quotient_rels = ambient.relations().to_vec();
    quotient_rels.extend(data.kernel.iter().map(|g| g.value().clone()));
    let quotient = ChowRing::build("quotient", ambient.spec(), quotient_rels, ambient.top_degree(), None, budget)?;
    let mut dims = quotient.series().0.clone();
    while dims.len() > 1 && dims.last() == Some(&0) {
        dims.pop();
    }
    if dims != center_ring.series().0 {
        return Err(Error::KernelMismatch(format!(
            "quotient series {} differs from center series {}",
            quotient.series(),
            center_ring.series()
        )));
    }
    let codim = ambient.top_degree() - center_ring.top_degree();
    let spec = extended_spec(ambient, data.var)?;
    let tau = Poly::var(&spec, data.var)?;
    let mut rels: Vec<Poly> = ambient.relations().iter().map(|p| p.map_into(&spec)).collect::<Result<_>>()?;
    for g in data.kernel {
        rels.push(&tau * &g.value().map_into(&spec)?);
    }
    let mut keel = &tau.pow(codim) + &data.center.value().map_into(&spec)?;
    for j in 1..codim {
        let lift = data.restriction.preimage(&data.normal.chern(j))?;
        keel = &keel + &(&lift.value().map_into(&spec)? * &tau.pow(codim - j));
    }
    rels.push(keel);
    let point = match ambient.point_poly() {
        Some(p) => Some(p.map_into(&spec)?),
        None => None,
    };
    let name = format!("Bl({})", ambient.name());
    ChowRing::build(&name, &spec, rels, ambient.top_degree(), point, budget)
}

/// `α = Σ_j Σ_k (C(d−j, k) − C(d−j, k+1)) ζ^k c_j(N)` on the exceptional
/// divisor, for a center of codimension `d`.
pub fn blowup_alpha(normal_on_e: &BundleClass, zeta: &ChowClass, codim: u32) -> ChowClass {
    let ring = zeta.ring();
    let mut acc = ring.zero();
    for j in 0..=codim {
        let cj = normal_on_e.chern(j);
        if cj.is_zero() {
            continue;
        }
        let n = i64::from(codim - j);
        for k in 0..=codim - j {
            let coeff = binomial(n, i64::from(k)) - binomial(n, i64::from(k) + 1);
            if coeff.is_zero() {
                continue;
            }
            acc = &acc + &(&zeta.pow(k) * &cj).scale(&coeff);
        }
    }
    acc
}

/// The blow-up correction `c(Ỹ) − f*c(Y) = j_*(g*c(X)·α)`.
pub fn blowup_correction(
    center_tangent_on_e: &BundleClass,
    normal_on_e: &BundleClass,
    zeta: &ChowClass,
    codim: u32,
    push: &DivisorPush,
) -> Result<ChowClass> {
    let alpha = blowup_alpha(normal_on_e, zeta, codim);
    push.push(&(&center_tangent_on_e.total * &alpha))
}

/// Tangent bundle of `Ỹ` from the pulled-back tangent of `Y` and the
/// correction term.
pub fn blowup_chern(
    ambient_tangent_pulled: &BundleClass,
    center_tangent_on_e: &BundleClass,
    normal_on_e: &BundleClass,
    zeta: &ChowClass,
    codim: u32,
    push: &DivisorPush,
) -> Result<BundleClass> {
    let corr = blowup_correction(center_tangent_on_e, normal_on_e, zeta, codim, push)?;
    Ok(BundleClass { rank: ambient_tangent_pulled.rank, total: &ambient_tangent_pulled.total + &corr })
}

/// `∫ exp(D)·td`, the holomorphic Euler characteristic of `O(D)`.
pub fn hrr_euler_with_todd(td: &CharSeries, divisor: &ChowClass) -> Result<Scalar> {
    let ring = td.total.ring();
    let d = divisor.in_ring(ring)?;
    ring.integrate(&(&exp_class(&d) * &td.total))
}

pub fn hrr_euler(tangent: &BundleClass, divisor: &ChowClass) -> Result<Scalar> {
    hrr_euler_with_todd(&todd(tangent), divisor)
}

/// As [`hrr_euler_with_todd`], rejecting non-integral answers.
pub fn hrr_euler_integral(td: &CharSeries, divisor: &ChowClass) -> Result<num_bigint::BigInt> {
    let chi = hrr_euler_with_todd(td, divisor)?;
    chi.to_integer().ok_or_else(|| Error::NonIntegral(format!("{chi}")))
}
