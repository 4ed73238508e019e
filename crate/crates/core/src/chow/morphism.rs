use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::ring::{ChowClass, ChowRing};
use crate::error::{Error, Result};
use crate::exactpoly::{parse_poly, Poly};
use crate::linalg::{solve, Matrix};

/// Graded ring map between Chow rings, given on generators.
#[derive(Clone, Debug)]
pub struct RingMorphism {
    source: Arc<ChowRing>,
    target: Arc<ChowRing>,
    images: Vec<Poly>,
}

impl RingMorphism {
    /// Checks degrees and that every source relation maps to zero.
    pub fn new(source: &Arc<ChowRing>, target: &Arc<ChowRing>, images: &[(&str, &ChowClass)]) -> Result<Self> {
        let spec = source.spec();
        let mut slots: Vec<Option<Poly>> = alloc::vec![None; spec.nvars()];
        for (name, img) in images {
            let i = spec.index_of(name).ok_or_else(|| Error::UnknownVariable((*name).into()))?;
            let v = img.in_ring(target)?.value().clone();
            if !v.is_zero() && v.homogeneous_degree() != Some(spec.weight(i)) {
                return Err(Error::NonHomogeneous(format!("image of {name}")));
            }
            slots[i] = Some(v);
        }
        let mut resolved = Vec::with_capacity(slots.len());
        for (i, s) in slots.into_iter().enumerate() {
            resolved.push(s.ok_or_else(|| Error::MissingImage(spec.name(i).into()))?);
        }
        let m = RingMorphism { source: source.clone(), target: target.clone(), images: resolved };
        for r in source.relations() {
            if !m.apply_poly(r)?.is_zero() {
                return Err(Error::NotWellDefined(r.render()));
            }
        }
        Ok(m)
    }

    /// Convenience constructor from polynomial text in the target ring.
    pub fn from_text(source: &Arc<ChowRing>, target: &Arc<ChowRing>, images: &[(&str, &str)]) -> Result<Self> {
        let classes: Vec<(&str, ChowClass)> =
            images.iter().map(|(n, t)| Ok((*n, target.parse(t)?))).collect::<Result<_>>()?;
        let refs: Vec<(&str, &ChowClass)> = classes.iter().map(|(n, c)| (*n, c)).collect();
        Self::new(source, target, &refs)
    }

    pub fn source(&self) -> &Arc<ChowRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChowRing> {
        &self.target
    }

    pub fn image_of(&self, var: &str) -> Option<ChowClass> {
        let i = self.source.spec().index_of(var)?;
        Some(self.target.class(&self.images[i]).expect("image lives in target"))
    }

    fn apply_poly(&self, p: &Poly) -> Result<Poly> {
        let slots: Vec<Option<Poly>> = self.images.iter().cloned().map(Some).collect();
        let p = p.substitute(&slots, self.target.spec())?.truncate(self.target.top_degree());
        Ok(self.target.normal_form(&p))
    }

    /// Pullback of a class along the map.
    pub fn apply(&self, c: &ChowClass) -> Result<ChowClass> {
        if !ChowRing::compatible(c.ring(), &self.source) {
            return Err(Error::SpecMismatch);
        }
        self.target.class(&self.apply_poly(c.value())?)
    }

    pub fn apply_text(&self, text: &str) -> Result<ChowClass> {
        self.apply(&self.source.class(&parse_poly(text, self.source.spec())?)?)
    }

    /// Matrix of the map in degree `d` with respect to graded bases.
    pub fn matrix(&self, d: u32) -> Matrix {
        let rows = self.target.graded_basis(d).len();
        let cols: Vec<_> = self
            .source
            .graded_basis(d)
            .into_iter()
            .map(|m| {
                let img = self.apply(&self.source.monomial(m)).expect("source basis class");
                self.target.coordinates(&img, d)
            })
            .collect();
        Matrix::from_columns(&cols, rows)
    }

    pub fn is_surjective_in(&self, d: u32) -> bool {
        self.matrix(d).rank() == self.target.graded_basis(d).len()
    }

    pub fn is_surjective(&self) -> bool {
        (0..=self.target.top_degree()).all(|d| self.is_surjective_in(d))
    }

    pub fn is_injective_in(&self, d: u32) -> bool {
        self.matrix(d).rank() == self.source.graded_basis(d).len()
    }

    /// Basis of the kernel in degree `d`.
    pub fn kernel_in_degree(&self, d: u32) -> Vec<ChowClass> {
        self.matrix(d).nullspace().iter().map(|v| self.source.from_coordinates(v, d)).collect()
    }

    /// Some class `γ` with `apply(γ) = δ`, solved degree by degree with free
    /// coordinates set to zero.
    pub fn preimage(&self, delta: &ChowClass) -> Result<ChowClass> {
        let delta = delta.in_ring(&self.target)?;
        let mut acc = self.source.zero();
        for d in 0..=self.target.top_degree() {
            let rhs = self.target.coordinates(&delta, d);
            if rhs.iter().all(|c| c.is_zero()) {
                continue;
            }
            let sol = solve(&self.matrix(d), &rhs).ok_or(Error::NotInImage)?;
            acc = &acc + &self.source.from_coordinates(&sol.particular, d);
        }
        Ok(acc)
    }

    /// `self` followed by `next`, as a map on pullbacks: `next* ∘ self*`.
    pub fn then(&self, next: &RingMorphism) -> Result<RingMorphism> {
        let names: Vec<alloc::string::String> = self.source.spec().vars().iter().map(|v| v.name.clone()).collect();
        let imgs: Vec<ChowClass> =
            names.iter().map(|n| next.apply(&self.image_of(n).expect("own variable"))).collect::<Result<_>>()?;
        let pairs: Vec<(&str, &ChowClass)> = names.iter().map(|n| n.as_str()).zip(imgs.iter()).collect();
        RingMorphism::new(&self.source, &next.target, &pairs)
    }

    /// Whether two maps with the same source and target agree on generators.
    pub fn agrees_with(&self, other: &RingMorphism) -> bool {
        ChowRing::compatible(&self.source, &other.source)
            && ChowRing::compatible(&self.target, &other.target)
            && self.images == other.images
    }
}

/// Pushforward along the inclusion of a divisor `E`, computed through the
/// projection formula `push(i*γ) = γ·[E]`.
#[derive(Clone, Debug)]
pub struct DivisorPush {
    restriction: RingMorphism,
    exceptional: ChowClass,
}

impl DivisorPush {
    /// `restriction` must be surjective; `exceptional` is `[E]` in the ambient ring.
    pub fn new(restriction: RingMorphism, exceptional: ChowClass) -> Result<Self> {
        if !restriction.is_surjective() {
            return Err(Error::NotInImage);
        }
        let exceptional = exceptional.in_ring(restriction.source())?;
        Ok(DivisorPush { restriction, exceptional })
    }

    pub fn restriction(&self) -> &RingMorphism {
        &self.restriction
    }

    pub fn exceptional(&self) -> &ChowClass {
        &self.exceptional
    }

    /// `γ·[E]` for a preimage `γ` of `δ`; fails if `ker i*·[E] ≠ 0` in a
    /// degree where `δ` is nonzero, since the answer would then depend on `γ`.
    pub fn push(&self, delta: &ChowClass) -> Result<ChowClass> {
        let target = self.restriction.target();
        let delta = delta.in_ring(target)?;
        for d in 0..=target.top_degree() {
            if delta.component(d).is_zero() {
                continue;
            }
            for k in self.restriction.kernel_in_degree(d) {
                if !(&k * &self.exceptional).is_zero() {
                    return Err(Error::PreimageDependent);
                }
            }
        }
        let gamma = self.restriction.preimage(&delta)?;
        Ok(&gamma * &self.exceptional)
    }
}
