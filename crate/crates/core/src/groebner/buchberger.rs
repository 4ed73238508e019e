use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, OrderKey, Poly, RingSpec, Scalar, Term};

/// Resource limits for a basis computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    /// Cap on elementary reduction steps (one leading-term cancellation each).
    pub max_steps: Option<u64>,
    /// For homogeneous inputs: ignore S-pairs whose lcm lies above this
    /// weighted degree. The result is then a basis only in degrees up to the
    /// bound; callers must confirm that the quotient vanishes past it.
    pub degree_bound: Option<u32>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn steps(max_steps: u64) -> Self {
        Budget { max_steps: Some(max_steps), degree_bound: None }
    }
}

/// A reduced, monic Gröbner basis sorted by ascending leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    spec: Arc<RingSpec>,
    polys: Vec<Poly>,
    leads: Vec<Monomial>,
    masks: Vec<u32>,
    degree_bound: Option<u32>,
}

struct StepCounter {
    steps: u64,
    max: Option<u64>,
}

impl StepCounter {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        match self.max {
            Some(m) if self.steps > m => Err(Error::ResourceExhausted { steps: m }),
            _ => Ok(()),
        }
    }
}

fn find_reducer(leads: &[Monomial], masks: &[u32], active: Option<&[bool]>, m: &Monomial) -> Option<usize> {
    let mm = m.support_mask();
    (0..leads.len()).find(|&i| {
        active.is_none_or(|a| a[i]) && masks[i] & !mm == 0 && leads[i].divides(m)
    })
}

/// Full reduction of `p` by monic `polys`, processing terms top-down.
fn reduce(
    spec: &Arc<RingSpec>,
    p: &Poly,
    polys: &[Poly],
    leads: &[Monomial],
    masks: &[u32],
    active: Option<&[bool]>,
    counter: &mut StepCounter,
) -> Result<Poly> {
    let mut pending: BTreeMap<OrderKey, Term> =
        p.terms().iter().map(|t| (spec.order_key(&t.mono), t.clone())).collect();
    let mut out: Vec<Term> = Vec::new();
    while let Some((_, t)) = pending.pop_last() {
        match find_reducer(leads, masks, active, &t.mono) {
            Some(i) => {
                counter.tick()?;
                let q = leads[i].quotient_of(&t.mono);
                for s in &polys[i].terms()[1..] {
                    let mono = s.mono.mul(&q);
                    let delta = &s.coeff * &t.coeff;
                    let key = spec.order_key(&mono);
                    match pending.get_mut(&key) {
                        Some(e) => {
                            e.coeff -= &delta;
                            if e.coeff.is_zero() {
                                pending.remove(&key);
                            }
                        }
                        None => {
                            pending.insert(key, Term { mono, coeff: -delta });
                        }
                    }
                }
            }
            None => out.push(t),
        }
    }
    Ok(Poly::from_sorted(spec, out))
}

fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let lf = f.leading_mono().expect("nonzero");
    let lg = g.leading_mono().expect("nonzero");
    let l = lf.lcm(lg);
    let one = Scalar::one();
    &f.mul_term(&lf.quotient_of(&l), &one) - &g.mul_term(&lg.quotient_of(&l), &one)
}

struct Builder {
    spec: Arc<RingSpec>,
    polys: Vec<Poly>,
    leads: Vec<Monomial>,
    masks: Vec<u32>,
    active: Vec<bool>,
    pairs: BTreeSet<(OrderKey, usize, usize)>,
    lcms: BTreeMap<(usize, usize), Monomial>,
}

impl Builder {
    /// Gebauer–Möller update for the new element at index `h`.
    fn update(&mut self, h: usize) {
        let lh = self.leads[h];
        let cands: Vec<(usize, Monomial)> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| (g, self.leads[g].lcm(&lh)))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (g, l)) in cands.iter().enumerate() {
            let coprime = self.leads[*g].coprime(&lh);
            let dominated = cands[idx + 1..].iter().any(|(_, l2)| l2.divides(l))
                || kept.iter().any(|(_, l2)| l2.divides(l));
            if coprime || !dominated {
                kept.push((*g, *l));
            }
        }
        kept.retain(|(g, _)| !self.leads[*g].coprime(&lh));

        let leads = &self.leads;
        let lcms = &mut self.lcms;
        self.pairs.retain(|&(_, a, b)| {
            let l = lcms[&(a, b)];
            let drop = lh.divides(&l) && leads[a].lcm(&lh) != l && leads[b].lcm(&lh) != l;
            if drop {
                lcms.remove(&(a, b));
            }
            !drop
        });
        for (g, l) in kept {
            self.pairs.insert((self.spec.order_key(&l), g, h));
            self.lcms.insert((g, h), l);
        }
        for g in 0..h {
            if self.active[g] && lh.divides(&self.leads[g]) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }

    fn push(&mut self, p: Poly) -> usize {
        let p = p.monic();
        let lead = *p.leading_mono().expect("nonzero");
        self.polys.push(p);
        self.leads.push(lead);
        self.masks.push(lead.support_mask());
        self.active.push(false);
        let h = self.polys.len() - 1;
        self.update(h);
        h
    }

    fn reduce(&self, p: &Poly, counter: &mut StepCounter) -> Result<Poly> {
        reduce(&self.spec, p, &self.polys, &self.leads, &self.masks, Some(&self.active), counter)
    }
}

/// Reduced Gröbner basis of `gens` under the ring's monomial order.
///
/// Buchberger's algorithm with Gebauer–Möller pair pruning; pairs are taken
/// smallest lcm first with index ties broken lexicographically, so output is
/// deterministic.
pub fn groebner_basis(spec: &Arc<RingSpec>, gens: &[Poly], budget: &Budget) -> Result<GroebnerBasis> {
    for g in gens {
        if !crate::exactpoly::same_spec(g.spec(), spec) {
            return Err(Error::SpecMismatch);
        }
    }
    let homogeneous = gens.iter().all(|g| g.is_homogeneous());
    let bound = if homogeneous { budget.degree_bound } else { None };
    let within = |m: &Monomial| bound.is_none_or(|b| spec.degree(m) <= b);

    let mut counter = StepCounter { steps: 0, max: budget.max_steps };
    let mut b = Builder {
        spec: spec.clone(),
        polys: Vec::new(),
        leads: Vec::new(),
        masks: Vec::new(),
        active: Vec::new(),
        pairs: BTreeSet::new(),
        lcms: BTreeMap::new(),
    };

    let mut inputs: Vec<&Poly> = gens.iter().filter(|g| !g.is_zero()).collect();
    inputs.sort_by(|x, y| {
        spec.order_key(x.leading_mono().unwrap()).cmp(&spec.order_key(y.leading_mono().unwrap()))
    });
    for g in inputs {
        if !within(g.leading_mono().unwrap()) {
            continue;
        }
        let r = b.reduce(g, &mut counter)?;
        if !r.is_zero() {
            b.push(r);
        }
    }

    while let Some((_, i, j)) = b.pairs.pop_first() {
        let l = b.lcms.remove(&(i, j)).expect("pair lcm recorded");
        if !within(&l) {
            continue;
        }
        let s = s_polynomial(&b.polys[i], &b.polys[j]);
        let r = b.reduce(&s, &mut counter)?;
        if !r.is_zero() {
            b.push(r);
        }
    }

    // minimal basis, then inter-reduce
    let mut keep: Vec<usize> = (0..b.polys.len()).filter(|&i| b.active[i]).collect();
    keep.sort_by_key(|&i| spec.order_key(&b.leads[i]));
    let polys: Vec<Poly> = keep.iter().map(|&i| b.polys[i].clone()).collect();
    let leads: Vec<Monomial> = keep.iter().map(|&i| b.leads[i]).collect();
    let masks: Vec<u32> = keep.iter().map(|&i| b.masks[i]).collect();
    let mut reduced = Vec::with_capacity(polys.len());
    for (idx, p) in polys.iter().enumerate() {
        let head = Poly::monomial(spec, leads[idx], Scalar::one());
        let tail = p - &head;
        let mut others = alloc::vec![true; polys.len()];
        others[idx] = false;
        let tail = reduce(spec, &tail, &polys, &leads, &masks, Some(&others), &mut counter)?;
        reduced.push(&head + &tail);
    }
    Ok(GroebnerBasis { spec: spec.clone(), polys: reduced, leads, masks, degree_bound: bound })
}

impl GroebnerBasis {
    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    /// Degree through which the basis is known to be complete, if truncated.
    pub fn degree_bound(&self) -> Option<u32> {
        self.degree_bound
    }

    pub fn is_unit(&self) -> bool {
        self.leads.iter().any(|m| m.is_one())
    }

    /// Remainder of `p` on division by the basis.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        let mut counter = StepCounter { steps: 0, max: None };
        reduce(&self.spec, p, &self.polys, &self.leads, &self.masks, None, &mut counter)
            .expect("unbounded reduction")
    }

    pub fn try_normal_form(&self, p: &Poly) -> Result<Poly> {
        if !crate::exactpoly::same_spec(p.spec(), &self.spec) {
            return Err(Error::SpecMismatch);
        }
        Ok(self.normal_form(p))
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        find_reducer(&self.leads, &self.masks, None, m).is_none()
    }

    /// Standard monomials of weighted degree `d`, descending in the order.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        let mut out: Vec<Monomial> =
            self.spec.monomials_of_degree(d).into_iter().filter(|m| self.is_standard(m)).collect();
        out.sort_by_key(|m| core::cmp::Reverse(self.spec.order_key(m)));
        out
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero (pairs whose
    /// lcm lies past a truncation bound are skipped).
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let n = self.polys.len();
        for i in 0..n {
            for j in i + 1..n {
                let l = self.leads[i].lcm(&self.leads[j]);
                if self.degree_bound.is_some_and(|b| self.spec.degree(&l) > b) {
                    continue;
                }
                if !self.normal_form(&s_polynomial(&self.polys[i], &self.polys[j])).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Reducedness: monic, and no term divisible by another leading monomial.
    pub fn is_reduced(&self) -> bool {
        self.polys.iter().enumerate().all(|(i, p)| {
            p.leading().is_some_and(|t| t.coeff.is_one())
                && p.terms().iter().enumerate().all(|(ti, t)| {
                    (0..self.leads.len()).all(|j| (j == i && ti == 0) || !self.leads[j].divides(&t.mono))
                })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn xy() -> Arc<RingSpec> {
        RingSpec::graded(&[("x", 1), ("y", 1)]).unwrap()
    }

    #[test]
    fn small_basis_and_membership() {
        let s = xy();
        let gens = [parse_poly("x^2 - y", &s).unwrap(), parse_poly("y^2", &s).unwrap()];
        let gb = groebner_basis(&s, &gens, &Budget::unlimited()).unwrap();
        assert!(gb.is_reduced());
        assert!(gb.satisfies_buchberger_criterion());
        // x^4 = (x^2 - y)(x^2 + y) + y^2
        assert!(gb.normal_form(&parse_poly("x^4", &s).unwrap()).is_zero());
    }

    #[test]
    fn unit_ideal() {
        let s = xy();
        let gb = groebner_basis(&s, &[parse_poly("1", &s).unwrap()], &Budget::unlimited()).unwrap();
        assert!(gb.is_unit());
        assert_eq!(gb.polys().len(), 1);
        assert!(gb.normal_form(&parse_poly("x*y + 3", &s).unwrap()).is_zero());
    }

    #[test]
    fn flag_relation_reduces_h_cubed() {
        let s = RingSpec::graded(&[("h", 1), ("k", 1)]).unwrap();
        let gens = [parse_poly("k^3", &s).unwrap(), parse_poly("h^2 - h*k + k^2", &s).unwrap()];
        let gb = groebner_basis(&s, &gens, &Budget::unlimited()).unwrap();
        assert!(gb.normal_form(&parse_poly("h^3", &s).unwrap()).is_zero());
        assert!(gb.normal_form(&Poly::zero(&s)).is_zero());
    }

    #[test]
    fn budget_exhaustion() {
        let s = RingSpec::graded(&[("x", 1), ("y", 1), ("z", 1)]).unwrap();
        let gens = [
            parse_poly("x^3 - y*z^2 + x*y*z", &s).unwrap(),
            parse_poly("y^3 - x^2*z + 2*x*y^2", &s).unwrap(),
            parse_poly("z^3 - x*y^2 + y*z^2", &s).unwrap(),
        ];
        let err = groebner_basis(&s, &gens, &Budget::steps(3)).unwrap_err();
        assert_eq!(err, Error::ResourceExhausted { steps: 3 });
        assert!(groebner_basis(&s, &gens, &Budget::unlimited()).is_ok());
    }

    #[test]
    fn deterministic_under_generator_permutation() {
        let s = RingSpec::graded(&[("x", 1), ("y", 1), ("z", 1)]).unwrap();
        let a = parse_poly("x*y - z^2", &s).unwrap();
        let b = parse_poly("y^2 - x*z", &s).unwrap();
        let c = parse_poly("x^2*y - z^3 + y^3", &s).unwrap();
        let g1 = groebner_basis(&s, &[a.clone(), b.clone(), c.clone()], &Budget::unlimited()).unwrap();
        let g2 = groebner_basis(&s, &[c, b, a], &Budget::unlimited()).unwrap();
        assert_eq!(g1.polys(), g2.polys());
    }
}
