use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::fixtures::FixtureSet;
use super::registry::GeneratorRegistry;
use super::report::{StageId, StageReport};
use crate::chow::{ChowClass, ChowRing, DivisorPush, RingMorphism};
use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::sheafcalc::{BundleClass, CharSeries};

/// How the presentation of the final ring is confirmed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Check the stored relations against the computed images.
    #[default]
    Verification,
    /// Also regenerate the relations as the kernel of the pullback.
    Discovery,
}

/// Degree `d`, bundle rank `r_d = d(d+3)/2` and fiber dimension `g` of the
/// support map for curves of degree `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveStageParams {
    pub d: u32,
    pub r_d: u32,
    pub g: u32,
}

impl CurveStageParams {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::NonHomogeneous("curve degree must be positive".into()));
        }
        let r_d = d * (d + 3) / 2;
        // dim M(d,1) = d² + 1 and dim |O(d)| = r_d
        let g = d * d + 1 - r_d;
        Ok(CurveStageParams { d, r_d, g })
    }
}

#[derive(Clone, Debug)]
pub struct NData {
    pub ring: Arc<ChowRing>,
    pub tangent: BundleClass,
    /// `b3` expressed through `b1, d2`.
    pub b3: ChowClass,
}

#[derive(Clone, Debug)]
pub struct CurveData {
    pub params: CurveStageParams,
    pub plane: Arc<ChowRing>,
    pub ring: Arc<ChowRing>,
    pub tangent: BundleClass,
}

#[derive(Clone, Debug)]
pub struct QData {
    pub ring: Arc<ChowRing>,
    pub universal: BundleClass,
    pub tangent: BundleClass,
}

#[derive(Clone, Debug)]
pub struct BoundaryData {
    pub pv: Arc<ChowRing>,
    pub j: RingMorphism,
    pub pv_normal: BundleClass,
    pub pv_class: ChowClass,
    pub i: RingMorphism,
    pub fl_normal: BundleClass,
    pub fl_class: ChowClass,
}

#[derive(Clone, Debug)]
pub struct MPlusData {
    pub ring: Arc<ChowRing>,
    pub exceptional: Arc<ChowRing>,
    pub restriction: RingMorphism,
    pub tangent: BundleClass,
}

#[derive(Clone, Debug)]
pub struct MData {
    pub ring: Arc<ChowRing>,
    /// `r*: A*(M) → A*(M⁺)`.
    pub pullback: RingMorphism,
    /// The exceptional divisor presented over `C4`.
    pub exceptional: Arc<ChowRing>,
    /// `A*(M⁺) → A*(E)` with `E` presented over `C4`.
    pub restriction: RingMorphism,
    pub push: DivisorPush,
    pub tangent: BundleClass,
    pub todd: CharSeries,
    pub c4_class: ChowClass,
}

#[derive(Clone, Debug)]
pub struct CyclesData {
    pub h3: Arc<ChowRing>,
}

/// Runs the stages in dependency order and keeps what they build.
pub struct Workbench {
    pub(crate) fixtures: FixtureSet,
    pub(crate) mode: Mode,
    pub(crate) budget: Budget,
    pub(crate) registry: GeneratorRegistry,
    pub(crate) reports: BTreeMap<StageId, StageReport>,
    clock: Option<fn() -> u64>,
    pub(crate) n: Option<NData>,
    pub(crate) curves: BTreeMap<u32, CurveData>,
    pub(crate) q: Option<QData>,
    pub(crate) boundary: Option<BoundaryData>,
    pub(crate) mplus: Option<MPlusData>,
    pub(crate) m: Option<MData>,
    pub(crate) cycles: Option<CyclesData>,
}

impl Workbench {
    /// `budget` bounds the regeneration in discovery mode only.
    pub fn new(fixtures: FixtureSet, mode: Mode, budget: Budget) -> Self {
        Workbench {
            fixtures,
            mode,
            budget,
            registry: GeneratorRegistry::new(),
            reports: BTreeMap::new(),
            clock: None,
            n: None,
            curves: BTreeMap::new(),
            q: None,
            boundary: None,
            mplus: None,
            m: None,
            cycles: None,
        }
    }

    pub fn with_embedded_fixtures() -> Result<Self> {
        Ok(Self::new(FixtureSet::embedded()?, Mode::Verification, Budget::unlimited()))
    }

    /// Millisecond clock used to time stages.
    pub fn with_clock(mut self, clock: fn() -> u64) -> Self {
        self.clock = Some(clock);
        self
    }

    pub fn fixtures(&self) -> &FixtureSet {
        &self.fixtures
    }

    pub fn registry(&self) -> &GeneratorRegistry {
        &self.registry
    }

    pub fn report(&self, stage: StageId) -> Option<&StageReport> {
        self.reports.get(&stage)
    }

    pub fn reports(&self) -> impl Iterator<Item = &StageReport> {
        self.reports.values()
    }

    /// Runs `stage` after its prerequisites; a stage runs at most once.
    ///
    /// Fails with [`Error::PrerequisiteFailed`] when a prerequisite's report
    /// has a failing check.
    pub fn run(&mut self, stage: StageId) -> Result<&StageReport> {
        if !self.reports.contains_key(&stage) {
            for p in stage.prerequisites() {
                if !self.run(p)?.passed() {
                    return Err(Error::PrerequisiteFailed(format!("{p}")));
                }
            }
            let start = self.clock.map(|c| c());
            let mut report = StageReport::new(stage);
            self.execute(stage, &mut report)?;
            report.elapsed_ms = match (self.clock, start) {
                (Some(c), Some(s)) => Some(c().saturating_sub(s)),
                _ => None,
            };
            self.reports.insert(stage, report);
        }
        Ok(&self.reports[&stage])
    }

    /// Runs every stage; stops at the first error.
    pub fn run_all(&mut self) -> Result<Vec<StageReport>> {
        let mut out = Vec::new();
        for s in StageId::ALL {
            out.push(self.run(s)?.clone());
        }
        Ok(out)
    }

    fn execute(&mut self, stage: StageId, report: &mut StageReport) -> Result<()> {
        match stage {
            StageId::N => self.stage_n(report),
            StageId::Curve(d) => self.stage_curve(d, report),
            StageId::Q => self.stage_q(report),
            StageId::Boundary => self.stage_boundary(report),
            StageId::MPlus => self.stage_mplus(report),
            StageId::M => self.stage_m(report),
            StageId::Cycles => self.stage_cycles(report),
            StageId::Donaldson => self.stage_donaldson(report),
            StageId::Conjecture => self.stage_conjecture(report),
        }
    }

    pub fn n(&self) -> Option<&NData> {
        self.n.as_ref()
    }

    pub fn curve(&self, d: u32) -> Option<&CurveData> {
        self.curves.get(&d)
    }

    pub fn q(&self) -> Option<&QData> {
        self.q.as_ref()
    }

    pub fn boundary(&self) -> Option<&BoundaryData> {
        self.boundary.as_ref()
    }

    pub fn mplus(&self) -> Option<&MPlusData> {
        self.mplus.as_ref()
    }

    pub fn m(&self) -> Option<&MData> {
        self.m.as_ref()
    }

    pub fn cycles(&self) -> Option<&CyclesData> {
        self.cycles.as_ref()
    }

    pub(crate) fn need<'a, T>(slot: &'a Option<T>, what: &str) -> Result<&'a T> {
        slot.as_ref().ok_or_else(|| Error::PrerequisiteFailed(what.into()))
    }

    /// Rings by name, building them on demand:
    /// `N`, `PV`, `Q`, `Fl`, `Mplus`, `E`, `E4`, `M`, `H3`, `C<d>`.
    pub fn ring(&mut self, name: &str) -> Result<Arc<ChowRing>> {
        let stage = match name {
            "N" => StageId::N,
            "Q" => StageId::Q,
            "PV" | "Fl" => StageId::Boundary,
            "Mplus" | "E" => StageId::MPlus,
            "M" | "E4" => StageId::M,
            "H3" => StageId::Cycles,
            _ => match name.strip_prefix('C').and_then(|d| d.parse::<u32>().ok()) {
                Some(d) if d >= 1 => StageId::Curve(d),
                _ => return Err(Error::UnknownRing(name.into())),
            },
        };
        if !self.run(stage)?.passed() {
            return Err(Error::PrerequisiteFailed(format!("{stage}")));
        }
        let ring = match name {
            "N" => self.n.as_ref().map(|d| d.ring.clone()),
            "Q" => self.q.as_ref().map(|d| d.ring.clone()),
            "PV" => self.boundary.as_ref().map(|d| d.pv.clone()),
            "Fl" => self.boundary.as_ref().map(|d| d.i.target().clone()),
            "Mplus" => self.mplus.as_ref().map(|d| d.ring.clone()),
            "E" => self.mplus.as_ref().map(|d| d.exceptional.clone()),
            "M" => self.m.as_ref().map(|d| d.ring.clone()),
            "E4" => self.m.as_ref().map(|d| d.exceptional.clone()),
            "H3" => self.cycles.as_ref().map(|d| d.h3.clone()),
            _ => match stage {
                StageId::Curve(d) => self.curves.get(&d).map(|c| c.ring.clone()),
                _ => None,
            },
        };
        ring.ok_or_else(|| Error::UnknownRing(String::from(name)))
    }
}
