//! The moduli computation: every intermediate Chow ring rebuilt from its
//! defining data, checked against embedded reference values.

mod donaldson;
mod fixtures;
mod registry;
mod report;
mod stage_boundary;
mod stage_curve;
mod stage_cycles;
mod stage_m;
mod stage_mplus;
mod stage_n;
mod stage_q;
mod weyl;
mod workbench;

pub use donaldson::DonaldsonQuery;
pub use fixtures::{FixtureSet, TableCell, EMBEDDED};
pub use registry::GeneratorRegistry;
pub use report::{Check, StageId, StageReport};
pub use stage_curve::projective_space;
pub use weyl::{divide_exact, WeylData, ROOT_NAMES, SYMMETRIC_NAMES};
pub use workbench::{
    BoundaryData, CurveData, CurveStageParams, CyclesData, MData, MPlusData, Mode, NData, QData, Workbench,
};
