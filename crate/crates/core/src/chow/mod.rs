//! Chow rings as graded quotient rings, with pullbacks, divisorial
//! pushforwards, integration and descent along blow-downs.

mod morphism;
mod ring;
mod subring;

pub use morphism::{DivisorPush, RingMorphism};
pub use ring::{ChowClass, ChowRing};
pub use subring::{express_in_subring, fundamental_class, perpendicular_descent, DescentEquation, DescentSolution};
