//! Standard frames, the named holonomy families and metrics realizing them.

pub mod families;
pub mod frame;
pub mod generators;
pub mod identify;
pub mod lorentz;
pub mod pk;
pub mod recipe;
pub mod symmetric;

pub use families::{build_algebra, expected_dim, FamilyId, FamilySpec, UElem, UParts};
pub use frame::{FrameCase, StandardFrame};
pub use identify::{default_sweep, identify, Identification};
pub use recipe::MetricRecipe;
