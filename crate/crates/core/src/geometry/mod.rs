//! Christoffel symbols, curvature and holonomy of polynomial metrics, and the
//! left-invariant Lie-group pipeline.

mod christoffel;
mod holonomy;
mod liegroup;
mod metric;
mod polymat;
mod tensor;

pub use christoffel::{christoffel, ChristoffelField};
pub use holonomy::{holonomy, holonomy_from_tensors, GeneratorLogEntry, HolonomyReport};
pub use liegroup::{lg_curvature, lg_holonomy, lg_nabla, BracketJson, LieGroupData, LieGroupJson};
pub use metric::{MetricJson, PolynomialMetric};
pub use polymat::PolyMat;
pub use tensor::{covariant_derivative, curvature, TensorField};
