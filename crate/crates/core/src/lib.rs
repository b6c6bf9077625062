//! Exact holonomy computations for polynomial pseudo-Riemannian metrics,
//! curvature-tensor spaces of matrix Lie algebras and a catalog of the
//! index-2 pseudo-Kähler and Lorentzian holonomy families.

pub mod catalog;
pub mod curvspace;
pub mod error;
pub mod exactnum;
pub mod geometry;
pub mod liealg;
pub mod linalg;
pub mod repro;

pub use error::{Error, Result};
