//! Numerical laboratory for the plane curvature flow `∂ₜγ = (σ₁k + σ₂)ν`.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curve;
pub mod concentration;
pub mod error;
pub mod flow;
pub mod presets;
pub mod profile;
pub mod rescale;
pub mod spline;
pub mod tridiag;
pub mod vector;

pub use curve::{Convexity, CurveGeometry, Roundness, SampledCurve, SupportData};
pub use error::{FlowError, Result};
pub use profile::AngleProfile;
pub use vector::Vec2;
