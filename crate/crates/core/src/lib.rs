//! Numerical toolkit for α-singular maximal surfaces of Lorentz-Minkowski
//! space L³: spacelike surfaces in z > 0 with mean curvature
//! H = α⟨N,a⟩/⟨p,a⟩, a = (0,0,1).
//!
//! - [`lorentz`]: Minkowski algebra, meshes, discrete curvature, residuals.
//! - [`profile`]: the translation-invariant ODE u''/(1−u'²) = α/u.
//! - [`rotational`]: rotation about the timelike axis, including the singular
//!   initial value problem at r = 0 solved by Picard iteration.
//! - [`families`]: meshes of every invariant family and canonical examples.
//! - [`dirichlet`]: finite-difference Dirichlet solver by continuation in α.
//! - [`report`], [`io`], [`cli`]: JSON/CSV/OBJ artifacts and the command line.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dirichlet;
pub mod error;
pub mod expr;
pub mod families;
pub mod io;
pub mod lorentz;
mod ode;
pub mod profile;
pub mod report;
pub mod rotational;

pub use error::{Error, Result};
pub use lorentz::LVec3;
