//! Mixed discriminants, mixed volumes and numerical checks of the
//! inequalities relating them.

pub mod body;
pub mod discriminant;
pub mod error;
pub mod geom;
pub mod harmonics;
pub mod ineq;
pub mod matrix;
pub mod mixed;
pub mod planar;
pub mod polytope;
pub mod quadrature;
pub mod report;
pub mod rng;
pub mod special;
pub mod sweep;

pub use error::{Error, Result};
