//! Slice regular quaternionic polynomials.
//!
//! Polynomials are stored through their four real components in the basis
//! `1, i, j, k`; the `*`-product, conjugate and symmetrized function are
//! computed componentwise. On top of that algebra sit zero classification,
//! decision procedures for slice preservation under sums, products and
//! conjugation, and the `*`-power criterion through the binary forms `Q_d`.

pub mod batch;
pub mod error;
pub mod gen;
pub mod laws;
pub mod quaternion;
pub mod realpoly;
pub mod slicepoly;
pub mod starpower;
pub mod tol;
pub mod zeros;

pub use error::{Error, Result};
pub use quaternion::{adapted_frame, Frame, ImaginaryUnit, Quaternion};
pub use realpoly::{ComplexPair, RealPoly, RealRoot, RootSet};
pub use slicepoly::{SliceClass, SlicePoly};

pub use tol::Tolerances;
