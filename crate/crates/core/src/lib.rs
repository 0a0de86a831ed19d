//! Optimal knot placement for piecewise-linear approximation.
//!
//! Given a smooth increasing curve `f` on `[a, b]` and a knot budget `n`,
//! find interior knots `a <= x_1 <= ... <= x_n <= b` so that the secant
//! interpolant through `(x_i, f(x_i))` is as close to `f` as possible, in
//! one of two senses:
//!
//! * [`ObjectiveKind::ConcaveArea`]: the area between a concave curve and its
//!   interpolant.
//! * [`ObjectiveKind::GeneralSquared`]: the sum over segments of the squared
//!   signed area gap, for curves that are not concave.
//!
//! The ordered knots are mapped onto the cone `0 <= y_1 <= ... <= y_n` and a
//! spectral projected gradient method ([`spg`]) runs there, using an exact
//! linear-time projection ([`projection`]). [`kkt`] checks first- and
//! second-order optimality of a result, and [`harness`] runs whole catalogs.
//!
//! ```
//! use knotopt::{Curve, ObjectiveKind, SpgConfig, spg};
//!
//! let curve = Curve::logistic(0.0, 1.0, 1.0, -1.0, 0.0).unwrap();
//! let report = spg::solve(&curve, ObjectiveKind::ConcaveArea, 0.0, 2.0, 4, &SpgConfig::default()).unwrap();
//! assert!(report.final_error <= report.initial_error);
//! ```
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod curve;
pub mod error;
pub mod harness;
pub mod kkt;
pub mod objective;
pub mod pl;
pub mod projection;
pub mod quadrature;
pub mod spg;

pub use curve::{Catalog, CatalogEntry, Curve, Family, Quadratic, SmoothCurve};
pub use error::{KnotError, Result};
pub use kkt::{hessian_phi, kkt_check, prop1_test, KktReport, Tridiagonal};
pub use objective::{ObjectiveKind, YVector};
pub use pl::{
    build_pl, error_concave, error_general, error_interior_squared, KnotVector, PlApprox,
};
pub use projection::project;
pub use spg::{Backtrack, BbRule, SolveReport, SpgConfig, Termination};
