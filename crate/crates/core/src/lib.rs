//! Pimenov algebra D2, matrices over it, and exact representations of the Galilean
//! motion group G(2) acting on the Galilean plane.
//!
//! Every numeric type is generic over [`Scalar`], implemented for `f64` and for
//! exact [`Rational`] numbers.
//!
//! ```
//! use galilean_core::{act, to_rep, GalileanMotion, GalileanPoint, RepId};
//!
//! let m = GalileanMotion::new(1.0, 2.0, 3.0);
//! let n = GalileanMotion::new(4.0, 5.0, 6.0);
//! assert_eq!(m.compose(&n), GalileanMotion::new(5.0, 19.0, 9.0));
//!
//! let g = to_rep(&m, RepId::SuD2);
//! assert!(g.as_matrix().unwrap().is_su_d2(1e-9));
//! assert_eq!(act(&m, &GalileanPoint::new(1.0, 0.0)), GalileanPoint::new(2.0, 5.0));
//! ```

pub mod error;
pub mod galilean;
pub mod grassmann;
pub mod json;
pub mod matrix;
pub mod pimenov;
pub mod plane;
pub mod sampling;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use galilean::{
    check_rep, commutator, factorize, from_rep, generators, product_all, so3_element, to_rep,
    validate_rep, GalileanMotion, RepElement, RepId, RepPayload, Sign, SuD2Params,
};
pub use grassmann::{
    clifford_act, lambda1_to_motion, motion_to_lambda1, point_to_cl3, Cl3Element, GrassmannElement,
};
pub use json::JsonCodec;
pub use matrix::{MatD2, RealMatrix};
pub use pimenov::{D2Element, DualNumber, Jet2};
pub use plane::{
    act, act_via_rep, distance, emit_projection_figure, moebius, point_matrix_h, point_matrix_p,
    stereo_project, GalileanPoint, HomogeneousDualPair, ProjectedPoint, ProjectionRow, SpherePoint,
};
pub use scalar::{Rational, Real, Scalar};
