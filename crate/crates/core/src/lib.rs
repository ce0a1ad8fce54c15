//! Linear complexity and word linear complexity of vector sequences over
//! prime fields, with matrix minimal polynomials, matrix polynomial
//! division, and local inversion of maps `F_p^n -> F_p^n`.
//!
//! ```
//! use wlc_core::{compute_wlc, Field, VectorSequence};
//!
//! let f = Field::gf2();
//! let terms: Vec<Vec<u32>> = [[1, 1], [0, 0], [0, 1], [0, 1], [1, 0], [0, 0]]
//!     .iter()
//!     .map(|t| t.to_vec())
//!     .collect();
//! let v = VectorSequence::new(f, 2, &terms, Some(6)).unwrap();
//! let report = compute_wlc(&v).unwrap();
//! assert_eq!((report.lc, report.wlc), (6, Some(3)));
//! ```

pub mod dynamics;
pub mod error;
pub mod field;
pub mod formats;
pub mod linalg;
pub mod matpoly;
pub mod oracle;
pub mod poly;
pub mod rng;
pub mod sampling;
pub mod wlc;

pub use dynamics::{
    apply_map, detect_period, iterate_map, local_invert, random_map, Inversion, MapKind, MapSpec,
    OrbitInfo, Route,
};
pub use error::{Error, Result};
pub use field::{Field, FieldElem};
pub use linalg::{inverse, rank, solve_left, solve_right, ColumnVector, Matrix};
pub use matpoly::{annihilates, euclid_divide, matpoly_det, MatrixPoly, Side};
pub use oracle::{cycle_walk_inverse, exhaustive_scalar_minpoly, independent_matrix_minpoly};
pub use poly::{
    berlekamp_massey, component_minpoly_lcm, hankel, hankel_scalar_minpoly, poly_order, ScalarPoly,
    VectorSequence,
};
pub use rng::SplitMix64;
pub use wlc::{
    block_hankel, compute_wlc, local_inverse_from_matrix_minpoly,
    local_inverse_from_scalar_minpoly, WlcReport,
};
