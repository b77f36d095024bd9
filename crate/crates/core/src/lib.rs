//! Linear codes over finite commutative rings, matrix-product codes and
//! codes from skew polynomial rings.
//!
//! The usual entry points are [`Ring`], [`RMatrix`], [`LinearCode`],
//! [`MatrixProductCode`] and [`SkewContext`].

pub mod code;
pub mod error;
pub mod golden;
pub mod linalg;
pub mod maps;
pub mod mpc;
pub mod props;
pub mod ring;
pub mod skew;

pub use code::{Budget, DualityClass, DualityProfile, Freeness, LinearCode};
pub use error::{Error, Result};
pub use linalg::RMatrix;
pub use maps::{MapDef, MapRole, RingMap};
pub use mpc::{MatrixProductCode, Sharpness, SharpnessWitness};
pub use ring::{Elem, Ring, RingElement, RingSpec};
pub use skew::{PrincipalSkewCode, SkewContext, SkewPoly};
