//! Exact symbolic computation for 3-dimensional cubic AS-regular algebras
//! on two generators.

pub mod assume;
pub mod classify;
pub mod error;
pub mod exprparse;
pub mod freealg;
pub mod g2solver;
pub mod geometry;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod scalars;
pub mod segre;
pub mod superpot;
pub mod upoly;

pub use assume::{Assumptions, Decision};
pub use classify::{AlgebraInstance, MobiusSequence, TypeTag};
pub use error::{Error, Result};
pub use exprparse::{parse_assumptions, parse_matrix, parse_ncpoly, parse_scalar};
pub use freealg::{Gen, LinearMap2, Mat2, NCPoly, Word};
pub use geometry::{CurveComponent, GeometricPair, Mobius, ProjPoint};
pub use report::{RowReport, RowStatus, VerificationReport};
pub use scalars::{adjoin_sqrt, Scalar};
pub use segre::BiForm;
