//! Exact arithmetic substrates and the identity-testing engine.

pub mod equal;
pub mod expr;
pub mod fp;
pub mod mono;
pub mod rat;
pub mod scalar;
pub mod series;

pub use equal::{parity_class, values_equal, values_equal_with, EqualityConfig, GridBackend, Mode, Verdict, Witness};
pub use expr::{DegCert, ExprBuilder, LazyExpr};
pub use fp::{FpElem, DEFAULT_PRIME};
pub use mono::{Monomial, Point, Var, NVARS};
pub use rat::{int, parse_rat, rat, rat_to_string, Rat};
pub use scalar::Scalar;
pub use series::{series_geom, series_op, BiSeries, SeriesOp};
