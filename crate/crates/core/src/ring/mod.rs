//! Exact scalar arithmetic: rationals, multivariate polynomials, factored
//! fractions, univariate rational functions and truncated power series.

pub mod coef;
pub mod det;
pub mod expand;
pub mod modp;
pub mod mono;
pub mod parse;
pub mod poly;
pub mod q;
pub mod ratfn;
pub mod series;
pub mod var;

pub use coef::{Coef, CoefError};
pub use det::{det, RingOps};
pub use expand::{expand, ExpandError};
pub use mono::Mono;
pub use parse::parse_coef;
pub use poly::Poly;
pub use q::Q;
pub use ratfn::{RatFn, RatFnError};
pub use series::{Family, PMono, PSeries, PVar, SeriesError, Trunc};
pub use var::Var;
