//! Exact arithmetic substrate: rationals, multivariate polynomials and
//! rational functions, truncated Novikov series, and binomial rewriting.

pub mod linalg;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod rewrite;
pub mod series;

pub use poly::{Exponents, MultiPoly};
pub use ratfun::{RationalFunction, RationalFunctionError};
pub use rational::{format_rational, int, parse_rational, rat, Rational, RationalText};
pub use rewrite::{BinomialPresentation, BinomialRelation, RewriteError, Term};
pub use series::{SeriesError, TruncatedSeries};
