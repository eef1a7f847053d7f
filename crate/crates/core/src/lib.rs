//! Exact verification of one-parameter WZ generalizations of Ramanujan's
//! `2/pi` series.
//!
//! * [`algebra`]: rationals, bivariate polynomials, rational functions.
//! * [`term`]: hypergeometric summands `F(n, k)` and closed forms in `n`.
//! * [`wz`]: certificate checks, base case, exact terminating sums.
//! * [`gosper`]: certificate synthesis by Gosper's algorithm over `Q(n)`.
//! * [`numeric`]: Gamma, accelerated alternating series, Carlson points.
//! * [`catalog`]: the built-in identities and the `.identity` text format.

pub mod algebra;
pub mod catalog;
pub mod gosper;
pub mod numeric;
pub mod term;
pub mod wz;
