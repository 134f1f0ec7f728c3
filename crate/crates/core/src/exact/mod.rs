//! Exact scalars, polynomials, truncated power series and Bernoulli data.

mod bernoulli;
mod poly;
mod rational;
mod series;

pub use bernoulli::{
    bernoulli_number, bernoulli_polynomial, distribution_relation_check, periodic_bernoulli,
    residue_generating_series, z_over_expm1, DistributionCheck,
};
pub use poly::RationalPolynomial;
pub use rational::{factorial, Rational};
pub use series::PowerSeries;
