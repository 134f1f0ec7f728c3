//! Bernoulli numbers and polynomials from the generating function
//! `t e^{tx} / (e^t - 1) = sum B_k(x) t^k / k!`.

use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use super::{PowerSeries, Rational, RationalPolynomial};
use crate::error::{Error, Result};

struct BernoulliTable {
    numbers: Vec<Rational>,
    polys: Vec<Arc<RationalPolynomial>>,
}

fn table() -> &'static RwLock<BernoulliTable> {
    static TABLE: OnceLock<RwLock<BernoulliTable>> = OnceLock::new();
    TABLE.get_or_init(|| {
        RwLock::new(BernoulliTable {
            numbers: Vec::new(),
            polys: Vec::new(),
        })
    })
}

/// `z / (e^z - 1)` to the given order, formed as the inverse of
/// `(e^z - 1)/z` so that the pole never appears.
pub fn z_over_expm1(order: usize) -> Result<PowerSeries> {
    let expm1 =
        &PowerSeries::exp_linear(&Rational::one(), order + 1) - &PowerSeries::one(order + 1);
    let quotient = expm1.shift_down()?;
    if !quotient.coeff(0).is_one() {
        return Err(Error::Internal(format!(
            "(e^z - 1)/z has constant term {}, expected 1",
            quotient.coeff(0)
        )));
    }
    quotient.inverse()
}

fn extend_to(table: &mut BernoulliTable, k: usize) {
    if table.polys.len() > k {
        return;
    }
    let order = (k + 1).max(2 * table.polys.len()).max(16);
    let inv = z_over_expm1(order).expect("(e^z - 1)/z is invertible");
    table.numbers = (0..=order)
        .map(|n| inv.coeff(n) * Rational::factorial(n as u32))
        .collect();
    // B_n(x) = sum_j C(n, j) B_{n-j} x^j
    for n in table.polys.len()..=order {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut binom = Rational::one();
        for j in 0..=n {
            coeffs.push(&binom * &table.numbers[n - j]);
            binom *= Rational::new((n - j) as i64, (j + 1) as i64);
        }
        table.polys.push(Arc::new(RationalPolynomial::new(coeffs)));
    }
}

/// The k-th Bernoulli polynomial, exact.  Cached after first use.
pub fn bernoulli_polynomial(k: usize) -> Arc<RationalPolynomial> {
    if let Some(p) = table()
        .read()
        .expect("bernoulli cache poisoned")
        .polys
        .get(k)
    {
        return Arc::clone(p);
    }
    let mut t = table().write().expect("bernoulli cache poisoned");
    extend_to(&mut t, k);
    Arc::clone(&t.polys[k])
}

/// The k-th Bernoulli number `B_k = B_k(0)` (so `B_1 = -1/2`).
pub fn bernoulli_number(k: usize) -> Rational {
    if let Some(b) = table()
        .read()
        .expect("bernoulli cache poisoned")
        .numbers
        .get(k)
    {
        return b.clone();
    }
    let mut t = table().write().expect("bernoulli cache poisoned");
    extend_to(&mut t, k);
    t.numbers[k].clone()
}

/// `B_k` evaluated at the representative of `x mod 1` in `[0, 1)`.
pub fn periodic_bernoulli(k: usize, x: &Rational) -> Rational {
    bernoulli_polynomial(k).eval(&x.fract_positive())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributionCheck {
    pub holds: bool,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Exact check of `sum_{j<m} B_k((x+j)/m) = m^(1-k) B_k(x)`.
pub fn distribution_relation_check(k: usize, m: u32, x: &Rational) -> Result<DistributionCheck> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    if x.is_negative() || x >= &Rational::one() {
        return Err(Error::Precondition(format!("x = {x} must lie in [0, 1)")));
    }
    let b = bernoulli_polynomial(k);
    let m_q = Rational::from_integer(m as i64);
    let lhs: Rational = (0..m)
        .map(|j| b.eval(&((x + Rational::from_integer(j as i64)) / &m_q)))
        .sum();
    let rhs = m_q.pow(1 - k as i32) * b.eval(x);
    Ok(DistributionCheck {
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

/// The two sides of the Bernoulli identity behind the residue formula:
/// `N d/dz (z e^{(a/N) z} / (e^z - 1))` and `sum_j (N/j!) B_{j+1}(a/N) z^j`,
/// both truncated at `order`.
pub fn residue_generating_series(
    a: u32,
    n: u32,
    order: usize,
) -> Result<(PowerSeries, PowerSeries)> {
    if n == 0 || a >= n {
        return Err(Error::Precondition(format!(
            "need 0 <= a < N, got a={a}, N={n}"
        )));
    }
    let n_q = Rational::from_integer(n as i64);
    let c = Rational::new(a as i64, n as i64);
    let inner = &PowerSeries::exp_linear(&c, order + 1) * &z_over_expm1(order + 1)?;
    let lhs = inner.derivative().scale(&n_q);
    let rhs = PowerSeries::from_coeffs(
        (0..=order)
            .map(|j| &n_q / Rational::factorial(j as u32) * bernoulli_polynomial(j + 1).eval(&c))
            .collect(),
        order,
    );
    Ok((lhs, rhs))
}
