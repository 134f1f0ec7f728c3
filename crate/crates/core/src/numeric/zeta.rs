//! Hurwitz zeta at integer arguments by Euler-Maclaurin, and polylogarithms
//! at roots of unity through `Li_w(e^{2 pi i p/q}) = q^-w sum_m e^{2 pi i pm/q} zeta(w, m/q)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use serde::Serialize;

use super::elementary::{root_of_unity, GUARD};
use super::fixed::{BigComplex, BigReal};
use crate::error::{Error, Result};
use crate::exact::{bernoulli_number, Rational};

/// Working bits for a requested precision: twice the request.
pub fn working_bits(requested: u32) -> u32 {
    2 * requested
}

/// Iteration cap on the direct part of the Euler-Maclaurin sum.
const MAX_TERMS: u64 = 5_000_000;
const MAX_CORRECTIONS: u32 = 40;

/// A value with an absolute error bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    pub value: BigComplex,
    pub error_bound: f64,
    /// Requested precision in bits; the value carries twice as many.
    pub precision_bits: u32,
}

impl Estimate {
    pub fn ulp(&self) -> f64 {
        2f64.powi(-(self.value.bits() as i32))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerMaclaurinPlan {
    pub direct_terms: u64,
    pub corrections: u32,
}

/// `log2` of `4 (s)_{2P-1} (25/157)^{2P} M^{1-s-2P}`, which bounds the
/// remainder after `P` corrections since `2 pi > 157/25` and `M + x >= M`.
fn log2_remainder(s: u32, m: f64, p: u32) -> f64 {
    let rising: f64 = (0..2 * p - 1).map(|i| ((s + i) as f64).log2()).sum();
    2.0 + rising
        + 2.0 * p as f64 * (25f64 / 157.0).log2()
        + (1.0 - s as f64 - 2.0 * p as f64) * m.log2()
}

/// Cheapest `(M, P)` with remainder below `2^-(bits + 4)`.
pub fn plan(s: u32, bits: u32) -> Result<EulerMaclaurinPlan> {
    let target = -(bits as f64) - 6.0;
    let mut best: Option<EulerMaclaurinPlan> = None;
    for p in 1..=MAX_CORRECTIONS {
        // smallest M with log2_remainder(M) <= target
        let rising: f64 = (0..2 * p - 1).map(|i| ((s + i) as f64).log2()).sum();
        let rest = 2.0 + rising + 2.0 * p as f64 * (25f64 / 157.0).log2();
        let exponent = (s + 2 * p - 1) as f64;
        let m = 2f64.powf((rest - target) / exponent).ceil().max(1.0) + 1.0;
        if m > MAX_TERMS as f64 {
            continue;
        }
        let m = m as u64;
        debug_assert!(log2_remainder(s, m as f64, p) <= target + 1e-6);
        let cost = m + 4 * p as u64;
        if best
            .as_ref()
            .is_none_or(|b| cost < b.direct_terms + 4 * b.corrections as u64)
        {
            best = Some(EulerMaclaurinPlan {
                direct_terms: m,
                corrections: p,
            });
        }
    }
    best.ok_or(Error::PrecisionUnattainable(bits))
}

/// `zeta(s, x)` at `bits` working bits, within one ulp.
pub(crate) fn hurwitz_working(s: u32, x: &Rational, bits: u32) -> Result<BigReal> {
    if s < 2 {
        return Err(Error::Precondition(format!(
            "Hurwitz zeta needs s >= 2, got {s}"
        )));
    }
    if x.is_negative() || x.is_zero() || x > &Rational::one() {
        return Err(Error::Precondition(format!(
            "Hurwitz zeta needs 0 < x <= 1, got {x}"
        )));
    }
    let pl = plan(s, bits)?;
    let wi = bits + GUARD;
    let si = s as i32;
    let mut acc = BigReal::zero(wi);
    for n in 0..pl.direct_terms {
        let base = x + Rational::from(n as i64);
        acc = &acc + &BigReal::from_rational(&base.pow(-si), wi);
    }
    let mx = x + Rational::from(pl.direct_terms as i64);
    let mut tail = mx.pow(1 - si) / Rational::from(s as i64 - 1) + mx.pow(-si) / Rational::from(2);
    // B_{2j}/(2j)! (s)_{2j-1} (M+x)^{-s-2j+1}
    let mut rising = Rational::from(s as i64);
    for j in 1..=pl.corrections {
        if j > 1 {
            rising = rising
                * Rational::from((s + 2 * j - 3) as i64)
                * Rational::from((s + 2 * j - 2) as i64);
        }
        let term = bernoulli_number(2 * j as usize) / Rational::factorial(2 * j)
            * &rising
            * mx.pow(-si - 2 * j as i32 + 1);
        tail += term;
    }
    acc = &acc + &BigReal::from_rational(&tail, wi);
    Ok(acc.with_bits(bits))
}

/// `zeta(s, x) = sum_{n>=0} (n + x)^-s` for integer `s >= 2` and `0 < x <= 1`.
pub fn hurwitz_zeta(s: u32, x: &Rational, precision_bits: u32) -> Result<Estimate> {
    let bits = working_bits(precision_bits);
    let v = hurwitz_working(s, x, bits)?;
    Ok(Estimate {
        value: BigComplex::real(v),
        error_bound: 2f64.powi(-(bits as i32)),
        precision_bits,
    })
}

type LiKey = (u32, u64, u64, u32);

fn li_cache() -> &'static Mutex<HashMap<LiKey, Estimate>> {
    static CACHE: OnceLock<Mutex<HashMap<LiKey, Estimate>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Li_w(e^{2 pi i p/q})`; at `p = 0 mod q` this is `zeta(w)`.
pub fn li_at_root_of_unity(w: u32, p: i64, q: u64, precision_bits: u32) -> Result<Estimate> {
    if w < 2 {
        return Err(Error::Precondition(format!(
            "Li_w on the unit circle needs w >= 2, got {w}"
        )));
    }
    if q == 0 {
        return Err(Error::Precondition("q must be positive".into()));
    }
    let pr = p.rem_euclid(q as i64) as u64;
    let g = pr.gcd(&q);
    let (pr, q) = (pr / g, q / g);
    let key = (w, pr, q, precision_bits);
    if let Some(e) = li_cache().lock().expect("li cache poisoned").get(&key) {
        return Ok(e.clone());
    }
    let bits = working_bits(precision_bits);
    let mut acc = BigComplex::zero(bits);
    let mut err_ulps = 0f64;
    for m in 1..=q {
        let zeta = hurwitz_working(w, &Rational::new(m as i64, q as i64), bits)?;
        let root = root_of_unity(&Rational::new((pr * m) as i64, q as i64), bits);
        acc = &acc + &root.scale(&zeta);
        // one ulp in zeta, one in each of cos/sin times |zeta|, two roundings
        err_ulps += 2.0 * zeta.to_f64().abs() + 4.0;
    }
    let scale = Rational::from(q as i64).pow(-(w as i32));
    let value = acc.mul_rational(&scale);
    let error_bound = (err_ulps * scale.to_f64() + 1.0) * 2f64.powi(-(bits as i32));
    let e = Estimate {
        value,
        error_bound,
        precision_bits,
    };
    li_cache()
        .lock()
        .expect("li cache poisoned")
        .insert(key, e.clone());
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::elementary::pi;

    #[test]
    fn zeta_two() {
        let z = hurwitz_zeta(2, &Rational::one(), 100).unwrap();
        let p = pi(200);
        let expect = (&p * &p).div_int(6);
        assert!((&z.value.re - &expect).to_f64().abs() < 1e-55);
    }

    #[test]
    fn li_at_one_is_zeta() {
        let a = li_at_root_of_unity(3, 0, 1, 80).unwrap();
        let b = hurwitz_zeta(3, &Rational::one(), 80).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(li_at_root_of_unity(3, 5, 5, 80).unwrap().value, b.value);
    }

    #[test]
    fn bad_arguments() {
        assert!(hurwitz_zeta(1, &Rational::one(), 64).is_err());
        assert!(hurwitz_zeta(2, &Rational::zero(), 64).is_err());
        assert!(hurwitz_zeta(2, &Rational::new(3, 2), 64).is_err());
        assert!(li_at_root_of_unity(1, 1, 3, 64).is_err());
    }

    #[test]
    fn plan_is_finite() {
        let p = plan(2, 400).unwrap();
        assert!(p.direct_terms < 10_000 && p.corrections <= MAX_CORRECTIONS);
    }
}
