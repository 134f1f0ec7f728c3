//! `pi` and `cos`/`sin` of rational multiples of `2 pi`.  Everything is
//! evaluated with 32 guard bits and rounded once, so each result is within
//! one ulp of the target precision.

use num_bigint::BigInt;
use num_traits::Zero;

use super::fixed::{BigComplex, BigReal};
use crate::exact::Rational;

pub(crate) const GUARD: u32 = 32;

/// `sum_k (-1)^k / ((2k+1) x^(2k+1))` with truncated division at `bits`.
fn arctan_recip(x: i64, bits: u32) -> BigInt {
    let x2 = BigInt::from(x * x);
    let mut power: BigInt = (BigInt::from(1) << bits) / x;
    let mut acc = BigInt::zero();
    let mut k: i64 = 0;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        power /= &x2;
        k += 1;
    }
    acc
}

/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(bits: u32) -> BigReal {
    let w = bits + GUARD;
    let m = arctan_recip(5, w) * 16 - arctan_recip(239, w) * 4;
    BigReal::from_mantissa(m, w).with_bits(bits)
}

/// `(cos 2 pi r, sin 2 pi r)`.
pub fn cos_sin_2pi(r: &Rational, bits: u32) -> (BigReal, BigReal) {
    // Reduce to [0, 1/8] through the symmetries of the circle, exactly.
    let x = r.fract_positive();
    let eighth = Rational::new(1, 8);
    let octant = (&x / &eighth).floor();
    let oct: i64 = octant.try_into().expect("octant index fits");
    let base = &x - &eighth * Rational::from(oct);
    let y = if oct % 2 == 1 { &eighth - &base } else { base };
    let w = bits + GUARD;
    let theta = pi(w).mul_rational(&(y * Rational::from(2)));
    let (c, s) = taylor_cos_sin(&theta);
    // y in [0, 1/8]; undo the octant reflection/rotation.
    let (c, s) = match oct {
        0 => (c, s),
        1 => (s, c),
        2 => (-&s, c),
        3 => (-&c, s),
        4 => (-&c, -&s),
        5 => (-&s, -&c),
        6 => (s, -&c),
        7 => (c, -&s),
        _ => unreachable!("fractional part lies in [0, 1)"),
    };
    (c.with_bits(bits), s.with_bits(bits))
}

fn taylor_cos_sin(theta: &BigReal) -> (BigReal, BigReal) {
    let bits = theta.bits();
    let mut cos = BigReal::from_int(1, bits);
    let mut sin = theta.clone();
    let mut term = theta.clone();
    let mut n: i64 = 1;
    loop {
        term = (&term * theta).div_int(n + 1);
        if term.is_zero() {
            break;
        }
        let sign_neg = ((n + 1) / 2) % 2 == 1;
        if (n + 1) % 2 == 0 {
            cos = if sign_neg { &cos - &term } else { &cos + &term };
        } else {
            sin = if sign_neg { &sin - &term } else { &sin + &term };
        }
        n += 1;
    }
    (cos, sin)
}

/// `exp(2 pi i r)`.
pub fn root_of_unity(r: &Rational, bits: u32) -> BigComplex {
    let (c, s) = cos_sin_2pi(r, bits);
    BigComplex::new(c, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        assert_eq!(
            pi(200).to_decimal(50),
            "3.14159265358979323846264338327950288419716939937511"
        );
    }

    #[test]
    fn special_angles() {
        let bits = 128;
        let (c, s) = cos_sin_2pi(&Rational::new(1, 4), bits);
        assert!(c.to_f64().abs() < 1e-35 && (s.to_f64() - 1.0).abs() < 1e-35);
        let (c, s) = cos_sin_2pi(&Rational::new(2, 3), bits);
        assert!((c.to_f64() + 0.5).abs() < 1e-15);
        assert!((s.to_f64() + 3f64.sqrt() / 2.0).abs() < 1e-15);
        let (c, _) = cos_sin_2pi(&Rational::new(-7, 6), bits);
        assert!((c.to_f64() - 0.5).abs() < 1e-15);
        for k in 0..24 {
            let r = Rational::new(k, 24);
            let (c, s) = cos_sin_2pi(&r, bits);
            let t = 2.0 * std::f64::consts::PI * k as f64 / 24.0;
            assert!((c.to_f64() - t.cos()).abs() < 1e-14, "cos at {k}/24");
            assert!((s.to_f64() - t.sin()).abs() < 1e-14, "sin at {k}/24");
        }
    }
}
