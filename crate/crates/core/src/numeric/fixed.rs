//! Binary fixed-point reals `mantissa * 2^-bits` over big integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigReal {
    mant: BigInt,
    bits: u32,
}

/// `round(n / d)` for `d > 0`, halves away from zero.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    let twice: BigInt = r * 2;
    match twice.cmp(d) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal => {
            if n.is_negative() {
                q
            } else {
                q + 1
            }
        }
    }
}

fn shift_round(n: &BigInt, by: u32) -> BigInt {
    if by == 0 {
        return n.clone();
    }
    div_round(n, &(BigInt::one() << by))
}

impl BigReal {
    pub fn zero(bits: u32) -> Self {
        BigReal {
            mant: BigInt::zero(),
            bits,
        }
    }

    pub fn from_mantissa(mant: BigInt, bits: u32) -> Self {
        BigReal { mant, bits }
    }

    /// Nearest representable value, error at most half an ulp.
    pub fn from_rational(r: &Rational, bits: u32) -> Self {
        BigReal {
            mant: div_round(&(r.numer() << bits), r.denom()),
            bits,
        }
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        BigReal {
            mant: BigInt::from(n) << bits,
            bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigReal {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    /// Rescale to `bits`, rounding when precision is dropped.
    pub fn with_bits(&self, bits: u32) -> Self {
        let mant = if bits >= self.bits {
            &self.mant << (bits - self.bits)
        } else {
            shift_round(&self.mant, self.bits - bits)
        };
        BigReal { mant, bits }
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        BigReal {
            mant: div_round(&(&self.mant * r.numer()), r.denom()),
            bits: self.bits,
        }
    }

    pub fn div_int(&self, d: i64) -> Self {
        assert!(d != 0, "division by zero");
        let (n, d) = if d < 0 {
            (-&self.mant, -d)
        } else {
            (self.mant.clone(), d)
        };
        BigReal {
            mant: div_round(&n, &BigInt::from(d)),
            bits: self.bits,
        }
    }

    pub fn div(&self, rhs: &BigReal) -> Self {
        assert_eq!(self.bits, rhs.bits, "precision mismatch");
        assert!(!rhs.is_zero(), "division by zero");
        let (n, d) = if rhs.mant.is_negative() {
            (-(&self.mant << self.bits), -&rhs.mant)
        } else {
            (&self.mant << self.bits, rhs.mant.clone())
        };
        BigReal {
            mant: div_round(&n, &d),
            bits: self.bits,
        }
    }

    /// Approximate value; exact enough for magnitudes and budgets.
    pub fn to_f64(&self) -> f64 {
        let len = self.mant.bits();
        if len == 0 {
            return 0.0;
        }
        let drop = len.saturating_sub(60);
        let top = (&self.mant >> drop).to_f64().unwrap_or(0.0);
        top * 2f64.powi(drop as i32 - self.bits as i32)
    }

    /// Decimal expansion rounded to `digits` places after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scaled = div_round(
            &(&self.mant * BigInt::from(10).pow(digits as u32)),
            &(BigInt::one() << self.bits),
        );
        let neg = scaled.sign() == Sign::Minus;
        let s = scaled.abs().to_string();
        let s = format!("{:0>width$}", s, width = digits + 1);
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }

    fn check(&self, other: &BigReal) {
        assert_eq!(self.bits, other.bits, "precision mismatch");
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.bits as f64 * std::f64::consts::LOG10_2).floor() as usize;
        f.write_str(&self.to_decimal(digits))
    }
}

impl Add for &BigReal {
    type Output = BigReal;
    fn add(self, rhs: &BigReal) -> BigReal {
        self.check(rhs);
        BigReal {
            mant: &self.mant + &rhs.mant,
            bits: self.bits,
        }
    }
}

impl Sub for &BigReal {
    type Output = BigReal;
    fn sub(self, rhs: &BigReal) -> BigReal {
        self.check(rhs);
        BigReal {
            mant: &self.mant - &rhs.mant,
            bits: self.bits,
        }
    }
}

impl Mul for &BigReal {
    type Output = BigReal;
    fn mul(self, rhs: &BigReal) -> BigReal {
        self.check(rhs);
        BigReal {
            mant: shift_round(&(&self.mant * &rhs.mant), self.bits),
            bits: self.bits,
        }
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            mant: -&self.mant,
            bits: self.bits,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        assert_eq!(re.bits, im.bits, "precision mismatch");
        BigComplex { re, im }
    }

    pub fn zero(bits: u32) -> Self {
        BigComplex::new(BigReal::zero(bits), BigReal::zero(bits))
    }

    pub fn real(re: BigReal) -> Self {
        let bits = re.bits;
        BigComplex::new(re, BigReal::zero(bits))
    }

    pub fn bits(&self) -> u32 {
        self.re.bits
    }

    pub fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), -&self.im)
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        BigComplex::new(self.re.mul_rational(r), self.im.mul_rational(r))
    }

    pub fn scale(&self, x: &BigReal) -> Self {
        BigComplex::new(&self.re * x, &self.im * x)
    }

    pub fn with_bits(&self, bits: u32) -> Self {
        BigComplex::new(self.re.with_bits(bits), self.im.with_bits(bits))
    }

    pub fn abs_f64(&self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}
