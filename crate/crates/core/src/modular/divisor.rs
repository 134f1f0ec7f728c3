use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::group::{check_modulus, ModMatrix, TorsionPoint};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// A finitely supported Q-valued function on `(Z/N)^2 \ {0}`.
///
/// Zero coefficients are never stored; the origin is never in the support.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Divisor {
    n: u32,
    coeffs: BTreeMap<TorsionPoint, Rational>,
}

impl Divisor {
    pub fn zero(n: u32) -> Result<Self> {
        check_modulus(n)?;
        Ok(Divisor {
            n,
            coeffs: BTreeMap::new(),
        })
    }

    /// `c * delta_(t1, t2)`.
    pub fn delta(n: u32, t1: i64, t2: i64, c: Rational) -> Result<Self> {
        let mut d = Self::zero(n)?;
        d.set(TorsionPoint::new(n, t1, t2), c)?;
        Ok(d)
    }

    pub fn from_terms(
        n: u32,
        terms: impl IntoIterator<Item = (TorsionPoint, Rational)>,
    ) -> Result<Self> {
        let mut d = Self::zero(n)?;
        for (t, c) in terms {
            let old = d.get(&t);
            d.set(t, old + c)?;
        }
        Ok(d)
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn set(&mut self, t: TorsionPoint, c: Rational) -> Result<()> {
        if t.n != self.n {
            return Err(Error::ModulusMismatch(self.n, t.n));
        }
        if t.is_origin() {
            return Err(Error::OriginInSupport);
        }
        if c.is_zero() {
            self.coeffs.remove(&t);
        } else {
            self.coeffs.insert(t, c);
        }
        Ok(())
    }

    pub fn get(&self, t: &TorsionPoint) -> Rational {
        self.coeffs.get(t).cloned().unwrap_or_default()
    }

    /// `psi(t1, t2)` with coordinates reduced mod N; the origin reads as 0.
    pub fn value(&self, t1: i64, t2: i64) -> Rational {
        self.get(&TorsionPoint::new(self.n, t1, t2))
    }

    pub fn support(&self) -> impl Iterator<Item = (&TorsionPoint, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `sum_t psi(t)`.
    pub fn degree(&self) -> Rational {
        self.coeffs.values().sum()
    }

    pub fn is_degree_zero(&self) -> bool {
        self.degree().is_zero()
    }

    pub fn scale(&self, s: &Rational) -> Divisor {
        Divisor::from_terms(self.n, self.coeffs.iter().map(|(t, c)| (*t, c * s)))
            .expect("scaling preserves support")
    }

    pub fn add(&self, other: &Divisor) -> Result<Divisor> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch(self.n, other.n));
        }
        Divisor::from_terms(
            self.n,
            self.coeffs
                .iter()
                .chain(other.coeffs.iter())
                .map(|(t, c)| (*t, c.clone())),
        )
    }

    /// `(h . psi)(t) = psi(h^-1 t)`, i.e. the support is pushed forward by h.
    pub fn translate(&self, h: &ModMatrix) -> Result<Divisor> {
        if h.modulus() != self.n {
            return Err(Error::ModulusMismatch(self.n, h.modulus()));
        }
        Divisor::from_terms(
            self.n,
            self.coeffs
                .iter()
                .map(|(t, c)| (h.act_unchecked(t), c.clone())),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct DivisorTerm {
    t1: u32,
    t2: u32,
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct DivisorJson {
    #[serde(rename = "N")]
    n: u32,
    support: Vec<DivisorTerm>,
}

impl Serialize for Divisor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DivisorJson {
            n: self.n,
            support: self
                .coeffs
                .iter()
                .map(|(t, c)| DivisorTerm {
                    t1: t.t1,
                    t2: t.t2,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Divisor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = DivisorJson::deserialize(deserializer)?;
        let mut d = Divisor::zero(raw.n).map_err(D::Error::custom)?;
        for term in raw.support {
            if term.t1 >= raw.n || term.t2 >= raw.n {
                return Err(D::Error::custom(format!(
                    "point ({}, {}) is not reduced mod {}",
                    term.t1, term.t2, raw.n
                )));
            }
            let t = TorsionPoint::new(raw.n, term.t1 as i64, term.t2 as i64);
            if d.coeffs.contains_key(&t) {
                return Err(D::Error::custom(format!(
                    "duplicate point ({}, {})",
                    t.t1, t.t2
                )));
            }
            d.set(t, term.coeff).map_err(D::Error::custom)?;
        }
        Ok(d)
    }
}
