use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::assoc::AssocElement;
use super::hall::{lie_tables, HallWord, LieTables, Word};
use crate::error::{Error, Result};
use crate::exact::{PowerSeries, Rational};

/// An element of the free Lie algebra on `e1, e2` modulo brackets of length
/// greater than `D`, in Hall coordinates.
#[derive(Clone)]
pub struct LieElement {
    tables: Arc<LieTables>,
    coords: Vec<Rational>,
}

impl PartialEq for LieElement {
    fn eq(&self, other: &Self) -> bool {
        self.tables.d == other.tables.d && self.coords == other.coords
    }
}

impl Eq for LieElement {}

impl LieElement {
    pub fn zero(d: usize) -> Result<Self> {
        let tables = lie_tables(d)?;
        let coords = vec![Rational::zero(); tables.dim()];
        Ok(LieElement { tables, coords })
    }

    /// `e1` or `e2`.
    pub fn generator(d: usize, i: u8) -> Result<Self> {
        if i != 1 && i != 2 {
            return Err(Error::Precondition(format!("no generator e{i}")));
        }
        let h = HallWord::new(Word::letter(i)).expect("letters are Lyndon");
        Self::basis(d, &h)
    }

    pub fn basis(d: usize, h: &HallWord) -> Result<Self> {
        Self::from_terms(d, [(*h, Rational::one())])
    }

    pub fn from_terms(
        d: usize,
        terms: impl IntoIterator<Item = (HallWord, Rational)>,
    ) -> Result<Self> {
        let mut x = Self::zero(d)?;
        for (h, c) in terms {
            let i = x
                .tables
                .index_of(&h)
                .ok_or_else(|| Error::TruncationTooSmall {
                    have: d,
                    need: h.degree(),
                })?;
            x.coords[i] += c;
        }
        Ok(x)
    }

    pub fn truncation(&self) -> usize {
        self.tables.d
    }

    pub fn coeff(&self, h: &HallWord) -> Rational {
        self.tables
            .index_of(h)
            .map_or_else(Rational::zero, |i| self.coords[i].clone())
    }

    /// Nonzero coordinates in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (HallWord, &Rational)> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.tables.basis[i], c))
    }

    pub(crate) fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub(crate) fn tables(&self) -> &LieTables {
        &self.tables
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    /// The homogeneous component of degree `m`.
    pub fn component(&self, m: usize) -> LieElement {
        let mut out = self.clone();
        for (i, c) in out.coords.iter_mut().enumerate() {
            if self.tables.basis[i].degree() != m {
                *c = Rational::zero();
            }
        }
        out
    }

    /// Lowest degree with a nonzero coordinate.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms().map(|(h, _)| h.degree()).min()
    }

    pub fn scale(&self, s: &Rational) -> LieElement {
        LieElement {
            tables: Arc::clone(&self.tables),
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// Same element read at a lower truncation.
    pub fn truncate(&self, d: usize) -> Result<LieElement> {
        if d > self.truncation() {
            return Err(Error::TruncationMismatch(self.truncation(), d));
        }
        LieElement::from_terms(
            d,
            self.terms()
                .filter(|(h, _)| h.degree() <= d)
                .map(|(h, c)| (h, c.clone())),
        )
    }

    fn check_same(&self, other: &LieElement) -> Result<()> {
        if self.truncation() != other.truncation() {
            return Err(Error::TruncationMismatch(
                self.truncation(),
                other.truncation(),
            ));
        }
        Ok(())
    }

    pub fn bracket(&self, other: &LieElement) -> Result<LieElement> {
        self.check_same(other)?;
        let t = &self.tables;
        let mut out = vec![Rational::zero(); t.dim()];
        let rhs: Vec<(usize, &Rational)> = other
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, a) in self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for &(j, b) in &rhs {
                let structure = t.bracket(i, j);
                if structure.is_empty() {
                    continue;
                }
                let ab = a * b;
                for &(k, c) in structure {
                    out[k] += &ab * Rational::from(c);
                }
            }
        }
        Ok(LieElement {
            tables: Arc::clone(&self.tables),
            coords: out,
        })
    }

    /// Image in the free associative algebra.
    pub fn to_assoc(&self) -> AssocElement {
        let mut out = AssocElement::zero(self.truncation());
        for (i, c) in self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (&w, &e) in &self.tables.expansions[i] {
                out.add_at(w, &(c * Rational::from(e)));
            }
        }
        out
    }

    /// Hall coordinates of an associative element, which must be a Lie polynomial.
    pub fn from_assoc(x: &AssocElement) -> Result<LieElement> {
        let mut out = LieElement::zero(x.truncation())?;
        let poly: BTreeMap<usize, Rational> = x.support().map(|(i, c)| (i, c.clone())).collect();
        if poly.contains_key(&0) {
            return Err(Error::Internal("constant term in a Lie element".into()));
        }
        for (i, c) in out.tables.extract(poly)? {
            out.coords[i] = c;
        }
        Ok(out)
    }

    pub fn exp_assoc(&self) -> AssocElement {
        self.to_assoc()
            .exp()
            .expect("Lie elements have no constant term")
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieElement(D={}; ", self.truncation())?;
        let mut first = true;
        for (h, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}){h}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl<'a> Add for &'a LieElement {
    type Output = LieElement;
    /// Panics on a truncation mismatch.
    fn add(self, rhs: &'a LieElement) -> LieElement {
        assert_eq!(self.truncation(), rhs.truncation(), "truncation mismatch");
        LieElement {
            tables: Arc::clone(&self.tables),
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub for &'a LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &'a LieElement) -> LieElement {
        self + &(-rhs)
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        self.scale(&-Rational::one())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    hall: HallWord,
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct LieJson {
    #[serde(rename = "D")]
    d: usize,
    terms: Vec<TermJson>,
}

impl Serialize for LieElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LieJson {
            d: self.truncation(),
            terms: self
                .terms()
                .map(|(hall, c)| TermJson {
                    hall,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieElement {
    fn deserialize<De: serde::Deserializer<'de>>(de: De) -> std::result::Result<Self, De::Error> {
        let raw = LieJson::deserialize(de)?;
        LieElement::from_terms(raw.d, raw.terms.into_iter().map(|t| (t.hall, t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}

pub fn bracket(x: &LieElement, y: &LieElement) -> Result<LieElement> {
    x.bracket(y)
}

/// `log(exp x exp y)`, through the truncated associative algebra.
pub fn bch(x: &LieElement, y: &LieElement) -> Result<LieElement> {
    x.check_same(y)?;
    let prod = x.exp_assoc().mul(&y.exp_assoc());
    LieElement::from_assoc(&prod.log()?)
}

/// `sum_j f_j ad_x^j (y)`.  The series needs order `>= D - 1`, enough to
/// reach every degree.
pub fn ad_series(f: &PowerSeries, x: &LieElement, y: &LieElement) -> Result<LieElement> {
    x.check_same(y)?;
    let d = x.truncation();
    if f.order() + 1 < d {
        return Err(Error::SeriesOrderTooSmall {
            have: f.order(),
            need: d - 1,
        });
    }
    let mut acc = y.scale(f.coeff(0));
    let mut cur = y.clone();
    for j in 1..=f.order() {
        cur = x.bracket(&cur)?;
        if cur.is_zero() {
            break;
        }
        if !f.coeff(j).is_zero() {
            acc = &acc + &cur.scale(f.coeff(j));
        }
    }
    Ok(acc)
}

/// `e^{ad_x} y`.
pub fn ad_exp(x: &LieElement, y: &LieElement) -> Result<LieElement> {
    let d = x.truncation();
    ad_series(&PowerSeries::exp_linear(&Rational::one(), d), x, y)
}
