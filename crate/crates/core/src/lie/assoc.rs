//! The free associative algebra on `e1, e2`, truncated above word length `d`.

use super::hall::Word;
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Dense coefficients over all words of length `<= d`, indexed by [`Word::id`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocElement {
    d: usize,
    coeffs: Vec<Rational>,
}

impl AssocElement {
    pub fn zero(d: usize) -> Self {
        AssocElement {
            d,
            coeffs: vec![Rational::zero(); (1usize << (d + 1)) - 1],
        }
    }

    pub fn one(d: usize) -> Self {
        let mut x = Self::zero(d);
        x.coeffs[0] = Rational::one();
        x
    }

    /// `c * w`; silently zero if `w` is longer than `d`.
    pub fn monomial(d: usize, w: Word, c: Rational) -> Self {
        let mut x = Self::zero(d);
        if w.len as usize <= d {
            x.coeffs[w.id()] = c;
        }
        x
    }

    pub fn truncation(&self) -> usize {
        self.d
    }

    pub fn coeff(&self, w: Word) -> Rational {
        if w.len as usize > self.d {
            return Rational::zero();
        }
        self.coeffs[w.id()].clone()
    }

    pub(crate) fn add_at(&mut self, id: usize, c: &Rational) {
        self.coeffs[id] += c;
    }

    /// Nonzero `(word id, coefficient)` pairs in increasing word order.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn add(&self, other: &AssocElement) -> AssocElement {
        assert_eq!(self.d, other.d, "truncation mismatch");
        AssocElement {
            d: self.d,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> AssocElement {
        AssocElement {
            d: self.d,
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, other: &AssocElement) -> AssocElement {
        assert_eq!(self.d, other.d, "truncation mismatch");
        let mut out = AssocElement::zero(self.d);
        let rhs: Vec<(Word, &Rational)> = other
            .support()
            .map(|(j, c)| (Word::from_id(j), c))
            .collect();
        for (i, a) in self.support() {
            let wi = Word::from_id(i);
            for (wj, b) in &rhs {
                if (wi.len + wj.len) as usize <= self.d {
                    out.coeffs[wi.concat(wj).id()] += a * *b;
                }
            }
        }
        out
    }

    fn require_constant(&self, c: i64, what: &str) -> Result<()> {
        if self.coeffs[0] != Rational::from(c) {
            return Err(Error::Precondition(format!(
                "{what} needs constant term {c}, got {}",
                self.coeffs[0]
            )));
        }
        Ok(())
    }

    /// `sum_{n<=d} x^n / n!` for `x` without constant term.
    pub fn exp(&self) -> Result<AssocElement> {
        self.require_constant(0, "exp")?;
        let mut acc = AssocElement::one(self.d);
        let mut term = AssocElement::one(self.d);
        for n in 1..=self.d {
            term = term.mul(self).scale(&Rational::new(1, n as i64));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// `sum_{n<=d} (-1)^(n+1) y^n / n` with `x = 1 + y`.
    pub fn log(&self) -> Result<AssocElement> {
        self.require_constant(1, "log")?;
        let mut y = self.clone();
        y.coeffs[0] = Rational::zero();
        let mut acc = AssocElement::zero(self.d);
        let mut power = AssocElement::one(self.d);
        for n in 1..=self.d {
            power = power.mul(&y);
            if power.is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale(&Rational::new(sign, n as i64)));
        }
        Ok(acc)
    }
}
