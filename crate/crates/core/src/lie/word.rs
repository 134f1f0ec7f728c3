//! Words in the loops `gamma1`, `gamma2` of the punctured torus and their
//! logarithms.

use std::fmt;

use serde::Serialize;

use super::assoc::AssocElement;
use super::element::LieElement;
use crate::error::Result;
use crate::exact::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Loop {
    /// `[p, p+1]`, with logarithm `e1`.
    Gamma1,
    /// `[p, p+tau]`, with logarithm `e2`.
    Gamma2,
}

impl Loop {
    fn generator_index(self) -> u8 {
        match self {
            Loop::Gamma1 => 1,
            Loop::Gamma2 => 2,
        }
    }
}

/// A freely reduced word `prod gamma_i^(n_i)` with no zero exponents and no
/// two adjacent equal letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct GroupWord {
    letters: Vec<(Loop, i64)>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn power(l: Loop, e: i64) -> Self {
        GroupWord::identity().times(l, e)
    }

    pub fn gamma1() -> Self {
        Self::power(Loop::Gamma1, 1)
    }

    pub fn gamma2() -> Self {
        Self::power(Loop::Gamma2, 1)
    }

    /// The small loop around the puncture, `gamma1 gamma2 gamma1^-1 gamma2^-1`.
    pub fn phi0() -> Self {
        Self::gamma1()
            .times(Loop::Gamma2, 1)
            .times(Loop::Gamma1, -1)
            .times(Loop::Gamma2, -1)
    }

    pub fn letters(&self) -> &[(Loop, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends `l^e`, reducing against the last letter.
    pub fn times(mut self, l: Loop, e: i64) -> Self {
        if e == 0 {
            return self;
        }
        match self.letters.last_mut() {
            Some((last, n)) if *last == l => {
                *n += e;
                if *n == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push((l, e)),
        }
        self
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        other
            .letters
            .iter()
            .fold(self.clone(), |acc, &(l, e)| acc.times(l, e))
    }

    pub fn inverse(&self) -> GroupWord {
        self.letters
            .iter()
            .rev()
            .fold(GroupWord::identity(), |acc, &(l, e)| acc.times(l, -e))
    }

    pub fn pow(&self, e: i64) -> GroupWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(GroupWord::identity(), |acc, _| acc.mul(&base))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, (l, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = match l {
                Loop::Gamma1 => "g1",
                Loop::Gamma2 => "g2",
            };
            if *e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// The monodromy `tau -> tau + N` on loops based near the origin:
/// `gamma1 -> gamma1`, `gamma2 -> gamma2 gamma1^N`.
pub fn monodromy_t(w: &GroupWord, n: i64) -> GroupWord {
    let image2 = GroupWord::gamma2().times(Loop::Gamma1, n);
    w.letters
        .iter()
        .fold(GroupWord::identity(), |acc, &(l, e)| match l {
            Loop::Gamma1 => acc.times(Loop::Gamma1, e),
            Loop::Gamma2 => acc.mul(&image2.pow(e)),
        })
}

/// `log` of the word with `gamma_i` sent to `exp(e_i)`.
pub fn log_of_word(w: &GroupWord, d: usize) -> Result<LieElement> {
    let mut prod = AssocElement::one(d);
    for &(l, e) in &w.letters {
        let x = LieElement::generator(d, l.generator_index())?.scale(&Rational::from(e));
        prod = prod.mul(&x.exp_assoc());
    }
    LieElement::from_assoc(&prod.log()?)
}
