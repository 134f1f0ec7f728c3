//! Output formulas for the l-adic and Hodge regulators of `Dir(rho^k psi)`,
//! kept as formal Q-linear combinations of symbols.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::divisor::Divisor;
use super::isom::{horospherical, is_in_isom_minus_infinity};
use crate::error::{Error, Result};
use crate::exact::Rational;

pub trait Symbol {
    /// Printed name of the symbol attached to `u`, e.g. `c^2(zeta^u)`.
    fn name(k: usize) -> String;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cyclotomic;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Polylog;

impl Symbol for Cyclotomic {
    fn name(k: usize) -> String {
        format!("c^{k}(zeta^u)")
    }
}

impl Symbol for Polylog {
    fn name(k: usize) -> String {
        format!("Li_{}(zeta^u)", k + 1)
    }
}

/// `sum_u q_u S(u)` for a symbol family `S` at level N and weight k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalCombination<S> {
    n: u32,
    k: usize,
    coeffs: BTreeMap<u32, Rational>,
    _symbol: PhantomData<S>,
}

/// `sum_u q_u c^k(zeta^u)`.
pub type CyclotomicCombo = FormalCombination<Cyclotomic>;
/// `sum_u q_u Li_{k+1}(zeta^u)`.
pub type LiCombo = FormalCombination<Polylog>;

impl<S> FormalCombination<S> {
    pub fn zero(n: u32, k: usize) -> Self {
        FormalCombination {
            n,
            k,
            coeffs: BTreeMap::new(),
            _symbol: PhantomData,
        }
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn weight(&self) -> usize {
        self.k
    }

    pub fn add_term(&mut self, u: u32, c: Rational) {
        let u = u % self.n;
        let v = self.coeff(u) + c;
        if v.is_zero() {
            self.coeffs.remove(&u);
        } else {
            self.coeffs.insert(u, v);
        }
    }

    pub fn coeff(&self, u: u32) -> Rational {
        self.coeffs.get(&(u % self.n)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(u, c)| (*u, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<S: Symbol> fmt::Display for FormalCombination<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let name = S::name(self.k);
        for (i, (u, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {}", name.replace('u', &u.to_string()))?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct Term<'a> {
    u: u32,
    coeff: &'a Rational,
}

impl<S: Symbol> Serialize for FormalCombination<S> {
    fn serialize<Se: Serializer>(&self, serializer: Se) -> std::result::Result<Se::Ok, Se::Error> {
        let mut s = serializer.serialize_struct("FormalCombination", 4)?;
        s.serialize_field("N", &self.n)?;
        s.serialize_field("k", &self.k)?;
        s.serialize_field("symbol", &S::name(self.k))?;
        let terms: Vec<Term<'_>> = self.terms().map(|(u, coeff)| Term { u, coeff }).collect();
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

/// A regulator formula together with the status of its hypothesis
/// `rho^k psi in Q[Isom \ infinity]^(k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "S: Symbol")]
pub struct RegulatorFormula<S> {
    pub combination: FormalCombination<S>,
    pub residue_zero: bool,
}

fn assemble<S>(k: usize, psi: &Divisor, scale: Rational) -> Result<RegulatorFormula<S>> {
    if k == 0 {
        return Err(Error::Precondition("regulator formulas need k >= 1".into()));
    }
    let n = psi.modulus();
    let residue_zero = is_in_isom_minus_infinity(&horospherical(k, psi)?);
    let mut combination = FormalCombination::zero(n, k);
    for (t, c) in psi.support().filter(|(t, _)| t.t2 == 0) {
        combination.add_term(t.t1, c * &scale);
    }
    Ok(RegulatorFormula {
        combination,
        residue_zero,
    })
}

fn sign(k: usize) -> Rational {
    Rational::from_integer(if k % 2 == 1 { 1 } else { -1 })
}

/// `Dir_l(rho^k psi) = (-1)^(k+1)/(k! N) sum_t psi(t,0) c^k(zeta^t)`.
pub fn dir_l_coefficients(k: usize, psi: &Divisor) -> Result<RegulatorFormula<Cyclotomic>> {
    let scale =
        sign(k) / (Rational::factorial(k as u32) * Rational::from_integer(psi.modulus() as i64));
    assemble(k, psi, scale)
}

/// `r_H Dir(rho^k psi) = (-1)^(k+1) N^(k-1) sum_t psi(t,0) Li_{k+1}(sigma zeta^t)`.
pub fn hodge_coefficients(k: usize, psi: &Divisor) -> Result<RegulatorFormula<Polylog>> {
    let scale = sign(k) * Rational::from_integer(psi.modulus() as i64).pow(k as i32 - 1);
    assemble(k, psi, scale)
}
