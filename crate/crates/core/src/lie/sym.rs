//! Symmetric tensors in `e1, e2` and the contraction `pr`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// `sum_i c_i e1^i e2^(m-i)` in `Sym^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymTensor {
    coeffs: Vec<Rational>,
}

impl SymTensor {
    pub fn zero(m: usize) -> Self {
        SymTensor {
            coeffs: vec![Rational::zero(); m + 1],
        }
    }

    /// `c e1^i e2^(m-i)`.
    pub fn monomial(m: usize, i: usize, c: Rational) -> Self {
        assert!(i <= m, "e1-degree exceeds weight");
        let mut t = Self::zero(m);
        t.coeffs[i] = c;
        t
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "weight needs at least one coefficient");
        SymTensor { coeffs }
    }

    pub fn weight(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `e1^i e2^(m-i)`.
    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn add(&self, other: &SymTensor) -> SymTensor {
        assert_eq!(self.weight(), other.weight(), "weight mismatch");
        SymTensor {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Multiplication by `e1` or `e2`.
    pub fn times_generator(&self, i: u8) -> SymTensor {
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[if i == 1 { j + 1 } else { j }] = c.clone();
        }
        SymTensor { coeffs }
    }
}

/// `pr(e_i^vee (x) x)` for `x` of weight `m >= 1`: the sum over deletions of
/// one `e_i` factor, divided by `m + 1`.  So `e1^j e2^(m-j)` goes to
/// `j/(m+1) e1^(j-1) e2^(m-j)` for `i = 1` and to `(m-j)/(m+1) e1^j e2^(m-j-1)`
/// for `i = 2`.
pub fn pr_project(dual_index: u8, x: &SymTensor) -> Result<SymTensor> {
    let m = x.weight();
    if m == 0 {
        return Err(Error::Precondition("pr needs weight >= 1".into()));
    }
    if dual_index != 1 && dual_index != 2 {
        return Err(Error::Precondition(format!(
            "no dual basis vector e{dual_index}^vee"
        )));
    }
    let denom = (m + 1) as i64;
    let mut out = SymTensor::zero(m - 1);
    for (j, c) in x.coeffs.iter().enumerate() {
        if dual_index == 1 && j >= 1 {
            out.coeffs[j - 1] += c * Rational::new(j as i64, denom);
        } else if dual_index == 2 && j < m {
            out.coeffs[j] += c * Rational::new((m - j) as i64, denom);
        }
    }
    Ok(out)
}

/// `mu^vee(x) = e1^vee (x) e1 x + e2^vee (x) e2 x`, as its two components.
pub fn mu_dual(x: &SymTensor) -> (SymTensor, SymTensor) {
    (x.times_generator(1), x.times_generator(2))
}
