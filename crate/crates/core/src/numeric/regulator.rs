//! Numeric side of the Hodge regulator: classes in `C/R(k)` and the checks
//! built on `Li_{k+1}` at roots of unity.
//!
//! Regulator values of weight `k+1` polylogarithms are compared as classes
//! modulo `R(k+1) = (2 pi i)^(k+1) R`.

use num_integer::Integer;
use serde::Serialize;

use super::fixed::{BigComplex, BigReal};
use super::zeta::{li_at_root_of_unity, Estimate};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::modular::{hodge_coefficients, horospherical, psi_u, Divisor};

/// The representative `(w + (-1)^(k+1) conj(w))/2` of `w` modulo `R(k)`:
/// `Re w` for odd `k`, `i Im w` for even `k`.
pub fn proj_mod_rk(k: i64, w: &BigComplex) -> BigComplex {
    let bits = w.bits();
    if k.rem_euclid(2) == 1 {
        BigComplex::new(w.re.clone(), BigReal::zero(bits))
    } else {
        BigComplex::new(BigReal::zero(bits), w.im.clone())
    }
}

/// The embedding `sigma_j: zeta -> e^{2 pi i j/N}` of `Q(mu_N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EmbeddingIndex {
    pub j: u32,
    #[serde(rename = "N")]
    pub n: u32,
}

impl EmbeddingIndex {
    pub fn new(j: i64, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("N must be positive".into()));
        }
        let j = j.rem_euclid(n as i64) as u32;
        if j.gcd(&n) != 1 {
            return Err(Error::Precondition(format!(
                "j = {j} is not a unit mod {n}"
            )));
        }
        Ok(EmbeddingIndex { j, n })
    }
}

/// All `sigma_j` with `gcd(j, N) = 1`, increasing in `j`.
pub fn embeddings(n: u32) -> Vec<EmbeddingIndex> {
    (1..=n.max(1))
        .filter_map(|j| EmbeddingIndex::new(j as i64, n).ok())
        .collect()
}

/// `sum_u q_u Li_w(sigma(zeta^u))`.
fn li_combination(
    w: u32,
    terms: &[(u32, Rational)],
    sigma: EmbeddingIndex,
    precision_bits: u32,
) -> Result<Estimate> {
    let bits = super::zeta::working_bits(precision_bits);
    let mut value = BigComplex::zero(bits);
    let mut err = 0f64;
    for (u, q) in terms {
        let li = li_at_root_of_unity(
            w,
            sigma.j as i64 * *u as i64,
            sigma.n as u64,
            precision_bits,
        )?;
        value = &value + &li.value.mul_rational(q);
        err += q.to_f64().abs() * li.error_bound + 2f64.powi(-(bits as i32));
    }
    Ok(Estimate {
        value,
        error_bound: err,
        precision_bits,
    })
}

/// `psi(t, 0)` for `t != 0`, in increasing `t`.
fn on_identity_line(psi: &Divisor) -> Vec<(u32, Rational)> {
    psi.support()
        .filter(|(t, _)| t.t2 == 0)
        .map(|(t, c)| (t.t1, c.clone()))
        .collect()
}

/// The class mod `R(k+1)` of `r_H Dir(rho^k psi)` at `sigma`, from
/// `(-1)^(k+1) N^(k-1) sum_t psi(t,0) Li_{k+1}(sigma zeta^t)`.
pub fn regulator_value(
    k: usize,
    psi: &Divisor,
    sigma: EmbeddingIndex,
    precision_bits: u32,
) -> Result<Estimate> {
    check_sigma(psi, sigma)?;
    let formula = hodge_coefficients(k, psi)?;
    let terms: Vec<(u32, Rational)> = formula
        .combination
        .terms()
        .map(|(u, c)| (u, c.clone()))
        .collect();
    let raw = li_combination(k as u32 + 1, &terms, sigma, precision_bits)?;
    Ok(Estimate {
        value: proj_mod_rk(k as i64 + 1, &raw.value),
        ..raw
    })
}

fn check_sigma(psi: &Divisor, sigma: EmbeddingIndex) -> Result<()> {
    if psi.modulus() != sigma.n {
        return Err(Error::ModulusMismatch(psi.modulus(), sigma.n));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelResidual {
    pub in_kernel: bool,
    pub value: Estimate,
    pub magnitude: f64,
}

/// `|sum_t psi(t,0) Li_{k+1}(sigma zeta^t)|` modulo `R(k+1)`; zero when
/// `rho^k psi = 0`.  `in_kernel` records whether that hypothesis holds.
pub fn kernel_relation_residual(
    k: usize,
    psi: &Divisor,
    sigma: EmbeddingIndex,
    precision_bits: u32,
) -> Result<KernelResidual> {
    if k == 0 {
        return Err(Error::Precondition("kernel relations need k >= 1".into()));
    }
    check_sigma(psi, sigma)?;
    let in_kernel = horospherical(k, psi)?.is_zero();
    let raw = li_combination(k as u32 + 1, &on_identity_line(psi), sigma, precision_bits)?;
    let value = Estimate {
        value: proj_mod_rk(k as i64 + 1, &raw.value),
        ..raw
    };
    Ok(KernelResidual {
        in_kernel,
        magnitude: value.value.abs_f64(),
        value,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cor144Check {
    pub lhs: Estimate,
    pub rhs: Estimate,
    pub difference: f64,
    pub error_bound: f64,
}

impl Cor144Check {
    /// `|lhs - rhs| + error bound < tolerance`.
    pub fn passes(&self, tolerance: f64) -> bool {
        self.difference + self.error_bound < tolerance
    }
}

/// The regulator formula applied to `psi_u^k` against the class of
/// `Li_{k+1}(sigma(zeta^u))`.
pub fn verify_cor144(
    k: usize,
    u: i64,
    n: u32,
    sigma: EmbeddingIndex,
    precision_bits: u32,
) -> Result<Cor144Check> {
    let psi = psi_u(k, u, n)?;
    let lhs = regulator_value(k, &psi, sigma, precision_bits)?;
    let li = li_at_root_of_unity(k as u32 + 1, sigma.j as i64 * u, n as u64, precision_bits)?;
    let rhs = Estimate {
        value: proj_mod_rk(k as i64 + 1, &li.value),
        ..li
    };
    let difference = (&lhs.value - &rhs.value).abs_f64();
    Ok(Cor144Check {
        error_bound: lhs.error_bound + rhs.error_bound,
        difference,
        lhs,
        rhs,
    })
}

/// JSON record of one numeric value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumericReport {
    pub k: usize,
    #[serde(rename = "N")]
    pub n: u32,
    pub embedding: u32,
    pub value_re: String,
    pub value_im: String,
    pub precision_bits: u32,
    pub error_budget: String,
}

impl NumericReport {
    pub fn new(k: usize, sigma: EmbeddingIndex, e: &Estimate) -> Self {
        let digits = (e.precision_bits as f64 * std::f64::consts::LOG10_2).floor() as usize;
        NumericReport {
            k,
            n: sigma.n,
            embedding: sigma.j,
            value_re: e.value.re.to_decimal(digits),
            value_im: e.value.im.to_decimal(digits),
            precision_bits: e.precision_bits,
            error_budget: format!("{:.3e}", e.error_bound),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::new(
            BigReal::from_rational(&Rational::from_integer((re * 1000.0) as i64), 64).div_int(1000),
            BigReal::from_rational(&Rational::from_integer((im * 1000.0) as i64), 64).div_int(1000),
        )
    }

    #[test]
    fn projection_examples() {
        assert_eq!(proj_mod_rk(1, &c(3.0, 4.0)), c(3.0, 0.0));
        assert_eq!(proj_mod_rk(2, &c(3.0, 4.0)), c(0.0, 4.0));
        assert!(proj_mod_rk(2, &c(5.0, 0.0)).abs_f64() == 0.0);
        assert!(proj_mod_rk(1, &c(0.0, 5.0)).abs_f64() == 0.0);
    }

    #[test]
    fn embeddings_are_units() {
        assert_eq!(
            embeddings(5).iter().map(|e| e.j).collect::<Vec<_>>(),
            [1, 2, 3, 4]
        );
        assert_eq!(
            embeddings(4).iter().map(|e| e.j).collect::<Vec<_>>(),
            [1, 3]
        );
        assert!(EmbeddingIndex::new(2, 4).is_err());
    }

    #[test]
    fn cor144_small() {
        let s = EmbeddingIndex::new(1, 3).unwrap();
        let chk = verify_cor144(1, 1, 3, s, 128).unwrap();
        assert!(chk.passes(1e-30));
    }

    #[test]
    fn zero_divisor_residual() {
        let s = EmbeddingIndex::new(1, 3).unwrap();
        let r = kernel_relation_residual(1, &Divisor::zero(3).unwrap(), s, 64).unwrap();
        assert!(r.in_kernel);
        assert_eq!(r.magnitude, 0.0);
    }
}
