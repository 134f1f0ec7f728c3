//! Identities in `L_t` that lead to the residue of the polylogarithm at a
//! torsion point `t = (a/N) tau + b/N`, and the residue itself.
//!
//! Loops based at `t` are transported from the base point near the origin
//! along a fixed path; that outer conjugation is the same on both sides of
//! every identity here, so all computations use the generators `e1, e2` at
//! the origin.  The path itself picks up `gamma1^a` under the monodromy.

use serde::Serialize;

use super::element::{ad_exp, ad_series, bch, LieElement};
use super::hall::{HallWord, Word};
use super::quotient::{to_polbar, PolBarElement};
use super::sym::{pr_project, SymTensor};
use super::word::{log_of_word, monodromy_t, GroupWord, Loop};
use crate::error::{Error, Result};
use crate::exact::{bernoulli_polynomial, z_over_expm1, PowerSeries, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieCheck {
    pub equal: bool,
    pub lhs: PolBarElement,
    pub rhs: PolBarElement,
}

impl LieCheck {
    fn new(lhs: PolBarElement, rhs: PolBarElement) -> Self {
        LieCheck {
            equal: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

fn check_point(a: u32, b: u32, n: u32) -> Result<()> {
    if n == 0 || a >= n || b >= n {
        return Err(Error::Precondition(format!(
            "need 0 <= a, b < N, got a={a}, b={b}, N={n}"
        )));
    }
    if a == 0 && b == 0 {
        return Err(Error::Precondition(
            "t = 0 is not a torsion section of E \\ 0".into(),
        ));
    }
    Ok(())
}

fn gens(d: usize) -> Result<(LieElement, LieElement)> {
    Ok((LieElement::generator(d, 1)?, LieElement::generator(d, 2)?))
}

/// `a e2 + b e1` with rational weights.
fn translation(d: usize, a: &Rational, b: &Rational) -> Result<LieElement> {
    let (e1, e2) = gens(d)?;
    Ok(&e2.scale(a) + &e1.scale(b))
}

/// `e^{-(a/N) ad_e2 - (b/N) ad_e1} u0` with `u0 = log phi0`.
pub fn u_tilde(a: u32, b: u32, n: u32, d: usize) -> Result<LieElement> {
    check_point(a, b, n)?;
    let u0 = log_of_word(&GroupWord::phi0(), d)?;
    let nq = Rational::from(n as i64);
    let shift = translation(
        d,
        &(-Rational::from(a as i64) / &nq),
        &(-Rational::from(b as i64) / &nq),
    )?;
    ad_exp(&shift, &u0)
}

/// Replays the invariance of `u_tilde` under `[N+1]`: that map scales the
/// exponent by `N+1`, fixes `u0`, and the path to `t` contributes
/// `e^{a ad_e2 + b ad_e1}`.
pub fn u_tilde_invariance_check(a: u32, b: u32, n: u32, d: usize) -> Result<bool> {
    let ut = u_tilde(a, b, n, d)?;
    let u0 = log_of_word(&GroupWord::phi0(), d)?;
    let scale = -Rational::new(n as i64 + 1, n as i64);
    let (aq, bq) = (Rational::from(a as i64), Rational::from(b as i64));
    let scaled = ad_exp(&translation(d, &(&aq * &scale), &(&bq * &scale))?, &u0)?;
    let moved = ad_exp(&translation(d, &aq, &bq)?, &scaled)?;
    Ok(moved == ut)
}

/// `(e^z - 1)/z` to the given order.
fn expm1_over_z(order: usize) -> Result<PowerSeries> {
    (&PowerSeries::exp_linear(&Rational::one(), order + 1) - &PowerSeries::one(order + 1))
        .shift_down()
}

/// `log exp(U + V) = log(exp(((e^{ad U} - 1)/ad U) V) exp U)` in `PolBar`,
/// for `V` in the ideal generated by `e1`.
pub fn verify_c39(u: &LieElement, v: &LieElement) -> Result<LieCheck> {
    let d = u.truncation();
    let e2 = HallWord::new(Word::letter(2)).expect("letters are Lyndon");
    if !v.coeff(&e2).is_zero() {
        return Err(Error::Precondition(
            "V must lie in the ideal generated by e1".into(),
        ));
    }
    let lhs = to_polbar(&(u + v))?;
    let w = ad_series(&expm1_over_z(d)?, u, v)?;
    let rhs = to_polbar(&bch(&w, u)?)?;
    Ok(LieCheck::new(lhs, rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum C310Identity {
    /// `u0 = (1 - e^z) e1`.
    BoundaryLoop,
    /// `T(e2) = e2 + (N z e^z / (e^z - 1)) e1`.
    MonodromyAtOrigin,
    /// `T(e2(t)) - N e1(t) - e2(t) = N sum_j B_{j+1}(a/N) z^j / j! u_tilde`.
    MonodromyAtTorsion,
}

impl C310Identity {
    pub fn number(self) -> u8 {
        match self {
            C310Identity::BoundaryLoop => 4,
            C310Identity::MonodromyAtOrigin => 6,
            C310Identity::MonodromyAtTorsion => 7,
        }
    }
}

impl TryFrom<u8> for C310Identity {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        match v {
            4 => Ok(C310Identity::BoundaryLoop),
            6 => Ok(C310Identity::MonodromyAtOrigin),
            7 => Ok(C310Identity::MonodromyAtTorsion),
            _ => Err(Error::Precondition(format!(
                "no identity ({v}); expected 4, 6 or 7"
            ))),
        }
    }
}

/// `log(gamma1^a T(gamma2) gamma1^-a) - N e1 - e2`: the left side of the
/// torsion monodromy identity with the outer path conjugation removed.
fn torsion_monodromy_lhs(a: u32, n: u32, d: usize) -> Result<LieElement> {
    let (e1, e2) = gens(d)?;
    let w = GroupWord::power(Loop::Gamma1, a as i64)
        .mul(&monodromy_t(&GroupWord::gamma2(), n as i64))
        .times(Loop::Gamma1, -(a as i64));
    Ok(&(&log_of_word(&w, d)? - &e1.scale(&Rational::from(n as i64))) - &e2)
}

/// `N sum_j B_{j+1}(a/N) z^j / j!`.
fn torsion_bernoulli_series(a: u32, n: u32, order: usize) -> PowerSeries {
    let x = Rational::new(a as i64, n as i64);
    let nq = Rational::from(n as i64);
    PowerSeries::from_coeffs(
        (0..=order)
            .map(|j| &nq * bernoulli_polynomial(j + 1).eval(&x) / Rational::factorial(j as u32))
            .collect(),
        order,
    )
}

/// One of the identities (4), (6), (7) in `PolBar` at truncation `d`.
/// Identity (7) is checked for every `b` with `(a, b) != (0, 0)`; the
/// reported sides belong to the first failing `b`, or the first `b`.
pub fn verify_c310(identity: C310Identity, a: u32, n: u32, d: usize) -> Result<LieCheck> {
    if d < 3 {
        return Err(Error::TruncationTooSmall { have: d, need: 3 });
    }
    if n == 0 {
        return Err(Error::Precondition("N must be positive".into()));
    }
    let (e1, e2) = gens(d)?;
    let one = PowerSeries::one(d);
    let exp = PowerSeries::exp_linear(&Rational::one(), d);
    match identity {
        C310Identity::BoundaryLoop => {
            let lhs = to_polbar(&log_of_word(&GroupWord::phi0(), d)?)?;
            let rhs = to_polbar(&ad_series(&(&one - &exp), &e2, &e1)?)?;
            Ok(LieCheck::new(lhs, rhs))
        }
        C310Identity::MonodromyAtOrigin => {
            let lhs = to_polbar(&log_of_word(
                &monodromy_t(&GroupWord::gamma2(), n as i64),
                d,
            )?)?;
            let series = (&exp * &z_over_expm1(d)?).scale(&Rational::from(n as i64));
            let rhs = to_polbar(&(&e2 + &ad_series(&series, &e2, &e1)?))?;
            Ok(LieCheck::new(lhs, rhs))
        }
        C310Identity::MonodromyAtTorsion => {
            if a >= n {
                return Err(Error::Precondition(format!(
                    "need 0 <= a < N, got a={a}, N={n}"
                )));
            }
            let lhs = to_polbar(&torsion_monodromy_lhs(a, n, d)?)?;
            let series = torsion_bernoulli_series(a, n, d);
            let mut first = None;
            for b in (0..n).filter(|&b| a != 0 || b != 0) {
                let rhs = to_polbar(&ad_series(&series, &e2, &u_tilde(a, b, n, d)?)?)?;
                let check = LieCheck::new(lhs.clone(), rhs);
                if !check.equal {
                    return Ok(check);
                }
                first.get_or_insert(check);
            }
            first
                .ok_or_else(|| Error::Precondition(format!("no torsion point with a={a} at N={n}")))
        }
    }
}

/// `-N/((k+2) k!) B_{k+2}(a/N)`.
pub fn closed_form_residue(k: usize, a: u32, n: u32) -> Rational {
    closed_form_with(k + 2, k, a, n)
}

fn closed_form_with(bernoulli_index: usize, k: usize, a: u32, n: u32) -> Rational {
    -Rational::from(n as i64) / (Rational::from(k as i64 + 2) * Rational::factorial(k as u32))
        * bernoulli_polynomial(bernoulli_index).eval(&Rational::new(a as i64, n as i64))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueReport {
    pub k: usize,
    #[serde(rename = "N")]
    pub n: u32,
    pub a: u32,
    #[serde(rename = "D")]
    pub d: usize,
    /// `r_j` read off the torsion monodromy identity, `j = 0..=k+1`.
    pub coefficients: Vec<Rational>,
    /// Whether every `r_j` equals `N/j! B_{j+1}(a/N)`.
    pub coefficients_match: bool,
    pub lie_value: Rational,
    pub closed_form: Rational,
    pub equal: bool,
    /// The same closed form with `B_k` in place of `B_{k+2}`.
    pub alternative_closed_form: Rational,
    pub matches_alternative: bool,
}

/// The residue at the cusp of the weight `k+1` component of the polylogarithm
/// pulled back along `t = (a/N) tau + 1/N`, from the Lie side, next to its
/// closed form.
pub fn residue_at_torsion(k: usize, a: u32, n: u32, d: usize) -> Result<ResidueReport> {
    if d < k + 3 {
        return Err(Error::TruncationTooSmall {
            have: d,
            need: k + 3,
        });
    }
    if n < 2 || a >= n {
        return Err(Error::Precondition(format!(
            "need N >= 2 and 0 <= a < N, got a={a}, N={n}"
        )));
    }
    let lhs = to_polbar(&torsion_monodromy_lhs(a, n, d)?)?;
    let ut = to_polbar(&u_tilde(a, 1, n, d)?)?;
    if !ut.e2().is_zero()
        || !ut.z(0).is_zero()
        || ut.z(1).is_zero()
        || !lhs.e2().is_zero()
        || !lhs.z(0).is_zero()
    {
        return Err(Error::Internal(
            "u_tilde or the monodromy defect has an unexpected leading term".into(),
        ));
    }
    // lhs_{m} = sum_{j < m} r_j ut_{m-j}, triangular with diagonal ut_1.
    let lead = ut.z(1);
    let mut r: Vec<Rational> = Vec::with_capacity(k + 2);
    for j in 0..=k + 1 {
        let known: Rational = (0..j).map(|i| &r[i] * ut.z(j + 1 - i)).sum();
        r.push((lhs.z(j + 1) - known) / &lead);
    }
    let nq = Rational::from(n as i64);
    let x = Rational::new(a as i64, n as i64);
    let coefficients_match = r.iter().enumerate().all(|(j, rj)| {
        *rj == &nq / Rational::factorial(j as u32) * bernoulli_polynomial(j + 1).eval(&x)
    });

    // The residue is the class of -r_{k+1} e2^(k+1) in the (id - T)
    // complex, contracted by pr against e2^vee.
    let top = SymTensor::monomial(k + 1, 0, -r[k + 1].clone());
    let lie_value = pr_project(2, &top)?.coeff(0).clone();
    let closed_form = closed_form_residue(k, a, n);
    let alternative_closed_form = closed_form_with(k, k, a, n);
    Ok(ResidueReport {
        k,
        n,
        a,
        d,
        coefficients: r,
        coefficients_match,
        equal: lie_value == closed_form,
        matches_alternative: lie_value == alternative_closed_form,
        lie_value,
        closed_form,
        alternative_closed_form,
    })
}
