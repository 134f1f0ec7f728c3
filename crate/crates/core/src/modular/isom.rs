use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use super::divisor::Divisor;
use super::group::{group_tables, reduce, GroupTables, ModMatrix, TorsionPoint};
use crate::error::{Error, Result};
use crate::exact::{periodic_bernoulli, Rational};

/// A function on `GL2(Z/N)` that is left `P(Z/N)`-invariant and has parity
/// `(-1)^k` under `-id`, stored by its values on canonical coset
/// representatives.
#[derive(Clone, Debug)]
pub struct IsomFunction {
    tables: Arc<GroupTables>,
    parity: u8,
    values: Vec<Rational>,
}

impl PartialEq for IsomFunction {
    fn eq(&self, other: &Self) -> bool {
        self.tables.n == other.tables.n
            && self.parity == other.parity
            && self.values == other.values
    }
}

impl Eq for IsomFunction {}

impl IsomFunction {
    pub fn zero(n: u32, k: usize) -> Result<Self> {
        let tables = group_tables(n)?;
        let values = vec![Rational::zero(); tables.cosets.len()];
        Ok(IsomFunction {
            tables,
            parity: (k % 2) as u8,
            values,
        })
    }

    /// Builds the function from its values on the coset representatives and
    /// checks the `-id` parity.
    pub fn from_fn(n: u32, k: usize, f: impl Fn(&ModMatrix) -> Rational) -> Result<Self> {
        let tables = group_tables(n)?;
        let values: Vec<Rational> = tables.cosets.iter().map(f).collect();
        let out = IsomFunction {
            tables,
            parity: (k % 2) as u8,
            values,
        };
        out.check_parity()?;
        Ok(out)
    }

    fn check_parity(&self) -> Result<()> {
        let sign = if self.parity == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        for (i, v) in self.values.iter().enumerate() {
            let j = self.tables.negation[i];
            if self.values[j] != v * &sign {
                return Err(Error::Internal(format!(
                    "parity violated at coset {:?}: f(g) = {}, f(-g) = {}",
                    self.tables.cosets[i], v, self.values[j]
                )));
            }
        }
        Ok(())
    }

    pub fn modulus(&self) -> u32 {
        self.tables.n
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn tables(&self) -> &GroupTables {
        &self.tables
    }

    /// Value at an arbitrary group element, through its coset.
    pub fn eval(&self, g: &ModMatrix) -> Result<Rational> {
        if g.modulus() != self.tables.n {
            return Err(Error::ModulusMismatch(self.tables.n, g.modulus()));
        }
        Ok(self.values[self.tables.coset_index(g)].clone())
    }

    pub fn values(&self) -> impl Iterator<Item = (&ModMatrix, &Rational)> {
        self.tables.cosets.iter().zip(self.values.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Rational::is_zero)
    }
}

#[derive(Serialize)]
struct IsomEntry<'a> {
    representative: &'a ModMatrix,
    value: &'a Rational,
}

impl Serialize for IsomFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.values.len()))?;
        for (g, v) in self.values() {
            seq.serialize_element(&IsomEntry {
                representative: g,
                value: v,
            })?;
        }
        seq.end()
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    #[serde(rename = "N")]
    n: u32,
    rows: [[i64; 2]; 2],
}

impl Serialize for ModMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let [[a, b], [c, d]] = self.rows();
        MatrixJson {
            n: self.modulus(),
            rows: [[a as i64, b as i64], [c as i64, d as i64]],
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ModMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        ModMatrix::new(raw.n, raw.rows).map_err(serde::de::Error::custom)
    }
}

/// `N^k / (k! (k+2))`.
fn horospherical_prefactor(k: usize, n: u32) -> Rational {
    Rational::from_integer(n as i64).pow(k as i32)
        / (Rational::factorial(k as u32) * Rational::from_integer(k as i64 + 2))
}

/// `B_{k+2}(j/N)` for `j = 0..N`.
fn bernoulli_row(k: usize, n: u32) -> Vec<Rational> {
    (0..n)
        .map(|j| periodic_bernoulli(k + 2, &Rational::new(j as i64, n as i64)))
        .collect()
}

/// The horospherical map evaluated literally at `g`:
/// `N^k/(k!(k+2)) sum_t psi(g^-1 t) B_{k+2}(t2/N)` over all of `(Z/N)^2`.
pub fn horospherical_value(k: usize, psi: &Divisor, g: &ModMatrix) -> Result<Rational> {
    let n = psi.modulus();
    if g.modulus() != n {
        return Err(Error::ModulusMismatch(n, g.modulus()));
    }
    let ginv = g.inverse();
    let brow = bernoulli_row(k, n);
    let mut acc = Rational::zero();
    for t1 in 0..n {
        for t2 in 0..n {
            let t = TorsionPoint { n, t1, t2 };
            let c = psi.get(&ginv.act_unchecked(&t));
            if !c.is_zero() {
                acc += c * &brow[t2 as usize];
            }
        }
    }
    Ok(acc * horospherical_prefactor(k, n))
}

/// The horospherical map `psi -> rho^k(psi)`, evaluated on every coset
/// representative through `sum_s psi(s) B_{k+2}((g s)_2 / N)`.
pub fn horospherical(k: usize, psi: &Divisor) -> Result<IsomFunction> {
    let n = psi.modulus();
    let brow = bernoulli_row(k, n);
    let pre = horospherical_prefactor(k, n);
    IsomFunction::from_fn(n, k, |g| {
        let s: Rational = psi
            .support()
            .map(|(t, c)| c * &brow[g.act_unchecked(t).t2 as usize])
            .sum();
        s * &pre
    })
}

/// Signed indicator of `+-P`: 1 on `P`, `(-1)^k` on `-P`, 0 elsewhere.
pub fn phi_infinity(k: usize, n: u32) -> Result<IsomFunction> {
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    IsomFunction::from_fn(n, k, |g| match g.second_row() {
        (0, 1) => Rational::one(),
        (0, d) if d == n - 1 => Rational::from_integer(sign),
        _ => Rational::zero(),
    })
}

/// Whether `f` vanishes on the cosets of `P` and `-P` (residue zero at infinity).
pub fn is_in_isom_minus_infinity(f: &IsomFunction) -> bool {
    let t = f.tables();
    f.values[t.identity_coset()].is_zero() && f.values[t.minus_identity_coset()].is_zero()
}

/// `(-1)^(k+1)/N^(k-1) (u,0) - (-1)^(k+1) N^2/(1-N^(k+1)) sum_{v != 0} (u,v)`.
pub fn psi_u(k: usize, u: i64, n: u32) -> Result<Divisor> {
    if k == 0 {
        return Err(Error::Precondition("psi_u needs k >= 1".into()));
    }
    let u_red = reduce(u, n.max(1));
    if u_red == 0 {
        return Err(Error::ZeroResidue(u, n));
    }
    let nq = Rational::from_integer(n as i64);
    let sign = Rational::from_integer(if k % 2 == 1 { 1 } else { -1 });
    let head = &sign / nq.pow(k as i32 - 1);
    let tail = -(&sign * nq.pow(2)) / (Rational::one() - nq.pow(k as i32 + 1));
    let mut psi = Divisor::zero(n)?;
    psi.set(TorsionPoint::new(n, u, 0), head)?;
    for v in 1..n as i64 {
        psi.set(TorsionPoint::new(n, u, v), tail.clone())?;
    }
    Ok(psi)
}

/// Closed form of the residue at `g` of the polylogarithm pulled back along
/// the torsion point `t`: `-N/((k+2) k!) B_{k+2}((g t)_2 / N)`.
pub fn torsion_residue(k: usize, g: &ModMatrix, t: &TorsionPoint) -> Result<Rational> {
    let n = g.modulus();
    let gt = g.act(t)?;
    Ok(-Rational::from_integer(n as i64)
        / (Rational::from_integer(k as i64 + 2) * Rational::factorial(k as u32))
        * periodic_bernoulli(k + 2, &Rational::new(gt.t2 as i64, n as i64)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyCheck {
    pub equal: bool,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Compares `rho^k(psi)(g)` (literal form) with
/// `-N^(k-1) sum_t psi(t) * torsion_residue(k, g, t)`.
pub fn residue_consistency_check(
    k: usize,
    psi: &Divisor,
    g: &ModMatrix,
) -> Result<ConsistencyCheck> {
    let n = psi.modulus();
    let lhs = horospherical_value(k, psi, g)?;
    let mut acc = Rational::zero();
    for (t, c) in psi.support() {
        acc += c * torsion_residue(k, g, t)?;
    }
    let rhs = -Rational::from_integer(n as i64).pow(k as i32 - 1) * acc;
    Ok(ConsistencyCheck {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn horospherical_examples() {
        let psi = Divisor::delta(3, 1, 0, Rational::one()).unwrap();
        let f = horospherical(1, &psi).unwrap();
        let id = ModMatrix::identity(3).unwrap();
        let rot = ModMatrix::new(3, [[0, -1], [1, 0]]).unwrap();
        assert_eq!(f.eval(&id).unwrap(), q(0, 1));
        assert_eq!(f.eval(&rot).unwrap(), q(1, 27));
        assert_eq!(horospherical_value(1, &psi, &rot).unwrap(), q(1, 27));
        assert!(horospherical(2, &Divisor::zero(3).unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn phi_infinity_values() {
        for k in 0..3 {
            let f = phi_infinity(k, 3).unwrap();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(f.eval(&ModMatrix::identity(3).unwrap()).unwrap(), q(1, 1));
            assert_eq!(
                f.eval(&ModMatrix::minus_identity(3).unwrap()).unwrap(),
                q(sign, 1)
            );
            assert!(!is_in_isom_minus_infinity(&f));
        }
        let rot = ModMatrix::new(3, [[0, -1], [1, 0]]).unwrap();
        assert_eq!(phi_infinity(1, 3).unwrap().eval(&rot).unwrap(), q(0, 1));
        assert!(is_in_isom_minus_infinity(
            &IsomFunction::zero(3, 1).unwrap()
        ));
    }

    #[test]
    fn psi_u_examples() {
        let p = psi_u(1, 1, 3).unwrap();
        assert_eq!(p.value(1, 0), q(1, 1));
        assert_eq!(p.value(1, 1), q(9, 8));
        assert_eq!(p.value(2, 1), q(0, 1));
        assert_eq!(psi_u(2, 2, 3).unwrap().value(2, 0), q(-1, 3));
        assert_eq!(psi_u(1, 3, 3).unwrap_err(), Error::ZeroResidue(3, 3));
        assert!(is_in_isom_minus_infinity(&horospherical(1, &p).unwrap()));
    }

    #[test]
    fn consistency_examples() {
        let psi = Divisor::delta(3, 1, 0, Rational::one()).unwrap();
        let id = ModMatrix::identity(3).unwrap();
        let c = residue_consistency_check(1, &psi, &id).unwrap();
        assert!(c.equal);
        assert_eq!(c.lhs, q(0, 1));
        let scaled = psi.scale(&q(7, 5));
        let rot = ModMatrix::new(3, [[0, -1], [1, 0]]).unwrap();
        let c = residue_consistency_check(1, &scaled, &rot).unwrap();
        assert!(c.equal);
        assert_eq!(c.lhs, q(7, 135));
    }

    #[test]
    fn isom_json_shape() {
        let f = phi_infinity(0, 3).unwrap();
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(
            v[0]["representative"]["rows"],
            serde_json::json!([[0, 1], [1, 0]])
        );
        assert_eq!(v.as_array().unwrap().len(), 8);
    }
}
