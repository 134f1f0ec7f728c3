use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn check_modulus(n: u32) -> Result<()> {
    if n < 3 {
        Err(Error::ModulusTooSmall(n))
    } else {
        Ok(())
    }
}

pub(crate) fn reduce(x: i64, n: u32) -> u32 {
    x.rem_euclid(n as i64) as u32
}

pub(crate) fn is_unit(x: i64, n: u32) -> bool {
    x.gcd(&(n as i64)) == 1
}

/// Inverse of a unit mod n.
pub(crate) fn inverse_mod(x: i64, n: u32) -> Option<u32> {
    let n64 = n as i64;
    let e = x.rem_euclid(n64).extended_gcd(&n64);
    (e.gcd == 1).then(|| reduce(e.x, n))
}

/// An N-torsion point `(t1, t2)` of `(Z/N)^2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TorsionPoint {
    pub n: u32,
    pub t1: u32,
    pub t2: u32,
}

impl TorsionPoint {
    pub fn new(n: u32, t1: i64, t2: i64) -> Self {
        TorsionPoint {
            n,
            t1: reduce(t1, n),
            t2: reduce(t2, n),
        }
    }

    pub fn is_origin(&self) -> bool {
        self.t1 == 0 && self.t2 == 0
    }

    pub fn neg(&self) -> Self {
        TorsionPoint::new(self.n, -(self.t1 as i64), -(self.t2 as i64))
    }
}

impl fmt::Debug for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}) mod {}", self.t1, self.t2, self.n)
    }
}

/// All points of `(Z/N)^2 \ {0}` in lexicographic order of `(t1, t2)`.
pub fn nonzero_points(n: u32) -> Vec<TorsionPoint> {
    (0..n)
        .flat_map(|t1| (0..n).map(move |t2| TorsionPoint { n, t1, t2 }))
        .filter(|p| !p.is_origin())
        .collect()
}

/// Element `(a b; c d)` of `GL2(Z/N)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    n: u32,
    a: u32,
    b: u32,
    c: u32,
    d: u32,
}

impl ModMatrix {
    /// Rejects non-invertible matrices and moduli below 3.
    pub fn new(n: u32, rows: [[i64; 2]; 2]) -> Result<Self> {
        check_modulus(n)?;
        let m = ModMatrix {
            n,
            a: reduce(rows[0][0], n),
            b: reduce(rows[0][1], n),
            c: reduce(rows[1][0], n),
            d: reduce(rows[1][1], n),
        };
        let det = m.det();
        if !is_unit(det as i64, n) {
            return Err(Error::NotInvertible(n, det as i64));
        }
        Ok(m)
    }

    pub fn identity(n: u32) -> Result<Self> {
        Self::new(n, [[1, 0], [0, 1]])
    }

    pub fn minus_identity(n: u32) -> Result<Self> {
        Self::new(n, [[-1, 0], [0, -1]])
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> [[u32; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    /// Entries `(a, b, c, d)`; also the canonical lexicographic sort key.
    pub fn entries(&self) -> (u32, u32, u32, u32) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn second_row(&self) -> (u32, u32) {
        (self.c, self.d)
    }

    pub fn det(&self) -> u32 {
        reduce(
            self.a as i64 * self.d as i64 - self.b as i64 * self.c as i64,
            self.n,
        )
    }

    pub fn mul(&self, rhs: &ModMatrix) -> Result<ModMatrix> {
        if self.n != rhs.n {
            return Err(Error::ModulusMismatch(self.n, rhs.n));
        }
        let (a, b, c, d) = (self.a as i64, self.b as i64, self.c as i64, self.d as i64);
        let (e, f, g, h) = (rhs.a as i64, rhs.b as i64, rhs.c as i64, rhs.d as i64);
        ModMatrix::new(
            self.n,
            [
                [a * e + b * g, a * f + b * h],
                [c * e + d * g, c * f + d * h],
            ],
        )
    }

    pub fn inverse(&self) -> ModMatrix {
        let di = inverse_mod(self.det() as i64, self.n).expect("determinant is a unit") as i64;
        let (a, b, c, d) = (self.a as i64, self.b as i64, self.c as i64, self.d as i64);
        ModMatrix::new(self.n, [[d * di, -b * di], [-c * di, a * di]])
            .expect("inverse is invertible")
    }

    pub fn neg(&self) -> ModMatrix {
        let (a, b, c, d) = (self.a as i64, self.b as i64, self.c as i64, self.d as i64);
        ModMatrix::new(self.n, [[-a, -b], [-c, -d]]).expect("negation preserves invertibility")
    }

    /// Whether the matrix lies in `P = (* *; 0 1)`.
    pub fn in_parabolic(&self) -> bool {
        self.c == 0 && self.d == 1
    }

    /// Matrix times column vector.
    pub fn act(&self, t: &TorsionPoint) -> Result<TorsionPoint> {
        if self.n != t.n {
            return Err(Error::ModulusMismatch(self.n, t.n));
        }
        Ok(self.act_unchecked(t))
    }

    pub(crate) fn act_unchecked(&self, t: &TorsionPoint) -> TorsionPoint {
        let n = self.n as u64;
        let (t1, t2) = (t.t1 as u64, t.t2 as u64);
        TorsionPoint {
            n: self.n,
            t1: ((self.a as u64 * t1 + self.b as u64 * t2) % n) as u32,
            t2: ((self.c as u64 * t1 + self.d as u64 * t2) % n) as u32,
        }
    }
}

impl PartialOrd for ModMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ModMatrix {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.entries()).cmp(&(other.n, other.entries()))
    }
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} {}; {} {}) mod {}",
            self.a, self.b, self.c, self.d, self.n
        )
    }
}

/// Group and coset tables for one modulus, built once and shared.
#[derive(Debug)]
pub struct GroupTables {
    pub n: u32,
    /// All of `GL2(Z/N)` in lexicographic order.
    pub elements: Vec<ModMatrix>,
    /// `P(Z/N)` in lexicographic order.
    pub parabolic: Vec<ModMatrix>,
    /// Canonical (lexicographically smallest) representative of each coset `Pg`, sorted.
    pub cosets: Vec<ModMatrix>,
    coset_of_row: HashMap<(u32, u32), usize>,
    /// Index of the coset of `-id * g` for the coset `g`.
    pub negation: Vec<usize>,
}

impl GroupTables {
    fn build(n: u32) -> Result<Self> {
        check_modulus(n)?;
        let mut elements = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let det = a as i64 * d as i64 - b as i64 * c as i64;
                        if is_unit(det, n) {
                            elements.push(ModMatrix { n, a, b, c, d });
                        }
                    }
                }
            }
        }
        let parabolic: Vec<_> = elements
            .iter()
            .copied()
            .filter(ModMatrix::in_parabolic)
            .collect();
        // Left multiplication by P preserves the second row, and P acts
        // transitively on matrices sharing it, so Pg is indexed by (c, d).
        let mut smallest: HashMap<(u32, u32), ModMatrix> = HashMap::new();
        for g in &elements {
            smallest.entry(g.second_row()).or_insert(*g);
        }
        let mut cosets: Vec<ModMatrix> = smallest.into_values().collect();
        cosets.sort();
        let coset_of_row: HashMap<_, _> = cosets
            .iter()
            .enumerate()
            .map(|(i, g)| (g.second_row(), i))
            .collect();
        let negation = cosets
            .iter()
            .map(|g| coset_of_row[&g.neg().second_row()])
            .collect();
        Ok(GroupTables {
            n,
            elements,
            parabolic,
            cosets,
            coset_of_row,
            negation,
        })
    }

    /// Index of the coset `Pg` in `cosets`.
    pub fn coset_index(&self, g: &ModMatrix) -> usize {
        self.coset_of_row[&g.second_row()]
    }

    pub fn representative(&self, g: &ModMatrix) -> ModMatrix {
        self.cosets[self.coset_index(g)]
    }

    pub fn identity_coset(&self) -> usize {
        self.coset_of_row[&(0, 1)]
    }

    pub fn minus_identity_coset(&self) -> usize {
        self.coset_of_row[&(0, self.n - 1)]
    }

    /// `dim Q[Isom]^(k)`: one dimension per orbit of `-id` on the cosets,
    /// except fixed cosets when k is odd.
    pub fn isom_dimension(&self, k: usize) -> usize {
        (0..self.cosets.len())
            .filter(|&i| {
                let j = self.negation[i];
                if j == i {
                    k.is_multiple_of(2)
                } else {
                    i < j
                }
            })
            .count()
    }
}

/// Shared tables for modulus `n`.
pub fn group_tables(n: u32) -> Result<Arc<GroupTables>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<GroupTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("group cache poisoned").get(&n) {
        return Ok(Arc::clone(t));
    }
    let built = Arc::new(GroupTables::build(n)?);
    let mut guard = cache.lock().expect("group cache poisoned");
    Ok(Arc::clone(guard.entry(n).or_insert(built)))
}

/// One canonical representative per coset `P(Z/N) g`, in lexicographic order.
pub fn coset_representatives(n: u32) -> Result<Vec<ModMatrix>> {
    Ok(group_tables(n)?.cosets.clone())
}

/// Convenience wrapper around [`ModMatrix::act`].
pub fn act(g: &ModMatrix, t: &TorsionPoint) -> Result<TorsionPoint> {
    g.act(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_modulus_and_singular() {
        assert_eq!(
            coset_representatives(2).unwrap_err(),
            Error::ModulusTooSmall(2)
        );
        assert!(matches!(
            ModMatrix::new(4, [[2, 0], [0, 1]]),
            Err(Error::NotInvertible(4, 2))
        ));
    }

    #[test]
    fn cosets_mod_3() {
        let t = group_tables(3).unwrap();
        assert_eq!(t.elements.len(), 48);
        assert_eq!(t.parabolic.len(), 6);
        assert_eq!(t.cosets.len(), 8);
        let id = ModMatrix::identity(3).unwrap();
        assert_eq!(t.representative(&id), id);
        assert_eq!(t.isom_dimension(0), 4);
        assert_eq!(t.isom_dimension(1), 4);
    }

    #[test]
    fn identity_coset_is_parabolic() {
        let t = group_tables(3).unwrap();
        let id_coset: Vec<_> = t
            .elements
            .iter()
            .filter(|g| t.coset_index(g) == t.identity_coset())
            .copied()
            .collect();
        assert_eq!(id_coset, t.parabolic);
        for g in &id_coset {
            let [[alpha, _], [c, d]] = g.rows();
            assert!(alpha == 1 || alpha == 2);
            assert_eq!((c, d), (0, 1));
        }
    }

    #[test]
    fn action_examples() {
        let n = 3;
        let t = TorsionPoint::new(n, 1, 0);
        let rot = ModMatrix::new(n, [[0, -1], [1, 0]]).unwrap();
        assert_eq!(rot.act(&t).unwrap(), TorsionPoint::new(n, 0, 1));
        let m = ModMatrix::minus_identity(n).unwrap();
        assert_eq!(
            m.act(&TorsionPoint::new(n, 1, 2)).unwrap(),
            TorsionPoint::new(n, 2, 1)
        );
        let id = ModMatrix::identity(n).unwrap();
        assert_eq!(id.act(&t).unwrap(), t);
        assert_eq!(
            id.act(&TorsionPoint::new(4, 1, 0)).unwrap_err(),
            Error::ModulusMismatch(3, 4)
        );
    }

    #[test]
    fn inverse_round_trip() {
        let t = group_tables(5).unwrap();
        for g in t.elements.iter().step_by(37) {
            assert_eq!(
                g.mul(&g.inverse()).unwrap(),
                ModMatrix::identity(5).unwrap()
            );
        }
    }
}
