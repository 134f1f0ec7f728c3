//! The metabelian quotient `Pol = L/[L^2, L^2]`, its abelian ideal
//! `Log = L^2/[L^2, L^2]` and `PolBar = Pol / ad_e1(Log)`.
//!
//! `Log` is the free `Q[x1, x2]`-module on `u0 = [e1, e2]` with `x_i` acting
//! as `ad_{e_i}`, so an element of `Pol` is `a1 e1 + a2 e2 + p(x1, x2) u0`.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::element::LieElement;
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Position of `x1^i x2^j` among monomials of total degree `<= d - 2`.
fn monomial_index(i: usize, j: usize) -> usize {
    let m = i + j;
    m * (m + 1) / 2 + i
}

fn monomial_count(d: usize) -> usize {
    if d < 2 {
        0
    } else {
        let m = d - 2;
        (m + 1) * (m + 2) / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolElement {
    d: usize,
    e1: Rational,
    e2: Rational,
    u: Vec<Rational>,
}

impl PolElement {
    pub fn zero(d: usize) -> Self {
        PolElement {
            d,
            e1: Rational::zero(),
            e2: Rational::zero(),
            u: vec![Rational::zero(); monomial_count(d)],
        }
    }

    pub fn generator(d: usize, i: u8) -> Self {
        let mut p = Self::zero(d);
        if i == 1 {
            p.e1 = Rational::one();
        } else {
            p.e2 = Rational::one();
        }
        p
    }

    /// `x1^i x2^j u0`, zero past the truncation.
    pub fn monomial(d: usize, i: usize, j: usize) -> Self {
        let mut p = Self::zero(d);
        if i + j + 2 <= d {
            p.u[monomial_index(i, j)] = Rational::one();
        }
        p
    }

    pub fn truncation(&self) -> usize {
        self.d
    }

    pub fn e1(&self) -> &Rational {
        &self.e1
    }

    pub fn e2(&self) -> &Rational {
        &self.e2
    }

    /// Coefficient of `x1^i x2^j u0`.
    pub fn u(&self, i: usize, j: usize) -> Rational {
        if i + j + 2 > self.d {
            return Rational::zero();
        }
        self.u[monomial_index(i, j)].clone()
    }

    /// `((i, j), coefficient)` over the nonzero `u`-part.
    pub fn u_terms(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> + '_ {
        let top = self.d.saturating_sub(2);
        (0..=top)
            .flat_map(move |m| (0..=m).map(move |i| (i, m - i)))
            .filter(move |_| self.d >= 2)
            .map(move |(i, j)| ((i, j), &self.u[monomial_index(i, j)]))
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.e1.is_zero() && self.e2.is_zero() && self.u.iter().all(Rational::is_zero)
    }

    pub fn add(&self, other: &PolElement) -> PolElement {
        assert_eq!(self.d, other.d, "truncation mismatch");
        PolElement {
            d: self.d,
            e1: &self.e1 + &other.e1,
            e2: &self.e2 + &other.e2,
            u: self.u.iter().zip(&other.u).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> PolElement {
        PolElement {
            d: self.d,
            e1: &self.e1 * s,
            e2: &self.e2 * s,
            u: self.u.iter().map(|a| a * s).collect(),
        }
    }

    /// `(a1 x1 + a2 x2) p(x) u0` for the linear part `a` of `self`, applied to `p`.
    fn act_linear(&self, p: &PolElement, out: &mut [Rational], sign: &Rational) {
        for ((i, j), c) in p.u_terms() {
            if i + j + 3 > self.d {
                continue;
            }
            if !self.e1.is_zero() {
                out[monomial_index(i + 1, j)] += sign * &self.e1 * c;
            }
            if !self.e2.is_zero() {
                out[monomial_index(i, j + 1)] += sign * &self.e2 * c;
            }
        }
    }

    /// `[(a, p), (b, q)] = (0, (a1 b2 - a2 b1) u0 + (a.x) q - (b.x) p)`.
    pub fn bracket(&self, other: &PolElement) -> PolElement {
        assert_eq!(self.d, other.d, "truncation mismatch");
        let mut out = PolElement::zero(self.d);
        if self.d >= 2 {
            out.u[0] = &self.e1 * &other.e2 - &self.e2 * &other.e1;
        }
        self.act_linear(other, &mut out.u, &Rational::one());
        other.act_linear(self, &mut out.u, &-Rational::one());
        out
    }

    /// Whether `self` lies in `ad_e1(Log)`: no linear part and every monomial
    /// divisible by `x1`.
    pub fn in_killed_ideal(&self) -> bool {
        self.e1.is_zero() && self.e2.is_zero() && self.u_terms().all(|((i, _), _)| i >= 1)
    }
}

impl Serialize for PolElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Mono<'a> {
            x1: usize,
            x2: usize,
            coeff: &'a Rational,
        }
        let mut st = s.serialize_struct("PolElement", 4)?;
        st.serialize_field("D", &self.d)?;
        st.serialize_field("e1", &self.e1)?;
        st.serialize_field("e2", &self.e2)?;
        let u: Vec<Mono<'_>> = self
            .u_terms()
            .map(|((x1, x2), coeff)| Mono { x1, x2, coeff })
            .collect();
        st.serialize_field("u0", &u)?;
        st.end()
    }
}

/// Coordinates in `PolBar` on the basis `e2, z^i e1` (`z = ad_e2`,
/// `0 <= i < D`).  Since `z e1 = -u0`, `z^i e1 = -x2^(i-1) u0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolBarElement {
    #[serde(rename = "D")]
    d: usize,
    e2: Rational,
    z: Vec<Rational>,
}

impl PolBarElement {
    pub fn zero(d: usize) -> Self {
        PolBarElement {
            d,
            e2: Rational::zero(),
            z: vec![Rational::zero(); d],
        }
    }

    pub fn from_pol(p: &PolElement) -> Self {
        let mut out = Self::zero(p.d);
        out.e2 = p.e2.clone();
        if p.d >= 1 {
            out.z[0] = p.e1.clone();
        }
        for i in 1..p.d {
            out.z[i] = -p.u(0, i - 1);
        }
        out
    }

    /// `sum_i c_i z^i e1`, truncated.
    pub fn from_z_series(d: usize, coeffs: &[Rational]) -> Self {
        let mut out = Self::zero(d);
        for (i, c) in coeffs.iter().enumerate().take(d) {
            out.z[i] = c.clone();
        }
        out
    }

    pub fn truncation(&self) -> usize {
        self.d
    }

    pub fn e2(&self) -> &Rational {
        &self.e2
    }

    /// Coefficient of `z^i e1`.
    pub fn z(&self, i: usize) -> Rational {
        self.z.get(i).cloned().unwrap_or_default()
    }

    pub fn z_coeffs(&self) -> &[Rational] {
        &self.z
    }

    pub fn is_zero(&self) -> bool {
        self.e2.is_zero() && self.z.iter().all(Rational::is_zero)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum QuotientTag {
    Full,
    Pol,
    Log,
    PolBar,
}

/// Canonical coordinates of an element in one of the quotients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "quotient", content = "value", rename_all = "UPPERCASE")]
pub enum Reduced {
    Full(LieElement),
    Pol(PolElement),
    Log(PolElement),
    PolBar(PolBarElement),
}

/// Images of the Hall basis in `Pol`, per truncation.
fn pol_images(x: &LieElement) -> Arc<Vec<PolElement>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<PolElement>>>>> = OnceLock::new();
    let d = x.truncation();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("pol cache poisoned").get(&d) {
        return Arc::clone(v);
    }
    let t = x.tables();
    let mut images: Vec<PolElement> = Vec::with_capacity(t.dim());
    for (i, h) in t.basis.iter().enumerate() {
        let img = match t.factors[i] {
            None => PolElement::generator(d, if h.word().bits == 0 { 1 } else { 2 }),
            Some((a, b)) => images[a].bracket(&images[b]),
        };
        images.push(img);
    }
    let images = Arc::new(images);
    Arc::clone(
        cache
            .lock()
            .expect("pol cache poisoned")
            .entry(d)
            .or_insert(images),
    )
}

/// The projection `L -> Pol`.
pub fn to_pol(x: &LieElement) -> PolElement {
    let images = pol_images(x);
    let mut out = PolElement::zero(x.truncation());
    for (i, c) in x.coords().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        out = out.add(&images[i].scale(c));
    }
    out
}

/// Checks that `ad_e1(Log)` is an ideal of `Pol` at truncation `d`, so that
/// the `PolBar` reduction is a Lie algebra map.
pub fn check_polbar_ideal(d: usize) -> Result<()> {
    static VERIFIED: OnceLock<Mutex<HashSet<usize>>> = OnceLock::new();
    let verified = VERIFIED.get_or_init(|| Mutex::new(HashSet::new()));
    if verified.lock().expect("ideal cache poisoned").contains(&d) {
        return Ok(());
    }
    let mut others = vec![PolElement::generator(d, 1), PolElement::generator(d, 2)];
    let mut killed = Vec::new();
    for m in 0..=d.saturating_sub(2) {
        for i in 0..=m {
            if d < 2 {
                break;
            }
            let mono = PolElement::monomial(d, i, m - i);
            if i >= 1 {
                killed.push(mono.clone());
            }
            others.push(mono);
        }
    }
    for k in &killed {
        for o in &others {
            if !k.bracket(o).in_killed_ideal() {
                return Err(Error::Internal(format!(
                    "ad_e1(Log) is not an ideal at truncation {d}"
                )));
            }
        }
    }
    verified.lock().expect("ideal cache poisoned").insert(d);
    Ok(())
}

pub fn quotient_reduce(x: &LieElement, q: QuotientTag) -> Result<Reduced> {
    Ok(match q {
        QuotientTag::Full => Reduced::Full(x.clone()),
        QuotientTag::Pol => Reduced::Pol(to_pol(x)),
        QuotientTag::Log => {
            let mut p = to_pol(x);
            p.e1 = Rational::zero();
            p.e2 = Rational::zero();
            Reduced::Log(p)
        }
        QuotientTag::PolBar => Reduced::PolBar(to_polbar(x)?),
    })
}

/// The projection `L -> PolBar`.
pub fn to_polbar(x: &LieElement) -> Result<PolBarElement> {
    check_polbar_ideal(x.truncation())?;
    Ok(PolBarElement::from_pol(&to_pol(x)))
}
