//! Lyndon words on `e1 < e2` as a Hall basis of the free Lie algebra, with
//! their expansions in the free associative algebra and lazily built integer
//! structure constants.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Mul, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in `e1, e2`: `len` letters, bit `len-1-i` set iff letter `i` is `e2`.
/// Numeric order of `bits` is lexicographic order among words of equal length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub len: u32,
    pub bits: u32,
}

impl Word {
    pub const EMPTY: Word = Word { len: 0, bits: 0 };

    pub fn letter(i: u8) -> Word {
        Word {
            len: 1,
            bits: u32::from(i == 2),
        }
    }

    /// Dense index: all words of length < len come first.
    pub fn id(&self) -> usize {
        (1usize << self.len) - 1 + self.bits as usize
    }

    pub fn from_id(id: usize) -> Word {
        let len = usize::BITS - 1 - (id + 1).leading_zeros();
        Word {
            len,
            bits: (id + 1 - (1 << len)) as u32,
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word {
            len: self.len + other.len,
            bits: (self.bits << other.len) | other.bits,
        }
    }

    fn suffix(&self, len: u32) -> Word {
        Word {
            len,
            bits: self.bits & ((1 << len) - 1),
        }
    }

    fn prefix(&self, len: u32) -> Word {
        Word {
            len,
            bits: self.bits >> (self.len - len),
        }
    }

    /// Strictly smaller than each of its proper rotations.
    pub fn is_lyndon(&self) -> bool {
        let n = self.len;
        if n == 0 {
            return false;
        }
        let mask = (1u32 << n) - 1;
        (1..n).all(|r| {
            let rot = ((self.bits << r) | (self.bits >> (n - r))) & mask;
            self.bits < rot
        })
    }

    /// `w = uv` with `v` the longest proper Lyndon suffix.
    pub fn standard_factorization(&self) -> Option<(Word, Word)> {
        (1..self.len)
            .map(|i| (self.prefix(i), self.suffix(self.len - i)))
            .find(|(_, v)| v.is_lyndon())
    }
}

/// A Lyndon word, read as its standard bracketing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HallWord(Word);

impl HallWord {
    pub fn new(w: Word) -> Option<HallWord> {
        w.is_lyndon().then_some(HallWord(w))
    }

    pub fn word(&self) -> Word {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len as usize
    }

    pub fn factors(&self) -> Option<(HallWord, HallWord)> {
        self.0
            .standard_factorization()
            .map(|(u, v)| (HallWord(u), HallWord(v)))
    }
}

impl fmt::Display for HallWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.factors() {
            None => write!(f, "e{}", self.0.bits + 1),
            Some((u, v)) => write!(f, "[{u},{v}]"),
        }
    }
}

impl Serialize for HallWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HallWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_bracket(&s).ok_or_else(|| serde::de::Error::custom(format!("not a Hall word: {s:?}")))
    }
}

/// Parses the canonical bracket string and checks it is the standard
/// bracketing of a Lyndon word.
pub fn parse_bracket(s: &str) -> Option<HallWord> {
    fn go(s: &str) -> Option<(Word, &str)> {
        if let Some(rest) = s.strip_prefix("e1") {
            return Some((Word::letter(1), rest));
        }
        if let Some(rest) = s.strip_prefix("e2") {
            return Some((Word::letter(2), rest));
        }
        let rest = s.strip_prefix('[')?;
        let (u, rest) = go(rest)?;
        let rest = rest.strip_prefix(',')?;
        let (v, rest) = go(rest)?;
        let rest = rest.strip_prefix(']')?;
        Some((u.concat(&v), rest))
    }
    let (w, rest) = go(s.trim())?;
    let h = HallWord::new(w)?;
    (rest.is_empty() && h.to_string() == s.trim()).then_some(h)
}

/// Sparse integer combination of words, keyed by dense word id.
pub(crate) type WordPoly = BTreeMap<usize, i64>;

pub(crate) struct LieTables {
    pub d: usize,
    pub basis: Vec<HallWord>,
    index_of_word: HashMap<usize, usize>,
    pub(crate) expansions: Vec<WordPoly>,
    /// `(i, j)` of the standard factorization for bracketed basis elements.
    pub(crate) factors: Vec<Option<(usize, usize)>>,
    brackets: Vec<OnceLock<Vec<(usize, i64)>>>,
}

fn commutator(a: &WordPoly, b: &WordPoly) -> WordPoly {
    let mut out = WordPoly::new();
    for (&i, &x) in a {
        let wi = Word::from_id(i);
        for (&j, &y) in b {
            let wj = Word::from_id(j);
            *out.entry(wi.concat(&wj).id()).or_insert(0) += x * y;
            *out.entry(wj.concat(&wi).id()).or_insert(0) -= x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

impl LieTables {
    fn build(d: usize) -> Self {
        let mut basis = Vec::new();
        for len in 1..=d as u32 {
            for bits in 0..(1u32 << len) {
                if let Some(h) = HallWord::new(Word { len, bits }) {
                    basis.push(h);
                }
            }
        }
        let index_of_word: HashMap<usize, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, h)| (h.word().id(), i))
            .collect();
        let mut expansions: Vec<WordPoly> = Vec::with_capacity(basis.len());
        let mut factors = Vec::with_capacity(basis.len());
        for h in &basis {
            match h.factors() {
                None => {
                    expansions.push(WordPoly::from([(h.word().id(), 1)]));
                    factors.push(None);
                }
                Some((u, v)) => {
                    let (iu, iv) = (index_of_word[&u.word().id()], index_of_word[&v.word().id()]);
                    let e = commutator(&expansions[iu], &expansions[iv]);
                    debug_assert_eq!(e.first_key_value(), Some((&h.word().id(), &1)));
                    expansions.push(e);
                    factors.push(Some((iu, iv)));
                }
            }
        }
        let dim = basis.len();
        LieTables {
            d,
            basis,
            index_of_word,
            expansions,
            factors,
            brackets: (0..dim * dim).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, h: &HallWord) -> Option<usize> {
        self.index_of_word.get(&h.word().id()).copied()
    }

    /// Coordinates of a Lie polynomial given by its word expansion, found by
    /// peeling off the smallest word, which must be Lyndon.
    pub(crate) fn extract<T>(&self, mut poly: BTreeMap<usize, T>) -> Result<Vec<(usize, T)>>
    where
        T: Clone + Zero + for<'a> Mul<&'a T, Output = T> + Sub<Output = T> + From<i64>,
    {
        poly.retain(|_, c| !c.is_zero());
        let mut out = Vec::new();
        while let Some((&id, c)) = poly.iter().next() {
            let c = c.clone();
            let w = Word::from_id(id);
            if w.len as usize > self.d {
                return Err(Error::Internal(format!(
                    "word of length {} beyond truncation",
                    w.len
                )));
            }
            let idx = *self.index_of_word.get(&id).ok_or_else(|| {
                Error::Internal(format!(
                    "leading word of length {} is not Lyndon: not a Lie element",
                    w.len
                ))
            })?;
            for (&j, &e) in &self.expansions[idx] {
                let entry = poly.entry(j).or_insert_with(T::zero);
                *entry = entry.clone() - T::from(e) * &c;
                if entry.is_zero() {
                    poly.remove(&j);
                }
            }
            out.push((idx, c));
        }
        Ok(out)
    }

    /// `[b_i, b_j]` in the basis; empty when the degree exceeds `d`.
    pub(crate) fn bracket(&self, i: usize, j: usize) -> &[(usize, i64)] {
        self.brackets[i * self.dim() + j].get_or_init(|| {
            if i == j || self.basis[i].degree() + self.basis[j].degree() > self.d {
                return Vec::new();
            }
            let e = commutator(&self.expansions[i], &self.expansions[j]);
            self.extract::<I64>(e.into_iter().map(|(k, v)| (k, I64(v))).collect())
                .expect("bracket of Lie polynomials is a Lie polynomial")
                .into_iter()
                .map(|(k, v)| (k, v.0))
                .collect()
        })
    }
}

/// `i64` with the by-reference multiplication `extract` needs.
#[derive(Clone, Copy, Debug, PartialEq)]
struct I64(i64);

impl Zero for I64 {
    fn zero() -> Self {
        I64(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for I64 {
    type Output = I64;
    fn add(self, rhs: I64) -> I64 {
        I64(self
            .0
            .checked_add(rhs.0)
            .expect("structure constant overflow"))
    }
}

impl Sub for I64 {
    type Output = I64;
    fn sub(self, rhs: I64) -> I64 {
        I64(self
            .0
            .checked_sub(rhs.0)
            .expect("structure constant overflow"))
    }
}

impl Mul<&I64> for I64 {
    type Output = I64;
    fn mul(self, rhs: &I64) -> I64 {
        I64(self
            .0
            .checked_mul(rhs.0)
            .expect("structure constant overflow"))
    }
}

impl From<i64> for I64 {
    fn from(v: i64) -> Self {
        I64(v)
    }
}

pub(crate) fn lie_tables(d: usize) -> Result<Arc<LieTables>> {
    if d == 0 {
        return Err(Error::TruncationTooSmall { have: 0, need: 1 });
    }
    if d > 16 {
        return Err(Error::Precondition(format!(
            "truncation degree {d} is beyond the supported 16"
        )));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<LieTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("lie table cache poisoned").get(&d) {
        return Ok(Arc::clone(t));
    }
    let built = Arc::new(LieTables::build(d));
    let mut guard = cache.lock().expect("lie table cache poisoned");
    Ok(Arc::clone(guard.entry(d).or_insert(built)))
}

/// All Hall words of degree at most `d`, ordered by degree, then
/// lexicographically with `e1 < e2`.
pub fn hall_basis(d: usize) -> Result<Vec<HallWord>> {
    Ok(lie_tables(d)?.basis.clone())
}
