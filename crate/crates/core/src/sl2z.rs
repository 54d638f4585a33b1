//! Exact SL(2,Z) arithmetic for torus-bundle monodromies.
//!
//! Cusp monodromies are written as products of the generators
//! `M(n) = [[n, -1], [1, 0]]`, i.e. the Möbius maps `z -> n - 1/z`. A word
//! `(n_1, ..., n_k)` therefore corresponds to the purely periodic
//! Hirzebruch-Jung ("minus") continued fraction `n_1 - 1/(n_2 - 1/...)`,
//! which is what [`factor_cycle`] inverts.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::serde_int::Int;

/// A 2x2 integer matrix of determinant one, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sl2Matrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Sl2Matrix {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Error::NotUnimodular {
                a: a.to_string(),
                b: b.to_string(),
                c: c.to_string(),
                d: d.to_string(),
                det: det.to_string(),
            });
        }
        Ok(Sl2Matrix { a, b, c, d })
    }

    fn new_unchecked(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        debug_assert!((&a * &d - &b * &c).is_one());
        Sl2Matrix { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new_unchecked(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    /// The cusp generator `M(n) = [[n, -1], [1, 0]]`.
    pub fn generator(n: i64) -> Self {
        Self::new_unchecked(n.into(), (-1).into(), 1.into(), 0.into())
    }

    /// `[[1, n], [0, 1]]`, the parabolic monodromy used for simple elliptic links.
    pub fn parabolic(n: i64) -> Self {
        Self::new_unchecked(1.into(), n.into(), 0.into(), 1.into())
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn inverse(&self) -> Self {
        Self::new_unchecked(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new_unchecked(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    /// `p^-1 * self * p`
    pub fn conjugate_by(&self, p: &Self) -> Self {
        p.inverse().mul(self).mul(p)
    }

    /// `A - I` as a general integer matrix.
    pub fn minus_identity(&self) -> IntMatrix {
        IntMatrix::from_big_rows(
            vec![vec![&self.a - 1, self.b.clone()], vec![self.c.clone(), &self.d - 1]],
            2,
        )
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_big_rows(
            vec![
                vec![self.a.clone(), self.b.clone()],
                vec![self.c.clone(), self.d.clone()],
            ],
            2,
        )
    }
}

impl fmt::Display for Sl2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Sl2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Sl2Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [
            [Int(self.a.clone()), Int(self.b.clone())],
            [Int(self.c.clone()), Int(self.d.clone())],
        ]
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Sl2Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [[a, b], [c, dd]]: [[Int; 2]; 2] = Deserialize::deserialize(d)?;
        Sl2Matrix::new(a.0, b.0, c.0, dd.0).map_err(serde::de::Error::custom)
    }
}

/// The word `(n_1, ..., n_k)` of a cusp link, taken up to cyclic rotation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct CycleWord(Vec<i64>);

impl CycleWord {
    pub const RULE: &'static str = "k = 1 needs n1 >= 3; k > 1 needs every ni >= 2 and some ni >= 3";

    pub fn new(entries: Vec<i64>) -> Result<Self> {
        let reason = match entries.as_slice() {
            [] => Some("empty word"),
            [n] if *n < 3 => Some("k = 1 needs n1 >= 3"),
            [_] => None,
            xs if xs.iter().any(|&n| n < 2) => Some("k > 1 needs every ni >= 2"),
            xs if xs.iter().all(|&n| n < 3) => Some("k > 1 needs ni >= 3 for some i"),
            _ => None,
        };
        match reason {
            Some(reason) => Err(Error::InvalidCycleWord { word: entries, reason }),
            None => Ok(CycleWord(entries)),
        }
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rotated(&self, by: usize) -> CycleWord {
        let mut v = self.0.clone();
        let shift = by % v.len();
        v.rotate_left(shift);
        CycleWord(v)
    }

    /// Lexicographically least cyclic rotation.
    pub fn normalized(&self) -> CycleWord {
        (0..self.len())
            .map(|r| self.rotated(r))
            .min()
            .expect("cycle words are nonempty")
    }

    /// Number of boundary-parallel curves on the cusp open-book page.
    pub fn boundary_count(&self) -> usize {
        self.0.iter().map(|&n| (n - 2) as usize).sum()
    }
}

impl TryFrom<Vec<i64>> for CycleWord {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        CycleWord::new(v)
    }
}

impl From<CycleWord> for Vec<i64> {
    fn from(w: CycleWord) -> Vec<i64> {
        w.0
    }
}

impl fmt::Display for CycleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for CycleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonodromyKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyClass {
    pub kind: MonodromyKind,
    #[serde(with = "crate::serde_int")]
    pub trace: BigInt,
}

impl MonodromyClass {
    /// Trace at least 3: the monodromy of a cusp singularity link.
    pub fn is_cusp_link(&self) -> bool {
        self.trace >= BigInt::from(3)
    }

    /// Trace exactly 2: compatible with a simple elliptic link.
    pub fn is_elliptic_compatible(&self) -> bool {
        self.trace == BigInt::from(2)
    }
}

pub fn classify(a: &Sl2Matrix) -> MonodromyClass {
    let trace = a.trace();
    let two = BigInt::from(2);
    let kind = match trace.abs().cmp(&two) {
        std::cmp::Ordering::Less => MonodromyKind::Elliptic,
        std::cmp::Ordering::Equal => MonodromyKind::Parabolic,
        std::cmp::Ordering::Greater => MonodromyKind::Hyperbolic,
    };
    MonodromyClass { kind, trace }
}

/// `M(n_1) M(n_2) ... M(n_k)` in index order.
pub fn cycle_monodromy(w: &CycleWord) -> Sl2Matrix {
    product_of_generators(w.entries())
}

fn product_of_generators(ns: &[i64]) -> Sl2Matrix {
    ns.iter()
        .fold(Sl2Matrix::identity(), |acc, &n| acc.mul(&Sl2Matrix::generator(n)))
}

pub fn cyclic_equal(w1: &CycleWord, w2: &CycleWord) -> bool {
    w1.len() == w2.len() && (0..w1.len()).any(|r| w1.rotated(r) == *w2)
}

const MAX_EXPANSION_STEPS: usize = 1 << 20;

/// Factors a hyperbolic matrix of trace >= 3 as a cycle word whose monodromy
/// is SL(2,Z)-conjugate to it.
///
/// Each fixed point of `a` is a quadratic irrational whose minus continued
/// fraction is eventually periodic. The preperiod supplies an explicit
/// conjugator `P`, and the period supplies the word; the result is only
/// returned once `P^-1 a P` equals the word's monodromy exactly.
pub fn factor_cycle(a: &Sl2Matrix) -> Result<CycleWord> {
    let trace = a.trace();
    if trace < BigInt::from(3) {
        return Err(Error::NotCuspClass {
            trace: trace.to_string(),
        });
    }
    let disc = &trace * &trace - 4;
    let two_c: BigInt = &a.c * 2;
    let a_minus_d = &a.a - &a.d;
    // Fixed points are ((a - d) +- sqrt(disc)) / 2c, written as (p + sqrt(disc)) / q.
    let fixed_points = [(a_minus_d.clone(), two_c.clone()), (-a_minus_d, -two_c)];
    for (p, q) in fixed_points {
        if let Some(word) = factor_from_fixed_point(a, &disc, p, q) {
            return Ok(word.normalized());
        }
    }
    Err(Error::NoFactorization(a.to_string()))
}

fn factor_from_fixed_point(a: &Sl2Matrix, disc: &BigInt, p: BigInt, q: BigInt) -> Option<CycleWord> {
    let root = Roots::sqrt(disc);
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut digits: Vec<i64> = Vec::new();
    let (mut p, mut q) = (p, q);
    let start = loop {
        if let Some(&i) = seen.get(&(p.clone(), q.clone())) {
            break i;
        }
        if digits.len() > MAX_EXPANSION_STEPS {
            return None;
        }
        seen.insert((p.clone(), q.clone()), digits.len());
        let n = floor_quadratic(&p, &q, &root) + 1;
        let next_p = &n * &q - &p;
        let next_q = (&next_p * &next_p - disc) / &q;
        digits.push(i64::try_from(&n).ok()?);
        p = next_p;
        q = next_q;
    };
    let conjugator = product_of_generators(&digits[..start]);
    let period = &digits[start..];
    let reduced = a.conjugate_by(&conjugator);
    let base = product_of_generators(period);
    if base.trace() < BigInt::from(3) {
        return None;
    }
    let target = reduced.trace();
    let mut power = base.clone();
    let mut reps = 1;
    while power.trace() < target {
        power = power.mul(&base);
        reps += 1;
    }
    if power != reduced {
        return None;
    }
    CycleWord::new(period.repeat(reps)).ok()
}

/// `floor((p + sqrt(disc)) / q)` for non-square `disc`, given `root = isqrt(disc)`.
fn floor_quadratic(p: &BigInt, q: &BigInt, root: &BigInt) -> BigInt {
    let m: BigInt = p + root;
    if q.is_positive() {
        Integer::div_floor(&m, q)
    } else {
        let neg_q: BigInt = -q;
        let up: BigInt = Integer::div_floor(&m, &neg_q) + 1;
        -up
    }
}
