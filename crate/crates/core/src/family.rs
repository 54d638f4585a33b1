use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sl2z::{cycle_monodromy, CycleWord, Sl2Matrix};

/// A singularity link family: simple elliptic `Y_n` or cusp `Y_w`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", try_from = "RawFamily")]
pub enum Family {
    Elliptic(i64),
    Cusp(CycleWord),
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawFamily {
    Elliptic(i64),
    Cusp(CycleWord),
}

impl TryFrom<RawFamily> for Family {
    type Error = Error;
    fn try_from(raw: RawFamily) -> Result<Family> {
        match raw {
            RawFamily::Elliptic(n) => Family::elliptic(n),
            RawFamily::Cusp(w) => Ok(Family::Cusp(w)),
        }
    }
}

impl Family {
    pub fn elliptic(n: i64) -> Result<Family> {
        if n < 1 {
            return Err(Error::InvalidParameter(format!(
                "elliptic self-intersection -n needs n >= 1, got n = {n}"
            )));
        }
        Ok(Family::Elliptic(n))
    }

    pub fn cusp(entries: Vec<i64>) -> Result<Family> {
        CycleWord::new(entries).map(Family::Cusp)
    }

    /// Torus-bundle monodromy: `[[1,n],[0,1]]` for elliptic links, the cycle
    /// product for cusps.
    pub fn monodromy(&self) -> Sl2Matrix {
        match self {
            Family::Elliptic(n) => Sl2Matrix::parabolic(*n),
            Family::Cusp(w) => cycle_monodromy(w),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Elliptic(n) => write!(f, "Elliptic({n})"),
            Family::Cusp(w) => write!(f, "Cusp({w})"),
        }
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Every valid cycle word with `1 <= k <= max_len` and `2 <= n_i <= max_entry`,
/// in lexicographic order. Rotations are listed separately.
pub fn cycle_words(max_len: usize, max_entry: i64) -> Vec<CycleWord> {
    let mut out = Vec::new();
    if max_entry < 2 {
        return out;
    }
    let base = (max_entry - 1) as usize;
    for k in 1..=max_len {
        let total = base.pow(k as u32);
        for index in 0..total {
            let mut rest = index;
            let mut entries = vec![0i64; k];
            for slot in entries.iter_mut().rev() {
                *slot = 2 + (rest % base) as i64;
                rest /= base;
            }
            if let Ok(w) = CycleWord::new(entries) {
                out.push(w);
            }
        }
    }
    out
}

/// Suite bounds: cusp words with `k <= max_len`, `n_i <= max_entry`, and
/// elliptic links `1..=max_elliptic`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteBounds {
    pub max_len: usize,
    pub max_entry: i64,
    pub max_elliptic: i64,
}

impl SuiteBounds {
    /// `k <= 4`, `n_i <= 5`, `n <= 10`.
    pub const STANDARD: SuiteBounds = SuiteBounds {
        max_len: 4,
        max_entry: 5,
        max_elliptic: 10,
    };

    pub fn families(&self) -> Vec<Family> {
        let mut fams: Vec<Family> = (1..=self.max_elliptic).map(Family::Elliptic).collect();
        fams.extend(cycle_words(self.max_len, self.max_entry).into_iter().map(Family::Cusp));
        fams
    }
}
