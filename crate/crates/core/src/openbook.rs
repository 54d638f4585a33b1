//! Horizontal open books of simple elliptic and cusp links, modelled through
//! the homology of the page.
//!
//! The cusp page is a torus cut by the curves `δ_0, ..., δ_{k-1}` into planar
//! pieces; piece `i` sits between `δ_{i-1}` and `δ_i` (piece `k` between
//! `δ_{k-1}` and `δ_0`) and carries `n_i - 2` boundary components. The page
//! basis is `ℓ, d, e_1, ..., e_{b-1}` where `ℓ` crosses every `δ` once,
//! `d = [δ_0]`, and the boundary classes are `e_j` with `[∂_b] = -Σ e_j`.
//! Each piece bounds, so `[δ_i] = [δ_{i-1}] - Σ (boundaries of piece i)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::invariants::snf::AbelianGroup;
use crate::matrix::IntMatrix;
use crate::sl2z::CycleWord;

/// A curve on the page carrying a right-handed Dehn twist.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Curve {
    /// Interior curve `δ_i`.
    Delta(usize),
    /// Curve parallel to the boundary component with this label.
    Gamma(String),
}

impl Curve {
    /// ASCII name used in JSON: `delta0`, `gamma3_1`.
    pub fn ascii(&self) -> String {
        match self {
            Curve::Delta(i) => format!("delta{i}"),
            Curve::Gamma(l) => format!("gamma{l}"),
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::Delta(i) => write!(f, "δ{i}"),
            Curve::Gamma(l) => write!(f, "γ{l}"),
        }
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ascii())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenBookDescription {
    page_genus: u32,
    boundary_labels: Vec<String>,
    twist_word: Vec<Curve>,
    boundary_twist_multiplicity: BTreeMap<String, u32>,
    origin: Option<Family>,
}

impl OpenBookDescription {
    /// An open book with arbitrary data. Homology computations reject it
    /// unless it came from [`elliptic_openbook`] or [`cusp_openbook`].
    pub fn custom(page_genus: u32, boundary_labels: Vec<String>, twist_word: Vec<Curve>) -> Result<Self> {
        Self::build(page_genus, boundary_labels, twist_word, None)
    }

    fn build(
        page_genus: u32,
        boundary_labels: Vec<String>,
        twist_word: Vec<Curve>,
        origin: Option<Family>,
    ) -> Result<Self> {
        let mut mult: BTreeMap<String, u32> = boundary_labels.iter().map(|l| (l.clone(), 0)).collect();
        if mult.len() != boundary_labels.len() {
            return Err(Error::InvalidParameter("duplicate boundary label".into()));
        }
        for c in &twist_word {
            if let Curve::Gamma(l) = c {
                *mult
                    .get_mut(l)
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown boundary label {l}")))? += 1;
            }
        }
        Ok(OpenBookDescription {
            page_genus,
            boundary_labels,
            twist_word,
            boundary_twist_multiplicity: mult,
            origin,
        })
    }

    pub fn page_genus(&self) -> u32 {
        self.page_genus
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary_labels.len()
    }

    pub fn boundary_labels(&self) -> &[String] {
        &self.boundary_labels
    }

    pub fn twist_word(&self) -> &[Curve] {
        &self.twist_word
    }

    pub fn multiplicity(&self, label: &str) -> u32 {
        self.boundary_twist_multiplicity.get(label).copied().unwrap_or(0)
    }

    pub fn origin(&self) -> Option<&Family> {
        self.origin.as_ref()
    }

    /// Euler characteristic of the page.
    pub fn page_euler_characteristic(&self) -> i64 {
        2 - 2 * i64::from(self.page_genus) - self.boundary_count() as i64
    }

    /// Same curves, twisted in a different order. All curves must already be
    /// known to this open book.
    pub fn with_twist_word(&self, word: Vec<Curve>) -> Result<Self> {
        let known = |c: &Curve| self.twist_word.contains(c);
        if let Some(c) = word.iter().find(|c| !known(c)) {
            return Err(Error::InvalidParameter(format!("curve {c} is not on this page")));
        }
        Self::build(self.page_genus, self.boundary_labels.clone(), word, self.origin.clone())
    }

    /// The monodromy word, e.g. `D(δ0)·D(γ1)·D(γ2)`.
    pub fn word_text(&self) -> String {
        self.twist_word
            .iter()
            .map(|c| format!("D({c})"))
            .collect::<Vec<_>>()
            .join("·")
    }

    pub fn to_text(&self) -> String {
        let b = self.boundary_count();
        format!(
            "{}, page: genus {}, {} boundary component{}",
            self.word_text(),
            self.page_genus,
            b,
            if b == 1 { "" } else { "s" }
        )
    }

    pub fn to_json(&self) -> OpenBookJson {
        OpenBookJson {
            genus: self.page_genus,
            boundaries: self.boundary_count(),
            word: self.twist_word.iter().map(Curve::ascii).collect(),
        }
    }
}

/// Wire form: `{"genus":1,"boundaries":b,"word":["delta0",...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenBookJson {
    pub genus: u32,
    pub boundaries: usize,
    pub word: Vec<String>,
}

/// Torus page with `n` boundaries, one boundary-parallel twist at each.
pub fn elliptic_openbook(n: i64) -> Result<OpenBookDescription> {
    let family = Family::elliptic(n)?;
    let labels: Vec<String> = (1..=n).map(|j| j.to_string()).collect();
    let word = labels.iter().cloned().map(Curve::Gamma).collect();
    OpenBookDescription::build(1, labels, word, Some(family))
}

/// Torus page with `Σ(n_i - 2)` boundaries and monodromy
/// `Π D(δ_i) Π D(γ_{i,j})`; for `k = 1` the word is `D(δ_0) Π D(γ_j)`.
pub fn cusp_openbook(w: &CycleWord) -> OpenBookDescription {
    let labels = cusp_pieces(w).into_iter().flatten().collect::<Vec<_>>();
    let mut word: Vec<Curve> = (0..w.len()).map(Curve::Delta).collect();
    word.extend(labels.iter().cloned().map(Curve::Gamma));
    OpenBookDescription::build(1, labels, word, Some(Family::Cusp(w.clone())))
        .expect("labels are distinct and complete")
}

pub fn family_openbook(f: &Family) -> OpenBookDescription {
    match f {
        Family::Elliptic(n) => elliptic_openbook(*n).expect("family validated n"),
        Family::Cusp(w) => cusp_openbook(w),
    }
}

/// Boundary labels grouped by planar piece.
fn cusp_pieces(w: &CycleWord) -> Vec<Vec<String>> {
    let single = w.len() == 1;
    w.entries()
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            (1..=n - 2)
                .map(|j| {
                    if single {
                        j.to_string()
                    } else {
                        format!("{}_{}", i + 1, j)
                    }
                })
                .collect()
        })
        .collect()
}

/// Homology data of the page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageHomology {
    /// Basis names: `l`, `d`, `e1`, ...
    pub basis: Vec<String>,
    /// Class of every distinct curve of the twist word.
    pub classes: BTreeMap<Curve, Vec<BigInt>>,
    /// Class of each boundary component, in label order.
    pub boundary_classes: Vec<Vec<BigInt>>,
    /// Antisymmetric intersection form on the basis: `form[(a, b)] = <a, b>`.
    pub form: IntMatrix,
    /// For each boundary, the algebraic crossings of a base arc (from a base
    /// point in the first piece out to that boundary) with each word curve.
    pub arc_crossings: Vec<BTreeMap<Curve, i64>>,
}

impl PageHomology {
    pub fn pairing(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let fy = self.form.mul_vec(y);
        x.iter().zip(&fy).map(|(a, b)| a * b).sum()
    }
}

pub fn curve_homology_classes(ob: &OpenBookDescription) -> Result<PageHomology> {
    let family = ob.origin.as_ref().ok_or(Error::UnsupportedOpenBook)?;
    let b = ob.boundary_count();
    let dim = 2 + b.saturating_sub(1);
    let unit = |i: usize| {
        let mut v = vec![BigInt::zero(); dim];
        v[i] = BigInt::one();
        v
    };
    let add = |x: &[BigInt], y: &[BigInt], s: i64| -> Vec<BigInt> { x.iter().zip(y).map(|(a, c)| a + c * s).collect() };

    let mut basis = vec!["l".to_string(), "d".to_string()];
    basis.extend((1..b).map(|j| format!("e{j}")));

    let mut boundary_classes: Vec<Vec<BigInt>> = (0..b.saturating_sub(1)).map(|j| unit(2 + j)).collect();
    if b >= 1 {
        let last = boundary_classes
            .iter()
            .fold(vec![BigInt::zero(); dim], |acc, e| add(&acc, e, -1));
        boundary_classes.push(last);
    }
    let index_of: BTreeMap<&str, usize> = ob
        .boundary_labels
        .iter()
        .enumerate()
        .map(|(j, l)| (l.as_str(), j))
        .collect();

    let mut classes = BTreeMap::new();
    let mut arc_crossings: Vec<BTreeMap<Curve, i64>> = ob
        .boundary_labels
        .iter()
        .map(|l| BTreeMap::from([(Curve::Gamma(l.clone()), 1)]))
        .collect();

    if let Family::Cusp(w) = family {
        let pieces = cusp_pieces(w);
        let mut delta = unit(1);
        classes.insert(Curve::Delta(0), delta.clone());
        for (i, piece) in pieces.iter().enumerate().take(w.len() - 1) {
            for l in piece {
                delta = add(&delta, &boundary_classes[index_of[l.as_str()]], -1);
            }
            classes.insert(Curve::Delta(i + 1), delta.clone());
        }
        // The base arc leaves piece 1 rightwards and crosses δ_1 .. δ_{p-1}.
        for (p, piece) in pieces.iter().enumerate() {
            for l in piece {
                let crossings = &mut arc_crossings[index_of[l.as_str()]];
                for i in 1..=p {
                    crossings.insert(Curve::Delta(i), 1);
                }
            }
        }
    }
    for (j, l) in ob.boundary_labels.iter().enumerate() {
        classes.insert(Curve::Gamma(l.clone()), boundary_classes[j].clone());
    }
    if let Some(c) = ob.twist_word.iter().find(|c| !classes.contains_key(*c)) {
        return Err(Error::InvalidParameter(format!("curve {c} is not on this page")));
    }

    let mut form = IntMatrix::zeros(dim, dim);
    form[(0, 1)] = BigInt::one();
    form[(1, 0)] = -BigInt::one();

    Ok(PageHomology {
        basis,
        classes,
        boundary_classes,
        form,
        arc_crossings,
    })
}

/// Product of the transvections `x -> x + <x, c> c` over the twist word,
/// as a matrix acting on column vectors in the page basis.
pub fn homological_monodromy_action(ob: &OpenBookDescription) -> Result<IntMatrix> {
    let hom = curve_homology_classes(ob)?;
    let dim = hom.basis.len();
    let mut phi = IntMatrix::identity(dim);
    for c in &ob.twist_word {
        let class = &hom.classes[c];
        let dual = hom.form.mul_vec(class);
        let mut t = IntMatrix::identity(dim);
        for a in 0..dim {
            for b in 0..dim {
                t[(a, b)] += &class[a] * &dual[b];
            }
        }
        phi = &phi * &t;
    }
    Ok(phi)
}

/// `H_1` of the open book, presented on the page basis plus a circle
/// generator `t` with relations `(φ* - 1) x` and one meridian relation per
/// binding component: `t + Σ_c (arc · c) [c]`, which is `t + m_j [∂_j]` plus the
/// δ-curves the base arc crosses.
pub fn openbook_homology(ob: &OpenBookDescription) -> Result<AbelianGroup> {
    let hom = curve_homology_classes(ob)?;
    let phi = homological_monodromy_action(ob)?;
    let dim = hom.basis.len();
    let gens = dim + 1;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for x in 0..dim {
        let mut r: Vec<BigInt> = (0..dim)
            .map(|a| {
                let id = if a == x { BigInt::one() } else { BigInt::zero() };
                &phi[(a, x)] - id
            })
            .collect();
        r.push(BigInt::zero());
        rows.push(r);
    }
    for crossings in &hom.arc_crossings {
        let mut r = vec![BigInt::zero(); gens];
        r[dim] = BigInt::one();
        for c in &ob.twist_word {
            if let Some(&k) = crossings.get(c) {
                for (a, v) in hom.classes[c].iter().enumerate() {
                    r[a] += v * k;
                }
            }
        }
        rows.push(r);
    }
    Ok(AbelianGroup::presented(&IntMatrix::from_big_rows(rows, gens)))
}
