//! Chern class evaluations, adjunction defects, canonical detection, the Euler
//! class of the induced contact structure, and the d3 invariant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::invariants::rational::{inertia, solve};
use crate::invariants::snf::smith_normal_form;
use crate::legendrian::{ContactSurgeryDiagram, PresentationKind, SteinHandleDiagram, TwoHandleSpec};
use crate::matrix::IntMatrix;
use crate::plumbing::{cusp_graph, intersection_matrix};

/// `<c_1(J), [S_j]> = rot(U_j)` for each 2-handle.
pub fn c1_evaluations(d: &SteinHandleDiagram) -> Vec<i64> {
    d.rot_vector()
}

/// `rot - (S·S - 2g + 2)`; zero exactly when the handle realizes the
/// adjunction value of a holomorphic curve.
pub fn adjunction_defect(h: &TwoHandleSpec) -> i64 {
    h.rot() - (h.framing() - 2 * i64::from(h.genus()) + 2)
}

/// All defects vanish, either as given or after negating every rotation.
pub fn is_canonical(d: &SteinHandleDiagram) -> bool {
    let all_zero = |d: &SteinHandleDiagram| d.handles().iter().all(|h| adjunction_defect(h) == 0);
    all_zero(d) || all_zero(&d.negated())
}

/// Presentation matrix for the Euler class: the Borromean matrix (1-handle
/// components first) for elliptic links, the plumbing matrix for cusps.
pub fn euler_presentation(family: &Family) -> IntMatrix {
    match family {
        Family::Elliptic(n) => {
            let mut q = IntMatrix::zeros(3, 3);
            q[(2, 2)] = (-n).into();
            q
        }
        Family::Cusp(w) => intersection_matrix(&cusp_graph(w)),
    }
}

/// Rotation vector of a diagram in the coordinates of [`euler_presentation`].
pub fn euler_rot_vector(d: &SteinHandleDiagram) -> Vec<i64> {
    match d.family() {
        Family::Elliptic(_) => {
            let mut v = vec![0; d.one_handle_count()];
            v.extend(d.rot_vector());
            v
        }
        Family::Cusp(_) => d.rot_vector(),
    }
}

/// A class `Σ v_j μ_j` in `coker Q`, with its image in Smith coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyClassRep {
    pub coefficients: Vec<BigInt>,
    pub presentation: IntMatrix,
    /// Coordinate `i` of `U v`, reduced mod `d_i` where `d_i != 0`.
    pub reduced: Vec<BigInt>,
}

impl CohomologyClassRep {
    pub fn new(presentation: &IntMatrix, coefficients: Vec<BigInt>) -> Result<Self> {
        if coefficients.len() != presentation.rows() {
            return Err(Error::DimensionMismatch {
                expected: presentation.rows(),
                got: coefficients.len(),
            });
        }
        let snf = smith_normal_form(presentation);
        let image = snf.u.mul_vec(&coefficients);
        let diag = snf.d.diagonal();
        let reduced = image
            .iter()
            .enumerate()
            .map(|(i, x)| match diag.get(i) {
                Some(d) if !d.is_zero() => x.mod_floor(d),
                _ => x.clone(),
            })
            .collect();
        Ok(CohomologyClassRep {
            coefficients,
            presentation: presentation.clone(),
            reduced,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.reduced.iter().all(Zero::is_zero)
    }

    /// Order in `coker Q`; `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        let diag = smith_normal_form(&self.presentation).d.diagonal();
        let mut order = BigInt::one();
        for (i, x) in self.reduced.iter().enumerate() {
            match diag.get(i) {
                Some(d) if !d.is_zero() => {
                    let o = d / d.gcd(x);
                    order = order.lcm(&o);
                }
                _ if !x.is_zero() => return None,
                _ => {}
            }
        }
        Some(order)
    }

    /// Integer `x` with `Q x = v`, when the class is zero.
    pub fn witness(&self) -> Option<Vec<BigInt>> {
        if !self.is_zero() {
            return None;
        }
        let snf = smith_normal_form(&self.presentation);
        let image = snf.u.mul_vec(&self.coefficients);
        let diag = snf.d.diagonal();
        let y: Vec<BigInt> = (0..self.presentation.cols())
            .map(|i| match (diag.get(i), image.get(i)) {
                (Some(d), Some(x)) if !d.is_zero() => x / d,
                _ => BigInt::zero(),
            })
            .collect();
        Some(snf.v.mul_vec(&y))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerClass {
    pub class: CohomologyClassRep,
    pub is_zero: bool,
    pub order: Option<BigInt>,
    pub witness: Option<Vec<BigInt>>,
}

/// Wire form `{"is_zero":bool,"order":int|null,"witness":[...]|null}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerClassJson {
    pub is_zero: bool,
    #[serde(with = "crate::serde_int::option")]
    pub order: Option<BigInt>,
    #[serde(with = "crate::serde_int::option_vec")]
    pub witness: Option<Vec<BigInt>>,
}

impl EulerClass {
    pub fn to_json(&self) -> EulerClassJson {
        EulerClassJson {
            is_zero: self.is_zero,
            order: self.order.clone(),
            witness: self.witness.clone(),
        }
    }
}

/// `e(ξ) = Σ rot_j μ_j` in `coker Q`. Vanishes iff `rot` is in the integer
/// column span of `Q`.
pub fn euler_class(family: &Family, rot_vector: &[i64]) -> Result<EulerClass> {
    let q = euler_presentation(family);
    let class = CohomologyClassRep::new(&q, rot_vector.iter().map(|&r| r.into()).collect())?;
    Ok(EulerClass {
        is_zero: class.is_zero(),
        order: class.order(),
        witness: class.witness(),
        class,
    })
}

/// d3 from a particular rational solution `x` of `Q x = rot`:
/// `(x·rot - 3σ - 2χ)/4 + q` with `χ = 1 + #components` and `q` the number of
/// (+1)-surgeries. The standard tight 3-sphere gets `-1/2`.
pub fn d3_from_solution(cd: &ContactSurgeryDiagram, x: &[BigRational]) -> Result<BigRational> {
    if cd.presentation_kind != PresentationKind::LiteralLinking {
        return Err(Error::UnsupportedPresentation);
    }
    let q = &cd.presentation_matrix;
    let rot = cd.rot_vector();
    if x.len() != q.cols() {
        return Err(Error::DimensionMismatch {
            expected: q.cols(),
            got: x.len(),
        });
    }
    for (row, r) in q.to_rows().iter().zip(&rot) {
        let s: BigRational = row
            .iter()
            .zip(x)
            .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
            .sum();
        if s != BigRational::from_integer((*r).into()) {
            return Err(Error::InvalidParameter("x does not solve Q x = rot".into()));
        }
    }
    let c_squared: BigRational = x
        .iter()
        .zip(&rot)
        .map(|(a, &b)| a * BigRational::from_integer(b.into()))
        .sum();
    let sigma = inertia(q).signature();
    let chi = 1 + cd.components.len() as i64;
    let plus = cd.plus_one_count() as i64;
    let int = |v: i64| BigRational::from_integer(v.into());
    Ok((c_squared - int(3 * sigma) - int(2 * chi)) / int(4) + int(plus))
}

pub fn d3_invariant(cd: &ContactSurgeryDiagram) -> Result<BigRational> {
    if cd.presentation_kind != PresentationKind::LiteralLinking {
        return Err(Error::UnsupportedPresentation);
    }
    let rot: Vec<BigInt> = cd.rot_vector().into_iter().map(BigInt::from).collect();
    let x = solve(&cd.presentation_matrix, &rot).ok_or(Error::NonTorsionChernClass)?;
    d3_from_solution(cd, &x)
}

/// Wire form `{"num":p,"den":q}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    #[serde(with = "crate::serde_int")]
    pub num: BigInt,
    #[serde(with = "crate::serde_int")]
    pub den: BigInt,
}

impl From<&BigRational> for RationalJson {
    fn from(r: &BigRational) -> Self {
        RationalJson {
            num: r.numer().clone(),
            den: r.denom().clone(),
        }
    }
}

impl From<RationalJson> for BigRational {
    fn from(r: RationalJson) -> Self {
        BigRational::new(r.num, r.den)
    }
}
