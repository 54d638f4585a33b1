//! Legendrian realizations of the Stein handle diagrams, their enumeration,
//! the canonical (adjunction-realizing) choice, and the trade of 1-handles for
//! contact (+1)-surgeries.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::matrix::IntMatrix;
use crate::par::{map_indices, Execution};
use crate::plumbing::{cusp_graph, intersection_matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HandleTag {
    /// Unknot `index` of the cusp chain (0-based).
    ChainUnknot(usize),
    /// Attaching circle of the elliptic 2-handle, over both 1-handles.
    EllipticCore,
    /// The `k = 1` cusp knot passing twice over the 1-handle.
    NodalDoublePass,
}

impl HandleTag {
    /// Largest Thurston-Bennequin number of a Legendrian realization:
    /// -1 for the unknot, 1 for the genus-one attaching circles.
    pub fn tb_max(self) -> i64 {
        match self {
            HandleTag::ChainUnknot(_) => -1,
            HandleTag::EllipticCore | HandleTag::NodalDoublePass => 1,
        }
    }
}

/// `s = tb_max - 1 - framing`, the number of stabilizations needed.
fn stabilizations(tag: HandleTag, framing: i64) -> Result<i64> {
    let s = tag.tb_max() - 1 - framing;
    if s < 0 {
        return Err(Error::FramingTooLarge {
            framing,
            bound: tag.tb_max() - 1,
        });
    }
    Ok(s)
}

/// `{-s, -s+2, ..., s}` with `s = tb_max - 1 - framing`.
pub fn rotation_range(tag: HandleTag, framing: i64) -> Result<Vec<i64>> {
    let s = stabilizations(tag, framing)?;
    Ok((0..=s).map(|i| 2 * i - s).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoHandleSpec {
    tag: HandleTag,
    framing: i64,
    genus: u32,
    tb: i64,
    rot: i64,
}

impl TwoHandleSpec {
    /// Stein handle with smooth framing `tb - 1`.
    pub fn new(tag: HandleTag, framing: i64, genus: u32, rot: i64) -> Result<Self> {
        let range = rotation_range(tag, framing)?;
        if !range.contains(&rot) {
            return Err(Error::InvalidParameter(format!(
                "rotation {rot} not realizable for framing {framing} (range {}..={})",
                range[0],
                range[range.len() - 1]
            )));
        }
        Ok(TwoHandleSpec {
            tag,
            framing,
            genus,
            tb: framing + 1,
            rot,
        })
    }

    pub fn tag(&self) -> HandleTag {
        self.tag
    }

    pub fn framing(&self) -> i64 {
        self.framing
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn tb(&self) -> i64 {
        self.tb
    }

    pub fn rot(&self) -> i64 {
        self.rot
    }

    fn negated(&self) -> Self {
        TwoHandleSpec {
            rot: -self.rot,
            ..self.clone()
        }
    }

    fn to_text(&self) -> String {
        let s = self.tag.tb_max() - self.tb;
        let (right, left) = ((s + self.rot) / 2, (s - self.rot) / 2);
        let what = match self.tag {
            HandleTag::ChainUnknot(i) => format!("U{}: Legendrian unknot", i + 1),
            HandleTag::EllipticCore => "U: Legendrian core over both 1-handles".to_string(),
            HandleTag::NodalDoublePass => "U: Legendrian unknot over the 1-handle twice".to_string(),
        };
        format!(
            "{what}, framing {}, tb = {}, {right} right and {left} left zigzags, rot = {}",
            self.framing, self.tb, self.rot
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SteinHandleDiagram {
    one_handle_count: usize,
    handles: Vec<TwoHandleSpec>,
    family: Family,
}

struct Skeleton {
    one_handles: usize,
    handles: Vec<(HandleTag, i64, u32)>,
}

fn skeleton(family: &Family) -> Skeleton {
    match family {
        Family::Elliptic(n) => Skeleton {
            one_handles: 2,
            handles: vec![(HandleTag::EllipticCore, -n, 1)],
        },
        Family::Cusp(w) if w.len() == 1 => Skeleton {
            one_handles: 1,
            handles: vec![(HandleTag::NodalDoublePass, -w.entries()[0] + 2, 1)],
        },
        Family::Cusp(w) => Skeleton {
            one_handles: 1,
            handles: w
                .entries()
                .iter()
                .enumerate()
                .map(|(i, &n)| (HandleTag::ChainUnknot(i), -n, 0))
                .collect(),
        },
    }
}

impl SteinHandleDiagram {
    /// Diagram for `family` with the given rotation numbers, one per 2-handle.
    pub fn new(family: &Family, rots: &[i64]) -> Result<Self> {
        let sk = skeleton(family);
        if rots.len() != sk.handles.len() {
            return Err(Error::DimensionMismatch {
                expected: sk.handles.len(),
                got: rots.len(),
            });
        }
        let handles = sk
            .handles
            .iter()
            .zip(rots)
            .map(|(&(tag, framing, genus), &rot)| TwoHandleSpec::new(tag, framing, genus, rot))
            .collect::<Result<_>>()?;
        Ok(SteinHandleDiagram {
            one_handle_count: sk.one_handles,
            handles,
            family: family.clone(),
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn one_handle_count(&self) -> usize {
        self.one_handle_count
    }

    pub fn handles(&self) -> &[TwoHandleSpec] {
        &self.handles
    }

    pub fn rot_vector(&self) -> Vec<i64> {
        self.handles.iter().map(|h| h.rot).collect()
    }

    /// The same diagram with every rotation number negated (orientation
    /// reversal of all attaching circles).
    pub fn negated(&self) -> Self {
        SteinHandleDiagram {
            handles: self.handles.iter().map(TwoHandleSpec::negated).collect(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> SteinDiagramJson {
        SteinDiagramJson {
            family: self.family.clone(),
            one_handles: self.one_handle_count,
            handles: self
                .handles
                .iter()
                .map(|h| HandleJson {
                    framing: h.framing,
                    tb: h.tb,
                    rot: h.rot,
                    genus: h.genus,
                })
                .collect(),
        }
    }

    /// Rebuilds a diagram from its wire form, checking it against the family.
    pub fn from_json(j: &SteinDiagramJson) -> Result<Self> {
        let rots: Vec<i64> = j.handles.iter().map(|h| h.rot).collect();
        let d = Self::new(&j.family, &rots)?;
        if d.to_json() != *j {
            return Err(Error::InvalidParameter("diagram data disagrees with its family".into()));
        }
        Ok(d)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}: {} 1-handle{}, {} 2-handle{}\n",
            self.family,
            self.one_handle_count,
            if self.one_handle_count == 1 { "" } else { "s" },
            self.handles.len(),
            if self.handles.len() == 1 { "" } else { "s" },
        );
        for h in &self.handles {
            let _ = writeln!(out, "  {}", h.to_text());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandleJson {
    pub framing: i64,
    pub tb: i64,
    pub rot: i64,
    pub genus: u32,
}

/// Wire form `{"family":…, "one_handles":h, "handles":[{framing,tb,rot,genus}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinDiagramJson {
    pub family: Family,
    pub one_handles: usize,
    pub handles: Vec<HandleJson>,
}

/// Number of Stein diagrams: `n + 1` (elliptic) or `Π(n_i - 1)` (cusp).
pub fn filling_count(family: &Family) -> usize {
    skeleton(family)
        .handles
        .iter()
        .map(|&(tag, f, _)| (stabilizations(tag, f).expect("skeleton framings are Stein") + 1) as usize)
        .product()
}

pub fn enumerate_stein_fillings(family: &Family) -> Vec<SteinHandleDiagram> {
    enumerate_stein_fillings_with(family, Execution::default())
}

/// All Legendrian realizations, lexicographic in the rotation vector.
pub fn enumerate_stein_fillings_with(family: &Family, mode: Execution) -> Vec<SteinHandleDiagram> {
    let sk = skeleton(family);
    let ranges: Vec<Vec<i64>> = sk
        .handles
        .iter()
        .map(|&(tag, f, _)| rotation_range(tag, f).expect("skeleton framings are Stein"))
        .collect();
    let count = ranges.iter().map(Vec::len).product();
    map_indices(count, mode, |index| {
        let mut rest = index;
        let mut rots = vec![0; ranges.len()];
        for (slot, range) in rots.iter_mut().zip(&ranges).rev() {
            *slot = range[rest % range.len()];
            rest /= range.len();
        }
        SteinHandleDiagram::new(family, &rots).expect("rotations drawn from their ranges")
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Min,
    Max,
}

impl std::str::FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign> {
        match s {
            "min" => Ok(Sign::Min),
            "max" => Ok(Sign::Max),
            _ => Err(Error::InvalidParameter(format!("sign must be min or max, got {s}"))),
        }
    }
}

/// Every handle at the minimal (resp. maximal) rotation number.
pub fn canonical_filling(family: &Family, sign: Sign) -> SteinHandleDiagram {
    let rots: Vec<i64> = skeleton(family)
        .handles
        .iter()
        .map(|&(tag, f, _)| {
            let s = stabilizations(tag, f).expect("skeleton framings are Stein");
            match sign {
                Sign::Min => -s,
                Sign::Max => s,
            }
        })
        .collect();
    SteinHandleDiagram::new(family, &rots).expect("extremes are in range")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresentationKind {
    /// Genuine pairwise linking numbers and framings of the surgery link.
    LiteralLinking,
    /// The plumbing matrix: presents homology correctly but is not the
    /// literal linking matrix of the surgery picture.
    PlumbingPresentation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactComponent {
    pub tb: i64,
    pub rot: i64,
    /// Contact surgery coefficient, +1 or -1.
    pub coefficient: i64,
    /// Smooth framing `tb + coefficient`.
    pub framing: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactSurgeryDiagram {
    pub family: Family,
    pub components: Vec<ContactComponent>,
    #[serde(with = "crate::serde_int::matrix")]
    pub presentation_matrix: IntMatrix,
    pub presentation_kind: PresentationKind,
}

impl ContactSurgeryDiagram {
    pub fn plus_one_count(&self) -> usize {
        self.components.iter().filter(|c| c.coefficient == 1).count()
    }

    /// Rotation numbers in component order.
    pub fn rot_vector(&self) -> Vec<i64> {
        self.components.iter().map(|c| c.rot).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: contact surgery diagram\n", self.family);
        for (i, c) in self.components.iter().enumerate() {
            let _ = writeln!(
                out,
                "  K{}: contact ({:+}) surgery, tb = {}, rot = {}, smooth framing {}",
                i + 1,
                c.coefficient,
                c.tb,
                c.rot,
                c.framing
            );
        }
        out
    }
}

/// Replaces each 1-handle by a contact (+1)-surgery on a Legendrian unknot
/// (tb -1, rot 0); 2-handles become contact (-1)-surgeries. The (+1)
/// components come first.
pub fn to_contact_surgery(d: &SteinHandleDiagram) -> ContactSurgeryDiagram {
    let mut components: Vec<ContactComponent> = (0..d.one_handle_count)
        .map(|_| ContactComponent {
            tb: -1,
            rot: 0,
            coefficient: 1,
            framing: 0,
        })
        .collect();
    components.extend(d.handles.iter().map(|h| ContactComponent {
        tb: h.tb,
        rot: h.rot,
        coefficient: -1,
        framing: h.tb - 1,
    }));
    let (presentation_matrix, presentation_kind) = match &d.family {
        Family::Elliptic(n) => {
            // Borromean rings: pairwise linking zero.
            let mut q = IntMatrix::zeros(3, 3);
            q[(2, 2)] = (-n).into();
            (q, PresentationKind::LiteralLinking)
        }
        Family::Cusp(w) => (
            intersection_matrix(&cusp_graph(w)).with_leading_zeros(d.one_handle_count),
            PresentationKind::PlumbingPresentation,
        ),
    };
    ContactSurgeryDiagram {
        family: d.family.clone(),
        components,
        presentation_matrix,
        presentation_kind,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2z::CycleWord;

    fn cusp(v: &[i64]) -> Family {
        Family::Cusp(CycleWord::new(v.to_vec()).unwrap())
    }

    #[test]
    fn rotation_ranges() {
        assert_eq!(rotation_range(HandleTag::ChainUnknot(0), -2).unwrap(), [0]);
        assert_eq!(rotation_range(HandleTag::EllipticCore, -3).unwrap(), [-3, -1, 1, 3]);
        assert_eq!(rotation_range(HandleTag::NodalDoublePass, -2).unwrap(), [-2, 0, 2]);
        assert_eq!(rotation_range(HandleTag::ChainUnknot(0), -5).unwrap(), [-3, -1, 1, 3]);
        assert!(matches!(
            rotation_range(HandleTag::ChainUnknot(0), 0),
            Err(Error::FramingTooLarge { framing: 0, bound: -2 })
        ));
    }

    #[test]
    fn handle_validation() {
        assert!(TwoHandleSpec::new(HandleTag::ChainUnknot(0), -4, 0, 1).is_err());
        let h = TwoHandleSpec::new(HandleTag::ChainUnknot(0), -4, 0, 2).unwrap();
        assert_eq!(h.tb(), -3);
        assert_eq!(h.framing(), h.tb() - 1);
    }

    #[test]
    fn enumeration_examples() {
        let e = enumerate_stein_fillings(&Family::Elliptic(3));
        assert_eq!(e.len(), 4);
        assert_eq!(e.iter().map(|d| d.rot_vector()[0]).collect::<Vec<_>>(), [-3, -1, 1, 3]);
        assert!(e.iter().all(|d| d.one_handle_count() == 2));

        let c = enumerate_stein_fillings(&cusp(&[2, 2, 3]));
        let rots: Vec<Vec<i64>> = c.iter().map(SteinHandleDiagram::rot_vector).collect();
        assert_eq!(rots, [vec![0, 0, -1], vec![0, 0, 1]]);
        assert_eq!(filling_count(&cusp(&[3, 4, 5])), 2 * 3 * 4);
        assert_eq!(filling_count(&Family::Elliptic(9)), 10);
    }

    #[test]
    fn enumeration_is_lexicographic_in_both_modes() {
        let f = cusp(&[3, 4, 2, 5]);
        let seq = enumerate_stein_fillings_with(&f, Execution::Sequential);
        let par = enumerate_stein_fillings_with(&f, Execution::Parallel);
        assert_eq!(seq, par);
        let rots: Vec<Vec<i64>> = seq.iter().map(SteinHandleDiagram::rot_vector).collect();
        let mut sorted = rots.clone();
        sorted.sort();
        assert_eq!(rots, sorted);
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_filling(&cusp(&[2, 2, 3]), Sign::Min).rot_vector(), [0, 0, -1]);
        assert_eq!(canonical_filling(&Family::Elliptic(5), Sign::Min).rot_vector(), [-5]);
        assert_eq!(canonical_filling(&cusp(&[4]), Sign::Max).rot_vector(), [2]);
        let f = cusp(&[3, 5, 2]);
        assert_eq!(
            canonical_filling(&f, Sign::Min).negated(),
            canonical_filling(&f, Sign::Max)
        );
    }

    #[test]
    fn skeleton_shapes() {
        let d = canonical_filling(&Family::Elliptic(4), Sign::Min);
        assert_eq!(d.handles()[0].tag(), HandleTag::EllipticCore);
        assert_eq!((d.handles()[0].framing(), d.handles()[0].genus()), (-4, 1));
        let d = canonical_filling(&cusp(&[6]), Sign::Min);
        assert_eq!(d.one_handle_count(), 1);
        assert_eq!(d.handles()[0].tag(), HandleTag::NodalDoublePass);
        assert_eq!(d.handles()[0].framing(), -4);
    }

    #[test]
    fn contact_surgery_examples() {
        let cd = to_contact_surgery(&canonical_filling(&Family::Elliptic(1), Sign::Min));
        assert_eq!(cd.components.len(), 3);
        assert_eq!(cd.plus_one_count(), 2);
        assert_eq!(
            cd.components[0],
            ContactComponent {
                tb: -1,
                rot: 0,
                coefficient: 1,
                framing: 0
            }
        );
        assert_eq!(
            cd.components[2],
            ContactComponent {
                tb: 0,
                rot: -1,
                coefficient: -1,
                framing: -1
            }
        );
        assert_eq!(
            cd.presentation_matrix,
            IntMatrix::from_rows(&[[0, 0, 0], [0, 0, 0], [0, 0, -1]])
        );
        assert_eq!(cd.presentation_kind, PresentationKind::LiteralLinking);

        let cd = to_contact_surgery(&canonical_filling(&cusp(&[2, 2, 3]), Sign::Min));
        let tr: Vec<(i64, i64, i64)> = cd.components.iter().map(|c| (c.coefficient, c.tb, c.rot)).collect();
        assert_eq!(tr, [(1, -1, 0), (-1, -1, 0), (-1, -1, 0), (-1, -2, -1)]);
        assert_eq!(cd.presentation_kind, PresentationKind::PlumbingPresentation);
        assert!(cd.presentation_matrix.is_symmetric());
        assert_eq!(cd.presentation_matrix.rows(), 4);
    }

    #[test]
    fn json_round_trip() {
        let d = canonical_filling(&cusp(&[2, 3]), Sign::Min);
        let j = d.to_json();
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(
            s,
            r#"{"family":{"cusp":[2,3]},"one_handles":1,"handles":[{"framing":-2,"tb":-1,"rot":0,"genus":0},{"framing":-3,"tb":-2,"rot":-1,"genus":0}]}"#
        );
        let back: SteinDiagramJson = serde_json::from_str(&s).unwrap();
        assert_eq!(SteinHandleDiagram::from_json(&back).unwrap(), d);

        let mut bad = j.clone();
        bad.handles[0].tb = 5;
        assert!(SteinHandleDiagram::from_json(&bad).is_err());

        let cd = to_contact_surgery(&d);
        let s = serde_json::to_string(&cd).unwrap();
        assert_eq!(serde_json::from_str::<ContactSurgeryDiagram>(&s).unwrap(), cd);
    }
}
