//! Smith normal form over the integers, with unimodular transforms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::IntMatrix;

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal, its nonzero
/// entries positive and each dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal entries `d_1 | d_2 | ...`, zeros last.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }

    pub fn rank(&self) -> usize {
        self.d.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !a[(i, t)].is_zero() {
                    // remainder is smaller than the pivot: promote it
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !a[(t, j)].is_zero() {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot row and column are clear; enforce divisibility
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { u, d: a, v }
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| x < *b) {
                best = Some(((i, j), x));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_s`
/// with `d_1 | ... | d_s` and every `d_i >= 2`. The form is unique, so `==` is
/// group isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(with = "crate::serde_int::vec")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z^rows / (column span of m)`.
    pub fn cokernel(m: &IntMatrix) -> Self {
        let snf = smith_normal_form(m);
        let factors = snf.invariant_factors();
        let rank = snf.rank();
        AbelianGroup {
            free_rank: m.rows() - rank,
            torsion: factors.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect(),
        }
    }

    /// Group presented by generators and relation rows (`relations[r][g]`).
    pub fn presented(relations: &IntMatrix) -> Self {
        Self::cokernel(&relations.transpose())
    }

    pub fn with_extra_free(mut self, extra: usize) -> Self {
        self.free_rank += extra;
        self
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn check(m: &IntMatrix) -> SnfResult {
        let r = smith_normal_form(m);
        assert_eq!(&(&r.u * m) * &r.v, r.d, "U M V != D for {m}");
        assert!(r.u.is_unimodular() && r.v.is_unimodular());
        assert!(r.d.is_diagonal());
        let diag = r.d.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zeros must come last: {diag:?}");
            } else {
                assert!(w[1].is_multiple_of(&w[0]), "chain broken: {diag:?}");
            }
        }
        r
    }

    #[test]
    fn fixed_examples() {
        let r = check(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(r.invariant_factors(), big(&[1, 6]));
        let r = check(&IntMatrix::zeros(2, 3));
        assert!(r.d.is_zero());
        let r = check(&IntMatrix::from_rows(&[[6, -3], [5, -3]]));
        assert_eq!(r.invariant_factors(), big(&[1, 3]));
        let r = check(&IntMatrix::from_rows(&[[-2, 1, 1], [1, -2, 1], [1, 1, -3]]));
        assert_eq!(r.invariant_factors(), big(&[1, 1, 3]));
    }

    #[test]
    fn cokernels() {
        let g = AbelianGroup::cokernel(&IntMatrix::from_rows(&[[-3]]));
        assert_eq!(
            g,
            AbelianGroup {
                free_rank: 0,
                torsion: big(&[3])
            }
        );
        let g = AbelianGroup::cokernel(&IntMatrix::from_rows(&[[0, 4], [0, 0]]));
        assert_eq!(g.to_string(), "Z ⊕ Z/4");
        let g = AbelianGroup::cokernel(&IntMatrix::from_rows(&[[2, 0], [0, 2]]));
        assert_eq!(g.to_string(), "Z/2 ⊕ Z/2");
        assert_eq!(AbelianGroup::free(0).to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let g = AbelianGroup {
            free_rank: 2,
            torsion: big(&[3]),
        };
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"free_rank":2,"torsion":[3]}"#);
        assert_eq!(serde_json::from_str::<AbelianGroup>(&s).unwrap(), g);
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..10, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
                IntMatrix::from_rows(&rows)
            })
        })
    }

    proptest! {
        #[test]
        fn snf_contract_holds(m in small_matrix()) {
            check(&m);
        }

        #[test]
        fn snf_is_idempotent(m in small_matrix()) {
            let d = smith_normal_form(&m).d;
            prop_assert_eq!(smith_normal_form(&d).d, d);
        }

        #[test]
        fn torsion_order_matches_determinant(m in small_matrix()) {
            if m.is_square() {
                let det = m.determinant();
                let g = AbelianGroup::cokernel(&m);
                if det.is_zero() {
                    prop_assert!(g.free_rank > 0);
                } else {
                    prop_assert_eq!(g.free_rank, 0);
                    prop_assert_eq!(g.torsion_order(), det.abs());
                }
            }
        }
    }
}
