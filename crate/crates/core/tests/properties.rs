use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use cusplink::invariants::{euler_class, euler_rot_vector, homology_cross_check, is_canonical, torus_bundle_homology};
use cusplink::legendrian::{
    canonical_filling, enumerate_stein_fillings, rotation_range, HandleTag, Sign, SteinHandleDiagram,
};
use cusplink::openbook::{cusp_openbook, homological_monodromy_action, openbook_homology, Curve};
use cusplink::plumbing::{boundary_homology, cusp_graph, elliptic_graph, intersection_matrix};
use cusplink::{classify, cycle_monodromy, cycle_words, cyclic_equal, factor_cycle, CycleWord, Family, Sl2Matrix};

/// Plain 2x2 product in i128, independent of `Sl2Matrix`.
fn oracle_product(w: &[i64]) -> [[i128; 2]; 2] {
    let mut acc = [[1i128, 0], [0, 1]];
    for &n in w {
        let g = [[n as i128, -1], [1, 0]];
        let mut out = [[0i128; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = acc[i][0] * g[0][j] + acc[i][1] * g[1][j];
            }
        }
        acc = out;
    }
    acc
}

fn entries(a: &Sl2Matrix) -> Vec<BigInt> {
    a.entries().into_iter().cloned().collect()
}

#[test]
fn monodromy_suite() {
    for w in cycle_words(5, 6) {
        let a = cycle_monodromy(&w);
        let o = oracle_product(w.entries());
        assert_eq!(
            entries(&a),
            [o[0][0], o[0][1], o[1][0], o[1][1]].map(BigInt::from).to_vec()
        );
        assert_eq!(o[0][0] * o[1][1] - o[0][1] * o[1][0], 1);
        assert!(classify(&a).is_cusp_link(), "{w}: trace {}", a.trace());
        let f = factor_cycle(&a).unwrap();
        assert!(cyclic_equal(&f, &w), "{w} factored as {f}");
        assert_eq!(f, w.normalized());
        for r in 1..w.len() {
            assert_eq!(cycle_monodromy(&w.rotated(r)).trace(), a.trace());
        }
    }
}

#[test]
fn plumbing_suite() {
    for w in cycle_words(5, 6) {
        let g = cusp_graph(&w);
        let q = intersection_matrix(&g);
        assert!(q.is_symmetric());
        assert!(q.diagonal().iter().all(|d| *d <= BigInt::from(-1)), "{w}: {q}");
        let trace_minus_two = cycle_monodromy(&w).trace() - 2;
        assert_eq!(q.determinant().abs(), trace_minus_two, "{w}");
        let h = boundary_homology(&g);
        assert_eq!(h.torsion_order(), trace_minus_two);
        assert_eq!(h, torus_bundle_homology(&Family::Cusp(w.clone())), "{w}");
    }
    for n in 1..=10 {
        let h = boundary_homology(&elliptic_graph(n).unwrap());
        assert_eq!(h.free_rank, 2);
        let expected: Vec<BigInt> = if n == 1 { vec![] } else { vec![n.into()] };
        assert_eq!(h.torsion, expected);
        assert_eq!(h, torus_bundle_homology(&Family::Elliptic(n)));
    }
}

#[test]
fn openbook_suite() {
    for w in cycle_words(5, 6) {
        let ob = cusp_openbook(&w);
        let b: usize = w.entries().iter().map(|&n| (n - 2) as usize).sum();
        assert_eq!(ob.page_genus(), 1);
        assert_eq!(ob.boundary_count(), b);
        assert_eq!(ob.twist_word().len(), w.len() + b);
        let report = homology_cross_check(&Family::Cusp(w.clone()));
        assert!(report.all_equal, "{w}: {report:?}");

        let phi = homological_monodromy_action(&ob).unwrap();
        let mut nil = phi.clone();
        for i in 0..nil.rows() {
            nil[(i, i)] -= 1;
        }
        assert!((&nil * &nil).is_zero(), "{w}");
    }
    for n in 1..=10 {
        let report = homology_cross_check(&Family::Elliptic(n));
        assert!(report.all_equal, "Elliptic({n}): {report:?}");
    }
}

#[test]
fn gamma_reordering_is_invisible_to_homology() {
    for w in cycle_words(3, 5) {
        let ob = cusp_openbook(&w);
        let (deltas, mut gammas): (Vec<Curve>, Vec<Curve>) = ob
            .twist_word()
            .iter()
            .cloned()
            .partition(|c| matches!(c, Curve::Delta(_)));
        gammas.reverse();
        // interleave: gammas first, then deltas
        let reordered = ob.with_twist_word(gammas.into_iter().chain(deltas).collect()).unwrap();
        assert_eq!(
            homological_monodromy_action(&reordered).unwrap(),
            homological_monodromy_action(&ob).unwrap()
        );
        assert_eq!(openbook_homology(&reordered).unwrap(), openbook_homology(&ob).unwrap());
    }
}

fn all_families(max_len: usize, max_entry: i64, max_n: i64) -> Vec<Family> {
    let mut fams: Vec<Family> = (1..=max_n).map(Family::Elliptic).collect();
    fams.extend(cycle_words(max_len, max_entry).into_iter().map(Family::Cusp));
    fams
}

#[test]
fn legendrian_suite() {
    for f in all_families(4, 5, 10) {
        let fillings = enumerate_stein_fillings(&f);
        let expected = match &f {
            Family::Elliptic(n) => *n as usize + 1,
            Family::Cusp(w) => w.entries().iter().map(|&n| (n - 1) as usize).product(),
        };
        assert_eq!(fillings.len(), expected, "{f}");
        for d in &fillings {
            for h in d.handles() {
                assert_eq!(h.framing(), h.tb() - 1);
            }
        }
        let min = canonical_filling(&f, Sign::Min);
        let max = canonical_filling(&f, Sign::Max);
        let neg: Vec<i64> = max.rot_vector().iter().map(|r| -r).collect();
        assert_eq!(min.rot_vector(), neg);
        let canon: Vec<&SteinHandleDiagram> = fillings.iter().filter(|d| is_canonical(d)).collect();
        assert_eq!(canon, [&min, &max], "{f}");

        let mut c1: Vec<Vec<i64>> = fillings.iter().map(SteinHandleDiagram::rot_vector).collect();
        c1.dedup();
        assert_eq!(c1.len(), fillings.len());

        for (d, s) in [(&min, 1), (&max, -1)] {
            let e = euler_class(&f, &euler_rot_vector(d)).unwrap();
            assert!(e.is_zero, "{f}");
            let expected: Vec<BigInt> = match &f {
                Family::Elliptic(_) => vec![0.into(), 0.into(), s.into()],
                Family::Cusp(w) => vec![s.into(); w.len()],
            };
            assert_eq!(e.witness, Some(expected));
        }
    }
}

#[test]
fn rotation_ranges_are_symmetric_with_constant_parity() {
    for tag in [
        HandleTag::ChainUnknot(0),
        HandleTag::EllipticCore,
        HandleTag::NodalDoublePass,
    ] {
        for framing in -12..=tag.tb_max() - 1 {
            let r = rotation_range(tag, framing).unwrap();
            let mut neg: Vec<i64> = r.iter().map(|x| -x).collect();
            neg.reverse();
            assert_eq!(r, neg);
            assert!(r.windows(2).all(|w| w[1] - w[0] == 2));
            let s = tag.tb_max() - 1 - framing;
            assert!(r.iter().all(|x| (x - s).rem_euclid(2) == 0));
        }
        assert!(rotation_range(tag, tag.tb_max()).is_err());
    }
}

#[test]
fn elliptic_euler_class_is_rotation_mod_n() {
    for n in 2..=10 {
        let f = Family::Elliptic(n);
        for d in enumerate_stein_fillings(&f) {
            let e = euler_class(&f, &euler_rot_vector(&d)).unwrap();
            let rot = d.rot_vector()[0];
            assert_eq!(e.is_zero, rot % n == 0, "n={n} rot={rot}");
        }
    }
}

fn sl2_conjugator() -> impl Strategy<Value = Sl2Matrix> {
    proptest::collection::vec((any::<bool>(), -3i64..4), 0..6).prop_map(|steps| {
        steps.into_iter().fold(Sl2Matrix::identity(), |acc, (upper, k)| {
            let e = if upper {
                Sl2Matrix::new(1, k, 0, 1).unwrap()
            } else {
                Sl2Matrix::new(1, 0, k, 1).unwrap()
            };
            acc.mul(&e)
        })
    })
}

fn cycle_word() -> impl Strategy<Value = CycleWord> {
    proptest::collection::vec(2i64..7, 1..6).prop_filter_map("valid cycle word", |v| CycleWord::new(v).ok())
}

proptest! {
    #[test]
    fn factor_undoes_conjugation(w in cycle_word(), p in sl2_conjugator()) {
        let a = cycle_monodromy(&w).conjugate_by(&p);
        let f = factor_cycle(&a).unwrap();
        prop_assert!(cyclic_equal(&f, &w), "{} -> {}", w, f);
    }
}
