//! Per-family invariant suite, runnable over a whole parameter range.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::family::{Family, SuiteBounds};
use crate::invariants::{
    adjunction_defect, c1_evaluations, d3_from_solution, d3_invariant, euler_class, euler_rot_vector,
    homology_cross_check, is_canonical, kernel_basis, solve,
};
use crate::legendrian::{
    canonical_filling, enumerate_stein_fillings_with, rotation_range, to_contact_surgery, Sign, SteinHandleDiagram,
};
use crate::matrix::IntMatrix;
use crate::openbook::{family_openbook, homological_monodromy_action};
use crate::par::{map_slice, Execution};
use crate::plumbing::{family_graph, intersection_matrix};
use crate::sl2z::{classify, cyclic_equal, factor_cycle, MonodromyKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: Family,
    pub checks: Vec<Check>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.family, if self.passed() { "ok" } else { "FAILED" });
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {}: {}\n",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        out
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }
}

pub fn verify_family(family: &Family) -> FamilyReport {
    verify_family_with(family, Execution::Sequential)
}

/// Runs every invariant check for one family. `mode` only affects the
/// internal enumeration.
pub fn verify_family_with(family: &Family, mode: Execution) -> FamilyReport {
    let mut checks = Checks(Vec::new());
    let a = family.monodromy();
    let class = classify(&a);

    match family {
        Family::Elliptic(_) => checks.push(
            "monodromy",
            class.kind == MonodromyKind::Parabolic && class.is_elliptic_compatible(),
            format!("A = {a}, trace {}", class.trace),
        ),
        Family::Cusp(w) => {
            let roundtrip = factor_cycle(&a).map(|f| cyclic_equal(&f, w)).unwrap_or(false);
            checks.push(
                "monodromy",
                class.is_cusp_link() && class.kind == MonodromyKind::Hyperbolic && roundtrip,
                format!("A = {a}, trace {}, factor roundtrip {roundtrip}", class.trace),
            );
        }
    }

    let ob = family_openbook(family);
    let (want_b, want_len) = match family {
        Family::Elliptic(n) => (*n as usize, *n as usize),
        Family::Cusp(w) => (w.boundary_count(), w.len() + w.boundary_count()),
    };
    checks.push(
        "open_book_data",
        ob.page_genus() == 1 && ob.boundary_count() == want_b && ob.twist_word().len() == want_len,
        format!(
            "genus {}, {} boundaries, word length {}",
            ob.page_genus(),
            ob.boundary_count(),
            ob.twist_word().len()
        ),
    );

    match homological_monodromy_action(&ob) {
        Ok(phi) => {
            let n = phi.rows();
            let mut nil = phi.clone();
            for i in 0..n {
                nil[(i, i)] -= 1;
            }
            let sq = &nil * &nil;
            checks.push(
                "monodromy_unipotent",
                sq.is_zero(),
                format!("(φ* - 1)^2 = 0 on rank {n}"),
            );
        }
        Err(e) => checks.push("monodromy_unipotent", false, e.to_string()),
    }

    let report = homology_cross_check(family);
    let mut homology_ok = report.all_equal;
    let mut detail = format!(
        "plumbing {}, monodromy {}, open book {}",
        report.plumbing, report.monodromy, report.openbook
    );
    if let Family::Cusp(_) = family {
        let det = intersection_matrix(&family_graph(family)).determinant().abs();
        let expected: BigInt = &class.trace - 2;
        homology_ok &= det == expected && report.plumbing.torsion_order() == expected;
        detail.push_str(&format!(", |det Q| = {det}, trace - 2 = {expected}"));
    }
    checks.push("homology_agreement", homology_ok, detail);

    let fillings = enumerate_stein_fillings_with(family, mode);
    let expected_count: usize = match family {
        Family::Elliptic(n) => *n as usize + 1,
        Family::Cusp(w) => w.entries().iter().map(|&n| (n - 1) as usize).product(),
    };
    let framings_ok = fillings
        .iter()
        .all(|d| d.handles().iter().all(|h| h.framing() == h.tb() - 1));
    let ranges_ok = match fillings.first() {
        Some(d) => d.handles().iter().enumerate().all(|(j, h)| {
            let mut seen: Vec<i64> = fillings.iter().map(|e| e.handles()[j].rot()).collect();
            seen.sort_unstable();
            seen.dedup();
            let range = rotation_range(h.tag(), h.framing()).unwrap_or_default();
            let s = match family {
                Family::Elliptic(n) => *n,
                Family::Cusp(w) => w.entries()[j] - 2,
            };
            let expected: Vec<i64> = (0..=s).map(|i| 2 * i - s).collect();
            seen == range && range == expected
        }),
        None => false,
    };
    checks.push(
        "filling_count",
        fillings.len() == expected_count && framings_ok && ranges_ok,
        format!("{} diagrams (expected {expected_count})", fillings.len()),
    );

    let defect_free = |d: &SteinHandleDiagram| d.handles().iter().all(|h| adjunction_defect(h) == 0);
    let direct: Vec<&SteinHandleDiagram> = fillings.iter().filter(|d| defect_free(d)).collect();
    let negated: Vec<&SteinHandleDiagram> = fillings
        .iter()
        .filter(|d| !defect_free(d) && defect_free(&d.negated()))
        .collect();
    let min = canonical_filling(family, Sign::Min);
    let max = canonical_filling(family, Sign::Max);
    let canonical_count = fillings.iter().filter(|d| is_canonical(d)).count();
    let uniqueness = direct.len() == 1
        && negated.len() == 1
        && *direct[0] == min
        && *negated[0] == max
        && canonical_count == 2
        && min.negated() == max;
    checks.push(
        "adjunction_uniqueness",
        uniqueness,
        format!(
            "defect-free {:?}, after negation {:?}",
            direct.first().map(|d| d.rot_vector()),
            negated.first().map(|d| d.rot_vector())
        ),
    );

    let mut euler_ok = true;
    let mut witnesses = Vec::new();
    for (d, sign) in [(&min, 1i64), (&max, -1i64)] {
        match euler_class(family, &euler_rot_vector(d)) {
            Ok(e) => {
                let expected: Vec<BigInt> = match family {
                    Family::Elliptic(_) => vec![0.into(), 0.into(), sign.into()],
                    Family::Cusp(w) => vec![sign.into(); w.len()],
                };
                euler_ok &= e.is_zero && e.order == Some(BigInt::one()) && e.witness.as_ref() == Some(&expected);
                witnesses.push(format!("{:?}", e.witness.unwrap_or_default()));
            }
            Err(_) => euler_ok = false,
        }
    }
    checks.push(
        "euler_vanishing",
        euler_ok,
        format!("witnesses {}", witnesses.join(", ")),
    );

    let mut c1: Vec<Vec<i64>> = fillings.iter().map(c1_evaluations).collect();
    c1.sort();
    c1.dedup();
    checks.push(
        "c1_distinct",
        c1.len() == fillings.len(),
        format!("{} distinct evaluation vectors", c1.len()),
    );

    match family {
        Family::Elliptic(_) => {
            let mut ok = true;
            let mut values = Vec::new();
            for d in [&min, &max] {
                let cd = to_contact_surgery(d);
                match d3_invariant(&cd) {
                    Ok(v) => {
                        ok &= d3_independent_of_solution(&cd.presentation_matrix, &cd, &v);
                        values.push(v.to_string());
                    }
                    Err(_) => ok = false,
                }
            }
            checks.push(
                "d3",
                ok,
                format!("min {}, max {}", values[0], values.get(1).map_or("-", |s| s)),
            );
        }
        Family::Cusp(_) => {
            let res = d3_invariant(&to_contact_surgery(&min));
            checks.push(
                "d3",
                res == Err(Error::UnsupportedPresentation),
                "unsupported for plumbing presentations",
            );
        }
    }

    FamilyReport {
        family: family.clone(),
        checks: checks.0,
    }
}

fn d3_independent_of_solution(
    q: &IntMatrix,
    cd: &crate::legendrian::ContactSurgeryDiagram,
    value: &BigRational,
) -> bool {
    let rot: Vec<BigInt> = cd.rot_vector().into_iter().map(BigInt::from).collect();
    let Some(x) = solve(q, &rot) else {
        return false;
    };
    kernel_basis(q).iter().enumerate().all(|(i, k)| {
        let s = BigRational::from_integer(BigInt::from(i as i64 + 1));
        let y: Vec<BigRational> = x.iter().zip(k).map(|(a, b)| a + &s * b).collect();
        d3_from_solution(cd, &y).as_ref() == Ok(value)
    })
}

pub fn verify_suite(bounds: SuiteBounds) -> Vec<FamilyReport> {
    verify_suite_with(bounds, Execution::default())
}

/// Verifies every family within `bounds`; reports come back in suite order.
pub fn verify_suite_with(bounds: SuiteBounds, mode: Execution) -> Vec<FamilyReport> {
    let families = bounds.families();
    map_slice(&families, mode, |f| verify_family_with(f, Execution::Sequential))
}
