//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::Command;

use num_bigint::BigInt;
use num_rational::BigRational;

use cusplink::invariants::{
    adjunction_defect, c1_evaluations, d3_from_solution, d3_invariant, euler_class, euler_rot_vector,
    homology_cross_check, kernel_basis, solve,
};
use cusplink::legendrian::SteinHandleDiagram;
use cusplink::legendrian::{canonical_filling, enumerate_stein_fillings, rotation_range, to_contact_surgery, Sign};
use cusplink::openbook::family_openbook;
use cusplink::plumbing::{family_graph, intersection_matrix};
use cusplink::{classify, cycle_monodromy, cyclic_equal, factor_cycle, Family, SuiteBounds};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn suite() -> Vec<Family> {
    SuiteBounds::STANDARD.families()
}

fn cusp_words() -> Vec<cusplink::CycleWord> {
    suite()
        .into_iter()
        .filter_map(|f| match f {
            Family::Cusp(w) => Some(w),
            Family::Elliptic(_) => None,
        })
        .collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn counting_elliptic() -> Outcome {
    for n in 1..=10 {
        let f = Family::Elliptic(n);
        let rots: Vec<i64> = enumerate_stein_fillings(&f).iter().map(|d| d.rot_vector()[0]).collect();
        let expected: Vec<i64> = (0..=n).map(|i| -n + 2 * i).collect();
        ensure(rots == expected, || {
            format!("{f}: rotations {rots:?}, expected {expected:?}")
        })?;
    }
    Ok("n = 1..10: n+1 fillings, rotations {-n, -n+2, ..., n}".into())
}

fn counting_cusp() -> Outcome {
    let words = cusp_words();
    for w in &words {
        let f = Family::Cusp(w.clone());
        let all = enumerate_stein_fillings(&f);
        let expected: usize = w.entries().iter().map(|&n| (n - 1) as usize).product();
        ensure(all.len() == expected, || {
            format!("{f}: {} fillings, expected {expected}", all.len())
        })?;
        for (i, &n) in w.entries().iter().enumerate() {
            let h = &all[0].handles()[i];
            let range = rotation_range(h.tag(), h.framing()).map_err(|e| e.to_string())?;
            let want: Vec<i64> = (0..n - 1).map(|j| 2 - n + 2 * j).collect();
            ensure(range == want, || format!("{f} handle {i}: {range:?}"))?;
            let mut seen: Vec<i64> = all.iter().map(|d| d.rot_vector()[i]).collect();
            seen.sort();
            seen.dedup();
            ensure(seen == want, || format!("{f} handle {i}: enumerated {seen:?}"))?;
        }
    }
    Ok(format!("{} cycle words with k <= 4, ni <= 5", words.len()))
}

fn monodromy() -> Outcome {
    let words = cusp_words();
    for w in &words {
        let a = cycle_monodromy(w);
        ensure(classify(&a).is_cusp_link(), || format!("{w}: trace {}", a.trace()))?;
        let back = factor_cycle(&a).map_err(|e| format!("{w}: {e}"))?;
        ensure(cyclic_equal(&back, w), || format!("{w} factored as {back}"))?;
    }
    Ok(format!("trace >= 3 and factor roundtrip on {} words", words.len()))
}

fn openbook_data() -> Outcome {
    for f in suite() {
        let ob = family_openbook(&f);
        let (b, len) = match &f {
            Family::Elliptic(n) => (*n as usize, *n as usize),
            Family::Cusp(w) => (w.boundary_count(), w.len() + w.boundary_count()),
        };
        ensure(
            ob.page_genus() == 1 && ob.boundary_count() == b && ob.twist_word().len() == len,
            || format!("{f}: {}", ob.to_text()),
        )?;
    }
    Ok("page genus 1, boundary count and word length on the suite".into())
}

fn homology() -> Outcome {
    for f in suite() {
        let r = homology_cross_check(&f);
        ensure(r.all_equal, || {
            format!(
                "{f}: plumbing {}, monodromy {}, open book {}",
                r.plumbing, r.monodromy, r.openbook
            )
        })?;
        if let Family::Cusp(w) = &f {
            let det = intersection_matrix(&family_graph(&f)).determinant();
            let t: BigInt = cycle_monodromy(w).trace() - 2;
            ensure(det.magnitude() == t.magnitude(), || {
                format!("{f}: |det Q| = {det}, trace - 2 = {t}")
            })?;
        }
    }
    Ok("plumbing = monodromy = open book, |det Q| = trace - 2".into())
}

fn euler() -> Outcome {
    for f in suite() {
        for (sign, s) in [(Sign::Min, 1), (Sign::Max, -1)] {
            let d = canonical_filling(&f, sign);
            let e = euler_class(&f, &euler_rot_vector(&d)).map_err(|e| format!("{f}: {e}"))?;
            let want: Vec<BigInt> = match &f {
                Family::Elliptic(_) => vec![0.into(), 0.into(), s.into()],
                Family::Cusp(w) => vec![s.into(); w.len()],
            };
            ensure(e.is_zero && e.witness.as_ref() == Some(&want), || {
                format!("{f} {sign:?}: zero {}, witness {:?}", e.is_zero, e.witness)
            })?;
        }
    }
    Ok("both canonical signs vanish with witnesses (±1,...,±1) and (0,0,±1)".into())
}

fn defect_free(d: &SteinHandleDiagram) -> bool {
    d.handles().iter().all(|h| adjunction_defect(h) == 0)
}

fn adjunction() -> Outcome {
    for f in suite() {
        let all = enumerate_stein_fillings(&f);
        let direct: Vec<Vec<i64>> = all.iter().filter(|d| defect_free(d)).map(|d| d.rot_vector()).collect();
        let negated: Vec<Vec<i64>> = all
            .iter()
            .filter(|d| defect_free(&d.negated()))
            .map(|d| d.rot_vector())
            .collect();
        let ok =
            direct.len() == 1 && negated.len() == 1 && negated[0] == direct[0].iter().map(|r| -r).collect::<Vec<_>>();
        ensure(ok, || {
            format!("{f}: defect-free {direct:?}, after negation {negated:?}")
        })?;
    }
    Ok("exactly one defect-free vector per enumeration, its negation unique after negating".into())
}

fn d3() -> Outcome {
    let mut values = Vec::new();
    for n in 1..=10 {
        let f = Family::Elliptic(n);
        for sign in [Sign::Min, Sign::Max] {
            let cd = to_contact_surgery(&canonical_filling(&f, sign));
            let base = d3_invariant(&cd).map_err(|e| format!("{f}: {e}"))?;
            let rot: Vec<BigInt> = cd.rot_vector().into_iter().map(BigInt::from).collect();
            let x = solve(&cd.presentation_matrix, &rot).ok_or("no rational solution")?;
            for (k, kv) in kernel_basis(&cd.presentation_matrix).iter().enumerate() {
                let shift = BigRational::from_integer((k as i64 + 2).into());
                let y: Vec<BigRational> = x.iter().zip(kv).map(|(a, b)| a + b * &shift).collect();
                let other = d3_from_solution(&cd, &y).map_err(|e| e.to_string())?;
                ensure(other == base, || format!("{f} {sign:?}: {base} vs {other}"))?;
            }
            if n == 1 && sign == Sign::Min {
                let half = BigRational::new(1.into(), 2.into());
                ensure(base == half, || format!("Elliptic(1) min: d3 = {base}"))?;
            }
            values.push(format!("{n}{}:{base}", if sign == Sign::Min { "-" } else { "+" }));
        }
    }
    Ok(format!(
        "Elliptic(1) min = 1/2, kernel independent for n = 1..10 ({})",
        values.join(" ")
    ))
}

fn c1_distinct() -> Outcome {
    for f in suite() {
        let mut c1: Vec<Vec<i64>> = enumerate_stein_fillings(&f).iter().map(c1_evaluations).collect();
        let total = c1.len();
        c1.sort();
        c1.dedup();
        ensure(c1.len() == total, || format!("{f}: {} distinct of {total}", c1.len()))?;
    }
    Ok("c1 evaluation vectors pairwise distinct on the suite".into())
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_cusplink");
    let invocations: &[&[&str]] = &[
        &["classify", "--matrix", "5,-2,3,-1", "--json"],
        &["factor", "--matrix", "5,-2,3,-1"],
        &["graph", "--cusp", "2,2,3"],
        &["openbook", "--cusp", "4"],
        &["enumerate", "--cusp", "3,4,5", "--json"],
        &["canonical", "--elliptic", "7"],
        &["inv", "--cusp", "2,2,3", "--euler", "--canonical", "min"],
        &["invariants", "--elliptic", "4"],
        &["verify", "--suite", "--json"],
    ];
    for args in invocations {
        let runs: Vec<_> = (0..3)
            .map(|_| Command::new(bin).args(*args).output().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        ensure(runs.iter().all(|o| o.status.success()), || format!("{args:?} failed"))?;
        ensure(runs.windows(2).all(|w| w[0].stdout == w[1].stdout), || {
            format!("{args:?} output differs between runs")
        })?;
    }
    let out = Command::new(bin)
        .args(["verify", "--suite"])
        .output()
        .map_err(|e| e.to_string())?;
    let summary = String::from_utf8_lossy(&out.stdout)
        .lines()
        .last()
        .unwrap_or_default()
        .to_string();
    ensure(out.status.code() == Some(0), || {
        format!("verify --suite exited {:?}: {summary}", out.status.code())
    })?;
    Ok(format!(
        "{} commands byte-identical over 3 runs, verify --suite: {summary}",
        invocations.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("elliptic filling count", counting_elliptic),
        ("cusp filling count", counting_cusp),
        ("monodromy", monodromy),
        ("open book data", openbook_data),
        ("triple homology agreement", homology),
        ("euler class vanishing", euler),
        ("adjunction uniqueness", adjunction),
        ("d3", d3),
        ("c1 distinct", c1_distinct),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
