//! End-to-end acceptance checks. Each criterion runs under its own time
//! budget and prints one PASS/FAIL line; the test fails if any line fails.

use std::time::{Duration, Instant};

use clifford_groups::classify::{
    classify, stated_dimension_identities, table_consistency, verify_classification,
};
use clifford_groups::groups::{bracket_closure_check, lie_algebra_dimension, vee_group, GroupId};
use clifford_groups::multivector::{verify_dagger_identities, Signature};
use clifford_groups::report::{Report, Status};
use clifford_groups::representation::{
    build_representation, transposition_witness, verify_additional_signature_table,
    verify_conjugation_identities, verify_relat, RepClass, Representation,
};
use clifford_groups::sampling::spin_g2_comparison;
use clifford_groups::scalars::{QuaternionRational, RealScalar, Scalar};
use clifford_groups::transport::verify_transports;
use rayon::prelude::*;

const SEED: u64 = 20240601;

struct Outcome {
    ok: bool,
    note: String,
}

fn outcome(ok: bool, note: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        note: note.into(),
    }
}

fn from_reports(reports: &[Report]) -> Outcome {
    let bad: Vec<&Report> = reports.iter().filter(|r| !r.passed()).collect();
    let note = match bad.first() {
        None => format!("{} reports", reports.len()),
        Some(r) => format!(
            "{} of {} failed, first: {} {:?} {}",
            bad.len(),
            reports.len(),
            r.claim,
            r.signature,
            r.details
        ),
    };
    outcome(bad.is_empty(), note)
}

fn up_to(n: usize) -> Vec<Signature> {
    Signature::all_up_to(1, n)
}

/// Class and full matrix size by `p - q mod 8`, written out independently.
fn expected_class(sig: Signature) -> (RepClass, usize) {
    let n = sig.n() as u32;
    match (sig.p as i64 - sig.q as i64).rem_euclid(8) {
        0 | 2 => (RepClass::RealFull, 1 << (n / 2)),
        1 => (RepClass::RealPair, 2 << ((n - 1) / 2)),
        3 | 7 => (RepClass::Complex, 1 << ((n - 1) / 2)),
        4 | 6 => (RepClass::Quaternion, 1 << ((n - 2) / 2)),
        _ => (RepClass::QuaternionPair, 2 << ((n - 3) / 2)),
    }
}

fn anticommutators_hold(rep: &Representation) -> bool {
    let sig = rep.signature();
    let gens = rep.generators();
    let id = rep.identity();
    (0..gens.len()).all(|a| {
        (0..gens.len()).all(|b| {
            let ab = gens[a].mat_mul(&gens[b]).unwrap();
            let ba = gens[b].mat_mul(&gens[a]).unwrap();
            let sum = ab.add(&ba).unwrap();
            let want = if a == b {
                id.scale(&QuaternionRational::from_i64(2 * sig.eta(a + 1)))
            } else {
                id.scale(&QuaternionRational::zero())
            };
            sum == want
        })
    })
}

fn criterion_representations() -> Outcome {
    let bad: Vec<String> = up_to(8)
        .into_par_iter()
        .filter_map(|sig| {
            let rep = match build_representation(sig) {
                Ok(r) => r,
                Err(e) => return Some(format!("{sig}: {e}")),
            };
            let (class, size) = expected_class(sig);
            let ok = rep.generators().len() == sig.n()
                && rep.rep_class() == class
                && rep.size() == size
                && rep.generators().iter().all(|g| g.size() == size)
                && anticommutators_hold(&rep);
            (!ok).then(|| format!("{sig}"))
        })
        .collect();
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "44 signatures".to_string()
        } else {
            format!("failing: {bad:?}")
        },
    )
}

fn criterion_relat() -> Outcome {
    let reports: Vec<Report> = up_to(8)
        .into_par_iter()
        .map(|sig| match build_representation(sig) {
            Ok(rep) => verify_relat(&rep),
            Err(e) => Report::check(e.to_string(), false).with_signature(sig),
        })
        .collect();
    from_reports(&reports)
}

fn criterion_conjugations() -> Outcome {
    let mut reports: Vec<Report> = up_to(8)
        .into_par_iter()
        .flat_map_iter(|sig| {
            let mut out = verify_dagger_identities(sig);
            match build_representation(sig).and_then(|rep| verify_conjugation_identities(&rep)) {
                Ok(r) => out.extend(r),
                Err(e) => out.push(Report::check(e.to_string(), false).with_signature(sig)),
            }
            out
        })
        .collect();
    let witness = transposition_witness(8);
    let found = witness.status == Status::Witness;
    let note = format!("witness at {:?}: {}", witness.signature, witness.details);
    reports.push(witness);
    let base = from_reports(&reports);
    outcome(base.ok && found, format!("{}; {}", base.note, note))
}

/// `(k mod 4, l mod 4)` allowed for each `n mod 8`.
fn allowed(n: usize) -> Vec<(usize, usize)> {
    match n % 8 {
        0 => vec![(0, 0), (1, 3)],
        1 => vec![(1, 0)],
        2 => vec![(1, 1), (2, 0)],
        3 => vec![(2, 1)],
        4 => vec![(3, 1), (2, 2)],
        5 => vec![(3, 2)],
        6 => vec![(3, 3), (0, 2)],
        _ => vec![(0, 3)],
    }
}

fn criterion_additional_signature() -> Outcome {
    let reports = verify_additional_signature_table(8);
    let base = from_reports(&reports);
    let mut problems = Vec::new();
    for sig in up_to(8) {
        if !matches!((sig.p as i64 - sig.q as i64).rem_euclid(8), 3 | 7) {
            continue;
        }
        let add = build_representation(sig)
            .unwrap()
            .additional_signature()
            .unwrap();
        let reduced = (add.k % 4, add.l % 4);
        let parity =
            !(sig.p % 2 == 0 && sig.q % 2 == 1) || (add.k % 2 == 1 && add.l.is_multiple_of(2));
        if !allowed(sig.n()).contains(&reduced) || !parity || add.k + add.l != sig.n() {
            problems.push(format!("{sig} -> ({}, {})", add.k, add.l));
        }
    }
    for ((p, q), want) in [((1, 2), (2, 1)), ((3, 0), (2, 1)), ((2, 3), (3, 2))] {
        let add = build_representation(Signature::new(p, q))
            .unwrap()
            .additional_signature()
            .unwrap();
        if (add.k, add.l) != want {
            problems.push(format!("spot ({p},{q}) -> ({}, {})", add.k, add.l));
        }
    }
    let ok = base.ok && problems.is_empty() && !reports.is_empty();
    outcome(
        ok,
        format!("{}; independent issues: {problems:?}", base.note),
    )
}

fn criterion_dimensions() -> Outcome {
    // Pascal's triangle up to row 16.
    let mut rows: Vec<Vec<u128>> = vec![vec![1]];
    for n in 1..=16 {
        let prev = &rows[n - 1];
        let row: Vec<u128> = (0..=n)
            .map(|k| {
                if k == 0 || k == n {
                    1
                } else {
                    prev[k - 1] + prev[k]
                }
            })
            .collect();
        rows.push(row);
    }
    let by_residue = |n: usize, r: usize| -> u128 {
        rows[n]
            .iter()
            .enumerate()
            .filter(|(k, _)| k % 4 == r)
            .map(|(_, c)| c)
            .sum()
    };
    let mut problems = Vec::new();
    for n in 1..=16 {
        let expected = |g: GroupId| -> u128 {
            match g {
                GroupId::G2 => by_residue(n, 2),
                GroupId::G12 | GroupId::G2i1 => by_residue(n, 1) + by_residue(n, 2),
                GroupId::G23 | GroupId::G2i3 => by_residue(n, 2) + by_residue(n, 3),
                GroupId::SpinPlus => rows[n][2.min(n)] * u128::from(n >= 2),
            }
        };
        for g in GroupId::ALL {
            let (sum, closed) = lie_algebra_dimension(g, n);
            let angle = std::f64::consts::PI / 4.0;
            let nf = n as f64;
            let trig = match g {
                GroupId::G2 => {
                    2f64.powf(nf - 2.0) - 2f64.powf((nf - 2.0) / 2.0) * (angle * nf).cos()
                }
                GroupId::G12 | GroupId::G2i1 => {
                    2f64.powf(nf - 1.0) - 2f64.powf((nf - 1.0) / 2.0) * (angle * (nf + 1.0)).cos()
                }
                GroupId::G23 | GroupId::G2i3 => {
                    2f64.powf(nf - 1.0) - 2f64.powf((nf - 1.0) / 2.0) * (angle * (nf + 1.0)).sin()
                }
                GroupId::SpinPlus => nf * (nf - 1.0) / 2.0,
            };
            let closed_f = closed.to_f64();
            if sum != expected(g)
                || (sum as f64 - closed_f).abs() > 0.0
                || (trig - closed_f).abs() > 1e-6
            {
                problems.push(format!(
                    "{} n={n}: sum {sum}, closed {closed_f}, trig {trig}",
                    g.name()
                ));
            }
        }
    }
    let g2_at_4 = lie_algebra_dimension(GroupId::G2, 4).0;
    outcome(
        problems.is_empty() && g2_at_4 == 6,
        format!("dim at n=4 for G2 = {g2_at_4}; issues: {problems:?}"),
    )
}

fn criterion_brackets() -> Outcome {
    let reports: Vec<Report> = up_to(6)
        .into_par_iter()
        .flat_map_iter(|sig| bracket_closure_check(sig, 100, SEED))
        .collect();
    from_reports(&reports)
}

fn criterion_tables() -> Outcome {
    let mut reports = table_consistency(8);
    let spot = [
        (GroupId::G2, (3, 0), "Sp(1)"),
        (GroupId::G23, (7, 0), "U(8)"),
        (GroupId::G2, (4, 4), "²O(4,4)"),
    ];
    for (g, (p, q), want) in spot {
        let got = classify(g, Signature::new(p, q)).map(|m| m.to_string());
        let ok = got.as_deref() == Ok(want);
        reports.push(Report::check(
            format!("{} at ({p},{q}) is {want}, got {got:?}", g.name()),
            ok,
        ));
    }
    from_reports(&reports)
}

fn criterion_invariance() -> Outcome {
    let jobs: Vec<(GroupId, Signature)> = up_to(6)
        .into_iter()
        .flat_map(|sig| GroupId::ALL.into_iter().map(move |g| (g, sig)))
        .filter(|(g, sig)| *g != GroupId::SpinPlus || sig.n() <= 5)
        .collect();
    let mut reports: Vec<Report> = jobs
        .par_iter()
        .flat_map_iter(|&(g, sig)| verify_classification(g, sig, 6, SEED, 1e-9))
        .collect();
    reports.extend(stated_dimension_identities(8));
    let base = from_reports(&reports);
    outcome(
        base.ok,
        format!("{} (group, signature) pairs; {}", jobs.len(), base.note),
    )
}

fn criterion_spin() -> Outcome {
    let mut reports: Vec<Report> = up_to(5)
        .into_par_iter()
        .map(|sig| spin_g2_comparison(sig, 8, SEED))
        .collect();
    let six: Vec<Report> = (0..=6)
        .map(|p| spin_g2_comparison(Signature::new(p, 6 - p), 8, SEED))
        .collect();
    let witness = six.iter().find(|r| r.status == Status::Witness);
    let note = match witness {
        Some(w) => format!(
            "witness at {:?} with seed {SEED}: {}",
            w.signature, w.details
        ),
        None => "no witness at n = 6".to_string(),
    };
    let found = witness.is_some();
    reports.extend(six);
    let base = from_reports(&reports);
    outcome(base.ok && found, format!("{}; {note}", base.note))
}

fn criterion_transports() -> Outcome {
    let reports: Vec<Report> = up_to(6)
        .into_par_iter()
        .flat_map_iter(|sig| verify_transports(sig, 6, SEED))
        .collect();
    let families = ["G2i1", "G2i3", "G12", "G2"]
        .iter()
        .all(|f| reports.iter().any(|r| r.group.as_deref() == Some(*f)));
    let base = from_reports(&reports);
    outcome(base.ok && families, base.note)
}

fn criterion_vee() -> Outcome {
    let reports: Vec<Report> = up_to(8).into_par_iter().map(vee_group).collect();
    let mut problems = Vec::new();
    for r in &reports {
        let sig = r.signature.unwrap();
        let order = r.details["order"].as_u64();
        if order != Some(2u64 << sig.n()) {
            problems.push(format!("{sig}: order {order:?}"));
        }
    }
    let base = from_reports(&reports);
    if let Some(r) = reports
        .iter()
        .find(|r| r.signature == Some(Signature::new(3, 0)))
    {
        println!(
            "      membership counts at Cl(3,0): {}",
            r.details["member_counts"]
        );
    }
    outcome(
        base.ok && problems.is_empty(),
        format!("{}; issues: {problems:?}", base.note),
    )
}

#[test]
fn acceptance() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, Duration); 11] = [
        (
            "representation correctness",
            criterion_representations,
            Duration::from_secs(10),
        ),
        (
            "dagger against matrix conjugation",
            criterion_relat,
            Duration::from_secs(60),
        ),
        (
            "conjugation identities",
            criterion_conjugations,
            Duration::from_secs(60),
        ),
        (
            "additional signature table",
            criterion_additional_signature,
            Duration::from_secs(5),
        ),
        (
            "dimension formulas",
            criterion_dimensions,
            Duration::from_secs(1),
        ),
        (
            "bracket relations",
            criterion_brackets,
            Duration::from_secs(30),
        ),
        (
            "classification tables",
            criterion_tables,
            Duration::from_secs(1),
        ),
        (
            "invariance verification",
            criterion_invariance,
            Duration::from_secs(120),
        ),
        ("Spin+ against G2", criterion_spin, Duration::from_secs(30)),
        ("transports", criterion_transports, Duration::from_secs(10)),
        ("vee group", criterion_vee, Duration::from_secs(5)),
    ];
    let mut failed = Vec::new();
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let ok = result.ok && elapsed < limit;
        println!(
            "{} {:>2} {name} ({:.2?} / {:?}) {}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed,
            limit,
            result.note
        );
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
