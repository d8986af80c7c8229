use clifford_groups::matrices::RepMatrix;
use clifford_groups::multivector::{random_sparse, Blade, Signature};
use clifford_groups::report::{all_passed, Status};
use clifford_groups::representation::*;
use clifford_groups::scalars::{Quaternion, QuaternionRational, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sig(p: usize, q: usize) -> Signature {
    Signature::new(p, q)
}

fn q(v: i64) -> QuaternionRational {
    QuaternionRational::from_i64(v)
}

fn qi() -> QuaternionRational {
    Quaternion::unit_i()
}

fn qj() -> QuaternionRational {
    Quaternion::unit_j()
}

fn qk() -> QuaternionRational {
    Quaternion::unit_k()
}

fn m2(
    a: QuaternionRational,
    b: QuaternionRational,
    c: QuaternionRational,
    d: QuaternionRational,
) -> QMatrix {
    RepMatrix::from_rows(vec![vec![a, b], vec![c, d]]).unwrap()
}

fn n(x: QuaternionRational) -> QuaternionRational {
    x.neg()
}

#[test]
fn worked_examples_are_reproduced() {
    let fixtures: Vec<(Signature, Vec<QMatrix>)> = vec![
        (
            sig(1, 2),
            vec![
                m2(q(0), q(1), q(1), q(0)),
                m2(qi(), q(0), q(0), n(qi())),
                m2(q(0), q(-1), q(1), q(0)),
            ],
        ),
        (
            sig(1, 3),
            vec![
                m2(q(0), q(1), q(1), q(0)),
                m2(qi(), q(0), q(0), n(qi())),
                m2(qj(), q(0), q(0), n(qj())),
                m2(q(0), q(-1), q(1), q(0)),
            ],
        ),
        (
            sig(4, 0),
            vec![
                m2(q(0), q(1), q(1), q(0)),
                m2(q(0), qi(), n(qi()), q(0)),
                m2(q(0), qj(), n(qj()), q(0)),
                m2(q(-1), q(0), q(0), q(1)),
            ],
        ),
        (
            sig(0, 4),
            vec![
                m2(qk(), q(0), q(0), n(qk())),
                m2(n(qj()), q(0), q(0), n(qj())),
                m2(qi(), q(0), q(0), qi()),
                m2(q(0), qk(), qk(), q(0)),
            ],
        ),
    ];
    for (s, expected) in fixtures {
        let rep = build_representation(s).unwrap();
        assert_eq!(rep.generators(), expected.as_slice(), "{s}");
    }
}

/// Recheck the Clifford relations outside the constructor.
fn relations_hold(rep: &Representation) -> bool {
    let s = rep.signature();
    let id = rep.identity();
    (1..=s.n()).all(|a| {
        (1..=s.n()).all(|b| {
            let ab = rep.generator(a).mat_mul(rep.generator(b)).unwrap();
            let ba = rep.generator(b).mat_mul(rep.generator(a)).unwrap();
            let lhs = ab.add(&ba).unwrap();
            let rhs = if a == b {
                id.scale(&q(2 * s.eta(a)))
            } else {
                RepMatrix::zero(id.size())
            };
            lhs == rhs
        })
    })
}

#[test]
fn every_signature_up_to_eight() {
    for s in Signature::all_up_to(0, 8) {
        let rep = build_representation(s).unwrap_or_else(|e| panic!("{s}: {e}"));
        assert!(relations_hold(&rep), "{s}");
        let exp = match s.class_mod8() {
            0 | 2 => s.n() / 2,
            1 => s.n().div_ceil(2),
            3 | 7 => (s.n() - 1) / 2,
            4 | 6 => (s.n() - 2) / 2,
            _ => (s.n() - 1) / 2,
        };
        assert_eq!(rep.size(), 1 << exp, "{s}");
        for g in rep.generators() {
            assert!(g.transpose() == *g || g.transpose() == g.neg(), "{s}");
        }
    }
    assert_eq!(RepClass::of(sig(0, 7)), RepClass::RealPair);
    // pair classes carry two blocks of the tabulated size on the diagonal
    let r07 = build_representation(sig(0, 7)).unwrap();
    assert_eq!(r07.size(), 16);
    assert!(r07
        .generators()
        .iter()
        .all(|g| g.is_block_diagonal() && g.blocks()[0].size() == 8));
    assert_eq!(RepClass::of(sig(4, 0)), RepClass::Quaternion);
    assert_eq!(build_representation(sig(4, 0)).unwrap().size(), 2);
}

#[test]
fn relat_holds_up_to_eight() {
    for s in Signature::all_up_to(0, 8) {
        let r = verify_relat(&build_representation(s).unwrap());
        assert_eq!(r.status, Status::Pass, "{s}: {:?}", r.details);
    }
}

#[test]
fn frame_identities_hold_up_to_eight() {
    for s in Signature::all_up_to(0, 8) {
        let reports = verify_conjugation_identities(&build_representation(s).unwrap()).unwrap();
        assert!(all_passed(&reports), "{s}: {reports:?}");
    }
}

#[test]
fn frame_identity_examples() {
    // Cl(2,1): U^T via e_3 rev(hat U) e^3
    let rep = build_representation(sig(2, 1)).unwrap();
    let id = frame_identities(sig(2, 1))[1];
    assert_eq!(id.frame, Blade::from_indices(&[3]));
    assert!(id.with_involution);
    assert!(identity_failures(&rep, &id).is_empty());
    // Cl(3,0): U^dagger via e_123 rev(U) e^123
    let rep = build_representation(sig(3, 0)).unwrap();
    let id = frame_identities(sig(3, 0))[0];
    assert!(!id.with_involution && identity_failures(&rep, &id).is_empty());
    // Cl(0,4): U^* via e_1234 rev(U) e^1234
    let rep = build_representation(sig(0, 4)).unwrap();
    let id = frame_identities(sig(0, 4))[1];
    assert_eq!(id.frame, Blade::range(1, 4));
    assert!(!id.with_involution && identity_failures(&rep, &id).is_empty());
}

#[test]
fn quaternionic_transposition_witness() {
    let r = transposition_witness(6);
    assert_eq!(r.status, Status::Witness, "{r:?}");
}

#[test]
fn additional_signature_values() {
    for (s, kl) in [
        (sig(1, 2), (2, 1)),
        (sig(3, 0), (2, 1)),
        (sig(2, 3), (3, 2)),
        (sig(0, 1), (1, 0)),
    ] {
        let a = build_representation(s)
            .unwrap()
            .additional_signature()
            .unwrap();
        assert_eq!((a.k, a.l), kl, "{s}");
    }
    let reports = verify_additional_signature_table(10);
    assert!(!reports.is_empty());
    assert!(all_passed(&reports), "{reports:?}");
}

#[test]
fn additional_signature_parity_under_shift4() {
    for s in Signature::all_up_to(4, 10)
        .into_iter()
        .filter(|s| s.p >= 4 && s.n() <= 10)
    {
        let rep = build_representation(s).unwrap();
        let a = rep.additional_signature().unwrap();
        let b = transform_shift4(&rep)
            .unwrap()
            .additional_signature()
            .unwrap();
        assert_eq!((a.k % 2, a.l % 2), (b.k % 2, b.l % 2), "{s}");
    }
}

#[test]
fn represent_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for s in Signature::all_up_to(0, 6) {
        let rep = build_representation(s).unwrap();
        assert!(rep
            .represent(&clifford_groups::Multivector::one(s))
            .unwrap()
            .is_identity());
        for _ in 0..4 {
            let u = random_sparse(s, &mut rng, 6, |_| true);
            let v = random_sparse(s, &mut rng, 6, |_| true);
            let lhs = rep.represent(&(&u * &v)).unwrap();
            let rhs = rep
                .represent(&u)
                .unwrap()
                .mat_mul(&rep.represent(&v).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "{s}");
            let sum = rep.represent(&(&u + &v)).unwrap();
            assert_eq!(
                sum,
                rep.represent(&u)
                    .unwrap()
                    .add(&rep.represent(&v).unwrap())
                    .unwrap()
            );
        }
    }
}

#[test]
fn representation_is_faithful_on_blades() {
    // distinct blades have linearly independent images, so in particular distinct ones
    for s in Signature::all_up_to(0, 6) {
        let rep = build_representation(s).unwrap();
        let mut seen: Vec<QMatrix> = Vec::new();
        rep.for_each_blade_image(|_, m| {
            assert!(!seen.iter().any(|x| x == m || *x == m.neg()), "{s}");
            seen.push(m.clone());
        });
    }
}

#[test]
fn complex_coefficients_rejected_outside_complex_class() {
    let s = sig(2, 0);
    let rep = build_representation(s).unwrap();
    let u: clifford_groups::Multivector<clifford_groups::scalars::ComplexRational> =
        clifford_groups::Multivector::one(s).times_i();
    assert!(matches!(
        rep.represent_complex(&u),
        Err(RepresentationError::RingMismatch { .. })
    ));
    let rep = build_representation(sig(3, 0)).unwrap();
    assert!(rep
        .represent_complex(&u.clone().map_coeffs(|c| c.clone()))
        .is_err());
    let s = sig(0, 1);
    let rep = build_representation(s).unwrap();
    let iu: clifford_groups::Multivector<clifford_groups::scalars::ComplexRational> =
        clifford_groups::Multivector::one(s).times_i();
    assert_eq!(
        rep.represent_complex(&iu).unwrap(),
        RepMatrix::diagonal(&[qi()])
    );
}
