use clifford_groups::groups::{is_member, GroupId};
use clifford_groups::matrices::RepMatrix;
use clifford_groups::multivector::{
    blade_product_sign, random_sparse, Blade, Multivector, Signature,
};
use clifford_groups::sampling::sample_exact;
use clifford_groups::scalars::{
    Complex, ComplexRational, Quaternion, QuaternionRational, Rational, Scalar,
};
use clifford_groups::transport::transports_from;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

fn complex() -> impl Strategy<Value = ComplexRational> {
    (rational(), rational()).prop_map(|(a, b)| Complex::new(a, b))
}

fn quaternion() -> impl Strategy<Value = QuaternionRational> {
    (rational(), rational(), rational(), rational())
        .prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

fn signature(max_n: usize) -> impl Strategy<Value = Signature> {
    (0..=max_n).prop_flat_map(|n| (0..=n).prop_map(move |p| Signature::new(p, n - p)))
}

fn ring_axioms<S: Scalar>(a: &S, b: &S, c: &S) {
    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    assert_eq!(b.add(c).mul(a), b.mul(a).add(&c.mul(a)));
    assert_eq!(a.add(b), b.add(a));
    assert_eq!(a.mul(&S::one()), *a);
    assert!(a.sub(a).is_zero());
    assert_eq!(a.mul(b).conj(), b.conj().mul(&a.conj()));
    assert_eq!(a.conj().conj(), *a);
}

/// `w + xi + yj + zk` as the complex matrix `(w+xi, y+zi; -y+zi, w-xi)`.
fn as_complex_pair(q: &QuaternionRational) -> RepMatrix<ComplexRational> {
    let c = |re: &Rational, im: &Rational| Complex::new(re.clone(), im.clone());
    RepMatrix::from_rows(vec![
        vec![c(&q.w, &q.x), c(&q.y, &q.z)],
        vec![c(&q.y.neg(), &q.z), c(&q.w, &q.x.neg())],
    ])
    .unwrap()
}

/// Product of two blades by sorting the concatenated index list with
/// adjacent swaps and cancelling repeated generators.
fn reorder_product(a: Blade, b: Blade, sig: Signature) -> (i64, Blade) {
    let mut v: Vec<usize> = a.indices();
    v.extend(b.indices());
    let mut sign = 1;
    let mut i = 0;
    while i + 1 < v.len() {
        if v[i] > v[i + 1] {
            v.swap(i, i + 1);
            sign = -sign;
            i = i.saturating_sub(1);
        } else if v[i] == v[i + 1] {
            sign *= sig.eta(v[i]);
            v.drain(i..i + 2);
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
    (sign, Blade::from_indices(&v))
}

fn sparse(sig: Signature, seed: u64) -> Multivector<Rational> {
    random_sparse(sig, &mut ChaCha8Rng::seed_from_u64(seed), 5, |_| true)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field(a in rational(), b in rational(), c in rational()) {
        ring_axioms(&a, &b, &c);
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.recip()), Rational::one());
        }
    }

    #[test]
    fn complex_field(a in complex(), b in complex(), c in complex()) {
        ring_axioms(&a, &b, &c);
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn quaternion_ring(a in quaternion(), b in quaternion(), c in quaternion()) {
        ring_axioms(&a, &b, &c);
    }

    #[test]
    fn quaternion_product_matches_complex_matrices(a in quaternion(), b in quaternion()) {
        let lhs = as_complex_pair(&a.mul(&b));
        let rhs = as_complex_pair(&a).mat_mul(&as_complex_pair(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(as_complex_pair(&a.conj()), as_complex_pair(&a).conj_transpose());
    }

    #[test]
    fn conjugate_transpose_reverses_products(x in prop::collection::vec(quaternion(), 8), y in prop::collection::vec(quaternion(), 8)) {
        let m = |v: &[QuaternionRational]| RepMatrix::from_rows(v.chunks(2).take(2).map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap();
        let (a, b) = (m(&x[..4]), m(&y[..4]));
        prop_assert_eq!(a.mat_mul(&b).unwrap().conj_transpose(), b.conj_transpose().mat_mul(&a.conj_transpose()).unwrap());
    }

    #[test]
    fn blade_product_matches_reordering(sig in signature(8), a in any::<u32>(), b in any::<u32>()) {
        let mask = (1u32 << sig.n()) - 1;
        let (a, b) = (Blade(a & mask), Blade(b & mask));
        prop_assert_eq!(blade_product_sign(a, b, sig), reorder_product(a, b, sig));
    }

    #[test]
    fn geometric_product_is_associative(sig in signature(6), s in any::<u64>()) {
        let (u, v, w) = (sparse(sig, s), sparse(sig, s ^ 1), sparse(sig, s ^ 2));
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
        prop_assert_eq!(&u * &(&v + &w), &(&u * &v) + &(&u * &w));
    }

    #[test]
    fn conjugations_are_involutive_anti_or_automorphisms(sig in signature(6), s in any::<u64>()) {
        let (u, v) = (sparse(sig, s).complexify(), sparse(sig, s ^ 7).complexify().times_i());
        let uv = &u * &v;
        prop_assert_eq!(uv.reversion(), &v.reversion() * &u.reversion());
        prop_assert_eq!(uv.grade_involution(), &u.grade_involution() * &v.grade_involution());
        prop_assert_eq!(uv.hermitian_conjugate(), &v.hermitian_conjugate() * &u.hermitian_conjugate());
        prop_assert_eq!(uv.pseudo_hermitian(), &v.pseudo_hermitian() * &u.pseudo_hermitian());
        prop_assert_eq!(u.hermitian_conjugate().hermitian_conjugate(), u.clone());
    }

    #[test]
    fn groups_are_closed_under_products_and_inverses(sig in signature(4), seed in any::<u64>(), gi in 0usize..6) {
        let g = GroupId::ALL[gi];
        let s = sample_exact(g, sig, 2, seed).unwrap().samples;
        let (u, v) = (&s[0].value, &s[1].value);
        prop_assert!(is_member(g, &(u * v), 0.0));
        prop_assert!(is_member(g, &g.conjugate(u), 0.0));
    }

    #[test]
    fn transports_preserve_products(sig in signature(4), seed in any::<u64>(), gi in 0usize..5) {
        let g = GroupId::FIVE[gi];
        let s = sample_exact(g, sig, 2, seed).unwrap().samples;
        let (u, v) = (&s[0].value, &s[1].value);
        for t in transports_from(g, sig) {
            let lhs = t.map.apply(&(u * v)).unwrap();
            let rhs = &t.map.apply(u).unwrap() * &t.map.apply(v).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
