//! The Lie groups defined by conjugation equations inside (complexified)
//! Clifford algebras, and their Lie algebras as sums of quaternion types.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::multivector::{
    blade_product_sign, random_sparse, Blade, Multivector, QuatType, Signature,
};
use crate::report::Report;
use crate::scalars::{Complex, ComplexRational, Rational, RealScalar, Scalar};

pub type ComplexMv<T> = Multivector<Complex<T>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupId {
    G2i1,
    G2i3,
    G23,
    G12,
    G2,
    SpinPlus,
}

impl GroupId {
    pub const ALL: [GroupId; 6] = [
        GroupId::G2i1,
        GroupId::G2i3,
        GroupId::G23,
        GroupId::G12,
        GroupId::G2,
        GroupId::SpinPlus,
    ];

    /// The five groups given by a single conjugation equation.
    pub const FIVE: [GroupId; 5] = [
        GroupId::G2i1,
        GroupId::G2i3,
        GroupId::G23,
        GroupId::G12,
        GroupId::G2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GroupId::G2i1 => "G2i1",
            GroupId::G2i3 => "G2i3",
            GroupId::G23 => "G23",
            GroupId::G12 => "G12",
            GroupId::G2 => "G2",
            GroupId::SpinPlus => "SpinPlus",
        }
    }

    /// Elements live in the complexification rather than the real algebra.
    pub fn is_complexified(self) -> bool {
        matches!(self, GroupId::G2i1 | GroupId::G2i3)
    }

    pub fn lie_algebra(self) -> LieAlgebraId {
        match self {
            GroupId::G2i1 => LieAlgebraId::TwoPlusIOne,
            GroupId::G2i3 => LieAlgebraId::TwoPlusIThree,
            GroupId::G23 => LieAlgebraId::TwoPlusThree,
            GroupId::G12 => LieAlgebraId::TwoPlusOne,
            GroupId::G2 => LieAlgebraId::Two,
            GroupId::SpinPlus => LieAlgebraId::Bivectors,
        }
    }

    /// The anti-involution `U ↦ U^♦` with `U^♦ U = e` as the defining equation.
    pub fn conjugate<T: RealScalar>(self, u: &ComplexMv<T>) -> ComplexMv<T> {
        match self {
            GroupId::G2i1 => u.pseudo_hermitian(),
            GroupId::G2i3 => u.grade_involution().pseudo_hermitian(),
            GroupId::G12 => u.grade_involution().reversion(),
            GroupId::G23 | GroupId::G2 | GroupId::SpinPlus => u.reversion(),
        }
    }

    /// Whether `U` lies in the group's underlying subspace.
    pub fn in_subspace<T: RealScalar>(self, u: &ComplexMv<T>, tol: f64) -> bool {
        u.terms().all(|(b, c)| {
            let even = b.grade() % 2 == 0;
            match self {
                GroupId::G2i1 | GroupId::G2i3 => {
                    if even {
                        c.is_real(tol)
                    } else {
                        c.is_imaginary(tol)
                    }
                }
                GroupId::G23 | GroupId::G12 => c.is_real(tol),
                GroupId::G2 | GroupId::SpinPlus => even && c.is_real(tol) || c.is_negligible(tol),
            }
        })
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("no transport from {from} on {sig}")]
    UnsupportedTransport { from: GroupId, sig: Signature },
    #[error("element has a component outside the domain of the map (blade mask {0})")]
    OutsideDomain(u32),
    #[error("exponential series did not converge within {0} terms")]
    NoConvergence(usize),
    #[error("sample failed membership in {group} on {sig}")]
    SampleNotMember { group: GroupId, sig: Signature },
    #[error("generator images violate the Clifford relations")]
    BadGeneratorImages,
}

impl FromStr for GroupId {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace(['_', '-', '^'], "");
        GroupId::ALL
            .into_iter()
            .find(|g| {
                g.name().to_ascii_lowercase() == key || (key == "spin" && *g == GroupId::SpinPlus)
            })
            .ok_or_else(|| GroupError::UnknownGroup(s.to_string()))
    }
}

/// `U ∈ G`, exactly for rational coefficients and within `tol` for floats.
pub fn is_member<T: RealScalar>(g: GroupId, u: &ComplexMv<T>, tol: f64) -> bool {
    if !g.in_subspace(u, tol) {
        return false;
    }
    let sig = u.signature();
    let lhs = &g.conjugate(u) * u;
    if !lhs.approx_eq(&Multivector::one(sig), tol) {
        return false;
    }
    g != GroupId::SpinPlus || preserves_vectors(u, tol)
}

/// `U e^a Ũ` has only grade-1 components for every generator.
pub fn preserves_vectors<T: RealScalar>(u: &ComplexMv<T>, tol: f64) -> bool {
    vector_leak(u) <= if T::EXACT { 0.0 } else { tol }
}

/// Largest non-grade-1 coefficient among `U e^a Ũ`.
pub fn vector_leak<T: RealScalar>(u: &ComplexMv<T>) -> f64 {
    let sig = u.signature();
    let rev = u.reversion();
    (1..=sig.n())
        .map(|a| {
            let v = &(u * &Multivector::generator(sig, a)) * &rev;
            v.select(|b| b.grade() != 1).max_norm()
        })
        .fold(0.0, f64::max)
}

/// Real or imaginary coefficients attached to one quaternion type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlgebraPart {
    pub quat_type: QuatType,
    pub imaginary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LieAlgebraId {
    TwoPlusIOne,
    TwoPlusIThree,
    TwoPlusThree,
    TwoPlusOne,
    Two,
    /// Grade 2 only.
    Bivectors,
}

impl LieAlgebraId {
    pub fn name(self) -> &'static str {
        match self {
            LieAlgebraId::TwoPlusIOne => "2+i1",
            LieAlgebraId::TwoPlusIThree => "2+i3",
            LieAlgebraId::TwoPlusThree => "2+3",
            LieAlgebraId::TwoPlusOne => "2+1",
            LieAlgebraId::Two => "2",
            LieAlgebraId::Bivectors => "Cl^2",
        }
    }

    /// Quaternion-type parts; empty for the bivector algebra, which is not a sum of types.
    pub fn parts(self) -> Vec<AlgebraPart> {
        let part = |t: u8, imaginary| AlgebraPart {
            quat_type: QuatType(t),
            imaginary,
        };
        match self {
            LieAlgebraId::TwoPlusIOne => vec![part(2, false), part(1, true)],
            LieAlgebraId::TwoPlusIThree => vec![part(2, false), part(3, true)],
            LieAlgebraId::TwoPlusThree => vec![part(2, false), part(3, false)],
            LieAlgebraId::TwoPlusOne => vec![part(2, false), part(1, false)],
            LieAlgebraId::Two => vec![part(2, false)],
            LieAlgebraId::Bivectors => vec![],
        }
    }

    /// Basis of the algebra as `(blade, imaginary)` pairs.
    pub fn basis(self, sig: Signature) -> Vec<(Blade, bool)> {
        if self == LieAlgebraId::Bivectors {
            return sig
                .blades()
                .filter(|b| b.grade() == 2)
                .map(|b| (b, false))
                .collect();
        }
        let parts = self.parts();
        sig.blades()
            .flat_map(|b| {
                parts
                    .iter()
                    .filter(move |p| p.quat_type.contains(b))
                    .map(move |p| (b, p.imaginary))
            })
            .collect()
    }

    fn allows(self, b: Blade, imaginary: bool) -> bool {
        if self == LieAlgebraId::Bivectors {
            return b.grade() == 2 && !imaginary;
        }
        self.parts()
            .iter()
            .any(|p| p.quat_type.contains(b) && p.imaginary == imaginary)
    }

    pub fn contains<T: RealScalar>(self, x: &ComplexMv<T>, tol: f64) -> bool {
        x.terms().all(|(b, c)| {
            (c.re.is_negligible(tol) || self.allows(b, false))
                && (c.im.is_negligible(tol) || self.allows(b, true))
        })
    }
}

impl fmt::Display for LieAlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn lie_algebra_member<T: RealScalar>(g: GroupId, x: &ComplexMv<T>, tol: f64) -> bool {
    g.lie_algebra().contains(x, tol)
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `Σ_{k ≡ s mod 4} C(n,k)`.
pub fn quat_type_dimension(n: usize, s: QuatType) -> u128 {
    (0..=n)
        .filter(|&k| QuatType::of_grade(k) == s)
        .map(|k| binomial(n, k))
        .sum()
}

/// `cos(πm/4)` as `s·2^{-t/2}`.
fn cos_quarter(m: i64) -> (i64, i64) {
    match m.rem_euclid(8) {
        0 => (1, 0),
        1 | 7 => (1, 1),
        2 | 6 => (0, 0),
        3 | 5 => (-1, 1),
        _ => (-1, 0),
    }
}

/// `sin(πm/4) = cos(π(m-2)/4)`.
fn sin_quarter(m: i64) -> (i64, i64) {
    cos_quarter(m - 2)
}

/// `2^{a} - 2^{e/2}·s·2^{-t/2}` with `e - t` even.
fn closed_form(a: i64, e: i64, (s, t): (i64, i64)) -> Rational {
    let base = Rational::pow2(a);
    if s == 0 {
        return base;
    }
    assert!(
        (e - t) % 2 == 0,
        "odd power of sqrt 2 in a dimension formula"
    );
    base.sub(&Rational::pow2((e - t) / 2).scale_i64(s))
}

/// Dimension of the Lie algebra from the binomial sums.
pub fn lie_algebra_dimension_sum(g: GroupId, n: usize) -> u128 {
    match g.lie_algebra() {
        LieAlgebraId::Bivectors => binomial(n, 2),
        alg => alg
            .parts()
            .iter()
            .map(|p| quat_type_dimension(n, p.quat_type))
            .sum(),
    }
}

/// Dimension of the Lie algebra from the trigonometric closed forms, evaluated exactly.
pub fn lie_algebra_dimension_closed(g: GroupId, n: usize) -> Rational {
    let n = n as i64;
    match g {
        GroupId::G2 => closed_form(n - 2, n - 2, cos_quarter(n)),
        GroupId::G2i1 | GroupId::G12 => closed_form(n - 1, n - 1, cos_quarter(n + 1)),
        GroupId::G2i3 | GroupId::G23 => closed_form(n - 1, n - 1, sin_quarter(n + 1)),
        GroupId::SpinPlus => Rational::new(n * (n - 1), 2),
    }
}

/// Both computations; they must agree.
pub fn lie_algebra_dimension(g: GroupId, n: usize) -> (u128, Rational) {
    (
        lie_algebra_dimension_sum(g, n),
        lie_algebra_dimension_closed(g, n),
    )
}

/// One relation `[a, b] ⊆ c` between quaternion types.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BracketRelation {
    pub left: QuatType,
    pub right: QuatType,
    pub target: QuatType,
}

pub fn bracket_relations() -> Vec<BracketRelation> {
    let r = |a: u8, b: u8, c: u8| BracketRelation {
        left: QuatType(a),
        right: QuatType(b),
        target: QuatType(c),
    };
    let mut out: Vec<BracketRelation> = (0..4).map(|k| r(k, k, 2)).collect();
    out.extend((0..4).map(|k| r(k, 2, k)));
    out.extend([r(0, 1, 3), r(0, 3, 1), r(1, 3, 0)]);
    out
}

/// Random typed elements bracketed per relation; the projection onto the
/// complement of the target type must vanish exactly.
pub fn bracket_closure_check(sig: Signature, trials: usize, seed: u64) -> Vec<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    bracket_relations()
        .into_iter()
        .map(|rel| {
            let mut bad = 0usize;
            for _ in 0..trials {
                let x = random_sparse(sig, &mut rng, 6, |b| rel.left.contains(b));
                let y = random_sparse(sig, &mut rng, 6, |b| rel.right.contains(b));
                let z = x.lie_bracket(&y).expect("same signature");
                if !z.select(|b| !rel.target.contains(b)).is_zero() {
                    bad += 1;
                }
            }
            Report::check(
                format!("[{}, {}] in {}", rel.left, rel.right, rel.target),
                bad == 0,
            )
            .with_signature(sig)
            .with_details(json!({ "trials": trials, "failures": bad }))
        })
        .collect()
}

/// A random exact element of the group's Lie algebra.
pub fn random_algebra_element(
    g: GroupId,
    sig: Signature,
    rng: &mut ChaCha8Rng,
) -> ComplexMv<Rational> {
    let basis = g.lie_algebra().basis(sig);
    let re = random_sparse(sig, rng, 6, |b| basis.contains(&(b, false))).complexify();
    let im = random_sparse(sig, rng, 6, |b| basis.contains(&(b, true))).complexify();
    &re + &im.times_i()
}

/// Brackets of random algebra elements stay in the algebra.
pub fn lie_algebra_closure_check(g: GroupId, sig: Signature, trials: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alg = g.lie_algebra();
    let bad = (0..trials)
        .filter(|_| {
            let x = random_algebra_element(g, sig, &mut rng);
            let y = random_algebra_element(g, sig, &mut rng);
            !alg.contains(&x.lie_bracket(&y).expect("same signature"), 0.0)
        })
        .count();
    Report::check(format!("{alg} closed under brackets"), bad == 0)
        .with_signature(sig)
        .with_group(g.name())
        .with_details(json!({ "trials": trials, "failures": bad }))
}

/// `±e^A` as a complex multivector.
pub fn signed_blade(sig: Signature, b: Blade, negative: bool) -> ComplexMv<Rational> {
    let c = if negative {
        ComplexRational::from_i64(-1)
    } else {
        ComplexRational::one()
    };
    Multivector::term(sig, b, c)
}

/// The `2^{n+1}` signed basis elements: closure, identity, inverses, and a
/// membership table over all six groups.
pub fn vee_group(sig: Signature) -> Report {
    let elems: Vec<(Blade, bool)> = sig.blades().flat_map(|b| [(b, false), (b, true)]).collect();
    let order = elems.len();
    let as_signed = |m: &ComplexMv<Rational>| -> Option<(Blade, bool)> {
        let mut terms = m.terms();
        let (b, c) = terms.next()?;
        if terms.next().is_some() {
            return None;
        }
        if *c == ComplexRational::one() {
            Some((b, false))
        } else if *c == ComplexRational::from_i64(-1) {
            Some((b, true))
        } else {
            None
        }
    };
    // The Cayley table comes from blade sign rules; each positive blade times
    // each generator is recomputed as a full multivector product.
    let table_product = |(a, na): (Blade, bool), (b, nb): (Blade, bool)| {
        let (s, r) = blade_product_sign(a, b, sig);
        (r, (s < 0) ^ na ^ nb)
    };
    let mut closed = true;
    let mut inverses = true;
    for &x in &elems {
        let mut has_inverse = false;
        for &y in &elems {
            let prod = table_product(x, y);
            if prod == (Blade::SCALAR, false) {
                has_inverse = true;
            }
            if y.0.grade() <= 1 && !x.1 && !y.1 {
                let full = &signed_blade(sig, x.0, x.1) * &signed_blade(sig, y.0, y.1);
                closed &= as_signed(&full) == Some(prod);
            }
        }
        inverses &= has_inverse;
    }
    let mut counts = serde_json::Map::new();
    let mut table = Vec::new();
    for g in GroupId::ALL {
        let members: Vec<String> = elems
            .par_iter()
            .filter(|&&(b, neg)| is_member(g, &signed_blade(sig, b, neg), 0.0))
            .map(|&(b, neg)| format!("{}{}", if neg { "-" } else { "+" }, b.label(sig.n())))
            .collect();
        counts.insert(g.name().to_string(), json!(members.len()));
        if sig.n() <= 4 {
            table.push(json!({ "group": g.name(), "members": members }));
        }
    }
    let ok = closed && inverses && order == 1 << (sig.n() + 1);
    Report::check("signed basis elements form a group", ok)
        .with_signature(sig)
        .with_details(json!({
            "order": order, "closed": closed, "inverses": inverses,
            "member_counts": counts, "membership": table,
        }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q)
    }

    fn blade(s: Signature, idx: &[usize]) -> ComplexMv<Rational> {
        Multivector::blade(s, Blade::from_indices(idx))
    }

    #[test]
    fn membership_examples() {
        let s = sig(2, 0);
        for g in GroupId::ALL {
            assert!(
                is_member(g, &Multivector::<ComplexRational>::one(s), 0.0),
                "{g}"
            );
        }
        let e12 = blade(s, &[1, 2]);
        assert!(is_member(GroupId::G23, &e12, 0.0));
        assert!(is_member(GroupId::G2, &e12, 0.0));
        let s = sig(1, 0);
        let e1 = blade(s, &[1]);
        assert!(is_member(GroupId::G23, &e1, 0.0));
        assert!(!is_member(GroupId::G2, &e1, 0.0));
    }

    #[test]
    fn algebra_examples() {
        let s = sig(3, 0);
        for g in GroupId::ALL {
            assert!(lie_algebra_member(g, &blade(s, &[1, 2]), 0.0), "{g}");
        }
        let ie1 = blade(s, &[1]).times_i();
        assert!(lie_algebra_member(GroupId::G2i1, &ie1, 0.0));
        assert!(!lie_algebra_member(GroupId::G2i3, &ie1, 0.0));
        assert!(!lie_algebra_member(GroupId::G12, &ie1, 0.0));
        let s6 = sig(6, 0);
        let top = blade(s6, &[1, 2, 3, 4, 5, 6]);
        assert!(lie_algebra_member(GroupId::G2, &top, 0.0));
        assert!(!lie_algebra_member(GroupId::SpinPlus, &top, 0.0));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(lie_algebra_dimension_sum(GroupId::G2, 4), 6);
        assert_eq!(
            lie_algebra_dimension_closed(GroupId::G2, 4),
            Rational::from_integer(6)
        );
        assert_eq!(lie_algebra_dimension_sum(GroupId::G23, 3), 4);
        assert_eq!(
            lie_algebra_dimension_closed(GroupId::G23, 3),
            Rational::from_integer(4)
        );
        assert_eq!(lie_algebra_dimension_sum(GroupId::G2, 1), 0);
        assert_eq!(
            lie_algebra_dimension_closed(GroupId::G2, 1),
            Rational::from_integer(0)
        );
    }

    #[test]
    fn bracket_example() {
        let s = sig(3, 0);
        let b = blade(s, &[1, 2]).lie_bracket(&blade(s, &[1, 3])).unwrap();
        assert_eq!(b.terms().count(), 1);
        assert_eq!(b.terms().next().unwrap().0, Blade::from_indices(&[2, 3]));
        assert_eq!(bracket_relations().len(), 11);
    }

    #[test]
    fn parse_names() {
        assert_eq!("g2i1".parse::<GroupId>().unwrap(), GroupId::G2i1);
        assert_eq!("spin".parse::<GroupId>().unwrap(), GroupId::SpinPlus);
        assert!("G7".parse::<GroupId>().is_err());
    }

    #[test]
    fn vee_examples() {
        let r = vee_group(sig(2, 0));
        assert!(r.passed());
        assert_eq!(r.details["order"], 8);
        let s = sig(2, 0);
        for neg in [false, true] {
            assert!(is_member(
                GroupId::G2,
                &signed_blade(s, Blade::SCALAR, neg),
                0.0
            ));
            assert!(is_member(GroupId::G2, &signed_blade(s, Blade(3), neg), 0.0));
            for b in [Blade(1), Blade(2)] {
                assert!(is_member(GroupId::G23, &signed_blade(s, b, neg), 0.0));
                assert!(!is_member(GroupId::G2, &signed_blade(s, b, neg), 0.0));
            }
        }
    }
}
