//! Dense multivectors over `Cl(p,q)` and its complexification.
//!
//! A multivector stores one coefficient per basis blade, indexed by the blade's
//! bitmask: bit `a-1` is set iff the generator `e^a` is a factor. Generators
//! `1..=p` square to `+e`, generators `p+1..=n` square to `-e`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::report::{Report, Status};
use crate::scalars::{Complex, ComplexRational, Rational, Scalar};

/// Largest supported `n = p + q`.
pub const MAX_GENERATORS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

impl Signature {
    pub const fn new(p: usize, q: usize) -> Self {
        Signature { p, q }
    }

    pub const fn n(&self) -> usize {
        self.p + self.q
    }

    pub const fn dim(&self) -> usize {
        1 << self.n()
    }

    /// `η^{aa}` for the 1-based generator index `a`.
    pub fn eta(&self, a: usize) -> i64 {
        assert!(a >= 1 && a <= self.n(), "generator index {a} out of range");
        if a <= self.p {
            1
        } else {
            -1
        }
    }

    /// Mask of the generators squaring to `-e`.
    pub const fn negative_mask(&self) -> u32 {
        (((1u64 << self.n()) - 1) as u32) & !(((1u64 << self.p) - 1) as u32)
    }

    /// `(p - q) mod 8` in `0..8`.
    pub fn class_mod8(&self) -> usize {
        (self.p as i64 - self.q as i64).rem_euclid(8) as usize
    }

    /// Every signature with `lo <= p + q <= hi`.
    pub fn all_up_to(lo: usize, hi: usize) -> Vec<Signature> {
        (lo..=hi)
            .flat_map(|n| (0..=n).map(move |p| Signature::new(p, n - p)))
            .collect()
    }

    pub fn blades(&self) -> impl Iterator<Item = Blade> {
        (0..self.dim() as u32).map(Blade)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{})", self.p, self.q)
    }
}

/// Basis blade `e^{a_1…a_k}` with `a_1 < … < a_k`, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// Blade from 1-based generator indices; order and repeats are ignored.
    pub fn from_indices(indices: &[usize]) -> Self {
        Blade(indices.iter().fold(0, |m, &a| m | 1 << (a - 1)))
    }

    /// `e^{lo…hi}` for 1-based inclusive bounds; empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        Blade::from_indices(&(lo..=hi).collect::<Vec<_>>())
    }

    pub fn generator(a: usize) -> Self {
        Blade(1 << (a - 1))
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32)
            .filter(|b| self.0 >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }

    pub fn quat_type(self) -> QuatType {
        QuatType::of_grade(self.grade())
    }

    /// Sign `(-1)^{k(k-1)/2}` picked up under reversion.
    pub fn reversion_sign(self) -> i64 {
        if (self.grade() / 2).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Sign picked up under grade involution.
    pub fn involution_sign(self) -> i64 {
        if self.grade().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Product of `η^{aa}` over the factors, i.e. the sign of `Ũ U` for this blade.
    pub fn metric_sign(self, sig: Signature) -> i64 {
        if (self.0 & sig.negative_mask())
            .count_ones()
            .is_multiple_of(2)
        {
            1
        } else {
            -1
        }
    }

    /// The sign `s` with `(e^A)^2 = s e`.
    pub fn square_sign(self, sig: Signature) -> i64 {
        self.reversion_sign() * self.metric_sign(sig)
    }

    /// The sign `s` with `(e^A)^{-1} = s e^A`.
    pub fn inverse_sign(self, sig: Signature) -> i64 {
        self.square_sign(sig)
    }

    pub fn label(self, n: usize) -> String {
        if self.0 == 0 {
            return "e".to_string();
        }
        let idx: Vec<String> = self.indices().iter().map(|a| a.to_string()).collect();
        if n > 9 {
            format!("e{}", idx.join(","))
        } else {
            format!("e{}", idx.concat())
        }
    }
}

/// Canonical reordering sign and resulting blade for `e^A e^B`.
pub fn blade_product_sign(a: Blade, b: Blade, sig: Signature) -> (i64, Blade) {
    // each generator of `b` must pass every generator of `a` with a larger index
    let mut swaps = 0u32;
    let mut x = a.0 >> 1;
    while x != 0 {
        swaps += (x & b.0).count_ones();
        x >>= 1;
    }
    let contractions = (a.0 & b.0 & sig.negative_mask()).count_ones();
    let sign = if (swaps + contractions).is_multiple_of(2) {
        1
    } else {
        -1
    };
    (sign, Blade(a.0 ^ b.0))
}

/// Quaternion type `s`: the span of blades whose grade is `≡ s (mod 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuatType(pub u8);

impl QuatType {
    pub const ALL: [QuatType; 4] = [QuatType(0), QuatType(1), QuatType(2), QuatType(3)];

    pub fn of_grade(k: usize) -> Self {
        QuatType((k % 4) as u8)
    }

    pub fn contains(self, b: Blade) -> bool {
        b.quat_type() == self
    }
}

impl fmt::Display for QuatType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}̄", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(Signature, Signature),
    #[error("grade {k} out of range for n = {n}")]
    GradeOutOfRange { k: usize, n: usize },
    #[error("{0} has more than {MAX_GENERATORS} generators")]
    TooManyGenerators(Signature),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Multivector<S> {
    sig: Signature,
    coeffs: Vec<S>,
}

pub type RealMultivector = Multivector<Rational>;
pub type ComplexMultivector = Multivector<ComplexRational>;

impl<S: Scalar> Multivector<S> {
    pub fn zero(sig: Signature) -> Self {
        assert!(sig.n() <= MAX_GENERATORS, "{sig} is too large");
        Multivector {
            sig,
            coeffs: vec![S::zero(); sig.dim()],
        }
    }

    /// `s·e`.
    pub fn scalar(sig: Signature, s: S) -> Self {
        Self::term(sig, Blade::SCALAR, s)
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, S::one())
    }

    pub fn term(sig: Signature, blade: Blade, coeff: S) -> Self {
        let mut m = Self::zero(sig);
        assert!((blade.0 as usize) < sig.dim(), "blade outside {sig}");
        m.coeffs[blade.0 as usize] = coeff;
        m
    }

    pub fn blade(sig: Signature, blade: Blade) -> Self {
        Self::term(sig, blade, S::one())
    }

    pub fn generator(sig: Signature, a: usize) -> Self {
        Self::blade(sig, Blade::generator(a))
    }

    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (Blade, S)>) -> Self {
        let mut m = Self::zero(sig);
        for (b, c) in terms {
            let slot = &mut m.coeffs[b.0 as usize];
            *slot = slot.add(&c);
        }
        m
    }

    pub fn from_coeffs(sig: Signature, coeffs: Vec<S>) -> Self {
        assert_eq!(coeffs.len(), sig.dim(), "coefficient count must be 2^n");
        Multivector { sig, coeffs }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, b: Blade) -> &S {
        &self.coeffs[b.0 as usize]
    }

    /// Nonzero terms in mask order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &S)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Blade(i as u32), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.is_negligible(tol))
    }

    pub fn max_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .map(Scalar::magnitude)
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.sig == other.sig
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    fn check_sig(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.sig == other.sig {
            Ok(())
        } else {
            Err(AlgebraError::SignatureMismatch(self.sig, other.sig))
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!(self.sig, other.sig, "signature mismatch");
        Multivector {
            sig: self.sig,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    fn map_blades(&self, f: impl Fn(Blade, &S) -> S) -> Self {
        Multivector {
            sig: self.sig,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| f(Blade(i as u32), c))
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map_blades(|_, c| c.mul(s))
    }

    pub fn geometric_product(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_sig(other)?;
        let mut out = Self::zero(self.sig);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let (sign, r) = blade_product_sign(a, b, self.sig);
                let prod = ca.mul(cb);
                let slot = &mut out.coeffs[r.0 as usize];
                *slot = if sign > 0 {
                    slot.add(&prod)
                } else {
                    slot.sub(&prod)
                };
            }
        }
        Ok(out)
    }

    /// Grade-`k` part.
    pub fn grade_project(&self, k: usize) -> Result<Self, AlgebraError> {
        if k > self.sig.n() {
            return Err(AlgebraError::GradeOutOfRange { k, n: self.sig.n() });
        }
        Ok(self.select(|b| b.grade() == k))
    }

    /// Keep only the blades accepted by `keep`.
    pub fn select(&self, keep: impl Fn(Blade) -> bool) -> Self {
        self.map_blades(|b, c| if keep(b) { c.clone() } else { S::zero() })
    }

    pub fn even_part(&self) -> Self {
        self.select(|b| b.grade() % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.select(|b| b.grade() % 2 == 1)
    }

    pub fn quat_type_project(&self, s: QuatType) -> Self {
        self.select(|b| s.contains(b))
    }

    /// `Û`: `e^a → -e^a`.
    pub fn grade_involution(&self) -> Self {
        self.map_blades(|b, c| {
            if b.involution_sign() > 0 {
                c.clone()
            } else {
                c.neg()
            }
        })
    }

    /// `Ũ`: reverses the generator order inside every blade.
    pub fn reversion(&self) -> Self {
        self.map_blades(|b, c| {
            if b.reversion_sign() > 0 {
                c.clone()
            } else {
                c.neg()
            }
        })
    }

    /// `Ū`: conjugates every coefficient.
    pub fn complex_conjugate(&self) -> Self {
        self.map_blades(|_, c| c.conj())
    }

    /// `U‡ = (Ū)~`.
    pub fn pseudo_hermitian(&self) -> Self {
        self.complex_conjugate().reversion()
    }

    /// `U†`: `(λ e^A)† = λ̄ (e^A)^{-1}`.
    pub fn hermitian_conjugate(&self) -> Self {
        let sig = self.sig;
        self.map_blades(|b, c| {
            let c = c.conj();
            if b.inverse_sign(sig) > 0 {
                c
            } else {
                c.neg()
            }
        })
    }

    /// `[U, V] = UV - VU`.
    pub fn lie_bracket(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.geometric_product(other)? - other.geometric_product(self)?)
    }

    /// Nonzero terms as a `{mask: coefficient}` map.
    pub fn term_map(&self) -> BTreeMap<u32, S> {
        self.terms().map(|(b, c)| (b.0, c.clone())).collect()
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Multivector<T> {
        Multivector {
            sig: self.sig,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<T: crate::scalars::RealScalar> Multivector<T> {
    /// View a real multivector inside the complexified algebra.
    pub fn complexify(&self) -> Multivector<Complex<T>> {
        self.map_coeffs(|c| Complex::real(c.clone()))
    }
}

impl<T: crate::scalars::RealScalar> Multivector<Complex<T>> {
    /// The real multivector, if every coefficient is real within `tol`.
    pub fn to_real(&self, tol: f64) -> Option<Multivector<T>> {
        if self.coeffs.iter().all(|c| c.is_real(tol)) {
            Some(self.map_coeffs(|c| c.re.clone()))
        } else {
            None
        }
    }

    pub fn times_i(&self) -> Self {
        self.scale(&Complex::i())
    }
}

impl<S: Scalar> Add for &Multivector<S> {
    type Output = Multivector<S>;
    fn add(self, rhs: Self) -> Multivector<S> {
        self.zip_with(rhs, |a, b| a.add(b))
    }
}

impl<S: Scalar> Add for Multivector<S> {
    type Output = Multivector<S>;
    fn add(self, rhs: Self) -> Multivector<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for &Multivector<S> {
    type Output = Multivector<S>;
    fn sub(self, rhs: Self) -> Multivector<S> {
        self.zip_with(rhs, |a, b| a.sub(b))
    }
}

impl<S: Scalar> Sub for Multivector<S> {
    type Output = Multivector<S>;
    fn sub(self, rhs: Self) -> Multivector<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Neg for &Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        self.map_blades(|_, c| c.neg())
    }
}

impl<S: Scalar> Neg for Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        -&self
    }
}

/// Geometric product; panics on signature mismatch.
impl<S: Scalar> Mul for &Multivector<S> {
    type Output = Multivector<S>;
    fn mul(self, rhs: Self) -> Multivector<S> {
        self.geometric_product(rhs).expect("geometric product")
    }
}

impl<S: Scalar> Mul for Multivector<S> {
    type Output = Multivector<S>;
    fn mul(self, rhs: Self) -> Multivector<S> {
        &self * &rhs
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.sig.n();
        let parts: Vec<String> = self
            .terms()
            .map(|(b, c)| {
                if b == Blade::SCALAR {
                    c.to_string()
                } else if *c == S::one() {
                    b.label(n)
                } else {
                    format!("{} {}", c, b.label(n))
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MultivectorJson<S> {
    signature: Signature,
    terms: BTreeMap<String, S>,
}

impl<S: Scalar + Serialize> Serialize for Multivector<S> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        MultivectorJson {
            signature: self.sig,
            terms: self
                .terms()
                .map(|(b, c)| (b.0.to_string(), c.clone()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, S: Scalar + Deserialize<'de>> Deserialize<'de> for Multivector<S> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = MultivectorJson::<S>::deserialize(d)?;
        if raw.signature.n() > MAX_GENERATORS {
            return Err(D::Error::custom("too many generators"));
        }
        let mut m = Multivector::zero(raw.signature);
        for (k, c) in raw.terms {
            let mask: u32 = k.parse().map_err(D::Error::custom)?;
            if mask as usize >= raw.signature.dim() {
                return Err(D::Error::custom(format!(
                    "mask {mask} outside {}",
                    raw.signature
                )));
            }
            m.coeffs[mask as usize] = c;
        }
        Ok(m)
    }
}

/// A small nonzero rational: numerator in `-5..=5`, denominator in `1..=4`.
pub fn random_small_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let num = rng.gen_range(-5i64..=5);
        if num != 0 {
            return Rational::new(num, rng.gen_range(1i64..=4));
        }
    }
}

/// At most `max_terms` nonzero terms drawn from blades accepted by `allowed`.
pub fn random_sparse<R: Rng>(
    sig: Signature,
    rng: &mut R,
    max_terms: usize,
    allowed: impl Fn(Blade) -> bool,
) -> RealMultivector {
    let pool: Vec<Blade> = sig.blades().filter(|&b| allowed(b)).collect();
    if pool.is_empty() {
        return Multivector::zero(sig);
    }
    let count = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<(Blade, Rational)> = (0..count)
        .map(|_| {
            (
                pool[rng.gen_range(0..pool.len())],
                random_small_rational(rng),
            )
        })
        .collect();
    Multivector::from_terms(sig, terms)
}

/// Checks the four parity-dependent expressions of `U†` through `U‡`
/// (and `Û‡`) sandwiched by `e_{1…p}` or `e_{p+1…n}`, on every blade `e^A`
/// and on `i·e^A`.
pub fn verify_dagger_identities(sig: Signature) -> Vec<Report> {
    let n = sig.n();
    let head = Blade::range(1, sig.p);
    let tail = Blade::range(sig.p + 1, n);
    let cases = [
        (
            "U† = e_{1…p} U‡ e^{1…p} (p odd)",
            sig.p % 2 == 1,
            head,
            false,
        ),
        (
            "U† = e_{1…p} Û‡ e^{1…p} (p even)",
            sig.p.is_multiple_of(2),
            head,
            true,
        ),
        (
            "U† = e_{p+1…n} U‡ e^{p+1…n} (q even)",
            sig.q.is_multiple_of(2),
            tail,
            false,
        ),
        (
            "U† = e_{p+1…n} Û‡ e^{p+1…n} (q odd)",
            sig.q % 2 == 1,
            tail,
            true,
        ),
    ];
    cases
        .iter()
        .filter(|c| c.1)
        .map(|&(claim, _, frame, hat)| {
            let upper: ComplexMultivector = Multivector::blade(sig, frame);
            let lower = upper.hermitian_conjugate();
            let mut failures = Vec::new();
            for b in sig.blades() {
                let base: ComplexMultivector = Multivector::blade(sig, b);
                for u in [base.clone(), base.times_i()] {
                    let inner = if hat { u.grade_involution() } else { u.clone() };
                    let rhs = &(&lower * &inner.pseudo_hermitian()) * &upper;
                    if rhs != u.hermitian_conjugate() {
                        failures.push(b.0);
                    }
                }
            }
            Report::new(
                claim,
                if failures.is_empty() {
                    Status::Pass
                } else {
                    Status::Fail
                },
            )
            .with_signature(sig)
            .with_details(json!({ "blades_checked": sig.dim() * 2, "failing_masks": failures }))
        })
        .collect()
}
