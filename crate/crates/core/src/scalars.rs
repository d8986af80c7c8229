//! Scalar rings shared by multivectors and matrices.
//!
//! Exact rings are built on arbitrary-precision rationals. Floating rings exist
//! only for exponential-map sampling; every identity check runs on the exact ones.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

/// Tag naming the ring a value (or a container of values) lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingTag {
    Rational,
    ComplexRational,
    QuaternionRational,
    Float,
    ComplexFloat,
    QuaternionFloat,
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RingTag::Rational => "rational",
            RingTag::ComplexRational => "complex-rational",
            RingTag::QuaternionRational => "quaternion-rational",
            RingTag::Float => "float",
            RingTag::ComplexFloat => "complex-float",
            RingTag::QuaternionFloat => "quaternion-float",
        };
        f.write_str(s)
    }
}

/// A (possibly non-commutative) ring with an involutive conjugation.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    const RING: RingTag;
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;

    fn is_zero(&self) -> bool;
    /// Largest absolute component, used for tolerance comparisons.
    fn magnitude(&self) -> f64;

    /// The central imaginary unit, for rings that have one.
    fn imag_unit() -> Option<Self>;
    /// No component outside the real line.
    fn is_real(&self, tol: f64) -> bool;
    /// Real part vanishes and only the complex-imaginary component remains.
    fn is_imaginary(&self, tol: f64) -> bool;

    /// Zero for exact rings, `magnitude <= tol` for floats.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol
        }
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if Self::EXACT {
            self == other
        } else {
            self.sub(other).magnitude() <= tol
        }
    }

    fn scale_i64(&self, k: i64) -> Self {
        self.mul(&Self::from_i64(k))
    }
}

/// Rings isomorphic to a subfield of the reals (rationals and doubles).
pub trait RealScalar: Scalar + PartialOrd {
    fn to_f64(&self) -> f64;
    fn from_rational(r: &Rational) -> Self;
}

/// Scalars that embed into the quaternions over `T` (as the real line or ℂ = span{1, i}).
pub trait QuatEmbed<T: RealScalar>: Scalar {
    fn embed(&self) -> Quaternion<T>;
}

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_integer(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rational(BigRational::new(num, den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn div(&self, other: &Self) -> Self {
        Rational(&self.0 / &other.0)
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// `2^e` for any integer `e`.
    pub fn pow2(e: i64) -> Self {
        let base = BigInt::one() << e.unsigned_abs();
        if e >= 0 {
            Rational(BigRational::from_integer(base))
        } else {
            Rational(BigRational::new(BigInt::one(), base))
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = den.parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

// JSON: always "num/den", including integers.
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

impl Scalar for Rational {
    const RING: RingTag = RingTag::Rational;
    const EXACT: bool = true;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(num, den)
    }
    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn magnitude(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        self.0.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn imag_unit() -> Option<Self> {
        None
    }
    fn is_real(&self, _tol: f64) -> bool {
        true
    }
    fn is_imaginary(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}

impl RealScalar for Rational {
    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Scalar for f64 {
    const RING: RingTag = RingTag::Float;
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn imag_unit() -> Option<Self> {
        None
    }
    fn is_real(&self, _tol: f64) -> bool {
        true
    }
    fn is_imaginary(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
}

impl RealScalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_rational(r: &Rational) -> Self {
        r.to_f64()
    }
}

/// `re + im·i` over a real ring.
#[derive(Debug, Clone, PartialEq)]
pub struct Complex<T> {
    pub re: T,
    pub im: T,
}

pub type ComplexRational = Complex<Rational>;
pub type ComplexFloat = Complex<f64>;

impl<T: RealScalar> Complex<T> {
    pub fn new(re: T, im: T) -> Self {
        Complex { re, im }
    }

    pub fn real(re: T) -> Self {
        Complex { re, im: T::zero() }
    }

    pub fn i() -> Self {
        Complex {
            re: T::zero(),
            im: T::one(),
        }
    }
}

impl<T: RealScalar> Scalar for Complex<T> {
    const RING: RingTag = if T::EXACT {
        RingTag::ComplexRational
    } else {
        RingTag::ComplexFloat
    };
    const EXACT: bool = T::EXACT;

    fn zero() -> Self {
        Complex::real(T::zero())
    }
    fn one() -> Self {
        Complex::real(T::one())
    }
    fn from_i64(v: i64) -> Self {
        Complex::real(T::from_i64(v))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::real(T::from_ratio(num, den))
    }
    fn add(&self, o: &Self) -> Self {
        Complex::new(self.re.add(&o.re), self.im.add(&o.im))
    }
    fn sub(&self, o: &Self) -> Self {
        Complex::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }
    fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Complex::real(self.re.mul(&o.re));
        }
        Complex::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }
    fn neg(&self) -> Self {
        Complex::new(self.re.neg(), self.im.neg())
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), self.im.neg())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn magnitude(&self) -> f64 {
        self.re.magnitude().max(self.im.magnitude())
    }
    fn imag_unit() -> Option<Self> {
        Some(Complex::i())
    }
    fn is_real(&self, tol: f64) -> bool {
        self.im.is_negligible(tol)
    }
    fn is_imaginary(&self, tol: f64) -> bool {
        self.re.is_negligible(tol)
    }
}

impl<T: RealScalar + Serialize> Serialize for Complex<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.re)?;
        t.serialize_element(&self.im)?;
        t.end()
    }
}

impl<'de, T: RealScalar + Deserialize<'de>> Deserialize<'de> for Complex<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (re, im) = <(T, T)>::deserialize(d)?;
        Ok(Complex { re, im })
    }
}

/// `w + x·i + y·j + z·k` with the Hamilton convention `ij = k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

pub type QuaternionRational = Quaternion<Rational>;
pub type QuaternionFloat = Quaternion<f64>;

impl<T: RealScalar> Quaternion<T> {
    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn real(w: T) -> Self {
        Quaternion::new(w, T::zero(), T::zero(), T::zero())
    }

    pub fn unit_i() -> Self {
        Quaternion::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn unit_j() -> Self {
        Quaternion::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn unit_k() -> Self {
        Quaternion::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    /// Only the `1` and `i` components are populated.
    pub fn is_complex(&self) -> bool {
        self.y.is_zero() && self.z.is_zero()
    }

    pub fn map<U: RealScalar>(&self, f: impl Fn(&T) -> U) -> Quaternion<U> {
        Quaternion::new(f(&self.w), f(&self.x), f(&self.y), f(&self.z))
    }

    pub fn components(&self) -> [&T; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }
}

fn quat_mul<T: RealScalar>(a: &Quaternion<T>, b: &Quaternion<T>) -> Quaternion<T> {
    let (aw, ax, ay, az) = (&a.w, &a.x, &a.y, &a.z);
    let (bw, bx, by, bz) = (&b.w, &b.x, &b.y, &b.z);
    Quaternion::new(
        aw.mul(bw)
            .sub(&ax.mul(bx))
            .sub(&ay.mul(by))
            .sub(&az.mul(bz)),
        aw.mul(bx)
            .add(&ax.mul(bw))
            .add(&ay.mul(bz))
            .sub(&az.mul(by)),
        aw.mul(by)
            .sub(&ax.mul(bz))
            .add(&ay.mul(bw))
            .add(&az.mul(bx)),
        aw.mul(bz)
            .add(&ax.mul(by))
            .sub(&ay.mul(bx))
            .add(&az.mul(bw)),
    )
}

/// Hamilton product.
pub fn quaternion_mul<T: RealScalar>(a: &Quaternion<T>, b: &Quaternion<T>) -> Quaternion<T> {
    quat_mul(a, b)
}

impl<T: RealScalar> Scalar for Quaternion<T> {
    const RING: RingTag = if T::EXACT {
        RingTag::QuaternionRational
    } else {
        RingTag::QuaternionFloat
    };
    const EXACT: bool = T::EXACT;

    fn zero() -> Self {
        Quaternion::real(T::zero())
    }
    fn one() -> Self {
        Quaternion::real(T::one())
    }
    fn from_i64(v: i64) -> Self {
        Quaternion::real(T::from_i64(v))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Quaternion::real(T::from_ratio(num, den))
    }
    fn add(&self, o: &Self) -> Self {
        Quaternion::new(
            self.w.add(&o.w),
            self.x.add(&o.x),
            self.y.add(&o.y),
            self.z.add(&o.z),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        Quaternion::new(
            self.w.sub(&o.w),
            self.x.sub(&o.x),
            self.y.sub(&o.y),
            self.z.sub(&o.z),
        )
    }
    fn mul(&self, o: &Self) -> Self {
        // monomial representation matrices are full of pure units; skip the
        // sixteen products when either side is real
        if self.x.is_zero() && self.y.is_zero() && self.z.is_zero() {
            return o.map(|c| self.w.mul(c));
        }
        if o.x.is_zero() && o.y.is_zero() && o.z.is_zero() {
            return self.map(|c| c.mul(&o.w));
        }
        quat_mul(self, o)
    }
    fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }
    fn conj(&self) -> Self {
        Quaternion::new(self.w.clone(), self.x.neg(), self.y.neg(), self.z.neg())
    }
    fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
    fn magnitude(&self) -> f64 {
        self.components()
            .iter()
            .map(|c| c.magnitude())
            .fold(0.0, f64::max)
    }
    fn imag_unit() -> Option<Self> {
        // the quaternion i is not central, so it cannot play the role of a
        // complex scalar
        None
    }
    fn is_real(&self, tol: f64) -> bool {
        self.x.is_negligible(tol) && self.y.is_negligible(tol) && self.z.is_negligible(tol)
    }
    fn is_imaginary(&self, tol: f64) -> bool {
        self.w.is_negligible(tol) && self.y.is_negligible(tol) && self.z.is_negligible(tol)
    }
}

impl<T: RealScalar + Serialize> Serialize for Quaternion<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(4)?;
        for c in self.components() {
            t.serialize_element(c)?;
        }
        t.end()
    }
}

impl<'de, T: RealScalar + Deserialize<'de>> Deserialize<'de> for Quaternion<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (w, x, y, z) = <(T, T, T, T)>::deserialize(d)?;
        Ok(Quaternion { w, x, y, z })
    }
}

impl<T: RealScalar> QuatEmbed<T> for T {
    fn embed(&self) -> Quaternion<T> {
        Quaternion::real(self.clone())
    }
}

impl<T: RealScalar> QuatEmbed<T> for Complex<T> {
    fn embed(&self) -> Quaternion<T> {
        Quaternion::new(self.re.clone(), self.im.clone(), T::zero(), T::zero())
    }
}

impl<T: RealScalar + fmt::Display> fmt::Display for Complex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else {
            write!(f, "({}+{}i)", self.re, self.im)
        }
    }
}

impl<T: RealScalar + fmt::Display> fmt::Display for Quaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [
            ("", &self.w),
            ("i", &self.x),
            ("j", &self.y),
            ("k", &self.z),
        ]
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(u, c)| format!("{c}{u}"))
        .collect();
        match parts.len() {
            0 => f.write_str("0"),
            1 => f.write_str(&parts[0]),
            _ => write!(f, "({})", parts.join("+")),
        }
    }
}

/// Conjugation for any scalar ring.
pub fn ring_conjugate<S: Scalar>(x: &S) -> S {
    x.conj()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(w: i64, x: i64, y: i64, z: i64) -> QuaternionRational {
        Quaternion::new(
            Rational::from_integer(w),
            Rational::from_integer(x),
            Rational::from_integer(y),
            Rational::from_integer(z),
        )
    }

    #[test]
    fn conjugation_examples() {
        let r = Rational::new(3, 2);
        assert_eq!(ring_conjugate(&r), r);
        let c = Complex::new(Rational::from_integer(1), Rational::from_integer(2));
        assert_eq!(
            ring_conjugate(&c),
            Complex::new(Rational::from_integer(1), Rational::from_integer(-2))
        );
        let k = quaternion_mul(&q(0, 1, 0, 0), &q(0, 0, 1, 0));
        assert_eq!(k, q(0, 0, 0, 1));
        assert_eq!(ring_conjugate(&k), q(0, 0, 0, -1));
    }

    #[test]
    fn hamilton_table() {
        assert_eq!(
            quaternion_mul(&q(0, 1, 0, 0), &q(0, 1, 0, 0)),
            q(-1, 0, 0, 0)
        );
        assert_eq!(
            quaternion_mul(&q(0, 0, 1, 0), &q(0, 1, 0, 0)),
            q(0, 0, 0, -1)
        );
        assert_eq!(
            quaternion_mul(&q(0, 0, 0, 1), &q(0, 0, 0, 1)),
            q(-1, 0, 0, 0)
        );
        // the fast paths agree with the full product
        let a = q(2, 0, 0, 0);
        let b = q(1, -3, 4, 5);
        assert_eq!(a.mul(&b), quat_mul(&a, &b));
        assert_eq!(b.mul(&a), quat_mul(&b, &a));
    }

    #[test]
    fn rational_normalizes_and_parses() {
        let r = Rational::new(4, -6);
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
        assert_eq!("-2/3".parse::<Rational>().unwrap(), r);
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from_integer(7));
        assert!("1/0".parse::<Rational>().is_err());
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"-2/3\"");
        assert_eq!(Rational::pow2(-3), Rational::new(1, 8));
        assert_eq!(Rational::pow2(4), Rational::from_integer(16));
    }

    #[test]
    fn json_encodings() {
        let c = Complex::new(Rational::new(1, 2), Rational::from_integer(-1));
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"["1/2","-1/1"]"#);
        let back: ComplexRational = serde_json::from_str(r#"["1/2","-1/1"]"#).unwrap();
        assert_eq!(back, c);
        let qq = q(1, 0, -2, 3);
        let s = serde_json::to_string(&qq).unwrap();
        assert_eq!(s, r#"["1/1","0/1","-2/1","3/1"]"#);
        assert_eq!(serde_json::from_str::<QuaternionRational>(&s).unwrap(), qq);
    }
}
