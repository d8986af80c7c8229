//! Dense square matrices over the scalar rings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalars::{Complex, Quaternion, RealScalar, RingTag, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct RepMatrix<S> {
    size: usize,
    entries: Vec<S>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("expected {expected} entries, got {got}")]
    BadEntryCount { expected: usize, got: usize },
}

impl<S: Scalar> RepMatrix<S> {
    pub fn zero(size: usize) -> Self {
        RepMatrix {
            size,
            entries: vec![S::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::diagonal(&vec![S::one(); size])
    }

    pub fn diagonal(diag: &[S]) -> Self {
        let mut m = Self::zero(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Row-major construction.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, MatrixError> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(MatrixError::BadEntryCount {
                    expected: size,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(RepMatrix { size, entries })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.entries[i * self.size + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.entries
            .chunks(self.size.max(1))
            .map(<[S]>::to_vec)
            .collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    fn check_size(&self, other: &Self) -> Result<(), MatrixError> {
        if self.size == other.size {
            Ok(())
        } else {
            Err(MatrixError::SizeMismatch(self.size, other.size))
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> RepMatrix<T> {
        RepMatrix {
            size: self.size,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self, MatrixError> {
        self.check_size(other)?;
        Ok(RepMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip(other, S::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip(other, S::sub)
    }

    pub fn neg(&self) -> Self {
        self.map(S::neg)
    }

    /// Left scalar multiple `s·M`.
    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| s.mul(x))
    }

    /// Matrix product; zero entries are skipped, which keeps products of
    /// monomial matrices cheap.
    pub fn mat_mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_size(other)?;
        let m = self.size;
        let mut out = Self::zero(m);
        for i in 0..m {
            for k in 0..m {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.entries[i * m + j];
                    *slot = slot.add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let m = self.size;
        let mut out = Self::zero(m);
        for i in 0..m {
            for j in 0..m {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Entrywise ring conjugation followed by transposition.
    pub fn conj_transpose(&self) -> Self {
        self.transpose().map(S::conj)
    }

    pub fn trace(&self) -> S {
        (0..self.size).fold(S::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(S::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.size == other.size
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(S::magnitude).fold(0.0, f64::max)
    }

    /// Every row and column has exactly one nonzero entry.
    pub fn is_monomial(&self) -> bool {
        let m = self.size;
        (0..m).all(|i| (0..m).filter(|&j| !self.get(i, j).is_zero()).count() == 1)
            && (0..m).all(|j| (0..m).filter(|&i| !self.get(i, j).is_zero()).count() == 1)
    }

    /// `(A B; C D)` from four equal-size blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self, MatrixError> {
        for x in [b, c, d] {
            a.check_size(x)?;
        }
        let h = a.size;
        let mut out = Self::zero(2 * h);
        for i in 0..h {
            for j in 0..h {
                out.set(i, j, a.get(i, j).clone());
                out.set(i, j + h, b.get(i, j).clone());
                out.set(i + h, j, c.get(i, j).clone());
                out.set(i + h, j + h, d.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// `diag(A, B)`.
    pub fn block_diag(a: &Self, b: &Self) -> Result<Self, MatrixError> {
        let z = Self::zero(a.size);
        Self::from_blocks(a, &z, &z, b)
    }

    /// The four `size/2` blocks `(A, B, C, D)` of `(A B; C D)`.
    pub fn blocks(&self) -> [Self; 4] {
        let h = self.size / 2;
        let sub = |r0: usize, c0: usize| {
            let mut out = Self::zero(h);
            for i in 0..h {
                for j in 0..h {
                    out.set(i, j, self.get(r0 + i, c0 + j).clone());
                }
            }
            out
        };
        [sub(0, 0), sub(0, h), sub(h, 0), sub(h, h)]
    }

    /// Both off-diagonal half-size blocks vanish.
    pub fn is_block_diagonal(&self) -> bool {
        let [_, b, c, _] = self.blocks();
        self.size.is_multiple_of(2) && b.is_zero() && c.is_zero()
    }

    /// Both diagonal half-size blocks vanish.
    pub fn is_block_antidiagonal(&self) -> bool {
        let [a, _, _, d] = self.blocks();
        self.size.is_multiple_of(2) && a.is_zero() && d.is_zero()
    }
}

impl<T: RealScalar> RepMatrix<Quaternion<T>> {
    /// All entries lie in the real line of the quaternions.
    pub fn to_real(&self) -> Option<RepMatrix<T>> {
        self.entries
            .iter()
            .all(|q| q.x.is_zero() && q.y.is_zero() && q.z.is_zero())
            .then(|| self.map(|q| q.w.clone()))
    }

    /// All entries lie in `span{1, i}`.
    pub fn to_complex(&self) -> Option<RepMatrix<Complex<T>>> {
        self.entries
            .iter()
            .all(Quaternion::is_complex)
            .then(|| self.map(|q| Complex::new(q.w.clone(), q.x.clone())))
    }

    /// Smallest ring containing every entry.
    pub fn natural_ring(&self) -> RingTag {
        let exact = T::EXACT;
        match (self.to_real().is_some(), self.to_complex().is_some(), exact) {
            (true, _, true) => RingTag::Rational,
            (true, _, false) => RingTag::Float,
            (false, true, true) => RingTag::ComplexRational,
            (false, true, false) => RingTag::ComplexFloat,
            (false, false, true) => RingTag::QuaternionRational,
            (false, false, false) => RingTag::QuaternionFloat,
        }
    }
}

/// A candidate form matrix together with its recomputed properties.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormMatrix<S: Scalar + Serialize> {
    pub matrix: RepMatrix<S>,
    /// `Mᵀ = M`.
    pub is_symmetric: bool,
    /// `Mᵀ = -M`.
    pub is_skew: bool,
    /// `M^♦ = M` for the ring's conjugate transpose.
    pub is_hermitian: bool,
    /// `M^♦ = -M`.
    pub is_skew_hermitian: bool,
    /// `s` with `M² = s·1`, if any.
    pub square_sign: Option<i64>,
    pub trace_zero: bool,
    /// `M^♦ M = 1`.
    pub is_unitary_like: bool,
}

pub fn classify_form<S: Scalar + Serialize>(m: &RepMatrix<S>) -> FormMatrix<S> {
    let t = m.transpose();
    let ct = m.conj_transpose();
    let id = RepMatrix::identity(m.size());
    let sq = m.mat_mul(m).expect("square matrix");
    let square_sign = if sq == id {
        Some(1)
    } else if sq == id.neg() {
        Some(-1)
    } else {
        None
    };
    FormMatrix {
        is_symmetric: t == *m,
        is_skew: t == m.neg(),
        is_hermitian: ct == *m,
        is_skew_hermitian: ct == m.neg(),
        square_sign,
        trace_zero: m.trace().is_zero(),
        is_unitary_like: ct.mat_mul(m).expect("square matrix") == id,
        matrix: m.clone(),
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for RepMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for (r, row) in cells.chunks(self.size.max(1)).enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[ {} ]", padded.join("  "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson<S> {
    size: usize,
    ring: RingTag,
    entries: Vec<Vec<S>>,
}

impl<S: Scalar + Serialize> Serialize for RepMatrix<S> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        MatrixJson {
            size: self.size,
            ring: S::RING,
            entries: self.rows(),
        }
        .serialize(s)
    }
}

impl<'de, S: Scalar + Deserialize<'de>> Deserialize<'de> for RepMatrix<S> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = MatrixJson::<S>::deserialize(d)?;
        if raw.ring != S::RING {
            return Err(D::Error::custom(format!(
                "expected ring {}, got {}",
                S::RING,
                raw.ring
            )));
        }
        if raw.entries.len() != raw.size {
            return Err(D::Error::custom("row count does not match size"));
        }
        RepMatrix::from_rows(raw.entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{QuaternionRational, Rational};

    fn r(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    fn m(rows: &[&[i64]]) -> RepMatrix<Rational> {
        RepMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| r(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn product_and_transpose() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mat_mul(&b).unwrap(), m(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), m(&[&[1, 3], &[2, 4]]));
        assert_eq!(a.trace(), r(5));
        assert!(b.is_monomial());
        assert!(!a.is_monomial());
        assert!(a.mat_mul(&RepMatrix::identity(3)).is_err());
    }

    #[test]
    fn blocks_round_trip() {
        let a = m(&[&[1]]);
        let z = RepMatrix::zero(1);
        let d = RepMatrix::block_diag(&a, &a.neg()).unwrap();
        assert_eq!(d, m(&[&[1, 0], &[0, -1]]));
        assert!(d.is_block_diagonal());
        let off = RepMatrix::from_blocks(&z, &a, &a, &z).unwrap();
        assert!(off.is_block_antidiagonal());
        assert_eq!(off.blocks()[1], a);
    }

    #[test]
    fn quaternion_conj_transpose() {
        let i = QuaternionRational::unit_i();
        let j = QuaternionRational::unit_j();
        let z = QuaternionRational::zero();
        let a = RepMatrix::from_rows(vec![vec![z.clone(), i.clone()], vec![j.clone(), z.clone()]])
            .unwrap();
        let expect =
            RepMatrix::from_rows(vec![vec![z.clone(), j.neg()], vec![i.neg(), z]]).unwrap();
        assert_eq!(a.conj_transpose(), expect);
        assert_eq!(a.natural_ring(), RingTag::QuaternionRational);
        assert!(a.to_complex().is_none());
    }

    fn omega() -> RepMatrix<Rational> {
        m(&[&[0, -1], &[1, 0]])
    }

    #[test]
    fn form_flags() {
        let f = classify_form(&RepMatrix::<Rational>::identity(2));
        assert!(f.is_symmetric && !f.trace_zero);
        assert_eq!(f.square_sign, Some(1));
        let w = classify_form(&omega());
        assert!(w.is_skew && w.trace_zero && w.is_unitary_like);
        assert_eq!(w.square_sign, Some(-1));
        assert_eq!(omega().trace(), r(0));
        assert_eq!(omega().transpose(), omega().neg());
    }

    #[test]
    fn quaternion_transpose_is_not_anti_multiplicative() {
        let a = RepMatrix::diagonal(&[QuaternionRational::unit_i()]);
        let b = RepMatrix::diagonal(&[QuaternionRational::unit_j()]);
        let lhs = a.mat_mul(&b).unwrap().transpose();
        let rhs = b.transpose().mat_mul(&a.transpose()).unwrap();
        assert_eq!(lhs, RepMatrix::diagonal(&[QuaternionRational::unit_k()]));
        assert_ne!(lhs, rhs);
        let lhs = a.mat_mul(&b).unwrap().conj_transpose();
        let rhs = b.conj_transpose().mat_mul(&a.conj_transpose()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_round_trip() {
        let a = m(&[&[1, -2], &[0, 3]]);
        let js = serde_json::to_value(&a).unwrap();
        assert_eq!(js["ring"], "rational");
        assert_eq!(js["entries"][0][1], "-2/1");
        let back: RepMatrix<Rational> = serde_json::from_value(js).unwrap();
        assert_eq!(back, a);
    }
}
