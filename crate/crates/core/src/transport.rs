//! Isomorphisms between the groups induced by generator substitutions
//! `e^a → e^a e^n` or `e^a → i e^a`.

use serde::Serialize;
use serde_json::json;

use crate::groups::{is_member, ComplexMv, GroupError, GroupId};
use crate::multivector::{blade_product_sign, Blade, Multivector, Signature};
use crate::report::Report;
use crate::sampling::sample_exact;
use crate::scalars::{Complex, RealScalar, Scalar};

/// One of `±1, ±i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Unit {
    pub negative: bool,
    pub imaginary: bool,
}

impl Unit {
    pub const ONE: Unit = Unit {
        negative: false,
        imaginary: false,
    };
    pub const I: Unit = Unit {
        negative: false,
        imaginary: true,
    };

    pub fn mul(self, other: Unit) -> Unit {
        let flip = self.imaginary && other.imaginary;
        Unit {
            negative: self.negative ^ other.negative ^ flip,
            imaginary: self.imaginary ^ other.imaginary,
        }
    }

    pub fn with_sign(self, sign: i64) -> Unit {
        Unit {
            negative: self.negative ^ (sign < 0),
            ..self
        }
    }

    pub fn inverse(self) -> Unit {
        Unit {
            negative: self.negative ^ self.imaginary,
            ..self
        }
    }

    pub fn apply<T: RealScalar>(self, c: &Complex<T>) -> Complex<T> {
        let c = if self.imaginary {
            c.mul(&Complex::i())
        } else {
            c.clone()
        };
        if self.negative {
            c.neg()
        } else {
            c
        }
    }
}

/// A linear map sending each basis blade to a unit multiple of a basis blade.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonomialMap {
    pub from: Signature,
    pub to: Signature,
    table: Vec<Option<(Blade, Unit)>>,
}

fn unit_product(a: (Blade, Unit), b: (Blade, Unit), sig: Signature) -> (Blade, Unit) {
    let (s, r) = blade_product_sign(a.0, b.0, sig);
    (r, a.1.mul(b.1).with_sign(s))
}

impl MonomialMap {
    /// Extends generator images multiplicatively after checking that they
    /// satisfy the source algebra's relations.
    pub fn from_generators(
        from: Signature,
        to: Signature,
        images: &[(Blade, Unit)],
    ) -> Result<Self, GroupError> {
        assert_eq!(images.len(), from.n());
        for a in 0..from.n() {
            for b in a..from.n() {
                let ab = unit_product(images[a], images[b], to);
                let ba = unit_product(images[b], images[a], to);
                let ok = if a == b {
                    ab.0 == Blade::SCALAR
                        && !ab.1.imaginary
                        && ab.1.negative == (from.eta(a + 1) < 0)
                } else {
                    ab.0 == ba.0 && ab.1 == ba.1.with_sign(-1)
                };
                if !ok {
                    return Err(GroupError::BadGeneratorImages);
                }
            }
        }
        let table = from
            .blades()
            .map(|b| {
                Some(
                    b.indices()
                        .iter()
                        .fold((Blade::SCALAR, Unit::ONE), |acc, &a| {
                            unit_product(acc, images[a - 1], to)
                        }),
                )
            })
            .collect();
        Ok(MonomialMap { from, to, table })
    }

    pub fn image(&self, b: Blade) -> Option<(Blade, Unit)> {
        self.table[b.0 as usize]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.to.dim()];
        self.table
            .iter()
            .flatten()
            .all(|(b, _)| !std::mem::replace(&mut seen[b.0 as usize], true))
    }

    /// The inverse on the image.
    pub fn inverse(&self) -> Self {
        assert!(self.is_injective(), "monomial map is not injective");
        let mut table = vec![None; self.to.dim()];
        for (src, img) in self.table.iter().enumerate() {
            if let Some((b, u)) = img {
                table[b.0 as usize] = Some((Blade(src as u32), u.inverse()));
            }
        }
        MonomialMap {
            from: self.to,
            to: self.from,
            table,
        }
    }

    pub fn apply<T: RealScalar>(&self, u: &ComplexMv<T>) -> Result<ComplexMv<T>, GroupError> {
        let mut out = Multivector::zero(self.to);
        for (b, c) in u.terms() {
            let (img, unit) = self.table[b.0 as usize].ok_or(GroupError::OutsideDomain(b.0))?;
            out = &out + &Multivector::term(self.to, img, unit.apply(c));
        }
        Ok(out)
    }
}

/// `Cl(q,p) → C⊗Cl(p,q)`, `f^a ↦ i e^{σ(a)}`: positive generators of the
/// source go to the negative ones of the target and vice versa.
pub fn imaginary_substitution(p: usize, q: usize) -> MonomialMap {
    let from = Signature::new(q, p);
    let to = Signature::new(p, q);
    let images: Vec<(Blade, Unit)> = (1..=q)
        .map(|a| (Blade::generator(p + a), Unit::I))
        .chain((1..=p).map(|b| (Blade::generator(b), Unit::I)))
        .collect();
    MonomialMap::from_generators(from, to, &images).expect("valid substitution")
}

/// `Cl(p,q-1) → Cl(p,q)`, `f^a ↦ e^a e^n`; lands in the even subalgebra.
pub fn last_pivot_substitution(p: usize, q: usize) -> MonomialMap {
    assert!(q >= 1);
    let n = p + q;
    let images: Vec<(Blade, Unit)> = (1..n)
        .map(|a| (Blade::from_indices(&[a, n]), Unit::ONE))
        .collect();
    MonomialMap::from_generators(Signature::new(p, q - 1), Signature::new(p, q), &images)
        .expect("valid substitution")
}

/// `Cl(q,p-1) → Cl(p,q)`, `f^a ↦ e^{σ(a)} e^p`; lands in the even subalgebra.
pub fn positive_pivot_substitution(p: usize, q: usize) -> MonomialMap {
    assert!(p >= 1);
    let images: Vec<(Blade, Unit)> = (1..=q)
        .map(|a| (Blade::from_indices(&[p, p + a]), Unit::ONE.with_sign(-1)))
        .chain((1..p).map(|b| (Blade::from_indices(&[b, p]), Unit::ONE)))
        .collect();
    MonomialMap::from_generators(Signature::new(q, p - 1), Signature::new(p, q), &images)
        .expect("valid substitution")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Transport {
    pub from_group: GroupId,
    pub from_sig: Signature,
    pub to_group: GroupId,
    pub to_sig: Signature,
    pub map: MonomialMap,
}

/// Every isomorphism leaving `(g, sig)`.
pub fn transports_from(g: GroupId, sig: Signature) -> Vec<Transport> {
    let Signature { p, q } = sig;
    let t = |to_group, map: MonomialMap| Transport {
        from_group: g,
        from_sig: sig,
        to_group,
        to_sig: map.to,
        map,
    };
    match g {
        GroupId::G12 => vec![
            t(GroupId::G2i1, imaginary_substitution(q, p)),
            t(GroupId::G2, last_pivot_substitution(p, q + 1)),
            t(GroupId::G2, positive_pivot_substitution(q + 1, p)),
        ],
        GroupId::G23 => vec![t(GroupId::G2i3, imaginary_substitution(q, p))],
        GroupId::G2i1 => vec![t(GroupId::G12, imaginary_substitution(p, q).inverse())],
        GroupId::G2i3 => vec![t(GroupId::G23, imaginary_substitution(p, q).inverse())],
        GroupId::G2 => {
            let mut v = vec![t(GroupId::G2, imaginary_substitution(q, p))];
            if q >= 1 {
                v.push(t(GroupId::G12, last_pivot_substitution(p, q).inverse()));
            }
            if p >= 1 {
                v.push(t(GroupId::G12, positive_pivot_substitution(p, q).inverse()));
            }
            v
        }
        GroupId::SpinPlus => vec![],
    }
}

pub fn transport_between(
    g_from: GroupId,
    sig_from: Signature,
    g_to: GroupId,
    sig_to: Signature,
) -> Result<Transport, GroupError> {
    transports_from(g_from, sig_from)
        .into_iter()
        .find(|t| t.to_group == g_to && t.to_sig == sig_to)
        .ok_or(GroupError::UnsupportedTransport {
            from: g_from,
            sig: sig_from,
        })
}

/// Every transport leaving the five groups on `sig` carries exact samples to
/// members of the target group, and the inverse map brings them back.
pub fn verify_transports(sig: Signature, samples: usize, seed: u64) -> Vec<Report> {
    GroupId::FIVE
        .into_iter()
        .flat_map(|g| transports_from(g, sig))
        .map(|t| {
            let claim = format!(
                "{}{} ~ {}{}",
                t.from_group, t.from_sig, t.to_group, t.to_sig
            );
            let back = t.map.inverse();
            let result = sample_exact(t.from_group, sig, samples, seed).and_then(|s| {
                let mut bad = 0usize;
                for u in &s.samples {
                    let v = t.map.apply(&u.value)?;
                    if !is_member(t.to_group, &v, 0.0) || back.apply(&v)? != u.value {
                        bad += 1;
                    }
                }
                Ok(bad)
            });
            let (ok, details) = match result {
                Ok(bad) => (bad == 0, json!({ "samples": samples, "failures": bad })),
                Err(e) => (false, json!({ "error": e.to_string() })),
            };
            Report::check(claim, ok)
                .with_signature(sig)
                .with_group(t.from_group.name())
                .with_details(details)
        })
        .collect()
}
