//! Invariant forms: the group equation becomes `U^♦ M U = M` for the image
//! `M` of one basis element under the fixed representation.

use serde::Serialize;
use serde_json::{json, Value};

use super::{classify, ClassifyError, Family, Field, MatrixGroupName};
use crate::groups::{lie_algebra_dimension_closed, lie_algebra_dimension_sum, ComplexMv, GroupId};
use crate::matrices::{classify_form, RepMatrix};
use crate::multivector::{Blade, Multivector, Signature};
use crate::report::Report;
use crate::representation::{
    build_representation, identity_failures, ConjugationIdentity, QMatrix, RepClass, Representation,
};
use crate::sampling::{sample_exact, sample_exponential};
use crate::scalars::{Quaternion, QuaternionFloat, RealScalar, Scalar};
use crate::transport::{transports_from, Transport};

/// The matrix operation standing in for the algebra's conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    Transpose,
    Hermitian,
    QuaternionicStar,
}

impl Flavor {
    fn apply<S: Scalar>(self, m: &RepMatrix<S>) -> RepMatrix<S> {
        match self {
            Flavor::Transpose => m.transpose(),
            _ => m.conj_transpose(),
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Flavor::Transpose => "T",
            Flavor::Hermitian => "†",
            Flavor::QuaternionicStar => "*",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormKind {
    /// `U^♦ M U = M` on the whole matrix.
    Invariant,
    /// No form: for `U = diag(P, Q)` the blocks are tied by `Q^♦ G P = G`,
    /// and every invertible `P` has a partner `Q`.
    BlockPairing,
}

/// Where and how a group's defining equation becomes a matrix equation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormSpec {
    pub group: GroupId,
    pub signature: Signature,
    /// The real group and signature carrying the form; differs from the
    /// source when the group is first transported by a generator substitution.
    pub target_group: GroupId,
    pub target_signature: Signature,
    pub transported: bool,
    pub frame: Blade,
    pub frame_label: String,
    pub flavor: Flavor,
    pub kind: FormKind,
    pub equation: String,
}

fn with_involution(target: GroupId) -> bool {
    target == GroupId::G12
}

fn identity(target: GroupId, frame: Blade, flavor: Flavor) -> ConjugationIdentity {
    ConjugationIdentity {
        frame,
        with_involution: with_involution(target),
        transpose_only: flavor == Flavor::Transpose,
    }
}

/// The real group carrying the form and the transport leading to it.
fn target(
    g: GroupId,
    sig: Signature,
) -> Result<(GroupId, Signature, Option<Transport>), ClassifyError> {
    match g {
        GroupId::G12 | GroupId::G23 => Ok((g, sig, None)),
        _ if g == GroupId::SpinPlus && sig.n() > 5 => {
            Err(ClassifyError::Unsupported { group: g, sig })
        }
        // only scalars: the conjugation is trivial
        GroupId::G2 | GroupId::SpinPlus if sig.n() == 0 => Ok((GroupId::G23, sig, None)),
        _ => {
            let source = if g == GroupId::SpinPlus {
                GroupId::G2
            } else {
                g
            };
            let t = transports_from(source, sig)
                .into_iter()
                .find(|t| matches!(t.to_group, GroupId::G12 | GroupId::G23))
                .ok_or(ClassifyError::Unsupported { group: g, sig })?;
            Ok((t.to_group, t.to_sig, Some(t)))
        }
    }
}

fn flavors(class: RepClass) -> &'static [Flavor] {
    match class {
        RepClass::RealFull | RepClass::RealPair => &[Flavor::Transpose],
        RepClass::Complex => &[Flavor::Hermitian, Flavor::Transpose],
        RepClass::Quaternion | RepClass::QuaternionPair => &[Flavor::QuaternionicStar],
    }
}

/// Scalar first, then the positive and negative frames, then the products of
/// the symmetric and of the skew generators. Pair classes add the products of
/// the generators whose diagonal blocks agree, and of those whose blocks differ by sign.
fn frames(rep: &Representation) -> Vec<Blade> {
    let sig = rep.signature();
    let mut out = vec![
        Blade::SCALAR,
        Blade::range(1, sig.p),
        Blade::range(sig.p + 1, sig.n()),
    ];
    if let Ok(add) = rep.additional_signature() {
        out.push(add.sym_blade());
        out.push(add.skew_blade());
    }
    if rep.rep_class().is_pair() {
        let (mut same, mut opposite) = (Vec::new(), Vec::new());
        for (a, g) in rep.generators().iter().enumerate() {
            let [x, _, _, y] = g.blocks();
            if x == y {
                same.push(a + 1);
            } else if x == y.neg() {
                opposite.push(a + 1);
            }
        }
        out.push(Blade::from_indices(&same));
        out.push(Blade::from_indices(&opposite));
    }
    let mut seen = Vec::new();
    out.retain(|b| {
        let fresh = !seen.contains(b);
        seen.push(*b);
        fresh
    });
    out
}

/// `flavor(P_A) = s_A Q_A` for every blade image `diag(P_A, Q_A)`.
fn pairing_holds(rep: &Representation, id: &ConjugationIdentity, flavor: Flavor) -> bool {
    let sig = rep.signature();
    let mut ok = true;
    rep.for_each_blade_image(|b, img| {
        if !ok {
            return;
        }
        if !img.is_block_diagonal() {
            ok = false;
            return;
        }
        let [p, _, _, q] = img.blocks();
        let lhs = flavor.apply(&p);
        ok = if id.blade_sign(b, sig) > 0 {
            lhs == q
        } else {
            lhs == q.neg()
        };
    });
    ok
}

fn search(target: GroupId, rep: &Representation) -> Option<(Blade, Flavor, FormKind)> {
    let kinds: &[FormKind] = if rep.rep_class().is_pair() {
        &[FormKind::Invariant, FormKind::BlockPairing]
    } else {
        &[FormKind::Invariant]
    };
    let frames = frames(rep);
    for &kind in kinds {
        for &flavor in flavors(rep.rep_class()) {
            for &frame in &frames {
                let id = identity(target, frame, flavor);
                let holds = match kind {
                    FormKind::Invariant => identity_failures(rep, &id).is_empty(),
                    FormKind::BlockPairing => pairing_holds(rep, &id, flavor),
                };
                if holds {
                    return Some((frame, flavor, kind));
                }
            }
        }
    }
    None
}

/// The frame and flavor turning the group equation into a matrix equation
/// in the built representation of the target signature.
pub fn form_spec(g: GroupId, sig: Signature) -> Result<FormSpec, ClassifyError> {
    let (tg, tsig, transport) = target(g, sig)?;
    let rep = build_representation(tsig)?;
    let (frame, flavor, kind) = search(tg, &rep).ok_or(ClassifyError::NoForm { group: g, sig })?;
    let f = frame.label(tsig.n());
    let s = flavor.symbol();
    let equation = match kind {
        FormKind::Invariant => format!("U^{s} M U = M, M = β({f})"),
        FormKind::BlockPairing => {
            format!("no form, full linear group: Q^{s} G P = G for U = diag(P, Q), β({f}) = diag(G, G')")
        }
    };
    Ok(FormSpec {
        group: g,
        signature: sig,
        target_group: tg,
        target_signature: tsig,
        transported: transport.is_some(),
        frame,
        frame_label: f,
        flavor,
        kind,
        equation,
    })
}

/// Largest entry of the residual of the matrix equation for `b`.
fn residual<S: Scalar>(spec: &FormSpec, m: &RepMatrix<S>, b: &RepMatrix<S>) -> Option<f64> {
    let mul = |x: &RepMatrix<S>, y: &RepMatrix<S>| x.mat_mul(y).expect("equal sizes");
    match spec.kind {
        FormKind::Invariant => {
            let lhs = mul(&mul(&spec.flavor.apply(b), m), b);
            Some(lhs.sub(m).expect("equal sizes").max_norm())
        }
        FormKind::BlockPairing => {
            let [bp, bq] = [&b.blocks()[0], &b.blocks()[3]];
            if !b.is_block_diagonal() {
                return None;
            }
            let [g1, _, _, g2] = m.blocks();
            let upper = mul(&mul(&spec.flavor.apply(bq), &g1), bp)
                .sub(&g1)
                .expect("equal sizes");
            let lower = mul(&mul(&spec.flavor.apply(bp), &g2), bq)
                .sub(&g2)
                .expect("equal sizes");
            Some(upper.max_norm().max(lower.max_norm()))
        }
    }
}

/// Moves a sample to the target signature and drops the (zero) imaginary parts.
fn to_target<T: RealScalar>(
    u: &ComplexMv<T>,
    transport: Option<&Transport>,
    tol: f64,
) -> Option<Multivector<T>> {
    let v = match transport {
        Some(t) => t.map.apply(u).ok()?,
        None => u.clone(),
    };
    v.to_real(tol)
}

fn represent_float(
    images: &[RepMatrix<QuaternionFloat>],
    u: &Multivector<f64>,
) -> RepMatrix<QuaternionFloat> {
    let size = images[0].size();
    u.terms().fold(RepMatrix::zero(size), |acc, (b, c)| {
        acc.add(&images[b.0 as usize].scale(&Quaternion::real(*c)))
            .expect("equal sizes")
    })
}

fn invariance_report(
    g: GroupId,
    sig: Signature,
    spec: &FormSpec,
    rep: &Representation,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Report {
    let claim = format!("samples satisfy {}", spec.equation);
    let base = |ok: bool, details: Value| {
        Report::check(claim.clone(), ok)
            .with_signature(sig)
            .with_group(g.name())
            .with_details(details)
    };
    let transport = target(g, sig).ok().and_then(|t| t.2);
    let m = rep.blade_image(spec.frame);
    let exact = match sample_exact(g, sig, samples, seed) {
        Ok(s) => s,
        Err(e) => return base(false, json!({ "error": e.to_string(), "seed": seed })),
    };
    let mut exact_bad = 0usize;
    for s in &exact.samples {
        let ok = to_target(&s.value, transport.as_ref(), 0.0)
            .and_then(|u| rep.represent(&u).ok())
            .and_then(|b| residual(spec, &m, &b))
            .is_some_and(|r| r == 0.0);
        exact_bad += usize::from(!ok);
    }
    let mut images = vec![RepMatrix::zero(rep.size()); rep.signature().dim()];
    rep.for_each_blade_image(|b, img| images[b.0 as usize] = img.map(|x| x.map(|c| c.to_f64())));
    let mf = m.map(|x| x.map(|c| c.to_f64()));
    let (float_bad, worst) = match sample_exponential(g, sig, samples, seed, tol) {
        Ok(fs) => fs.iter().fold((0usize, 0.0f64), |(bad, worst), s| {
            let r = to_target(&s.value, transport.as_ref(), tol)
                .and_then(|u| residual(spec, &mf, &represent_float(&images, &u)));
            match r {
                Some(r) => (bad + usize::from(r > tol), worst.max(r)),
                None => (bad + 1, worst),
            }
        }),
        Err(e) => return base(false, json!({ "error": e.to_string(), "seed": seed })),
    };
    base(
        exact_bad == 0 && float_bad == 0,
        json!({
            "seed": seed,
            "exact_samples": exact.samples.len(),
            "exact_failures": exact_bad,
            "float_samples": samples,
            "float_failures": float_bad,
            "max_float_residual": worst,
            "tol": tol,
        }),
    )
}

fn is_plus_minus_identity(m: &QMatrix) -> bool {
    m.is_identity() || m.neg().is_identity()
}

/// Whether one diagonal block of `β(F)` has the shape the family requires.
fn block_matches(family: Family, indefinite: bool, m: &QMatrix) -> bool {
    let f = classify_form(m);
    let sq = f.square_sign;
    match family {
        Family::U if indefinite => {
            ((f.is_hermitian && sq == Some(1)) || (f.is_skew_hermitian && sq == Some(-1)))
                && f.trace_zero
        }
        Family::U | Family::OReal | Family::SpCompact => is_plus_minus_identity(m),
        Family::ORealIndef => f.is_symmetric && sq == Some(1) && f.trace_zero,
        Family::SpReal => f.is_skew && sq == Some(-1),
        Family::OComplex => f.is_symmetric,
        Family::SpComplex => f.is_skew,
        Family::SpIndef => f.is_hermitian && sq == Some(1) && f.trace_zero,
        Family::OQuaternionic => f.is_skew_hermitian && sq == Some(-1),
        Family::GLReal | Family::GLQuaternionic => sq.is_some(),
    }
}

fn form_report(
    g: GroupId,
    sig: Signature,
    spec: &FormSpec,
    rep: &Representation,
    name: &MatrixGroupName,
) -> Report {
    let class = rep.rep_class();
    let field = match class {
        RepClass::RealFull | RepClass::RealPair => Field::Real,
        RepClass::Complex => Field::Complex,
        _ => Field::Quaternion,
    };
    let family = name.family;
    let expected_flavor = match family.field() {
        Field::Real => Flavor::Transpose,
        Field::Quaternion => Flavor::QuaternionicStar,
        Field::Complex if family == Family::U => Flavor::Hermitian,
        Field::Complex => Flavor::Transpose,
    };
    let per_copy = if class.is_pair() {
        rep.size() / 2
    } else {
        rep.size()
    };
    let m = rep.blade_image(spec.frame);
    let blocks = if class.is_pair() {
        let [a, _, _, d] = m.blocks();
        vec![a, d]
    } else {
        vec![m.clone()]
    };
    let indefinite = name.params.len() == 2;
    let checks = [
        ("field", family.field() == field),
        (
            "pair",
            class.is_pair() == (name.doubled || family.is_linear()),
        ),
        (
            "kind",
            (spec.kind == FormKind::BlockPairing) == family.is_linear(),
        ),
        ("flavor", spec.flavor == expected_flavor),
        ("size", per_copy as u128 == name.matrix_size()),
        (
            "shape",
            blocks.iter().all(|b| block_matches(family, indefinite, b)),
        ),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    let f = classify_form(&blocks[0]);
    Report::check(
        format!("form {} fits {name}", spec.frame_label),
        failed.is_empty(),
    )
    .with_signature(sig)
    .with_group(g.name())
    .with_details(json!({
        "failed": failed,
        "class": class.to_string(),
        "symmetric": f.is_symmetric,
        "skew": f.is_skew,
        "hermitian": f.is_hermitian,
        "skew_hermitian": f.is_skew_hermitian,
        "square_sign": f.square_sign,
        "trace_zero": f.trace_zero,
    }))
}

fn dimension_report(g: GroupId, sig: Signature, name: &MatrixGroupName) -> Report {
    let algebra = lie_algebra_dimension_sum(g, sig.n());
    Report::check(
        format!("dim {} = dim {name}", g.lie_algebra()),
        algebra == name.dimension(),
    )
    .with_signature(sig)
    .with_group(g.name())
    .with_details(json!({
        "algebra": algebra as u64,
        "closed_form": lie_algebra_dimension_closed(g, sig.n()).to_string(),
        "group": name.dimension() as u64,
    }))
}

/// Invariance on samples, form shape against the named family, and dimension.
pub fn verify_classification(
    g: GroupId,
    sig: Signature,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Vec<Report> {
    let fail = |e: ClassifyError| {
        vec![Report::check("classification", false)
            .with_signature(sig)
            .with_group(g.name())
            .with_details(json!({ "error": e.to_string() }))]
    };
    let name = match classify(g, sig) {
        Ok(x) => x,
        Err(e) => return fail(e),
    };
    let spec = match form_spec(g, sig) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let rep = match build_representation(spec.target_signature) {
        Ok(r) => r,
        Err(e) => return fail(e.into()),
    };
    vec![
        invariance_report(g, sig, &spec, &rep, samples, seed, tol),
        form_report(g, sig, &spec, &rep, &name),
        dimension_report(g, sig, &name),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_passed;

    #[test]
    fn documented_forms() {
        let s = form_spec(GroupId::G23, Signature::new(3, 0)).unwrap();
        assert_eq!(
            (s.frame, s.flavor, s.kind),
            (Blade::SCALAR, Flavor::Hermitian, FormKind::Invariant)
        );
        let s = form_spec(GroupId::G23, Signature::new(1, 2)).unwrap();
        assert_eq!((s.frame, s.flavor), (Blade::range(1, 1), Flavor::Hermitian));
        let s = form_spec(GroupId::G23, Signature::new(0, 3)).unwrap();
        assert_eq!(s.kind, FormKind::BlockPairing);
    }

    #[test]
    fn small_signatures_verify() {
        for sig in Signature::all_up_to(0, 4) {
            for g in GroupId::ALL {
                let r = verify_classification(g, sig, 4, 5, 1e-9);
                assert!(all_passed(&r), "{g} {sig}: {r:#?}");
            }
        }
    }
}
