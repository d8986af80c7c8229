//! Group elements built exactly from Pythagorean factors, or numerically
//! through the exponential of a random Lie algebra element.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::groups::{is_member, signed_blade, vector_leak, ComplexMv, GroupError, GroupId};
use crate::multivector::{Blade, Multivector, Signature};
use crate::report::{Report, Status};
use crate::scalars::{Complex, ComplexFloat, ComplexRational, Rational, RealScalar, Scalar};

pub const EXP_TERM_CUTOFF: f64 = 1e-15;
pub const EXP_MAX_TERMS: usize = 64;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    ExactVectorProduct,
    LieExponential,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupElementSample<T: RealScalar + Serialize> {
    pub value: ComplexMv<T>,
    pub provenance: Provenance,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactSamples {
    pub samples: Vec<GroupElementSample<Rational>>,
    /// The Lie algebra is trivial, so only signed basis elements were produced.
    pub degenerate: bool,
}

/// `X` for an algebra basis element, and the sign `s` with `X² = s e`.
fn basis_element(sig: Signature, b: Blade, imaginary: bool) -> (ComplexMv<Rational>, i64) {
    let x: ComplexMv<Rational> = Multivector::blade(sig, b);
    let s = b.square_sign(sig);
    if imaginary {
        (x.times_i(), -s)
    } else {
        (x, s)
    }
}

/// `(a e + b X)/c` with `a² - s b² = c²`, which satisfies `U^♦ U = e`
/// whenever `X^♦ = -X`.
pub fn pythagorean_factor(x: &ComplexMv<Rational>, square_sign: i64) -> ComplexMv<Rational> {
    let (a, b, c) = if square_sign < 0 {
        (3, 4, 5)
    } else {
        (5, 3, 4)
    };
    let sig = x.signature();
    let one = Multivector::scalar(sig, ComplexRational::from_ratio(a, c));
    &one + &x.scale(&ComplexRational::from_ratio(b, c))
}

/// Signed basis elements that belong to the group.
pub fn member_signed_blades(g: GroupId, sig: Signature) -> Vec<ComplexMv<Rational>> {
    sig.blades()
        .flat_map(|b| [signed_blade(sig, b, false), signed_blade(sig, b, true)])
        .filter(|u| is_member(g, u, 0.0))
        .collect()
}

/// Exact members: an optional signed basis element times one to three
/// Pythagorean factors along random algebra basis directions.
pub fn sample_exact(
    g: GroupId,
    sig: Signature,
    count: usize,
    seed: u64,
) -> Result<ExactSamples, GroupError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = g.lie_algebra().basis(sig);
    let blades = member_signed_blades(g, sig);
    let mut samples = Vec::with_capacity(count);
    for _ in 0..count {
        let mut u = if rng.gen_bool(0.3) {
            blades[rng.gen_range(0..blades.len())].clone()
        } else {
            Multivector::one(sig)
        };
        if !basis.is_empty() {
            for _ in 0..rng.gen_range(1..=3) {
                let (b, imaginary) = basis[rng.gen_range(0..basis.len())];
                let (x, s) = basis_element(sig, b, imaginary);
                u = &u * &pythagorean_factor(&x, s);
            }
        } else if !blades.is_empty() {
            u = blades[rng.gen_range(0..blades.len())].clone();
        }
        if !is_member(g, &u, 0.0) {
            return Err(GroupError::SampleNotMember { group: g, sig });
        }
        samples.push(GroupElementSample {
            value: u,
            provenance: Provenance::ExactVectorProduct,
            seed,
        });
    }
    Ok(ExactSamples {
        samples,
        degenerate: basis.is_empty(),
    })
}

/// A random algebra element with coefficients uniform in `[-0.5, 0.5]`.
pub fn random_float_algebra_element(
    g: GroupId,
    sig: Signature,
    rng: &mut ChaCha8Rng,
) -> ComplexMv<f64> {
    let mut x = Multivector::<ComplexFloat>::zero(sig);
    for (b, imaginary) in g.lie_algebra().basis(sig) {
        let c: f64 = rng.gen_range(-0.5..=0.5);
        let term = if imaginary {
            Complex::new(0.0, c)
        } else {
            Complex::real(c)
        };
        x = &x + &Multivector::term(sig, b, term);
    }
    x
}

fn l1_norm(x: &ComplexMv<f64>) -> f64 {
    x.coeffs().iter().map(|c| c.re.abs() + c.im.abs()).sum()
}

/// `exp(X)` by scaling and squaring around a truncated Taylor series.
pub fn exponential(x: &ComplexMv<f64>) -> Result<ComplexMv<f64>, GroupError> {
    let sig = x.signature();
    let norm = l1_norm(x);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let y = x.scale(&Complex::real(0.5f64.powi(squarings as i32)));
    let mut sum = Multivector::<ComplexFloat>::one(sig);
    let mut term = sum.clone();
    let mut converged = false;
    for k in 1..=EXP_MAX_TERMS {
        term = (&term * &y).scale(&Complex::real(1.0 / k as f64));
        sum = &sum + &term;
        if term.max_norm() < EXP_TERM_CUTOFF {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(GroupError::NoConvergence(EXP_MAX_TERMS));
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    Ok(sum)
}

pub fn sample_exponential(
    g: GroupId,
    sig: Signature,
    count: usize,
    seed: u64,
    tol: f64,
) -> Result<Vec<GroupElementSample<f64>>, GroupError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let u = exponential(&random_float_algebra_element(g, sig, &mut rng))?;
            if !is_member(g, &u, tol) {
                return Err(GroupError::SampleNotMember { group: g, sig });
            }
            Ok(GroupElementSample {
                value: u,
                provenance: Provenance::LieExponential,
                seed,
            })
        })
        .collect()
}

/// `(a e + b e^{1…6})/c`: in the even group, and for `n ≥ 6` it moves some
/// vector out of grade 1.
pub fn grade_leak_witness(sig: Signature) -> Option<ComplexMv<Rational>> {
    if sig.n() < 6 {
        return None;
    }
    let b = Blade::range(1, 6);
    let (x, s) = basis_element(sig, b, false);
    Some(pythagorean_factor(&x, s))
}

/// For `n ≤ 5`, every sampled even-group element preserves the vectors; for
/// larger `n`, an exact element leaking out of grade 1 is reported, together
/// with a seeded numeric search along `exp(θ e^{1…6})`.
pub fn spin_g2_comparison(sig: Signature, samples: usize, seed: u64) -> Report {
    let claim = "Spin+ coincides with G2";
    if sig.n() <= 5 {
        let mut checked = 0usize;
        let mut bad = 0usize;
        if let Ok(exact) = sample_exact(GroupId::G2, sig, samples, seed) {
            for s in &exact.samples {
                checked += 1;
                if !is_member(GroupId::SpinPlus, &s.value, 0.0) {
                    bad += 1;
                }
            }
        }
        let float = sample_exponential(GroupId::G2, sig, samples, seed, DEFAULT_TOL);
        match float {
            Ok(fs) => {
                for s in &fs {
                    checked += 1;
                    if !is_member(GroupId::SpinPlus, &s.value, DEFAULT_TOL) {
                        bad += 1;
                    }
                }
            }
            Err(_) => bad += 1,
        }
        return Report::check(claim, bad == 0 && checked > 0)
            .with_signature(sig)
            .with_details(json!({ "checked": checked, "failures": bad }));
    }
    let claim = "Spin+ is a proper subgroup of G2";
    let exact = grade_leak_witness(sig).expect("n >= 6");
    let exact_ok = is_member(GroupId::G2, &exact, 0.0) && vector_leak(&exact) > 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top: ComplexMv<f64> = Multivector::blade(sig, Blade::range(1, 6));
    let numeric = (0..samples.max(1)).find_map(|_| {
        let theta: f64 = rng.gen_range(0.05..3.0);
        let u = exponential(&top.scale(&Complex::real(theta))).ok()?;
        let leak = vector_leak(&u);
        (is_member(GroupId::G2, &u, DEFAULT_TOL) && leak > 1e-6).then_some((theta, leak))
    });
    let status = if exact_ok {
        Status::Witness
    } else {
        Status::Fail
    };
    Report::new(claim, status)
        .with_signature(sig)
        .with_details(json!({
            "witness": exact.to_string(),
            "witness_leak": vector_leak(&exact),
            "numeric_theta": numeric.map(|t| t.0),
            "numeric_leak": numeric.map(|t| t.1),
        }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_rotor() {
        let s = Signature::new(2, 0);
        let x: ComplexMv<Rational> = Multivector::blade(s, Blade(3));
        let u = pythagorean_factor(&x, -1);
        assert_eq!(u.coeff(Blade::SCALAR), &ComplexRational::from_ratio(3, 5));
        assert!(is_member(GroupId::G2, &u, 0.0));
    }

    #[test]
    fn exponential_of_zero_and_plane() {
        let s = Signature::new(2, 0);
        let z = Multivector::<ComplexFloat>::zero(s);
        assert!(exponential(&z)
            .unwrap()
            .approx_eq(&Multivector::one(s), 1e-15));
        let theta = 0.3f64;
        let x: ComplexMv<f64> = Multivector::term(s, Blade(3), Complex::real(theta));
        let u = exponential(&x).unwrap();
        assert!((u.coeff(Blade::SCALAR).re - theta.cos()).abs() < 1e-12);
        assert!((u.coeff(Blade(3)).re - theta.sin()).abs() < 1e-12);
        let check = &u.reversion() * &u;
        assert!(check.approx_eq(&Multivector::one(s), 1e-12));
    }

    #[test]
    fn exact_samples_are_members() {
        for s in Signature::all_up_to(1, 4) {
            for g in GroupId::ALL {
                let out = sample_exact(g, s, 5, 7).unwrap();
                assert_eq!(out.samples.len(), 5);
            }
        }
        assert!(
            sample_exact(GroupId::G2, Signature::new(1, 0), 3, 1)
                .unwrap()
                .degenerate
        );
    }
}
