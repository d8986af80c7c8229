//! Classical matrix groups isomorphic to the Clifford-algebra groups, looked
//! up from transcribed tables and checked by invariant forms.

mod forms;
pub mod tables;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::groups::{lie_algebra_dimension_sum, GroupError, GroupId};
use crate::multivector::{Signature, MAX_GENERATORS};
use crate::report::Report;
use crate::representation::RepresentationError;
use tables::{case_lists, spin_alias, summary_table, Template, EVEN_GROUP_GRID, SPIN_GRID};

pub use forms::{form_spec, verify_classification, Flavor, FormKind, FormSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `U(k)` with one size, `U(r,s)` with two.
    U,
    SpComplex,
    SpReal,
    SpCompact,
    SpIndef,
    OComplex,
    ORealIndef,
    OReal,
    OQuaternionic,
    GLReal,
    GLQuaternionic,
}

/// The division ring a family's matrices live over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Field {
    Real,
    Complex,
    Quaternion,
}

impl Family {
    pub fn field(self) -> Field {
        match self {
            Family::SpReal | Family::ORealIndef | Family::OReal | Family::GLReal => Field::Real,
            Family::U | Family::SpComplex | Family::OComplex => Field::Complex,
            Family::SpCompact
            | Family::SpIndef
            | Family::OQuaternionic
            | Family::GLQuaternionic => Field::Quaternion,
        }
    }

    pub fn is_linear(self) -> bool {
        matches!(self, Family::GLReal | Family::GLQuaternionic)
    }
}

/// A classical group such as `U(8)`, `Sp(1,C)` or `²O(4,4)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixGroupName {
    pub family: Family,
    pub params: Vec<u64>,
    /// Direct sum of two copies.
    pub doubled: bool,
}

impl MatrixGroupName {
    pub fn new(family: Family, params: &[u64], doubled: bool) -> Self {
        MatrixGroupName {
            family,
            params: params.to_vec(),
            doubled,
        }
    }

    fn total(&self) -> u128 {
        self.params.iter().map(|&x| x as u128).sum()
    }

    /// Size of the matrices acted on, per copy.
    pub fn matrix_size(&self) -> u128 {
        match self.family {
            Family::SpComplex | Family::SpReal => 2 * self.total(),
            _ => self.total(),
        }
    }

    /// Real dimension as a manifold.
    pub fn dimension(&self) -> u128 {
        let k = self.total();
        let d = match self.family {
            Family::U => k * k,
            Family::SpComplex => 2 * k * (2 * k + 1),
            Family::SpReal | Family::SpCompact | Family::SpIndef => k * (2 * k + 1),
            Family::OComplex => k * k.saturating_sub(1),
            Family::ORealIndef | Family::OReal => k * k.saturating_sub(1) / 2,
            Family::OQuaternionic => k * (2 * k).saturating_sub(1),
            Family::GLReal => k * k,
            Family::GLQuaternionic => 4 * k * k,
        };
        if self.doubled {
            2 * d
        } else {
            d
        }
    }
}

impl fmt::Display for MatrixGroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (head, suffix) = match self.family {
            Family::U => ("U", ""),
            Family::SpComplex => ("Sp", ",C"),
            Family::SpReal => ("Sp", ",R"),
            Family::SpCompact | Family::SpIndef => ("Sp", ""),
            Family::OComplex => ("O", ",C"),
            Family::ORealIndef | Family::OReal => ("O", ""),
            Family::OQuaternionic => ("O", ",H"),
            Family::GLReal => ("GL", ",R"),
            Family::GLQuaternionic => ("GL", ",H"),
        };
        let params: Vec<String> = self.params.iter().map(u64::to_string).collect();
        let prefix = if self.doubled { "²" } else { "" };
        write!(f, "{prefix}{head}({}{suffix})", params.join(","))
    }
}

/// The lookup result as emitted by the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub group: GroupId,
    pub p: usize,
    pub q: usize,
    pub name: String,
    pub params: Vec<u64>,
    pub doubled: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("{group} on {sig} is not a classical matrix group in this scheme")]
    Unsupported { group: GroupId, sig: Signature },
    #[error("{sig} exceeds the maximum of {max} generators")]
    TooLarge { sig: Signature, max: usize },
    #[error("no table cell covers {group} on {sig}")]
    NoEntry { group: GroupId, sig: Signature },
    #[error("no invariant form found for {group} on {sig}")]
    NoForm { group: GroupId, sig: Signature },
    #[error(transparent)]
    Representation(#[from] RepresentationError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn summary_template(g: GroupId, sig: Signature) -> Result<Template, ClassifyError> {
    let cells = summary_table(g);
    let mut hits = cells.iter().filter(|c| c.covers(sig));
    match (hits.next(), hits.next()) {
        (Some(c), None) => Ok(c.template(sig).clone()),
        _ => Err(ClassifyError::NoEntry { group: g, sig }),
    }
}

/// The classical group isomorphic to `g` on `sig`. Misprinted sizes in the
/// summary tables are read in their corrected form.
pub fn classify(g: GroupId, sig: Signature) -> Result<MatrixGroupName, ClassifyError> {
    if sig.n() > MAX_GENERATORS {
        return Err(ClassifyError::TooLarge {
            sig,
            max: MAX_GENERATORS,
        });
    }
    if sig.n() == 0 {
        return Ok(MatrixGroupName::new(Family::OReal, &[1], false));
    }
    if g == GroupId::SpinPlus {
        if sig.n() > 5 {
            return Err(ClassifyError::Unsupported { group: g, sig });
        }
        return classify(GroupId::G2, sig);
    }
    summary_template(g, sig)?
        .resolve(sig.n(), false)
        .ok_or(ClassifyError::NoEntry { group: g, sig })
}

pub fn classification(g: GroupId, sig: Signature) -> Result<Classification, ClassifyError> {
    let name = classify(g, sig)?;
    Ok(Classification {
        group: g,
        p: sig.p,
        q: sig.q,
        name: name.to_string(),
        params: name.params.clone(),
        doubled: name.doubled,
    })
}

/// Tally of misprints found while reconciling the tables.
#[derive(Default)]
struct Misprints(BTreeMap<String, usize>);

impl Misprints {
    fn note(&mut self, what: String) {
        *self.0.entry(what).or_default() += 1;
    }

    fn to_json(&self) -> serde_json::Value {
        json!(self.0)
    }
}

/// Every summary table covers each signature with exactly one cell, and
/// each case list agrees with it wherever both apply.
pub fn table_consistency(n_max: usize) -> Vec<Report> {
    let sigs = Signature::all_up_to(1, n_max);
    let mut out = Vec::new();
    for g in GroupId::FIVE {
        let mut bad = Vec::new();
        let mut misprints = Misprints::default();
        for &sig in &sigs {
            match summary_template(g, sig) {
                Ok(tpl) => match (tpl.resolve(sig.n(), true), tpl.resolve(sig.n(), false)) {
                    (Some(lit), Some(fixed)) => {
                        if lit != fixed {
                            misprints.note(format!("{lit} printed for {fixed}"));
                        }
                    }
                    _ => bad.push(sig.to_string()),
                },
                Err(_) => bad.push(sig.to_string()),
            }
        }
        out.push(
            Report::check("summary table covers every signature once", bad.is_empty())
                .with_group(g.name())
                .with_details(
                    json!({ "n_max": n_max, "uncovered": bad, "misprints": misprints.to_json() }),
                ),
        );
    }
    for list in case_lists() {
        let mut checked = 0usize;
        let mut bad = Vec::new();
        let mut misprints = Misprints::default();
        for &sig in sigs.iter().filter(|s| list.cols.contains(&s.class_mod8())) {
            checked += 1;
            let verbatim: Vec<_> = list
                .cases
                .iter()
                .filter(|c| c.matches(sig, false))
                .collect();
            let corrected: Vec<_> = list.cases.iter().filter(|c| c.matches(sig, true)).collect();
            let [case] = corrected.as_slice() else {
                bad.push(json!({ "sig": sig.to_string(), "matching_cases": corrected.len() }));
                continue;
            };
            if verbatim.len() != 1 {
                misprints.note(format!(
                    "boundary of {} read as {}",
                    case.template
                        .resolve(sig.n(), false)
                        .map_or_else(String::new, |x| x.to_string()),
                    case.corrected_at.map_or("", |b| b.label())
                ));
            }
            let from_list = case.template.resolve(sig.n(), false);
            let from_table = classify(list.group, sig).ok();
            if from_list.is_none() || from_list != from_table {
                bad.push(json!({
                    "sig": sig.to_string(),
                    "case_list": from_list.map(|x| x.to_string()),
                    "summary": from_table.map(|x| x.to_string()),
                }));
            }
        }
        out.push(
            Report::check(
                format!("{} agree with the summary table", list.label),
                bad.is_empty() && checked > 0,
            )
            .with_group(list.group.name())
            .with_details(json!({
                "classes": list.cols,
                "checked": checked,
                "disagreements": bad,
                "misprints": misprints.to_json(),
            })),
        );
    }
    out.push(even_group_grid_report());
    out.push(spin_grid_report());
    out
}

/// All 64 entries of the even-group grid.
pub fn even_group_grid_report() -> Report {
    let mut bad = Vec::new();
    for (p, row) in EVEN_GROUP_GRID.iter().enumerate() {
        for (q, expected) in row.iter().enumerate() {
            let got = classify(GroupId::G2, Signature::new(p, q)).map(|x| x.to_string());
            if got.as_deref() != Ok(*expected) {
                bad.push(json!({ "p": p, "q": q, "expected": expected, "got": got.ok() }));
            }
        }
    }
    Report::check("even group grid reproduced", bad.is_empty())
        .with_group(GroupId::G2.name())
        .with_details(json!({ "entries": 64, "mismatches": bad }))
}

/// The spin grid where it coincides with the even group (`n ≤ 5`); the
/// `n = 6` entries are special or unimodular refinements and are listed only.
pub fn spin_grid_report() -> Report {
    let mut bad = Vec::new();
    let mut compared = 0usize;
    let mut refinements = Vec::new();
    for (p, row) in SPIN_GRID.iter().enumerate() {
        for (q, entry) in row.iter().enumerate() {
            let Some(expected) = entry else { continue };
            if p + q > 5 {
                refinements.push(format!("({p},{q}): {expected}"));
                continue;
            }
            compared += 1;
            let got = classify(GroupId::SpinPlus, Signature::new(p, q)).map(|x| x.to_string());
            if got.as_deref() != Ok(spin_alias(expected).as_str()) {
                bad.push(json!({ "p": p, "q": q, "expected": expected, "got": got.ok() }));
            }
        }
    }
    Report::check(
        "spin grid matches the even group for n <= 5",
        bad.is_empty() && compared == 21,
    )
    .with_group(GroupId::SpinPlus.name())
    .with_details(json!({ "compared": compared, "mismatches": bad, "not_compared": refinements }))
}

/// Lie algebra dimensions against the dimension of the named group.
pub fn dimension_consistency(n_max: usize) -> Vec<Report> {
    GroupId::ALL
        .into_iter()
        .map(|g| {
            let mut bad = Vec::new();
            let mut checked = 0usize;
            for sig in Signature::all_up_to(0, n_max) {
                let Ok(name) = classify(g, sig) else { continue };
                checked += 1;
                let algebra = lie_algebra_dimension_sum(g, sig.n());
                if algebra != name.dimension() {
                    bad.push(json!({ "sig": sig.to_string(), "name": name.to_string(), "algebra": algebra as u64 }));
                }
            }
            Report::check("Lie algebra dimension equals the matrix group dimension", bad.is_empty())
                .with_group(g.name())
                .with_details(json!({ "n_max": n_max, "checked": checked, "mismatches": bad }))
        })
        .collect()
}

/// `2^a ± 2^b` as an exact integer.
fn pow_pm(a: usize, b: usize, plus: bool) -> u128 {
    if plus {
        (1u128 << a) + (1u128 << b)
    } else {
        (1u128 << a) - (1u128 << b)
    }
}

/// The four closed-form dimensions quoted for the complex and quaternionic
/// families, evaluated for every `n` in range where the sizes are integral.
pub fn stated_dimension_identities(n_max: usize) -> Vec<Report> {
    type Claim = (&'static str, usize, fn(usize) -> (MatrixGroupName, u128));
    let claims: [Claim; 4] = [
        ("dim O(2^((n-1)/2),C) = 2^(n-1) - 2^((n-1)/2)", 1, |n| {
            (
                MatrixGroupName::new(Family::OComplex, &[1 << ((n - 1) / 2)], false),
                pow_pm(n - 1, (n - 1) / 2, false),
            )
        }),
        ("dim Sp(2^((n-3)/2),C) = 2^(n-1) + 2^((n-1)/2)", 3, |n| {
            (
                MatrixGroupName::new(Family::SpComplex, &[1 << ((n - 3) / 2)], false),
                pow_pm(n - 1, (n - 1) / 2, true),
            )
        }),
        (
            "dim Sp(2^((n-4)/2),2^((n-4)/2)) = 2^(n-1) + 2^((n-2)/2)",
            4,
            |n| {
                let k = 1 << ((n - 4) / 2);
                (
                    MatrixGroupName::new(Family::SpIndef, &[k, k], false),
                    pow_pm(n - 1, (n - 2) / 2, true),
                )
            },
        ),
        ("dim O(2^((n-2)/2),H) = 2^(n-1) - 2^((n-2)/2)", 2, |n| {
            (
                MatrixGroupName::new(Family::OQuaternionic, &[1 << ((n - 2) / 2)], false),
                pow_pm(n - 1, (n - 2) / 2, false),
            )
        }),
    ];
    claims
        .into_iter()
        .map(|(claim, start, f)| {
            let mut bad = Vec::new();
            let ns: Vec<usize> = (start..=n_max).step_by(2).collect();
            for &n in &ns {
                let (name, stated) = f(n);
                if name.dimension() != stated {
                    bad.push(json!({ "n": n, "name": name.to_string(), "stated": stated as u64 }));
                }
            }
            Report::check(claim, bad.is_empty() && !ns.is_empty())
                .with_details(json!({ "n": ns, "mismatches": bad }))
        })
        .collect()
}
