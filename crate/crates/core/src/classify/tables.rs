//! Transcribed isomorphism tables. Sizes are stored as templates in `n` so
//! that each cell covers a whole residue class.

use super::{Family, MatrixGroupName};
use crate::groups::GroupId;
use crate::multivector::Signature;

/// A matrix size written in terms of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Size {
    /// `2^{(n - offset)/2}`.
    Pow(i64),
    /// `(n - offset)/2`, a misprint of `Pow(offset)` in the summary tables.
    Half(i64),
}

impl Size {
    fn resolve(self, n: usize, literal: bool) -> Option<u64> {
        let (Size::Pow(d) | Size::Half(d)) = self;
        let e = n as i64 - d;
        if e < 0 || e % 2 != 0 {
            return None;
        }
        match self {
            Size::Half(_) if literal => Some((e / 2) as u64),
            _ => 1u64.checked_shl((e / 2) as u32),
        }
    }

    fn is_misprint(self) -> bool {
        matches!(self, Size::Half(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    pub family: Family,
    pub sizes: Vec<Size>,
    pub doubled: bool,
}

impl Template {
    /// `None` when a size exponent is negative or fractional.
    pub fn resolve(&self, n: usize, literal: bool) -> Option<MatrixGroupName> {
        let params = self
            .sizes
            .iter()
            .map(|s| s.resolve(n, literal))
            .collect::<Option<Vec<_>>>()?;
        Some(MatrixGroupName {
            family: self.family,
            params,
            doubled: self.doubled,
        })
    }

    pub fn has_misprint(&self) -> bool {
        self.sizes.iter().any(|s| s.is_misprint())
    }
}

/// Boundary predicates used by the tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    PZero,
    QZero,
    /// `(n,0)` or `(0,n)`.
    Definite,
}

impl Boundary {
    pub fn holds(self, sig: Signature) -> bool {
        match self {
            Boundary::PZero => sig.p == 0,
            Boundary::QZero => sig.q == 0,
            Boundary::Definite => sig.p == 0 || sig.q == 0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Boundary::PZero => "p=0",
            Boundary::QZero => "q=0",
            Boundary::Definite => "(n,0),(0,n)",
        }
    }
}

/// One cell of a summary table: rows are `n mod 8`, columns `p - q mod 8`.
#[derive(Debug, Clone)]
pub struct Cell {
    pub rows: &'static [usize],
    pub cols: &'static [usize],
    pub general: Template,
    pub boundary: Option<(Boundary, Template)>,
}

impl Cell {
    pub fn covers(&self, sig: Signature) -> bool {
        self.rows.contains(&(sig.n() % 8)) && self.cols.contains(&sig.class_mod8())
    }

    pub fn template(&self, sig: Signature) -> &Template {
        match &self.boundary {
            Some((b, t)) if b.holds(sig) => t,
            _ => &self.general,
        }
    }
}

fn t(family: Family, sizes: &[Size], doubled: bool) -> Template {
    Template {
        family,
        sizes: sizes.to_vec(),
        doubled,
    }
}

fn one(family: Family, d: i64) -> Template {
    t(family, &[Size::Pow(d)], false)
}

fn two(family: Family, d: i64) -> Template {
    t(family, &[Size::Pow(d), Size::Pow(d)], false)
}

fn dbl(mut x: Template) -> Template {
    x.doubled = true;
    x
}

fn cell(rows: &'static [usize], cols: &'static [usize], general: Template) -> Cell {
    Cell {
        rows,
        cols,
        general,
        boundary: None,
    }
}

fn split(
    rows: &'static [usize],
    cols: &'static [usize],
    general: Template,
    b: Boundary,
    special: Template,
) -> Cell {
    Cell {
        rows,
        cols,
        general,
        boundary: Some((b, special)),
    }
}

/// The ten-cell layout shared by the four groups with the full algebra's
/// parity pattern; only the residue classes and the boundary predicate move.
struct Layout {
    even_rows: [&'static [usize]; 2],
    even_cols: [&'static [usize]; 2],
    odd_rows: [&'static [usize]; 3],
    odd_cols: [&'static [usize]; 3],
    boundary: Boundary,
}

fn layout_cells(l: &Layout) -> Vec<Cell> {
    use Family::*;
    let b = l.boundary;
    vec![
        split(
            l.even_rows[0],
            l.even_cols[0],
            two(ORealIndef, 2),
            b,
            one(OReal, 0),
        ),
        cell(l.even_rows[0], l.even_cols[1], one(OQuaternionic, 2)),
        cell(l.even_rows[1], l.even_cols[0], one(SpReal, 2)),
        split(
            l.even_rows[1],
            l.even_cols[1],
            two(SpIndef, 4),
            b,
            one(SpCompact, 2),
        ),
        split(
            l.odd_rows[0],
            l.odd_cols[0],
            dbl(two(ORealIndef, 3)),
            b,
            dbl(one(OReal, 1)),
        ),
        cell(l.odd_rows[0], l.odd_cols[1], one(OComplex, 1)),
        cell(l.odd_rows[0], l.odd_cols[2], dbl(one(OQuaternionic, 3))),
        cell(l.odd_rows[1], l.odd_cols[0], dbl(one(SpReal, 3))),
        cell(l.odd_rows[1], l.odd_cols[1], one(SpComplex, 3)),
        split(
            l.odd_rows[1],
            l.odd_cols[2],
            dbl(two(SpIndef, 5)),
            b,
            dbl(one(SpCompact, 3)),
        ),
        cell(l.odd_rows[2], l.odd_cols[0], one(GLReal, 1)),
        split(
            l.odd_rows[2],
            l.odd_cols[1],
            two(U, 3),
            b,
            t(U, &[Size::Half(1)], false),
        ),
        cell(l.odd_rows[2], l.odd_cols[2], one(GLQuaternionic, 3)),
    ]
}

/// The summary table of a group, as printed (misprints included).
pub fn summary_table(g: GroupId) -> Vec<Cell> {
    use Family::*;
    let layout = match g {
        GroupId::G12 => Layout {
            even_rows: [&[0, 6], &[2, 4]],
            even_cols: [&[0, 2], &[4, 6]],
            odd_rows: [&[7], &[3], &[1, 5]],
            odd_cols: [&[1], &[3, 7], &[5]],
            boundary: Boundary::PZero,
        },
        GroupId::G23 => Layout {
            even_rows: [&[0, 2], &[4, 6]],
            even_cols: [&[0, 2], &[4, 6]],
            odd_rows: [&[1], &[5], &[3, 7]],
            odd_cols: [&[1], &[3, 7], &[5]],
            boundary: Boundary::QZero,
        },
        GroupId::G2i1 => Layout {
            even_rows: [&[0, 6], &[2, 4]],
            even_cols: [&[0, 6], &[2, 4]],
            odd_rows: [&[7], &[3], &[1, 5]],
            odd_cols: [&[7], &[1, 5], &[3]],
            boundary: Boundary::QZero,
        },
        GroupId::G2i3 => Layout {
            even_rows: [&[0, 2], &[4, 6]],
            even_cols: [&[0, 6], &[2, 4]],
            odd_rows: [&[1], &[5], &[3, 7]],
            odd_cols: [&[7], &[1, 5], &[3]],
            boundary: Boundary::PZero,
        },
        GroupId::G2 => {
            let d = Boundary::Definite;
            return vec![
                split(&[1, 7], &[1, 7], two(ORealIndef, 3), d, one(OReal, 1)),
                cell(&[1, 7], &[3, 5], one(OQuaternionic, 3)),
                cell(&[3, 5], &[1, 7], one(SpReal, 3)),
                split(&[3, 5], &[3, 5], two(SpIndef, 5), d, one(SpCompact, 3)),
                split(&[0], &[0], dbl(two(ORealIndef, 4)), d, dbl(one(OReal, 2))),
                cell(&[0], &[2, 6], one(OComplex, 2)),
                cell(&[0], &[4], dbl(one(OQuaternionic, 4))),
                cell(&[4], &[0], dbl(one(SpReal, 4))),
                cell(&[4], &[2, 6], one(SpComplex, 4)),
                split(&[4], &[4], dbl(two(SpIndef, 6)), d, dbl(one(SpCompact, 4))),
                cell(&[2, 6], &[0], one(GLReal, 2)),
                split(
                    &[2, 6],
                    &[2, 6],
                    two(U, 4),
                    d,
                    t(U, &[Size::Half(2)], false),
                ),
                cell(&[2, 6], &[4], one(GLQuaternionic, 4)),
            ];
        }
        GroupId::SpinPlus => return Vec::new(),
    };
    layout_cells(&layout)
}

/// Condition of one case in a theorem-style case list.
#[derive(Debug, Clone)]
pub struct Case {
    /// Allowed `n mod 8`; `None` for any.
    pub n_classes: Option<&'static [usize]>,
    /// Required `n mod 2`.
    pub parity: Option<usize>,
    pub at: Option<Boundary>,
    pub away: Option<Boundary>,
    /// Misprinted boundary and the reading that makes the list complete.
    pub corrected_at: Option<Boundary>,
    pub template: Template,
}

impl Case {
    pub fn matches(&self, sig: Signature, corrected: bool) -> bool {
        let n = sig.n();
        let at = if corrected {
            self.corrected_at.or(self.at)
        } else {
            self.at
        };
        self.n_classes.is_none_or(|c| c.contains(&(n % 8)))
            && self.parity.is_none_or(|r| n % 2 == r)
            && at.is_none_or(|b| b.holds(sig))
            && self.away.is_none_or(|b| !b.holds(sig))
    }
}

/// A case list together with the `p - q mod 8` classes it covers.
#[derive(Debug, Clone)]
pub struct CaseList {
    pub group: GroupId,
    pub label: &'static str,
    pub cols: &'static [usize],
    pub cases: Vec<Case>,
}

fn case(n_classes: Option<&'static [usize]>, parity: Option<usize>, template: Template) -> Case {
    Case {
        n_classes,
        parity,
        at: None,
        away: None,
        corrected_at: None,
        template,
    }
}

fn at(mut c: Case, b: Boundary) -> Case {
    c.at = Some(b);
    c
}

fn away(mut c: Case, b: Boundary) -> Case {
    c.away = Some(b);
    c
}

/// Unitary, complex symplectic and complex orthogonal cases.
fn complex_list(
    group: GroupId,
    cols: &'static [usize],
    b: Boundary,
    classes: [&'static [usize]; 3],
) -> CaseList {
    use Family::*;
    CaseList {
        group,
        label: "unitary and complex cases",
        cols,
        cases: vec![
            at(case(None, None, one(U, 1)), b),
            away(case(Some(classes[0]), None, two(U, 3)), b),
            case(Some(classes[1]), None, one(SpComplex, 3)),
            case(Some(classes[2]), None, one(OComplex, 1)),
        ],
    }
}

/// Compact, indefinite and quaternionic cases.
fn quaternionic_list(
    group: GroupId,
    cols: &'static [usize],
    b: Boundary,
    classes: [&'static [usize]; 5],
) -> CaseList {
    use Family::*;
    CaseList {
        group,
        label: "quaternionic cases",
        cols,
        cases: vec![
            at(case(None, Some(0), one(SpCompact, 2)), b),
            away(case(Some(classes[0]), None, two(SpIndef, 4)), b),
            case(Some(classes[1]), None, one(OQuaternionic, 2)),
            at(case(None, Some(1), dbl(one(SpCompact, 3))), b),
            away(case(Some(classes[2]), None, dbl(two(SpIndef, 5))), b),
            case(Some(classes[3]), None, dbl(one(OQuaternionic, 3))),
            case(Some(classes[4]), None, one(GLQuaternionic, 3)),
        ],
    }
}

/// Both case lists, for the classes of `p - q` they cover.
pub fn case_lists() -> Vec<CaseList> {
    use Boundary::*;
    use Family::*;
    let mut even_unitary = CaseList {
        group: GroupId::G2,
        label: "unitary and complex cases",
        cols: &[2, 6],
        cases: vec![
            at(case(None, None, one(U, 2)), PZero),
            away(case(Some(&[2, 6]), None, two(U, 4)), Definite),
            case(Some(&[4]), None, one(SpComplex, 4)),
            case(Some(&[0]), None, one(OComplex, 2)),
        ],
    };
    // printed as "(0,n), (0,n)"
    even_unitary.cases[0].corrected_at = Some(Definite);
    let g2_quaternionic = CaseList {
        group: GroupId::G2,
        label: "quaternionic cases",
        cols: &[3, 4, 5],
        cases: vec![
            at(case(None, Some(1), one(SpCompact, 3)), Definite),
            away(case(Some(&[3, 5]), None, two(SpIndef, 5)), Definite),
            case(Some(&[1, 7]), None, one(OQuaternionic, 3)),
            at(case(None, Some(0), dbl(one(SpCompact, 4))), Definite),
            away(case(Some(&[4]), None, dbl(two(SpIndef, 6))), Definite),
            case(Some(&[0]), None, dbl(one(OQuaternionic, 4))),
            case(Some(&[2, 6]), None, one(GLQuaternionic, 4)),
        ],
    };
    vec![
        complex_list(GroupId::G23, &[3, 7], QZero, [&[3, 7], &[5], &[1]]),
        complex_list(GroupId::G12, &[3, 7], PZero, [&[1, 5], &[3], &[7]]),
        complex_list(GroupId::G2i1, &[1, 5], QZero, [&[1, 5], &[3], &[7]]),
        complex_list(GroupId::G2i3, &[1, 5], PZero, [&[3, 7], &[5], &[1]]),
        even_unitary,
        quaternionic_list(
            GroupId::G23,
            &[4, 5, 6],
            QZero,
            [&[4, 6], &[0, 2], &[5], &[1], &[3, 7]],
        ),
        quaternionic_list(
            GroupId::G12,
            &[4, 5, 6],
            PZero,
            [&[2, 4], &[0, 6], &[3], &[7], &[1, 5]],
        ),
        quaternionic_list(
            GroupId::G2i1,
            &[2, 3, 4],
            QZero,
            [&[2, 4], &[0, 6], &[3], &[7], &[1, 5]],
        ),
        quaternionic_list(
            GroupId::G2i3,
            &[2, 3, 4],
            PZero,
            [&[4, 6], &[0, 2], &[5], &[1], &[3, 7]],
        ),
        g2_quaternionic,
    ]
}

/// The even group for `0 ≤ p, q ≤ 7`, row `p`, column `q`.
pub const EVEN_GROUP_GRID: [[&str; 8]; 8] = [
    [
        "O(1)", "O(1)", "U(1)", "Sp(1)", "²Sp(1)", "Sp(2)", "U(4)", "O(8)",
    ],
    [
        "O(1)", "GL(1,R)", "Sp(1,R)", "Sp(1,C)", "Sp(1,1)", "GL(2,H)", "O(4,H)", "O(8,C)",
    ],
    [
        "U(1)",
        "Sp(1,R)",
        "²Sp(1,R)",
        "Sp(2,R)",
        "U(2,2)",
        "O(4,H)",
        "²O(4,H)",
        "O(8,H)",
    ],
    [
        "Sp(1)", "Sp(1,C)", "Sp(2,R)", "GL(4,R)", "O(4,4)", "O(8,C)", "O(8,H)", "GL(8,H)",
    ],
    [
        "²Sp(1)", "Sp(1,1)", "U(2,2)", "O(4,4)", "²O(4,4)", "O(8,8)", "U(8,8)", "Sp(8,8)",
    ],
    [
        "Sp(2)", "GL(2,H)", "O(4,H)", "O(8,C)", "O(8,8)", "GL(16,R)", "Sp(16,R)", "Sp(16,C)",
    ],
    [
        "U(4)",
        "O(4,H)",
        "²O(4,H)",
        "O(8,H)",
        "U(8,8)",
        "Sp(16,R)",
        "²Sp(16,R)",
        "Sp(32,R)",
    ],
    [
        "O(8)", "O(8,C)", "O(8,H)", "GL(8,H)", "Sp(8,8)", "Sp(16,C)", "Sp(32,R)", "GL(64,R)",
    ],
];

/// The well-known spin groups for `p + q ≤ 6`; `None` outside the triangle.
pub const SPIN_GRID: [[Option<&str>; 7]; 7] = [
    [
        Some("O(1)"),
        Some("O(1)"),
        Some("U(1)"),
        Some("SU(2)"),
        Some("²SU(2)"),
        Some("Sp(2)"),
        Some("SU(4)"),
    ],
    [
        Some("O(1)"),
        Some("GL(1,R)"),
        Some("Sp(1,R)"),
        Some("Sp(1,C)"),
        Some("Sp(1,1)"),
        Some("SL(2,H)"),
        None,
    ],
    [
        Some("U(1)"),
        Some("Sp(1,R)"),
        Some("²Sp(1,R)"),
        Some("Sp(2,R)"),
        Some("SU(2,2)"),
        None,
        None,
    ],
    [
        Some("SU(2)"),
        Some("Sp(1,C)"),
        Some("Sp(2,R)"),
        Some("SL(4,R)"),
        None,
        None,
        None,
    ],
    [
        Some("²SU(2)"),
        Some("Sp(1,1)"),
        Some("SU(2,2)"),
        None,
        None,
        None,
        None,
    ],
    [Some("Sp(2)"), Some("SL(2,H)"), None, None, None, None, None],
    [Some("SU(4)"), None, None, None, None, None, None],
];

/// Rewrites the names that differ only by a low-dimensional coincidence.
pub fn spin_alias(name: &str) -> String {
    name.replace("SU(2)", "Sp(1)")
}
