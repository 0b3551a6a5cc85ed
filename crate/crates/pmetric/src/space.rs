//! Finite partial metric spaces: construction, axiom checking, open balls,
//! and the two denseness predicates.
//!
//! A partial metric generalises a metric by allowing nonzero self-distance.
//! The four axioms checked here are:
//!
//! * P1: `p(x,x) = p(x,y) = p(y,y)` implies `x = y`
//! * P2: `p(x,x) <= p(x,y)`
//! * P3: `p(x,y) = p(y,x)`
//! * P4: `p(x,z) + p(y,y) <= p(x,y) + p(y,z)`

use std::fmt;

use num_traits::Signed;
use thiserror::Error;

use crate::rational::{fmt_rat, pow2_neg, Rat};

/// Shape-level problems with a candidate space, distinct from axiom
/// violations: a malformed matrix is not a pmetric candidate at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("space must have at least one point")]
    Empty,
    #[error("row {row} has {got} entries, expected {expected}")]
    NotSquare {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("negative entry at ({i},{j})")]
    NegativeEntry { i: usize, j: usize },
    #[error("label count {got} does not match point count {expected}")]
    LabelCount { got: usize, expected: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("point index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("radius must be positive, got {0}")]
    InvalidRadius(String),
}

/// A labelled `n x n` matrix of exact rationals, claiming to be a pmetric.
///
/// Construction checks shape only (square, nonnegative, distinct labels);
/// whether the axioms hold is the job of [`FinitePMetricSpace::check_axioms`].
/// Labels are carried for reporting; all semantics are index-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePMetricSpace {
    labels: Vec<String>,
    matrix: Vec<Vec<Rat>>,
}

impl FinitePMetricSpace {
    pub fn new(labels: Vec<String>, matrix: Vec<Vec<Rat>>) -> Result<Self, SpaceError> {
        let n = matrix.len();
        if n == 0 {
            return Err(SpaceError::Empty);
        }
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(SpaceError::NotSquare {
                    row,
                    got: r.len(),
                    expected: n,
                });
            }
        }
        for (i, r) in matrix.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                if v.is_negative() {
                    return Err(SpaceError::NegativeEntry { i, j });
                }
            }
        }
        if labels.len() != n {
            return Err(SpaceError::LabelCount {
                got: labels.len(),
                expected: n,
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(SpaceError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { labels, matrix })
    }

    /// Convenience constructor from integer entries and default labels.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self, SpaceError> {
        let labels = default_labels(rows.len());
        let matrix = rows
            .iter()
            .map(|r| r.iter().map(|&v| crate::rational::rat_int(v)).collect())
            .collect();
        Self::new(labels, matrix)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn p(&self, i: usize, j: usize) -> &Rat {
        &self.matrix[i][j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn matrix(&self) -> &[Vec<Rat>] {
        &self.matrix
    }

    /// Checks P1-P4 exhaustively and reports every violated instance.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.len();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                // P3 first: symmetry
                if self.p(i, j) != self.p(j, i) {
                    violations.push(Violation {
                        axiom: Axiom::P3,
                        indices: vec![i, j],
                        lhs: self.p(i, j).clone(),
                        rhs: self.p(j, i).clone(),
                    });
                }
                // P2: self-distance minimality
                if self.p(i, i) > self.p(i, j) {
                    violations.push(Violation {
                        axiom: Axiom::P2,
                        indices: vec![i, j],
                        lhs: self.p(i, i).clone(),
                        rhs: self.p(i, j).clone(),
                    });
                }
                // P1: three-way equality separates points
                if i != j
                    && self.p(i, i) == self.p(i, j)
                    && self.p(i, j) == self.p(j, j)
                {
                    violations.push(Violation {
                        axiom: Axiom::P1,
                        indices: vec![i, j],
                        lhs: self.p(i, j).clone(),
                        rhs: self.p(i, j).clone(),
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.p(i, k) + self.p(j, j);
                    let rhs = self.p(i, j) + self.p(j, k);
                    if lhs > rhs {
                        violations.push(Violation {
                            axiom: Axiom::P4,
                            indices: vec![i, j, k],
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        AxiomReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.check_axioms().passed()
    }
}

/// A label not yet in use: `b`, primed until free.
pub fn fresh_label_for(taken: &[String]) -> String {
    let mut label = "b".to_string();
    while taken.contains(&label) {
        label.push('\'');
    }
    label
}

pub fn default_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if n <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    P1,
    P2,
    P3,
    P4,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::P1 => write!(f, "P1"),
            Axiom::P2 => write!(f, "P2"),
            Axiom::P3 => write!(f, "P3"),
            Axiom::P4 => write!(f, "P4"),
        }
    }
}

/// One violated axiom instance, re-checkable from the matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
    pub lhs: Rat,
    pub rhs: Rat,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {:?}: {} vs {}",
            self.axiom,
            self.indices,
            fmt_rat(&self.lhs),
            fmt_rat(&self.rhs)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated_axioms(&self) -> Vec<Axiom> {
        let mut out: Vec<Axiom> = Vec::new();
        for v in &self.violations {
            if !out.contains(&v.axiom) {
                out.push(v.axiom);
            }
        }
        out
    }
}

/// Strictly sorted, duplicate-free set of point indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet(Vec<usize>);

impl PointSet {
    /// Sorts and deduplicates; rejects out-of-range indices.
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self, SpaceError> {
        for &i in &indices {
            if i >= n {
                return Err(SpaceError::IndexOutOfRange(i));
            }
        }
        indices.sort_unstable();
        indices.dedup();
        Ok(Self(indices))
    }

    pub fn full(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }
}

/// Open ball `B_eps(center) = { y : p(center,y) < p(center,center) + eps }`.
///
/// Membership is asymmetric: `y` in `B_eps(x)` does not imply `x` in
/// `B_eps(y)`. The centre is always a member.
pub fn open_ball(
    space: &FinitePMetricSpace,
    center: usize,
    epsilon: &Rat,
) -> Result<PointSet, SpaceError> {
    if center >= space.len() {
        return Err(SpaceError::IndexOutOfRange(center));
    }
    if !epsilon.is_positive() {
        return Err(SpaceError::InvalidRadius(fmt_rat(epsilon)));
    }
    let bound = space.p(center, center) + epsilon;
    let members = (0..space.len())
        .filter(|&y| *space.p(center, y) < bound)
        .collect();
    Ok(PointSet(members))
}

/// Verdict of a denseness check, with a witness per point (or the first
/// failing point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub dense: bool,
    /// For each point `x`, the witness `y` in the subset, when one exists.
    pub witnesses: Vec<Option<usize>>,
    /// First point with no witness, when not dense.
    pub failing: Option<usize>,
}

fn density_report_from(witnesses: Vec<Option<usize>>) -> DensityReport {
    let failing = witnesses.iter().position(|w| w.is_none());
    DensityReport {
        dense: failing.is_none(),
        witnesses,
        failing,
    }
}

/// Topological denseness of `subset`, by the exact finite-space criterion:
/// `x` is approximated by `y` in the subset iff `p(x,y) = p(x,x)`.
///
/// The quantifier over all radii collapses to this equality: `y` lies in
/// every ball around `x` iff `p(x,y) <= p(x,x)`, which P2 tightens to
/// equality. The per-radius reading is [`is_dense_at`]; the two agree on
/// valid spaces.
pub fn is_dense(space: &FinitePMetricSpace, subset: &PointSet) -> DensityReport {
    let witnesses = (0..space.len())
        .map(|x| subset.iter().find(|&y| space.p(x, y) == space.p(x, x)))
        .collect();
    density_report_from(witnesses)
}

/// Symmetric denseness: the witness must approximate in both directions,
/// `p(x,y) = p(x,x)` and `p(x,y) = p(y,y)`.
///
/// In a finite valid space P1 collapses this to `x = y`, so the verdict is
/// true iff the subset is the full point set; see
/// [`symmetric_dense_by_collapse`] for that route. Both are kept and
/// cross-checked.
pub fn is_symmetrically_dense(space: &FinitePMetricSpace, subset: &PointSet) -> DensityReport {
    let witnesses: Vec<Option<usize>> = (0..space.len())
        .map(|x| {
            subset.iter().find(|&y| {
                space.p(x, y) == space.p(x, x) && space.p(x, y) == space.p(y, y)
            })
        })
        .collect();
    let report = density_report_from(witnesses);
    debug_assert!(
        !space.is_valid() || report.dense == symmetric_dense_by_collapse(space, subset),
        "direct criterion and P1 collapse disagree"
    );
    report
}

/// The P1-collapse route: in a valid finite space a subset is symmetrically
/// dense iff it is the whole space.
pub fn symmetric_dense_by_collapse(space: &FinitePMetricSpace, subset: &PointSet) -> bool {
    subset.len() == space.len()
}

/// Per-radius denseness at a single `epsilon`: every point has a subset
/// point inside its `epsilon`-ball.
pub fn is_dense_at(space: &FinitePMetricSpace, subset: &PointSet, epsilon: &Rat) -> bool {
    (0..space.len()).all(|x| {
        subset
            .iter()
            .any(|y| space.p(x, y) < &(space.p(x, x) + epsilon))
    })
}

/// Per-radius symmetric denseness at a single `epsilon`.
pub fn is_symmetrically_dense_at(
    space: &FinitePMetricSpace,
    subset: &PointSet,
    epsilon: &Rat,
) -> bool {
    (0..space.len()).all(|x| {
        subset.iter().any(|y| {
            space.p(x, y) < &(space.p(x, x) + epsilon)
                && space.p(x, y) < &(space.p(y, y) + epsilon)
        })
    })
}

/// The sampled radii `1, 1/2, ..., 2^-max_exp` used when cross-checking the
/// exact criteria against their per-radius reading.
pub fn sample_radii(max_exp: usize) -> Vec<Rat> {
    (0..=max_exp).map(pow2_neg).collect()
}

/// The paper's canonical two-point example: `p(a,a) = 0`, all other
/// distances 1.
pub fn two_point_y() -> FinitePMetricSpace {
    FinitePMetricSpace::from_ints(&[&[0, 1], &[1, 1]]).unwrap()
}

/// The one-point space with self-distance 0.
pub fn one_point_x() -> FinitePMetricSpace {
    FinitePMetricSpace::from_ints(&[&[0]]).unwrap()
}
