//! The asymmetric one-point extension: attach a point `b` at offset 1 from
//! a chosen base point, producing a superspace in which the original space
//! is dense but not symmetrically dense.

use num_traits::Signed;
use thiserror::Error;

use crate::isometry::{find_isometry, IsometryMode, IsometryWitness};
use crate::rational::{fmt_rat, rat_int, Rat};
use crate::seq::{is_p_cauchy_complete_finite, CompletenessCertificate};
use crate::space::{one_point_x, two_point_y, FinitePMetricSpace, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("offset must be positive, got {0}")]
    NonPositiveOffset(String),
    #[error("extended space violates the axioms: {0:?}")]
    AxiomViolation(Vec<crate::space::Axiom>),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// The extended space plus the indices that matter: the attached point and
/// the base point its row was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionResult {
    pub space: FinitePMetricSpace,
    pub new_point: usize,
    pub base_point: usize,
}

impl ExtensionResult {
    /// The extended space restricted to the original points.
    pub fn restriction(&self) -> FinitePMetricSpace {
        let n = self.new_point;
        let labels = self.space.labels()[..n].to_vec();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| self.space.p(i, j).clone()).collect())
            .collect();
        FinitePMetricSpace::new(labels, matrix).expect("restriction of a valid space")
    }
}

/// Attaches an asymmetric point with the paper's literal offset of 1:
/// `p(b,y) = p(a,y) + 1` for old points `y`, `p(b,b) = p(a,a) + 1`.
pub fn attach_asymmetric_point(
    space: &FinitePMetricSpace,
    base_point: usize,
) -> Result<ExtensionResult, ExtensionError> {
    attach_with_offset(space, base_point, &rat_int(1))
}

/// Generalised attachment at an arbitrary positive offset `c`. The default
/// `c = 1` reproduces the canonical construction; any `c > 0` works, and
/// the axiom checker guards the output regardless.
pub fn attach_with_offset(
    space: &FinitePMetricSpace,
    base_point: usize,
    offset: &Rat,
) -> Result<ExtensionResult, ExtensionError> {
    if base_point >= space.len() {
        return Err(SpaceError::IndexOutOfRange(base_point).into());
    }
    if !offset.is_positive() {
        return Err(ExtensionError::NonPositiveOffset(fmt_rat(offset)));
    }
    let n = space.len();
    let mut matrix: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = (0..n).map(|j| space.p(i, j).clone()).collect();
            row.push(space.p(i, base_point) + offset);
            row
        })
        .collect();
    let mut last: Vec<Rat> = (0..n)
        .map(|j| space.p(base_point, j) + offset)
        .collect();
    last.push(space.p(base_point, base_point) + offset);
    matrix.push(last);

    let mut labels = space.labels().to_vec();
    labels.push(crate::space::fresh_label_for(&labels));

    let extended = FinitePMetricSpace::new(labels, matrix)?;
    let report = extended.check_axioms();
    if !report.passed() {
        return Err(ExtensionError::AxiomViolation(report.violated_axioms()));
    }
    Ok(ExtensionResult {
        space: extended,
        new_point: n,
        base_point,
    })
}

/// The paper's canonical pair: the one-point space `X1`, its two-point
/// extension `Y2`, and the inclusion embedding.
pub fn build_two_point_example() -> (FinitePMetricSpace, FinitePMetricSpace, IsometryWitness) {
    let x = one_point_x();
    let y = two_point_y();
    let witness = find_isometry(&x, &y, IsometryMode::Embedding)
        .expect("inclusion of X1 into Y2 is isometric");
    (x, y, witness)
}

/// One-point extension together with the completeness certificate that
/// makes it a p-Cauchy completion: the output is finite, hence complete,
/// and the input sits inside it densely but not symmetrically densely.
pub fn asymmetric_completion_finite(
    space: &FinitePMetricSpace,
    base_point: usize,
) -> Result<(ExtensionResult, CompletenessCertificate), ExtensionError> {
    let ext = attach_asymmetric_point(space, base_point)?;
    let cert = is_p_cauchy_complete_finite(&ext.space);
    Ok((ext, cert))
}
