//! Cauchy-sequence completions with exactly computable limits.
//!
//! The quotient construction works over concrete sequence models rather
//! than abstract Cauchy sequences: eventually periodic sequences in a
//! finite space, and prefix schedules of a target point in the Kahn
//! domain. Every limit that the construction needs (two self-distance
//! limits and one cross limit per pair of models) is then an exact
//! rational, so infinitesimal closeness, the quotient pmetric, and the
//! 0-completion subspace are all decided by exact comparisons.

use std::fmt;
use std::sync::Mutex;

use num_traits::Zero;
use thiserror::Error;

use crate::isometry::{find_isometry, IsometryMode, IsometryWitness};
use crate::kahn::{
    kahn_distance_exact, Alphabet, KahnError, KahnPoint,
};
use crate::rational::{is_pow2_recip, Rat};
use crate::seq::{double_limit, EventuallyPeriodicSeq, SeqError};
use crate::space::{default_labels, FinitePMetricSpace, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("sequence model is not p-Cauchy")]
    NotPCauchy,
    #[error("models do not belong to the same presentation")]
    IncomparableModels,
    #[error("point does not belong to this presentation")]
    BadBasePoint,
    #[error("unsupported presentation kind for this operation")]
    UnsupportedPresentation,
    #[error("schedule must be strictly increasing from a positive start")]
    BadSchedule,
    #[error("extension failure: {0}")]
    ExtensionFailure(String),
    #[error(transparent)]
    Kahn(#[from] KahnError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

/// A space whose points and pairwise distances are exactly presentable:
/// a finite matrix, the finite words of the Kahn domain, or the full Kahn
/// domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresentedSpace {
    Finite(FinitePMetricSpace),
    KahnFiniteWords(Alphabet),
    KahnFull(Alphabet),
}

/// A point of the presented base space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasePoint {
    Index(usize),
    Word(String),
}

impl fmt::Display for BasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasePoint::Index(i) => write!(f, "#{i}"),
            BasePoint::Word(w) if w.is_empty() => write!(f, "ε"),
            BasePoint::Word(w) => write!(f, "{w}"),
        }
    }
}

/// Strictly increasing prefix-length schedule `n -> start + step * n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Schedule {
    start: usize,
    step: usize,
}

impl Schedule {
    pub fn new(start: usize, step: usize) -> Result<Self, CompletionError> {
        if start == 0 || step == 0 {
            return Err(CompletionError::BadSchedule);
        }
        Ok(Self { start, step })
    }

    /// The canonical schedule 1, 2, 3, ...
    pub fn canonical() -> Self {
        Self { start: 1, step: 1 }
    }

    pub fn length_at(&self, n: usize) -> usize {
        self.start + self.step * n
    }
}

/// A p-Cauchy sequence model: the representative `x` of a completion
/// class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CauchySeqModel {
    /// An eventually periodic sequence in a finite space.
    Finite { seq: EventuallyPeriodicSeq },
    /// The prefixes of a target Kahn point along a length schedule.
    Kahn {
        target: KahnPoint,
        schedule: Schedule,
    },
}

impl CauchySeqModel {
    /// Validated finite model; the sequence must be p-Cauchy in `space`.
    pub fn finite(
        space: &FinitePMetricSpace,
        seq: EventuallyPeriodicSeq,
    ) -> Result<Self, CompletionError> {
        if double_limit(space, &seq).is_none() {
            return Err(CompletionError::NotPCauchy);
        }
        Ok(Self::Finite { seq })
    }

    pub fn constant(space: &FinitePMetricSpace, point: usize) -> Result<Self, CompletionError> {
        let seq = EventuallyPeriodicSeq::constant(point, space.len())?;
        Self::finite(space, seq)
    }

    /// Prefix-schedule model of a Kahn point. Always p-Cauchy: the tail
    /// distances converge to `2^-lcp` of the target with itself.
    pub fn kahn(target: KahnPoint, schedule: Schedule) -> Self {
        Self::Kahn { target, schedule }
    }

    pub fn kahn_canonical(target: KahnPoint) -> Self {
        Self::kahn(target, Schedule::canonical())
    }

    /// Support point of a p-Cauchy finite model (the single point its tail
    /// visits: P1 collapses a p-Cauchy support to one point).
    fn support_point(&self) -> Option<usize> {
        match self {
            Self::Finite { seq } => {
                let s = seq.support();
                (s.len() == 1).then(|| s[0])
            }
            Self::Kahn { .. } => None,
        }
    }

    /// `lim p(x_n, x_n)`, exact.
    pub fn self_limit(&self, presented: &PresentedSpace) -> Result<Rat, CompletionError> {
        cross_limit(presented, self, self)
    }

    /// The n-th term rendered for reports.
    pub fn describe(&self) -> String {
        match self {
            Self::Finite { seq } => format!(
                "finite seq prefix {:?} cycle {:?}",
                seq.prefix(),
                seq.cycle()
            ),
            Self::Kahn { target, schedule } => format!(
                "prefixes of {} at lengths {}+{}n",
                match target {
                    KahnPoint::Word(w) if w.is_empty() => "ε".to_string(),
                    KahnPoint::Word(w) => w.clone(),
                    KahnPoint::Stream(s) => format!("{s:?}"),
                },
                schedule.start,
                schedule.step
            ),
        }
    }
}

fn expect_finite<'a>(
    presented: &'a PresentedSpace,
) -> Result<&'a FinitePMetricSpace, CompletionError> {
    match presented {
        PresentedSpace::Finite(s) => Ok(s),
        _ => Err(CompletionError::IncomparableModels),
    }
}

/// `lim_n p(a_n, b_n)`, exact. For finite models this is the distance
/// between the two support points; for Kahn models it is `2^-lcp` of the
/// two targets.
pub fn cross_limit(
    presented: &PresentedSpace,
    a: &CauchySeqModel,
    b: &CauchySeqModel,
) -> Result<Rat, CompletionError> {
    match (a, b) {
        (CauchySeqModel::Finite { .. }, CauchySeqModel::Finite { .. }) => {
            let space = expect_finite(presented)?;
            let (s, t) = match (a.support_point(), b.support_point()) {
                (Some(s), Some(t)) => (s, t),
                _ => return Err(CompletionError::NotPCauchy),
            };
            if s >= space.len() || t >= space.len() {
                return Err(CompletionError::BadBasePoint);
            }
            Ok(space.p(s, t).clone())
        }
        (
            CauchySeqModel::Kahn { target: x, .. },
            CauchySeqModel::Kahn { target: y, .. },
        ) => match presented {
            PresentedSpace::KahnFiniteWords(_) | PresentedSpace::KahnFull(_) => {
                Ok(kahn_distance_exact(x, y)?)
            }
            PresentedSpace::Finite(_) => Err(CompletionError::IncomparableModels),
        },
        _ => Err(CompletionError::IncomparableModels),
    }
}

/// Verdict of the infinitesimal-closeness test with the three limits that
/// decide it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub self_a: Option<Rat>,
    pub cross: Option<Rat>,
    pub self_b: Option<Rat>,
    pub note: Option<String>,
}

/// Infinitesimal closeness of two sequence models, in standard terms:
/// `lim p(a_n,a_n) = lim p(a_n,b_n) = lim p(b_n,b_n)`, all three limits
/// required to exist. A missing cross limit is reported as inequivalent
/// with a diagnostic rather than as an error.
pub fn seq_equivalent_report(
    presented: &PresentedSpace,
    a: &CauchySeqModel,
    b: &CauchySeqModel,
) -> Result<EquivalenceReport, CompletionError> {
    let self_a = a.self_limit(presented)?;
    let self_b = b.self_limit(presented)?;
    match cross_limit(presented, a, b) {
        Ok(cross) => {
            let equivalent = self_a == cross && cross == self_b;
            Ok(EquivalenceReport {
                equivalent,
                self_a: Some(self_a),
                cross: Some(cross),
                self_b: Some(self_b),
                note: None,
            })
        }
        Err(CompletionError::NotPCauchy) => Ok(EquivalenceReport {
            equivalent: false,
            self_a: Some(self_a),
            cross: None,
            self_b: Some(self_b),
            note: Some("cross-term limit does not exist".to_string()),
        }),
        Err(e) => Err(e),
    }
}

pub fn seq_equivalent(
    presented: &PresentedSpace,
    a: &CauchySeqModel,
    b: &CauchySeqModel,
) -> Result<bool, CompletionError> {
    Ok(seq_equivalent_report(presented, a, b)?.equivalent)
}

/// An equivalence class of models, carrying a canonical representative
/// and its (class-invariant) self-distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionClass {
    pub representative: CauchySeqModel,
    pub self_distance: Rat,
}

/// Quotient distance between two classes: the cross limit of any
/// representatives. Invariant under replacing either representative by an
/// equivalent one.
pub fn quotient_pmetric(
    presented: &PresentedSpace,
    a: &CompletionClass,
    b: &CompletionClass,
) -> Result<Rat, CompletionError> {
    cross_limit(presented, &a.representative, &b.representative)
}

/// Handle to a materialised class inside a [`CompletionSpace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassId(pub usize);

/// The completion: classes of p-Cauchy sequence models under
/// infinitesimal closeness, materialised on demand.
///
/// Class materialisation is append-only behind a lock; distance queries
/// are pure, so concurrent queries return identical values regardless of
/// interleaving.
#[derive(Debug)]
pub struct CompletionSpace {
    presented: PresentedSpace,
    classes: Mutex<Vec<CompletionClass>>,
}

/// Builds the completion of a presentation. Finite spaces pre-materialise
/// one class per point (every p-Cauchy class is eventually constant);
/// the Kahn finite-words presentation starts from the word classes and
/// materialises stream classes as they are queried. Other kinds are
/// rejected.
pub fn complete(presented: &PresentedSpace) -> Result<CompletionSpace, CompletionError> {
    match presented {
        PresentedSpace::Finite(space) => {
            let mut classes = Vec::with_capacity(space.len());
            for i in 0..space.len() {
                let rep = CauchySeqModel::constant(space, i)?;
                classes.push(CompletionClass {
                    self_distance: space.p(i, i).clone(),
                    representative: rep,
                });
            }
            Ok(CompletionSpace {
                presented: presented.clone(),
                classes: Mutex::new(classes),
            })
        }
        PresentedSpace::KahnFiniteWords(_) => Ok(CompletionSpace {
            presented: presented.clone(),
            classes: Mutex::new(Vec::new()),
        }),
        PresentedSpace::KahnFull(_) => Err(CompletionError::UnsupportedPresentation),
    }
}

impl CompletionSpace {
    pub fn presented(&self) -> &PresentedSpace {
        &self.presented
    }

    pub fn num_classes(&self) -> usize {
        self.classes.lock().unwrap().len()
    }

    pub fn class(&self, id: ClassId) -> CompletionClass {
        self.classes.lock().unwrap()[id.0].clone()
    }

    /// The class of a base point under the canonical embedding.
    pub fn base_class(&self, point: &BasePoint) -> Result<ClassId, CompletionError> {
        let model = self.base_model(point)?;
        self.class_of(&model)
    }

    fn base_model(&self, point: &BasePoint) -> Result<CauchySeqModel, CompletionError> {
        match (&self.presented, point) {
            (PresentedSpace::Finite(space), BasePoint::Index(i)) => {
                if *i >= space.len() {
                    return Err(CompletionError::BadBasePoint);
                }
                CauchySeqModel::constant(space, *i)
            }
            (PresentedSpace::KahnFiniteWords(_), BasePoint::Word(w)) => {
                Ok(CauchySeqModel::kahn_canonical(KahnPoint::word(w)))
            }
            _ => Err(CompletionError::BadBasePoint),
        }
    }

    /// The class of a sequence model, materialising it on first sight.
    /// Class equality is infinitesimal closeness of representatives.
    pub fn class_of(&self, model: &CauchySeqModel) -> Result<ClassId, CompletionError> {
        // compute limits outside the lock; the scan itself is cheap
        let self_distance = model.self_limit(&self.presented)?;
        let mut classes = self.classes.lock().unwrap();
        for (i, c) in classes.iter().enumerate() {
            if seq_equivalent(&self.presented, &c.representative, model)? {
                return Ok(ClassId(i));
            }
        }
        classes.push(CompletionClass {
            representative: model.clone(),
            self_distance,
        });
        Ok(ClassId(classes.len() - 1))
    }

    pub fn distance(&self, a: ClassId, b: ClassId) -> Result<Rat, CompletionError> {
        let (ca, cb) = {
            let classes = self.classes.lock().unwrap();
            (classes[a.0].clone(), classes[b.0].clone())
        };
        quotient_pmetric(&self.presented, &ca, &cb)
    }

    /// Realises a finite sub-collection of classes as a concrete space,
    /// suitable for the axiom checker.
    pub fn materialize_fragment(
        &self,
        ids: &[ClassId],
    ) -> Result<FinitePMetricSpace, CompletionError> {
        let labels = default_labels(ids.len());
        let mut matrix = Vec::with_capacity(ids.len());
        for &i in ids {
            let mut row = Vec::with_capacity(ids.len());
            for &j in ids {
                row.push(self.distance(i, j)?);
            }
            matrix.push(row);
        }
        Ok(FinitePMetricSpace::new(labels, matrix)?)
    }

    /// Collapses the completion of a finite space to a concrete space plus
    /// the isometry back onto the base.
    pub fn to_finite(&self) -> Result<(FinitePMetricSpace, IsometryWitness), CompletionError> {
        let space = match &self.presented {
            PresentedSpace::Finite(s) => s,
            _ => Err(CompletionError::UnsupportedPresentation)?,
        };
        let ids: Vec<ClassId> = (0..self.num_classes()).map(ClassId).collect();
        let materialized = self.materialize_fragment(&ids)?;
        let witness = find_isometry(&materialized, space, IsometryMode::Bijection)
            .ok_or(CompletionError::ExtensionFailure(
                "finite completion failed to collapse onto its base".to_string(),
            ))?;
        Ok((materialized, witness))
    }

    /// Finds a base point witnessing symmetric denseness of the base image
    /// around `id` at radius `epsilon`, and checks both ball inequalities
    /// exactly.
    pub fn symmetric_density_witness(
        &self,
        id: ClassId,
        epsilon: &Rat,
    ) -> Result<SymmetricDensityWitness, CompletionError> {
        let class = self.class(id);
        let base = match (&self.presented, &class.representative) {
            (PresentedSpace::Finite(_), m) => {
                BasePoint::Index(m.support_point().ok_or(CompletionError::NotPCauchy)?)
            }
            (PresentedSpace::KahnFiniteWords(_), CauchySeqModel::Kahn { target, .. }) => {
                match target {
                    KahnPoint::Word(w) => BasePoint::Word(w.clone()),
                    KahnPoint::Stream(s) => {
                        // prefix long enough that 2^-k < epsilon
                        let mut k = 1;
                        while &crate::rational::pow2_neg(k) >= epsilon {
                            k += 1;
                        }
                        BasePoint::Word(s.prefix(k))
                    }
                }
            }
            _ => return Err(CompletionError::IncomparableModels),
        };
        let base_id = self.base_class(&base)?;
        let base_self = self.class(base_id).self_distance;
        let d_forward = self.distance(base_id, id)?;
        let d_backward = self.distance(id, base_id)?;
        Ok(SymmetricDensityWitness {
            forward_ok: d_forward < base_self + epsilon,
            backward_ok: d_backward < class.self_distance + epsilon,
            base,
        })
    }
}

/// A symmetric-denseness witness: the base point lands in the class's
/// ball and vice versa.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricDensityWitness {
    pub base: BasePoint,
    pub forward_ok: bool,
    pub backward_ok: bool,
}

impl SymmetricDensityWitness {
    pub fn ok(&self) -> bool {
        self.forward_ok && self.backward_ok
    }
}

/// The 0-completion: base-point classes plus every class of self-distance
/// zero.
#[derive(Debug)]
pub struct ZeroCompletion {
    completion: CompletionSpace,
}

pub fn zero_completion(presented: &PresentedSpace) -> Result<ZeroCompletion, CompletionError> {
    Ok(ZeroCompletion {
        completion: complete(presented)?,
    })
}

impl ZeroCompletion {
    pub fn completion(&self) -> &CompletionSpace {
        &self.completion
    }

    /// Membership: the class of a base point, or any class with
    /// self-distance zero.
    pub fn is_member(&self, id: ClassId) -> bool {
        let class = self.completion.class(id);
        if class.self_distance.is_zero() {
            return true;
        }
        match (&self.completion.presented, &class.representative) {
            // finite completions collapse to the base: every class is a
            // base-point class
            (PresentedSpace::Finite(_), _) => true,
            (_, CauchySeqModel::Kahn { target, .. }) => target.is_word(),
            _ => false,
        }
    }

    /// For a finite base, every member class is a base-point class.
    pub fn collapses_to_base(&self) -> bool {
        matches!(self.completion.presented, PresentedSpace::Finite(_))
    }
}

/// A complete target space with exactly computable distances, used by the
/// embedding-extension checker and the refutation search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetSpace {
    Finite(FinitePMetricSpace),
    /// The full Kahn domain over an alphabet.
    KahnFull(Alphabet),
    /// The Kahn domain with the empty word removed.
    KahnMinusEmpty(Alphabet),
}

/// A point of a [`TargetSpace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetPoint {
    Index(usize),
    Kahn(KahnPoint),
}

impl fmt::Display for TargetPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetPoint::Index(i) => write!(f, "#{i}"),
            TargetPoint::Kahn(KahnPoint::Word(w)) if w.is_empty() => write!(f, "ε"),
            TargetPoint::Kahn(KahnPoint::Word(w)) => write!(f, "{w}"),
            TargetPoint::Kahn(KahnPoint::Stream(s)) => write!(f, "{s:?}"),
        }
    }
}

impl TargetSpace {
    pub fn distance(&self, a: &TargetPoint, b: &TargetPoint) -> Result<Rat, CompletionError> {
        match (self, a, b) {
            (TargetSpace::Finite(s), TargetPoint::Index(i), TargetPoint::Index(j)) => {
                if *i >= s.len() || *j >= s.len() {
                    return Err(CompletionError::BadBasePoint);
                }
                Ok(s.p(*i, *j).clone())
            }
            (
                TargetSpace::KahnFull(_) | TargetSpace::KahnMinusEmpty(_),
                TargetPoint::Kahn(x),
                TargetPoint::Kahn(y),
            ) => Ok(kahn_distance_exact(x, y)?),
            _ => Err(CompletionError::IncomparableModels),
        }
    }

    pub fn self_distance(&self, p: &TargetPoint) -> Result<Rat, CompletionError> {
        match p {
            TargetPoint::Kahn(k) => Ok(k.self_distance_limit()),
            TargetPoint::Index(_) => self.distance(p, p),
        }
    }

    pub fn contains(&self, p: &TargetPoint) -> bool {
        match (self, p) {
            (TargetSpace::Finite(s), TargetPoint::Index(i)) => *i < s.len(),
            (TargetSpace::KahnFull(_), TargetPoint::Kahn(_)) => true,
            (TargetSpace::KahnMinusEmpty(_), TargetPoint::Kahn(KahnPoint::Word(w))) => {
                !w.is_empty()
            }
            (TargetSpace::KahnMinusEmpty(_), TargetPoint::Kahn(KahnPoint::Stream(_))) => true,
            _ => false,
        }
    }

    /// The depth-bounded candidate fragment: all points of a finite
    /// space, or all admitted words up to the given length.
    pub fn enumerate(&self, depth: usize) -> Vec<TargetPoint> {
        match self {
            TargetSpace::Finite(s) => (0..s.len()).map(TargetPoint::Index).collect(),
            TargetSpace::KahnFull(a) => a
                .words_up_to(depth)
                .into_iter()
                .map(|w| TargetPoint::Kahn(KahnPoint::Word(w)))
                .collect(),
            TargetSpace::KahnMinusEmpty(a) => a
                .words_up_to(depth)
                .into_iter()
                .filter(|w| !w.is_empty())
                .map(|w| TargetPoint::Kahn(KahnPoint::Word(w)))
                .collect(),
        }
    }

    /// Whether any point of the whole space (not just the enumerated
    /// fragment) attains self-distance `s`. This is what turns a bounded
    /// search failure into a global obstruction.
    pub fn achieves_self_distance(&self, s: &Rat) -> bool {
        match self {
            TargetSpace::Finite(space) => (0..space.len()).any(|i| space.p(i, i) == s),
            // words attain 2^-k, streams attain 0
            TargetSpace::KahnFull(_) => s.is_zero() || is_pow2_recip(s, 0),
            TargetSpace::KahnMinusEmpty(_) => s.is_zero() || is_pow2_recip(s, 1),
        }
    }

    fn self_distance_range_note(&self) -> String {
        match self {
            TargetSpace::Finite(space) => {
                let diag: Vec<String> = (0..space.len())
                    .map(|i| crate::rational::fmt_rat(space.p(i, i)))
                    .collect();
                format!("target self-distances are exactly {{{}}}", diag.join(", "))
            }
            TargetSpace::KahnFull(_) => {
                "target self-distances are exactly {2^-k : k >= 0} plus 0".to_string()
            }
            TargetSpace::KahnMinusEmpty(_) => {
                "target self-distances are exactly {2^-k : k >= 1} plus 0, all at most 1/2"
                    .to_string()
            }
        }
    }
}

/// Which points equality means for target points: literal for indices and
/// words, lcp-infinite for streams.
pub fn target_points_equal(a: &TargetPoint, b: &TargetPoint) -> Result<bool, CompletionError> {
    match (a, b) {
        (TargetPoint::Index(i), TargetPoint::Index(j)) => Ok(i == j),
        (TargetPoint::Kahn(x), TargetPoint::Kahn(y)) => match (x, y) {
            (KahnPoint::Word(u), KahnPoint::Word(v)) => Ok(u == v),
            (KahnPoint::Stream(_), KahnPoint::Stream(_)) => {
                Ok(matches!(crate::kahn::lcp_exact(x, y)?, crate::kahn::Extent::Infinite))
            }
            _ => Ok(false),
        },
        _ => Ok(false),
    }
}

/// How base points of a completion are carried into a target space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseEmbedding {
    /// Index-to-index map out of a finite base.
    FiniteMap(Vec<usize>),
    /// The identity on Kahn words.
    KahnWordIdentity,
}

impl BaseEmbedding {
    fn apply(&self, point: &BasePoint) -> Result<TargetPoint, CompletionError> {
        match (self, point) {
            (BaseEmbedding::FiniteMap(map), BasePoint::Index(i)) => map
                .get(*i)
                .copied()
                .map(TargetPoint::Index)
                .ok_or(CompletionError::BadBasePoint),
            (BaseEmbedding::KahnWordIdentity, BasePoint::Word(w)) => {
                Ok(TargetPoint::Kahn(KahnPoint::word(w)))
            }
            _ => Err(CompletionError::BadBasePoint),
        }
    }
}

/// Outcome of extending a base embedding through the completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionCheck {
    /// The extension's value on each tested class.
    pub assignments: Vec<(ClassId, TargetPoint)>,
    /// Distances between assigned images match quotient distances on all
    /// tested pairs.
    pub isometric: bool,
    /// On the enumerated candidate fragment, no other target point
    /// satisfies the distance equations that pin each image down.
    pub unique: bool,
    /// Classes whose image was not pinned down uniquely, with the
    /// surviving candidates.
    pub ambiguities: Vec<(ClassId, Vec<TargetPoint>)>,
}

/// Extends an isometric embedding of the base through the completion, by
/// sending each class to the limit of the image sequence, then verifies
/// the extension is isometric on the tested classes and pinned down
/// uniquely by exact distance equations against sampled base
/// approximants.
pub fn extend_embedding(
    completion: &CompletionSpace,
    embedding: &BaseEmbedding,
    target: &TargetSpace,
    tested: &[ClassId],
    depth: usize,
    extra_candidates: &[TargetPoint],
) -> Result<ExtensionCheck, CompletionError> {
    // image of each tested class: limit point of the embedded sequence
    let mut assignments = Vec::with_capacity(tested.len());
    for &id in tested {
        let class = completion.class(id);
        let image = match &class.representative {
            CauchySeqModel::Finite { .. } => {
                let s = class
                    .representative
                    .support_point()
                    .ok_or(CompletionError::NotPCauchy)?;
                embedding.apply(&BasePoint::Index(s))?
            }
            CauchySeqModel::Kahn { target: point, .. } => match embedding {
                BaseEmbedding::KahnWordIdentity => TargetPoint::Kahn(point.clone()),
                _ => return Err(CompletionError::BadBasePoint),
            },
        };
        if !target.contains(&image) {
            return Err(CompletionError::ExtensionFailure(format!(
                "image {image} of class {} lies outside the target",
                id.0
            )));
        }
        assignments.push((id, image));
    }

    // isometry on all tested pairs
    let mut isometric = true;
    for (i, (ida, imga)) in assignments.iter().enumerate() {
        for (idb, imgb) in &assignments[i..] {
            let want = completion.distance(*ida, *idb)?;
            let got = target.distance(imga, imgb)?;
            if want != got {
                isometric = false;
            }
        }
    }

    // uniqueness: filter the candidate fragment by the exact distance
    // equations against sampled base approximants of each class
    let mut candidates = target.enumerate(depth);
    candidates.extend_from_slice(extra_candidates);
    let mut unique = true;
    let mut ambiguities = Vec::new();
    for (id, image) in &assignments {
        let class = completion.class(*id);
        let approximants = base_approximants(completion, &class)?;
        let mut survivors = Vec::new();
        'cand: for y in candidates.iter().chain(std::iter::once(image)) {
            if !target.contains(y) {
                continue;
            }
            if target.self_distance(y)? != class.self_distance {
                continue;
            }
            for base in &approximants {
                let base_id = completion.base_class(base)?;
                let want = completion.distance(*id, base_id)?;
                let got = target.distance(y, &embedding.apply(base)?)?;
                if want != got {
                    continue 'cand;
                }
            }
            if !survivors.iter().any(|s| {
                target_points_equal(s, y).unwrap_or(false)
            }) {
                survivors.push(y.clone());
            }
        }
        let pinned = survivors.len() == 1
            && target_points_equal(&survivors[0], image)?;
        if !pinned {
            unique = false;
            ambiguities.push((*id, survivors));
        }
    }

    Ok(ExtensionCheck {
        assignments,
        isometric,
        unique,
        ambiguities,
    })
}

/// Base points approximating a class: its support point for a finite
/// base, the target's prefixes at lengths 1..=10 for a Kahn base.
fn base_approximants(
    completion: &CompletionSpace,
    class: &CompletionClass,
) -> Result<Vec<BasePoint>, CompletionError> {
    match (&completion.presented, &class.representative) {
        (PresentedSpace::Finite(_), m) => Ok(vec![BasePoint::Index(
            m.support_point().ok_or(CompletionError::NotPCauchy)?,
        )]),
        (_, CauchySeqModel::Kahn { target, .. }) => {
            let mut out = Vec::new();
            for k in 1..=10 {
                let p = BasePoint::Word(target.prefix(k));
                if !out.contains(&p) {
                    out.push(p);
                }
            }
            Ok(out)
        }
        _ => Err(CompletionError::IncomparableModels),
    }
}

/// Outcome of the no-isometric-extension search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefutationOutcome {
    /// No point of the whole target can play the extra point's role; the
    /// note records the global obstruction.
    RefutedGlobally {
        required_self_distance: Rat,
        note: String,
    },
    /// The enumerated fragment contains a point realising the extra
    /// point's distances: no refutation.
    CandidateFound { candidate: TargetPoint },
    /// The bounded search found nothing but no global obstruction applies.
    Inconclusive { explored: usize },
}

/// Searches the target for a point that could receive the extra point `w`
/// of a superspace under an isometric extension: it must match `w`'s
/// self-distance and its distances to the embedded points. A self-distance
/// value the target cannot attain anywhere refutes the extension globally;
/// otherwise the search is bounded by `depth` and honest about it.
pub fn refute_isometric_extension(
    target: &TargetSpace,
    embedded: &[TargetPoint],
    extra_self_distance: &Rat,
    extra_distances: &[Rat],
    depth: usize,
    extra_candidates: &[TargetPoint],
) -> Result<RefutationOutcome, CompletionError> {
    assert_eq!(embedded.len(), extra_distances.len());
    if !target.achieves_self_distance(extra_self_distance) {
        return Ok(RefutationOutcome::RefutedGlobally {
            required_self_distance: extra_self_distance.clone(),
            note: format!(
                "no target point has self-distance {}; {}",
                crate::rational::fmt_rat(extra_self_distance),
                target.self_distance_range_note()
            ),
        });
    }
    let mut candidates = target.enumerate(depth);
    candidates.extend_from_slice(extra_candidates);
    let mut explored = 0;
    'cand: for y in candidates {
        if !target.contains(&y) {
            continue;
        }
        explored += 1;
        if target.self_distance(&y)? != *extra_self_distance {
            continue;
        }
        for (x, d) in embedded.iter().zip(extra_distances) {
            if target.distance(&y, x)? != *d {
                continue 'cand;
            }
        }
        return Ok(RefutationOutcome::CandidateFound { candidate: y });
    }
    Ok(RefutationOutcome::Inconclusive { explored })
}
