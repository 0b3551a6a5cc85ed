//! Small-instance lab: seeded random generation, grid enumeration,
//! counterexample search, and completion classification.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::extension::{attach_asymmetric_point, ExtensionError};
use crate::isometry::{find_isometry, IsometryMode};
use crate::rational::{rat_int, Rat};
use crate::seq::is_p_cauchy_complete_finite;
use crate::space::{
    default_labels, is_dense, is_symmetrically_dense, FinitePMetricSpace, PointSet, SpaceError,
};

/// Hard cap on enumeration size; grids past this are refused rather than
/// silently truncated.
pub const ENUMERATION_BOUND: u128 = 2_000_000;

const GRID_STEPS: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("enumeration of {states} states exceeds the bound {bound}")]
    BoundExceeded { states: u128, bound: u128 },
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

/// Parameters for the random generator. Both ranges are sampled on an
/// 8-step rational grid between their endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorParams {
    pub n: usize,
    pub seed: u64,
    /// Range for the per-point weights `w(x)`.
    pub weight_range: (Rat, Rat),
    /// Range for the underlying metric's edge weights; sampled values are
    /// kept strictly positive.
    pub metric_range: (Rat, Rat),
}

impl GeneratorParams {
    pub fn new(n: usize, seed: u64) -> Self {
        Self {
            n,
            seed,
            weight_range: (rat_int(0), rat_int(1)),
            metric_range: (rat_int(0), rat_int(2)),
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.n == 0 {
            return Err(SearchError::BadParams("n must be at least 1".into()));
        }
        for (name, (lo, hi)) in [
            ("weight", &self.weight_range),
            ("metric", &self.metric_range),
        ] {
            if lo.is_negative() || hi < lo {
                return Err(SearchError::BadParams(format!(
                    "{name} range must be a nonnegative interval"
                )));
            }
        }
        if self.metric_range.1.is_zero() {
            return Err(SearchError::BadParams(
                "metric range must contain a positive value".into(),
            ));
        }
        Ok(())
    }
}

fn grid_sample(rng: &mut ChaCha8Rng, lo: &Rat, hi: &Rat) -> Rat {
    let k = rng.gen_range(0..=GRID_STEPS);
    lo + (hi - lo) * rat_int(k as i64) / rat_int(GRID_STEPS as i64)
}

/// Seeded random valid space: `p(x,y) = d(x,y) + max(w(x), w(y))` with
/// `d` the shortest-path closure of random strictly positive symmetric
/// edge weights. The construction satisfies P1-P4 (P4 reduces to
/// `max(wx,wz) + wy <= max(wx,wy) + max(wy,wz)`; P1 needs `d > 0` off
/// the diagonal), and the output is rechecked by the axiom checker
/// anyway.
pub fn random_pmetric(params: &GeneratorParams) -> Result<FinitePMetricSpace, SearchError> {
    params.validate()?;
    let n = params.n;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let weights: Vec<Rat> = (0..n)
        .map(|_| grid_sample(&mut rng, &params.weight_range.0, &params.weight_range.1))
        .collect();

    // strictly positive symmetric edge weights
    let mut d = vec![vec![rat_int(0); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let mut v = grid_sample(&mut rng, &params.metric_range.0, &params.metric_range.1);
            while v.is_zero() {
                v = grid_sample(&mut rng, &params.metric_range.0, &params.metric_range.1);
            }
            d[i][j] = v.clone();
            d[j][i] = v;
        }
    }
    // min-plus closure keeps symmetry and strict positivity off-diagonal
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &d[i][k] + &d[k][j];
                if i != j && via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }

    let matrix: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let w = weights[i].clone().max(weights[j].clone());
                    &d[i][j] + w
                })
                .collect()
        })
        .collect();
    let space = FinitePMetricSpace::new(default_labels(n), matrix)?;
    debug_assert!(space.is_valid());
    Ok(space)
}

/// Rejection sampler straight off a value grid, for distributional
/// diversity beyond the `d + max(w)` family. Returns the first valid
/// space among `max_attempts` uniform symmetric draws.
pub fn random_pmetric_on_grid(
    n: usize,
    grid: &[Rat],
    seed: u64,
    max_attempts: usize,
) -> Result<Option<FinitePMetricSpace>, SearchError> {
    if n == 0 || grid.is_empty() {
        return Err(SearchError::BadParams(
            "need at least one point and a nonempty grid".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_attempts {
        let mut matrix = vec![vec![rat_int(0); n]; n];
        for i in 0..n {
            for j in i..n {
                let v = grid[rng.gen_range(0..grid.len())].clone();
                matrix[i][j] = v.clone();
                matrix[j][i] = v;
            }
        }
        if let Ok(space) = FinitePMetricSpace::new(default_labels(n), matrix) {
            if space.is_valid() {
                return Ok(Some(space));
            }
        }
    }
    Ok(None)
}

fn sorted_grid(grid: &[Rat]) -> Vec<Rat> {
    let mut g = grid.to_vec();
    g.sort();
    g.dedup();
    g
}

fn check_enumeration_bound(cells: usize, grid_len: usize) -> Result<(), SearchError> {
    let mut states: u128 = 1;
    for _ in 0..cells {
        states = states.saturating_mul(grid_len as u128);
        if states > ENUMERATION_BOUND {
            return Err(SearchError::BoundExceeded {
                states,
                bound: ENUMERATION_BOUND,
            });
        }
    }
    Ok(())
}

/// All valid symmetric matrices over the grid, each exactly once, in
/// lexicographic row-major order (the upper-triangle odometer below is
/// equivalent: lower entries are copies of earlier cells).
pub fn enumerate_pmetrics(
    n: usize,
    grid: &[Rat],
) -> Result<Vec<FinitePMetricSpace>, SearchError> {
    if n == 0 || grid.is_empty() {
        return Err(SearchError::BadParams(
            "need at least one point and a nonempty grid".into(),
        ));
    }
    let grid = sorted_grid(grid);
    let cells = n * (n + 1) / 2;
    check_enumeration_bound(cells, grid.len())?;

    let labels = default_labels(n);
    let mut out = Vec::new();
    let mut digits = vec![0usize; cells];
    loop {
        let mut matrix = vec![vec![rat_int(0); n]; n];
        let mut c = 0;
        for i in 0..n {
            for j in i..n {
                matrix[i][j] = grid[digits[c]].clone();
                matrix[j][i] = grid[digits[c]].clone();
                c += 1;
            }
        }
        if let Ok(space) = FinitePMetricSpace::new(labels.clone(), matrix) {
            if space.is_valid() {
                out.push(space);
            }
        }
        // advance the odometer, least significant digit last
        let mut pos = cells;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < grid.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchProperty {
    /// A proper nonempty symmetrically dense subset of a valid space.
    ProperSymmetricallyDenseSubset,
    /// A valid finite space that is not p-Cauchy complete.
    PCauchyIncompleteFinite,
    /// A valid space admitting no second, non-isometric completion.
    SingleCompletionOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    FoundWitness,
    ExhaustedNoWitness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchWitness {
    pub space: FinitePMetricSpace,
    pub annotation: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub status: SearchStatus,
    pub witness: Option<SearchWitness>,
    pub states_explored: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_n: usize,
    pub grid: Vec<Rat>,
}

/// Exhaustive counterexample hunt over all valid spaces with at most
/// `max_n` points and entries from the grid. The first two properties
/// are expected to exhaust (subset collapse and finite completeness are
/// both forced); the third exhausts because the one-point attachment
/// always supplies a second completion, which is rechecked here rather
/// than assumed.
pub fn search_counterexample(
    property: SearchProperty,
    bounds: &SearchBounds,
) -> Result<SearchResult, SearchError> {
    let mut explored = 0;
    for n in 1..=bounds.max_n {
        for space in enumerate_pmetrics(n, &bounds.grid)? {
            explored += 1;
            if let Some(annotation) = property_witness(property, &space)? {
                return Ok(SearchResult {
                    status: SearchStatus::FoundWitness,
                    witness: Some(SearchWitness { space, annotation }),
                    states_explored: explored,
                });
            }
        }
    }
    Ok(SearchResult {
        status: SearchStatus::ExhaustedNoWitness,
        witness: None,
        states_explored: explored,
    })
}

fn property_witness(
    property: SearchProperty,
    space: &FinitePMetricSpace,
) -> Result<Option<String>, SearchError> {
    let n = space.len();
    match property {
        SearchProperty::ProperSymmetricallyDenseSubset => {
            for mask in 1u32..((1 << n) - 1) {
                let points: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                let subset = PointSet::new(points, n)?;
                if is_symmetrically_dense(space, &subset).dense {
                    return Ok(Some(format!("symmetrically dense subset {subset:?}")));
                }
            }
            Ok(None)
        }
        SearchProperty::PCauchyIncompleteFinite => {
            let cert = is_p_cauchy_complete_finite(space);
            if cert.complete {
                Ok(None)
            } else {
                Ok(Some(format!(
                    "incomplete: {} counterexample sequences",
                    cert.counterexamples.len()
                )))
            }
        }
        SearchProperty::SingleCompletionOnly => {
            // witness iff the attachment fails to deliver a second
            // completion; each clause is rechecked, never assumed
            let ext = attach_asymmetric_point(space, 0)?;
            let old = PointSet::new((0..n).collect(), n + 1)?;
            let second_exists = ext.space.is_valid()
                && is_dense(&ext.space, &old).dense
                && is_p_cauchy_complete_finite(&ext.space).complete
                && find_isometry(space, &ext.space, IsometryMode::Bijection).is_none();
            if second_exists {
                Ok(None)
            } else {
                Ok(Some("attachment produced no second completion".into()))
            }
        }
    }
}

/// Pairwise non-isometric complete superspaces over the grid in which
/// the input is dense, with at most `extra_points` new points (0 or 1).
/// The base itself is included when complete; deduplication keeps the
/// lexicographically least matrix, which the enumeration order provides.
pub fn classify_completions(
    space: &FinitePMetricSpace,
    extra_points: usize,
    grid: &[Rat],
) -> Result<Vec<FinitePMetricSpace>, SearchError> {
    if extra_points > 1 {
        return Err(SearchError::BadParams(
            "at most one extra point is supported".into(),
        ));
    }
    let n = space.len();
    let mut out: Vec<FinitePMetricSpace> = Vec::new();
    if space.is_valid() && is_p_cauchy_complete_finite(space).complete {
        out.push(space.clone());
    }
    if extra_points == 0 {
        return Ok(out);
    }

    let grid = sorted_grid(grid);
    if grid.is_empty() {
        return Err(SearchError::BadParams("grid must be nonempty".into()));
    }
    check_enumeration_bound(n + 1, grid.len())?;

    let mut labels = space.labels().to_vec();
    labels.push(crate::space::fresh_label_for(&labels));
    let old = PointSet::new((0..n).collect(), n + 1)?;

    // odometer over the new point's row: n cross distances then the
    // self-distance, lexicographic
    let mut digits = vec![0usize; n + 1];
    loop {
        let mut matrix: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rat> = (0..n).map(|j| space.p(i, j).clone()).collect();
                row.push(grid[digits[i]].clone());
                row
            })
            .collect();
        let mut last: Vec<Rat> = (0..n).map(|j| grid[digits[j]].clone()).collect();
        last.push(grid[digits[n]].clone());
        matrix.push(last);

        if let Ok(candidate) = FinitePMetricSpace::new(labels.clone(), matrix) {
            if candidate.is_valid()
                && is_dense(&candidate, &old).dense
                && is_p_cauchy_complete_finite(&candidate).complete
                && !out
                    .iter()
                    .any(|kept| find_isometry(kept, &candidate, IsometryMode::Bijection).is_some())
            {
                out.push(candidate);
            }
        }

        let mut pos = n + 1;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < grid.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}
