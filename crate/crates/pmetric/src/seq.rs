//! Sequence analysis in finite pmetric spaces.
//!
//! Sequences are restricted to eventually periodic models (finite prefix
//! plus a repeating cycle), which makes every limit exactly decidable: the
//! tail takes values in the cycle's support set, so limit existence reduces
//! to constancy of finitely many distances.

use std::collections::BTreeSet;

use num_traits::Zero;
use thiserror::Error;

use crate::rational::Rat;
use crate::space::{FinitePMetricSpace, PointSet, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("cycle must be nonempty")]
    EmptyCycle,
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// `x_n = prefix[n]` for `n < |prefix|`, then the cycle repeats forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventuallyPeriodicSeq {
    prefix: Vec<usize>,
    cycle: Vec<usize>,
}

impl EventuallyPeriodicSeq {
    pub fn new(prefix: Vec<usize>, cycle: Vec<usize>, n: usize) -> Result<Self, SeqError> {
        if cycle.is_empty() {
            return Err(SeqError::EmptyCycle);
        }
        for &i in prefix.iter().chain(cycle.iter()) {
            if i >= n {
                return Err(SeqError::Space(SpaceError::IndexOutOfRange(i)));
            }
        }
        Ok(Self { prefix, cycle })
    }

    pub fn constant(point: usize, n: usize) -> Result<Self, SeqError> {
        Self::new(Vec::new(), vec![point], n)
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    /// The n-th term.
    pub fn at(&self, n: usize) -> usize {
        if n < self.prefix.len() {
            self.prefix[n]
        } else {
            self.cycle[(n - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Set of points the tail visits infinitely often.
    pub fn support(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.cycle.iter().copied().collect();
        set.into_iter().collect()
    }
}

/// The double limit `lim_{n,m} p(x_n, x_m)`, when it exists.
///
/// Over an eventually periodic sequence the tail values are exactly the
/// pairwise distances on the support set (self-distances included), so the
/// limit exists iff those are all one value.
pub fn double_limit(space: &FinitePMetricSpace, seq: &EventuallyPeriodicSeq) -> Option<Rat> {
    let support = seq.support();
    let first = space.p(support[0], support[0]).clone();
    for &s in &support {
        for &t in &support {
            if space.p(s, t) != &first {
                return None;
            }
        }
    }
    Some(first)
}

/// Exact classification of one sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqClassification {
    pub p_cauchy: bool,
    pub p_cauchy_limit: Option<Rat>,
    pub zero_cauchy: bool,
    /// Points the sequence p-converges to.
    pub p_limits: PointSet,
    /// Points the sequence 0-converges to.
    pub zero_limits: PointSet,
    /// Points the sequence converges to in the induced topology.
    pub top_limits: PointSet,
}

/// Classifies a sequence: Cauchy flags and all three limit sets.
///
/// * p-limit `x`: `p(x,x) = lim p(x,x_n) = lim p(x_n,x_n)`, both limits
///   required to exist (constancy over the support).
/// * topological limit `x`: the tail eventually enters every ball around
///   `x`, which collapses to `p(x,s) = p(x,x)` for every support point `s`.
/// * 0-limit `x`: p-limit with common value 0.
pub fn classify(space: &FinitePMetricSpace, seq: &EventuallyPeriodicSeq) -> SeqClassification {
    let n = space.len();
    let support = seq.support();

    let limit = double_limit(space, seq);
    let p_cauchy = limit.is_some();
    let zero_cauchy = limit.as_ref().is_some_and(|c| c.is_zero());

    // lim p(x_n, x_n) exists iff self-distances are constant on the support
    let tail_self: Option<&Rat> = {
        let first = space.p(support[0], support[0]);
        support
            .iter()
            .all(|&s| space.p(s, s) == first)
            .then_some(first)
    };

    let mut p_limits = Vec::new();
    let mut zero_limits = Vec::new();
    let mut top_limits = Vec::new();
    for x in 0..n {
        // lim p(x, x_n) exists iff p(x, s) is constant on the support
        let cross = {
            let first = space.p(x, support[0]);
            support
                .iter()
                .all(|&s| space.p(x, s) == first)
                .then_some(first)
        };
        if let (Some(cross), Some(tail_self)) = (cross, tail_self) {
            if space.p(x, x) == cross && cross == tail_self {
                p_limits.push(x);
                if cross.is_zero() {
                    zero_limits.push(x);
                }
            }
        }
        if support.iter().all(|&s| space.p(x, s) == space.p(x, x)) {
            top_limits.push(x);
        }
    }

    SeqClassification {
        p_cauchy,
        p_cauchy_limit: limit,
        zero_cauchy,
        p_limits: PointSet::new(p_limits, n).unwrap(),
        zero_limits: PointSet::new(zero_limits, n).unwrap(),
        top_limits: PointSet::new(top_limits, n).unwrap(),
    }
}

/// Certificate that every enumerated p-Cauchy sequence p-converges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessCertificate {
    pub complete: bool,
    /// Number of cycles enumerated. Classification is a function of the
    /// cycle alone (the prefix never affects any limit), so prefixes are
    /// not enumerated separately.
    pub cycles_checked: usize,
    pub counterexamples: Vec<EventuallyPeriodicSeq>,
}

/// Certifies p-Cauchy completeness of a finite space by enumerating every
/// cycle of length up to `n` over its points.
///
/// Every valid finite space is p-Cauchy complete (a p-Cauchy tail has
/// singleton support by P1, and the constant sequence at that point
/// p-converges to it), so a `false` result indicates an implementation
/// bug rather than a mathematical discovery.
pub fn is_p_cauchy_complete_finite(space: &FinitePMetricSpace) -> CompletenessCertificate {
    let n = space.len();
    let mut cycles_checked = 0;
    let mut counterexamples = Vec::new();
    for len in 1..=n {
        let mut cycle = vec![0usize; len];
        loop {
            cycles_checked += 1;
            let seq = EventuallyPeriodicSeq::new(Vec::new(), cycle.clone(), n).unwrap();
            let c = classify(space, &seq);
            if c.p_cauchy && c.p_limits.is_empty() {
                counterexamples.push(seq);
            }
            // odometer over cycles of this length
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                cycle[pos] += 1;
                if cycle[pos] < n {
                    break;
                }
                cycle[pos] = 0;
            }
            if cycle.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    CompletenessCertificate {
        complete: counterexamples.is_empty(),
        cycles_checked,
        counterexamples,
    }
}

/// One implication with its antecedent/consequent truth values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Implication {
    pub name: &'static str,
    pub antecedent: bool,
    pub consequent: bool,
}

impl Implication {
    pub fn holds(&self) -> bool {
        !self.antecedent || self.consequent
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicationReport {
    pub classification: SeqClassification,
    pub implications: Vec<Implication>,
}

impl ImplicationReport {
    pub fn all_hold(&self) -> bool {
        self.implications.iter().all(Implication::holds)
    }
}

/// Evaluates the convergence implication chain on one sequence:
/// 0-convergence implies p-convergence implies topological convergence,
/// 0-Cauchy implies p-Cauchy, and for 0-Cauchy sequences p-convergence
/// implies 0-convergence.
pub fn check_implication_chain(
    space: &FinitePMetricSpace,
    seq: &EventuallyPeriodicSeq,
) -> ImplicationReport {
    let c = classify(space, seq);
    let implications = vec![
        Implication {
            name: "0-converges => p-converges",
            antecedent: !c.zero_limits.is_empty(),
            consequent: !c.p_limits.is_empty(),
        },
        Implication {
            name: "p-converges => topologically converges",
            antecedent: !c.p_limits.is_empty(),
            consequent: !c.top_limits.is_empty(),
        },
        Implication {
            name: "0-Cauchy => p-Cauchy",
            antecedent: c.zero_cauchy,
            consequent: c.p_cauchy,
        },
        Implication {
            name: "0-Cauchy and p-converges => 0-converges",
            antecedent: c.zero_cauchy && !c.p_limits.is_empty(),
            consequent: !c.zero_limits.is_empty(),
        },
    ];
    ImplicationReport {
        classification: c,
        implications,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_int, Rat};
    use crate::space::two_point_y;

    /// Independent oracle: sample p(x_n, x_m) on a double-index grid and
    /// report the set of values seen past the burn-in.
    fn sampled_tail_values(
        space: &FinitePMetricSpace,
        seq: &EventuallyPeriodicSeq,
        from: usize,
        to: usize,
    ) -> Vec<Rat> {
        let mut seen: Vec<Rat> = Vec::new();
        for n in from..=to {
            for m in from..=to {
                let v = space.p(seq.at(n), seq.at(m)).clone();
                if !seen.contains(&v) {
                    seen.push(v);
                }
            }
        }
        seen
    }

    #[test]
    fn alternating_sequence_has_no_double_limit() {
        let y = two_point_y();
        let seq = EventuallyPeriodicSeq::new(vec![], vec![0, 1], 2).unwrap();
        // oracle: values on all n,m <= 50 never settle to one value
        let vals = sampled_tail_values(&y, &seq, 0, 50);
        assert_eq!(vals.len(), 2);
        assert_eq!(double_limit(&y, &seq), None);
        let c = classify(&y, &seq);
        assert!(!c.p_cauchy);
        assert!(c.p_limits.is_empty());
    }

    #[test]
    fn constant_b_has_limit_one() {
        let y = two_point_y();
        let seq = EventuallyPeriodicSeq::constant(1, 2).unwrap();
        assert_eq!(double_limit(&y, &seq), Some(rat_int(1)));
        let c = classify(&y, &seq);
        assert!(c.p_cauchy && !c.zero_cauchy);
        assert_eq!(c.p_cauchy_limit, Some(rat_int(1)));
        assert_eq!(c.p_limits.indices(), &[1]);
    }

    #[test]
    fn prefix_then_constant_a_has_limit_zero() {
        let y = two_point_y();
        let seq = EventuallyPeriodicSeq::new(vec![1], vec![0], 2).unwrap();
        // oracle: sampled double-index grid past the prefix stabilises at 0
        let vals = sampled_tail_values(&y, &seq, 1, 50);
        assert_eq!(vals, vec![rat_int(0)]);
        assert_eq!(double_limit(&y, &seq), Some(rat_int(0)));
    }

    #[test]
    fn constant_a_classification() {
        let y = two_point_y();
        let seq = EventuallyPeriodicSeq::constant(0, 2).unwrap();
        let c = classify(&y, &seq);
        assert!(c.zero_cauchy && c.p_cauchy);
        assert_eq!(c.p_limits.indices(), &[0]);
        assert_eq!(c.zero_limits.indices(), &[0]);
        // b is a topological limit but not a p-limit: p(b,a) = p(b,b) = 1
        assert_eq!(c.top_limits.indices(), &[0, 1]);
    }

    #[test]
    fn implication_chain_on_y2() {
        let y = two_point_y();
        let const_a = EventuallyPeriodicSeq::constant(0, 2).unwrap();
        let r = check_implication_chain(&y, &const_a);
        assert!(r.all_hold());
        // all antecedents actually fire for the constant-a sequence
        assert!(r.implications.iter().all(|i| i.antecedent && i.consequent));

        let const_b = EventuallyPeriodicSeq::constant(1, 2).unwrap();
        let r = check_implication_chain(&y, &const_b);
        assert!(r.all_hold());
        // the 0-chain is vacuous: not 0-Cauchy
        assert!(!r.classification.zero_cauchy);

        let alt = EventuallyPeriodicSeq::new(vec![], vec![0, 1], 2).unwrap();
        let r = check_implication_chain(&y, &alt);
        assert!(r.all_hold());
        assert!(r.implications.iter().all(|i| !i.antecedent));
    }

    #[test]
    fn small_spaces_are_complete() {
        for s in [crate::space::one_point_x(), two_point_y()] {
            let cert = is_p_cauchy_complete_finite(&s);
            assert!(cert.complete, "{:?}", cert.counterexamples);
            assert!(cert.cycles_checked >= s.len());
        }
    }

    #[test]
    fn p_cauchy_support_is_singleton() {
        let y = two_point_y();
        for cycle in [vec![0], vec![1], vec![0, 1], vec![1, 1, 0]] {
            let seq = EventuallyPeriodicSeq::new(vec![], cycle, 2).unwrap();
            let c = classify(&y, &seq);
            if c.p_cauchy {
                assert_eq!(seq.support().len(), 1);
            }
        }
    }

    #[test]
    fn rejects_bad_sequences() {
        assert_eq!(
            EventuallyPeriodicSeq::new(vec![], vec![], 2).unwrap_err(),
            SeqError::EmptyCycle
        );
        assert!(EventuallyPeriodicSeq::new(vec![5], vec![0], 2).is_err());
    }
}
