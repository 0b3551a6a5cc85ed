//! Exhaustive backtracking search for distance-preserving maps between
//! finite pmetric spaces.

use crate::rational::Rat;
use crate::space::FinitePMetricSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsometryMode {
    Bijection,
    Embedding,
}

/// A distance-preserving map, `mapping[i]` being the target of source `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryWitness {
    pub mode: IsometryMode,
    pub mapping: Vec<usize>,
}

impl IsometryWitness {
    /// Re-checks injectivity and distance preservation entry by entry.
    pub fn verify(&self, source: &FinitePMetricSpace, target: &FinitePMetricSpace) -> bool {
        let n = source.len();
        if self.mapping.len() != n {
            return false;
        }
        if self.mode == IsometryMode::Bijection && target.len() != n {
            return false;
        }
        for (i, &fi) in self.mapping.iter().enumerate() {
            if fi >= target.len() {
                return false;
            }
            if self.mapping[..i].contains(&fi) {
                return false;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if target.p(self.mapping[i], self.mapping[j]) != source.p(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// Inverse of a bijective witness.
    pub fn inverse(&self) -> Option<IsometryWitness> {
        if self.mode != IsometryMode::Bijection {
            return None;
        }
        let n = self.mapping.len();
        let mut inv = vec![usize::MAX; n];
        for (i, &fi) in self.mapping.iter().enumerate() {
            if fi >= n || inv[fi] != usize::MAX {
                return None;
            }
            inv[fi] = i;
        }
        Some(IsometryWitness {
            mode: IsometryMode::Bijection,
            mapping: inv,
        })
    }
}

/// Finds the lexicographically least distance-preserving map of the
/// requested mode, or `None` when no such map exists.
///
/// The search assigns source points in index order, trying target indices
/// ascending, pruned by self-distance equality and consistency with
/// earlier assignments. A quick multiset check on the diagonals rejects
/// hopeless instances up front.
pub fn find_isometry(
    source: &FinitePMetricSpace,
    target: &FinitePMetricSpace,
    mode: IsometryMode,
) -> Option<IsometryWitness> {
    let n = source.len();
    let m = target.len();
    if mode == IsometryMode::Bijection && n != m {
        return None;
    }
    if n > m {
        return None;
    }
    if !diagonal_multiset_compatible(source, target, mode) {
        return None;
    }
    let mut mapping = Vec::with_capacity(n);
    let mut used = vec![false; m];
    if extend(source, target, &mut mapping, &mut used) {
        Some(IsometryWitness { mode, mapping })
    } else {
        None
    }
}

fn diagonal_multiset_compatible(
    source: &FinitePMetricSpace,
    target: &FinitePMetricSpace,
    mode: IsometryMode,
) -> bool {
    let mut src: Vec<&Rat> = (0..source.len()).map(|i| source.p(i, i)).collect();
    let mut tgt: Vec<&Rat> = (0..target.len()).map(|i| target.p(i, i)).collect();
    src.sort();
    tgt.sort();
    match mode {
        IsometryMode::Bijection => src == tgt,
        IsometryMode::Embedding => {
            // every source self-distance must be available often enough
            let mut tgt = tgt.into_iter().peekable();
            'outer: for s in src {
                while let Some(&t) = tgt.peek() {
                    if t == s {
                        tgt.next();
                        continue 'outer;
                    }
                    if t > s {
                        return false;
                    }
                    tgt.next();
                }
                return false;
            }
            true
        }
    }
}

fn extend(
    source: &FinitePMetricSpace,
    target: &FinitePMetricSpace,
    mapping: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let i = mapping.len();
    if i == source.len() {
        return true;
    }
    for j in 0..target.len() {
        if used[j] || target.p(j, j) != source.p(i, i) {
            continue;
        }
        if (0..i).any(|k| target.p(mapping[k], j) != source.p(k, i)) {
            continue;
        }
        mapping.push(j);
        used[j] = true;
        if extend(source, target, mapping, used) {
            return true;
        }
        mapping.pop();
        used[j] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{one_point_x, two_point_y, FinitePMetricSpace};

    #[test]
    fn x1_does_not_biject_onto_y2() {
        assert_eq!(
            find_isometry(&one_point_x(), &two_point_y(), IsometryMode::Bijection),
            None
        );
    }

    #[test]
    fn x1_embeds_into_y2_at_a() {
        let w = find_isometry(&one_point_x(), &two_point_y(), IsometryMode::Embedding).unwrap();
        assert_eq!(w.mapping, vec![0]);
        assert!(w.verify(&one_point_x(), &two_point_y()));
    }

    #[test]
    fn identity_on_y2_is_least() {
        let y = two_point_y();
        let w = find_isometry(&y, &y, IsometryMode::Bijection).unwrap();
        assert_eq!(w.mapping, vec![0, 1]);
        assert!(w.verify(&y, &y));
        assert_eq!(w.inverse().unwrap().mapping, vec![0, 1]);
    }

    #[test]
    fn relabelled_spaces_are_isometric() {
        // same space with points swapped
        let y = two_point_y();
        let y_swapped = FinitePMetricSpace::from_ints(&[&[1, 1], &[1, 0]]).unwrap();
        let w = find_isometry(&y, &y_swapped, IsometryMode::Bijection).unwrap();
        assert_eq!(w.mapping, vec![1, 0]);
        assert!(w.verify(&y, &y_swapped));
        let back = find_isometry(&y_swapped, &y, IsometryMode::Bijection).unwrap();
        assert!(back.verify(&y_swapped, &y));
    }

    #[test]
    fn self_distance_mismatch_is_rejected_early() {
        let a = FinitePMetricSpace::from_ints(&[&[2]]).unwrap();
        assert_eq!(
            find_isometry(&a, &two_point_y(), IsometryMode::Embedding),
            None
        );
    }
}
