//! Exhaustive enumeration of triangulations of small point sets.
//!
//! A triangulation is a maximal set of pairwise non-crossing segments, so the
//! triangulations are exactly the maximal independent sets of the segment
//! crossing graph. Edge sets are tracked as `u128` masks, which bounds the
//! usable cap at 16 points.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{clockwise_triple, Edge, TriError, Triangulation};
use crate::geom::{segments_conflict, Containment, PointSet, Triangle};
use crate::par;

pub const DEFAULT_ENUMERATION_CAP: usize = 10;
const HARD_CAP: usize = 16;

struct EdgeTable {
    edges: Vec<Edge>,
    /// `conflicts[e]`: edges that cross `e`.
    conflicts: Vec<u128>,
    /// Empty triangles with the mask of their three edges.
    empty_triangles: Vec<([usize; 3], u128)>,
}

impl EdgeTable {
    fn new(s: &PointSet) -> Self {
        let pts = s.points();
        let n = pts.len();
        let mut edges = Vec::new();
        let mut index = vec![vec![usize::MAX; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                index[i][j] = edges.len();
                index[j][i] = edges.len();
                edges.push((i, j));
            }
        }
        let conflicts = par::map_range(0..edges.len(), |e| {
            let (a, b) = edges[e];
            let mut mask = 0u128;
            for (f, &(c, d)) in edges.iter().enumerate() {
                if f != e && segments_conflict(&pts[a], &pts[b], &pts[c], &pts[d]) {
                    mask |= 1 << f;
                }
            }
            mask
        });
        let mut empty_triangles = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let Ok(t) = Triangle::new(pts[i].clone(), pts[j].clone(), pts[k].clone())
                    else {
                        continue;
                    };
                    let empty = (0..n)
                        .filter(|q| ![i, j, k].contains(q))
                        .all(|q| t.contains(&pts[q]) == Containment::Outside);
                    if empty {
                        let mask = (1u128 << index[i][j]) | (1 << index[j][k]) | (1 << index[i][k]);
                        empty_triangles.push((clockwise_triple(pts, [i, j, k]), mask));
                    }
                }
            }
        }
        EdgeTable { edges, conflicts, empty_triangles }
    }

    fn maximal_sets(&self) -> Vec<u128> {
        let mut out = Vec::new();
        self.extend(0, 0, &mut out);
        out
    }

    fn extend(&self, idx: usize, included: u128, out: &mut Vec<u128>) {
        if idx == self.edges.len() {
            let maximal = (0..self.edges.len())
                .all(|e| included & (1 << e) != 0 || self.conflicts[e] & included != 0);
            if maximal {
                out.push(included);
            }
            return;
        }
        let bit = 1u128 << idx;
        if self.conflicts[idx] & included != 0 {
            self.extend(idx + 1, included, out);
            return;
        }
        self.extend(idx + 1, included | bit, out);
        // Leaving the edge out only pays off if some later edge can block it.
        let later = self.conflicts[idx] & !((bit << 1) - 1);
        let blockable = (0..self.edges.len())
            .filter(|&f| later & (1 << f) != 0)
            .any(|f| self.conflicts[f] & included == 0);
        if blockable {
            self.extend(idx + 1, included, out);
        }
    }

    fn faces(&self, mask: u128) -> Vec<[usize; 3]> {
        self.empty_triangles
            .iter()
            .filter(|(_, m)| m & mask == *m)
            .map(|(t, _)| *t)
            .collect()
    }
}

fn check_cap(s: &PointSet, cap: usize) -> Result<(), TriError> {
    let cap = cap.min(HARD_CAP);
    if s.len() > cap {
        return Err(TriError::CapExceeded { found: s.len(), cap });
    }
    Ok(())
}

/// All triangulations of `s`, sorted by their triangle sets.
pub fn enumerate_triangulations(s: &Arc<PointSet>) -> Result<Vec<Triangulation>, TriError> {
    enumerate_triangulations_with_cap(s, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_triangulations_with_cap(
    s: &Arc<PointSet>,
    cap: usize,
) -> Result<Vec<Triangulation>, TriError> {
    check_cap(s, cap)?;
    if s.len() < 3 {
        return Ok(Vec::new());
    }
    let table = EdgeTable::new(s);
    let masks = table.maximal_sets();
    let mut out: Vec<Triangulation> = par::map(&masks, |&m| {
        Triangulation::new(s.clone(), table.faces(m)).expect("labels in range")
    });
    out.sort_by(|a, b| a.triangles().cmp(b.triangles()));
    Ok(out)
}

/// Edges present in every triangulation of `s`.
pub fn forced_edges(s: &Arc<PointSet>) -> Result<BTreeSet<Edge>, TriError> {
    forced_edges_with_cap(s, DEFAULT_ENUMERATION_CAP)
}

pub fn forced_edges_with_cap(s: &Arc<PointSet>, cap: usize) -> Result<BTreeSet<Edge>, TriError> {
    let all = enumerate_triangulations_with_cap(s, cap)?;
    let mut iter = all.iter();
    let Some(first) = iter.next() else {
        return Ok(BTreeSet::new());
    };
    let mut common = first.edges().clone();
    for t in iter {
        common = common.intersection(t.edges()).copied().collect();
    }
    Ok(common)
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::*;
    use crate::geom::Point;

    fn convex(n: usize) -> Arc<PointSet> {
        // Points on a parabola are in convex position with no three collinear.
        Arc::new(
            PointSet::new((0..n as i64).map(|i| Point::from_ints(i, i * i)).collect()).unwrap(),
        )
    }

    fn catalan(k: u64) -> u64 {
        // C_k = sum C_i C_{k-1-i}, computed directly.
        let mut c = vec![1u64; (k + 1) as usize];
        for m in 1..=k as usize {
            c[m] = (0..m).map(|i| c[i] * c[m - 1 - i]).sum();
        }
        c[k as usize]
    }

    #[test]
    fn convex_quadrilateral_has_two() {
        let all = enumerate_triangulations(&convex(4)).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn triangle_with_interior_point_has_one() {
        let s = set(&[(0, 0), (6, 0), (0, 6), (1, 2)]);
        let all = enumerate_triangulations(&s).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(forced_edges(&s).unwrap().len(), 6);
    }

    #[test]
    fn convex_counts_are_catalan() {
        assert_eq!(enumerate_triangulations(&convex(5)).unwrap().len(), 5);
        for n in 3..=8 {
            let all = enumerate_triangulations(&convex(n)).unwrap();
            assert_eq!(all.len() as u64, catalan(n as u64 - 2), "n = {n}");
            for t in &all {
                assert_eq!(t.validate(), Ok(()));
            }
        }
    }

    #[test]
    fn convex_forced_edges_are_hull_edges() {
        let s = convex(6);
        let hull = s.hull();
        let expected: BTreeSet<Edge> = (0..hull.len())
            .map(|i| {
                let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
                (a.min(b), a.max(b))
            })
            .collect();
        assert_eq!(forced_edges(&s).unwrap(), expected);
    }

    #[test]
    fn random_enumerations_are_valid_and_distinct() {
        let mut r = rng(21);
        for n in 4..=8 {
            let s = random_set(&mut r, n, 50);
            let all = enumerate_triangulations(&s).unwrap();
            assert!(!all.is_empty());
            let distinct: BTreeSet<_> = all.iter().map(|t| t.triangles().clone()).collect();
            assert_eq!(distinct.len(), all.len());
            let forced = forced_edges(&s).unwrap();
            for t in &all {
                assert_eq!(t.validate(), Ok(()));
                assert!(forced.is_subset(t.edges()));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let s = convex(11);
        assert_eq!(
            enumerate_triangulations(&s).unwrap_err(),
            TriError::CapExceeded { found: 11, cap: 10 }
        );
    }
}
