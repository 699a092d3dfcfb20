//! Small configurations where three-way compatibility fails, with
//! certificates recomputed by exhaustive enumeration.
//!
//! The coordinates were found by `cargo run --release --example
//! find_fixtures`, which searches random small configurations for the
//! forced-edge structure described below.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::geom::{Point, PointSet};
use crate::par;
use crate::tri::{enumerate_triangulations, find_compatibility_bijection, forced_edges, TriError, Triangulation};

/// Three six-point sets with a triangular hull and three interior points.
#[derive(Debug, Clone)]
pub struct ThreeWayFixture {
    /// Forces an edge from one hull vertex to every interior point.
    pub star: Arc<PointSet>,
    /// Forces the interior points to form a triangle.
    pub cycle: Arc<PointSet>,
    /// Admits neither structure together with the other two.
    pub third: Arc<PointSet>,
}

impl ThreeWayFixture {
    pub fn sets(&self) -> [Arc<PointSet>; 3] {
        [self.star.clone(), self.cycle.clone(), self.third.clone()]
    }
}

/// Three cells, each a clockwise triangle `0 1 2` with interior points `3 4`,
/// matched corner to corner.
#[derive(Debug, Clone)]
pub struct CellFixture {
    pub cells: [Arc<PointSet>; 3],
}

impl CellFixture {
    pub const CORNER_MAP: [(usize, usize); 3] = [(0, 0), (1, 1), (2, 2)];
}

fn point_set(coords: &[(i64, i64)]) -> Arc<PointSet> {
    Arc::new(
        PointSet::new(coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
            .expect("fixture is in general position"),
    )
}

const STAR: [(i64, i64); 6] = [(0, 0), (60, 100), (120, 0), (44, 26), (103, 13), (5, 3)];
const CYCLE: [(i64, i64); 6] = [(0, 0), (60, 100), (120, 0), (76, 25), (70, 66), (110, 6)];
const THIRD: [(i64, i64); 6] = [(0, 0), (60, 100), (120, 0), (42, 37), (76, 31), (42, 4)];

pub fn threeway_counterexample_fixture() -> ThreeWayFixture {
    ThreeWayFixture {
        star: point_set(&STAR),
        cycle: point_set(&CYCLE),
        third: point_set(&THIRD),
    }
}

const CELLS: [[(i64, i64); 5]; 3] = [
    [(0, 0), (60, 100), (120, 0), (12, 9), (37, 5)],
    [(0, 0), (60, 100), (120, 0), (52, 66), (102, 27)],
    [(0, 0), (60, 100), (120, 0), (24, 8), (41, 22)],
];

pub fn twopoint_cell_counterexample_fixture() -> CellFixture {
    CellFixture {
        cells: CELLS.map(|c| point_set(&c)),
    }
}

/// Result of the exhaustive three-way search.
#[derive(Debug, Clone)]
pub struct ThreeWayCertificate {
    pub triangulation_counts: [usize; 3],
    /// Whether some pair of triangulations is compatible, for the set pairs
    /// `(0, 1)`, `(0, 2)` and `(1, 2)`.
    pub pair_compatible: [bool; 3],
    /// Pairwise compatible triangulations of all three sets, if any exist.
    pub triple: Option<[Triangulation; 3]>,
}

fn compatibility_matrix(
    left: &[Triangulation],
    right: &[Triangulation],
    hull_map: Option<&[(usize, usize)]>,
) -> Vec<Vec<bool>> {
    par::map(left, |a| {
        right
            .iter()
            .map(|b| find_compatibility_bijection(a, b, hull_map).is_some())
            .collect()
    })
}

/// Searches all triangulation triples of `sets` for one that is pairwise
/// compatible. Compatibility composes, so a triple exists iff some
/// triangulation of the middle set is compatible with one of each other set.
/// With `hull_map`, every bijection must follow that hull correspondence.
pub fn threeway_certificate(
    sets: &[Arc<PointSet>; 3],
    hull_map: Option<&[(usize, usize)]>,
) -> Result<ThreeWayCertificate, TriError> {
    let all = [
        enumerate_triangulations(&sets[0])?,
        enumerate_triangulations(&sets[1])?,
        enumerate_triangulations(&sets[2])?,
    ];
    let m01 = compatibility_matrix(&all[0], &all[1], hull_map);
    let m02 = compatibility_matrix(&all[0], &all[2], hull_map);
    let m12 = compatibility_matrix(&all[1], &all[2], hull_map);
    let any = |m: &Vec<Vec<bool>>| m.iter().flatten().any(|&b| b);
    let triple = (0..all[1].len()).find_map(|b| {
        let a = (0..all[0].len()).find(|&a| m01[a][b])?;
        let c = (0..all[2].len()).find(|&c| m12[b][c])?;
        Some([all[0][a].clone(), all[1][b].clone(), all[2][c].clone()])
    });
    Ok(ThreeWayCertificate {
        triangulation_counts: [all[0].len(), all[1].len(), all[2].len()],
        pair_compatible: [any(&m01), any(&m02), any(&m12)],
        triple,
    })
}

fn interior_labels(s: &PointSet) -> Vec<usize> {
    let hull: BTreeSet<usize> = s.hull().into_iter().collect();
    (0..s.len()).filter(|l| !hull.contains(l)).collect()
}

/// A hull vertex joined to every interior point by forced edges.
pub fn forced_star_corner(s: &Arc<PointSet>) -> Result<Option<usize>, TriError> {
    let forced = forced_edges(s)?;
    let interior = interior_labels(s);
    Ok(s.hull().into_iter().find(|&h| {
        interior
            .iter()
            .all(|&i| forced.contains(&(h.min(i), h.max(i))))
    }))
}

/// The three interior points, when they are exactly three and all three
/// edges between them are forced.
pub fn forced_interior_cycle(s: &Arc<PointSet>) -> Result<Option<[usize; 3]>, TriError> {
    let forced = forced_edges(s)?;
    let interior = interior_labels(s);
    let &[a, b, c] = interior.as_slice() else {
        return Ok(None);
    };
    let all = [(a, b), (a, c), (b, c)].iter().all(|e| forced.contains(e));
    Ok(all.then_some([a, b, c]))
}

/// Degree argument for the cell fixture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCertificate {
    /// `forced_degree[i][c]`: forced edges at corner `c` in cell `i`.
    pub forced_degree: [[usize; 3]; 3],
    /// Every triangulation of every cell has a corner of degree 3.
    pub degree_three_corner_everywhere: bool,
    /// Every corner has at least four forced edges in some cell.
    pub every_corner_forced_four: bool,
}

impl DegreeCertificate {
    /// Together the two facts rule out a common triangulation: it would need
    /// a degree-3 corner that some cell forces to degree 4.
    pub fn rules_out_triple(&self) -> bool {
        self.degree_three_corner_everywhere && self.every_corner_forced_four
    }
}

pub fn twopoint_degree_certificate(cells: &[Arc<PointSet>; 3]) -> Result<DegreeCertificate, TriError> {
    let mut forced_degree = [[0; 3]; 3];
    let mut everywhere = true;
    for (i, cell) in cells.iter().enumerate() {
        let forced = forced_edges(cell)?;
        for (c, slot) in forced_degree[i].iter_mut().enumerate() {
            *slot = forced.iter().filter(|(a, b)| *a == c || *b == c).count();
        }
        everywhere &= enumerate_triangulations(cell)?
            .iter()
            .all(|t| (0..3).any(|c| t.degree(c) == 3));
    }
    let every_corner_forced_four = (0..3).all(|c| (0..3).any(|i| forced_degree[i][c] >= 4));
    Ok(DegreeCertificate {
        forced_degree,
        degree_three_corner_everywhere: everywhere,
        every_corner_forced_four,
    })
}
