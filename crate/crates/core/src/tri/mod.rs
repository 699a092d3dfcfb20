//! Triangulations as combinatorial objects over a labeled point set.

mod build;
mod enumerate;
mod matching;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::geom::{self, orient, Orientation, Point, PointSet};
use crate::par;
use crate::rational::Rational;

pub use build::triangulate_greedy;
pub use enumerate::{
    enumerate_triangulations, enumerate_triangulations_with_cap, forced_edges,
    forced_edges_with_cap, DEFAULT_ENUMERATION_CAP,
};
pub use matching::{
    compatible_triangulation_small, find_compatibility_bijection, is_compatible,
    oriented_hull_preserved,
};

pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriError {
    #[error("label {label} out of range for a set of {len} points")]
    LabelOutOfRange { label: usize, len: usize },
    #[error("triangle {0:?} repeats a label")]
    RepeatedLabel([usize; 3]),
    #[error("point set has {found} points, the enumeration cap is {cap}")]
    CapExceeded { found: usize, cap: usize },
    #[error("point sets differ in size ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("mapping is not a bijection on {0} labels")]
    NotBijective(usize),
}

/// A way in which a claimed triangulation is invalid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Defect {
    NotClockwise([usize; 3]),
    NotEmpty { triangle: [usize; 3], point: usize },
    Crossing { first: Edge, second: Edge },
    NotMaximal { edges: usize, expected_edges: usize, covered: bool },
    TriangleCount { found: usize, expected: usize },
}

impl Defect {
    /// Short name of the invariant this defect violates.
    pub fn check(&self) -> &'static str {
        match self {
            Defect::NotClockwise(_) => "orientation",
            Defect::NotEmpty { .. } => "emptiness",
            Defect::Crossing { .. } => "non_crossing",
            Defect::NotMaximal { .. } => "maximality",
            Defect::TriangleCount { .. } => "triangle_count",
        }
    }
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::NotClockwise(t) => write!(f, "triangle {t:?} is not clockwise"),
            Defect::NotEmpty { triangle, point } => {
                write!(f, "point {point} lies inside triangle {triangle:?}")
            }
            Defect::Crossing { first, second } => write!(f, "edges {first:?} and {second:?} cross"),
            Defect::NotMaximal { edges, expected_edges, covered } => write!(
                f,
                "{edges} edges (a triangulation has {expected_edges}); hull covered: {covered}"
            ),
            Defect::TriangleCount { found, expected } => {
                write!(f, "{found} triangles, expected {expected}")
            }
        }
    }
}

/// Rotates a triple so its least label comes first, keeping cyclic order.
pub fn canonical_triple(t: [usize; 3]) -> [usize; 3] {
    let [a, b, c] = t;
    if a < b && a < c {
        [a, b, c]
    } else if b < a && b < c {
        [b, c, a]
    } else {
        [c, a, b]
    }
}

/// The triple reordered clockwise with respect to `points`, then canonicalized.
/// Collinear triples keep their order.
pub fn clockwise_triple(points: &[Point], t: [usize; 3]) -> [usize; 3] {
    let [a, b, c] = t;
    match orient(&points[a], &points[b], &points[c]) {
        Orientation::Ccw => canonical_triple([a, c, b]),
        _ => canonical_triple(t),
    }
}

/// Number of triangles in any triangulation of `n` points with `hull`
/// extreme points.
pub fn expected_triangle_count(n: usize, hull: usize) -> usize {
    (2 * n).saturating_sub(2 + hull)
}

pub fn expected_edge_count(n: usize, hull: usize) -> usize {
    (3 * n).saturating_sub(3 + hull)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    base: Arc<PointSet>,
    triangles: BTreeSet<[usize; 3]>,
    edges: BTreeSet<Edge>,
}

impl Triangulation {
    /// Wraps the given triangles. Triples are rotation-canonicalized but not
    /// reoriented, so a stored counter-clockwise triple is reported by
    /// [`Triangulation::defects`].
    pub fn new(
        base: Arc<PointSet>,
        triangles: impl IntoIterator<Item = [usize; 3]>,
    ) -> Result<Self, TriError> {
        let len = base.len();
        let mut set = BTreeSet::new();
        for t in triangles {
            if let Some(&label) = t.iter().find(|&&l| l >= len) {
                return Err(TriError::LabelOutOfRange { label, len });
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(TriError::RepeatedLabel(t));
            }
            set.insert(canonical_triple(t));
        }
        let edges = edges_of(&set);
        Ok(Triangulation { base, triangles: set, edges })
    }

    /// Like [`Triangulation::new`] but orients every triple clockwise first.
    pub fn from_faces(
        base: Arc<PointSet>,
        faces: impl IntoIterator<Item = [usize; 3]>,
    ) -> Result<Self, TriError> {
        let oriented: Vec<[usize; 3]> = {
            let pts = base.points();
            let len = pts.len();
            faces
                .into_iter()
                .map(|t| {
                    if t.iter().all(|&l| l < len) {
                        clockwise_triple(pts, t)
                    } else {
                        t
                    }
                })
                .collect()
        };
        Triangulation::new(base, oriented)
    }

    pub fn base(&self) -> &PointSet {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<PointSet> {
        &self.base
    }

    pub fn triangles(&self) -> &BTreeSet<[usize; 3]> {
        &self.triangles
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Triangles as geometrically clockwise canonical triples, whatever the
    /// stored order.
    pub fn oriented_faces(&self) -> BTreeSet<[usize; 3]> {
        let pts = self.base.points();
        self.triangles.iter().map(|&t| clockwise_triple(pts, t)).collect()
    }

    pub fn degree(&self, label: usize) -> usize {
        self.edges.iter().filter(|(a, b)| *a == label || *b == label).count()
    }

    /// Every violated invariant, grouped in check order: orientation,
    /// emptiness, crossings, maximality, triangle count.
    pub fn defects(&self) -> Vec<Defect> {
        let pts = self.base.points();
        let mut defects = Vec::new();

        for &t in &self.triangles {
            if orient(&pts[t[0]], &pts[t[1]], &pts[t[2]]) != Orientation::Cw {
                defects.push(Defect::NotClockwise(t));
            }
        }

        let tris: Vec<[usize; 3]> = self.triangles.iter().copied().collect();
        let empties = par::map(&tris, |&t| {
            let [a, b, c] = clockwise_triple(pts, t);
            let Ok(tri) = geom::Triangle::new(pts[a].clone(), pts[b].clone(), pts[c].clone())
            else {
                return None;
            };
            (0..pts.len())
                .filter(|q| !t.contains(q))
                .find(|&q| tri.contains(&pts[q]) != geom::Containment::Outside)
                .map(|point| Defect::NotEmpty { triangle: t, point })
        });
        defects.extend(empties.into_iter().flatten());

        let edges: Vec<Edge> = self.edges.iter().copied().collect();
        let crossings = par::map_range(0..edges.len(), |i| {
            let (a, b) = edges[i];
            edges[i + 1..].iter().find_map(|&(c, d)| {
                geom::segments_conflict(&pts[a], &pts[b], &pts[c], &pts[d])
                    .then_some(Defect::Crossing { first: (a, b), second: (c, d) })
            })
        });
        defects.extend(crossings.into_iter().flatten());

        let hull = self.base.hull();
        let expected_edges = expected_edge_count(pts.len(), hull.len());
        let covered = self.covers_hull(&hull);
        if self.edges.len() != expected_edges || !covered {
            defects.push(Defect::NotMaximal {
                edges: self.edges.len(),
                expected_edges,
                covered,
            });
        }

        let expected = expected_triangle_count(pts.len(), hull.len());
        if self.triangles.len() != expected {
            defects.push(Defect::TriangleCount {
                found: self.triangles.len(),
                expected,
            });
        }
        defects
    }

    pub fn validate(&self) -> Result<(), Defect> {
        match self.defects().into_iter().next() {
            Some(d) => Err(d),
            None => Ok(()),
        }
    }

    /// Total triangle area equals hull area.
    fn covers_hull(&self, hull: &[usize]) -> bool {
        let pts = self.base.points();
        if hull.len() < 3 {
            return self.triangles.is_empty();
        }
        let mut hull_area = Rational::zero();
        for i in 0..hull.len() {
            let p = &pts[hull[i]];
            let q = &pts[hull[(i + 1) % hull.len()]];
            hull_area += geom::cross_vec(p, q);
        }
        let total: Rational = self
            .triangles
            .iter()
            .map(|t| geom::cross(&pts[t[0]], &pts[t[1]], &pts[t[2]]).abs())
            .sum();
        hull_area.abs() == total
    }
}

fn edges_of(triangles: &BTreeSet<[usize; 3]>) -> BTreeSet<Edge> {
    let mut edges = BTreeSet::new();
    for t in triangles {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    edges
}

/// A bijection between the labels of two equal-size point sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bijection {
    forward: Vec<usize>,
}

impl Bijection {
    pub fn new(forward: Vec<usize>) -> Result<Self, TriError> {
        let n = forward.len();
        let mut seen = vec![false; n];
        for &v in &forward {
            if v >= n || seen[v] {
                return Err(TriError::NotBijective(n));
            }
            seen[v] = true;
        }
        Ok(Bijection { forward })
    }

    pub fn identity(n: usize) -> Self {
        Bijection { forward: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn apply(&self, label: usize) -> usize {
        self.forward[label]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.forward
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.forward.len()];
        for (i, &v) in self.forward.iter().enumerate() {
            inv[v] = i;
        }
        Bijection { forward: inv }
    }

    /// `other ∘ self`: apply `self`, then `other`.
    pub fn then(&self, other: &Bijection) -> Self {
        Bijection {
            forward: self.forward.iter().map(|&v| other.forward[v]).collect(),
        }
    }
}
