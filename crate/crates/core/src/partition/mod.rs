//! Y-sections, trisections and the partition of a point set by an embedded
//! series-triangular graph.

mod embed;
mod regions;
mod search;

use thiserror::Error;

use crate::geom::{Containment, Lemma5Violation, Point, Triangle};

pub use embed::{embed_partition, embed_partition_with, EmbedOptions, OrderedEmbedding};
pub use regions::{count_y_regions, locate_region, region_representative, y_regions};
pub use search::find_trisection_point;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("apex is not strictly inside the triangle")]
    ApexNotInterior,
    #[error("point {0} is not strictly inside the triangle")]
    PointOutside(usize),
    #[error("point {0} lies on a trisection segment")]
    OnSegment(usize),
    #[error("position conditions violated: {0}")]
    Preconditions(Lemma5Violation),
    #[error("targets sum to {sum}, expected {expected}")]
    TargetSum { sum: usize, expected: usize },
    #[error("{found} targets given for {expected} triangles")]
    TargetLength { found: usize, expected: usize },
    #[error("no cell realises the target {0:?}")]
    NoCell([usize; 3]),
    #[error("could not place the enclosing triangle in general position after {attempts} attempts")]
    RootPlacement { attempts: u32 },
    #[error(
        "vertex {vertex}: no valid placement after {attempts} perturbations \
         (largest coordinate has {max_coordinate_bits} bits)"
    )]
    RetriesExhausted {
        vertex: usize,
        attempts: usize,
        max_coordinate_bits: u64,
    },
}

/// The three halflines from `center` pointing away from the corners of the
/// enclosing triangle, clipped at the triangle boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YSection {
    pub center: Point,
    /// Ray `k` is directed away from corner `k`; stored as its far endpoint on
    /// the opposite side.
    pub ends: [Point; 3],
}

impl YSection {
    pub fn new(center: &Point, t: &Triangle) -> Result<Self, PartitionError> {
        if !t.contains_strictly(center) {
            return Err(PartitionError::PointOutside(0));
        }
        let v = t.vertices();
        let ends = [0, 1, 2].map(|k| {
            let (p, q) = (v[(k + 1) % 3], v[(k + 2) % 3]);
            crate::geom::line_intersection(v[k], center, p, q).expect("interior point")
        });
        Ok(YSection {
            center: center.clone(),
            ends,
        })
    }

    pub fn rays(&self) -> [(Point, Point); 3] {
        self.ends.clone().map(|e| (self.center.clone(), e))
    }
}

/// A triangle cut into three by segments from its corners to `apex`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trisection {
    pub outer: Triangle,
    pub apex: Point,
    /// `(a, b, d)`, `(b, c, d)`, `(c, a, d)`.
    pub children: [Triangle; 3],
}

impl Trisection {
    pub fn new(outer: &Triangle, apex: &Point) -> Result<Self, PartitionError> {
        if !outer.contains_strictly(apex) {
            return Err(PartitionError::ApexNotInterior);
        }
        let v = outer.vertices();
        let children = [0, 1, 2].map(|k| {
            let child = Triangle::new(v[k].clone(), v[(k + 1) % 3].clone(), apex.clone())
                .expect("apex is interior");
            debug_assert!(&child.a == v[k]);
            child
        });
        Ok(Trisection {
            outer: outer.clone(),
            apex: apex.clone(),
            children,
        })
    }

    /// Index of the child strictly containing `p`.
    fn locate(&self, p: &Point, label: usize) -> Result<usize, PartitionError> {
        if !self.outer.contains_strictly(p) {
            return Err(PartitionError::PointOutside(label));
        }
        for (k, child) in self.children.iter().enumerate() {
            match child.contains(p) {
                Containment::Inside => return Ok(k),
                Containment::Boundary => return Err(PartitionError::OnSegment(label)),
                Containment::Outside => {}
            }
        }
        Err(PartitionError::OnSegment(label))
    }

    /// Points of `s` per child, by index into `s`.
    pub fn assign(&self, s: &[Point]) -> Result<[Vec<usize>; 3], PartitionError> {
        let mut out: [Vec<usize>; 3] = Default::default();
        for (i, p) in s.iter().enumerate() {
            out[self.locate(p, i)?].push(i);
        }
        Ok(out)
    }
}

/// Number of points of `s` strictly inside each child of the trisection of
/// `t` at `d`.
pub fn trisection_counts(d: &Point, t: &Triangle, s: &[Point]) -> Result<[usize; 3], PartitionError> {
    let tri = Trisection::new(t, d)?;
    let mut counts = [0; 3];
    for (i, p) in s.iter().enumerate() {
        counts[tri.locate(p, i)?] += 1;
    }
    Ok(counts)
}

/// All `(x, y, z)` with `x + y + z = n`, in lexicographic order.
pub fn compositions(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for x in 0..=n {
        for y in 0..=n - x {
            out.push([x, y, n - x - y]);
        }
    }
    out
}
