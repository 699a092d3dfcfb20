//! Locating a trisection apex with prescribed child counts.
//!
//! The child containing a point `q` is decided by which side of each line
//! `corner -> q` the apex lies on, so the counts are constant on the cells of
//! the arrangement formed by those `3n` lines together with the triangle's
//! edge lines. Every such cell inside the triangle is a convex polygon with at
//! least one arrangement vertex on its boundary, so offsetting every vertex
//! into each of its incident cones visits every cell.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::regions::angle_cmp;
use super::{trisection_counts, PartitionError};
use crate::geom::lines::{meet, side, Coefficient, IntegerLines};
use crate::geom::{check_lemma5_conditions, cross, cross_vec, line_intersection, turn, Containment, Orientation, Point, Triangle};
use crate::par;
use crate::rational::{self, Rational};

/// Directed line through two points.
#[derive(Debug, Clone)]
pub(crate) struct Line {
    pub from: Point,
    pub to: Point,
    direction: Point,
}

impl Line {
    fn new(from: &Point, to: &Point) -> Self {
        Line {
            from: from.clone(),
            to: to.clone(),
            direction: to.sub(from),
        }
    }

    fn side(&self, p: &Point) -> Orientation {
        crate::geom::orient(&self.from, &self.to, p)
    }

    fn direction(&self) -> Point {
        self.direction.clone()
    }

    /// Parameter `λ > 0` at which `origin + λ dir` meets the line, if any.
    fn hit(&self, origin: &Point, dir: &Point) -> Option<Rational> {
        let denom = cross_vec(&self.direction, dir);
        if denom.is_zero() {
            return None;
        }
        let lambda = -cross(&self.from, &self.to, origin) / denom;
        lambda.is_positive().then_some(lambda)
    }
}

/// The corner-to-point lines of `s` (corner-major order) followed by the
/// three edge lines `a -> b`, `b -> c`, `c -> a`.
#[derive(Debug, Clone)]
pub(crate) struct Arrangement {
    pub n: usize,
    pub lines: Vec<Line>,
    equations: IntegerLines,
}

impl Arrangement {
    pub fn new(t: &Triangle, s: &[Point]) -> Self {
        let v = t.vertices();
        let mut lines = Vec::with_capacity(3 * s.len() + 3);
        for corner in v {
            for q in s {
                lines.push(Line::new(corner, q));
            }
        }
        for k in 0..3 {
            lines.push(Line::new(v[k], v[(k + 1) % 3]));
        }
        let segments: Vec<(&Point, &Point)> = lines.iter().map(|l| (&l.from, &l.to)).collect();
        let equations = IntegerLines::new(&segments);
        Arrangement {
            n: s.len(),
            lines,
            equations,
        }
    }

    /// Side of every line at `p`.
    pub fn signature(&self, p: &Point) -> Vec<Orientation> {
        self.lines.iter().map(|l| l.side(p)).collect()
    }

    /// Child counts for an apex whose side of each line is `sides`. `None`
    /// if the apex would not be strictly inside the triangle.
    fn counts(&self, sides: &[Orientation]) -> Option<[usize; 3]> {
        let n = self.n;
        if sides[3 * n..].iter().any(|&o| o != Orientation::Cw) {
            return None;
        }
        let mut counts = [0; 3];
        for q in 0..n {
            let k = (0..3).find(|&k| {
                sides[k * n + q] == Orientation::Cw && sides[((k + 1) % 3) * n + q] == Orientation::Ccw
            })?;
            counts[k] += 1;
        }
        Some(counts)
    }

    /// Side of every line at the meeting point of lines `i` and `j`.
    fn signature_at_meet(&self, [i, j]: [usize; 2]) -> Vec<Orientation> {
        fn sides<T: Coefficient>(eq: &[[T; 3]], i: usize, j: usize) -> Vec<Orientation> {
            let x = meet(&eq[i], &eq[j]);
            eq.iter().map(|l| side(l, &x)).collect()
        }
        match &self.equations {
            IntegerLines::Small(eq) => sides(eq, i, j),
            IntegerLines::Big(eq) => sides(eq, i, j),
        }
    }

    /// Arrangement vertices in the closed triangle with their incident lines
    /// and the first pair of lines found meeting there.
    fn vertices(&self, t: &Triangle) -> BTreeMap<Point, (Vec<usize>, [usize; 2])> {
        let mut out: BTreeMap<Point, (Vec<usize>, [usize; 2])> = BTreeMap::new();
        for i in 0..self.lines.len() {
            for j in i + 1..self.lines.len() {
                let (l, m) = (&self.lines[i], &self.lines[j]);
                let Some(x) = line_intersection(&l.from, &l.to, &m.from, &m.to) else {
                    continue;
                };
                if t.contains(&x) == Containment::Outside {
                    continue;
                }
                let (entry, _) = out.entry(x).or_insert_with(|| (Vec::new(), [i, j]));
                for k in [i, j] {
                    if !entry.contains(&k) {
                        entry.push(k);
                    }
                }
            }
        }
        out
    }

    /// Half the first parameter `λ` at which `origin + λ dir` meets a line
    /// not through `origin`; `None` if the ray meets none.
    pub fn safe_step(&self, origin: &Point, dir: &Point) -> Option<Rational> {
        self.lines
            .iter()
            .filter(|l| l.side(origin) != Orientation::Collinear)
            .filter_map(|l| l.hit(origin, dir))
            .min()
            .map(|m| m / rational::int(2))
    }

    /// A point strictly inside the cell entered from `vertex` along `dir`.
    fn cone_point(&self, vertex: &Point, dir: &Point) -> Point {
        let step = self.safe_step(vertex, dir).unwrap_or_else(|| rational::int(1));
        vertex.add(&dir.scale(&step))
    }

    /// Side of each line just off a vertex in direction `dir`, given the
    /// vertex's own signature `base`.
    fn cone_signature(&self, base: &[Orientation], incident: &[usize], dir: &Point) -> Vec<Orientation> {
        self.lines
            .iter()
            .enumerate()
            .map(|(i, l)| {
                if incident.contains(&i) {
                    turn(&l.direction, dir)
                } else {
                    base[i]
                }
            })
            .collect()
    }
}

/// Directions strictly inside each angular gap between consecutive lines
/// through a vertex.
fn cone_directions(lines: &[Line], incident: &[usize]) -> Vec<Point> {
    let mut dirs: Vec<Point> = incident
        .iter()
        .flat_map(|&i| {
            let d = lines[i].direction();
            let back = d.scale(&rational::int(-1));
            [d, back]
        })
        .collect();
    dirs.sort_by(angle_cmp);
    dirs.dedup_by(|a, b| angle_cmp(a, b).is_eq());
    let m = dirs.len();
    (0..m)
        .map(|i| {
            let (u, w) = (&dirs[i], &dirs[(i + 1) % m]);
            if turn(u, w) == Orientation::Ccw {
                u.add(w)
            } else {
                // Half-turn gap: turn `u` a quarter counter-clockwise.
                Point::new(-u.y.clone(), u.x.clone())
            }
        })
        .collect()
}

/// A point `d` strictly inside `t` whose trisection puts exactly `target[k]`
/// points of `s` in child `k`. Zero entries are allowed.
pub fn find_trisection_point(
    t: &Triangle,
    s: &[Point],
    target: [usize; 3],
) -> Result<Point, PartitionError> {
    let sum: usize = target.iter().sum();
    if sum != s.len() {
        return Err(PartitionError::TargetSum {
            sum,
            expected: s.len(),
        });
    }
    check_lemma5_conditions(s, t).map_err(PartitionError::Preconditions)?;
    if s.is_empty() {
        return Ok(t.centroid());
    }
    let arrangement = Arrangement::new(t, s);
    let vertices: Vec<(Point, (Vec<usize>, [usize; 2]))> = arrangement.vertices(t).into_iter().collect();
    let found = par::find_map_first(&vertices, |(vertex, (incident, pair))| {
        let base = arrangement.signature_at_meet(*pair);
        cone_directions(&arrangement.lines, incident)
            .into_iter()
            .find(|dir| arrangement.counts(&arrangement.cone_signature(&base, incident, dir)) == Some(target))
            .map(|dir| arrangement.cone_point(vertex, &dir))
    });
    let d = found.ok_or(PartitionError::NoCell(target))?;
    debug_assert_eq!(trisection_counts(&d, t, s), Ok(target));
    Ok(d)
}
