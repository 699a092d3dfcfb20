//! Cells of a triangle cut by the Y-sections of a point set.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use super::{PartitionError, YSection};
use crate::geom::{check_lemma5_conditions, cross_vec, line_intersection, orient, turn, Orientation, Point, Triangle};
use crate::rational::Rational;

fn half_plane(v: &Point) -> u8 {
    if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
        0
    } else {
        1
    }
}

/// Counter-clockwise angular order of direction vectors.
pub(crate) fn angle_cmp(u: &Point, v: &Point) -> Ordering {
    half_plane(u).cmp(&half_plane(v)).then_with(|| match turn(u, v) {
        Orientation::Ccw => Ordering::Less,
        Orientation::Cw => Ordering::Greater,
        Orientation::Collinear => Ordering::Equal,
    })
}

fn dot(u: &Point, v: &Point) -> Rational {
    &u.x * &v.x + &u.y * &v.y
}

/// Bounded faces of the planar subdivision formed by `segments`, each as a
/// counter-clockwise vertex cycle. The segments must form a connected
/// drawing.
fn bounded_faces(segments: &[(Point, Point)]) -> Vec<Vec<Point>> {
    // Points on each segment: endpoints plus every crossing.
    let mut on_segment: Vec<Vec<Point>> = segments
        .iter()
        .map(|(p, q)| vec![p.clone(), q.clone()])
        .collect();
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            let (p1, p2) = &segments[i];
            let (q1, q2) = &segments[j];
            let Some(x) = line_intersection(p1, p2, q1, q2) else {
                continue;
            };
            let within = |a: &Point, b: &Point| {
                let t = dot(&x.sub(a), &b.sub(a));
                !t.is_negative() && t <= dot(&b.sub(a), &b.sub(a))
            };
            if within(p1, p2) && within(q1, q2) {
                on_segment[i].push(x.clone());
                on_segment[j].push(x);
            }
        }
    }

    let mut ids: BTreeMap<Point, usize> = BTreeMap::new();
    let mut points: Vec<Point> = Vec::new();
    let mut id_of = |p: &Point, points: &mut Vec<Point>| -> usize {
        *ids.entry(p.clone()).or_insert_with(|| {
            points.push(p.clone());
            points.len() - 1
        })
    };
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for ((a, b), mut pts) in segments.iter().zip(on_segment) {
        let dir = b.sub(a);
        pts.sort_by_key(|x| dot(&x.sub(a), &dir));
        pts.dedup();
        for w in pts.windows(2) {
            let (u, v) = (id_of(&w[0], &mut points), id_of(&w[1], &mut points));
            edges.insert((u.min(v), u.max(v)));
        }
    }

    let mut around: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
    for &(u, v) in &edges {
        around[u].push(v);
        around[v].push(u);
    }
    for (v, nb) in around.iter_mut().enumerate() {
        nb.sort_by(|&a, &b| angle_cmp(&points[a].sub(&points[v]), &points[b].sub(&points[v])));
    }

    // Walk each directed edge once, keeping the face on the left.
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut faces = Vec::new();
    for &(u0, v0) in &edges {
        for start in [(u0, v0), (v0, u0)] {
            if used.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let (mut u, mut v) = start;
            loop {
                used.insert((u, v));
                cycle.push(u);
                let nb = &around[v];
                let at = nb.iter().position(|&w| w == u).expect("edge is symmetric");
                let w = nb[(at + nb.len() - 1) % nb.len()];
                (u, v) = (v, w);
                if (u, v) == start {
                    break;
                }
            }
            let area: Rational = (0..cycle.len())
                .map(|i| cross_vec(&points[cycle[i]], &points[cycle[(i + 1) % cycle.len()]]))
                .sum();
            if area.is_positive() {
                faces.push(cycle.into_iter().map(|i| points[i].clone()).collect());
            }
        }
    }
    faces
}

/// The cells of `t` cut by the Y-sections of every point of `s`, as
/// counter-clockwise polygons, in a deterministic order.
pub fn y_regions(s: &[Point], t: &Triangle) -> Result<Vec<Vec<Point>>, PartitionError> {
    check_lemma5_conditions(s, t).map_err(PartitionError::Preconditions)?;
    let v = t.vertices();
    let mut segments: Vec<(Point, Point)> = (0..3)
        .map(|k| (v[k].clone(), v[(k + 1) % 3].clone()))
        .collect();
    for p in s {
        segments.extend(YSection::new(p, t)?.rays());
    }
    Ok(bounded_faces(&segments))
}

pub fn count_y_regions(s: &[Point], t: &Triangle) -> Result<usize, PartitionError> {
    Ok(y_regions(s, t)?.len())
}

/// A point strictly inside a simple counter-clockwise polygon: the centroid
/// of an ear.
pub fn region_representative(polygon: &[Point]) -> Point {
    // Drop straight-through vertices first.
    let mut poly: Vec<Point> = polygon.to_vec();
    loop {
        let n = poly.len();
        let Some(i) = (0..n).find(|&i| {
            orient(&poly[(i + n - 1) % n], &poly[i], &poly[(i + 1) % n]) == Orientation::Collinear
        }) else {
            break;
        };
        poly.remove(i);
    }
    let n = poly.len();
    assert!(n >= 3, "degenerate polygon");
    for i in 0..n {
        let (a, b, c) = (&poly[(i + n - 1) % n], &poly[i], &poly[(i + 1) % n]);
        if orient(a, b, c) != Orientation::Ccw {
            continue;
        }
        let ear = Triangle::new(a.clone(), b.clone(), c.clone()).expect("convex corner");
        let clear = poly
            .iter()
            .filter(|q| *q != a && *q != b && *q != c)
            .all(|q| ear.contains(q) == crate::geom::Containment::Outside);
        if clear {
            return ear.centroid();
        }
    }
    unreachable!("every simple polygon has an ear")
}

/// Index of the region whose interior contains `d`, by crossing parity.
/// `d` must not lie on any region boundary.
pub fn locate_region(regions: &[Vec<Point>], d: &Point) -> Option<usize> {
    regions.iter().position(|poly| {
        let n = poly.len();
        let mut inside = false;
        for i in 0..n {
            let (p, q) = (&poly[i], &poly[(i + 1) % n]);
            if (p.y > d.y) != (q.y > d.y) {
                let x = &p.x + (&q.x - &p.x) * (&d.y - &p.y) / (&q.y - &p.y);
                if d.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    })
}
