//! Preconditions for Y-section partitioning inside a triangle.
//!
//! For points `S` strictly inside a triangle `T = (a, b, c)`:
//!
//! 1. `S ∪ {a, b, c}` has no three collinear points;
//! 2. among the lines joining a corner of `T` to a point of `S`, no three are
//!    concurrent at a point strictly inside `T`. The three lines through a
//!    single point of `S` meet there by construction and are exempt.

use std::fmt;

use super::lines::{meet, side, Coefficient, IntegerLines};
use super::{line_intersection, orient, Orientation, Point, Triangle};
use crate::par;

/// A point in a triangle-relative configuration: one of the three corners or
/// an input point (by index into the slice that was checked).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    Corner(u8),
    Point(usize),
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Corner(k) => write!(f, "corner {}", ["a", "b", "c"][*k as usize]),
            Site::Point(i) => write!(f, "point {i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lemma5Violation {
    /// Three members of `S ∪ {a, b, c}` are collinear (or two coincide, or a
    /// point is not strictly inside the triangle).
    NotGeneralPosition([Site; 3]),
    /// Three corner-to-point lines meet at `at`, an interior point of `T`.
    /// Each line is given as `(corner, point index)`.
    Concurrent { lines: [(u8, usize); 3], at: Point },
}

impl fmt::Display for Lemma5Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lemma5Violation::NotGeneralPosition([x, y, z]) => {
                write!(f, "{x}, {y} and {z} are collinear")
            }
            Lemma5Violation::Concurrent { lines, at } => {
                let names: Vec<String> = lines
                    .iter()
                    .map(|(c, p)| format!("{}{}", ["a", "b", "c"][*c as usize], p))
                    .collect();
                write!(f, "lines {} meet at {:?}", names.join(", "), at)
            }
        }
    }
}

fn site_point<'a>(t: &'a Triangle, points: &'a [Point], site: Site) -> &'a Point {
    match site {
        Site::Corner(k) => t.vertices()[k as usize],
        Site::Point(i) => &points[i],
    }
}

/// Exhaustive exact check of both conditions. Condition 2 enumerates every
/// triple of corner-to-point lines.
pub fn check_lemma5_conditions(points: &[Point], t: &Triangle) -> Result<(), Lemma5Violation> {
    let n = points.len();

    // Condition 1: general position of the combined set. Triples made only of
    // corners are fine since the triangle is non-degenerate.
    let mut sites: Vec<Site> = (0..3).map(Site::Corner).collect();
    sites.extend((0..n).map(Site::Point));
    let m = sites.len();
    if let Some(triple) = par::find_map_first_range(0..m, |i| {
        for j in i + 1..m {
            for k in j + 1..m {
                if k < 3 {
                    continue;
                }
                let (p, q, r) = (
                    site_point(t, points, sites[i]),
                    site_point(t, points, sites[j]),
                    site_point(t, points, sites[k]),
                );
                if orient(p, q, r) == Orientation::Collinear {
                    return Some([sites[i], sites[j], sites[k]]);
                }
            }
        }
        None
    }) {
        return Err(Lemma5Violation::NotGeneralPosition(triple));
    }
    // Strict interiority is part of the precondition; report it the same way.
    if let Some(i) = (0..n).find(|&i| !t.contains_strictly(&points[i])) {
        return Err(Lemma5Violation::NotGeneralPosition([
            Site::Corner(0),
            Site::Corner(1),
            Site::Point(i),
        ]));
    }

    // Condition 2.
    let lines: Vec<(u8, usize)> = (0..3u8)
        .flat_map(|k| (0..n).map(move |i| (k, i)))
        .collect();
    let corner = |k: u8| t.vertices()[k as usize];
    let segments: Vec<(&Point, &Point)> = lines.iter().map(|&(k, i)| (corner(k), &points[i])).collect();
    let hit = match IntegerLines::new(&segments) {
        IntegerLines::Small(eq) => first_concurrent(&lines, &eq, points, t),
        IntegerLines::Big(eq) => first_concurrent(&lines, &eq, points, t),
    };
    match hit {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

fn first_concurrent<T: Coefficient>(
    lines: &[(u8, usize)],
    coefficients: &[[T; 3]],
    points: &[Point],
    t: &Triangle,
) -> Option<Lemma5Violation> {
    let corner = |k: u8| t.vertices()[k as usize];
    let count = lines.len();
    par::find_map_first_range(0..count, |l1| {
        let (c1, p1) = lines[l1];
        for l2 in l1 + 1..count {
            let (c2, p2) = lines[l2];
            // Same corner: they meet at the corner. Same point: they meet there.
            if c1 == c2 || p1 == p2 {
                continue;
            }
            let w = meet(&coefficients[l1], &coefficients[l2]);
            if w[2].is_zero() {
                continue;
            }
            for (l3, eq) in coefficients.iter().enumerate().skip(l2 + 1) {
                if side(eq, &w) != Orientation::Collinear {
                    continue;
                }
                let Some(x) = line_intersection(corner(c1), &points[p1], corner(c2), &points[p2]) else {
                    continue;
                };
                if t.contains_strictly(&x) {
                    return Some(Lemma5Violation::Concurrent {
                        lines: [(c1, p1), (c2, p2), lines[l3]],
                        at: x,
                    });
                }
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    use crate::rational::Rational;
    use num_bigint::BigInt;
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn big_triangle() -> Triangle {
        Triangle::new(p(0, 0), p(60, 0), p(0, 60)).unwrap()
    }

    #[test]
    fn empty_set_is_fine() {
        assert_eq!(check_lemma5_conditions(&[], &big_triangle()), Ok(()));
    }

    #[test]
    fn collinear_with_two_corners() {
        // Both points sit on one line through corner (0,0).
        let t = big_triangle();
        let pts = vec![p(10, 10), p(20, 20)];
        let err = check_lemma5_conditions(&pts, &t).unwrap_err();
        assert!(matches!(err, Lemma5Violation::NotGeneralPosition(_)));
    }

    #[test]
    fn forced_concurrency_is_detected() {
        // Lines a-p0, b-p1 and c-p2 are the three medians of the triangle and
        // meet at the centroid (20, 20).
        let t = big_triangle();
        let pts = vec![p(25, 25), p(15, 30), p(30, 15)];
        let res = check_lemma5_conditions(&pts, &t);
        match res {
            Err(Lemma5Violation::Concurrent { at, .. }) => assert_eq!(at, p(20, 20)),
            other => panic!("expected concurrency, got {other:?}"),
        }
    }

    /// Independent oracle: all pairwise intersections, grouped by point,
    /// counting distinct incident lines per interior point.
    fn oracle_ok(points: &[Point], t: &Triangle) -> bool {
        let corners = t.vertices();
        let mut all: Vec<&Point> = corners.to_vec();
        all.extend(points.iter());
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                for k in j + 1..all.len() {
                    if k >= 3 && orient(all[i], all[j], all[k]) == Orientation::Collinear {
                        return false;
                    }
                }
            }
        }
        let lines: Vec<(&Point, &Point)> = corners
            .iter()
            .flat_map(|c| points.iter().map(move |q| (*c, q)))
            .collect();
        let mut incidence: HashMap<Point, Vec<usize>> = HashMap::new();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if let Some(x) = line_intersection(lines[i].0, lines[i].1, lines[j].0, lines[j].1) {
                    if t.contains_strictly(&x) && !points.contains(&x) {
                        let entry = incidence.entry(x).or_default();
                        for l in [i, j] {
                            if !entry.contains(&l) {
                                entry.push(l);
                            }
                        }
                    }
                }
            }
        }
        incidence.values().all(|ls| ls.len() <= 2)
    }

    #[test]
    fn agrees_with_pairwise_oracle() {
        let t = big_triangle();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut violations = 0;
        for trial in 0..300 {
            let n = 1 + trial % 6;
            // A coarse grid makes degeneracies common enough to exercise both
            // outcomes.
            let grid = if trial % 2 == 0 { 12 } else { 1000 };
            let pts: Vec<Point> = (0..n)
                .map(|_| loop {
                    let x = Rational::new((60 * rng.gen_range(1..grid)).into(), grid.into());
                    let y = Rational::new((60 * rng.gen_range(1..grid)).into(), grid.into());
                    let q = Point::new(x, y);
                    if t.contains_strictly(&q) {
                        break q;
                    }
                })
                .collect();
            let mut dedup = pts.clone();
            dedup.sort();
            dedup.dedup();
            if dedup.len() != pts.len() {
                continue;
            }
            let got = check_lemma5_conditions(&pts, &t).is_ok();
            assert_eq!(got, oracle_ok(&pts, &t), "points {pts:?}");
            // Past the machine-integer range the verdict must not change.
            let big = Rational::from_integer(BigInt::one() << 70);
            let lift = |q: &Point| Point::new(&q.x * &big, &q.y * &big);
            let [a, b, c] = t.vertices();
            let tb = Triangle::new(lift(a), lift(b), lift(c)).unwrap();
            let pb: Vec<Point> = pts.iter().map(lift).collect();
            assert_eq!(check_lemma5_conditions(&pb, &tb).is_ok(), got);
            if !got {
                violations += 1;
            }
        }
        assert!(violations > 0);
    }
}
