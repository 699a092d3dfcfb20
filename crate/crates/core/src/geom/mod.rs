//! Exact planar primitives.
//!
//! Every predicate here is decided on arbitrary-precision rationals, so the
//! answers are signs of exact values and never depend on rounding. The
//! orientation convention is y-up: a positive cross product is a
//! counter-clockwise turn. Triangles are always stored clockwise.

mod disk;
mod hull;
mod lemma5;
pub(crate) mod lines;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::par;
use crate::rational::{self, Rational};

pub use disk::{bounding_triangle, bounding_triangle_attempt, smallest_enclosing_disk, Disk, Rotation};
pub use hull::convex_hull;
pub use lemma5::{check_lemma5_conditions, Lemma5Violation, Site};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },
    #[error("points {0:?} are collinear")]
    Collinear([usize; 3]),
    #[error("triangle vertices are collinear")]
    DegenerateTriangle,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(rational::int(x), rational::int(y))
    }

    pub fn from_ratios((xn, xd): (i64, i64), (yn, yd): (i64, i64)) -> Self {
        Point::new(rational::ratio(xn, xd), rational::ratio(yn, yd))
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn scale(&self, factor: &Rational) -> Point {
        Point::new(&self.x * factor, &self.y * factor)
    }

    pub fn dist2(&self, other: &Point) -> Rational {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Point, t: &Rational) -> Point {
        Point::new(
            &self.x + (&other.x - &self.x) * t,
            &self.y + (&other.y - &self.y) * t,
        )
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rational::to_f64(&self.x), rational::to_f64(&self.y))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Centroid of a non-empty list of points.
pub fn centroid(points: &[Point]) -> Point {
    let n = rational::int(points.len() as i64);
    let (sx, sy) = points.iter().fold(
        (Rational::zero(), Rational::zero()),
        |(sx, sy), p| (sx + &p.x, sy + &p.y),
    );
    Point::new(sx / &n, sy / n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Cw,
    Ccw,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Cw => Orientation::Ccw,
            Orientation::Ccw => Orientation::Cw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }

    pub fn of_sign(value: &Rational) -> Self {
        if value.is_positive() {
            Orientation::Ccw
        } else if value.is_negative() {
            Orientation::Cw
        } else {
            Orientation::Collinear
        }
    }
}

/// `(q - p) x (r - p)`: twice the signed area of `p, q, r`.
pub fn cross(p: &Point, q: &Point, r: &Point) -> Rational {
    (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x)
}

/// Cross product of two vectors.
pub fn cross_vec(u: &Point, v: &Point) -> Rational {
    &u.x * &v.y - &u.y * &v.x
}

pub fn orient(p: &Point, q: &Point, r: &Point) -> Orientation {
    if let Some(o) = orient_small(p, q, r) {
        return o;
    }
    // Sign of the cross product with every difference kept as an unreduced
    // fraction over a positive denominator.
    let diff = |a: &Rational, b: &Rational| -> (BigInt, BigInt) {
        if a.denom() == b.denom() {
            (a.numer() - b.numer(), a.denom().clone())
        } else {
            (a.numer() * b.denom() - b.numer() * a.denom(), a.denom() * b.denom())
        }
    };
    let (n1, d1) = diff(&q.x, &p.x);
    let (n2, d2) = diff(&r.y, &p.y);
    let (n3, d3) = diff(&q.y, &p.y);
    let (n4, d4) = diff(&r.x, &p.x);
    let lhs = n1 * n2 * &d3 * &d4;
    let rhs = n3 * n4 * d1 * d2;
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => Orientation::Ccw,
        std::cmp::Ordering::Less => Orientation::Cw,
        std::cmp::Ordering::Equal => Orientation::Collinear,
    }
}

/// Sign of `cross_vec(u, v)`, computed like [`orient`].
pub fn turn(u: &Point, v: &Point) -> Orientation {
    orient(&Point::from_ints(0, 0), u, v)
}

/// Machine-integer path for integer coordinates below `2^60` in magnitude.
fn orient_small(p: &Point, q: &Point, r: &Point) -> Option<Orientation> {
    const LIMIT: i64 = 1 << 60;
    let small = |v: &Rational| -> Option<i128> {
        if !v.denom().is_one() {
            return None;
        }
        let x = v.numer().to_i64()?;
        (x.unsigned_abs() < LIMIT as u64).then_some(x as i128)
    };
    let (px, py) = (small(&p.x)?, small(&p.y)?);
    let (qx, qy) = (small(&q.x)?, small(&q.y)?);
    let (rx, ry) = (small(&r.x)?, small(&r.y)?);
    let value = (qx - px) * (ry - py) - (qy - py) * (rx - px);
    Some(match value.signum() {
        1 => Orientation::Ccw,
        -1 => Orientation::Cw,
        _ => Orientation::Collinear,
    })
}

/// Labeled point collection with no duplicates and no three collinear points.
/// Labels are positions in the list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self, GeomError> {
        let mut seen: HashMap<&Point, usize> = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if let Some(&first) = seen.get(p) {
                return Err(GeomError::DuplicatePoint { first, second: i });
            }
            seen.insert(p, i);
        }
        if let Some(triple) = find_collinear_triple(&points) {
            return Err(GeomError::Collinear(triple));
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, label: usize) -> &Point {
        &self.points[label]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    pub fn hull(&self) -> Vec<usize> {
        convex_hull(&self.points)
    }
}

/// First collinear triple `i < j < k` in lexicographic order, if any.
pub fn find_collinear_triple(points: &[Point]) -> Option<[usize; 3]> {
    let n = points.len();
    par::find_map_first_range(0..n, |i| {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient(&points[i], &points[j], &points[k]) == Orientation::Collinear {
                    return Some([i, j, k]);
                }
            }
        }
        None
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Triangle {
    pub a: Point,
    pub b: Point,
    pub c: Point,
}

impl Triangle {
    /// Builds a triangle, swapping `b` and `c` when the input is
    /// counter-clockwise.
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self, GeomError> {
        match orient(&a, &b, &c) {
            Orientation::Cw => Ok(Triangle { a, b, c }),
            Orientation::Ccw => Ok(Triangle { a, b: c, c: b }),
            Orientation::Collinear => Err(GeomError::DegenerateTriangle),
        }
    }

    pub fn vertices(&self) -> [&Point; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn centroid(&self) -> Point {
        centroid(&[self.a.clone(), self.b.clone(), self.c.clone()])
    }

    /// Twice the (positive) area.
    pub fn double_area(&self) -> Rational {
        cross(&self.a, &self.b, &self.c).abs()
    }

    pub fn contains(&self, p: &Point) -> Containment {
        point_in_triangle(p, self)
    }

    pub fn contains_strictly(&self, p: &Point) -> bool {
        point_in_triangle(p, self) == Containment::Inside
    }

    pub fn max_vertex_dist2(&self, center: &Point) -> Rational {
        self.vertices()
            .into_iter()
            .map(|v| v.dist2(center))
            .max()
            .expect("three vertices")
    }
}

impl fmt::Debug for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Triangle[{:?}, {:?}, {:?}]", self.a, self.b, self.c)
    }
}

pub fn point_in_triangle(p: &Point, t: &Triangle) -> Containment {
    let signs = [
        orient(&t.a, &t.b, p),
        orient(&t.b, &t.c, p),
        orient(&t.c, &t.a, p),
    ];
    if signs.contains(&Orientation::Ccw) {
        Containment::Outside
    } else if signs.contains(&Orientation::Collinear) {
        Containment::Boundary
    } else {
        Containment::Inside
    }
}

/// Intersection point of the lines `p1 p2` and `q1 q2`, or `None` when parallel.
pub fn line_intersection(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> Option<Point> {
    let d1 = p2.sub(p1);
    let d2 = q2.sub(q1);
    let denom = cross_vec(&d1, &d2);
    if denom.is_zero() {
        return None;
    }
    let t = cross_vec(&q1.sub(p1), &d2) / denom;
    Some(p1.add(&d1.scale(&t)))
}

fn on_closed_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient(a, b, p) == Orientation::Collinear
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Whether the closed segments `a b` and `c d` share any point.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2
        && o3 != o4
        && o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
    {
        return true;
    }
    on_closed_segment(c, a, b)
        || on_closed_segment(d, a, b)
        || on_closed_segment(a, c, d)
        || on_closed_segment(b, c, d)
}

/// Whether two segments of a straight-line drawing conflict: they intersect
/// anywhere other than at one shared endpoint.
pub fn segments_conflict(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let shared = [(a, c), (a, d), (b, c), (b, d)]
        .into_iter()
        .filter(|(p, q)| p == q)
        .count();
    match shared {
        0 => segments_intersect(a, b, c, d),
        1 => {
            // Only overlap along a common line can add more intersection points.
            let (other1, other2) = if a == c {
                (b, d)
            } else if a == d {
                (b, c)
            } else if b == c {
                (a, d)
            } else {
                (a, c)
            };
            let common = if a == c || a == d { a } else { b };
            orient(common, other1, other2) == Orientation::Collinear
                && (&other1.x - &common.x) * (&other2.x - &common.x)
                    + (&other1.y - &common.y) * (&other2.y - &common.y)
                    > Rational::zero()
        }
        _ => true,
    }
}
