use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{line_intersection, orient, Orientation, Point, Triangle};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disk {
    pub center: Point,
    pub radius_squared: Rational,
}

impl Disk {
    pub fn point(p: &Point) -> Self {
        Disk {
            center: p.clone(),
            radius_squared: Rational::zero(),
        }
    }

    fn diameter(p: &Point, q: &Point) -> Self {
        let half = rational::ratio(1, 2);
        let center = p.lerp(q, &half);
        let radius_squared = center.dist2(p);
        Disk { center, radius_squared }
    }

    fn circumscribed(p: &Point, q: &Point, r: &Point) -> Self {
        if orient(p, q, r) == Orientation::Collinear {
            // Collinear support: the widest pair spans the disk.
            let pairs = [(p, q), (p, r), (q, r)];
            let (a, b) = pairs
                .into_iter()
                .max_by(|(a, b), (c, d)| a.dist2(b).cmp(&c.dist2(d)))
                .expect("three pairs");
            return Disk::diameter(a, b);
        }
        // Intersection of two perpendicular bisectors.
        let half = rational::ratio(1, 2);
        let m1 = p.lerp(q, &half);
        let m2 = p.lerp(r, &half);
        let d1 = q.sub(p);
        let d2 = r.sub(p);
        let n1 = m1.add(&Point::new(-d1.y.clone(), d1.x.clone()));
        let n2 = m2.add(&Point::new(-d2.y.clone(), d2.x.clone()));
        let center = line_intersection(&m1, &n1, &m2, &n2).expect("non-collinear support");
        let radius_squared = center.dist2(p);
        Disk { center, radius_squared }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.center.dist2(p) <= self.radius_squared
    }

    pub fn on_boundary(&self, p: &Point) -> bool {
        self.center.dist2(p) == self.radius_squared
    }
}

/// Minimal disk containing every point (randomized incremental construction
/// with a fixed shuffle, so the result is deterministic).
pub fn smallest_enclosing_disk(points: &[Point]) -> Disk {
    assert!(!points.is_empty(), "enclosing disk of an empty set");
    let mut order: Vec<&Point> = points.iter().collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eed));

    let mut disk = Disk::point(order[0]);
    for i in 1..order.len() {
        if disk.contains(order[i]) {
            continue;
        }
        disk = Disk::point(order[i]);
        for j in 0..i {
            if disk.contains(order[j]) {
                continue;
            }
            disk = Disk::diameter(order[i], order[j]);
            for k in 0..j {
                if !disk.contains(order[k]) {
                    disk = Disk::circumscribed(order[i], order[j], order[k]);
                }
            }
        }
    }
    disk
}

/// Rotation by a rational point `(cos, sin)` on the unit circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rotation {
    pub cos: Rational,
    pub sin: Rational,
}

impl Rotation {
    pub fn identity() -> Self {
        Rotation {
            cos: Rational::one(),
            sin: Rational::zero(),
        }
    }

    /// Rotation with `tan(angle / 2) = t`.
    pub fn from_half_tangent(t: &Rational) -> Self {
        let t2 = t * t;
        let denom = Rational::one() + &t2;
        Rotation {
            cos: (Rational::one() - &t2) / &denom,
            sin: (t * rational::int(2)) / denom,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.cos.is_one() && self.sin.is_zero()
    }

    pub fn apply(&self, v: &Point) -> Point {
        Point::new(
            &self.cos * &v.x - &self.sin * &v.y,
            &self.sin * &v.x + &self.cos * &v.y,
        )
    }

    pub fn inverse(&self) -> Self {
        Rotation {
            cos: self.cos.clone(),
            sin: -self.sin.clone(),
        }
    }
}

/// Rational upper approximation of sqrt(3) with `digits` decimal digits.
fn sqrt3_upper(digits: u32) -> Rational {
    let scale = num_traits::pow(BigInt::from(10u32), digits as usize);
    let root = (BigInt::from(3u32) * &scale * &scale).sqrt() + BigInt::one();
    Rational::new(root, scale)
}

/// Near-equilateral triangle strictly containing `points`, centered on the
/// enclosing-disk center, whose vertices all lie within `2 r (1 + slack)` of
/// that center.
pub fn bounding_triangle(points: &[Point], slack: &Rational) -> Triangle {
    bounding_triangle_attempt(points, slack, 0)
}

/// Same as [`bounding_triangle`]; `attempt > 0` rotates the triangle about the
/// center by a distinct rational angle. Used to re-sample until a placement
/// is in general position with the points.
pub fn bounding_triangle_attempt(points: &[Point], slack: &Rational, attempt: u32) -> Triangle {
    assert!(slack.is_positive(), "slack must be positive");
    let disk = smallest_enclosing_disk(points);
    let r2 = &disk.radius_squared;

    let (side, inradius) = if r2.is_zero() {
        (sqrt3_upper(3), Rational::one())
    } else {
        // (1 + slack)^2 * 4 / (s^2 + 1) must exceed 1 for some s >= sqrt(3).
        let grow = (Rational::one() + slack) * (Rational::one() + slack) * rational::int(4);
        let mut digits = 3;
        let side = loop {
            let s = sqrt3_upper(digits);
            if grow > &s * &s + Rational::one() {
                break s;
            }
            digits += 1;
        };
        let upper = r2 * &grow / (&side * &side + Rational::one());
        let mut bits = 0;
        let inradius = loop {
            let rho = rational::sqrt_upper_dyadic(r2, bits);
            if &rho * &rho <= upper {
                break rho;
            }
            bits += 1;
        };
        (side, inradius)
    };

    let offsets = [
        Point::new(Rational::zero(), &inradius * rational::int(2)),
        Point::new(&side * &inradius, -inradius.clone()),
        Point::new(-(&side * &inradius), -inradius.clone()),
    ];
    let rotation = if attempt == 0 {
        Rotation::identity()
    } else {
        Rotation::from_half_tangent(&rational::ratio(1, attempt as i64 + 2))
    };
    let [a, b, c] = offsets.map(|o| disk.center.add(&rotation.apply(&o)));
    Triangle::new(a, b, c).expect("positive inradius")
}
