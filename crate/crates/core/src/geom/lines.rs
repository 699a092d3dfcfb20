//! Lines through rational points as integer equations `A x + B y + C`,
//! every coordinate scaled by one common denominator. Points met by two such
//! lines are kept homogeneous, so side tests need no division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::{Orientation, Point};
use crate::rational::Rational;

pub(crate) trait Coefficient: Clone + Signed + Send + Sync {}

impl<T: Clone + Signed + Send + Sync> Coefficient for T {}

/// Equations in machine integers when their size allows it.
#[derive(Debug, Clone)]
pub(crate) enum IntegerLines {
    Small(Vec<[i128; 3]>),
    Big(Vec<[BigInt; 3]>),
}

impl IntegerLines {
    /// One equation per directed line `from -> to`. The sign of the equation
    /// at a point is the orientation of `(from, to, point)`.
    pub fn new(lines: &[(&Point, &Point)]) -> Self {
        let scale = lines
            .iter()
            .flat_map(|(p, q)| [p.x.denom(), p.y.denom(), q.x.denom(), q.y.denom()])
            .fold(BigInt::one(), |acc, d| acc.lcm(d));
        let int = |v: &Rational| v.numer() * (&scale / v.denom());
        let big: Vec<[BigInt; 3]> = lines
            .iter()
            .map(|(f, t)| {
                let (fx, fy) = (int(&f.x), int(&f.y));
                let (tx, ty) = (int(&t.x), int(&t.y));
                let dy = &ty - &fy;
                let dx = &tx - &fx;
                let c = &dy * &fx - &dx * &fy;
                [-dy, dx, c]
            })
            .collect();
        // `|A|, |B| < 2^30` and `|C| < 2^60` keep `side` of a `meet` in range.
        let fit = |v: &BigInt, bits: u64| (v.bits() < bits).then(|| v.to_i128()).flatten();
        let small: Option<Vec<[i128; 3]>> = big
            .iter()
            .map(|l| Some([fit(&l[0], 30)?, fit(&l[1], 30)?, fit(&l[2], 60)?]))
            .collect();
        match small {
            Some(s) => IntegerLines::Small(s),
            None => IntegerLines::Big(big),
        }
    }
}

/// Homogeneous meeting point of two lines; the last entry is zero when they
/// are parallel.
pub(crate) fn meet<T: Coefficient>(l: &[T; 3], m: &[T; 3]) -> [T; 3] {
    let [a1, b1, c1] = l.clone();
    let [a2, b2, c2] = m.clone();
    [
        b1.clone() * c2.clone() - b2.clone() * c1.clone(),
        c1 * a2.clone() - c2 * a1.clone(),
        a1 * b2 - a2 * b1,
    ]
}

/// Side of line `l` at the finite homogeneous point `x`.
pub(crate) fn side<T: Coefficient>(l: &[T; 3], x: &[T; 3]) -> Orientation {
    let [a, b, c] = l.clone();
    let value = a * x[0].clone() + b * x[1].clone() + c * x[2].clone();
    let sign = if x[2].is_negative() { -value.signum() } else { value.signum() };
    if sign.is_positive() {
        Orientation::Ccw
    } else if sign.is_negative() {
        Orientation::Cw
    } else {
        Orientation::Collinear
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{line_intersection, orient};
    use proptest::prelude::*;

    fn point(x: (i64, i64), y: (i64, i64)) -> Point {
        Point::new(Rational::new(x.0.into(), x.1.into()), Rational::new(y.0.into(), y.1.into()))
    }

    fn coord() -> impl Strategy<Value = (i64, i64)> {
        (-50i64..50, 1i64..9)
    }

    fn pt() -> impl Strategy<Value = Point> {
        (coord(), coord()).prop_map(|(x, y)| point(x, y))
    }

    fn check<T: Coefficient>(eq: &[[T; 3]], segs: &[(&Point, &Point)]) {
        let x = meet(&eq[0], &eq[1]);
        let hit = line_intersection(segs[0].0, segs[0].1, segs[1].0, segs[1].1);
        assert_eq!(x[2].is_zero(), hit.is_none());
        if let Some(hit) = hit {
            assert_eq!(side(&eq[2], &x), orient(segs[2].0, segs[2].1, &hit));
        }
    }

    proptest! {
        #[test]
        fn sides_match_orient(ps in proptest::collection::vec(pt(), 6), lift in 0u32..3) {
            let factor = Rational::from_integer(BigInt::one() << (35 * lift));
            let ps: Vec<Point> = ps.iter().map(|p| Point::new(&p.x * &factor, &p.y * &factor)).collect();
            prop_assume!(ps[0] != ps[1] && ps[2] != ps[3] && ps[4] != ps[5]);
            let segs = [(&ps[0], &ps[1]), (&ps[2], &ps[3]), (&ps[4], &ps[5])];
            match IntegerLines::new(&segs) {
                IntegerLines::Small(eq) => check(&eq, &segs),
                IntegerLines::Big(eq) => check(&eq, &segs),
            }
        }
    }
}
