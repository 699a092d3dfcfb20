use std::collections::BTreeSet;

use num_traits::Zero;

use super::{augmented, check_sizes, rotate_distinct_y, CompatError, CompatResult, Construction};
use crate::geom::{convex_hull, segments_conflict, Point, PointSet};
use crate::rational;
use crate::tri::{Bijection, Triangulation};

/// One side of the construction: the triangulation of `s` plus a left and a
/// right Steiner point, and the labels of `s` by increasing rotated height.
struct Side {
    triangulation: Triangulation,
    order: Vec<usize>,
}

fn build_side(s: &PointSet) -> Result<Side, CompatError> {
    let n = s.len();
    let (rotation, rotated) = rotate_distinct_y(s.points());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| rotated[i].y.cmp(&rotated[j].y));

    let (left, right) = (n, n + 1);
    let y_mid = if n == 1 {
        &rotated[0].y + rational::int(1)
    } else {
        let m = (n - 1) / 2;
        (&rotated[order[m]].y + &rotated[order[m + 1]].y) / rational::int(2)
    };
    let min_x = rotated.iter().map(|p| &p.x).min().expect("non-empty").clone();
    let max_x = rotated.iter().map(|p| &p.x).max().expect("non-empty").clone();
    let mut offset = &max_x - &min_x;
    if offset.is_zero() {
        offset = rational::int(1);
    }

    let mut faces: Vec<[usize; 3]> = Vec::new();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    if n == 1 {
        faces.push([left, order[0], right]);
        edges.extend([(0, left), (0, right), (left, right)]);
    } else {
        for w in order.windows(2) {
            faces.push([left, w[0], w[1]]);
            faces.push([right, w[0], w[1]]);
            edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for i in 0..n {
            edges.insert((i, left));
            edges.insert((i, right));
        }
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();

    loop {
        let pl = Point::new(&min_x - &offset, y_mid.clone());
        let pr = Point::new(&max_x + &offset, y_mid.clone());
        let mut pts = rotated.clone();
        pts.extend([pl, pr]);
        let crossing = (0..edges.len()).any(|i| {
            let (a, b) = edges[i];
            edges[i + 1..]
                .iter()
                .any(|&(c, d)| segments_conflict(&pts[a], &pts[b], &pts[c], &pts[d]))
        });
        let hull_ok = convex_hull(&pts).len() == if n == 1 { 3 } else { 4 };
        if !crossing && hull_ok {
            if PointSet::new(pts.clone()).is_ok() {
                // Back to the input frame; original points keep their exact
                // coordinates.
                let inverse = rotation.inverse();
                let mut out = s.points().to_vec();
                out.push(inverse.apply(&pts[left]));
                out.push(inverse.apply(&pts[right]));
                let triangulation = Triangulation::from_faces(augmented(out)?, faces)?;
                return Ok(Side {
                    triangulation,
                    order,
                });
            }
        }
        offset = offset * rational::int(2);
    }
}

/// Compatible triangulations of `s` and `t` with two Steiner points each:
/// one far left and one far right of the set, joined to every point, plus
/// the path through the points by height.
pub fn two_steiner_compatible(s: &PointSet, t: &PointSet) -> Result<CompatResult, CompatError> {
    let n = check_sizes(&[s, t], 2)?;
    let (left, right) = (build_side(s)?, build_side(t)?);
    let mut forward = vec![0; n + 2];
    for (&p, &q) in left.order.iter().zip(&right.order) {
        forward[p] = q;
    }
    forward[n] = n;
    forward[n + 1] = n + 1;
    Ok(CompatResult {
        construction: Construction::TwoSteiner,
        original_count: n,
        seed: 0,
        slack: rational::int(0),
        triangulations: vec![left.triangulation, right.triangulation],
        bijections: vec![Bijection::new(forward)?],
        steiner_count_per_set: 2,
        skeletons: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tri::is_compatible;
    use crate::tri::test_support::{random_set, rng, set};

    fn check(s: &PointSet, t: &PointSet) -> CompatResult {
        let r = two_steiner_compatible(s, t).unwrap();
        let n = s.len();
        for tri in &r.triangulations {
            assert_eq!(tri.validate(), Ok(()));
            assert_eq!(tri.base().len(), n + 2);
        }
        assert!(is_compatible(&r.triangulations[0], &r.triangulations[1], &r.bijections[0]).unwrap());
        r
    }

    #[test]
    fn one_point() {
        let r = check(&set(&[(3, 4)]), &set(&[(-1, 7)]));
        assert_eq!(r.triangulations[0].len(), 1);
    }

    #[test]
    fn two_points() {
        let r = check(&set(&[(0, 0), (5, 5)]), &set(&[(1, 0), (1, 3)]));
        assert_eq!(r.triangulations[0].len(), 2);
    }

    #[test]
    fn shared_heights_are_rotated() {
        let s = set(&[(0, 0), (4, 0), (2, 3), (7, 3)]);
        let t = set(&[(0, 0), (1, 1), (2, 5), (9, 2)]);
        check(&s, &t);
    }

    #[test]
    fn edge_set_is_path_plus_two_stars() {
        let mut r = rng(2);
        for n in 2..14 {
            let s = random_set(&mut r, n, 100);
            let t = random_set(&mut r, n, 100);
            let res = check(&s, &t);
            let tri = &res.triangulations[0];
            let mut by_y: Vec<usize> = (0..n).collect();
            by_y.sort_by(|&i, &j| s.point(i).y.cmp(&s.point(j).y));
            let mut expected = BTreeSet::new();
            for i in 0..n {
                expected.insert((i, n));
                expected.insert((i, n + 1));
            }
            // The path follows the rotated heights; with distinct heights no
            // rotation is applied.
            let ys: BTreeSet<_> = s.points().iter().map(|p| p.y.clone()).collect();
            if ys.len() == n {
                for w in by_y.windows(2) {
                    expected.insert((w[0].min(w[1]), w[0].max(w[1])));
                }
                assert_eq!(tri.edges(), &expected);
            }
            assert_eq!(tri.edges().len(), 3 * n - 1);
        }
    }
}
