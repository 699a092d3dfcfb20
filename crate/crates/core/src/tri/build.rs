use std::sync::Arc;

use super::Triangulation;
use crate::geom::{orient, Orientation, PointSet};

/// Sweep triangulation: points are added in lexicographic order and joined
/// to every hull edge they can see.
pub fn triangulate_greedy(s: Arc<PointSet>) -> Triangulation {
    let pts = s.points();
    assert!(pts.len() >= 3, "triangulation needs at least three points");
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&i, &j| pts[i].cmp(&pts[j]));

    let mut faces: Vec<[usize; 3]> = Vec::with_capacity(2 * pts.len());
    // Current hull, counter-clockwise.
    let (a, b, c) = (order[0], order[1], order[2]);
    let mut hull = match orient(&pts[a], &pts[b], &pts[c]) {
        Orientation::Ccw => vec![a, b, c],
        _ => vec![a, c, b],
    };
    faces.push([a, b, c]);

    for &p in &order[3..] {
        let h = hull.len();
        // Edge i runs hull[i] -> hull[i+1]; it is visible when p is to its right.
        let visible: Vec<bool> = (0..h)
            .map(|i| orient(&pts[hull[i]], &pts[hull[(i + 1) % h]], &pts[p]) == Orientation::Cw)
            .collect();
        // The visible edges form one cyclic run; find where it starts.
        let start = (0..h)
            .find(|&i| visible[i] && !visible[(i + h - 1) % h])
            .expect("new point sees some hull edge");
        let mut i = start;
        while visible[i] {
            faces.push([hull[i], hull[(i + 1) % h], p]);
            i = (i + 1) % h;
        }
        // Drop the interior vertices of the visible chain and splice in p.
        let first = hull[start];
        let last = hull[i];
        let mut next = Vec::with_capacity(h + 1);
        let mut j = i;
        loop {
            next.push(hull[j]);
            if hull[j] == first {
                break;
            }
            j = (j + 1) % h;
        }
        next.push(p);
        debug_assert_eq!(next[0], last);
        hull = next;
    }
    Triangulation::from_faces(s, faces).expect("labels in range")
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::super::expected_triangle_count;
    use super::*;

    #[test]
    fn three_points() {
        let s = set(&[(0, 0), (5, 1), (2, 4)]);
        let t = triangulate_greedy(s);
        assert_eq!(t.triangles().len(), 1);
        assert_eq!(t.validate(), Ok(()));
    }

    #[test]
    fn five_points_triangle_hull() {
        let s = set(&[(0, 0), (10, 0), (4, 9), (4, 2), (5, 4)]);
        assert_eq!(s.hull().len(), 3);
        let t = triangulate_greedy(s);
        assert_eq!(t.triangles().len(), 5);
        assert_eq!(t.validate(), Ok(()));
    }

    #[test]
    fn random_sets_are_valid() {
        let mut r = rng(5);
        for n in 3..40 {
            let s = random_set(&mut r, n, 1000);
            let h = s.hull().len();
            let t = triangulate_greedy(s);
            assert_eq!(t.validate(), Ok(()), "n = {n}");
            assert_eq!(t.len(), expected_triangle_count(n, h));
        }
    }
}
