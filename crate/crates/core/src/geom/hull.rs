use super::{orient, Orientation, Point};

/// Labels of the hull vertices in clockwise order, starting from the
/// lexicographically least point (smallest x, then smallest y). Points lying
/// on a hull edge are not reported as vertices.
pub fn convex_hull(points: &[Point]) -> Vec<usize> {
    let n = points.len();
    if n < 3 {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| points[i].cmp(&points[j]));
        return order;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| points[i].cmp(&points[j]));

    // Monotone chain; keeps strictly clockwise turns.
    let mut upper: Vec<usize> = Vec::with_capacity(n);
    for &i in &order {
        while upper.len() >= 2
            && orient(
                &points[upper[upper.len() - 2]],
                &points[upper[upper.len() - 1]],
                &points[i],
            ) != Orientation::Cw
        {
            upper.pop();
        }
        upper.push(i);
    }
    let mut lower: Vec<usize> = Vec::with_capacity(n);
    for &i in order.iter().rev() {
        while lower.len() >= 2
            && orient(
                &points[lower[lower.len() - 2]],
                &points[lower[lower.len() - 1]],
                &points[i],
            ) != Orientation::Cw
        {
            lower.pop();
        }
        lower.push(i);
    }
    upper.pop();
    lower.pop();
    upper.extend(lower);
    upper
}

#[cfg(test)]
mod tests {
    use super::super::{orient, Orientation, Triangle};
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn triangle_hull_is_clockwise() {
        let pts = vec![p(0, 0), p(4, 0), p(1, 3)];
        let hull = convex_hull(&pts);
        assert_eq!(hull, vec![0, 2, 1]);
        assert_eq!(orient(&pts[0], &pts[2], &pts[1]), Orientation::Cw);
    }

    #[test]
    fn square_with_center() {
        let pts = vec![p(0, 0), p(2, 0), p(2, 2), p(0, 2), p(1, 1)];
        // Clockwise from (0,0): up the left side first.
        assert_eq!(convex_hull(&pts), vec![0, 3, 2, 1]);
    }

    /// A point is extreme iff it is not inside (or on) any triangle spanned by
    /// three other points of the set.
    fn extreme_by_subsets(points: &[Point]) -> Vec<bool> {
        let n = points.len();
        (0..n)
            .map(|q| {
                for i in 0..n {
                    for j in i + 1..n {
                        for k in j + 1..n {
                            if [i, j, k].contains(&q) {
                                continue;
                            }
                            if let Ok(t) = Triangle::new(
                                points[i].clone(),
                                points[j].clone(),
                                points[k].clone(),
                            ) {
                                if t.contains(&points[q]) != super::super::Containment::Outside {
                                    return false;
                                }
                            }
                        }
                    }
                }
                true
            })
            .collect()
    }

    #[test]
    fn random_hulls_match_extremality_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let pts: Vec<Point> = (0..10)
                .map(|_| {
                    Point::from_ratios(
                        (rng.gen_range(-200..200), rng.gen_range(1..4)),
                        (rng.gen_range(-200..200), rng.gen_range(1..4)),
                    )
                })
                .collect();
            let Ok(set) = super::super::PointSet::new(pts.clone()) else { continue };
            let hull = set.hull();
            let extreme = extreme_by_subsets(&pts);
            let mut from_hull = vec![false; pts.len()];
            for &h in &hull {
                from_hull[h] = true;
            }
            assert_eq!(from_hull, extreme);
            let least = (0..pts.len()).min_by(|&i, &j| pts[i].cmp(&pts[j])).unwrap();
            assert_eq!(hull[0], least);
            for w in 0..hull.len() {
                let a = &pts[hull[w]];
                let b = &pts[hull[(w + 1) % hull.len()]];
                let c = &pts[hull[(w + 2) % hull.len()]];
                assert_eq!(orient(a, b, c), Orientation::Cw);
                for q in &pts {
                    assert_ne!(orient(a, b, q), Orientation::Ccw);
                }
            }
        }
    }
}
