//! Embedding a series-triangular graph so that its triangles hold prescribed
//! numbers of points.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::search::Arrangement;
use super::{find_trisection_point, PartitionError, Trisection};
use crate::geom::{bounding_triangle_attempt, check_lemma5_conditions, orient, Orientation, Point, Triangle};
use crate::rational::{self, Rational};
use crate::stgraph::SeriesTriangularGraph;

const MAX_ROUND_BITS: i32 = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbedOptions {
    pub seed: u64,
    /// Relative slack allowed on the enclosing triangle's circumradius.
    pub slack: Rational,
    /// Perturbations tried per vertex before giving up.
    pub max_retries: usize,
    /// Rotations of the enclosing triangle tried before giving up.
    pub root_attempts: u32,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        EmbedOptions {
            seed: 0,
            slack: rational::ratio(1, 8),
            max_retries: 64,
            root_attempts: 64,
        }
    }
}

/// Straight-line drawing of a series-triangular graph with `v0 v1 v2` as the
/// clockwise outer triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedEmbedding {
    graph: SeriesTriangularGraph,
    placement: Vec<Point>,
    cells: Vec<Vec<usize>>,
}

impl OrderedEmbedding {
    pub fn graph(&self) -> &SeriesTriangularGraph {
        &self.graph
    }

    /// Position of each graph vertex.
    pub fn placement(&self) -> &[Point] {
        &self.placement
    }

    /// Triangle `i` of the graph's canonical order, as drawn.
    pub fn triangle(&self, i: usize) -> Triangle {
        let [a, b, c] = self.graph.triangles()[i];
        let t = Triangle::new(
            self.placement[a].clone(),
            self.placement[b].clone(),
            self.placement[c].clone(),
        )
        .expect("embedded triangles are non-degenerate");
        debug_assert!(t.b == self.placement[b], "embedded triangles are clockwise");
        t
    }

    pub fn triangles(&self) -> Vec<Triangle> {
        (0..self.graph.triangle_count()).map(|i| self.triangle(i)).collect()
    }

    pub fn outer_triangle(&self) -> Triangle {
        Triangle::new(
            self.placement[0].clone(),
            self.placement[1].clone(),
            self.placement[2].clone(),
        )
        .expect("non-degenerate")
    }

    /// Indices of the embedded points inside each triangle, in canonical
    /// triangle order.
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn max_coordinate_bits(&self) -> u64 {
        self.placement
            .iter()
            .flat_map(|p| [rational::bit_size(&p.x), rational::bit_size(&p.y)])
            .max()
            .unwrap_or(0)
    }
}

/// [`embed_partition_with`] using the default options.
pub fn embed_partition(
    g: &SeriesTriangularGraph,
    s: &[Point],
    targets: &[usize],
) -> Result<OrderedEmbedding, PartitionError> {
    embed_partition_with(g, s, targets, &EmbedOptions::default())
}

/// Places the vertices of `g` so that triangle `i` strictly contains exactly
/// `targets[i]` points of `s`, with no point of `s` on any edge and every
/// point of the drawing in general position.
pub fn embed_partition_with(
    g: &SeriesTriangularGraph,
    s: &[Point],
    targets: &[usize],
    opts: &EmbedOptions,
) -> Result<OrderedEmbedding, PartitionError> {
    if targets.len() != g.triangle_count() {
        return Err(PartitionError::TargetLength {
            found: targets.len(),
            expected: g.triangle_count(),
        });
    }
    let sum: usize = targets.iter().sum();
    if sum != s.len() {
        return Err(PartitionError::TargetSum {
            sum,
            expected: s.len(),
        });
    }

    let nodes = g.tree().nodes();
    let mut requirement = vec![0usize; nodes.len()];
    for (&leaf, &t) in g.leaf_nodes().iter().zip(targets) {
        requirement[leaf] = t;
    }
    // Children always have larger ids than their parent.
    for id in (0..nodes.len()).rev() {
        if let Some(ch) = nodes[id].children {
            requirement[id] = ch.iter().map(|&c| requirement[c]).sum();
        }
    }
    let mut apex_node = vec![usize::MAX; g.vertex_count()];
    for (id, node) in nodes.iter().enumerate() {
        if let Some(v) = node.apex {
            apex_node[v] = id;
        }
    }

    let origin = [Point::from_ints(0, 0)];
    let disk_points = if s.is_empty() { &origin[..] } else { s };
    let root = (0..opts.root_attempts)
        .map(|attempt| bounding_triangle_attempt(disk_points, &opts.slack, attempt))
        .find(|t| check_lemma5_conditions(s, t).is_ok())
        .ok_or(PartitionError::RootPlacement {
            attempts: opts.root_attempts,
        })?;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut placement = vec![root.a, root.b, root.c];
    let mut node_points: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    node_points[0] = (0..s.len()).collect();

    for v in 3..g.vertex_count() {
        let node = apex_node[v];
        let [u1, u2, u3] = nodes[node].corners;
        let tau = Triangle {
            a: placement[u1].clone(),
            b: placement[u2].clone(),
            c: placement[u3].clone(),
        };
        let children = nodes[node].children.expect("apex nodes are subdivided");
        let target = children.map(|c| requirement[c]);
        let members = std::mem::take(&mut node_points[node]);
        let local: Vec<Point> = members.iter().map(|&i| s[i].clone()).collect();

        let existing: Vec<&Point> = s.iter().chain(placement.iter()).collect();
        let (d, parts) = place_vertex(&tau, &local, target, &existing, &mut rng, opts.max_retries)
            .map_err(|e| match e {
                PartitionError::RetriesExhausted { attempts, .. } => PartitionError::RetriesExhausted {
                    vertex: v,
                    attempts,
                    max_coordinate_bits: placement
                        .iter()
                        .flat_map(|p| [rational::bit_size(&p.x), rational::bit_size(&p.y)])
                        .max()
                        .unwrap_or(0),
                },
                other => other,
            })?;
        for (k, part) in parts.into_iter().enumerate() {
            node_points[children[k]] = part.into_iter().map(|i| members[i]).collect();
        }
        placement.push(d);
    }

    let cells = g
        .leaf_nodes()
        .iter()
        .map(|&leaf| std::mem::take(&mut node_points[leaf]))
        .collect();
    Ok(OrderedEmbedding {
        graph: g.clone(),
        placement,
        cells,
    })
}

/// Finds the apex for one subdivision step, then perturbs it inside its cell
/// until the children satisfy the position conditions and the apex is in
/// general position with every point placed so far.
fn place_vertex(
    tau: &Triangle,
    local: &[Point],
    target: [usize; 3],
    existing: &[&Point],
    rng: &mut ChaCha8Rng,
    retries: usize,
) -> Result<(Point, [Vec<usize>; 3]), PartitionError> {
    let d0 = find_trisection_point(tau, local, target)?;
    let arrangement = Arrangement::new(tau, local);
    for _ in 0..retries {
        let d = perturb(&arrangement, &d0, rng);
        let Ok(tri) = Trisection::new(tau, &d) else {
            continue;
        };
        let Ok(parts) = tri.assign(local) else {
            continue;
        };
        if parts.iter().map(Vec::len).ne(target.iter().copied()) {
            continue;
        }
        let children_ok = parts.iter().zip(&tri.children).all(|(part, child)| {
            let pts: Vec<Point> = part.iter().map(|&i| local[i].clone()).collect();
            check_lemma5_conditions(&pts, child).is_ok()
        });
        if children_ok && in_general_position(&d, existing) {
            return Ok((d, parts));
        }
    }
    Err(PartitionError::RetriesExhausted {
        vertex: 0,
        attempts: retries,
        max_coordinate_bits: 0,
    })
}

fn in_general_position(d: &Point, existing: &[&Point]) -> bool {
    (0..existing.len()).all(|i| {
        existing[i] != d
            && (i + 1..existing.len()).all(|j| orient(existing[i], existing[j], d) != Orientation::Collinear)
    })
}

/// A random point of the open arrangement cell containing `d0`, rounded to
/// the coarsest dyadic grid that keeps it in that cell.
fn perturb(arrangement: &Arrangement, d0: &Point, rng: &mut ChaCha8Rng) -> Point {
    let dir = loop {
        let (x, y) = (rng.gen_range(-1000..=1000), rng.gen_range(-1000..=1000));
        if (x, y) != (0, 0) {
            break Point::from_ints(x, y);
        }
    };
    let step = arrangement
        .safe_step(d0, &dir)
        .unwrap_or_else(Rational::one);
    let fraction = rational::ratio(rng.gen_range(1..1000), 1000);
    let q = d0.add(&dir.scale(&(step * fraction)));
    let signature = arrangement.signature(&q);
    (0..=MAX_ROUND_BITS)
        .map(|bits| Point::new(rational::round_dyadic(&q.x, bits), rational::round_dyadic(&q.y, bits)))
        .find(|r| arrangement.signature(r) == signature)
        .unwrap_or(q)
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::*;
    use crate::geom::{orient, segments_conflict, Containment, Orientation};
    use crate::stgraph::ShapePolicy;
    use rand::Rng;

    /// Independent verification of an embedding against its targets.
    fn check(e: &OrderedEmbedding, s: &[Point], targets: &[usize]) {
        let g = e.graph();
        let pl = e.placement();
        // Per-triangle counts, by direct containment.
        for (i, tri) in g.triangles().iter().enumerate() {
            let t = Triangle::new(pl[tri[0]].clone(), pl[tri[1]].clone(), pl[tri[2]].clone())
                .unwrap();
            let inside = s.iter().filter(|q| t.contains(q) == Containment::Inside).count();
            let boundary = s.iter().filter(|q| t.contains(q) == Containment::Boundary).count();
            assert_eq!(inside, targets[i], "triangle {i}");
            assert_eq!(boundary, 0);
            assert_eq!(orient(&pl[tri[0]], &pl[tri[1]], &pl[tri[2]]), Orientation::Cw);
        }
        // Edges cross only at shared endpoints.
        let edges: Vec<_> = g.edges().into_iter().collect();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let ((a, b), (c, d)) = (edges[i], edges[j]);
                assert!(!segments_conflict(&pl[a], &pl[b], &pl[c], &pl[d]));
            }
        }
        // v0 v1 v2 is the clockwise hull.
        let all: Vec<Point> = pl.to_vec();
        let mut hull = crate::geom::convex_hull(&all);
        hull.sort();
        assert_eq!(hull, vec![0, 1, 2]);
        assert_eq!(orient(&pl[0], &pl[1], &pl[2]), Orientation::Cw);
    }

    #[test]
    fn base_graph_is_bounding_triangle() {
        let g = SeriesTriangularGraph::base();
        let s = vec![p(1, 2), p(5, 3), p(2, 7)];
        let e = embed_partition(&g, &s, &[3]).unwrap();
        check(&e, &s, &[3]);
        assert!(check_lemma5_conditions(&s, &e.outer_triangle()).is_ok());
    }

    #[test]
    fn three_triangles_one_each() {
        let g = SeriesTriangularGraph::base().insert_vertex(0).unwrap();
        let s = vec![p(1, 2), p(5, 3), p(2, 7)];
        let e = embed_partition(&g, &s, &[1, 1, 1]).unwrap();
        check(&e, &s, &[1, 1, 1]);
        assert_eq!(e.cells().iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 1, 1]);
    }

    #[test]
    fn nine_triangles_all_ones() {
        let mut rng = crate::tri::test_support::rng(31);
        let s = crate::tri::test_support::random_set(&mut rng, 9, 100).points().to_vec();
        for policy in [ShapePolicy::LastCreated, ShapePolicy::Balanced] {
            let g = SeriesTriangularGraph::with_min_triangles(9, policy);
            assert_eq!(g.triangle_count(), 9);
            let targets = vec![1; 9];
            let e = embed_partition(&g, &s, &targets).unwrap();
            check(&e, &s, &targets);
        }
    }

    #[test]
    fn random_graphs_and_targets() {
        let mut rng = crate::tri::test_support::rng(77);
        for trial in 0..8 {
            let n = rng.gen_range(0..=8);
            let s = if n == 0 {
                Vec::new()
            } else {
                crate::tri::test_support::random_set(&mut rng, n, 200).points().to_vec()
            };
            let mut g = SeriesTriangularGraph::base();
            for _ in 0..rng.gen_range(0..5) {
                g = g.insert_vertex(rng.gen_range(0..g.triangle_count())).unwrap();
            }
            let mut targets = vec![0; g.triangle_count()];
            for _ in 0..n {
                let k = rng.gen_range(0..targets.len());
                targets[k] += 1;
            }
            let opts = EmbedOptions {
                seed: trial,
                ..EmbedOptions::default()
            };
            let e = embed_partition_with(&g, &s, &targets, &opts).unwrap();
            check(&e, &s, &targets);
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let g = SeriesTriangularGraph::with_min_triangles(5, ShapePolicy::LastCreated);
        let s = vec![p(1, 2), p(5, 3), p(2, 7), p(8, 1), p(4, 4)];
        let a = embed_partition(&g, &s, &[1; 5]).unwrap();
        let b = embed_partition(&g, &s, &[1; 5]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn target_errors() {
        let g = SeriesTriangularGraph::base();
        assert_eq!(
            embed_partition(&g, &[p(0, 0)], &[0]),
            Err(PartitionError::TargetSum { sum: 0, expected: 1 })
        );
        assert_eq!(
            embed_partition(&g, &[], &[0, 0]),
            Err(PartitionError::TargetLength { found: 2, expected: 1 })
        );
    }
}
