//! Constructions driven by one series-triangular graph embedded over every
//! set.

use std::sync::Arc;

use super::{augmented, check_sizes, CompatError, CompatResult, Construction};
use crate::geom::{Point, PointSet};
use crate::partition::{embed_partition_with, EmbedOptions, OrderedEmbedding};
use crate::par;
use crate::rational::{self, Rational};
use crate::stgraph::{SeriesTriangularGraph, ShapePolicy};
use crate::tri::{compatible_triangulation_small, Bijection, Triangulation};

/// Enumeration cap for the per-cell joint search (three corners plus at most
/// five interior points).
const CELL_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairOptions {
    pub seed: u64,
    pub slack: Rational,
    pub policy: ShapePolicy,
}

impl Default for PairOptions {
    fn default() -> Self {
        PairOptions {
            seed: 0,
            slack: rational::ratio(1, 8),
            policy: ShapePolicy::LastCreated,
        }
    }
}

/// Per-triangle targets: `n / k` each, with the remainder going one at a
/// time to the lowest-indexed triangles. With one point per triangle and an
/// even `n` this leaves exactly the last triangle empty.
fn targets(n: usize, k: usize) -> Vec<usize> {
    (0..k).map(|i| n / k + usize::from(i < n % k)).collect()
}

fn set_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn embed_all(
    g: &SeriesTriangularGraph,
    sets: &[&PointSet],
    targets: &[usize],
    opts: &PairOptions,
) -> Result<Vec<OrderedEmbedding>, CompatError> {
    let indexed: Vec<(usize, &PointSet)> = sets.iter().copied().enumerate().collect();
    par::map(&indexed, |&(i, s)| {
        let embed_opts = EmbedOptions {
            seed: set_seed(opts.seed, i),
            slack: opts.slack.clone(),
            ..EmbedOptions::default()
        };
        embed_partition_with(g, s.points(), targets, &embed_opts)
            .map_err(|source| CompatError::Partition { set: i, source })
    })
    .into_iter()
    .collect()
}

/// The original points followed by the embedded graph vertices.
fn augmented_points(s: &PointSet, e: &OrderedEmbedding) -> Vec<Point> {
    let mut pts = s.points().to_vec();
    pts.extend(e.placement().iter().cloned());
    pts
}

/// Shared part of the pair and d-way constructions.
fn series_construction(
    sets: &[&PointSet],
    mode: usize,
    opts: &PairOptions,
    construction: Construction,
) -> Result<CompatResult, CompatError> {
    let n = check_sizes(sets, 2)?;
    let g = SeriesTriangularGraph::with_min_triangles(n.div_ceil(mode), opts.policy);
    let k = g.triangle_count();
    let targets = targets(n, k);
    let embeddings = embed_all(&g, sets, &targets, opts)?;

    let v = g.vertex_count();
    let steiner = |u: usize| n + u;
    let d = sets.len();
    let mut faces: Vec<Vec<[usize; 3]>> = vec![Vec::new(); d];
    // forward[i][label of set i] = label in set i + 1.
    let mut forward: Vec<Vec<usize>> = vec![vec![usize::MAX; n + v]; d - 1];
    for f in forward.iter_mut() {
        for u in 0..v {
            f[steiner(u)] = steiner(u);
        }
    }

    for (cell, tri) in g.triangles().iter().enumerate() {
        let corners = tri.map(steiner);
        let members: Vec<&Vec<usize>> = embeddings.iter().map(|e| &e.cells()[cell]).collect();
        match targets[cell] {
            0 => {
                for fs in faces.iter_mut() {
                    fs.push(corners);
                }
            }
            1 => {
                for (i, fs) in faces.iter_mut().enumerate() {
                    let p = members[i][0];
                    fs.extend([
                        [corners[0], corners[1], p],
                        [corners[1], corners[2], p],
                        [corners[2], corners[0], p],
                    ]);
                }
                for i in 0..d - 1 {
                    forward[i][members[i][0]] = members[i + 1][0];
                }
            }
            count => {
                debug_assert_eq!(d, 2, "multi-point cells are only used for pairs");
                let local: Vec<Arc<PointSet>> = (0..2)
                    .map(|i| {
                        let mut pts: Vec<Point> = corners
                            .iter()
                            .map(|&c| embeddings[i].placement()[c - n].clone())
                            .collect();
                        pts.extend(members[i].iter().map(|&p| sets[i].point(p).clone()));
                        augmented(pts)
                    })
                    .collect::<Result<_, _>>()?;
                let hull_map = [(0, 0), (1, 1), (2, 2)];
                let Some((ls, lt, f)) =
                    compatible_triangulation_small(&local[0], &local[1], Some(&hull_map), CELL_CAP)?
                else {
                    return Err(CompatError::CellUnsolved { cell, points: count });
                };
                let global = |i: usize, j: usize| {
                    if j < 3 {
                        corners[j]
                    } else {
                        members[i][j - 3]
                    }
                };
                faces[0].extend(ls.triangles().iter().map(|t| t.map(|j| global(0, j))));
                faces[1].extend(lt.triangles().iter().map(|t| t.map(|j| global(1, j))));
                for j in 3..3 + count {
                    forward[0][global(0, j)] = global(1, f.apply(j));
                }
            }
        }
    }

    let triangulations = sets
        .iter()
        .zip(&embeddings)
        .zip(faces)
        .map(|((s, e), fs)| {
            let base = augmented(augmented_points(s, e))?;
            Ok(Triangulation::from_faces(base, fs)?)
        })
        .collect::<Result<Vec<_>, CompatError>>()?;
    let bijections = forward
        .into_iter()
        .map(Bijection::new)
        .collect::<Result<Vec<_>, _>>()?;

    Ok(CompatResult {
        construction,
        original_count: n,
        seed: opts.seed,
        slack: opts.slack.clone(),
        triangulations,
        bijections,
        steiner_count_per_set: v,
        skeletons: embeddings,
    })
}

/// Compatible triangulations of two equal-size sets. Each triangle of the
/// shared graph receives at most `mode` points; mode 1 joins each point to
/// its triangle's corners, modes 3 and 5 solve every cell by exhaustive
/// joint search with the corners held fixed.
pub fn steiner_compatible_pair(
    s: &PointSet,
    t: &PointSet,
    mode: u8,
    opts: &PairOptions,
) -> Result<CompatResult, CompatError> {
    if !matches!(mode, 1 | 3 | 5) {
        return Err(CompatError::BadMode(mode));
    }
    series_construction(&[s, t], mode as usize, opts, Construction::Pair { mode })
}

/// Pairwise compatible triangulations of any number of equal-size sets,
/// with one point per triangle of a shared graph.
pub fn dway_steiner_compatible(
    sets: &[&PointSet],
    opts: &PairOptions,
) -> Result<CompatResult, CompatError> {
    series_construction(sets, 1, opts, Construction::DWay)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compat::series_steiner_count;
    use crate::tri::is_compatible;
    use crate::tri::test_support::{random_set, rng};

    #[test]
    fn target_distribution() {
        assert_eq!(targets(10, 11), [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0]);
        assert_eq!(targets(9, 9), [1; 9]);
        assert_eq!(targets(12, 5), [3, 3, 2, 2, 2]);
        assert_eq!(targets(7, 3), [3, 2, 2]);
    }

    fn check_pair(r: &CompatResult, n: usize) {
        for tri in &r.triangulations {
            assert_eq!(tri.validate(), Ok(()));
            assert_eq!(tri.base().len(), n + r.steiner_count_per_set);
        }
        for (i, f) in r.bijections.iter().enumerate() {
            assert!(is_compatible(&r.triangulations[i], &r.triangulations[i + 1], f).unwrap());
            for label in 0..f.len() {
                assert_eq!(r.is_steiner(label), r.is_steiner(f.apply(label)));
            }
        }
    }

    #[test]
    fn mode_one_pair() {
        let mut g = rng(40);
        for n in [1, 2, 9, 10] {
            let s = random_set(&mut g, n, 100);
            let t = random_set(&mut g, n, 100);
            let r = steiner_compatible_pair(&s, &t, 1, &PairOptions::default()).unwrap();
            check_pair(&r, n);
            assert_eq!(r.steiner_count_per_set, series_steiner_count(n, 1));
            assert!(r.steiner_count_per_set <= n / 2 + 3);
            for e in &r.skeletons {
                assert!(e.cells().iter().all(|c| c.len() <= 1));
            }
        }
    }

    #[test]
    fn mode_three_pair() {
        let mut g = rng(41);
        let s = random_set(&mut g, 12, 100);
        let t = random_set(&mut g, 12, 100);
        let r = steiner_compatible_pair(&s, &t, 3, &PairOptions::default()).unwrap();
        check_pair(&r, 12);
        assert!(r.steiner_count_per_set <= 5);
    }

    #[test]
    fn dway_four_sets() {
        let mut g = rng(42);
        let sets: Vec<Arc<PointSet>> = (0..4).map(|_| random_set(&mut g, 7, 100)).collect();
        let refs: Vec<&PointSet> = sets.iter().map(|s| s.as_ref()).collect();
        let r = dway_steiner_compatible(&refs, &PairOptions::default()).unwrap();
        check_pair(&r, 7);
        for i in 0..4 {
            for j in i + 1..4 {
                let f = r.composed(i, j);
                assert!(is_compatible(&r.triangulations[i], &r.triangulations[j], &f).unwrap());
            }
        }
    }

    #[test]
    fn dway_of_two_matches_pair_mode_one() {
        let mut g = rng(43);
        let s = random_set(&mut g, 6, 100);
        let t = random_set(&mut g, 6, 100);
        let opts = PairOptions::default();
        let a = steiner_compatible_pair(&s, &t, 1, &opts).unwrap();
        let b = dway_steiner_compatible(&[&s, &t], &opts).unwrap();
        assert_eq!(a.triangulations, b.triangulations);
        assert_eq!(a.bijections, b.bijections);
    }

    #[test]
    fn errors() {
        let mut g = rng(44);
        let s = random_set(&mut g, 4, 100);
        let t = random_set(&mut g, 5, 100);
        let opts = PairOptions::default();
        assert_eq!(
            steiner_compatible_pair(&s, &s, 2, &opts).unwrap_err(),
            CompatError::BadMode(2)
        );
        assert!(matches!(
            steiner_compatible_pair(&s, &t, 1, &opts),
            Err(CompatError::SizeMismatch { set: 1, .. })
        ));
        assert_eq!(
            dway_steiner_compatible(&[&s], &opts).unwrap_err(),
            CompatError::TooFewSets(1)
        );
    }
}
