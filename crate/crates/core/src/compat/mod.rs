//! Compatible triangulations of several point sets with exterior Steiner
//! points.
//!
//! Every constructor returns a [`CompatResult`]. Within each augmented set the
//! original points keep their labels `0..n` and the Steiner points follow.
//! Bijection `i` maps set `i` to set `i + 1`.

mod fixtures;
mod steiner;
mod two_steiner;
mod verify;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::geom::{GeomError, Point, PointSet, Rotation};
use crate::partition::{OrderedEmbedding, PartitionError};
use crate::rational::{self, Rational};
use crate::tri::{Bijection, TriError, Triangulation};

pub use fixtures::{
    forced_interior_cycle, forced_star_corner, threeway_certificate, threeway_counterexample_fixture,
    twopoint_cell_counterexample_fixture, twopoint_degree_certificate, CellFixture, DegreeCertificate,
    ThreeWayCertificate, ThreeWayFixture,
};
pub use steiner::{dway_steiner_compatible, steiner_compatible_pair, PairOptions};
pub use two_steiner::two_steiner_compatible;
pub use verify::{radius_check, verify_data, verify_result, Check, RadiusCheck, ResultData, SetData, VerifyReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompatError {
    #[error("at least one point per set is required")]
    Empty,
    #[error("at least two sets are required, got {0}")]
    TooFewSets(usize),
    #[error("set {set} has {found} points, expected {expected}")]
    SizeMismatch { set: usize, found: usize, expected: usize },
    #[error("mode must be 1, 3 or 5, got {0}")]
    BadMode(u8),
    #[error("embedding set {set}: {source}")]
    Partition { set: usize, source: PartitionError },
    #[error("no compatible triangulation of cell {cell} ({points} interior points per set)")]
    CellUnsolved { cell: usize, points: usize },
    #[error(transparent)]
    Tri(#[from] TriError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Which constructor produced a result; decides the Steiner budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    TwoSteiner,
    Pair { mode: u8 },
    DWay,
}

impl Construction {
    pub fn name(&self) -> &'static str {
        match self {
            Construction::TwoSteiner => "two-steiner",
            Construction::Pair { .. } => "pair",
            Construction::DWay => "dway",
        }
    }

    pub fn mode(&self) -> u8 {
        match self {
            Construction::Pair { mode } => *mode,
            _ => 1,
        }
    }

    /// Whether the Steiner points are bounded by the enclosing-disk radius.
    pub fn radius_bounded(&self) -> bool {
        !matches!(self, Construction::TwoSteiner)
    }

    /// The integer form of the Steiner budget for `n` original points:
    /// exactly 2, or at most `n / (2 mode) + 3`.
    pub fn within_budget(&self, n: usize, steiner: usize) -> bool {
        match self {
            Construction::TwoSteiner => steiner == 2,
            _ => {
                let mode = self.mode() as usize;
                2 * mode * steiner <= n + 6 * mode
            }
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Pair { mode } => write!(f, "pair (mode {mode})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Number of vertices of the smallest graph the series constructions use for
/// `n` points in the given mode: `ceil((ceil(n / mode) + 5) / 2)`.
pub fn series_steiner_count(n: usize, mode: usize) -> usize {
    (n.div_ceil(mode) + 5).div_ceil(2).max(3)
}

#[derive(Debug, Clone)]
pub struct CompatResult {
    pub construction: Construction,
    pub original_count: usize,
    pub seed: u64,
    pub slack: Rational,
    /// One per set; the base of each is the augmented point set.
    pub triangulations: Vec<Triangulation>,
    pub bijections: Vec<Bijection>,
    pub steiner_count_per_set: usize,
    /// The embedded graph per set (empty for the two-Steiner construction).
    pub skeletons: Vec<OrderedEmbedding>,
}

impl CompatResult {
    pub fn augmented_sets(&self) -> Vec<&PointSet> {
        self.triangulations.iter().map(|t| t.base()).collect()
    }

    pub fn is_steiner(&self, label: usize) -> bool {
        label >= self.original_count
    }

    /// Composition of the bijections from set `i` to set `j > i`.
    pub fn composed(&self, i: usize, j: usize) -> Bijection {
        compose_chain(&self.bijections[i..j], self.triangulations[i].base().len())
    }

    pub fn data(&self) -> ResultData {
        ResultData {
            construction: self.construction,
            original_count: self.original_count,
            seed: self.seed,
            slack: self.slack.clone(),
            steiner_count_per_set: self.steiner_count_per_set,
            sets: self
                .triangulations
                .iter()
                .map(|t| SetData {
                    points: t.base().points().to_vec(),
                    steiner: (0..t.base().len()).map(|l| self.is_steiner(l)).collect(),
                    triangles: t.triangles().iter().copied().collect(),
                })
                .collect(),
            bijections: self.bijections.iter().map(|b| b.as_slice().to_vec()).collect(),
        }
    }
}

pub(crate) fn compose_chain(chain: &[Bijection], len: usize) -> Bijection {
    chain
        .iter()
        .fold(Bijection::identity(len), |acc, f| acc.then(f))
}

/// A rational rotation under which all second coordinates are distinct,
/// with the rotated points. The identity is returned when it already works.
/// The points must be pairwise distinct.
pub fn rotate_distinct_y(s: &[Point]) -> (Rotation, Vec<Point>) {
    let distinct = |pts: &[Point]| {
        let mut ys: Vec<&Rational> = pts.iter().map(|p| &p.y).collect();
        ys.sort();
        ys.windows(2).all(|w| w[0] != w[1])
    };
    if distinct(s) {
        return (Rotation::identity(), s.to_vec());
    }
    (1..)
        .map(|k| Rotation::from_half_tangent(&rational::ratio(1, k)))
        .find_map(|rot| {
            let rotated: Vec<Point> = s.iter().map(|p| rot.apply(p)).collect();
            distinct(&rotated).then_some((rot, rotated))
        })
        .expect("finitely many directions are bad")
}

pub(crate) fn check_sizes(sets: &[&PointSet], min_sets: usize) -> Result<usize, CompatError> {
    if sets.len() < min_sets {
        return Err(CompatError::TooFewSets(sets.len()));
    }
    let n = sets[0].len();
    if n == 0 {
        return Err(CompatError::Empty);
    }
    if let Some((set, s)) = sets.iter().enumerate().find(|(_, s)| s.len() != n) {
        return Err(CompatError::SizeMismatch {
            set,
            found: s.len(),
            expected: n,
        });
    }
    Ok(n)
}

pub(crate) fn augmented(points: Vec<Point>) -> Result<Arc<PointSet>, CompatError> {
    Ok(Arc::new(PointSet::new(points)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    #[test]
    fn identity_when_distinct() {
        let s = vec![Point::from_ints(0, 0), Point::from_ints(1, 1)];
        let (rot, out) = rotate_distinct_y(&s);
        assert!(rot.is_identity());
        assert_eq!(out, s);
    }

    #[test]
    fn shared_y_is_rotated() {
        let s = vec![Point::from_ints(0, 0), Point::from_ints(3, 0), Point::from_ints(1, 5)];
        let (rot, out) = rotate_distinct_y(&s);
        assert!(!rot.is_identity());
        assert_ne!(out[0].y, out[1].y);
        let back: Vec<Point> = out.iter().map(|p| rot.inverse().apply(p)).collect();
        assert_eq!(back, s);
    }

    #[test]
    fn random_sets_get_distinct_y() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
        for _ in 0..20 {
            let mut s: Vec<Point> = (0..10)
                .map(|_| Point::from_ints(rng.gen_range(0..5), rng.gen_range(0..3)))
                .collect();
            s.sort();
            s.dedup();
            let (_, out) = rotate_distinct_y(&s);
            let mut ys: Vec<_> = out.iter().map(|p| p.y.clone()).collect();
            ys.sort();
            ys.dedup();
            assert_eq!(ys.len(), s.len());
        }
    }

    #[test]
    fn budgets() {
        assert_eq!(series_steiner_count(10, 1), 8);
        assert_eq!(series_steiner_count(9, 1), 7);
        assert_eq!(series_steiner_count(12, 3), 5);
        assert!(Construction::Pair { mode: 1 }.within_budget(10, 8));
        assert!(!Construction::Pair { mode: 1 }.within_budget(10, 9));
        assert!(Construction::Pair { mode: 3 }.within_budget(12, 5));
        assert!(!Construction::Pair { mode: 3 }.within_budget(10, 5));
        assert!(Construction::TwoSteiner.within_budget(7, 2));
        assert!(!Construction::TwoSteiner.within_budget(7, 3));
        for n in 1..200 {
            let k = series_steiner_count(n, 1);
            assert!(Construction::DWay.within_budget(n, k), "n = {n}");
            assert!(k <= n / 2 + 3);
        }
    }
}
