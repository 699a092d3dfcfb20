//! Independent re-checking of a construction's output.

use std::fmt;
use std::sync::Arc;

use super::{compose_chain, CompatResult, Construction};
use crate::geom::{smallest_enclosing_disk, Point, PointSet};
use crate::rational::{self, Rational};
use crate::tri::{is_compatible, oriented_hull_preserved, Bijection, Triangulation};

/// Plain-data form of a result: what a bundle file stores.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultData {
    pub construction: Construction,
    pub original_count: usize,
    pub seed: u64,
    pub slack: Rational,
    pub steiner_count_per_set: usize,
    pub sets: Vec<SetData>,
    pub bijections: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetData {
    pub points: Vec<Point>,
    pub steiner: Vec<bool>,
    pub triangles: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{status} {}", c.name)?;
            } else {
                writeln!(f, "{status} {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

/// Distance of the Steiner points of one set from the enclosing-disk center
/// of its original points, against the bound `2 r (1 + slack)`. All values
/// are squared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusCheck {
    pub center: Point,
    pub radius_squared: Rational,
    pub bound_squared: Rational,
    pub max_steiner_distance_squared: Rational,
}

impl RadiusCheck {
    /// A single original point has radius zero, which no distinct Steiner
    /// point can meet; the bound is then treated as not applicable.
    pub fn holds(&self) -> bool {
        self.radius_squared == rational::int(0) || self.max_steiner_distance_squared <= self.bound_squared
    }
}

pub fn radius_check(set: &SetData, slack: &Rational) -> RadiusCheck {
    let originals: Vec<Point> = set
        .points
        .iter()
        .zip(&set.steiner)
        .filter(|(_, &st)| !st)
        .map(|(p, _)| p.clone())
        .collect();
    let disk = smallest_enclosing_disk(&originals);
    let grow = rational::int(1) + slack;
    let bound_squared = &disk.radius_squared * rational::int(4) * &grow * &grow;
    let max_steiner_distance_squared = set
        .points
        .iter()
        .zip(&set.steiner)
        .filter(|(_, &st)| st)
        .map(|(p, _)| p.dist2(&disk.center))
        .max()
        .unwrap_or_else(|| rational::int(0));
    RadiusCheck {
        center: disk.center,
        radius_squared: disk.radius_squared,
        bound_squared,
        max_steiner_distance_squared,
    }
}

pub fn verify_result(r: &CompatResult) -> VerifyReport {
    verify_data(&r.data())
}

/// Re-checks every invariant of a result from its data alone.
pub fn verify_data(data: &ResultData) -> VerifyReport {
    let mut report = VerifyReport::default();
    let n = data.original_count;
    let sizes: Vec<usize> = data.sets.iter().map(|s| s.points.len()).collect();
    report.push(
        "sets",
        data.sets.len() >= 2 && sizes.iter().all(|&m| m == sizes[0]),
        format!("{} sets of sizes {:?}", data.sets.len(), sizes),
    );

    let mut triangulations: Vec<Option<Triangulation>> = Vec::new();
    for (i, set) in data.sets.iter().enumerate() {
        let steiner = set.steiner.iter().filter(|&&s| s).count();
        let flags_ok = set.steiner.len() == set.points.len()
            && steiner == data.steiner_count_per_set
            && set.points.len() == n + steiner;
        report.push(
            format!("set{i}.steiner_flags"),
            flags_ok,
            format!("{steiner} flagged of {}", set.points.len()),
        );

        let base = match PointSet::new(set.points.clone()) {
            Ok(b) => {
                report.push(format!("set{i}.general_position"), true, "");
                Arc::new(b)
            }
            Err(e) => {
                report.push(format!("set{i}.general_position"), false, e.to_string());
                triangulations.push(None);
                continue;
            }
        };
        let t = match Triangulation::new(base, set.triangles.iter().copied()) {
            Ok(t) => {
                report.push(format!("set{i}.labels"), true, "");
                t
            }
            Err(e) => {
                report.push(format!("set{i}.labels"), false, e.to_string());
                triangulations.push(None);
                continue;
            }
        };
        let defects = t.defects();
        for check in ["orientation", "emptiness", "non_crossing", "maximality", "triangle_count"] {
            let found: Vec<String> = defects
                .iter()
                .filter(|d| d.check() == check)
                .map(|d| d.to_string())
                .collect();
            let detail = match found.len() {
                0 => String::new(),
                1 => found[0].clone(),
                k => format!("{} (and {} more)", found[0], k - 1),
            };
            report.push(format!("set{i}.{check}"), found.is_empty(), detail);
        }
        if data.construction.radius_bounded() && flags_ok {
            let rc = radius_check(set, &data.slack);
            report.push(
                format!("set{i}.radius"),
                rc.holds(),
                format!(
                    "max distance^2 {} vs bound^2 {}",
                    rc.max_steiner_distance_squared, rc.bound_squared
                ),
            );
        }
        triangulations.push(Some(t));
    }

    report.push(
        "steiner_budget",
        data.construction.within_budget(n, data.steiner_count_per_set),
        format!(
            "{} Steiner points per set for n = {n}, {}",
            data.steiner_count_per_set, data.construction
        ),
    );

    let m = sizes.first().copied().unwrap_or(0);
    let mut chain: Vec<Option<Bijection>> = Vec::new();
    let expected_maps = data.sets.len().saturating_sub(1);
    report.push(
        "bijection_count",
        data.bijections.len() == expected_maps,
        format!("{} maps for {} sets", data.bijections.len(), data.sets.len()),
    );
    for (i, forward) in data.bijections.iter().enumerate() {
        let f = Bijection::new(forward.clone()).ok().filter(|f| f.len() == m);
        report.push(format!("bijection{i}.bijective"), f.is_some(), "");
        let Some(f) = f else {
            chain.push(None);
            continue;
        };
        let (Some(src), Some(dst)) = (data.sets.get(i), data.sets.get(i + 1)) else {
            chain.push(None);
            continue;
        };
        let kinds = (0..m).all(|l| src.steiner.get(l) == dst.steiner.get(f.apply(l)));
        report.push(format!("bijection{i}.steiner_preserving"), kinds, "");
        if let (Some(Some(ts)), Some(Some(tt))) = (triangulations.get(i), triangulations.get(i + 1)) {
            report.push(
                format!("bijection{i}.hull"),
                oriented_hull_preserved(ts, tt, &f),
                "",
            );
            report.push(
                format!("bijection{i}.compatible"),
                is_compatible(ts, tt, &f).unwrap_or(false),
                "",
            );
        } else {
            report.push(format!("bijection{i}.compatible"), false, "triangulation missing");
        }
        chain.push(Some(f));
    }

    // Every pair through the composed chain.
    let d = data.sets.len();
    let mut bad_pairs = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let links: Option<Vec<Bijection>> = chain.get(i..j).and_then(|c| c.iter().cloned().collect());
            let ok = match (links, &triangulations[i], &triangulations[j]) {
                (Some(links), Some(ts), Some(tt)) => {
                    is_compatible(ts, tt, &compose_chain(&links, m)).unwrap_or(false)
                }
                _ => false,
            };
            if !ok {
                bad_pairs.push((i, j));
            }
        }
    }
    report.push(
        "pairs.compatible",
        bad_pairs.is_empty(),
        if bad_pairs.is_empty() {
            format!("{} pairs", d * d.saturating_sub(1) / 2)
        } else {
            format!("incompatible pairs {bad_pairs:?}")
        },
    );
    report
}

#[cfg(test)]
mod tests {
    use super::super::{dway_steiner_compatible, steiner_compatible_pair, two_steiner_compatible, PairOptions};
    use super::*;
    use crate::tri::test_support::{random_set, rng};

    fn sample() -> CompatResult {
        let mut g = rng(50);
        let s = random_set(&mut g, 6, 100);
        let t = random_set(&mut g, 6, 100);
        steiner_compatible_pair(&s, &t, 1, &PairOptions::default()).unwrap()
    }

    #[test]
    fn constructions_pass() {
        let mut g = rng(51);
        let s = random_set(&mut g, 7, 100);
        let t = random_set(&mut g, 7, 100);
        let u = random_set(&mut g, 7, 100);
        let report = verify_result(&two_steiner_compatible(&s, &t).unwrap());
        assert!(report.passed(), "{report}");
        let report = verify_result(&sample());
        assert!(report.passed(), "{report}");
        let r = dway_steiner_compatible(&[&s, &t, &u], &PairOptions::default()).unwrap();
        let report = verify_result(&r);
        assert!(report.passed(), "{report}");
        assert!(report.get("pairs.compatible").unwrap().passed);
    }

    #[test]
    fn reversed_triangle_fails_orientation() {
        let mut data = sample().data();
        let t = &mut data.sets[0].triangles[0];
        t.swap(1, 2);
        let report = verify_data(&data);
        assert!(!report.get("set0.orientation").unwrap().passed);
    }

    #[test]
    fn deleted_triangle_fails_maximality() {
        let mut data = sample().data();
        data.sets[1].triangles.pop();
        let report = verify_data(&data);
        assert!(!report.get("set1.maximality").unwrap().passed);
        assert!(!report.get("set1.triangle_count").unwrap().passed);
    }

    #[test]
    fn swapped_bijection_fails_compatibility() {
        let mut data = sample().data();
        data.bijections[0].swap(0, 1);
        let report = verify_data(&data);
        assert!(!report.get("bijection0.compatible").unwrap().passed);
    }

    #[test]
    fn radius_values() {
        let data = sample().data();
        let rc = radius_check(&data.sets[0], &data.slack);
        assert!(rc.holds());
        assert!(rc.max_steiner_distance_squared > rc.radius_squared);
    }
}
