//! Compatibility of triangulations.
//!
//! Two triangulations are compatible under `f` when `f` maps the clockwise
//! triangles of one exactly onto the clockwise triangles of the other.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::{canonical_triple, enumerate_triangulations_with_cap, Bijection, TriError, Triangulation};
use crate::geom::PointSet;
use crate::par;

pub fn is_compatible(
    ts: &Triangulation,
    tt: &Triangulation,
    f: &Bijection,
) -> Result<bool, TriError> {
    let (left, right) = (ts.base().len(), tt.base().len());
    if left != right || f.len() != left {
        return Err(TriError::SizeMismatch {
            left,
            right: if left != right { right } else { f.len() },
        });
    }
    let source = ts.oriented_faces();
    let target = tt.oriented_faces();
    if source.len() != target.len() {
        return Ok(false);
    }
    Ok(source
        .iter()
        .all(|t| target.contains(&canonical_triple(t.map(|v| f.apply(v))))))
}

/// Whether `f` sends the hull of `ts` onto the hull of `tt` with the same
/// cyclic (clockwise) order.
pub fn oriented_hull_preserved(ts: &Triangulation, tt: &Triangulation, f: &Bijection) -> bool {
    let hs = ts.base().hull();
    let ht = tt.base().hull();
    if hs.len() != ht.len() || hs.is_empty() {
        return hs.len() == ht.len();
    }
    let Some(offset) = ht.iter().position(|&v| v == f.apply(hs[0])) else {
        return false;
    };
    (0..hs.len()).all(|i| f.apply(hs[i]) == ht[(offset + i) % ht.len()])
}

/// Directed edge `(u, v)` to the third vertex of the clockwise face that has
/// `u -> v` as one of its sides.
fn directed_faces(t: &Triangulation) -> HashMap<(usize, usize), usize> {
    let mut map = HashMap::with_capacity(3 * t.len());
    for [a, b, c] in t.oriented_faces() {
        map.insert((a, b), c);
        map.insert((b, c), a);
        map.insert((c, a), b);
    }
    map
}

/// Extends `seed` (directed edge of `ts` to directed edge of `tt`) face by
/// face. The seed determines the whole map, so this either produces the
/// unique candidate or fails.
fn propagate(
    n: usize,
    source: &HashMap<(usize, usize), usize>,
    target: &HashMap<(usize, usize), usize>,
    seed: ((usize, usize), (usize, usize)),
) -> Option<Bijection> {
    let mut forward = vec![usize::MAX; n];
    let mut backward = vec![usize::MAX; n];
    let assign = |s: usize, t: usize, fw: &mut Vec<usize>, bw: &mut Vec<usize>| -> bool {
        if fw[s] == usize::MAX && bw[t] == usize::MAX {
            fw[s] = t;
            bw[t] = s;
            true
        } else {
            fw[s] == t && bw[t] == s
        }
    };
    let ((s0, s1), (t0, t1)) = seed;
    if !assign(s0, t0, &mut forward, &mut backward) || !assign(s1, t1, &mut forward, &mut backward)
    {
        return None;
    }
    let mut queue = VecDeque::from([(s0, s1)]);
    let mut visited = std::collections::HashSet::new();
    while let Some((u, v)) = queue.pop_front() {
        if !visited.insert((u, v)) {
            continue;
        }
        let (fu, fv) = (forward[u], forward[v]);
        match (source.get(&(u, v)), target.get(&(fu, fv))) {
            (None, None) => continue,
            (Some(&w), Some(&fw)) => {
                if !assign(w, fw, &mut forward, &mut backward) {
                    return None;
                }
                for e in [(v, w), (w, u), (v, u), (w, v), (u, w)] {
                    queue.push_back(e);
                }
            }
            _ => return None,
        }
    }
    if forward.contains(&usize::MAX) {
        return None;
    }
    Bijection::new(forward).ok()
}

/// Searches for a bijection making `ts` and `tt` compatible. With
/// `hull_map = Some(pairs)` the result must send each `pairs[i].0` to
/// `pairs[i].1`; the pairs must list a hull in clockwise order on both sides.
/// Without it every rotation of the hull correspondence is tried.
pub fn find_compatibility_bijection(
    ts: &Triangulation,
    tt: &Triangulation,
    hull_map: Option<&[(usize, usize)]>,
) -> Option<Bijection> {
    let n = ts.base().len();
    if n != tt.base().len() || ts.len() != tt.len() {
        return None;
    }
    let hs = ts.base().hull();
    let ht = tt.base().hull();
    if hs.len() != ht.len() || hs.len() < 3 {
        return None;
    }
    let source = directed_faces(ts);
    let target = directed_faces(tt);

    let seeds: Vec<((usize, usize), (usize, usize))> = match hull_map {
        Some(pairs) => {
            let image = |v: usize| pairs.iter().find(|(s, _)| *s == v).map(|(_, t)| *t);
            let (Some(t0), Some(t1)) = (image(hs[0]), image(hs[1])) else {
                return None;
            };
            vec![((hs[0], hs[1]), (t0, t1))]
        }
        None => (0..ht.len())
            .map(|r| ((hs[0], hs[1]), (ht[r], ht[(r + 1) % ht.len()])))
            .collect(),
    };

    seeds.into_iter().find_map(|seed| {
        let f = propagate(n, &source, &target, seed)?;
        if let Some(pairs) = hull_map {
            if pairs.iter().any(|&(s, t)| f.apply(s) != t) {
                return None;
            }
        }
        (is_compatible(ts, tt, &f).ok()? && oriented_hull_preserved(ts, tt, &f)).then_some(f)
    })
}

/// Joint exhaustive search for a compatible pair of triangulations of two
/// small point sets.
pub fn compatible_triangulation_small(
    s: &Arc<PointSet>,
    t: &Arc<PointSet>,
    hull_map: Option<&[(usize, usize)]>,
    cap: usize,
) -> Result<Option<(Triangulation, Triangulation, Bijection)>, TriError> {
    if s.len() != t.len() {
        return Err(TriError::SizeMismatch {
            left: s.len(),
            right: t.len(),
        });
    }
    let left = enumerate_triangulations_with_cap(s, cap)?;
    let right = enumerate_triangulations_with_cap(t, cap)?;
    Ok(par::find_map_first(&left, |ts| {
        right.iter().find_map(|tt| {
            find_compatibility_bijection(ts, tt, hull_map).map(|f| (ts.clone(), tt.clone(), f))
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::super::{enumerate_triangulations, triangulate_greedy};
    use super::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if prefix.len() == used.len() {
                out.push(prefix.clone());
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    prefix.push(v);
                    go(prefix, used, out);
                    prefix.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    #[test]
    fn identity_is_compatible() {
        let mut r = rng(1);
        let s = random_set(&mut r, 9, 100);
        let t = triangulate_greedy(s);
        let id = Bijection::identity(9);
        assert!(is_compatible(&t, &t, &id).unwrap());
        let found = find_compatibility_bijection(&t, &t, None).unwrap();
        assert!(is_compatible(&t, &t, &found).unwrap());
        // The identity extends the hull identity.
        let hull = t.base().hull();
        let pairs: Vec<_> = hull.iter().map(|&h| (h, h)).collect();
        assert_eq!(find_compatibility_bijection(&t, &t, Some(&pairs)), Some(id));
    }

    #[test]
    fn mirror_image_is_not_compatible_under_identity() {
        let mut r = rng(2);
        let s = random_set(&mut r, 7, 100);
        let mirror = mirrored(&s);
        let ts = triangulate_greedy(s);
        let faces: Vec<[usize; 3]> = ts.triangles().iter().copied().collect();
        let tm = Triangulation::from_faces(mirror, faces).unwrap();
        assert_eq!(tm.validate(), Ok(()));
        assert!(!is_compatible(&ts, &tm, &Bijection::identity(7)).unwrap());
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let a = triangulate_greedy(set(&[(0, 0), (4, 0), (0, 4)]));
        let b = triangulate_greedy(set(&[(0, 0), (4, 0), (0, 4), (1, 1)]));
        assert!(is_compatible(&a, &b, &Bijection::identity(3)).is_err());
    }

    #[test]
    fn different_hull_sizes_never_match() {
        let a = triangulate_greedy(set(&[(0, 0), (6, 0), (0, 6), (1, 1), (2, 1)]));
        let b = triangulate_greedy(set(&[(0, 0), (6, 0), (6, 6), (0, 6), (2, 3)]));
        assert_eq!(find_compatibility_bijection(&a, &b, None), None);
    }

    /// Compatible iff some extension of the fixed hull rotation works,
    /// checked over every permutation of the interior labels.
    fn brute_force(ts: &Triangulation, tt: &Triangulation, pairs: &[(usize, usize)]) -> bool {
        let n = ts.base().len();
        let interior_s: Vec<usize> = (0..n).filter(|v| !pairs.iter().any(|p| p.0 == *v)).collect();
        let interior_t: Vec<usize> = (0..n).filter(|v| !pairs.iter().any(|p| p.1 == *v)).collect();
        permutations(interior_s.len()).into_iter().any(|perm| {
            let mut forward = vec![0; n];
            for &(a, b) in pairs {
                forward[a] = b;
            }
            for (i, &v) in interior_s.iter().enumerate() {
                forward[v] = interior_t[perm[i]];
            }
            is_compatible(ts, tt, &Bijection::new(forward).unwrap()).unwrap()
        })
    }

    #[test]
    fn agrees_with_exhaustive_extension_search() {
        let mut r = rng(9);
        let mut compatible_pairs = 0;
        let mut trials = 0;
        while trials < 12 {
            let s = random_set(&mut r, 6, 40);
            let t = random_set(&mut r, 6, 40);
            if s.hull().len() != 3 || t.hull().len() != 3 {
                continue;
            }
            trials += 1;
            let (hs, ht) = (s.hull(), t.hull());
            for rot in 0..3 {
                let pairs: Vec<(usize, usize)> =
                    (0..3).map(|i| (hs[i], ht[(i + rot) % 3])).collect();
                for ts in enumerate_triangulations(&s).unwrap() {
                    for tt in enumerate_triangulations(&t).unwrap() {
                        let found = find_compatibility_bijection(&ts, &tt, Some(&pairs));
                        assert_eq!(found.is_some(), brute_force(&ts, &tt, &pairs));
                        if let Some(f) = found {
                            compatible_pairs += 1;
                            assert!(pairs.iter().all(|&(a, b)| f.apply(a) == b));
                        }
                    }
                }
            }
        }
        assert!(compatible_pairs > 0);
    }

    #[test]
    fn three_interior_points_always_match() {
        let mut r = rng(13);
        let mut done = 0;
        while done < 10 {
            let s = random_set(&mut r, 6, 60);
            let t = random_set(&mut r, 6, 60);
            if s.hull().len() != 3 || t.hull().len() != 3 {
                continue;
            }
            done += 1;
            let (hs, ht) = (s.hull(), t.hull());
            for rot in 0..3 {
                let pairs: Vec<(usize, usize)> =
                    (0..3).map(|i| (hs[i], ht[(i + rot) % 3])).collect();
                let found = compatible_triangulation_small(&s, &t, Some(&pairs), 10).unwrap();
                let (a, b, f) = found.expect("three interior points always admit a match");
                assert!(is_compatible(&a, &b, &f).unwrap());
                assert!(oriented_hull_preserved(&a, &b, &f));
            }
        }
    }

    #[test]
    fn compatibility_is_symmetric_and_transitive() {
        let mut r = rng(17);
        let sets: Vec<_> = std::iter::repeat_with(|| random_set(&mut r, 6, 60))
            .filter(|s| s.hull().len() == 3)
            .take(3)
            .collect();
        let tris: Vec<Vec<Triangulation>> =
            sets.iter().map(|s| enumerate_triangulations(s).unwrap()).collect();
        // Find a chain t0 ~ t1 ~ t2.
        for a in &tris[0] {
            for b in &tris[1] {
                let Some(f) = find_compatibility_bijection(a, b, None) else { continue };
                assert!(is_compatible(b, a, &f.inverse()).unwrap());
                for c in &tris[2] {
                    if let Some(g) = find_compatibility_bijection(b, c, None) {
                        assert!(is_compatible(a, c, &f.then(&g)).unwrap());
                    }
                }
            }
        }
    }
}
