//! Random search for the three-way and two-point-cell counterexample sets.
//! Prints coordinate arrays in the form used by `compat::fixtures`.
//!
//!     cargo run --release --example find_fixtures [seed]

use std::sync::Arc;

use compatri::compat::{forced_interior_cycle, forced_star_corner, threeway_certificate};
use compatri::geom::{Point, PointSet};
use compatri::tri::forced_edges;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORNERS: [(i64, i64); 3] = [(0, 0), (60, 100), (120, 0)];

fn random_cell(rng: &mut ChaCha8Rng, interior: usize) -> Option<(Vec<(i64, i64)>, Arc<PointSet>)> {
    let mut coords = CORNERS.to_vec();
    while coords.len() < 3 + interior {
        let (x, y) = (rng.gen_range(1..120), rng.gen_range(1..100));
        // Strictly inside the corner triangle.
        if 5 * x > 3 * y && 5 * (120 - x) > 3 * y {
            coords.push((x, y));
        }
    }
    let pts = coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect();
    let s = Arc::new(PointSet::new(pts).ok()?);
    (s.hull().len() == 3).then_some((coords, s))
}

fn print(name: &str, coords: &[(i64, i64)]) {
    let body: Vec<String> = coords.iter().map(|(x, y)| format!("({x}, {y})")).collect();
    println!("{name}: [{}]", body.join(", "));
}

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut star = None;
    let mut cycle = None;
    while star.is_none() || cycle.is_none() {
        let Some((coords, s)) = random_cell(&mut rng, 3) else { continue };
        if star.is_none() && forced_star_corner(&s).unwrap().is_some() {
            star = Some((coords, s));
        } else if cycle.is_none() && forced_interior_cycle(&s).unwrap().is_some() {
            cycle = Some((coords, s));
        }
    }
    let (star, cycle) = (star.unwrap(), cycle.unwrap());
    print("star", &star.0);
    print("cycle", &cycle.0);
    let third = loop {
        let Some((coords, s)) = random_cell(&mut rng, 3) else { continue };
        let cert = threeway_certificate(&[star.1.clone(), cycle.1.clone(), s.clone()], None).unwrap();
        if cert.triple.is_none() && cert.pair_compatible.iter().all(|&b| b) {
            break coords;
        }
    };
    print("third", &third);

    // One cell per corner with both edges from that corner to the interior
    // points forced.
    let mut cells: [Option<Vec<(i64, i64)>>; 3] = [None, None, None];
    while cells.iter().any(Option::is_none) {
        let Some((coords, s)) = random_cell(&mut rng, 2) else { continue };
        let forced = forced_edges(&s).unwrap();
        for c in 0..3 {
            if cells[c].is_none() && forced.contains(&(c, 3)) && forced.contains(&(c, 4)) {
                cells[c] = Some(coords.clone());
            }
        }
    }
    for (c, cell) in cells.iter().enumerate() {
        print(&format!("cell{c}"), cell.as_ref().unwrap());
    }
}
