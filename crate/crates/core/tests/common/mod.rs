#![allow(dead_code)]

use std::collections::BTreeSet;

use boxpleat::polycube::{Cell, Dir, Face, Polycube};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5EED_B0C5;

pub fn poly(text: &str) -> Polycube {
    boxpleat::parse_polycube(text).unwrap().polycube
}

pub fn cells(list: &[(i32, i32, i32)]) -> Polycube {
    Polycube::new(list.iter().map(|&(x, y, z)| Cell::new(x, y, z))).unwrap()
}

/// Grow a polycube by attaching random neighbors.
pub fn random_polycube(rng: &mut ChaCha8Rng, n: usize) -> Polycube {
    let mut set = BTreeSet::from([Cell::new(0, 0, 0)]);
    while set.len() < n {
        let v: Vec<Cell> = set.iter().copied().collect();
        let c = v[rng.gen_range(0..v.len())];
        set.insert(c.step(Dir::ALL[rng.gen_range(0..6)]));
    }
    Polycube::new(set).unwrap()
}

/// Deterministic corpus of `count` polycubes with sizes cycling through
/// `1..=6`, each paired with a random boundary face for the seam.
pub fn corpus(count: usize) -> Vec<(Polycube, Face)> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..count)
        .map(|i| {
            let p = random_polycube(&mut rng, 1 + i % 6);
            let (faces, _) = p.surface_and_interior();
            let faces: Vec<Face> = faces.into_iter().collect();
            let g = faces[rng.gen_range(0..faces.len())];
            (p, g)
        })
        .collect()
}
