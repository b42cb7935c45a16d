//! Reproducible quiver families for tests, benchmarks and the `suite` command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quiver::Quiver;

/// `count` random quivers with `1..=max_vertices` vertices and
/// `0..=max_arrows` arrows, each arrow with uniformly chosen endpoints
/// (loops and multiple arrows allowed).
pub fn random_quivers(
    seed: u64,
    count: usize,
    max_vertices: usize,
    max_arrows: usize,
) -> Vec<Quiver> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_vertices.max(1));
            let m = rng.gen_range(0..=max_arrows);
            let edges: Vec<(usize, usize)> = (0..m)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect();
            Quiver::from_edges(n, &edges).expect("indices in range")
        })
        .collect()
}

/// The standard fixed-seed suite: 200 quivers, at most 5 vertices and 7 arrows.
pub fn standard_suite(seed: u64) -> Vec<Quiver> {
    random_quivers(seed, 200, 5, 7)
}

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// The line quiver on `forward.len() + 1` vertices whose `i`-th arrow points
/// from `v_i` to `v_{i+1}` when `forward[i]` holds and backwards otherwise.
pub fn line_quiver(forward: &[bool]) -> Quiver {
    let edges: Vec<(usize, usize)> = forward
        .iter()
        .enumerate()
        .map(|(i, &f)| if f { (i, i + 1) } else { (i + 1, i) })
        .collect();
    Quiver::from_edges(forward.len() + 1, &edges).expect("indices in range")
}

/// All `2^(n-1)` orientations of the line with `n` vertices.
pub fn line_orientations(n: usize) -> Vec<Quiver> {
    let arrows = n.saturating_sub(1);
    (0..1u32 << arrows)
        .map(|mask| {
            let forward: Vec<bool> = (0..arrows).map(|i| mask >> i & 1 == 1).collect();
            line_quiver(&forward)
        })
        .collect()
}

/// The directed cycle on `n` vertices.
pub fn cycle_quiver(n: usize) -> Quiver {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Quiver::from_edges(n, &edges).expect("indices in range")
}
