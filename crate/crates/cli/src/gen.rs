use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sdm_core::{BipartiteGraph, Edge, SdmInstance};

const EDGE_STREAM: u64 = 0;
const S_STREAM: u64 = 1;

/// Seeded random instance: each of the `nx * ny` possible edges is kept
/// with probability `density` (scanned x-major), then `S` is a uniform
/// `s_size`-subset of X. Edges and `S` draw from separate ChaCha8 streams
/// of the same seed, so changing `density` leaves the choice of `S` alone.
pub fn generate(nx: usize, ny: usize, density: f64, s_size: usize, seed: u64) -> SdmInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(EDGE_STREAM);
    let mut edges = Vec::new();
    for x in 0..nx {
        for y in 0..ny {
            if rng.gen_bool(density) {
                edges.push(Edge { x, y });
            }
        }
    }
    let graph = BipartiteGraph::new(nx, ny, edges).expect("generated edges are in range");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(S_STREAM);
    let mut s = sample(&mut rng, nx, s_size).into_vec();
    s.sort_unstable();
    SdmInstance::new(graph, s).expect("sampled S is a subset of X")
}
