//! Deterministic parallel sampling: work is chunked by draw index, each
//! chunk gets its own counter-based stream, and results are collected in
//! index order. Outputs are bit-identical for a fixed root seed regardless
//! of worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Draws per chunk; chunk boundaries depend only on the index.
pub const DRAW_CHUNK: usize = 256;

/// An independent generator for stream `stream` of the root `seed`.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Evaluate `f(rng_of_chunk, draw_index)` for `count` draws in parallel,
/// preserving index order in the output.
pub fn parallel_indexed_draws<T, F>(seed: u64, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, usize) -> T + Sync,
{
    let n_chunks = count.div_ceil(DRAW_CHUNK);
    let f = &f;
    (0..n_chunks)
        .into_par_iter()
        .flat_map_iter(move |c| {
            let mut rng = substream(seed, c as u64);
            let start = c * DRAW_CHUNK;
            let end = (start + DRAW_CHUNK).min(count);
            (start..end).map(move |i| f(&mut rng, i)).collect::<Vec<_>>().into_iter()
        })
        .collect()
}
