use rand::RngCore;

/// Uniform integer in `lo..=hi`.
///
/// Works on `u64` only so that streams do not depend on pointer width.
pub(crate) fn uniform_inclusive<R: RngCore>(rng: &mut R, lo: u64, hi: u64) -> u64 {
    debug_assert!(lo <= hi);
    let span = hi - lo;
    if span == u64::MAX {
        return rng.next_u64();
    }
    let bound = span + 1;
    // Rejection sampling over the largest multiple of `bound`.
    let zone = u64::MAX - (u64::MAX - bound + 1) % bound;
    loop {
        let x = rng.next_u64();
        if x <= zone {
            return lo + x % bound;
        }
    }
}

/// Uniform index in `0..len`.
pub(crate) fn uniform_index<R: RngCore>(rng: &mut R, len: usize) -> usize {
    uniform_inclusive(rng, 0, len as u64 - 1) as usize
}

/// Moves a uniform sample of `k` items to the front of `items`.
pub(crate) fn partial_shuffle<R: RngCore, T>(rng: &mut R, items: &mut [T], k: usize) {
    let len = items.len();
    for i in 0..k.min(len) {
        let j = i + uniform_index(rng, len - i);
        items.swap(i, j);
    }
}
