//! Deterministic random streams.
//!
//! Every random quantity in a drop is drawn from a ChaCha8 stream keyed by the
//! master seed, the drop index and a purpose tag (plus link identifiers for
//! fast fading). Streams never depend on execution order, so drops can run in
//! parallel and sweeps over unrelated parameters see identical geometry.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Purpose tags separating the per-drop streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Geometry = 1,
    LargeScale = 2,
    WlanFading = 3,
    UtFading = 4,
    Covariance = 5,
    Activity = 6,
    WlanToUt = 7,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a sequence of identifiers into one 64-bit seed.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(splitmix64(master), |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

pub fn keyed(master: u64, parts: &[u64]) -> SimRng {
    SimRng::seed_from_u64(derive_seed(master, parts))
}

/// Seed identifying one drop of a campaign.
pub fn drop_seed(master: u64, drop_index: u64) -> u64 {
    derive_seed(master, &[0xD209, drop_index])
}

pub fn stream(drop_seed: u64, which: Stream) -> SimRng {
    keyed(drop_seed, &[which as u64])
}
