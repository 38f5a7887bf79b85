use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Root of a family of per-trial random streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngSeed {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngSeed {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    /// Generator for one trial. The ChaCha key holds `(seed, stream_id)` and
    /// the trial index selects the ChaCha stream, so every
    /// `(seed, stream_id, trial)` triple has its own sequence.
    pub fn trial_rng(&self, trial: u64) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&self.stream_id.to_le_bytes());
        key[16..].copy_from_slice(b"mmwave-relay-ee\0");
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(trial);
        rng
    }
}
