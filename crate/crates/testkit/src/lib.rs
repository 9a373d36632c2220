//! Brute-force oracles and random instance generators shared by the test
//! suites. The oracles deliberately avoid the algorithms they check: no
//! sweeps, no DFS pruning, no table algebra.

pub mod gen;
pub mod oracle;

use rand::rngs::StdRng;
pub use rand::Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
