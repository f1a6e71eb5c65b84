//! Seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::Bits;
use crate::semilattice::FinMeetSemilattice;
use crate::{Error, Result};

/// A random meet-semilattice with at most `max_size` elements: the
/// intersection closure of random subsets of a small ground set, grown one
/// set at a time while the closure stays within bound.
pub fn random_semilattice(rng: &mut impl Rng, max_size: usize) -> Result<FinMeetSemilattice> {
    if max_size == 0 {
        return Err(Error::Precondition("a semilattice has at least one element".into()));
    }
    let ground = rng.gen_range(2..=5u32);
    let mut sets: Vec<Bits> = Vec::new();
    let mut lat = FinMeetSemilattice::intersection_closure(&sets)?;
    for _ in 0..rng.gen_range(1..=2 * max_size) {
        let s = Bits(rng.gen_range(1..1u64 << ground));
        sets.push(s);
        match FinMeetSemilattice::intersection_closure(&sets) {
            Ok(l) if l.size() <= max_size => lat = l,
            _ => {
                sets.pop();
            }
        }
    }
    Ok(lat)
}

/// `count` semilattices from a fixed seed.
pub fn random_semilattices(seed: u64, count: usize, max_size: usize) -> Result<Vec<FinMeetSemilattice>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_semilattice(&mut rng, max_size)).collect()
}
