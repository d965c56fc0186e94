//! Seeded random elements of SL(2,Z) as short words in `S`, `T` and `T⁻¹`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conjugacy::{classify, minimize};
use crate::lattice::UniMatrix;
use crate::OperatorClass;

/// A word of length `0..=max_len`.
pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> UniMatrix {
    let len = rng.gen_range(0..=max_len);
    let letters = [UniMatrix::s(), UniMatrix::t(), UniMatrix::t().inverse()];
    (0..len).fold(UniMatrix::identity(), |acc, _| &acc * &letters[rng.gen_range(0..3)])
}

pub fn seeded_matrices(seed: u64, count: usize, max_len: usize) -> Vec<UniMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_word(&mut rng, max_len)).collect()
}

/// Words whose operator has infinite order.
pub fn seeded_non_periodic(seed: u64, count: usize, max_len: usize) -> Vec<UniMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::repeat_with(|| random_word(&mut rng, max_len))
        .filter(|a| !classify(a).expect("words are in SL(2,Z)").is_periodic())
        .take(count)
        .collect()
}

/// Minimal matrices of hyperbolic operators.
pub fn seeded_minimal_hyperbolic(seed: u64, count: usize, max_len: usize) -> Vec<UniMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::repeat_with(|| random_word(&mut rng, max_len))
        .filter(|a| classify(a).expect("words are in SL(2,Z)") == OperatorClass::Hyperbolic)
        .map(|a| minimize(&a).expect("words are in SL(2,Z)").minimal)
        .take(count)
        .collect()
}
