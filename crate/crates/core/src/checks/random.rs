//! Seeded generators for parameters, module elements and Borel elements.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::UeaElt;
use crate::coeff::{rat, Rational};
use crate::order::MultiIndex;
use crate::rep::{BasisKey, Bounds, CharacterParams, ModElt, Space};

/// Independent stream for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `a/b` with `|a| <= 9`, `1 <= b <= 9`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

pub fn nonzero_small_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let x = small_rational(rng);
        if x != rat(0, 1) {
            return x;
        }
    }
}

/// Parameters satisfying the four simplicity conditions; also returns how
/// many draws were rejected.
pub fn sample_params<R: Rng>(rng: &mut R) -> (CharacterParams<Rational>, usize) {
    let mut rejected = 0;
    loop {
        let p = CharacterParams::new(
            nonzero_small_rational(rng),
            small_rational(rng),
            small_rational(rng),
            small_rational(rng),
            small_rational(rng),
        )
        .expect("z is nonzero");
        if p.conditions().all() {
            return (p, rejected);
        }
        rejected += 1;
    }
}

/// Parameters on the locus `m4 = z m3`.
pub fn degenerate_params<R: Rng>(rng: &mut R) -> CharacterParams<Rational> {
    let z = nonzero_small_rational(rng);
    let m3 = nonzero_small_rational(rng);
    let m4 = z.clone() * &m3;
    CharacterParams::new(z, small_rational(rng), m3, m4, small_rational(rng)).expect("z is nonzero")
}

/// A nonzero element with at most `max_terms` terms inside `bounds`.
pub fn random_element<R: Rng>(rng: &mut R, space: Space, bounds: &Bounds, max_terms: usize) -> ModElt<Rational> {
    let keys = bounds.basis(space);
    loop {
        let n = rng.gen_range(1..=max_terms);
        let mut x = ModElt::zero(space);
        for key in keys.choose_multiple(rng, n) {
            x.add_term(key.clone(), nonzero_small_rational(rng));
        }
        if !x.is_zero() {
            return x;
        }
    }
}

/// An element of `Ind` whose maximal term has component exactly `v`:
/// `l^t v` plus random terms with negative part strictly below `t`.
pub fn random_normalized<R: Rng>(rng: &mut R, bounds: &Bounds, max_terms: usize) -> ModElt<Rational> {
    let indices = MultiIndex::up_to_weight(bounds.max_weight);
    let top = indices.choose(rng).expect("nonempty").clone();
    let mut x = ModElt::basis(Space::Ind, BasisKey::new(top.clone(), 0, 0));
    let lower: Vec<BasisKey> = bounds
        .basis(Space::Ind)
        .into_iter()
        .filter(|k| k.neg < top)
        .collect();
    if !lower.is_empty() {
        let n = rng.gen_range(0..max_terms);
        for key in lower.choose_multiple(rng, n) {
            x.add_term(key.clone(), nonzero_small_rational(rng));
        }
    }
    x
}

/// A random element of `U(b)`: up to three PBW words in modes
/// `0..=max_mode` of length `1..=max_len`.
pub fn random_borel<R: Rng>(rng: &mut R, max_mode: i64, max_len: usize) -> UeaElt<Rational> {
    let mut u = UeaElt::zero();
    while u.is_zero() {
        for _ in 0..rng.gen_range(1..=3) {
            let len = rng.gen_range(1..=max_len);
            let mut modes: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=max_mode)).collect();
            modes.sort_unstable();
            u = u + UeaElt::word(&modes, 0).scale(&nonzero_small_rational(rng));
        }
    }
    u
}

/// A random multi-index of weight at most `w`.
pub fn random_multi_index<R: Rng>(rng: &mut R, w: u64) -> MultiIndex {
    let weight = rng.gen_range(0..=w);
    let mut entries = Vec::new();
    let mut left = weight;
    while left > 0 {
        let part = rng.gen_range(1..=left);
        if entries.len() < part as usize {
            entries.resize(part as usize, 0);
        }
        entries[part as usize - 1] += 1;
        left -= part;
    }
    MultiIndex::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<u32> = (0..4).map(|_| trial_rng(7, 3).gen()).collect();
        let b: Vec<u32> = (0..4).map(|_| trial_rng(7, 3).gen()).collect();
        assert_eq!(a, b);
        assert_ne!(trial_rng(7, 3).gen::<u64>(), trial_rng(7, 4).gen::<u64>());
    }

    #[test]
    fn sampled_params_satisfy_conditions() {
        let mut rng = trial_rng(1, 0);
        for _ in 0..20 {
            assert!(sample_params(&mut rng).0.conditions().all());
            assert!(!degenerate_params(&mut rng).conditions().zm3_ne_m4);
        }
    }

    #[test]
    fn normalized_top_is_v() {
        let mut rng = trial_rng(2, 0);
        let b = Bounds::new(6, 2, 2);
        for _ in 0..50 {
            let x = random_normalized(&mut rng, &b, 6);
            let (k, c) = x.leading().unwrap();
            assert_eq!((k.j, k.k), (0, 0));
            assert_eq!(c, &rat(1, 1));
            assert_eq!(x.component(&k.neg).len(), 1);
        }
    }
}
