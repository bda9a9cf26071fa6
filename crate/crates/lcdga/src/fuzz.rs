//! Randomized chain-map checks on admissible braids.

use crate::braid::{half_twist, BraidWord};
use crate::cobordism::{certify_proper, saddle_map};
use crate::error::Result;
use crate::spec::ClosureSpec;
use crate::worked::Check;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// A positive braid on 2 to 4 strands with at most `max_len` crossings: a
/// random positive word with a half-twist inserted at a random place.
pub fn random_admissible(rng: &mut impl Rng, max_len: usize) -> Result<BraidWord> {
    let strands = rng.gen_range(2..=4usize);
    let delta = half_twist(strands)?.letters().to_vec();
    let extra = rng.gen_range(0..=max_len.saturating_sub(delta.len()));
    let mut letters: Vec<usize> = (0..extra).map(|_| rng.gen_range(1..strands)).collect();
    let at = rng.gen_range(0..=letters.len());
    letters.splice(at..at, delta);
    BraidWord::new(strands, letters)
}

/// Saddles at random certified-proper crossings, each chain-map checked.
/// Returns the number of saddles performed.
pub fn random_pinches(spec: &ClosureSpec, rng: &mut impl Rng, max_pinches: usize) -> Result<usize> {
    let mut cur = spec.clone();
    let mut done = 0;
    while done < max_pinches {
        let proper: Vec<usize> = (0..cur.len()).filter(|&p| certify_proper(&cur, p)).collect();
        if proper.is_empty() {
            break;
        }
        let pos = proper[rng.gen_range(0..proper.len())];
        let (next, map) = saddle_map(&cur, pos)?;
        map.verify()?;
        cur = next;
        done += 1;
    }
    Ok(done)
}

/// `count` random braids from `seed`; one check per braid. Case `i` uses its
/// own generator seeded from `seed` and `i`, so results do not depend on the
/// number of worker threads.
pub fn fuzz_chain_maps(seed: u64, count: usize, max_len: usize) -> Vec<Check> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let outcome = random_admissible(&mut rng, max_len).and_then(|word| {
                let text = word.letters().iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ");
                let spec = ClosureSpec::standard(&format!("fuzz{i}"), word)?;
                let n = random_pinches(&spec, &mut rng, spec.len())?;
                Ok((text, n))
            });
            match outcome {
                Ok((text, n)) => Check::new(format!("fuzz {i}"), true, format!("word [{text}], {n} saddles")),
                Err(e) => Check::new(format!("fuzz {i}"), false, e.to_string()),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::contains_half_twist;

    #[test]
    fn random_braids_are_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let w = random_admissible(&mut rng, 12).unwrap();
            assert!(w.len() <= 12);
            assert!(contains_half_twist(&w, &[], 0));
        }
    }

    #[test]
    fn small_fuzz_run() {
        for c in fuzz_chain_maps(1, 8, 10) {
            assert!(c.passed(), "{} {}", c.name, c.detail);
        }
    }
}
