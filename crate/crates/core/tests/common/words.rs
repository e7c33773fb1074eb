//! Random well-typed cobordism words.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tqrf_core::cobordism::{apply_generator, Cobordism, Generator, Sector};
use tqrf_core::perm::Permutation;

pub fn shuffled(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::new(v).unwrap()
}

/// A well-typed word grown from `seed`: each step picks a generator that
/// applies to the current boundary, falling back to a cylinder.
pub fn random_word(n: usize, cuts: &[usize], len: usize, seed: u64) -> Cobordism {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slots: Vec<usize> = (0..n).collect();
    slots.shuffle(&mut rng);
    let mut bounds: Vec<usize> = cuts.iter().map(|c| c % n).filter(|&c| c > 0).collect();
    bounds.extend([0, n]);
    bounds.sort_unstable();
    bounds.dedup();
    let source: Vec<Sector> =
        bounds.windows(2).enumerate().map(|(i, w)| Sector::new(format!("x{i}"), slots[w[0]..w[1]].to_vec())).collect();
    let mut fresh = source.len();
    let mut name = || {
        fresh += 1;
        format!("x{fresh}")
    };
    let mut b = source.clone();
    let mut word = Vec::new();
    for _ in 0..len {
        let i = rng.gen_range(0..b.len());
        let g = match rng.gen_range(0..4) {
            1 if b.len() >= 2 => {
                let mut j = rng.gen_range(0..b.len() - 1);
                if j >= i {
                    j += 1;
                }
                let joined = b[i].slots.iter().chain(&b[j].slots).copied().collect();
                Generator::Pants { left: b[i].name.clone(), right: b[j].name.clone(), into: Sector::new(name(), joined) }
            }
            2 if b[i].slots.len() >= 2 => {
                let at = rng.gen_range(1..b[i].slots.len());
                Generator::Copants {
                    from: b[i].name.clone(),
                    left: Sector::new(name(), b[i].slots[..at].to_vec()),
                    right: Sector::new(name(), b[i].slots[at..].to_vec()),
                }
            }
            3 => Generator::Rotate { sector: b[i].name.clone(), rho: shuffled(b[i].register_dim(), &mut rng) },
            _ => Generator::Cylinder { sector: b[i].name.clone() },
        };
        b = apply_generator(&b, &g).unwrap();
        word.push(g);
    }
    Cobordism::new(source, word).unwrap()
}

