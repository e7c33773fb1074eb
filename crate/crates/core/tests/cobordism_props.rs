use std::sync::Arc;

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tqrf_core::cccd::{basis_rotation, build_elementary, fission, fuse_split, Diagram, DiagramMorphism};
use tqrf_core::cobordism::{
    bit_permutation, commuting_square_check, encode_commutes, functor_f, hab_eigenvalue, register_dim, tqft_eval,
    Cobordism, Generator, InteractionSpec, Sector,
};
use tqrf_core::qrf::BitString;
use tqrf_core::rational::{q, Q};

use common::words::{random_word, shuffled};

fn word_strategy() -> impl Strategy<Value = Cobordism> {
    (1usize..=6, proptest::collection::vec(0usize..6, 0..3), 0usize..=8, any::<u64>())
        .prop_map(|(n, cuts, len, seed)| random_word(n, &cuts, len, seed))
}

/// Independent evaluation: carry a slot → bit table through the word.
fn simulate(c: &Cobordism, index: usize) -> usize {
    let n: usize = c.source().iter().map(|s| s.slots.len()).sum();
    let mut bit = std::collections::HashMap::new();
    let order: Vec<usize> = c.source().iter().flat_map(|s| s.slots.clone()).collect();
    for (k, slot) in order.iter().enumerate() {
        bit.insert(*slot, (index >> (n - 1 - k)) & 1);
    }
    for (g, before) in c.word().iter().zip(c.boundaries()) {
        if let Generator::Rotate { sector, rho } = g {
            let s = before.iter().find(|s| &s.name == sector).unwrap();
            let w = s.slots.len();
            let v = s.slots.iter().fold(0, |a, x| a * 2 + bit[x]);
            let nv = rho.apply(v);
            for (k, x) in s.slots.iter().enumerate() {
                bit.insert(*x, (nv >> (w - 1 - k)) & 1);
            }
        }
    }
    c.target().iter().flat_map(|s| s.slots.iter()).fold(0, |a, x| a * 2 + bit[x])
}

#[derive(Clone, Debug)]
enum Move {
    Fission(usize),
    Fusion(usize),
    Rotate(usize, u64),
}

fn apply_move(d: &Diagram, mv: &Move) -> Option<(DiagramMorphism, Diagram)> {
    let m = d.dimension();
    match *mv {
        Move::Fission(s) => fission(d, 1 + s % (m - 1).max(1)).ok(),
        Move::Fusion(s) => fuse_split(d, 1 + s % (m - 1).max(1)).ok(),
        Move::Rotate(k, seed) => {
            let k = k % m;
            let rho = shuffled(1 << (m - k), &mut ChaCha8Rng::seed_from_u64(seed));
            basis_rotation(d, k, &rho).ok()
        }
    }
}

fn move_strategy() -> impl Strategy<Value = Move> {
    prop_oneof![
        (0usize..4).prop_map(Move::Fission),
        (0usize..4).prop_map(Move::Fusion),
        (0usize..4, any::<u64>()).prop_map(|(k, s)| Move::Rotate(k, s)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn evaluation_is_a_functor(c in word_strategy(), cut in 0usize..=8) {
        let cut = cut.min(c.word().len());
        let first = Cobordism::new(c.source().to_vec(), c.word()[..cut].to_vec()).unwrap();
        let second = Cobordism::new(first.target().to_vec(), c.word()[cut..].to_vec()).unwrap();
        let glued = first.then(&second).unwrap();
        prop_assert_eq!(&glued, &c);
        let whole = tqft_eval(&c).unwrap().perm;
        prop_assert_eq!(&whole, &tqft_eval(&first).unwrap().perm.then(&tqft_eval(&second).unwrap().perm).unwrap());
        prop_assert!(tqft_eval(&Cobordism::identity(c.source().to_vec()).unwrap()).unwrap().perm.is_identity());
        for i in 0..register_dim(c.source()) {
            prop_assert_eq!(whole.apply(i), simulate(&c, i));
        }
    }

    #[test]
    fn generators_conserve_slots(c in word_strategy()) {
        let bs = c.boundaries();
        let total = |b: &[Sector]| b.iter().map(|s| s.slots.len()).sum::<usize>();
        for (g, w) in c.word().iter().zip(bs.windows(2)) {
            prop_assert_eq!(total(&w[0]), total(&w[1]));
            prop_assert_eq!(register_dim(&w[0]), register_dim(&w[1]));
            match g {
                Generator::Copants { from, left, right } => {
                    let s = w[0].iter().find(|s| &s.name == from).unwrap();
                    prop_assert_eq!(s.register_dim(), left.register_dim() * right.register_dim());
                }
                Generator::Pants { left, right, into } => {
                    let l = w[0].iter().find(|s| &s.name == left).unwrap();
                    let r = w[0].iter().find(|s| &s.name == right).unwrap();
                    prop_assert_eq!(into.register_dim(), l.register_dim() * r.register_dim());
                }
                _ => {}
            }
        }
    }

    #[test]
    fn the_functor_preserves_identities_and_composition(
        bits in 0u64..16,
        m in 2usize..=4,
        moves in proptest::collection::vec(move_strategy(), 1..=4),
    ) {
        let d = build_elementary(&BitString::new(m, bits % (1 << m)).unwrap()).unwrap();
        let id = DiagramMorphism::identity(Arc::new(d.clone()));
        let fid = functor_f(&id).unwrap();
        prop_assert!(fid.equivalent(&Cobordism::identity(fid.source().to_vec()).unwrap()));
        let mut chain = id;
        let mut image = fid;
        let mut at = d;
        for mv in &moves {
            let Some((f, next)) = apply_move(&at, mv) else { continue };
            let composite = chain.then(&f).unwrap();
            let piecewise = image.then(&functor_f(&f).unwrap()).unwrap();
            let direct = functor_f(&composite).unwrap();
            prop_assert!(direct.equivalent(&piecewise));
            prop_assert_eq!(tqft_eval(&direct).unwrap().perm, tqft_eval(&piecewise).unwrap().perm);
            prop_assert!(commuting_square_check(&composite).unwrap().holds);
            chain = composite;
            image = piecewise;
            at = next;
        }
    }

    #[test]
    fn hab_is_symmetric(
        weights in proptest::collection::vec(1i64..6, 1..6),
        spins in proptest::collection::vec(any::<bool>(), 6),
        beta in 693i64..2000,
        seed in any::<u64>(),
    ) {
        let n = weights.len();
        let total: i64 = weights.iter().sum();
        let alphas: Vec<Q> = weights.iter().map(|&w| q(w, total)).collect();
        let s: Vec<i8> = spins[..n].iter().map(|&b| if b { 1 } else { -1 }).collect();
        let spec = InteractionSpec::new(q(beta, 1000), q(3, 2), alphas.clone(), false).unwrap();
        let p = shuffled(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let pa: Vec<Q> = (0..n).map(|i| alphas[p.apply(i)].clone()).collect();
        let ps: Vec<i8> = (0..n).map(|i| s[p.apply(i)]).collect();
        let permuted = InteractionSpec::new(q(beta, 1000), q(3, 2), pa, false).unwrap();
        prop_assert_eq!(hab_eigenvalue(&spec, &s).unwrap(), hab_eigenvalue(&permuted, &ps).unwrap());
        let uniform = InteractionSpec::uniform(q(beta, 1000), q(3, 2), n, false).unwrap();
        prop_assert_eq!(hab_eigenvalue(&uniform, &s).unwrap(), hab_eigenvalue(&uniform, &ps).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn encoding_commutes_with_bijective_dynamics(n in 1usize..=10, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dynamics = shuffled(1 << n, &mut rng);
        let wiring = bit_permutation(n, &shuffled(n, &mut rng)).unwrap();
        for x in BitString::all(n) {
            prop_assert!(encode_commutes(&x, &dynamics).unwrap());
            prop_assert!(encode_commutes(&x, &wiring).unwrap());
        }
    }
}
