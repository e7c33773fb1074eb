use super::*;
use crate::cccd::{basis_rotation, build_elementary, fission, fuse_split, DiagramMorphism};
use crate::perm::Permutation;
use crate::qrf::BitString;
use std::sync::Arc;

fn bs(s: &str) -> BitString {
    s.parse().unwrap()
}

fn all_perms(n: usize) -> Vec<Permutation> {
    fn go(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if left.is_empty() {
            out.push(Permutation::new(prefix.clone()).unwrap());
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            prefix.push(x);
            go(prefix, left, out);
            prefix.pop();
            left.insert(i, x);
        }
    }
    let mut out = vec![];
    go(&mut vec![], &mut (0..n).collect(), &mut out);
    out
}

#[test]
fn identity_maps_to_cylinders() {
    let d = Arc::new(build_elementary(&bs("101")).unwrap());
    let id = DiagramMorphism::identity(d);
    let c = functor_f(&id).unwrap();
    assert_eq!(c.word(), &[Generator::Cylinder { sector: "s0_3".into() }]);
    assert!(c.equivalent(&Cobordism::identity(vec![Sector::block(0, 3)]).unwrap()));
    assert!(tqft_eval(&c).unwrap().perm.is_identity());
    assert!(commuting_square_check(&id).unwrap().holds);
}

#[test]
fn fission_then_fusion_is_copants_then_pants() {
    let d = build_elementary(&bs("1010")).unwrap();
    let (f, d1) = fission(&d, 2).unwrap();
    let (g, d2) = fuse_split(&d1, 2).unwrap();
    assert_eq!(d2, d);
    let c = functor_f(&f.then(&g).unwrap()).unwrap();
    assert_eq!(
        c.word(),
        &[
            Generator::Copants { from: "s0_4".into(), left: Sector::block(0, 2), right: Sector::block(2, 4) },
            Generator::Pants { left: "s0_2".into(), right: "s2_4".into(), into: Sector::block(0, 4) },
        ]
    );
    assert_eq!(c.source(), c.target());
    assert!(tqft_eval(&c).unwrap().perm.is_identity());
}

#[test]
fn rotation_after_fission_sandwiches_the_suffix() {
    let d = build_elementary(&bs("101")).unwrap();
    let (f, d1) = fission(&d, 2).unwrap();
    let rho = Permutation::new(vec![0, 2, 1, 3]).unwrap();
    let (r, _) = basis_rotation(&d1, 1, &rho).unwrap();
    let c = functor_f(&r).unwrap();
    assert_eq!(c.word().len(), 5);
    assert!(matches!(c.word()[0], Generator::Pants { .. }));
    assert!(matches!(c.word()[2], Generator::Rotate { .. }));
    assert_eq!(c.source(), c.target());
    assert!(commuting_square_check(&r).unwrap().holds);
    assert!(commuting_square_check(&f.then(&r).unwrap()).unwrap().holds);
}

#[test]
fn squares_commute_for_all_fissions_and_rotations() {
    for m in 1..=3 {
        for e in BitString::all(m) {
            let d = build_elementary(&e).unwrap();
            for split in 1..m {
                assert!(commuting_square_check(&fission(&d, split).unwrap().0).unwrap().holds);
            }
            for k in m.saturating_sub(2)..m {
                for rho in all_perms(1 << (m - k)) {
                    let (r, _) = basis_rotation(&d, k, &rho).unwrap();
                    assert!(commuting_square_check(&r).unwrap().holds, "{e} k={k} {rho:?}");
                }
            }
        }
    }
}

#[test]
fn wrong_split_is_caught() {
    let d = build_elementary(&bs("0110")).unwrap();
    let (f, _) = fission(&d, 1).unwrap();
    let s = Sector::block(0, 4);
    let wrong = Cobordism::new(
        vec![s.clone()],
        vec![Generator::Copants { from: s.name, left: Sector::block(0, 3), right: Sector::block(3, 4) }],
    )
    .unwrap();
    let r = square_against(&f, &wrong).unwrap();
    assert!(!r.holds);
    let w = r.witness.unwrap();
    assert_eq!(w.state, "0000");
    assert_ne!(w.top, w.bottom);
}

#[test]
fn rotation_with_wrong_permutation_is_caught() {
    let d = build_elementary(&bs("01")).unwrap();
    let rho = Permutation::new(vec![1, 0]).unwrap();
    let (r, _) = basis_rotation(&d, 1, &rho).unwrap();
    let c = Cobordism::new(vec![Sector::block(0, 2)], vec![]).unwrap();
    assert!(!square_against(&r, &c).unwrap().holds);
}

#[test]
fn functor_preserves_composition() {
    let d = build_elementary(&bs("1101")).unwrap();
    let (f, d1) = fission(&d, 3).unwrap();
    let (g, d2) = fission(&d1, 1).unwrap();
    let rho = Permutation::new(vec![3, 1, 0, 2]).unwrap();
    let (h, _) = basis_rotation(&d2, 2, &rho).unwrap();
    let fg = f.then(&g).unwrap().then(&h).unwrap();
    let split = functor_f(&f).unwrap().then(&functor_f(&g).unwrap()).unwrap().then(&functor_f(&h).unwrap()).unwrap();
    assert_eq!(functor_f(&fg).unwrap(), split);
    assert_eq!(
        tqft_eval(&functor_f(&fg).unwrap()).unwrap().perm,
        tqft_eval(&functor_f(&f).unwrap())
            .unwrap()
            .perm
            .then(&tqft_eval(&functor_f(&g).unwrap()).unwrap().perm)
            .unwrap()
            .then(&tqft_eval(&functor_f(&h).unwrap()).unwrap().perm)
            .unwrap()
    );
    assert!(commuting_square_check(&fg).unwrap().holds);
}
