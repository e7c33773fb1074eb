use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tqrf_core::rational::{qi, Q};
use tqrf_core::tqnn::{
    delta_inner, gauge_average, is_gauge_invariant, kinematic_inner, lift_subdivided, partition_function,
    physical_inner, torus, Cyclo, CylindricalFunction, FaceSet, FiniteGroup, Graph, GraphNode, Link,
};

fn group(i: usize) -> Arc<FiniteGroup> {
    Arc::new(if i < 5 { FiniteGroup::cyclic(i + 2).unwrap() } else { FiniteGroup::s3() })
}

/// Fixture graphs with their faces: a loop, a triangle, the torus and a
/// path with one open end.
fn fixture(i: usize) -> (Arc<Graph>, FaceSet) {
    match i {
        0 => {
            let g = Graph::simple(1, &[(0, 0)]).unwrap();
            let f = FaceSet::new(&g, vec![vec![(0, true)]]).unwrap();
            (Arc::new(g), f)
        }
        1 => {
            let g = Graph::simple(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
            let f = FaceSet::new(&g, vec![vec![(0, true), (1, true), (2, true)]]).unwrap();
            (Arc::new(g), f)
        }
        2 => {
            let (g, f) = torus();
            (Arc::new(g), f)
        }
        _ => {
            let nodes = vec![
                GraphNode { name: "a".into(), open: false },
                GraphNode { name: "b".into(), open: false },
                GraphNode { name: "end".into(), open: true },
            ];
            let links = vec![
                Link { name: "x".into(), src: 0, dst: 1 },
                Link { name: "y".into(), src: 1, dst: 0 },
                Link { name: "z".into(), src: 1, dst: 2 },
            ];
            let g = Graph::new(nodes, links).unwrap();
            let f = FaceSet::new(&g, vec![vec![(0, true), (1, true)]]).unwrap();
            (Arc::new(g), f)
        }
    }
}

fn random_table(graph: &Arc<Graph>, group: &Arc<FiniteGroup>, rng: &mut ChaCha8Rng) -> CylindricalFunction {
    let root = group.root();
    let n = group.order().pow(graph.links().len() as u32);
    let values = (0..n).map(|_| Cyclo::from_coeffs(root, (0..root).map(|_| qi(rng.gen_range(-3..=3))).collect())).collect();
    CylindricalFunction::new(graph.clone(), group.clone(), values).unwrap()
}

fn case() -> impl Strategy<Value = (usize, usize, u64)> {
    (0usize..6, 0usize..4, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gauge_average_is_a_projector((gi, fi, seed) in case()) {
        let (g, _) = fixture(fi);
        let grp = group(gi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = random_table(&g, &grp, &mut rng);
        let avg = gauge_average(&psi);
        prop_assert_eq!(&gauge_average(&avg), &avg);
        prop_assert!(is_gauge_invariant(&avg));
        let h: Vec<usize> = (0..g.nodes().len()).map(|_| rng.gen_range(0..grp.order())).collect();
        prop_assert_eq!(&avg.gauge_transform(&h).unwrap(), &avg);
    }

    #[test]
    fn physical_inner_is_gauge_invariant_and_hermitian((gi, fi, seed) in case()) {
        let (g, faces) = fixture(fi);
        let grp = group(gi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = random_table(&g, &grp, &mut rng);
        let phi = random_table(&g, &grp, &mut rng);
        let h: Vec<usize> = (0..g.nodes().len()).map(|_| rng.gen_range(0..grp.order())).collect();
        let base = physical_inner(&psi, &phi, &faces).unwrap();
        prop_assert_eq!(&physical_inner(&psi.gauge_transform(&h).unwrap(), &phi.gauge_transform(&h).unwrap(), &faces).unwrap(), &base);
        let inv = gauge_average(&phi);
        prop_assert_eq!(
            physical_inner(&psi.gauge_transform(&h).unwrap(), &inv, &faces).unwrap(),
            physical_inner(&gauge_average(&psi), &inv, &faces).unwrap()
        );
        prop_assert_eq!(physical_inner(&phi, &psi, &faces).unwrap().conj(), base);
    }

    #[test]
    fn double_delta_scales_by_the_group_order((gi, fi, seed) in case()) {
        let (g, faces) = fixture(fi);
        let grp = group(gi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = random_table(&g, &grp, &mut rng);
        let phi = random_table(&g, &grp, &mut rng);
        let once = delta_inner(&psi, &phi, &faces, 1).unwrap();
        let twice = delta_inner(&psi, &phi, &faces, 2).unwrap();
        let factor = Q::from_integer(grp.order().into()).pow(faces.len() as i32);
        prop_assert_eq!(twice, once.scale(&factor));
    }

    #[test]
    fn subdivision_keeps_inner_products((gi, fi, seed) in case(), l in 0usize..3) {
        let (g, faces) = fixture(fi);
        let grp = group(gi);
        let l = l % g.links().len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = random_table(&g, &grp, &mut rng);
        let phi = random_table(&g, &grp, &mut rng);
        let (lp, lf) = (lift_subdivided(&psi, l).unwrap(), lift_subdivided(&phi, l).unwrap());
        let sub_faces = faces.subdivide(l, g.links().len());
        prop_assert_eq!(kinematic_inner(&lp, &lf).unwrap(), kinematic_inner(&psi, &phi).unwrap());
        prop_assert_eq!(physical_inner(&lp, &lf, &sub_faces).unwrap(), physical_inner(&psi, &phi, &faces).unwrap());
    }
}

#[test]
fn torus_partition_function_counts_irreps() {
    let (t, f) = torus();
    for gi in 0..6 {
        let grp = group(gi);
        // commuting pairs over |G| equals the number of conjugacy classes
        let n = grp.order();
        let commuting = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| grp.mul(a, b) == grp.mul(b, a)).count();
        assert_eq!(commuting % n, 0);
        assert_eq!(commuting / n, grp.irreps().len());
        assert_eq!(partition_function(&t, &f, &grp).unwrap(), qi(grp.irreps().len() as i64));
    }
}
