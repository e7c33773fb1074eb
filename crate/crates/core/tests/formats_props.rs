mod common;

use proptest::prelude::*;
use tqrf_core::cccd::{build_composite, build_elementary, fission};
use tqrf_core::formats::{
    from_json, image_to_text, parse_image, to_json, ClassifierDoc, CobordismDoc, DiagramDoc, GraphDoc,
    InfomorphismDoc, QrfDoc, QrfSpec, QuiverDoc,
};
use tqrf_core::qrf::{BitString, CompositeQrf, ProbabilisticQrf};
use tqrf_core::rational::q;
use tqrf_core::tqnn::{encode_image, TqnnImage};

use common::{classifier, infomorphism_from, quiver, words::random_word};

fn pointers(max_m: usize) -> impl Strategy<Value = Vec<BitString>> {
    (1usize..=max_m).prop_flat_map(|m| {
        proptest::collection::btree_set(0u64..(1 << m), 1..=m.min(1 << m))
            .prop_map(move |s| s.into_iter().map(|b| BitString::new(m, b).unwrap()).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classifiers_and_maps_round_trip(f in classifier("A", 5, 4).prop_flat_map(|a| infomorphism_from(a, "B"))) {
        let c = f.src().as_ref();
        let text = to_json(&ClassifierDoc::from(c));
        prop_assert_eq!(&from_json::<ClassifierDoc>(&text).unwrap().build().unwrap(), c);
        let text = to_json(&InfomorphismDoc::from(&f));
        let back = from_json::<InfomorphismDoc>(&text).unwrap().build().unwrap();
        prop_assert!(back.same_maps(&f));
        prop_assert_eq!(to_json(&InfomorphismDoc::from(&back)), text);
    }

    #[test]
    fn frames_round_trip(ps in pointers(5), w in proptest::collection::vec(1i64..7, 25)) {
        let comp = QrfSpec::Composite(CompositeQrf::new(ps.clone()).unwrap());
        let doc = from_json::<QrfDoc>(&to_json(&QrfDoc::from(&comp))).unwrap();
        prop_assert_eq!(doc.build().unwrap(), comp);
        // a probabilistic frame over the first m strings of width m
        let m = ps[0].width();
        let cands: Vec<BitString> = (0..m as u64).map(|b| BitString::new(m, b).unwrap()).collect();
        let total: i64 = (0..m).map(|i| w[i]).sum();
        let table = (0..m).map(|i| vec![q(w[i], total)]).collect();
        let p = QrfSpec::Probabilistic(ProbabilisticQrf::new(cands, table).unwrap());
        let doc = from_json::<QrfDoc>(&to_json(&QrfDoc::from(&p))).unwrap();
        prop_assert_eq!(doc.build().unwrap(), p);
    }

    #[test]
    fn diagrams_round_trip(ps in pointers(4), split in 1usize..4) {
        let e = build_elementary(&ps[0]).unwrap();
        let mut ds = vec![build_composite(&ps).unwrap(), e.clone()];
        if split < e.dimension() {
            ds.push(fission(&e, split).unwrap().1);
        }
        for d in ds {
            let text = to_json(&DiagramDoc::from(&d));
            let back = from_json::<DiagramDoc>(&text).unwrap().build().unwrap();
            prop_assert_eq!(&back, &d);
            prop_assert_eq!(to_json(&DiagramDoc::from(&back)), text);
        }
    }

    #[test]
    fn quivers_round_trip(r in quiver(8, 6)) {
        let text = to_json(&QuiverDoc::from(&r));
        prop_assert_eq!(from_json::<QuiverDoc>(&text).unwrap().build().unwrap(), r);
    }

    #[test]
    fn words_round_trip(n in 1usize..=6, cuts in proptest::collection::vec(0usize..6, 0..3), len in 0usize..=8, seed in any::<u64>()) {
        let c = random_word(n, &cuts, len, seed);
        let text = to_json(&CobordismDoc::from(&c));
        prop_assert_eq!(from_json::<CobordismDoc>(&text).unwrap().build().unwrap(), c);
    }

    #[test]
    fn images_and_graphs_round_trip(h in 1usize..4, w in 1usize..4, levels in proptest::collection::vec(0u8..=10, 9)) {
        let img = TqnnImage::new(h, w, levels[..h * w].to_vec()).unwrap();
        prop_assert_eq!(&parse_image(&image_to_text(&img)).unwrap(), &img);
        let enc = encode_image(&img).unwrap();
        let doc = GraphDoc::from_graph(&enc.graph, &enc.faces);
        prop_assert_eq!(from_json::<GraphDoc>(&to_json(&doc)).unwrap().build().unwrap(), (enc.graph, enc.faces));
    }
}
