#![allow(dead_code)]

pub mod fp;
pub mod words;

use std::sync::Arc;

use proptest::prelude::*;
use tqrf_core::classifier::{Classifier, Infomorphism};
use tqrf_core::linalg::Matrix;
use tqrf_core::quiver::{QuiverRep, RepEdge};
use tqrf_core::rational::{qi, Q};

pub fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Random classifier with `1..=max_tok` tokens and `1..=max_typ` types.
pub fn classifier(id: &'static str, max_tok: usize, max_typ: usize) -> impl Strategy<Value = Classifier> {
    (1..=max_tok, 1..=max_typ).prop_flat_map(move |(t, a)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), a), t)
            .prop_map(move |rel| Classifier::new(id, labels("t", t), labels("a", a), rel).unwrap())
    })
}

/// A valid infomorphism out of `src`: random token map from a fresh token
/// set, injective type map onto the first types of the target, whose
/// columns are pulled back along the token map; extra target types are
/// random.
pub fn infomorphism_from(src: Classifier, id: &'static str) -> impl Strategy<Value = Infomorphism> {
    let (n_tok, n_typ) = (src.n_tokens(), src.n_types());
    (1..=4usize, 0..=2usize).prop_flat_map(move |(bt, extra)| {
        let src = src.clone();
        (
            proptest::collection::vec(0..n_tok, bt),
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), extra), bt),
            Just(src),
        )
            .prop_map(move |(tok, extra_cols, src)| {
                let rel = (0..bt)
                    .map(|b| {
                        let mut row: Vec<bool> = (0..n_typ).map(|a| src.holds(tok[b], a)).collect();
                        row.extend(&extra_cols[b]);
                        row
                    })
                    .collect();
                let dst = Classifier::new(id, labels("u", bt), labels("b", n_typ + extra), rel).unwrap();
                Infomorphism::new(Arc::new(src), Arc::new(dst), tok, (0..n_typ).collect()).unwrap()
            })
    })
}

/// Random quiver representation with small integer matrices.
pub fn quiver(max_total: usize, max_edges: usize) -> impl Strategy<Value = QuiverRep> {
    (1..=4usize)
        .prop_flat_map(move |nv| proptest::collection::vec(0..=3usize, nv))
        .prop_filter("total dimension bound", move |dims| dims.iter().sum::<usize>() <= max_total)
        .prop_flat_map(move |dims| {
            let nv = dims.len();
            let edge = (0..nv, 0..nv).prop_flat_map({
                let dims = dims.clone();
                move |(s, d)| {
                    proptest::collection::vec(-2i64..=2, dims[s] * dims[d]).prop_map(move |xs| (s, d, xs))
                }
            });
            (Just(dims), proptest::collection::vec(edge, 0..=max_edges))
        })
        .prop_map(|(dims, edges)| {
            let edges = edges
                .into_iter()
                .enumerate()
                .map(|(i, (s, d, xs))| RepEdge {
                    name: format!("f{i}"),
                    src: s,
                    dst: d,
                    matrix: from_ints(dims[d], dims[s], &xs),
                })
                .collect();
            QuiverRep::new(labels("v", dims.len()), dims, edges).unwrap()
        })
}

pub fn from_ints(rows: usize, cols: usize, xs: &[i64]) -> Matrix {
    let data: Vec<Vec<Q>> = (0..rows).map(|r| (0..cols).map(|c| qi(xs[r * cols + c])).collect()).collect();
    Matrix::from_rows(data, cols).unwrap()
}
