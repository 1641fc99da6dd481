mod common;

use nalgebra::DMatrix;
use proptest::prelude::*;

use common::models;
use fieldgraph::graph::{build_digraph, to_undirected};
use fieldgraph::spectral::{
    eigenvalues, explicit_eigenvalue, laplacian, model_spectrum, DEFAULT_TOL,
};

fn nalgebra_values(rows: &[Vec<f64>]) -> Vec<f64> {
    let n = rows.len();
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let mut v: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

#[test]
fn laplacian_spectra_match_nalgebra() {
    for (p, k) in [(2, 3), (2, 5), (3, 3), (5, 2), (7, 2), (13, 2), (3, 4)] {
        for m in models(p, k).into_iter().take(6) {
            let l = laplacian(&to_undirected(&build_digraph(&m))).unwrap();
            let ours = eigenvalues(&l, DEFAULT_TOL).unwrap().eigenvalues;
            let reference = nalgebra_values(&l.rows);
            for (a, b) in ours.iter().zip(&reference) {
                assert!((a - b).abs() < 1e-8, "{:?}: {a} vs {b}", m.modulus());
            }
            assert!((ours.iter().sum::<f64>() - l.trace()).abs() < 1e-7);
            assert!(ours[0].abs() < 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn dense_symmetric_matches_nalgebra(n in 1usize..30, seed in proptest::collection::vec(-5i32..=5, 900)) {
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| seed[i.min(j) * 30 + i.max(j)] as f64).collect())
            .collect();
        let ours = fieldgraph::spectral::symmetric_eigen(&rows, false).unwrap().values;
        let reference = nalgebra_values(&rows);
        for (a, b) in ours.iter().zip(&reference) {
            prop_assert!((a - b).abs() < 1e-8);
        }
        let dec = fieldgraph::spectral::symmetric_eigen(&rows, true).unwrap();
        let v = dec.vectors.unwrap();
        for c in 0..n {
            for r in 0..n {
                let av: f64 = (0..n).map(|k| rows[r][k] * v[k][c]).sum();
                prop_assert!((av - dec.values[c] * v[r][c]).abs() < 1e-8);
            }
        }
    }
}

#[test]
fn x2_plus_1_is_not_an_expander() {
    let mut last = f64::INFINITY;
    for p in [3u32, 7, 11, 19, 23] {
        let m = fieldgraph::FieldModel::new(&fieldgraph::field::parse_poly("x^2+1", p).unwrap()).unwrap();
        let l1 = model_spectrum(&m).unwrap().lambda1().unwrap();
        assert!(l1 <= explicit_eigenvalue(p, 1) + 1e-9);
        assert!(l1 < last);
        last = l1;
    }
}
