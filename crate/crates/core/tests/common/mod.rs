#![allow(dead_code)]

use std::path::PathBuf;

use hopf_galois::descriptor::{AlgebraDescriptor, Loaded};
use hopf_galois::Scalar;
use num_complex::Complex64;
use num_traits::ToPrimitive;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Every shipped descriptor, sorted by file name.
pub fn corpus() -> Vec<(String, Loaded)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let loaded = AlgebraDescriptor::from_json(&text).unwrap().build().unwrap();
            (p.file_name().unwrap().to_string_lossy().into_owned(), loaded)
        })
        .collect()
}

/// Value of a scalar under `zeta(n) -> exp(2 pi i / n)`.
pub fn to_complex(x: &Scalar) -> Complex64 {
    let n = x.order() as f64;
    x.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n;
            Complex64::from_polar(1.0, angle) * c.to_f64().unwrap()
        })
        .sum()
}

pub fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

/// Rank by dense Gauss-Jordan elimination on a row list.
pub fn dense_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().unwrap();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] * &inv;
                for k in c..cols {
                    let v = &rows[r][k] - &(&f * &rows[rank][k]);
                    rows[r][k] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}
