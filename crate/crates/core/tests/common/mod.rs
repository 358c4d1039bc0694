#![allow(dead_code)]

use bisurf_core::exactla::{int, QMatrix, Scalar};
use bisurf_core::ideal::Ideal;
use rand::rngs::StdRng;
use rand::Rng;

/// Random integer matrix with determinant ±1, built from elementary row operations.
pub fn unimodular(rng: &mut StdRng, n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = rng.gen_range(-2i64..=2);
        for k in 0..n {
            m[i][k] += c * m[j][k];
        }
    }
    let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
    m.swap(a, b);
    if rng.gen_bool(0.5) {
        for x in &mut m[rng.gen_range(0..n)] {
            *x = -*x;
        }
    }
    m
}

pub fn square2(m: &[Vec<i64>]) -> [[Scalar; 2]; 2] {
    [[int(m[0][0]), int(m[0][1])], [int(m[1][0]), int(m[1][1])]]
}

/// Applies random unimodular changes of coordinates on both factors and of generator basis.
pub fn random_transform(rng: &mut StdRng, ideal: &Ideal) -> Ideal {
    let rows = unimodular(rng, 4);
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    let g = QMatrix::from_i64_rows(&refs);
    let st = square2(&unimodular(rng, 2));
    let uv = square2(&unimodular(rng, 2));
    ideal.transformed(&g, &st, &uv).expect("unimodular transforms preserve validity")
}
