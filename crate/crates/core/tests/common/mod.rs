//! Reference computations shared by the integration tests. None of these call the
//! assembler or the closed forms they are compared against.
#![allow(dead_code)]

use num_complex::Complex64;
use spinc_core::linalg::{hermitian_eigen, CMat};

/// Hurwitz zeta `ζ(s, a)` for real `s > 1`, `a > 0`, by Euler–Maclaurin summation.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    const N: usize = 20;
    // B_2, B_4, ..., B_16
    const BERNOULLI: [f64; 8] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0];
    let head: f64 = (0..N).map(|k| (k as f64 + a).powf(-s)).sum();
    let x = N as f64 + a;
    let mut tail = x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // rising factorial s(s+1)...(s+2j-2) / (2j)!
    let mut coeff = s;
    let mut factorial = 2.0;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let k = 2 * (j + 1);
        tail += b / factorial * coeff * x.powf(-s - k as f64 + 1.0);
        coeff *= (s + k as f64 - 1.0) * (s + k as f64);
        factorial *= ((k + 1) * (k + 2)) as f64;
    }
    head + tail
}

/// Hermitian matrix from real entries.
pub fn real_matrix(rows: &[Vec<f64>]) -> CMat {
    let n = rows.len();
    let mut m = CMat::zeros(n, rows.first().map_or(0, Vec::len));
    for (r, row) in rows.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            m[(r, c)] = Complex64::new(x, 0.0);
        }
    }
    m
}

/// Eigenvalues of `D = D₁ ⊗ I + i^p μ₁ ⊗ D₂` for an even factor realised on a graded space.
///
/// The even factor has positive eigenvalues `mu` (each mirrored, one Σ⁺/Σ⁻ pair per copy) and
/// harmonic counts `(a1, a2)`; `μ₁` acts as `±i^p` on Σ^±. The odd factor is the diagonal `nu`.
pub fn graded_product_eigenvalues(mu: &[f64], a1: usize, a2: usize, p: usize, nu: &[f64]) -> Vec<f64> {
    let pairs = mu.len();
    let n1 = a1 + a2 + 2 * pairs;
    // basis: a1 positive harmonics, a2 negative harmonics, then (σ⁺_k, σ⁻_k) pairs
    let mut d1 = vec![vec![0.0; n1]; n1];
    let mut grading = vec![0.0; n1];
    grading[..a1].fill(1.0);
    grading[a1..a1 + a2].fill(-1.0);
    for (k, &m) in mu.iter().enumerate() {
        let (s, t) = (a1 + a2 + 2 * k, a1 + a2 + 2 * k + 1);
        d1[s][t] = m;
        d1[t][s] = m;
        grading[s] = 1.0;
        grading[t] = -1.0;
    }
    // i^p μ₁ = i^p · (i^p γ) = (-1)^p γ
    let phase = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
    let n2 = nu.len();
    let mut d = vec![vec![0.0; n1 * n2]; n1 * n2];
    for r1 in 0..n1 {
        for c1 in 0..n1 {
            for k in 0..n2 {
                d[r1 * n2 + k][c1 * n2 + k] += d1[r1][c1];
            }
        }
        for k in 0..n2 {
            d[r1 * n2 + k][r1 * n2 + k] += phase * grading[r1] * nu[k];
        }
    }
    hermitian_eigen(&real_matrix(&d)).values
}
