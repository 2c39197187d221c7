//! Small dense matrices over exact Gaussian rationals and over `f64` complexes.
//!
//! Everything here is at desk scale: spinor spaces have dimension at most 16 and tensor
//! products at most 64, so plain row-major storage and naive products are fine.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};

use crate::rational::{to_f64, Q};

/// Exact Gaussian rational `x + iy` with `x, y ∈ Q`.
pub type Gq = Complex<Q>;

pub fn gq(re: Q, im: Q) -> Gq {
    Complex::new(re, im)
}

pub fn gq_int(re: i64, im: i64) -> Gq {
    Complex::new(Q::from_integer(re), Q::from_integer(im))
}

/// `i^k` for any integer `k`, exactly.
pub fn i_pow(k: i64) -> Gq {
    match k.rem_euclid(4) {
        0 => gq_int(1, 0),
        1 => gq_int(0, 1),
        2 => gq_int(-1, 0),
        _ => gq_int(0, -1),
    }
}

pub fn gq_to_c64(z: &Gq) -> Complex64 {
    Complex64::new(to_f64(&z.re), to_f64(&z.im))
}

/// Scalars a [`Mat`] can hold.
pub trait Scalar:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn conj(&self) -> Self;
    fn modulus(&self) -> f64;
}

impl Scalar for Gq {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn modulus(&self) -> f64 {
        gq_to_c64(self).norm()
    }
}

impl Scalar for Complex64 {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
}

#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type GMat = Mat<Gq>;
pub type CMat = Mat<Complex64>;

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diag(entries: Vec<T>) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| s.clone() * x.clone())
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        self.map(T::conj)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a.clone() * other[(k, l)].clone();
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(T::zero(), |acc, j| acc + self[(i, j)].clone() * v[j].clone())
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Largest entry modulus; the residual measure used by all identity checks.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::modulus).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// `Some(c)` if `self == c · other` for a single scalar `c` (and `other` is nonzero).
    pub fn scalar_multiple_of(&self, other: &Self) -> Option<T>
    where
        T: std::ops::Div<Output = T>,
    {
        let pivot = other.data.iter().position(|x| !x.is_zero())?;
        let c = self.data[pivot].clone() / other.data[pivot].clone();
        (*self == other.scale(&c)).then_some(c)
    }
}

impl GMat {
    pub fn to_c64(&self) -> CMat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(gq_to_c64).collect() }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &Mat<T> {
    type Output = Mat<T>;
    fn mul(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out: Mat<T> = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                }
            }
        }
        out
    }
}

impl<T: Scalar> Add for &Mat<T> {
    type Output = Mat<T>;
    fn add(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum dimension mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Mat<T> {
    type Output = Mat<T>;
    fn sub(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference dimension mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Neg for &Mat<T> {
    type Output = Mat<T>;
    fn neg(self) -> Mat<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: fmt::Display> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Kronecker product of a list of matrices, left to right.
pub fn kron_all<T: Scalar>(factors: &[Mat<T>]) -> Mat<T> {
    factors.iter().fold(Mat::identity(1), |acc, m| acc.kron(m))
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense Hermitian eigendecomposition: closed form for 1x1 and 2x2, cyclic complex
/// Jacobi rotations otherwise.
pub fn hermitian_eigen(a: &CMat) -> Eigen {
    assert!(a.is_square(), "eigen of non-square matrix");
    match a.rows() {
        0 => Eigen { values: vec![], vectors: CMat::zeros(0, 0) },
        1 => Eigen { values: vec![a[(0, 0)].re], vectors: CMat::identity(1) },
        2 => eigen_2x2(a),
        _ => jacobi(a),
    }
}

fn eigen_2x2(a: &CMat) -> Eigen {
    let (p, r) = (a[(0, 0)].re, a[(1, 1)].re);
    let b = a[(0, 1)];
    let mean = 0.5 * (p + r);
    let half = 0.5 * (p - r);
    let rad = (half * half + b.norm_sqr()).sqrt();
    let (lo, hi) = (mean - rad, mean + rad);
    if b.norm() <= f64::EPSILON * (p.abs() + r.abs() + 1.0) {
        // already diagonal
        let mut vectors = CMat::identity(2);
        let values = if p <= r {
            vec![p, r]
        } else {
            vectors = CMat::from_rows(vec![vec![Complex64::zero(), Complex64::one()], vec![Complex64::one(), Complex64::zero()]]);
            vec![r, p]
        };
        return Eigen { values, vectors };
    }
    // (A - λ) v = 0 with v = (b, λ - p)
    let column = |lam: f64| {
        let v = [b, Complex64::new(lam - p, 0.0)];
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        [v[0] / n, v[1] / n]
    };
    let (u, w) = (column(lo), column(hi));
    Eigen {
        values: vec![lo, hi],
        vectors: CMat::from_rows(vec![vec![u[0], w[0]], vec![u[1], w[1]]]),
    }
}

fn jacobi(input: &CMat) -> Eigen {
    let n = input.rows();
    let mut a = input.clone();
    let mut v = CMat::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
                let t = tau.signum() / (tau.abs() + (tau * tau + 1.0).sqrt());
                let t = if tau == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let se = phase * s;
                let se_bar = se.conj();
                // A <- A R, columns p and q
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * c - akq * se_bar;
                    a[(k, q)] = akp * se + akq * c;
                }
                // A <- R^H A, rows p and q
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = apk * c - aqk * se;
                    a[(q, k)] = apk * se_bar + aqk * c;
                }
                a[(p, q)] = Complex64::zero();
                a[(q, p)] = Complex64::zero();
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * c - vkq * se_bar;
                    v[(k, q)] = vkp * se + vkq * c;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = CMat::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, new)] = v[(k, old)];
        }
    }
    Eigen { values, vectors }
}
