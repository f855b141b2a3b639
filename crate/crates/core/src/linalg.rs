//! Dense exact linear algebra over the coefficient fields used by the crate:
//! rationals, prime fields and cyclotomic fields. Floating complex matrices
//! get a separate tolerance-based rank.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalars::Cyclotomic;

/// Default relative rank tolerance for floating elimination.
pub const FLOAT_RANK_TOL: f64 = 1e-10;

/// Minimal field interface for Gaussian elimination. Elements carry whatever
/// context they need (a prime modulus, a conductor), so constants are derived
/// from an existing element.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
}

impl Field for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
}

impl Field for Cyclotomic {
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Cyclotomic::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Cyclotomic::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Cyclotomic::mul(self, o)
    }
    fn neg(&self) -> Self {
        Cyclotomic::neg(self)
    }
    fn inv(&self) -> Self {
        Cyclotomic::inv(self).expect("inverse of zero")
    }
    fn zero_like(&self) -> Self {
        Cyclotomic::zero()
    }
    fn one_like(&self) -> Self {
        Cyclotomic::one()
    }
}

/// Element of `Z/pZ`, `p` prime and below `2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        debug_assert!((2..(1 << 32)).contains(&p));
        Self { value: v.rem_euclid(p as i64) as u64, modulus: p }
    }

    pub fn from_bigint(v: &BigInt, p: u64) -> Self {
        let r = ((v % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
        Self { value: r.try_into().unwrap(), modulus: p }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.value;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.modulus;
            }
            base = base * base % self.modulus;
            e >>= 1;
        }
        Self { value: acc, modulus: self.modulus }
    }
}

impl Field for Fp {
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, o: &Self) -> Self {
        Self { value: (self.value + o.value) % self.modulus, modulus: self.modulus }
    }
    fn sub(&self, o: &Self) -> Self {
        Self { value: (self.value + self.modulus - o.value) % self.modulus, modulus: self.modulus }
    }
    fn mul(&self, o: &Self) -> Self {
        Self { value: self.value * o.value % self.modulus, modulus: self.modulus }
    }
    fn neg(&self) -> Self {
        Self { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero");
        self.pow(self.modulus - 2)
    }
    fn zero_like(&self) -> Self {
        Self { value: 0, modulus: self.modulus }
    }
    fn one_like(&self) -> Self {
        Self { value: 1, modulus: self.modulus }
    }
}

/// Dense row-major matrix. The zero element is stored so empty matrices and
/// products can be formed without a global constant.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    zero: F,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize, zero: F) -> Self {
        Self { rows, cols, data: vec![zero.clone(); rows * cols], zero }
    }

    pub fn from_fn(rows: usize, cols: usize, zero: F, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, zero, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize, zero: F) -> Self {
        let r = rows.len();
        let data: Vec<F> = rows.into_iter().inspect(|row| assert_eq!(row.len(), cols)).flatten().collect();
        Self { rows: r, cols, zero, data }
    }

    pub fn identity(n: usize, zero: F) -> Self {
        let one = zero.one_like();
        Self::from_fn(n, n, zero.clone(), |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zero_element(&self) -> &F {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<G: Field>(&self, zero: G, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, zero, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.zero.clone(), |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        Self::from_fn(self.rows, other.cols, self.zero.clone(), |i, j| {
            let mut acc = self.zero.clone();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
            }
            acc
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    /// Exact rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Determinant by elimination; panics unless square.
    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.zero.one_like();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m.get(i, k).is_zero()) else {
                return self.zero.clone();
            };
            if p != k {
                m.swap_rows(p, k);
                det = det.neg();
            }
            let pivot = m.get(k, k).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv();
            for i in k + 1..n {
                let f = m.get(i, k).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = m.get(i, j).sub(&f.mul(m.get(k, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of the right kernel `{x : A x = 0}`, as column vectors.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let one = self.zero.one_like();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.zero.clone(); self.cols];
                v[f] = one.clone();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.get(row, f).neg();
                }
                v
            })
            .collect()
    }

    /// Some solution of `A x = b`, if one exists.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = Self::from_fn(self.rows, self.cols + 1, self.zero.clone(), |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.zero.clone(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.zero.clone();
                for (j, vj) in v.iter().enumerate() {
                    acc = acc.add(&self.get(i, j).mul(vj));
                }
                acc
            })
            .collect()
    }
}

/// Rank of a complex matrix by complete-pivot elimination. Entries whose
/// modulus falls below `tol * max(1, max |a_ij|)` count as zero.
pub fn float_rank(rows: usize, cols: usize, entries: &[Complex64], tol: f64) -> usize {
    assert_eq!(entries.len(), rows * cols);
    let mut a = entries.to_vec();
    let scale = a.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let threshold = tol * scale;
    let mut rank = 0;
    let mut row_used = vec![false; rows];
    let mut col_used = vec![false; cols];
    loop {
        let mut best = (0, 0, 0.0f64);
        for i in (0..rows).filter(|&i| !row_used[i]) {
            for j in (0..cols).filter(|&j| !col_used[j]) {
                let v = a[i * cols + j].norm();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if best.2 <= threshold {
            return rank;
        }
        let (pi, pj, _) = best;
        row_used[pi] = true;
        col_used[pj] = true;
        rank += 1;
        let pivot = a[pi * cols + pj];
        for i in (0..rows).filter(|&i| !row_used[i]) {
            let f = a[i * cols + pj] / pivot;
            if f.norm() == 0.0 {
                continue;
            }
            for j in 0..cols {
                let v = a[pi * cols + j];
                a[i * cols + j] -= f * v;
            }
        }
    }
}
