//! Signature and nullity of Hermitian and skew-Hermitian forms.
//!
//! Exact matrices are diagonalized by congruence inside their cyclotomic
//! field, so no eigenvalues are needed; Sylvester's law of inertia turns the
//! diagonal signs into the answer. Floating matrices use a Hermitian
//! eigendecomposition instead.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalars::{Cyclotomic, ScalarError};

/// Eigenvalues below this (relative to the largest one, at least 1) count as zero.
pub const FLOAT_EIGEN_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HermitianError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("entries ({0},{1}) and ({1},{0}) violate the {2:?} symmetry")]
    Asymmetric(usize, usize, FormKind),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    Hermitian,
    SkewHermitian,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignatureResult {
    #[serde(rename = "p")]
    pub positive: usize,
    #[serde(rename = "n")]
    pub negative: usize,
    #[serde(rename = "z")]
    pub nullity: usize,
    #[serde(rename = "sigma")]
    pub signature: i64,
}

impl SignatureResult {
    pub fn from_counts(positive: usize, negative: usize, nullity: usize) -> Self {
        Self { positive, negative, nullity, signature: positive as i64 - negative as i64 }
    }

    pub fn size(&self) -> usize {
        self.positive + self.negative + self.nullity
    }

    /// Direct sum of forms.
    pub fn plus(&self, other: &Self) -> Self {
        Self::from_counts(self.positive + other.positive, self.negative + other.negative, self.nullity + other.nullity)
    }
}

/// Square matrix over cyclotomic fields, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermitianMatrixExact {
    pub kind: FormKind,
    pub entries: Vec<Vec<Cyclotomic>>,
}

impl HermitianMatrixExact {
    pub fn new(kind: FormKind, entries: Vec<Vec<Cyclotomic>>) -> Result<Self, HermitianError> {
        let m = Self { kind, entries };
        m.check()?;
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn check(&self) -> Result<(), HermitianError> {
        let n = self.size();
        if self.entries.iter().any(|r| r.len() != n) {
            return Err(HermitianError::NotSquare);
        }
        for i in 0..n {
            for j in i..n {
                let c = self.entries[j][i].conj();
                let want = match self.kind {
                    FormKind::Hermitian => c,
                    FormKind::SkewHermitian => -c,
                };
                if self.entries[i][j] != want {
                    return Err(HermitianError::Asymmetric(i, j, self.kind));
                }
            }
        }
        Ok(())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            kind: self.kind,
            entries: self.entries.iter().map(|r| r.iter().map(Cyclotomic::conj).collect()).collect(),
        }
    }

    pub fn to_float(&self) -> HermitianMatrixFloat {
        let n = self.size();
        HermitianMatrixFloat {
            kind: self.kind,
            n,
            data: self.entries.iter().flat_map(|r| r.iter().map(Cyclotomic::to_complex)).collect(),
        }
    }

    /// `P* A P`.
    pub fn congruent(&self, p: &[Vec<Cyclotomic>]) -> Self {
        let n = self.size();
        let k = p.first().map_or(0, Vec::len);
        let ap: Vec<Vec<Cyclotomic>> = (0..n)
            .map(|i| {
                (0..k).map(|j| (0..n).fold(Cyclotomic::zero(), |acc, l| acc + &self.entries[i][l] * &p[l][j])).collect()
            })
            .collect();
        let entries = (0..k)
            .map(|i| {
                (0..k).map(|j| (0..n).fold(Cyclotomic::zero(), |acc, l| acc + &p[l][i].conj() * &ap[l][j])).collect()
            })
            .collect();
        Self { kind: self.kind, entries }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.size(), other.size());
        let entries = (0..a + b)
            .map(|i| {
                (0..a + b)
                    .map(|j| match (i < a, j < a) {
                        (true, true) => self.entries[i][j].clone(),
                        (false, false) => other.entries[i - a][j - a].clone(),
                        _ => Cyclotomic::zero(),
                    })
                    .collect()
            })
            .collect();
        Self { kind: self.kind, entries }
    }
}

/// Multiplies a skew-Hermitian matrix by `+i`. Hermitian input is returned
/// unchanged. The field is extended by `i` when needed.
pub fn skew_to_hermitian(a: &HermitianMatrixExact) -> HermitianMatrixExact {
    match a.kind {
        FormKind::Hermitian => a.clone(),
        FormKind::SkewHermitian => {
            let i = Cyclotomic::i();
            HermitianMatrixExact {
                kind: FormKind::Hermitian,
                entries: a.entries.iter().map(|r| r.iter().map(|x| &i * x).collect()).collect(),
            }
        }
    }
}

/// Exact signature by congruence diagonalization.
pub fn signature_nullity(a: &HermitianMatrixExact) -> Result<SignatureResult, HermitianError> {
    a.check()?;
    let h = skew_to_hermitian(a);
    let mut m = h.entries;
    let n = m.len();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    for k in 0..n {
        if m[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(k, j);
                for row in m.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !m[j][k].is_zero()) {
                // e_k <- e_k + c e_j with c = A[j][k]; the new diagonal is 2|A[j][k]|^2.
                let c = m[j][k].clone();
                let cbar = c.conj();
                let row_j = m[j].clone();
                for (x, y) in m[k].iter_mut().zip(&row_j) {
                    *x = &*x + &(&cbar * y);
                }
                for row in m.iter_mut() {
                    let add = &c * &row[j];
                    row[k] = &row[k] + &add;
                }
            } else {
                zero += 1;
                continue;
            }
        }
        let pivot = m[k][k].clone();
        let pivot_inv = pivot.inv()?;
        for j in k + 1..n {
            if m[j][k].is_zero() {
                continue;
            }
            let f = &m[j][k] * &pivot_inv;
            let fbar = f.conj();
            let row_k = m[k].clone();
            for (x, y) in m[j].iter_mut().zip(&row_k) {
                *x = &*x - &(&f * y);
            }
            for row in m.iter_mut() {
                let sub = &fbar * &row[k];
                row[j] = &row[j] - &sub;
            }
        }
        match pivot.real_sign()? {
            1 => pos += 1,
            -1 => neg += 1,
            _ => zero += 1,
        }
    }
    Ok(SignatureResult::from_counts(pos, neg, zero))
}

/// Square complex matrix in double precision, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrixFloat {
    pub kind: FormKind,
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl HermitianMatrixFloat {
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }
}

/// Signature from eigenvalues; skew input is multiplied by `+i` first.
pub fn signature_nullity_float(a: &HermitianMatrixFloat) -> SignatureResult {
    let n = a.n;
    if n == 0 {
        return SignatureResult::default();
    }
    let scale = match a.kind {
        FormKind::Hermitian => Complex64::new(1.0, 0.0),
        FormKind::SkewHermitian => Complex64::new(0.0, 1.0),
    };
    // Symmetrize to absorb rounding in the input.
    let m = DMatrix::from_fn(n, n, |i, j| (a.get(i, j) * scale + (a.get(j, i) * scale).conj()) * 0.5);
    let eig = SymmetricEigen::new(m).eigenvalues;
    let largest = eig.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
    let tol = FLOAT_EIGEN_TOL * largest;
    let pos = eig.iter().filter(|&&x| x > tol).count();
    let neg = eig.iter().filter(|&&x| x < -tol).count();
    SignatureResult::from_counts(pos, neg, n - pos - neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(kind: FormKind, rows: &[&[i64]]) -> HermitianMatrixExact {
        HermitianMatrixExact::new(
            kind,
            rows.iter().map(|r| r.iter().map(|&x| Cyclotomic::from_int(x)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn diagonal_examples() {
        let id = int_matrix(FormKind::Hermitian, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(signature_nullity(&id).unwrap(), SignatureResult::from_counts(3, 0, 0));
        let d = int_matrix(FormKind::Hermitian, &[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]);
        let s = signature_nullity(&d).unwrap();
        assert_eq!((s.positive, s.negative, s.nullity, s.signature), (1, 1, 1, 0));
    }

    #[test]
    fn trefoil_form() {
        let a = int_matrix(FormKind::Hermitian, &[&[-4, 2], &[2, -4]]);
        let s = signature_nullity(&a).unwrap();
        assert_eq!((s.signature, s.nullity), (-2, 0));
        assert_eq!(signature_nullity_float(&a.to_float()), s);
    }

    #[test]
    fn hyperbolic_block() {
        let a = int_matrix(FormKind::Hermitian, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]);
        assert_eq!(signature_nullity(&a).unwrap(), SignatureResult::from_counts(1, 1, 1));
    }

    #[test]
    fn skew_examples() {
        let a = int_matrix(FormKind::SkewHermitian, &[&[0, 1], &[-1, 0]]);
        let h = skew_to_hermitian(&a);
        assert_eq!(h.entries[0][1], Cyclotomic::i());
        assert_eq!(signature_nullity(&a).unwrap(), SignatureResult::from_counts(1, 1, 0));
        assert_eq!(signature_nullity_float(&a.to_float()), SignatureResult::from_counts(1, 1, 0));
        let z = int_matrix(FormKind::SkewHermitian, &[&[0, 0], &[0, 0]]);
        assert_eq!(signature_nullity(&z).unwrap(), SignatureResult::from_counts(0, 0, 2));
        // i(iA) = -A.
        let twice =
            skew_to_hermitian(&HermitianMatrixExact { kind: FormKind::SkewHermitian, entries: h.entries.clone() });
        assert_eq!(twice.entries[0][1], Cyclotomic::from_int(-1));
    }

    #[test]
    fn asymmetric_rejected() {
        let bad = vec![
            vec![Cyclotomic::from_int(0), Cyclotomic::from_int(1)],
            vec![Cyclotomic::from_int(2), Cyclotomic::from_int(0)],
        ];
        assert!(HermitianMatrixExact::new(FormKind::Hermitian, bad).is_err());
        let complex_diag = vec![vec![Cyclotomic::i()]];
        assert!(HermitianMatrixExact::new(FormKind::Hermitian, complex_diag.clone()).is_err());
        assert!(HermitianMatrixExact::new(FormKind::SkewHermitian, complex_diag).is_ok());
    }

    #[test]
    fn json_shape() {
        let s = SignatureResult::from_counts(0, 2, 0);
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"p":0,"n":2,"z":0,"sigma":-2}"#);
    }
}
