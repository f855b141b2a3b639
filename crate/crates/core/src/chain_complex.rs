//! Chain complexes of free modules over `Z[t1^±1, ..., tm^±1]`, their
//! specializations to twisted and untwisted coefficients, Betti numbers, the
//! Morse-type estimate and rank identities of exact sequences.
//!
//! Boundaries are stored as `boundaries[k - 1] = d_k : C_k -> C_{k-1}`, so
//! `d_k` has `ranks[k - 1]` rows and `ranks[k]` columns.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{Laurent, LaurentParseError};
use crate::linalg::{float_rank, Field, Fp, Matrix, FLOAT_RANK_TOL};
use crate::local_system::{comparison_field, CoefficientField, LocalSystemError, MonodromyAssignment};
use crate::par::{map_ordered, Execution};
use crate::scalars::Cyclotomic;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChainError {
    #[error("boundary d_{degree} has shape {found:?}, expected {expected:?}")]
    Shape { degree: usize, expected: (usize, usize), found: (usize, usize) },
    #[error("{boundaries} boundaries given for {ranks} modules")]
    BoundaryCount { ranks: usize, boundaries: usize },
    #[error("entry ({row},{col}) lies outside a {rows}x{cols} matrix")]
    EntryOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("entry uses t{var} but the complex has m = {m}")]
    VariableOutOfRange { var: usize, m: usize },
    #[error("d_{degree} o d_{next} is nonzero at entry ({}, {}): {value}", .row + 1, .col + 1, next = .degree + 1)]
    NotAComplex { degree: usize, row: usize, col: usize, value: String },
    #[error("monodromy has {given} weights but the complex has m = {m}")]
    Arity { m: usize, given: usize },
    #[error("no comparison field is available for this monodromy")]
    NoEstimate,
    #[error("sequence is not exact at degree {degree}")]
    NotExact { degree: i64 },
    #[error("degree {degree} is outside the sequence")]
    DegreeOutOfRange { degree: i64 },
    #[error(transparent)]
    Laurent(#[from] LaurentParseError),
    #[error(transparent)]
    LocalSystem(#[from] LocalSystemError),
    #[error("invalid complex JSON: {0}")]
    Json(String),
}

/// Sparse matrix of Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Laurent>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_dense(rows: Vec<Vec<Laurent>>, cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Laurent {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Laurent) {
        assert!(i < self.rows && j < self.cols, "entry out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Laurent)> {
        self.entries.iter()
    }

    pub fn max_var(&self) -> usize {
        self.entries.values().map(Laurent::max_var).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, &Laurent)>> = BTreeMap::new();
        for (&(k, j), v) in &other.entries {
            by_row.entry(k).or_default().push((j, v));
        }
        let mut acc: BTreeMap<(usize, usize), Laurent> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    let slot = acc.entry((i, j)).or_default();
                    *slot = slot.add(&a.mul(b));
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Self { rows: self.rows, cols: other.cols, entries: acc }
    }

    fn map_dense<F: Field>(&self, zero: F, f: impl Fn(&Laurent) -> F) -> Matrix<F> {
        let mut m = Matrix::zeros(self.rows, self.cols, zero);
        for (&(i, j), v) in &self.entries {
            m.set(i, j, f(v));
        }
        m
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentMatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, String)>,
}

impl Serialize for LaurentMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentMatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(&(i, j), v)| (i, j, v.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = LaurentMatrixRepr::deserialize(d)?;
        let mut m = LaurentMatrix::zeros(repr.rows, repr.cols);
        for (i, j, text) in repr.entries {
            if i >= repr.rows || j >= repr.cols {
                return Err(D::Error::custom(ChainError::EntryOutOfRange {
                    row: i,
                    col: j,
                    rows: repr.rows,
                    cols: repr.cols,
                }));
            }
            let v: Laurent = text.parse().map_err(D::Error::custom)?;
            let sum = m.get(i, j).add(&v);
            m.set(i, j, sum);
        }
        Ok(m)
    }
}

/// Complex `C_p -> ... -> C_1 -> C_0` of free modules over the Laurent ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRingComplex {
    pub m: usize,
    pub ranks: Vec<usize>,
    pub boundaries: Vec<LaurentMatrix>,
}

impl GroupRingComplex {
    /// Builds and validates.
    pub fn new(m: usize, ranks: Vec<usize>, boundaries: Vec<LaurentMatrix>) -> Result<Self, ChainError> {
        let c = Self { m, ranks, boundaries };
        validate_complex(&c)?;
        Ok(c)
    }

    pub fn from_json(text: &str) -> Result<Self, ChainError> {
        let c: Self = serde_json::from_str(text).map_err(|e| ChainError::Json(e.to_string()))?;
        validate_complex(&c)?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complex serializes")
    }

    /// The circle: `C_1 -> C_0` with `d_1 = t - 1`.
    pub fn circle() -> Self {
        let d1 = LaurentMatrix::from_dense(vec![vec![Laurent::var(1).sub(&Laurent::one())]], 1);
        Self { m: 1, ranks: vec![1, 1], boundaries: vec![d1] }
    }

    /// Top degree, or `None` for the empty complex.
    pub fn top_degree(&self) -> Option<usize> {
        self.ranks.len().checked_sub(1)
    }

    /// `d_k` for `k >= 1`, `None` outside the stored range (the zero map).
    pub fn boundary(&self, k: usize) -> Option<&LaurentMatrix> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn rank_at(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// Tensor product with another complex, variables of `other` shifted past
    /// those of `self`. Signs follow the Koszul rule.
    pub fn tensor(&self, other: &Self) -> Self {
        let shift = self.m;
        let shifted: Vec<LaurentMatrix> = other.boundaries.iter().map(|b| shift_vars(b, shift)).collect();
        let (p, q) = (self.ranks.len(), other.ranks.len());
        if p == 0 || q == 0 {
            return Self { m: self.m + other.m, ranks: Vec::new(), boundaries: Vec::new() };
        }
        let top = p + q - 2;
        // Offsets of the block C_i (x) D_j inside degree i + j.
        let mut offsets = vec![BTreeMap::new(); top + 1];
        let mut ranks = vec![0usize; top + 1];
        for (i, &a) in self.ranks.iter().enumerate() {
            for (j, &b) in other.ranks.iter().enumerate() {
                offsets[i + j].insert((i, j), ranks[i + j]);
                ranks[i + j] += a * b;
            }
        }
        let mut boundaries = Vec::new();
        for k in 1..=top {
            let mut d = LaurentMatrix::zeros(ranks[k - 1], ranks[k]);
            for (&(i, j), &off) in &offsets[k] {
                let (a, b) = (self.ranks[i], other.ranks[j]);
                if i >= 1 {
                    let di = &self.boundaries[i - 1];
                    let target = offsets[k - 1][&(i - 1, j)];
                    for (&(r, c), v) in di.entries() {
                        for y in 0..b {
                            d.set(target + r * b + y, off + c * b + y, v.clone());
                        }
                    }
                }
                if j >= 1 {
                    let dj = &shifted[j - 1];
                    let target = offsets[k - 1][&(i, j - 1)];
                    let sign = if i % 2 == 0 { Laurent::one() } else { Laurent::constant(-1) };
                    let b_prev = other.ranks[j - 1];
                    for x in 0..a {
                        for (&(r, c), v) in dj.entries() {
                            d.set(target + x * b_prev + r, off + x * b + c, v.mul(&sign));
                        }
                    }
                }
            }
            boundaries.push(d);
        }
        Self { m: self.m + other.m, ranks, boundaries }
    }
}

fn shift_vars(b: &LaurentMatrix, shift: usize) -> LaurentMatrix {
    let mut out = LaurentMatrix::zeros(b.rows(), b.cols());
    for (&(i, j), v) in b.entries() {
        let mut acc = Laurent::zero();
        for (e, c) in v.terms() {
            let mut exps = vec![0; shift];
            exps.extend_from_slice(e);
            acc = acc.add(&Laurent::monomial(c.clone(), exps));
        }
        out.set(i, j, acc);
    }
    out
}

/// Checks shapes, variable indices and `d_k o d_{k+1} = 0`.
pub fn validate_complex(c: &GroupRingComplex) -> Result<(), ChainError> {
    let expected = c.ranks.len().saturating_sub(1);
    if c.boundaries.len() != expected {
        return Err(ChainError::BoundaryCount { ranks: c.ranks.len(), boundaries: c.boundaries.len() });
    }
    for (idx, b) in c.boundaries.iter().enumerate() {
        let k = idx + 1;
        let want = (c.ranks[k - 1], c.ranks[k]);
        if (b.rows(), b.cols()) != want {
            return Err(ChainError::Shape { degree: k, expected: want, found: (b.rows(), b.cols()) });
        }
        if b.max_var() > c.m {
            return Err(ChainError::VariableOutOfRange { var: b.max_var(), m: c.m });
        }
    }
    for k in 1..c.boundaries.len() {
        let comp = c.boundaries[k - 1].mul(&c.boundaries[k]);
        let first = comp.entries().next().map(|(&(row, col), v)| (row, col, v.to_string()));
        if let Some((row, col, value)) = first {
            return Err(ChainError::NotAComplex { degree: k, row, col, value });
        }
    }
    Ok(())
}

/// Coefficient field of a specialized complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "String")]
pub enum FieldTag {
    /// `Q(zeta_K)` at the stated monodromy.
    Cyclotomic(String),
    /// Complex numbers in double precision at the stated monodromy.
    Float(String),
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Cyclotomic(z) => write!(f, "cyclotomic@{z}"),
            FieldTag::Float(z) => write!(f, "float@{z}"),
            FieldTag::Rationals => write!(f, "Q"),
            FieldTag::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

impl From<FieldTag> for String {
    fn from(t: FieldTag) -> String {
        t.to_string()
    }
}

/// Dense complex floating matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl FloatMatrix {
    pub fn rank(&self, tol: f64) -> usize {
        float_rank(self.rows, self.cols, &self.data, tol)
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Boundaries {
    Cyclotomic(Vec<Matrix<Cyclotomic>>),
    Float(Vec<FloatMatrix>),
    Rational(Vec<Matrix<BigRational>>),
    Prime(Vec<Matrix<Fp>>),
}

/// A complex of finite-dimensional vector spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecializedComplex {
    pub field: FieldTag,
    pub ranks: Vec<usize>,
    pub boundaries: Boundaries,
    /// Relative rank tolerance used in floating mode.
    pub tolerance: f64,
}

impl SpecializedComplex {
    /// `rnk d_k` for `k = 1..=top`.
    pub fn boundary_ranks(&self) -> Vec<usize> {
        match &self.boundaries {
            Boundaries::Cyclotomic(ms) => ms.iter().map(Matrix::rank).collect(),
            Boundaries::Rational(ms) => ms.iter().map(Matrix::rank).collect(),
            Boundaries::Prime(ms) => ms.iter().map(Matrix::rank).collect(),
            Boundaries::Float(ms) => ms.iter().map(|m| m.rank(self.tolerance)).collect(),
        }
    }
}

/// Replaces each `t_i` by `zeta_i`: exact cyclotomic entries for exact
/// weights, double precision otherwise.
pub fn specialize_twisted(c: &GroupRingComplex, zeta: &MonodromyAssignment) -> Result<SpecializedComplex, ChainError> {
    if zeta.colors() < c.m {
        return Err(ChainError::Arity { m: c.m, given: zeta.colors() });
    }
    let boundaries = if zeta.is_exact() {
        let (k, exps) = zeta.common_root()?;
        Boundaries::Cyclotomic(
            c.boundaries.iter().map(|b| b.map_dense(Cyclotomic::zero(), |v| v.eval_root(k, &exps))).collect(),
        )
    } else {
        let z = zeta.complex_values();
        Boundaries::Float(
            c.boundaries
                .iter()
                .map(|b| {
                    let mut data = vec![Complex64::new(0.0, 0.0); b.rows() * b.cols()];
                    for (&(i, j), v) in b.entries() {
                        data[i * b.cols() + j] = v.eval_complex(&z);
                    }
                    FloatMatrix { rows: b.rows(), cols: b.cols(), data }
                })
                .collect(),
        )
    };
    let field =
        if zeta.is_exact() { FieldTag::Cyclotomic(zeta.to_string()) } else { FieldTag::Float(zeta.to_string()) };
    Ok(SpecializedComplex { field, ranks: c.ranks.clone(), boundaries, tolerance: FLOAT_RANK_TOL })
}

/// Sends every `t_i` to 1 and reduces the integer coefficients into `P`.
pub fn specialize_untwisted(c: &GroupRingComplex, field: &CoefficientField) -> Result<SpecializedComplex, ChainError> {
    let (tag, boundaries) = match *field {
        CoefficientField::NoEstimate => return Err(ChainError::NoEstimate),
        CoefficientField::Rationals => (
            FieldTag::Rationals,
            Boundaries::Rational(
                c.boundaries
                    .iter()
                    .map(|b| {
                        b.map_dense(BigRational::from_integer(0.into()), |v| {
                            BigRational::from_integer(v.augmentation())
                        })
                    })
                    .collect(),
            ),
        ),
        CoefficientField::Prime(p) => (
            FieldTag::PrimeField(p),
            Boundaries::Prime(
                c.boundaries
                    .iter()
                    .map(|b| b.map_dense(Fp::new(0, p), |v| Fp::from_bigint(&v.augmentation(), p)))
                    .collect(),
            ),
        ),
    };
    Ok(SpecializedComplex { field: tag, ranks: c.ranks.clone(), boundaries, tolerance: FLOAT_RANK_TOL })
}

/// Homology dimensions by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    pub field: FieldTag,
    pub dims: Vec<usize>,
}

impl BettiVector {
    pub fn get(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating(self.dims.iter().map(|&d| d as i64))
    }
}

fn alternating(xs: impl Iterator<Item = i64>) -> i64 {
    xs.enumerate().map(|(s, x)| if s % 2 == 0 { x } else { -x }).sum()
}

/// `dim H_s = dim C_s - rnk d_s - rnk d_{s+1}`.
fn dims_from_ranks(ranks: &[usize], boundary_ranks: &[usize]) -> Vec<usize> {
    let rk = |k: usize| if k == 0 { 0 } else { boundary_ranks.get(k - 1).copied().unwrap_or(0) };
    (0..ranks.len()).map(|s| ranks[s] - rk(s) - rk(s + 1)).collect()
}

pub fn betti(s: &SpecializedComplex) -> BettiVector {
    BettiVector { field: s.field.clone(), dims: dims_from_ranks(&s.ranks, &s.boundary_ranks()) }
}

pub fn twisted_betti(c: &GroupRingComplex, zeta: &MonodromyAssignment) -> Result<BettiVector, ChainError> {
    Ok(betti(&specialize_twisted(c, zeta)?))
}

pub fn untwisted_betti(c: &GroupRingComplex, field: &CoefficientField) -> Result<BettiVector, ChainError> {
    Ok(betti(&specialize_untwisted(c, field)?))
}

/// Twisted Betti numbers at many monodromies, results in input order.
pub fn batch_twisted_betti(
    c: &GroupRingComplex,
    zetas: &[MonodromyAssignment],
    exec: Execution,
) -> Vec<Result<BettiVector, ChainError>> {
    map_ordered(exec, zetas, |z| twisted_betti(c, z))
}

/// Both sides of the alternating-sum estimate over the window
/// `s = r, ..., r + 2n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorseReport {
    pub r: usize,
    pub n: usize,
    pub field: CoefficientField,
    pub twisted: BettiVector,
    pub untwisted: BettiVector,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    /// The rank equality behind the estimate held on both sides.
    pub equality_holds: bool,
}

/// `sum_{s=r}^{r+2n} (-1)^{s-r} x_s`.
pub fn window_sum(xs: impl Fn(usize) -> i64, r: usize, n: usize) -> i64 {
    (r..=r + 2 * n).map(|s| if (s - r).is_multiple_of(2) { xs(s) } else { -xs(s) }).sum()
}

/// Checks `sum (-1)^{s-r} dim H_s = sum (-1)^{s-r} dim C_s - rnk d_r - rnk d_{r+2n+1}`.
/// Here `d_s : C_s -> C_{s-1}`, so the two boundary terms sit one degree
/// above the window ends.
pub fn window_equality(ranks: &[usize], boundary_ranks: &[usize], dims: &[usize], r: usize, n: usize) -> bool {
    let at = |v: &[usize], k: usize| v.get(k).copied().unwrap_or(0) as i64;
    let rk = |k: usize| if k == 0 { 0 } else { at(boundary_ranks, k - 1) };
    let lhs = window_sum(|s| at(dims, s), r, n);
    let rhs = window_sum(|s| at(ranks, s), r, n) - rk(r) - rk(r + 2 * n + 1);
    lhs == rhs
}

/// Morse-type estimate with `P` chosen from the monodromy.
pub fn morse_estimate_check(
    c: &GroupRingComplex,
    zeta: &MonodromyAssignment,
    r: usize,
    n: usize,
) -> Result<MorseReport, ChainError> {
    let choice = comparison_field(zeta);
    morse_estimate_check_over(c, zeta, &choice.field, r, n)
}

/// Morse-type estimate against an explicitly chosen comparison field.
pub fn morse_estimate_check_over(
    c: &GroupRingComplex,
    zeta: &MonodromyAssignment,
    field: &CoefficientField,
    r: usize,
    n: usize,
) -> Result<MorseReport, ChainError> {
    if *field == CoefficientField::NoEstimate {
        return Err(ChainError::NoEstimate);
    }
    let tw = specialize_twisted(c, zeta)?;
    let un = specialize_untwisted(c, field)?;
    let (tw_ranks, un_ranks) = (tw.boundary_ranks(), un.boundary_ranks());
    let twisted = BettiVector { field: tw.field.clone(), dims: dims_from_ranks(&c.ranks, &tw_ranks) };
    let untwisted = BettiVector { field: un.field.clone(), dims: dims_from_ranks(&c.ranks, &un_ranks) };
    let lhs = window_sum(|s| twisted.get(s) as i64, r, n);
    let rhs = window_sum(|s| untwisted.get(s) as i64, r, n);
    let equality_holds = window_equality(&c.ranks, &tw_ranks, &twisted.dims, r, n)
        && window_equality(&c.ranks, &un_ranks, &untwisted.dims, r, n);
    Ok(MorseReport { r, n, field: *field, twisted, untwisted, lhs, rhs, holds: lhs <= rhs, equality_holds })
}

/// Exact sequence `... -> C_k --rho_k--> C_{k-1} -> ...` of finite-dimensional
/// spaces in degrees `lowest ..= lowest + dims.len() - 1`, extended by zero on
/// both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactSequence<F> {
    lowest: i64,
    dims: Vec<usize>,
    /// `maps[j] = rho_{lowest + j + 1}`.
    maps: Vec<Matrix<F>>,
    ranks: Vec<usize>,
}

impl<F: Field> ExactSequence<F> {
    /// Verifies shapes, that consecutive maps compose to zero, and that
    /// `rnk rho_k + rnk rho_{k+1} = dim C_k` everywhere.
    pub fn new(lowest: i64, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self, ChainError> {
        if maps.len() + 1 != dims.len().max(1) {
            return Err(ChainError::BoundaryCount { ranks: dims.len(), boundaries: maps.len() });
        }
        for (j, m) in maps.iter().enumerate() {
            let want = (dims[j], dims[j + 1]);
            if (m.rows(), m.cols()) != want {
                return Err(ChainError::Shape { degree: j + 1, expected: want, found: (m.rows(), m.cols()) });
            }
        }
        for j in 1..maps.len() {
            if !maps[j - 1].mul(&maps[j]).is_zero() {
                return Err(ChainError::NotExact { degree: lowest + j as i64 });
            }
        }
        let ranks: Vec<usize> = maps.iter().map(Matrix::rank).collect();
        let seq = Self { lowest, dims, maps, ranks };
        for k in seq.lowest..seq.lowest + seq.dims.len() as i64 {
            if seq.rank_of(k) + seq.rank_of(k + 1) != seq.dim(k) {
                return Err(ChainError::NotExact { degree: k });
            }
        }
        Ok(seq)
    }

    pub fn dim(&self, k: i64) -> usize {
        usize::try_from(k - self.lowest).ok().and_then(|j| self.dims.get(j).copied()).unwrap_or(0)
    }

    /// `rnk rho_k`; zero for the extension maps.
    pub fn rank_of(&self, k: i64) -> usize {
        usize::try_from(k - self.lowest - 1).ok().and_then(|j| self.ranks.get(j).copied()).unwrap_or(0)
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    /// Ranks of `rho_k` keyed by `k`, suitable for [`rank_identities`].
    pub fn rank_table(&self) -> BTreeMap<i64, usize> {
        (self.lowest..=self.lowest + self.dims.len() as i64).map(|k| (k, self.rank_of(k))).collect()
    }

    pub fn dim_table(&self) -> BTreeMap<i64, usize> {
        (self.lowest..self.lowest + self.dims.len() as i64).map(|k| (k, self.dim(k))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankIdentityReport {
    pub n: i64,
    pub r: i64,
    /// `rnk rho_{n+1} + rnk rho_{n-2r}` against `sum_{s=0}^{2r} (-1)^s dim C_{n-s}`.
    pub head: (i64, i64),
    /// `rnk rho_n - rnk rho_{n+2r}` against `sum_{s=0}^{2r-1} (-1)^s dim C_{n+s}`.
    pub tail: (i64, i64),
    pub holds: bool,
}

/// Evaluates both rank identities from tabulated ranks and dimensions;
/// missing degrees count as zero. Pure arithmetic, so a perturbed table shows
/// up as `holds == false`.
pub fn rank_identities(
    dims: &BTreeMap<i64, usize>,
    ranks: &BTreeMap<i64, usize>,
    n: i64,
    r: i64,
) -> RankIdentityReport {
    let d = |k: i64| dims.get(&k).copied().unwrap_or(0) as i64;
    let rk = |k: i64| ranks.get(&k).copied().unwrap_or(0) as i64;
    let sign = |s: i64| if s % 2 == 0 { 1 } else { -1 };
    let head = (rk(n + 1) + rk(n - 2 * r), (0..=2 * r).map(|s| sign(s) * d(n - s)).sum());
    let tail = (rk(n) - rk(n + 2 * r), (0..2 * r).map(|s| sign(s) * d(n + s)).sum());
    RankIdentityReport { n, r, head, tail, holds: head.0 == head.1 && tail.0 == tail.1 }
}

/// Rank identities of a verified exact sequence.
pub fn rank_identity_check<F: Field>(seq: &ExactSequence<F>, n: i64, r: i64) -> Result<RankIdentityReport, ChainError> {
    if r < 0 {
        return Err(ChainError::DegreeOutOfRange { degree: r });
    }
    let report = rank_identities(&seq.dim_table(), &seq.rank_table(), n, r);
    if report.holds {
        Ok(report)
    } else {
        Err(ChainError::NotExact { degree: n })
    }
}
