//! Span and slice inequalities as checkers, and the genus bound they imply.
//!
//! Inputs are homology dimensions over the comparison field; nothing here
//! looks at geometry beyond the Betti numbers of orientable surfaces.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("window needs n >= 1 and 0 <= 2r <= n, got n = {n}, r = {r}")]
    Window { n: i64, r: i64 },
    #[error("missing dim H_{index} of {space}")]
    MissingIndex { space: &'static str, index: i64 },
    #[error("surface has no pieces")]
    EmptySurface,
}

/// One connected piece of an orientable surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfacePiece {
    pub genus: u64,
    #[serde(rename = "boundary")]
    pub boundary_components: u64,
}

impl SurfacePiece {
    pub fn is_closed(&self) -> bool {
        self.boundary_components == 0
    }
}

/// Pieces of the spanning surface, grouped by color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDescriptor {
    pub colors: Vec<Vec<SurfacePiece>>,
}

impl SurfaceDescriptor {
    pub fn single(pieces: Vec<SurfacePiece>) -> Self {
        Self { colors: vec![pieces] }
    }

    pub fn pieces(&self) -> impl Iterator<Item = &SurfacePiece> {
        self.colors.iter().flatten()
    }

    pub fn warnings(&self) -> Vec<String> {
        let closed = self.pieces().filter(|p| p.is_closed()).count();
        if closed == 0 {
            Vec::new()
        } else {
            vec![format!(
                "{closed} closed piece(s): the extension of the local system over the surface exterior may not be unique"
            )]
        }
    }
}

/// Betti numbers for the span inequalities: `relative[k] = dim H_k(F, L)`,
/// `absolute[k] = dim H_k(F)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanBetti {
    pub n: i64,
    pub r: i64,
    pub relative: Vec<u64>,
    pub absolute: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Betti numbers for the slice inequalities: `lambda[k] = dim H_k(Λ)`,
/// `complement[k] = dim H_k(Λ \ L)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceBetti {
    pub n: i64,
    pub r: i64,
    pub lambda: Vec<u64>,
    pub complement: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub inequality: &'static str,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    /// `rhs - lhs`; negative exactly when violated.
    pub slack: i64,
}

impl Verdict {
    fn new(inequality: &'static str, lhs: i64, rhs: i64) -> Self {
        Self { inequality, lhs, rhs, holds: lhs <= rhs, slack: rhs - lhs }
    }
}

/// Homology of an orientable surface and of the pair (surface, boundary) in
/// the classical case `n = 1`. Dimensions do not depend on the field.
pub fn surface_betti(s: &SurfaceDescriptor) -> Result<SpanBetti, BoundsError> {
    if s.pieces().next().is_none() {
        return Err(BoundsError::EmptySurface);
    }
    let mut absolute = vec![0u64; 3];
    let mut relative = vec![0u64; 3];
    for p in s.pieces() {
        let h1 = 2 * p.genus + p.boundary_components.saturating_sub(1);
        absolute[0] += 1;
        absolute[1] += h1;
        relative[1] += h1;
        relative[2] += 1;
        if p.is_closed() {
            absolute[2] += 1;
            relative[0] += 1;
        }
    }
    Ok(SpanBetti { n: 1, r: 0, relative, absolute, warnings: s.warnings() })
}

fn check_window(n: i64, r: i64) -> Result<(), BoundsError> {
    if n < 1 || r < 0 || 2 * r > n {
        return Err(BoundsError::Window { n, r });
    }
    Ok(())
}

/// `dim H_k`; negative degrees vanish, degrees past the list are missing.
fn dim(list: &[u64], space: &'static str, k: i64) -> Result<i64, BoundsError> {
    if k < 0 {
        return Ok(0);
    }
    list.get(k as usize).map(|&d| d as i64).ok_or(BoundsError::MissingIndex { space, index: k })
}

/// `sum_{s=lo}^{hi} (-1)^s dim H_{f(s)}`.
fn alternating(
    list: &[u64],
    space: &'static str,
    lo: i64,
    hi: i64,
    f: impl Fn(i64) -> i64,
) -> Result<i64, BoundsError> {
    (lo..=hi).try_fold(0, |acc, s| {
        let sign = if s.rem_euclid(2) == 0 { 1 } else { -1 };
        Ok(acc + sign * dim(list, space, f(s))?)
    })
}

/// Both span inequalities for arbitrary `n`:
///
/// `|σ| + n^r ≤ Σ_s (-1)^s [dim H_{n+s+1}(F,L) + dim H_{n+s}(F)]` (null2) and
/// `|σ| + n^r ≤ Σ_s (-1)^s [dim H_{n-s}(F,L) + dim H_{n-s-1}(F)]` (null3),
/// with `s = 0..=2r`.
pub fn span_check_general_n(sigma: i64, nullity_r: i64, b: &SpanBetti) -> Result<[Verdict; 2], BoundsError> {
    check_window(b.n, b.r)?;
    let (n, top) = (b.n, 2 * b.r);
    let lhs = sigma.abs() + nullity_r;
    let rel = "(F, L)";
    let abs = "F";
    let rhs2 =
        alternating(&b.relative, rel, 0, top, |s| n + s + 1)? + alternating(&b.absolute, abs, 0, top, |s| n + s)?;
    let rhs3 =
        alternating(&b.relative, rel, 0, top, |s| n - s)? + alternating(&b.absolute, abs, 0, top, |s| n - s - 1)?;
    Ok([Verdict::new("null2", lhs, rhs2), Verdict::new("null3", lhs, rhs3)])
}

/// Classical span check (`n = 1`, `r = 0`), usually on [`surface_betti`] output.
pub fn span_check(sigma: i64, nullity: i64, b: &SpanBetti) -> Result<[Verdict; 2], BoundsError> {
    if (b.n, b.r) != (1, 0) {
        return Err(BoundsError::Window { n: b.n, r: b.r });
    }
    span_check_general_n(sigma, nullity, b)
}

/// Smallest genus of a connected spanning surface with the given number of
/// boundary components that the classical span inequality allows.
pub fn min_genus_bound(sigma: i64, nullity: i64, boundary_components: u64) -> u64 {
    let excess = sigma.abs() + nullity - boundary_components as i64;
    if excess <= 0 {
        0
    } else {
        (excess as u64).div_ceil(2)
    }
}

/// `2|σ| ≤ dim H_n(Λ)`.
pub fn slice_check_simple(sigma: i64, betti_n_of_lambda: u64) -> Verdict {
    Verdict::new("slice-simple", 2 * sigma.abs(), betti_n_of_lambda as i64)
}

/// `2|σ| + 2n^r ≤ Σ_{s=0}^{2r} (-1)^s dim H_{n-s}(Λ∖L) + Σ_{s=-2r}^{2r} (-1)^s dim H_{n-s}(Λ)`.
pub fn slice_check_general(sigma: i64, nullity_r: i64, b: &SliceBetti) -> Result<Verdict, BoundsError> {
    check_window(b.n, b.r)?;
    let (n, top) = (b.n, 2 * b.r);
    let rhs =
        alternating(&b.complement, "Λ∖L", 0, top, |s| n - s)? + alternating(&b.lambda, "Λ", -top, top, |s| n - s)?;
    Ok(Verdict::new("slice", 2 * sigma.abs() + 2 * nullity_r, rhs))
}
