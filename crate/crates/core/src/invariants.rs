//! Colored signatures and nullities: Levine–Tristram forms of Seifert
//! matrices, the colored form of generalized Seifert data, twisted nullities
//! from the Fox complex, and signature scans over the torus of weights.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain_complex::{twisted_betti, ChainError};
use crate::hermitian::{
    signature_nullity, signature_nullity_float, FormKind, HermitianError, HermitianMatrixExact, HermitianMatrixFloat,
    SignatureResult,
};
use crate::link::{fox_complex, seifert_from_diagram, wirtinger, ColoredLinkDiagram, LinkError, SeifertMatrix};
use crate::local_system::{LocalSystemError, MonodromyAssignment, Weight};
use crate::par::{map_ordered, Execution};
use crate::scalars::{Cyclotomic, RootOfUnity};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvariantError {
    #[error("monodromy must be nontrivial")]
    TrivialMonodromy,
    #[error("expected {expected} weights, got {given}")]
    Arity { expected: usize, given: usize },
    #[error("malformed Seifert data: {0}")]
    Malformed(String),
    #[error("scan grid must have at least 2 points per color")]
    Grid,
    #[error("diagrams with {0} colors need generalized Seifert data")]
    NeedsGeneralizedData(usize),
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Hermitian(#[from] HermitianError),
    #[error(transparent)]
    LocalSystem(#[from] LocalSystemError),
}

/// Signature and nullity of a form at one weight tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureSample {
    /// Weights as fractions of a turn (or floating values in float mode).
    pub zeta: Vec<String>,
    pub sigma: i64,
    pub nullity: usize,
    /// Size of the form; `p + n + z` of the underlying result.
    pub size: usize,
}

impl SignatureSample {
    fn new(zeta: &MonodromyAssignment, r: SignatureResult) -> Self {
        Self {
            zeta: zeta.weights().iter().map(Weight::to_string).collect(),
            sigma: r.signature,
            nullity: r.nullity,
            size: r.size(),
        }
    }
}

fn check_nontrivial(zeta: &MonodromyAssignment, expected: usize) -> Result<(), InvariantError> {
    if zeta.colors() != expected {
        return Err(InvariantError::Arity { expected, given: zeta.colors() });
    }
    if zeta.has_trivial() {
        return Err(InvariantError::TrivialMonodromy);
    }
    Ok(())
}

/// The Hermitian matrix `(1 - w) V + (1 - conj w) V^T` over `Q(w)`.
pub fn levine_tristram_form(v: &SeifertMatrix, omega: &RootOfUnity) -> HermitianMatrixExact {
    let w = omega.to_cyclotomic();
    let a = Cyclotomic::one() - w.clone();
    let b = a.conj();
    let n = v.size();
    let entries =
        (0..n).map(|i| (0..n).map(|j| a.scale(&int(v.v[i][j])) + b.scale(&int(v.v[j][i]))).collect()).collect();
    HermitianMatrixExact { kind: FormKind::Hermitian, entries }
}

fn int(x: i64) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(x.into())
}

fn levine_tristram_float(v: &SeifertMatrix, omega: Complex64) -> HermitianMatrixFloat {
    let one = Complex64::new(1.0, 0.0);
    let (a, b) = (one - omega, one - omega.conj());
    let n = v.size();
    let data = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| a * v.v[i][j] as f64 + b * v.v[j][i] as f64)
        .collect();
    HermitianMatrixFloat { kind: FormKind::Hermitian, n, data }
}

/// Levine–Tristram signature and nullity at `omega != 1`.
pub fn levine_tristram(v: &SeifertMatrix, omega: &MonodromyAssignment) -> Result<SignatureSample, InvariantError> {
    check_nontrivial(omega, 1)?;
    let r = match &omega.weights()[0] {
        Weight::Exact(root) => signature_nullity(&levine_tristram_form(v, root))?,
        Weight::Float(u) => signature_nullity_float(&levine_tristram_float(v, u.to_complex())),
    };
    Ok(SignatureSample::new(omega, r))
}

/// Matrices `A^e` indexed by sign vectors, with `A^{-e} = (A^e)^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedSeifertData {
    m: usize,
    size: usize,
    matrices: BTreeMap<Vec<i8>, Vec<Vec<i64>>>,
}

#[derive(Serialize, Deserialize)]
struct GeneralizedRepr {
    m: usize,
    matrices: BTreeMap<String, Vec<Vec<i64>>>,
}

fn sign_key(eps: &[i8]) -> String {
    eps.iter().map(|&e| if e > 0 { '+' } else { '-' }).collect()
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

impl GeneralizedSeifertData {
    pub fn new(m: usize, matrices: BTreeMap<Vec<i8>, Vec<Vec<i64>>>) -> Result<Self, InvariantError> {
        if m == 0 {
            return Err(InvariantError::Malformed("at least one color is needed".into()));
        }
        if matrices.len() != 1 << m {
            return Err(InvariantError::Malformed(format!("expected {} matrices, got {}", 1 << m, matrices.len())));
        }
        let size = matrices.values().next().map_or(0, Vec::len);
        for (eps, a) in &matrices {
            if eps.len() != m || eps.iter().any(|&e| e != 1 && e != -1) {
                return Err(InvariantError::Malformed(format!("bad sign vector {}", sign_key(eps))));
            }
            if a.len() != size || a.iter().any(|r| r.len() != size) {
                return Err(InvariantError::Malformed("matrices must be square of one size".into()));
            }
            let neg: Vec<i8> = eps.iter().map(|e| -e).collect();
            if matrices.get(&neg) != Some(&transpose(a)) {
                return Err(InvariantError::Malformed(format!(
                    "A^{} is not the transpose of A^{}",
                    sign_key(&neg),
                    sign_key(eps)
                )));
            }
        }
        Ok(Self { m, size, matrices })
    }

    /// One color: `A^+ = V`, `A^- = V^T`.
    pub fn from_seifert(v: &SeifertMatrix) -> Self {
        let mut matrices = BTreeMap::new();
        matrices.insert(vec![1], v.v.clone());
        matrices.insert(vec![-1], v.transpose().v);
        Self { m: 1, size: v.size(), matrices }
    }

    pub fn from_json(text: &str) -> Result<Self, InvariantError> {
        let repr: GeneralizedRepr = serde_json::from_str(text).map_err(|e| InvariantError::Malformed(e.to_string()))?;
        let mut matrices = BTreeMap::new();
        for (k, a) in repr.matrices {
            let eps: Result<Vec<i8>, _> = k
                .chars()
                .map(|c| match c {
                    '+' => Ok(1),
                    '-' => Ok(-1),
                    _ => Err(InvariantError::Malformed(format!("bad sign key {k:?}"))),
                })
                .collect();
            matrices.insert(eps?, a);
        }
        Self::new(repr.m, matrices)
    }

    pub fn to_json(&self) -> String {
        let repr = GeneralizedRepr {
            m: self.m,
            matrices: self.matrices.iter().map(|(k, v)| (sign_key(k), v.clone())).collect(),
        };
        serde_json::to_string(&repr).expect("serializable")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn matrices(&self) -> &BTreeMap<Vec<i8>, Vec<Vec<i64>>> {
        &self.matrices
    }
}

/// `H(zeta) = sum_e prod_i (1 - conj(zeta_i)^{e_i}) A^e` in exact arithmetic.
pub fn colored_form(g: &GeneralizedSeifertData, roots: &[RootOfUnity]) -> HermitianMatrixExact {
    let n = g.size;
    let mut entries = vec![vec![Cyclotomic::zero(); n]; n];
    for (eps, a) in &g.matrices {
        let mut coeff = Cyclotomic::one();
        for (r, &e) in roots.iter().zip(eps) {
            let z = if e > 0 { r.inverse() } else { *r };
            coeff = &coeff * &(Cyclotomic::one() - z.to_cyclotomic());
        }
        for i in 0..n {
            for j in 0..n {
                if a[i][j] != 0 {
                    entries[i][j] = &entries[i][j] + &coeff.scale(&int(a[i][j]));
                }
            }
        }
    }
    HermitianMatrixExact { kind: FormKind::Hermitian, entries }
}

fn colored_form_float(g: &GeneralizedSeifertData, z: &[Complex64]) -> HermitianMatrixFloat {
    let n = g.size;
    let one = Complex64::new(1.0, 0.0);
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for (eps, a) in &g.matrices {
        let coeff: Complex64 = z.iter().zip(eps).map(|(w, &e)| one - if e > 0 { w.conj() } else { *w }).product();
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] += coeff * a[i][j] as f64;
            }
        }
    }
    HermitianMatrixFloat { kind: FormKind::Hermitian, n, data }
}

/// Colored signature and nullity at `zeta` with every component `!= 1`.
pub fn colored_signature(
    g: &GeneralizedSeifertData,
    zeta: &MonodromyAssignment,
) -> Result<SignatureSample, InvariantError> {
    check_nontrivial(zeta, g.m)?;
    let r = match zeta.roots() {
        Some(roots) => signature_nullity(&colored_form(g, &roots))?,
        None => signature_nullity_float(&colored_form_float(g, &zeta.complex_values())),
    };
    Ok(SignatureSample::new(zeta, r))
}

/// `dim H_1` of the twisted Fox complex of the diagram's complement.
pub fn twisted_nullity(d: &ColoredLinkDiagram, zeta: &MonodromyAssignment) -> Result<usize, InvariantError> {
    check_nontrivial(zeta, d.m())?;
    let c = fox_complex(&wirtinger(d), d)?;
    Ok(twisted_betti(&c, zeta)?.get(1))
}

/// Signature of a one-colored diagram through its Seifert matrix.
pub fn diagram_signature(
    d: &ColoredLinkDiagram,
    zeta: &MonodromyAssignment,
) -> Result<SignatureSample, InvariantError> {
    if d.m() > 1 {
        return Err(InvariantError::NeedsGeneralizedData(d.m()));
    }
    let v = seifert_from_diagram(&d.diagram)?;
    levine_tristram(&v, zeta)
}

/// What a scan evaluates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanSource {
    Seifert(SeifertMatrix),
    Generalized(GeneralizedSeifertData),
}

impl ScanSource {
    pub fn colors(&self) -> usize {
        match self {
            ScanSource::Seifert(_) => 1,
            ScanSource::Generalized(g) => g.m,
        }
    }

    pub fn evaluate(&self, zeta: &MonodromyAssignment) -> Result<SignatureSample, InvariantError> {
        match self {
            ScanSource::Seifert(v) => levine_tristram(v, zeta),
            ScanSource::Generalized(g) => colored_signature(g, zeta),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    /// Grid indices `k_i` of `zeta_i = e^{2 pi i k_i / grid}`.
    pub index: Vec<u32>,
    pub sample: SignatureSample,
    /// `sigma` or `nullity` differs from the previous point in the same row.
    pub jump: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub grid: u32,
    pub rows: Vec<ScanRow>,
    /// Grid points skipped because some `zeta_i = 1`.
    pub gaps: Vec<Vec<u32>>,
}

/// Grid points in row-major order (first color slowest).
pub fn grid_points(m: usize, grid: u32) -> Vec<Vec<u32>> {
    let mut points = vec![Vec::new()];
    for _ in 0..m {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..grid).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    points
}

/// `k/grid` in lowest terms.
pub fn grid_label(k: u32, grid: u32) -> String {
    RootOfUnity::new(k as i64, grid as i64).expect("positive grid").to_string()
}

fn assignment(index: &[u32], grid: u32, mode: Mode) -> MonodromyAssignment {
    match mode {
        Mode::Exact => MonodromyAssignment::exact(
            index.iter().map(|&k| RootOfUnity::new(k as i64, grid as i64).expect("valid grid root")).collect(),
        ),
        Mode::Float => {
            MonodromyAssignment::float_turns(&index.iter().map(|&k| k as f64 / grid as f64).collect::<Vec<_>>())
        }
    }
    .expect("nonempty grid point")
}

/// Samples `sigma` and `nullity` on the grid `(k_1/g, ..., k_m/g)`, skipping
/// points with a trivial weight. Rows come back in grid order whatever the
/// execution strategy.
pub fn signature_scan(
    source: &ScanSource,
    grid: u32,
    mode: Mode,
    exec: Execution,
) -> Result<ScanResult, InvariantError> {
    if grid < 2 {
        return Err(InvariantError::Grid);
    }
    let (points, gaps): (Vec<_>, Vec<_>) =
        grid_points(source.colors(), grid).into_iter().partition(|p| p.iter().all(|&k| k != 0));
    let samples = map_ordered(exec, &points, |p| source.evaluate(&assignment(p, grid, mode)));
    let mut rows: Vec<ScanRow> = Vec::with_capacity(points.len());
    for (index, sample) in points.into_iter().zip(samples) {
        let mut sample = sample?;
        sample.zeta = index.iter().map(|&k| grid_label(k, grid)).collect();
        let jump = rows.last().is_some_and(|prev| {
            prev.index[..prev.index.len() - 1] == index[..index.len() - 1]
                && (prev.sample.sigma, prev.sample.nullity) != (sample.sigma, sample.nullity)
        });
        rows.push(ScanRow { index, sample, jump });
    }
    Ok(ScanResult { grid, rows, gaps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::{braid_to_diagram, parse_braid, parse_pd};

    fn z(s: &str) -> MonodromyAssignment {
        s.parse().unwrap()
    }

    fn trefoil() -> SeifertMatrix {
        SeifertMatrix::new(vec![vec![-1, 1], vec![0, -1]]).unwrap()
    }

    #[test]
    fn levine_tristram_examples() {
        let t = levine_tristram(&trefoil(), &z("1/2")).unwrap();
        assert_eq!((t.sigma, t.nullity), (-2, 0));
        let f8 = SeifertMatrix::new(vec![vec![1, 1], vec![0, -1]]).unwrap();
        assert_eq!(levine_tristram(&f8, &z("1/2")).unwrap().sigma, 0);
        let u = levine_tristram(&SeifertMatrix::default(), &z("1/3")).unwrap();
        assert_eq!((u.sigma, u.nullity), (0, 0));
        assert_eq!(levine_tristram(&trefoil(), &z("0/1")), Err(InvariantError::TrivialMonodromy));
        // Alexander root of the trefoil.
        assert_eq!(levine_tristram(&trefoil(), &z("1/6")).unwrap().nullity, 1);
    }

    #[test]
    fn colored_reduces_to_levine_tristram() {
        let g = GeneralizedSeifertData::from_seifert(&trefoil());
        for k in 1..12 {
            let w = z(&format!("{k}/12"));
            let a = colored_signature(&g, &w).unwrap();
            let b = levine_tristram(&trefoil(), &w).unwrap();
            assert_eq!((a.sigma, a.nullity), (b.sigma, b.nullity), "{k}/12");
        }
    }

    #[test]
    fn zero_generalized_data() {
        let mut mats = BTreeMap::new();
        for eps in [vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]] {
            mats.insert(eps, vec![vec![0; 3]; 3]);
        }
        let g = GeneralizedSeifertData::new(2, mats).unwrap();
        let s = colored_signature(&g, &z("1/3,2/5")).unwrap();
        assert_eq!((s.sigma, s.nullity), (0, 3));
        assert!(GeneralizedSeifertData::from_json(&g.to_json()).is_ok());
        assert!(
            GeneralizedSeifertData::from_json(r#"{"m":1,"matrices":{"+":[[1,2],[0,1]],"-":[[1,0],[0,1]]}}"#).is_err()
        );
    }

    #[test]
    fn twisted_nullity_examples() {
        let u = ColoredLinkDiagram::monochrome(parse_pd("[]").unwrap().to_diagram().unwrap());
        assert_eq!(twisted_nullity(&u, &z("1/5")).unwrap(), 0);
        let hopf = ColoredLinkDiagram::by_component(parse_pd("[[1,4,2,3],[3,2,4,1]]").unwrap().to_diagram().unwrap());
        assert_eq!(twisted_nullity(&hopf, &z("1/2,1/3")).unwrap(), 0);
        let t = ColoredLinkDiagram::monochrome(braid_to_diagram(&parse_braid("1,1,1", None).unwrap()));
        assert_eq!(twisted_nullity(&t, &z("1/6")).unwrap(), 1);
        assert_eq!(twisted_nullity(&t, &z("1/2")).unwrap(), 0);
        assert_eq!(twisted_nullity(&t, &z("0/1")), Err(InvariantError::TrivialMonodromy));
    }

    #[test]
    fn trefoil_scan() {
        let scan = signature_scan(&ScanSource::Seifert(trefoil()), 12, Mode::Exact, Execution::Serial).unwrap();
        assert_eq!(scan.rows.len(), 11);
        let sig: Vec<i64> = scan.rows.iter().map(|r| r.sample.sigma).collect();
        assert_eq!(sig, vec![0, -1, -2, -2, -2, -2, -2, -2, -2, -1, 0]);
        let nul: Vec<usize> = scan.rows.iter().map(|r| r.sample.nullity).collect();
        assert_eq!(nul, vec![0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0]);
        assert_eq!(scan.gaps, vec![vec![0]]);
        let float = signature_scan(&ScanSource::Seifert(trefoil()), 12, Mode::Float, Execution::Parallel).unwrap();
        let fsig: Vec<i64> = float.rows.iter().map(|r| r.sample.sigma).collect();
        assert_eq!(fsig, sig);
    }
}
