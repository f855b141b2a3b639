//! Rank-one local systems given by one unit weight per color, and the choice
//! of the untwisted comparison field `P`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::scalars::{cyclotomic_polynomial, Cyclotomic, RootOfUnity, ScalarError, UnitComplexFloat};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LocalSystemError {
    #[error("floating-point monodromy: the specialization ideal is undefined")]
    FloatingMode,
    #[error("empty monodromy assignment")]
    Empty,
    #[error("monodromy mixes exact and floating weights")]
    MixedModes,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Weight attached to the meridians of one color.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Weight {
    Exact(RootOfUnity),
    Float(UnitComplexFloat),
}

impl Weight {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Weight::Exact(r) => r.to_complex(),
            Weight::Float(u) => u.to_complex(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            Weight::Exact(r) => r.is_one(),
            Weight::Float(u) => (u.to_complex() - Complex64::new(1.0, 0.0)).norm() < 1e-12,
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Weight::Exact(r) => Weight::Exact(r.inverse()),
            Weight::Float(u) => Weight::Float(u.conj()),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Exact(r) => write!(f, "{r}"),
            Weight::Float(u) => write!(f, "{}{:+}i", u.re(), u.im()),
        }
    }
}

/// The tuple `(zeta_1, ..., zeta_m)`, either all roots of unity or all floating.
#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyAssignment {
    weights: Vec<Weight>,
}

impl MonodromyAssignment {
    pub fn new(weights: Vec<Weight>) -> Result<Self, LocalSystemError> {
        if weights.is_empty() {
            return Err(LocalSystemError::Empty);
        }
        let exact = weights.iter().filter(|w| matches!(w, Weight::Exact(_))).count();
        if exact != 0 && exact != weights.len() {
            return Err(LocalSystemError::MixedModes);
        }
        Ok(Self { weights })
    }

    pub fn exact(roots: Vec<RootOfUnity>) -> Result<Self, LocalSystemError> {
        Self::new(roots.into_iter().map(Weight::Exact).collect())
    }

    /// Floating weights `e^{2 pi i t}` from turns `t`.
    pub fn float_turns(turns: &[f64]) -> Result<Self, LocalSystemError> {
        Self::new(turns.iter().map(|&t| Weight::Float(UnitComplexFloat::from_turns(t))).collect())
    }

    pub fn colors(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.weights[0], Weight::Exact(_))
    }

    /// The exact roots, when in exact mode.
    pub fn roots(&self) -> Option<Vec<RootOfUnity>> {
        self.weights
            .iter()
            .map(|w| match w {
                Weight::Exact(r) => Some(*r),
                Weight::Float(_) => None,
            })
            .collect()
    }

    pub fn has_trivial(&self) -> bool {
        self.weights.iter().any(Weight::is_trivial)
    }

    pub fn all_trivial(&self) -> bool {
        self.weights.iter().all(Weight::is_trivial)
    }

    pub fn conj(&self) -> Self {
        Self { weights: self.weights.iter().map(Weight::conj).collect() }
    }

    /// The same weights evaluated in double precision.
    pub fn to_float(&self) -> Self {
        Self {
            weights: self
                .weights
                .iter()
                .map(|w| {
                    let z = w.to_complex();
                    Weight::Float(
                        UnitComplexFloat::new(z.re, z.im)
                            .unwrap_or_else(|_| UnitComplexFloat::from_turns(z.arg() / std::f64::consts::TAU)),
                    )
                })
                .collect(),
        }
    }

    pub fn complex_values(&self) -> Vec<Complex64> {
        self.weights.iter().map(Weight::to_complex).collect()
    }

    /// Common conductor `K` and exponents `a_i` with `zeta_i = zeta_K^{a_i}`.
    pub fn common_root(&self) -> Result<(u32, Vec<u32>), LocalSystemError> {
        let roots = self.roots().ok_or(LocalSystemError::FloatingMode)?;
        let k = roots.iter().fold(1u32, |acc, r| acc.lcm(&r.order()));
        let exps = roots.iter().map(|r| r.numerator() * (k / r.order())).collect();
        Ok((k, exps))
    }

    /// Exact values in `Q(zeta_K)`.
    pub fn cyclotomic_values(&self) -> Result<Vec<Cyclotomic>, LocalSystemError> {
        let (k, exps) = self.common_root()?;
        Ok(exps.iter().map(|&a| Cyclotomic::zeta_power(k, a as i64)).collect())
    }
}

impl FromStr for MonodromyAssignment {
    type Err = LocalSystemError;

    /// Comma separated `num/den` fractions of a turn.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let roots = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.parse::<RootOfUnity>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::exact(roots)
    }
}

impl fmt::Display for MonodromyAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Untwisted coefficient field used to bound twisted Betti numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientField {
    Rationals,
    Prime(u64),
    NoEstimate,
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "Q"),
            CoefficientField::Prime(p) => write!(f, "F_{p}"),
            CoefficientField::NoEstimate => write!(f, "none"),
        }
    }
}

impl FromStr for CoefficientField {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "Q" | "q" | "QQ" => Ok(CoefficientField::Rationals),
            "none" => Ok(CoefficientField::NoEstimate),
            other => {
                let digits = other.trim_start_matches("F_").trim_start_matches("Z/").trim_start_matches('F');
                let p: u64 = digits.parse().map_err(|_| format!("unknown field '{other}'"))?;
                if !is_prime(p) || p >= 1 << 32 {
                    return Err(format!("{p} is not a supported prime"));
                }
                Ok(CoefficientField::Prime(p))
            }
        }
    }
}

impl Serialize for CoefficientField {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `d` together with the field it selects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldChoice {
    pub d: u64,
    #[serde(rename = "P")]
    pub field: CoefficientField,
    /// Every prime divisor of `d`; each one gives a valid estimate.
    pub primes: Vec<u64>,
}

impl FieldChoice {
    pub fn from_d(d: u64) -> Self {
        let primes = prime_divisors(d);
        let field = match d {
            0 => CoefficientField::Rationals,
            1 => CoefficientField::NoEstimate,
            _ => CoefficientField::Prime(primes[0]),
        };
        Self { d, field, primes }
    }

    /// All fields for which the estimate is valid.
    pub fn valid_fields(&self) -> Vec<CoefficientField> {
        match self.field {
            CoefficientField::Rationals => vec![CoefficientField::Rationals],
            CoefficientField::NoEstimate => vec![],
            CoefficientField::Prime(_) => self.primes.iter().map(|&p| CoefficientField::Prime(p)).collect(),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p))
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 && p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Nonnegative generator of the augmentation image of the kernel of
/// `Z[t^{+-1}] -> C, t_i -> zeta_i`.
///
/// With `zeta_i = zeta_K^{a_i}` and `g = gcd(K, a_1, ..., a_m)`, this is the
/// additive order of `1` in `Z[x]/(Phi_K(x), x^g - 1)`, computed from a lattice
/// basis of the relations inside `Z[x]/(x^g - 1) = Z^g`. Zero means the
/// quotient has characteristic zero.
pub fn specialization_d(zeta: &MonodromyAssignment) -> Result<u64, LocalSystemError> {
    let (k, exps) = zeta.common_root()?;
    let g = exps.iter().fold(k, |acc, &a| acc.gcd(&a)) as usize;
    let phi = cyclotomic_polynomial(k);
    let generators: Vec<Vec<BigInt>> = (0..g)
        .map(|shift| {
            let mut row = vec![BigInt::zero(); g];
            for (e, &c) in phi.iter().enumerate() {
                row[(e + shift) % g] += c;
            }
            row
        })
        .collect();
    let basis = lattice_basis(generators, g);
    let mut unit = vec![BigInt::zero(); g];
    unit[0] = BigInt::one();
    Ok(additive_order(&basis, &unit))
}

/// Row echelon basis of the integer lattice spanned by `rows`.
fn lattice_basis(mut rows: Vec<Vec<BigInt>>, width: usize) -> Vec<Vec<BigInt>> {
    let mut basis = Vec::new();
    for col in 0..width {
        // Euclid on the column until at most one row has a nonzero entry.
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    basis.push(rows.swap_remove(i));
                }
                break;
            }
            let pivot = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            for &i in &nz {
                if i == pivot {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[pivot][col]);
                let pr = rows[pivot].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
            }
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    basis
}

/// Smallest `n > 0` with `n * v` in the lattice, or 0 if no multiple is.
fn additive_order(basis: &[Vec<BigInt>], v: &[BigInt]) -> u64 {
    // The basis is in echelon form with distinct leading columns, so the
    // rational coordinates of v are found by forward substitution.
    let mut rest: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let mut denominators = BigInt::one();
    for row in basis {
        let lead = row.iter().position(|x| !x.is_zero()).unwrap();
        let coeff = &rest[lead] / BigRational::from_integer(row[lead].clone());
        for (r, x) in rest.iter_mut().zip(row) {
            *r -= &coeff * BigRational::from_integer(x.clone());
        }
        denominators = denominators.lcm(coeff.denom());
    }
    if rest.iter().any(|x| !x.is_zero()) {
        return 0;
    }
    u64::try_from(denominators).expect("order exceeds u64")
}

/// Field selection: smallest prime divisor when `d > 1`, rationals when
/// `d = 0`, nothing when `d = 1`. Floating weights are treated as generic
/// (transcendental), which lands in the `d = 0` branch.
pub fn comparison_field(zeta: &MonodromyAssignment) -> FieldChoice {
    match specialization_d(zeta) {
        Ok(d) => FieldChoice::from_d(d),
        Err(_) => FieldChoice::from_d(0),
    }
}
