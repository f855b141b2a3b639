//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! Elements are stored in the power basis of `Q[x]/Phi_N(x)` with rational
//! coefficients. Binary operations lift both operands to the lcm of their
//! conductors first, so any two values can be combined. The complex
//! embedding is always `zeta_N = exp(2 pi i / N)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not real")]
    NotReal,
    #[error("invalid root of unity: {0}")]
    InvalidRoot(String),
    #[error("not a unit complex number: |z|^2 - 1 = {0:e}")]
    NotUnit(f64),
    #[error("invalid rational: {0}")]
    InvalidRational(String),
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the cyclotomic polynomial `Phi_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let divisor = cyclotomic_polynomial(d);
            poly = exact_div_monic(&poly, &divisor);
        }
    }
    let poly = Arc::new(poly);
    cyclotomic_cache().lock().unwrap().insert(n, poly.clone());
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// `e^{2 pi i num/den}` with the fraction in lowest terms and `0 <= num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    num: u32,
    den: u32,
}

impl RootOfUnity {
    pub fn new(num: i64, den: i64) -> Result<Self, ScalarError> {
        if den <= 0 {
            return Err(ScalarError::InvalidRoot(format!("{num}/{den}")));
        }
        let r = num.rem_euclid(den);
        let g = r.gcd(&den);
        let (num, den) = (r / g, den / g);
        Ok(Self {
            num: u32::try_from(num).map_err(|_| ScalarError::InvalidRoot(format!("{num}/{den}")))?,
            den: u32::try_from(den).map_err(|_| ScalarError::InvalidRoot(format!("{num}/{den}")))?,
        })
    }

    pub fn one() -> Self {
        Self { num: 0, den: 1 }
    }

    pub fn numerator(&self) -> u32 {
        self.num
    }

    pub fn denominator(&self) -> u32 {
        self.den
    }

    /// Multiplicative order.
    pub fn order(&self) -> u32 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn inverse(&self) -> Self {
        Self::new(-(self.num as i64), self.den as i64).unwrap()
    }

    pub fn turns(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn to_complex(&self) -> Complex64 {
        let theta = 2.0 * std::f64::consts::PI * self.turns();
        Complex64::new(theta.cos(), theta.sin())
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::zeta_power(self.den, self.num as i64)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RootOfUnity {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ScalarError::InvalidRoot(s.to_string());
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: i64 = d.parse().map_err(|_| bad())?;
        Self::new(n, d).map_err(|_| bad())
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A point of the unit circle in double precision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitComplexFloat {
    re: f64,
    im: f64,
}

impl UnitComplexFloat {
    pub fn new(re: f64, im: f64) -> Result<Self, ScalarError> {
        let defect = re * re + im * im - 1.0;
        if defect.abs() > 1e-12 || !defect.is_finite() {
            return Err(ScalarError::NotUnit(defect));
        }
        Ok(Self { re, im })
    }

    pub fn from_turns(t: f64) -> Self {
        let theta = 2.0 * std::f64::consts::PI * t;
        Self { re: theta.cos(), im: theta.sin() }
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re, im: -self.im }
    }
}

/// Element of `Q(zeta_N)` in the power basis modulo `Phi_N`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

fn reduce_mod_cyclotomic(mut poly: Vec<BigRational>, n: u32) -> Vec<BigRational> {
    let phi_poly = cyclotomic_polynomial(n);
    let deg = phi_poly.len() - 1;
    for k in (deg..poly.len()).rev() {
        if poly[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut poly[k], BigRational::zero());
        for (j, &pj) in phi_poly.iter().enumerate().take(deg) {
            if pj != 0 {
                poly[k - deg + j] -= &c * BigRational::from_integer(BigInt::from(pj));
            }
        }
    }
    poly.resize(deg, BigRational::zero());
    poly
}

impl Cyclotomic {
    /// Builds `sum_k poly[k] x^k` reduced modulo `Phi_n`.
    pub fn from_poly(n: u32, poly: Vec<BigRational>) -> Self {
        assert!(n >= 1);
        Self { conductor: n, coeffs: reduce_mod_cyclotomic(poly, n) }
    }

    /// Builds an element from integer coefficients of powers of `zeta_n`
    /// (exponents taken modulo `n`).
    pub fn from_power_sum<I>(n: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let mut poly = vec![BigRational::zero(); n as usize];
        for (k, c) in terms {
            let k = k.rem_euclid(n as i64) as usize;
            poly[k] += BigRational::from_integer(c);
        }
        Self::from_poly(n, poly)
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self { conductor: 1, coeffs: vec![q] }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// `zeta_n^k`.
    pub fn zeta_power(n: u32, k: i64) -> Self {
        Self::from_power_sum(n, [(k, BigInt::one())])
    }

    /// The imaginary unit, living in conductor 4.
    pub fn i() -> Self {
        Self::zeta_power(4, 1)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        // 1, zeta, ..., zeta^{phi-1} is a basis, so rationals are exactly the
        // elements supported on the constant term.
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in `Q(zeta_target)`; `target` must be a
    /// multiple of the current conductor.
    pub fn lift(&self, target: u32) -> Self {
        if target == self.conductor {
            return self.clone();
        }
        assert!(target.is_multiple_of(self.conductor), "cannot lift conductor {} to {}", self.conductor, target);
        let step = (target / self.conductor) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[k * step] = c.clone();
            }
        }
        Self::from_poly(target, poly)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let n = a.conductor.lcm(&b.conductor);
        (a.lift(n), b.lift(n))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let (a, b) = Self::common(self, other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| f(x, y)).collect();
        Self { conductor: a.conductor, coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn neg(&self) -> Self {
        Self { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let Some(q) = other.as_rational() {
            return self.scale(&q);
        }
        if let Some(q) = self.as_rational() {
            return other.scale(&q);
        }
        let (a, b) = Self::common(self, other);
        let mut poly = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Self::from_poly(a.conductor, poly)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Multiplicative inverse. Solves `self * y = 1` as a linear system in
    /// the power basis with fraction-free elimination; the extended Euclidean
    /// algorithm over Q suffers from coefficient growth at large conductors.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        let n = self.conductor;
        let scale = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let a: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&scale / c.denom())).collect();
        let y = solve_multiplication(&a, &cyclotomic_polynomial(n));
        let scale = BigRational::from_integer(scale);
        Ok(Self { conductor: n, coeffs: y.into_iter().map(|v| v * &scale).collect() })
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Complex conjugation, i.e. the Galois automorphism `zeta_N -> zeta_N^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.conductor;
        if n <= 2 {
            return self.clone();
        }
        Self::from_power_sum_rational(n, self.coeffs.iter().enumerate().map(|(k, c)| (-(k as i64), c.clone())))
    }

    fn from_power_sum_rational<I>(n: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let mut poly = vec![BigRational::zero(); n as usize];
        for (k, c) in terms {
            let k = k.rem_euclid(n as i64) as usize;
            poly[k] += c;
        }
        Self::from_poly(n, poly)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Value under the standard embedding `zeta_N = e^{2 pi i/N}`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::new(theta.cos(), theta.sin()) * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }

    /// Sign of a real element under the standard embedding.
    pub fn real_sign(&self) -> Result<i8, ScalarError> {
        if !self.is_real() {
            return Err(ScalarError::NotReal);
        }
        if self.is_zero() {
            return Ok(0);
        }
        if let Some(q) = self.as_rational() {
            return Ok(if q.is_positive() { 1 } else { -1 });
        }
        let l1: f64 = self.coeffs.iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).sum();
        let approx = self.to_complex().re;
        if l1.is_finite() && approx.is_finite() {
            let bound = 1e-12 * (1.0 + l1);
            if approx.abs() > bound {
                return Ok(if approx > 0.0 { 1 } else { -1 });
            }
        }
        Ok(precise::real_sign(self.conductor, &self.coeffs))
    }
}

/// Solves `a(x) y(x) = 1 mod phi(x)` for `y`, with `phi` monic and `a`
/// invertible modulo `phi`. Bareiss elimination on the multiplication matrix.
fn solve_multiplication(a: &[BigInt], phi: &[i64]) -> Vec<BigRational> {
    let deg = phi.len() - 1;
    // Column j holds x^j a(x) mod phi; stored transposed and augmented below.
    let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(deg);
    let mut cur: Vec<BigInt> = (0..deg).map(|i| a.get(i).cloned().unwrap_or_else(BigInt::zero)).collect();
    for _ in 0..deg {
        cols.push(cur.clone());
        let top = cur.pop().unwrap_or_else(BigInt::zero);
        cur.insert(0, BigInt::zero());
        if !top.is_zero() {
            for (c, &p) in cur.iter_mut().zip(phi) {
                if p != 0 {
                    *c -= &top * BigInt::from(p);
                }
            }
        }
    }
    let mut m: Vec<Vec<BigInt>> = (0..deg)
        .map(|i| {
            let mut row: Vec<BigInt> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(if i == 0 { BigInt::one() } else { BigInt::zero() });
            row
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..deg {
        let p = (k..deg).find(|&i| !m[i][k].is_zero()).expect("invertible element");
        m.swap(k, p);
        for i in k + 1..deg {
            for j in k + 1..=deg {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut y = vec![BigRational::zero(); deg];
    for i in (0..deg).rev() {
        let mut acc = BigRational::from_integer(m[i][deg].clone());
        for j in i + 1..deg {
            if !m[i][j].is_zero() {
                acc -= BigRational::from_integer(m[i][j].clone()) * &y[j];
            }
        }
        y[i] = acc / BigRational::from_integer(m[i][i].clone());
    }
    y
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z{}", self.conductor)?,
                _ => write!(f, "({c})*z{}^{k}", self.conductor)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                Cyclotomic::$m(self, rhs)
            }
        }
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                Cyclotomic::$m(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::neg(&self)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::neg(self)
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Cyclotomic::from_int(v)
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    conductor: u32,
    coefficients: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CyclotomicRepr { conductor: self.conductor, coefficients: self.coeffs.iter().map(|c| c.to_string()).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = CyclotomicRepr::deserialize(d)?;
        if repr.conductor == 0 {
            return Err(serde::de::Error::custom("conductor must be positive"));
        }
        let coeffs = repr
            .coefficients
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Cyclotomic::from_poly(repr.conductor, coeffs))
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let bad = || ScalarError::InvalidRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Fixed-point evaluation with rigorous error bounds, used when double
/// precision cannot separate a real cyclotomic number from zero.
mod precise {
    use super::*;

    const GUARD: u64 = 64;

    fn arctan_inv(x: u64, w: u64) -> BigInt {
        // sum_k (-1)^k / ((2k+1) x^{2k+1}), truncating each step.
        let x = BigInt::from(x);
        let x2 = &x * &x;
        let mut power = (BigInt::one() << w) / &x;
        let mut sum = power.clone();
        let mut k = 1u64;
        loop {
            power /= &x2;
            if power.is_zero() {
                break;
            }
            let term = &power / BigInt::from(2 * k + 1);
            if k % 2 == 1 {
                sum -= term;
            } else {
                sum += term;
            }
            k += 1;
        }
        sum
    }

    /// pi * 2^w, within a few hundred units.
    fn pi(w: u64) -> BigInt {
        BigInt::from(16) * arctan_inv(5, w) - BigInt::from(4) * arctan_inv(239, w)
    }

    /// cos(2 pi k / n) * 2^w.
    fn cos_turn(k: u64, n: u64, pi_w: &BigInt, w: u64) -> BigInt {
        let k = k % n;
        let k = k.min(n - k);
        let theta = (pi_w * BigInt::from(2 * k)) / BigInt::from(n);
        let theta2 = (&theta * &theta) >> w;
        let mut term = BigInt::one() << w;
        let mut sum = term.clone();
        let mut j = 1u64;
        loop {
            term = -((&term * &theta2) >> w) / BigInt::from((2 * j - 1) * (2 * j));
            if term.is_zero() {
                break;
            }
            sum += &term;
            j += 1;
        }
        sum
    }

    pub(super) fn real_sign(n: u32, coeffs: &[BigRational]) -> i8 {
        let mut prec = 128u64;
        loop {
            let w = prec + GUARD;
            let pi_w = pi(w);
            let mut total = BigInt::zero();
            let mut l1 = BigRational::zero();
            for (k, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let cosk = cos_turn(k as u64, n as u64, &pi_w, w);
                total += (c.numer() * cosk).div_floor(c.denom());
                l1 += c.abs();
            }
            // Each cosine is within 2^{w-prec} units; each product adds one unit.
            let slack = (l1 * BigRational::from_integer(BigInt::one() << GUARD)).ceil().to_integer()
                + BigInt::from(coeffs.len() + 1);
            if total.abs() > slack {
                return if total.is_positive() { 1 } else { -1 };
            }
            prec *= 2;
            assert!(prec < 1 << 24, "sign refinement did not terminate");
        }
    }
}
