//! Integer Laurent polynomials in `t1, ..., tm`.
//!
//! Text form: `3*t1^2*t2^-1 - 1`. A bare `t` means `t1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::scalars::Cyclotomic;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse Laurent polynomial {input:?}: {reason}")]
pub struct LaurentParseError {
    pub input: String,
    pub reason: String,
}

/// Exponent vector with trailing zeros stripped, so `t1` in one and two
/// variables compare equal.
pub type Monomial = Vec<i32>;

fn normalize(mut e: Monomial) -> Monomial {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn mono_mul(a: &[i32], b: &[i32]) -> Monomial {
    let n = a.len().max(b.len());
    let e = (0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect();
    normalize(e)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(BigInt::from(c), Vec::new())
    }

    pub fn monomial(c: BigInt, exps: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(normalize(exps), c);
        }
        Self { terms }
    }

    /// `t_i^power`, variables numbered from 1.
    pub fn var_pow(i: usize, power: i32) -> Self {
        assert!(i >= 1, "variables are numbered from 1");
        let mut e = vec![0; i];
        e[i - 1] = power;
        Self::monomial(BigInt::one(), e)
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Largest variable index that occurs (0 for constants).
    pub fn max_var(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(mono_mul(ea, eb), ca * cb);
            }
        }
        out
    }

    /// Value at `t_i = 1`.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact value at `t_i = zeta_K^{a_i}`.
    pub fn eval_root(&self, conductor: u32, exps: &[u32]) -> Cyclotomic {
        let k = conductor as i64;
        let mut poly = vec![BigRational::zero(); conductor as usize];
        for (e, c) in &self.terms {
            let mut power = 0i64;
            for (i, &ei) in e.iter().enumerate() {
                let a = *exps.get(i).expect("variable index beyond assignment") as i64;
                power = (power + a * ei as i64).rem_euclid(k);
            }
            poly[power as usize] += BigRational::from_integer(c.clone());
        }
        Cyclotomic::from_poly(conductor, poly)
    }

    /// Floating value at the given unit complex numbers.
    pub fn eval_complex(&self, z: &[Complex64]) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut v = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (i, &ei) in e.iter().enumerate() {
                v *= z.get(i).expect("variable index beyond assignment").powi(ei);
            }
            total += v;
        }
        total
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.is_empty() {
                factors.push(mag.to_string());
            }
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(format!("t{}", i + 1)),
                    _ => factors.push(format!("t{}^{}", i + 1, p)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for Laurent {
    type Err = LaurentParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| LaurentParseError { input: s.to_string(), reason: reason.to_string() };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        // Split into signed terms. A sign directly after `^` belongs to an exponent.
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !matches!(prev, Some('^') | Some('(')) {
                if !current.is_empty() {
                    terms.push((negative, std::mem::take(&mut current)));
                } else if prev.is_some() {
                    return Err(err("dangling sign"));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
            prev = Some(ch);
        }
        if current.is_empty() {
            return Err(err("trailing sign"));
        }
        terms.push((negative, current));

        let mut out = Laurent::zero();
        for (neg, body) in terms {
            let mut coeff = BigInt::one();
            let mut exps: Monomial = Vec::new();
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if let Some(rest) = factor.strip_prefix('t') {
                    let (idx, pow) = match rest.split_once('^') {
                        Some((i, p)) => (i, p.trim_start_matches('(').trim_end_matches(')')),
                        None => (rest, "1"),
                    };
                    let idx: usize =
                        if idx.is_empty() { 1 } else { idx.parse().map_err(|_| err("bad variable index"))? };
                    if idx == 0 {
                        return Err(err("variables are numbered from 1"));
                    }
                    let pow: i32 = pow.parse().map_err(|_| err("bad exponent"))?;
                    if exps.len() < idx {
                        exps.resize(idx, 0);
                    }
                    exps[idx - 1] += pow;
                } else {
                    let c: BigInt = factor.parse().map_err(|_| err("bad coefficient"))?;
                    coeff *= c;
                }
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(normalize(exps), coeff);
        }
        Ok(out)
    }
}
