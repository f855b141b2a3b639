//! Random group-ring complexes that are valid by construction: direct sums of
//! small blocks followed by unimodular changes of basis.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use twisig::chain_complex::{GroupRingComplex, LaurentMatrix};
use twisig::laurent::Laurent;

type Dense = Vec<Vec<Laurent>>;

struct Builder {
    m: usize,
    ranks: Vec<usize>,
    /// `d[k]` is the matrix of `∂_{k+1}`.
    d: Vec<Dense>,
}

fn random_monomial(rng: &mut ChaCha8Rng, m: usize) -> Laurent {
    let exps: Vec<i32> = (0..m).map(|_| rng.gen_range(-2..=2)).collect();
    let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
    Laurent::monomial(c.into(), exps)
}

pub fn random_laurent(rng: &mut ChaCha8Rng, m: usize, terms: usize) -> Laurent {
    let mut p = Laurent::zero();
    for _ in 0..terms {
        let mut t = random_monomial(rng, m);
        if rng.gen_bool(0.3) {
            t = t.mul(&Laurent::constant(rng.gen_range(-3..=3)));
        }
        p = p.add(&t);
    }
    p
}

impl Builder {
    fn new(m: usize, top: usize) -> Self {
        Self { m, ranks: vec![0; top + 1], d: (0..top).map(|_| Vec::new()).collect() }
    }

    fn rows(&self, k: usize) -> usize {
        self.ranks[k]
    }

    /// Adds a cell in degree `k` and returns its index.
    fn grow(&mut self, k: usize) -> usize {
        let idx = self.ranks[k];
        self.ranks[k] += 1;
        // ∂_k gains a column, ∂_{k+1} gains a row.
        if k >= 1 {
            for row in &mut self.d[k - 1] {
                row.push(Laurent::zero());
            }
        }
        if k < self.d.len() {
            let cols = self.ranks[k + 1];
            self.d[k].push(vec![Laurent::zero(); cols]);
        }
        idx
    }

    /// `0 -> Λ --p--> Λ -> 0` with the source in degree `k + 1`.
    fn add_pair(&mut self, k: usize, p: Laurent) {
        let lo = self.grow(k);
        let hi = self.grow(k + 1);
        self.d[k][lo][hi] = p;
    }

    /// Tensor product of two pairs: `Λ -> Λ^2 -> Λ` starting in degree `k`.
    fn add_square(&mut self, k: usize, p: Laurent, q: Laurent) {
        let a = self.grow(k);
        let b1 = self.grow(k + 1);
        let b2 = self.grow(k + 1);
        let c = self.grow(k + 2);
        self.d[k][a][b1] = p.clone();
        self.d[k][a][b2] = q.clone();
        self.d[k + 1][b1][c] = q;
        self.d[k + 1][b2][c] = p.neg();
    }

    /// `e_j <- e_j + c e_i` in degree `k`.
    fn shear(&mut self, k: usize, i: usize, j: usize, c: &Laurent) {
        if k >= 1 {
            for row in &mut self.d[k - 1] {
                let v = row[j].add(&c.mul(&row[i]));
                row[j] = v;
            }
        }
        if k < self.d.len() {
            let (ri, rj) = (self.d[k][i].clone(), self.d[k][j].clone());
            self.d[k][i] = ri.iter().zip(&rj).map(|(a, b)| a.sub(&c.mul(b))).collect();
        }
    }

    /// `e_j <- u e_j` for a unit `u = ±t^a`.
    fn scale(&mut self, k: usize, j: usize, exps: Vec<i32>, sign: i64) {
        let u = Laurent::monomial(sign.into(), exps.clone());
        let inv = Laurent::monomial(sign.into(), exps.iter().map(|e| -e).collect());
        if k >= 1 {
            for row in &mut self.d[k - 1] {
                row[j] = row[j].mul(&u);
            }
        }
        if k < self.d.len() {
            self.d[k][j] = self.d[k][j].iter().map(|x| x.mul(&inv)).collect();
        }
    }

    fn finish(self) -> GroupRingComplex {
        let boundaries = self
            .d
            .into_iter()
            .enumerate()
            .map(|(k, rows)| LaurentMatrix::from_dense(rows, self.ranks[k + 1]))
            .collect();
        GroupRingComplex::new(self.m, self.ranks, boundaries).expect("valid by construction")
    }
}

/// A random complex with `m` variables, degrees `0..=top` and at most
/// `max_rank` cells per degree.
pub fn random_complex(rng: &mut ChaCha8Rng, m: usize, top: usize, max_rank: usize) -> GroupRingComplex {
    let mut b = Builder::new(m, top);
    let blocks = rng.gen_range(1..=2 * (top + 1));
    for _ in 0..blocks {
        let square = top >= 2 && rng.gen_bool(0.3);
        let k = rng.gen_range(0..top.max(1));
        if square && k + 2 <= top {
            if b.rows(k) + 1 > max_rank || b.rows(k + 1) + 2 > max_rank || b.rows(k + 2) + 1 > max_rank {
                continue;
            }
            let (p, q) = (random_laurent(rng, m, 2), random_laurent(rng, m, 2));
            b.add_square(k, p, q);
        } else if top >= 1 {
            if b.rows(k) + 1 > max_rank || b.rows(k + 1) + 1 > max_rank {
                continue;
            }
            let p = match rng.gen_range(0..4) {
                0 => Laurent::var(rng.gen_range(1..=m)).sub(&Laurent::one()),
                1 => Laurent::one(),
                2 => Laurent::zero(),
                _ => {
                    let terms = rng.gen_range(1..=3);
                    random_laurent(rng, m, terms)
                }
            };
            b.add_pair(k, p);
        } else if b.rows(0) < max_rank {
            b.grow(0);
        }
    }
    // Unimodular basis changes.
    for _ in 0..rng.gen_range(0..8) {
        let k = rng.gen_range(0..=top);
        let n = b.rows(k);
        if n == 0 {
            continue;
        }
        if n >= 2 && rng.gen_bool(0.7) {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let c = random_laurent(rng, m, 1);
            b.shear(k, i, j, &c);
        } else {
            let j = rng.gen_range(0..n);
            let exps = (0..m).map(|_| rng.gen_range(-1..=1)).collect();
            b.scale(k, j, exps, if rng.gen_bool(0.5) { 1 } else { -1 });
        }
    }
    b.finish()
}

/// Adds a cancelling pair of cells in degrees `k`, `k + 1` with unit
/// incidence, then mixes it in by a change of basis.
pub fn stabilize(c: &GroupRingComplex, k: usize, rng: &mut ChaCha8Rng) -> GroupRingComplex {
    let top = c.ranks.len() - 1;
    assert!(k < top);
    let mut b = Builder::new(c.m, top);
    for (deg, &r) in c.ranks.iter().enumerate() {
        for _ in 0..r {
            b.grow(deg);
        }
    }
    for (idx, bd) in c.boundaries.iter().enumerate() {
        for (&(i, j), v) in bd.entries() {
            b.d[idx][i][j] = v.clone();
        }
    }
    let lo = b.grow(k);
    let hi = b.grow(k + 1);
    let exps: Vec<i32> = (0..c.m).map(|_| rng.gen_range(-1..=1)).collect();
    b.d[k][lo][hi] = Laurent::monomial(1.into(), exps);
    for deg in [k, k + 1] {
        let n = b.rows(deg);
        if n >= 2 {
            let new = if deg == k { lo } else { hi };
            let other = rng.gen_range(0..n - 1);
            let cf = random_laurent(rng, c.m, 1);
            if rng.gen_bool(0.5) {
                b.shear(deg, new, other, &cf);
            } else {
                b.shear(deg, other, new, &cf);
            }
        }
    }
    b.finish()
}
