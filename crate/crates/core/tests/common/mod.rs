//! Reference arithmetic built from scratch: polynomial arithmetic over Z/p,
//! schoolbook elimination, plain binomials. Nothing here calls the library's
//! tables; only the choice of modulus is taken from it.
#![allow(dead_code)]

use std::collections::HashSet;

pub struct RefField {
    pub q: u64,
    pub p: u64,
    pub e: u32,
    pub modulus: Vec<u64>,
    pub add: Vec<Vec<u64>>,
    pub mul: Vec<Vec<u64>>,
}

fn digits(x: u64, p: u64, e: u32) -> Vec<u64> {
    (0..e).map(|i| (x / p.pow(i)) % p).collect()
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic `m`, coefficients low degree first.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        let shift = a.len() - dm;
        for (i, &c) in m[..dm].iter().enumerate() {
            a[shift + i] = (a[shift + i] + p * p - lead * c % p) % p;
        }
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// No monic factor of degree 1..=deg/2.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut f = digits(low, p, d as u32);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

pub fn prime_power(q: u64) -> (u64, u32) {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut e = 0;
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
        e += 1;
    }
    assert_eq!(x, 1, "{q} is not a prime power");
    (p, e)
}

impl RefField {
    /// `modulus` is monic, low degree first (ignored for prime q).
    pub fn new(q: u64, modulus: &[u64]) -> Self {
        let (p, e) = prime_power(q);
        let modulus = if e == 1 { vec![0, 1] } else { modulus.to_vec() };
        let mut add = vec![vec![0; q as usize]; q as usize];
        let mut mul = vec![vec![0; q as usize]; q as usize];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a, p, e), digits(b, p, e));
                let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize][b as usize] = undigits(&s, p);
                let prod = poly_rem(&poly_mul(&da, &db, p), &modulus, p);
                let mut prod = prod;
                prod.resize(e as usize, 0);
                mul[a as usize][b as usize] = undigits(&prod, p);
            }
        }
        RefField {
            q,
            p,
            e,
            modulus,
            add,
            mul,
        }
    }

    /// Reference field using the library's choice of modulus.
    pub fn like_library(q: u64) -> Self {
        let f = kuniform_core::field(q).unwrap();
        let m: Vec<u64> = f.irreducible_poly().iter().map(|&c| c as u64).collect();
        RefField::new(q, &m)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.add[a as usize][b as usize]
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.mul[a as usize][b as usize]
    }

    pub fn neg(&self, a: u64) -> u64 {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn inv(&self, a: u64) -> u64 {
        (1..self.q).find(|&b| self.mul(a, b) == 1).unwrap()
    }

    pub fn dot(&self, x: &[u64], y: &[u64]) -> u64 {
        x.iter().zip(y).fold(0, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }

    /// Rank by plain Gaussian elimination.
    pub fn rank(&self, rows: &[Vec<u64>]) -> usize {
        let mut m: Vec<Vec<u64>> = rows.to_vec();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = self.inv(m[rank][c]);
            let pivot_row: Vec<u64> = m[rank].iter().map(|&x| self.mul(inv, x)).collect();
            for i in 0..m.len() {
                if i != rank && m[i][c] != 0 {
                    let factor = self.neg(m[i][c]);
                    for j in 0..cols {
                        m[i][j] = self.add(m[i][j], self.mul(factor, pivot_row[j]));
                    }
                }
            }
            m[rank] = pivot_row;
            rank += 1;
        }
        rank
    }

    /// Rank with an all-ones row appended; 0 for a matrix without columns.
    pub fn a_rank(&self, rows: &[Vec<u64>], cols: usize) -> usize {
        if cols == 0 {
            return 0;
        }
        let mut m = rows.to_vec();
        m.push(vec![1; cols]);
        self.rank(&m)
    }
}

/// Every vector of length n over 0..q, last coordinate fastest.
pub fn all_vectors(q: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..q).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `r! / (k_1! ... k_s! (r - |kappa|)!)`, zero when `|kappa| > r`.
pub fn multinomial(r: u64, kappa: &[usize]) -> u128 {
    let mut left = r;
    let mut acc = 1u128;
    for &k in kappa {
        if k as u64 > left {
            return 0;
        }
        acc *= binom(left, k as u64);
        left -= k as u64;
    }
    acc
}

pub fn columns_of(rows: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n_cols = rows.first().map_or(0, |r| r.len());
    (0..n_cols).map(|j| rows.iter().map(|r| r[j]).collect()).collect()
}

pub fn distinct(cols: &[Vec<u64>]) -> bool {
    cols.iter().collect::<HashSet<_>>().len() == cols.len()
}

pub fn matrix_rows(m: &kuniform_core::GfMatrix) -> Vec<Vec<u64>> {
    m.values()
        .into_iter()
        .map(|r| r.into_iter().map(|x| x as u64).collect())
        .collect()
}
