//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's elimination or Smith form code.
#![allow(dead_code)]

use std::collections::BTreeMap;

use graphconf::nerve::SemiSimplicialSet;
use graphconf::reduced::GluedComplex;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub const PRIME: i64 = 1_000_000_007;

/// Sparse columns over the integers, rows as keys.
pub type Column = BTreeMap<usize, i64>;

/// Rank modulo `p` by the standard column reduction: clear the lowest entry
/// of each column against earlier pivots.
pub fn rank_mod(columns: &[Column], p: i64) -> usize {
    let inv = |a: i64| -> i64 {
        let (mut r, mut b, mut e) = (1i64, a.rem_euclid(p), p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut pivots: BTreeMap<usize, Column> = BTreeMap::new();
    let mut rank = 0;
    for col in columns {
        let mut c: Column = col.iter().map(|(&r, &v)| (r, v.rem_euclid(p))).filter(|(_, v)| *v != 0).collect();
        while let Some((&low, &v)) = c.iter().next_back() {
            let Some(piv) = pivots.get(&low) else { break };
            let factor = v * inv(piv[&low]) % p;
            for (&r, &w) in piv {
                let e = c.entry(r).or_insert(0);
                *e = (*e - factor * w).rem_euclid(p);
                if *e == 0 {
                    c.remove(&r);
                }
            }
        }
        if let Some((&low, _)) = c.iter().next_back() {
            pivots.insert(low, c);
            rank += 1;
        }
    }
    rank
}

/// Boundary columns `∂_n` of a semi-simplicial set, assembled straight from
/// the face maps.
pub fn nerve_boundary(s: &SemiSimplicialSet, n: usize) -> Vec<Column> {
    (0..s.count(n))
        .map(|j| {
            let mut c = Column::new();
            for i in 0..=n {
                *c.entry(s.face(n, j, i) as usize).or_insert(0) += if i % 2 == 0 { 1 } else { -1 };
            }
            c.retain(|_, v| *v != 0);
            c
        })
        .collect()
}

pub fn glued_boundary(c: &GluedComplex, n: usize) -> Vec<Column> {
    match n {
        1 => c
            .edges
            .iter()
            .map(|e| {
                let mut col = Column::new();
                *col.entry(e.head).or_insert(0) += 1;
                *col.entry(e.tail).or_insert(0) -= 1;
                col.retain(|_, v| *v != 0);
                col
            })
            .collect(),
        2 => c
            .faces
            .iter()
            .map(|f| {
                let mut col = Column::new();
                for &(e, s) in &f.word {
                    *col.entry(e).or_insert(0) += s as i64;
                }
                col.retain(|_, v| *v != 0);
                col
            })
            .collect(),
        _ => Vec::new(),
    }
}

/// Betti numbers over `F_p` from sizes and boundary columns (`boundaries[n]`
/// is `∂_n`, with `∂_0` empty).
pub fn betti_mod(sizes: &[usize], boundary: impl Fn(usize) -> Vec<Column>, p: i64) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=sizes.len()).map(|n| if n == 0 || n >= sizes.len() { 0 } else { rank_mod(&boundary(n), p) }).collect();
    (0..sizes.len()).map(|n| sizes[n] - ranks[n] - ranks[n + 1]).collect()
}

pub fn nerve_betti(s: &SemiSimplicialSet, p: i64) -> Vec<usize> {
    betti_mod(&s.fvector(), |n| nerve_boundary(s, n), p)
}

pub fn glued_betti(c: &GluedComplex, p: i64) -> Vec<usize> {
    betti_mod(&c.fvector(), |n| glued_boundary(c, n), p)
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    // fraction-free Bareiss elimination
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors through determinantal divisors: `d_i` is the gcd of
/// all `i × i` minors and the factors are the ratios `d_i / d_(i-1)`.
pub fn brute_force_factors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut out = Vec::new();
    for i in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, i) {
            for cs in subsets(cols, i) {
                let minor: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| BigInt::from(m[r][c])).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push((&g / &prev).abs());
        prev = g;
    }
    out
}
