//! Integer chain complexes, Smith normal form and homology.
//!
//! Boundary matrices are sparse. Invariant factors are computed by first
//! eliminating unit pivots in machine integers and then running a dense
//! arbitrary-precision Smith normal form on whatever is left, which for
//! the complexes built here is usually nothing. Any overflow during the
//! sparse phase restarts the whole matrix in arbitrary precision.

use std::collections::{HashMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::UnionFind;
use crate::nerve::SemiSimplicialSet;

/// Column-major sparse integer matrix; each column holds its nonzero
/// entries sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Builds from unsorted column entries, summing duplicates and dropping
    /// zeros.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, i64)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|mut col| {
                col.sort_unstable_by_key(|e| e.0);
                let mut out: Vec<(u32, i64)> = Vec::with_capacity(col.len());
                for (r, v) in col {
                    assert!((r as usize) < rows, "row {r} out of range");
                    match out.last_mut() {
                        Some(last) if last.0 == r => last.1 += v,
                        _ => out.push((r, v)),
                    }
                }
                out.retain(|e| e.1 != 0);
                out
            })
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let columns = (0..c)
            .map(|j| (0..r).filter(|&i| rows[i][j] != 0).map(|i| (i as u32, rows[i][j])).collect())
            .collect();
        SparseMatrix { rows: r, cols: c, columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                out[i as usize][j] = v;
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// Whether `self · other` vanishes, computed in 128-bit arithmetic.
    pub fn product_is_zero(&self, other: &SparseMatrix) -> bool {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut acc: HashMap<u32, i128> = HashMap::new();
        for col in &other.columns {
            acc.clear();
            for &(k, b) in col {
                for &(i, a) in &self.columns[k as usize] {
                    *acc.entry(i).or_insert(0) += a as i128 * b as i128;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return false;
            }
        }
        true
    }
}

/// Invariant factors together with the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Positive invariant factors, each dividing the next.
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

/// Smith normal form of a dense matrix over the integers.
pub fn smith_normal_form(m: &[Vec<BigInt>]) -> SmithForm {
    let factors = dense_invariant_factors(m.to_vec());
    SmithForm { rank: factors.len(), factors }
}

pub fn smith_normal_form_i64(m: &[Vec<i64>]) -> SmithForm {
    let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    smith_normal_form(&big)
}

fn dense_invariant_factors(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..m.min(n) {
        // smallest nonzero absolute value, first in row-major order
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((p, q)) = best else { break };
        move_to_pivot(&mut a, t, p, q);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let f = a[i][t].div_floor(&a[t][t]);
                    for j in t..n {
                        let d = &f * &a[t][j];
                        a[i][j] -= d;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let f = a[t][j].div_floor(&a[t][t]);
                    for i in t..m {
                        let d = &f * &a[i][t];
                        a[i][j] -= d;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                let mut best = (t, t);
                for i in t + 1..m {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                move_to_pivot(&mut a, t, best.0, best.1);
                continue;
            }
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offender {
                Some(i) => {
                    for j in t..n {
                        let x = a[i][j].clone();
                        a[t][j] += x;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

fn move_to_pivot(a: &mut [Vec<BigInt>], t: usize, p: usize, q: usize) {
    a.swap(t, p);
    if q != t {
        for row in a.iter_mut() {
            row.swap(t, q);
        }
    }
}

type Row = Vec<(u32, i64)>;

/// `target - f · pivot`, or `None` on overflow.
fn axpy(target: &Row, f: i64, pivot: &Row) -> Option<Row> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let take_t = j == pivot.len() || (i < target.len() && target[i].0 < pivot[j].0);
        let take_p = i == target.len() || (j < pivot.len() && pivot[j].0 < target[i].0);
        if take_t {
            out.push(target[i]);
            i += 1;
        } else if take_p {
            out.push((pivot[j].0, f.checked_mul(pivot[j].1)?.checked_neg()?));
            j += 1;
        } else {
            let v = target[i].1.checked_sub(f.checked_mul(pivot[j].1)?)?;
            if v != 0 {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Eliminates ±1 pivots; returns the number eliminated and the remaining
/// rows, or `None` if an entry overflowed.
fn eliminate_unit_pivots(m: &SparseMatrix) -> Option<(usize, Vec<Row>)> {
    let mut rows: Vec<Row> = vec![Vec::new(); m.rows];
    for (j, col) in m.columns.iter().enumerate() {
        for &(i, v) in col {
            rows[i as usize].push((j as u32, v));
        }
    }
    let mut occupancy: Vec<HashSet<u32>> = vec![HashSet::new(); m.cols];
    for (i, row) in rows.iter().enumerate() {
        for &(j, _) in row {
            occupancy[j as usize].insert(i as u32);
        }
    }
    let mut active = vec![true; m.rows];
    let mut pivots = 0;
    loop {
        let mut progressed = false;
        for r in 0..m.rows {
            if !active[r] {
                continue;
            }
            let Some(&(c, v)) = rows[r]
                .iter()
                .filter(|e| e.1.abs() == 1)
                .min_by_key(|e| (occupancy[e.0 as usize].len(), e.0))
            else {
                continue;
            };
            let pivot_row = std::mem::take(&mut rows[r]);
            let mut others: Vec<u32> = occupancy[c as usize].iter().copied().filter(|&x| x as usize != r).collect();
            others.sort_unstable();
            for o in others {
                let o = o as usize;
                let a = rows[o].iter().find(|e| e.0 == c).map(|e| e.1).unwrap();
                let updated = axpy(&rows[o], a * v, &pivot_row)?;
                for &(j, _) in &rows[o] {
                    occupancy[j as usize].remove(&(o as u32));
                }
                for &(j, _) in &updated {
                    occupancy[j as usize].insert(o as u32);
                }
                rows[o] = updated;
            }
            for &(j, _) in &pivot_row {
                occupancy[j as usize].remove(&(r as u32));
            }
            active[r] = false;
            pivots += 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    let rest = rows.into_iter().zip(active).filter(|(row, a)| *a && !row.is_empty()).map(|(row, _)| row).collect();
    Some((pivots, rest))
}

/// Nonzero invariant factors of a sparse matrix, in divisibility order.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    let Some((units, rest)) = eliminate_unit_pivots(m) else {
        let dense: Vec<Vec<BigInt>> =
            m.to_dense().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        return dense_invariant_factors(dense);
    };
    let mut out = vec![BigInt::one(); units];
    if !rest.is_empty() {
        let mut cols: Vec<u32> = rest.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
        cols.sort_unstable();
        cols.dedup();
        let position: HashMap<u32, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let dense: Vec<Vec<BigInt>> = rest
            .iter()
            .map(|row| {
                let mut d = vec![BigInt::zero(); cols.len()];
                for &(c, v) in row {
                    d[position[&c]] = BigInt::from(v);
                }
                d
            })
            .collect();
        out.extend(dense_invariant_factors(dense));
    }
    out
}

/// Per dimension `n`, a basis of size `sizes[n]` and the boundary
/// `∂n: C(n) → C(n-1)` (`∂0` is the empty map to zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    sizes: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// `boundaries[i]` is `∂(i+1)`.
    pub fn new(sizes: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != sizes.len().max(1) {
            return Err(Error::InvalidConfig("expected one boundary map per positive dimension".into()));
        }
        for (i, b) in boundaries.iter().enumerate() {
            if b.rows != sizes[i] || b.cols != sizes[i + 1] {
                return Err(Error::InvalidConfig(format!("boundary in dimension {} has wrong shape", i + 1)));
            }
        }
        Ok(ChainComplex { sizes, boundaries })
    }

    pub fn empty() -> Self {
        ChainComplex { sizes: Vec::new(), boundaries: Vec::new() }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `∂n` for `n ≥ 1`.
    pub fn boundary(&self, n: usize) -> Option<&SparseMatrix> {
        n.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler(&self.sizes)
    }

    pub fn check(&self) -> Result<()> {
        for n in 1..self.boundaries.len() {
            if !self.boundaries[n - 1].product_is_zero(&self.boundaries[n]) {
                return Err(Error::NotAComplex(n));
            }
        }
        Ok(())
    }
}

pub fn euler(sizes: &[usize]) -> i64 {
    sizes.iter().enumerate().map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
}

pub fn euler_characteristic(cc: &ChainComplex) -> i64 {
    cc.euler_characteristic()
}

/// `∂σ = Σ (−1)^i di σ`.
pub fn chain_complex(s: &SemiSimplicialSet) -> ChainComplex {
    let sizes = s.fvector();
    let boundaries = (1..sizes.len())
        .map(|n| {
            let columns = (0..sizes[n])
                .map(|j| {
                    s.faces(n, j).iter().enumerate().map(|(i, &f)| (f, if i % 2 == 0 { 1 } else { -1 })).collect()
                })
                .collect();
            SparseMatrix::from_columns(sizes[n - 1], columns)
        })
        .collect();
    ChainComplex { sizes, boundaries }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub betti: Vec<usize>,
    /// Torsion coefficients greater than one, in divisibility order.
    pub torsion: Vec<Vec<BigUint>>,
}

impl HomologyResult {
    pub fn betti(&self, n: usize) -> usize {
        self.betti.get(n).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler(&self.betti)
    }

    pub fn torsion_u64(&self) -> Vec<Vec<u64>> {
        self.torsion.iter().map(|t| t.iter().map(|x| x.to_u64().unwrap_or(u64::MAX)).collect()).collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }
}

pub fn homology(cc: &ChainComplex) -> Result<HomologyResult> {
    cc.check()?;
    let top = cc.sizes.len();
    let factors: Vec<Vec<BigInt>> = cc.boundaries.iter().map(invariant_factors).collect();
    let rank = |n: usize| -> usize { n.checked_sub(1).and_then(|i| factors.get(i)).map_or(0, Vec::len) };
    let betti = (0..top).map(|n| cc.sizes[n] - rank(n) - rank(n + 1)).collect();
    let torsion = (0..top)
        .map(|n| {
            factors
                .get(n)
                .map(|f| f.iter().filter(|x| !x.is_one()).map(|x| x.magnitude().clone()).collect())
                .unwrap_or_default()
        })
        .collect();
    Ok(HomologyResult { betti, torsion })
}

/// Components of the 1-skeleton, read off `∂1`: columns with two nonzero
/// rows join them.
pub fn connected_components(cc: &ChainComplex) -> Vec<Vec<usize>> {
    let n0 = cc.sizes.first().copied().unwrap_or(0);
    let mut uf = UnionFind::new(n0);
    if let Some(d1) = cc.boundary(1) {
        for col in &d1.columns {
            for w in col.windows(2) {
                uf.union(w[0].0 as usize, w[1].0 as usize);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for v in 0..n0 {
        groups.entry(uf.find(v)).or_default().push(v);
    }
    let mut out: Vec<_> = groups.into_values().collect();
    out.sort();
    out
}
