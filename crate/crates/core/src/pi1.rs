//! Edge-path presentations of fundamental groups of 2-complexes.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::{Error, Result};
use crate::homology::smith_normal_form;
use crate::nerve::SemiSimplicialSet;

/// The 2-skeleton of a cell complex: oriented edges and faces attached
/// along closed edge paths.
pub trait TwoComplex {
    fn vertex_count(&self) -> usize;
    fn edge_count(&self) -> usize;
    fn face_count(&self) -> usize;
    /// Highest dimension carrying a cell.
    fn top_dimension(&self) -> usize;
    /// `(tail, head)`.
    fn edge_ends(&self, e: usize) -> (usize, usize);
    /// Boundary of face `f` as a closed path of signed edges.
    fn face_word(&self, f: usize) -> Vec<(usize, i32)>;
}

/// A 1-chain runs from its `d1` face to its `d0` face. The boundary path of
/// a 2-chain `(u1, u2)` is `d2 · d0 · d1⁻¹`: first `u1`, then `u2`, then
/// back along the composite.
impl TwoComplex for SemiSimplicialSet {
    fn vertex_count(&self) -> usize {
        self.count(0)
    }

    fn edge_count(&self) -> usize {
        self.count(1)
    }

    fn face_count(&self) -> usize {
        self.count(2)
    }

    fn top_dimension(&self) -> usize {
        SemiSimplicialSet::top_dimension(self)
    }

    fn edge_ends(&self, e: usize) -> (usize, usize) {
        (self.face(1, e, 1) as usize, self.face(1, e, 0) as usize)
    }

    fn face_word(&self, f: usize) -> Vec<(usize, i32)> {
        vec![(self.face(2, f, 2) as usize, 1), (self.face(2, f, 0) as usize, 1), (self.face(2, f, 1) as usize, -1)]
    }
}

/// Generators with relators written as words of `(generator, ±1)` letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<(usize, i32)>>,
}

impl Presentation {
    /// Relators with generator names, as `[name, ±1]` pairs.
    pub fn named_relators(&self) -> Vec<Vec<(String, i32)>> {
        self.relators
            .iter()
            .map(|r| r.iter().map(|&(g, s)| (self.generators[g].clone(), s)).collect())
            .collect()
    }
}

/// Breadth-first spanning tree from vertex 0, scanning incident edges in
/// index order.
pub fn spanning_tree<C: TwoComplex>(c: &C) -> Result<BTreeSet<usize>> {
    let n = c.vertex_count();
    if n == 0 {
        return Err(Error::EmptyComplex);
    }
    let mut incident = vec![Vec::new(); n];
    for e in 0..c.edge_count() {
        let (a, b) = c.edge_ends(e);
        incident[a].push(e);
        if b != a {
            incident[b].push(e);
        }
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut tree = BTreeSet::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &e in &incident[u] {
            let (a, b) = c.edge_ends(e);
            let w = if a == u { b } else { a };
            if !seen[w] {
                seen[w] = true;
                tree.insert(e);
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Disconnected);
    }
    Ok(tree)
}

/// One generator `e<i>` per non-tree edge `i`, one relator per face.
pub fn presentation<C: TwoComplex>(c: &C) -> Result<Presentation> {
    let tree = spanning_tree(c)?;
    let mut index = vec![usize::MAX; c.edge_count()];
    let mut generators = Vec::new();
    for e in 0..c.edge_count() {
        if !tree.contains(&e) {
            index[e] = generators.len();
            generators.push(format!("e{e}"));
        }
    }
    let relators = (0..c.face_count())
        .map(|f| {
            c.face_word(f)
                .into_iter()
                .filter(|(e, _)| !tree.contains(e))
                .map(|(e, s)| (index[e], s))
                .collect()
        })
        .collect();
    Ok(Presentation { generators, relators })
}

fn cyclically_reduce(word: &[(usize, i32)]) -> Vec<(usize, i32)> {
    let mut out: Vec<(usize, i32)> = Vec::with_capacity(word.len());
    for &letter in word {
        match out.last() {
            Some(&(g, s)) if g == letter.0 && s == -letter.1 => {
                out.pop();
            }
            _ => out.push(letter),
        }
    }
    let mut start = 0;
    let mut end = out.len();
    while end - start >= 2 && out[start].0 == out[end - 1].0 && out[start].1 == -out[end - 1].1 {
        start += 1;
        end -= 1;
    }
    out[start..end].to_vec()
}

fn inverse(word: &[(usize, i32)]) -> Vec<(usize, i32)> {
    word.iter().rev().map(|&(g, s)| (g, -s)).collect()
}

/// Tietze simplification: free and cyclic reduction, removal of empty
/// relators, and elimination of a generator that occurs exactly once in
/// some relator (shortest such relator first).
pub fn simplify(p: &Presentation) -> Presentation {
    let mut generators = p.generators.clone();
    let mut relators: Vec<Vec<(usize, i32)>> = p.relators.clone();
    loop {
        relators = relators.iter().map(|r| cyclically_reduce(r)).filter(|r| !r.is_empty()).collect();
        let mut order: Vec<usize> = (0..relators.len()).collect();
        order.sort_by_key(|&i| relators[i].len());
        let found = order.iter().find_map(|&i| {
            let r = &relators[i];
            let mut counts = vec![0usize; generators.len()];
            for &(g, _) in r {
                counts[g] += 1;
            }
            r.iter().position(|&(g, _)| counts[g] == 1).map(|pos| (i, pos))
        });
        let Some((i, pos)) = found else { break };
        let r = relators.swap_remove(i);
        let (g, s) = r[pos];
        // r rotated to start at g^s reads g^s · w = 1, so g = w^(-s)
        let w: Vec<(usize, i32)> = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
        let value = if s == 1 { inverse(&w) } else { w };
        let value_inv = inverse(&value);
        for rel in relators.iter_mut() {
            let mut out = Vec::with_capacity(rel.len());
            for &(h, t) in rel.iter() {
                if h == g {
                    out.extend_from_slice(if t == 1 { &value } else { &value_inv });
                } else {
                    out.push((h, t));
                }
            }
            *rel = out;
        }
        generators.remove(g);
        for rel in relators.iter_mut() {
            for letter in rel.iter_mut() {
                if letter.0 > g {
                    letter.0 -= 1;
                }
            }
        }
    }
    Presentation { generators, relators }
}

/// Free rank and torsion coefficients of the abelianised group.
pub fn abelianization(p: &Presentation) -> (usize, Vec<BigUint>) {
    let matrix: Vec<Vec<BigInt>> = p
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::from(0); p.generators.len()];
            for &(g, s) in r {
                row[g] += s;
            }
            row
        })
        .collect();
    let snf = smith_normal_form(&matrix);
    let torsion = snf.factors.iter().filter(|f| !f.is_one()).map(|f| f.magnitude().clone()).collect();
    (p.generators.len() - snf.rank, torsion)
}

/// Rank of the free fundamental group of a connected graph-like complex.
pub fn free_rank<C: TwoComplex>(c: &C) -> Result<usize> {
    if c.top_dimension() > 1 {
        return Err(Error::NotOneDimensional(c.top_dimension()));
    }
    spanning_tree(c)?;
    Ok(1 + c.edge_count() - c.vertex_count())
}
