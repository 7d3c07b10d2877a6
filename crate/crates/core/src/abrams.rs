//! Abrams' discretized configuration space: the cubical subcomplex of `X^k`
//! spanned by products of cells with pairwise disjoint closures.

use std::collections::HashMap;

use serde::Serialize;

use crate::cells::Entry;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homology::{ChainComplex, SparseMatrix};

#[derive(Clone, Debug)]
pub struct AbramsComplex {
    pub k: usize,
    graph: Graph,
    /// Cells per dimension (number of edge factors), in enumeration order.
    cells: Vec<Vec<Vec<Entry>>>,
}

fn closure(g: &Graph, e: Entry) -> Vec<usize> {
    match e {
        Entry::Vertex(v) => vec![v as usize],
        Entry::Edge(x) => {
            let ends = g.edges()[x as usize].ends;
            let (a, b) = (ends[0].unwrap(), ends[1].unwrap());
            if a == b {
                vec![a]
            } else {
                vec![a, b]
            }
        }
    }
}

fn dim_of(t: &[Entry]) -> usize {
    t.iter().filter(|e| matches!(e, Entry::Edge(_))).count()
}

pub fn abrams_complex(g: &Graph, k: usize) -> Result<AbramsComplex> {
    if let Some(e) = g.edges().iter().find(|e| !e.is_closed()) {
        return Err(Error::OpenEdge(e.id.clone()));
    }
    if k == 0 {
        return Err(Error::InvalidConfig("k must be at least 1".into()));
    }
    let alphabet: Vec<(Entry, Vec<usize>)> = (0..g.vertex_count() as u32)
        .map(Entry::Vertex)
        .chain((0..g.edge_count() as u32).map(Entry::Edge))
        .map(|e| (e, closure(g, e)))
        .collect();
    let mut cells: Vec<Vec<Vec<Entry>>> = vec![Vec::new(); k + 1];
    let mut used = vec![false; g.vertex_count()];
    let mut current = Vec::with_capacity(k);
    fn extend(
        alphabet: &[(Entry, Vec<usize>)],
        k: usize,
        used: &mut [bool],
        current: &mut Vec<Entry>,
        cells: &mut [Vec<Vec<Entry>>],
    ) {
        if current.len() == k {
            cells[dim_of(current)].push(current.clone());
            return;
        }
        for (e, cl) in alphabet {
            if cl.iter().any(|&v| used[v]) {
                continue;
            }
            cl.iter().for_each(|&v| used[v] = true);
            current.push(*e);
            extend(alphabet, k, used, current, cells);
            current.pop();
            cl.iter().for_each(|&v| used[v] = false);
        }
    }
    extend(&alphabet, k, &mut used, &mut current, &mut cells);
    while cells.len() > 1 && cells.last().unwrap().is_empty() {
        cells.pop();
    }
    Ok(AbramsComplex { k, graph: g.clone(), cells })
}

impl AbramsComplex {
    pub fn fvector(&self) -> Vec<usize> {
        if self.cells.len() == 1 && self.cells[0].is_empty() {
            return Vec::new();
        }
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn cells(&self, dim: usize) -> &[Vec<Entry>] {
        self.cells.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn cell_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    /// Signed faces: for the `j`-th edge factor, `(−1)^j` times the cell
    /// with that factor at its plus end minus the cell with it at its minus
    /// end.
    fn boundary_terms(&self, t: &[Entry]) -> Vec<(Vec<Entry>, i64)> {
        let mut out = Vec::new();
        let mut j = 0;
        for (pos, e) in t.iter().enumerate() {
            let Entry::Edge(x) = *e else { continue };
            let ends = self.graph.edges()[x as usize].ends;
            let sign = if j % 2 == 0 { 1 } else { -1 };
            for (end, s) in [(ends[1], sign), (ends[0], -sign)] {
                let mut face = t.to_vec();
                face[pos] = Entry::Vertex(end.unwrap() as u32);
                out.push((face, s));
            }
            j += 1;
        }
        out
    }

    fn assemble(&self, cells: &[Vec<Vec<Entry>>], relabel: impl Fn(Vec<Entry>) -> (Vec<Entry>, i64)) -> ChainComplex {
        let sizes: Vec<usize> = if cells.len() == 1 && cells[0].is_empty() {
            Vec::new()
        } else {
            cells.iter().map(Vec::len).collect()
        };
        let index: Vec<HashMap<&Vec<Entry>, u32>> =
            cells.iter().map(|c| c.iter().enumerate().map(|(i, t)| (t, i as u32)).collect()).collect();
        let boundaries = (1..sizes.len())
            .map(|n| {
                let columns = cells[n]
                    .iter()
                    .map(|t| {
                        self.boundary_terms(t)
                            .into_iter()
                            .map(|(face, s)| {
                                let (rep, sign) = relabel(face);
                                (index[n - 1][&rep], s * sign)
                            })
                            .collect()
                    })
                    .collect();
                SparseMatrix::from_columns(sizes[n - 1], columns)
            })
            .collect();
        ChainComplex::new(sizes, boundaries).expect("shapes match by construction")
    }
}

pub fn cubical_chain_complex(a: &AbramsComplex) -> ChainComplex {
    a.assemble(&a.cells, |t| (t, 1))
}

/// Orientation sign of sorting a tuple: the parity of the inversions among
/// its edge factors, which are the cube coordinates.
fn sort_with_sign(mut t: Vec<Entry>) -> (Vec<Entry>, i64) {
    let edges: Vec<Entry> = t.iter().copied().filter(|e| matches!(e, Entry::Edge(_))).collect();
    let inversions = (0..edges.len()).flat_map(|i| (i + 1..edges.len()).map(move |j| (i, j))).filter(|&(i, j)| edges[i] > edges[j]).count();
    t.sort_unstable();
    (t, if inversions % 2 == 0 { 1 } else { -1 })
}

/// Chain complex of the quotient by permutations of the factors. Orbits are
/// represented by their sorted tuples.
pub fn quotient(a: &AbramsComplex) -> Result<ChainComplex> {
    let reps: Vec<Vec<Vec<Entry>>> = a
        .cells
        .iter()
        .map(|level| level.iter().filter(|t| t.windows(2).all(|w| w[0] <= w[1])).cloned().collect())
        .collect();
    for level in &reps {
        if let Some(t) = level.iter().find(|t| t.windows(2).any(|w| w[0] == w[1])) {
            return Err(Error::NonFreeAction(format!("tuple {t:?} has a repeated factor")));
        }
    }
    Ok(a.assemble(&reps, sort_with_sign))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub ok: bool,
    /// Smallest distance between two distinct essential vertices.
    pub min_essential_distance: Option<usize>,
    /// Shortest cycle length, loops counting 1 and parallel pairs 2.
    pub girth: Option<usize>,
}

pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, e) in g.edges().iter().enumerate() {
        let [Some(a), Some(b)] = e.ends else { continue };
        let len = if a == b { Some(1) } else { g.distances_avoiding(a, Some(i))[b].map(|d| d + 1) };
        if let Some(l) = len {
            best = Some(best.map_or(l, |x| x.min(l)));
        }
    }
    best
}

pub fn min_essential_distance(g: &Graph) -> Option<usize> {
    let essential: Vec<usize> =
        g.essential_vertices().iter().map(|v| g.vertex_index(v).expect("listed vertex")).collect();
    let mut best: Option<usize> = None;
    for (i, &u) in essential.iter().enumerate() {
        let dist = g.distances_from(u);
        for &w in &essential[i + 1..] {
            if let Some(d) = dist[w] {
                best = Some(best.map_or(d, |x| x.min(d)));
            }
        }
    }
    best
}

pub fn check_abrams_conditions(g: &Graph, k: usize) -> Result<ConditionReport> {
    if let Some(e) = g.edges().iter().find(|e| !e.is_closed()) {
        return Err(Error::OpenEdge(e.id.clone()));
    }
    let min_essential_distance = min_essential_distance(g);
    let girth = girth(g);
    let long = |x: Option<usize>| x.is_none_or(|d| d > k);
    Ok(ConditionReport { ok: long(min_essential_distance) && long(girth), min_essential_distance, girth })
}
