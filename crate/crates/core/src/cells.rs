//! Cells of the braid stratification of `X^k` and the face category on
//! configuration cells.
//!
//! A [`BraidCell`] assigns each of the `k` coordinates a vertex or an edge.
//! Coordinates sharing an edge carry a rank: the index of their block in the
//! ordered partition of that edge's coordinates. Equal ranks on one edge mean
//! the points coincide.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{Graph, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entry {
    Vertex(u32),
    Edge(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BraidCell {
    entries: Vec<Entry>,
    /// Block index within the coordinate's edge; always 0 on vertex entries.
    ranks: Vec<u8>,
}

impl BraidCell {
    /// Builds a cell, checking that the ranks on each edge form an ordered
    /// partition (every rank from 0 up to the largest is used).
    pub fn new(entries: Vec<Entry>, ranks: Vec<u8>) -> Result<BraidCell> {
        if entries.len() != ranks.len() {
            return Err(Error::MismatchedK(entries.len(), ranks.len()));
        }
        let cell = BraidCell { entries, ranks };
        for (i, e) in cell.entries.iter().enumerate() {
            if matches!(e, Entry::Vertex(_)) && cell.ranks[i] != 0 {
                return Err(Error::InvalidConfig(format!("vertex coordinate {i} has a rank")));
            }
        }
        for e in cell.edges_used() {
            let mut used: Vec<u8> = cell.coords_on(e).map(|i| cell.ranks[i]).collect();
            used.sort_unstable();
            used.dedup();
            if used.iter().enumerate().any(|(j, r)| *r as usize != j) {
                return Err(Error::InvalidConfig(format!("ranks on edge {e} skip a block")));
            }
        }
        Ok(cell)
    }

    /// Configuration cell from entries alone: coordinates on the same edge
    /// are ordered by `order`, a list of coordinates per edge listed from the
    /// minus end. Coordinates on edges missing from `order` are ranked by
    /// index.
    pub fn with_orders(entries: Vec<Entry>, order: &[Vec<usize>]) -> Result<BraidCell> {
        let mut ranks = vec![0u8; entries.len()];
        let mut seen = vec![false; entries.len()];
        for chain in order {
            for (r, &i) in chain.iter().enumerate() {
                ranks[i] = r as u8;
                seen[i] = true;
            }
        }
        let mut next: HashMap<u32, u8> = HashMap::new();
        for (i, e) in entries.iter().enumerate() {
            if let (Entry::Edge(x), false) = (e, seen[i]) {
                let slot = next.entry(*x).or_insert(0);
                ranks[i] = *slot;
                *slot += 1;
            }
        }
        BraidCell::new(entries, ranks)
    }

    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn ranks(&self) -> &[u8] {
        &self.ranks
    }

    pub fn entry(&self, i: usize) -> Entry {
        self.entries[i]
    }

    pub fn rank(&self, i: usize) -> u8 {
        self.ranks[i]
    }

    /// Edges carrying at least one coordinate, ascending.
    pub fn edges_used(&self) -> Vec<u32> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                Entry::Edge(x) => Some(*x),
                Entry::Vertex(_) => None,
            })
            .sorted_unstable()
            .dedup()
            .collect()
    }

    pub fn coords_on(&self, edge: u32) -> impl Iterator<Item = usize> + '_ {
        (0..self.k()).filter(move |&i| self.entries[i] == Entry::Edge(edge))
    }

    /// Number of blocks on `edge`.
    pub fn block_count(&self, edge: u32) -> usize {
        self.coords_on(edge).map(|i| self.ranks[i] as usize + 1).max().unwrap_or(0)
    }

    /// The ordered partition on `edge`, blocks listed from the minus end,
    /// members ascending.
    pub fn blocks(&self, edge: u32) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count(edge)];
        for i in self.coords_on(edge) {
            blocks[self.ranks[i] as usize].push(i);
        }
        blocks
    }

    pub fn dimension(&self) -> usize {
        self.edges_used().into_iter().map(|e| self.block_count(e)).sum()
    }

    pub fn in_discriminant(&self) -> bool {
        for e in self.edges_used() {
            if self.block_count(e) < self.coords_on(e).count() {
                return true;
            }
        }
        let mut vs: Vec<u32> = self
            .entries
            .iter()
            .filter_map(|e| match e {
                Entry::Vertex(v) => Some(*v),
                Entry::Edge(_) => None,
            })
            .collect();
        let n = vs.len();
        vs.sort_unstable();
        vs.dedup();
        vs.len() < n
    }

    fn fits(&self, g: &Graph) -> bool {
        self.entries.iter().all(|e| match e {
            Entry::Vertex(v) => (*v as usize) < g.vertex_count(),
            Entry::Edge(x) => (*x as usize) < g.edge_count(),
        })
    }

    /// Human-readable label such as `(v, a#0, a#1)`.
    pub fn label(&self, g: &Graph) -> String {
        let parts = (0..self.k()).map(|i| match self.entries[i] {
            Entry::Vertex(v) => g.vertices()[v as usize].clone(),
            Entry::Edge(x) => format!("{}#{}", g.edges()[x as usize].id, self.ranks[i]),
        });
        format!("({})", parts.format(", "))
    }
}

fn alphabet(g: &Graph) -> Vec<Entry> {
    (0..g.vertex_count() as u32)
        .map(Entry::Vertex)
        .chain((0..g.edge_count() as u32).map(Entry::Edge))
        .collect()
}

/// Surjections from `m` items onto an initial segment of ranks.
fn ordered_partitions(m: usize) -> Vec<Vec<u8>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    (0..m)
        .map(|_| 0..m as u8)
        .multi_cartesian_product()
        .filter(|f| {
            let mut used = f.clone();
            used.sort_unstable();
            used.dedup();
            used.iter().enumerate().all(|(j, r)| *r as usize == j)
        })
        .collect()
}

fn total_orders(m: usize) -> Vec<Vec<u8>> {
    (0..m as u8).permutations(m).collect()
}

fn cells_over(
    g: &Graph,
    k: usize,
    keep_entries: impl Fn(&[Entry]) -> bool,
    rankings: impl Fn(usize) -> Vec<Vec<u8>>,
) -> Vec<BraidCell> {
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    for entries in (0..k).map(|_| alphabet(g)).multi_cartesian_product() {
        if !keep_entries(&entries) {
            continue;
        }
        let groups: Vec<Vec<usize>> = entries
            .iter()
            .enumerate()
            .filter_map(|(i, e)| match e {
                Entry::Edge(x) => Some((*x, i)),
                Entry::Vertex(_) => None,
            })
            .into_group_map()
            .into_iter()
            .sorted()
            .map(|(_, coords)| coords)
            .collect();
        if groups.is_empty() {
            out.push(BraidCell { entries, ranks: vec![0; k] });
            continue;
        }
        let options: Vec<Vec<Vec<u8>>> = groups.iter().map(|c| rankings(c.len())).collect();
        for choice in options.iter().map(|o| o.iter()).multi_cartesian_product() {
            let mut ranks = vec![0u8; k];
            for (coords, rs) in groups.iter().zip(choice) {
                for (i, r) in coords.iter().zip(rs) {
                    ranks[*i] = *r;
                }
            }
            out.push(BraidCell { entries: entries.clone(), ranks });
        }
    }
    out.sort();
    out
}

/// Every cell of the braid stratification of `g^k`, sorted.
pub fn enumerate_braid_cells(g: &Graph, k: usize) -> Vec<BraidCell> {
    cells_over(g, k, |_| true, ordered_partitions)
}

pub fn in_discriminant(c: &BraidCell) -> bool {
    c.in_discriminant()
}

/// Braid cells disjoint from the discriminant: distinct vertices and a
/// total order on each edge. Sorted.
pub fn configuration_cells(g: &Graph, k: usize) -> Vec<BraidCell> {
    let distinct = |entries: &[Entry]| {
        entries.iter().tuple_combinations().all(|(a, b)| !(a == b && matches!(a, Entry::Vertex(_))))
    };
    cells_over(g, k, distinct, total_orders)
}

/// Codimension-one faces of an arbitrary braid cell: merge two adjacent
/// blocks on an edge, or push the first (last) block onto the minus (plus)
/// vertex of its edge.
pub fn braid_faces(g: &Graph, c: &BraidCell) -> Vec<BraidCell> {
    let mut out = Vec::new();
    for e in c.edges_used() {
        let b = c.block_count(e) as u8;
        for j in 0..b.saturating_sub(1) {
            let mut d = c.clone();
            for i in c.coords_on(e) {
                if d.ranks[i] > j {
                    d.ranks[i] -= 1;
                }
            }
            out.push(d);
        }
        let edge = &g.edges()[e as usize];
        for (sign, block) in [(Sign::Minus, 0), (Sign::Plus, b - 1)] {
            let Some(v) = edge.end(sign) else { continue };
            let mut d = c.clone();
            for i in c.coords_on(e) {
                if c.ranks[i] == block {
                    d.entries[i] = Entry::Vertex(v as u32);
                    d.ranks[i] = 0;
                } else if sign == Sign::Minus {
                    d.ranks[i] -= 1;
                }
            }
            out.push(d);
        }
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Datum {
    Interior,
    End(Sign),
}

/// A morphism of the face category between configuration cells, in
/// canonical per-coordinate form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellMorphism {
    pub source: BraidCell,
    pub target: BraidCell,
    pub data: Vec<Datum>,
}

impl CellMorphism {
    pub fn identity(c: &BraidCell) -> CellMorphism {
        CellMorphism { source: c.clone(), target: c.clone(), data: vec![Datum::Interior; c.k()] }
    }

    pub fn is_identity(&self) -> bool {
        self.data.iter().all(|d| *d == Datum::Interior)
    }
}

/// Source cell obtained from `target` by applying `data`, or `None` if the
/// data violates the extremality rule, uses an open end, or produces a
/// repeated vertex.
pub fn face_source(g: &Graph, target: &BraidCell, data: &[Datum]) -> Option<BraidCell> {
    let k = target.k();
    let mut entries = target.entries.clone();
    let mut ranks = target.ranks.clone();
    for i in 0..k {
        let Datum::End(sign) = data[i] else { continue };
        let Entry::Edge(e) = target.entries[i] else { return None };
        let m = target.coords_on(e).count() as u8;
        let extreme = match sign {
            Sign::Minus => 0,
            Sign::Plus => m - 1,
        };
        if target.ranks[i] != extreme {
            return None;
        }
        let v = g.edges()[e as usize].end(sign)?;
        entries[i] = Entry::Vertex(v as u32);
        ranks[i] = 0;
    }
    for e in target.edges_used() {
        let interior: Vec<usize> = target
            .coords_on(e)
            .filter(|&i| data[i] == Datum::Interior)
            .sorted_by_key(|&i| target.ranks[i])
            .collect();
        for (r, i) in interior.into_iter().enumerate() {
            ranks[i] = r as u8;
        }
    }
    let cell = BraidCell { entries, ranks };
    (!cell.in_discriminant()).then_some(cell)
}

/// Every morphism of the face category with the given target, identity
/// included, in lexicographic order of the data.
pub fn faces_of(g: &Graph, target: &BraidCell) -> Vec<CellMorphism> {
    let options: Vec<Vec<Datum>> = (0..target.k())
        .map(|i| match target.entries[i] {
            Entry::Vertex(_) => vec![Datum::Interior],
            Entry::Edge(_) => vec![Datum::Interior, Datum::End(Sign::Minus), Datum::End(Sign::Plus)],
        })
        .collect();
    options
        .into_iter()
        .multi_cartesian_product()
        .filter_map(|data| {
            face_source(g, target, &data).map(|source| CellMorphism { source, target: target.clone(), data })
        })
        .collect()
}

pub fn enumerate_morphisms(g: &Graph, c: &BraidCell, d: &BraidCell) -> Result<Vec<CellMorphism>> {
    if c.k() != d.k() {
        return Err(Error::MismatchedK(c.k(), d.k()));
    }
    if !c.fits(g) || !d.fits(g) {
        return Err(Error::MismatchedGraph);
    }
    if c.in_discriminant() || d.in_discriminant() || c.dimension() > d.dimension() {
        return Ok(Vec::new());
    }
    Ok(faces_of(g, d).into_iter().filter(|m| m.source == *c).collect())
}

fn combine(second: &[Datum], first: &[Datum]) -> Vec<Datum> {
    second
        .iter()
        .zip(first)
        .map(|(s, f)| match s {
            Datum::End(_) => *s,
            Datum::Interior => *f,
        })
        .collect()
}

/// `m2 ∘ m1`, where `m1: c → d` and `m2: d → f`.
pub fn compose(m2: &CellMorphism, m1: &CellMorphism) -> Result<CellMorphism> {
    if m1.target != m2.source {
        return Err(Error::NonComposable);
    }
    Ok(CellMorphism {
        source: m1.source.clone(),
        target: m2.target.clone(),
        data: combine(&m2.data, &m1.data),
    })
}

/// A permutation of `0..k`, stored as the list of images.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidConfig(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(k: usize) -> Permutation {
        Permutation((0..k).collect())
    }

    /// All permutations of degree `k`, lexicographic in the image list.
    pub fn all(k: usize) -> Vec<Permutation> {
        (0..k).permutations(k).map(Permutation).collect()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, j)| i == *j)
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    fn relocate<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        let mut out = xs.to_vec();
        for (i, x) in xs.iter().enumerate() {
            out[self.0[i]] = x.clone();
        }
        out
    }

    fn check(&self, k: usize) -> Result<()> {
        if self.degree() != k {
            return Err(Error::WrongDegree { expected: k, got: self.degree() });
        }
        Ok(())
    }

    /// Coordinate `i` of `c` becomes coordinate `σ(i)` of the result.
    pub fn act_cell(&self, c: &BraidCell) -> Result<BraidCell> {
        self.check(c.k())?;
        Ok(BraidCell { entries: self.relocate(&c.entries), ranks: self.relocate(&c.ranks) })
    }

    pub fn act_morphism(&self, m: &CellMorphism) -> Result<CellMorphism> {
        self.check(m.data.len())?;
        Ok(CellMorphism {
            source: self.act_cell(&m.source)?,
            target: self.act_cell(&m.target)?,
            data: self.relocate(&m.data),
        })
    }

    pub(crate) fn act_data(&self, data: &[Datum]) -> Vec<Datum> {
        self.relocate(data)
    }
}

pub fn act_cell(sigma: &Permutation, c: &BraidCell) -> Result<BraidCell> {
    sigma.act_cell(c)
}

pub fn act_morphism(sigma: &Permutation, m: &CellMorphism) -> Result<CellMorphism> {
    sigma.act_morphism(m)
}

/// The face category of configuration cells of `g^k`, with objects and
/// non-identity morphisms interned as indices.
#[derive(Clone, Debug)]
pub struct FaceCategory {
    pub k: usize,
    objects: Vec<BraidCell>,
    object_index: HashMap<BraidCell, u32>,
    sources: Vec<u32>,
    targets: Vec<u32>,
    data: Vec<Vec<Datum>>,
    morphism_index: HashMap<(u32, Vec<Datum>), u32>,
    outgoing: Vec<Vec<u32>>,
    ranks: Vec<usize>,
}

impl FaceCategory {
    pub fn new(g: &Graph, k: usize) -> FaceCategory {
        let objects = configuration_cells(g, k);
        let object_index: HashMap<BraidCell, u32> =
            objects.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect();
        let mut raw: Vec<(u32, u32, Vec<Datum>)> = Vec::new();
        for (t, cell) in objects.iter().enumerate() {
            for m in faces_of(g, cell) {
                if m.is_identity() {
                    continue;
                }
                raw.push((object_index[&m.source], t as u32, m.data));
            }
        }
        raw.sort();
        let mut outgoing = vec![Vec::new(); objects.len()];
        let mut morphism_index = HashMap::with_capacity(raw.len());
        let (mut sources, mut targets, mut data) = (Vec::new(), Vec::new(), Vec::new());
        for (i, (s, t, d)) in raw.into_iter().enumerate() {
            outgoing[s as usize].push(i as u32);
            morphism_index.insert((t, d.clone()), i as u32);
            sources.push(s);
            targets.push(t);
            data.push(d);
        }
        let ranks = objects.iter().map(BraidCell::dimension).collect();
        FaceCategory { k, objects, object_index, sources, targets, data, morphism_index, outgoing, ranks }
    }

    pub fn objects(&self) -> &[BraidCell] {
        &self.objects
    }

    pub fn object_id(&self, c: &BraidCell) -> Option<u32> {
        self.object_index.get(c).copied()
    }

    pub fn morphism_count(&self) -> usize {
        self.sources.len()
    }

    pub fn morphism(&self, m: u32) -> CellMorphism {
        let m = m as usize;
        CellMorphism {
            source: self.objects[self.sources[m] as usize].clone(),
            target: self.objects[self.targets[m] as usize].clone(),
            data: self.data[m].clone(),
        }
    }

    pub fn morphism_data(&self, m: u32) -> &[Datum] {
        &self.data[m as usize]
    }

    pub fn morphism_id(&self, target: u32, data: &[Datum]) -> Option<u32> {
        self.morphism_index.get(&(target, data.to_vec())).copied()
    }

    /// Image of an object under a permutation of the coordinates.
    pub fn act_object(&self, sigma: &Permutation, c: u32) -> u32 {
        let moved = sigma.act_cell(&self.objects[c as usize]).expect("degree checked by caller");
        self.object_index[&moved]
    }

    pub fn act_morphism(&self, sigma: &Permutation, m: u32) -> u32 {
        let t = self.act_object(sigma, self.targets[m as usize]);
        self.morphism_index[&(t, sigma.act_data(&self.data[m as usize]))]
    }
}

impl crate::nerve::AcyclicCategory for FaceCategory {
    fn object_count(&self) -> usize {
        self.objects.len()
    }

    fn rank(&self, object: u32) -> usize {
        self.ranks[object as usize]
    }

    fn morphism_count(&self) -> usize {
        self.sources.len()
    }

    fn source(&self, m: u32) -> u32 {
        self.sources[m as usize]
    }

    fn target(&self, m: u32) -> u32 {
        self.targets[m as usize]
    }

    fn outgoing(&self, object: u32) -> &[u32] {
        &self.outgoing[object as usize]
    }

    fn compose(&self, second: u32, first: u32) -> Option<u32> {
        if self.targets[first as usize] != self.sources[second as usize] {
            return None;
        }
        let data = combine(&self.data[second as usize], &self.data[first as usize]);
        let m = self.morphism_id(self.targets[second as usize], &data)?;
        (self.sources[m as usize] == self.sources[first as usize]).then_some(m)
    }
}

impl fmt::Display for Datum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Datum::Interior => write!(f, "."),
            Datum::End(Sign::Minus) => write!(f, "-"),
            Datum::End(Sign::Plus) => write!(f, "+"),
        }
    }
}
