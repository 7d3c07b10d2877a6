//! Nerves of finite acyclic categories as semi-simplicial sets, quotients by
//! free group actions and elementary collapses.
//!
//! An n-chain is stored in application order `[u1, …, un]`: `u1` is applied
//! first. Face `d0` drops `u1`, face `dn` drops `un`, and the middle face
//! `di` replaces `ui, u(i+1)` by their composite. On a 1-chain `d0` is the
//! target and `d1` the source.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::UnionFind;

/// A finite category with a strictly increasing rank along non-identity
/// morphisms. Only non-identity morphisms are indexed.
pub trait AcyclicCategory {
    fn object_count(&self) -> usize;
    fn rank(&self, object: u32) -> usize;
    fn morphism_count(&self) -> usize;
    fn source(&self, m: u32) -> u32;
    fn target(&self, m: u32) -> u32;
    /// Non-identity morphisms out of `object`.
    fn outgoing(&self, object: u32) -> &[u32];
    /// `second ∘ first`; `None` when the pair is not composable or the
    /// composite is missing from the category.
    fn compose(&self, second: u32, first: u32) -> Option<u32>;
}

/// Explicitly tabulated acyclic category.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    ranks: Vec<usize>,
    sources: Vec<u32>,
    targets: Vec<u32>,
    outgoing: Vec<Vec<u32>>,
    composites: HashMap<(u32, u32), u32>,
}

impl FiniteCategory {
    /// `morphisms[m] = (source, target)`; `composites` lists
    /// `((second, first), composite)` for every composable pair.
    pub fn new(ranks: Vec<usize>, morphisms: Vec<(u32, u32)>, composites: Vec<((u32, u32), u32)>) -> Result<Self> {
        let n = ranks.len() as u32;
        let mut outgoing = vec![Vec::new(); ranks.len()];
        for (i, &(s, t)) in morphisms.iter().enumerate() {
            if s >= n || t >= n {
                return Err(Error::InvalidCategory(format!("morphism {i} has an unknown endpoint")));
            }
            outgoing[s as usize].push(i as u32);
        }
        Ok(FiniteCategory {
            ranks,
            sources: morphisms.iter().map(|m| m.0).collect(),
            targets: morphisms.iter().map(|m| m.1).collect(),
            outgoing,
            composites: composites.into_iter().collect(),
        })
    }

    /// The poset on `0..n` generated by `covers` (pairs `a < b`), with rank
    /// the length of the longest chain below an element.
    pub fn from_poset(n: usize, covers: &[(u32, u32)]) -> Result<Self> {
        let mut below = vec![vec![false; n]; n];
        for &(a, b) in covers {
            below[a as usize][b as usize] = true;
        }
        for m in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if below[a][m] && below[m][b] {
                        below[a][b] = true;
                    }
                }
            }
        }
        if (0..n).any(|a| below[a][a]) {
            return Err(Error::InvalidCategory("relation has a cycle".into()));
        }
        let mut rank = vec![0usize; n];
        for _ in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if below[a][b] {
                        rank[b] = rank[b].max(rank[a] + 1);
                    }
                }
            }
        }
        let mut morphisms = Vec::new();
        let mut id = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if below[a][b] {
                    id.insert((a, b), morphisms.len() as u32);
                    morphisms.push((a as u32, b as u32));
                }
            }
        }
        let mut composites = Vec::new();
        for (&(a, b), &f) in &id {
            for c in 0..n {
                if let Some(&g) = id.get(&(b, c)) {
                    composites.push(((g, f), id[&(a, c)]));
                }
            }
        }
        FiniteCategory::new(rank, morphisms, composites)
    }
}

impl AcyclicCategory for FiniteCategory {
    fn object_count(&self) -> usize {
        self.ranks.len()
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
        self.composites.get(&(second, first)).copied()
    }
}

/// Semi-simplicial set with cells indexed per dimension and face indices
/// stored flat: cell `j` of dimension `n ≥ 1` has faces
/// `faces[n][j*(n+1) .. (j+1)*(n+1)]`, in the order `d0, …, dn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiSimplicialSet {
    counts: Vec<usize>,
    faces: Vec<Vec<u32>>,
}

impl SemiSimplicialSet {
    /// Builds from per-dimension face lists; `faces[0]` must be empty.
    pub fn new(counts: Vec<usize>, faces: Vec<Vec<u32>>) -> Result<Self> {
        if counts.len() != faces.len() {
            return Err(Error::InvalidConfig("counts and face lists differ in length".into()));
        }
        for n in 0..counts.len() {
            let expected = if n == 0 { 0 } else { counts[n] * (n + 1) };
            if faces[n].len() != expected {
                return Err(Error::InvalidConfig(format!("face list of dimension {n} has wrong length")));
            }
            if n > 0 && faces[n].iter().any(|&f| f as usize >= counts[n - 1]) {
                return Err(Error::InvalidConfig(format!("face of dimension {n} out of range")));
            }
        }
        let mut s = SemiSimplicialSet { counts, faces };
        s.trim();
        Ok(s)
    }

    fn trim(&mut self) {
        while self.counts.len() > 1 && *self.counts.last().unwrap() == 0 {
            self.counts.pop();
            self.faces.pop();
        }
    }

    pub fn point() -> Self {
        SemiSimplicialSet { counts: vec![1], faces: vec![Vec::new()] }
    }

    /// Number of cells per dimension, trailing zeros removed.
    pub fn fvector(&self) -> Vec<usize> {
        if self.counts == [0] {
            return Vec::new();
        }
        self.counts.clone()
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts.get(n).copied().unwrap_or(0)
    }

    pub fn top_dimension(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn dimension(&self) -> Result<usize> {
        if self.count(0) == 0 {
            return Err(Error::EmptyComplex);
        }
        Ok(self.top_dimension())
    }

    pub fn faces(&self, n: usize, j: usize) -> &[u32] {
        &self.faces[n][j * (n + 1)..(j + 1) * (n + 1)]
    }

    pub fn face(&self, n: usize, j: usize, i: usize) -> u32 {
        self.faces[n][j * (n + 1) + i]
    }

    /// Checks `di dj = d(j-1) di` for `i < j` on every cell of dimension ≥ 2.
    pub fn check_identities(&self) -> bool {
        for n in 2..self.counts.len() {
            for x in 0..self.counts[n] {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face(n - 1, self.face(n, x, j) as usize, i);
                        let rhs = self.face(n - 1, self.face(n, x, i) as usize, j - 1);
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts.iter().enumerate().map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// Connected components as sorted lists of 0-cells.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.count(0));
        for e in 0..self.count(1) {
            uf.union(self.face(1, e, 0) as usize, self.face(1, e, 1) as usize);
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for v in 0..self.count(0) {
            groups.entry(uf.find(v)).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Keeps only the flagged cells. The flags must describe a subcomplex.
    pub fn subcomplex(&self, keep: &[Vec<bool>]) -> SemiSimplicialSet {
        let mut new_index: Vec<Vec<u32>> = Vec::with_capacity(self.counts.len());
        let mut counts = Vec::new();
        let mut faces = Vec::new();
        for n in 0..self.counts.len() {
            let mut idx = vec![u32::MAX; self.counts[n]];
            let mut c = 0u32;
            let mut fl = Vec::new();
            for j in 0..self.counts[n] {
                if keep[n][j] {
                    idx[j] = c;
                    c += 1;
                    if n > 0 {
                        fl.extend(self.faces(n, j).iter().map(|&f| new_index[n - 1][f as usize]));
                    }
                }
            }
            debug_assert!(fl.iter().all(|&f| f != u32::MAX), "kept cell has a removed face");
            counts.push(c as usize);
            faces.push(fl);
            new_index.push(idx);
        }
        let mut s = SemiSimplicialSet { counts, faces };
        s.trim();
        s
    }
}

/// The nerve of a category: the semi-simplicial set plus, per dimension,
/// the chains it indexes (objects in dimension 0, morphism ids above).
#[derive(Clone, Debug)]
pub struct Nerve {
    pub set: SemiSimplicialSet,
    chains: Vec<Vec<u32>>,
    lookup: Vec<HashMap<Vec<u32>, u32>>,
}

impl Nerve {
    /// Chain `j` of dimension `n`: the object for `n = 0`, otherwise the
    /// morphisms in application order.
    pub fn chain(&self, n: usize, j: usize) -> &[u32] {
        let w = n.max(1);
        &self.chains[n][j * w..(j + 1) * w]
    }

    pub fn chain_index(&self, n: usize, chain: &[u32]) -> Option<u32> {
        if n == 0 {
            return chain.first().copied().filter(|&o| (o as usize) < self.set.count(0));
        }
        self.lookup.get(n)?.get(chain).copied()
    }

    /// Object at the end of chain `j` of dimension `n`.
    pub fn top_object<C: AcyclicCategory>(&self, cat: &C, n: usize, j: usize) -> u32 {
        let c = self.chain(n, j);
        if n == 0 {
            c[0]
        } else {
            cat.target(c[n - 1])
        }
    }

    /// Transports a map on objects and morphisms to all chains.
    pub fn induced_permutation(&self, on_objects: impl Fn(u32) -> u32, on_morphisms: impl Fn(u32) -> u32) -> Vec<Vec<u32>> {
        (0..self.set.counts.len())
            .map(|n| {
                (0..self.set.count(n))
                    .map(|j| {
                        if n == 0 {
                            on_objects(self.chain(0, j)[0])
                        } else {
                            let moved: Vec<u32> = self.chain(n, j).iter().map(|&m| on_morphisms(m)).collect();
                            self.lookup[n][&moved]
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Builds the nerve, verifying rank monotonicity, closure of composition
/// and associativity on every composable triple.
pub fn build_nerve<C: AcyclicCategory>(cat: &C) -> Result<Nerve> {
    for m in 0..cat.morphism_count() as u32 {
        if cat.rank(cat.target(m)) <= cat.rank(cat.source(m)) {
            return Err(Error::InvalidCategory(format!("morphism {m} does not raise rank")));
        }
    }
    let objects = cat.object_count();
    let mut counts = vec![objects];
    let mut faces: Vec<Vec<u32>> = vec![Vec::new()];
    let mut chains: Vec<Vec<u32>> = vec![(0..objects as u32).collect()];
    let mut lookup: Vec<HashMap<Vec<u32>, u32>> = vec![HashMap::new()];
    let mut n = 1;
    loop {
        let mut level_chains: Vec<u32> = Vec::new();
        let mut level_faces: Vec<u32> = Vec::new();
        let mut level_lookup: HashMap<Vec<u32>, u32> = HashMap::new();
        let prev_width = (n - 1).max(1);
        let prev = &chains[n - 1];
        for j in 0..counts[n - 1] {
            let base = &prev[j * prev_width..(j + 1) * prev_width];
            let last = if n == 1 { base[0] } else { cat.target(base[n - 2]) };
            for &u in cat.outgoing(last) {
                let mut chain: Vec<u32> = if n == 1 { Vec::new() } else { base.to_vec() };
                chain.push(u);
                let index = (level_chains.len() / n) as u32;
                if n == 1 {
                    level_faces.push(cat.target(u));
                    level_faces.push(cat.source(u));
                } else {
                    let resolve = |c: &[u32]| -> Result<u32> {
                        lookup[c.len()]
                            .get(c)
                            .copied()
                            .ok_or_else(|| Error::InvalidCategory(format!("face {c:?} missing")))
                    };
                    level_faces.push(resolve(&chain[1..])?);
                    for i in 1..n {
                        let comp = cat.compose(chain[i], chain[i - 1]).ok_or_else(|| {
                            Error::InvalidCategory(format!("composite of {} and {} missing", chain[i], chain[i - 1]))
                        })?;
                        if cat.source(comp) != cat.source(chain[i - 1]) || cat.target(comp) != cat.target(chain[i]) {
                            return Err(Error::InvalidCategory(format!("composite {comp} has wrong endpoints")));
                        }
                        let mut merged = chain[..i - 1].to_vec();
                        merged.push(comp);
                        merged.extend_from_slice(&chain[i + 1..]);
                        level_faces.push(resolve(&merged)?);
                    }
                    level_faces.push(resolve(&chain[..n - 1])?);
                    if n == 3 {
                        let left = cat.compose(chain[2], cat.compose(chain[1], chain[0]).unwrap());
                        let right = cat.compose(cat.compose(chain[2], chain[1]).unwrap(), chain[0]);
                        if left.is_none() || left != right {
                            return Err(Error::InvalidCategory(format!("composition not associative on {chain:?}")));
                        }
                    }
                }
                level_chains.extend_from_slice(&chain);
                level_lookup.insert(chain, index);
            }
        }
        if level_chains.is_empty() {
            break;
        }
        counts.push(level_chains.len() / n);
        faces.push(level_faces);
        chains.push(level_chains);
        lookup.push(level_lookup);
        n += 1;
    }
    Ok(Nerve { set: SemiSimplicialSet { counts, faces }, chains, lookup })
}

pub fn dimension(s: &SemiSimplicialSet) -> Result<usize> {
    s.dimension()
}

/// A group acting on a semi-simplicial set by automorphisms:
/// `maps[g][n][j]` is the image of cell `j` of dimension `n` under `g`.
#[derive(Clone, Debug)]
pub struct ChainAction {
    pub maps: Vec<Vec<Vec<u32>>>,
}

impl ChainAction {
    pub fn trivial(s: &SemiSimplicialSet) -> ChainAction {
        ChainAction { maps: vec![(0..=s.top_dimension()).map(|n| (0..s.count(n) as u32).collect()).collect()] }
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }
}

fn orbit_representatives(s: &SemiSimplicialSet, action: &ChainAction) -> Result<Vec<Vec<u32>>> {
    let trivial_on_vertices =
        |m: &Vec<Vec<u32>>| m[0].iter().enumerate().all(|(j, &x)| x as usize == j);
    for (g, map) in action.maps.iter().enumerate() {
        if !trivial_on_vertices(map) && map[0].iter().enumerate().any(|(j, &x)| x as usize == j) {
            return Err(Error::NonFreeAction(format!("element {g} fixes a vertex")));
        }
    }
    let identities = action.maps.iter().filter(|m| trivial_on_vertices(m)).count();
    if s.count(0) > 0 && identities != 1 {
        return Err(Error::NonFreeAction(format!("{identities} group elements act trivially on vertices")));
    }
    Ok((0..s.counts.len())
        .map(|n| (0..s.count(n)).map(|j| action.maps.iter().map(|m| m[n][j]).min().unwrap_or(j as u32)).collect())
        .collect())
}

/// Quotient cell index of every cell. Orbit representatives are the
/// smallest index in each orbit and are numbered in increasing order.
pub fn orbit_map(s: &SemiSimplicialSet, action: &ChainAction) -> Result<Vec<Vec<u32>>> {
    let reps = orbit_representatives(s, action)?;
    Ok(reps
        .iter()
        .map(|rep| {
            let mut number = vec![u32::MAX; rep.len()];
            let mut next = 0u32;
            for j in 0..rep.len() {
                if rep[j] == j as u32 {
                    number[j] = next;
                    next += 1;
                }
            }
            rep.iter().map(|&r| number[r as usize]).collect()
        })
        .collect())
}

pub fn quotient_by_free_action(s: &SemiSimplicialSet, action: &ChainAction) -> Result<SemiSimplicialSet> {
    let reps = orbit_representatives(s, action)?;
    let map = orbit_map(s, action)?;
    let mut counts = Vec::new();
    let mut faces = vec![Vec::new()];
    for n in 0..s.counts.len() {
        let kept: Vec<usize> = (0..s.count(n)).filter(|&j| reps[n][j] as usize == j).collect();
        counts.push(kept.len());
        if n > 0 {
            faces.push(kept.iter().flat_map(|&j| s.faces(n, j).iter().map(|&f| map[n - 1][f as usize])).collect());
        }
    }
    SemiSimplicialSet::new(counts, faces)
}

/// Removes elementary free pairs until none remain and reports which cells
/// survive. Pairs are searched by ascending dimension then index, in
/// repeated passes.
pub fn collapse_mask(s: &SemiSimplicialSet) -> Vec<Vec<bool>> {
    let top = s.counts.len();
    let mut alive: Vec<Vec<bool>> = s.counts.iter().map(|&c| vec![true; c]).collect();
    // cofaces[n][j]: cells of dimension n+1 with j as a face, with multiplicity
    let mut cofaces: Vec<Vec<Vec<u32>>> = s.counts.iter().map(|&c| vec![Vec::new(); c]).collect();
    for n in 1..top {
        for j in 0..s.count(n) {
            for &f in s.faces(n, j) {
                cofaces[n - 1][f as usize].push(j as u32);
            }
        }
    }
    let live_cofaces = |alive: &Vec<Vec<bool>>, n: usize, j: usize| -> Vec<u32> {
        if n + 1 >= top {
            return Vec::new();
        }
        cofaces[n][j].iter().copied().filter(|&c| alive[n + 1][c as usize]).collect()
    };
    loop {
        let mut changed = false;
        for n in 0..top.saturating_sub(1) {
            for j in 0..s.count(n) {
                if !alive[n][j] {
                    continue;
                }
                let up = live_cofaces(&alive, n, j);
                if up.len() != 1 {
                    continue;
                }
                let sigma = up[0] as usize;
                if !live_cofaces(&alive, n + 1, sigma).is_empty() {
                    continue;
                }
                alive[n][j] = false;
                alive[n + 1][sigma] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    alive
}

pub fn collapse_free_faces(s: &SemiSimplicialSet) -> SemiSimplicialSet {
    s.subcomplex(&collapse_mask(s))
}
