//! A smaller model for two points on a leaf-free graph.
//!
//! Start from the nerve of the two-point face category. Every 1-cell of
//! `X × X` with a single face is half open; its vertex in the nerve is
//! merged into the vertex of that face, contracting the connecting edge.
//! The contracted edges form disjoint stars, so this is a homotopy
//! equivalence. Then, inside each 2-cell `P` of `X × X`, the cells of the
//! subdivision whose top cell is `P` are collapsed greedily: an edge lying
//! on exactly one face goes with that face, and the centre of `P` goes with
//! its last remaining edge. Both moves are elementary collapses, so the
//! result is a deformation retract, and it reproduces the standard
//! replacement of each 2-cell type: points for diagonal branch and
//! connection cells, L-shapes for mixed pairs sharing a vertex, full
//! subdivided squares for disjoint pairs of loops or connections.
//!
//! The collapse is run on one cell of each pair swapped by exchanging the
//! two points and copied to the other, so the result keeps a free action
//! of the swap.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::cells::{Entry, Permutation};
use crate::error::{Error, Result};
use crate::graph::{EdgeClass, Graph};
use crate::homology::{ChainComplex, SparseMatrix};
use crate::model::ConfigurationModel;
use crate::nerve::AcyclicCategory;
use crate::pi1::TwoComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Tag {
    #[serde(rename = "LL_same")]
    LLSame,
    #[serde(rename = "LL_distinct")]
    LLDistinct,
    LB,
    LC,
    #[serde(rename = "BB_same")]
    BBSame,
    #[serde(rename = "BB_distinct")]
    BBDistinct,
    BC,
    #[serde(rename = "CC_same")]
    CCSame,
    #[serde(rename = "CC_distinct")]
    CCDistinct,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tag::LLSame => "LL_same",
            Tag::LLDistinct => "LL_distinct",
            Tag::LB => "LB",
            Tag::LC => "LC",
            Tag::BBSame => "BB_same",
            Tag::BBDistinct => "BB_distinct",
            Tag::BC => "BC",
            Tag::CCSame => "CC_same",
            Tag::CCDistinct => "CC_distinct",
        };
        f.write_str(s)
    }
}

/// Type of a product of two edges: the classes of both factors and the
/// number of vertices their closures share.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TwoCellType {
    pub tag: Tag,
    pub shared: u8,
}

fn closure_vertices(g: &Graph, e: usize) -> HashSet<usize> {
    g.edges()[e].ends.iter().flatten().copied().collect()
}

pub fn two_cell_type(g: &Graph, e1: usize, e2: usize) -> TwoCellType {
    use EdgeClass::*;
    let (c1, c2) = (g.class_of(e1), g.class_of(e2));
    let same = e1 == e2;
    let tag = match (c1, c2) {
        (Loop, Loop) if same => Tag::LLSame,
        (Loop, Loop) => Tag::LLDistinct,
        (Loop, Branch) | (Branch, Loop) => Tag::LB,
        (Loop, Connection) | (Connection, Loop) => Tag::LC,
        (Branch, Branch) if same => Tag::BBSame,
        (Branch, Branch) => Tag::BBDistinct,
        (Branch, Connection) | (Connection, Branch) => Tag::BC,
        (Connection, Connection) if same => Tag::CCSame,
        (Connection, Connection) => Tag::CCDistinct,
    };
    let shared = closure_vertices(g, e1).intersection(&closure_vertices(g, e2)).count() as u8;
    TwoCellType { tag, shared }
}

/// A leaf is a valency-one vertex whose edge is attached at both ends; a
/// hub carrying a single half-open edge is allowed.
fn check_leaf_free(g: &Graph) -> Result<()> {
    for v in 0..g.vertex_count() {
        if g.valency_of(v) != 1 {
            continue;
        }
        let edge = g.edges().iter().find(|e| e.ends_at(v) == 1).expect("valency one");
        if edge.is_closed() {
            return Err(Error::HasLeaves(g.vertices()[v].clone()));
        }
    }
    Ok(())
}

/// Every ordered pair of edges with its type.
pub fn classify_2cells(g: &Graph) -> Result<Vec<((String, String), TwoCellType)>> {
    check_leaf_free(g)?;
    let ids = |e: usize| g.edges()[e].id.clone();
    Ok((0..g.edge_count())
        .flat_map(|a| (0..g.edge_count()).map(move |b| (a, b)))
        .map(|(a, b)| ((ids(a), ids(b)), two_cell_type(g, a, b)))
        .collect())
}

pub fn type_counts(types: &[((String, String), TwoCellType)]) -> BTreeMap<Tag, usize> {
    let mut out = BTreeMap::new();
    for (_, t) in types {
        *out.entry(t.tag).or_insert(0) += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub label: String,
    #[serde(rename = "type")]
    pub kind: TwoCellType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluedVertex {
    pub label: String,
    pub piece: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluedEdge {
    pub label: String,
    pub tail: usize,
    pub head: usize,
    pub piece: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluedFace {
    pub label: String,
    /// Closed boundary path as `(edge, ±1)`.
    pub word: Vec<(usize, i32)>,
    pub piece: Option<usize>,
}

/// A 2-complex given by vertices, oriented edges and faces attached along
/// edge words. Cells inside a 2-cell of `X × X` record that piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluedComplex {
    pub vertices: Vec<GluedVertex>,
    pub edges: Vec<GluedEdge>,
    pub faces: Vec<GluedFace>,
    pub pieces: Vec<Piece>,
    /// Image of every cell under the swap of the two points, if known.
    #[serde(skip)]
    swap: Option<[Vec<usize>; 3]>,
}

impl GluedComplex {
    pub fn fvector(&self) -> Vec<usize> {
        let mut f = vec![self.vertices.len(), self.edges.len(), self.faces.len()];
        while f.len() > 1 && *f.last().unwrap() == 0 {
            f.pop();
        }
        if f == [0] {
            f.clear();
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn point() -> GluedComplex {
        GluedComplex {
            vertices: vec![GluedVertex { label: "*".into(), piece: None }],
            edges: Vec::new(),
            faces: Vec::new(),
            pieces: Vec::new(),
            swap: None,
        }
    }

    /// Cells lying inside each piece, as (vertices, edges, faces) counts.
    pub fn interior_counts(&self) -> Vec<[usize; 3]> {
        let mut out = vec![[0usize; 3]; self.pieces.len()];
        self.vertices.iter().filter_map(|c| c.piece).for_each(|p| out[p][0] += 1);
        self.edges.iter().filter_map(|c| c.piece).for_each(|p| out[p][1] += 1);
        self.faces.iter().filter_map(|c| c.piece).for_each(|p| out[p][2] += 1);
        out
    }

    pub fn has_swap(&self) -> bool {
        self.swap.is_some()
    }

    /// Keeps the flagged cells; the flags must describe a subcomplex.
    fn restrict(&self, keep: [&[bool]; 3]) -> GluedComplex {
        let renumber = |flags: &[bool]| -> Vec<usize> {
            let mut next = 0;
            flags
                .iter()
                .map(|&k| {
                    let i = if k { next } else { usize::MAX };
                    next += k as usize;
                    i
                })
                .collect()
        };
        let [vn, en, fnn] = [renumber(keep[0]), renumber(keep[1]), renumber(keep[2])];
        let vertices = self.vertices.iter().zip(keep[0]).filter(|(_, &k)| k).map(|(v, _)| v.clone()).collect();
        let edges = self
            .edges
            .iter()
            .zip(keep[1])
            .filter(|(_, &k)| k)
            .map(|(e, _)| GluedEdge { tail: vn[e.tail], head: vn[e.head], ..e.clone() })
            .collect();
        let faces = self
            .faces
            .iter()
            .zip(keep[2])
            .filter(|(_, &k)| k)
            .map(|(f, _)| GluedFace { word: f.word.iter().map(|&(e, s)| (en[e], s)).collect(), ..f.clone() })
            .collect();
        let swap = self.swap.as_ref().and_then(|[sv, se, sf]| {
            let closed = (0..sv.len()).all(|i| keep[0][i] == keep[0][sv[i]])
                && (0..se.len()).all(|i| keep[1][i] == keep[1][se[i]])
                && (0..sf.len()).all(|i| keep[2][i] == keep[2][sf[i]]);
            closed.then(|| {
                let map = |s: &[usize], flags: &[bool], num: &[usize]| -> Vec<usize> {
                    (0..s.len()).filter(|&i| flags[i]).map(|i| num[s[i]]).collect()
                };
                [map(sv, keep[0], &vn), map(se, keep[1], &en), map(sf, keep[2], &fnn)]
            })
        });
        GluedComplex { vertices, edges, faces, pieces: self.pieces.clone(), swap }
    }

    /// Quotient by the swap of the two points. Each orbit is represented
    /// by its smaller cell.
    pub fn quotient(&self) -> Result<GluedComplex> {
        let Some([sv, se, sf]) = &self.swap else {
            return Err(Error::InvalidConfig("complex carries no swap action".into()));
        };
        for (dim, s) in [sv, se, sf].into_iter().enumerate() {
            if let Some(i) = (0..s.len()).find(|&i| s[i] == i) {
                return Err(Error::NonFreeAction(format!("cell {i} of dimension {dim} is fixed")));
            }
        }
        let numbering = |s: &[usize]| -> Vec<usize> {
            let mut num = vec![usize::MAX; s.len()];
            let mut next = 0;
            for i in 0..s.len() {
                if i < s[i] {
                    num[i] = next;
                    num[s[i]] = next;
                    next += 1;
                }
            }
            num
        };
        let (vn, en) = (numbering(sv), numbering(se));
        let vertices = (0..sv.len()).filter(|&i| i < sv[i]).map(|i| self.vertices[i].clone()).collect();
        let edges = (0..se.len())
            .filter(|&i| i < se[i])
            .map(|i| {
                let e = &self.edges[i];
                GluedEdge { tail: vn[e.tail], head: vn[e.head], ..e.clone() }
            })
            .collect();
        let faces = (0..sf.len())
            .filter(|&i| i < sf[i])
            .map(|i| {
                let f = &self.faces[i];
                GluedFace { word: f.word.iter().map(|&(e, s)| (en[e], s)).collect(), ..f.clone() }
            })
            .collect();
        Ok(GluedComplex { vertices, edges, faces, pieces: self.pieces.clone(), swap: None })
    }
}

impl TwoComplex for GluedComplex {
    fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn face_count(&self) -> usize {
        self.faces.len()
    }

    fn top_dimension(&self) -> usize {
        self.fvector().len().saturating_sub(1)
    }

    fn edge_ends(&self, e: usize) -> (usize, usize) {
        (self.edges[e].tail, self.edges[e].head)
    }

    fn face_word(&self, f: usize) -> Vec<(usize, i32)> {
        self.faces[f].word.clone()
    }
}

/// `∂e = head − tail`, `∂f = Σ ±e` along the boundary word.
pub fn glued_chain_complex(c: &GluedComplex) -> ChainComplex {
    let sizes = c.fvector();
    let mut boundaries = Vec::new();
    if sizes.len() > 1 {
        let columns = c.edges.iter().map(|e| vec![(e.head as u32, 1), (e.tail as u32, -1)]).collect();
        boundaries.push(SparseMatrix::from_columns(sizes[0], columns));
    }
    if sizes.len() > 2 {
        let columns =
            c.faces.iter().map(|f| f.word.iter().map(|&(e, s)| (e as u32, s as i64)).collect()).collect();
        boundaries.push(SparseMatrix::from_columns(sizes[1], columns));
    }
    ChainComplex::new(sizes, boundaries).expect("shapes match by construction")
}

/// The reduced complex together with the model it was cut from.
#[derive(Clone, Debug)]
pub struct ReducedModel {
    pub complex: GluedComplex,
    pub model: ConfigurationModel,
    /// Top object of every kept cell, per dimension.
    tops: [Vec<u32>; 3],
}

struct Work {
    tail: Vec<usize>,
    head: Vec<usize>,
    words: Vec<Vec<(usize, i32)>>,
    alive: [Vec<bool>; 3],
    /// Faces whose word mentions each edge.
    edge_faces: Vec<Vec<usize>>,
    /// Edges meeting each vertex.
    vertex_edges: Vec<Vec<usize>>,
}

impl Work {
    fn occurrences(&self, e: usize) -> usize {
        self.edge_faces[e]
            .iter()
            .filter(|&&f| self.alive[2][f])
            .map(|&f| self.words[f].iter().filter(|x| x.0 == e).count())
            .sum()
    }

    fn live_edges_at(&self, v: usize) -> Vec<usize> {
        self.vertex_edges[v]
            .iter()
            .copied()
            .filter(|&e| self.alive[1][e])
            .flat_map(|e| std::iter::repeat_n(e, (self.tail[e] == v) as usize + (self.head[e] == v) as usize))
            .collect()
    }

    /// Greedy collapse of the interior of one piece; returns the removed
    /// cells per dimension.
    fn collapse_piece(&mut self, centre: usize, edges: &[usize]) -> [Vec<usize>; 3] {
        let mut removed: [Vec<usize>; 3] = Default::default();
        loop {
            let mut changed = false;
            for &e in edges {
                if !self.alive[1][e] || self.occurrences(e) != 1 {
                    continue;
                }
                let f = *self.edge_faces[e].iter().find(|&&f| self.alive[2][f]).expect("one live face");
                self.alive[1][e] = false;
                self.alive[2][f] = false;
                removed[1].push(e);
                removed[2].push(f);
                changed = true;
            }
            if self.alive[0][centre] {
                let live = self.live_edges_at(centre);
                if live.len() == 1 && self.occurrences(live[0]) == 0 {
                    self.alive[0][centre] = false;
                    self.alive[1][live[0]] = false;
                    removed[0].push(centre);
                    removed[1].push(live[0]);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        removed
    }
}

pub fn build_reduced(g: &Graph) -> Result<ReducedModel> {
    check_leaf_free(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let model = ConfigurationModel::new(g, 2)?;
    let cat = &model.category;
    let nerve = &model.nerve;
    let set = &nerve.set;
    let (n0, n1, n2) = (set.count(0), set.count(1), set.count(2));

    // half-open 1-cells and the edge leading to their only face
    let mut incoming = vec![Vec::new(); n0];
    for m in 0..cat.morphism_count() as u32 {
        incoming[cat.target(m) as usize].push(m);
    }
    let mut merged_into: Vec<usize> = (0..n0).collect();
    let mut contracted = vec![false; n1];
    for c in 0..n0 {
        if cat.rank(c as u32) == 1 && incoming[c].len() == 1 {
            let m = incoming[c][0];
            merged_into[c] = cat.source(m) as usize;
            contracted[nerve.chain_index(1, &[m]).expect("morphism is a 1-chain") as usize] = true;
        }
    }

    let top = |n: usize, j: usize| nerve.top_object(cat, n, j);
    let mut piece_of_object: HashMap<u32, usize> = HashMap::new();
    let mut pieces = Vec::new();
    for (o, cell) in cat.objects().iter().enumerate() {
        if cell.dimension() != 2 {
            continue;
        }
        let (Entry::Edge(a), Entry::Edge(b)) = (cell.entry(0), cell.entry(1)) else { continue };
        piece_of_object.insert(o as u32, pieces.len());
        pieces.push(Piece { label: cell.label(g), kind: two_cell_type(g, a as usize, b as usize) });
    }

    let mut work = Work {
        tail: (0..n1).map(|e| merged_into[set.face(1, e, 1) as usize]).collect(),
        head: (0..n1).map(|e| merged_into[set.face(1, e, 0) as usize]).collect(),
        words: (0..n2)
            .map(|f| {
                [(set.face(2, f, 2), 1), (set.face(2, f, 0), 1), (set.face(2, f, 1), -1)]
                    .into_iter()
                    .map(|(e, s)| (e as usize, s))
                    .filter(|(e, _)| !contracted[*e])
                    .collect()
            })
            .collect(),
        alive: [(0..n0).map(|c| merged_into[c] == c).collect(), contracted.iter().map(|c| !c).collect(), vec![true; n2]],
        edge_faces: vec![Vec::new(); n1],
        vertex_edges: vec![Vec::new(); n0],
    };
    for f in 0..n2 {
        for &(e, _) in &work.words[f] {
            if !work.edge_faces[e].contains(&f) {
                work.edge_faces[e].push(f);
            }
        }
    }
    for e in 0..n1 {
        if work.alive[1][e] {
            work.vertex_edges[work.tail[e]].push(e);
            if work.head[e] != work.tail[e] {
                work.vertex_edges[work.head[e]].push(e);
            }
        }
    }

    let action = model.symmetric_action();
    let swap = &action.maps[1];
    let mut piece_edges: HashMap<u32, Vec<usize>> = HashMap::new();
    for e in 0..n1 {
        if work.alive[1][e] && piece_of_object.contains_key(&top(1, e)) {
            piece_edges.entry(top(1, e)).or_default().push(e);
        }
    }
    let swap_cell = |o: u32| cat.act_object(&Permutation::new(vec![1, 0]).expect("swap"), o);
    for (&p, _) in piece_of_object.iter().collect::<BTreeMap<_, _>>() {
        let partner = swap_cell(p);
        if partner < p {
            continue;
        }
        let edges = piece_edges.get(&p).cloned().unwrap_or_default();
        let removed = work.collapse_piece(p as usize, &edges);
        for (dim, cells) in removed.iter().enumerate() {
            for &c in cells {
                work.alive[dim][swap[dim][c] as usize] = false;
            }
        }
    }

    let piece_at = |n: usize, j: usize| piece_of_object.get(&top(n, j)).copied();
    let label = |n: usize, j: usize| -> String {
        let c = nerve.chain(n, j);
        if n == 0 {
            return cat.objects()[c[0] as usize].label(g);
        }
        let mut parts = vec![cat.objects()[cat.source(c[0]) as usize].label(g)];
        parts.extend(c.iter().map(|&m| cat.objects()[cat.target(m) as usize].label(g)));
        parts.join(" < ")
    };
    let full = GluedComplex {
        vertices: (0..n0).map(|v| GluedVertex { label: label(0, v), piece: piece_at(0, v) }).collect(),
        edges: (0..n1)
            .map(|e| GluedEdge { label: label(1, e), tail: work.tail[e], head: work.head[e], piece: piece_at(1, e) })
            .collect(),
        faces: (0..n2).map(|f| GluedFace { label: label(2, f), word: work.words[f].clone(), piece: piece_at(2, f) }).collect(),
        pieces,
        swap: Some([
            swap[0].iter().map(|&x| x as usize).collect(),
            swap.get(1).map(|s| s.iter().map(|&x| x as usize).collect()).unwrap_or_default(),
            swap.get(2).map(|s| s.iter().map(|&x| x as usize).collect()).unwrap_or_default(),
        ]),
    };
    let tops = [
        (0..n0).filter(|&j| work.alive[0][j]).map(|j| top(0, j)).collect(),
        (0..n1).filter(|&j| work.alive[1][j]).map(|j| top(1, j)).collect(),
        (0..n2).filter(|&j| work.alive[2][j]).map(|j| top(2, j)).collect(),
    ];
    let complex = full.restrict([&work.alive[0], &work.alive[1], &work.alive[2]]);
    Ok(ReducedModel { complex, model, tops })
}

impl ReducedModel {
    /// Subcomplex of all cells lying in the closure of the given 2-cells
    /// of `X × X`, each named by its pair of edge identifiers in coordinate
    /// order.
    pub fn closure_of(&self, cells: &[(&str, &str)]) -> Result<GluedComplex> {
        let g = &self.model.graph;
        let cat = &self.model.category;
        let edge = |id: &str| g.edge_index(id).map(|i| i as u32).ok_or_else(|| Error::UnknownEdge(id.into()));
        let mut below = vec![false; cat.objects().len()];
        let mut stack = Vec::new();
        for &(a, b) in cells {
            let (a, b) = (edge(a)?, edge(b)?);
            for (o, c) in cat.objects().iter().enumerate() {
                if c.entries() == [Entry::Edge(a), Entry::Edge(b)] && !below[o] {
                    below[o] = true;
                    stack.push(o as u32);
                }
            }
        }
        let mut incoming = vec![Vec::new(); below.len()];
        for m in 0..cat.morphism_count() as u32 {
            incoming[cat.target(m) as usize].push(cat.source(m));
        }
        while let Some(o) = stack.pop() {
            for &s in &incoming[o as usize] {
                if !below[s as usize] {
                    below[s as usize] = true;
                    stack.push(s);
                }
            }
        }
        let keep = |d: usize| -> Vec<bool> { self.tops[d].iter().map(|&o| below[o as usize]).collect() };
        let (k0, k1, k2) = (keep(0), keep(1), keep(2));
        Ok(self.complex.restrict([&k0, &k1, &k2]))
    }

    /// The grid complex spanned by products of a loop from `first` with a
    /// loop from `second`.
    pub fn grid(&self, first: &[&str], second: &[&str]) -> Result<GluedComplex> {
        let pairs: Vec<(&str, &str)> = first.iter().flat_map(|a| second.iter().map(move |b| (*a, *b))).collect();
        self.closure_of(&pairs)
    }
}
