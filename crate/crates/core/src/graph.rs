//! Finite graphs as 1-dimensional cellular stratified spaces.
//!
//! A [`Graph`] is a finite set of vertices together with edges whose two ends
//! are each either attached to a vertex or left open. Open ends are needed to
//! represent graphs with their leaves deleted, which are no longer CW
//! complexes but still cellular stratified spaces.
//!
//! Vertices and edges are stored sorted by identifier; all enumeration
//! downstream uses these indices, so the ordering is part of the output
//! contract.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The two ends of an edge. `Minus` is the end at parameter −1 of the
/// characteristic map, `Plus` the end at +1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Minus, Sign::Plus];

    pub fn index(self) -> usize {
        match self {
            Sign::Minus => 0,
            Sign::Plus => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    /// Attached vertex (index into [`Graph::vertices`]) at the minus and plus end.
    pub ends: [Option<usize>; 2],
}

impl Edge {
    pub fn end(&self, sign: Sign) -> Option<usize> {
        self.ends[sign.index()]
    }

    pub fn is_loop(&self) -> bool {
        matches!(self.ends, [Some(a), Some(b)] if a == b)
    }

    pub fn is_closed(&self) -> bool {
        self.ends[0].is_some() && self.ends[1].is_some()
    }

    /// Number of ends of this edge attached to `v`.
    pub fn ends_at(&self, v: usize) -> usize {
        self.ends.iter().filter(|e| **e == Some(v)).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeClass {
    Loop,
    Branch,
    Connection,
}

/// Edge description used when building a graph from identifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: String,
    pub minus: Option<String>,
    pub plus: Option<String>,
}

impl EdgeSpec {
    pub fn new(id: impl Into<String>, minus: Option<&str>, plus: Option<&str>) -> Self {
        EdgeSpec { id: id.into(), minus: minus.map(str::to_owned), plus: plus.map(str::to_owned) }
    }

    pub fn closed(id: impl Into<String>, minus: &str, plus: &str) -> Self {
        Self::new(id, Some(minus), Some(plus))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Validates identifiers and builds a graph. Vertices and edges are
    /// stored sorted by identifier.
    pub fn build<I, S>(vertex_ids: I, edge_specs: Vec<EdgeSpec>) -> Result<Graph>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut vertices: Vec<String> = vertex_ids.into_iter().map(Into::into).collect();
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateId(w[0].clone()));
        }
        let lookup: BTreeMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let resolve = |end: &Option<String>| -> Result<Option<usize>> {
            match end {
                None => Ok(None),
                Some(v) => lookup
                    .get(v.as_str())
                    .copied()
                    .map(Some)
                    .ok_or_else(|| Error::UnknownVertex(v.clone())),
            }
        };
        let mut edges = Vec::with_capacity(edge_specs.len());
        for spec in &edge_specs {
            edges.push(Edge { id: spec.id.clone(), ends: [resolve(&spec.minus)?, resolve(&spec.plus)?] });
        }
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = edges.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::DuplicateId(w[0].id.clone()));
        }
        Ok(Graph { vertices, edges })
    }

    pub fn empty() -> Graph {
        Graph { vertices: Vec::new(), edges: Vec::new() }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(id)).ok()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.binary_search_by(|e| e.id.as_str().cmp(id)).ok()
    }

    fn require_vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index(id).ok_or_else(|| Error::UnknownVertex(id.to_owned()))
    }

    fn require_edge(&self, id: &str) -> Result<usize> {
        self.edge_index(id).ok_or_else(|| Error::UnknownEdge(id.to_owned()))
    }

    pub fn classify_edge(&self, id: &str) -> Result<EdgeClass> {
        Ok(self.class_of(self.require_edge(id)?))
    }

    pub fn class_of(&self, e: usize) -> EdgeClass {
        let edge = &self.edges[e];
        match edge.ends {
            [Some(a), Some(b)] if a == b => EdgeClass::Loop,
            [Some(a), Some(b)] => {
                let meets_other = |v: usize| {
                    self.edges.iter().enumerate().any(|(j, f)| j != e && f.ends_at(v) > 0)
                };
                if meets_other(a) && meets_other(b) {
                    EdgeClass::Connection
                } else {
                    EdgeClass::Branch
                }
            }
            _ => EdgeClass::Branch,
        }
    }

    pub fn valency(&self, id: &str) -> Result<usize> {
        Ok(self.valency_of(self.require_vertex(id)?))
    }

    /// Attached edge ends at `v`; loops count twice, open ends never.
    pub fn valency_of(&self, v: usize) -> usize {
        self.edges.iter().map(|e| e.ends_at(v)).sum()
    }

    pub fn has_loop_at(&self, v: usize) -> bool {
        self.edges.iter().any(|e| e.is_loop() && e.ends[0] == Some(v))
    }

    pub fn is_closed(&self) -> bool {
        self.edges.iter().all(Edge::is_closed)
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.valency_of(v) == 1).collect()
    }

    /// Deletes every vertex of valency one and opens the edge ends attached
    /// to it. Surviving attachments of partially opened edges are moved to
    /// the minus end.
    pub fn remove_leaves(&self) -> Graph {
        let leaves: BTreeSet<usize> = self.leaves().into_iter().collect();
        if leaves.is_empty() {
            return self.clone();
        }
        let keep = |end: Option<usize>| end.filter(|v| !leaves.contains(v));
        let vertices: Vec<String> = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| !leaves.contains(i))
            .map(|(_, v)| v.clone())
            .collect();
        let name = |end: Option<usize>| end.map(|v| self.vertices[v].clone());
        let specs = self
            .edges
            .iter()
            .map(|e| {
                let (mut minus, mut plus) = (keep(e.ends[0]), keep(e.ends[1]));
                let opened = minus != e.ends[0] || plus != e.ends[1];
                if opened && minus.is_none() {
                    std::mem::swap(&mut minus, &mut plus);
                }
                EdgeSpec { id: e.id.clone(), minus: name(minus), plus: name(plus) }
            })
            .collect();
        Graph::build(vertices, specs).expect("leaf removal preserves identifiers")
    }

    /// Merges valency-two vertices that are not on a loop, smallest vertex
    /// identifier first, until the graph is reduced. The merged edge is named
    /// `a+b` with `a < b` and runs from the far end of `a` to the far end of `b`.
    pub fn reduce(&self) -> Graph {
        let mut vertices: Vec<String> = self.vertices.clone();
        let mut edges: Vec<(String, [Option<String>; 2])> = self
            .edges
            .iter()
            .map(|e| (e.id.clone(), e.ends.map(|v| v.map(|i| self.vertices[i].clone()))))
            .collect();
        loop {
            let candidate = vertices.iter().find(|v| {
                let v = Some((*v).clone());
                let val: usize =
                    edges.iter().map(|(_, ends)| ends.iter().filter(|x| **x == v).count()).sum();
                let on_loop = edges.iter().any(|(_, ends)| ends[0] == v && ends[1] == v);
                val == 2 && !on_loop
            });
            let Some(v) = candidate.cloned() else { break };
            let here = Some(v.clone());
            let mut incident: Vec<usize> =
                (0..edges.len()).filter(|&i| edges[i].1.contains(&here)).collect();
            incident.sort_by(|&a, &b| edges[a].0.cmp(&edges[b].0));
            let far = |i: usize| {
                let ends = &edges[i].1;
                if ends[0] == here {
                    ends[1].clone()
                } else {
                    ends[0].clone()
                }
            };
            let (a, b) = (incident[0], incident[1]);
            let merged = (format!("{}+{}", edges[a].0, edges[b].0), [far(a), far(b)]);
            edges = edges
                .into_iter()
                .enumerate()
                .filter(|(i, _)| *i != a && *i != b)
                .map(|(_, e)| e)
                .collect();
            edges.push(merged);
            vertices.retain(|x| *x != v);
        }
        let specs = edges
            .into_iter()
            .map(|(id, [minus, plus])| EdgeSpec { id, minus, plus })
            .collect();
        Graph::build(vertices, specs).expect("reduction preserves identifiers")
    }

    /// Replaces every edge by a path of `n` edges through `n - 1` fresh
    /// vertices. Edge `e` becomes `e.0, …, e.{n-1}` through vertices
    /// `e.1, …, e.{n-1}`.
    pub fn subdivide(&self, n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidConfig("subdivision count must be positive".into()));
        }
        if let Some(e) = self.edges.iter().find(|e| !e.is_closed()) {
            return Err(Error::OpenEdge(e.id.clone()));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let mut vertices = self.vertices.clone();
        let mut specs = Vec::new();
        for e in &self.edges {
            let point = |i: usize| -> String {
                match i {
                    0 => self.vertices[e.ends[0].unwrap()].clone(),
                    i if i == n => self.vertices[e.ends[1].unwrap()].clone(),
                    i => format!("{}.{}", e.id, i),
                }
            };
            vertices.extend((1..n).map(point));
            specs.extend((0..n).map(|i| EdgeSpec {
                id: format!("{}.{}", e.id, i),
                minus: Some(point(i)),
                plus: Some(point(i + 1)),
            }));
        }
        Graph::build(vertices, specs)
    }

    /// Vertices that are neither leaves nor interior points of a path, i.e.
    /// not of valency one and not meeting exactly two distinct non-loop edges
    /// with nothing else.
    pub fn essential_vertices(&self) -> BTreeSet<String> {
        (0..self.vertices.len())
            .filter(|&v| {
                let val = self.valency_of(v);
                let regular_pair = val == 2 && !self.has_loop_at(v);
                val != 1 && !regular_pair
            })
            .map(|v| self.vertices[v].clone())
            .collect()
    }

    /// Connected components as sets of (vertex indices, edge indices).
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let nv = self.vertices.len();
        let mut uf = UnionFind::new(nv + self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            for v in e.ends.iter().flatten() {
                uf.union(nv + i, *v);
            }
        }
        let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for x in 0..nv + self.edges.len() {
            let root = uf.find(x);
            let entry = groups.entry(root).or_default();
            if x < nv {
                entry.0.push(x);
            } else {
                entry.1.push(x - nv);
            }
        }
        let mut out: Vec<_> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// First Betti number |E| − |V| + #components of a closed graph.
    pub fn first_betti(&self) -> usize {
        (self.edges.len() + self.components().len()) - self.vertices.len()
    }

    /// Breadth-first edge distances from `source` (unit edge lengths).
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        self.distances_avoiding(source, None)
    }

    pub(crate) fn distances_avoiding(&self, source: usize, skip: Option<usize>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertices.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for (i, e) in self.edges.iter().enumerate() {
                if Some(i) == skip {
                    continue;
                }
                if let [Some(a), Some(b)] = e.ends {
                    let w = if a == u {
                        b
                    } else if b == u {
                        a
                    } else {
                        continue;
                    };
                    if dist[w].is_none() {
                        dist[w] = Some(du + 1);
                        queue.push_back(w);
                    }
                }
            }
        }
        dist
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson { id: e.id.clone(), ends: e.ends.map(|v| v.map(|i| self.vertices[i].clone())) })
                .collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Graph> {
        let specs = json
            .edges
            .iter()
            .map(|e| EdgeSpec { id: e.id.clone(), minus: e.ends[0].clone(), plus: e.ends[1].clone() })
            .collect();
        Graph::build(json.vertices.clone(), specs)
    }
}

/// On-disk graph format: `{"vertices": [...], "edges": [{"id": "a", "ends": ["v", null]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: String,
    pub ends: [Option<String>; 2],
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}
