use std::collections::{BTreeSet, HashMap};

use super::{EdgeId, GraphError, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexIdx(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeIdx(pub u32);

impl VertexIdx {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeIdx {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRecord {
    pub id: EdgeId,
    pub src: VertexIdx,
    pub dst: VertexIdx,
    /// Stands for countably many parallel edges `src -> dst`.
    pub infinite_family: bool,
}

/// Out-edges of a vertex, split into ordinary edges and infinite families.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OutEdges {
    pub finite: Vec<EdgeId>,
    pub infinite: Vec<EdgeId>,
}

impl OutEdges {
    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.infinite.is_empty()
    }

    /// The `index`-th member of the `family`-th infinite family.
    pub fn member(&self, family: usize, index: u64) -> Option<EdgeId> {
        match self.infinite.get(family)? {
            EdgeId::Family { src, dst } => Some(EdgeId::Member {
                src: src.clone(),
                dst: dst.clone(),
                index,
            }),
            _ => None,
        }
    }
}

/// A finite directed multigraph.
///
/// Vertices and edges are stored sorted by label, so index order is label
/// order. Graphs cut out of ladders carry a set of boundary vertices: spine
/// ends that look like sinks or sources only because of the truncation.
#[derive(Clone, Debug)]
pub struct FiniteGraph {
    vertices: Vec<Vertex>,
    edges: Vec<EdgeRecord>,
    vertex_index: HashMap<Vertex, VertexIdx>,
    edge_index: HashMap<EdgeId, EdgeIdx>,
    out: Vec<Vec<EdgeIdx>>,
    inc: Vec<Vec<EdgeIdx>>,
    boundary: BTreeSet<VertexIdx>,
}

impl PartialEq for FiniteGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.boundary == other.boundary
    }
}

impl Eq for FiniteGraph {}

#[derive(Clone, Debug, Default)]
pub struct FiniteGraphBuilder {
    vertices: Vec<Vertex>,
    edges: Vec<(EdgeId, Vertex, Vertex, bool)>,
    boundary: Vec<Vertex>,
}

impl FiniteGraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, v: Vertex) -> Self {
        self.vertices.push(v);
        self
    }

    pub fn edge(mut self, id: EdgeId, src: Vertex, dst: Vertex) -> Self {
        self.edges.push((id, src, dst, false));
        self
    }

    pub fn infinite_family(mut self, src: Vertex, dst: Vertex) -> Self {
        let id = EdgeId::Family {
            src: src.to_string(),
            dst: dst.to_string(),
        };
        self.edges.push((id, src, dst, true));
        self
    }

    pub fn boundary(mut self, v: Vertex) -> Self {
        self.boundary.push(v);
        self
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.vertices.push(v);
    }

    pub fn add_edge(&mut self, id: EdgeId, src: Vertex, dst: Vertex) {
        self.edges.push((id, src, dst, false));
    }

    pub fn add_infinite_family(&mut self, src: Vertex, dst: Vertex) {
        *self = std::mem::take(self).infinite_family(src, dst);
    }

    pub fn add_boundary(&mut self, v: Vertex) {
        self.boundary.push(v);
    }

    pub fn build(self) -> Result<FiniteGraph, GraphError> {
        let mut vertices = self.vertices;
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0].clone()));
        }
        let vertex_index: HashMap<Vertex, VertexIdx> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), VertexIdx(i as u32)))
            .collect();
        let lookup = |v: &Vertex| {
            vertex_index
                .get(v)
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex(v.clone()))
        };

        let mut raw = self.edges;
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = raw.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(GraphError::DuplicateEdge(w[0].0.clone()));
        }
        let mut edges = Vec::with_capacity(raw.len());
        for (id, s, d, inf) in raw {
            edges.push(EdgeRecord {
                src: lookup(&s)?,
                dst: lookup(&d)?,
                id,
                infinite_family: inf,
            });
        }
        let edge_index = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), EdgeIdx(i as u32)))
            .collect();

        let mut out = vec![Vec::new(); vertices.len()];
        let mut inc = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.src.index()].push(EdgeIdx(i as u32));
            inc[e.dst.index()].push(EdgeIdx(i as u32));
        }
        let boundary = self
            .boundary
            .iter()
            .map(lookup)
            .collect::<Result<_, _>>()?;

        Ok(FiniteGraph {
            vertices,
            edges,
            vertex_index,
            edge_index,
            out,
            inc,
            boundary,
        })
    }
}

impl FiniteGraph {
    pub fn builder() -> FiniteGraphBuilder {
        FiniteGraphBuilder::new()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexIdx> + '_ {
        (0..self.vertices.len() as u32).map(VertexIdx)
    }

    pub fn edge_indices(&self) -> impl Iterator<Item = EdgeIdx> + '_ {
        (0..self.edges.len() as u32).map(EdgeIdx)
    }

    pub fn vertex(&self, v: VertexIdx) -> &Vertex {
        &self.vertices[v.index()]
    }

    pub fn vertex_labels(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edge(&self, e: EdgeIdx) -> &EdgeRecord {
        &self.edges[e.index()]
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn vertex_idx(&self, v: &Vertex) -> Option<VertexIdx> {
        self.vertex_index.get(v).copied()
    }

    pub fn edge_idx(&self, e: &EdgeId) -> Option<EdgeIdx> {
        self.edge_index.get(e).copied()
    }

    pub fn src(&self, e: EdgeIdx) -> VertexIdx {
        self.edges[e.index()].src
    }

    pub fn dst(&self, e: EdgeIdx) -> VertexIdx {
        self.edges[e.index()].dst
    }

    /// Out-edges of `v` in id order.
    pub fn out_edges(&self, v: VertexIdx) -> &[EdgeIdx] {
        &self.out[v.index()]
    }

    pub fn in_edges(&self, v: VertexIdx) -> &[EdgeIdx] {
        &self.inc[v.index()]
    }

    pub fn out_edge_ids(&self, v: VertexIdx) -> OutEdges {
        let mut res = OutEdges::default();
        for &e in self.out_edges(v) {
            let rec = self.edge(e);
            if rec.infinite_family {
                res.infinite.push(rec.id.clone());
            } else {
                res.finite.push(rec.id.clone());
            }
        }
        res
    }

    pub fn is_boundary(&self, v: VertexIdx) -> bool {
        self.boundary.contains(&v)
    }

    pub fn boundary(&self) -> impl Iterator<Item = VertexIdx> + '_ {
        self.boundary.iter().copied()
    }

    pub fn is_sink(&self, v: VertexIdx) -> bool {
        self.out[v.index()].is_empty()
    }

    pub fn is_source(&self, v: VertexIdx) -> bool {
        self.inc[v.index()].is_empty()
    }

    /// Real sinks: boundary vertices are excluded.
    pub fn sinks(&self) -> impl Iterator<Item = VertexIdx> + '_ {
        self.vertices()
            .filter(move |&v| self.is_sink(v) && !self.is_boundary(v))
    }

    pub fn is_infinite_emitter(&self, v: VertexIdx) -> bool {
        self.out[v.index()]
            .iter()
            .any(|&e| self.edges[e.index()].infinite_family)
    }

    pub fn infinite_emitters(&self) -> impl Iterator<Item = VertexIdx> + '_ {
        self.vertices().filter(move |&v| self.is_infinite_emitter(v))
    }

    pub fn is_row_finite(&self) -> bool {
        self.edges.iter().all(|e| !e.infinite_family)
    }

    /// Rebuilds this graph with extra vertices/edges; used to derive
    /// variants such as "the same graph plus a sink".
    pub fn to_builder(&self) -> FiniteGraphBuilder {
        let mut b = FiniteGraphBuilder::new();
        for v in &self.vertices {
            b.add_vertex(v.clone());
        }
        for e in &self.edges {
            let (s, d) = (self.vertex(e.src).clone(), self.vertex(e.dst).clone());
            if e.infinite_family {
                b.add_infinite_family(s, d);
            } else {
                b.add_edge(e.id.clone(), s, d);
            }
        }
        for &v in &self.boundary {
            b.add_boundary(self.vertex(v).clone());
        }
        b
    }
}
