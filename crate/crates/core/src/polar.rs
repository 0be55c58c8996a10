//! Construction of the polar triangulation G_n and its pole-deleted graph H_n.
//!
//! The build convention is fixed once so every downstream structure is
//! reproducible: pole `a` is adjacent to all u_i, pole `b` to all v_i, both
//! rings are cycles in increasing index order ("clockwise"), and the band
//! between the rings consists of the edges u_i v_i and u_{i+1} v_i (indices
//! mod n). Faces are derived from that convention rather than recovered by a
//! planar embedding search.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

/// Smallest supported ring length.
pub const MIN_RING: usize = 5;
/// Largest supported ring length: 2n+2 vertices must fit in a 64-bit vertex set.
pub const MAX_RING: usize = 31;

/// A vertex of G_n / H_n. Variant order matches the dense vertex order
/// a, u_0..u_{n-1}, b, v_0..v_{n-1}, so the derived `Ord` agrees with it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VertexId {
    PoleA,
    RingA(usize),
    PoleB,
    RingB(usize),
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::PoleA => write!(f, "a"),
            VertexId::PoleB => write!(f, "b"),
            VertexId::RingA(i) => write!(f, "u{i}"),
            VertexId::RingB(i) => write!(f, "v{i}"),
        }
    }
}

/// Edge classification: Type1 crosses the band (one endpoint per ring),
/// Type2 lies inside a ring, Spoke is incident to a pole.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum EdgeClass {
    Type1,
    Type2,
    Spoke,
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeClass::Type1 => write!(f, "Type1"),
            EdgeClass::Type2 => write!(f, "Type2"),
            EdgeClass::Spoke => write!(f, "Spoke"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("ring length {0} is below the minimum {MIN_RING}")]
    RingTooShort(usize),
    #[error("ring length {0} exceeds the supported maximum {MAX_RING}")]
    RingTooLong(usize),
    #[error("vertex {0} is not present in this graph")]
    UnknownVertex(VertexId),
    #[error("no edge between {0} and {1}")]
    UnknownEdge(VertexId, VertexId),
    #[error("{0} is not a pole")]
    NotAPole(VertexId),
    #[error("graph is already truncated")]
    AlreadyTruncated,
}

/// The polar triangulation G_n, or H_n when `truncated` is set.
///
/// Immutable after construction; all methods are pure queries, so values can
/// be shared freely (typically behind an `Arc`).
pub struct PolarTriangulation {
    n: usize,
    truncated: bool,
    /// Sorted neighbour lists, indexed by dense vertex index.
    adjacency: Vec<Vec<usize>>,
    /// Neighbour bitsets, same indexing.
    adj_mask: Vec<u64>,
    /// All edges as (low, high) dense index pairs, sorted.
    edges: Vec<(usize, usize)>,
    /// Facial 3-cycles, each sorted ascending; list sorted.
    faces: Vec<[usize; 3]>,
}

impl fmt::Debug for PolarTriangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.truncated { "H" } else { "G" };
        write!(
            f,
            "{}_{} ({} vertices, {} edges)",
            name,
            self.n,
            self.vertex_count(),
            self.edge_count()
        )
    }
}

impl PolarTriangulation {
    /// Builds the full graph G_n with the fixed band convention.
    pub fn build(n: usize) -> Result<Self, GraphError> {
        if n < MIN_RING {
            return Err(GraphError::RingTooShort(n));
        }
        if n > MAX_RING {
            return Err(GraphError::RingTooLong(n));
        }
        let vertex_count = 2 * n + 2;
        let a = 0;
        let b = n + 1;
        let u = |i: usize| 1 + i % n;
        let v = |i: usize| n + 2 + i % n;

        let mut edges = Vec::with_capacity(6 * n);
        let mut faces = Vec::with_capacity(4 * n);
        for i in 0..n {
            edges.push(ordered(a, u(i)));
            edges.push(ordered(b, v(i)));
            edges.push(ordered(u(i), u(i + 1)));
            edges.push(ordered(v(i), v(i + 1)));
            edges.push(ordered(u(i), v(i)));
            edges.push(ordered(u(i + 1), v(i)));

            faces.push(triangle(a, u(i), u(i + 1)));
            faces.push(triangle(b, v(i), v(i + 1)));
            faces.push(triangle(u(i), u(i + 1), v(i)));
            faces.push(triangle(u(i + 1), v(i), v(i + 1)));
        }
        let g = Self::assemble(n, false, vertex_count, edges, faces);
        debug_assert_eq!(g.edges.len(), 6 * n);
        debug_assert_eq!(g.faces.len(), 4 * n);
        Ok(g)
    }

    /// Deletes a pole and its incident edges, yielding H_n. Ring order and
    /// the classes of surviving edges are unchanged. By symmetry of the two
    /// poles, deletion is always realized as "remove b": deleting `a`
    /// relabels the rings so the surviving pole is again called `a`.
    pub fn remove_pole(&self, pole: VertexId) -> Result<Self, GraphError> {
        if self.truncated {
            return Err(GraphError::AlreadyTruncated);
        }
        match pole {
            VertexId::PoleA | VertexId::PoleB => {}
            other => return Err(GraphError::NotAPole(other)),
        }
        let n = self.n;
        let vertex_count = 2 * n + 1;
        // Dense layout of H_n: a=0, u_i=1+i, v_i=n+1+i.
        let a = 0;
        let u = |i: usize| 1 + i % n;
        let v = |i: usize| n + 1 + i % n;
        // Deleting PoleA instead of PoleB swaps the roles of the rings. The
        // band convention u_i v_i, u_{i+1} v_i is self-dual under reversing
        // one ring: with u'_i = v_{n-1-i} and v'_i = u_{n-1-i}, edges map to
        // edges, so the same constructor serves both cases.
        let mut edges = Vec::with_capacity(5 * n);
        let mut faces = Vec::with_capacity(3 * n);
        for i in 0..n {
            edges.push(ordered(a, u(i)));
            edges.push(ordered(u(i), u(i + 1)));
            edges.push(ordered(v(i), v(i + 1)));
            edges.push(ordered(u(i), v(i)));
            edges.push(ordered(u(i + 1), v(i)));

            faces.push(triangle(a, u(i), u(i + 1)));
            faces.push(triangle(u(i), u(i + 1), v(i)));
            faces.push(triangle(u(i + 1), v(i), v(i + 1)));
        }
        let g = Self::assemble(n, true, vertex_count, edges, faces);
        debug_assert_eq!(g.edges.len(), 5 * n);
        Ok(g)
    }

    fn assemble(
        n: usize,
        truncated: bool,
        vertex_count: usize,
        mut edges: Vec<(usize, usize)>,
        mut faces: Vec<[usize; 3]>,
    ) -> Self {
        edges.sort_unstable();
        edges.dedup();
        faces.sort_unstable();
        faces.dedup();
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut adj_mask = vec![0u64; vertex_count];
        for &(x, y) in &edges {
            adjacency[x].push(y);
            adjacency[y].push(x);
            adj_mask[x] |= 1 << y;
            adj_mask[y] |= 1 << x;
        }
        for row in &mut adjacency {
            row.sort_unstable();
        }
        Self {
            n,
            truncated,
            adjacency,
            adj_mask,
            edges,
            faces,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All vertices in dense order: a, u_0..u_{n-1}, b, v_0..v_{n-1}
    /// (b omitted when truncated).
    pub fn vertices(&self) -> Vec<VertexId> {
        (0..self.vertex_count())
            .map(|ix| self.vertex_at(ix))
            .collect()
    }

    /// All edges as (VertexId, VertexId) pairs in dense-index order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.edges
            .iter()
            .map(|&(x, y)| (self.vertex_at(x), self.vertex_at(y)))
            .collect()
    }

    /// The ring N_a in clockwise order u_0, u_1, ..., u_{n-1}.
    pub fn ring_a(&self) -> Vec<VertexId> {
        (0..self.n).map(VertexId::RingA).collect()
    }

    /// The ring N_b in clockwise order v_0, v_1, ..., v_{n-1}.
    pub fn ring_b(&self) -> Vec<VertexId> {
        (0..self.n).map(VertexId::RingB).collect()
    }

    pub fn neighbours(&self, vertex: VertexId) -> Result<Vec<VertexId>, GraphError> {
        let ix = self.index_of(vertex)?;
        Ok(self.adjacency[ix]
            .iter()
            .map(|&j| self.vertex_at(j))
            .collect())
    }

    pub fn degree(&self, vertex: VertexId) -> Result<usize, GraphError> {
        Ok(self.adjacency[self.index_of(vertex)?].len())
    }

    pub fn contains_edge(&self, x: VertexId, y: VertexId) -> bool {
        match (self.index_of(x), self.index_of(y)) {
            (Ok(i), Ok(j)) => self.adj_mask[i] >> j & 1 == 1,
            _ => false,
        }
    }

    /// Classifies an existing edge; stable under truncation.
    pub fn edge_class(&self, x: VertexId, y: VertexId) -> Result<EdgeClass, GraphError> {
        let (i, j) = self.edge_indices(x, y)?;
        Ok(self.class_of_ix(i, j))
    }

    /// The facial triangles containing an existing edge. Every edge of the
    /// full graph lies in exactly two; in H_n the N_b ring edges lie in one.
    pub fn facial_triangles(
        &self,
        x: VertexId,
        y: VertexId,
    ) -> Result<Vec<[VertexId; 3]>, GraphError> {
        let (i, j) = self.edge_indices(x, y)?;
        Ok(self
            .faces
            .iter()
            .filter(|f| f.contains(&i) && f.contains(&j))
            .map(|f| {
                [
                    self.vertex_at(f[0]),
                    self.vertex_at(f[1]),
                    self.vertex_at(f[2]),
                ]
            })
            .collect())
    }

    /// All facial 3-cycles.
    pub fn faces(&self) -> Vec<[VertexId; 3]> {
        self.faces
            .iter()
            .map(|f| {
                [
                    self.vertex_at(f[0]),
                    self.vertex_at(f[1]),
                    self.vertex_at(f[2]),
                ]
            })
            .collect()
    }

    // ---- dense index layer (crate-internal) ----

    pub(crate) fn index_of(&self, vertex: VertexId) -> Result<usize, GraphError> {
        let n = self.n;
        let ix = match vertex {
            VertexId::PoleA => Some(0),
            VertexId::RingA(i) if i < n => Some(1 + i),
            VertexId::PoleB if !self.truncated => Some(n + 1),
            VertexId::RingB(i) if i < n => Some(if self.truncated { n + 1 + i } else { n + 2 + i }),
            _ => None,
        };
        ix.ok_or(GraphError::UnknownVertex(vertex))
    }

    pub(crate) fn vertex_at(&self, ix: usize) -> VertexId {
        let n = self.n;
        debug_assert!(ix < self.vertex_count());
        if ix == 0 {
            VertexId::PoleA
        } else if ix <= n {
            VertexId::RingA(ix - 1)
        } else if self.truncated {
            VertexId::RingB(ix - n - 1)
        } else if ix == n + 1 {
            VertexId::PoleB
        } else {
            VertexId::RingB(ix - n - 2)
        }
    }

    pub(crate) fn adjacency_row(&self, ix: usize) -> &[usize] {
        &self.adjacency[ix]
    }

    pub(crate) fn adj_mask_of(&self, ix: usize) -> u64 {
        self.adj_mask[ix]
    }

    pub(crate) fn edge_ix_list(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub(crate) fn class_of_ix(&self, x: usize, y: usize) -> EdgeClass {
        let kind = |ix: usize| match self.vertex_at(ix) {
            VertexId::PoleA | VertexId::PoleB => 0u8,
            VertexId::RingA(_) => 1,
            VertexId::RingB(_) => 2,
        };
        match (kind(x), kind(y)) {
            (0, _) | (_, 0) => EdgeClass::Spoke,
            (p, q) if p == q => EdgeClass::Type2,
            _ => EdgeClass::Type1,
        }
    }

    fn edge_indices(&self, x: VertexId, y: VertexId) -> Result<(usize, usize), GraphError> {
        let i = self.index_of(x)?;
        let j = self.index_of(y)?;
        if self.adj_mask[i] >> j & 1 == 0 {
            return Err(GraphError::UnknownEdge(x, y));
        }
        Ok((i, j))
    }

    // ---- band coordinates ----
    //
    // Position j on the band (0 ≤ j < 2n) denotes the vertex w_j, where
    // w_{2i} = u_i and w_{2i+1} = v_i. The Type1 edge at position j joins
    // w_j and w_{j+1 mod 2n}; traversing positions upward is the clockwise
    // direction shared by both rings.

    pub(crate) fn band_len(&self) -> usize {
        2 * self.n
    }

    pub(crate) fn band_vertex(&self, pos: usize) -> usize {
        let n = self.n;
        let pos = pos % (2 * n);
        if pos % 2 == 0 {
            1 + pos / 2
        } else if self.truncated {
            n + 1 + pos / 2
        } else {
            n + 2 + pos / 2
        }
    }

    /// The two endpoints of the Type1 edge at a band position.
    pub(crate) fn t1_edge_at(&self, pos: usize) -> (usize, usize) {
        ordered(self.band_vertex(pos), self.band_vertex(pos + 1))
    }

    /// Band position of a Type1 edge given by dense indices, if it is one.
    pub(crate) fn band_position(&self, x: usize, y: usize) -> Option<usize> {
        (0..self.band_len()).find(|&p| self.t1_edge_at(p) == ordered(x, y))
    }

    // ---- export ----

    /// Graphviz DOT rendering with class-annotated edges.
    pub fn to_dot(&self) -> String {
        let name = if self.truncated { "H" } else { "G" };
        let mut out = format!("graph {}{} {{\n", name, self.n);
        for v in self.vertices() {
            out.push_str(&format!("  {v};\n"));
        }
        for &(x, y) in &self.edges {
            out.push_str(&format!(
                "  {} -- {} [class={}];\n",
                self.vertex_at(x),
                self.vertex_at(y),
                self.class_of_ix(x, y)
            ));
        }
        out.push_str("}\n");
        out
    }

    /// JSON rendering: vertices in dense order, edges with class tags, faces.
    pub fn to_json(&self) -> Value {
        let vertices: Vec<String> = self.vertices().iter().map(|v| v.to_string()).collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|&(x, y)| {
                json!({
                    "u": self.vertex_at(x).to_string(),
                    "v": self.vertex_at(y).to_string(),
                    "class": self.class_of_ix(x, y).to_string(),
                })
            })
            .collect();
        let faces: Vec<Value> = self
            .faces
            .iter()
            .map(|f| {
                Value::Array(
                    f.iter()
                        .map(|&ix| Value::String(self.vertex_at(ix).to_string()))
                        .collect(),
                )
            })
            .collect();
        json!({
            "n": self.n,
            "truncated": self.truncated,
            "vertex_count": self.vertex_count(),
            "edge_count": self.edge_count(),
            "vertices": vertices,
            "edges": edges,
            "faces": faces,
        })
    }
}

fn ordered(x: usize, y: usize) -> (usize, usize) {
    if x < y {
        (x, y)
    } else {
        (y, x)
    }
}

fn triangle(x: usize, y: usize, z: usize) -> [usize; 3] {
    let mut t = [x, y, z];
    t.sort_unstable();
    t
}
