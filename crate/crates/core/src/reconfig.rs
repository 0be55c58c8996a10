//! The Kempe reconfiguration graph over distinct colourings, its partition
//! into Kempe classes, shortest distances and diameters, and the restricted
//! alignment-distance check for d = 2 colourings.
//!
//! Nodes are canonical colourings; two nodes are adjacent when a single
//! proper Kempe change on one (applied to its canonical representative and
//! canonicalized again) yields the other. Full-chain swaps are colour
//! transpositions and land on the same node, so they contribute no edges.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::colouring::{for_each_proper_colouring, shift, Colouring, Control};
use crate::invariants::{self, d_value, invariant_vector, orient_kind1_path};
use crate::kempe::{apply_change, bicoloured_components, ChainShape};
use crate::polar::{EdgeClass, PolarTriangulation, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReconfigError {
    #[error("node budget exceeded: more than {limit} distinct colourings (stopped at {seen})")]
    BudgetExceeded { limit: usize, seen: usize },
    #[error("colourings are not Kempe equivalent: class d-values {d_a} and {d_b}")]
    NotEquivalent { d_a: usize, d_b: usize },
    #[error("diameter is undefined: the graph has {components} components")]
    Disconnected { components: usize },
    #[error("colouring lives on a different host graph")]
    HostMismatch,
    #[error("operation requires the full graph but the host is truncated")]
    TruncatedHost,
    #[error("alignment check requires d = 2, found d = {0}")]
    NotDTwo(usize),
    #[error("alignment hypothesis not met: no component ordering has matching end colours")]
    NotAligned,
}

/// Resource limits for graph construction.
#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Hard cap on the number of distinct colourings (nodes).
    pub max_nodes: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            max_nodes: 5_000_000,
        }
    }
}

/// Witness for one reconfiguration edge: the Kempe change that realizes it,
/// described relative to the canonical colouring of the edge's lower node.
#[derive(Clone, Debug)]
pub struct MoveWitness {
    pub pair: (u8, u8),
    pub vertices: Vec<VertexId>,
}

/// A Kempe class: one connected component of the reconfiguration graph of a
/// full host, with its shared d-value.
#[derive(Clone, Debug)]
pub struct KempeClass {
    /// Node indices, ascending.
    pub nodes: Vec<usize>,
    pub d: usize,
}

/// The class decomposition of a full host's reconfiguration graph.
#[derive(Clone, Debug)]
pub struct KempeClassPartition {
    /// Classes ordered by their least node index.
    pub classes: Vec<KempeClass>,
    /// Class count with all d = 1 (constant) colourings merged into one.
    pub star_count: usize,
}

impl KempeClassPartition {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.nodes.len()).collect()
    }
}

/// Summary of one reconfiguration graph, serializable to JSON. Diameter is
/// present only when the graph is connected; the bound fields apply to
/// pole-deleted hosts, whose diameters have closed-form bounds.
#[derive(Clone, Debug)]
pub struct ReconfigReport {
    pub n: usize,
    pub truncated: bool,
    pub node_count: usize,
    pub class_sizes: Vec<usize>,
    /// Shared d per class for full hosts; None entries for pole-deleted
    /// hosts, where d is not constant on components.
    pub d_per_class: Vec<Option<usize>>,
    pub star_count: usize,
    pub diameter: Option<usize>,
    pub bound: Option<usize>,
    pub bound_satisfied: Option<bool>,
}

impl ReconfigReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "truncated": self.truncated,
            "node_count": self.node_count,
            "class_sizes": self.class_sizes,
            "d_per_class": self.d_per_class,
            "star_count": self.star_count,
            "diameter": self.diameter,
            "bound": self.bound,
            "bound_satisfied": self.bound_satisfied,
        })
    }
}

/// The reconfiguration graph of a host's distinct colourings.
#[derive(Debug)]
pub struct ReconfigurationGraph {
    host: Arc<PolarTriangulation>,
    nodes: Vec<Colouring>,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize, MoveWitness)>,
}

/// Upper bound on the pole-deleted reconfiguration diameter, by residue:
/// 6⌊n/2⌋ when 3 | n, 9⌊n/2⌋ when n ≡ 2 (mod 3), and 9⌊n/2⌋ + 6⌊n/3⌋ − 2
/// when n ≡ 1 (mod 3).
pub fn hn_diameter_bound(n: usize) -> usize {
    match n % 3 {
        0 => 6 * (n / 2),
        2 => 9 * (n / 2),
        _ => 9 * (n / 2) + 6 * (n / 3) - 2,
    }
}

/// Builds the graph by streaming enumeration: every labeled colouring is
/// canonicalized, the canonical set is the node list, and moves from each
/// canonical node generate the edges. Aborts early when the node count
/// passes the budget.
pub fn build_reconfiguration_graph(
    host: &Arc<PolarTriangulation>,
    options: &BuildOptions,
) -> Result<ReconfigurationGraph, ReconfigError> {
    let mut canonical: BTreeSet<u128> = BTreeSet::new();
    let mut overflow = false;
    for_each_proper_colouring(host, |c| {
        canonical.insert(c.canonicalize().raw_bits());
        if canonical.len() > options.max_nodes {
            overflow = true;
            return Control::Stop;
        }
        Control::Continue
    });
    if overflow {
        return Err(ReconfigError::BudgetExceeded {
            limit: options.max_nodes,
            seen: canonical.len(),
        });
    }

    let bits_list: Vec<u128> = canonical.into_iter().collect();
    let nodes: Vec<Colouring> = bits_list
        .iter()
        .map(|&bits| {
            let colours: Vec<u8> = (0..host.vertex_count())
                .map(|ix| (bits >> shift(ix) & 0b11) as u8 + 1)
                .collect();
            Colouring::from_slice(host, &colours).expect("canonical form is proper")
        })
        .collect();

    let mut edges: Vec<(usize, usize, MoveWitness)> = Vec::new();
    let mut seen_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, node) in nodes.iter().enumerate() {
        for a in 1..=4u8 {
            for b in (a + 1)..=4 {
                let chains = bicoloured_components(node, a, b).expect("pair is valid");
                if chains.len() == 1 {
                    continue; // Full chain: a colour transposition, not an edge
                }
                for chain in &chains {
                    let result = apply_change(node, chain).expect("chain is fresh");
                    let target = result.canonicalize().raw_bits();
                    let j = bits_list
                        .binary_search(&target)
                        .expect("closure under moves");
                    if j == i {
                        continue;
                    }
                    let key = (i.min(j), i.max(j));
                    if seen_pairs.insert(key) {
                        edges.push((
                            key.0,
                            key.1,
                            MoveWitness {
                                pair: chain.colour_pair(),
                                vertices: chain.vertices(),
                            },
                        ));
                    }
                }
            }
        }
    }
    edges.sort_by_key(|&(u, v, _)| (u, v));

    let mut adjacency = vec![Vec::new(); nodes.len()];
    for &(u, v, _) in &edges {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    for row in &mut adjacency {
        row.sort_unstable();
    }

    Ok(ReconfigurationGraph {
        host: Arc::clone(host),
        nodes,
        adjacency,
        edges,
    })
}

impl ReconfigurationGraph {
    pub fn host(&self) -> &Arc<PolarTriangulation> {
        &self.host
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Canonical colourings in ascending order.
    pub fn nodes(&self) -> &[Colouring] {
        &self.nodes
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, MoveWitness)] {
        &self.edges
    }

    pub fn neighbours_of(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    /// Index of a colouring's canonical form among the nodes.
    pub fn node_index(&self, colouring: &Colouring) -> Result<usize, ReconfigError> {
        let h = colouring.host();
        if h.n() != self.host.n() || h.is_truncated() != self.host.is_truncated() {
            return Err(ReconfigError::HostMismatch);
        }
        Ok(self
            .nodes
            .binary_search(&colouring.canonicalize())
            .expect("every proper colouring has a canonical node"))
    }

    /// Connected components as ascending node-index lists, ordered by least
    /// node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.nodes.len()];
        let mut components = Vec::new();
        for start in 0..self.nodes.len() {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(x) = queue.pop_front() {
                comp.push(x);
                for &y in &self.adjacency[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    fn bfs_distances(&self, start: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.nodes.len()];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].expect("visited");
            for &y in &self.adjacency[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    fn class_d(&self, colouring: &Colouring) -> usize {
        if self.host.is_truncated() {
            d_value(colouring)
        } else {
            invariant_vector(colouring).expect("full host").d
        }
    }

    /// Shortest number of proper Kempe changes between two colourings.
    pub fn distance(&self, a: &Colouring, b: &Colouring) -> Result<usize, ReconfigError> {
        let i = self.node_index(a)?;
        let j = self.node_index(b)?;
        self.bfs_distances(i)[j].ok_or_else(|| ReconfigError::NotEquivalent {
            d_a: self.class_d(a),
            d_b: self.class_d(b),
        })
    }

    /// Largest pairwise distance, by breadth-first search from every node.
    pub fn diameter(&self) -> Result<usize, ReconfigError> {
        let components = self.components();
        if components.len() != 1 {
            return Err(ReconfigError::Disconnected {
                components: components.len(),
            });
        }
        let mut best = 0;
        for start in 0..self.nodes.len() {
            for d in self.bfs_distances(start).into_iter().flatten() {
                best = best.max(d);
            }
        }
        Ok(best)
    }

    /// Summary report; classes come from `kempe_classes` on full hosts and
    /// from plain components on pole-deleted ones.
    pub fn report(&self) -> ReconfigReport {
        let n = self.host.n();
        let truncated = self.host.is_truncated();
        let (class_sizes, d_per_class, star_count) = if truncated {
            let components = self.components();
            let sizes: Vec<usize> = components.iter().map(Vec::len).collect();
            let count = components.len();
            (sizes, vec![None; count], count)
        } else {
            let partition = kempe_classes(self).expect("full host");
            let d_list = partition.classes.iter().map(|c| Some(c.d)).collect();
            (partition.class_sizes(), d_list, partition.star_count)
        };
        let diameter = self.diameter().ok();
        let bound = truncated.then(|| hn_diameter_bound(n));
        let bound_satisfied = bound.map(|limit| diameter.is_some_and(|d| d <= limit));
        ReconfigReport {
            n,
            truncated,
            node_count: self.node_count(),
            class_sizes,
            d_per_class,
            star_count,
            diameter,
            bound,
            bound_satisfied,
        }
    }

    /// Graphviz DOT rendering: nodes by index, one line per edge.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let name = if self.host.is_truncated() { "RH" } else { "RG" };
        out.push_str(&format!("graph {}{} {{\n", name, self.host.n()));
        for (i, node) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  c{} [label=\"{}\"];\n", i, colour_word(node)));
        }
        for &(u, v, ref w) in &self.edges {
            out.push_str(&format!(
                "  c{} -- c{} [pair=\"{}{}\"];\n",
                u, v, w.pair.0, w.pair.1
            ));
        }
        out.push_str("}\n");
        out
    }

    /// JSON export: node list (vertex → colour objects), edge list with
    /// witnesses, and the component structure with per-component d where the
    /// host is full.
    pub fn to_json(&self) -> Value {
        let components = self.components();
        let d_list: Vec<Option<usize>> = components
            .iter()
            .map(|comp| (!self.host.is_truncated()).then(|| self.class_d(&self.nodes[comp[0]])))
            .collect();
        json!({
            "n": self.host.n(),
            "truncated": self.host.is_truncated(),
            "nodes": self.nodes.iter().map(Colouring::to_json).collect::<Vec<_>>(),
            "edges": self
                .edges
                .iter()
                .map(|&(u, v, ref w)| {
                    json!({
                        "a": u,
                        "b": v,
                        "pair": [w.pair.0, w.pair.1],
                        "chain": w.vertices.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>(),
            "components": components,
            "d_per_component": d_list,
        })
    }
}

fn colour_word(colouring: &Colouring) -> String {
    colouring
        .colour_sequence()
        .iter()
        .map(u8::to_string)
        .collect()
}

/// Partition of a full host's reconfiguration graph into Kempe classes.
/// Asserts the class structure: d is constant on every class, non-constant
/// classes are in bijection with their d-values, and every d = 1 node is
/// isolated.
pub fn kempe_classes(graph: &ReconfigurationGraph) -> Result<KempeClassPartition, ReconfigError> {
    if graph.host().is_truncated() {
        return Err(ReconfigError::TruncatedHost);
    }
    let mut classes = Vec::new();
    let mut nonconstant_d = BTreeSet::new();
    let mut has_constant = false;
    for comp in graph.components() {
        let d = graph.class_d(&graph.nodes[comp[0]]);
        for &ix in &comp[1..] {
            assert_eq!(
                graph.class_d(&graph.nodes[ix]),
                d,
                "d must be constant on a Kempe class"
            );
        }
        if d == 1 {
            assert_eq!(comp.len(), 1, "d = 1 colourings must be isolated");
            has_constant = true;
        } else {
            assert!(
                nonconstant_d.insert(d),
                "non-constant colourings with equal d must share one class"
            );
        }
        classes.push(KempeClass { nodes: comp, d });
    }
    for (i, class) in classes.iter().enumerate() {
        if class.d == 1 {
            assert!(graph.neighbours_of(class.nodes[0]).is_empty());
        }
        for other in &classes[i + 1..] {
            if class.d != 1 {
                assert_ne!(
                    class.d, other.d,
                    "distinct classes must have distinct d unless constant"
                );
            }
        }
    }
    let star_count = nonconstant_d.len() + usize::from(has_constant);
    Ok(KempeClassPartition {
        classes,
        star_count,
    })
}

/// Result of the restricted alignment-distance measurement for a d = 2
/// colouring: the shortest number of in-ring (Type2) edge swaps needed to
/// reach a colouring whose {3,4} subgraph isolates the prescribed first
/// edge, against the bound ⌊c/2⌋.
#[derive(Clone, Copy, Debug)]
pub struct AlignmentCheck {
    /// Measured swap count; None when no shaped colouring was reachable.
    pub distance: Option<usize>,
    pub bound: usize,
    pub within_bound: bool,
}

/// Checks the collapse of an aligned d = 2 colouring onto a single-edge
/// shape. The colouring's {3,4} subgraph has two kind-1 path components; a
/// role assignment (ξ1, ξ2) is eligible when |ξ1| ≤ |ξ2| and the last vertex
/// of ξ1 shares its colour with the first vertex of ξ2 (both in clockwise
/// band orientation). For every eligible assignment the distance to a
/// colouring isolating ξ1's first edge is measured by breadth-first search
/// over swaps of two-vertex chains whose edge is Type2; the reported
/// distance is the largest over eligible assignments.
pub fn verify_alignment_distance(colouring: &Colouring) -> Result<AlignmentCheck, ReconfigError> {
    let host = colouring.host();
    if host.is_truncated() {
        return Err(ReconfigError::TruncatedHost);
    }
    let vector = invariant_vector(colouring).expect("full host");
    if vector.d != 2 {
        return Err(ReconfigError::NotDTwo(vector.d));
    }
    let norm = colouring.normalize_poles().expect("full host");
    let chains = bicoloured_components(&norm, 3, 4).expect("pair is valid");
    assert_eq!(
        chains.len(),
        2,
        "a d = 2 colouring has two {{3,4}} components"
    );
    for chain in &chains {
        assert_eq!(
            chain.shape(),
            ChainShape::Path,
            "d = 2 components are kind-1 paths"
        );
    }
    let oriented: Vec<invariants::OrientedPath> = chains
        .iter()
        .map(|c| orient_kind1_path(host, c.vertex_mask()))
        .collect();

    let mut eligible_targets = Vec::new();
    for (first, second) in [(0usize, 1usize), (1, 0)] {
        if chains[first].order() > chains[second].order() {
            continue;
        }
        let last_of_first = norm.colour_at(oriented[first].last_vertex);
        let first_of_second = norm.colour_at(oriented[second].first_vertex);
        if last_of_first == first_of_second {
            eligible_targets.push(oriented[first].first_edge);
        }
    }
    if eligible_targets.is_empty() {
        return Err(ReconfigError::NotAligned);
    }

    let bound = vector.c / 2;
    let mut worst: Option<usize> = Some(0);
    for target in eligible_targets {
        match restricted_swap_distance(&norm, target) {
            Some(dist) => worst = worst.map(|w| w.max(dist)),
            None => worst = None,
        }
        if worst.is_none() {
            break;
        }
    }
    Ok(AlignmentCheck {
        distance: worst,
        bound,
        within_bound: worst.is_some_and(|d| d <= bound),
    })
}

/// True when the colouring's {3,4} subgraph has a component that is exactly
/// the given edge.
fn isolates_edge(colouring: &Colouring, edge: (usize, usize)) -> bool {
    let host = colouring.host();
    bicoloured_components(colouring, 3, 4)
        .expect("pair is valid")
        .iter()
        .any(|c| {
            c.order() == 2
                && c.contains(host.vertex_at(edge.0))
                && c.contains(host.vertex_at(edge.1))
        })
}

/// Breadth-first search over labeled colourings where each move swaps the
/// colours of a two-vertex Kempe chain whose edge is Type2.
fn restricted_swap_distance(start: &Colouring, target_edge: (usize, usize)) -> Option<usize> {
    let host = start.host();
    let mut seen = BTreeSet::from([start.raw_bits()]);
    let mut frontier = vec![start.clone()];
    let mut depth = 0;
    loop {
        if frontier.iter().any(|c| isolates_edge(c, target_edge)) {
            return Some(depth);
        }
        let mut next = Vec::new();
        for current in &frontier {
            for i in 1..=4u8 {
                for j in (i + 1)..=4 {
                    for chain in bicoloured_components(current, i, j).expect("pair is valid") {
                        if chain.order() != 2 {
                            continue;
                        }
                        let vs = chain.vertices();
                        if host.edge_class(vs[0], vs[1]).expect("chain edge") != EdgeClass::Type2 {
                            continue;
                        }
                        let moved = apply_change(current, &chain).expect("chain is fresh");
                        if seen.insert(moved.raw_bits()) {
                            next.push(moved);
                        }
                    }
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next;
        depth += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::distinct_colourings;
    use crate::invariants::construct_q;
    use crate::polar::PolarTriangulation;

    fn host(n: usize) -> Arc<PolarTriangulation> {
        Arc::new(PolarTriangulation::build(n).unwrap())
    }

    fn truncated_host(n: usize) -> Arc<PolarTriangulation> {
        Arc::new(
            PolarTriangulation::build(n)
                .unwrap()
                .remove_pole(VertexId::PoleB)
                .unwrap(),
        )
    }

    fn build(h: &Arc<PolarTriangulation>) -> ReconfigurationGraph {
        build_reconfiguration_graph(h, &BuildOptions::default()).unwrap()
    }

    #[test]
    fn pentagonal_graph_is_ten_isolated_nodes() {
        let g = build(&host(5));
        assert_eq!(g.node_count(), 10);
        assert_eq!(g.edge_count(), 0);
        let partition = kempe_classes(&g).unwrap();
        assert_eq!(partition.classes.len(), 10);
        assert!(partition
            .classes
            .iter()
            .all(|c| c.d == 1 && c.nodes.len() == 1));
        assert_eq!(partition.star_count, 1);
    }

    #[test]
    fn hexagonal_graph_has_components_of_sizes_4_and_16() {
        let g = build(&host(6));
        assert_eq!(g.node_count(), 20);
        let partition = kempe_classes(&g).unwrap();
        let mut sizes = partition.class_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![4, 16]);
        let mut ds: Vec<usize> = partition.classes.iter().map(|c| c.d).collect();
        ds.sort_unstable();
        assert_eq!(ds, vec![0, 3]);
        assert_eq!(partition.star_count, 2);
    }

    #[test]
    fn octagonal_graph_separates_constants_from_the_big_class() {
        let g = build(&host(8));
        assert_eq!(g.node_count(), 48);
        let partition = kempe_classes(&g).unwrap();
        let constants = partition.classes.iter().filter(|c| c.d == 1).count();
        assert_eq!(constants, 16);
        let big: Vec<&KempeClass> = partition.classes.iter().filter(|c| c.d != 1).collect();
        assert_eq!(big.len(), 1);
        assert_eq!(big[0].nodes.len(), 32);
        assert_eq!(big[0].d, 4);
        assert_eq!(partition.star_count, 2);
    }

    #[test]
    fn heptagonal_graph_is_one_class() {
        let g = build(&host(7));
        assert_eq!(g.node_count(), 42);
        let partition = kempe_classes(&g).unwrap();
        assert_eq!(partition.class_sizes(), vec![42]);
        assert_eq!(partition.classes[0].d, 2);
        assert_eq!(partition.star_count, 1);
    }

    #[test]
    fn budget_overflow_fails_loudly() {
        let err =
            build_reconfiguration_graph(&host(6), &BuildOptions { max_nodes: 5 }).unwrap_err();
        assert_eq!(err, ReconfigError::BudgetExceeded { limit: 5, seen: 6 });
    }

    #[test]
    fn pole_deleted_graphs_are_connected_within_their_bounds() {
        let cases = [(5usize, 20usize, 18usize), (6, 50, 18), (7, 112, 37)];
        for (n, nodes, bound) in cases {
            let g = build(&truncated_host(n));
            assert_eq!(g.node_count(), nodes);
            assert_eq!(g.components().len(), 1);
            let diameter = g.diameter().unwrap();
            assert!(
                diameter <= bound,
                "diameter {diameter} exceeds bound {bound} at n = {n}"
            );
            assert_eq!(hn_diameter_bound(n), bound);
            let report = g.report();
            assert_eq!(report.diameter, Some(diameter));
            assert_eq!(report.bound, Some(bound));
            assert_eq!(report.bound_satisfied, Some(true));
            assert_eq!(report.class_sizes, vec![nodes]);
        }
    }

    #[test]
    fn frozen_small_diameters() {
        assert_eq!(build(&truncated_host(5)).diameter().unwrap(), 5);
        assert_eq!(build(&truncated_host(6)).diameter().unwrap(), 6);
    }

    #[test]
    fn distance_is_zero_on_self_and_errors_across_classes() {
        let h = host(6);
        let g = build(&h);
        let q = construct_q(&h).unwrap();
        assert_eq!(g.distance(&q, &q).unwrap(), 0);
        let other = distinct_colourings(&h)
            .into_iter()
            .find(|c| invariant_vector(c).unwrap().d == 3)
            .unwrap();
        assert_eq!(
            g.distance(&q, &other).unwrap_err(),
            ReconfigError::NotEquivalent { d_a: 0, d_b: 3 }
        );
        assert!(matches!(
            g.diameter().unwrap_err(),
            ReconfigError::Disconnected { components: 2 }
        ));
        let stranger = distinct_colourings(&host(7)).remove(0);
        assert_eq!(
            g.node_index(&stranger).unwrap_err(),
            ReconfigError::HostMismatch
        );
    }

    #[test]
    fn distances_are_symmetric_inside_a_class() {
        let h = host(6);
        let g = build(&h);
        let nodes: Vec<&Colouring> = g.nodes().iter().collect();
        for a in nodes.iter().take(8) {
            for b in nodes.iter().take(8) {
                match (g.distance(a, b), g.distance(b, a)) {
                    (Ok(x), Ok(y)) => assert_eq!(x, y),
                    (Err(_), Err(_)) => {}
                    _ => panic!("distance symmetry broken"),
                }
            }
        }
    }

    #[test]
    fn every_edge_preserves_d() {
        for n in [6usize, 7, 8] {
            let h = host(n);
            let g = build(&h);
            for &(u, v, _) in g.edges() {
                assert_eq!(
                    invariant_vector(&g.nodes()[u]).unwrap().d,
                    invariant_vector(&g.nodes()[v]).unwrap().d
                );
            }
        }
    }

    #[test]
    fn alignment_distance_is_within_half_c_on_the_heptagonal_host() {
        let h = host(7);
        let mut eligible = 0;
        let mut shaped = 0;
        for rep in distinct_colourings(&h) {
            match verify_alignment_distance(&rep) {
                Ok(check) => {
                    eligible += 1;
                    assert_eq!(check.bound, 1);
                    assert!(
                        check.within_bound,
                        "distance {:?} over bound",
                        check.distance
                    );
                    let chains =
                        bicoloured_components(&rep.normalize_poles().unwrap(), 3, 4).unwrap();
                    if chains.iter().any(|c| c.order() == 2) {
                        shaped += 1;
                        assert_eq!(check.distance, Some(0));
                    }
                }
                Err(ReconfigError::NotAligned) => {}
                Err(other) => panic!("unexpected error: {other}"),
            }
        }
        assert!(eligible > 0, "eligible aligned colourings exist at n = 7");
        assert!(shaped > 0, "already-shaped colourings exist at n = 7");
    }

    #[test]
    fn alignment_check_rejects_wrong_d() {
        let q = construct_q(&host(6)).unwrap();
        assert_eq!(
            verify_alignment_distance(&q).unwrap_err(),
            ReconfigError::NotDTwo(0)
        );
        let h5 = truncated_host(5);
        let a = distinct_colourings(&h5).remove(0);
        assert_eq!(
            verify_alignment_distance(&a).unwrap_err(),
            ReconfigError::TruncatedHost
        );
    }

    #[test]
    fn reports_and_exports_are_shaped_and_deterministic() {
        let h = host(6);
        let g = build(&h);
        let report = g.report();
        assert_eq!(report.n, 6);
        assert!(!report.truncated);
        assert_eq!(report.node_count, 20);
        assert_eq!(report.star_count, 2);
        assert_eq!(report.diameter, None);
        assert_eq!(report.bound, None);
        let json = report.to_json();
        let keys: Vec<&str> = json
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        assert_eq!(
            keys,
            [
                "n",
                "truncated",
                "node_count",
                "class_sizes",
                "d_per_class",
                "star_count",
                "diameter",
                "bound",
                "bound_satisfied"
            ]
        );
        let again = build(&h);
        assert_eq!(g.to_json(), again.to_json());
        assert_eq!(g.to_dot(), again.to_dot());
        assert!(g.to_dot().starts_with("graph RG6 {"));
    }
}
