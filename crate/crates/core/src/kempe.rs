//! Kempe chains and Kempe changes.
//!
//! For a proper colouring A and a colour pair {i,j}, the bicoloured subgraph
//! A(i,j) is the subgraph induced by the vertices coloured i or j. Its
//! connected components are the Kempe chains; swapping i and j on one chain
//! yields another proper colouring (a Kempe change). A chain is Full when it
//! is the whole of A(i,j) — swapping it merely renames colours — and Proper
//! otherwise; a single-vertex chain is trivial.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::colouring::{shift, Colouring};
use crate::polar::{EdgeClass, PolarTriangulation, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KempeError {
    #[error("colour pair ({0}, {1}) is not two distinct colours in 1..=4")]
    BadPair(u8, u8),
    #[error("chain is not a component of the colouring it was applied to")]
    StaleChain,
    #[error("chain and colouring live on different host graphs")]
    HostMismatch,
}

/// Connectivity shape of a chain, as an induced subgraph.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChainShape {
    Singleton,
    Path,
    Cycle,
    /// Branching component (possible only for chains through a pole).
    Other,
}

/// Alternation class of a pole-free chain's edges along its traversal:
/// Kind1 alternates Type1/Type2, Kind2 uses Type2 edges only.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChainKind {
    Kind1,
    Kind2,
    Other,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChainTag {
    /// A proper subset of A(i,j).
    Proper,
    /// The whole of A(i,j); swapping it is a colour transposition.
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ChainClass {
    pub tag: ChainTag,
    /// Single-vertex chain.
    pub trivial: bool,
}

/// One Kempe chain: a maximal connected set of vertices coloured i or j.
#[derive(Clone)]
pub struct KempeChain {
    host: Arc<PolarTriangulation>,
    pair: (u8, u8),
    vertices: u64,
    shape: ChainShape,
    kind: Option<ChainKind>,
}

impl KempeChain {
    /// The colour pair, least colour first.
    pub fn colour_pair(&self) -> (u8, u8) {
        self.pair
    }

    /// Chain vertices in dense vertex order.
    pub fn vertices(&self) -> Vec<VertexId> {
        bits(self.vertices)
            .map(|ix| self.host.vertex_at(ix))
            .collect()
    }

    /// Chain vertices in traversal order: paths from their least-index
    /// endpoint, cycles from their least-index vertex. Only defined for
    /// chains of maximum degree two.
    pub fn walk(&self) -> Vec<VertexId> {
        assert_ne!(
            self.shape,
            ChainShape::Other,
            "branching chains have no walk order"
        );
        ordered_vertices(&self.host, self.vertices)
            .into_iter()
            .map(|ix| self.host.vertex_at(ix))
            .collect()
    }

    /// Number of vertices (the chain's order).
    pub fn order(&self) -> usize {
        self.vertices.count_ones() as usize
    }

    pub fn shape(&self) -> ChainShape {
        self.shape
    }

    /// Alternation kind; None for chains through a pole and for edgeless
    /// singletons, where the notion does not apply.
    pub fn kind(&self) -> Option<ChainKind> {
        self.kind
    }

    pub fn contains(&self, vertex: VertexId) -> bool {
        match self.host.index_of(vertex) {
            Ok(ix) => self.vertices >> ix & 1 == 1,
            Err(_) => false,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pair": [self.pair.0, self.pair.1],
            "vertices": self.vertices().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "shape": format!("{:?}", self.shape),
            "kind": self.kind.map(|k| format!("{:?}", k)),
        })
    }

    pub(crate) fn vertex_mask(&self) -> u64 {
        self.vertices
    }
}

impl fmt::Debug for KempeChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "KempeChain{{({},{}) {:?} kind={:?} {:?}}}",
            self.pair.0,
            self.pair.1,
            self.shape,
            self.kind,
            self.vertices()
        )
    }
}

fn check_pair(i: u8, j: u8) -> Result<(u8, u8), KempeError> {
    if i == j || !(1..=4).contains(&i) || !(1..=4).contains(&j) {
        return Err(KempeError::BadPair(i, j));
    }
    Ok((i.min(j), i.max(j)))
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&ix| mask >> ix & 1 == 1)
}

fn pole_mask(host: &PolarTriangulation) -> u64 {
    let mut mask = 1u64;
    if !host.is_truncated() {
        mask |= 1 << (host.n() + 1);
    }
    mask
}

fn same_host(a: &PolarTriangulation, b: &PolarTriangulation) -> bool {
    a.n() == b.n() && a.is_truncated() == b.is_truncated()
}

/// Bitset of all vertices coloured i or j.
fn marked_mask(a: &Colouring, i: u8, j: u8) -> u64 {
    let mut mask = 0u64;
    for ix in 0..a.host().vertex_count() {
        let c = a.colour_at(ix);
        if c == i || c == j {
            mask |= 1 << ix;
        }
    }
    mask
}

/// Component of `marked` containing `start`, by breadth-first search.
fn component_from(host: &PolarTriangulation, marked: u64, start: usize) -> u64 {
    let mut comp = 1u64 << start;
    let mut frontier = comp;
    while frontier != 0 {
        let mut next = 0u64;
        for ix in bits(frontier) {
            next |= host.adj_mask_of(ix) & marked & !comp;
        }
        comp |= next;
        frontier = next;
    }
    comp
}

/// Vertices of a path or cycle component in traversal order: a path is
/// walked from its least-index endpoint, a cycle from its least-index vertex
/// towards the lesser of its two neighbours.
pub(crate) fn ordered_vertices(host: &PolarTriangulation, mask: u64) -> Vec<usize> {
    let order = mask.count_ones() as usize;
    debug_assert!(order >= 1);
    if order == 1 {
        return vec![mask.trailing_zeros() as usize];
    }
    let degree = |ix: usize| (host.adj_mask_of(ix) & mask).count_ones();
    let start = bits(mask)
        .find(|&ix| degree(ix) == 1)
        .unwrap_or_else(|| mask.trailing_zeros() as usize);
    let mut walk = Vec::with_capacity(order);
    let mut seen = 0u64;
    let mut current = start;
    loop {
        walk.push(current);
        seen |= 1 << current;
        match bits(host.adj_mask_of(current) & mask & !seen).next() {
            Some(next) => current = next,
            None => break,
        }
    }
    debug_assert_eq!(walk.len(), order, "component is not a path or cycle");
    walk
}

/// Edge classes along the traversal; for a cycle the closing edge is last.
fn traversal_classes(host: &PolarTriangulation, walk: &[usize], cyclic: bool) -> Vec<EdgeClass> {
    let mut classes: Vec<EdgeClass> = walk
        .windows(2)
        .map(|w| host.class_of_ix(w[0], w[1]))
        .collect();
    if cyclic {
        classes.push(host.class_of_ix(*walk.last().unwrap(), walk[0]));
    }
    classes
}

fn classify_shape(host: &PolarTriangulation, mask: u64) -> ChainShape {
    if mask.count_ones() == 1 {
        return ChainShape::Singleton;
    }
    let mut ones = 0usize;
    for ix in bits(mask) {
        match (host.adj_mask_of(ix) & mask).count_ones() {
            1 => ones += 1,
            2 => {}
            _ => return ChainShape::Other,
        }
    }
    match ones {
        0 => ChainShape::Cycle,
        2 => ChainShape::Path,
        _ => ChainShape::Other,
    }
}

fn classify_kind(host: &PolarTriangulation, mask: u64, shape: ChainShape) -> Option<ChainKind> {
    if mask & pole_mask(host) != 0 {
        return None;
    }
    match shape {
        ChainShape::Singleton => None,
        ChainShape::Other => Some(ChainKind::Other),
        ChainShape::Path | ChainShape::Cycle => {
            let walk = ordered_vertices(host, mask);
            let classes = traversal_classes(host, &walk, shape == ChainShape::Cycle);
            if classes.iter().all(|&c| c == EdgeClass::Type2) {
                Some(ChainKind::Kind2)
            } else if alternates(&classes, shape == ChainShape::Cycle) {
                Some(ChainKind::Kind1)
            } else {
                Some(ChainKind::Other)
            }
        }
    }
}

/// Strict Type1/Type2 alternation along consecutive edges (and across the
/// wrap-around for cycles).
fn alternates(classes: &[EdgeClass], cyclic: bool) -> bool {
    if classes.iter().any(|&c| c == EdgeClass::Spoke) {
        return false;
    }
    let consecutive = classes.windows(2).all(|w| w[0] != w[1]);
    let wrap = !cyclic || classes.len() < 2 || classes.last() != classes.first();
    consecutive && wrap
}

/// The Kempe chains of A for the colour pair {i,j}, ordered by least vertex.
pub fn bicoloured_components(a: &Colouring, i: u8, j: u8) -> Result<Vec<KempeChain>, KempeError> {
    let pair = check_pair(i, j)?;
    let host = a.host();
    let mut remaining = marked_mask(a, pair.0, pair.1);
    let mut chains = Vec::new();
    while remaining != 0 {
        let start = remaining.trailing_zeros() as usize;
        let comp = component_from(host, remaining, start);
        remaining &= !comp;
        let shape = classify_shape(host, comp);
        let kind = classify_kind(host, comp, shape);
        chains.push(KempeChain {
            host: Arc::clone(host),
            pair,
            vertices: comp,
            shape,
            kind,
        });
    }
    Ok(chains)
}

/// Checks that `chain` is a current component of A for its pair.
fn check_fresh(a: &Colouring, chain: &KempeChain) -> Result<(), KempeError> {
    if !same_host(a.host(), &chain.host) {
        return Err(KempeError::HostMismatch);
    }
    let (i, j) = chain.pair;
    let least = chain.vertices.trailing_zeros() as usize;
    let c = a.colour_at(least);
    if c != i && c != j {
        return Err(KempeError::StaleChain);
    }
    let marked = marked_mask(a, i, j);
    if component_from(a.host(), marked, least) != chain.vertices {
        return Err(KempeError::StaleChain);
    }
    Ok(())
}

/// Swaps the chain's two colours on its vertex set.
pub fn apply_change(a: &Colouring, chain: &KempeChain) -> Result<Colouring, KempeError> {
    check_fresh(a, chain)?;
    let (i, j) = chain.pair;
    let flip = u128::from((i - 1) ^ (j - 1));
    let mut new_bits = a.raw_bits();
    for ix in bits(chain.vertices) {
        new_bits ^= flip << shift(ix);
    }
    let result = a.with_bits(new_bits);
    debug_assert!(result.properness_violation().is_none());
    Ok(result)
}

/// Full/Proper and trivial classification of a current chain of A.
pub fn classify_chain(a: &Colouring, chain: &KempeChain) -> Result<ChainClass, KempeError> {
    check_fresh(a, chain)?;
    let (i, j) = chain.pair;
    let tag = if marked_mask(a, i, j) == chain.vertices {
        ChainTag::Full
    } else {
        ChainTag::Proper
    };
    Ok(ChainClass {
        tag,
        trivial: chain.order() == 1,
    })
}

/// All colourings one Kempe change away from A, over all six colour pairs
/// and all chains; sorted and deduplicated. With `proper_only`, Full chains
/// (pure colour transpositions) are skipped.
pub fn kempe_neighbours(a: &Colouring, proper_only: bool) -> Vec<Colouring> {
    let mut out = Vec::new();
    for i in 1..=4u8 {
        for j in (i + 1)..=4 {
            let chains = bicoloured_components(a, i, j).expect("pair is valid");
            let full = chains.len() == 1;
            for chain in &chains {
                if proper_only && full {
                    continue;
                }
                out.push(apply_change(a, chain).expect("chain is fresh"));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}
