//! Proper 4-colourings: representation, enumeration, equality up to colour
//! permutation, canonical forms, and pole normalization.
//!
//! A colouring is stored packed, 2 bits per vertex in dense vertex order,
//! with the first vertex in the highest bits so that integer comparison of
//! the packed word is exactly lexicographic comparison of the colour
//! sequence. Properness is enforced at construction and preserved by every
//! operation in this crate.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::polar::{PolarTriangulation, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColouringError {
    #[error("colour {0} is outside 1..=4")]
    BadColour(u8),
    #[error("expected {expected} colours, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("assignment is missing vertex {0}")]
    MissingVertex(VertexId),
    #[error("assignment names vertex {0} which is not in the host graph")]
    UnknownVertex(VertexId),
    #[error("adjacent vertices {0} and {1} both have colour {2}")]
    Improper(VertexId, VertexId, u8),
    #[error("colourings live on different host graphs")]
    HostMismatch,
    #[error("operation requires the full graph but the host is truncated")]
    TruncatedHost,
}

/// A bijection on the colour set {1,2,3,4}.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ColourPermutation {
    /// images[c-1] is the image of colour c.
    images: [u8; 4],
}

impl ColourPermutation {
    pub fn identity() -> Self {
        Self {
            images: [1, 2, 3, 4],
        }
    }

    /// Builds a permutation from the images of colours 1..=4, if bijective.
    pub fn from_images(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &c in &images {
            if !(1..=4).contains(&c) || seen[c as usize - 1] {
                return None;
            }
            seen[c as usize - 1] = true;
        }
        Some(Self { images })
    }

    pub fn apply(&self, colour: u8) -> u8 {
        debug_assert!((1..=4).contains(&colour));
        self.images[colour as usize - 1]
    }

    /// All 24 permutations, ordered lexicographically by image tuple.
    pub fn all() -> Vec<ColourPermutation> {
        fn rec(
            images: &mut [u8; 4],
            used: &mut [bool; 4],
            depth: usize,
            out: &mut Vec<ColourPermutation>,
        ) {
            if depth == 4 {
                out.push(ColourPermutation { images: *images });
                return;
            }
            for c in 1..=4u8 {
                if !used[c as usize - 1] {
                    used[c as usize - 1] = true;
                    images[depth] = c;
                    rec(images, used, depth + 1, out);
                    used[c as usize - 1] = false;
                }
            }
        }
        let mut out = Vec::with_capacity(24);
        rec(&mut [0; 4], &mut [false; 4], 0, &mut out);
        out
    }
}

/// A proper 4-colouring of a host graph.
#[derive(Clone)]
pub struct Colouring {
    host: Arc<PolarTriangulation>,
    /// Packed colours: vertex ix holds colour-1 in bits (126-2ix)..=(127-2ix).
    bits: u128,
}

impl Colouring {
    /// Builds a colouring from a total vertex → colour map, verifying
    /// totality, colour range, and properness.
    pub fn new(
        host: &Arc<PolarTriangulation>,
        assignment: &BTreeMap<VertexId, u8>,
    ) -> Result<Self, ColouringError> {
        for &v in assignment.keys() {
            if host.index_of(v).is_err() {
                return Err(ColouringError::UnknownVertex(v));
            }
        }
        let mut colours = Vec::with_capacity(host.vertex_count());
        for v in host.vertices() {
            let &c = assignment.get(&v).ok_or(ColouringError::MissingVertex(v))?;
            colours.push(c);
        }
        Self::from_slice(host, &colours)
    }

    /// Builds a colouring from colours listed in dense vertex order.
    pub fn from_slice(
        host: &Arc<PolarTriangulation>,
        colours: &[u8],
    ) -> Result<Self, ColouringError> {
        if colours.len() != host.vertex_count() {
            return Err(ColouringError::WrongLength {
                expected: host.vertex_count(),
                got: colours.len(),
            });
        }
        let mut bits = 0u128;
        for (ix, &c) in colours.iter().enumerate() {
            if !(1..=4).contains(&c) {
                return Err(ColouringError::BadColour(c));
            }
            bits |= u128::from(c - 1) << shift(ix);
        }
        let colouring = Self {
            host: Arc::clone(host),
            bits,
        };
        if let Some((x, y)) = colouring.properness_violation() {
            return Err(ColouringError::Improper(
                host.vertex_at(x),
                host.vertex_at(y),
                colouring.colour_at(x),
            ));
        }
        Ok(colouring)
    }

    pub fn host(&self) -> &Arc<PolarTriangulation> {
        &self.host
    }

    pub fn colour(&self, vertex: VertexId) -> Result<u8, ColouringError> {
        let ix = self
            .host
            .index_of(vertex)
            .map_err(|_| ColouringError::UnknownVertex(vertex))?;
        Ok(self.colour_at(ix))
    }

    /// Colours in dense vertex order.
    pub fn colour_sequence(&self) -> Vec<u8> {
        (0..self.host.vertex_count())
            .map(|ix| self.colour_at(ix))
            .collect()
    }

    /// Number of vertices of each colour, indexed by colour-1.
    pub fn colour_counts(&self) -> [usize; 4] {
        let mut counts = [0usize; 4];
        for ix in 0..self.host.vertex_count() {
            counts[self.colour_at(ix) as usize - 1] += 1;
        }
        counts
    }

    pub fn apply_permutation(&self, p: &ColourPermutation) -> Colouring {
        let mut bits = 0u128;
        for ix in 0..self.host.vertex_count() {
            bits |= u128::from(p.apply(self.colour_at(ix)) - 1) << shift(ix);
        }
        Colouring {
            host: Arc::clone(&self.host),
            bits,
        }
    }

    /// The lexicographically least colouring among the 24 permuted variants.
    /// Canonical forms of A and B agree exactly when `are_equal(A, B)`.
    pub fn canonicalize(&self) -> Colouring {
        ColourPermutation::all()
            .iter()
            .map(|p| self.apply_permutation(p))
            .min()
            .expect("permutation set is non-empty")
    }

    /// Renames colours so pole a gets 1 and pole b gets 2 (both poles get 1
    /// when they share a colour); among the qualifying permutations the
    /// lexicographically least result is returned, making this idempotent.
    pub fn normalize_poles(&self) -> Result<Colouring, ColouringError> {
        if self.host.is_truncated() {
            return Err(ColouringError::TruncatedHost);
        }
        let ca = self.colour(VertexId::PoleA).expect("full host has pole a");
        let cb = self.colour(VertexId::PoleB).expect("full host has pole b");
        Ok(ColourPermutation::all()
            .iter()
            .filter(|p| p.apply(ca) == 1 && (ca == cb || p.apply(cb) == 2))
            .map(|p| self.apply_permutation(p))
            .min()
            .expect("a permutation sending the pole colours to 1, 2 always exists"))
    }

    /// JSON object {vertex-id: colour} with keys in dense vertex order.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (ix, v) in self.host.vertices().into_iter().enumerate() {
            map.insert(v.to_string(), Value::from(self.colour_at(ix)));
        }
        Value::Object(map)
    }

    pub(crate) fn colour_at(&self, ix: usize) -> u8 {
        (self.bits >> shift(ix) & 0b11) as u8 + 1
    }

    pub(crate) fn with_bits(&self, bits: u128) -> Colouring {
        Colouring {
            host: Arc::clone(&self.host),
            bits,
        }
    }

    pub(crate) fn raw_bits(&self) -> u128 {
        self.bits
    }

    pub(crate) fn properness_violation(&self) -> Option<(usize, usize)> {
        self.host
            .edge_ix_list()
            .iter()
            .find(|&&(x, y)| self.colour_at(x) == self.colour_at(y))
            .copied()
    }

    fn key(&self) -> (usize, bool, u128) {
        (self.host.n(), self.host.is_truncated(), self.bits)
    }
}

pub(crate) fn shift(ix: usize) -> u32 {
    debug_assert!(ix < 64);
    126 - 2 * ix as u32
}

impl PartialEq for Colouring {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Colouring {}

impl PartialOrd for Colouring {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Colouring {
    fn cmp(&self, other: &Self) -> Ordering {
        // The packed word compares lexicographically in vertex order.
        self.key().cmp(&other.key())
    }
}

impl Hash for Colouring {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Debug for Colouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (ix, v) in self.host.vertices().into_iter().enumerate() {
            if ix > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", v, self.colour_at(ix))?;
        }
        write!(f, "}}")
    }
}

/// True when some colour permutation carries B onto A.
pub fn are_equal(a: &Colouring, b: &Colouring) -> Result<bool, ColouringError> {
    if a.host.n() != b.host.n() || a.host.is_truncated() != b.host.is_truncated() {
        return Err(ColouringError::HostMismatch);
    }
    Ok(ColourPermutation::all()
        .iter()
        .any(|p| b.apply_permutation(p) == *a))
}

#[derive(PartialEq, Eq, Clone, Copy)]
pub(crate) enum Control {
    Continue,
    Stop,
}

/// Streaming enumeration of all proper labeled colourings; `visit` sees them
/// in ascending packed order and may stop early.
pub(crate) fn for_each_proper_colouring<F>(host: &Arc<PolarTriangulation>, mut visit: F)
where
    F: FnMut(&Colouring) -> Control,
{
    fn rec<F: FnMut(&Colouring) -> Control>(
        depth: usize,
        earlier: &[Vec<usize>],
        colours: &mut [u8],
        scratch: &mut Colouring,
        visit: &mut F,
    ) -> Control {
        if depth == colours.len() {
            let mut bits = 0u128;
            for (ix, &c) in colours.iter().enumerate() {
                bits |= u128::from(c - 1) << shift(ix);
            }
            scratch.bits = bits;
            return visit(scratch);
        }
        for c in 1..=4u8 {
            if earlier[depth].iter().all(|&j| colours[j] != c) {
                colours[depth] = c;
                if rec(depth + 1, earlier, colours, scratch, visit) == Control::Stop {
                    return Control::Stop;
                }
            }
        }
        Control::Continue
    }

    let count = host.vertex_count();
    let earlier: Vec<Vec<usize>> = (0..count)
        .map(|ix| {
            host.adjacency_row(ix)
                .iter()
                .copied()
                .filter(|&j| j < ix)
                .collect()
        })
        .collect();
    let mut colours = vec![0u8; count];
    let mut scratch = Colouring {
        host: Arc::clone(host),
        bits: 0,
    };
    rec(0, &earlier, &mut colours, &mut scratch, &mut visit);
}

/// Every proper labeled 4-colouring of the host, by backtracking over the
/// dense vertex order with colours tried in ascending order. The result is
/// therefore sorted and deterministic.
pub fn enumerate_proper_colourings(host: &Arc<PolarTriangulation>) -> Vec<Colouring> {
    let mut out = Vec::new();
    for_each_proper_colouring(host, |c| {
        out.push(c.clone());
        Control::Continue
    });
    assert!(
        !out.is_empty(),
        "a polar triangulation always admits proper 4-colourings"
    );
    out
}

/// The sorted set of canonical representatives: one colouring per
/// permutation-equivalence class.
pub fn distinct_colourings(host: &Arc<PolarTriangulation>) -> Vec<Colouring> {
    let mut out: Vec<Colouring> = enumerate_proper_colourings(host)
        .iter()
        .map(Colouring::canonicalize)
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::PolarTriangulation;

    fn host(n: usize) -> Arc<PolarTriangulation> {
        Arc::new(PolarTriangulation::build(n).unwrap())
    }

    #[test]
    fn labeled_counts_match_frozen_oracle_values() {
        assert_eq!(enumerate_proper_colourings(&host(5)).len(), 240);
        assert_eq!(enumerate_proper_colourings(&host(6)).len(), 480);
    }

    #[test]
    fn distinct_counts_match_frozen_oracle_values() {
        assert_eq!(distinct_colourings(&host(5)).len(), 10);
        assert_eq!(distinct_colourings(&host(6)).len(), 20);
    }

    #[test]
    fn enumeration_is_sorted_and_proper() {
        let all = enumerate_proper_colourings(&host(5));
        for c in &all {
            assert!(c.properness_violation().is_none());
        }
        for pair in all.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn enumeration_is_deterministic_across_runs() {
        let h = host(6);
        let first: Vec<u128> = enumerate_proper_colourings(&h)
            .iter()
            .map(|c| c.bits)
            .collect();
        let second: Vec<u128> = enumerate_proper_colourings(&h)
            .iter()
            .map(|c| c.bits)
            .collect();
        assert_eq!(first, second);
    }

    #[test]
    fn construction_rejects_improper_and_partial_input() {
        let h = host(5);
        let mut assignment = BTreeMap::new();
        for v in h.vertices() {
            assignment.insert(v, 1u8);
        }
        assert!(matches!(
            Colouring::new(&h, &assignment).unwrap_err(),
            ColouringError::Improper(..)
        ));
        assignment.remove(&VertexId::RingB(4));
        assert_eq!(
            Colouring::new(&h, &assignment).unwrap_err(),
            ColouringError::MissingVertex(VertexId::RingB(4))
        );
        assert_eq!(
            Colouring::from_slice(&h, &[1u8; 11]).unwrap_err(),
            ColouringError::WrongLength {
                expected: 12,
                got: 11
            }
        );
        assert_eq!(
            Colouring::from_slice(&h, &[5u8; 12]).unwrap_err(),
            ColouringError::BadColour(5)
        );
    }

    #[test]
    fn are_equal_closes_over_all_permutations() {
        let h = host(5);
        let a = enumerate_proper_colourings(&h).into_iter().next().unwrap();
        assert!(are_equal(&a, &a).unwrap());
        for p in ColourPermutation::all() {
            assert!(are_equal(&a, &a.apply_permutation(&p)).unwrap());
        }
    }

    #[test]
    fn are_equal_rejects_host_mismatch() {
        let a = enumerate_proper_colourings(&host(5))
            .into_iter()
            .next()
            .unwrap();
        let b = enumerate_proper_colourings(&host(6))
            .into_iter()
            .next()
            .unwrap();
        assert_eq!(are_equal(&a, &b).unwrap_err(), ColouringError::HostMismatch);
    }

    #[test]
    fn canonicalize_is_idempotent_and_starts_at_colour_1() {
        let h = host(6);
        for a in enumerate_proper_colourings(&h).iter().take(200) {
            let c = a.canonicalize();
            assert_eq!(c.canonicalize(), c);
            assert_eq!(c.colour(VertexId::PoleA).unwrap(), 1);
            assert!(are_equal(&c, a).unwrap());
        }
    }

    #[test]
    fn orbit_sizes_sum_to_labeled_count() {
        let h = host(5);
        let labeled = enumerate_proper_colourings(&h);
        let mut orbit_sizes: BTreeMap<u128, usize> = BTreeMap::new();
        for a in &labeled {
            *orbit_sizes.entry(a.canonicalize().bits).or_default() += 1;
        }
        assert_eq!(orbit_sizes.values().sum::<usize>(), labeled.len());
        for &size in orbit_sizes.values() {
            assert_eq!(24 % size, 0);
        }
    }

    #[test]
    fn normalize_poles_fixes_pole_colours() {
        let h = host(6);
        for a in enumerate_proper_colourings(&h).iter().take(300) {
            let norm = a.normalize_poles().unwrap();
            let ca = a.colour(VertexId::PoleA).unwrap();
            let cb = a.colour(VertexId::PoleB).unwrap();
            assert_eq!(norm.colour(VertexId::PoleA).unwrap(), 1);
            if ca == cb {
                assert_eq!(norm.colour(VertexId::PoleB).unwrap(), 1);
            } else {
                assert_eq!(norm.colour(VertexId::PoleB).unwrap(), 2);
            }
            assert_eq!(norm.normalize_poles().unwrap(), norm);
            assert!(are_equal(&norm, a).unwrap());
        }
    }

    #[test]
    fn normalize_poles_rejects_truncated_host() {
        let g5 = PolarTriangulation::build(5).unwrap();
        let h5 = Arc::new(g5.remove_pole(VertexId::PoleB).unwrap());
        let a = enumerate_proper_colourings(&h5).into_iter().next().unwrap();
        assert_eq!(
            a.normalize_poles().unwrap_err(),
            ColouringError::TruncatedHost
        );
    }

    #[test]
    fn json_serialization_lists_vertices_in_dense_order() {
        let h = host(5);
        let a = enumerate_proper_colourings(&h).into_iter().next().unwrap();
        let v = a.to_json();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            ["a", "u0", "u1", "u2", "u3", "u4", "b", "v0", "v1", "v2", "v3", "v4"]
        );
        assert_eq!(v["a"], a.colour(VertexId::PoleA).unwrap());
    }

    #[test]
    fn permutation_set_has_24_distinct_elements() {
        let all = ColourPermutation::all();
        assert_eq!(all.len(), 24);
        assert_eq!(all[0], ColourPermutation::identity());
        assert!(ColourPermutation::from_images([1, 1, 3, 4]).is_none());
        assert!(ColourPermutation::from_images([0, 2, 3, 4]).is_none());
    }
}
