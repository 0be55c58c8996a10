//! Colouring invariants, counting formulas, special colourings, and the
//! pole-deleted colouring transforms.
//!
//! The invariant vector (a, b, c, d) of a colouring of the full graph counts
//! colour-1 vertices, colour-3 vertices, in-ring edges of the {3,4}
//! subgraph, and cross-ring edges of the {1,2} subgraph, all measured on the
//! pole-normalized form. The d component is preserved by every Kempe change
//! and characterizes the Kempe classes.

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use thiserror::Error;

use crate::colouring::{distinct_colourings, Colouring, ColouringError};
use crate::kempe::{
    bicoloured_components, kempe_neighbours, ordered_vertices, ChainKind, ChainShape,
};
use crate::polar::{EdgeClass, GraphError, PolarTriangulation, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("operation requires the full graph but the host is truncated")]
    TruncatedHost,
    #[error("operation requires the pole-deleted graph but the host is full")]
    FullHost,
    #[error("edge {0}-{1} is not a cross-ring (Type1) edge")]
    NotType1(VertexId, VertexId),
    #[error("transform requires the remaining pole to be coloured 1, found {0}")]
    PoleNotNormalized(u8),
    #[error("transform precondition violated: the {{1,2}} subgraph has an in-ring edge {0}-{1}")]
    Type2EdgeInOneTwo(VertexId, VertexId),
    #[error("no such colouring: n = {n} and k = {k} violate n ≡ 2k (mod 3)")]
    NoSuchColouring { n: usize, k: usize },
    #[error("k = {k} is outside 1..={half} for n = {n}")]
    BadK { n: usize, k: usize, half: usize },
    #[error("b value {b_val} is outside the admissible range {lo}..={hi}")]
    BadBValue { b_val: usize, lo: usize, hi: usize },
    #[error("n = {0} is below 3")]
    BadN(usize),
    #[error("n = {0} is not divisible by 3")]
    NotDivisibleBy3(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Colouring(#[from] ColouringError),
}

/// The four counts (a, b, c, d) of a pole-normalized colouring.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct InvariantVector {
    /// Vertices coloured 1.
    pub a: usize,
    /// Vertices coloured 3.
    pub b: usize,
    /// Type2 edges in the {3,4} subgraph.
    pub c: usize,
    /// Type1 edges in the {1,2} subgraph.
    pub d: usize,
}

impl InvariantVector {
    /// The four linear identities tying the counts to the ring length.
    pub fn satisfies_identities(&self, n: usize) -> bool {
        self.a + self.b == n + 1
            && self.c + self.d == self.b
            && self.a >= 1
            && self.c + 2 * self.d == 2 * self.a - 2
            && 3 * self.b + self.d == 2 * n
            && 3 * self.c + 4 * self.d == 2 * n
    }

    pub fn as_tuple(&self) -> (usize, usize, usize, usize) {
        (self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SingularityTag {
    /// The two facial-triangle apexes of the edge share a colour.
    Singular,
    Nonsingular,
}

fn pair_edge_count(colouring: &Colouring, class: EdgeClass, i: u8, j: u8) -> usize {
    let host = colouring.host();
    host.edge_ix_list()
        .iter()
        .filter(|&&(x, y)| {
            host.class_of_ix(x, y) == class && {
                let (cx, cy) = (colouring.colour_at(x), colouring.colour_at(y));
                (cx == i && cy == j) || (cx == j && cy == i)
            }
        })
        .count()
}

/// The number of Type1 edges whose endpoints are coloured 1 and 2, counted
/// literally on the given colouring (any host). On a pole-normalized
/// colouring of the full graph this is the d component of the invariant
/// vector.
pub fn d_value(colouring: &Colouring) -> usize {
    pair_edge_count(colouring, EdgeClass::Type1, 1, 2)
}

/// The invariant vector of a full-graph colouring, computed on its
/// pole-normalized form. A colouring whose poles share a colour gets the
/// fixed vector (n/3 + 1, 2n/3, 2n/3, 0); such colourings exist only when
/// 3 divides n.
pub fn invariant_vector(colouring: &Colouring) -> Result<InvariantVector, InvariantError> {
    if colouring.host().is_truncated() {
        return Err(InvariantError::TruncatedHost);
    }
    let n = colouring.host().n();
    let norm = colouring.normalize_poles()?;
    if norm.colour(VertexId::PoleB).expect("full host has pole b") == 1 {
        assert_eq!(
            n % 3,
            0,
            "equal-pole colourings exist only when 3 divides n"
        );
        return Ok(InvariantVector {
            a: n / 3 + 1,
            b: 2 * n / 3,
            c: 2 * n / 3,
            d: 0,
        });
    }
    let counts = norm.colour_counts();
    let vector = InvariantVector {
        a: counts[0],
        b: counts[2],
        c: pair_edge_count(&norm, EdgeClass::Type2, 3, 4),
        d: pair_edge_count(&norm, EdgeClass::Type1, 1, 2),
    };
    debug_assert!(vector.satisfies_identities(n));
    Ok(vector)
}

/// True when the colouring's invariant vector satisfies all four identities.
/// A false return signals an implementation bug, not a property of the input.
pub fn check_identities(colouring: &Colouring) -> Result<bool, InvariantError> {
    let n = colouring.host().n();
    Ok(invariant_vector(colouring)?.satisfies_identities(n))
}

/// True when no Kempe change moves the colouring to a different distinct
/// colouring; equivalent to d = 1, which is cross-asserted.
pub fn is_constant_colouring(colouring: &Colouring) -> Result<bool, InvariantError> {
    if colouring.host().is_truncated() {
        return Err(InvariantError::TruncatedHost);
    }
    let constant = kempe_neighbours(colouring, false)
        .iter()
        .all(|b| crate::colouring::are_equal(b, colouring).expect("same host"));
    let d = invariant_vector(colouring)?.d;
    assert_eq!(
        constant,
        d == 1,
        "a colouring is constant exactly when d = 1"
    );
    Ok(constant)
}

/// The outer-ring vertices sharing the remaining pole's colour, in ring
/// order. Defined on the pole-deleted graph; matching against the pole's own
/// colour makes the set independent of colour renaming.
pub fn p_set(colouring: &Colouring) -> Result<Vec<VertexId>, InvariantError> {
    let host = colouring.host();
    if !host.is_truncated() {
        return Err(InvariantError::FullHost);
    }
    let pole = colouring
        .colour(VertexId::PoleA)
        .expect("pole a is present");
    Ok(host
        .ring_b()
        .into_iter()
        .filter(|&v| colouring.colour(v).expect("ring vertex") == pole)
        .collect())
}

/// Singularity of a Type1 edge: every Type1 edge lies in exactly two facial
/// triangles, and the edge is Singular when the two opposite apexes share a
/// colour.
pub fn is_singular(
    colouring: &Colouring,
    x: VertexId,
    y: VertexId,
) -> Result<SingularityTag, InvariantError> {
    let host = colouring.host();
    if host.edge_class(x, y)? != EdgeClass::Type1 {
        return Err(InvariantError::NotType1(x, y));
    }
    let triangles = host.facial_triangles(x, y)?;
    debug_assert_eq!(
        triangles.len(),
        2,
        "a Type1 edge lies in two facial triangles"
    );
    let apex_colour = |tri: &[VertexId; 3]| {
        let apex = tri
            .iter()
            .copied()
            .find(|&v| v != x && v != y)
            .expect("triangle apex");
        colouring.colour(apex).expect("apex is a host vertex")
    };
    if apex_colour(&triangles[0]) == apex_colour(&triangles[1]) {
        Ok(SingularityTag::Singular)
    } else {
        Ok(SingularityTag::Nonsingular)
    }
}

// ---- transforms on the pole-deleted graph ----

/// Transform precondition: pole-deleted host, pole coloured 1, and no Type2
/// edge inside the {1,2} subgraph.
fn transform_pre(colouring: &Colouring) -> Result<(), InvariantError> {
    let host = colouring.host();
    if !host.is_truncated() {
        return Err(InvariantError::FullHost);
    }
    let pole = colouring
        .colour(VertexId::PoleA)
        .expect("pole a is present");
    if pole != 1 {
        return Err(InvariantError::PoleNotNormalized(pole));
    }
    for &(x, y) in host.edge_ix_list() {
        if host.class_of_ix(x, y) == EdgeClass::Type2 {
            let (cx, cy) = (colouring.colour_at(x), colouring.colour_at(y));
            if (cx == 1 || cx == 2) && (cy == 1 || cy == 2) {
                return Err(InvariantError::Type2EdgeInOneTwo(
                    host.vertex_at(x),
                    host.vertex_at(y),
                ));
            }
        }
    }
    Ok(())
}

fn recolour_outer_ring<F>(colouring: &Colouring, rule: F) -> Result<Colouring, InvariantError>
where
    F: Fn(&Colouring, usize, u8) -> Option<u8>,
{
    transform_pre(colouring)?;
    let host = colouring.host();
    let mut colours = colouring.colour_sequence();
    for v in host.ring_b() {
        let ix = host.index_of(v).expect("ring vertex");
        if let Some(new) = rule(colouring, ix, colours[ix]) {
            colours[ix] = new;
        }
    }
    let result = Colouring::from_slice(host, &colours).expect("transform must preserve properness");
    assert_eq!(
        d_value(&result),
        d_value(colouring),
        "transform must preserve d"
    );
    Ok(result)
}

/// Recolours to 2 every outer-ring vertex that is coloured 1 and isolated in
/// the {1,2} subgraph (no neighbour coloured 2).
pub fn lift_plus(colouring: &Colouring) -> Result<Colouring, InvariantError> {
    recolour_outer_ring(colouring, |c, ix, colour| {
        let isolated = c
            .host()
            .adjacency_row(ix)
            .iter()
            .all(|&nb| c.colour_at(nb) != 2);
        (colour == 1 && isolated).then_some(2)
    })
}

/// Recolours to 1 every outer-ring vertex coloured 2.
pub fn lift_minus(colouring: &Colouring) -> Result<Colouring, InvariantError> {
    recolour_outer_ring(colouring, |_, _, colour| (colour == 2).then_some(1))
}

/// Extends `lift_minus` back to the full graph by reinstating pole b with
/// colour 2 (proper, since the recolouring empties the outer ring of 2s).
pub fn bar(colouring: &Colouring) -> Result<Colouring, InvariantError> {
    let minus = lift_minus(colouring)?;
    let n = colouring.host().n();
    let full = Arc::new(PolarTriangulation::build(n)?);
    let truncated_colours = minus.colour_sequence();
    let mut colours = Vec::with_capacity(full.vertex_count());
    colours.extend_from_slice(&truncated_colours[..=n]);
    colours.push(2);
    colours.extend_from_slice(&truncated_colours[n + 1..]);
    let result = Colouring::from_slice(&full, &colours)
        .expect("pole reinstatement must preserve properness");
    assert_eq!(
        d_value(&result),
        d_value(colouring),
        "transform must preserve d"
    );
    Ok(result)
}

/// Restriction of a full-graph colouring to the pole-deleted graph.
pub fn restrict(colouring: &Colouring) -> Result<Colouring, InvariantError> {
    let host = colouring.host();
    if host.is_truncated() {
        return Err(InvariantError::TruncatedHost);
    }
    let n = host.n();
    let truncated = Arc::new(host.remove_pole(VertexId::PoleB)?);
    let full_colours = colouring.colour_sequence();
    let mut colours = Vec::with_capacity(truncated.vertex_count());
    colours.extend_from_slice(&full_colours[..=n]);
    colours.extend_from_slice(&full_colours[n + 2..]);
    Ok(Colouring::from_slice(&truncated, &colours)
        .expect("restriction of a proper colouring is proper"))
}

// ---- special colourings ----

/// The unique (up to colour permutation) colouring with both poles coloured
/// the same: poles 1, inner ring 2,3,4 repeating, outer ring 4,2,3
/// repeating. Requires 3 | n.
pub fn construct_q(host: &Arc<PolarTriangulation>) -> Result<Colouring, InvariantError> {
    if host.is_truncated() {
        return Err(InvariantError::TruncatedHost);
    }
    let n = host.n();
    if n % 3 != 0 {
        return Err(InvariantError::NotDivisibleBy3(n));
    }
    let mut colours = Vec::with_capacity(2 * n + 2);
    colours.push(1);
    colours.extend((0..n).map(|i| [2u8, 3, 4][i % 3]));
    colours.push(1);
    colours.extend((0..n).map(|i| [4u8, 2, 3][i % 3]));
    Ok(Colouring::from_slice(host, &colours).expect("the repeating pattern is proper"))
}

/// A kind-1 path component of a {3,4} subgraph in band orientation: the
/// clockwise traversal visits its Type1 edges at band positions p, p+3,
/// p+6, …; a single-edge path at position p is oriented from w_p to w_{p+1}.
pub(crate) struct OrientedPath {
    pub first_vertex: usize,
    pub last_vertex: usize,
    pub first_edge: (usize, usize),
    pub last_edge: (usize, usize),
}

fn ordered_pair(x: usize, y: usize) -> (usize, usize) {
    (x.min(y), x.max(y))
}

pub(crate) fn orient_kind1_path(host: &PolarTriangulation, mask: u64) -> OrientedPath {
    let walk = ordered_vertices(host, mask);
    debug_assert!(
        walk.len() >= 2 && walk.len() % 2 == 0,
        "kind-1 paths have even order"
    );
    if walk.len() == 2 {
        let p = host
            .band_position(walk[0], walk[1])
            .expect("a single-edge kind-1 path is a Type1 edge");
        let (first, last) = (host.band_vertex(p), host.band_vertex(p + 1));
        let edge = ordered_pair(first, last);
        return OrientedPath {
            first_vertex: first,
            last_vertex: last,
            first_edge: edge,
            last_edge: edge,
        };
    }
    let p1 = host
        .band_position(walk[0], walk[1])
        .expect("end-edge is Type1");
    let p2 = host
        .band_position(walk[2], walk[3])
        .expect("alternation puts Type1 third");
    let clockwise = p2 == (p1 + 3) % host.band_len();
    let w: Vec<usize> = if clockwise {
        walk
    } else {
        walk.into_iter().rev().collect()
    };
    OrientedPath {
        first_vertex: w[0],
        last_vertex: *w.last().unwrap(),
        first_edge: ordered_pair(w[0], w[1]),
        last_edge: ordered_pair(w[w.len() - 2], w[w.len() - 1]),
    }
}

/// True when the pole-normalized colouring's {3,4} subgraph has the shape
/// required of Q_{k,e}: for k = 1 a single kind-1 path with first edge e;
/// for k = n/2 a perfect matching of Type1 edges containing e; otherwise
/// k − 1 single-edge components with e the first of them after the long
/// component in clockwise order.
fn matches_qke_shape(norm: &Colouring, k: usize, e: (usize, usize)) -> bool {
    let host = norm.host();
    let chains = bicoloured_components(norm, 3, 4).expect("pair is valid");
    if chains.len() != k {
        return false;
    }
    let n = host.n();
    let is_t1_edge = |mask: u64| {
        let walk = ordered_vertices(host, mask);
        walk.len() == 2 && host.band_position(walk[0], walk[1]).is_some()
    };
    if k == 1 {
        let chain = &chains[0];
        return chain.shape() == ChainShape::Path
            && chain.kind() == Some(ChainKind::Kind1)
            && orient_kind1_path(host, chain.vertex_mask()).first_edge == e;
    }
    if 2 * k == n {
        return chains.iter().all(|c| is_t1_edge(c.vertex_mask()))
            && chains.iter().any(|c| {
                let walk = ordered_vertices(host, c.vertex_mask());
                ordered_pair(walk[0], walk[1]) == e
            });
    }
    let (singles, longs): (Vec<_>, Vec<_>) = chains.iter().partition(|c| c.order() == 2);
    if singles.len() != k - 1 || longs.len() != 1 {
        return false;
    }
    if !singles.iter().all(|c| is_t1_edge(c.vertex_mask())) {
        return false;
    }
    let long = longs[0];
    if long.shape() != ChainShape::Path || long.kind() != Some(ChainKind::Kind1) {
        return false;
    }
    let band = host.band_len();
    let long_end = {
        let oriented = orient_kind1_path(host, long.vertex_mask());
        host.band_position(oriented.last_edge.0, oriented.last_edge.1)
            .expect("last edge of a kind-1 path is Type1")
    };
    let first_single = singles
        .iter()
        .min_by_key(|c| {
            let walk = ordered_vertices(host, c.vertex_mask());
            let pos = host
                .band_position(walk[0], walk[1])
                .expect("single component is Type1");
            (pos + band - long_end) % band
        })
        .expect("k ≥ 2 leaves at least one single-edge component");
    let walk = ordered_vertices(host, first_single.vertex_mask());
    ordered_pair(walk[0], walk[1]) == e
}

/// Finds (by filtered search over the distinct colourings) a pole-normalized
/// colouring with d = k whose {3,4} subgraph matches the Q_{k,e} shape for
/// the given Type1 edge e. Such a colouring exists exactly when
/// n ≡ 2k (mod 3).
pub fn construct_q_ke(
    host: &Arc<PolarTriangulation>,
    k: usize,
    e: (VertexId, VertexId),
) -> Result<Colouring, InvariantError> {
    if host.is_truncated() {
        return Err(InvariantError::TruncatedHost);
    }
    let n = host.n();
    if k < 1 || 2 * k > n {
        return Err(InvariantError::BadK { n, k, half: n / 2 });
    }
    if (2 * k) % 3 != n % 3 {
        return Err(InvariantError::NoSuchColouring { n, k });
    }
    if host.edge_class(e.0, e.1)? != EdgeClass::Type1 {
        return Err(InvariantError::NotType1(e.0, e.1));
    }
    let e_ix = ordered_pair(
        host.index_of(e.0).expect("edge endpoint"),
        host.index_of(e.1).expect("edge endpoint"),
    );
    for rep in distinct_colourings(host) {
        let norm = rep.normalize_poles()?;
        if d_value(&norm) != k {
            continue;
        }
        if matches_qke_shape(&norm, k, e_ix) {
            return Ok(norm);
        }
    }
    unreachable!("a colouring with the required shape exists whenever n ≡ 2k (mod 3)")
}

// ---- counting formulas ----

fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        BigUint::from(0u32)
    } else {
        num_integer::binomial(BigUint::from(n), BigUint::from(k))
    }
}

fn exact_div(value: BigUint, divisor: usize) -> BigUint {
    let (q, r) = value.div_rem(&BigUint::from(divisor));
    assert_eq!(r, BigUint::from(0u32), "formula division must be exact");
    q
}

/// Number of Kempe classes with all constant colourings merged into one:
/// the number of integers in the closed interval [n/2, 2n/3], asserted equal
/// to its piecewise ⌊n/6⌋ form.
pub fn class_count_formula(n: usize) -> Result<BigUint, InvariantError> {
    if n < 3 {
        return Err(InvariantError::BadN(n));
    }
    let lo = n.div_ceil(2);
    let hi = 2 * n / 3;
    let count = if hi >= lo { hi - lo + 1 } else { 0 };
    let piecewise = if n % 6 == 1 { n / 6 } else { n / 6 + 1 };
    assert_eq!(
        count, piecewise,
        "interval count must match the piecewise form"
    );
    Ok(BigUint::from(count))
}

/// Size of the colouring family with b-value `b_val` (an integer in
/// [n/2, 2n/3)): with d = 2n − 3·b and c = b − d, the count is
/// C(c + d − 1, d − 1) · n · 2^d / d.
pub fn class_size_formula(n: usize, b_val: usize) -> Result<BigUint, InvariantError> {
    if n < 3 {
        return Err(InvariantError::BadN(n));
    }
    let lo = n.div_ceil(2);
    let hi = (2 * n - 1) / 3;
    if b_val < lo || b_val > hi {
        return Err(InvariantError::BadBValue { b_val, lo, hi });
    }
    let d = 2 * n - 3 * b_val;
    let c = b_val - d;
    let term =
        binom((c + d - 1) as u64, (d - 1) as u64) * BigUint::from(n) * (BigUint::from(1u32) << d);
    Ok(exact_div(term, d))
}

/// Total number of distinct colourings: the sum over integers k in
/// [n/2, 2n/3) of C(k, 2n−3k) · n · 2^(2n−3k) / k, plus 4 when 3 | n.
pub fn colouring_count_formula(n: usize) -> Result<BigUint, InvariantError> {
    if n < 3 {
        return Err(InvariantError::BadN(n));
    }
    let lo = n.div_ceil(2);
    let hi = (2 * n - 1) / 3;
    let mut total = BigUint::from(0u32);
    for k in lo..=hi {
        let d = 2 * n - 3 * k;
        let term = binom(k as u64, d as u64) * BigUint::from(n) * (BigUint::from(1u32) << d);
        total += exact_div(term, k);
    }
    if n % 3 == 0 {
        total += BigUint::from(4u32);
    }
    Ok(total)
}

/// Checks that invariant vectors are unchanged by colour permutation.
#[cfg(test)]
pub(crate) fn vector_is_permutation_invariant(colouring: &Colouring) -> bool {
    use crate::colouring::ColourPermutation;
    let reference = invariant_vector(colouring).expect("full host");
    ColourPermutation::all()
        .iter()
        .all(|p| invariant_vector(&colouring.apply_permutation(p)).expect("full host") == reference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{are_equal, enumerate_proper_colourings};
    use crate::polar::{PolarTriangulation, VertexId};

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

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn equal_pole_pattern_has_the_fixed_vector() {
        let v6 = invariant_vector(&construct_q(&host(6)).unwrap()).unwrap();
        assert_eq!(v6.as_tuple(), (3, 4, 4, 0));
        let v9 = invariant_vector(&construct_q(&host(9)).unwrap()).unwrap();
        assert_eq!(v9.as_tuple(), (4, 6, 6, 0));
        assert!(v9.satisfies_identities(9));
        assert!(check_identities(&construct_q(&host(9)).unwrap()).unwrap());
    }

    #[test]
    fn every_pentagonal_colouring_has_d_1_and_valid_identities() {
        let h = host(5);
        for a in enumerate_proper_colourings(&h) {
            let v = invariant_vector(&a).unwrap();
            assert_eq!(v.d, 1);
            assert!(v.satisfies_identities(5));
        }
    }

    #[test]
    fn corrupted_vector_fails_the_identities() {
        let v = invariant_vector(&construct_q(&host(6)).unwrap()).unwrap();
        let corrupted = InvariantVector { a: v.a + 1, ..v };
        assert!(!corrupted.satisfies_identities(6));
    }

    #[test]
    fn vector_is_stable_under_all_colour_permutations() {
        let h = host(6);
        for a in enumerate_proper_colourings(&h).iter().take(100) {
            assert!(vector_is_permutation_invariant(a));
        }
    }

    #[test]
    fn vector_requires_the_full_graph() {
        let h = truncated_host(5);
        let a = enumerate_proper_colourings(&h).into_iter().next().unwrap();
        assert_eq!(
            invariant_vector(&a).unwrap_err(),
            InvariantError::TruncatedHost
        );
        assert_eq!(
            is_constant_colouring(&a).unwrap_err(),
            InvariantError::TruncatedHost
        );
    }

    #[test]
    fn constant_colourings_are_exactly_the_d_1_ones() {
        let h5 = host(5);
        for a in crate::colouring::distinct_colourings(&h5) {
            assert!(is_constant_colouring(&a).unwrap());
        }
        let q = construct_q(&host(6)).unwrap();
        assert!(!is_constant_colouring(&q).unwrap());
        let h8 = host(8);
        let with_d4 = crate::colouring::distinct_colourings(&h8)
            .into_iter()
            .find(|a| invariant_vector(a).unwrap().d == 4)
            .expect("d = 4 colourings exist on the octagonal host");
        assert!(!is_constant_colouring(&with_d4).unwrap());
    }

    #[test]
    fn p_set_counts_outer_ring_vertices_sharing_the_pole_colour() {
        // Restrictions of pole-normalized full-graph colourings have no
        // outer-ring vertex coloured 2, so lift_minus is the identity there
        // and p_set keeps the colour-1 vertices; lift_plus empties all but
        // the cross-ring edge endpoints.
        let h7 = host(7);
        let mut seen = 0;
        for rep in crate::colouring::distinct_colourings(&h7) {
            let norm = rep.normalize_poles().unwrap();
            if invariant_vector(&norm).unwrap().d != 2 {
                continue;
            }
            seen += 1;
            let restricted = restrict(&norm).unwrap();
            assert_eq!(p_set(&lift_minus(&restricted).unwrap()).unwrap().len(), 3);
            assert_eq!(p_set(&lift_plus(&restricted).unwrap()).unwrap().len(), 2);
        }
        assert!(seen > 0, "the heptagonal host has d = 2 colourings");

        let empty = restrict(&construct_q(&host(6)).unwrap()).unwrap();
        assert_eq!(p_set(&empty).unwrap(), Vec::<VertexId>::new());
        let full = construct_q(&host(6)).unwrap();
        assert_eq!(p_set(&full).unwrap_err(), InvariantError::FullHost);
    }

    #[test]
    fn singularity_requires_a_cross_ring_edge() {
        let q = construct_q(&host(6)).unwrap();
        assert_eq!(
            is_singular(&q, VertexId::RingA(0), VertexId::RingA(1)).unwrap_err(),
            InvariantError::NotType1(VertexId::RingA(0), VertexId::RingA(1))
        );
        assert_eq!(
            is_singular(&q, VertexId::PoleA, VertexId::RingA(0)).unwrap_err(),
            InvariantError::NotType1(VertexId::PoleA, VertexId::RingA(0))
        );
    }

    #[test]
    fn interior_edges_of_kind1_paths_are_nonsingular() {
        for n in [5usize, 6] {
            let h = host(n);
            for a in crate::colouring::distinct_colourings(&h) {
                let norm = a.normalize_poles().unwrap();
                for chain in bicoloured_components(&norm, 3, 4).unwrap() {
                    if chain.shape() != ChainShape::Path || chain.order() < 6 {
                        continue;
                    }
                    let walk = ordered_vertices(&h, chain.vertex_mask());
                    for w in walk.windows(2).skip(1).take(walk.len().saturating_sub(3)) {
                        if h.band_position(w[0], w[1]).is_some() {
                            let tag =
                                is_singular(&norm, h.vertex_at(w[0]), h.vertex_at(w[1])).unwrap();
                            assert_eq!(tag, SingularityTag::Nonsingular);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn matching_shaped_colourings_have_pole_coloured_apexes() {
        let h = host(6);
        let e = (VertexId::RingA(0), VertexId::RingB(0));
        let m = construct_q_ke(&h, 3, e).unwrap();
        let chains = bicoloured_components(&m, 3, 4).unwrap();
        assert_eq!(chains.len(), 3);
        for chain in &chains {
            assert_eq!(chain.order(), 2);
            let vs = chain.vertices();
            for tri in h.facial_triangles(vs[0], vs[1]).unwrap() {
                let apex = tri
                    .iter()
                    .copied()
                    .find(|&v| v != vs[0] && v != vs[1])
                    .unwrap();
                assert!(m.colour(apex).unwrap() <= 2);
            }
            // exercise the tag on a matching edge
            is_singular(&m, vs[0], vs[1]).unwrap();
        }
        assert!(chains.iter().any(|c| c.contains(e.0) && c.contains(e.1)));
    }

    #[test]
    fn transforms_preserve_d_and_compose_as_expected() {
        for n in [5usize, 6] {
            let th = truncated_host(n);
            let mut eligible = 0;
            for a in enumerate_proper_colourings(&th) {
                if transform_pre(&a).is_err() {
                    continue;
                }
                eligible += 1;
                let plus = lift_plus(&a).unwrap();
                let minus = lift_minus(&a).unwrap();
                let barred = bar(&a).unwrap();
                assert_eq!(d_value(&plus), d_value(&a));
                assert_eq!(d_value(&minus), d_value(&a));
                assert_eq!(d_value(&barred), d_value(&a));
                assert!(!barred.host().is_truncated());
                assert_eq!(restrict(&barred).unwrap(), minus);
            }
            assert!(
                eligible > 0,
                "eligible colourings exist on the pole-deleted host"
            );
        }
    }

    #[test]
    fn transform_preconditions_are_enforced() {
        let th = truncated_host(5);
        let with_t2 = Colouring::from_slice(&th, &[1, 2, 3, 4, 3, 4, 1, 2, 1, 2, 3]).unwrap();
        assert_eq!(
            lift_plus(&with_t2).unwrap_err(),
            InvariantError::Type2EdgeInOneTwo(VertexId::RingB(0), VertexId::RingB(1))
        );
        let permuted = with_t2.apply_permutation(
            &crate::colouring::ColourPermutation::from_images([3, 2, 1, 4]).unwrap(),
        );
        assert_eq!(
            lift_minus(&permuted).unwrap_err(),
            InvariantError::PoleNotNormalized(3)
        );
        let full = construct_q(&host(6)).unwrap();
        assert_eq!(bar(&full).unwrap_err(), InvariantError::FullHost);
        let back = restrict(&full).unwrap();
        assert_eq!(restrict(&back).unwrap_err(), InvariantError::TruncatedHost);
    }

    #[test]
    fn the_equal_pole_colouring_is_unique_up_to_permutation() {
        let h = host(6);
        let q = construct_q(&h).unwrap();
        let equal_pole: Vec<Colouring> = crate::colouring::distinct_colourings(&h)
            .into_iter()
            .filter(|a| a.colour(VertexId::PoleA).unwrap() == a.colour(VertexId::PoleB).unwrap())
            .collect();
        assert_eq!(equal_pole.len(), 1);
        assert!(are_equal(&equal_pole[0], &q).unwrap());
        assert_eq!(
            construct_q(&host(5)).unwrap_err(),
            InvariantError::NotDivisibleBy3(5)
        );
        assert_eq!(
            construct_q(&truncated_host(6)).unwrap_err(),
            InvariantError::TruncatedHost
        );
    }

    #[test]
    fn shaped_colouring_search_respects_the_residue_condition() {
        let h8 = host(8);
        let e = (VertexId::RingA(2), VertexId::RingB(2));
        assert_eq!(
            construct_q_ke(&h8, 2, e).unwrap_err(),
            InvariantError::NoSuchColouring { n: 8, k: 2 }
        );
        assert_eq!(
            construct_q_ke(&h8, 5, e).unwrap_err(),
            InvariantError::BadK {
                n: 8,
                k: 5,
                half: 4
            }
        );
        assert_eq!(
            construct_q_ke(&h8, 4, (VertexId::RingA(0), VertexId::RingA(1))).unwrap_err(),
            InvariantError::NotType1(VertexId::RingA(0), VertexId::RingA(1))
        );

        let matching = construct_q_ke(&h8, 4, e).unwrap();
        assert_eq!(invariant_vector(&matching).unwrap().d, 4);
        let chains = bicoloured_components(&matching, 3, 4).unwrap();
        assert_eq!(chains.len(), 4);
        assert!(chains.iter().all(|c| c.order() == 2));
        assert!(chains.iter().any(|c| c.contains(e.0) && c.contains(e.1)));
    }

    #[test]
    fn shaped_colouring_search_handles_single_edge_and_path_clauses() {
        let h7 = host(7);
        let e = (VertexId::RingA(3), VertexId::RingB(3));
        let a = construct_q_ke(&h7, 2, e).unwrap();
        assert_eq!(invariant_vector(&a).unwrap().d, 2);
        let chains = bicoloured_components(&a, 3, 4).unwrap();
        assert_eq!(chains.len(), 2);
        let single = chains.iter().find(|c| c.order() == 2).unwrap();
        assert!(single.contains(e.0) && single.contains(e.1));
        let long = chains.iter().find(|c| c.order() > 2).unwrap();
        assert_eq!(long.kind(), Some(ChainKind::Kind1));

        // k = 1 requires n ≡ 2 (mod 3)
        let h5 = host(5);
        let f = (VertexId::RingA(1), VertexId::RingB(0));
        let b = construct_q_ke(&h5, 1, f).unwrap();
        assert_eq!(invariant_vector(&b).unwrap().d, 1);
        let chains = bicoloured_components(&b, 3, 4).unwrap();
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].shape(), ChainShape::Path);
        let oriented = orient_kind1_path(&h5, chains[0].vertex_mask());
        assert_eq!(
            oriented.first_edge,
            ordered_pair(h5.index_of(f.0).unwrap(), h5.index_of(f.1).unwrap())
        );
    }

    #[test]
    fn formulas_match_their_frozen_values() {
        assert_eq!(class_count_formula(6).unwrap(), big(2));
        assert_eq!(class_count_formula(7).unwrap(), big(1));
        assert_eq!(class_count_formula(12).unwrap(), big(3));
        assert_eq!(colouring_count_formula(5).unwrap(), big(10));
        assert_eq!(colouring_count_formula(6).unwrap(), big(20));
        assert_eq!(colouring_count_formula(8).unwrap(), big(48));
        assert_eq!(class_size_formula(8, 4).unwrap(), big(32));
        assert_eq!(class_size_formula(8, 5).unwrap(), big(16));
        assert_eq!(class_count_formula(2).unwrap_err(), InvariantError::BadN(2));
        assert_eq!(
            class_size_formula(8, 6).unwrap_err(),
            InvariantError::BadBValue {
                b_val: 6,
                lo: 4,
                hi: 5
            }
        );
        assert_eq!(
            class_size_formula(8, 3).unwrap_err(),
            InvariantError::BadBValue {
                b_val: 3,
                lo: 4,
                hi: 5
            }
        );
    }

    #[test]
    fn family_sizes_sum_to_the_total_count() {
        for n in 5..=12usize {
            let lo = n.div_ceil(2);
            let hi = (2 * n - 1) / 3;
            let mut total = BigUint::from(0u32);
            for b_val in lo..=hi {
                total += class_size_formula(n, b_val).unwrap();
            }
            if n % 3 == 0 {
                total += BigUint::from(4u32);
            }
            assert_eq!(total, colouring_count_formula(n).unwrap());
        }
    }
}
