//! Dimer configurations, boundary conditions, weights and the brute-force
//! partition functions.

use crate::error::{DimerError, Result};
use crate::gf2::BitVec;
use crate::rational::{self, Rational};
use crate::surface_graph::{HomologyClass, SurfaceGraph, Variant};
use num_traits::{One, Zero};
use rand::Rng;

/// Set of graph edges, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimerConfiguration {
    pub edges: Vec<usize>,
}

/// Matched boundary vertices, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryCondition {
    pub matched: Vec<usize>,
}

impl DimerConfiguration {
    pub fn new(mut edges: Vec<usize>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        DimerConfiguration { edges }
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn chain(&self, g: &SurfaceGraph) -> BitVec {
        BitVec::from_indices(g.n_edges(), self.edges.iter().copied())
    }

    /// Partner half-edge at each vertex (leaving the vertex), if matched.
    pub fn matching_half_edges(&self, g: &SurfaceGraph) -> Vec<Option<usize>> {
        let mut at = vec![None; g.n_vertices()];
        for &e in &self.edges {
            for h in g.halves(e) {
                at[g.vertex(h)] = Some(h);
            }
        }
        at
    }

    pub fn boundary(&self, g: &SurfaceGraph) -> BoundaryCondition {
        let mut matched: Vec<usize> = self
            .edges
            .iter()
            .flat_map(|&e| {
                let (a, b) = g.endpoints(e);
                [a, b]
            })
            .filter(|&v| g.is_boundary_vertex(v))
            .collect();
        matched.sort_unstable();
        BoundaryCondition { matched }
    }

    pub fn validate(&self, g: &SurfaceGraph) -> Result<()> {
        let mut cover = vec![0; g.n_vertices()];
        for &e in &self.edges {
            if e >= g.n_edges() {
                return Err(DimerError::UnknownEdge(e));
            }
            if g.is_boundary_edge(e) {
                return Err(DimerError::BoundaryEdge(e));
            }
            let (a, b) = g.endpoints(e);
            cover[a] += 1;
            cover[b] += 1;
        }
        for v in 0..g.n_vertices() {
            let ok = if g.is_boundary_vertex(v) { cover[v] <= 1 } else { cover[v] == 1 };
            if !ok {
                return Err(DimerError::BoundaryMismatch);
            }
        }
        Ok(())
    }
}

impl BoundaryCondition {
    pub fn new(mut matched: Vec<usize>) -> Self {
        matched.sort_unstable();
        matched.dedup();
        BoundaryCondition { matched }
    }

    pub fn is_matched(&self, v: usize) -> bool {
        self.matched.binary_search(&v).is_ok()
    }

    /// Vertices that every configuration with this condition covers, in
    /// vertex order.
    pub fn matched_vertices(&self, g: &SurfaceGraph) -> Vec<usize> {
        (0..g.n_vertices())
            .filter(|&v| !g.is_boundary_vertex(v) || self.is_matched(v))
            .collect()
    }

    /// All subsets of the boundary vertices, in binary counting order.
    pub fn all(g: &SurfaceGraph) -> Vec<BoundaryCondition> {
        let bv = g.boundary_vertices();
        (0u64..1 << bv.len())
            .map(|m| {
                BoundaryCondition::new(
                    bv.iter()
                        .enumerate()
                        .filter(|(i, _)| m >> i & 1 == 1)
                        .map(|(_, &v)| v)
                        .collect(),
                )
            })
            .collect()
    }
}

/// Positive weight per edge; boundary edges carry weight 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    values: Vec<Rational>,
}

impl WeightSystem {
    pub fn unit(g: &SurfaceGraph) -> Self {
        WeightSystem {
            values: vec![Rational::one(); g.n_edges()],
        }
    }

    pub fn from_values(g: &SurfaceGraph, values: Vec<Rational>) -> Result<Self> {
        if values.len() != g.n_edges() {
            return Err(DimerError::Parse(format!(
                "expected {} weights, got {}",
                g.n_edges(),
                values.len()
            )));
        }
        let mut w = WeightSystem { values };
        for e in 0..g.n_edges() {
            if g.is_boundary_edge(e) {
                w.values[e] = Rational::one();
            } else if !rational::is_positive(&w.values[e]) {
                return Err(DimerError::Parse(format!("weight of edge {e} is not positive")));
            }
        }
        Ok(w)
    }

    /// Weights drawn from small fractions p/q with 1 <= p <= 7, 1 <= q <= 5.
    pub fn random<R: Rng>(g: &SurfaceGraph, rng: &mut R) -> Self {
        let values = (0..g.n_edges())
            .map(|e| {
                if g.is_boundary_edge(e) {
                    Rational::one()
                } else {
                    rational::frac(rng.gen_range(1..=7), rng.gen_range(1..=5))
                }
            })
            .collect();
        WeightSystem { values }
    }

    pub fn get(&self, e: usize) -> &Rational {
        &self.values[e]
    }

    pub fn set(&mut self, e: usize, value: Rational) {
        self.values[e] = value;
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn weight(&self, d: &DimerConfiguration) -> Rational {
        d.edges.iter().map(|&e| self.values[e].clone()).product()
    }
}

/// Positive scalar per vertex acting on weights by
/// `(s w)(e) = s(e+) w(e) s(e-)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeElement {
    pub values: Vec<Rational>,
}

pub fn gauge_act(g: &SurfaceGraph, s: &GaugeElement, w: &WeightSystem) -> WeightSystem {
    let values = (0..g.n_edges())
        .map(|e| {
            if g.is_boundary_edge(e) {
                return Rational::one();
            }
            let (a, b) = g.endpoints(e);
            &s.values[a] * w.get(e) * &s.values[b]
        })
        .collect();
    WeightSystem { values }
}

/// All configurations, optionally restricted to one boundary condition.
/// Branches on the lowest uncovered vertex; output order is deterministic.
pub fn enumerate(g: &SurfaceGraph, bc: Option<&BoundaryCondition>) -> Vec<DimerConfiguration> {
    let nv = g.n_vertices();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for e in g.graph_edges() {
        let (a, b) = g.endpoints(e);
        adj[a].push((e, b));
        adj[b].push((e, a));
    }
    let mut state = Search {
        g,
        bc,
        adj,
        covered: vec![false; nv],
        skipped: vec![false; nv],
        current: Vec::new(),
        out: Vec::new(),
    };
    state.run(0);
    state.out
}

struct Search<'a> {
    g: &'a SurfaceGraph,
    bc: Option<&'a BoundaryCondition>,
    adj: Vec<Vec<(usize, usize)>>,
    covered: Vec<bool>,
    skipped: Vec<bool>,
    current: Vec<usize>,
    out: Vec<DimerConfiguration>,
}

impl Search<'_> {
    fn may_match(&self, v: usize) -> bool {
        !self.g.is_boundary_vertex(v) || self.bc.is_none_or(|bc| bc.is_matched(v))
    }

    fn run(&mut self, from: usize) {
        let nv = self.covered.len();
        let Some(v) = (from..nv).find(|&v| !self.covered[v] && !self.skipped[v]) else {
            self.out.push(DimerConfiguration::new(self.current.clone()));
            return;
        };
        let boundary = self.g.is_boundary_vertex(v);
        if boundary && self.bc.is_none_or(|bc| !bc.is_matched(v)) {
            self.skipped[v] = true;
            self.run(v + 1);
            self.skipped[v] = false;
            if self.bc.is_some() {
                return;
            }
        }
        let options = self.adj[v].clone();
        for (e, w) in options {
            if self.covered[w] || self.skipped[w] || !self.may_match(w) {
                continue;
            }
            self.covered[v] = true;
            self.covered[w] = true;
            self.current.push(e);
            self.run(v + 1);
            self.current.pop();
            self.covered[v] = false;
            self.covered[w] = false;
        }
    }
}

/// Sum of weights over configurations with the given boundary condition, or
/// over all configurations when `bc` is `None`.
pub fn partition_oracle(
    g: &SurfaceGraph,
    w: &WeightSystem,
    bc: Option<&BoundaryCondition>,
) -> Rational {
    enumerate(g, bc).iter().map(|d| w.weight(d)).sum()
}

pub fn composition_cycle(g: &SurfaceGraph, d: &DimerConfiguration, d2: &DimerConfiguration) -> BitVec {
    d.chain(g).xor(&d2.chain(g))
}

/// Class of the composition cycle in H_1(Σ, ∂Σ; Z/2).
pub fn delta(g: &SurfaceGraph, d: &DimerConfiguration, d2: &DimerConfiguration) -> Result<HomologyClass> {
    g.class_of(&composition_cycle(g, d, d2), Variant::Relative)
}

/// Class of the composition cycle in H_1(Σ; Z/2); defined when both
/// configurations share their boundary condition.
pub fn delta_absolute(
    g: &SurfaceGraph,
    d: &DimerConfiguration,
    d2: &DimerConfiguration,
) -> Result<HomologyClass> {
    g.class_of(&composition_cycle(g, d, d2), Variant::Absolute)
}

/// Sum of w(D) over D with ∂D = ∂D0 whose composition cycle with D0 lies in
/// the absolute class `alpha`.
pub fn partial_partition_oracle(
    g: &SurfaceGraph,
    w: &WeightSystem,
    alpha: &HomologyClass,
    d0: &DimerConfiguration,
) -> Result<Rational> {
    if alpha.variant != Variant::Absolute || alpha.coords.len() != g.b1() {
        return Err(DimerError::WrongClass);
    }
    let bc = d0.boundary(g);
    let mut z = Rational::zero();
    for d in enumerate(g, Some(&bc)) {
        if delta_absolute(g, &d, d0)? == *alpha {
            z += w.weight(&d);
        }
    }
    Ok(z)
}

/// Sum of w(D) over D with ∂D = ∂D1 and Δ(D, D1) = beta.
pub fn partial_partition_oracle_relative(
    g: &SurfaceGraph,
    w: &WeightSystem,
    beta: &HomologyClass,
    d1: &DimerConfiguration,
) -> Result<Rational> {
    if beta.variant != Variant::Relative || beta.coords.len() != g.b1() {
        return Err(DimerError::WrongClass);
    }
    let bc = d1.boundary(g);
    let mut z = Rational::zero();
    for d in enumerate(g, Some(&bc)) {
        if delta(g, &d, d1)? == *beta {
            z += w.weight(&d);
        }
    }
    Ok(z)
}

/// Z_{β,D1} computed as the sum of Z_{α,D0} over the absolute classes α
/// mapping to β + Δ(D0, D1).
pub fn relative_from_absolute(
    g: &SurfaceGraph,
    w: &WeightSystem,
    beta: &HomologyClass,
    d0: &DimerConfiguration,
    d1: &DimerConfiguration,
) -> Result<Rational> {
    let target = beta.add(&delta(g, d0, d1)?)?;
    let mut z = Rational::zero();
    for alpha in HomologyClass::all(Variant::Absolute, g.b1()) {
        if g.to_relative(&alpha)? == target {
            z += partial_partition_oracle(g, w, &alpha, d0)?;
        }
    }
    Ok(z)
}

pub fn first_configuration(g: &SurfaceGraph, bc: &BoundaryCondition) -> Result<DimerConfiguration> {
    enumerate(g, Some(bc))
        .into_iter()
        .next()
        .ok_or(DimerError::NoConfiguration)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(&suite::single_edge(), None).len(), 1);
        assert_eq!(enumerate(&suite::theta(), None).len(), 3);
        assert_eq!(enumerate(&suite::four_cycle(), None).len(), 2);
        let disk = suite::edge_disk();
        assert!(enumerate(&disk, Some(&BoundaryCondition::default())).is_empty());
        assert_eq!(enumerate(&disk, None).len(), 1);
    }

    #[test]
    fn four_cycle_partition() {
        let g = suite::four_cycle();
        let vals: Vec<Rational> = (1..=4).map(rational::int).collect();
        let w = WeightSystem::from_values(&g, vals).unwrap();
        assert_eq!(partition_oracle(&g, &w, None), rational::int(3 + 2 * 4));
    }
}
