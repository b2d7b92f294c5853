//! Closed walks, their decomposition into simple curves and the intersection
//! pairing computed from left push-offs.

use super::SurfaceGraph;
use crate::error::{DimerError, Result};
use crate::gf2::BitVec;

/// Closed walk given by consecutive half-edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedCurve {
    pub half_edges: Vec<usize>,
}

impl OrientedCurve {
    pub fn new(g: &SurfaceGraph, half_edges: Vec<usize>) -> Result<Self> {
        let n = half_edges.len();
        if n == 0 {
            return Err(DimerError::InvalidCurve("empty walk".into()));
        }
        for i in 0..n {
            let (h, k) = (half_edges[i], half_edges[(i + 1) % n]);
            if h >= g.n_half_edges() || k >= g.n_half_edges() || g.head(h) != g.vertex(k) {
                return Err(DimerError::InvalidCurve(format!(
                    "half-edges at positions {i} and {} are not consecutive",
                    (i + 1) % n
                )));
            }
        }
        Ok(OrientedCurve { half_edges })
    }

    pub fn len(&self) -> usize {
        self.half_edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.half_edges.is_empty()
    }

    pub fn vertices(&self, g: &SurfaceGraph) -> Vec<usize> {
        self.half_edges.iter().map(|&h| g.vertex(h)).collect()
    }

    pub fn is_simple(&self, g: &SurfaceGraph) -> bool {
        let mut vs = self.vertices(g);
        vs.sort_unstable();
        vs.windows(2).all(|w| w[0] != w[1])
    }

    pub fn reversed(&self, g: &SurfaceGraph) -> OrientedCurve {
        OrientedCurve {
            half_edges: self.half_edges.iter().rev().map(|&h| g.twin(h)).collect(),
        }
    }

    pub fn chain(&self, g: &SurfaceGraph) -> BitVec {
        BitVec::from_indices(g.n_edges(), self.half_edges.iter().map(|&h| g.edge_of(h)))
    }

    /// (incoming, outgoing) half-edge pairs at each visited vertex.
    pub fn corners(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.half_edges.len();
        (0..n).map(move |i| (self.half_edges[i], self.half_edges[(i + 1) % n]))
    }
}

impl SurfaceGraph {
    /// Splits a Z/2 cycle into edge-disjoint simple closed curves. Cycle
    /// half-edges at a vertex are paired consecutively in rotation order, so
    /// the resulting curves touch without crossing.
    pub fn decompose_to_simple(&self, cycle: &BitVec) -> Result<Vec<OrientedCurve>> {
        let nh = self.n_half_edges();
        let on = |h: usize| cycle.get(self.edge_of(h));
        let mut partner = vec![usize::MAX; nh];
        for v in 0..self.n_vertices() {
            let slots: Vec<usize> = self.rotation(v).into_iter().filter(|&h| on(h)).collect();
            if !slots.len().is_multiple_of(2) {
                return Err(DimerError::NotACycle { variant: "absolute" });
            }
            for pair in slots.chunks(2) {
                partner[pair[0]] = pair[1];
                partner[pair[1]] = pair[0];
            }
        }
        let mut used = vec![false; self.n_edges()];
        let mut curves = Vec::new();
        for start in 0..nh {
            if !on(start) || used[self.edge_of(start)] {
                continue;
            }
            let mut walk = Vec::new();
            let mut cur = start;
            loop {
                used[self.edge_of(cur)] = true;
                walk.push(cur);
                let out = partner[self.twin(cur)];
                if out == start {
                    break;
                }
                cur = out;
            }
            curves.push(walk);
        }
        let mut simple = Vec::new();
        while let Some(walk) = curves.pop() {
            match self.repeated_vertex(&walk) {
                None => simple.push(OrientedCurve { half_edges: walk }),
                Some((i, j)) => {
                    let inner = walk[i..j].to_vec();
                    let mut outer = walk[j..].to_vec();
                    outer.extend_from_slice(&walk[..i]);
                    curves.push(inner);
                    curves.push(outer);
                }
            }
        }
        simple.sort_by(|a, b| a.half_edges.cmp(&b.half_edges));
        Ok(simple)
    }

    fn repeated_vertex(&self, walk: &[usize]) -> Option<(usize, usize)> {
        let mut seen = vec![usize::MAX; self.n_vertices()];
        for (j, &h) in walk.iter().enumerate() {
            let v = self.vertex(h);
            if seen[v] != usize::MAX {
                return Some((seen[v], j));
            }
            seen[v] = j;
        }
        None
    }

    /// Edges crossed by the left push-off of a closed curve: at every
    /// corner, those strictly counter-clockwise between the outgoing
    /// half-edge and the reverse of the incoming one.
    pub fn crossing_cochain(&self, c: &OrientedCurve) -> BitVec {
        let mut x = BitVec::zeros(self.n_edges());
        for (h_in, h_out) in c.corners() {
            for h in self.between(h_out, self.twin(h_in)) {
                x.flip(self.edge_of(h));
            }
        }
        x
    }

    /// Z/2 intersection number of two closed curves.
    pub fn intersection(&self, c1: &OrientedCurve, c2: &OrientedCurve) -> bool {
        self.crossing_cochain(c2).dot(&c1.chain(self))
    }

    pub fn family_intersection(&self, a: &[OrientedCurve], b: &[OrientedCurve]) -> bool {
        let mut s = false;
        for c2 in b {
            let x = self.crossing_cochain(c2);
            for c1 in a {
                s ^= x.dot(&c1.chain(self));
            }
        }
        s
    }

    /// Intersection of a Z/2 cycle with a closed curve.
    pub fn chain_intersection(&self, chain: &BitVec, c: &OrientedCurve) -> bool {
        self.crossing_cochain(c).dot(chain)
    }
}
