use super::{RawGraph, SurfaceGraph};
use crate::error::Result;

/// Incremental construction of a surface graph. Each half-edge gets an
/// angle at its origin; rotations are read off by sorting angles.
#[derive(Clone, Debug, Default)]
pub struct Builder {
    names: Vec<String>,
    he_vertex: Vec<usize>,
    he_angle: Vec<f64>,
    he_names: Vec<String>,
    boundary: Vec<usize>,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.names.len() - 1
    }

    pub fn vertices<S: Into<String>>(&mut self, names: impl IntoIterator<Item = S>) -> Vec<usize> {
        names.into_iter().map(|n| self.vertex(n)).collect()
    }

    /// Adds an edge `u -> v`; angles are in degrees. Returns the half-edge
    /// leaving `u`; its twin is the following index.
    pub fn edge(&mut self, u: usize, angle_u: f64, v: usize, angle_v: f64) -> usize {
        let h = self.he_vertex.len();
        let e = h / 2;
        self.he_vertex.extend([u, v]);
        self.he_angle.extend([angle_u, angle_v]);
        self.he_names.extend([format!("e{e}+"), format!("e{e}-")]);
        h
    }

    /// Edge whose angles come from planar coordinates.
    pub fn straight_edge(&mut self, u: usize, pu: (f64, f64), v: usize, pv: (f64, f64)) -> usize {
        let a = (pv.1 - pu.1).atan2(pv.0 - pu.0).to_degrees();
        self.edge(u, a, v, a + 180.0)
    }

    pub fn boundary_edge(&mut self, u: usize, angle_u: f64, v: usize, angle_v: f64) -> usize {
        let h = self.edge(u, angle_u, v, angle_v);
        self.boundary.push(h);
        h
    }

    pub fn build(self) -> Result<SurfaceGraph> {
        let nv = self.names.len();
        let nh = self.he_vertex.len();
        let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for h in 0..nh {
            rotations[self.he_vertex[h]].push(h);
        }
        for rot in &mut rotations {
            rot.sort_by(|&a, &b| {
                norm(self.he_angle[a])
                    .total_cmp(&norm(self.he_angle[b]))
                    .then(a.cmp(&b))
            });
        }
        let mut boundary_vertices: Vec<usize> = self
            .boundary
            .iter()
            .flat_map(|&h| [self.he_vertex[h], self.he_vertex[h + 1]])
            .collect();
        boundary_vertices.sort_unstable();
        boundary_vertices.dedup();
        SurfaceGraph::new(RawGraph {
            vertex_names: self.names,
            half_edge_names: self.he_names,
            twin: (0..nh).map(|h| h ^ 1).collect(),
            vertex: self.he_vertex,
            rotations,
            boundary_vertices,
            boundary_edges: self.boundary,
        })
    }
}

fn norm(a: f64) -> f64 {
    a.rem_euclid(360.0)
}
