//! Mutable combinatorial map used to cut and glue, carrying per-half-edge
//! edge attributes (weight, dimer membership, orientation).

use crate::dimer::{DimerConfiguration, WeightSystem};
use crate::error::{DimerError, Result};
use crate::kasteleyn::KasteleynOrientation;
use crate::rational::{self, Rational};
use crate::surface_graph::{RawGraph, SurfaceGraph};
use std::collections::HashSet;

pub(crate) struct Editor {
    pub vertex_names: Vec<String>,
    pub he_names: Vec<String>,
    pub twin: Vec<usize>,
    pub vertex: Vec<usize>,
    pub rotation: Vec<Vec<usize>>,
    pub boundary: Vec<bool>,
    pub weight: Vec<Rational>,
    pub dimer: Vec<bool>,
    pub along: Vec<bool>,
    pub alive_v: Vec<bool>,
    pub alive_h: Vec<bool>,
    names: HashSet<String>,
}

pub(crate) struct Built {
    pub graph: SurfaceGraph,
    pub weights: WeightSystem,
    pub dimer: DimerConfiguration,
    pub orientation: KasteleynOrientation,
    /// editor half-edge -> half-edge of the built graph
    pub half_map: Vec<Option<usize>>,
}

impl Editor {
    pub fn new(
        g: &SurfaceGraph,
        w: &WeightSystem,
        d: Option<&DimerConfiguration>,
        k: Option<&KasteleynOrientation>,
    ) -> Self {
        let nh = g.n_half_edges();
        let mut names: HashSet<String> = g.vertex_names().iter().cloned().collect();
        names.extend(g.half_edge_names().iter().cloned());
        Editor {
            vertex_names: g.vertex_names().to_vec(),
            he_names: g.half_edge_names().to_vec(),
            twin: (0..nh).map(|h| g.twin(h)).collect(),
            vertex: (0..nh).map(|h| g.vertex(h)).collect(),
            rotation: (0..g.n_vertices()).map(|v| g.rotation(v)).collect(),
            boundary: (0..nh).map(|h| g.is_boundary_edge(g.edge_of(h))).collect(),
            weight: (0..nh).map(|h| w.get(g.edge_of(h)).clone()).collect(),
            dimer: (0..nh).map(|h| d.is_some_and(|d| d.contains(g.edge_of(h)))).collect(),
            along: (0..nh).map(|h| k.is_some_and(|k| k.along(g, h))).collect(),
            alive_v: vec![true; g.n_vertices()],
            alive_h: vec![true; nh],
            names,
        }
    }

    /// A fresh name starting with `base`.
    pub fn fresh(&mut self, base: &str) -> String {
        let mut name = base.to_string();
        let mut n = 1;
        while self.names.contains(&name) {
            name = format!("{base}~{n}");
            n += 1;
        }
        self.names.insert(name.clone());
        name
    }

    pub fn add_vertex(&mut self, base: &str) -> usize {
        let name = self.fresh(base);
        self.vertex_names.push(name);
        self.rotation.push(Vec::new());
        self.alive_v.push(true);
        self.vertex_names.len() - 1
    }

    /// New half-edge at `v`, not yet placed in the rotation or twinned.
    pub fn add_half(&mut self, v: usize, base: &str, boundary: bool) -> usize {
        let name = self.fresh(base);
        self.he_names.push(name);
        self.twin.push(usize::MAX);
        self.vertex.push(v);
        self.boundary.push(boundary);
        self.weight.push(rational::one());
        self.dimer.push(false);
        self.along.push(false);
        self.alive_h.push(true);
        self.twin.len() - 1
    }

    pub fn pair(&mut self, a: usize, b: usize) {
        self.twin[a] = b;
        self.twin[b] = a;
    }

    pub fn pair_boundary(&mut self, a: usize, b: usize) {
        self.pair(a, b);
        self.along[a] = true;
        self.along[b] = false;
    }

    /// Sets edge attributes on both halves of the edge through `h`, with
    /// `along_h` the orientation seen from `h`.
    pub fn set_edge(&mut self, h: usize, weight: Rational, dimer: bool, along_h: bool) {
        let t = self.twin[h];
        for x in [h, t] {
            self.weight[x] = weight.clone();
            self.dimer[x] = dimer;
        }
        self.along[h] = along_h;
        self.along[t] = !along_h;
    }

    pub fn kill_vertex(&mut self, v: usize) {
        self.alive_v[v] = false;
        for h in self.rotation[v].clone() {
            self.alive_h[h] = false;
        }
        self.rotation[v].clear();
    }

    pub fn build(&self) -> Result<Built> {
        let mut vmap = vec![None; self.vertex_names.len()];
        let mut vertex_names = Vec::new();
        for v in 0..self.vertex_names.len() {
            if self.alive_v[v] {
                vmap[v] = Some(vertex_names.len());
                vertex_names.push(self.vertex_names[v].clone());
            }
        }
        let mut half_map = vec![None; self.twin.len()];
        let mut names = Vec::new();
        let mut keep = Vec::new();
        for h in 0..self.twin.len() {
            if self.alive_h[h] {
                half_map[h] = Some(names.len());
                names.push(self.he_names[h].clone());
                keep.push(h);
            }
        }
        let broken = |h: usize| DimerError::Internal(format!("dangling half-edge {}", self.he_names[h]));
        let mut twin = Vec::new();
        let mut vertex = Vec::new();
        for &h in &keep {
            let t = self.twin[h];
            twin.push(half_map.get(t).copied().flatten().ok_or_else(|| broken(h))?);
            vertex.push(vmap[self.vertex[h]].ok_or_else(|| broken(h))?);
        }
        let rotations: Vec<Vec<usize>> = (0..self.vertex_names.len())
            .filter(|&v| self.alive_v[v])
            .map(|v| self.rotation[v].iter().map(|&h| half_map[h].expect("alive")).collect())
            .collect();
        let boundary_edges: Vec<usize> = keep
            .iter()
            .filter(|&&h| self.boundary[h])
            .map(|&h| half_map[h].expect("alive"))
            .collect();
        let mut boundary_vertices: Vec<usize> = keep
            .iter()
            .filter(|&&h| self.boundary[h])
            .map(|&h| vmap[self.vertex[h]].expect("alive"))
            .collect();
        boundary_vertices.sort_unstable();
        boundary_vertices.dedup();
        let graph = SurfaceGraph::new(RawGraph {
            vertex_names,
            half_edge_names: names,
            twin,
            vertex,
            rotations,
            boundary_vertices,
            boundary_edges,
        })?;
        let mut values = vec![rational::one(); graph.n_edges()];
        let mut dimer = Vec::new();
        let mut orientation = KasteleynOrientation::reference(&graph);
        for &h in &keep {
            let nh = half_map[h].expect("alive");
            let e = graph.edge_of(nh);
            if graph.halves(e)[0] != nh {
                continue;
            }
            values[e] = self.weight[h].clone();
            if self.dimer[h] {
                dimer.push(e);
            }
            // reference half-edge along K unless reversed
            orientation.reversed.set(e, !self.along[h]);
        }
        let weights = WeightSystem::from_values(&graph, values)?;
        Ok(Built {
            graph,
            weights,
            dimer: DimerConfiguration::new(dimer),
            orientation,
            half_map,
        })
    }
}
