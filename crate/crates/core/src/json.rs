//! JSON graph files.
//!
//! ```json
//! {"vertices": ["u", "v"],
//!  "half_edges": [{"id": "a", "vertex": "u", "twin": "b"},
//!                 {"id": "b", "vertex": "v", "twin": "a"}],
//!  "rotations": {"u": ["a"], "v": ["b"]},
//!  "boundary_vertices": [], "boundary_edges": [],
//!  "weights": {"a": "3/2"}}
//! ```
//!
//! Edges are named by either of their half-edges. Missing weights are 1.

use crate::dimer::WeightSystem;
use crate::error::{DimerError, Result};
use crate::rational;
use crate::surface_graph::{RawGraph, SurfaceGraph};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Id {
    Name(String),
    Number(i64),
}

impl Id {
    fn key(&self) -> String {
        match self {
            Id::Name(s) => s.clone(),
            Id::Number(n) => n.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HalfEdgeSpec {
    pub id: Id,
    pub vertex: Id,
    pub twin: Id,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<Id>,
    pub half_edges: Vec<HalfEdgeSpec>,
    pub rotations: BTreeMap<String, Vec<Id>>,
    #[serde(default)]
    pub boundary_vertices: Vec<Id>,
    #[serde(default)]
    pub boundary_edges: Vec<Id>,
    #[serde(default)]
    pub weights: BTreeMap<String, String>,
}

fn lookup(map: &HashMap<String, usize>, id: &str, what: &str) -> Result<usize> {
    map.get(id)
        .copied()
        .ok_or_else(|| DimerError::Parse(format!("unknown {what} '{id}'")))
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| DimerError::Parse(e.to_string()))
    }

    pub fn to_graph(&self) -> Result<(SurfaceGraph, WeightSystem)> {
        let vertex_names: Vec<String> = self.vertices.iter().map(Id::key).collect();
        let vmap: HashMap<String, usize> =
            vertex_names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        if vmap.len() != vertex_names.len() {
            return Err(DimerError::Parse("duplicate vertex name".into()));
        }
        let he_names: Vec<String> = self.half_edges.iter().map(|h| h.id.key()).collect();
        let hmap: HashMap<String, usize> =
            he_names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        if hmap.len() != he_names.len() {
            return Err(DimerError::Parse("duplicate half-edge id".into()));
        }
        let mut twin = Vec::new();
        let mut vertex = Vec::new();
        for h in &self.half_edges {
            twin.push(lookup(&hmap, &h.twin.key(), "half-edge")?);
            vertex.push(lookup(&vmap, &h.vertex.key(), "vertex")?);
        }
        let mut rotations = vec![Vec::new(); vertex_names.len()];
        for (v, rot) in &self.rotations {
            let v = lookup(&vmap, v, "vertex")?;
            rotations[v] = rot
                .iter()
                .map(|h| lookup(&hmap, &h.key(), "half-edge"))
                .collect::<Result<_>>()?;
        }
        let boundary_vertices = self
            .boundary_vertices
            .iter()
            .map(|v| lookup(&vmap, &v.key(), "vertex"))
            .collect::<Result<_>>()?;
        let boundary_edges = self
            .boundary_edges
            .iter()
            .map(|h| lookup(&hmap, &h.key(), "half-edge"))
            .collect::<Result<_>>()?;
        let g = SurfaceGraph::new(RawGraph {
            vertex_names,
            half_edge_names: he_names,
            twin,
            vertex,
            rotations,
            boundary_vertices,
            boundary_edges,
        })?;
        let mut values = vec![rational::one(); g.n_edges()];
        for (h, text) in &self.weights {
            let e = g.edge_of(lookup(&hmap, h, "half-edge")?);
            values[e] = rational::parse(text)?;
        }
        let w = WeightSystem::from_values(&g, values)?;
        Ok((g, w))
    }

    pub fn from_graph(g: &SurfaceGraph, w: &WeightSystem) -> Self {
        let name = |h: usize| Id::Name(g.half_edge_name(h).to_string());
        let vname = |v: usize| Id::Name(g.vertex_name(v).to_string());
        GraphFile {
            vertices: (0..g.n_vertices()).map(vname).collect(),
            half_edges: (0..g.n_half_edges())
                .map(|h| HalfEdgeSpec {
                    id: name(h),
                    vertex: vname(g.vertex(h)),
                    twin: name(g.twin(h)),
                })
                .collect(),
            rotations: (0..g.n_vertices())
                .map(|v| (g.vertex_name(v).to_string(), g.rotation(v).into_iter().map(name).collect()))
                .collect(),
            boundary_vertices: g.boundary_vertices().into_iter().map(vname).collect(),
            boundary_edges: g.boundary_edges().into_iter().map(|e| name(g.halves(e)[0])).collect(),
            weights: g
                .graph_edges()
                .into_iter()
                .map(|e| (g.half_edge_name(g.halves(e)[0]).to_string(), rational::format(w.get(e))))
                .collect(),
        }
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Parses a graph file into a surface graph and its weights.
pub fn parse_graph(text: &str) -> Result<(SurfaceGraph, WeightSystem)> {
    GraphFile::parse(text)?.to_graph()
}
