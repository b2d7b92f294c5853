//! Graphs with boundary embedded in compact oriented surfaces, stored as
//! combinatorial maps.
//!
//! Half-edge `h` leaves `vertex(h)`; `next(h)` is the following half-edge
//! counter-clockwise around that vertex. Faces are traced with the face on
//! the left: `h -> prev(twin(h))`. The face of `h` is therefore the one
//! containing the sector between `h` and `next(h)`.
//!
//! The surface is closed up by marking some faces as holes. A hole face is
//! bounded only by boundary edges, and every boundary edge has exactly one
//! hole side.

mod builder;
mod curves;
mod homology;

use crate::error::{invalid, Result};

pub use builder::Builder;
pub use curves::OrientedCurve;
pub use homology::{HomologyClass, IntRelBasis, Variant};

use homology::Homology;

/// Raw combinatorial data, before validation.
#[derive(Clone, Debug, Default)]
pub struct RawGraph {
    pub vertex_names: Vec<String>,
    pub half_edge_names: Vec<String>,
    pub twin: Vec<usize>,
    pub vertex: Vec<usize>,
    /// Counter-clockwise half-edge order at each vertex.
    pub rotations: Vec<Vec<usize>>,
    pub boundary_vertices: Vec<usize>,
    /// Boundary edges, each named by either of its half-edges.
    pub boundary_edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Closed walk with the face on the left.
    pub walk: Vec<usize>,
    pub hole: bool,
    pub component: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub n_edges: usize,
    pub faces: Vec<usize>,
    pub holes: Vec<usize>,
    pub genus: usize,
}

impl Component {
    pub fn is_closed(&self) -> bool {
        self.holes.is_empty()
    }

    pub fn b1(&self) -> usize {
        if self.holes.is_empty() {
            2 * self.genus
        } else {
            2 * self.genus + self.holes.len() - 1
        }
    }

    /// V - E + F over internal faces.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.n_edges as i64
            + (self.faces.len() - self.holes.len()) as i64
    }
}

#[derive(Clone, Debug)]
pub struct SurfaceGraph {
    vertex_names: Vec<String>,
    half_edge_names: Vec<String>,
    twin: Vec<usize>,
    vertex: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    boundary_vertex: Vec<bool>,
    edge_of: Vec<usize>,
    halves: Vec<[usize; 2]>,
    boundary_edge: Vec<bool>,
    face_of: Vec<usize>,
    faces: Vec<Face>,
    components: Vec<Component>,
    component_of: Vec<usize>,
    homology: Homology,
}

impl SurfaceGraph {
    pub fn new(raw: RawGraph) -> Result<Self> {
        let nv = raw.vertex_names.len();
        let nh = raw.twin.len();
        if raw.vertex.len() != nh || raw.half_edge_names.len() != nh {
            return Err(invalid("half-edge arrays", "length mismatch"));
        }
        if raw.rotations.len() != nv {
            return Err(invalid("rotations", "one rotation per vertex required"));
        }
        for h in 0..nh {
            let t = raw.twin[h];
            if t >= nh || t == h || raw.twin[t] != h {
                return Err(invalid(
                    "twin involution",
                    format!("half-edge {} has twin {}", raw.half_edge_names[h], t),
                ));
            }
            if raw.vertex[h] >= nv {
                return Err(invalid("vertex assignment", format!("half-edge {h}")));
            }
        }
        let mut next = vec![usize::MAX; nh];
        let mut prev = vec![usize::MAX; nh];
        for (v, rot) in raw.rotations.iter().enumerate() {
            if rot.is_empty() {
                return Err(invalid(
                    "isolated vertex",
                    format!("vertex {} has no incident edge", raw.vertex_names[v]),
                ));
            }
            for (i, &h) in rot.iter().enumerate() {
                if h >= nh || raw.vertex[h] != v {
                    return Err(invalid(
                        "rotation orbit",
                        format!("half-edge {h} listed at vertex {}", raw.vertex_names[v]),
                    ));
                }
                if next[h] != usize::MAX {
                    return Err(invalid("rotation orbit", format!("half-edge {h} listed twice")));
                }
                let n = rot[(i + 1) % rot.len()];
                next[h] = n;
                prev[n] = h;
            }
        }
        if let Some(h) = next.iter().position(|&n| n == usize::MAX) {
            return Err(invalid("rotation orbit", format!("half-edge {h} in no rotation")));
        }

        let mut edge_of = vec![0; nh];
        let mut halves = Vec::new();
        for h in 0..nh {
            let t = raw.twin[h];
            if h < t {
                edge_of[h] = halves.len();
                edge_of[t] = halves.len();
                halves.push([h, t]);
            }
        }
        let ne = halves.len();
        let mut boundary_edge = vec![false; ne];
        for &h in &raw.boundary_edges {
            if h >= nh {
                return Err(invalid("boundary edges", format!("unknown half-edge {h}")));
            }
            boundary_edge[edge_of[h]] = true;
        }
        let mut boundary_vertex = vec![false; nv];
        for &v in &raw.boundary_vertices {
            if v >= nv {
                return Err(invalid("boundary vertices", format!("unknown vertex {v}")));
            }
            boundary_vertex[v] = true;
        }
        for (e, hs) in halves.iter().enumerate() {
            let (a, b) = (raw.vertex[hs[0]], raw.vertex[hs[1]]);
            if boundary_edge[e] {
                if !boundary_vertex[a] || !boundary_vertex[b] {
                    return Err(invalid(
                        "boundary edge endpoints",
                        format!("boundary edge {} leaves the boundary", raw.half_edge_names[hs[0]]),
                    ));
                }
            } else if a == b {
                return Err(invalid(
                    "loop edge",
                    format!("edge {} is a loop at {}", raw.half_edge_names[hs[0]], raw.vertex_names[a]),
                ));
            }
        }
        for (v, rot) in raw.rotations.iter().enumerate() {
            let nb = rot.iter().filter(|&&h| boundary_edge[edge_of[h]]).count();
            let ng = rot.len() - nb;
            let ok = if boundary_vertex[v] { ng == 1 && nb == 2 } else { nb == 0 };
            if !ok {
                return Err(invalid(
                    "boundary vertex valence",
                    format!(
                        "vertex {} has {ng} graph and {nb} boundary half-edges",
                        raw.vertex_names[v]
                    ),
                ));
            }
        }

        let mut g = SurfaceGraph {
            vertex_names: raw.vertex_names,
            half_edge_names: raw.half_edge_names,
            twin: raw.twin,
            vertex: raw.vertex,
            next,
            prev,
            boundary_vertex,
            edge_of,
            halves,
            boundary_edge,
            face_of: vec![usize::MAX; nh],
            faces: Vec::new(),
            components: Vec::new(),
            component_of: vec![0; nv],
            homology: Homology::default(),
        };
        g.trace_faces()?;
        g.find_components()?;
        g.homology = Homology::compute(&g)?;
        Ok(g)
    }

    fn trace_faces(&mut self) -> Result<()> {
        let nh = self.twin.len();
        for start in 0..nh {
            if self.face_of[start] != usize::MAX {
                continue;
            }
            let id = self.faces.len();
            let mut walk = Vec::new();
            let mut h = start;
            loop {
                self.face_of[h] = id;
                walk.push(h);
                h = self.prev[self.twin[h]];
                if h == start {
                    break;
                }
            }
            let hole = walk.iter().all(|&h| self.boundary_edge[self.edge_of[h]]);
            self.faces.push(Face {
                walk,
                hole,
                component: 0,
            });
        }
        for (e, hs) in self.halves.iter().enumerate() {
            if self.boundary_edge[e] {
                let holes = hs.iter().filter(|&&h| self.faces[self.face_of[h]].hole).count();
                if holes != 1 {
                    return Err(invalid(
                        "hole faces",
                        format!(
                            "boundary edge {} has {holes} hole sides",
                            self.half_edge_names[hs[0]]
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    fn find_components(&mut self) -> Result<()> {
        let nv = self.vertex_names.len();
        let mut comp = vec![usize::MAX; nv];
        let mut components = Vec::new();
        for s in 0..nv {
            if comp[s] != usize::MAX {
                continue;
            }
            let c = components.len();
            let mut stack = vec![s];
            comp[s] = c;
            let mut verts = Vec::new();
            while let Some(v) = stack.pop() {
                verts.push(v);
                for h in self.rotation(v) {
                    let w = self.head(h);
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        stack.push(w);
                    }
                }
            }
            verts.sort_unstable();
            components.push(Component {
                vertices: verts,
                n_edges: 0,
                faces: Vec::new(),
                holes: Vec::new(),
                genus: 0,
            });
        }
        for hs in &self.halves {
            components[comp[self.vertex[hs[0]]]].n_edges += 1;
        }
        for (f, face) in self.faces.iter_mut().enumerate() {
            let c = comp[self.vertex[face.walk[0]]];
            face.component = c;
            components[c].faces.push(f);
            if face.hole {
                components[c].holes.push(f);
            }
        }
        for (c, comp_data) in components.iter_mut().enumerate() {
            let chi = comp_data.vertices.len() as i64 - comp_data.n_edges as i64
                + comp_data.faces.len() as i64;
            if chi > 2 || chi % 2 != 0 {
                return Err(invalid(
                    "euler characteristic",
                    format!("component {c} has closed-up characteristic {chi}"),
                ));
            }
            comp_data.genus = ((2 - chi) / 2) as usize;
        }
        self.component_of = comp;
        self.components = components;
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn n_half_edges(&self) -> usize {
        self.twin.len()
    }

    pub fn n_edges(&self) -> usize {
        self.halves.len()
    }

    pub fn twin(&self, h: usize) -> usize {
        self.twin[h]
    }

    pub fn vertex(&self, h: usize) -> usize {
        self.vertex[h]
    }

    pub fn head(&self, h: usize) -> usize {
        self.vertex[self.twin[h]]
    }

    pub fn next(&self, h: usize) -> usize {
        self.next[h]
    }

    pub fn prev(&self, h: usize) -> usize {
        self.prev[h]
    }

    /// Successor of `h` along the boundary walk of its face.
    pub fn face_next(&self, h: usize) -> usize {
        self.prev[self.twin[h]]
    }

    pub fn edge_of(&self, h: usize) -> usize {
        self.edge_of[h]
    }

    /// The two half-edges of an edge; the first one fixes the reference
    /// direction used by integer chains.
    pub fn halves(&self, e: usize) -> [usize; 2] {
        self.halves[e]
    }

    /// +1 when `h` runs along the reference direction of its edge.
    pub fn sign(&self, h: usize) -> i64 {
        if self.halves[self.edge_of[h]][0] == h {
            1
        } else {
            -1
        }
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let [a, b] = self.halves[e];
        (self.vertex[a], self.vertex[b])
    }

    /// Half-edges at `v` in counter-clockwise order.
    pub fn rotation(&self, v: usize) -> Vec<usize> {
        let Some(start) = (0..self.twin.len()).find(|&h| self.vertex[h] == v) else {
            return Vec::new();
        };
        self.orbit_from(start)
    }

    /// Rotation at `vertex(h)` starting with `h`.
    pub fn orbit_from(&self, h: usize) -> Vec<usize> {
        let mut out = vec![h];
        let mut x = self.next[h];
        while x != h {
            out.push(x);
            x = self.next[x];
        }
        out
    }

    /// Half-edges strictly counter-clockwise after `from` and before `to`
    /// around their common vertex.
    pub fn between(&self, from: usize, to: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut x = self.next[from];
        while x != to && x != from {
            out.push(x);
            x = self.next[x];
        }
        out
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.boundary_vertex[v]
    }

    pub fn boundary_vertices(&self) -> Vec<usize> {
        (0..self.n_vertices()).filter(|&v| self.boundary_vertex[v]).collect()
    }

    pub fn is_boundary_edge(&self, e: usize) -> bool {
        self.boundary_edge[e]
    }

    pub fn boundary_edges(&self) -> Vec<usize> {
        (0..self.n_edges()).filter(|&e| self.boundary_edge[e]).collect()
    }

    /// Edges of the graph proper (not on the surface boundary).
    pub fn graph_edges(&self) -> Vec<usize> {
        (0..self.n_edges()).filter(|&e| !self.boundary_edge[e]).collect()
    }

    /// The graph half-edge at a boundary vertex.
    pub fn stem(&self, v: usize) -> Option<usize> {
        self.rotation(v)
            .into_iter()
            .find(|&h| !self.boundary_edge[self.edge_of[h]])
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn half_edge_name(&self, h: usize) -> &str {
        &self.half_edge_names[h]
    }

    pub fn half_edge_names(&self) -> &[String] {
        &self.half_edge_names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|n| n == name)
    }

    pub fn half_edge_by_name(&self, name: &str) -> Option<usize> {
        self.half_edge_names.iter().position(|n| n == name)
    }

    /// Face on the left of `h`.
    pub fn face_of(&self, h: usize) -> usize {
        self.face_of[h]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    pub fn internal_faces(&self) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| !self.faces[f].hole).collect()
    }

    pub fn hole_faces(&self) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| self.faces[f].hole).collect()
    }

    /// Internal faces touching the surface boundary.
    pub fn is_boundary_face(&self, f: usize) -> bool {
        let face = &self.faces[f];
        !face.hole && face.walk.iter().any(|&h| self.boundary_edge[self.edge_of[h]])
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn b0(&self) -> usize {
        self.components.len()
    }

    pub fn b1(&self) -> usize {
        self.components.iter().map(Component::b1).sum()
    }

    /// Number of closed components.
    pub fn b2(&self) -> usize {
        self.components.iter().filter(|c| c.is_closed()).count()
    }

    /// Total genus, summed over components.
    pub fn genus(&self) -> usize {
        self.components.iter().map(|c| c.genus).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.components.iter().map(Component::euler_characteristic).sum()
    }

    pub fn raw(&self) -> RawGraph {
        RawGraph {
            vertex_names: self.vertex_names.clone(),
            half_edge_names: self.half_edge_names.clone(),
            twin: self.twin.clone(),
            vertex: self.vertex.clone(),
            rotations: (0..self.n_vertices()).map(|v| self.rotation(v)).collect(),
            boundary_vertices: self.boundary_vertices(),
            boundary_edges: self.boundary_edges().iter().map(|&e| self.halves[e][0]).collect(),
        }
    }

    /// Boundary walk of a face as a Z/2 edge chain.
    pub fn face_chain(&self, f: usize) -> crate::gf2::BitVec {
        crate::gf2::BitVec::from_indices(
            self.n_edges(),
            self.faces[f].walk.iter().map(|&h| self.edge_of[h]),
        )
    }

    /// Same embedded graph up to renumbering, compared through names.
    pub fn same_embedding(&self, other: &SurfaceGraph) -> bool {
        if self.n_vertices() != other.n_vertices() || self.n_half_edges() != other.n_half_edges() {
            return false;
        }
        let map: Option<Vec<usize>> = (0..self.n_half_edges())
            .map(|h| other.half_edge_by_name(&self.half_edge_names[h]))
            .collect();
        let Some(map) = map else { return false };
        (0..self.n_half_edges()).all(|h| {
            let o = map[h];
            other.twin[o] == map[self.twin[h]]
                && other.next[o] == map[self.next[h]]
                && other.vertex_names[other.vertex[o]] == self.vertex_names[self.vertex[h]]
                && other.boundary_edge[other.edge_of[o]] == self.boundary_edge[self.edge_of[h]]
        }) && (0..self.n_vertices()).all(|v| {
            other
                .vertex_by_name(&self.vertex_names[v])
                .is_some_and(|w| other.boundary_vertex[w] == self.boundary_vertex[v])
        })
    }
}
