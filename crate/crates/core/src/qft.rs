//! Boundary state spaces, the dimer boundary vector, contraction along a
//! gluing, and the Grassmann form of the boundary vector.

use crate::dimer::{first_configuration, partition_oracle, BoundaryCondition, WeightSystem};
use crate::error::{DimerError, Result};
use crate::grassmann::{self, GrassmannElement};
use crate::kasteleyn::{classes, construct, epsilon, kasteleyn_matrix, partition_z_bc, quadratic_form};
use crate::pfaffian::{permutation_sign, SkewMatrix};
use crate::rational::{self, Rational};
use crate::surface_graph::{RawGraph, SurfaceGraph};
use crate::surgery::{glue, GluingMap};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Oracle,
    Pfaffian,
}

/// Vector in the tensor product of one two-dimensional space per boundary
/// vertex. Amplitude index bit `i` set means `vertices[i]` is matched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryVector {
    pub vertices: Vec<String>,
    pub signs: Vec<i8>,
    pub amplitudes: Vec<Rational>,
}

impl BoundaryVector {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn amplitude(&self, mask: usize) -> &Rational {
        &self.amplitudes[mask]
    }

    /// Amplitude of the condition matching exactly the named vertices.
    pub fn amplitude_of(&self, matched: &[&str]) -> Option<&Rational> {
        let mut mask = 0;
        for name in matched {
            mask |= 1 << self.vertices.iter().position(|v| v == name)?;
        }
        Some(&self.amplitudes[mask])
    }

    /// The same vector with the boundary vertices listed in `order`.
    pub fn permuted(&self, order: &[String]) -> Result<BoundaryVector> {
        let pos: Vec<usize> = order
            .iter()
            .map(|n| {
                self.vertices
                    .iter()
                    .position(|v| v == n)
                    .ok_or_else(|| DimerError::Parse(format!("unknown boundary vertex {n}")))
            })
            .collect::<Result<_>>()?;
        if order.len() != self.len() {
            return Err(DimerError::Parse("boundary vertex lists differ".into()));
        }
        let amplitudes = (0..self.amplitudes.len())
            .map(|m| {
                let old = pos.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).fold(0, |a, (_, &p)| a | 1 << p);
                self.amplitudes[old].clone()
            })
            .collect();
        Ok(BoundaryVector {
            vertices: order.to_vec(),
            signs: pos.iter().map(|&p| self.signs[p]).collect(),
            amplitudes,
        })
    }

    /// Tensor product; the vertices of `other` come after those of `self`.
    pub fn tensor(&self, other: &BoundaryVector) -> BoundaryVector {
        let n = self.len();
        let mut amplitudes = Vec::with_capacity(self.amplitudes.len() * other.amplitudes.len());
        for m in 0..self.amplitudes.len() * other.amplitudes.len() {
            amplitudes.push(&self.amplitudes[m & ((1 << n) - 1)] * &other.amplitudes[m >> n]);
        }
        BoundaryVector {
            vertices: self.vertices.iter().chain(&other.vertices).cloned().collect(),
            signs: self.signs.iter().chain(&other.signs).copied().collect(),
            amplitudes,
        }
    }

    /// Contracts each pair of slots `(i, j)` of opposite signs: both
    /// matched or both unmatched, summed.
    pub fn contract(&self, pairs: &[(usize, usize)]) -> Result<BoundaryVector> {
        let mut used = vec![false; self.len()];
        for &(i, j) in pairs {
            for v in [i, j] {
                if v >= self.len() || used[v] {
                    return Err(DimerError::RepeatedIndex(v));
                }
                used[v] = true;
            }
            if self.signs[i] != -self.signs[j] {
                return Err(DimerError::SignMismatch(i));
            }
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&v| !used[v]).collect();
        let mut amplitudes = vec![Rational::zero(); 1 << keep.len()];
        for (m, a) in amplitudes.iter_mut().enumerate() {
            let base = keep.iter().enumerate().filter(|(b, _)| m >> b & 1 == 1).fold(0usize, |acc, (_, &v)| acc | 1 << v);
            for p in 0usize..1 << pairs.len() {
                let mut full = base;
                for (t, &(i, j)) in pairs.iter().enumerate() {
                    if p >> t & 1 == 1 {
                        full |= 1 << i | 1 << j;
                    }
                }
                *a += &self.amplitudes[full];
            }
        }
        Ok(BoundaryVector {
            vertices: keep.iter().map(|&v| self.vertices[v].clone()).collect(),
            signs: keep.iter().map(|&v| self.signs[v]).collect(),
            amplitudes,
        })
    }

    /// `{bitstring: "p/q"}` over the nonzero amplitudes; character `i` of
    /// the bitstring is vertex `i`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert(
            "vertices".into(),
            serde_json::Value::from(self.vertices.clone()),
        );
        map.insert(
            "signs".into(),
            serde_json::Value::from(self.signs.iter().map(|&s| i64::from(s)).collect::<Vec<_>>()),
        );
        let amps: BTreeMap<String, serde_json::Value> = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(m, a)| (bitstring(m, self.len()), serde_json::Value::from(rational::format(a))))
            .collect();
        map.insert("amplitudes".into(), serde_json::to_value(amps).expect("string map"));
        serde_json::Value::Object(map)
    }
}

pub fn bitstring(mask: usize, n: usize) -> String {
    (0..n).map(|i| if mask >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn condition(order: &[usize], mask: usize) -> BoundaryCondition {
    BoundaryCondition::new(
        order
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect(),
    )
}

/// Z(Γ; w | ∂D) for every boundary condition, boundary vertices in vertex
/// order with the given signs.
pub fn boundary_vector(g: &SurfaceGraph, w: &WeightSystem, signs: &[i8], method: Method) -> Result<BoundaryVector> {
    let order = g.boundary_vertices();
    if signs.len() != order.len() || signs.iter().any(|s| s.abs() != 1) {
        return Err(DimerError::Parse("one sign ±1 per boundary vertex expected".into()));
    }
    let amplitudes = (0..1usize << order.len())
        .map(|m| {
            let bc = condition(&order, m);
            match method {
                Method::Oracle => Ok(partition_oracle(g, w, Some(&bc))),
                Method::Pfaffian => partition_z_bc(g, w, &bc),
            }
        })
        .collect::<Result<_>>()?;
    Ok(BoundaryVector {
        vertices: order.iter().map(|&v| g.vertex_name(v).to_string()).collect(),
        signs: signs.to_vec(),
        amplitudes,
    })
}

#[derive(Clone, Debug)]
pub struct GluingAxiomReport {
    pub contracted: BoundaryVector,
    pub glued: BoundaryVector,
}

impl GluingAxiomReport {
    pub fn holds(&self) -> bool {
        self.contracted == self.glued
    }
}

/// Compares the contraction of the boundary vector along `phi` with the
/// boundary vector of the glued graph.
pub fn gluing_axiom_check(
    g: &SurfaceGraph,
    w: &WeightSystem,
    phi: &GluingMap,
    method: Method,
) -> Result<GluingAxiomReport> {
    let order = g.boundary_vertices();
    let slot = |v: usize| order.binary_search(&v).expect("glued vertices are boundary vertices");
    let mut signs = vec![1i8; order.len()];
    for &(_, y) in &phi.pairs {
        signs[slot(y)] = -1;
    }
    let vec = boundary_vector(g, w, &signs, method)?;
    let pairs: Vec<(usize, usize)> = phi.pairs.iter().map(|&(x, y)| (slot(x), slot(y))).collect();
    let contracted = vec.contract(&pairs)?;
    let rest = if phi.pairs.is_empty() {
        boundary_vector(g, w, &signs, method)?
    } else {
        let glued = glue(g, w, phi, None)?;
        let n = glued.graph.boundary_vertices().len();
        boundary_vector(&glued.graph, &glued.weights, &vec![1; n], method)?
    };
    let glued_vec = rest.permuted(&contracted.vertices)?;
    Ok(GluingAxiomReport {
        contracted,
        glued: glued_vec,
    })
}

/// Grassmann element whose coefficient of the increasing product of the
/// generators of the matched boundary vertices is Z(Γ; w | ∂D). Generator
/// `i` belongs to boundary vertex `order[i]`.
///
/// Interior generators are placed after the boundary ones and integrated
/// out for every orientation class; each boundary condition is weighted
/// with the measure Arf(q) ε(D) of its first configuration, ε taken in
/// generator order.
pub fn fermionic_vector(g: &SurfaceGraph, w: &WeightSystem, order: &[usize]) -> Result<GrassmannElement> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != g.boundary_vertices() {
        return Err(DimerError::GeneratorMismatch(order.len(), g.boundary_vertices().len()));
    }
    let n = g.n_vertices();
    if n > 64 {
        return Err(DimerError::Internal("more than 64 vertices".into()));
    }
    let nb = order.len();
    let mut gen = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        gen[v] = i;
    }
    let mut next = nb;
    for v in 0..n {
        if gen[v] == usize::MAX {
            gen[v] = next;
            next += 1;
        }
    }
    let interior: u64 = (nb..n).fold(0, |m, i| m | 1 << i);
    let all = BoundaryCondition::new(order.to_vec());
    let k0 = construct(g, None)?;
    let refs: Vec<_> = (0..1usize << nb)
        .map(|m| first_configuration(g, &condition(order, m)).ok())
        .collect();
    let mut coeffs = vec![Rational::zero(); 1 << nb];
    for k in classes(g, &k0)? {
        let (a, verts) = kasteleyn_matrix(g, &k, w, &all);
        let mut ag = SkewMatrix::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                let x = a.get(i, j);
                if !x.is_zero() {
                    ag.set(gen[verts[i]], gen[verts[j]], x.clone());
                }
            }
        }
        let reduced = grassmann::quadratic(&ag).exp()?.integrate_out(interior);
        for (m, d) in refs.iter().enumerate() {
            let Some(d) = d else { continue };
            // sign taking the matched vertices from vertex to generator order
            let matched: Vec<usize> = condition(order, m).matched_vertices(g);
            let mut by_gen = matched.clone();
            by_gen.sort_by_key(|&v| gen[v]);
            let seq: Vec<usize> = by_gen.iter().map(|v| matched.binary_search(v).expect("member")).collect();
            let sigma = permutation_sign(&seq);
            let measure = quadratic_form(g, &k, d).arf() * epsilon(g, &k, d)? * sigma;
            coeffs[m] += rational::int(i64::from(measure)) * reduced.coefficient(m as u64);
        }
    }
    let scale = rational::pow(&rational::int(2), -(g.genus() as i64));
    let mut out = GrassmannElement::zero(nb);
    for (m, c) in coeffs.into_iter().enumerate() {
        out.add_term(m as u64, c * &scale);
    }
    Ok(out)
}

/// Natural pairing of two boundary spaces in the Grassmann picture; the
/// generators of `f` and `g` are identified index by index.
pub fn fermionic_pairing(f: &GrassmannElement, g: &GrassmannElement) -> Result<Rational> {
    grassmann::pairing(f, g)
}

/// Connected components as separate graphs, with their weights. Names are
/// kept.
pub fn components(g: &SurfaceGraph, w: &WeightSystem) -> Result<Vec<(SurfaceGraph, WeightSystem)>> {
    let raw = g.raw();
    let mut out = Vec::new();
    for c in 0..g.b0() {
        let vs: Vec<usize> = (0..g.n_vertices()).filter(|&v| g.component_of(v) == c).collect();
        let hs: Vec<usize> = (0..g.n_half_edges()).filter(|&h| g.component_of(g.vertex(h)) == c).collect();
        let vmap = |v: usize| vs.binary_search(&v).expect("same component");
        let hmap = |h: usize| hs.binary_search(&h).expect("same component");
        let sub = SurfaceGraph::new(RawGraph {
            vertex_names: vs.iter().map(|&v| raw.vertex_names[v].clone()).collect(),
            half_edge_names: hs.iter().map(|&h| raw.half_edge_names[h].clone()).collect(),
            twin: hs.iter().map(|&h| hmap(raw.twin[h])).collect(),
            vertex: hs.iter().map(|&h| vmap(raw.vertex[h])).collect(),
            rotations: vs.iter().map(|&v| raw.rotations[v].iter().map(|&h| hmap(h)).collect()).collect(),
            boundary_vertices: raw
                .boundary_vertices
                .iter()
                .filter(|&&v| g.component_of(v) == c)
                .map(|&v| vmap(v))
                .collect(),
            boundary_edges: raw
                .boundary_edges
                .iter()
                .filter(|&&h| g.component_of(g.vertex(h)) == c)
                .map(|&h| hmap(h))
                .collect(),
        })?;
        let values = (0..sub.n_edges())
            .map(|e| w.get(g.edge_of(hs[sub.halves(e)[0]])).clone())
            .collect();
        let sw = WeightSystem::from_values(&sub, values)?;
        out.push((sub, sw));
    }
    Ok(out)
}
