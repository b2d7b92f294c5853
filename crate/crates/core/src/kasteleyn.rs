//! Kasteleyn orientations, their equivalence classes, discrete spin
//! structures and the Pfaffian formulas for partition functions.

use crate::dimer::{BoundaryCondition, DimerConfiguration, WeightSystem};
use crate::error::{DimerError, Result};
use crate::gf2::{self, BitVec, QuotientSpace};
use crate::pfaffian::{self, SkewMatrix};
use crate::rational::{self, Rational};
use crate::surface_graph::{HomologyClass, OrientedCurve, SurfaceGraph, Variant};
use num_traits::Zero;
use std::collections::VecDeque;

/// Orientation of every edge of the graph and of the surface boundary.
/// Bit `e` set means the edge points along its second half-edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KasteleynOrientation {
    pub reversed: BitVec,
}

impl KasteleynOrientation {
    /// Every edge along its reference half-edge.
    pub fn reference(g: &SurfaceGraph) -> Self {
        KasteleynOrientation {
            reversed: BitVec::zeros(g.n_edges()),
        }
    }

    /// Whether half-edge `h` runs in the direction of the orientation.
    pub fn along(&self, g: &SurfaceGraph, h: usize) -> bool {
        (g.halves(g.edge_of(h))[1] == h) == self.reversed.get(g.edge_of(h))
    }

    /// (tail, head) of edge `e`.
    pub fn direction(&self, g: &SurfaceGraph, e: usize) -> (usize, usize) {
        let [a, b] = g.halves(e);
        let h = if self.reversed.get(e) { b } else { a };
        let _ = a;
        (g.vertex(h), g.head(h))
    }

    pub fn flip_edges(&self, x: &BitVec) -> Self {
        KasteleynOrientation {
            reversed: self.reversed.xor(x),
        }
    }

    pub fn flip_vertex(&self, g: &SurfaceGraph, v: usize) -> Self {
        self.flip_edges(&vertex_star(g, v))
    }

    /// Map edge name -> head vertex name.
    pub fn to_json(&self, g: &SurfaceGraph) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = (0..g.n_edges())
            .map(|e| {
                let (_, head) = self.direction(g, e);
                (
                    g.half_edge_name(g.halves(e)[0]).to_string(),
                    serde_json::Value::String(g.vertex_name(head).to_string()),
                )
            })
            .collect();
        serde_json::Value::Object(map)
    }
}

/// Edges at `v`, a loop counted twice and so cancelling.
pub fn vertex_star(g: &SurfaceGraph, v: usize) -> BitVec {
    BitVec::from_indices(g.n_edges(), g.rotation(v).into_iter().map(|h| g.edge_of(h)))
}

/// Number of half-edges of a walk traversed against `k`.
pub fn walk_against(g: &SurfaceGraph, k: &KasteleynOrientation, walk: &[usize]) -> usize {
    walk.iter().filter(|&&h| !k.along(g, h)).count()
}

pub fn n_count(g: &SurfaceGraph, k: &KasteleynOrientation, c: &OrientedCurve) -> usize {
    walk_against(g, k, &c.half_edges)
}

pub fn is_kasteleyn(g: &SurfaceGraph, k: &KasteleynOrientation) -> bool {
    g.internal_faces()
        .iter()
        .all(|&f| walk_against(g, k, &g.face(f).walk) % 2 == 1)
}

/// Parities `n_i = 1 + n^K(-C_i)` of the boundary components, listed in
/// the order of `g.hole_faces()`. The hole walk runs along `-C_i`.
pub fn hole_parities(g: &SurfaceGraph, k: &KasteleynOrientation) -> Vec<bool> {
    g.hole_faces()
        .iter()
        .map(|&f| walk_against(g, k, &g.face(f).walk).is_multiple_of(2))
        .collect()
}

/// A Kasteleyn orientation, optionally with prescribed boundary parities
/// (one per hole, in the order of `g.hole_faces()`).
pub fn construct(g: &SurfaceGraph, parities: Option<&[bool]>) -> Result<KasteleynOrientation> {
    let holes = g.hole_faces();
    if let Some(p) = parities {
        if p.len() != holes.len() {
            return Err(DimerError::ParityObstruction(format!(
                "{} parities given for {} boundary components",
                p.len(),
                holes.len()
            )));
        }
    }
    let nf = g.faces().len();
    // required parity of n^K along each face walk; None when free
    let mut target: Vec<Option<bool>> = vec![Some(true); nf];
    for (i, &f) in holes.iter().enumerate() {
        target[f] = parities.map(|p| !p[i]);
    }
    let mut dual: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nf];
    for e in 0..g.n_edges() {
        let [a, b] = g.halves(e);
        let (fa, fb) = (g.face_of(a), g.face_of(b));
        if fa != fb {
            dual[fa].push((e, fb));
            dual[fb].push((e, fa));
        }
    }
    let mut k = KasteleynOrientation::reference(g);
    let mut parity: Vec<bool> = (0..nf)
        .map(|f| walk_against(g, &k, &g.face(f).walk) % 2 == 1)
        .collect();
    for comp in g.components() {
        let root = comp
            .faces
            .iter()
            .copied()
            .find(|&f| target[f].is_none())
            .unwrap_or(comp.faces[0]);
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; nf];
        let mut seen = vec![false; nf];
        seen[root] = true;
        let mut order = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            for &(e, h) in &dual[f] {
                if !seen[h] {
                    seen[h] = true;
                    parent[h] = Some((e, f));
                    order.push(h);
                    queue.push_back(h);
                }
            }
        }
        for &f in order.iter().skip(1).rev() {
            let Some(t) = target[f] else { continue };
            if parity[f] != t {
                let (e, p) = parent[f].expect("non-root face has a parent");
                k.reversed.flip(e);
                parity[f] = !parity[f];
                parity[p] = !parity[p];
            }
        }
        if let Some(t) = target[root] {
            if parity[root] != t {
                return Err(DimerError::ParityObstruction(if comp.is_closed() {
                    format!(
                        "closed component with {} vertices (odd)",
                        comp.vertices.len()
                    )
                } else {
                    "sum of boundary parities differs from the vertex count mod 2".into()
                }));
            }
        }
    }
    debug_assert!(is_kasteleyn(g, &k));
    Ok(k)
}

/// H^1(Σ; Z/2) realized as edge flips preserving every internal face
/// parity, modulo vertex flips.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub cocycles: Vec<BitVec>,
    space: QuotientSpace,
}

impl Cohomology {
    pub fn new(g: &SurfaceGraph) -> Result<Self> {
        let rows: Vec<(BitVec, bool)> = g
            .internal_faces()
            .iter()
            .map(|&f| (g.face_chain(f), false))
            .collect();
        let (_, cocycles) = gf2::solve_affine(&rows, g.n_edges()).expect("homogeneous system");
        let stars: Vec<BitVec> = (0..g.n_vertices()).map(|v| vertex_star(g, v)).collect();
        let space = QuotientSpace::new(g.n_edges(), &stars, &cocycles);
        if space.rank() != g.b1() {
            return Err(DimerError::Internal(format!(
                "cohomology rank {} differs from b1 = {}",
                space.rank(),
                g.b1()
            )));
        }
        Ok(Cohomology { cocycles, space })
    }

    pub fn dim(&self) -> usize {
        self.space.rank()
    }

    /// Representative cocycles of the basis classes.
    pub fn basis(&self) -> &[BitVec] {
        self.space.representatives()
    }

    /// Class of a flip set, `None` unless it is a cocycle.
    pub fn class_of(&self, x: &BitVec) -> Option<BitVec> {
        self.space.coords(x)
    }

    pub fn lift(&self, coords: &BitVec) -> BitVec {
        self.space.lift(coords)
    }
}

/// One representative per equivalence class, `k0` twisted by every
/// cohomology class in binary counting order.
pub fn classes(g: &SurfaceGraph, k0: &KasteleynOrientation) -> Result<Vec<KasteleynOrientation>> {
    let h = Cohomology::new(g)?;
    Ok(HomologyClass::all(Variant::Absolute, h.dim())
        .into_iter()
        .map(|c| k0.flip_edges(&h.lift(&c.coords)))
        .collect())
}

pub fn equivalent(g: &SurfaceGraph, k1: &KasteleynOrientation, k2: &KasteleynOrientation) -> Result<bool> {
    let h = Cohomology::new(g)?;
    Ok(h
        .class_of(&k1.reversed.xor(&k2.reversed))
        .is_some_and(|c| c.is_zero()))
}

/// Z/2 quadratic form on H_1(Σ; Z/2), stored by its values on the basis of
/// `g` and the intersection form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    pub values: BitVec,
    pub gram: Vec<BitVec>,
}

impl QuadraticForm {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn eval(&self, alpha: &BitVec) -> bool {
        let mut q = self.values.dot(alpha);
        let idx: Vec<usize> = alpha.ones().collect();
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                q ^= self.gram[i].get(j);
            }
        }
        q
    }

    pub fn all_values(&self) -> Vec<bool> {
        HomologyClass::all(Variant::Absolute, self.dim())
            .iter()
            .map(|a| self.eval(&a.coords))
            .collect()
    }

    /// Sign of Σ_α (-1)^{q(α)}, or 0 when the sum vanishes.
    pub fn arf(&self) -> i32 {
        let s: i64 = self
            .all_values()
            .iter()
            .map(|&v| if v { -1 } else { 1 })
            .sum();
        s.signum() as i32
    }
}

/// Contribution `1 + n^K(C) + ℓ_D(C) + V_∂D(C)` of one simple closed curve.
pub fn curve_term(
    g: &SurfaceGraph,
    k: &KasteleynOrientation,
    d: &DimerConfiguration,
    c: &OrientedCurve,
) -> bool {
    let partner = d.matching_half_edges(g);
    let mut total = 1 + n_count(g, k, c);
    for (h_in, h_out) in c.corners() {
        let v = g.vertex(h_out);
        let back = g.twin(h_in);
        let left = g.between(h_out, back);
        match partner[v] {
            Some(p) => {
                if left.contains(&p) {
                    total += 1;
                }
            }
            None if g.is_boundary_vertex(v) => {
                let hole_left = std::iter::once(h_out)
                    .chain(left.iter().copied())
                    .any(|t| g.face(g.face_of(t)).hole);
                if hole_left {
                    total += 1;
                }
            }
            None => {}
        }
    }
    total % 2 == 1
}

/// q evaluated on a family of simple closed curves.
pub fn family_value(
    g: &SurfaceGraph,
    k: &KasteleynOrientation,
    d: &DimerConfiguration,
    curves: &[OrientedCurve],
) -> bool {
    let mut q = false;
    for (i, c) in curves.iter().enumerate() {
        q ^= curve_term(g, k, d, c);
        for c2 in &curves[i + 1..] {
            q ^= g.intersection(c, c2);
        }
    }
    q
}

/// q on a Z/2 cycle, through its decomposition into simple curves.
pub fn cycle_value(
    g: &SurfaceGraph,
    k: &KasteleynOrientation,
    d: &DimerConfiguration,
    cycle: &BitVec,
) -> Result<bool> {
    Ok(family_value(g, k, d, &g.decompose_to_simple(cycle)?))
}

pub fn quadratic_form(g: &SurfaceGraph, k: &KasteleynOrientation, d: &DimerConfiguration) -> QuadraticForm {
    let values: Vec<bool> = g.h1_basis().iter().map(|c| family_value(g, k, d, c)).collect();
    QuadraticForm {
        values: BitVec::from_bools(&values),
        gram: g.intersection_gram().to_vec(),
    }
}

/// ε^K(D): sign of the permutation listing each dimer tail-then-head, in
/// the indexing of matched vertices by vertex order.
pub fn epsilon(g: &SurfaceGraph, k: &KasteleynOrientation, d: &DimerConfiguration) -> Result<i32> {
    d.validate(g)?;
    let index = matched_index(g, &d.boundary(g));
    let mut seq = Vec::with_capacity(2 * d.edges.len());
    for &e in &d.edges {
        let (t, h) = k.direction(g, e);
        seq.push(index[t].expect("matched"));
        seq.push(index[h].expect("matched"));
    }
    Ok(pfaffian::permutation_sign(&seq))
}

fn matched_index(g: &SurfaceGraph, bc: &BoundaryCondition) -> Vec<Option<usize>> {
    let mut index = vec![None; g.n_vertices()];
    for (i, v) in bc.matched_vertices(g).into_iter().enumerate() {
        index[v] = Some(i);
    }
    index
}

/// Signed weighted adjacency matrix over the vertices matched under `bc`,
/// in vertex order. Only graph edges contribute: dimers never lie on the
/// surface boundary.
pub fn kasteleyn_matrix(
    g: &SurfaceGraph,
    k: &KasteleynOrientation,
    w: &WeightSystem,
    bc: &BoundaryCondition,
) -> (SkewMatrix, Vec<usize>) {
    let verts = bc.matched_vertices(g);
    let index = matched_index(g, bc);
    let mut a = SkewMatrix::zeros(verts.len());
    for e in g.graph_edges() {
        let (t, h) = k.direction(g, e);
        if let (Some(i), Some(j)) = (index[t], index[h]) {
            a.add(i, j, w.get(e));
        }
    }
    (a, verts)
}

/// Per-class data entering both Pfaffian formulas.
pub struct ClassTerm {
    pub orientation: KasteleynOrientation,
    pub form: QuadraticForm,
    pub epsilon: i32,
    pub pfaffian: Rational,
}

pub fn class_terms(g: &SurfaceGraph, w: &WeightSystem, d0: &DimerConfiguration) -> Result<Vec<ClassTerm>> {
    d0.validate(g)?;
    let bc = d0.boundary(g);
    let k0 = construct(g, None)?;
    classes(g, &k0)?
        .into_iter()
        .map(|k| {
            let (a, _) = kasteleyn_matrix(g, &k, w, &bc);
            Ok(ClassTerm {
                form: quadratic_form(g, &k, d0),
                epsilon: epsilon(g, &k, d0)?,
                pfaffian: pfaffian::pf(&a),
                orientation: k,
            })
        })
        .collect()
}

/// Z_α(Γ; w | ∂D0) = 2^{-b1} Σ_[K] (-1)^{q(α)} ε^K(D0) Pf(A^K).
pub fn partition_z_alpha(
    g: &SurfaceGraph,
    w: &WeightSystem,
    alpha: &HomologyClass,
    d0: &DimerConfiguration,
) -> Result<Rational> {
    if alpha.variant != Variant::Absolute || alpha.coords.len() != g.b1() {
        return Err(DimerError::WrongClass);
    }
    let mut s = Rational::zero();
    for t in class_terms(g, w, d0)? {
        let sign = if t.form.eval(&alpha.coords) { -t.epsilon } else { t.epsilon };
        s += rational::int(i64::from(sign)) * t.pfaffian;
    }
    Ok(s / rational::pow(&rational::int(2), g.b1() as i64))
}

/// Z(Γ; w | ∂D0) = 2^{-g} Σ_[K] Arf(q) ε^K(D0) Pf(A^K).
pub fn partition_z(g: &SurfaceGraph, w: &WeightSystem, d0: &DimerConfiguration) -> Result<Rational> {
    let mut s = Rational::zero();
    for t in class_terms(g, w, d0)? {
        s += rational::int(i64::from(t.form.arf() * t.epsilon)) * t.pfaffian;
    }
    Ok(s / rational::pow(&rational::int(2), g.genus() as i64))
}

/// Z(Γ; w | bc), picking the first enumerated configuration as D0; zero when
/// the condition is not realizable.
pub fn partition_z_bc(g: &SurfaceGraph, w: &WeightSystem, bc: &BoundaryCondition) -> Result<Rational> {
    match crate::dimer::first_configuration(g, bc) {
        Ok(d0) => partition_z(g, w, &d0),
        Err(DimerError::NoConfiguration) => Ok(Rational::zero()),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimer::{enumerate, partition_oracle};
    use crate::suite;

    #[test]
    fn construction_is_kasteleyn() {
        for name in suite::NAMES {
            let g = suite::by_name(name).unwrap();
            let k = construct(&g, None).unwrap();
            assert!(is_kasteleyn(&g, &k), "{name}");
            assert_eq!(classes(&g, &k).unwrap().len(), 1 << g.b1());
        }
    }

    #[test]
    fn odd_closed_component_is_obstructed() {
        assert!(matches!(
            construct(&suite::triangle(), None),
            Err(DimerError::ParityObstruction(_))
        ));
    }

    #[test]
    fn formula_matches_oracle_on_suite() {
        for name in suite::NAMES {
            let g = suite::by_name(name).unwrap();
            let w = WeightSystem::unit(&g);
            for d0 in enumerate(&g, None).into_iter().take(3) {
                let bc = d0.boundary(&g);
                let z = partition_z(&g, &w, &d0).unwrap();
                assert_eq!(z, partition_oracle(&g, &w, Some(&bc)), "{name}");
            }
        }
    }
}
